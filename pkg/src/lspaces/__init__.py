"""L-space invariants of ribbon graphs over F_2.

Ribbon graphs (ribbon), the symplectic linear algebra of their
invariant (f2sympl), the invariant itself (homomap), the orbit
bialgebra with its four-term quotient (bialgebra), the matrix calculus
of one-vertex graphs (matrixops), and text formats plus a command line
tool (formats, cli).
"""

from .errors import InternalCheckError, ParseError, PreconditionError
from .f2sympl import (
    Lagrangian,
    Subspace,
    Symplectomorphism,
    SympVector,
    all_lagrangians,
    apply,
    as_lagrangian,
    compose,
    direct_sum,
    e_vec,
    enumerate_lagrangians,
    f_vec,
    form,
    format_vector,
    identity_map,
    is_lagrangian,
    is_symplectic,
    is_transverse_to_f,
    mu_map,
    reduce,
    span,
    to_matrix,
    v1_map,
    v2_map,
)
from .ribbon import (
    RibbonGraph,
    RotationSystem,
    arcs_sorted,
    boundary_count,
    chord_diagram,
    euler_characteristic,
    from_rotation,
    is_orientable,
    partial_dual,
    random_rotation,
    to_rotation,
    v1_image_arc,
    v2_image_arc,
    vassiliev1,
    vassiliev2,
    vertex_count,
)
from .homomap import intersection_matrix, lspace, pair_class
from .matrixops import (
    BivariatePolynomial,
    FramedGraphMatrix,
    cohn_lempel,
    graph_to_lspace,
    interlace_polynomial,
    local_complement,
    partial_dual_matrix,
    pivot,
)
from .bialgebra import (
    LinComb,
    OrbitClass,
    burnside_count,
    canonicalize,
    coproduct,
    counit,
    four_element,
    grade_dimension,
    orbit_classes,
    product,
    quotient_dimension,
    realized_rank,
    relation_rank,
)
from .formats import (
    parse_graph,
    parse_ribbon,
    parse_rotation,
    serialize_graph,
    serialize_ribbon,
    serialize_rotation,
)

__version__ = "0.1.0"
