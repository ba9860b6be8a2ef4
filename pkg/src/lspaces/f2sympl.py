"""Linear algebra over F2 in the standard symplectic space.

Vectors live in F2^(2n) with ordered basis e_1..e_n, f_1..f_n and the
bilinear pairing (e_i, f_j) = delta_ij, zero on every other basis
couple.  A vector is stored as a 2n-bit integer mask: bit i-1 holds the
e_i coordinate and bit n+i-1 the f_i coordinate.  Subspaces are kept as
reduced row-echelon bases in that column order, so two subspaces are
equal exactly when their stored row tuples are equal.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Iterator

from .errors import InternalCheckError, PreconditionError

__all__ = [
    "MAX_ENUM_GRADE",
    "SympVector",
    "Subspace",
    "Lagrangian",
    "Symplectomorphism",
    "e_vec",
    "f_vec",
    "form",
    "span",
    "as_lagrangian",
    "is_lagrangian",
    "direct_sum",
    "reduce",
    "mu_map",
    "v1_map",
    "v2_map",
    "identity_map",
    "compose",
    "apply",
    "is_symplectic",
    "is_transverse_to_f",
    "to_matrix",
    "enumerate_lagrangians",
    "all_lagrangians",
]

# Largest grade enumerate_lagrangians accepts unless the caller widens it.
MAX_ENUM_GRADE = 6


def _lsb(x: int) -> int:
    return (x & -x).bit_length() - 1


def _rref(masks: Iterable[int]) -> tuple[int, ...]:
    """Reduced row echelon form of integer-mask rows, pivots ascending."""
    pivots: dict[int, int] = {}
    for v in masks:
        for c, r in pivots.items():
            if (v >> c) & 1:
                v ^= r
        if v:
            c = _lsb(v)
            for pc in pivots:
                if (pivots[pc] >> c) & 1:
                    pivots[pc] ^= v
            pivots[c] = v
    return tuple(pivots[c] for c in sorted(pivots))


def _form_masks(n: int, u: int, v: int) -> int:
    emask = (1 << n) - 1
    a = (u & emask) & (v >> n)
    b = (v & emask) & (u >> n)
    return (a.bit_count() + b.bit_count()) & 1


@dataclass(frozen=True)
class SympVector:
    """A vector of grade n, stored as a 2n-bit mask."""

    n: int
    bits: int

    def __post_init__(self):
        if self.n < 0:
            raise PreconditionError("grade must be nonnegative")
        if not 0 <= self.bits < (1 << (2 * self.n)):
            raise PreconditionError("vector mask out of range for grade")

    def __add__(self, other: "SympVector") -> "SympVector":
        if self.n != other.n:
            raise PreconditionError("grade mismatch")
        return SympVector(self.n, self.bits ^ other.bits)

    def __str__(self) -> str:
        return format_vector(self.n, self.bits)


def e_vec(n: int, i: int) -> SympVector:
    """The basis vector e_i in grade n."""
    _check_index(n, i)
    return SympVector(n, 1 << (i - 1))


def f_vec(n: int, i: int) -> SympVector:
    """The basis vector f_i in grade n."""
    _check_index(n, i)
    return SympVector(n, 1 << (n + i - 1))


def _check_index(n: int, i: int) -> None:
    if not 1 <= i <= n:
        raise PreconditionError(f"index {i} out of range for grade {n}")


def format_vector(n: int, mask: int) -> str:
    """Human-readable form like 'e1+f2', or '0' for the zero vector."""
    parts = []
    for i in range(n):
        if (mask >> i) & 1:
            parts.append(f"e{i + 1}")
    for i in range(n):
        if (mask >> (n + i)) & 1:
            parts.append(f"f{i + 1}")
    return "+".join(parts) if parts else "0"


def form(u: SympVector, v: SympVector) -> int:
    """The symplectic pairing of u and v, as 0 or 1."""
    if u.n != v.n:
        raise PreconditionError("grade mismatch")
    return _form_masks(u.n, u.bits, v.bits)


@dataclass(frozen=True)
class Subspace:
    """A subspace of F2^(2n), held as a reduced echelon basis."""

    n: int
    rows: tuple[int, ...]

    def __post_init__(self):
        if self.rows != _rref(self.rows):
            raise PreconditionError("rows are not a reduced echelon basis")
        top = 1 << (2 * self.n)
        if any(not 0 < r < top for r in self.rows):
            raise PreconditionError("row mask out of range for grade")

    @property
    def dim(self) -> int:
        return len(self.rows)

    def vectors(self) -> list[SympVector]:
        return [SympVector(self.n, r) for r in self.rows]

    def __str__(self) -> str:
        inside = ", ".join(format_vector(self.n, r) for r in self.rows)
        return f"<{inside}>"


def span(n: int, vectors: Iterable[SympVector | int]) -> Subspace:
    """Span of the given vectors inside grade n."""
    masks = []
    for v in vectors:
        if isinstance(v, SympVector):
            if v.n != n:
                raise PreconditionError("grade mismatch")
            masks.append(v.bits)
        else:
            masks.append(int(v))
    return Subspace(n, _rref(masks))


def is_lagrangian(s: Subspace) -> bool:
    """Half-dimensional and isotropic for the symplectic pairing."""
    if s.dim != s.n:
        return False
    rows = s.rows
    n = s.n
    for i in range(len(rows)):
        for j in range(i + 1, len(rows)):
            if _form_masks(n, rows[i], rows[j]):
                return False
    return True


@dataclass(frozen=True)
class Lagrangian:
    """A Lagrangian subspace; construction re-checks the defining property."""

    inner: Subspace

    def __post_init__(self):
        if not is_lagrangian(self.inner):
            raise PreconditionError("subspace is not Lagrangian")

    @property
    def n(self) -> int:
        return self.inner.n

    @property
    def rows(self) -> tuple[int, ...]:
        return self.inner.rows

    def __str__(self) -> str:
        return str(self.inner)


def as_lagrangian(n: int, vectors: Iterable[SympVector | int]) -> Lagrangian:
    """Span the vectors and certify the result Lagrangian."""
    return Lagrangian(span(n, vectors))


def direct_sum(a: Lagrangian, b: Lagrangian) -> Lagrangian:
    """Index-aligned direct sum: b's coordinates sit after a's."""
    m, k = a.n, b.n
    n = m + k
    emask_m = (1 << m) - 1
    emask_k = (1 << k) - 1
    rows = []
    for r in a.rows:
        rows.append((r & emask_m) | (((r >> m) & emask_m) << n))
    for r in b.rows:
        rows.append((((r & emask_k) << m)) | (((r >> k) & emask_k) << (n + m)))
    return Lagrangian(Subspace(n, _rref(rows)))


def reduce(lag: Lagrangian, indices: Iterable[int]) -> Lagrangian:
    """Symplectic reduction onto the coordinates in `indices`.

    Intersect with the coisotropic span of {e_i : i in indices} and all
    f_j, project out the f_j with j outside, and reindex by the kept
    coordinates in increasing order.  The result is Lagrangian of grade
    len(indices).
    """
    n = lag.n
    keep = sorted(set(indices))
    for i in keep:
        _check_index(n, i)
    keep_set = set(keep)
    rows = list(lag.rows)
    r = 0
    for c in range(n):
        if c + 1 in keep_set:
            continue
        piv = next((k for k in range(r, len(rows)) if (rows[k] >> c) & 1), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        for k in range(len(rows)):
            if k != r and (rows[k] >> c) & 1:
                rows[k] ^= rows[r]
        r += 1
    m = len(keep)
    new_rows = []
    for v in rows[r:]:
        nv = 0
        for t, i in enumerate(keep):
            if (v >> (i - 1)) & 1:
                nv |= 1 << t
            if (v >> (n + i - 1)) & 1:
                nv |= 1 << (m + t)
        new_rows.append(nv)
    return Lagrangian(Subspace(m, _rref(new_rows)))


# --- symplectomorphisms ---------------------------------------------------


@dataclass(frozen=True)
class Symplectomorphism:
    """A linear map on F2^(2n); cols[j] is the image mask of basis vector j."""

    n: int
    cols: tuple[int, ...]

    def __post_init__(self):
        if len(self.cols) != 2 * self.n:
            raise PreconditionError("wrong number of columns")

    def image(self, mask: int) -> int:
        out = 0
        m = mask
        while m:
            out ^= self.cols[_lsb(m)]
            m &= m - 1
        return out


def identity_map(n: int) -> Symplectomorphism:
    return Symplectomorphism(n, tuple(1 << j for j in range(2 * n)))


def mu_map(n: int, i: int) -> Symplectomorphism:
    """Swap e_i and f_i, fixing every other basis vector."""
    _check_index(n, i)
    cols = [1 << j for j in range(2 * n)]
    cols[i - 1] = 1 << (n + i - 1)
    cols[n + i - 1] = 1 << (i - 1)
    return Symplectomorphism(n, tuple(cols))


def v1_map(n: int, i: int, j: int) -> Symplectomorphism:
    """e_i -> e_i + f_j and e_j -> e_j + f_i; all f's fixed."""
    _check_index(n, i)
    _check_index(n, j)
    if i == j:
        raise PreconditionError("indices must be distinct")
    cols = [1 << c for c in range(2 * n)]
    cols[i - 1] = (1 << (i - 1)) | (1 << (n + j - 1))
    cols[j - 1] = (1 << (j - 1)) | (1 << (n + i - 1))
    return Symplectomorphism(n, tuple(cols))


def v2_map(n: int, i: int, j: int) -> Symplectomorphism:
    """f_i -> f_i + f_j and e_j -> e_j + e_i, with i the fixed index.

    Equals mu_map(n, i) conjugating v1_map(n, i, j).
    """
    _check_index(n, i)
    _check_index(n, j)
    if i == j:
        raise PreconditionError("indices must be distinct")
    cols = [1 << c for c in range(2 * n)]
    cols[n + i - 1] = (1 << (n + i - 1)) | (1 << (n + j - 1))
    cols[j - 1] = (1 << (j - 1)) | (1 << (i - 1))
    return Symplectomorphism(n, tuple(cols))


def compose(outer: Symplectomorphism, inner: Symplectomorphism) -> Symplectomorphism:
    if outer.n != inner.n:
        raise PreconditionError("grade mismatch")
    return Symplectomorphism(outer.n, tuple(outer.image(c) for c in inner.cols))


def apply(t: Symplectomorphism, lag: Lagrangian) -> Lagrangian:
    """Image of a Lagrangian under a symplectomorphism."""
    if t.n != lag.n:
        raise PreconditionError("grade mismatch")
    return Lagrangian(Subspace(lag.n, _rref(t.image(r) for r in lag.rows)))


def is_symplectic(t: Symplectomorphism) -> bool:
    """Invertible and pairing-preserving on all basis couples."""
    n = t.n
    if len(_rref(t.cols)) != 2 * n:
        return False
    for a in range(2 * n):
        for b in range(a + 1, 2 * n):
            want = 1 if (b == a + n) else 0
            if _form_masks(n, t.cols[a], t.cols[b]) != want:
                return False
    return True


# --- transversality and the matrix form ------------------------------------


def is_transverse_to_f(lag: Lagrangian) -> bool:
    """True when L meets the span of f_1..f_n only in 0."""
    return all(_lsb(r) < lag.n for r in lag.rows)


def to_matrix(lag: Lagrangian):
    """Write a transverse Lagrangian as the row span of (Id | A).

    Returns the symmetric A as a FramedGraphMatrix.  Transversality to
    the f-block is required; symmetry of A then comes for free and is
    re-checked here.
    """
    if not is_transverse_to_f(lag):
        raise PreconditionError("subspace is not transverse to the f-block")
    n = lag.n
    a_rows = tuple(r >> n for r in lag.rows)
    for i in range(n):
        for j in range(i + 1, n):
            if ((a_rows[i] >> j) & 1) != ((a_rows[j] >> i) & 1):
                raise InternalCheckError("transverse Lagrangian gave an asymmetric matrix")
    from .matrixops import FramedGraphMatrix

    return FramedGraphMatrix(n, a_rows)


# --- enumeration ------------------------------------------------------------


def _subspaces(n: int) -> Iterator[tuple[int, ...]]:
    """All subspaces of F2^n as reduced echelon row tuples, each once."""
    yield ()
    for r in range(1, n + 1):
        for pivs in combinations(range(n), r):
            piv_set = set(pivs)
            cells = [
                (i, c)
                for i in range(r)
                for c in range(pivs[i] + 1, n)
                if c not in piv_set
            ]
            for bits in range(1 << len(cells)):
                rows = [1 << p for p in pivs]
                for idx, (i, c) in enumerate(cells):
                    if (bits >> idx) & 1:
                        rows[i] |= 1 << c
                yield tuple(rows)


def _nullspace(n: int, rows: tuple[int, ...]) -> list[int]:
    """Basis of {z : row . z = 0 for all rows}, rows in reduced echelon form."""
    pivs = [_lsb(r) for r in rows]
    piv_set = set(pivs)
    basis = []
    for c in range(n):
        if c in piv_set:
            continue
        z = 1 << c
        for i, r in enumerate(rows):
            if (r >> c) & 1:
                z |= 1 << pivs[i]
        basis.append(z)
    return basis


def enumerate_lagrangians(n: int, max_grade: int = MAX_ENUM_GRADE) -> Iterator[Lagrangian]:
    """Every Lagrangian of grade n exactly once, in a fixed order.

    A Lagrangian is determined by its projection U onto the e-block
    together with a symmetric pairing matrix on U; the f-block part of
    the kernel is forced to be the dot-product complement of U.  Walking
    those pairs visits each subspace once with no dedup pass.
    """
    if n < 0:
        raise PreconditionError("grade must be nonnegative")
    if n > max_grade:
        raise PreconditionError(f"grade {n} exceeds the enumeration bound {max_grade}")
    for u_rows in _subspaces(n):
        r = len(u_rows)
        pivs = [_lsb(u) for u in u_rows]
        fixed = [z << n for z in _nullspace(n, u_rows)]
        tri = [(i, j) for i in range(r) for j in range(i, r)]
        for bits in range(1 << len(tri)):
            w = [0] * r
            for idx, (i, j) in enumerate(tri):
                if (bits >> idx) & 1:
                    w[i] |= 1 << pivs[j]
                    if i != j:
                        w[j] |= 1 << pivs[i]
            rows = [u_rows[i] | (w[i] << n) for i in range(r)]
            rows.extend(fixed)
            yield Lagrangian(Subspace(n, _rref(rows)))


@lru_cache(maxsize=None)
def all_lagrangians(n: int) -> tuple[Lagrangian, ...]:
    """Cached tuple of every grade-n Lagrangian; kept small grades only."""
    if n > 5:
        raise PreconditionError("cached enumeration is limited to grade 5")
    return tuple(enumerate_lagrangians(n))
