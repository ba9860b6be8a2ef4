"""From ribbon graphs to Lagrangian subspaces.

The boundary of a ribbon graph with n edges, cut along the attach
segments, decomposes into arcs; reading each arc against the symplectic
basis vectors e_i, f_i of its two endpoint edges and spanning over the
cycles of the resulting arc graph produces a Lagrangian in F_2^{2n}.
The span is computed from a per-corner potential: the base corner of
every edge is assigned 0 and the other three corners the class of the
matching that pairs them with the base (attach gives f, side gives e,
the diagonal gives e+f), so an arc contributes the sum of its endpoint
potentials and cycles accumulate along any spanning forest.
"""

from __future__ import annotations

from .errors import InternalCheckError, PreconditionError
from .f2sympl import Lagrangian, Subspace, is_lagrangian, span
from .ribbon import RibbonGraph, corner_edge, vertex_count

__all__ = ["pair_class", "lspace", "intersection_matrix"]


def pair_class(G: RibbonGraph, c1: int, c2: int) -> int:
    """The crossing class of two distinct corners of one edge, as a mask.

    Attach partners read as f_e, side partners as e_e and diagonal
    partners as e_e + f_e; these are the three ways a boundary arc can
    cross the ribbon of edge e, and they exhaust the pairs because the
    three matchings partition them.
    """
    e = corner_edge(c1)
    if c1 == c2 or corner_edge(c2) != e:
        raise PreconditionError("need two distinct corners of one edge")
    ee = 1 << (e - 1)
    fe = ee << G.n
    if G.attach[c1] == c2:
        return fe
    if G.side[c1] == c2:
        return ee
    return ee | fe


def lspace(G: RibbonGraph) -> Lagrangian:
    """The Lagrangian subspace of F_2^{2n} carried by the graph boundary."""
    n = G.n
    if n == 0:
        return Lagrangian(Subspace(0, ()))
    arcs = G.arcs
    psi = [0] * (4 * n)
    for e in range(n):
        base = 4 * e
        for c in (base + 1, base + 2, base + 3):
            psi[c] = pair_class(G, base, c)
    adj: list[list[tuple[int, int]]] = [[] for _ in range(n)]
    links = []
    for c in range(4 * n):
        d = arcs[c]
        if c < d:
            u, v, w = c >> 2, d >> 2, psi[c] ^ psi[d]
            links.append((u, v, w))
            adj[u].append((v, w))
            adj[v].append((u, w))
    acc: list[int | None] = [None] * n
    for root in range(n):
        if acc[root] is not None:
            continue
        acc[root] = 0
        stack = [root]
        while stack:
            u = stack.pop()
            for v, w in adj[u]:
                if acc[v] is None:
                    acc[v] = acc[u] ^ w
                    stack.append(v)
    L = span(n, [acc[u] ^ acc[v] ^ w for u, v, w in links])
    if not is_lagrangian(L):
        raise InternalCheckError("boundary cycles did not span a Lagrangian")
    return Lagrangian(L)


def intersection_matrix(G: RibbonGraph):
    """Framed interlacement of a one-vertex graph's chords.

    Off the diagonal the entry records whether two chords interleave
    around the vertex; on it, whether the chord is attached with a half
    twist.  The result is checked against the matrix read off lspace(G),
    which for one-vertex graphs is transverse to the f-coordinates.
    """
    from .f2sympl import to_matrix

    v = vertex_count(G)
    if v != 1:
        raise PreconditionError(f"intersection matrix requires one vertex, got {v}")
    n = G.n
    perm = [G.arcs[G.attach[c]] for c in range(4 * n)]
    cycle = [0]
    c = perm[0]
    while c != 0:
        cycle.append(c)
        c = perm[c]
    if len(cycle) != 2 * n:
        raise InternalCheckError("one-vertex traversal has the wrong length")
    pos: dict[int, list[int]] = {}
    for k, corner in enumerate(cycle):
        pos.setdefault(corner >> 2, []).append(k)
    rows = []
    for i in range(n):
        p1, p2 = pos[i]
        x1, x2 = cycle[p1], cycle[p2]
        mask = 0 if x2 == G.diagonal(x1) else 1 << i
        for j in range(n):
            if j == i:
                continue
            q1, q2 = pos[j]
            if (p1 < q1 < p2) != (p1 < q2 < p2):
                mask |= 1 << j
        rows.append(mask)
    from .matrixops import FramedGraphMatrix

    M = FramedGraphMatrix(n, tuple(rows))
    try:
        check = to_matrix(lspace(G))
    except PreconditionError as exc:
        raise InternalCheckError(f"one-vertex lspace is not transverse: {exc}") from exc
    if check.rows != M.rows:
        raise InternalCheckError("interlacement disagrees with the lspace matrix")
    return M
