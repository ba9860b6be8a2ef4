"""Ribbon graphs in the corner model.

Each edge e carries four corner points, encoded as the integers
4*(e-1)+k for k in 0..3.  Three involutions describe the surface:

  attach  pairs the two corners at each end segment of the ribbon,
          always within one edge,
  side    pairs corners across the two side walls of the ribbon,
          also within one edge and never equal to attach,
  arcs    pairs corners along the free boundary arcs of the vertex
          disks, globally over all 4n corners.

Walking arcs after attach traces the vertex disk boundaries twice (once
per direction), so vertices are cycle pairs of that permutation; arcs
after side traces the surface boundary the same way.  A rotation system
(cyclic vertex words plus twist bits) is the serializable form; the
reading convention assigns corners (e,0),(e,1) to the first occurrence
of e and (e,2),(e,3) to the second, attach pairing {0,1} and {2,3},
side pairing {0,3},{1,2} untwisted and {0,2},{1,3} twisted, and arcs
joining each occurrence's exit corner to the next occurrence's entry
corner around the vertex.
"""

from __future__ import annotations

import heapq
from collections import deque
from dataclasses import dataclass
from random import Random
from typing import Iterable, Sequence

from .errors import PreconditionError

__all__ = [
    "RotationSystem",
    "RibbonGraph",
    "corner",
    "corner_edge",
    "corner_slot",
    "format_corner",
    "from_rotation",
    "to_rotation",
    "chord_diagram",
    "random_rotation",
    "equals",
    "vertex_count",
    "boundary_count",
    "euler_characteristic",
    "is_orientable",
    "vertex_circles",
    "arcs_sorted",
    "partial_dual",
    "vassiliev1",
    "v1_image_arc",
    "vassiliev2",
    "v2_image_arc",
]


def corner(edge: int, slot: int) -> int:
    return 4 * (edge - 1) + slot


def corner_edge(c: int) -> int:
    return (c >> 2) + 1


def corner_slot(c: int) -> int:
    return c & 3


def format_corner(c: int) -> str:
    return f"{corner_edge(c)}.{corner_slot(c)}"


@dataclass(frozen=True)
class RotationSystem:
    """Cyclic vertex words over edge labels 1..n plus a set of twisted edges."""

    n: int
    words: tuple[tuple[int, ...], ...]
    twists: frozenset[int]

    def __post_init__(self):
        seen: dict[int, int] = {}
        for word in self.words:
            if not word:
                raise PreconditionError("empty vertex word (edgeless vertices are not allowed)")
            for label in word:
                if not 1 <= label <= self.n:
                    raise PreconditionError(f"edge label {label} out of range 1..{self.n}")
                seen[label] = seen.get(label, 0) + 1
        for label in range(1, self.n + 1):
            if seen.get(label, 0) != 2:
                raise PreconditionError(f"edge label {label} must occur exactly twice")
        for label in self.twists:
            if not 1 <= label <= self.n:
                raise PreconditionError(f"twist label {label} out of range 1..{self.n}")


@dataclass(frozen=True)
class RibbonGraph:
    """The corner model proper; involutions are stored as lookup tuples."""

    n: int
    attach: tuple[int, ...]
    side: tuple[int, ...]
    arcs: tuple[int, ...]

    def __post_init__(self):
        total = 4 * self.n
        for name, perm in (("attach", self.attach), ("side", self.side), ("arcs", self.arcs)):
            if len(perm) != total:
                raise PreconditionError(f"{name} must cover all {total} corners")
            for c in range(total):
                p = perm[c]
                if not 0 <= p < total or p == c or perm[p] != c:
                    raise PreconditionError(f"{name} is not a fixed-point-free involution")
        for c in range(total):
            if self.attach[c] >> 2 != c >> 2 or self.side[c] >> 2 != c >> 2:
                raise PreconditionError("attach and side must pair corners within one edge")
        for e in range(self.n):
            if self.attach[4 * e] == self.side[4 * e]:
                raise PreconditionError(f"attach and side coincide on edge {e + 1}")

    def diagonal(self, c: int) -> int:
        """Partner of c in the third matching on its edge's corners."""
        base = c & ~3
        return base + (6 - (c & 3) - (self.attach[c] & 3) - (self.side[c] & 3))


def from_rotation(rs: RotationSystem) -> RibbonGraph:
    """Build the corner model under the reading convention above."""
    n = rs.n
    total = 4 * n
    attach = [0] * total
    side = [0] * total
    arcs = [0] * total
    count = [0] * (n + 1)
    for word in rs.words:
        ends = []
        for label in word:
            base = 4 * (label - 1) + 2 * count[label]
            count[label] += 1
            ends.append((base, base + 1))
        for k, (_, exit_c) in enumerate(ends):
            entry_next = ends[(k + 1) % len(ends)][0]
            arcs[exit_c] = entry_next
            arcs[entry_next] = exit_c
    for e in range(n):
        b = 4 * e
        attach[b], attach[b + 1] = b + 1, b
        attach[b + 2], attach[b + 3] = b + 3, b + 2
        if (e + 1) in rs.twists:
            side[b], side[b + 2] = b + 2, b
            side[b + 1], side[b + 3] = b + 3, b + 1
        else:
            side[b], side[b + 3] = b + 3, b
            side[b + 1], side[b + 2] = b + 2, b + 1
    return RibbonGraph(n, tuple(attach), tuple(side), tuple(arcs))


def chord_diagram(word: Sequence[int], twisted: Iterable[int] = ()) -> RibbonGraph:
    """One-vertex ribbon graph with the given cyclic word and twisted chords."""
    n = len(word) // 2
    return from_rotation(RotationSystem(n, (tuple(word),), frozenset(twisted)))


def random_rotation(n: int, rng: Random, twist_chance: float = 0.5) -> RotationSystem:
    """Uniformly shuffled double occurrence words cut into random vertices."""
    if n < 1:
        raise PreconditionError("need at least one edge")
    labels = [e for e in range(1, n + 1) for _ in range(2)]
    rng.shuffle(labels)
    vertices = rng.randint(1, 2 * n)
    cuts = sorted(rng.sample(range(1, 2 * n), vertices - 1))
    bounds = [0, *cuts, 2 * n]
    words = tuple(tuple(labels[a:b]) for a, b in zip(bounds, bounds[1:]))
    twists = frozenset(e for e in range(1, n + 1) if rng.random() < twist_chance)
    return RotationSystem(n, words, twists)


def equals(g: RibbonGraph, h: RibbonGraph) -> bool:
    """Corner-by-corner equality of the two models."""
    return g == h


# --- tracing ---------------------------------------------------------------


def _cycles(perm: Sequence[int]) -> list[tuple[int, ...]]:
    seen = [False] * len(perm)
    out = []
    for start in range(len(perm)):
        if seen[start]:
            continue
        cyc = []
        c = start
        while not seen[c]:
            seen[c] = True
            cyc.append(c)
            c = perm[c]
        out.append(tuple(cyc))
    return out


def vertex_circles(G: RibbonGraph) -> list[tuple[tuple[int, ...], tuple[int, ...]]]:
    """Vertex disks as twin cycle pairs; the first cycle holds the least corner."""
    perm = [G.arcs[G.attach[c]] for c in range(4 * G.n)]
    cycles = _cycles(perm)
    owner = {}
    for idx, cyc in enumerate(cycles):
        for c in cyc:
            owner[c] = idx
    used = set()
    circles = []
    for idx, cyc in enumerate(cycles):
        if idx in used:
            continue
        twin = owner[G.attach[cyc[0]]]
        used.add(idx)
        used.add(twin)
        circles.append((cyc, cycles[twin]))
    return circles


def vertex_count(G: RibbonGraph) -> int:
    perm = [G.arcs[G.attach[c]] for c in range(4 * G.n)]
    return len(_cycles(perm)) // 2


def boundary_count(G: RibbonGraph) -> int:
    perm = [G.arcs[G.side[c]] for c in range(4 * G.n)]
    return len(_cycles(perm)) // 2


def euler_characteristic(G: RibbonGraph) -> int:
    return vertex_count(G) - G.n


def _direction_constraints(G: RibbonGraph, circles):
    """Twist parities between circle directions, plus the loop verdict.

    Directing a circle picks one cycle of its twin pair; a ribbon is
    parallel when the two chosen entry corners are diagonal partners.
    Relative to directing everything by the first cycle of each pair,
    each ribbon contributes a parity constraint between its two circles.
    A ribbon with both ends on one circle is a constraint on nothing:
    it is either parallel in every direction choice or in none, and the
    second component reports whether all such loops are parallel.
    """
    circle_of = {}
    primary = set()
    for idx, (a, b) in enumerate(circles):
        primary.update(a)
        for c in a:
            circle_of[c] = idx
        for c in b:
            circle_of[c] = idx

    loops_parallel = True
    adj: dict[int, list[tuple[int, int]]] = {i: [] for i in range(len(circles))}
    for e in range(G.n):
        a = 4 * e
        b = next(c for c in range(4 * e + 1, 4 * e + 4) if c != G.attach[a])
        x1 = a if a in primary else G.attach[a]
        x2 = b if b in primary else G.attach[b]
        t = 0 if x2 == G.diagonal(x1) else 1
        u, w = circle_of[a], circle_of[b]
        if u == w:
            if t:
                loops_parallel = False
        else:
            adj[u].append((w, t))
            adj[w].append((u, t))
    return adj, loops_parallel


def _greedy_directions(adj: dict[int, list[tuple[int, int]]]) -> tuple[dict[int, int], bool]:
    """Assign a direction bit per circle, satisfying what can be satisfied.

    Breadth-first from the lowest unvisited circle; a fresh neighbour
    gets the parity its constraint asks for, and a revisited neighbour
    that disagrees marks the assignment inconsistent without stopping
    the sweep.  Consistent assignments make every non-loop ribbon
    parallel, which is what the serializer wants.
    """
    colour: dict[int, int] = {}
    consistent = True
    for root in adj:
        if root in colour:
            continue
        colour[root] = 0
        queue = deque([root])
        while queue:
            u = queue.popleft()
            for w, t in adj[u]:
                want = colour[u] ^ t
                if w not in colour:
                    colour[w] = want
                    queue.append(w)
                elif colour[w] != want:
                    consistent = False
    return colour, consistent


def is_orientable(G: RibbonGraph) -> bool:
    """Whether the vertex circles can be directed with every ribbon parallel."""
    adj, loops_parallel = _direction_constraints(G, vertex_circles(G))
    if not loops_parallel:
        return False
    _, consistent = _greedy_directions(adj)
    return consistent


def arcs_sorted(G: RibbonGraph) -> list[tuple[int, int]]:
    """All arcs as (low corner, high corner), sorted; index+1 is the arc id."""
    return [(c, G.arcs[c]) for c in range(4 * G.n) if c < G.arcs[c]]


# --- operations ------------------------------------------------------------


def partial_dual(G: RibbonGraph, edges: Iterable[int]) -> RibbonGraph:
    """Swap attach and side on the listed edges; arcs are untouched."""
    chosen = set(edges)
    for e in chosen:
        if not 1 <= e <= G.n:
            raise PreconditionError(f"edge label {e} out of range 1..{G.n}")
    attach = list(G.attach)
    side = list(G.side)
    for e in chosen:
        b = 4 * (e - 1)
        for c in range(b, b + 4):
            attach[c], side[c] = side[c], attach[c]
    return RibbonGraph(G.n, tuple(attach), tuple(side), G.arcs)


def _check_arc(G: RibbonGraph, arc: tuple[int, int]) -> tuple[int, int]:
    p, q = arc
    if not (0 <= p < 4 * G.n and G.arcs[p] == q):
        raise PreconditionError(f"({format_corner(p)}, {format_corner(q)}) is not an arc")
    return p, q


def vassiliev1(G: RibbonGraph, arc: tuple[int, int]) -> RibbonGraph:
    """Transpose the two attach segments adjacent across the given arc.

    Each segment keeps its own traversal direction, so only three arcs
    are rewired; attach and side stay fixed.  On a two-segment circle
    the transposition is the identity.  The arc must separate two
    distinct segments.
    """
    p, q = _check_arc(G, arc)
    x, y = G.attach[p], G.attach[q]
    if x == q:
        raise PreconditionError("arc joins the two ends of a single segment")
    if G.arcs[x] == y:
        return G
    ax, ay = G.arcs[x], G.arcs[y]
    arcs = list(G.arcs)
    arcs[x], arcs[y] = y, x
    arcs[q], arcs[ax] = ax, q
    arcs[p], arcs[ay] = ay, p
    return RibbonGraph(G.n, G.attach, G.side, tuple(arcs))


def v1_image_arc(G: RibbonGraph, arc: tuple[int, int]) -> tuple[int, int]:
    """The arc that sits between the swapped segments after vassiliev1."""
    p, q = _check_arc(G, arc)
    x, y = G.attach[p], G.attach[q]
    return (x, y) if x < y else (y, x)


def vassiliev2(G: RibbonGraph, arc: tuple[int, int], fixed: int) -> RibbonGraph:
    """The first move conjugated by the partial dual at the fixed edge.

    `fixed` names the edge of one endpoint of the arc; the chord at the
    other endpoint is the one that slides.  Arcs persist under partial
    duals, so the same arc parameterizes the inner move.
    """
    p, q = _check_arc(G, arc)
    if fixed not in (corner_edge(p), corner_edge(q)):
        raise PreconditionError(f"edge {fixed} is not an endpoint of the arc")
    inner = partial_dual(G, (fixed,))
    moved = vassiliev1(inner, arc)
    return partial_dual(moved, (fixed,))


def v2_image_arc(G: RibbonGraph, arc: tuple[int, int], fixed: int) -> tuple[int, int]:
    p, q = _check_arc(G, arc)
    if fixed not in (corner_edge(p), corner_edge(q)):
        raise PreconditionError(f"edge {fixed} is not an endpoint of the arc")
    inner = partial_dual(G, (fixed,))
    return v1_image_arc(inner, arc)


# --- back to rotation form --------------------------------------------------


def to_rotation(G: RibbonGraph) -> RotationSystem:
    """Express the corner model as a rotation system.

    When corner labels already follow the reading convention the exact
    labelling is recovered, so building from the result reproduces G
    corner for corner.  Otherwise the graph is relabelled canonically
    first; edge labels are preserved either way.
    """
    circles = vertex_circles(G)
    rs = _recover_rotation(G, circles)
    if rs is None:
        rs = _relabel_rotation(G, circles)
    return rs


def _recover_rotation(G, circles) -> RotationSystem | None:
    n = G.n
    for e in range(n):
        b = 4 * e
        if G.attach[b] != b + 1 or G.attach[b + 2] != b + 3:
            return None
    chosen = []
    circle_of = {}
    for idx, (a, b) in enumerate(circles):
        if all(c % 2 == 0 for c in a):
            cyc = a
        elif all(c % 2 == 0 for c in b):
            cyc = b
        else:
            return None
        chosen.append(cyc)
        for c in cyc:
            circle_of[c] = idx

    # Entry corner 4e must be read before 4e+2.  Across circles that is an
    # ordering constraint; within a circle it restricts the starting corner.
    after: dict[int, set[int]] = {i: set() for i in range(len(circles))}
    indeg = [0] * len(circles)
    for e in range(n):
        u, w = circle_of[4 * e], circle_of[4 * e + 2]
        if u != w and w not in after[u]:
            after[u].add(w)
            indeg[w] += 1
    heap = [i for i in range(len(circles)) if indeg[i] == 0]
    heapq.heapify(heap)
    order = []
    while heap:
        u = heapq.heappop(heap)
        order.append(u)
        for w in sorted(after[u]):
            indeg[w] -= 1
            if indeg[w] == 0:
                heapq.heappush(heap, w)
    if len(order) != len(circles):
        return None

    words = []
    for idx in order:
        cyc = chosen[idx]
        local = [e for e in range(n) if circle_of[4 * e] == idx and circle_of[4 * e + 2] == idx]
        start = None
        for s in sorted(range(len(cyc)), key=lambda k: cyc[k]):
            rot = cyc[s:] + cyc[:s]
            pos = {c: k for k, c in enumerate(rot)}
            if all(pos[4 * e] < pos[4 * e + 2] for e in local):
                start = rot
                break
        if start is None:
            return None
        words.append(tuple(corner_edge(c) for c in start))
    twists = frozenset(e + 1 for e in range(n) if G.side[4 * e] == 4 * e + 2)
    return RotationSystem(n, tuple(words), twists)


def _relabel_rotation(G, circles) -> RotationSystem:
    n = G.n
    # Serialized twist bits depend on the direction chosen for each
    # circle: edge e comes out untwisted exactly when its second entry
    # corner is the diagonal partner of its first.  Directing by the
    # parity assignment keeps every satisfiable ribbon untwisted, so an
    # orientable graph always serializes without a twist line.
    adj, _ = _direction_constraints(G, circles)
    colour, _ = _greedy_directions(adj)
    order = sorted(range(len(circles)), key=lambda idx: min(min(circles[idx][0]), min(circles[idx][1])))
    new_label: dict[int, int] = {}
    old_entry: dict[int, int] = {}
    seen_edge: dict[int, int] = {}
    words = []
    for idx in order:
        cyc = circles[idx][colour[idx]]
        k = cyc.index(min(cyc))
        rot = cyc[k:] + cyc[:k]
        word = []
        for c in rot:
            e = corner_edge(c)
            occ = seen_edge.get(e, 0)
            seen_edge[e] = occ + 1
            base = 4 * (e - 1) + 2 * occ
            new_label[c] = base
            new_label[G.attach[c]] = base + 1
            if occ == 0:
                old_entry[e] = c
            word.append(e)
        words.append(tuple(word))
    twists = frozenset(
        e for e in range(1, n + 1)
        if new_label[G.side[old_entry[e]]] == 4 * (e - 1) + 2
    )
    return RotationSystem(n, tuple(words), twists)
