"""The bialgebra of Lagrangian subspaces up to coordinate permutation.

Grade n is spanned by the S_n-orbits of Lagrangians in F_2^{2n}, a
permutation acting on e- and f-coordinates simultaneously.  Direct sum
of representatives multiplies classes, splitting the coordinate set in
all ways and reducing to the two parts comultiplies them, and the
four-term combinations [L] - [T1 L] - [T2 L] + [T1 T2 L] built from the
two chord-sliding symplectomorphisms generate the ideal whose quotient
the grade dimensions below measure.

Orbit counts are cross-checked by averaging fixed-point counts over the
symmetric group, and ideal ranks are computed modulo two different
primes; either disagreement raises InternalCheckError.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import factorial

from .errors import InternalCheckError, PreconditionError
from .f2sympl import (
    Lagrangian,
    Subspace,
    _rref,
    all_lagrangians,
    apply,
    direct_sum,
    reduce,
    v1_map,
    v2_map,
)

__all__ = [
    "OrbitClass",
    "LinComb",
    "canonicalize",
    "orbit_classes",
    "grade_dimension",
    "burnside_count",
    "product",
    "coproduct",
    "counit",
    "four_element",
    "relation_rank",
    "quotient_dimension",
    "realized_rank",
]

RANK_PRIMES = (1000003, 1000033)
CANON_GRADE_BOUND = 8


@dataclass(frozen=True, order=True)
class OrbitClass:
    """An orbit of Lagrangians, named by its least reduced basis."""

    n: int
    rows: tuple[int, ...]

    @property
    def representative(self) -> Lagrangian:
        return Lagrangian(Subspace(self.n, self.rows))

    def __str__(self) -> str:
        from .f2sympl import format_vector

        return "<" + ", ".join(format_vector(self.n, r) for r in self.rows) + ">"


def _swap_adjacent(n: int, rows: tuple[int, ...], i: int) -> tuple[int, ...]:
    """Apply the transposition (i+1, i+2) to both coordinate blocks."""
    lo = (1 << i) | (1 << (i + 1))
    hi = lo << n
    out = []
    for m in rows:
        b = m & lo
        if b and b != lo:
            m ^= lo
        b = m & hi
        if b and b != hi:
            m ^= hi
        out.append(m)
    return _rref(out)


def _orbit(n: int, rows: tuple[int, ...]) -> set[tuple[int, ...]]:
    seen = {rows}
    frontier = [rows]
    while frontier:
        fresh = []
        for r in frontier:
            for i in range(n - 1):
                image = _swap_adjacent(n, r, i)
                if image not in seen:
                    seen.add(image)
                    fresh.append(image)
        frontier = fresh
    return seen


def canonicalize(L: Lagrangian | OrbitClass) -> OrbitClass:
    """The orbit of L, named by its lexicographically least member."""
    if isinstance(L, OrbitClass):
        return L
    if L.n > CANON_GRADE_BOUND:
        raise PreconditionError(f"canonical form is bounded at grade {CANON_GRADE_BOUND}")
    return OrbitClass(L.n, min(_orbit(L.n, L.rows)))


@lru_cache(maxsize=None)
def orbit_classes(n: int) -> tuple[OrbitClass, ...]:
    """All grade-n classes in increasing order, with a fixed-point recount."""
    if n == 0:
        return (OrbitClass(0, ()),)
    reps = []
    seen: set[tuple[int, ...]] = set()
    for L in all_lagrangians(n):
        if L.rows in seen:
            continue
        orbit = _orbit(n, L.rows)
        seen |= orbit
        reps.append(min(orbit))
    if burnside_count(n) != len(reps):
        raise InternalCheckError(f"orbit count at grade {n} fails the group average")
    return tuple(OrbitClass(n, r) for r in sorted(reps))


def grade_dimension(n: int) -> int:
    """Number of grade-n orbit classes."""
    return len(orbit_classes(n))


@lru_cache(maxsize=None)
def burnside_count(n: int) -> int:
    """Orbit count as the group average of fixed Lagrangians.

    Independent of the direct partition in orbit_classes: sums
    |Fix(pi)| over one permutation per cycle type, weighted by the
    conjugacy class size, and divides by n!.
    """
    if n == 0:
        return 1
    total = 0
    for lam in _partitions(n):
        total += _conjugacy_size(n, lam) * _fixed_count(n, _perm_of_partition(lam))
    count, leftover = divmod(total, factorial(n))
    if leftover:
        raise InternalCheckError(f"fixed-point total at grade {n} is not divisible by n!")
    return count


def _partitions(n: int, least: int = 1):
    if n == 0:
        yield ()
        return
    for k in range(least, n + 1):
        for rest in _partitions(n - k, k):
            yield (k,) + rest


def _conjugacy_size(n: int, lam: tuple[int, ...]) -> int:
    size = factorial(n)
    for k in set(lam):
        m = lam.count(k)
        size //= k**m * factorial(m)
    return size


def _perm_of_partition(lam: tuple[int, ...]) -> tuple[int, ...]:
    perm = []
    base = 0
    for k in lam:
        perm.extend([base + (t + 1) % k for t in range(k)])
        base += k
    return tuple(perm)


def _permute_rows(n: int, rows: tuple[int, ...], perm: tuple[int, ...]) -> tuple[int, ...]:
    out = []
    for m in rows:
        image = 0
        for i in range(n):
            if (m >> i) & 1:
                image |= 1 << perm[i]
            if (m >> (n + i)) & 1:
                image |= 1 << (n + perm[i])
        out.append(image)
    return _rref(out)


def _fixed_count(n: int, perm: tuple[int, ...]) -> int:
    return sum(1 for L in all_lagrangians(n) if _permute_rows(n, L.rows, perm) == L.rows)


# --- structure maps ---------------------------------------------------------


def product(a: OrbitClass, b: OrbitClass) -> OrbitClass:
    """Class of the direct sum; commutative because block swaps permute."""
    return canonicalize(direct_sum(a.representative, b.representative))


def coproduct(a: OrbitClass) -> dict[tuple[OrbitClass, OrbitClass], int]:
    """Sum over coordinate splittings of reduced class pairs, with counts."""
    L = a.representative
    n = a.n
    out: dict[tuple[OrbitClass, OrbitClass], int] = {}
    for mask in range(1 << n):
        left = tuple(i + 1 for i in range(n) if (mask >> i) & 1)
        right = tuple(i + 1 for i in range(n) if not (mask >> i) & 1)
        key = (canonicalize(reduce(L, left)), canonicalize(reduce(L, right)))
        out[key] = out.get(key, 0) + 1
    return out


def counit(a: OrbitClass) -> int:
    return 1 if a.n == 0 else 0


class LinComb:
    """Integer combination of orbit classes."""

    __slots__ = ("terms",)

    def __init__(self, terms=()):
        self.terms = {k: v for k, v in dict(terms).items() if v}

    def __add__(self, other: "LinComb") -> "LinComb":
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, 0) + v
        return LinComb(out)

    def __sub__(self, other: "LinComb") -> "LinComb":
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, 0) - v
        return LinComb(out)

    def scaled(self, c: int) -> "LinComb":
        return LinComb({k: c * v for k, v in self.terms.items()})

    def __eq__(self, other) -> bool:
        if not isinstance(other, LinComb):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for k in sorted(self.terms):
            c = self.terms[k]
            mag = abs(c)
            piece = f"{mag}*{k}" if mag != 1 else str(k)
            if not parts:
                parts.append(("-" if c < 0 else "") + piece)
            else:
                parts.append(("- " if c < 0 else "+ ") + piece)
        return " ".join(parts)


def four_element(L: Lagrangian, i: int, j: int) -> LinComb:
    """[L] - [T1 L] - [T2 L] + [T1 T2 L] for the sliding pair at (i, j)."""
    n = L.n
    if i == j:
        raise PreconditionError("the two indices must differ")
    t1 = v1_map(n, i, j)
    t2 = v2_map(n, i, j)
    l1 = apply(t1, L)
    l2 = apply(t2, L)
    l12 = apply(t1, l2)
    out = LinComb({canonicalize(L): 1})
    out = out - LinComb({canonicalize(l1): 1})
    out = out - LinComb({canonicalize(l2): 1})
    out = out + LinComb({canonicalize(l12): 1})
    return out


# --- the four-term quotient --------------------------------------------------


def _four_generators(k: int) -> list[LinComb]:
    gens = []
    for cls in orbit_classes(k):
        rep = cls.representative
        for i in range(1, k + 1):
            for j in range(1, k + 1):
                if i != j:
                    gens.append(four_element(rep, i, j))
    return gens


def _extend_by_class(xi: LinComb, m: OrbitClass) -> LinComb:
    out: dict[OrbitClass, int] = {}
    for k, v in xi.terms.items():
        key = product(k, m)
        out[key] = out.get(key, 0) + v
    return LinComb(out)


def _relations(n: int, threads: int = 1) -> list[LinComb]:
    """The grade-n slice of the four-term ideal, as combinations.

    One four-term combination per orbit representative and ordered index
    pair at every grade k from 2 to n, padded up to grade n by direct
    sums with every class of grade n - k.  Work shards are independent;
    the output order is fixed regardless of the thread count.
    """
    if n < 2:
        return []
    jobs = []
    for k in range(2, n + 1):
        pads = orbit_classes(n - k) if k < n else None
        for cls in orbit_classes(k):
            rep = cls.representative
            for i in range(1, k + 1):
                for j in range(1, k + 1):
                    if i != j:
                        jobs.append((rep, i, j, pads))

    def build(job):
        rep, i, j, pads = job
        xi = four_element(rep, i, j)
        if pads is None:
            return [xi]
        return [_extend_by_class(xi, m) for m in pads]

    if threads > 1:
        from concurrent.futures import ThreadPoolExecutor

        with ThreadPoolExecutor(max_workers=threads) as pool:
            chunks = list(pool.map(build, jobs))
    else:
        chunks = [build(job) for job in jobs]
    return [rel for chunk in chunks for rel in chunk]


def _relation_matrix(n: int, threads: int = 1) -> list[list[int]]:
    basis = orbit_classes(n)
    index = {cls: t for t, cls in enumerate(basis)}
    rows = []
    for rel in _relations(n, threads):
        row = [0] * len(basis)
        for cls, c in rel.terms.items():
            row[index[cls]] = c
        rows.append(row)
    return rows


def _rank_mod(rows: list[list[int]], p: int) -> int:
    import numpy as np

    if not rows:
        return 0
    a = np.array(rows, dtype=np.int64) % p
    rank = 0
    height, width = a.shape
    for col in range(width):
        piv = None
        for r in range(rank, height):
            if a[r, col]:
                piv = r
                break
        if piv is None:
            continue
        a[[rank, piv]] = a[[piv, rank]]
        inv = pow(int(a[rank, col]), p - 2, p)
        a[rank] = (a[rank] * inv) % p
        rest = a[rank + 1 :]
        hit = rest[:, col] != 0
        if hit.any():
            rest[hit] = (rest[hit] - np.outer(rest[hit, col], a[rank])) % p
        rank += 1
        if rank == height:
            break
    return rank


def _checked_rank(rows: list[list[int]]) -> int:
    ranks = {_rank_mod(rows, p) for p in RANK_PRIMES}
    if len(ranks) != 1:
        raise InternalCheckError("modular ranks disagree between the two primes")
    return ranks.pop()


_RANK_CACHE: dict[int, int] = {}


def relation_rank(n: int, threads: int = 1) -> int:
    """Rank of the grade-n slice of the four-term ideal.

    Computed modulo both primes in RANK_PRIMES; a mismatch raises
    InternalCheckError.  The entries stay in -2..2, far below either
    prime, so agreement certifies the rational rank.
    """
    if n not in _RANK_CACHE:
        _RANK_CACHE[n] = _checked_rank(_relation_matrix(n, threads))
    return _RANK_CACHE[n]


def quotient_dimension(n: int) -> int:
    """Grade-n dimension after killing the ideal of four-term combinations."""
    return grade_dimension(n) - relation_rank(n)


def realized_rank(n: int, classes, threads: int = 1) -> int:
    """Rank of the span of the given grade-n classes inside the quotient.

    Evidence toward how much of the quotient the supplied classes cover:
    stacks one indicator row per class on top of the relation matrix and
    reports the rank gain over the relations alone.
    """
    basis = orbit_classes(n)
    index = {cls: t for t, cls in enumerate(basis)}
    rows = _relation_matrix(n, threads)
    for cls in classes:
        if cls.n != n:
            raise PreconditionError("class grade does not match the requested grade")
        row = [0] * len(basis)
        row[index[cls]] = 1
        rows.append(row)
    return _checked_rank(rows) - relation_rank(n, threads)
