"""Symmetric F_2 matrices as framed interlacement graphs.

A framed graph on vertices 1..n is a symmetric n-by-n matrix over F_2
whose diagonal marks the framed (twisted) vertices.  Partial duality
acts on such matrices by inverting a principal submatrix in place; the
submatrix is invertible exactly when the corresponding dual stays
one-vertex, local complementation is the one-index case, and the pivot
is the two-index case followed by swapping the pair.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import comb
from typing import Iterable, Mapping

from .errors import PreconditionError

__all__ = [
    "FramedGraphMatrix",
    "BivariatePolynomial",
    "cohn_lempel",
    "partial_dual_matrix",
    "local_complement",
    "pivot",
    "interlace_polynomial",
    "graph_to_lspace",
]

MAX_INTERLACE_SIZE = 20


@dataclass(frozen=True)
class FramedGraphMatrix:
    """Symmetric matrix over F_2; row i is an int mask with bit j-1 for column j."""

    n: int
    rows: tuple[int, ...]

    def __post_init__(self):
        if len(self.rows) != self.n:
            raise PreconditionError(f"expected {self.n} rows")
        for i, r in enumerate(self.rows):
            if not 0 <= r < (1 << self.n):
                raise PreconditionError(f"row {i + 1} has bits outside 1..{self.n}")
        for i in range(self.n):
            for j in range(i + 1, self.n):
                if (self.rows[i] >> j) & 1 != (self.rows[j] >> i) & 1:
                    raise PreconditionError(f"matrix is not symmetric at ({i + 1}, {j + 1})")

    def entry(self, i: int, j: int) -> int:
        return (self.rows[i - 1] >> (j - 1)) & 1

    def __str__(self) -> str:
        return "\n".join(
            " ".join(str((r >> j) & 1) for j in range(self.n)) for r in self.rows
        )


def _check_indices(M: FramedGraphMatrix, indices: Iterable[int]) -> tuple[int, ...]:
    out = tuple(sorted(set(indices)))
    for i in out:
        if not 1 <= i <= M.n:
            raise PreconditionError(f"vertex {i} out of range 1..{M.n}")
    return out


def _submatrix(M: FramedGraphMatrix, sub: tuple[int, ...]) -> list[int]:
    """Rows of M[sub, sub] compressed onto bits 0..len(sub)-1."""
    out = []
    for i in sub:
        r = M.rows[i - 1]
        out.append(sum(((r >> (j - 1)) & 1) << t for t, j in enumerate(sub)))
    return out


def _rank(rows: Iterable[int]) -> int:
    pivots: list[int] = []
    for r in rows:
        for p in pivots:
            r = min(r, r ^ p)
        if r:
            pivots.append(r)
    return len(pivots)


def _invert(rows: list[int]) -> list[int] | None:
    """Inverse of a k-by-k F_2 matrix given as masks, or None if singular."""
    k = len(rows)
    aug = [rows[i] | (1 << (k + i)) for i in range(k)]
    for col in range(k):
        piv = next((r for r in range(col, k) if (aug[r] >> col) & 1), None)
        if piv is None:
            return None
        aug[col], aug[piv] = aug[piv], aug[col]
        for r in range(k):
            if r != col and (aug[r] >> col) & 1:
                aug[r] ^= aug[col]
    return [a >> k for a in aug]


def cohn_lempel(M: FramedGraphMatrix, indices: Iterable[int]) -> bool:
    """Whether the principal submatrix on the given vertices is invertible.

    Dualizing a one-vertex ribbon graph at an edge set keeps it
    one-vertex exactly when this holds for the interlacement matrix.
    """
    sub = _check_indices(M, indices)
    return _rank(_submatrix(M, sub)) == len(sub)


def partial_dual_matrix(M: FramedGraphMatrix, indices: Iterable[int]) -> FramedGraphMatrix:
    """Invert the principal submatrix in place, adjusting the rest.

    Writing M in blocks (A B; B^T H) with H on the chosen vertices, the
    result is (A + B H^-1 B^T, B H^-1; H^-1 B^T, H^-1) with every block
    back in its original index positions.  The operation is an involution
    on matrices whose chosen submatrix is invertible.
    """
    sub = _check_indices(M, indices)
    comp = tuple(i for i in range(1, M.n + 1) if i not in sub)
    hinv = _invert(_submatrix(M, sub))
    if hinv is None:
        raise PreconditionError(f"submatrix at {{{', '.join(map(str, sub))}}} is singular")
    k = len(sub)
    bmask = [0] * (M.n + 1)  # vertex -> its row of B over sub-columns
    for i in comp:
        r = M.rows[i - 1]
        bmask[i] = sum(((r >> (j - 1)) & 1) << t for t, j in enumerate(sub))
    cmask = {}  # vertex -> its row of B H^-1 over sub-columns
    for i in comp:
        c = 0
        b = bmask[i]
        while b:
            t = (b & -b).bit_length() - 1
            c ^= hinv[t]
            b &= b - 1
        cmask[i] = c
    rows = [0] * M.n
    for a, i in enumerate(comp):
        r = 0
        ci = cmask[i]
        for j in comp:
            bit = M.entry(i, j) ^ ((ci & bmask[j]).bit_count() & 1)
            r |= bit << (j - 1)
        for t, j in enumerate(sub):
            r |= ((ci >> t) & 1) << (j - 1)
        rows[i - 1] = r
    for t, i in enumerate(sub):
        r = 0
        for j in comp:
            r |= ((cmask[j] >> t) & 1) << (j - 1)
        for s, j in enumerate(sub):
            r |= ((hinv[t] >> s) & 1) << (j - 1)
        rows[i - 1] = r
    return FramedGraphMatrix(M.n, tuple(rows))


def local_complement(M: FramedGraphMatrix, a: int) -> FramedGraphMatrix:
    """Toggle edges among the neighbours of a framed vertex a.

    Agrees with the partial dual at {a}; the framing of a is required.
    """
    (a,) = _check_indices(M, (a,))
    if not M.entry(a, a):
        raise PreconditionError(f"vertex {a} is not framed")
    colmask = M.rows[a - 1]
    rows = []
    for i in range(1, M.n + 1):
        r = M.rows[i - 1]
        if i != a and M.entry(i, a):
            r ^= colmask
            r ^= 1 << (a - 1)  # the border with a itself stays put
        rows.append(r)
    return FramedGraphMatrix(M.n, tuple(rows))


def pivot(M: FramedGraphMatrix, a: int, b: int) -> FramedGraphMatrix:
    """Toggle edges between the neighbour classes of an unframed pair a, b.

    Requires an edge between a and b and both framings absent; agrees
    with the partial dual at {a, b} followed by relabelling a and b.
    """
    if a == b:
        raise PreconditionError("pivot needs two distinct vertices")
    a, b = sorted(_check_indices(M, (a, b)))
    if M.entry(a, a) or M.entry(b, b):
        raise PreconditionError("pivot vertices must be unframed")
    if not M.entry(a, b):
        raise PreconditionError(f"vertices {a} and {b} are not adjacent")
    rows = list(M.rows)
    for i in range(1, M.n + 1):
        if i in (a, b):
            continue
        ria, rib = M.entry(i, a), M.entry(i, b)
        if not (ria or rib):
            continue
        r = rows[i - 1]
        for j in range(1, M.n + 1):
            if j in (a, b) or j == i:
                continue
            if (ria & M.entry(j, b)) ^ (rib & M.entry(j, a)):
                r ^= 1 << (j - 1)
        rows[i - 1] = r
    return FramedGraphMatrix(M.n, tuple(rows))


def interlace_polynomial(M: FramedGraphMatrix) -> "BivariatePolynomial":
    """Sum over vertex subsets of (x-1)^rank (y-1)^nullity of the cut-down matrix."""
    if M.n > MAX_INTERLACE_SIZE:
        raise PreconditionError(f"interlace polynomial limited to {MAX_INTERLACE_SIZE} vertices")
    coeffs: dict[tuple[int, int], int] = {}
    rows = M.rows
    n = M.n
    for s in range(1 << n):
        sel = []
        m = s
        while m:
            i = (m & -m).bit_length() - 1
            sel.append(rows[i] & s)
            m &= m - 1
        r = _rank(sel)
        for key, c in _expanded_term(r, len(sel) - r).items():
            coeffs[key] = coeffs.get(key, 0) + c
    return BivariatePolynomial(coeffs)


@lru_cache(maxsize=None)
def _expanded_term(r: int, s: int) -> Mapping[tuple[int, int], int]:
    """(x-1)^r (y-1)^s written out as monomial coefficients."""
    out = {}
    for a in range(r + 1):
        xa = comb(r, a) * (-1) ** (r - a)
        for b in range(s + 1):
            out[(a, b)] = xa * comb(s, b) * (-1) ** (s - b)
    return out


def graph_to_lspace(M: FramedGraphMatrix):
    """The Lagrangian spanned by e_i + sum_j M_ij f_j, one row per vertex."""
    from .f2sympl import Lagrangian, Subspace

    n = M.n
    rows = tuple((1 << i) | (M.rows[i] << n) for i in range(n))
    return Lagrangian(Subspace(n, rows))


class BivariatePolynomial:
    """Integer polynomial in two variables, kept as a monomial dict."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Mapping[tuple[int, int], int] = ()):
        self.coeffs = {k: v for k, v in dict(coeffs).items() if v}

    @classmethod
    def constant(cls, c: int) -> "BivariatePolynomial":
        return cls({(0, 0): c})

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            return self.coeffs == BivariatePolynomial.constant(other).coeffs
        if not isinstance(other, BivariatePolynomial):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(frozenset(self.coeffs.items()))

    def __add__(self, other: "BivariatePolynomial") -> "BivariatePolynomial":
        out = dict(self.coeffs)
        for k, v in other.coeffs.items():
            out[k] = out.get(k, 0) + v
        return BivariatePolynomial(out)

    def __sub__(self, other: "BivariatePolynomial") -> "BivariatePolynomial":
        out = dict(self.coeffs)
        for k, v in other.coeffs.items():
            out[k] = out.get(k, 0) - v
        return BivariatePolynomial(out)

    def __mul__(self, other: "BivariatePolynomial") -> "BivariatePolynomial":
        out: dict[tuple[int, int], int] = {}
        for (a, b), u in self.coeffs.items():
            for (c, d), v in other.coeffs.items():
                k = (a + c, b + d)
                out[k] = out.get(k, 0) + u * v
        return BivariatePolynomial(out)

    def evaluate(self, x: int, y: int) -> int:
        return sum(c * x**a * y**b for (a, b), c in self.coeffs.items())

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for (a, b) in sorted(self.coeffs, reverse=True):
            c = self.coeffs[(a, b)]
            mono = ("x" if a == 1 else f"x^{a}" if a else "") + (
                "y" if b == 1 else f"y^{b}" if b else ""
            )
            mag = str(abs(c)) if (abs(c) != 1 or not mono) else ""
            term = mag + mono
            if not parts:
                parts.append(("-" if c < 0 else "") + term)
            else:
                parts.append(("- " if c < 0 else "+ ") + term)
        return " ".join(parts)

    def __repr__(self) -> str:
        return f"BivariatePolynomial({self.coeffs!r})"
