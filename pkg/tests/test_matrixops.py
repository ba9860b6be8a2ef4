"""Framed-graph matrix calculus.

The interlace polynomial is cross-checked against a from-scratch
expansion that does its own Gaussian elimination, so the two paths
share no rank code.
"""

from math import comb
from random import Random

import pytest

from lspaces.errors import PreconditionError
from lspaces.f2sympl import apply, as_lagrangian, mu_map, to_matrix
from lspaces.homomap import intersection_matrix, lspace
from lspaces.matrixops import (
    MAX_INTERLACE_SIZE,
    BivariatePolynomial,
    FramedGraphMatrix,
    cohn_lempel,
    graph_to_lspace,
    interlace_polynomial,
    local_complement,
    partial_dual_matrix,
    pivot,
)
from lspaces.ribbon import chord_diagram, partial_dual, vertex_count


def M(*rows):
    n = len(rows)
    return FramedGraphMatrix(n, tuple(sum(bit << j for j, bit in enumerate(r)) for r in rows))


def P(coeffs):
    return BivariatePolynomial(coeffs)


X = P({(1, 0): 1})
Y = P({(0, 1): 1})
ONE = BivariatePolynomial.constant(1)


def random_symmetric(n, rng):
    rows = [0] * n
    for i in range(n):
        for j in range(i, n):
            if rng.random() < 0.5:
                rows[i] |= 1 << j
                rows[j] |= 1 << i
    return FramedGraphMatrix(n, tuple(rows))


def swapped(mat, a, b):
    idx = list(range(mat.n))
    idx[a - 1], idx[b - 1] = idx[b - 1], idx[a - 1]
    rows = []
    for i in idx:
        rows.append(sum(((mat.rows[i] >> j) & 1) << k for k, j in enumerate(idx)))
    return FramedGraphMatrix(mat.n, tuple(rows))


def f2_rank(rows, width):
    rows = list(rows)
    rank = 0
    for bit in range(width):
        piv = next((k for k in range(rank, len(rows)) if (rows[k] >> bit) & 1), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        for k in range(len(rows)):
            if k != rank and (rows[k] >> bit) & 1:
                rows[k] ^= rows[rank]
        rank += 1
    return rank


def oracle_interlace(mat):
    coeffs = {}
    for s in range(1 << mat.n):
        idx = [i for i in range(mat.n) if (s >> i) & 1]
        sub = [
            sum(((mat.rows[i] >> j) & 1) << k for k, j in enumerate(idx)) for i in idx
        ]
        r = f2_rank(sub, len(idx))
        nu = len(idx) - r
        for a in range(r + 1):
            for b in range(nu + 1):
                c = comb(r, a) * (-1) ** (r - a) * comb(nu, b) * (-1) ** (nu - b)
                coeffs[(a, b)] = coeffs.get((a, b), 0) + c
    return BivariatePolynomial(coeffs)


# --- the matrix type -----------------------------------------------------------


def test_matrix_validation():
    with pytest.raises(PreconditionError):
        FramedGraphMatrix(2, (1,))
    with pytest.raises(PreconditionError):
        FramedGraphMatrix(2, (4, 0))
    with pytest.raises(PreconditionError):
        M([0, 1], [0, 0])
    mat = M([1, 1], [1, 0])
    assert mat.entry(1, 1) == 1 and mat.entry(2, 1) == 1 and mat.entry(2, 2) == 0
    assert str(mat) == "1 1\n1 0"


# --- Cohn-Lempel ----------------------------------------------------------------


def test_cohn_lempel_on_the_crossing_matrix():
    mat = M([0, 1], [1, 0])
    assert cohn_lempel(mat, {1}) is False
    assert cohn_lempel(mat, {1, 2}) is True


def test_cohn_lempel_on_a_twisted_chord():
    assert cohn_lempel(M([1]), {1}) is True


def test_cohn_lempel_of_the_empty_set():
    assert cohn_lempel(M([0, 1], [1, 0]), ()) is True


def test_cohn_lempel_rejects_bad_indices():
    with pytest.raises(PreconditionError):
        cohn_lempel(M([0, 1], [1, 0]), {3})


def test_cohn_lempel_detects_one_vertex_duals():
    rng = Random(3)
    for _ in range(150):
        n = rng.randint(1, 6)
        word = list(range(1, n + 1)) * 2
        rng.shuffle(word)
        G = chord_diagram(tuple(word), {e for e in range(1, n + 1) if rng.random() < 0.5})
        J = {e for e in range(1, n + 1) if rng.random() < 0.5}
        assert cohn_lempel(intersection_matrix(G), J) == (
            vertex_count(partial_dual(G, J)) == 1
        )


# --- the dual at the matrix level -------------------------------------------------


def test_dual_matrix_of_the_crossing():
    assert partial_dual_matrix(M([0, 1], [1, 0]), {1, 2}) == M([0, 1], [1, 0])


def test_dual_matrix_of_a_twisted_chord():
    assert partial_dual_matrix(M([1]), {1}) == M([1])


def test_dual_matrix_with_a_complement_block():
    mat = M([0, 1, 1], [1, 0, 0], [1, 0, 0])
    assert partial_dual_matrix(mat, {1, 2}) == M([0, 1, 0], [1, 0, 1], [0, 1, 0])


def test_dual_matrix_at_the_empty_set():
    mat = M([1, 1], [1, 0])
    assert partial_dual_matrix(mat, ()) == mat


def test_dual_matrix_reports_singular_blocks():
    with pytest.raises(PreconditionError, match="singular"):
        partial_dual_matrix(M([0, 1], [1, 0]), {1})


def test_dual_matrix_is_an_involution():
    rng = Random(5)
    done = 0
    while done < 150:
        n = rng.randint(1, 7)
        mat = random_symmetric(n, rng)
        J = {i for i in range(1, n + 1) if rng.random() < 0.5}
        if not cohn_lempel(mat, J):
            continue
        assert partial_dual_matrix(partial_dual_matrix(mat, J), J) == mat
        done += 1


def test_dual_matrix_agrees_with_the_surface_route():
    rng = Random(6)
    done = 0
    while done < 120:
        n = rng.randint(1, 6)
        word = list(range(1, n + 1)) * 2
        rng.shuffle(word)
        G = chord_diagram(tuple(word), {e for e in range(1, n + 1) if rng.random() < 0.5})
        J = {e for e in range(1, n + 1) if rng.random() < 0.5}
        mat = intersection_matrix(G)
        if not cohn_lempel(mat, J):
            continue
        Lag = lspace(G)
        for i in sorted(J):
            Lag = apply(mu_map(n, i), Lag)
        assert graph_to_lspace(partial_dual_matrix(mat, J)) == Lag
        done += 1


# --- local complementation and pivot ----------------------------------------------


def test_local_complement_fills_the_path():
    assert local_complement(M([0, 1, 0], [1, 1, 1], [0, 1, 0]), 2) == M(
        [1, 1, 1], [1, 1, 1], [1, 1, 1]
    )


def test_local_complement_fixes_a_lone_framed_vertex():
    assert local_complement(M([1]), 1) == M([1])


def test_local_complement_is_an_involution():
    rng = Random(7)
    done = 0
    while done < 150:
        mat = random_symmetric(rng.randint(1, 7), rng)
        framed = [i for i in range(1, mat.n + 1) if mat.entry(i, i)]
        if not framed:
            continue
        a = framed[rng.randrange(len(framed))]
        assert local_complement(local_complement(mat, a), a) == mat
        done += 1


def test_local_complement_is_the_single_vertex_dual():
    for bits in range(1 << 10):
        rows = [0] * 4
        k = 0
        for i in range(4):
            for j in range(i, 4):
                if (bits >> k) & 1:
                    rows[i] |= 1 << j
                    rows[j] |= 1 << i
                k += 1
        mat = FramedGraphMatrix(4, tuple(rows))
        for a in range(1, 5):
            if mat.entry(a, a):
                assert local_complement(mat, a) == partial_dual_matrix(mat, {a})


def test_local_complement_rejects_unframed_vertices():
    with pytest.raises(PreconditionError, match="not framed"):
        local_complement(M([0, 1], [1, 1]), 1)


def test_pivot_fixes_the_star():
    mat = M([0, 1, 1], [1, 0, 0], [1, 0, 0])
    assert pivot(mat, 1, 2) == mat


def test_pivot_fixes_a_lone_edge():
    mat = M([0, 1], [1, 0])
    assert pivot(mat, 1, 2) == mat


def test_pivot_is_an_involution():
    rng = Random(8)
    done = 0
    while done < 150:
        mat = random_symmetric(rng.randint(2, 7), rng)
        pairs = [
            (a, b)
            for a in range(1, mat.n + 1)
            for b in range(a + 1, mat.n + 1)
            if mat.entry(a, b) and not mat.entry(a, a) and not mat.entry(b, b)
        ]
        if not pairs:
            continue
        a, b = pairs[rng.randrange(len(pairs))]
        assert pivot(pivot(mat, a, b), a, b) == mat
        done += 1


def test_pivot_is_the_two_vertex_dual_after_a_relabel():
    for bits in range(1 << 10):
        rows = [0] * 4
        k = 0
        for i in range(4):
            for j in range(i, 4):
                if (bits >> k) & 1:
                    rows[i] |= 1 << j
                    rows[j] |= 1 << i
                k += 1
        mat = FramedGraphMatrix(4, tuple(rows))
        for a in range(1, 5):
            for b in range(a + 1, 5):
                if mat.entry(a, b) and not mat.entry(a, a) and not mat.entry(b, b):
                    expected = swapped(partial_dual_matrix(mat, {a, b}), a, b)
                    assert pivot(mat, a, b) == expected


def test_pivot_rejects_bad_vertex_pairs():
    with pytest.raises(PreconditionError, match="unframed"):
        pivot(M([1, 1], [1, 0]), 1, 2)
    with pytest.raises(PreconditionError, match="not adjacent"):
        pivot(M([0, 0], [0, 0]), 1, 2)
    with pytest.raises(PreconditionError, match="distinct"):
        pivot(M([0, 1], [1, 0]), 1, 1)


# --- interlace polynomial -----------------------------------------------------------


def test_interlace_of_the_empty_matrix():
    assert interlace_polynomial(FramedGraphMatrix(0, ())) == 1


def test_interlace_of_single_vertices():
    assert interlace_polynomial(M([0])) == Y
    assert interlace_polynomial(M([1])) == X


def test_interlace_of_a_single_edge():
    assert interlace_polynomial(M([0, 1], [1, 0])) == X * X - P({(1, 0): 2}) + P({(0, 1): 2})


def test_interlace_matches_the_expansion_oracle():
    rng = Random(9)
    for _ in range(80):
        mat = random_symmetric(rng.randint(0, 6), rng)
        assert interlace_polynomial(mat) == oracle_interlace(mat)


def test_interlace_is_multiplicative_over_direct_sums():
    rng = Random(10)
    for _ in range(60):
        a = random_symmetric(rng.randint(0, 4), rng)
        b = random_symmetric(rng.randint(0, 4), rng)
        rows = tuple(r for r in a.rows) + tuple(r << a.n for r in b.rows)
        both = FramedGraphMatrix(a.n + b.n, rows)
        assert interlace_polynomial(both) == interlace_polynomial(a) * interlace_polynomial(b)


def test_interlace_top_term_is_rank_and_nullity():
    rng = Random(11)
    for _ in range(60):
        mat = random_symmetric(rng.randint(0, 6), rng)
        r = f2_rank(list(mat.rows), mat.n)
        assert interlace_polynomial(mat).coeffs.get((r, mat.n - r)) == 1


def test_interlace_respects_the_size_bound():
    n = MAX_INTERLACE_SIZE + 1
    with pytest.raises(PreconditionError, match="limited"):
        interlace_polynomial(FramedGraphMatrix(n, (0,) * n))


# --- the matrix to L-space embedding ---------------------------------------------------


def test_graph_to_lspace_examples():
    assert graph_to_lspace(M([0])) == as_lagrangian(1, (0b01,))
    assert graph_to_lspace(M([1])) == as_lagrangian(1, (0b11,))
    assert graph_to_lspace(M([0, 1], [1, 0])) == as_lagrangian(2, (0b1001, 0b0110))


def test_graph_to_lspace_round_trips():
    rng = Random(12)
    for _ in range(120):
        mat = random_symmetric(rng.randint(1, 7), rng)
        assert to_matrix(graph_to_lspace(mat)) == mat


# --- polynomial arithmetic ------------------------------------------------------------


def test_polynomial_equality_and_zero():
    assert P({}) == 0
    assert X - X == 0
    assert str(X - X) == "0"
    assert BivariatePolynomial.constant(3) == 3


def test_polynomial_arithmetic():
    p = (X + Y) * (X - Y)
    assert p == X * X - Y * Y
    assert p.evaluate(3, 2) == 5


def test_polynomial_str_orders_terms():
    q = X * X - P({(1, 0): 2}) + P({(0, 1): 2})
    assert str(q) == "x^2 - 2x + 2y"
    assert str(X * Y + ONE) == "xy + 1"
