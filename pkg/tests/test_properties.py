"""Invariant suites: algebra axioms, enumeration invariance, reduction orbits,
equivalence-relation structure on a pool of ideals."""

from fractions import Fraction

from hypothesis import given, settings
from hypothesis import strategies as st

from quatlift import fixture as fx
from quatlift import linalg
from quatlift.binforms import apply_unimodular, disc, is_ambiguous, reduce_form
from quatlift.quatcore import (Lattice, QuatElement, ideal_equivalent,
                               p_neighbors, reduce_right_ideal, short_vectors)

rationals = st.fractions(min_value=-6, max_value=6, max_denominator=4)


def element(coords):
    return QuatElement(fx.fixture_algebra(), coords)


@given(st.lists(rationals, min_size=8, max_size=8))
@settings(max_examples=120, deadline=None)
def test_conjugation_anti_automorphism(vals):
    x, y = element(vals[:4]), element(vals[4:])
    assert (x * y).conj() == y.conj() * x.conj()


@given(st.lists(rationals, min_size=8, max_size=8))
@settings(max_examples=120, deadline=None)
def test_norm_multiplicative(vals):
    x, y = element(vals[:4]), element(vals[4:])
    assert (x * y).norm() == x.norm() * y.norm()


@given(st.lists(rationals, min_size=12, max_size=12))
@settings(max_examples=60, deadline=None)
def test_associativity_random(vals):
    x, y, z = element(vals[:4]), element(vals[4:8]), element(vals[8:])
    assert (x * y) * z == x * (y * z)


@given(st.lists(rationals, min_size=4, max_size=4))
@settings(max_examples=80, deadline=None)
def test_trace_conj_identities(vals):
    x = element(vals)
    one = fx.fixture_algebra().unit()
    assert x + x.conj() == one * x.trace()
    assert x * x.conj() == one * x.norm()


unimods = st.sampled_from([((1, 1), (0, 1)), ((1, -1), (0, 1)), ((1, 0), (1, 1)),
                           ((0, -1), (1, 0)), ((1, 0), (0, -1))])


@given(st.integers(1, 8), st.integers(-8, 8), st.integers(1, 8),
       st.lists(unimods, min_size=0, max_size=4))
@settings(max_examples=200, deadline=None)
def test_reduce_form_orbit(a, b, c, word):
    if 4 * a * c - b * b <= 0:
        return
    base, base_sign = reduce_form((a, b, c))
    t = (a, b, c)
    det = 1
    for u in word:
        t = apply_unimodular(t, u)
        det *= u[0][0] * u[1][1] - u[0][1] * u[1][0]
    red, sign = reduce_form(t)
    assert red == base
    assert disc(t) == disc((a, b, c))
    if not is_ambiguous(base):
        assert sign == base_sign * det


@given(st.lists(st.integers(-2, 2), min_size=16, max_size=16), st.integers(1, 6))
@settings(max_examples=40, deadline=None)
def test_short_vector_counts_unimodular_invariant(entries, m):
    u = [entries[4 * i:4 * i + 4] for i in range(4)]
    u[0][0] = u[1][1] = u[2][2] = u[3][3] = 1
    for i in range(4):
        for j in range(i, 4):
            u[i][j] = int(i == j)  # lower triangular unipotent: always unimodular
    g = fx.order_r1().gram
    ufr = linalg.frac_mat(u)
    g2 = linalg.mat_mul(linalg.mat_mul(ufr, g), linalg.transpose(ufr))
    assert len(short_vectors(g, m)) == len(short_vectors(g2, m))


def test_ideal_equivalence_is_equivalence_relation():
    order = fx.order_r1()
    pool = [Lattice(order.algebra, order.basis, "ideal")]
    for p in (2, 3, 5):
        fresh = []
        for ideal in pool[:2]:
            for nb in p_neighbors(ideal, order, p):
                fresh.append(reduce_right_ideal(nb, order))
        pool.extend(fresh)
        if len(pool) >= 10:
            break
    pool = pool[:12]
    assert len(pool) >= 10
    eq = [[ideal_equivalent(a, b) for b in pool] for a in pool]
    n = len(pool)
    for i in range(n):
        assert eq[i][i]  # reflexive
        for j in range(n):
            assert eq[i][j] == eq[j][i]  # symmetric
            for k in range(n):
                if eq[i][j] and eq[j][k]:
                    assert eq[i][k]  # transitive


def test_brandt_blocks_independent_of_representative_scaling(class_set_17, space1):
    # cross lattices are rescaled per ideal norms; the q-normalization makes the
    # Brandt operator independent of which integral representative was found
    from quatlift.brandt import brandt_matrix
    b = brandt_matrix(class_set_17, 1, 2, space1)
    phi1 = fx.phi1()
    assert b.apply(phi1).values == phi1.scale(-3).values


@given(st.lists(st.fractions(min_value=-4, max_value=4, max_denominator=3),
                min_size=9, max_size=9))
@settings(max_examples=40, deadline=None)
def test_charpoly_matches_sympy(vals):
    import sympy
    m = [vals[:3], vals[3:6], vals[6:]]
    ours = linalg.charpoly(linalg.frac_mat(m))
    x = sympy.Symbol("x")
    sym = sympy.Matrix([[sympy.Rational(v) for v in row] for row in m]).charpoly(x)
    theirs = [Fraction(str(c)) for c in sym.all_coeffs()]
    assert ours == theirs
