from fractions import Fraction

import pytest

from quatlift import fixture as fx
from quatlift import linalg
from helpers import hamilton_algebra, hurwitz_order
from quatlift.quatcore import (Lattice, QuaternionAlgebra, UsageError, class_set,
                               conj_trace_norm, gram_matrix, ideal_equivalent,
                               left_right_order, short_vectors, two_sided_ideal)


def det_by_cofactors(m):
    """Independent determinant oracle: recursive cofactor expansion."""
    n = len(m)
    if n == 1:
        return m[0][0]
    total = Fraction(0)
    for j in range(n):
        if m[0][j] == 0:
            continue
        minor = [row[:j] + row[j + 1:] for row in m[1:]]
        total += (-1) ** j * m[0][j] * det_by_cofactors(minor)
    return total


def test_basis_products(algebra):
    f1 = algebra.basis_element(1)
    f2 = algebra.basis_element(2)
    f3 = algebra.basis_element(3)
    one = algebra.unit()
    assert f1 * f2 == f1 + f2 - f3
    for x in (one, f1, f2, f3, f1 * f2 + f3 * 2):
        assert one * x == x and x * one == x
    assert f1 * f1 == one * (-2) + f1
    assert f1.trace() == 1 and f1.norm() == 2


def test_mismatched_algebras_rejected(algebra):
    other = QuaternionAlgebra(fx.STRUCTURE_CONSTANTS, [1, 0, 0, 0])
    with pytest.raises(UsageError):
        algebra.basis_element(1) * other.basis_element(2)


def test_conj_trace_norm(algebra):
    one = algebra.unit()
    xb, t, n = conj_trace_norm(one)
    assert (xb, t, n) == (one, 2, 1)
    f3 = algebra.basis_element(3)
    xb, t, n = conj_trace_norm(f3)
    assert xb == -f3 and t == 0 and n == 5
    f2 = algebra.basis_element(2)
    xb, t, n = conj_trace_norm(f2)
    assert xb == one - f2 and t == 1 and n == 3


def test_gram_matrices_match_published():
    assert [[int(x) for x in row] for row in gram_matrix(fx.order_r1())] == fx.R1_GRAM
    assert [[int(x) for x in row] for row in gram_matrix(fx.order_r2())] == fx.R2_GRAM
    assert [[int(x) for x in row] for row in gram_matrix(fx.ideal_i12())] == fx.I12_GRAM


def test_gram_determinants_against_cofactor_oracle():
    for lat in (fx.order_r1(), fx.order_r2(), fx.ideal_i12()):
        assert lat.gram_det == det_by_cofactors(lat.gram) == fx.GRAM_DET


def test_short_vectors_unit_counts():
    assert len(short_vectors(fx.order_r1().gram, 1)) == 2
    assert len(short_vectors(fx.order_r2().gram, 1)) == 6
    assert short_vectors(fx.order_r1().gram, 0) == [(0, 0, 0, 0)]


def test_short_vectors_rejects_indefinite():
    with pytest.raises(ValueError):
        short_vectors([[1, 0], [0, -1]], 1)


def test_short_vectors_negative_norm():
    with pytest.raises(ValueError):
        short_vectors(fx.order_r1().gram, -1)


def test_left_right_order_of_connecting_ideal():
    ol, orr = left_right_order(fx.ideal_i12())
    assert ol == fx.order_r2()
    assert orr == fx.order_r1()


def test_order_is_its_own_two_sided_ideal():
    r1 = fx.order_r1()
    ol, orr = left_right_order(r1)
    assert ol == r1 and orr == r1
    scaled = r1.scale(3)
    ol, orr = left_right_order(scaled)
    assert ol == r1 and orr == r1


def test_ideal_equivalence():
    r1 = fx.order_r1()
    as_ideal = Lattice(r1.algebra, r1.basis, "ideal")
    assert ideal_equivalent(as_ideal, as_ideal)
    i12 = fx.ideal_i12()
    assert not ideal_equivalent(as_ideal, i12)
    assert ideal_equivalent(i12, i12.scale(Fraction(5, 2)))


def test_ideal_equivalent_requires_same_right_order():
    conj = fx.ideal_i12().conjugate()  # right order R2, not R1
    with pytest.raises(UsageError):
        ideal_equivalent(fx.ideal_i12(), conj)


def test_class_set_fixture(class_set_17):
    assert class_set_17.h == 2
    assert tuple(class_set_17.unit_counts) == (2, 6)
    assert class_set_17.mass == Fraction(2, 3)
    assert class_set_17.ideals[0] == Lattice(class_set_17.order.algebra,
                                             class_set_17.order.basis, "ideal")


def test_class_set_rejects_bad_seed():
    with pytest.raises(UsageError):
        class_set(fx.order_r1(), 17)
    with pytest.raises(UsageError):
        class_set(fx.order_r1(), 4)


def test_hurwitz_class_number_one():
    hur = hurwitz_order()
    assert hur.level == 2 and hur.unit_count() == 24
    cs = class_set(hur, 3)
    assert cs.h == 1 and cs.mass == Fraction(1, 24)
    # independent oracle: every norm-3 neighbour ideal is principal
    from quatlift.quatcore import p_neighbors
    as_ideal = Lattice(hur.algebra, hur.basis, "ideal")
    nbs = p_neighbors(as_ideal, hur, 3)
    assert len(nbs) == 4
    for nb in nbs:
        gens = short_vectors(nb.gram, nb.norm_scale)
        assert gens, "neighbour of a class-number-one order must be principal"


def test_two_sided_ideal_at_17():
    r1 = fx.order_r1()
    p = two_sided_ideal(r1, 17)
    assert p.norm_scale == 17
    # it is exactly the norm-divisibility sublattice
    from quatlift.quatcore import short_vectors_upto
    for m, vecs in short_vectors_upto(r1.gram, 40).items():
        for v in vecs:
            x = r1.element_from(v)
            assert p.contains(x) == (x.norm() % 17 == 0)
    assert p.product(p) == r1.scale(17)
    with pytest.raises(UsageError):
        two_sided_ideal(r1, 5)


def test_short_vector_counts_unimodular_invariance():
    g = fx.order_r1().gram
    u = [[1, 1, 0, 0], [0, 1, 0, 0], [0, 0, 1, -2], [0, 0, 0, 1]]
    ufr = linalg.frac_mat(u)
    g2 = linalg.mat_mul(linalg.mat_mul(ufr, g), linalg.transpose(ufr))
    for m in (1, 2, 3, 5, 10):
        assert len(short_vectors(g, m)) == len(short_vectors(g2, m))


def test_all_maximal_order_gram_dets(class_set_17):
    for order in class_set_17.left_orders:
        assert order.gram_det == 289


def test_reduced_norm_determinant_relation(class_set_17):
    # det(Gram(I)) = n(I)^4 · det(Gram(right order)) for locally principal ideals
    from quatlift.quatcore import p_neighbors, reduce_right_ideal
    order = fx.order_r1()
    pool = [Lattice(order.algebra, order.basis, "ideal")]
    for p in (2, 3):
        pool += [reduce_right_ideal(nb, order) for nb in p_neighbors(pool[0], order, p)]
    for ideal in pool:
        _, right = left_right_order(ideal)
        assert ideal.gram_det == ideal.norm_scale ** 4 * right.gram_det
