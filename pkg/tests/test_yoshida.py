import random
from fractions import Fraction

import pytest

from quatlift import fixture as fx
from quatlift.binforms import apply_unimodular, is_ambiguous, reduced_forms_up_to
from quatlift.brandt import constant_form
from quatlift.polys import Poly
from quatlift.quatcore import UsageError
from quatlift.yoshida import (FourierExpansionSiegel2, TruncationError,
                              is_cuspidal_up_to_bound, phi_operator,
                              theta1_counts, theta2_coefficient, yoshida1,
                              yoshida2)


def matrix_poly(m):
    """Bilinear polynomial Σ m[i][j]·x_i·y_j on pairs of lattice coordinates."""
    coeffs = {}
    for i in range(4):
        for j in range(4):
            if m[i][j]:
                e = [0] * 8
                e[i] = 1
                e[4 + j] = 1
                coeffs[tuple(e)] = Fraction(m[i][j])
    return Poly(8, coeffs)


def test_theta2_zero_form():
    p = matrix_poly(fx.P1_MATRIX)
    assert theta2_coefficient(fx.order_r1(), p, (0, 0, 0)) == 0


def test_theta2_alternating_diagonal():
    # pairs (x, x) contribute nothing for an alternating polynomial
    p = matrix_poly(fx.P1_MATRIX)
    assert theta2_coefficient(fx.order_r1(), p, (1, 2, 1)) == 0


def test_theta2_published_recipe():
    # the [2,1,3] coefficient assembles to 32 from the two published pieces
    c1 = theta2_coefficient(fx.order_r1(), matrix_poly(fx.P1_MATRIX), (2, 1, 3))
    c2 = theta2_coefficient(fx.ideal_i12(), matrix_poly(fx.P12_MATRIX), (2, 1, 3))
    assert c1 + c2 == fx.PRINTED_COEFFS[(2, 1, 3)]


def test_golden_lift_all_published_coefficients(golden_130):
    for t, v in fx.PRINTED_COEFFS.items():
        assert golden_130.coefficient(t) == v


def test_golden_lift_cuspidal(golden_130):
    assert is_cuspidal_up_to_bound(golden_130)
    assert phi_operator(golden_130).is_zero()


def test_golden_lift_ambiguous_vanish(golden_130):
    for t in reduced_forms_up_to(100):
        if is_ambiguous(t):
            assert golden_130.coefficient(t) == 0


def test_coefficient_symmetry(golden_130):
    rng = random.Random(9)
    units = [((1, 1), (0, 1)), ((1, 0), (1, 1)), ((0, -1), (1, 0)), ((1, 0), (0, -1))]
    stored = list(golden_130.entries)
    for _ in range(100):
        t = rng.choice(stored)
        u = rng.choice(units)
        det = u[0][0] * u[1][1] - u[0][1] * u[1][0]
        s = apply_unimodular(t, u)
        assert golden_130.coefficient(s) == det ** golden_130.weight * golden_130.coefficient(t)


def test_theory_path_equals_golden(golden_130):
    assert fx.fixture_lift(130).agrees_with(golden_130)


def test_yoshida2_rejects_vector_second_factor(class_set_17, space1):
    with pytest.raises(UsageError):
        yoshida2(class_set_17, fx.phi1(), fx.phi1(), 30, space1)


def test_yoshida2_bilinear(class_set_17, space1):
    phi1, phi2 = fx.phi1(), fx.phi2()
    base = yoshida2(class_set_17, phi1, phi2, 40, space1)
    assert yoshida2(class_set_17, phi1.scale(3), phi2, 40, space1).agrees_with(
        base.scale(3))
    assert yoshida2(class_set_17, phi1, phi2.scale(Fraction(-5, 2)), 40,
                    space1).agrees_with(base.scale(Fraction(-5, 2)))
    two = phi1.add(phi1.scale(1))
    assert yoshida2(class_set_17, two, phi2, 40, space1).agrees_with(base.scale(2))


def test_eisenstein_lift_not_cuspidal(class_set_17, space0):
    one = constant_form(class_set_17)
    ye = yoshida2(class_set_17, one, one, 40, space0)
    img = phi_operator(ye)
    assert not img.is_zero()
    assert all(img.coefficient(m) > 0 for m in range(0, 5))
    assert ye.coefficient((0, 0, 1)) == Fraction(2, 3)


def test_yoshida1_eichler(class_set_17, space0):
    phi2 = fx.phi2()
    y = yoshida1(class_set_17, phi2, phi2, 20, space0)
    assert y.coefficient(1) == 2  # = <phi2, phi2>
    assert y.coefficient(2) / y.coefficient(1) == -1  # Brandt eigenvalue at 2
    assert y.coefficient(5) / y.coefficient(1) == -2


def test_yoshida1_distinct_eigenforms_vanish(class_set_17, space0):
    y = yoshida1(class_set_17, constant_form(class_set_17), fx.phi2(), 20, space0)
    assert y.is_zero()


def test_yoshida1_eisenstein_positive(class_set_17, space0):
    one = constant_form(class_set_17)
    y = yoshida1(class_set_17, one, one, 20, space0)
    assert all(y.coefficient(m) > 0 for m in range(1, 21))


def test_yoshida1_degree_mismatch(class_set_17, space0):
    with pytest.raises(UsageError):
        yoshida1(class_set_17, fx.phi1(), fx.phi2(), 10, space0)


def test_theta1_linear_independence_witness():
    t1 = theta1_counts(fx.order_r1(), 20)
    t2 = theta1_counts(fx.order_r2(), 20)
    assert any(t1.coefficient(m) != t2.coefficient(m) for m in range(1, 21))


def test_expansion_container_rules():
    f = FourierExpansionSiegel2(3, 17, 50)
    f.set((2, 1, 3), 32)
    assert f.coefficient((2, 1, 3)) == 32
    assert f.coefficient((2, -1, 3)) == -32
    assert f.coefficient((3, -1, 2)) == 32
    assert f.coefficient((1, 1, 6)) == 0  # ambiguous in odd weight
    with pytest.raises(ValueError):
        f.set((1, 1, 6), 5)
    with pytest.raises(ValueError):
        f.set((3, 1, 2), 1)  # not reduced
    with pytest.raises(TruncationError):
        f.coefficient((7, 1, 9))


def test_phi_operator_zero_expansion():
    f = FourierExpansionSiegel2(3, 17, 30)
    assert phi_operator(f).is_zero()


def test_lift_scale_relates_polynomial_constants():
    # the expansion-level constant is the polynomial-level one divided by the
    # theta weight phi2(y_j)/(e_i·e_j) of each published piece
    e1, e2 = fx.UNIT_COUNTS
    w_r1 = Fraction(fx.PHI2_VALUES[0], e1 * e1)
    w_i12 = Fraction(fx.PHI2_VALUES[1], e1 * e2)
    assert fx.LIFT_SCALE * w_r1 == fx.P1_SCALE
    assert fx.LIFT_SCALE * w_i12 == fx.P12_SCALE


def test_yoshida1_matches_independent_brandt_eigenvalue(class_set_17, space0):
    from quatlift.brandt import brandt_matrix
    phi2 = fx.phi2()
    y = yoshida1(class_set_17, phi2, phi2, 20, space0)
    for p in (2, 3, 5):
        img = brandt_matrix(class_set_17, 0, p, space0).apply(phi2)
        lam = img.values[0][0] / phi2.values[0][0]
        assert img.values == phi2.scale(lam).values
        assert y.coefficient(p) / y.coefficient(1) == lam


def test_yoshida1_nu1_eichler(class_set_17, space1):
    # weight-4 side of the correspondence: ratios are the nu=1 Brandt eigenvalues,
    # and composite coefficients satisfy the Hecke recursions
    y = yoshida1(class_set_17, fx.phi1(), fx.phi1(), 12, space1)
    a1 = y.coefficient(1)
    assert a1 != 0
    a = {m: y.coefficient(m) / a1 for m in range(1, 13)}
    assert (a[2], a[3], a[5]) == (-3, -8, 6)
    assert a[4] == a[2] ** 2 - 2 ** 3
    assert a[6] == a[2] * a[3]
    assert a[9] == a[3] ** 2 - 3 ** 3
    assert a[10] == a[2] * a[5]
    assert a[12] == a[4] * a[3]
