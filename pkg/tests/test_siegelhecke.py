from fractions import Fraction

import pytest

from quatlift import fixture as fx
from quatlift.siegelhecke import (LocalFactor, PoleError, SatakePair,
                                  cosets_pairwise_inequivalent,
                                  eigenvalue_extract, hecke_Tp, hecke_cosets,
                                  lambda_N, rankin_selberg_local,
                                  rankin_selberg_matches_dirichlet,
                                  standard_L_local, _symplectic_defect)
from quatlift.yoshida import FourierExpansionSiegel2, TruncationError


@pytest.fixture(scope="module")
def lift_950():
    return fx.golden_lift(950)


def test_coset_counts():
    assert len(hecke_cosets(2)) == 15
    assert len(hecke_cosets(3)) == 40
    assert len(hecke_cosets(5)) == 156


def test_cosets_are_symplectic_similitudes():
    for p in (2, 3):
        for rep in hecke_cosets(p):
            m = rep.matrix()
            assert _symplectic_defect(m, p)
            a, d = rep.a, rep.d
            adt = [[sum(a[i][k] * d[j][k] for k in range(2)) for j in range(2)]
                   for i in range(2)]
            assert adt == [[p, 0], [0, p]]


def test_cosets_pairwise_inequivalent():
    assert cosets_pairwise_inequivalent(2)
    assert cosets_pairwise_inequivalent(3)


def test_hecke_eigenvalues(lift_950):
    for p in (2, 3):
        image = hecke_Tp(lift_950, p)
        assert eigenvalue_extract(lift_950, image) == fx.HECKE_EIGENVALUES[p]


def test_hecke_commutation(lift_950):
    t23 = hecke_Tp(hecke_Tp(lift_950, 2), 3)
    t32 = hecke_Tp(hecke_Tp(lift_950, 3), 2)
    assert t23.agrees_with(t32)


def test_hecke_zero_and_scaling(lift_950):
    zero = FourierExpansionSiegel2(3, 17, 400)
    assert hecke_Tp(zero, 2).is_zero()
    scaled = lift_950.scale(Fraction(7, 3))
    image = hecke_Tp(scaled, 2)
    assert eigenvalue_extract(scaled, image) == fx.HECKE_EIGENVALUES[2]


def test_hecke_bad_prime_and_bound():
    f = FourierExpansionSiegel2(3, 17, 100)
    with pytest.raises(ValueError):
        hecke_Tp(f, 17)
    tiny = FourierExpansionSiegel2(3, 17, 3)
    with pytest.raises(TruncationError):
        hecke_Tp(tiny, 2)


def test_odd_weight_ambiguous_support_maps_to_zero():
    # force raw entries onto ambiguous forms: lookups and T(p) must treat them as 0
    f = FourierExpansionSiegel2(3, 17, 400)
    f.entries[(1, 1, 6)] = Fraction(32)
    f.entries[(2, 0, 5)] = Fraction(-7)
    assert f.coefficient((1, 1, 6)) == 0
    assert hecke_Tp(f, 2).is_zero()


def test_eigenvalue_extract_edge_cases(lift_950):
    zero = lift_950.scale(0)
    assert eigenvalue_extract(lift_950, zero) == 0
    with pytest.raises(ValueError):
        eigenvalue_extract(zero, zero)
    broken = lift_950.scale(1)
    t = next(iter(broken.entries))
    broken.entries[t] *= 2
    with pytest.raises(ValueError):
        eigenvalue_extract(lift_950, broken)


def test_standard_factor_trivial_pair():
    f = standard_L_local(SatakePair.trivial(7), SatakePair.trivial(7), 2, 7)
    assert f.coeffs == [1, -5, 10, -10, 5, -1]  # (1 - X)^5


def test_standard_factor_degree_n3():
    b1 = SatakePair(2, 4, Fraction(-3))
    b2 = SatakePair(2, 2, Fraction(-1))
    f2 = standard_L_local(b1, b2, 2, 2)
    f3 = standard_L_local(b1, b2, 3, 2)
    extra = LocalFactor(2, [1, -2]) * LocalFactor(2, [1, Fraction(-1, 2)])
    assert f3 == f2 * extra
    assert f3.degree == 7


def test_standard_equals_zeta_times_shifted_tensor():
    for p, af, ag in ((2, -3, -1), (3, -8, 0), (5, 6, -2)):
        std = standard_L_local(SatakePair(p, 4, Fraction(af)),
                               SatakePair(p, 2, Fraction(ag)), 2, p)
        rs = rankin_selberg_local(af, ag, 4, 2, p)
        shifted = rs.scale_variable(Fraction(1, p ** 2))
        assert std == LocalFactor(p, [1, -1]) * shifted


def test_rankin_selberg_zero_eigenvalues():
    p, k1, k2 = 3, 4, 2
    f = rankin_selberg_local(0, 0, k1, k2, p)
    w = k1 + k2 - 2
    assert f.coeffs == [1, 0, -2 * Fraction(p) ** w, 0, Fraction(p) ** (2 * w)]


def test_rankin_selberg_dirichlet_recursion():
    for p, af, ag in ((2, -3, -1), (3, -8, 0), (5, 6, -2)):
        assert rankin_selberg_matches_dirichlet(af, ag, 4, 2, p)


def test_nonvanishing_at_fixture_primes():
    for p, af, ag in ((2, -3, -1), (3, -8, 0), (5, 6, -2)):
        std = standard_L_local(SatakePair(p, 4, Fraction(af)),
                               SatakePair(p, 2, Fraction(ag)), 2, p)
        val = std.evaluate_inverse_at(float(p) ** -1.0)
        assert abs(val) > 1e-9


def test_lambda_values():
    assert lambda_N(1, 3, 1.0) == 1.0
    v = lambda_N(17, 2, 1.0)
    assert abs(v - 1.0 / ((1 - 17.0 ** -2) * (1 - 17.0 ** -1))) < 1e-12
    with pytest.raises(PoleError):
        lambda_N(17, 3, 1.0)


def test_lambda_nonessential_variant():
    full = lambda_N(17, 3, 2.0)
    q = 17.0 ** ((-2 * 2.0 - 1) / 2)
    repl = lambda_N(17, 3, 2.0, nonessential={17: (1, 2.0)})
    by_hand = 1.0 / ((1 + 2.0 * q + q * q) * (1 - 17.0 ** (-2.0 - 2 + 3)))
    assert abs(repl - by_hand) < 1e-12
    assert repl != full


def test_local_factor_printing():
    f = LocalFactor(2, [1, -5, 4])
    assert str(f) == "1 - 5*X + 4*X^2"


def test_even_weight_eisenstein_eigenvalue(class_set_17, space0):
    # independent calibration of T(p): the lift of the constant pair is an
    # eigenform with eigenvalue (1 + p^{k-2})(1 + p^{k-1}) at weight k = 2
    from quatlift.brandt import constant_form
    from quatlift.yoshida import yoshida2
    one = constant_form(class_set_17)
    ye = yoshida2(class_set_17, one, one, 600, space0)
    for p in (2, 3):
        assert eigenvalue_extract(ye, hecke_Tp(ye, p)) == 2 * (1 + p)
