"""End-to-end verification of the bundled level-17 example.

Runs every golden assertion of the pipeline and reports one pass/fail line per
check.  The same checks back the acceptance test suite; the CLI command
`verify-example` prints the table and exits nonzero on any failure.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass
from fractions import Fraction

from . import fixture as fx
from . import linalg
from .binforms import is_ambiguous, reduced_forms_up_to
from .brandt import atkin_lehner, brandt_matrix, constant_form, inner_product
from .harmonic import (HarmonicPoly, adapted_laplacian, default_frame,
                       harm_basis, lift_poly_deg1, lift_poly_deg2,
                       pairing_polys, tau_action)
from .polys import Poly
from .quatcore import QuatElement, short_vectors
from .siegelhecke import (LocalFactor, PoleError, SatakePair, eigenvalue_extract,
                          hecke_Tp, lambda_N, rankin_selberg_local,
                          rankin_selberg_matches_dirichlet, standard_L_local)
from .yoshida import is_cuspidal_up_to_bound, theta1_counts, yoshida1


@dataclass
class CheckResult:
    criterion: str
    name: str
    ok: bool
    detail: str = ""


class Report:
    def __init__(self):
        self.results: list[CheckResult] = []

    def check(self, criterion: str, name: str, ok: bool, detail: str = ""):
        self.results.append(CheckResult(criterion, name, bool(ok), detail))

    @property
    def ok(self) -> bool:
        return all(r.ok for r in self.results)

    def lines(self) -> list[str]:
        out = []
        for r in self.results:
            mark = "PASS" if r.ok else "FAIL"
            detail = f"  [{r.detail}]" if r.detail else ""
            out.append(f"[{mark}] {r.criterion}: {r.name}{detail}")
        return out


def check_fixture_arithmetic(report: Report) -> None:
    crit = "fixture arithmetic"
    cs = fx.fixture_class_set()
    report.check(crit, "class number and type number 2", cs.h == 2, f"h={cs.h}")
    report.check(crit, "unit counts {2, 6}", tuple(cs.unit_counts) == fx.UNIT_COUNTS,
                 f"e={cs.unit_counts}")
    for name, lat in (("R1", fx.order_r1()), ("R2", fx.order_r2()),
                      ("I12", fx.ideal_i12())):
        report.check(crit, f"Gram determinant of {name} is {fx.GRAM_DET}",
                     lat.gram_det == fx.GRAM_DET, f"det={lat.gram_det}")
    alg = fx.fixture_algebra()
    f1, f2, f3 = (alg.basis_element(i) for i in (1, 2, 3))
    report.check(crit, "tr(f1)=1, n(f1)=2", f1.trace() == 1 and f1.norm() == 2)
    report.check(crit, "n(f2)=3 and n(f3)=5", f2.norm() == 3 and f3.norm() == 5)
    diag = [fx.order_r1().gram[i][i] for i in range(4)]
    report.check(crit, "product table reproduces the Gram diagonal",
                 diag == [2, 4, 6, 10], f"diag={[int(x) for x in diag]}")
    report.check(crit, "mass equals 1/2 + 1/6 = 2/3", cs.mass == Fraction(2, 3),
                 f"mass={cs.mass}")


def check_eichler_side(report: Report) -> None:
    crit = "eichler side"
    cs = fx.fixture_class_set()
    sp0, sp1 = fx.fixture_space(0), fx.fixture_space(1)
    phi2, phi1 = fx.phi2(), fx.phi1()
    one = constant_form(cs)
    report.check(crit, "<phi2, 1> = 0", inner_product(phi2, one, cs, sp0) == 0)
    report.check(crit, "<phi2, phi2> = 2", inner_product(phi2, phi2, cs, sp0) == 2)
    for p in (2, 3, 5):
        sums = brandt_matrix(cs, 0, p, sp0).row_sums()
        report.check(crit, f"B(0)({p}) row sums = {p + 1}",
                     all(s == p + 1 for s in sums), f"sums={[str(s) for s in sums]}")
    eig = {}
    for nu, phi in ((0, phi2), (1, phi1)):
        space = sp0 if nu == 0 else sp1
        vals = {}
        ok_eigen = True
        for p in (2, 3, 5):
            img = brandt_matrix(cs, nu, p, space).apply(phi)
            lead_i, lead_j = next((i, j) for i, v in enumerate(phi.values)
                                  for j, x in enumerate(v) if x)
            lam = img.values[lead_i][lead_j] / phi.values[lead_i][lead_j]
            ok_eigen = ok_eigen and img.values == phi.scale(lam).values
            vals[p] = lam
        eig[nu] = vals
        report.check(crit, f"phi{2 - nu} simultaneous Brandt eigenform",
                     ok_eigen, f"eigenvalues={ {p: str(v) for p, v in vals.items()} }")
    w2 = atkin_lehner(phi2, cs, 17, sp0)
    w1 = atkin_lehner(phi1, cs, 17, sp1)
    report.check(crit, "equal involution eigenvalues under w17 (both +1)",
                 w2.values == phi2.values and w1.values == phi1.values)
    report.check(crit, "w17 is an involution",
                 atkin_lehner(w1, cs, 17, sp1).values == phi1.values)
    report.eichler_eigenvalues = eig


def check_lift_golden(report: Report, lift) -> None:
    crit = "lift golden test"
    matched = sum(1 for t, v in fx.PRINTED_COEFFS.items() if lift.coefficient(t) == v)
    report.check(crit, f"{matched}/13 printed coefficients match", matched == 13)
    report.check(crit, "singular coefficients vanish (cuspidal)",
                 is_cuspidal_up_to_bound(lift))
    ambiguous_zero = all(lift.coefficient(t) == 0
                         for t in reduced_forms_up_to(min(lift.bound, 100))
                         if is_ambiguous(t))
    report.check(crit, "ambiguous-form coefficients vanish (odd weight)", ambiguous_zero)
    theory = fx.fixture_lift(min(lift.bound, 130))
    report.check(crit, f"eigenform assembly matches the published one (x{fx.LIFT_SCALE})",
                 theory.agrees_with(lift))


def check_hecke_golden(report: Report, lift) -> None:
    crit = "hecke golden test"
    for p, expect in sorted(fx.HECKE_EIGENVALUES.items()):
        image = hecke_Tp(lift, p)
        lam = eigenvalue_extract(lift, image)
        report.check(crit, f"T({p}) eigenvalue = {expect}", lam == expect,
                     f"got {lam}, normalization constant p^0")
    t23 = hecke_Tp(hecke_Tp(lift, 2), 3)
    t32 = hecke_Tp(hecke_Tp(lift, 3), 2)
    report.check(crit, "T(2)T(3) = T(3)T(2) on the comparable range",
                 t23.agrees_with(t32))
    eig = getattr(report, "eichler_eigenvalues", None)
    if eig:
        rel = all(fx.HECKE_EIGENVALUES[p] == eig[1][p] + p * eig[0][p]
                  for p in (2, 3, 5))
        report.check(crit, "lift eigenvalue = a_p(phi1) + p·a_p(phi2)", rel)


def check_l_function_layer(report: Report) -> None:
    crit = "L-function layer"
    eig = getattr(report, "eichler_eigenvalues", None)
    if not eig:
        report.check(crit, "Brandt eigenvalues available", False)
        return
    ok_fact = ok_dir = ok_nonvanish = True
    for p in (2, 3, 5):
        af, ag = eig[1][p], eig[0][p]
        b1 = SatakePair(p, 4, af)
        b2 = SatakePair(p, 2, ag)
        std = standard_L_local(b1, b2, 2, p)
        rs = rankin_selberg_local(af, ag, 4, 2, p)
        shifted = rs.scale_variable(Fraction(1, p ** 2))
        ok_fact = ok_fact and std == LocalFactor(p, [1, -1]) * shifted
        ok_dir = ok_dir and rankin_selberg_matches_dirichlet(af, ag, 4, 2, p)
        val = std.evaluate_inverse_at(float(p) ** -1.0)
        ok_nonvanish = ok_nonvanish and abs(val) > 1e-9
    report.check(crit, "standard factor = zeta-factor × shifted tensor factor", ok_fact)
    report.check(crit, "tensor factor matches the Dirichlet recursion to X^6", ok_dir)
    report.check(crit, "normalized tensor value at s=1 nonzero at fixture primes",
                 ok_nonvanish)
    try:
        lambda_N(17, 3, 1.0)
        report.check(crit, "Lambda_17 pole at s=1 for n=3 signaled", False)
    except PoleError:
        report.check(crit, "Lambda_17 pole at s=1 for n=3 signaled", True)
    val = lambda_N(17, 2, 1.0)
    expect = 1.0 / ((1 - 17.0 ** -2) * (1 - 17.0 ** -1))
    report.check(crit, "Lambda_17 value for n=2 at s=1", abs(val - expect) < 1e-12,
                 f"{val:.12f}")
    report.check(crit, "Lambda_1 empty product = 1", lambda_N(1, 3, 1.0) == 1.0)


def check_property_suites(report: Report) -> None:
    crit = "property suites"
    alg = fx.fixture_algebra()
    basis = [alg.basis_element(i) for i in range(4)]
    assoc = all((x * y) * z == x * (y * z) for x in basis for y in basis for z in basis)
    report.check(crit, "associativity on all 64 basis triples", assoc)
    rng = random.Random(17)

    def rand_el():
        return QuatElement(alg, [Fraction(rng.randint(-9, 9), rng.randint(1, 4))
                                 for _ in range(4)])

    anti = all(((x * y).conj() == y.conj() * x.conj()) for x, y in
               [(rand_el(), rand_el()) for _ in range(100)])
    report.check(crit, "conjugation is an anti-automorphism (100 random pairs)", anti)
    normmult = all((x * y).norm() == x.norm() * y.norm() for x, y in
                   [(rand_el(), rand_el()) for _ in range(100)])
    report.check(crit, "norm multiplicativity (100 random pairs)", normmult)

    frame = default_frame(alg)
    ok_harm = True
    for nu in range(5):
        space = harm_basis(nu, frame)
        ok_harm = ok_harm and space.dim == 2 * nu + 1
        ok_harm = ok_harm and all(
            adapted_laplacian(p, frame.gram_inv).is_zero() for p in space.basis)
    report.check(crit, "harmonic spaces have dimension 2ν+1 with zero Laplacian (ν ≤ 4)",
                 ok_harm)
    r2 = fx.order_r2()
    units = [r2.element_from(v) for v in short_vectors(r2.gram, 1)]
    space1 = harm_basis(1, frame)
    ok_inv = True
    for u in units:
        for v in space1.basis:
            for w in space1.basis:
                tv = tau_action(u, HarmonicPoly(frame, v)).poly
                tw = tau_action(u, HarmonicPoly(frame, w)).poly
                ok_inv = ok_inv and (pairing_polys(tv, tw, frame.gram_inv)
                                     == pairing_polys(v, w, frame.gram_inv))
    report.check(crit, "pairing invariant under the 6 units of R2", ok_inv)

    cs = fx.fixture_class_set()
    v3 = HarmonicPoly(frame, Poly.variable(3, 2))
    lift8 = lift_poly_deg2(v3, fx.order_r1())
    g4inv = linalg.inverse(fx.order_r1().gram)
    ok_pluri = _laplacian8(lift8, g4inv, 0).is_zero() and \
        _laplacian8(lift8, g4inv, 4).is_zero()
    report.check(crit, "degree-2 lift polynomial is pluriharmonic", ok_pluri)
    d1 = lift_poly_deg1(v3, v3, fx.order_r1())
    lap = Poly.zero(4)
    for i in range(4):
        for j in range(4):
            if g4inv[i][j]:
                lap = lap + d1.diff(i).diff(j) * g4inv[i][j]
    report.check(crit, "degree-1 lift polynomial is adapted-harmonic", lap.is_zero())

    th1 = theta1_counts(fx.order_r1(), 20)
    th2 = theta1_counts(fx.order_r2(), 20)
    witness = next((m for m in range(1, 21)
                    if th1.coefficient(m) != th2.coefficient(m)), None)
    report.check(crit, "theta series of R1 and R2 differ at some m ≤ 20",
                 witness is not None, f"witness m={witness}")
    sp0 = fx.fixture_space(0)
    y0 = yoshida1(cs, constant_form(cs), fx.phi2(), 20, sp0)
    report.check(crit, "degree-1 lift of distinct eigenforms vanishes", y0.is_zero())
    y1 = yoshida1(cs, fx.phi2(), fx.phi2(), 20, sp0)
    report.check(crit, "degree-1 lift realizes the Hecke eigenvalue at p=2",
                 y1.coefficient(2) / y1.coefficient(1) == Fraction(-1))


def _laplacian8(poly: Poly, gram_inv, offset: int) -> Poly:
    out = Poly.zero(8)
    for i in range(4):
        for j in range(4):
            if gram_inv[i][j]:
                out = out + poly.diff(offset + i).diff(offset + j) * gram_inv[i][j]
    return out


def check_determinism(report: Report, bound: int = 60) -> None:
    crit = "determinism"
    from .serialize import dumps_canonical, expansion_to_obj
    one = dumps_canonical(expansion_to_obj(fx.golden_lift(bound, jobs=1)))
    two = dumps_canonical(expansion_to_obj(fx.golden_lift(bound, jobs=2)))
    report.check(crit, "lift output byte-identical across thread counts", one == two)
    again = dumps_canonical(expansion_to_obj(fx.golden_lift(bound, jobs=1)))
    report.check(crit, "lift output byte-identical across runs", one == again)


def run_all(lift_bound: int = 130, hecke_bound: int = 2600,
            jobs: int = 1, progress=None) -> Report:
    report = Report()
    steps = [
        ("fixture arithmetic", lambda: check_fixture_arithmetic(report)),
        ("eichler side", lambda: check_eichler_side(report)),
        ("lift golden test", lambda: check_lift_golden(
            report, fx.golden_lift(max(lift_bound, 130), jobs=jobs))),
        ("hecke golden test", lambda: check_hecke_golden(
            report, fx.golden_lift(hecke_bound, jobs=jobs))),
        ("L-function layer", lambda: check_l_function_layer(report)),
        ("property suites", lambda: check_property_suites(report)),
        ("determinism", lambda: check_determinism(report)),
    ]
    for name, step in steps:
        t0 = time.time()
        step()
        if progress:
            progress(f"{name} done in {time.time() - t0:.1f}s")
    return report
