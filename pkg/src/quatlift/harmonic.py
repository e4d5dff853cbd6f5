"""Harmonic polynomials on the trace-zero part of a definite quaternion algebra.

The degree-ν space U_ν is the kernel of the Laplacian adapted to the rational
Gram matrix of a trace-zero frame (never an orthonormal real frame, so all
arithmetic stays exact).  Also provides the conjugation action, the Fischer
pairing with adapted gradient, and the two concrete lift-polynomial families
used by the theta series.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

from . import linalg
from .polys import Poly, monomials_of_degree
from .quatcore import Lattice, QuatElement, QuaternionAlgebra, UsageError


class TraceZeroFrame:
    """A rational basis g₁, g₂, g₃ of the trace-zero subspace with its Gram matrix."""

    def __init__(self, algebra: QuaternionAlgebra, elements: list[QuatElement]):
        if len(elements) != 3 or any(e.trace() != 0 for e in elements):
            raise ValueError("frame must consist of 3 trace-zero elements")
        self.algebra = algebra
        self.elements = elements
        rows = [list(e.coords) for e in elements]
        b = algebra.bilinear
        self.gram = linalg.mat_mul(linalg.mat_mul(rows, b), linalg.transpose(rows))
        self.gram_inv = linalg.inverse(self.gram)
        # coords(x) · _solve = (t₁, t₂, t₃, s) with x = Σ tᵢgᵢ + s·1
        full = rows + [list(algebra.one)]
        self._solve = linalg.inverse(full)

    def coords_of(self, x: QuatElement) -> list[Fraction]:
        t = linalg.vec_mat(list(x.coords), self._solve)
        if t[3] != 0:
            raise ValueError("element is not trace-zero")
        return t[:3]

    def sym_coords(self, coords: list[Poly]) -> list[Poly]:
        """Frame coordinates of a trace-zero element with polynomial coordinates."""
        out = []
        for col in range(4):
            acc = Poly.zero(coords[0].nvars)
            for i in range(4):
                cij = self._solve[i][col]
                if cij:
                    acc = acc + coords[i] * cij
            out.append(acc)
        if not out[3].is_zero():
            raise ValueError("symbolic element is not trace-zero")
        return out[:3]

    def __eq__(self, other):
        return (isinstance(other, TraceZeroFrame) and self.algebra is other.algebra
                and all(a == b for a, b in zip(self.elements, other.elements)))

    def __hash__(self):
        return hash(tuple(e.coords for e in self.elements))


def default_frame(algebra: QuaternionAlgebra) -> TraceZeroFrame:
    """Frame spanned by the trace-zero parts of the algebra basis (first 3 independent)."""
    one = algebra.unit()
    cands = []
    for i in range(4):
        f = algebra.basis_element(i)
        g = f - one * (f.trace() / 2)
        if not g.is_zero():
            cands.append(g)
    for skip in range(len(cands) - 2):
        chosen = cands[skip:skip + 3]
        rows = [list(e.coords) for e in chosen]
        if linalg.rank(rows) == 3:
            return TraceZeroFrame(algebra, chosen)
    raise ValueError("could not build a trace-zero frame")


@dataclass(frozen=True)
class HarmonicPoly:
    frame: TraceZeroFrame
    poly: Poly

    @property
    def degree(self) -> int:
        return self.poly.degree()

    def __call__(self, x: QuatElement) -> Fraction:
        return self.poly.eval(self.frame.coords_of(x))


def adapted_laplacian(poly: Poly, gram_inv) -> Poly:
    out = Poly.zero(poly.nvars)
    n = len(gram_inv)
    for i in range(n):
        for j in range(n):
            if gram_inv[i][j]:
                out = out + poly.diff(i).diff(j) * gram_inv[i][j]
    return out


class HarmSpace:
    """Basis of the 2ν+1 dimensional space of degree-ν adapted-harmonic polynomials."""

    def __init__(self, nu: int, frame: TraceZeroFrame):
        self.nu = nu
        self.frame = frame
        self.monomials = monomials_of_degree(3, nu)
        self.basis = self._harmonic_basis()
        self._basis_mat = [p.coefficient_vector(self.monomials) for p in self.basis]

    def _harmonic_basis(self) -> list[Poly]:
        nu = self.nu
        if nu == 0:
            return [Poly.constant(3, 1)]
        lower = monomials_of_degree(3, nu - 2) if nu >= 2 else []
        rows = []
        for tgt in lower:
            row = []
            for mono in self.monomials:
                p = adapted_laplacian(Poly.monomial(mono), self.frame.gram_inv)
                row.append(p.coeffs.get(tgt, Fraction(0)))
            rows.append(row)
        if not rows:
            rows = [[Fraction(0)] * len(self.monomials)]
        kernel = linalg.nullspace(rows)
        basis = []
        for v in kernel:
            p = Poly(3, {m: c for m, c in zip(self.monomials, v) if c})
            basis.append(p.primitive())
        assert len(basis) == 2 * nu + 1
        return basis

    @property
    def dim(self) -> int:
        return len(self.basis)

    def poly_from_coords(self, coords) -> Poly:
        acc = Poly.zero(3)
        for c, p in zip(coords, self.basis):
            if c:
                acc = acc + p * Fraction(c)
        return acc

    def coords_of_poly(self, poly: Poly) -> list[Fraction]:
        target = poly.coefficient_vector(self.monomials)
        sol = linalg.solve(linalg.transpose(self._basis_mat), target)
        if sol is None:
            raise ValueError("polynomial is not in the harmonic space")
        return sol

    @cached_property
    def pairing_matrix(self) -> linalg.Matrix:
        return [[pairing_polys(p, q, self.frame.gram_inv) for q in self.basis]
                for p in self.basis]

    def pair_coords(self, u, v) -> Fraction:
        m = self.pairing_matrix
        return sum(Fraction(u[i]) * m[i][j] * Fraction(v[j])
                   for i in range(self.dim) for j in range(self.dim))


def harm_basis(nu: int, frame: TraceZeroFrame) -> HarmSpace:
    return HarmSpace(nu, frame)


def _apply_adapted_gradient(values: dict, i: int, gram_inv, nvars: int) -> dict:
    """Apply D_i = Σ_j ginv[i][j]·∂_j to a dict {exponent tuple: coefficient}."""
    out: dict = {}
    for e, val in values.items():
        for j in range(nvars):
            if e[j] and gram_inv[i][j]:
                e2 = list(e)
                e2[j] -= 1
                contrib = val * (gram_inv[i][j] * e[j])
                key = tuple(e2)
                out[key] = out[key] + contrib if key in out else contrib
    return out


def pairing_polys(v: Poly, w: Poly, gram_inv) -> Fraction:
    """Fischer pairing with adapted gradient: (v(D)·w)(0), normalized so ⟨⟨1,1⟩⟩ = 1."""
    nvars = v.nvars
    total = Fraction(0)
    zero = tuple([0] * nvars)
    for e, c in v.coeffs.items():
        values: dict = dict(w.coeffs)
        for i in range(nvars):
            for _ in range(e[i]):
                values = _apply_adapted_gradient(values, i, gram_inv, nvars)
        if zero in values:
            total += c * values[zero]
    return total


def pairing(v: HarmonicPoly, w: HarmonicPoly) -> Fraction:
    if v.frame != w.frame:
        raise UsageError("polynomials live on different frames")
    if v.poly.degree() != w.poly.degree() and not (v.poly.is_zero() or w.poly.is_zero()):
        raise UsageError("pairing requires equal degrees")
    return pairing_polys(v.poly, w.poly, v.frame.gram_inv)


def conjugation_matrix(y: QuatElement, frame: TraceZeroFrame) -> linalg.Matrix:
    """3×3 matrix C with frame-coords(ȳ·g_l·y) in row l (so z ↦ ȳzy is t ↦ t·C)."""
    yb = y.conj()
    rows = []
    for g in frame.elements:
        rows.append(frame.coords_of(yb * g * y))
    return rows


def integral_tau_poly(y: QuatElement, hp: HarmonicPoly) -> HarmonicPoly:
    """P ↦ P(ȳ·z·y), the integral form n(y)^ν·τ(y) of the conjugation action."""
    c = conjugation_matrix(y, hp.frame)
    return HarmonicPoly(hp.frame, hp.poly.subs_linear(linalg.transpose(c)))


def tau_action(y: QuatElement, hp: HarmonicPoly) -> HarmonicPoly:
    """(τ(y)P)(z) = P(y⁻¹·z·y); exact, defined for any invertible y."""
    n = y.norm()
    if not n:
        raise UsageError("cannot act by an element of norm 0")
    nu = hp.degree
    return HarmonicPoly(hp.frame, integral_tau_poly(y, hp).poly.scale(Fraction(1) / n ** nu))


def integral_tau_matrix(y: QuatElement, space: HarmSpace) -> linalg.Matrix:
    """Matrix of P ↦ P(ȳ·z·y) on the U_ν basis (row convention: coords' = coords·M)."""
    c = conjugation_matrix(y, space.frame)
    ct = linalg.transpose(c)
    return [space.coords_of_poly(p.subs_linear(ct)) for p in space.basis]


def _sym_from_basis(basis_rows, nvars: int, var_offset: int) -> list[Poly]:
    """Coordinates of Σ_k X_{offset+k}·b_k for lattice basis rows b_k."""
    coords = []
    for col in range(4):
        c = Poly.zero(nvars)
        for k, row in enumerate(basis_rows):
            if row[col]:
                c = c + Poly.variable(nvars, var_offset + k) * row[col]
        coords.append(c)
    return coords


def _sym_mul(algebra: QuaternionAlgebra, u: list[Poly], v: list[Poly]) -> list[Poly]:
    nvars = u[0].nvars
    out = [Poly.zero(nvars) for _ in range(4)]
    for i in range(4):
        if u[i].is_zero():
            continue
        for j in range(4):
            if v[j].is_zero():
                continue
            prod = u[i] * v[j]
            for k in range(4):
                cijk = algebra.c[i][j][k]
                if cijk:
                    out[k] = out[k] + prod * cijk
    return out


def _sym_conj(algebra: QuaternionAlgebra, u: list[Poly]) -> list[Poly]:
    nvars = u[0].nvars
    tr = Poly.zero(nvars)
    for t, c in zip(algebra.trace_vec, u):
        if t:
            tr = tr + c * t
    return [tr * algebra.one[k] - u[k] for k in range(4)]


def _sym_pim(algebra: QuaternionAlgebra, u: list[Poly]) -> list[Poly]:
    """u minus its trace part: the projection to the trace-zero subspace."""
    nvars = u[0].nvars
    tr = Poly.zero(nvars)
    for t, c in zip(algebra.trace_vec, u):
        if t:
            tr = tr + c * t
    return [u[k] - tr * (algebra.one[k] / Fraction(2)) for k in range(4)]


def lift_poly_deg2(v: HarmonicPoly, lattice: Lattice) -> Poly:
    """P_v(x₁, x₂) = v(pim(x̄₁·x₂)) in lattice coordinates (x₁ = vars 0-3, x₂ = vars 4-7).

    Bilinear of bidegree (ν, ν), alternating for odd ν, and annihilated by both
    adapted 4-variable Laplacians.
    """
    algebra = lattice.algebra
    frame = v.frame
    x1 = _sym_from_basis(lattice.basis, 8, 0)
    x2 = _sym_from_basis(lattice.basis, 8, 4)
    u = _sym_mul(algebra, _sym_conj(algebra, x1), x2)
    t = frame.sym_coords(_sym_pim(algebra, u))
    return v.poly.subs_polys(t)


def bilinear_matrix(p: Poly) -> list[list[Fraction]]:
    """Extract M with P(x, y) = xᵗ·M·y from a bidegree-(1,1) polynomial in 8 variables."""
    m = [[Fraction(0)] * 4 for _ in range(4)]
    for e, c in p.coeffs.items():
        idx = [i for i, k in enumerate(e) if k]
        if sum(e) != 2 or len(idx) > 2:
            raise ValueError("polynomial is not bilinear of bidegree (1,1)")
        if len(idx) == 1:
            raise ValueError("polynomial mixes variables within one argument")
        i, j = idx
        if i >= 4 or j < 4:
            raise ValueError("polynomial is not bilinear of bidegree (1,1)")
        m[i][j - 4] = c
    return m


def lift_poly_deg1(v1: HarmonicPoly, v2: HarmonicPoly, lattice: Lattice) -> Poly:
    """P(x) = ⟨⟨v₁, z ↦ v₂(x̄·z·x)⟩⟩ in lattice coordinates; degree 2ν, adapted-harmonic."""
    if v1.frame != v2.frame:
        raise UsageError("lift factors live on different frames")
    if v1.degree != v2.degree:
        raise UsageError("lift factors must have equal degree")
    algebra = lattice.algebra
    frame = v1.frame
    # variables 0-3: lattice coordinates of x; 4-6: frame coordinates of z
    x = _sym_from_basis(lattice.basis, 7, 0)
    z = [Poly.zero(7) for _ in range(4)]
    for l, g in enumerate(frame.elements):
        for col in range(4):
            if g.coords[col]:
                z[col] = z[col] + Poly.variable(7, 4 + l) * g.coords[col]
    u = _sym_mul(algebra, _sym_mul(algebra, _sym_conj(algebra, x), z), x)
    t = frame.sym_coords(_sym_pim(algebra, u))
    w = v2.poly.subs_polys(t)
    # split into z-monomials with Poly(4) values, then pair against v1 over z
    values: dict[tuple[int, int, int], Poly] = {}
    for e, c in w.coeffs.items():
        zpart = e[4:7]
        xpart = e[:4]
        poly = Poly(4, {xpart: c})
        values[zpart] = values[zpart] + poly if zpart in values else poly
    zero = (0, 0, 0)
    total = Poly.zero(4)
    for e, c in v1.poly.coeffs.items():
        vals = values
        for i in range(3):
            for _ in range(e[i]):
                vals = _apply_adapted_gradient(vals, i, frame.gram_inv, 3)
        if zero in vals:
            total = total + vals[zero] * c
    return total
