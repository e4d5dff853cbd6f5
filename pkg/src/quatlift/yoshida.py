"""Degree-1 and degree-2 theta lifts as exact Fourier expansions.

Degree-2 expansions are dictionaries over canonical reduced binary forms with
an explicit validity bound in the discriminant; every lookup goes through the
sign-tracked reduction, which is what makes odd weight work.  The heavy pair
enumeration runs on int64 numpy tables (exact: all values are small integers),
with a pure-Python path for generic polynomial weights.
"""

from __future__ import annotations

from collections import defaultdict
from fractions import Fraction

import numpy as np

from . import linalg
from .binforms import (BinaryForm, disc, is_ambiguous, is_reduced, reduce_form,
                       reduced_forms_up_to)
from .brandt import AutomorphicForm, FormSpace
from .harmonic import HarmonicPoly, bilinear_matrix, lift_poly_deg1, lift_poly_deg2
from .polys import Poly
from .quatcore import ClassSet, Lattice, UsageError, short_vectors_upto


class TruncationError(ValueError):
    """A coefficient outside the expansion's validity bound was requested."""


class FourierExpansionSiegel2:
    """Finite map from canonical reduced forms to rationals, with weight and bound."""

    def __init__(self, weight: int, level: int, bound: int, entries=None,
                 singular_bound: int | None = None):
        self.weight = weight
        self.level = level
        self.bound = bound
        self.singular_bound = bound if singular_bound is None else singular_bound
        self.entries: dict[BinaryForm, Fraction] = {}
        for t, v in (entries or {}).items():
            self.set(t, v)

    def set(self, t: BinaryForm, value) -> None:
        t = tuple(int(x) for x in t)
        value = Fraction(value)
        if not is_reduced(t):
            raise ValueError(f"{t} is not canonical-reduced")
        if self.weight % 2 and is_ambiguous(t):
            if value != 0:
                raise ValueError(f"odd weight forces a zero coefficient at {t}")
            return
        if value != 0:
            self.entries[t] = value

    def coefficient(self, t) -> Fraction:
        red, sign = reduce_form(t)
        d = disc(red)
        if d > 0:
            if d > self.bound:
                raise TruncationError(f"form {t} has discriminant {d} > bound {self.bound}")
        else:
            if red[2] > self.singular_bound:
                raise TruncationError(f"singular form {t} exceeds bound {self.singular_bound}")
        val = self.entries.get(red, Fraction(0))
        if self.weight % 2:
            if is_ambiguous(red):
                return Fraction(0)
            return val if sign == 1 else -val
        return val

    def sorted_items(self):
        return sorted(self.entries.items(), key=lambda kv: (disc(kv[0]), kv[0][0], kv[0][1]))

    def positive_forms(self):
        return reduced_forms_up_to(self.bound)

    def singular_forms(self):
        return [(0, 0, m) for m in range(self.singular_bound + 1)]

    def is_zero(self) -> bool:
        return not self.entries

    def scale(self, c) -> "FourierExpansionSiegel2":
        c = Fraction(c)
        out = FourierExpansionSiegel2(self.weight, self.level, self.bound,
                                      singular_bound=self.singular_bound)
        if c:
            for t, v in self.entries.items():
                out.set(t, c * v)
        return out

    def add(self, other: "FourierExpansionSiegel2") -> "FourierExpansionSiegel2":
        assert self.weight == other.weight and self.level == other.level
        out = FourierExpansionSiegel2(self.weight, self.level,
                                      min(self.bound, other.bound),
                                      singular_bound=min(self.singular_bound,
                                                         other.singular_bound))
        keys = set(self.entries) | set(other.entries)
        for t in keys:
            v = self.entries.get(t, Fraction(0)) + other.entries.get(t, Fraction(0))
            if disc(t) <= out.bound and (disc(t) > 0 or t[2] <= out.singular_bound):
                out.set(t, v)
        return out

    def agrees_with(self, other: "FourierExpansionSiegel2") -> bool:
        """Equality on the common validity range."""
        bound = min(self.bound, other.bound)
        sb = min(self.singular_bound, other.singular_bound)
        for t in reduced_forms_up_to(bound):
            if self.coefficient(t) != other.coefficient(t):
                return False
        for m in range(sb + 1):
            if self.coefficient((0, 0, m)) != other.coefficient((0, 0, m)):
                return False
        return True


class QExpansion:
    """Finite q-expansion m ↦ a(m) with weight and level metadata."""

    def __init__(self, weight: int, level: int, bound: int, coeffs=None):
        self.weight = weight
        self.level = level
        self.bound = bound
        self.coeffs: dict[int, Fraction] = {}
        for m, v in (coeffs or {}).items():
            v = Fraction(v)
            if v:
                self.coeffs[int(m)] = v

    def coefficient(self, m: int) -> Fraction:
        if m > self.bound:
            raise TruncationError(f"coefficient {m} beyond bound {self.bound}")
        return self.coeffs.get(m, Fraction(0))

    def is_zero(self) -> bool:
        return not self.coeffs


def _int_matrix_and_den(rows) -> tuple[np.ndarray, int]:
    den = linalg.common_denominator([list(map(Fraction, r)) for r in rows])
    mat = np.array([[int(Fraction(x) * den) for x in row] for row in rows], dtype=np.int64)
    return mat, den


class ThetaEngine:
    """Pair enumeration over one lattice, with norms rescaled by the ideal norm."""

    def __init__(self, lattice: Lattice, max_norm: int):
        g = lattice.normalized_gram()
        for row in g:
            for x in row:
                if Fraction(x).denominator != 1:
                    raise ValueError("normalized Gram matrix is not integral")
        self.lattice = lattice
        self.gram = np.array([[int(x) for x in row] for row in g], dtype=np.int64)
        self.max_norm = max_norm
        buckets = short_vectors_upto(g, max_norm)
        self.vectors: dict[int, np.ndarray] = {}
        for m, vs in buckets.items():
            assert m.denominator == 1
            self.vectors[int(m)] = np.array(vs, dtype=np.int64)

    def vecs(self, m: int) -> np.ndarray:
        if m > self.max_norm:
            raise TruncationError("enumeration bound exceeded")
        return self.vectors.get(m, np.empty((0, 4), dtype=np.int64))

    def count(self, m: int) -> int:
        if m == 0:
            return 1
        return len(self.vecs(m))

    def pair_sums_bilinear(self, a: int, c: int, mat: np.ndarray) -> dict[int, int]:
        """For all b: Σ over pairs (x₁, x₂) with q = (a, b, c) of x₁ᵗ·mat·x₂."""
        va, vc = self.vecs(a), self.vecs(c)
        if not len(va) or not len(vc):
            return {}
        cross = va @ self.gram @ vc.T
        vals = va @ mat @ vc.T
        bmin = int(cross.min())
        offs = (cross - bmin).ravel()
        acc = np.zeros(int(cross.max()) - bmin + 1, dtype=np.int64)
        np.add.at(acc, offs, vals.ravel())
        return {b + bmin: int(s) for b, s in enumerate(acc) if s}

    def pair_counts(self, a: int, c: int) -> dict[int, int]:
        """For all b: the number of pairs with q = (a, b, c)."""
        va, vc = self.vecs(a), self.vecs(c)
        if not len(va) or not len(vc):
            return {}
        cross = va @ self.gram @ vc.T
        bmin = int(cross.min())
        counts = np.bincount((cross - bmin).ravel())
        return {b + bmin: int(s) for b, s in enumerate(counts) if s}


def theta2_coefficient(lattice: Lattice, lift_poly: Poly, t) -> Fraction:
    """Σ over pairs (x₁,x₂) in L² with q(x₁)=a, q(x₂)=c, B(x₁,x₂)/n₀=b of P(x₁,x₂).

    The lift polynomial takes the 8 lattice coordinates (already normalized by
    the caller if the lattice has a norm scale).
    """
    a, b, c = (int(x) for x in t)
    if a < 0 or c < 0:
        raise ValueError("negative norms")
    engine = ThetaEngine(lattice, max(a, c))
    zero = (0,) * 4
    total = Fraction(0)
    va = [zero] if a == 0 else [tuple(v) for v in engine.vecs(a)]
    vc = [zero] if c == 0 else [tuple(v) for v in engine.vecs(c)]
    gram = engine.gram
    for x1 in va:
        gx = gram @ np.array(x1, dtype=np.int64) if a else None
        for x2 in vc:
            crossval = int(gx @ np.array(x2, dtype=np.int64)) if a and c else 0
            if crossval != b:
                continue
            total += lift_poly.eval(list(x1) + list(x2))
    return total


def _lift_matrix(phi_poly: HarmonicPoly, cross: Lattice):
    p8 = lift_poly_deg2(phi_poly, cross)
    if p8.is_zero():
        return None, 1, p8
    if phi_poly.degree == 1:
        mat, den = _int_matrix_and_den(bilinear_matrix(p8))
        return mat, den, p8
    return None, 1, p8


def yoshida2(cs: ClassSet, phi1: AutomorphicForm, phi2: AutomorphicForm, bound: int,
             space1: FormSpace | None = None,
             singular_bound: int | None = None) -> FourierExpansionSiegel2:
    """Degree-2 lift: coefficient(T) = Σ_ij φ₂(y_j)·(1/e_ie_j)·θ(cross(i,j), P_{φ₁(y_i)})(T).

    φ₂ must have ν = 0 (scalar second factor); the result has weight ν₁ + 2.
    """
    if phi2.nu != 0:
        raise UsageError("only a scalar second factor is supported (ν₂ = 0)")
    nu1 = phi1.nu
    weight = nu1 + 2
    space1 = space1 or FormSpace(cs, nu1)
    frame = space1.frame
    if singular_bound is None:
        singular_bound = _max_norm_for_bound(bound)
    max_c = max(_max_norm_for_bound(bound), singular_bound)
    totals: dict[BinaryForm, Fraction] = defaultdict(Fraction)
    forms = reduced_forms_up_to(bound)
    for i in range(cs.h):
        vpoly = space1.space.poly_from_coords(phi1.values[i])
        if vpoly.is_zero():
            continue
        hp = HarmonicPoly(frame, vpoly)
        for j in range(cs.h):
            wj = phi2.values[j][0]
            if not wj:
                continue
            cross = cs.cross_lattice(i, j)
            n0 = cross.norm_scale
            scale = wj / (Fraction(cs.unit_counts[i] * cs.unit_counts[j]) * n0 ** nu1)
            mat, den, p8 = _lift_matrix(hp, cross)
            if p8.is_zero():
                continue
            engine = ThetaEngine(cross, max_c)
            _accumulate_psd(totals, engine, mat, den, p8, scale, forms, nu1,
                            singular_bound)
    out = FourierExpansionSiegel2(weight, cs.order.level, bound,
                                  singular_bound=singular_bound)
    for t, v in totals.items():
        if v and not (weight % 2 and disc(t) > 0 and is_ambiguous(t)):
            out.set(t, v)
        elif v:
            raise AssertionError(f"nonzero coefficient at ambiguous form {t} in odd weight")
    return out


def _max_norm_for_bound(bound: int) -> int:
    # reduced forms with disc ≤ bound have c ≤ (bound + b²)/(4a) ≤ (bound + 1)//3
    return max((bound + 1) // 3, 1)


def _accumulate_psd(totals, engine: ThetaEngine, mat, den, p8: Poly, scale: Fraction,
                    forms, nu1: int, singular_bound: int) -> None:
    by_ac: dict[tuple[int, int], list[int]] = defaultdict(list)
    for (a, b, c) in forms:
        by_ac[(a, c)].append(b)
    for (a, c), bs in sorted(by_ac.items()):
        if mat is not None:
            sums = engine.pair_sums_bilinear(a, c, mat)
            for b in bs:
                s = sums.get(b, 0)
                if s:
                    totals[(a, b, c)] += scale * Fraction(s, den)
        elif nu1 == 0:
            counts = engine.pair_counts(a, c)
            c0 = p8.eval([0] * 8)
            for b in bs:
                n = counts.get(b, 0)
                if n:
                    totals[(a, b, c)] += scale * c0 * n
        else:
            for b in bs:
                val = theta2_coefficient(engine.lattice, p8, (a, b, c))
                if val:
                    totals[(a, b, c)] += scale * val
    # singular entries [0, 0, m]: pairs (0, x₂) with q(x₂) = m
    for m in range(singular_bound + 1):
        if mat is not None:
            continue  # bilinear polynomials vanish when one argument is zero
        if nu1 == 0:
            c0 = p8.eval([0] * 8)
            totals[(0, 0, m)] += scale * c0 * engine.count(m)
        else:
            vecs = [(0,) * 4] if m == 0 else [tuple(v) for v in engine.vecs(m)]
            s = sum((p8.eval([0] * 4 + list(v)) for v in vecs), Fraction(0))
            if s:
                totals[(0, 0, m)] += scale * s


def yoshida1(cs: ClassSet, phi1: AutomorphicForm, phi2: AutomorphicForm, bound: int,
             space: FormSpace | None = None) -> QExpansion:
    """Degree-1 lift a(m) = Σ_ij (1/e_ie_j)·Σ_{x ∈ cross(i,j), q(x)=m} P_ij(x)."""
    if phi1.nu != phi2.nu:
        raise UsageError("degree-1 lift requires equal harmonic degrees")
    nu = phi1.nu
    space = space or FormSpace(cs, nu)
    frame = space.frame
    coeffs: dict[int, Fraction] = defaultdict(Fraction)
    for i in range(cs.h):
        p1 = space.space.poly_from_coords(phi1.values[i])
        if p1.is_zero():
            continue
        v1 = HarmonicPoly(frame, p1)
        for j in range(cs.h):
            p2 = space.space.poly_from_coords(phi2.values[j])
            if p2.is_zero():
                continue
            v2 = HarmonicPoly(frame, p2)
            cross = cs.cross_lattice(i, j)
            n0 = cross.norm_scale
            lift = lift_poly_deg1(v1, v2, cross)
            if lift.is_zero():
                continue
            scale = Fraction(1, cs.unit_counts[i] * cs.unit_counts[j]) / n0 ** nu
            buckets = short_vectors_upto(cross.normalized_gram(), bound)
            for m, vecs in buckets.items():
                s = sum((lift.eval(v) for v in vecs), Fraction(0))
                if s:
                    coeffs[int(m)] += scale * s
            if nu == 0:
                coeffs[0] += scale * lift.eval((0,) * 4)
    return QExpansion(2 + 2 * nu, cs.order.level, bound, coeffs)


def theta1_counts(lattice: Lattice, bound: int) -> QExpansion:
    """Degree-1 theta series of a lattice with trivial weight: a(m) = #{x : q(x) = m}."""
    buckets = short_vectors_upto(lattice.normalized_gram(), bound)
    coeffs = {0: Fraction(1)}
    for m, vecs in buckets.items():
        coeffs[int(m)] = Fraction(len(vecs))
    return QExpansion(2, 0, bound, coeffs)


def phi_operator(f: FourierExpansionSiegel2) -> QExpansion:
    """Siegel Φ-operator on the expansion: m ↦ a([m, 0, 0])."""
    coeffs = {}
    for m in range(f.singular_bound + 1):
        coeffs[m] = f.coefficient((m, 0, 0))
    return QExpansion(f.weight, f.level, f.singular_bound, coeffs)


def is_cuspidal_up_to_bound(f: FourierExpansionSiegel2) -> bool:
    """Zero Φ-image and vanishing singular coefficients within the stored range."""
    return phi_operator(f).is_zero()
