"""Sparse multivariate polynomials with exact rational coefficients.

Keys are exponent tuples; values are Fractions.  Just enough arithmetic for
harmonic-polynomial work: add/mul/diff/linear substitution/evaluation.  The
number of variables is fixed per polynomial.
"""

from __future__ import annotations

from fractions import Fraction


class Poly:
    __slots__ = ("nvars", "coeffs")

    def __init__(self, nvars: int, coeffs=None):
        self.nvars = nvars
        self.coeffs: dict[tuple[int, ...], Fraction] = {}
        if coeffs:
            for mono, c in coeffs.items():
                c = Fraction(c)
                if c:
                    self.coeffs[tuple(mono)] = c

    @classmethod
    def zero(cls, nvars: int) -> "Poly":
        return cls(nvars)

    @classmethod
    def constant(cls, nvars: int, c) -> "Poly":
        return cls(nvars, {tuple([0] * nvars): Fraction(c)})

    @classmethod
    def variable(cls, nvars: int, i: int) -> "Poly":
        e = [0] * nvars
        e[i] = 1
        return cls(nvars, {tuple(e): Fraction(1)})

    @classmethod
    def monomial(cls, exps, c=1) -> "Poly":
        return cls(len(exps), {tuple(exps): Fraction(c)})

    def is_zero(self) -> bool:
        return not self.coeffs

    def degree(self) -> int:
        return max((sum(e) for e in self.coeffs), default=0)

    def is_homogeneous(self) -> bool:
        degs = {sum(e) for e in self.coeffs}
        return len(degs) <= 1

    def __eq__(self, other) -> bool:
        return isinstance(other, Poly) and self.nvars == other.nvars and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.nvars, tuple(sorted(self.coeffs.items()))))

    def __add__(self, other: "Poly") -> "Poly":
        out = dict(self.coeffs)
        for e, c in other.coeffs.items():
            s = out.get(e, Fraction(0)) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return Poly(self.nvars, out)

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def __neg__(self) -> "Poly":
        return Poly(self.nvars, {e: -c for e, c in self.coeffs.items()})

    def scale(self, c) -> "Poly":
        c = Fraction(c)
        if not c:
            return Poly(self.nvars)
        return Poly(self.nvars, {e: c * v for e, v in self.coeffs.items()})

    def __mul__(self, other):
        if not isinstance(other, Poly):
            return self.scale(other)
        out: dict[tuple[int, ...], Fraction] = {}
        for e1, c1 in self.coeffs.items():
            for e2, c2 in other.coeffs.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                s = out.get(e, Fraction(0)) + c1 * c2
                if s:
                    out[e] = s
                else:
                    out.pop(e, None)
        return Poly(self.nvars, out)

    __rmul__ = __mul__

    def diff(self, i: int) -> "Poly":
        out = {}
        for e, c in self.coeffs.items():
            if e[i]:
                e2 = list(e)
                e2[i] -= 1
                out[tuple(e2)] = c * e[i]
        return Poly(self.nvars, out)

    def eval(self, point) -> Fraction:
        total = Fraction(0)
        for e, c in self.coeffs.items():
            term = c
            for x, k in zip(point, e):
                if k:
                    term *= Fraction(x) ** k
            total += term
        return total

    def subs_polys(self, images: list["Poly"]) -> "Poly":
        """Substitute variable i -> images[i] (all over the same target ring)."""
        assert len(images) == self.nvars
        nv = images[0].nvars if images else self.nvars
        out = Poly.zero(nv)
        for e, c in self.coeffs.items():
            term = Poly.constant(nv, c)
            for img, k in zip(images, e):
                for _ in range(k):
                    term = term * img
            out = out + term
        return out

    def subs_linear(self, mat) -> "Poly":
        """Substitute x_i -> sum_j mat[i][j]·x_j (same number of variables)."""
        images = []
        for i in range(self.nvars):
            images.append(Poly(self.nvars, {tuple(int(j == k) for k in range(self.nvars)): mat[i][j]
                                            for j in range(self.nvars) if mat[i][j]}))
        return self.subs_polys(images)

    def coefficient_vector(self, monomials) -> list[Fraction]:
        return [self.coeffs.get(tuple(m), Fraction(0)) for m in monomials]

    def primitive(self) -> "Poly":
        """Scale so coefficients are coprime integers, first (sorted) one positive."""
        if not self.coeffs:
            return self
        import math
        num = 0
        den = 1
        for c in self.coeffs.values():
            num = math.gcd(num, c.numerator)
            den = den * c.denominator // math.gcd(den, c.denominator)
        g = Fraction(num, den)
        lead = self.coeffs[min(self.coeffs)]
        if lead < 0:
            g = -g
        return self.scale(1 / g)

    def __repr__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for e in sorted(self.coeffs, reverse=True):
            c = self.coeffs[e]
            mono = "*".join(f"x{i}^{k}" if k > 1 else f"x{i}"
                            for i, k in enumerate(e) if k)
            if mono:
                parts.append(f"{c}*{mono}" if c != 1 else mono)
            else:
                parts.append(str(c))
        return " + ".join(parts)


def monomials_of_degree(nvars: int, deg: int) -> list[tuple[int, ...]]:
    """All exponent tuples of total degree deg, in deterministic (lex) order."""
    if nvars == 1:
        return [(deg,)]
    out = []
    for k in range(deg, -1, -1):
        for rest in monomials_of_degree(nvars - 1, deg - k):
            out.append((k,) + rest)
    return out
