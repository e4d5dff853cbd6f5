"""Definite quaternion algebras over Q with exact rational arithmetic.

Elements, lattices (orders and ideals), Gram matrices, short-vector
enumeration, ideal classes and two-sided ideals.  Everything is immutable
after construction and deterministic: vector lists are lexicographically
sorted, class representatives are produced in BFS discovery order.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import cached_property

from . import linalg
from .linalg import Matrix, floor_sqrt_fraction


class UsageError(ValueError):
    """Raised when an operation's preconditions are violated."""


def frac_gcd(values) -> Fraction:
    num, den = 0, 1
    for v in values:
        v = Fraction(v)
        num = math.gcd(num, abs(v.numerator))
        den = den * v.denominator // math.gcd(den, v.denominator)
    return Fraction(num, den)


class QuaternionAlgebra:
    """Rank-4 rational algebra given by structure constants f_i·f_j = Σ_k c[i][j][k]·f_k."""

    def __init__(self, structure_constants, unit_coords, name: str = "D"):
        self.c = tuple(tuple(tuple(Fraction(x) for x in vec) for vec in row)
                       for row in structure_constants)
        self.one = tuple(Fraction(x) for x in unit_coords)
        self.name = name
        self.trace_vec = self._trace_vector()
        self.bilinear = self._bilinear_matrix()

    def element(self, coords) -> "QuatElement":
        return QuatElement(self, coords)

    def basis_element(self, i: int) -> "QuatElement":
        return QuatElement(self, [Fraction(int(j == i)) for j in range(4)])

    def unit(self) -> "QuatElement":
        return QuatElement(self, self.one)

    def mul_coords(self, a, b) -> tuple[Fraction, ...]:
        out = [Fraction(0)] * 4
        c = self.c
        for i in range(4):
            ai = a[i]
            if not ai:
                continue
            ci = c[i]
            for j in range(4):
                bj = b[j]
                if not bj:
                    continue
                cij = ci[j]
                f = ai * bj
                for k in range(4):
                    if cij[k]:
                        out[k] += f * cij[k]
        return tuple(out)

    def _trace_vector(self) -> tuple[Fraction, ...]:
        # tr is the unique linear form with x + x̄ = tr(x)·1 and tr(1) = 2;
        # for a quaternion algebra tr(x) equals the trace of left multiplication
        # by x on the algebra, divided by 2.
        tr = []
        for i in range(4):
            m = self.left_mul_matrix_coords([Fraction(int(j == i)) for j in range(4)])
            tr.append(sum(m[k][k] for k in range(4)) / 2)
        return tuple(tr)

    def trace(self, coords) -> Fraction:
        return sum(t * x for t, x in zip(self.trace_vec, coords))

    def conj_coords(self, coords) -> tuple[Fraction, ...]:
        t = self.trace(coords)
        return tuple(t * o - x for o, x in zip(self.one, coords))

    def norm(self, coords) -> Fraction:
        prod = self.mul_coords(coords, self.conj_coords(coords))
        # x·x̄ = n(x)·1; read n off any nonzero coordinate of 1
        for i in range(4):
            if self.one[i]:
                return prod[i] / self.one[i]
        raise ValueError("unit coordinates are zero")

    def _bilinear_matrix(self) -> Matrix:
        # B(x, y) = tr(x·ȳ), on the algebra basis
        basis = [[Fraction(int(j == i)) for j in range(4)] for i in range(4)]
        return [[self.trace(self.mul_coords(basis[i], self.conj_coords(basis[j])))
                 for j in range(4)] for i in range(4)]

    def left_mul_matrix_coords(self, b) -> Matrix:
        """Row i = coords of b·f_i (so coords(b·x) = coords(x)·M)."""
        return [list(self.mul_coords(b, [Fraction(int(j == i)) for j in range(4)]))
                for i in range(4)]

    def right_mul_matrix_coords(self, b) -> Matrix:
        """Row i = coords of f_i·b (so coords(x·b) = coords(x)·M)."""
        return [list(self.mul_coords([Fraction(int(j == i)) for j in range(4)], b))
                for i in range(4)]

    def validate(self) -> None:
        """Check the algebra axioms on the basis; raises on failure."""
        basis = [self.basis_element(i) for i in range(4)]
        one = self.unit()
        for x in basis:
            if one * x != x or x * one != x:
                raise ValueError("unit law fails")
        for x in basis:
            for y in basis:
                for z in basis:
                    if (x * y) * z != x * (y * z):
                        raise ValueError("multiplication is not associative")
        for x in basis:
            xb = x.conj()
            if x + xb != one * x.trace():
                raise ValueError("x + conj(x) != tr(x)")
            if x * xb != one * x.norm():
                raise ValueError("x·conj(x) != n(x)")
        g = self.bilinear
        if g != linalg.transpose(g):
            raise ValueError("trace form is not symmetric")
        if not is_positive_definite(g):
            raise ValueError("trace form is not positive definite (algebra not definite)")


class QuatElement:
    __slots__ = ("algebra", "coords")

    def __init__(self, algebra: QuaternionAlgebra, coords):
        self.algebra = algebra
        self.coords = tuple(Fraction(x) for x in coords)
        if len(self.coords) != 4:
            raise ValueError("quaternion elements have 4 coordinates")

    def _check(self, other: "QuatElement") -> None:
        if self.algebra is not other.algebra:
            raise UsageError("elements belong to different algebras")

    def __add__(self, other):
        self._check(other)
        return QuatElement(self.algebra, [a + b for a, b in zip(self.coords, other.coords)])

    def __sub__(self, other):
        self._check(other)
        return QuatElement(self.algebra, [a - b for a, b in zip(self.coords, other.coords)])

    def __neg__(self):
        return QuatElement(self.algebra, [-a for a in self.coords])

    def __mul__(self, other):
        if isinstance(other, QuatElement):
            self._check(other)
            return QuatElement(self.algebra, self.algebra.mul_coords(self.coords, other.coords))
        return QuatElement(self.algebra, [a * Fraction(other) for a in self.coords])

    def __rmul__(self, other):
        return QuatElement(self.algebra, [Fraction(other) * a for a in self.coords])

    def __truediv__(self, scalar):
        return QuatElement(self.algebra, [a / Fraction(scalar) for a in self.coords])

    def conj(self) -> "QuatElement":
        return QuatElement(self.algebra, self.algebra.conj_coords(self.coords))

    def trace(self) -> Fraction:
        return self.algebra.trace(self.coords)

    def norm(self) -> Fraction:
        return self.algebra.norm(self.coords)

    def inverse(self) -> "QuatElement":
        n = self.norm()
        if not n:
            raise ZeroDivisionError("element has norm 0")
        return self.conj() / n

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coords)

    def __eq__(self, other):
        return (isinstance(other, QuatElement) and self.algebra is other.algebra
                and self.coords == other.coords)

    def __hash__(self):
        return hash(self.coords)

    def __repr__(self):
        return f"QuatElement{self.coords}"


def multiply(x: QuatElement, y: QuatElement) -> QuatElement:
    return x * y


def conj_trace_norm(x: QuatElement) -> tuple[QuatElement, Fraction, Fraction]:
    """Return (x̄, tr x, n x), verifying x·x̄ = n(x)·1."""
    xb = x.conj()
    t = x.trace()
    n = x.norm()
    assert x * xb == x.algebra.unit() * n
    return xb, t, n


def is_positive_definite(g: Matrix) -> bool:
    try:
        _ldl(g)
    except ValueError:
        return False
    return True


def _ldl(g: Matrix) -> tuple[list[Fraction], Matrix]:
    """G = L·diag(D)·Lᵗ with L unit lower triangular; raises if not positive definite."""
    n = len(g)
    d = [Fraction(0)] * n
    low = linalg.identity(n)
    for i in range(n):
        s = Fraction(g[i][i])
        for k in range(i):
            s -= d[k] * low[i][k] * low[i][k]
        if s <= 0:
            raise ValueError("matrix is not positive definite")
        d[i] = s
        for j in range(i + 1, n):
            t = Fraction(g[j][i])
            for k in range(i):
                t -= d[k] * low[i][k] * low[j][k]
            low[j][i] = t / s
    return d, low


def _floor_plus_sqrt(a: Fraction, q: Fraction) -> int:
    """floor(a + sqrt(q)) for q >= 0, exact."""
    t = math.floor(a) + floor_sqrt_fraction(q)
    while True:
        u = t + 1 - a
        if u <= 0 or u * u <= q:
            t += 1
        else:
            return t


def _gauss_reduce_gram(g: Matrix) -> tuple[Matrix, list[list[int]]]:
    """Exact pairwise size reduction of a Gram matrix (no floats, no LLL).

    Returns (G', U) with G' = U·G·Uᵗ small enough for enumeration; U unimodular.
    """
    n = len(g)
    g = [row[:] for row in g]
    u = [[int(i == j) for j in range(n)] for i in range(n)]
    changed = True
    while changed:
        changed = False
        order = sorted(range(n), key=lambda i: g[i][i])
        for j in order:
            for i in range(n):
                if i == j or g[j][j] == 0:
                    continue
                # nearest integer to G_ij / G_jj
                k = math.floor(Fraction(g[i][j]) / Fraction(g[j][j]) + Fraction(1, 2))
                if k == 0:
                    continue
                new_diag = g[i][i] - 2 * k * g[i][j] + k * k * g[j][j]
                if new_diag >= g[i][i]:
                    continue
                changed = True
                for t in range(n):
                    u[i][t] -= k * u[j][t]
                for t in range(n):
                    g[i][t] -= k * g[j][t]
                for t in range(n):
                    g[t][i] -= k * g[t][j]
    return g, u


def short_vectors_upto(g: Matrix, max_norm) -> dict[Fraction, list[tuple[int, ...]]]:
    """All integer vectors v != 0 with vᵗGv ≤ 2·max_norm, bucketed by vᵗGv/2.

    Lists are sorted lexicographically.  G must be positive definite.
    """
    n = len(g)
    gred, u = _gauss_reduce_gram(linalg.frac_mat(g))
    d, low = _ldl(gred)
    bound = 2 * Fraction(max_norm)
    if bound < 0:
        return {}
    buckets: dict[Fraction, list[tuple[int, ...]]] = {}
    v = [0] * n

    def emit(val: Fraction) -> None:
        w = tuple(sum(v[i] * u[i][t] for i in range(n)) for t in range(n))
        buckets.setdefault(val / 2, []).append(w)

    def rec(i: int, budget: Fraction) -> None:
        if i < 0:
            if any(v):
                emit(bound - budget)
            return
        center = sum(low[j][i] * v[j] for j in range(i + 1, n))
        q = budget / d[i]
        hi = _floor_plus_sqrt(-center, q)
        lo = -_floor_plus_sqrt(center, q)
        for t in range(lo, hi + 1):
            v[i] = t
            step = d[i] * (t + center) ** 2
            rec(i - 1, budget - step)
        v[i] = 0

    rec(n - 1, bound)
    for lst in buckets.values():
        lst.sort()
    return buckets


def short_vectors(g: Matrix, m) -> list[tuple[int, ...]]:
    """Exactly the integer vectors v with vᵗGv = 2m, sorted lexicographically.

    m = 0 returns only the zero vector.
    """
    m = Fraction(m)
    if m < 0:
        raise ValueError("norm must be nonnegative")
    if m == 0:
        return [(0,) * len(g)]
    return short_vectors_upto(g, m).get(m, [])


class Lattice:
    """Full-rank Z-lattice in a quaternion algebra; rows of `basis` are coordinates."""

    def __init__(self, algebra: QuaternionAlgebra, basis, kind: str = "lattice"):
        self.algebra = algebra
        self.basis: Matrix = linalg.frac_mat(basis)
        if len(self.basis) != 4 or linalg.rank(self.basis) != 4:
            raise ValueError("lattice basis must consist of 4 independent vectors")
        self.kind = kind

    @classmethod
    def from_generators(cls, algebra, rows, kind: str = "lattice") -> "Lattice":
        basis = linalg.hnf_rational(linalg.frac_mat(rows))
        if len(basis) != 4:
            raise ValueError("generators do not span a full lattice")
        return cls(algebra, basis, kind)

    @classmethod
    def standard(cls, algebra, kind: str = "order") -> "Lattice":
        return cls(algebra, linalg.identity(4), kind)

    @cached_property
    def hnf_basis(self) -> Matrix:
        return linalg.hnf_rational(self.basis)

    def __eq__(self, other):
        return (isinstance(other, Lattice) and self.algebra is other.algebra
                and linalg.mat_eq(self.hnf_basis, other.hnf_basis))

    def __hash__(self):
        return hash(tuple(tuple(row) for row in self.hnf_basis))

    def basis_elements(self) -> list[QuatElement]:
        return [QuatElement(self.algebra, row) for row in self.basis]

    @cached_property
    def gram(self) -> Matrix:
        """Gram matrix G_ij = tr(b_i·conj(b_j))."""
        b = self.algebra.bilinear
        return linalg.mat_mul(linalg.mat_mul(self.basis, b), linalg.transpose(self.basis))

    @cached_property
    def gram_det(self) -> Fraction:
        return linalg.det(self.gram)

    @cached_property
    def _basis_inv(self) -> Matrix:
        return linalg.inverse(self.basis)

    def coords_of(self, x: QuatElement) -> list[Fraction]:
        return linalg.vec_mat(list(x.coords), self._basis_inv)

    def element_from(self, v) -> QuatElement:
        return QuatElement(self.algebra, linalg.vec_mat([Fraction(t) for t in v], self.basis))

    def contains(self, x: QuatElement) -> bool:
        return all(c.denominator == 1 for c in self.coords_of(x))

    def scale(self, c) -> "Lattice":
        c = Fraction(c)
        return Lattice(self.algebra, linalg.mat_scale(self.basis, c), self.kind)

    def conjugate(self) -> "Lattice":
        rows = [self.algebra.conj_coords(row) for row in self.basis]
        return Lattice.from_generators(self.algebra, rows, self.kind)

    def product(self, other: "Lattice") -> "Lattice":
        rows = []
        for r1 in self.basis:
            for r2 in other.basis:
                rows.append(list(self.algebra.mul_coords(r1, r2)))
        return Lattice.from_generators(self.algebra, rows, "lattice")

    def add(self, other: "Lattice") -> "Lattice":
        return Lattice.from_generators(self.algebra, self.basis + other.basis, "lattice")

    @cached_property
    def norm_scale(self) -> Fraction:
        """Reduced norm n₀: the positive generator of the ideal generated by n(x), x in L."""
        vals = [self.algebra.norm(row) for row in self.basis]
        g = self.gram
        vals += [g[i][j] for i in range(4) for j in range(i + 1, 4)]
        return frac_gcd(vals)

    def normalized_gram(self) -> Matrix:
        """Gram of the rescaled quadratic module (L, n/n₀); integral for ideals."""
        n0 = self.norm_scale
        return linalg.mat_scale(self.gram, Fraction(1) / n0)

    def vectors_of_norm(self, m) -> list[tuple[int, ...]]:
        """Coordinate vectors with n(x) = m (plain reduced norm, no rescaling)."""
        return short_vectors(self.gram, m)

    def unit_count(self) -> int:
        return len(short_vectors(self.gram, 1))

    def is_order(self) -> tuple[bool, str]:
        a = self.algebra
        if not self.contains(a.unit()):
            return False, "does not contain 1"
        els = self.basis_elements()
        for i, x in enumerate(els):
            for j, y in enumerate(els):
                if not self.contains(x * y):
                    return False, f"not closed under multiplication (basis pair {i},{j})"
        g = self.gram
        for i in range(4):
            if g[i][i].denominator != 1 or g[i][i].numerator % 2:
                return False, "norms are not integral"
            for j in range(4):
                if g[i][j].denominator != 1:
                    return False, "trace form is not integral"
        return True, ""

    def require_order(self) -> None:
        ok, why = self.is_order()
        if not ok:
            raise UsageError(f"lattice is not an order: {why}")

    @cached_property
    def level(self) -> int:
        """Reduced discriminant (= level N for an Eichler order of square-free level)."""
        d = self.gram_det
        if d.denominator != 1:
            raise ValueError("order has non-integral Gram determinant")
        n = math.isqrt(d.numerator)
        if n * n != d.numerator:
            raise ValueError("Gram determinant is not a perfect square")
        return n

    def __repr__(self):
        return f"Lattice(kind={self.kind}, basis={self.basis})"


def gram_matrix(lattice: Lattice) -> Matrix:
    return lattice.gram


def _integral_preimage_lattice(blocks: list[Matrix]) -> Matrix:
    """Basis of {v ∈ Q⁴ : v·A ∈ Z^4 for every A in blocks} (row convention)."""
    cols = []
    for a in blocks:
        at = linalg.transpose(a)
        cols.extend(at)  # each row of Aᵗ is a column of A
    w = linalg.hnf_rational(linalg.frac_mat(cols))
    if len(w) != 4:
        raise ValueError("degenerate multiplication data")
    return linalg.transpose(linalg.inverse(w))


def left_right_order(lat: Lattice) -> tuple[Lattice, Lattice]:
    """Left and right orders {x : xL ⊆ L} and {x : Lx ⊆ L}."""
    a = lat.algebra
    inv = linalg.inverse(lat.basis)
    right_blocks = []
    left_blocks = []
    for b in lat.basis:
        right_blocks.append(linalg.mat_mul(a.right_mul_matrix_coords(b), inv))
        left_blocks.append(linalg.mat_mul(a.left_mul_matrix_coords(b), inv))
    ol = Lattice(a, _integral_preimage_lattice(right_blocks), "order")
    or_ = Lattice(a, _integral_preimage_lattice(left_blocks), "order")
    ol.require_order()
    or_.require_order()
    return ol, or_


def ideal_equivalent(i1: Lattice, i2: Lattice, want_element: bool = False):
    """Test I = γ·J for some γ ∈ D^×, for right ideals of the same order.

    With want_element=True returns (bool, γ or None); γ satisfies i1 = γ·i2.
    """
    _, r1 = left_right_order(i1)
    _, r2 = left_right_order(i2)
    if r1 != r2:
        raise UsageError("ideals do not share a right order")
    prod = i1.product(i2.conjugate())
    target = i1.norm_scale * i2.norm_scale
    hits = short_vectors(prod.gram, target)
    for v in hits:
        b = prod.element_from(v)
        gamma = b / i2.norm_scale
        cand = Lattice.from_generators(
            i1.algebra,
            [list(i1.algebra.mul_coords(gamma.coords, row)) for row in i2.basis])
        if cand == Lattice(i1.algebra, i1.basis):
            return (True, gamma) if want_element else True
    return (False, None) if want_element else False


def _rref_mod_p(rows: list[list[int]], p: int) -> list[list[int]]:
    m = [[x % p for x in row] for row in rows]
    cols = len(m[0]) if m else 0
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, len(m)) if m[i][c] % p), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = pow(m[r][c], -1, p)
        m[r] = [(x * inv) % p for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [(x - f * y) % p for x, y in zip(m[i], m[r])]
        r += 1
    return [row for row in m[:r] if any(row)]


def _span_closure_mod_p(seed: list[list[int]], mats: list[list[list[int]]], p: int) -> list[list[int]]:
    """Smallest subspace of F_p^4 containing seed rows, stable under v ↦ v·M."""
    basis = _rref_mod_p(seed, p)
    while True:
        new_rows = list(basis)
        for v in basis:
            for m in mats:
                w = [sum(v[i] * m[i][j] for i in range(4)) % p for j in range(4)]
                new_rows.append(w)
        nb = _rref_mod_p(new_rows, p)
        if len(nb) == len(basis):
            return nb
        basis = nb


def _normalized_seeds(p: int):
    """One representative per projective point of F_p^4 (first nonzero coord = 1)."""
    for lead in range(4):
        tail = 4 - lead - 1
        for rest in range(p ** tail):
            v = [0] * lead + [1]
            r = rest
            for _ in range(tail):
                v.append(r % p)
                r //= p
            yield v


def _invariant_planes(lat: Lattice, mats: list[list[list[int]]], p: int) -> list[Lattice]:
    """Sublattices of index p² containing p·lat, stable under the given actions."""
    seen = set()
    out = []
    for seed in _normalized_seeds(p):
        span = _span_closure_mod_p([seed], mats, p)
        if len(span) != 2:
            continue
        key = tuple(tuple(row) for row in span)
        if key in seen:
            continue
        seen.add(key)
        rows = [linalg.vec_mat([Fraction(t) for t in v], lat.basis) for v in span]
        rows += [[p * x for x in row] for row in lat.basis]
        out.append(Lattice.from_generators(lat.algebra, rows, "ideal"))
    return out


def _int_mat_mod(m: Matrix, p: int) -> list[list[int]]:
    out = []
    for row in m:
        r = []
        for x in row:
            if x.denominator != 1:
                raise ValueError("expected an integral action matrix")
            r.append(x.numerator % p)
        out.append(r)
    return out


def _right_action_mats(lat: Lattice, order: Lattice, p: int) -> list[list[list[int]]]:
    inv = lat._basis_inv
    mats = []
    for b in order.basis:
        m = linalg.mat_mul(linalg.mat_mul(lat.basis, lat.algebra.right_mul_matrix_coords(b)), inv)
        mats.append(_int_mat_mod(m, p))
    return mats


def _left_action_mats(lat: Lattice, order: Lattice, p: int) -> list[list[list[int]]]:
    inv = lat._basis_inv
    mats = []
    for b in order.basis:
        m = linalg.mat_mul(linalg.mat_mul(lat.basis, lat.algebra.left_mul_matrix_coords(b)), inv)
        mats.append(_int_mat_mod(m, p))
    return mats


def p_neighbors(ideal: Lattice, order: Lattice, p: int) -> list[Lattice]:
    """Right-order-stable index-p² sublattices of norm p·n₀ (the p+1 neighbours)."""
    mats = _right_action_mats(ideal, order, p)
    subs = _invariant_planes(ideal, mats, p)
    out = [s for s in subs if s.norm_scale == p * ideal.norm_scale]
    return out


def reduce_right_ideal(ideal: Lattice, order: Lattice) -> Lattice:
    """Replace an ideal by a small equivalent one (left-divide by a minimal vector)."""
    n0 = ideal.norm_scale
    k = 1
    while True:
        vs = short_vectors(ideal.gram, k * n0)
        if vs:
            b = ideal.element_from(vs[0])
            break
        k += 1
    binv = b.inverse()
    rows = [list(ideal.algebra.mul_coords(binv.coords, row)) for row in ideal.basis]
    red = Lattice.from_generators(ideal.algebra, rows, "ideal")
    # rescale so coordinates relative to the order are integral and primitive
    coords = [linalg.vec_mat(row, order._basis_inv) for row in red.basis]
    den = linalg.common_denominator(coords)
    num = frac_gcd([x * den for row in coords for x in row])
    return red.scale(Fraction(den) / num)


class ClassSet:
    """Right ideal classes of an order, with unit counts and cross lattices."""

    def __init__(self, order: Lattice, ideals: list[Lattice]):
        self.order = order
        self.ideals = ideals
        self.left_orders = [left_right_order(i)[0] for i in ideals]
        self.unit_counts = [o.unit_count() for o in self.left_orders]
        self._cross: dict[tuple[int, int], Lattice] = {}

    @property
    def h(self) -> int:
        return len(self.ideals)

    @property
    def mass(self) -> Fraction:
        return sum((Fraction(1, e) for e in self.unit_counts), Fraction(0))

    def cross_lattice(self, i: int, j: int) -> Lattice:
        """Lattice of the (i,j) Brandt entry: left order R_j, right order R_i."""
        key = (i, j)
        if key not in self._cross:
            lat = self.ideals[j].product(self.ideals[i].conjugate())
            lat = lat.scale(Fraction(1) / self.ideals[i].norm_scale)
            self._cross[key] = lat
        return self._cross[key]

    def cross_norm_scale(self, i: int, j: int) -> Fraction:
        return self.cross_lattice(i, j).norm_scale


def class_set(order: Lattice, p_seed: int) -> ClassSet:
    """Right ideal classes by breadth-first p_seed-neighbour search.

    Terminates when a full expansion round produces no new class (the
    neighbour graph at a prime of maximal local structure is connected).
    """
    order.require_order()
    if not _is_prime(p_seed):
        raise UsageError("p_seed must be prime")
    if order.level % p_seed == 0:
        raise UsageError("order is not maximal at p_seed (p_seed divides the level)")
    reps: list[Lattice] = [Lattice(order.algebra, order.basis, "ideal")]
    frontier = [reps[0]]
    while frontier:
        fresh = []
        for ideal in frontier:
            for nb in p_neighbors(ideal, order, p_seed):
                cand = reduce_right_ideal(nb, order)
                if not any(ideal_equivalent(cand, known) for known in reps):
                    reps.append(cand)
                    fresh.append(cand)
        frontier = fresh
    return ClassSet(order, reps)


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    for d in range(2, math.isqrt(n) + 1):
        if n % d == 0:
            return False
    return True


def two_sided_ideal(order: Lattice, p: int) -> Lattice:
    """The unique integral two-sided ideal of reduced norm p (p must divide the level)."""
    order.require_order()
    if not _is_prime(p) or order.level % p != 0:
        raise UsageError(f"{p} does not divide the level {order.level}")
    mats = _right_action_mats(order, order, p) + _left_action_mats(order, order, p)
    candidates = []
    for sub in _invariant_planes(order, mats, p):
        if sub.norm_scale != p:
            continue
        if sub.product(sub) == order.scale(p):
            candidates.append(sub)
    if len(candidates) != 1:
        raise ValueError(f"expected a unique two-sided ideal of norm {p}, found {len(candidates)}")
    return candidates[0]


def is_ramified(order: Lattice, p: int) -> bool:
    """True when the algebra is ramified at p (order quotient by its norm-p ideal is a field)."""
    ideal = two_sided_ideal(order, p)
    one = order.algebra.unit()
    for row in order.basis:
        x = QuatElement(order.algebra, row)
        if any(ideal.contains(x - one * c) for c in range(p)):
            continue
        # x generates order/ideal over F_p; minimal polynomial X² - tr·X + n,
        # and the quotient is a field iff that polynomial is irreducible mod p
        t = int(x.trace()) % p
        n = int(x.norm()) % p
        if p == 2:
            return t == 1 and n == 1
        disc = (t * t - 4 * n) % p
        return pow(disc, (p - 1) // 2, p) == p - 1 if disc else False
    raise ValueError("could not find a generator mod the two-sided ideal")


def superorders(order: Lattice, p: int) -> list[Lattice]:
    """Orders containing `order` with index p (local maximality one step up)."""
    out = []
    seen = set()
    inv_p = Fraction(1, p)
    for seed in _normalized_seeds(p):
        rows = [linalg.vec_mat([Fraction(t) * inv_p for t in seed], order.basis)]
        rows += order.basis
        cand = Lattice.from_generators(order.algebra, rows, "order")
        key = tuple(tuple(row) for row in cand.hnf_basis)
        if key in seen:
            continue
        seen.add(key)
        if cand.is_order()[0]:
            out.append(cand)
    return out


def lattice_isometry(l1: Lattice, l2: Lattice):
    """An isometry (L1, n) → (L2, n) as an integer matrix on coordinates, or None."""
    return gram_isometry(l1.gram, l2.gram)


def gram_isometry(g1: Matrix, g2: Matrix):
    """Rows v_k with v_i·G2·v_jᵗ = (G1)_ij (a Z-isometry of quadratic lattices), or None."""
    g1 = linalg.frac_mat(g1)
    g2 = linalg.frac_mat(g2)
    if linalg.det(g1) != linalg.det(g2):
        return None
    targets = [short_vectors(g2, Fraction(g1[i][i], 2)) for i in range(4)]
    chosen: list[tuple[int, ...]] = []

    def ok(k: int, v) -> bool:
        for i in range(k):
            w = chosen[i]
            val = sum(w[a] * g2[a][b] * v[b] for a in range(4) for b in range(4))
            if val != g1[i][k]:
                return False
        return True

    def rec(k: int):
        if k == 4:
            return list(chosen)
        for v in targets[k]:
            if ok(k, v):
                chosen.append(v)
                got = rec(k + 1)
                if got is not None:
                    return got
                chosen.pop()
        return None

    return rec(0)
