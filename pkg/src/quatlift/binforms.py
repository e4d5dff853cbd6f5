"""Half-integral binary forms [a, b, c] ~ matrix [[a, b/2], [b/2, c]].

Canonical reduction under GL₂(Z) with the determinant of the reducing word
tracked, because odd-weight Fourier coefficients pick up det(U)^k.  The
canonical representative of a positive definite class satisfies
0 ≤ b ≤ a ≤ c; rank-one (singular) forms reduce to [0, 0, m].
"""

from __future__ import annotations

BinaryForm = tuple[int, int, int]


def disc(t: BinaryForm) -> int:
    a, b, c = t
    return 4 * a * c - b * b


def is_reduced(t: BinaryForm) -> bool:
    a, b, c = t
    if disc(t) == 0:
        return a == 0 and b == 0 and c >= 0
    return 0 <= b <= a <= c


def is_ambiguous(t: BinaryForm) -> bool:
    """Reduced forms fixed by a determinant −1 substitution (zero in odd weight)."""
    a, b, c = t
    return b == 0 or b == a or a == c


def reduce_form(t) -> tuple[BinaryForm, int]:
    """Canonical reduced representative and the sign det(U) of the reducing word.

    Accepts any positive semidefinite [a, b, c]; raises on indefinite input.
    """
    a, b, c = (int(x) for x in t)
    if disc((a, b, c)) < 0 or a < 0 or c < 0:
        raise ValueError(f"form {t!r} is not positive semidefinite")
    sign = 1
    while True:
        if c < a or (c == a and b < 0):
            a, b, c = c, -b, a  # x ↦ (-y, x), det +1
            continue
        if a and (b > a or b <= -a):
            # translate: x ↦ x + ky keeps a, shifts b into (-a, a]; det +1
            k = (a - b) // (2 * a)
            b2 = b + 2 * a * k
            c2 = a * k * k + b * k + c
            b, c = b2, c2
            continue
        break
    if a == 0:
        # singular: only rank ≤ 1 survives; b must be 0 once a is 0
        if b != 0:
            raise ValueError(f"form {t!r} is degenerate but not half-integrally reducible")
        return (0, 0, c), sign
    if b < 0:
        # interior form with negative b: flip with diag(1, -1), det −1
        b = -b
        sign = -sign
    # boundary normalizations (b = a or a = c) are reachable with det +1 words,
    # so the canonical set is 0 ≤ b ≤ a ≤ c with no extra sign
    return (a, b, c), sign


def reduced_forms_up_to(bound: int) -> list[BinaryForm]:
    """All canonical positive definite reduced forms with disc ≤ bound, sorted by (disc, a, b)."""
    out = []
    a = 1
    while 3 * a * a <= bound:
        for b in range(a + 1):
            c = a
            while 4 * a * c - b * b <= bound:
                if c >= a:
                    out.append((a, b, c))
                c += 1
        a += 1
    out.sort(key=lambda t: (disc(t), t[0], t[1]))
    return out


def apply_unimodular(t: BinaryForm, u) -> BinaryForm:
    """T[U] = Uᵗ·T·U for an integer 2×2 matrix U, in [a, b, c] coordinates."""
    a, b, c = t
    (p, q), (r, s) = u
    a2 = a * p * p + b * p * r + c * r * r
    b2 = 2 * a * p * q + b * (p * s + q * r) + 2 * c * r * s
    c2 = a * q * q + b * q * s + c * s * s
    return (a2, b2, c2)
