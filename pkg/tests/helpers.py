"""Shared constructions for the test suite."""

from fractions import Fraction

from quatlift.quatcore import Lattice, QuaternionAlgebra


def hamilton_algebra():
    """The rational Hamilton quaternions on the basis (1, i, j, k)."""
    c = [[[0] * 4 for _ in range(4)] for _ in range(4)]
    table = {
        (0, 0): (1, 0, 0, 0), (0, 1): (0, 1, 0, 0), (0, 2): (0, 0, 1, 0), (0, 3): (0, 0, 0, 1),
        (1, 0): (0, 1, 0, 0), (1, 1): (-1, 0, 0, 0), (1, 2): (0, 0, 0, 1), (1, 3): (0, 0, -1, 0),
        (2, 0): (0, 0, 1, 0), (2, 1): (0, 0, 0, -1), (2, 2): (-1, 0, 0, 0), (2, 3): (0, 1, 0, 0),
        (3, 0): (0, 0, 0, 1), (3, 1): (0, 0, 1, 0), (3, 2): (0, -1, 0, 0), (3, 3): (-1, 0, 0, 0),
    }
    for (i, j), v in table.items():
        c[i][j] = list(v)
    alg = QuaternionAlgebra(c, [1, 0, 0, 0], name="hamilton")
    alg.validate()
    return alg


def hurwitz_order():
    return Lattice(hamilton_algebra(),
                   [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0],
                    [Fraction(1, 2)] * 4], kind="order")
