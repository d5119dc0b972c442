from fractions import Fraction

import pytest

from skewrank import linalg
from skewrank.cyclo import rational, root_of_unity

z = root_of_unity


def test_rank_and_kernel_rational():
    rows = [[1, 2, 3], [2, 4, 6], [1, 0, 1]]
    assert linalg.rank(rows) == 2
    ker = linalg.kernel(rows, 3)
    assert len(ker) == 1
    for r in rows:
        assert sum(Fraction(a) * b for a, b in zip(r, ker[0])) == 0


def test_kernel_cyclotomic():
    w = z(3)
    rows = [[1, w], [w ** 2, 1]]  # second row = w^2 * first
    assert linalg.rank(rows) == 1
    (v,) = linalg.kernel(rows, 2)
    assert rows[0][0] * v[0] + rows[0][1] * v[1] == 0


def test_determinant_and_inverse():
    assert linalg.determinant([[1, 2], [3, 4]]) == -2
    m = [[z(4), 1], [0, 2]]
    inv = linalg.inverse(m)
    prod = [[sum((m[i][k] * inv[k][j] for k in range(2)), rational(0)) for j in range(2)] for i in range(2)]
    assert prod == [[1, 0], [0, 1]]
    with pytest.raises(ZeroDivisionError):
        linalg.inverse([[1, 2], [2, 4]])


def test_modular_rank_is_a_lower_bound_and_usually_exact():
    rows = [[z(5) ** (i * j) for j in range(5)] for i in range(4)]
    assert linalg.modular_rank(rows) == linalg.rank(rows) == 4
    rows = [[Fraction(1, 3), 2], [1, 6]]
    assert linalg.modular_rank(rows) == 1


def test_modular_primes():
    for m in (1, 3, 8, 12):
        for p, r in linalg.modular_primes(m, count=2):
            assert (p - 1) % m == 0 and p < 2 ** 31
            assert pow(r, m, p) == 1
