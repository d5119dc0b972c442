"""Exact Gaussian elimination over Q or a cyclotomic field.

Entries are either ``Fraction`` or ``CyclotomicNumber``; matrices whose
entries are all rational are run through ``Fraction`` arithmetic, which is
considerably cheaper. A modular image (``modular_rank``) gives a cheap lower
bound on the exact rank, used to skip exact elimination when the bound
already meets a known upper bound.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .cyclo import CyclotomicNumber, rational
from . import kernels


def _is_rational(x):
    return isinstance(x, (int, Fraction)) or x.is_rational()


def to_fractions(rows):
    """Return rows over Fraction if every entry is rational, else None."""
    out = []
    for row in rows:
        new = []
        for x in row:
            if isinstance(x, Fraction):
                new.append(x)
            elif isinstance(x, int):
                new.append(Fraction(x))
            elif x.is_rational():
                new.append(x.to_fraction())
            else:
                return None
        out.append(new)
    return out


def prepare(rows):
    """Pick the cheapest exact representation for elimination."""
    fr = to_fractions(rows)
    if fr is not None:
        return fr
    return [[x if isinstance(x, CyclotomicNumber) else rational(x) for x in row] for row in rows]


def rref(rows, ncols=None):
    """Reduced row echelon form.

    Returns ``(basis_rows, pivots)`` where ``basis_rows`` are the nonzero
    reduced rows and ``pivots[i]`` the pivot column of row ``i``.
    """
    rows = [list(r) for r in prepare(rows)]
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    pivots = []
    r = 0
    nrows = len(rows)
    for c in range(ncols):
        if r == nrows:
            break
        p = None
        for i in range(r, nrows):
            if rows[i][c]:
                p = i
                break
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        piv = rows[r]
        inv = 1 / piv[c]
        if inv != 1:
            piv = rows[r] = [x * inv if x else x for x in piv]
        nz = [j for j in range(c, ncols) if piv[j]]
        for i in range(nrows):
            if i == r:
                continue
            row = rows[i]
            f = row[c]
            if f:
                for j in nz:
                    row[j] = row[j] - f * piv[j]
        pivots.append(c)
        r += 1
    return rows[:r], pivots


def rank(rows, ncols=None):
    if not rows:
        return 0
    return len(rref(rows, ncols)[1])


def kernel(rows, ncols):
    """Basis of the right kernel {v : rows . v = 0}."""
    if not rows:
        zero, one = Fraction(0), Fraction(1)
        return [[one if j == i else zero for j in range(ncols)] for i in range(ncols)]
    red, pivots = rref(rows, ncols)
    pivset = set(pivots)
    sample = red[0][0] if red else Fraction(0)
    zero = sample * 0
    one = zero + 1
    basis = []
    for free in range(ncols):
        if free in pivset:
            continue
        v = [zero] * ncols
        v[free] = one
        for row, pc in zip(red, pivots):
            x = row[free]
            if x:
                v[pc] = -x
        basis.append(v)
    return basis


def determinant(matrix):
    a = [list(r) for r in prepare(matrix)]
    n = len(a)
    det = a[0][0] * 0 + 1 if n else Fraction(1)
    for c in range(n):
        p = None
        for i in range(c, n):
            if a[i][c]:
                p = i
                break
        if p is None:
            return det * 0
        if p != c:
            a[c], a[p] = a[p], a[c]
            det = -det
        piv = a[c][c]
        det = det * piv
        inv = 1 / piv
        for i in range(c + 1, n):
            f = a[i][c]
            if f:
                f = f * inv
                for j in range(c, n):
                    if a[c][j]:
                        a[i][j] = a[i][j] - f * a[c][j]
    return det


def inverse(matrix):
    n = len(matrix)
    a = prepare(matrix)
    zero = a[0][0] * 0
    one = zero + 1
    aug = [list(a[i]) + [one if j == i else zero for j in range(n)] for i in range(n)]
    red, pivots = rref(aug, 2 * n)
    if pivots[:n] != list(range(n)) or len(pivots) < n:
        raise ZeroDivisionError("singular matrix")
    return [row[n:] for row in red]


# -- modular images -------------------------------------------------------

_PRIME_CACHE = {}


def _is_prime(p):
    if p < 2:
        return False
    for q in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if p % q == 0:
            return p == q
    d, s = p - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17):
        x = pow(a, d, p)
        if x in (1, p - 1):
            continue
        for _ in range(s - 1):
            x = x * x % p
            if x == p - 1:
                break
        else:
            return False
    return True


def _primitive_root_of_order(m, p):
    """An element of exact multiplicative order m in F_p (m | p - 1)."""
    factors = []
    k = m
    q = 2
    while q * q <= k:
        if k % q == 0:
            factors.append(q)
            while k % q == 0:
                k //= q
        q += 1
    if k > 1:
        factors.append(k)
    for g in range(2, p):
        r = pow(g, (p - 1) // m, p)
        if all(pow(r, m // q, p) != 1 for q in factors):
            return r
    raise ArithmeticError("no primitive root found")


def modular_primes(m, count=1, start=(1 << 31) - 1):
    """Primes p < 2^31 with p = 1 mod m, each with a primitive m-th root of unity."""
    key = (m, count, start)
    if key in _PRIME_CACHE:
        return _PRIME_CACHE[key]
    out = []
    p = start - (start - 1) % m
    while len(out) < count:
        if p > m and _is_prime(p):
            out.append((p, _primitive_root_of_order(m, p) if m > 1 else 1))
        p -= m
    _PRIME_CACHE[key] = out
    return out


def reduce_mod(x, p, root, order):
    """Image of an exact scalar under Z[zeta_order, 1/den] -> F_p, or None if undefined."""
    if isinstance(x, int):
        return x % p
    if isinstance(x, Fraction):
        if x.denominator % p == 0:
            return None
        return x.numerator * pow(x.denominator, -1, p) % p
    if x.denominator % p == 0:
        return None
    step = order // x.order
    r = pow(root, step, p)
    acc = 0
    rk = 1
    for c in x.numerators:
        if c:
            acc += c * rk
        rk = rk * r % p
    return acc * pow(x.denominator, -1, p) % p


def modular_rank(rows, ncols=None):
    """A lower bound on the exact rank from one good prime; exact for almost all primes."""
    if not rows:
        return 0
    order = 1
    for row in rows:
        for x in row:
            if isinstance(x, CyclotomicNumber) and not x.is_rational():
                order = order * x.order // math.gcd(order, x.order)
    for p, root in modular_primes(order, count=4):
        img = []
        ok = True
        for row in rows:
            r = [reduce_mod(x, p, root, order) for x in row]
            if None in r:
                ok = False
                break
            img.append(r)
        if ok:
            return kernels.rank_mod_p(img, p)
    raise ArithmeticError("no usable prime for modular rank")
