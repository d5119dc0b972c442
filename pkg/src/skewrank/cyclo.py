"""Exact arithmetic in cyclotomic fields Q(zeta_m).

An element of Q(zeta_m) is stored in the power basis 1, z, ..., z^(phi(m)-1)
reduced modulo the m-th cyclotomic polynomial, as a tuple of integer
numerators over one positive common denominator kept in lowest terms.
This makes equality a tuple comparison once both operands live in the
same field.

Operands of different orders are promoted to Q(zeta_lcm) before any
arithmetic; results are never descended to a smaller subfield.
"""

from __future__ import annotations

import cmath
import math
from fractions import Fraction
from functools import lru_cache

from .errors import OrderError

__all__ = [
    "CyclotomicNumber",
    "cyclotomic_polynomial",
    "euler_phi",
    "root_of_unity",
    "rational",
    "as_cyclotomic",
    "lcm_order",
]


def euler_phi(m):
    result = m
    p = 2
    k = m
    while p * p <= k:
        if k % p == 0:
            while k % p == 0:
                k //= p
            result -= result // p
        p += 1
    if k > 1:
        result -= result // k
    return result


def _mobius(m):
    if m == 1:
        return 1
    sign = 1
    p = 2
    k = m
    while p * p <= k:
        if k % p == 0:
            k //= p
            if k % p == 0:
                return 0
            sign = -sign
        p += 1
    if k > 1:
        sign = -sign
    return sign


def _poly_exact_div(num, den):
    """Exact division of integer polynomials (low-to-high, ``den`` monic)."""
    num = list(num)
    q = [0] * (len(num) - len(den) + 1)
    for i in range(len(q) - 1, -1, -1):
        c = num[i + len(den) - 1]
        q[i] = c
        if c:
            for j, d in enumerate(den):
                num[i + j] -= c * d
    if any(num[: len(den) - 1]):
        raise ArithmeticError("non-exact polynomial division")
    return q


@lru_cache(maxsize=None)
def cyclotomic_polynomial(m):
    """Integer coefficients of Phi_m, lowest degree first."""
    if m < 1:
        raise ValueError("cyclotomic order must be positive")
    poly = [-1] + [0] * (m - 1) + [1]
    for d in range(1, m):
        if m % d == 0:
            poly = _poly_exact_div(poly, cyclotomic_polynomial(d))
    return tuple(poly)


class _Field:
    __slots__ = ("m", "phi", "table", "trace", "roots")

    def __init__(self, m):
        self.m = m
        phi = euler_phi(m)
        self.phi = phi
        cyc = cyclotomic_polynomial(m)
        # table[e] = z^e in the power basis, e = 0..m-1
        table = []
        cur = [0] * phi
        cur[0] = 1
        for _ in range(m):
            table.append(tuple(cur))
            top = cur[-1]
            cur = [0] + cur[:-1]
            if top:
                for j in range(phi):
                    cur[j] -= top * cyc[j]
        self.table = tuple(table)
        trace = []
        for k in range(phi):
            g = math.gcd(k, m)
            q = m // g
            trace.append(_mobius(q) * phi // euler_phi(q))
        self.trace = tuple(trace)
        roots = {}
        for e in range(m):
            roots.setdefault(self.table[e], e)
        self.roots = roots

    def reduce(self, wide):
        """Fold a coefficient list indexed by exponents (any length) into the basis."""
        phi = self.phi
        m = self.m
        out = list(wide[:phi])
        if len(out) < phi:
            out.extend([0] * (phi - len(out)))
        table = self.table
        for e in range(phi, len(wide)):
            c = wide[e]
            if c:
                row = table[e % m]
                for j in range(phi):
                    if row[j]:
                        out[j] += c * row[j]
        return out


_FIELDS = {}


def _field(m):
    f = _FIELDS.get(m)
    if f is None:
        if m < 1:
            raise ValueError("cyclotomic order must be positive")
        f = _FIELDS[m] = _Field(m)
    return f


def lcm_order(*orders):
    out = 1
    for m in orders:
        out = out * m // math.gcd(out, m)
    return out


def _normalized(nums, den):
    if den < 0:
        nums = [-x for x in nums]
        den = -den
    g = math.gcd(den, *nums)
    if g != 1:
        nums = [x // g for x in nums]
        den //= g
    return tuple(nums), den


def _poly_trim(p):
    while p and p[-1] == 0:
        p.pop()
    return p


def _poly_divmod(a, b):
    a = list(a)
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    lead = b[-1]
    for i in range(len(a) - len(b), -1, -1):
        c = a[i + len(b) - 1] / lead
        q[i] = c
        if c:
            for j, bj in enumerate(b):
                a[i + j] -= c * bj
    return _poly_trim(q), _poly_trim(a[: len(b) - 1])


def _poly_mul(a, b):
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _poly_sub(a, b):
    n = max(len(a), len(b))
    out = [(a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0) for i in range(n)]
    return _poly_trim(out)


class CyclotomicNumber:
    """Immutable element of Q(zeta_m) in canonical power-basis form."""

    __slots__ = ("order", "_nums", "_den")

    def __init__(self, order, nums, den=1):
        f = _field(order)
        if len(nums) != f.phi:
            raise ValueError(f"expected {f.phi} coefficients for order {order}")
        if den == 0:
            raise ZeroDivisionError("zero denominator")
        if den < 0:
            nums = [-x for x in nums]
            den = -den
        self.order = order
        self._nums, self._den = _normalized(list(nums), den)

    @classmethod
    def _raw(cls, order, nums, den):
        # caller guarantees length, positive den and lowest terms
        obj = object.__new__(cls)
        obj.order = order
        obj._nums = nums
        obj._den = den
        return obj

    @classmethod
    def _build(cls, order, nums, den):
        nums, den = _normalized(nums, den)
        return cls._raw(order, nums, den)

    # -- constructors -----------------------------------------------------

    @classmethod
    def from_terms(cls, order, terms):
        """Canonicalize sum of q * zeta_order^k over ``terms`` (k -> rational)."""
        f = _field(order)
        items = [(k % order, Fraction(q)) for k, q in dict(terms).items()]
        den = 1
        for _, q in items:
            den = den * q.denominator // math.gcd(den, q.denominator)
        wide = [0] * order
        for k, q in items:
            wide[k] += q.numerator * (den // q.denominator)
        return cls._build(order, f.reduce(wide), den)

    @classmethod
    def from_exponent_counts(cls, order, counts, den=1):
        """Element sum_e counts[e] * zeta^e / den with ``counts`` indexed by e mod order."""
        f = _field(order)
        return cls._build(order, f.reduce(counts), den)

    # -- inspection -------------------------------------------------------

    @property
    def phi(self):
        return len(self._nums)

    @property
    def numerators(self):
        return self._nums

    @property
    def denominator(self):
        return self._den

    @property
    def coefficients(self):
        """Nonzero basis coefficients as ``{k: Fraction}``."""
        return {k: Fraction(x, self._den) for k, x in enumerate(self._nums) if x}

    def is_zero(self):
        return not any(self._nums)

    def __bool__(self):
        return any(self._nums)

    def is_rational(self):
        return not any(self._nums[1:])

    def to_fraction(self):
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return Fraction(self._nums[0], self._den)

    def scaled_root(self):
        """Return ``(r, k)`` with self == r * zeta^k for an integer r, else None."""
        if self._den != 1 or not any(self._nums):
            return None
        nums = self._nums
        g = math.gcd(*nums)
        roots = _field(self.order).roots
        prim = tuple(x // g for x in nums)
        k = roots.get(prim)
        if k is not None:
            return g, k
        k = roots.get(tuple(-x for x in prim))
        if k is not None:
            return -g, k
        return None

    def sort_key(self):
        return (self.order, self._nums, self._den)

    # -- order handling ---------------------------------------------------

    def promote(self, order):
        if order == self.order:
            return self
        if order % self.order:
            raise OrderError(f"order {self.order} does not divide {order}")
        if self.is_rational():
            nums = [0] * _field(order).phi
            nums[0] = self._nums[0]
            return CyclotomicNumber._raw(order, tuple(nums), self._den)
        f = _field(order)
        step = order // self.order
        wide = [0] * order
        for k, x in enumerate(self._nums):
            wide[k * step] = x
        return CyclotomicNumber._raw(order, tuple(f.reduce(wide)), self._den)

    def _aligned(self, other):
        """Bring ``self`` and ``other`` to a common order."""
        if other.order == self.order:
            return self, other
        m = lcm_order(self.order, other.order)
        return self.promote(m), other.promote(m)

    # -- arithmetic -------------------------------------------------------

    def __neg__(self):
        return CyclotomicNumber._raw(self.order, tuple(-x for x in self._nums), self._den)

    def __pos__(self):
        return self

    def __add__(self, other):
        other = as_cyclotomic(other)
        if other is NotImplemented:
            return NotImplemented
        if other.order != self.order:
            if other.is_rational():
                other = other.promote_rational(self.order)
            elif self.is_rational():
                self = self.promote_rational(other.order)
            else:
                self, other = self._aligned(other)
        da, db = self._den, other._den
        if da == db:
            nums = [x + y for x, y in zip(self._nums, other._nums)]
            return CyclotomicNumber._build(self.order, nums, da)
        nums = [x * db + y * da for x, y in zip(self._nums, other._nums)]
        return CyclotomicNumber._build(self.order, nums, da * db)

    __radd__ = __add__

    def __sub__(self, other):
        other = as_cyclotomic(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = as_cyclotomic(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def promote_rational(self, order):
        nums = [0] * _field(order).phi
        nums[0] = self._nums[0]
        return CyclotomicNumber._raw(order, tuple(nums), self._den)

    def __mul__(self, other):
        other = as_cyclotomic(other)
        if other is NotImplemented:
            return NotImplemented
        if other.is_rational():
            c = other._nums[0]
            return CyclotomicNumber._build(self.order, [x * c for x in self._nums], self._den * other._den)
        if self.is_rational():
            c = self._nums[0]
            return CyclotomicNumber._build(other.order, [x * c for x in other._nums], self._den * other._den)
        a, b = self._aligned(other)
        f = _field(a.order)
        an, bn = a._nums, b._nums
        wide = [0] * (2 * f.phi - 1)
        for i, x in enumerate(an):
            if x:
                for j, y in enumerate(bn):
                    if y:
                        wide[i + j] += x * y
        return CyclotomicNumber._build(a.order, f.reduce(wide), a._den * b._den)

    __rmul__ = __mul__

    def inverse(self):
        if not any(self._nums):
            raise ZeroDivisionError("inverse of zero cyclotomic number")
        if self.is_rational():
            c = self._nums[0]
            nums = [0] * len(self._nums)
            nums[0] = self._den
            return CyclotomicNumber._build(self.order, nums, c)
        # extended Euclid against Phi_m over Q
        cyc = [Fraction(c) for c in cyclotomic_polynomial(self.order)]
        a = _poly_trim([Fraction(x) for x in self._nums])
        r0, r1 = cyc, a
        s0, s1 = [], [Fraction(1)]
        while len(r1) > 1:
            q, r = _poly_divmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, _poly_sub(s0, _poly_mul(q, s1))
        # r1 is a nonzero constant since Phi_m is irreducible
        c = r1[0]
        coeffs = [x / c for x in s1]
        coeffs += [Fraction(0)] * (len(self._nums) - len(coeffs))
        den = 1
        for x in coeffs:
            den = den * x.denominator // math.gcd(den, x.denominator)
        nums = [x.numerator * (den // x.denominator) * self._den for x in coeffs]
        return CyclotomicNumber._build(self.order, nums, den)

    def __truediv__(self, other):
        other = as_cyclotomic(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = as_cyclotomic(other)
        if other is NotImplemented:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, k):
        if not isinstance(k, int):
            return NotImplemented
        base = self
        if k < 0:
            base = self.inverse()
            k = -k
        result = CyclotomicNumber._raw(self.order, _one_nums(self.order), 1)
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    # -- Galois action ----------------------------------------------------

    def galois(self, j):
        """Image under the automorphism zeta -> zeta^j (gcd(j, m) == 1)."""
        m = self.order
        if math.gcd(j, m) != 1:
            raise ValueError(f"{j} is not a unit modulo {m}")
        f = _field(m)
        wide = [0] * m
        for k, x in enumerate(self._nums):
            if x:
                wide[(k * j) % m] += x
        return CyclotomicNumber._raw(m, tuple(f.reduce(wide)), self._den)

    def conjugate(self):
        if self.is_rational():
            return self
        return self.galois(self.order - 1)

    # -- comparison -------------------------------------------------------

    def __eq__(self, other):
        other = as_cyclotomic(other)
        if other is NotImplemented:
            return NotImplemented
        if self.order == other.order:
            return self._den == other._den and self._nums == other._nums
        if self.is_rational() and other.is_rational():
            return self._den == other._den and self._nums[0] == other._nums[0]
        a, b = self._aligned(other)
        return a._den == b._den and a._nums == b._nums

    def __hash__(self):
        # normalized trace Tr(a)/phi(m) does not depend on the ambient order
        if self.is_rational():
            return hash(Fraction(self._nums[0], self._den))
        f = _field(self.order)
        tr = sum(x * t for x, t in zip(self._nums, f.trace))
        return hash(Fraction(tr, self._den * f.phi))

    # -- export -----------------------------------------------------------

    def to_complex(self):
        m = self.order
        z = 0j
        for k, x in enumerate(self._nums):
            if x:
                z += x * cmath.exp(2j * cmath.pi * k / m)
        return z / self._den

    def to_json(self):
        if self.is_rational() and self.order != 1:
            return {"order": 1, "terms": [[0, str(self.to_fraction())]] if self else []}
        return {
            "order": self.order,
            "terms": [[k, str(Fraction(x, self._den))] for k, x in enumerate(self._nums) if x],
        }

    @classmethod
    def from_json(cls, data):
        if isinstance(data, (int, str)):
            return rational(Fraction(data))
        order = int(data["order"])
        terms = {}
        for k, q in data.get("terms", []):
            terms[int(k) % order] = terms.get(int(k) % order, 0) + Fraction(q)
        return cls.from_terms(order, terms)

    def __repr__(self):
        return f"CyclotomicNumber({self.order}, {self._nums}, {self._den})"

    def __str__(self):
        parts = []
        for k, x in enumerate(self._nums):
            if not x:
                continue
            q = Fraction(x, self._den)
            if k == 0:
                parts.append(str(q))
            else:
                z = f"z{self.order}" + (f"^{k}" if k > 1 else "")
                if q == 1:
                    parts.append(z)
                elif q == -1:
                    parts.append("-" + z)
                else:
                    parts.append(f"{q}*{z}")
        if not parts:
            return "0"
        return " + ".join(parts).replace("+ -", "- ")


@lru_cache(maxsize=None)
def _one_nums(order):
    nums = [0] * _field(order).phi
    nums[0] = 1
    return tuple(nums)


def rational(q, order=1):
    q = Fraction(q)
    nums = [0] * _field(order).phi
    nums[0] = q.numerator
    return CyclotomicNumber._raw(order, tuple(nums), q.denominator)


def root_of_unity(m, k=1):
    """zeta_m^k in Q(zeta_m)."""
    if m < 1:
        raise ValueError("root of unity order must be positive")
    f = _field(m)
    return CyclotomicNumber._raw(m, f.table[k % m], 1)


def as_cyclotomic(x):
    if isinstance(x, CyclotomicNumber):
        return x
    if isinstance(x, (int, Fraction)):
        return rational(x)
    return NotImplemented
