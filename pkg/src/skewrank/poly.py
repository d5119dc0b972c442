"""Sparse multivariate polynomials over cyclotomic coefficients.

The same ``Polynomial`` type represents elements of S = C[x_1..x_n] and of
the operator ring T = C[d_1..d_n]; ``diff_apply`` supplies the
differentiation semantics of the latter.

Group elements act on variables as basis vectors of V: a matrix M sends
x_j to sum_i M[i][j] x_i, so a linear form with coefficient vector c maps
to the form with coefficient vector M c.
"""

from __future__ import annotations

import math
import re
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from itertools import combinations

from . import kernels
from .cyclo import CyclotomicNumber, as_cyclotomic, lcm_order, rational
from .errors import DimensionError

__all__ = [
    "Polynomial",
    "LinearForm",
    "grevlex_key",
    "power_of_linear_form",
    "expand_power_sum",
    "apply_element",
    "apply_matrix",
    "diff_apply",
    "is_scalar_multiple",
    "multinomial",
    "monomials",
    "parse_form",
]

_ZERO = rational(0)
_ONE = rational(1)


def grevlex_key(exp):
    """Sort key: larger key means larger in graded reverse lexicographic order."""
    return (sum(exp), tuple(-e for e in reversed(exp)))


def multinomial(parts):
    out = 1
    total = 0
    for a in parts:
        total += a
        out *= math.comb(total, a)
    return out


def monomials(nvars, degree):
    """Exponent vectors of the given total degree, in increasing grevlex order."""
    if nvars == 0:
        return [()] if degree == 0 else []
    out = []
    width = degree + nvars - 1
    for bars in combinations(range(width), nvars - 1):
        prev = -1
        exp = []
        for b in bars:
            exp.append(b - prev - 1)
            prev = b
        exp.append(width - prev - 1)
        out.append(tuple(exp))
    out.sort(key=grevlex_key)
    return out


def _compositions(total, parts):
    width = total + parts - 1
    for bars in combinations(range(width), parts - 1):
        prev = -1
        out = []
        for b in bars:
            out.append(b - prev - 1)
            prev = b
        out.append(width - prev - 1)
        yield out


class Polynomial:
    """Immutable sparse polynomial; ``terms`` maps exponent tuples to coefficients."""

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars, terms=None):
        self.nvars = nvars
        clean = {}
        if terms:
            for exp, c in dict(terms).items():
                exp = tuple(exp)
                if len(exp) != nvars:
                    raise DimensionError(f"exponent {exp} has wrong length for {nvars} variables")
                c = as_cyclotomic(c)
                if c:
                    clean[exp] = c
        self.terms = clean

    @classmethod
    def _raw(cls, nvars, terms):
        obj = object.__new__(cls)
        obj.nvars = nvars
        obj.terms = terms
        return obj

    @classmethod
    def zero(cls, nvars):
        return cls._raw(nvars, {})

    @classmethod
    def constant(cls, nvars, c):
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def variable(cls, nvars, i):
        exp = [0] * nvars
        exp[i] = 1
        return cls._raw(nvars, {tuple(exp): _ONE})

    @classmethod
    def monomial(cls, exp, c=1):
        return cls(len(exp), {tuple(exp): c})

    # -- inspection -------------------------------------------------------

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self):
        return not self.terms

    def __len__(self):
        return len(self.terms)

    def coefficient(self, exp):
        return self.terms.get(tuple(exp), _ZERO)

    def degree(self):
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def is_homogeneous(self):
        degs = {sum(e) for e in self.terms}
        return len(degs) <= 1

    def homogeneous_part(self, k):
        return Polynomial._raw(self.nvars, {e: c for e, c in self.terms.items() if sum(e) == k})

    def sorted_terms(self):
        """Terms in decreasing grevlex order."""
        return sorted(self.terms.items(), key=lambda t: grevlex_key(t[0]), reverse=True)

    def leading_term(self):
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        exp = max(self.terms, key=grevlex_key)
        return exp, self.terms[exp]

    def monic(self):
        """Scale so the grevlex-leading coefficient is 1."""
        _, c = self.leading_term()
        return self.scale(1 / c)

    def field_order(self):
        return lcm_order(*(c.order for c in self.terms.values())) if self.terms else 1

    def is_rational(self):
        return all(c.is_rational() for c in self.terms.values())

    # -- arithmetic -------------------------------------------------------

    def _check(self, other):
        if self.nvars != other.nvars:
            raise DimensionError(f"mismatched variable counts {self.nvars} and {other.nvars}")

    def __add__(self, other):
        if not isinstance(other, Polynomial):
            other = as_cyclotomic(other)
            if other is NotImplemented:
                return NotImplemented
            other = Polynomial.constant(self.nvars, other)
        self._check(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = out.get(e)
            if v is None:
                out[e] = c
            else:
                v = v + c
                if v:
                    out[e] = v
                else:
                    del out[e]
        return Polynomial._raw(self.nvars, out)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._raw(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, Polynomial):
            other = as_cyclotomic(other)
            if other is NotImplemented:
                return NotImplemented
            other = Polynomial.constant(self.nvars, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c):
        c = as_cyclotomic(c)
        if not c:
            return Polynomial.zero(self.nvars)
        return Polynomial._raw(self.nvars, {e: v * c for e, v in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            c = as_cyclotomic(other)
            if c is NotImplemented:
                return NotImplemented
            return self.scale(c)
        self._check(other)
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                v = out.get(e)
                out[e] = c1 * c2 if v is None else v + c1 * c2
        return Polynomial._raw(self.nvars, {e: c for e, c in out.items() if c})

    def __rmul__(self, other):
        return self.__mul__(other)

    def __pow__(self, k):
        if not isinstance(k, int) or k < 0:
            return NotImplemented
        result = Polynomial.constant(self.nvars, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.nvars == other.nvars and self.terms == other.terms
        c = as_cyclotomic(other)
        if c is NotImplemented:
            return NotImplemented
        if not c:
            return not self.terms
        return self.terms == {(0,) * self.nvars: c}

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    # -- calculus and evaluation -------------------------------------------

    def derivative(self, i):
        out = {}
        for e, c in self.terms.items():
            if e[i]:
                ne = list(e)
                ne[i] -= 1
                out[tuple(ne)] = c * e[i]
        return Polynomial._raw(self.nvars, out)

    def evaluate(self, point):
        point = [as_cyclotomic(x) for x in point]
        if len(point) != self.nvars:
            raise DimensionError("point has wrong dimension")
        total = _ZERO
        cache = {}
        for e, c in self.terms.items():
            v = c
            for i, a in enumerate(e):
                if a:
                    key = (i, a)
                    p = cache.get(key)
                    if p is None:
                        p = cache[key] = point[i] ** a
                    v = v * p
            total = total + v
        return total

    # -- serialization ----------------------------------------------------

    def to_json(self):
        return {
            "nvars": self.nvars,
            "order": self.field_order(),
            "terms": [{"exp": list(e), "coeff": c.to_json()} for e, c in self.sorted_terms()],
        }

    @classmethod
    def from_json(cls, data):
        n = int(data["nvars"])
        terms = {}
        for t in data["terms"]:
            e = tuple(int(a) for a in t["exp"])
            c = CyclotomicNumber.from_json(t["coeff"])
            terms[e] = terms.get(e, _ZERO) + c
        return cls(n, terms)

    def __str__(self):
        if not self.terms:
            return "0"
        names = _var_names(self.nvars)
        parts = []
        for e, c in self.sorted_terms():
            mono = "*".join(
                names[i] + (f"^{a}" if a > 1 else "") for i, a in enumerate(e) if a
            )
            cs = str(c)
            if not mono:
                parts.append(cs)
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            elif c.is_rational():
                parts.append(f"{cs}*{mono}")
            else:
                parts.append(f"({cs})*{mono}")
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self):
        return f"Polynomial({self.nvars}, {str(self)!r})"


def _var_names(n):
    if n <= 4:
        return ["x", "y", "z", "w"][:n]
    return [f"x{i + 1}" for i in range(n)]


class LinearForm:
    """Linear form sum_j c_j x_j, also read as the vector (c_1..c_n) of V."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        self.coeffs = tuple(as_cyclotomic(c) for c in coeffs)

    @property
    def nvars(self):
        return len(self.coeffs)

    def __iter__(self):
        return iter(self.coeffs)

    def __getitem__(self, i):
        return self.coeffs[i]

    def __len__(self):
        return len(self.coeffs)

    def is_zero(self):
        return not any(self.coeffs)

    def support(self):
        return [j for j, c in enumerate(self.coeffs) if c]

    def to_polynomial(self):
        terms = {}
        n = self.nvars
        for j, c in enumerate(self.coeffs):
            if c:
                e = [0] * n
                e[j] = 1
                terms[tuple(e)] = c
        return Polynomial._raw(n, terms)

    def scale(self, c):
        c = as_cyclotomic(c)
        return LinearForm([x * c for x in self.coeffs])

    def __add__(self, other):
        return LinearForm([a + b for a, b in zip(self.coeffs, other.coeffs)])

    def __sub__(self, other):
        return LinearForm([a - b for a, b in zip(self.coeffs, other.coeffs)])

    def __neg__(self):
        return LinearForm([-a for a in self.coeffs])

    def dot(self, other):
        """Bilinear pairing sum_j a_j b_j."""
        total = _ZERO
        for a, b in zip(self.coeffs, other):
            if a and b:
                total = total + a * b
        return total

    def normalized(self):
        """Return ``(s, form)`` with form's first nonzero coefficient 1 and self = s * form."""
        for c in self.coeffs:
            if c:
                return c, self.scale(1 / c)
        raise ValueError("zero form cannot be normalized")

    def is_proportional(self, other):
        if self.is_zero() or other.is_zero():
            return self.is_zero() and other.is_zero()
        return self.normalized()[1] == other.normalized()[1]

    def __eq__(self, other):
        if not isinstance(other, LinearForm):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def to_json(self):
        return [c.to_json() for c in self.coeffs]

    @classmethod
    def from_json(cls, data):
        return cls([CyclotomicNumber.from_json(c) for c in data])

    def __str__(self):
        return str(self.to_polynomial())

    def __repr__(self):
        return f"LinearForm({str(self)!r})"


# -- powers of linear forms -----------------------------------------------


def _kernel_form(coeff, form):
    """Encode coeff * form^D for the power-sum kernel, or None if not expressible."""
    sr = coeff.scaled_root()
    if sr is None:
        return None
    orders = [coeff.order]
    entries = []
    for j, c in enumerate(form.coeffs):
        if c:
            s = c.scaled_root()
            if s is None:
                return None
            entries.append((j, s[0], s[1], c.order))
            orders.append(c.order)
    return sr, coeff.order, entries, orders


def _generic_power(form, degree):
    n = form.nvars
    supp = form.support()
    if not supp:
        return Polynomial.constant(n, 1) if degree == 0 else Polynomial.zero(n)
    pows = []
    for j in supp:
        c = form.coeffs[j]
        p = [_ONE]
        for _ in range(degree):
            p.append(p[-1] * c)
        pows.append(p)
    out = {}
    for alpha in _compositions(degree, len(supp)):
        coef = rational(multinomial(alpha))
        for k, a in enumerate(alpha):
            if a:
                coef = coef * pows[k][a]
        e = [0] * n
        for k, a in enumerate(alpha):
            e[supp[k]] = a
        out[tuple(e)] = coef
    return Polynomial._raw(n, {e: c for e, c in out.items() if c})


def power_of_linear_form(form, degree):
    """Full multinomial expansion of form^degree."""
    return expand_power_sum([(_ONE, form)], degree, form.nvars)


def expand_power_sum(terms, degree, nvars, threads=1, progress=None):
    """Exact expansion of sum_i c_i * l_i^degree for ``terms`` = [(c_i, l_i)].

    Terms whose coefficients are all integer multiples of roots of unity go
    through the counting kernel; anything else is expanded generically.
    The result does not depend on ``threads``.
    """
    encoded = []
    generic = []
    orders = []
    for c, form in terms:
        c = as_cyclotomic(c)
        if len(form) != nvars:
            raise DimensionError("linear form has wrong number of variables")
        enc = _kernel_form(c, form)
        if enc is None:
            generic.append((c, form))
        else:
            encoded.append(enc)
            orders.extend(enc[3])
    result = Polynomial.zero(nvars)
    if encoded:
        m = lcm_order(*orders)
        forms = []
        for (w, k), corder, entries, _ in encoded:
            if not entries and degree > 0:
                continue
            vars_ = [j for j, _, _, _ in entries]
            mags = [r for _, r, _, _ in entries]
            exps = [e * (m // o) for _, _, e, o in entries]
            forms.append((w, k * (m // corder), vars_, mags, exps))
        counts = _run_kernel(nvars, degree, m, forms, threads, progress)
        out = {}
        for e, row in counts.items():
            c = CyclotomicNumber.from_exponent_counts(m, row)
            if c:
                out[e] = c
        result = Polynomial._raw(nvars, out)
    for c, form in generic:
        result = result + _generic_power(form, degree).scale(c)
    return result


def _run_kernel(nvars, degree, order, forms, threads, progress=None):
    if len(forms) < 2 or (threads <= 1 and progress is None):
        return kernels.power_sum_counts(nvars, degree, order, forms)
    if threads > 1:
        size = -(-len(forms) // threads)
    else:
        size = 16
    chunks = [forms[i : i + size] for i in range(0, len(forms), size)]

    def run(chunk):
        return kernels.power_sum_counts(nvars, degree, order, chunk)

    merged = {}
    done = 0
    if threads > 1:
        pool = ThreadPoolExecutor(max_workers=min(threads, len(chunks)))
        parts = pool.map(run, chunks)
    else:
        pool = None
        parts = map(run, chunks)
    try:
        for chunk, part in zip(chunks, parts):
            for e, row in part.items():
                cur = merged.get(e)
                if cur is None:
                    merged[e] = list(row)
                else:
                    for i, x in enumerate(row):
                        cur[i] += x
            done += len(chunk)
            if progress is not None:
                progress.update(done)
    finally:
        if pool is not None:
            pool.shutdown()
    return {e: row for e, row in merged.items() if any(row)}


# -- group action ---------------------------------------------------------


def apply_matrix(matrix, f):
    """Substitute x_j -> sum_i matrix[i][j] x_i into f."""
    n = f.nvars
    if len(matrix) != n or any(len(r) != n for r in matrix):
        raise DimensionError("matrix dimension does not match polynomial")
    images = [
        LinearForm([matrix[i][j] for i in range(n)]).to_polynomial() for j in range(n)
    ]
    cache = {}
    result = Polynomial.zero(n)
    acc = {}
    for e, c in f.terms.items():
        term = Polynomial.constant(n, c)
        for j, a in enumerate(e):
            if a:
                key = (j, a)
                p = cache.get(key)
                if p is None:
                    p = cache[key] = images[j] ** a
                term = term * p
        for te, tc in term.terms.items():
            v = acc.get(te)
            acc[te] = tc if v is None else v + tc
    result = Polynomial._raw(n, {e: c for e, c in acc.items() if c})
    return result


def apply_monomial(perm, exps, order, f):
    """Action of the monomial matrix sending x_j to zeta_order^exps[j] * x_perm[j]."""
    from .cyclo import root_of_unity

    n = f.nvars
    out = {}
    for e, c in f.terms.items():
        ne = [0] * n
        k = 0
        for j, a in enumerate(e):
            if a:
                ne[perm[j]] = a
                k += exps[j] * a
        k %= order
        out[tuple(ne)] = c * root_of_unity(order, k) if k else c
    return Polynomial._raw(n, out)


def apply_element(w, f):
    """w . f for a group element (anything with ``act``) or a square matrix."""
    if hasattr(w, "act"):
        return w.act(f)
    return apply_matrix(w, f)


# -- apolarity ------------------------------------------------------------


def diff_apply(op, f):
    """Apply the operator ``op`` (a polynomial in d_1..d_n) to f."""
    if op.nvars != f.nvars:
        raise DimensionError("operator and polynomial have different variable counts")
    acc = {}
    for a, ca in op.terms.items():
        for b, cb in f.terms.items():
            if any(x > y for x, y in zip(a, b)):
                continue
            scal = 1
            for x, y in zip(a, b):
                if x:
                    scal *= math.perm(y, x)
            e = tuple(y - x for x, y in zip(a, b))
            v = ca * cb * scal
            cur = acc.get(e)
            acc[e] = v if cur is None else cur + v
    return Polynomial._raw(f.nvars, {e: c for e, c in acc.items() if c})


def is_scalar_multiple(f, g):
    """The scalar c with f == c * g, or None when f is not a multiple of g."""
    if not g:
        raise ValueError("reference polynomial is zero")
    if f.nvars != g.nvars:
        raise DimensionError("mismatched variable counts")
    if not f:
        return _ZERO
    exp, lead = g.leading_term()
    top = f.terms.get(exp)
    if top is None:
        return None
    c = top / lead
    if len(f.terms) != len(g.terms):
        return None
    for e, v in g.terms.items():
        w = f.terms.get(e)
        if w is None or w != v * c:
            return None
    return c


# -- text input -----------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+(?:/\d+)?)|([a-z]\d*)|(\*\*|[-+*^()]))")


def parse_form(text, nvars=None):
    """Parse integer/rational-coefficient polynomial text such as ``x^5 - y^5``.

    Variables are either x, y, z, w or x1..xn (not both). ``nvars`` pads
    the ambient variable count.
    """
    tokens = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ValueError(f"cannot parse form near {text[pos:]!r}")
        num, var, op = m.groups()
        if num is not None:
            tokens.append(("num", Fraction(num)))
        elif var is not None:
            tokens.append(("var", var))
        else:
            tokens.append(("op", "^" if op == "**" else op))
        pos = m.end()

    names = [t[1] for t in tokens if t[0] == "var"]
    letters = "xyzw"
    indexed = [v for v in names if len(v) > 1]
    if indexed and len(indexed) != len(names):
        raise ValueError("mix of x,y,z,w and indexed variables")
    if indexed:
        index = {v: int(v[1:]) - 1 for v in names}
        if any(i < 0 for i in index.values()):
            raise ValueError("indexed variables start at x1")
    else:
        for v in names:
            if v not in letters:
                raise ValueError(f"unknown variable {v!r}")
        index = {v: letters.index(v) for v in names}
    n = max(index.values(), default=-1) + 1
    if nvars is not None:
        if nvars < n:
            raise ValueError(f"form uses {n} variables but nvars={nvars}")
        n = nvars
    n = max(n, 1)

    p = [0]

    def peek():
        return tokens[p[0]] if p[0] < len(tokens) else (None, None)

    def take():
        t = peek()
        p[0] += 1
        return t

    def expr():
        sign = 1
        if peek() == ("op", "-"):
            take()
            sign = -1
        elif peek() == ("op", "+"):
            take()
        out = term().scale(sign)
        while peek() in (("op", "+"), ("op", "-")):
            s = take()[1]
            t = term()
            out = out + t if s == "+" else out - t
        return out

    def term():
        out = power()
        while True:
            t = peek()
            if t == ("op", "*"):
                take()
                out = out * power()
            elif t[0] in ("num", "var") or t == ("op", "("):
                out = out * power()
            else:
                return out

    def power():
        base = atom()
        if peek() == ("op", "^"):
            take()
            kind, val = take()
            if kind != "num" or val.denominator != 1:
                raise ValueError("exponent must be a nonnegative integer")
            base = base ** int(val)
        return base

    def atom():
        kind, val = take()
        if kind == "num":
            return Polynomial.constant(n, val)
        if kind == "var":
            return Polynomial.variable(n, index[val])
        if (kind, val) == ("op", "("):
            inner = expr()
            if take() != ("op", ")"):
                raise ValueError("unbalanced parentheses")
            return inner
        if (kind, val) == ("op", "-"):
            return -power()
        raise ValueError(f"unexpected token {val!r}")

    result = expr()
    if p[0] != len(tokens):
        raise ValueError(f"trailing input in form {text!r}")
    return result
