"""Apolarity: catalecticants, Hilbert functions, generator degrees and rank bounds.

Operators in T = C[d_1..d_n] are stored as ``Polynomial`` objects; the
pairing is ``poly.diff_apply``. For a form f of degree D the derivatives of
order D - j span Der_j = (f^perp)_j^perp inside S_j, and the row space of the
catalecticant Cat_{D-j} is exactly Der_j.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from . import linalg
from .cyclo import as_cyclotomic, rational
from .errors import BudgetExceeded, DimensionError, VerificationError
from .poly import Polynomial, diff_apply, monomials
from .progress import Progress

__all__ = [
    "ApolarReport",
    "Apolar",
    "catalecticant",
    "catalecticant_kernel",
    "hilbert_function",
    "apolar_generator_degrees",
    "generator_degrees_direct",
    "rs_bound_report",
    "steinberg_check",
    "sylvester_binary_rank",
    "general_rank",
    "ah_exception",
    "ccg_rank",
    "BUDGET_ORDER",
    "BUDGET_DEGREE",
]

BUDGET_ORDER = 400
BUDGET_DEGREE = 16

# the classical Alexander-Hirschowitz exceptions (besides quadrics)
_AH_EXCEPTIONS = {(3, 4), (4, 4), (5, 3), (5, 4)}


def _entry(f, alpha, gamma):
    beta = tuple(a + g for a, g in zip(alpha, gamma))
    c = f.terms.get(beta)
    if c is None:
        return 0
    scal = 1
    for b, g in zip(beta, gamma):
        scal *= math.factorial(b) // math.factorial(g)
    return c * scal


def catalecticant(f, k):
    """Rows: d^alpha f for alpha in T_k, written in the monomial basis of S_(D-k)."""
    D = f.degree()
    rows_idx = monomials(f.nvars, k)
    cols_idx = monomials(f.nvars, D - k) if 0 <= k <= D else []
    return [[_entry(f, a, g) for g in cols_idx] for a in rows_idx], rows_idx, cols_idx


def _check_form(f):
    if not f:
        raise ValueError("the zero polynomial has no apolar algebra")
    if not f.is_homogeneous():
        raise ValueError("apolarity needs a homogeneous form")


class Apolar:
    """Cached apolar data of a form: derivative spaces and the Hilbert function."""

    def __init__(self, f):
        _check_form(f)
        self.f = f
        self.n = f.nvars
        self.D = f.degree()
        self._der = {}

    def derivative_space(self, j):
        """(basis rows in RREF, pivots, monomials of degree j) for Der_j."""
        if j < 0 or j > self.D:
            return [], [], []
        hit = self._der.get(j)
        if hit is None:
            rows, _, cols = catalecticant(self.f, self.D - j)
            basis, pivots = linalg.rref(rows, len(cols))
            hit = self._der[j] = (basis, pivots, cols)
        return hit

    def h(self, k):
        if k < 0 or k > self.D:
            return 0
        # symmetric: rank Cat_k = rank Cat_{D-k}; use the smaller side
        j = k if k <= self.D - k else self.D - k
        return len(self.derivative_space(j)[1])

    def hilbert(self):
        return [self.h(k) for k in range(self.D + 1)]

    def generators_in_degree(self, k):
        """Number of minimal generators of f^perp in degree k."""
        n = self.n
        if k == 0:
            return 0
        if k == 1:
            return n - self.h(1)
        basis, _, cols = self.derivative_space(k - 1)
        sub, sub_piv, sub_cols = self.derivative_space(k - 2)
        hk1, hk2 = len(basis), len(sub_piv)
        if hk1 == 0:
            return 0
        where = {e: i for i, e in enumerate(sub_cols)}
        # coord[l][s] = coordinates of d_l B_s in the basis of Der_(k-2)
        coord = []
        for l in range(n):
            per = []
            for row in basis:
                vec = {}
                for c, e in zip(row, cols):
                    if c and e[l]:
                        ne = list(e)
                        ne[l] -= 1
                        vec[where[tuple(ne)]] = c * e[l]
                per.append([vec.get(p, 0) for p in sub_piv])
            coord.append(per)
        unknowns = n * hk1
        eqs = []
        for l in range(n):
            for i in range(l + 1, n):
                for t in range(hk2):
                    row = [0] * unknowns
                    for s in range(hk1):
                        a = coord[l][s][t]
                        if a:
                            row[i * hk1 + s] = a
                        b = coord[i][s][t]
                        if b:
                            row[l * hk1 + s] = row[l * hk1 + s] - b
                    if any(row):
                        eqs.append(row)
        hk = self.h(k)
        bound = unknowns - hk
        if not eqs:
            r = 0
        else:
            try:
                r = linalg.modular_rank(eqs, unknowns)
            except ArithmeticError:
                r = -1
            if r != bound:
                r = linalg.rank(eqs, unknowns)
        return unknowns - r - hk

    def generator_degrees(self):
        out = []
        prog = Progress("generators", self.D + 1)
        for k in range(1, self.D + 2):
            out.extend([k] * self.generators_in_degree(k))
            prog.update(k)
        return out


def catalecticant_kernel(f, k):
    """Basis of (f^perp)_k as operators."""
    _check_form(f)
    rows, ridx, cols = catalecticant(f, k)
    n = f.nvars
    if not cols:
        return [Polynomial.monomial(a) for a in ridx]
    # kernel of D -> D(f): vectors a with sum_a a_alpha * row_alpha = 0
    trans = [[rows[i][j] for i in range(len(ridx))] for j in range(len(cols))]
    basis = linalg.kernel(trans, len(ridx))
    return [Polynomial(n, {ridx[i]: x for i, x in enumerate(v) if x}) for v in basis]


def hilbert_function(f):
    return Apolar(f).hilbert()


def apolar_generator_degrees(f):
    return Apolar(f).generator_degrees()


def generator_degrees_direct(f):
    """Same multiset, via dim (f^perp)_k - dim span(T_1 (f^perp)_(k-1)). Slow; for checking."""
    _check_form(f)
    n = f.nvars
    D = f.degree()
    out = []
    prev = []
    for k in range(0, D + 2):
        ker = catalecticant_kernel(f, k)
        if k == 0:
            prev = ker
            continue
        idx = {e: i for i, e in enumerate(monomials(n, k))}
        prods = []
        for g in prev:
            for i in range(n):
                row = [0] * len(idx)
                for e, c in g.terms.items():
                    ne = list(e)
                    ne[i] += 1
                    row[idx[tuple(ne)]] = c
                prods.append(row)
        spanned = linalg.rank(prods, len(idx)) if prods else 0
        out.extend([k] * (len(ker) - spanned))
        prev = ker
    return out


# -- reports ----------------------------------------------------------------------


@dataclass
class ApolarReport:
    hilbert: list
    dim_af: int
    generator_degrees: list
    delta: int
    rs_lower_bound: int
    upper_bound: Optional[int] = None
    ccg_reference: Optional[int] = None
    steinberg: Optional[bool] = None

    @property
    def certified(self):
        return self.upper_bound is not None and self.upper_bound == self.rs_lower_bound

    def to_json(self):
        out = {
            "hilbert": self.hilbert,
            "dimAf": self.dim_af,
            "generatorDegrees": self.generator_degrees,
            "delta": self.delta,
            "rsLowerBound": self.rs_lower_bound,
            "upperBound": self.upper_bound,
            "certified": self.certified,
        }
        if self.ccg_reference is not None:
            out["ccgReference"] = self.ccg_reference
        if self.steinberg is not None:
            out["steinberg"] = self.steinberg
        return out

    @classmethod
    def from_json(cls, data):
        return cls(
            list(data["hilbert"]),
            int(data["dimAf"]),
            list(data["generatorDegrees"]),
            int(data["delta"]),
            int(data["rsLowerBound"]),
            data.get("upperBound"),
            data.get("ccgReference"),
            data.get("steinberg"),
        )


def ccg_rank(f):
    """Waring rank of a monomial: prod (a_i + 1) over all but the smallest exponent."""
    if len(f.terms) != 1:
        return None
    (exp,) = f.terms
    a = sorted(x for x in exp if x)
    if not a:
        return None
    return math.prod(x + 1 for x in a[1:])


def rs_bound_report(f, dec=None, verification=None, max_degree=BUDGET_DEGREE):
    """Hilbert function, generator degrees and the bound ceil(dim A^f / delta)."""
    _check_form(f)
    if f.degree() > max_degree:
        raise BudgetExceeded(f"degree {f.degree()} exceeds the apolar budget of {max_degree}")
    ap = Apolar(f)
    hil = ap.hilbert()
    gens = ap.generator_degrees()
    dim = sum(hil)
    delta = max(gens)
    lower = -(-dim // delta)
    upper = None
    if dec is not None:
        if verification is None:
            from .waring import verify

            verification = verify(dec, f)
        if not verification.exact:
            raise VerificationError("decomposition does not verify against the form")
        upper = dec.term_count
    return ApolarReport(hil, dim, gens, delta, lower, upper, ccg_rank(f))


def steinberg_check(G, f, max_order=BUDGET_ORDER, max_degree=BUDGET_DEGREE):
    """Averaged invariant operators of degree <= d_n kill f, and dim A^f = |W|."""
    if hasattr(f, "polynomial"):
        f = f.polynomial
    if G.order > max_order or f.degree() > max_degree:
        raise BudgetExceeded(
            f"Steinberg check limited to |W| <= {max_order} and degree <= {max_degree}"
        )
    n = G.nvars
    duals = [w.contragredient() for w in G.elements]
    top = max(G.degrees)
    prog = Progress("steinberg", top)
    for k in range(1, top + 1):
        mons = monomials(n, k)
        idx = {e: i for i, e in enumerate(mons)}
        rows = []
        for e in mons:
            m = Polynomial.monomial(e)
            acc = {}
            for w in duals:
                for te, c in w.act(m).terms.items():
                    cur = acc.get(te)
                    acc[te] = c if cur is None else cur + c
            row = [0] * len(mons)
            for te, c in acc.items():
                if c:
                    row[idx[te]] = c
            if any(row):
                rows.append(row)
        if rows:
            basis, _ = linalg.rref(rows, len(mons))
            for row in basis:
                op = Polynomial(n, {mons[i]: x for i, x in enumerate(row) if x})
                if diff_apply(op, f):
                    return False
        prog.update(k)
    return sum(Apolar(f).hilbert()) == G.order


# -- binary forms -------------------------------------------------------------------


def _trim(p):
    while p and not p[-1]:
        p.pop()
    return p


def _poly_rem(a, b):
    a = list(a)
    inv = 1 / b[-1]
    while len(a) >= len(b):
        c = a[-1] * inv
        shift = len(a) - len(b)
        for i, x in enumerate(b):
            if x:
                a[shift + i] = a[shift + i] - c * x
        a.pop()
        _trim(a)
    return a


def _poly_gcd(a, b):
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        a, b = b, _poly_rem(a, b)
    return a


def _squarefree_binary(g, degree):
    """Whether the binary form g (in d_x, d_y) has distinct linear factors."""
    # dehomogenize at d_y = 1; a root at infinity shows up as a degree drop
    coeffs = [as_cyclotomic(0)] * (degree + 1)
    for (a, b), c in g.terms.items():
        coeffs[a] = c
    u = _trim(coeffs)
    if len(u) - 1 < degree - 1:
        return False
    if len(u) <= 2:
        return True
    du = [u[i] * i for i in range(1, len(u))]
    return len(_poly_gcd(u, du)) == 1


def sylvester_binary_rank(f):
    """Waring rank of a binary form by Sylvester's apolar-generator criterion."""
    if f.nvars != 2:
        raise DimensionError("Sylvester's algorithm needs exactly two variables")
    _check_form(f)
    D = f.degree()
    a = next(k for k in range(D + 2) if len(catalecticant_kernel(f, k)) > 0)
    b = D + 2 - a
    ker = catalecticant_kernel(f, a)
    if a == b:
        # any member of the pencil will do; try a few
        g1, g2 = ker[0], ker[1]
        for lam in range(0, 2 * a + 3):
            if _squarefree_binary(g1 + g2.scale(lam), a):
                return a
        return b
    return a if _squarefree_binary(ker[0], a) else b


def general_rank(n, D):
    """ceil(binom(D+n-1, n-1) / n), the rank of a general form."""
    if n < 1 or D < 1:
        raise ValueError("n and D must be positive")
    return -(-math.comb(D + n - 1, n - 1) // n)


def ah_exception(n, D):
    """True for the Alexander-Hirschowitz exceptional pairs, where the general value is off."""
    return (D == 2 and n >= 2) or (n, D) in _AH_EXCEPTIONS
