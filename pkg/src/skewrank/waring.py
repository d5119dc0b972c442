"""Skew-symmetrization and explicit Waring decompositions of skew invariants.

For a regular element w with regular eigenvector L of eigenvalue zeta_d,
alt(L^D) regroups over the left cosets of <w>:

    sum_{w' in W} det(w') (w' L)^D = |<w>| * sum_{sigma in W/<w>} det(sigma) (sigma L)^D

and the right-hand sum is a nonzero multiple of f_W when D = deg f_W.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import permutations
from typing import Optional

from .cyclo import CyclotomicNumber, lcm_order, rational, root_of_unity
from .errors import DimensionError, NotRegularError, VerificationError
from .groups import GroupElement, build_family, cosets, family_spec, is_regular_vector, regular_elements, regular_numbers
from .poly import LinearForm, Polynomial, expand_power_sum, is_scalar_multiple, multinomial
from .progress import Progress
from .skew import vandermonde

__all__ = [
    "WaringDecomposition",
    "VerificationResult",
    "skew_symmetrize",
    "alt_power",
    "decompose",
    "naive_decompose",
    "geometric_factor",
    "verify",
    "solve_constant",
    "vandermonde_constant",
    "vandermonde_decomposition",
    "vandermonde_check",
]


@dataclass
class VerificationResult:
    scalar: Optional[CyclotomicNumber]
    exact: bool
    term_count: int

    def to_json(self):
        return {
            "exact": self.exact,
            "scalar": self.scalar.to_json() if self.scalar is not None else None,
            "termCount": self.term_count,
        }


@dataclass
class WaringDecomposition:
    """sum_i c_i * l_i^D; coefficients stay explicit since c_i^(1/D) may leave the field."""

    nvars: int
    exponent: int
    terms: list
    provenance: dict = field(default_factory=dict)

    @property
    def term_count(self):
        return len(self.terms)

    def __len__(self):
        return len(self.terms)

    def expand(self, threads=1, progress=None):
        return expand_power_sum(self.terms, self.exponent, self.nvars, threads=threads, progress=progress)

    def to_json(self, verification=None):
        prov = self.provenance
        w = prov.get("regularElement")
        L = prov.get("eigenform")
        out = {
            "group": prov.get("group"),
            "D": self.exponent,
            "nvars": self.nvars,
            "regularNumber": prov.get("regularNumber"),
            "regularElement": w.to_json() if isinstance(w, GroupElement) else w,
            "eigenform": L.to_json() if isinstance(L, LinearForm) else L,
            "cosetCount": prov.get("cosetCount"),
            "terms": [{"coeff": c.to_json(), "form": form.to_json()} for c, form in self.terms],
        }
        if verification is not None:
            out["verification"] = verification.to_json()
        return out

    @classmethod
    def from_json(cls, data):
        terms = [
            (CyclotomicNumber.from_json(t["coeff"]), LinearForm.from_json(t["form"]))
            for t in data["terms"]
        ]
        if not terms:
            raise ValueError("decomposition has no terms")
        nvars = int(data.get("nvars") or len(terms[0][1]))
        L = data.get("eigenform")
        prov = {
            "group": data.get("group"),
            "regularNumber": data.get("regularNumber"),
            "regularElement": data.get("regularElement"),
            "eigenform": LinearForm.from_json(L) if L is not None else None,
            "cosetCount": data.get("cosetCount"),
        }
        return cls(nvars, int(data["D"]), terms, prov)


def _merge(terms, D):
    """Combine proportional forms: c' (t l)^D folds into l with coefficient c' t^D."""
    index = {}
    out = []
    for c, form in terms:
        s, norm = form.normalized()
        hit = index.get(norm)
        if hit is None:
            index[norm] = (len(out), s)
            out.append([c, form])
        else:
            i, s0 = hit
            out[i][0] = out[i][0] + c * (s / s0) ** D
    return [(c, form) for c, form in out if c]


def skew_symmetrize(G, p):
    """alt(p) = (1/|W|) sum_w det(w) (w . p)."""
    if p.nvars != G.nvars:
        raise DimensionError("polynomial and group have different variable counts")
    acc = Polynomial.zero(p.nvars)
    for w in G.elements:
        acc = acc + w.act(p).scale(w.det)
    return acc.scale(Fraction(1, G.order))


def alt_power(G, L, D, threads=1):
    """alt(L^D) computed as a power sum over the group."""
    terms = [(w.det, w.apply_vector(L)) for w in G.elements]
    return expand_power_sum(terms, D, G.nvars, threads=threads).scale(Fraction(1, G.order))


def geometric_factor(G, w, d, D):
    """det(w) * zeta_d^D: the ratio picked up by one step around the coset <w>."""
    return w.det * root_of_unity(d, D)


def decompose(G, d=None, D=None):
    """Coset-reduced decomposition sum_{sigma in W/<w>} det(sigma) (sigma L)^D."""
    if d is None:
        d = max(regular_numbers(G))
    pairs = regular_elements(G, d, first_only=True)
    if not pairs:
        raise NotRegularError(f"{d} is not a regular number of {G.name}")
    w, L = pairs[0]
    if D is None:
        D = G.skew_degree
    cos = cosets(G, w)
    raw = [(sigma.det, sigma.apply_vector(L)) for sigma in cos.representatives]
    terms = _merge(raw, D)
    prov = {
        "group": G.name,
        "regularNumber": d,
        "regularElement": w,
        "eigenform": L,
        "cosetCount": len(cos.representatives),
        "subgroupOrder": cos.subgroup_order,
        "geometricFactor": geometric_factor(G, w, d, D),
    }
    return WaringDecomposition(G.nvars, D, terms, prov)


def naive_decompose(G, L, D=None):
    """The full |W|-term sum of det(w) (w L)^D, without regrouping."""
    if not isinstance(L, LinearForm):
        L = LinearForm(L)
    if not is_regular_vector(G, L):
        raise NotRegularError("linear form lies on a reflecting hyperplane")
    if D is None:
        D = G.skew_degree
    terms = [(w.det, w.apply_vector(L)) for w in G.elements]
    return WaringDecomposition(G.nvars, D, terms, {"group": G.name, "eigenform": L, "cosetCount": G.order})


def verify(dec, f, threads=1):
    """Expand the decomposition and find c with sum = c * f."""
    if not f:
        raise ValueError("cannot verify against the zero polynomial")
    if f.nvars != dec.nvars:
        raise DimensionError("decomposition and target have different variable counts")
    if f.degree() != dec.exponent or not f.is_homogeneous():
        return VerificationResult(None, False, dec.term_count)
    prog = Progress("expand", dec.term_count)
    total = dec.expand(threads=threads, progress=prog)
    c = is_scalar_multiple(total, f)
    if c is None or not c:
        return VerificationResult(None, False, dec.term_count)
    return VerificationResult(c, True, dec.term_count)


def solve_constant(dec, f, monomial=None, threads=1):
    """C with f = C * sum c_i l_i^D, by matching one coefficient after verification."""
    res = verify(dec, f, threads=threads)
    if not res.exact:
        raise VerificationError("decomposition is not proportional to the target")
    total = dec.expand(threads=threads)
    if monomial is None or not f.coefficient(monomial):
        monomial = f.leading_term()[0]
    return f.coefficient(monomial) / total.coefficient(monomial)


# -- the Vandermonde determinant -----------------------------------------------


@dataclass
class VandermondeConstant:
    n: int
    P: CyclotomicNumber
    Mn: int
    p_squared: bool
    modulus: bool

    @property
    def check_passed(self):
        return self.p_squared and self.modulus


def vandermonde_constant(n):
    """P = prod_{1<=j<k<=n-1} (a^k - a^j) for a = zeta_n, with radical-free checks."""
    if n < 2:
        raise ValueError("n must be at least 2")
    a = [root_of_unity(n, k) for k in range(n)]
    P = rational(1, n)
    for j in range(1, n):
        for k in range(j + 1, n):
            P = P * (a[k] - a[j])
    Mn = multinomial(range(1, n))
    target = n ** (n - 2)
    sq = P * P == (-1) ** math.comb(n - 1, 2) * target
    mod = P * P.conjugate() == target
    return VandermondeConstant(n, P, Mn, sq, mod)


def vandermonde_decomposition(n, convention="fixed-point", group=None):
    """f = C sum det(sigma) (sigma L)^D for S_n, L = sum zeta^(j-1) x_j.

    ``fixed-point`` takes the representatives with sigma(1) = 1;
    ``canonical`` takes canonical left-coset representatives of the n-cycle
    x_j -> x_(j-1), which multiplies L by zeta.
    """
    z = [root_of_unity(n, k) for k in range(n)]
    L = LinearForm(z)
    D = math.comb(n, 2)
    if convention == "fixed-point":
        terms = []
        for rest in permutations(range(1, n)):
            sigma = (0,) + rest
            sign = _perm_sign(sigma)
            coeffs = [None] * n
            for j in range(n):
                coeffs[sigma[j]] = z[j]
            terms.append((rational(sign), LinearForm(coeffs)))
        return WaringDecomposition(n, D, terms, {"group": f"S{n}", "eigenform": L, "cosetCount": len(terms)})
    if convention != "canonical":
        raise ValueError(f"unknown convention {convention!r}")
    G = group or build_family(family_spec("symmetric", n=n))
    cycle = GroupElement(n, G.field_order, [(j - 1) % n for j in range(n)], [0] * n)
    w = G.element(cycle)
    cos = cosets(G, w)
    terms = [(s.det, s.apply_vector(L)) for s in cos.representatives]
    prov = {"group": G.name, "regularNumber": n, "regularElement": w, "eigenform": L, "cosetCount": len(terms)}
    return WaringDecomposition(n, D, terms, prov)


def _perm_sign(p):
    sign = 1
    seen = [False] * len(p)
    for s in range(len(p)):
        if seen[s]:
            continue
        j = s
        length = 0
        while not seen[j]:
            seen[j] = True
            j = p[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def vandermonde_check(n, group=None, threads=1):
    """Solve C for both representative conventions and test the closed form for 1/C."""
    vc = vandermonde_constant(n)
    f = vandermonde(n)
    mono = tuple(range(n))
    c_fixed = solve_constant(vandermonde_decomposition(n, "fixed-point"), f, mono, threads)
    c_canon = solve_constant(vandermonde_decomposition(n, "canonical", group), f, mono, threads)
    sign = (-1) ** (math.comb(n, 2) + n + 1)
    closed_inv = vc.P * (sign * vc.Mn)
    # floating diagnostic: P should be (-i)^binom(n-1,2) * sqrt(n^(n-2))
    p_float = (-1j) ** math.comb(n - 1, 2) * math.sqrt(n ** (n - 2))
    drift = abs(vc.P.to_complex() - p_float)
    return {
        "n": n,
        "P": vc.P,
        "Mn": vc.Mn,
        "C": c_fixed,
        "pSquared": vc.p_squared,
        "pModulus": vc.modulus,
        "closedForm": (1 / c_fixed) == closed_inv,
        "conventionsAgree": c_fixed == c_canon,
        "floatDrift": drift,
    }
