"""Fundamental skew invariants: the hyperplane product and the family formulas."""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InvalidGroupSpec
from .groups import FamilySpec, ReflectionGroup, _as_imprimitive
from .poly import Polynomial

__all__ = ["SkewInvariant", "build_skew_invariant", "family_formula", "is_skew_invariant", "vandermonde"]


@dataclass
class SkewInvariant:
    polynomial: Polynomial
    group: ReflectionGroup
    degree: int
    normalization: str

    def to_json(self):
        out = self.polynomial.to_json()
        out.update({"group": self.group.name, "degree": self.degree, "normalization": self.normalization})
        return out


def build_skew_invariant(G):
    """f_W = prod over hyperplanes of L_H^(k_H - 1), grevlex-leading coefficient 1."""
    f = Polynomial.constant(G.nvars, 1)
    for h in G.hyperplanes:
        f = f * h.form.to_polynomial() ** (h.multiplicity - 1)
    if G.hyperplanes:
        f = f.monic()
    return SkewInvariant(f, G, G.skew_degree, "hyperplane-product")


def vandermonde(n):
    """prod_{i<j} (x_i - x_j), unnormalized."""
    x = [Polynomial.variable(n, i) for i in range(n)]
    f = Polynomial.constant(n, 1)
    for i in range(n):
        for j in range(i + 1, n):
            f = f * (x[i] - x[j])
    return f


def family_formula(spec):
    """The displayed product formula for a named family, expanded."""
    if not isinstance(spec, FamilySpec):
        raise InvalidGroupSpec("family formula needs a named family")
    if spec.kind == "cyclicProduct":
        return Polynomial.monomial(spec.params)
    if spec.kind == "dihedral":
        m = spec.params[0]
        return Polynomial(2, {(m, 0): 1, (0, m): -1})
    imp = _as_imprimitive(spec)
    if imp is None:
        raise InvalidGroupSpec(f"no closed formula for family {spec.kind!r}")
    d, e, n = imp
    m = d * e
    x = [Polynomial.variable(n, i) for i in range(n)]
    f = Polynomial.monomial([d - 1] * n)
    for i in range(n):
        for j in range(i + 1, n):
            f = f * (x[i] ** m - x[j] ** m)
    return f


def is_skew_invariant(G, f, exhaustive=False):
    """Check w . f == det(w)^-1 f over the generators, or every element if exhaustive."""
    if isinstance(f, SkewInvariant):
        f = f.polynomial
    if f.nvars != G.nvars:
        return False
    for w in G.elements if exhaustive else G.generators:
        if w.act(f) != f.scale(1 / w.det):
            return False
    return True
