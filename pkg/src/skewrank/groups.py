"""Finite complex reflection groups as enumerated exact matrix groups.

Matrices act on V by columns: element M sends basis vector e_j to
sum_i M[i][j] e_i. Groups whose generators are monomial (one root of unity
per column) are stored as (perm, exps) pairs, M[perm[j]][j] = zeta_m^exps[j],
and take a fast path through multiplication, the action on polynomials and
the Molien computation.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from . import linalg
from .cyclo import CyclotomicNumber, _field, as_cyclotomic, lcm_order, rational, root_of_unity
from .errors import CapExceeded, InvalidGroupSpec, MolienError, OrderError
from .poly import LinearForm, Polynomial, apply_matrix, apply_monomial

DEFAULT_CAP = 2_000_000

_ZERO = rational(0)
_ONE = rational(1)


def default_cap():
    env = os.environ.get("SKEWRANK_CAP")
    if env:
        try:
            cap = int(env)
        except ValueError:
            raise InvalidGroupSpec(f"SKEWRANK_CAP must be an integer, got {env!r}") from None
        if cap < 1:
            raise InvalidGroupSpec("SKEWRANK_CAP must be positive")
        return cap
    return DEFAULT_CAP


# -- elements -------------------------------------------------------------


def _root_exponent(x, m):
    """k with x == zeta_m^k, or None."""
    s = x.scaled_root()
    if s is None:
        return None
    r, k = s
    o = x.order
    if m % o:
        return None
    k *= m // o
    if r == 1:
        return k % m
    if r == -1 and m % 2 == 0:
        return (k + m // 2) % m
    return None


class GroupElement:
    """An invertible n x n matrix over Q(zeta_m), monomial or dense."""

    __slots__ = ("n", "m", "perm", "exps", "_matrix", "_det", "_order", "_key", "_hash_key")

    def __init__(self, n, m, perm=None, exps=None, matrix=None):
        self.n = n
        self.m = m
        self.perm = tuple(perm) if perm is not None else None
        self.exps = tuple(e % m for e in exps) if exps is not None else None
        self._matrix = None
        if matrix is not None:
            self._matrix = tuple(tuple(as_cyclotomic(x).promote(m) for x in row) for row in matrix)
        self._det = None
        self._order = None
        self._key = None
        self._hash_key = None

    @classmethod
    def from_matrix(cls, matrix, m):
        """Build from rows, using the monomial representation when possible."""
        n = len(matrix)
        rows = [[as_cyclotomic(x) for x in row] for row in matrix]
        if any(len(r) != n for r in rows):
            raise InvalidGroupSpec("generator matrices must be square")
        perm = []
        exps = []
        for j in range(n):
            nz = [i for i in range(n) if rows[i][j]]
            if len(nz) != 1:
                break
            k = _root_exponent(rows[nz[0]][j], m)
            if k is None:
                break
            perm.append(nz[0])
            exps.append(k)
        else:
            if len(set(perm)) == n:
                return cls(n, m, perm, exps)
        return cls(n, m, matrix=rows)

    @classmethod
    def identity(cls, n, m, monomial=True):
        if monomial:
            return cls(n, m, range(n), [0] * n)
        return cls(n, m, matrix=[[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @property
    def is_monomial(self):
        return self.perm is not None

    @property
    def matrix(self):
        if self._matrix is None:
            zero = _ZERO.promote(self.m)
            rows = [[zero] * self.n for _ in range(self.n)]
            for j, (i, e) in enumerate(zip(self.perm, self.exps)):
                rows[i][j] = root_of_unity(self.m, e)
            self._matrix = tuple(tuple(r) for r in rows)
        return self._matrix

    def rows(self):
        return [list(r) for r in self.matrix]

    def hash_key(self):
        if self._hash_key is None:
            if self.is_monomial:
                self._hash_key = (self.perm, self.exps)
            else:
                self._hash_key = tuple(
                    (x.numerators, x.denominator) for row in self._matrix for x in row
                )
        return self._hash_key

    def sort_key(self):
        """Canonical order: row-major serialization of the entries in Q(zeta_m)."""
        if self._key is None:
            if self.is_monomial:
                f = _field(self.m)
                zero = ((0,) * f.phi, 1)
                key = []
                where = {i: j for j, i in enumerate(self.perm)}
                for i in range(self.n):
                    j0 = where[i]
                    for j in range(self.n):
                        key.append((f.table[self.exps[j]], 1) if j == j0 else zero)
                self._key = tuple(key)
            else:
                self._key = tuple((x.numerators, x.denominator) for row in self._matrix for x in row)
        return self._key

    def __eq__(self, other):
        if not isinstance(other, GroupElement):
            return NotImplemented
        if self.is_monomial and other.is_monomial:
            return self.perm == other.perm and self.exps == other.exps
        return self.sort_key() == other.sort_key()

    def __hash__(self):
        return hash(self.sort_key())

    def __mul__(self, other):
        if self.is_monomial and other.is_monomial and self.m == other.m:
            perm = tuple(self.perm[p] for p in other.perm)
            exps = tuple(b + self.exps[p] for b, p in zip(other.exps, other.perm))
            return GroupElement(self.n, self.m, perm, exps)
        a, b = self.matrix, other.matrix
        n = self.n
        out = []
        for i in range(n):
            row = []
            for j in range(n):
                acc = _ZERO
                for k in range(n):
                    if a[i][k] and b[k][j]:
                        acc = acc + a[i][k] * b[k][j]
                row.append(acc)
            out.append(row)
        return GroupElement(n, lcm_order(self.m, other.m), matrix=out)

    def is_identity(self):
        if self.is_monomial:
            return all(p == j for j, p in enumerate(self.perm)) and not any(self.exps)
        return all(
            (x == 1) if i == j else (not x)
            for i, row in enumerate(self._matrix)
            for j, x in enumerate(row)
        )

    def inverse(self):
        if self.is_monomial:
            perm = [0] * self.n
            exps = [0] * self.n
            for j, (p, e) in enumerate(zip(self.perm, self.exps)):
                perm[p] = j
                exps[p] = -e
            return GroupElement(self.n, self.m, perm, exps)
        inv = linalg.inverse(self.rows())
        return GroupElement(self.n, self.m, matrix=[[as_cyclotomic(x) for x in r] for r in inv])

    def contragredient(self):
        """The action on the dual space (operators in T): transpose of the inverse."""
        if self.is_monomial:
            return GroupElement(self.n, self.m, self.perm, [-e for e in self.exps])
        inv = self.inverse().matrix
        return GroupElement(
            self.n, self.m, matrix=[[inv[j][i] for j in range(self.n)] for i in range(self.n)]
        )

    def cycles(self):
        """For monomial elements: (length, exponent sum mod m) per cycle."""
        seen = [False] * self.n
        out = []
        for s in range(self.n):
            if seen[s]:
                continue
            length = 0
            tot = 0
            j = s
            while not seen[j]:
                seen[j] = True
                tot += self.exps[j]
                length += 1
                j = self.perm[j]
            out.append((length, tot % self.m))
        out.sort()
        return out

    @property
    def det(self):
        if self._det is None:
            if self.is_monomial:
                sign = 1
                for length, _ in self.cycles():
                    if length % 2 == 0:
                        sign = -sign
                self._det = root_of_unity(self.m, sum(self.exps)) * sign
            else:
                self._det = as_cyclotomic(linalg.determinant(self.rows()))
        return self._det

    @property
    def order(self):
        if self._order is None:
            if self.is_monomial:
                out = 1
                for length, s in self.cycles():
                    o = length * (self.m // math.gcd(self.m, s))
                    out = out * o // math.gcd(out, o)
                self._order = out
            else:
                k = 1
                p = self
                while not p.is_identity():
                    p = p * self
                    k += 1
                    if k > 10**6:
                        raise InvalidGroupSpec("element of infinite or huge order")
                self._order = k
        return self._order

    def fixed_rank(self):
        """rank(M - I)."""
        if self.is_monomial:
            return self.n - sum(1 for _, s in self.cycles() if s == 0)
        return linalg.rank(self._shifted(_ONE), self.n)

    def _shifted(self, lam):
        rows = self.rows()
        for i in range(self.n):
            rows[i][i] = rows[i][i] - lam
        return rows

    def eigenvectors(self, lam):
        """Basis of ker(M - lam I) as linear forms."""
        basis = linalg.kernel(self._shifted(as_cyclotomic(lam)), self.n)
        return [LinearForm([as_cyclotomic(x) for x in v]) for v in basis]

    def apply_vector(self, v):
        """M v, where v is a vector of V given as a linear form."""
        c = list(v)
        if self.is_monomial:
            out = [_ZERO] * self.n
            for j, (p, e) in enumerate(zip(self.perm, self.exps)):
                if c[j]:
                    out[p] = c[j] * root_of_unity(self.m, e) if e else c[j]
            return LinearForm(out)
        a = self._matrix
        out = []
        for i in range(self.n):
            acc = _ZERO
            for j in range(self.n):
                if a[i][j] and c[j]:
                    acc = acc + a[i][j] * c[j]
            out.append(acc)
        return LinearForm(out)

    def act(self, f):
        """w . f under x_j -> sum_i M[i][j] x_i."""
        if self.is_monomial:
            return apply_monomial(self.perm, self.exps, self.m, f)
        return apply_matrix(self._matrix, f)

    def molien_key(self):
        """Hashable description of det(I - tM)."""
        if self.is_monomial:
            return ("mono", tuple(self.cycles()))
        return ("dense", tuple(c.sort_key() for c in self.char_coefficients()))

    def char_coefficients(self):
        """Coefficients c_0..c_n of det(I - tM) = sum c_k t^k."""
        n = self.n
        if self.is_monomial:
            poly = [_ONE]
            for length, s in self.cycles():
                fac = [_ONE] + [_ZERO] * (length - 1) + [-root_of_unity(self.m, s)]
                new = [_ZERO] * (len(poly) + length)
                for i, a in enumerate(poly):
                    if a:
                        for j, b in enumerate(fac):
                            if b:
                                new[i + j] = new[i + j] + a * b
                poly = new
            return poly
        # Faddeev-LeVerrier: det(tI - M) = sum_k c_k t^(n-k)
        a = self.rows()
        mk = [[_ZERO] * n for _ in range(n)]
        coeffs = [_ONE]
        for k in range(1, n + 1):
            # M_k = A M_{k-1} + c_{k-1} I
            prev = mk
            mk = [
                [
                    sum((a[i][l] * prev[l][j] for l in range(n) if a[i][l] and prev[l][j]), _ZERO)
                    + (coeffs[-1] if i == j else _ZERO)
                    for j in range(n)
                ]
                for i in range(n)
            ]
            am = [
                [sum((a[i][l] * mk[l][j] for l in range(n) if a[i][l] and mk[l][j]), _ZERO) for j in range(n)]
                for i in range(n)
            ]
            tr = sum((am[i][i] for i in range(n)), _ZERO)
            coeffs.append(tr * Fraction(-1, k))
        return coeffs

    def to_json(self):
        return [[x.to_json() for x in row] for row in self.matrix]

    def __repr__(self):
        if self.is_monomial:
            return f"GroupElement(perm={self.perm}, exps={self.exps}, m={self.m})"
        return f"GroupElement(dense {self.n}x{self.n})"


# -- groups -----------------------------------------------------------------


@dataclass(frozen=True)
class FamilySpec:
    """A named family member; ``params`` depends on ``kind``."""

    kind: str
    params: tuple

    def label(self):
        k, p = self.kind, self.params
        if k == "symmetric":
            return f"S{p[0]}"
        if k == "hyperoctahedral":
            return f"B{p[0]}"
        if k == "demihyperoctahedral":
            return f"D{p[0]}"
        if k == "imprimitive":
            d, e, n = p
            return f"G({d * e},{e},{n})"
        if k == "cyclicProduct":
            return "x".join(f"Z/{a + 1}" for a in p)
        if k == "dihedral":
            return f"I2({p[0]})"
        return k


FAMILIES = ("symmetric", "hyperoctahedral", "demihyperoctahedral", "imprimitive", "cyclicProduct", "dihedral")


def family_spec(kind, **params):
    """Validate family parameters and return a FamilySpec."""
    def need(name, low=1):
        v = params.get(name)
        if v is None:
            raise InvalidGroupSpec(f"family {kind} needs parameter {name}")
        if not isinstance(v, int) or v < low:
            raise InvalidGroupSpec(f"parameter {name} must be an integer >= {low}, got {v!r}")
        return v

    if kind == "symmetric":
        return FamilySpec(kind, (need("n"),))
    if kind in ("hyperoctahedral", "demihyperoctahedral"):
        return FamilySpec(kind, (need("n", 2 if kind == "demihyperoctahedral" else 1),))
    if kind == "imprimitive":
        return FamilySpec(kind, (need("d"), need("e"), need("n")))
    if kind == "dihedral":
        return FamilySpec(kind, (need("m", 2),))
    if kind == "cyclicProduct":
        a = params.get("a")
        if not a or any(not isinstance(x, int) or x < 1 for x in a):
            raise InvalidGroupSpec("cyclicProduct needs a nonempty list of positive exponents")
        return FamilySpec(kind, tuple(a))
    raise InvalidGroupSpec(f"unknown family {kind!r}")


def _as_imprimitive(spec):
    """(d, e, n) with the family equal to G(de, e, n), or None."""
    k, p = spec.kind, spec.params
    if k == "symmetric":
        return 1, 1, p[0]
    if k == "hyperoctahedral":
        return 2, 1, p[0]
    if k == "demihyperoctahedral":
        return 1, 2, p[0]
    if k == "imprimitive":
        return p
    if k == "dihedral":
        return 1, p[0], 2
    return None


def family_order(spec):
    imp = _as_imprimitive(spec)
    if imp is not None:
        d, e, n = imp
        return (d * e) ** n * math.factorial(n) // e
    return math.prod(a + 1 for a in spec.params)


def family_degrees(spec):
    imp = _as_imprimitive(spec)
    if imp is not None:
        d, e, n = imp
        return sorted([d * e * i for i in range(1, n)] + [n * d])
    return sorted(a + 1 for a in spec.params)


def family_generators(spec):
    """(n, m, generators) for a family member, generators as monomial elements."""
    imp = _as_imprimitive(spec)
    if imp is not None:
        d, e, n = imp
        m = d * e
        gens = []
        for i in range(n - 1):
            perm = list(range(n))
            perm[i], perm[i + 1] = perm[i + 1], perm[i]
            gens.append(GroupElement(n, m, perm, [0] * n))
        if n >= 2 and m > 1:
            # x1 -> zeta x2, x2 -> zeta^-1 x1
            perm = list(range(n))
            perm[0], perm[1] = 1, 0
            exps = [0] * n
            exps[0], exps[1] = 1, -1
            gens.append(GroupElement(n, m, perm, exps))
        if d > 1:
            exps = [0] * n
            exps[0] = e
            gens.append(GroupElement(n, m, range(n), exps))
        return n, m, gens
    a = spec.params
    n = len(a)
    m = lcm_order(*(x + 1 for x in a))
    gens = []
    for j, x in enumerate(a):
        exps = [0] * n
        exps[j] = m // (x + 1)
        gens.append(GroupElement(n, m, range(n), exps))
    return n, m, gens


@dataclass
class Reflection:
    element: GroupElement
    hyperplane_form: LinearForm
    order: int
    eigenvalue: CyclotomicNumber


@dataclass
class Hyperplane:
    """Reflecting hyperplane: L_H (exceptional eigenvector), k_H and the fixed-space functional."""

    form: LinearForm
    multiplicity: int
    functional: LinearForm


@dataclass
class CosetDecomposition:
    subgroup_order: int
    representatives: list


class ReflectionGroup:
    """A fully enumerated finite matrix group generated by the given elements."""

    def __init__(self, generators, nvars, field_order, name="custom", family=None, cap=None):
        self.nvars = nvars
        self.field_order = field_order
        self.generators = list(generators)
        self.name = name
        self.family = family
        self.cap = cap if cap is not None else default_cap()
        self.elements = _enumerate(self.generators, nvars, field_order, self.cap)
        self.index = {g.hash_key(): i for i, g in enumerate(self.elements)}
        self.identity = next(g for g in self.elements if g.is_identity())
        self.reflections = []
        self.hyperplanes = []
        self._find_reflections()
        self._degrees = None
        self._regular_cache = {}

    @property
    def order(self):
        return len(self.elements)

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, w):
        return isinstance(w, GroupElement) and w.hash_key() in self.index

    def element(self, w):
        """The stored element equal to w (or raise)."""
        i = self.index.get(w.hash_key())
        if i is None:
            raise InvalidGroupSpec("element is not in the group")
        return self.elements[i]

    def _find_reflections(self):
        for g in self.elements:
            if g.is_identity() or g.fixed_rank() != 1:
                continue
            lam = g.det
            vecs = g.eigenvectors(lam)
            if len(vecs) != 1:
                raise MolienError("reflection without a one-dimensional exceptional eigenspace")
            _, form = vecs[0].normalized()
            self.reflections.append(Reflection(g, form, g.order, lam))
        groups = {}
        order = []
        for r in self.reflections:
            key = r.hyperplane_form
            if key not in groups:
                groups[key] = []
                order.append(key)
            groups[key].append(r)
        for key in order:
            refl = groups[key][0].element
            shifted = refl._shifted(_ONE)
            row = next(r for r in shifted if any(r))
            _, functional = LinearForm(row).normalized()
            self.hyperplanes.append(Hyperplane(key, 1 + len(groups[key]), functional))

    @property
    def skew_degree(self):
        return sum(h.multiplicity - 1 for h in self.hyperplanes)

    @property
    def degrees(self):
        if self._degrees is None:
            self._degrees = degrees_of(self)
        return self._degrees

    def info(self):
        return {
            "name": self.name,
            "order": self.order,
            "nvars": self.nvars,
            "fieldOrder": self.field_order,
            "degrees": self.degrees,
            "reflections": len(self.reflections),
            "hyperplanes": [
                {"form": h.form.to_json(), "multiplicity": h.multiplicity} for h in self.hyperplanes
            ],
            "regularNumbers": regular_numbers(self),
        }

    def __repr__(self):
        return f"ReflectionGroup({self.name}, order={self.order})"


def _enumerate(generators, n, m, cap):
    ident = GroupElement.identity(n, m, all(g.is_monomial for g in generators))
    seen = {ident.hash_key(): ident}
    queue = [ident]
    head = 0
    while head < len(queue):
        g = queue[head]
        head += 1
        for s in generators:
            h = s * g
            k = h.hash_key()
            if k not in seen:
                if len(seen) >= cap:
                    raise CapExceeded(f"group closure exceeds the element cap of {cap}")
                seen[k] = h
                queue.append(h)
    return sorted(queue, key=GroupElement.sort_key)


def build_family(spec, cap=None):
    """Enumerate a named family member with its canonical generators."""
    if isinstance(spec, str):
        raise InvalidGroupSpec("use family_spec() to describe a family")
    cap = cap if cap is not None else default_cap()
    size = family_order(spec)
    if size > cap:
        raise CapExceeded(f"{spec.label()} has {size} elements, over the cap of {cap}")
    n, m, gens = family_generators(spec)
    return ReflectionGroup(gens, n, m, name=spec.label(), family=spec, cap=cap)


def build_from_generators(matrices, cap=None, field_order=None, name="custom"):
    """Close a list of invertible matrices under multiplication."""
    if not matrices:
        raise InvalidGroupSpec("at least one generator is required")
    n = len(matrices[0])
    if n == 0:
        raise InvalidGroupSpec("generators must be at least 1x1")
    rows = []
    orders = [field_order or 1]
    for mat in matrices:
        if len(mat) != n or any(len(r) != n for r in mat):
            raise InvalidGroupSpec("all generators must be square of the same size")
        conv = []
        for r in mat:
            row = []
            for x in r:
                c = as_cyclotomic(x)
                if c is NotImplemented:
                    raise InvalidGroupSpec(f"bad matrix entry {x!r}")
                row.append(c)
                orders.append(c.order)
            conv.append(row)
        rows.append(conv)
    m = lcm_order(*orders)
    gens = []
    for mat in rows:
        try:
            det = linalg.determinant(mat)
        except OrderError as exc:
            raise InvalidGroupSpec(str(exc)) from None
        if not det:
            raise InvalidGroupSpec("generator matrix is singular")
        gens.append(GroupElement.from_matrix(mat, m))
    if len({g.is_monomial for g in gens}) > 1:
        gens = [GroupElement(n, m, matrix=g.rows()) for g in gens]
    return ReflectionGroup(gens, n, m, name=name, cap=cap)


def group_from_config(data, cap=None):
    """Custom group from the JSON config layout."""
    try:
        n = int(data["nvars"])
        m = int(data.get("fieldOrder", 1))
        gens = data["generators"]
    except (KeyError, TypeError, ValueError) as exc:
        raise InvalidGroupSpec(f"bad group config: {exc}") from None
    mats = []
    for g in gens:
        try:
            mats.append([[CyclotomicNumber.from_json(x) for x in row] for row in g])
        except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
            raise InvalidGroupSpec(f"bad matrix literal: {exc}") from None
    if any(len(mat) != n for mat in mats):
        raise InvalidGroupSpec("generator size does not match nvars")
    if cap is None and "cap" in data:
        cap = int(data["cap"])
    return build_from_generators(mats, cap=cap, field_order=m, name=data.get("name", "custom"))


# -- eigenvectors, regularity, cosets -----------------------------------------


def eigenvectors(w, lam):
    return w.eigenvectors(lam)


def is_regular_vector(G, v):
    """True iff v lies on no reflecting hyperplane (the fixed space of any reflection)."""
    if isinstance(v, LinearForm):
        coords = v.coeffs
    else:
        coords = [as_cyclotomic(x) for x in v]
    return all(h.functional.dot(coords) for h in G.hyperplanes)


def _regular_in_span(G, basis):
    """A regular vector in span(basis), or None when the span lies inside a hyperplane."""
    if not basis:
        return None
    for h in G.hyperplanes:
        if not any(h.functional.dot(b) for b in basis):
            return None
    for b in basis:
        if is_regular_vector(G, b):
            return b
    # each functional restricted to t -> sum t^i b_i is a nonzero polynomial of
    # degree < dim, so one of these sample points avoids every root
    tries = (len(basis) - 1) * len(G.hyperplanes) + 1
    for t in range(1, tries + 2):
        v = basis[0]
        pw = 1
        for b in basis[1:]:
            pw *= t
            v = v + b.scale(pw)
        if is_regular_vector(G, v):
            return v
    raise ArithmeticError("regular vector search failed")


def regular_elements(G, d, first_only=False):
    """Pairs (w, v) with w v = zeta_d v and v regular, in canonical element order."""
    if d < 1:
        raise ValueError("d must be positive")
    key = (d, first_only)
    if key in G._regular_cache:
        return G._regular_cache[key]
    lam = root_of_unity(d)
    out = []
    for w in G.elements:
        if w.order % d:
            continue
        basis = w.eigenvectors(lam)
        v = _regular_in_span(G, basis)
        if v is None:
            continue
        _, v = v.normalized()
        out.append((w, v))
        if first_only:
            break
    G._regular_cache[key] = out
    return out


def regular_numbers(G):
    top = max(G.degrees)
    return [d for d in range(1, top + 1) if regular_elements(G, d, first_only=True)]


def cosets(G, w):
    """Left cosets of <w>; each representative is the canonical minimum of its coset."""
    w = G.element(w)
    powers = [G.identity]
    p = w
    while not p.is_identity():
        powers.append(p)
        p = p * w
    assigned = set()
    reps = []
    for g in G.elements:
        k = g.hash_key()
        if k in assigned:
            continue
        reps.append(g)
        for q in powers:
            assigned.add((g * q).hash_key())
    return CosetDecomposition(len(powers), reps)


# -- degrees ------------------------------------------------------------------


def _series_inverse(coeffs, terms):
    """Power series of 1/p(t) for p(0) = 1, up to t^(terms-1)."""
    out = [_ONE]
    for k in range(1, terms):
        acc = _ZERO
        for i in range(1, min(k, len(coeffs) - 1) + 1):
            if coeffs[i]:
                acc = acc + coeffs[i] * out[k - i]
        out.append(-acc)
    return out


def molien_degrees(G):
    """Degrees from the Molien series, by dividing out factors (1 - t^k)."""
    terms = len(G.reflections) + 2
    classes = {}
    reps = {}
    for g in G.elements:
        k = g.molien_key()
        classes[k] = classes.get(k, 0) + 1
        reps.setdefault(k, g)
    acc = [_ZERO] * terms
    for k, count in classes.items():
        series = _series_inverse(reps[k].char_coefficients(), terms)
        for i, c in enumerate(series):
            if c:
                acc[i] = acc[i] + c * count
    total = []
    for c in acc:
        if not c.is_rational():
            raise MolienError("Molien series has irrational coefficients")
        total.append(c.to_fraction())
    series = [c / G.order for c in total]
    if series[0] != 1:
        raise MolienError("Molien series does not start with 1")
    found = []
    while True:
        k = next((i for i in range(1, terms) if series[i]), None)
        if k is None:
            break
        if series[k] < 0 or series[k].denominator != 1:
            raise MolienError("Molien series is not a product of 1/(1 - t^d) factors")
        new = list(series)
        for i in range(k, terms):
            new[i] -= series[i - k]
        series = new
        found.append(k)
        if len(found) > G.nvars:
            raise MolienError("too many degrees divided out of the Molien series")
    if len(found) != G.nvars or math.prod(found) != G.order:
        raise MolienError(f"Molien factorization gave {found} for a group of order {G.order}")
    return sorted(found)


def degrees_of(G):
    """Degrees d_1 <= ... <= d_n; named families are checked against the closed form."""
    mol = molien_degrees(G)
    if G.family is not None:
        closed = family_degrees(G.family)
        if closed != mol:
            raise MolienError(f"closed-form degrees {closed} disagree with Molien degrees {mol}")
        return closed
    return mol
