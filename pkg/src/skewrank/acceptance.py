"""The self-test matrix: each item recomputes a published number exactly.

Every item returns ``(passed, details)`` where ``details`` is plain JSON with
no timings, so serialized results are identical for identical seeds and any
thread count.
"""

from __future__ import annotations

import math
import random
import time
from fractions import Fraction

from . import linalg
from .apolar import Apolar, general_rank, rs_bound_report, steinberg_check, sylvester_binary_rank
from .groups import build_family, family_degrees, family_spec, is_regular_vector, regular_numbers
from .poly import LinearForm, Polynomial, is_scalar_multiple, parse_form
from .skew import build_skew_invariant, family_formula
from .waring import WaringDecomposition, alt_power, decompose, vandermonde_check, verify
from .cyclo import rational

_GROUPS = {}


def _group(kind, **params):
    spec = family_spec(kind, **params)
    G = _GROUPS.get(spec)
    if G is None:
        G = _GROUPS[spec] = build_family(spec)
    return G


def _certified_decomposition(G, d=None, threads=1):
    f = build_skew_invariant(G).polynomial
    dec = decompose(G, d)
    ver = verify(dec, f, threads=threads)
    rep = rs_bound_report(f, dec, ver)
    return f, dec, ver, rep


def _summary(G, dec, ver, rep):
    return {
        "group": G.name,
        "order": G.order,
        "regularNumber": dec.provenance["regularNumber"],
        "terms": dec.term_count,
        "exact": ver.exact,
        "rsLowerBound": rep.rs_lower_bound,
        "upperBound": rep.upper_bound,
        "certified": rep.certified,
    }


def item_intro(seed, threads):
    x, y, z = (Polynomial.variable(3, i) for i in range(3))
    two = WaringDecomposition(
        2, 2, [(rational(1), LinearForm([1, 1])), (rational(-1), LinearForm([1, -1]))]
    )
    xy = Polynomial.monomial((1, 1))
    v2 = verify(two, xy, threads)
    residual2 = two.expand().scale(Fraction(1, 4)) - xy
    signs = [(1, (1, 1, 1)), (-1, (1, 1, -1)), (-1, (1, -1, 1)), (1, (1, -1, -1))]
    four = WaringDecomposition(3, 3, [(rational(s), LinearForm(c)) for s, c in signs])
    xyz = x * y * z
    v3 = verify(four, xyz, threads)
    residual3 = four.expand().scale(Fraction(1, 24)) - xyz
    ok = v2.exact and v2.scalar == 4 and not residual2 and v3.exact and v3.scalar == 24 and not residual3
    return ok, {
        "xy": {"scalar": v2.scalar.to_json(), "residualTerms": len(residual2)},
        "xyz": {"scalar": v3.scalar.to_json(), "residualTerms": len(residual3)},
    }


def item_vandermonde_rank(seed, threads):
    rows = []
    ok = True
    for n in (3, 4, 5):
        G = _group("symmetric", n=n)
        _, dec, ver, rep = _certified_decomposition(G, n, threads)
        want = math.factorial(n - 1)
        good = (
            dec.term_count == want
            and ver.exact
            and rep.certified
            and rep.rs_lower_bound == want
        )
        ok &= good
        rows.append(dict(_summary(G, dec, ver, rep), expected=want, passed=good))
    return ok, {"cases": rows}


def item_vandermonde_constant(seed, threads):
    rows = []
    ok = True
    for n in (3, 4, 5):
        r = vandermonde_check(n, _group("symmetric", n=n), threads)
        good = r["pSquared"] and r["pModulus"] and r["closedForm"] and r["conventionsAgree"]
        ok &= good
        rows.append({
            "n": n,
            "P": r["P"].to_json(),
            "Mn": r["Mn"],
            "C": r["C"].to_json(),
            "pSquared": r["pSquared"],
            "pModulus": r["pModulus"],
            "closedForm": r["closedForm"],
            "conventionsAgree": r["conventionsAgree"],
            "floatDiagnostic": r["floatDrift"] < 1e-9,
        })
    return ok, {"cases": rows}


def item_types_bd(seed, threads):
    cases = [("hyperoctahedral", 2, 2), ("hyperoctahedral", 3, 8), ("demihyperoctahedral", 3, 6), ("demihyperoctahedral", 4, 32)]
    rows = []
    ok = True
    for kind, n, want in cases:
        G = _group(kind, n=n)
        _, dec, ver, rep = _certified_decomposition(G, None, threads)
        good = dec.term_count == want and ver.exact and rep.certified
        ok &= good
        rows.append(dict(_summary(G, dec, ver, rep), expected=want, passed=good))
    return ok, {"cases": rows}


def item_imprimitive(seed, threads):
    rows = []
    G = _group("imprimitive", d=1, e=3, n=3)
    f, dec, ver, rep = _certified_decomposition(G, None, threads)
    formula = family_formula(G.family)
    prop = is_scalar_multiple(formula, f)
    ok = dec.term_count == 9 and ver.exact and rep.certified and prop is not None and prop != 0
    rows.append(dict(_summary(G, dec, ver, rep), expected=9, matchesFormula=prop is not None))
    B = _group("imprimitive", d=2, e=1, n=3)
    B3 = _group("hyperoctahedral", n=3)
    _, dec_b, ver_b, rep_b = _certified_decomposition(B, None, threads)
    same = (
        B.order == B3.order
        and B.degrees == B3.degrees
        and {g.hash_key() for g in B.elements} == {g.hash_key() for g in B3.elements}
        and dec_b.term_count == 8
        and rep_b.certified
    )
    ok &= same
    rows.append(dict(_summary(B, dec_b, ver_b, rep_b), expected=8, sameAsB3=same))
    degs = []
    for d, e, n in ((1, 3, 3), (2, 2, 3), (2, 1, 3), (3, 1, 2)):
        H = _group("imprimitive", d=d, e=e, n=n)
        closed = sorted([d * e * i for i in range(1, n)] + [n * d])
        good = H.degrees == closed
        ok &= good
        degs.append({"group": H.name, "degrees": H.degrees, "closedForm": closed, "passed": good})
    return ok, {"cases": rows, "degrees": degs}


def item_monomials(seed, threads):
    rows = []
    ok = True
    for a, want in (((2, 2, 2), 9), ((1, 1), 2)):
        G = _group("cyclicProduct", a=list(a))
        f, dec, ver, rep = _certified_decomposition(G, None, threads)
        prop = is_scalar_multiple(Polynomial.monomial(a), f)
        good = dec.term_count == want and ver.exact and rep.certified and prop is not None
        ok &= good
        rows.append(dict(_summary(G, dec, ver, rep), expected=want, passed=good))
    G = _group("cyclicProduct", a=[1, 2])
    f, dec, ver, rep = _certified_decomposition(G, None, threads)
    good = rep.rs_lower_bound == 2 and rep.ccg_reference == 3 and not rep.certified
    ok &= good
    rows.append(dict(_summary(G, dec, ver, rep), ccgReference=rep.ccg_reference, passed=good))
    return ok, {"cases": rows}


def item_steinberg(seed, threads):
    cases = [
        ("symmetric", dict(n=3)),
        ("symmetric", dict(n=4)),
        ("hyperoctahedral", dict(n=2)),
        ("hyperoctahedral", dict(n=3)),
        ("demihyperoctahedral", dict(n=3)),
        ("dihedral", dict(m=5)),
        ("imprimitive", dict(d=1, e=3, n=3)),
    ]
    rows = []
    ok = True
    for kind, params in cases:
        G = _group(kind, **params)
        f = build_skew_invariant(G).polynomial
        ap = Apolar(f)
        hil = ap.hilbert()
        gens = ap.generator_degrees()
        st = steinberg_check(G, f)
        good = sum(hil) == G.order and sorted(gens) == G.degrees and hil == hil[::-1] and st
        ok &= good
        rows.append({
            "group": G.name,
            "order": G.order,
            "dimAf": sum(hil),
            "hilbert": hil,
            "generatorDegrees": gens,
            "degrees": G.degrees,
            "steinberg": st,
            "passed": good,
        })
    return ok, {"cases": rows}


def item_regularity(seed, threads):
    rows = []
    ok = True
    instances = (
        [("symmetric", dict(n=n)) for n in range(2, 6)]
        + [("hyperoctahedral", dict(n=n)) for n in range(2, 4)]
        + [("demihyperoctahedral", dict(n=n)) for n in range(3, 5)]
        + [("dihedral", dict(m=m)) for m in range(3, 9)]
    )
    for kind, params in instances:
        G = _group(kind, **params)
        nums = regular_numbers(G)
        good = max(G.degrees) in nums
        ok &= good
        rows.append({"group": G.name, "topDegree": max(G.degrees), "regularNumbers": nums, "passed": good})
    G = _group("imprimitive", d=2, e=2, n=3)
    nums = regular_numbers(G)
    top = max(G.degrees)
    dstar = max(nums)
    f, dec, ver, rep = _certified_decomposition(G, dstar, threads)
    cactus = G.order // top
    good = (
        top not in nums
        and rep.rs_lower_bound == cactus == 24
        and ver.exact
        and dec.term_count == G.order // dstar
    )
    ok &= good
    rows.append({
        "group": G.name,
        "topDegree": top,
        "regularNumbers": nums,
        "greatestRegular": dstar,
        "cactusRank": cactus,
        "rankUpperBound": dec.term_count,
        "certified": rep.certified,
        "passed": good,
    })
    return ok, {"cases": rows}


def _on_hyperplane(h, rng, n):
    basis = linalg.kernel([list(h.functional.coeffs)], n)
    while True:
        coeffs = [rng.randint(-4, 4) for _ in basis]
        if any(coeffs):
            break
    v = [rational(0)] * n
    for c, b in zip(coeffs, basis):
        for j, x in enumerate(b):
            v[j] = v[j] + x * c
    return LinearForm(v)


def item_alt_vanishing(seed, threads):
    rng = random.Random(seed)
    rows = []
    ok = True
    for kind, params in (("symmetric", dict(n=3)), ("hyperoctahedral", dict(n=2)), ("dihedral", dict(m=4))):
        G = _group(kind, **params)
        D = G.skew_degree
        nonzero = 0
        samples = 0
        while samples < 50:
            L = LinearForm([rng.randint(-6, 6) for _ in range(G.nvars)])
            if not is_regular_vector(G, L):
                continue
            samples += 1
            if alt_power(G, L, D, threads):
                nonzero += 1
        zero = 0
        tried = 0
        for h in G.hyperplanes:
            for _ in range(3):
                L = _on_hyperplane(h, rng, G.nvars)
                tried += 1
                if not alt_power(G, L, D, threads):
                    zero += 1
        good = nonzero == samples and zero == tried
        ok &= good
        rows.append({
            "group": G.name,
            "regularSamples": samples,
            "nonzero": nonzero,
            "hyperplaneSamples": tried,
            "zero": zero,
            "passed": good,
        })
    return ok, {"cases": rows}


def item_sylvester(seed, threads):
    rows = []
    ok = True
    cases = [(f"x^{m} - y^{m}", 2) for m in range(3, 9)] + [("x*y^2", 3), ("x^2", 1)]
    for text, want in cases:
        r = sylvester_binary_rank(parse_form(text, nvars=2))
        ok &= r == want
        rows.append({"form": text, "rank": r, "expected": want})
    return ok, {"cases": rows}


def item_general_rank(seed, threads):
    values = [((3, 15), 46), ((4, 24), 732), ((8, 120), 11169551972)]
    rows = []
    ok = True
    for (n, D), want in values:
        got = general_rank(n, D)
        ok &= got == want
        rows.append({"n": n, "D": D, "generalRank": got, "expected": want})
    quot = []
    for name, r, (n, D), want in (("H3", 12, (3, 15), "0.261"), ("F4", 96, (4, 24), "0.131")):
        q = f"{r / general_rank(n, D):.3g}"
        ok &= q == want
        quot.append({"group": name, "rank": r, "quotient": q, "expected": want})
    return ok, {"values": rows, "quotients": quot}


def item_determinism(seed, threads):
    """Same decomposition and verification for one thread and for several."""
    G = _group("demihyperoctahedral", n=4)
    dec = decompose(G)
    one = dec.expand(threads=1)
    many = dec.expand(threads=max(threads, 4))
    return one == many, {"group": G.name, "terms": dec.term_count, "monomials": len(one)}


ITEMS = [
    ("intro", "intro identities for xy and xyz", item_intro),
    ("vandermonde-rank", "Vandermonde decompositions for n = 3, 4, 5", item_vandermonde_rank),
    ("vandermonde-constant", "closed-form constant for n = 3, 4, 5", item_vandermonde_constant),
    ("types-bd", "types B and D", item_types_bd),
    ("imprimitive", "imprimitive groups G(de,e,n)", item_imprimitive),
    ("monomials", "monomials via cyclic products", item_monomials),
    ("steinberg", "apolar algebra of f_W equals the coinvariant algebra", item_steinberg),
    ("regularity", "regular-number search", item_regularity),
    ("alt-vanishing", "alt(L^D) vanishes exactly on hyperplanes", item_alt_vanishing),
    ("sylvester", "binary ranks by Sylvester", item_sylvester),
    ("general-rank", "general-rank values and quotients", item_general_rank),
    ("determinism", "thread-count independence", item_determinism),
]


def select(only=None):
    if not only:
        return list(ITEMS)
    keys = [k.strip() for k in only.split(",") if k.strip()]
    picked = [it for it in ITEMS if any(k in it[0] for k in keys)]
    return picked


def run(seed=1, threads=1, only=None, on_result=None):
    """Run the selected items; returns a list of result dicts (timings kept out of the JSON)."""
    results = []
    for key, title, fn in select(only):
        t = time.monotonic()
        try:
            passed, details = fn(seed, threads)
        except Exception as exc:  # a crashing item is a failing item
            passed, details = False, {"error": f"{type(exc).__name__}: {exc}"}
        res = {"id": key, "title": title, "passed": bool(passed), "details": details}
        if on_result is not None:
            on_result(res, time.monotonic() - t)
        results.append(res)
    return results
