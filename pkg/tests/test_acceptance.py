"""The twelve acceptance criteria, one test each, at their stated tolerances.

Every check is exact unless the criterion names a tolerance. A PASS/FAIL line
per criterion is printed in the terminal summary.
"""

import math
import random
import subprocess
import sys
import time

import pytest

from skewrank.apolar import general_rank, hilbert_function, rs_bound_report, steinberg_check, sylvester_binary_rank
from skewrank.cyclo import rational
from skewrank.groups import build_family, family_spec, is_regular_vector, regular_numbers
from skewrank.poly import LinearForm, Polynomial, is_scalar_multiple, parse_form
from skewrank.skew import build_skew_invariant, family_formula
from skewrank.waring import (
    WaringDecomposition,
    alt_power,
    decompose,
    solve_constant,
    vandermonde_constant,
    vandermonde_decomposition,
    verify,
)
from skewrank.skew import vandermonde

criterion = pytest.mark.criterion


def _group(kind, **params):
    return build_family(family_spec(kind, **params))


def _certify(G, d=None):
    f = build_skew_invariant(G).polynomial
    dec = decompose(G, d)
    ver = verify(dec, f)
    rep = rs_bound_report(f, dec, ver)
    return f, dec, ver, rep


class _Clock:
    def __init__(self, limit):
        self.limit = limit

    def __enter__(self):
        self.t = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.elapsed = time.perf_counter() - self.t
        if exc[0] is None:
            assert self.elapsed < self.limit, f"took {self.elapsed:.1f}s, limit {self.limit}s"


def _report(number, text):
    print(f"criterion {number}: {text}")


@criterion(1, "intro identities for xy and xyz, residual exactly zero")
def test_criterion_01_intro_identities():
    with _Clock(1):
        xy = Polynomial.monomial((1, 1))
        two = WaringDecomposition(2, 2, [(rational(1), LinearForm([1, 1])), (rational(-1), LinearForm([1, -1]))])
        assert two.expand() - xy.scale(4) == 0
        xyz = Polynomial.monomial((1, 1, 1))
        four = WaringDecomposition(3, 3, [
            (rational(1), LinearForm([1, 1, 1])),
            (rational(-1), LinearForm([1, 1, -1])),
            (rational(-1), LinearForm([1, -1, 1])),
            (rational(1), LinearForm([1, -1, -1])),
        ])
        assert four.expand() - xyz.scale(24) == 0
        assert verify(two, xy).scalar == 4 and verify(four, xyz).scalar == 24
    _report(1, "xy = 1/4 (...), xyz = 1/24 (...)")


@criterion(2, "Vandermonde ranks (n-1)! for n = 3, 4, 5")
def test_criterion_02_vandermonde_ranks():
    with _Clock(60):
        for n in (3, 4, 5):
            G = _group("symmetric", n=n)
            _, dec, ver, rep = _certify(G, n)
            want = math.factorial(n - 1)
            assert dec.term_count == want
            assert ver.exact and ver.scalar != 0
            assert rep.rs_lower_bound == rep.upper_bound == want and rep.certified
    _report(2, "2, 6, 24 terms, certified")


@criterion(3, "closed-form Vandermonde constant for n = 3, 4, 5")
def test_criterion_03_vandermonde_constant():
    with _Clock(10):
        for n in (3, 4, 5):
            vc = vandermonde_constant(n)
            P = vc.P
            assert P * P == (-1) ** math.comb(n - 1, 2) * n ** (n - 2)
            assert P * P.conjugate() == n ** (n - 2)
            f = vandermonde(n)
            mono = tuple(range(n))
            c_canon = solve_constant(vandermonde_decomposition(n, "canonical"), f, mono)
            c_fixed = solve_constant(vandermonde_decomposition(n, "fixed-point"), f, mono)
            Mn = math.factorial(math.comb(n, 2)) // math.prod(math.factorial(k) for k in range(1, n))
            assert vc.Mn == Mn
            sign = (-1) ** (math.comb(n, 2) + n + 1)
            assert 1 / c_canon == P * (sign * Mn)
            assert c_fixed == c_canon
    _report(3, "P^2, |P|^2 and 1/C hold exactly; both conventions agree")


@criterion(4, "types B and D: B2, B3, D3, D4 certified")
def test_criterion_04_types_b_d():
    with _Clock(120):
        cases = [("hyperoctahedral", 2, 2), ("hyperoctahedral", 3, 8),
                 ("demihyperoctahedral", 3, 6), ("demihyperoctahedral", 4, 32)]
        for kind, n, terms in cases:
            G = _group(kind, n=n)
            _, dec, ver, rep = _certify(G, max(G.degrees))
            assert dec.term_count == terms == G.order // max(G.degrees)
            assert ver.exact and rep.certified
    _report(4, "B2 2, B3 8, D3 6, D4 32, all certified")


@criterion(5, "imprimitive G(3,3,3) and G(2,1,3)")
def test_criterion_05_imprimitive():
    with _Clock(60):
        G = _group("imprimitive", d=1, e=3, n=3)
        f, dec, ver, rep = _certify(G, 6)
        x = [Polynomial.variable(3, i) for i in range(3)]
        target = (x[0] ** 3 - x[1] ** 3) * (x[0] ** 3 - x[2] ** 3) * (x[1] ** 3 - x[2] ** 3)
        assert is_scalar_multiple(f, target)
        assert dec.term_count == 9 and ver.exact and rep.certified
        B = _group("imprimitive", d=2, e=1, n=3)
        B3 = _group("hyperoctahedral", n=3)
        assert {g.hash_key() for g in B.elements} == {g.hash_key() for g in B3.elements}
        _, decb, verb, repb = _certify(B)
        assert decb.term_count == 8 and verb.exact and repb.certified
        for d, e, n in ((1, 3, 3), (2, 1, 3), (2, 2, 3), (3, 1, 2)):
            H = _group("imprimitive", d=d, e=e, n=n)
            assert H.degrees == sorted([d * e * i for i in range(1, n)] + [n * d])
    _report(5, "G(3,3,3) 9 terms certified; G(2,1,3) = B3 with 8 terms")


@criterion(6, "monomials via cyclic products")
def test_criterion_06_monomials():
    with _Clock(10):
        G = _group("cyclicProduct", a=[2, 2, 2])
        f, dec, ver, rep = _certify(G)
        assert f == parse_form("x^2*y^2*z^2")
        assert dec.term_count == 9 and ver.exact and rep.certified
        G = _group("cyclicProduct", a=[1, 1])
        f, dec, ver, rep = _certify(G)
        assert f == parse_form("x*y") and dec.term_count == 2 and rep.certified
        G = _group("cyclicProduct", a=[1, 2])
        f, dec, ver, _ = _certify(G)
        rep = rs_bound_report(f)
        assert rep.rs_lower_bound == 2 and rep.ccg_reference == 3 and not rep.certified
        assert ver.exact
    _report(6, "(x1x2x3)^2 9 terms, x1x2 2 terms; x1x2^2 shows 2 < 3")


STEINBERG = [
    ("symmetric", {"n": 3}, 6),
    ("symmetric", {"n": 4}, 24),
    ("hyperoctahedral", {"n": 2}, 8),
    ("hyperoctahedral", {"n": 3}, 48),
    ("demihyperoctahedral", {"n": 3}, 24),
    ("dihedral", {"m": 5}, 10),
    ("imprimitive", {"d": 1, "e": 3, "n": 3}, 54),
]


@criterion(7, "apolar algebra of f_W has dimension |W| and the group's degrees")
def test_criterion_07_steinberg():
    with _Clock(300):
        for kind, params, order in STEINBERG:
            G = _group(kind, **params)
            f = build_skew_invariant(G).polynomial
            rep = rs_bound_report(f)
            assert G.order == order == rep.dim_af
            assert sorted(rep.generator_degrees) == G.degrees
            assert rep.hilbert == rep.hilbert[::-1]
            assert steinberg_check(G, f)
    _report(7, "dim A^f = |W| and generator degrees match for all seven groups")


@criterion(8, "regular-number search")
def test_criterion_08_regularity():
    with _Clock(120):
        instances = [("symmetric", {"n": n}) for n in range(2, 6)]
        instances += [("hyperoctahedral", {"n": n}) for n in range(2, 4)]
        instances += [("demihyperoctahedral", {"n": n}) for n in range(3, 5)]
        instances += [("dihedral", {"m": m}) for m in range(3, 9)]
        for kind, params in instances:
            G = _group(kind, **params)
            assert max(G.degrees) in regular_numbers(G), G.name
        G = _group("imprimitive", d=2, e=2, n=3)
        regs = regular_numbers(G)
        assert 8 not in regs
        d_star = max(regs)
        assert d_star == 6
        f = build_skew_invariant(G).polynomial
        rep = rs_bound_report(f)
        assert rep.rs_lower_bound == G.order // max(G.degrees) == 24
        dec = decompose(G, d_star)
        assert verify(dec, f).exact and dec.term_count <= G.order // d_star
    _report(8, f"d_n regular in every instance; G(4,2,3): 8 not regular, D* = {d_star}, 24 <= r <= 32")


def _on_hyperplane(h, n, rng):
    func = h.functional.coeffs
    i = next(k for k, c in enumerate(func) if c)
    pt = [rational(rng.randint(-9, 9)) for _ in range(n)]
    pt[i] = rational(0)
    s = sum((func[k] * pt[k] for k in range(n)), rational(0))
    pt[i] = -s / func[i]
    return LinearForm(pt)


@criterion(9, "alt(L^D) vanishes exactly on reflecting hyperplanes")
def test_criterion_09_alt_vanishing():
    rng = random.Random(7)
    with _Clock(60):
        for kind, params in (("symmetric", {"n": 3}), ("hyperoctahedral", {"n": 2}), ("dihedral", {"m": 4})):
            G = _group(kind, **params)
            D = G.skew_degree
            found = 0
            while found < 50:
                L = LinearForm([rng.randint(-50, 50) for _ in range(G.nvars)])
                if not is_regular_vector(G, L):
                    continue
                assert alt_power(G, L, D) != 0
                found += 1
            for h in G.hyperplanes:
                L = _on_hyperplane(h, G.nvars, rng)
                assert not is_regular_vector(G, L)
                assert alt_power(G, L, D) == 0
    _report(9, "50 regular forms per group nonzero; every hyperplane gives zero")


@criterion(10, "binary ranks by Sylvester")
def test_criterion_10_sylvester():
    with _Clock(5):
        for m in range(3, 9):
            assert sylvester_binary_rank(parse_form(f"x^{m} - y^{m}")) == 2
        assert sylvester_binary_rank(parse_form("x*y^2")) == 3
        assert sylvester_binary_rank(parse_form("x^2", 2)) == 1
    _report(10, "x^m - y^m -> 2 (m = 3..8), xy^2 -> 3, x^2 -> 1")


@criterion(11, "general-rank values and quotients")
def test_criterion_11_general_rank():
    with _Clock(1):
        assert general_rank(3, 15) == 46
        assert general_rank(4, 24) == 732
        assert general_rank(8, 120) == 11169551972
        assert f"{12 / general_rank(3, 15):.3g}" == "0.261"
        assert f"{96 / general_rank(4, 24):.3g}" == "0.131"
    _report(11, "46, 732, 11169551972; quotients 0.261 and 0.131")


@criterion(12, "selftest JSON identical for 1 and 8 threads")
def test_criterion_12_determinism():
    cmd = [sys.executable, "-m", "skewrank.cli", "selftest", "--seed", "7", "--format", "json"]
    with _Clock(600):
        one = subprocess.run(cmd + ["--threads", "1"], capture_output=True)
        eight = subprocess.run(cmd + ["--threads", "8"], capture_output=True)
    assert one.returncode == 0, one.stderr.decode()
    assert eight.returncode == 0, eight.stderr.decode()
    assert one.stdout == eight.stdout
    assert one.stdout.strip()
    _report(12, f"{len(one.stdout)} identical bytes")
