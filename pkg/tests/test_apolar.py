import pytest

from skewrank.apolar import (
    ApolarReport,
    Apolar,
    ah_exception,
    apolar_generator_degrees,
    catalecticant_kernel,
    ccg_rank,
    general_rank,
    generator_degrees_direct,
    hilbert_function,
    rs_bound_report,
    steinberg_check,
    sylvester_binary_rank,
)
from skewrank.errors import BudgetExceeded, DimensionError, VerificationError
from skewrank.poly import LinearForm, Polynomial, diff_apply, parse_form
from skewrank.cyclo import rational
from skewrank.skew import build_skew_invariant, vandermonde
from skewrank.waring import WaringDecomposition, decompose, verify

from conftest import group


def f_of(G):
    return build_skew_invariant(G).polynomial


def test_catalecticant_kernel_examples():
    ker = catalecticant_kernel(parse_form("x*y"), 2)
    assert {frozenset(p.terms) for p in ker} == {frozenset({(2, 0)}), frozenset({(0, 2)})}
    ker = catalecticant_kernel(parse_form("x^3", 4), 1)
    assert len(ker) == 3 and all(p.coefficient((1, 0, 0, 0)) == 0 for p in ker)
    (op,) = catalecticant_kernel(vandermonde(3), 1)
    assert op.monic() == parse_form("x + y + z")


def test_kernel_dimension_identity():
    f = vandermonde(4)
    ap = Apolar(f)
    from math import comb

    for k in range(f.degree() + 1):
        assert len(catalecticant_kernel(f, k)) == comb(k + 3, 3) - ap.h(k)
        for op in catalecticant_kernel(f, k):
            assert diff_apply(op, f) == 0


def test_hilbert_examples():
    assert hilbert_function(parse_form("x*y")) == [1, 2, 1]
    assert hilbert_function(parse_form("x^3", 1)) == [1, 1, 1, 1]
    assert hilbert_function(vandermonde(3)) == [1, 2, 2, 1]


def test_generator_degree_examples():
    assert sorted(apolar_generator_degrees(vandermonde(3))) == [1, 2, 3]
    assert sorted(apolar_generator_degrees(parse_form("x*y^2"))) == [2, 3]
    for m in range(3, 8):
        assert sorted(apolar_generator_degrees(parse_form(f"x^{m} - y^{m}"))) == [2, m]


FORMS = [
    "x*y",
    "x*y^2",
    "x^3*y + 2*y^4 - x^2*y^2",
    "x^2*y*z + z^4 - y^3*x",
    "x^2 + y^2 + z^2 + w^2",
    "(x + 2*y - z)^5 + (x - y)^5",
]


@pytest.mark.parametrize("text", FORMS)
def test_dual_and_direct_generator_counts_agree(text):
    f = parse_form(text)
    assert sorted(apolar_generator_degrees(f)) == sorted(generator_degrees_direct(f))


@pytest.mark.parametrize("text", FORMS)
def test_hilbert_palindromic(text):
    h = hilbert_function(parse_form(text))
    assert h == h[::-1]


@pytest.mark.parametrize("kind,params", [
    ("symmetric", {"n": 3}),
    ("symmetric", {"n": 4}),
    ("hyperoctahedral", {"n": 2}),
    ("hyperoctahedral", {"n": 3}),
    ("demihyperoctahedral", {"n": 3}),
    ("dihedral", {"m": 5}),
    ("imprimitive", {"d": 1, "e": 3, "n": 3}),
    ("cyclicProduct", {"a": [1, 2]}),
])
def test_steinberg(kind, params):
    G = group(kind, **params)
    f = f_of(G)
    rep = rs_bound_report(f)
    assert rep.dim_af == G.order
    assert sorted(rep.generator_degrees) == G.degrees
    assert rep.rs_lower_bound == G.order // max(G.degrees) or G.family.kind == "cyclicProduct"
    assert steinberg_check(G, f)


def test_steinberg_sanity_directions():
    S3 = group("symmetric", n=3)
    f = f_of(S3)
    assert diff_apply(parse_form("x + y + z"), f) == 0
    assert diff_apply(parse_form("x*y + x*z + y*z"), f) == 0
    assert diff_apply(parse_form("x*y*z"), f) == 0
    assert diff_apply(parse_form("x", 3), f) != 0
    C = group("cyclicProduct", a=[1, 1])
    xy = f_of(C)
    assert steinberg_check(C, xy)
    assert diff_apply(parse_form("x^2", 2), xy) == 0 and diff_apply(parse_form("y^2"), xy) == 0
    # a non-skew form fails
    assert not steinberg_check(S3, parse_form("x^3", 3))


def test_steinberg_budget():
    G = group("symmetric", n=6)
    with pytest.raises(BudgetExceeded):
        steinberg_check(G, f_of(G))


@pytest.mark.parametrize("kind,params,lower", [
    ("symmetric", {"n": 4}, 6),
    ("hyperoctahedral", {"n": 3}, 8),
])
def test_rs_bound_certifies(kind, params, lower):
    G = group(kind, **params)
    f = f_of(G)
    dec = decompose(G)
    rep = rs_bound_report(f, dec)
    assert rep.rs_lower_bound == lower and rep.upper_bound == lower and rep.certified


def test_rs_bound_monomial_not_tight():
    rep = rs_bound_report(parse_form("x*y^2"))
    assert rep.dim_af == 6 and rep.delta == 3 and rep.rs_lower_bound == 2
    assert rep.ccg_reference == 3 and not rep.certified


def test_rs_bound_rejects_bad_decomposition():
    bad = WaringDecomposition(2, 2, [(rational(1), LinearForm([1, 1]))])
    with pytest.raises(VerificationError):
        rs_bound_report(parse_form("x*y"), bad)


def test_report_json_roundtrip():
    G = group("hyperoctahedral", n=2)
    rep = rs_bound_report(f_of(G), decompose(G))
    assert ApolarReport.from_json(rep.to_json()) == rep


def test_sylvester():
    for m in range(3, 9):
        assert sylvester_binary_rank(parse_form(f"x^{m} - y^{m}")) == 2
    assert sylvester_binary_rank(parse_form("x*y^2")) == 3
    assert sylvester_binary_rank(parse_form("x^2", 2)) == 1
    assert sylvester_binary_rank(parse_form("x^2*y^2")) == 3
    assert sylvester_binary_rank(parse_form("(x+y)^4 + (x-y)^4 + (x+3*y)^4")) == 3
    with pytest.raises(DimensionError):
        sylvester_binary_rank(parse_form("x*y*z"))


def test_sylvester_agrees_with_dihedral_decompositions():
    for m in range(3, 9):
        G = group("dihedral", m=m)
        dec = decompose(G)
        assert verify(dec, f_of(G)).exact
        assert dec.term_count == sylvester_binary_rank(f_of(G)) == 2


def test_ccg_rank():
    assert ccg_rank(parse_form("x*y^2")) == 3
    assert ccg_rank(parse_form("x^2*y^2*z^2")) == 9
    assert ccg_rank(parse_form("x + y")) is None


def test_general_rank():
    assert general_rank(3, 15) == 46
    assert general_rank(4, 24) == 732
    assert general_rank(8, 120) == 11169551972
    assert ah_exception(3, 4) and ah_exception(5, 2) and not ah_exception(3, 15)


def test_zero_form_rejected():
    with pytest.raises(ValueError):
        hilbert_function(Polynomial.zero(2))
