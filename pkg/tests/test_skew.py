import pytest

from skewrank.groups import is_regular_vector, regular_elements
from skewrank.poly import Polynomial, is_scalar_multiple, parse_form
from skewrank.skew import build_skew_invariant, family_formula, is_skew_invariant, vandermonde
from skewrank.waring import skew_symmetrize
from skewrank.errors import InvalidGroupSpec

from conftest import group

FAMILIES = [
    ("symmetric", {"n": 3}),
    ("symmetric", {"n": 4}),
    ("hyperoctahedral", {"n": 2}),
    ("hyperoctahedral", {"n": 3}),
    ("demihyperoctahedral", {"n": 3}),
    ("demihyperoctahedral", {"n": 4}),
    ("imprimitive", {"d": 1, "e": 3, "n": 3}),
    ("imprimitive", {"d": 2, "e": 2, "n": 3}),
    ("dihedral", {"m": 5}),
    ("dihedral", {"m": 6}),
    ("cyclicProduct", {"a": [1, 2]}),
    ("cyclicProduct", {"a": [2, 2, 2]}),
]


def test_examples():
    S3 = group("symmetric", n=3)
    assert is_scalar_multiple(build_skew_invariant(S3).polynomial, vandermonde(3))
    C = group("cyclicProduct", a=[1, 2])
    assert is_scalar_multiple(build_skew_invariant(C).polynomial, parse_form("x*y^2"))
    B2 = group("hyperoctahedral", n=2)
    assert is_scalar_multiple(build_skew_invariant(B2).polynomial, parse_form("x*y*(x-y)*(x+y)"))


def test_family_formula_examples():
    from skewrank.groups import family_spec

    d3 = family_formula(family_spec("demihyperoctahedral", n=3))
    assert d3.degree() == 6
    g423 = family_formula(family_spec("imprimitive", d=2, e=2, n=3))
    assert g423.degree() == 15
    assert family_formula(family_spec("dihedral", m=5)) == parse_form("x^5 - y^5")


@pytest.mark.parametrize("kind,params", FAMILIES)
def test_product_matches_formula(kind, params):
    G = group(kind, **params)
    f = build_skew_invariant(G).polynomial
    assert f.degree() == G.skew_degree
    c = is_scalar_multiple(f, family_formula(G.family))
    assert c is not None and c != 0
    assert is_skew_invariant(G, f)
    if G.order <= 200:
        assert is_skew_invariant(G, f, exhaustive=True)


@pytest.mark.parametrize("kind,params", FAMILIES[:9])
def test_vanishing_on_hyperplanes(kind, params):
    G = group(kind, **params)
    f = build_skew_invariant(G).polynomial
    for h in G.hyperplanes:
        func = h.functional.coeffs
        # a point on the fixed hyperplane: kill the first nonzero functional coordinate
        i = next(k for k, c in enumerate(func) if c)
        pt = [1 + k for k in range(G.nvars)]
        pt[i] = 0
        s = sum((func[k] * pt[k] for k in range(G.nvars) if k != i), 0 * func[i])
        pt[i] = -s / func[i]
        assert not is_regular_vector(G, pt)
        assert f.evaluate(pt) == 0
    _, v = regular_elements(G, 1, first_only=True)[0]
    assert f.evaluate(v.coeffs) != 0


def test_is_skew_invariant_negative_and_alt():
    S3 = group("symmetric", n=3)
    assert not is_skew_invariant(S3, Polynomial.variable(3, 0))
    assert not is_skew_invariant(S3, Polynomial.variable(2, 0))
    p = parse_form("x^4*y^2 + 3*x*z^5 - y*z", 3)
    q = skew_symmetrize(S3, p)
    assert is_skew_invariant(S3, q, exhaustive=True)


def test_custom_group_has_no_formula():
    from skewrank.groups import build_from_generators

    G = build_from_generators([[[0, 1], [1, 0]]])
    assert G.family is None
    with pytest.raises(InvalidGroupSpec):
        family_formula(G.family)
    f = build_skew_invariant(G).polynomial
    assert f == parse_form("x - y")


def _embed(f, offset, nvars):
    return Polynomial(nvars, {(0,) * offset + e + (0,) * (nvars - offset - len(e)): c for e, c in f.terms.items()})


@pytest.mark.parametrize("a", [[1, 2], [2, 3, 1], [3, 3]])
def test_product_group_invariant_is_product_of_factors(a):
    f = build_skew_invariant(group("cyclicProduct", a=a)).polynomial
    prod = Polynomial.constant(len(a), 1)
    for i, x in enumerate(a):
        part = build_skew_invariant(group("cyclicProduct", a=[x])).polynomial
        prod = prod * _embed(part, i, len(a))
    assert is_scalar_multiple(f, prod)
