import math

import pytest

from skewrank.cyclo import rational, root_of_unity
from skewrank.errors import CapExceeded, InvalidGroupSpec
from skewrank.groups import (
    GroupElement,
    build_family,
    build_from_generators,
    cosets,
    eigenvectors,
    family_spec,
    group_from_config,
    is_regular_vector,
    regular_elements,
    regular_numbers,
)
from skewrank.poly import LinearForm

from conftest import group

z = root_of_unity


def _proportional(a, b):
    return a.normalized()[1] == b.normalized()[1]


def test_symmetric_3():
    G = group("symmetric", n=3)
    assert G.order == 6
    assert len(G.reflections) == 3
    forms = {h.form for h in G.hyperplanes}
    expected = {LinearForm(c).normalized()[1] for c in ([1, -1, 0], [1, 0, -1], [0, 1, -1])}
    assert forms == expected


def test_small_orders():
    assert len(group("hyperoctahedral", n=2).reflections) == 4
    assert group("imprimitive", d=1, e=3, n=3).order == 54


@pytest.mark.parametrize("kind,params,order", [
    ("symmetric", {"n": 4}, 24),
    ("symmetric", {"n": 5}, 120),
    ("hyperoctahedral", {"n": 3}, 48),
    ("demihyperoctahedral", {"n": 3}, 24),
    ("demihyperoctahedral", {"n": 4}, 192),
    ("imprimitive", {"d": 2, "e": 2, "n": 3}, 192),
    ("dihedral", {"m": 5}, 10),
    ("dihedral", {"m": 8}, 16),
    ("cyclicProduct", {"a": [1, 2]}, 6),
    ("cyclicProduct", {"a": [2, 2, 2]}, 27),
])
def test_orders_and_degree_identities(kind, params, order):
    G = group(kind, **params)
    assert G.order == order
    assert math.prod(G.degrees) == G.order
    assert sum(d - 1 for d in G.degrees) == G.skew_degree
    # with k_H = 2 everywhere this is the reflection count
    assert sum(h.multiplicity - 1 for h in G.hyperplanes) == len(G.reflections)


def test_degrees():
    assert group("symmetric", n=3).degrees == [1, 2, 3]
    assert group("imprimitive", d=1, e=3, n=3).degrees == [3, 3, 6]
    assert group("cyclicProduct", a=[1, 2, 3]).degrees == [2, 3, 4]
    assert group("dihedral", m=5).degrees == [2, 5]


def _s3_generators():
    t12 = [[0, 1, 0], [1, 0, 0], [0, 0, 1]]
    t23 = [[1, 0, 0], [0, 0, 1], [0, 1, 0]]
    return [t12, t23]


def test_build_from_generators():
    assert build_from_generators(_s3_generators()).order == 6
    c = z(5)
    r1 = [[0, 1], [1, 0]]
    r2 = [[0, c], [c ** 4, 0]]
    G = build_from_generators([r1, r2])
    assert G.order == 10 and G.degrees == [2, 5]
    cyc = [[1 if i == (j + 1) % 5 else 0 for j in range(5)] for i in range(5)]
    swap = [[1 if (i, j) in {(0, 1), (1, 0)} or (i == j and i > 1) else 0 for j in range(5)] for i in range(5)]
    assert build_from_generators([cyc, swap]).order == 120
    with pytest.raises(CapExceeded):
        build_from_generators([cyc, swap], cap=100)


def test_bad_generators():
    with pytest.raises(InvalidGroupSpec):
        build_from_generators([[[1, 0], [0, 0]]])
    with pytest.raises(InvalidGroupSpec):
        build_from_generators([[[1, 0], [0, 1]], [[1]]])
    with pytest.raises(InvalidGroupSpec):
        family_spec("symmetric")
    with pytest.raises(InvalidGroupSpec):
        family_spec("e8", n=8)
    with pytest.raises(CapExceeded):
        build_family(family_spec("symmetric", n=8), cap=1000)


def test_dense_matrix_group():
    # S3 acting on the sum-zero plane via a rational non-monomial basis
    s = [[0, 1], [1, 0]]
    t = [[-1, 0], [-1, 1]]
    G = build_from_generators([s, t])
    assert G.order == 6
    assert G.degrees == [2, 3]
    assert 3 in regular_numbers(G)


def test_config_roundtrip():
    G = group("dihedral", m=5)
    data = {
        "nvars": 2,
        "fieldOrder": 5,
        "generators": [g.to_json() for g in G.generators],
        "name": "from-config",
    }
    H = group_from_config(data)
    assert H.order == 10 and H.name == "from-config"
    with pytest.raises(InvalidGroupSpec):
        group_from_config({"nvars": 2})


def test_eigenvectors():
    G = group("symmetric", n=3)
    assert len(eigenvectors(G.identity, rational(1))) == 3
    t = next(w for w in G.elements if w.fixed_rank() == 1)
    (v,) = eigenvectors(t, rational(-1))
    assert t.apply_vector(v) == v.scale(-1)
    cyc = next(w for w in G.elements if w.order == 3)
    (v,) = eigenvectors(cyc, z(3))
    assert cyc.apply_vector(v) == v.scale(z(3))
    assert eigenvectors(cyc, rational(-1)) == []


def test_is_regular_vector():
    S3 = group("symmetric", n=3)
    assert is_regular_vector(S3, LinearForm([1, 2, 4]))
    assert not is_regular_vector(S3, LinearForm([1, 1, 0]))
    S4 = group("symmetric", n=4)
    assert is_regular_vector(S4, LinearForm([z(4, k) for k in range(4)]))


def test_regular_elements():
    S3 = group("symmetric", n=3)
    pairs = regular_elements(S3, 3)
    assert pairs and any(w.order == 3 for w, _ in pairs)
    for d in (1, 2, 3):
        for w, v in regular_elements(S3, d):
            assert w.apply_vector(v) == v.scale(z(d))
            assert is_regular_vector(S3, v)
    assert regular_elements(group("imprimitive", d=2, e=2, n=3), 8) == []
    C = group("cyclicProduct", a=[1, 2])
    assert regular_elements(C, 6) == [] and regular_elements(C, 1)


def test_regular_numbers():
    assert regular_numbers(group("symmetric", n=3)) == [1, 2, 3]
    assert regular_numbers(group("cyclicProduct", a=[2, 2])) == [1, 3]
    assert 4 in regular_numbers(group("hyperoctahedral", n=2))
    assert max(regular_numbers(group("imprimitive", d=2, e=2, n=3))) == 6


@pytest.mark.parametrize("kind,params,count", [
    ("symmetric", {"n": 3}, 2),
    ("symmetric", {"n": 4}, 6),
    ("hyperoctahedral", {"n": 3}, 8),
])
def test_cosets_partition_group(kind, params, count):
    G = group(kind, **params)
    w, _ = regular_elements(G, max(G.degrees), first_only=True)[0]
    cos = cosets(G, w)
    assert len(cos.representatives) == count
    assert cos.subgroup_order * count == G.order
    powers = [G.identity]
    while not (powers[-1] * w).is_identity():
        powers.append(powers[-1] * w)
    seen = set()
    for r in cos.representatives:
        coset = {(r * q).hash_key() for q in powers}
        assert min((r * q for q in powers), key=GroupElement.sort_key).hash_key() == r.hash_key()
        assert not coset & seen
        seen |= coset
    assert len(seen) == G.order


def test_cosets_reject_foreign_element():
    G = group("symmetric", n=3)
    H = group("hyperoctahedral", n=3)
    neg = next(w for w in H.elements if w.det == -1 and any(w.exps))
    with pytest.raises(InvalidGroupSpec):
        cosets(G, neg)


def test_canonical_element_order_is_stable():
    a = build_family(family_spec("hyperoctahedral", n=3))
    b = build_family(family_spec("hyperoctahedral", n=3))
    assert [g.hash_key() for g in a.elements] == [g.hash_key() for g in b.elements]


def test_element_algebra():
    G = group("imprimitive", d=2, e=2, n=3)
    for g in G.elements[:40]:
        assert (g * g.inverse()).is_identity()
        assert g.det * g.contragredient().det == 1
        dense = GroupElement(g.n, g.m, matrix=g.rows())
        assert dense.det == g.det and dense.order == g.order
