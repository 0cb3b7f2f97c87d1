import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hsp_lab.group_core import (
    CapacityError,
    CyclicGroup,
    DihedralGroup,
    GeneralizedDihedralGroup,
    ProductGroup,
    Subgroup,
    SymmetricGroup,
    TableGroup,
    WreathSymZ2,
    coset_labels,
    cyclic_factors,
    dihedral_subgroups,
    enumerate_elements,
    is_normal,
    make_subgroup,
    parse_group,
    perm_parity,
    perm_rank,
    perm_unrank,
    quotient_group,
    subgroup_closure,
    trivial_subgroup,
    verify_subgroup,
)


def _axiom_check(group, exhaustive_limit=64, samples=2000, seed=7):
    n = group.order
    e = group.identity()
    for a in group.elements():
        assert group.mul(e, a) == a
        assert group.mul(a, e) == a
        assert group.mul(a, group.inv(a)) == e
        assert group.mul(group.inv(a), a) == e
    if n <= exhaustive_limit:
        triples = (
            (a, b, c) for a in range(n) for b in range(n) for c in range(n)
        )
    else:
        rng = random.Random(seed)
        triples = (
            (rng.randrange(n), rng.randrange(n), rng.randrange(n))
            for _ in range(samples)
        )
    for a, b, c in triples:
        assert group.mul(group.mul(a, b), c) == group.mul(a, group.mul(b, c))


SAMPLE_GROUPS = [
    CyclicGroup(1),
    CyclicGroup(12),
    ProductGroup([CyclicGroup(2), CyclicGroup(3)]),
    ProductGroup([CyclicGroup(2)] * 3),
    DihedralGroup(1),
    DihedralGroup(4),
    DihedralGroup(6),
    GeneralizedDihedralGroup(ProductGroup([CyclicGroup(2), CyclicGroup(4)])),
    SymmetricGroup(3),
    SymmetricGroup(4),
    WreathSymZ2(2),
    WreathSymZ2(3),
]


@pytest.mark.parametrize("group", SAMPLE_GROUPS, ids=lambda g: g.describe())
def test_group_axioms(group):
    _axiom_check(group)


@pytest.mark.parametrize("group", SAMPLE_GROUPS, ids=lambda g: g.describe())
def test_codec_bijective(group):
    for a in group.elements():
        assert group.encode(group.decode(a)) == a


def test_orders():
    assert DihedralGroup(5).order == 10
    assert SymmetricGroup(4).order == 24
    assert WreathSymZ2(3).order == 72
    assert ProductGroup([CyclicGroup(4), CyclicGroup(6)]).order == 24


def test_dihedral_identity_law():
    g = DihedralGroup(4)
    e = g.encode((0, 0))
    for x in g.elements():
        assert g.mul(e, x) == x


def test_dihedral_hand_products():
    g = DihedralGroup(4)
    # (1,1)(1,0) = (1 - 1, 1) = (0,1)
    assert g.mul(g.encode((1, 1)), g.encode((1, 0))) == g.encode((0, 1))
    g8 = DihedralGroup(8)
    assert g8.inv(g8.encode((3, 1))) == g8.encode((3, 1))


def test_dihedral_against_gendihedral():
    n = 6
    d = DihedralGroup(n)
    gd = GeneralizedDihedralGroup(CyclicGroup(n))
    assert d.order == gd.order
    for a in d.elements():
        for b in d.elements():
            assert d.mul(a, b) == gd.mul(a, b)
        assert d.inv(a) == gd.inv(a)


def test_wreath_swap_relation():
    # (a,b) followed by the swap equals the swap followed by (b,a)
    g = WreathSymZ2(3)
    s = g.encode(((0, 1, 2), (0, 1, 2), 1))
    for ra in range(6):
        for rb in range(6):
            a = g.sym.decode(ra)
            b = g.sym.decode(rb)
            left = g.mul(g.encode((a, b, 0)), s)
            right = g.mul(s, g.encode((b, a, 0)))
            assert left == right


def test_wreath_action_is_homomorphic():
    g = WreathSymZ2(3)
    rng = random.Random(3)
    for _ in range(200):
        x = rng.randrange(g.order)
        y = rng.randrange(g.order)
        for p in range(2 * g.n):
            assert g.act_on_point(g.mul(x, y), p) == g.act_on_point(
                x, g.act_on_point(y, p)
            )


def test_perm_rank_unrank_roundtrip():
    for n in range(1, 7):
        for r in range(0, SymmetricGroup(n).order, 7):
            assert perm_rank(perm_unrank(n, r)) == r
    assert perm_rank((0, 1, 2)) == 0
    assert perm_rank((2, 1, 0)) == 5


def test_perm_parity():
    assert perm_parity((0, 1, 2)) == 0
    assert perm_parity((1, 0, 2)) == 1
    assert perm_parity((1, 2, 0)) == 0


def test_enumerate_elements():
    assert enumerate_elements(CyclicGroup(1)) == [0]
    assert len(enumerate_elements(DihedralGroup(3))) == 6
    assert len(enumerate_elements(WreathSymZ2(3))) == 72
    with pytest.raises(CapacityError):
        enumerate_elements(CyclicGroup(10), cap=5)


def test_index_range_errors():
    g = CyclicGroup(5)
    with pytest.raises(ValueError):
        g.mul(0, 5)
    with pytest.raises(ValueError):
        g.inv(-1)


def test_subgroup_closure_trivial():
    g = DihedralGroup(4)
    sub = subgroup_closure(g, [])
    assert sub.elements == (g.identity(),)


def test_subgroup_closure_reflection():
    g = DihedralGroup(4)
    sub = subgroup_closure(g, [g.encode((1, 1))])
    assert sub.order == 2
    assert set(sub.elements) == {g.encode((0, 0)), g.encode((1, 1))}


def test_subgroup_closure_cyclic():
    g = CyclicGroup(12)
    sub = subgroup_closure(g, [4])
    assert sub.elements == (0, 4, 8)
    verify_subgroup(sub)


def test_make_subgroup_rejects_non_closed():
    g = CyclicGroup(12)
    with pytest.raises(ValueError):
        make_subgroup(g, [0, 4])


def test_coset_labels_extremes():
    g = DihedralGroup(4)
    whole = subgroup_closure(g, [g.encode((1, 0)), g.encode((0, 1))])
    assert whole.order == 8
    assert set(coset_labels(g, whole)) == {0}
    labels = coset_labels(g, trivial_subgroup(g))
    assert labels == list(range(8))


def test_coset_labels_partition():
    g = DihedralGroup(4)
    sub = subgroup_closure(g, [g.encode((1, 1))])
    labels = coset_labels(g, sub)
    assert len(set(labels)) == 4
    # canonical labels increase with the minimal element of each coset
    firsts = {}
    for x, lab in enumerate(labels):
        firsts.setdefault(lab, x)
    assert [firsts[k] for k in sorted(firsts)] == sorted(firsts.values())


def test_coset_labels_rejects_non_closed():
    g = CyclicGroup(12)
    bad = Subgroup(g, (0, 4), (4,))
    with pytest.raises(ValueError):
        coset_labels(g, bad)


def _all_subgroups_brute(group):
    """Subgroup lattice by closure-extension search; exponential, tiny only."""
    e = group.identity()
    start = frozenset({e})
    seen = {start}
    stack = [start]
    while stack:
        h = stack.pop()
        for g in group.elements():
            if g in h:
                continue
            k = frozenset(subgroup_closure_set(group, h | {g}))
            if k not in seen:
                seen.add(k)
                stack.append(k)
    return seen


def subgroup_closure_set(group, gens):
    return set(subgroup_closure(group, list(gens)).elements)


@pytest.mark.parametrize("n", [1, 2, 3, 4, 6, 8])
def test_dihedral_subgroups_complete(n):
    subs = dihedral_subgroups(n)
    # count formula: sum over divisors r of (1 + r)
    expected = sum(1 + r for r in range(1, n + 1) if n % r == 0)
    assert len(subs) == expected
    group = subs[0].subgroup.group
    materialized = {frozenset(s.subgroup.elements) for s in subs}
    assert len(materialized) == expected
    for s in subs:
        verify_subgroup(s.subgroup)
        want = 2 * n // s.r if s.d is not None else n // s.r
        assert s.subgroup.order == want
    assert materialized == _all_subgroups_brute(group)


def test_dihedral_subgroup_sizes_n4():
    assert len(dihedral_subgroups(4)) == 10
    assert len(dihedral_subgroups(6)) == 16
    assert len(dihedral_subgroups(1)) == 2


@pytest.mark.parametrize("n", range(1, 17))
def test_dihedral_normality_classification(n):
    group = DihedralGroup(n)
    for s in dihedral_subgroups(group):
        normal = is_normal(group, s.subgroup)
        if s.d is None:
            assert normal
        else:
            assert normal == (s.r <= 2)


def test_is_normal_extremes():
    g = DihedralGroup(4)
    assert is_normal(g, trivial_subgroup(g))
    whole = subgroup_closure(g, [1, g.encode((0, 1))])
    assert is_normal(g, whole)
    h1 = subgroup_closure(g, [g.encode((1, 1))])
    assert not is_normal(g, h1)


def test_quotient_by_trivial():
    g = DihedralGroup(3)
    q, proj = quotient_group(g, trivial_subgroup(g))
    assert q.order == g.order
    for a in g.elements():
        for b in g.elements():
            assert q.mul(proj[a], proj[b]) == proj[g.mul(a, b)]


def test_quotient_d8_mod_h2_is_klein():
    g = DihedralGroup(8)
    h2 = subgroup_closure(g, [2])
    assert h2.order == 4
    q, proj = quotient_group(g, h2)
    assert q.order == 4
    assert q.check_associativity()
    assert q.abelian
    e = q.identity()
    assert all(q.mul(x, x) == e for x in q.elements())
    # projection is a homomorphism
    for a in g.elements():
        for b in g.elements():
            assert q.mul(proj[a], proj[b]) == proj[g.mul(a, b)]


def test_quotient_z12_is_z4():
    g = CyclicGroup(12)
    sub = subgroup_closure(g, [4])
    q, _ = quotient_group(g, sub)
    assert q.order == 4
    orders = sorted(q.element_order(x) for x in q.elements())
    assert orders == [1, 2, 4, 4]


def test_quotient_rejects_non_normal():
    g = DihedralGroup(4)
    h1 = subgroup_closure(g, [g.encode((1, 1))])
    with pytest.raises(ValueError):
        quotient_group(g, h1)


def test_table_group_validation():
    with pytest.raises(ValueError):
        TableGroup([[0, 1], [0, 1]])
    z3 = TableGroup([[0, 1, 2], [1, 2, 0], [2, 0, 1]])
    assert z3.abelian
    assert z3.element_order(1) == 3


def test_parse_group_grammar():
    assert parse_group("cyclic:12").order == 12
    assert parse_group("dihedral:4").order == 8
    assert parse_group("product:2,3").order == 6
    assert parse_group("product:2,2,2").describe() == "product:cyclic:2,cyclic:2,cyclic:2"
    assert parse_group("gendihedral:product:2,4").order == 16
    assert parse_group("symmetric:4").order == 24
    assert parse_group("wreath-s:2").order == 8
    with pytest.raises(ValueError):
        parse_group("nonsense:3")


def test_cyclic_factors():
    assert cyclic_factors(CyclicGroup(6)) == [6]
    assert cyclic_factors(parse_group("product:2,4")) == [2, 4]
    assert cyclic_factors(DihedralGroup(3)) is None


def test_gendihedral_requires_abelian_base():
    with pytest.raises(ValueError):
        GeneralizedDihedralGroup(SymmetricGroup(3))


@settings(max_examples=60, deadline=None)
@given(
    n=st.integers(min_value=1, max_value=12),
    seed=st.integers(min_value=0, max_value=10**6),
)
def test_dihedral_power_law(n, seed):
    g = DihedralGroup(n)
    rng = random.Random(seed)
    a = rng.randrange(g.order)
    k = rng.randrange(-6, 7)
    direct = g.identity()
    step = a if k >= 0 else g.inv(a)
    for _ in range(abs(k)):
        direct = g.mul(direct, step)
    assert g.power(a, k) == direct


@settings(max_examples=40, deadline=None)
@given(st.integers(min_value=1, max_value=8), st.data())
def test_closure_is_subgroup(n, data):
    g = DihedralGroup(n)
    gens = data.draw(
        st.lists(st.integers(min_value=0, max_value=g.order - 1), max_size=3)
    )
    sub = subgroup_closure(g, gens)
    verify_subgroup(sub)
    assert g.order % sub.order == 0
