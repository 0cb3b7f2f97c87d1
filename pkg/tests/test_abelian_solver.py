import math
import random
from fractions import Fraction

import pytest
import sympy
from sympy.matrices.normalforms import smith_normal_form as sympy_snf
from hypothesis import given, settings
from hypothesis import strategies as st

from hsp_lab.abelian_solver import (
    AbelianDecomposition,
    HperpSampler,
    InconsistentOracleError,
    SolverFailure,
    abelian_variant,
    annihilator,
    coords_element,
    cyclic_variant,
    decompose_abelian,
    discrete_log,
    dlog_oracle,
    element_coords,
    group_from_orders,
    multiplicative_order,
    pairing_is_trivial,
    sample_hperp,
    shor_factor,
    shor_oracle,
    shor_period,
    shor_period_statevector,
    simon_oracle,
    simon_solve,
    smith_normal_form,
    solve_abelian,
    standard_decomposition,
    verify_decomposition,
)
from hsp_lab.group_core import (
    CyclicGroup,
    TableGroup,
    make_subgroup,
    parse_group,
    subgroup_closure,
)
from hsp_lab.rep_theory import character_value
from hsp_lab.sampling import HidingOracle, oracle_from_subgroup


def _all_subgroups(group):
    seen = {(group.identity(),)}
    frontier = [(group.identity(),)]
    while frontier:
        new = []
        for elems in frontier:
            for g in group.elements():
                if g in elems:
                    continue
                closed = tuple(subgroup_closure(group, list(elems) + [g]).elements)
                if closed not in seen:
                    seen.add(closed)
                    new.append(closed)
        frontier = new
    return [make_subgroup(group, list(e)) for e in sorted(seen, key=lambda e: (len(e), e))]


def _brute_annihilator(group, sub):
    out = []
    for g in group.elements():
        if all(
            abs(character_value(group, g, h) - 1) < 1e-9 for h in sub.elements
        ):
            out.append(g)
    return tuple(out)


class TestCoordinates:
    @pytest.mark.parametrize("spec", ["cyclic:12", "product:2,3,4", "product:2,2"])
    def test_round_trip(self, spec):
        group = parse_group(spec)
        for g in group.elements():
            assert coords_element(group, element_coords(group, g)) == g

    def test_pairing_matches_character(self):
        group = parse_group("product:4,6")
        for g in group.elements():
            for h in group.elements():
                exact = pairing_is_trivial(group, g, h)
                numeric = abs(character_value(group, g, h) - 1) < 1e-9
                assert exact == numeric

    def test_group_from_orders(self):
        assert group_from_orders([]).order == 1
        assert group_from_orders([5]).order == 5
        product = group_from_orders([2, 3])
        assert product.order == 6
        assert [f.order for f in product.factors] == [2, 3]


class TestAnnihilator:
    @pytest.mark.parametrize("spec", ["cyclic:12", "product:2,2,2", "product:4,6"])
    def test_matches_brute_force(self, spec):
        group = parse_group(spec)
        for sub in _all_subgroups(group):
            assert annihilator(group, list(sub.elements)) == _brute_annihilator(
                group, sub
            )

    @pytest.mark.parametrize("spec", ["cyclic:16", "product:2,4,4", "cyclic:243"])
    def test_double_dual_is_identity(self, spec):
        group = parse_group(spec)
        for sub in _all_subgroups(group):
            dual = annihilator(group, list(sub.elements))
            assert annihilator(group, list(dual)) == sub.elements

    def test_rejects_non_subgroup(self):
        group = parse_group("cyclic:8")
        with pytest.raises(InconsistentOracleError):
            annihilator(group, [0, 3, 6])


class TestHperpSampling:
    def test_trivial_subgroup_gives_all_characters(self):
        group = parse_group("cyclic:6")
        sampler = HperpSampler(group, oracle_from_subgroup(group, make_subgroup(group, [0])))
        assert sampler.dual == tuple(range(6))

    def test_whole_group_gives_only_zero(self):
        group = parse_group("cyclic:6")
        sub = make_subgroup(group, list(range(6)))
        sampler = HperpSampler(group, oracle_from_subgroup(group, sub))
        assert sampler.dual == (0,)

    def test_z2_squared_diagonal(self):
        group = parse_group("product:2,2")
        sub = make_subgroup(group, [0, 3])
        sampler = HperpSampler(group, oracle_from_subgroup(group, sub))
        assert sampler.dual == (0, 3)

    def test_draws_are_uniform(self):
        group = parse_group("cyclic:12")
        sub = make_subgroup(group, [0, 4, 8])
        oracle = oracle_from_subgroup(group, sub)
        sampler = HperpSampler(group, oracle)
        assert sampler.dual == (0, 3, 6, 9)
        rng = random.Random(7)
        counts = {g: 0 for g in sampler.dual}
        n = 12000
        for _ in range(n):
            counts[sampler.draw(rng).g] += 1
        for g in sampler.dual:
            assert abs(counts[g] / n - 0.25) < 0.02

    def test_one_shot_wrapper(self):
        group = parse_group("cyclic:4")
        sub = make_subgroup(group, [0, 2])
        sample = sample_hperp(group, oracle_from_subgroup(group, sub), random.Random(1))
        assert sample.g in (0, 2)

    def test_rejects_nonstandard_decomposition(self):
        group = parse_group("cyclic:4")
        oracle = oracle_from_subgroup(group, make_subgroup(group, [0]))
        with pytest.raises(ValueError):
            HperpSampler(group, oracle, AbelianDecomposition((4,), (3,)))


class TestSmithNormalForm:
    def _check(self, a):
        res = smith_normal_form(a)
        m, n = len(a), len(a[0])
        ma = sympy.Matrix(a)
        mu = sympy.Matrix([list(r) for r in res.u])
        mv = sympy.Matrix([list(r) for r in res.v])
        md = sympy.Matrix([list(r) for r in res.d])
        assert mu * ma * mv == md
        assert abs(mu.det()) == 1
        assert abs(mv.det()) == 1
        diag = res.diagonal
        for i in range(len(diag) - 1):
            if diag[i + 1] != 0:
                assert diag[i] != 0 and diag[i + 1] % diag[i] == 0
            assert diag[i] >= 0
        for i in range(m):
            for j in range(n):
                if i != j:
                    assert res.d[i][j] == 0
        return res

    def test_already_diagonal(self):
        res = self._check([[2, 0], [0, 6]])
        assert res.diagonal == (2, 6)

    def test_hand_example(self):
        res = self._check([[2, 4], [6, 8]])
        assert res.diagonal == (2, 4)

    def test_zero_matrix(self):
        res = smith_normal_form([[0, 0], [0, 0]])
        assert res.d == ((0, 0), (0, 0))
        assert res.u == ((1, 0), (0, 1))
        assert res.v == ((1, 0), (0, 1))

    def test_rectangular(self):
        self._check([[1, 2, 3], [4, 5, 6]])
        self._check([[3], [6], [9]])

    def test_random_matrices_match_sympy(self):
        rng = random.Random(99)
        for _ in range(25):
            m = rng.randrange(1, 7)
            n = rng.randrange(1, 7)
            a = [[rng.randrange(-50, 51) for _ in range(n)] for _ in range(m)]
            res = self._check(a)
            expected = sympy_snf(sympy.Matrix(a))
            got = [abs(res.d[i][i]) for i in range(min(m, n))]
            want = [abs(int(expected[i, i])) for i in range(min(m, n))]
            assert got == want

    def test_large_entries(self):
        rng = random.Random(5)
        a = [[rng.randrange(-(10**6), 10**6) for _ in range(16)] for _ in range(16)]
        self._check(a)


class TestSolveAbelian:
    def test_whole_group(self):
        group = parse_group("cyclic:8")
        sub = make_subgroup(group, list(range(8)))
        found = solve_abelian(
            group, oracle_from_subgroup(group, sub), random.Random(3)
        )
        assert found.order == 8

    def test_z12_subgroup(self):
        group = parse_group("cyclic:12")
        sub = make_subgroup(group, [0, 4, 8])
        found = solve_abelian(
            group, oracle_from_subgroup(group, sub), random.Random(5)
        )
        assert found.elements == (0, 4, 8)

    def test_simon_style_oracle(self):
        rng = random.Random(11)
        oracle = simon_oracle(6, 41)
        found = solve_abelian(oracle.group, oracle, rng)
        assert found.elements == (0, 41)

    def test_methods_agree_across_subgroup_lattice(self):
        group = parse_group("product:2,4")
        for sub in _all_subgroups(group):
            oracle = oracle_from_subgroup(group, sub)
            a = solve_abelian(group, oracle, random.Random(21), method="snf")
            b = solve_abelian(group, oracle, random.Random(22), method="exhaustive")
            assert a.elements == sub.elements
            assert b.elements == sub.elements

    def test_success_rate_dominates_bound(self):
        group = parse_group("product:2,3,4")
        sub = make_subgroup(group, sorted({(g * 2) % 24 for g in range(12)} & set(range(24))))
        rng = random.Random(31)
        hits = 0
        runs = 200
        for _ in range(runs):
            found = solve_abelian(group, oracle_from_subgroup(group, sub), rng)
            hits += found.elements == sub.elements
        assert hits / runs >= 1 - 2**-10

    def test_inconsistent_oracle_raises(self):
        group = parse_group("cyclic:8")
        with pytest.raises(InconsistentOracleError):
            solve_abelian(group, HidingOracle(group, lambda g: g % 3), random.Random(1))

    def test_rejects_unknown_method(self):
        group = parse_group("cyclic:4")
        oracle = oracle_from_subgroup(group, make_subgroup(group, [0]))
        with pytest.raises(ValueError):
            solve_abelian(group, oracle, random.Random(0), method="guess")


class TestSimon:
    def test_permutation_oracle_gives_zero(self):
        oracle = simon_oracle(4, 0)
        assert simon_solve(oracle, random.Random(2)) == 0

    def test_two_bit_example(self):
        oracle = simon_oracle(2, 3)
        assert [oracle(g) for g in range(4)] == [0, 1, 1, 0]
        assert simon_solve(oracle, random.Random(3)) == 3

    def test_hundred_runs_n6(self):
        rng = random.Random(41)
        hits = 0
        for _ in range(100):
            s = rng.randrange(64)
            if simon_solve(simon_oracle(6, s), rng) == s:
                hits += 1
        assert hits >= 99

    def test_rejects_wrong_group(self):
        group = parse_group("cyclic:6")
        oracle = oracle_from_subgroup(group, make_subgroup(group, [0]))
        with pytest.raises(ValueError):
            simon_solve(oracle, random.Random(0))


class TestShor:
    def test_multiplicative_order(self):
        assert multiplicative_order(7, 15) == 4
        assert multiplicative_order(2, 21) == 6
        with pytest.raises(ValueError):
            multiplicative_order(6, 15)

    def test_oracle_levels(self):
        oracle = shor_oracle(7, 15, 64)
        assert oracle(0) == 1
        assert oracle(4) == 1
        assert oracle(1) == 7

    def test_period_of_seven_mod_fifteen(self):
        assert shor_period(7, 15, random.Random(5)) == 4

    def test_period_statevector(self):
        assert shor_period_statevector(7, 15, random.Random(7)) == 4
        assert shor_period_statevector(2, 21, random.Random(9)) == 6

    def test_factor_fifteen(self):
        assert shor_factor(15, random.Random(13)) in (3, 5)

    def test_factor_twenty_one_many_runs(self):
        rng = random.Random(17)
        hits = 0
        for _ in range(30):
            if shor_factor(21, rng) in (3, 7):
                hits += 1
        assert hits == 30

    def test_factor_statevector_path(self):
        assert shor_factor(15, random.Random(19), statevector=True) in (3, 5)

    def test_preconditions(self):
        rng = random.Random(0)
        with pytest.raises(ValueError):
            shor_factor(13, rng)
        with pytest.raises(ValueError):
            shor_factor(14, rng)
        with pytest.raises(ValueError):
            shor_factor(27, rng)
        with pytest.raises(ValueError):
            shor_period(6, 15, rng)
        with pytest.raises(ValueError):
            shor_period(1, 15, rng)


class TestDiscreteLog:
    def test_identity_target(self):
        assert discrete_log(7, 3, 1, random.Random(1)) == 0

    def test_hand_example(self):
        assert discrete_log(7, 3, 6, random.Random(2)) == 3

    def test_random_targets_p101(self):
        rng = random.Random(23)
        for _ in range(20):
            y_true = rng.randrange(100)
            x = pow(2, y_true, 101)
            assert discrete_log(101, 2, x, rng) == y_true

    def test_validation(self):
        rng = random.Random(0)
        with pytest.raises(ValueError):
            discrete_log(8, 3, 1, rng)
        with pytest.raises(ValueError):
            discrete_log(7, 2, 3, rng)  # 2 has order 3 mod 7
        with pytest.raises(ValueError):
            discrete_log(7, 3, 0, rng)


class TestDecompose:
    def test_trivial_group(self):
        dec = decompose_abelian(CyclicGroup(1), random.Random(1))
        assert dec.orders == ()
        assert dec.generators == ()

    def test_z2_z3_reported_as_z6(self):
        group = parse_group("product:2,3")
        dec = decompose_abelian(group, random.Random(3))
        assert dec.orders == (6,)
        verify_decomposition(group, dec)

    def test_z4_z2_invariant_factors(self):
        group = parse_group("product:4,2")
        dec = decompose_abelian(group, random.Random(5))
        assert dec.orders == (4, 2)
        verify_decomposition(group, dec)

    def test_black_box_table_group(self):
        base = parse_group("cyclic:6")
        table = [[base.mul(a, b) for b in range(6)] for a in range(6)]
        group = TableGroup(table)
        dec = decompose_abelian(group, random.Random(7))
        assert dec.orders == (6,)
        verify_decomposition(group, dec)

    def test_larger_mixed_group(self):
        group = parse_group("product:2,4,3")
        dec = decompose_abelian(group, random.Random(11))
        assert dec.orders == (12, 2)
        verify_decomposition(group, dec)

    def test_rejects_non_abelian(self):
        with pytest.raises(ValueError):
            decompose_abelian(parse_group("dihedral:3"), random.Random(0))

    def test_standard_decomposition_verifies(self):
        for spec in ("cyclic:12", "product:2,3,4", "cyclic:1"):
            group = parse_group(spec)
            verify_decomposition(group, standard_decomposition(group))


class TestCyclicVariant:
    def _oracle(self, n, d):
        group = CyclicGroup(n)
        sub = make_subgroup(group, sorted(range(0, n, d)))
        return oracle_from_subgroup(group, sub)

    def test_whole_group_case(self):
        assert cyclic_variant(12, self._oracle(12, 1), random.Random(1)) == 1

    def test_n12_d4(self):
        assert cyclic_variant(12, self._oracle(12, 4), random.Random(3)) == 4

    def test_trace_divides_d(self):
        trace: list = []
        d = 6
        result = cyclic_variant(24, self._oracle(24, d), random.Random(5), trace=trace)
        assert result == d
        for a in trace:
            assert d % a == 0

    def test_random_divisors_of_1024(self):
        rng = random.Random(7)
        hits = 0
        for _ in range(20):
            d = 2 ** rng.randrange(11)
            if cyclic_variant(1024, self._oracle(1024, d), rng) == d:
                hits += 1
        assert hits == 20

    def test_rejects_domain_mismatch(self):
        with pytest.raises(ValueError):
            cyclic_variant(8, self._oracle(12, 4), random.Random(0))


class TestAbelianVariant:
    def test_whole_group(self):
        group = parse_group("cyclic:12")
        sub = make_subgroup(group, list(range(12)))
        result = abelian_variant(
            group, oracle_from_subgroup(group, sub), random.Random(1)
        )
        assert result.subgroup.order == 12

    def test_z12_single_generator(self):
        group = parse_group("cyclic:12")
        sub = make_subgroup(group, [0, 4, 8])
        result = abelian_variant(
            group, oracle_from_subgroup(group, sub), random.Random(3)
        )
        assert result.subgroup.elements == (0, 4, 8)
        assert result.orders == (3,)
        assert group.element_order(result.generators[0]) == 3

    def test_z2_fourth_two_plane(self):
        group = parse_group("product:2,2,2,2")
        sub = subgroup_closure(group, [3, 12])
        oracle = oracle_from_subgroup(group, make_subgroup(group, list(sub.elements)))
        result = abelian_variant(group, oracle, random.Random(5))
        assert result.subgroup.elements == sub.elements
        assert sorted(result.orders) == [2, 2]
        assert math.prod(result.orders) == sub.order
        a, b = result.generators
        inter = set(subgroup_closure(group, [a]).elements) & set(
            subgroup_closure(group, [b]).elements
        )
        assert inter == {0}

    def test_trace_contains_hidden_subgroup(self):
        group = parse_group("product:2,3,4")
        sub = subgroup_closure(group, [12])
        oracle = oracle_from_subgroup(group, make_subgroup(group, list(sub.elements)))
        result = abelian_variant(group, oracle, random.Random(7))
        assert result.subgroup.elements == sub.elements
        for state in result.trace:
            ambient = set(subgroup_closure(group, list(state.generators)).elements)
            assert set(sub.elements) <= ambient

    def test_many_runs(self):
        group = parse_group("product:2,2,2,2")
        sub = subgroup_closure(group, [3, 12])
        oracle = oracle_from_subgroup(group, make_subgroup(group, list(sub.elements)))
        rng = random.Random(9)
        for _ in range(25):
            result = abelian_variant(group, oracle, rng)
            assert result.subgroup.elements == sub.elements


@given(st.data())
@settings(max_examples=30, deadline=None)
def test_solve_abelian_property(data):
    spec = data.draw(st.sampled_from(["cyclic:12", "product:2,2,3", "product:4,4"]))
    group = parse_group(spec)
    subs = _all_subgroups(group)
    sub = subs[data.draw(st.integers(0, len(subs) - 1))]
    seed = data.draw(st.integers(0, 2**32 - 1))
    found = solve_abelian(
        group, oracle_from_subgroup(group, sub), random.Random(seed)
    )
    assert found.elements == sub.elements
