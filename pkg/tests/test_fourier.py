import math
from fractions import Fraction

import numpy as np
import pytest

from hsp_lab.fourier import (
    QFT_ORDER_CAP,
    abelian_qft_tensor,
    apply_qft,
    build_qft,
    cyclic_qft_matrix,
    preparation_success_probability,
    unitarity_residual,
)
from hsp_lab.group_core import CapacityError, CyclicGroup, parse_group
from hsp_lab.rep_theory import abelian_irreps, dihedral_irreps, irrep_table_for

QFT_GROUPS = [
    "cyclic:1",
    "cyclic:2",
    "cyclic:3",
    "cyclic:16",
    "product:2,3",
    "product:2,2,2,2",
    "product:4,6",
    "dihedral:1",
    "dihedral:3",
    "dihedral:4",
    "dihedral:7",
    "dihedral:12",
]


def _qft(spec):
    group = parse_group(spec)
    return build_qft(group, irrep_table_for(group))


class TestBuild:
    def test_z2_is_hadamard(self):
        qft = _qft("cyclic:2")
        h = np.array([[1, 1], [1, -1]]) / math.sqrt(2)
        assert np.allclose(qft.matrix, h)

    def test_cyclic_entries(self):
        n = 12
        qft = _qft(f"cyclic:{n}")
        for j in range(n):
            for k in range(n):
                expected = np.exp(2j * np.pi * j * k / n) / math.sqrt(n)
                assert qft.matrix[j, k] == pytest.approx(expected)

    def test_cyclic_matches_direct_formula(self):
        for n in (1, 2, 5, 9):
            assert np.allclose(_qft(f"cyclic:{n}").matrix, cyclic_qft_matrix(n))

    @pytest.mark.parametrize("spec", QFT_GROUPS)
    def test_unitarity(self, spec):
        qft = _qft(spec)
        assert unitarity_residual(qft) < 1e-9

    @pytest.mark.parametrize("spec", ["product:2,3", "product:4,6", "product:2,2,2,2"])
    def test_tensor_agreement(self, spec):
        group = parse_group(spec)
        qft = build_qft(group, abelian_irreps(group))
        assert np.max(np.abs(qft.matrix - abelian_qft_tensor(group))) < 1e-12

    def test_tensor_respects_mixed_radix_order(self):
        group = parse_group("product:2,3")
        tensor = abelian_qft_tensor(group)
        # element (a, b) encodes as a + 2b, so rows repeat the F_2 pattern
        # with period two in the least significant coordinate
        f2 = cyclic_qft_matrix(2)
        f3 = cyclic_qft_matrix(3)
        for g in range(6):
            for h in range(6):
                expected = f2[g % 2, h % 2] * f3[g // 2, h // 2]
                assert tensor[g, h] == pytest.approx(expected)

    def test_dihedral_rows_are_scaled_irreps(self):
        group = parse_group("dihedral:4")
        table = dihedral_irreps(4)
        qft = build_qft(group, table)
        tau = table.irrep("tau1")
        scale = math.sqrt(2 / 8)
        for g in range(8):
            assert qft.matrix[4, g] == pytest.approx(scale * tau(g)[0, 0])
            assert qft.matrix[5, g] == pytest.approx(scale * tau(g)[0, 1])
            assert qft.matrix[6, g] == pytest.approx(scale * tau(g)[1, 0])
            assert qft.matrix[7, g] == pytest.approx(scale * tau(g)[1, 1])

    def test_rejects_table_group_mismatch(self):
        with pytest.raises(ValueError):
            build_qft(CyclicGroup(4), abelian_irreps(CyclicGroup(3)))

    def test_rejects_incomplete_table(self):
        from hsp_lab.rep_theory import IrrepTable

        table = dihedral_irreps(4)
        broken = IrrepTable(table.group, table.irreps[:-1])
        with pytest.raises(ValueError):
            build_qft(table.group, broken)

    def test_order_cap(self):
        big = CyclicGroup(QFT_ORDER_CAP + 1)
        with pytest.raises(CapacityError):
            build_qft(big, abelian_irreps(CyclicGroup(2)))


class TestApply:
    def test_identity_state_spreads_uniformly(self):
        qft = _qft("cyclic:8")
        state = np.zeros(8)
        state[0] = 1.0
        out = apply_qft(qft, state)
        assert np.allclose(out, np.full(8, 1 / math.sqrt(8)))

    def test_hadamard_involution(self):
        qft = _qft("cyclic:2")
        state = np.array([0.6, 0.8])
        assert np.allclose(apply_qft(qft, apply_qft(qft, state)), state)

    @pytest.mark.parametrize("spec", ["cyclic:9", "dihedral:5", "product:2,3"])
    def test_norm_preserved(self, spec):
        qft = _qft(spec)
        rng = np.random.default_rng(3)
        state = rng.normal(size=qft.order) + 1j * rng.normal(size=qft.order)
        state /= np.linalg.norm(state)
        assert np.linalg.norm(apply_qft(qft, state)) == pytest.approx(1.0)

    def test_rejects_wrong_shape(self):
        qft = _qft("cyclic:4")
        with pytest.raises(ValueError):
            apply_qft(qft, np.ones(3) / math.sqrt(3))

    def test_rejects_unnormalized(self):
        qft = _qft("cyclic:4")
        with pytest.raises(ValueError):
            apply_qft(qft, np.ones(4))
        out = apply_qft(qft, np.ones(4), check_norm=False)
        assert out.shape == (4,)


class TestPreparation:
    def test_exact_values(self):
        assert preparation_success_probability(1) == Fraction(1)
        assert preparation_success_probability(2) == Fraction(1)
        assert preparation_success_probability(3) == Fraction(3, 4)
        assert preparation_success_probability(6) == Fraction(6, 8)
        assert preparation_success_probability(48) == Fraction(48, 64)

    def test_always_above_half(self):
        for order in range(1, 600):
            p = preparation_success_probability(order)
            assert Fraction(1, 2) < p <= 1

    def test_rejects_non_positive(self):
        with pytest.raises(ValueError):
            preparation_success_probability(0)
