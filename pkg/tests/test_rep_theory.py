import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hsp_lab.group_core import (
    CyclicGroup,
    DihedralGroup,
    GeneralizedDihedralGroup,
    parse_group,
)
from hsp_lab.rep_theory import (
    DihedralBasis,
    IrrepTable,
    Representation,
    abelian_irreps,
    balanced_dihedral_basis,
    change_basis,
    change_dihedral_basis,
    character_value,
    dihedral_irreps,
    fit_unitary2,
    identity_dihedral_basis,
    irrep_table_for,
    rep_kernel,
    table_from_json,
    table_to_json,
    two_dim_count,
    unitarize,
    unitary2,
    validate_table,
)

TABLE_GROUPS = [
    "cyclic:1",
    "cyclic:2",
    "cyclic:4",
    "cyclic:12",
    "product:2,3",
    "product:2,2,2",
    "product:4,6",
    "dihedral:1",
    "dihedral:3",
    "dihedral:4",
    "dihedral:6",
    "dihedral:8",
    "dihedral:12",
]


def _dihedral_index(n, a, b):
    return a % n + n * (b % 2)


class TestAbelianCharacters:
    def test_z2_table(self):
        table = abelian_irreps(CyclicGroup(2))
        assert [r.label for r in table.irreps] == ["chi0", "chi1"]
        assert np.allclose(table.irrep("chi0").characters, [1, 1])
        assert np.allclose(table.irrep("chi1").characters, [1, -1])

    def test_z4_quarter_phase(self):
        table = abelian_irreps(CyclicGroup(4))
        assert table.irrep("chi1").character(1) == pytest.approx(1j)
        assert table.irrep("chi1").character(2) == pytest.approx(-1)
        assert table.irrep("chi3").character(1) == pytest.approx(-1j)

    def test_symmetric_in_label_and_argument(self):
        group = parse_group("product:4,6")
        table = abelian_irreps(group)
        for g in group.elements():
            for h in group.elements():
                assert table.irrep(f"chi{g}").character(h) == pytest.approx(
                    table.irrep(f"chi{h}").character(g)
                )

    def test_character_value_matches_table(self):
        group = parse_group("product:2,3,4")
        table = abelian_irreps(group)
        for g in group.elements():
            chars = table.irrep(f"chi{g}").characters
            for h in group.elements():
                assert character_value(group, g, h) == pytest.approx(complex(chars[h]))

    def test_z2_cubed_is_real(self):
        group = parse_group("product:2,2,2")
        table = abelian_irreps(group)
        for r in table.irreps:
            assert np.allclose(r.characters.imag, 0.0)
            assert set(np.round(r.characters.real).astype(int)) <= {1, -1}

    def test_rejects_non_cyclic_presentation(self):
        with pytest.raises(ValueError):
            abelian_irreps(GeneralizedDihedralGroup(parse_group("product:2,2")))

    @given(st.data())
    @settings(max_examples=60, deadline=None)
    def test_characters_are_homomorphisms(self, data):
        group = parse_group(data.draw(st.sampled_from(["cyclic:12", "product:2,3,4"])))
        g = data.draw(st.integers(0, group.order - 1))
        h1 = data.draw(st.integers(0, group.order - 1))
        h2 = data.draw(st.integers(0, group.order - 1))
        lhs = character_value(group, g, group.mul(h1, h2))
        rhs = character_value(group, g, h1) * character_value(group, g, h2)
        assert lhs == pytest.approx(rhs)


class TestDihedralIrreps:
    def test_d4_labels_and_dims(self):
        table = dihedral_irreps(4)
        assert [(r.label, r.dim) for r in table.irreps] == [
            ("psi0", 1),
            ("psi1", 1),
            ("psi2", 1),
            ("psi3", 1),
            ("tau1", 2),
        ]

    def test_d3_has_no_even_signs(self):
        table = dihedral_irreps(3)
        assert [(r.label, r.dim) for r in table.irreps] == [
            ("psi0", 1),
            ("psi1", 1),
            ("tau1", 2),
        ]

    def test_d4_sign_characters(self):
        table = dihedral_irreps(4)
        for a in range(4):
            for b in range(2):
                g = _dihedral_index(4, a, b)
                assert table.irrep("psi1").character(g) == pytest.approx((-1.0) ** b)
                assert table.irrep("psi2").character(g) == pytest.approx((-1.0) ** a)
                assert table.irrep("psi3").character(g) == pytest.approx(
                    (-1.0) ** (a + b)
                )

    def test_d4_tau_on_generators(self):
        tau = dihedral_irreps(4).irrep("tau1")
        assert np.allclose(tau(_dihedral_index(4, 1, 0)), np.diag([-1j, 1j]))
        assert np.allclose(tau(_dihedral_index(4, 0, 1)), [[0, 1], [1, 0]])

    def test_tau_blocks_all_n(self):
        for n in range(3, 9):
            table = dihedral_irreps(n)
            for k in range(1, (n + 1) // 2):
                tau = table.irrep(f"tau{k}")
                for a in range(n):
                    w = cmath.exp(2j * math.pi * k * a / n)
                    rot = tau(_dihedral_index(n, a, 0))
                    ref = tau(_dihedral_index(n, a, 1))
                    assert np.allclose(rot, np.diag([w.conjugate(), w]))
                    assert np.allclose(ref, [[0, w.conjugate()], [w, 0]])

    def test_two_dim_count(self):
        assert two_dim_count(3) == 1
        assert two_dim_count(4) == 1
        assert two_dim_count(5) == 2
        assert two_dim_count(6) == 2
        assert two_dim_count(8) == 3
        for n in range(1, 20):
            one_dim = 2 if n % 2 else 4
            assert one_dim + 4 * two_dim_count(n) == 2 * n

    def test_d4_kernels(self):
        group = DihedralGroup(4)
        table = dihedral_irreps(4)
        kernels = {
            r.label: rep_kernel(group, r).elements for r in table.irreps
        }
        assert kernels["psi0"] == tuple(range(8))
        assert kernels["psi1"] == (0, 1, 2, 3)
        assert kernels["psi2"] == (0, 2, 4, 6)
        assert kernels["psi3"] == (0, 2, 5, 7)
        assert kernels["tau1"] == (0,)


class TestTableValidation:
    @pytest.mark.parametrize("spec", TABLE_GROUPS)
    def test_classical_identities(self, spec):
        group = parse_group(spec)
        report = validate_table(irrep_table_for(group))
        assert report.ok()
        assert report.dim_square_sum == group.order
        assert report.max_float_residual < 1e-9

    def test_dropped_irrep_is_flagged(self):
        table = dihedral_irreps(4)
        broken = IrrepTable(table.group, table.irreps[:-1])
        report = validate_table(broken)
        assert report.dim_sum_residual == 4
        assert not report.ok()

    def test_wrong_matrix_is_flagged(self):
        table = abelian_irreps(CyclicGroup(3))
        mats = table.irreps[1].matrices.copy()
        mats[2] = 1.0
        bad = Representation("chi1", 1, mats)
        report = validate_table(
            IrrepTable(table.group, (table.irreps[0], bad, table.irreps[2]))
        )
        assert report.homomorphism_residual > 0.1
        assert not report.ok()


class TestBasisChanges:
    def test_unitarize_recovers_unitarity(self):
        tau = dihedral_irreps(3).irrep("tau1")
        t = np.array([[1.0, 1.0], [0.0, 1.0]], dtype=complex)
        t_inv = np.linalg.inv(t)
        skewed = Representation("tau1", 2, t_inv @ tau.matrices @ t)
        fixed = unitarize(skewed)
        eye = np.eye(2)
        for g in range(6):
            m = fixed(g)
            assert np.max(np.abs(m.conj().T @ m - eye)) < 1e-9
        assert np.allclose(fixed.characters, tau.characters)

    def test_unitarize_rejects_singular(self):
        mats = np.zeros((2, 2, 2), dtype=complex)
        mats[0] = np.eye(2)
        with pytest.raises(ValueError):
            unitarize(Representation("bad", 2, mats))

    def test_change_basis_preserves_characters(self):
        tau = dihedral_irreps(5).irrep("tau2")
        rng = np.random.default_rng(7)
        q, _ = np.linalg.qr(rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2)))
        moved = change_basis(tau, q)
        assert np.allclose(moved.characters, tau.characters)
        for g in range(10):
            assert np.allclose(moved(g), q @ tau(g) @ q.conj().T)

    def test_change_basis_rejects_non_unitary(self):
        tau = dihedral_irreps(3).irrep("tau1")
        with pytest.raises(ValueError):
            change_basis(tau, np.array([[1, 1], [0, 1]], dtype=complex))
        with pytest.raises(ValueError):
            change_basis(tau, np.eye(3))

    def test_hadamard_rebases_d4_reflection(self):
        tau = dihedral_irreps(4).irrep("tau1")
        h = np.array([[1, 1], [1, -1]], dtype=complex) / math.sqrt(2)
        moved = change_basis(tau, h)
        assert np.allclose(moved(_dihedral_index(4, 1, 1)), [[0, 1j], [-1j, 0]])


class TestUnitary2:
    def test_hand_values(self):
        assert np.allclose(unitary2(0.0, 0.0, 0.0), [[1, 0], [0, -1]])
        assert np.allclose(unitary2(math.pi / 2, 0.0, 0.0), [[0, 1], [1, 0]])
        h = np.array([[1, 1], [1, -1]]) / math.sqrt(2)
        assert np.allclose(unitary2(math.pi / 4, 0.0, 0.0), h)

    @given(
        st.floats(0, math.pi / 2),
        st.floats(0, 2 * math.pi, exclude_max=True),
        st.floats(0, 2 * math.pi, exclude_max=True),
        st.floats(0, 2 * math.pi, exclude_max=True),
    )
    @settings(max_examples=80, deadline=None)
    def test_always_unitary(self, theta, alpha, beta, gamma):
        u = unitary2(theta, alpha, beta, gamma)
        assert np.max(np.abs(u.conj().T @ u - np.eye(2))) < 1e-12

    def test_fit_round_trip_random(self):
        rng = np.random.default_rng(11)
        for _ in range(50):
            q, _ = np.linalg.qr(rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2)))
            params = fit_unitary2(q)
            assert np.allclose(unitary2(*params), q, atol=1e-9)

    def test_fit_handles_offdiagonal(self):
        u = np.array([[0, 1j], [-1j, 0]], dtype=complex)
        theta, *rest = fit_unitary2(u)
        assert theta == pytest.approx(math.pi / 2)
        assert np.allclose(unitary2(theta, *rest), u, atol=1e-12)

    def test_fit_rejects_non_unitary(self):
        with pytest.raises(ValueError):
            fit_unitary2(np.array([[1, 1], [0, 1]], dtype=complex))


class TestDihedralBases:
    def test_identity_basis_is_identity_matrix(self):
        basis = identity_dihedral_basis(8)
        for k in range(1, two_dim_count(8) + 1):
            assert np.allclose(basis.matrix(k), np.eye(2))

    def test_balanced_basis_is_hadamard(self):
        basis = balanced_dihedral_basis(8)
        h = np.array([[1, 1], [1, -1]]) / math.sqrt(2)
        for k in range(1, two_dim_count(8) + 1):
            assert np.allclose(basis.matrix(k), h)

    def test_angles(self):
        basis = DihedralBasis(6, (0.5, 1.0), (0.25, math.pi))
        assert basis.theta(1) == pytest.approx(math.asin(0.5) / 2)
        assert basis.alpha(1) == pytest.approx(0.25 + math.pi)
        assert basis.theta(2) == pytest.approx(math.pi / 4)
        assert basis.alpha(2) == pytest.approx(0.0)

    def test_validation(self):
        with pytest.raises(ValueError):
            DihedralBasis(6, (0.5,), (0.0,))
        with pytest.raises(ValueError):
            DihedralBasis(6, (0.5, 1.5), (0.0, 0.0))
        with pytest.raises(ValueError):
            DihedralBasis(6, (0.5, 0.5), (0.0, 7.0))

    def test_change_dihedral_basis_round_trip(self):
        table = dihedral_irreps(6)
        rebased = change_dihedral_basis(table, balanced_dihedral_basis(6))
        assert validate_table(rebased).ok()
        for r, s in zip(table.irreps, rebased.irreps):
            assert np.allclose(r.characters, s.characters)
        back = change_dihedral_basis(table, identity_dihedral_basis(6))
        for r, s in zip(table.irreps, back.irreps):
            assert np.allclose(r.matrices, s.matrices)

    def test_change_dihedral_basis_rejects_mismatch(self):
        with pytest.raises(ValueError):
            change_dihedral_basis(dihedral_irreps(6), identity_dihedral_basis(8))


class TestSerialization:
    @pytest.mark.parametrize("spec", ["cyclic:6", "dihedral:4", "product:2,3"])
    def test_json_round_trip(self, spec):
        table = irrep_table_for(parse_group(spec))
        doc = table_to_json(table)
        back = table_from_json(doc)
        assert back.group.describe() == table.group.describe()
        assert [r.label for r in back.irreps] == [r.label for r in table.irreps]
        for r, s in zip(table.irreps, back.irreps):
            assert np.array_equal(r.matrices, s.matrices)

    def test_flat_index_agrees_with_flat_labels(self):
        table = dihedral_irreps(6)
        flat = table.flat_labels()
        assert len(flat) == table.group.order
        for pos, (label, i, j) in enumerate(flat):
            assert table.flat_index(label, i, j) == pos
        with pytest.raises(KeyError):
            table.flat_index("tau9", 0, 0)
        with pytest.raises(ValueError):
            table.flat_index("tau1", 2, 0)
