"""Irreducible representation tables for abelian and dihedral groups.

Tables carry explicit unitary matrices for every group element. Abelian
groups presented as products of cyclic factors get their full character
table; dihedral groups get the classical table: two (or four, for even N)
one-dimensional signs plus the two-dimensional rotation/reflection blocks.
Symmetric and wreath groups get no table here; they participate in the
suite only through hiding oracles.

All arithmetic is double precision; matrix identities are asserted at
1e-9 and scalar probabilities downstream at 1e-12.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from hsp_lab.group_core import (
    CyclicGroup,
    DihedralGroup,
    Group,
    ProductGroup,
    Subgroup,
    cyclic_factors,
    make_subgroup,
    parse_group,
)

MATRIX_TOL = 1e-9


@dataclass(frozen=True, eq=False)
class Representation:
    """A matrix representation: one d x d complex matrix per group element."""

    label: str
    dim: int
    matrices: np.ndarray

    def __post_init__(self):
        m = np.asarray(self.matrices, dtype=complex)
        if m.ndim != 3 or m.shape[1] != self.dim or m.shape[2] != self.dim:
            raise ValueError(
                f"matrices for {self.label} must have shape (order, {self.dim}, "
                f"{self.dim}), got {m.shape}"
            )
        object.__setattr__(self, "matrices", m)

    def __call__(self, g: int) -> np.ndarray:
        return self.matrices[g]

    def character(self, g: int) -> complex:
        return complex(np.trace(self.matrices[g]))

    @property
    def characters(self) -> np.ndarray:
        return np.einsum("gii->g", self.matrices)


@dataclass(frozen=True, eq=False)
class IrrepTable:
    """A complete list of pairwise non-isomorphic unitary irreps.

    The flat (irrep, row, column) index runs over irreps in table order and
    row-major inside each d x d block, mirroring the Fourier-side basis.
    """

    group: Group
    irreps: tuple[Representation, ...]

    def __post_init__(self):
        object.__setattr__(self, "irreps", tuple(self.irreps))
        labels = [r.label for r in self.irreps]
        if len(set(labels)) != len(labels):
            raise ValueError(f"duplicate irrep labels: {labels}")

    @property
    def dim_total(self) -> int:
        return sum(r.dim * r.dim for r in self.irreps)

    def irrep(self, label: str) -> Representation:
        for r in self.irreps:
            if r.label == label:
                return r
        raise KeyError(f"no irrep labeled {label!r}")

    def flat_labels(self) -> list[tuple[str, int, int]]:
        out = []
        for r in self.irreps:
            for i in range(r.dim):
                for j in range(r.dim):
                    out.append((r.label, i, j))
        return out

    def flat_index(self, label: str, i: int, j: int) -> int:
        base = 0
        for r in self.irreps:
            if r.label == label:
                if not (0 <= i < r.dim and 0 <= j < r.dim):
                    raise ValueError(f"matrix position ({i},{j}) out of range")
                return base + i * r.dim + j
            base += r.dim * r.dim
        raise KeyError(f"no irrep labeled {label!r}")


def _flat_coords(group: Group, g: int) -> tuple[int, ...]:
    if isinstance(group, CyclicGroup):
        return (g,)
    if isinstance(group, ProductGroup):
        out: list[int] = []
        for f, c in zip(group.factors, group.split(g)):
            out.extend(_flat_coords(f, c))
        return tuple(out)
    raise ValueError(f"{group.describe()} has no cyclic-product coordinates")


def abelian_irreps(group: Group) -> IrrepTable:
    """Character table of a product of cyclic groups.

    The character indexed by g evaluates as
    chi_g(g') = prod_i exp(2 pi i * g_i g'_i / t_i).
    """
    ts = cyclic_factors(group)
    if ts is None:
        raise ValueError(
            f"{group.describe()} is not presented as a product of cyclic groups"
        )
    n = group.order
    coords = np.array([_flat_coords(group, g) for g in range(n)], dtype=np.int64)
    reps = []
    for g in range(n):
        # reduce the phase numerator mod t_i before exponentiating
        phases = np.zeros(n)
        for i, t in enumerate(ts):
            phases += ((coords[g, i] * coords[:, i]) % t) / t
        values = np.exp(2j * np.pi * phases)
        reps.append(Representation(f"chi{g}", 1, values.reshape(n, 1, 1)))
    return IrrepTable(group, tuple(reps))


def character_value(group: Group, g: int, h: int) -> complex:
    """chi_g(h) for an abelian product of cyclic factors, without a table."""
    ts = cyclic_factors(group)
    if ts is None:
        raise ValueError(f"{group.describe()} has no abelian character formula")
    cg = _flat_coords(group, g)
    ch = _flat_coords(group, h)
    phase = sum(((a * b) % t) / t for a, b, t in zip(cg, ch, ts))
    return cmath.exp(2j * math.pi * phase)


def dihedral_irreps(n: int) -> IrrepTable:
    """The classical irrep table of D_N.

    One-dimensional: psi0 trivial, psi1 the reflection sign, and for even N
    also psi2 = (-1)^a and psi3 = (-1)^{a+b}. Two-dimensional tau^k for
    0 < k < N/2, diagonal on rotations and antidiagonal on reflections.
    """
    group = DihedralGroup(int(n))
    n = group.n
    order = group.order
    a = np.arange(order) % n
    b = np.arange(order) // n
    reps = [
        Representation("psi0", 1, np.ones((order, 1, 1), dtype=complex)),
        Representation(
            "psi1", 1, np.where(b == 0, 1.0, -1.0).astype(complex).reshape(order, 1, 1)
        ),
    ]
    if n % 2 == 0:
        sign_a = np.where(a % 2 == 0, 1.0, -1.0)
        sign_ab = np.where((a + b) % 2 == 0, 1.0, -1.0)
        reps.append(
            Representation("psi2", 1, sign_a.astype(complex).reshape(order, 1, 1))
        )
        reps.append(
            Representation("psi3", 1, sign_ab.astype(complex).reshape(order, 1, 1))
        )
    for k in range(1, (n + 1) // 2):
        mats = np.zeros((order, 2, 2), dtype=complex)
        for g in range(order):
            w_neg = cmath.exp(2j * math.pi * ((-k * a[g]) % n) / n)
            w_pos = cmath.exp(2j * math.pi * ((k * a[g]) % n) / n)
            if b[g] == 0:
                mats[g] = [[w_neg, 0.0], [0.0, w_pos]]
            else:
                mats[g] = [[0.0, w_neg], [w_pos, 0.0]]
        reps.append(Representation(f"tau{k}", 2, mats))
    return IrrepTable(group, tuple(reps))


def irrep_table_for(group: Group) -> IrrepTable:
    """Canonical table for any group that has one in this suite."""
    if isinstance(group, DihedralGroup):
        return dihedral_irreps(group.n)
    table = abelian_irreps(group)
    return table


def unitarize(rep: Representation) -> Representation:
    """Conjugate a homomorphism into GL(d) to a unitary representation.

    Builds the group-averaged inner product S = sum_g rho(g)^dag rho(g),
    Gram-Schmidts the standard basis under S, and rebases. The output has
    the same character as the input.
    """
    mats = rep.matrices
    d = rep.dim
    for g in range(mats.shape[0]):
        if abs(np.linalg.det(mats[g])) < 1e-12:
            raise ValueError(f"matrix for element {g} is singular")
    s = np.einsum("gki,gkj->ij", mats.conj(), mats)
    basis: list[np.ndarray] = []
    for k in range(d):
        v = np.zeros(d, dtype=complex)
        v[k] = 1.0
        for f in basis:
            v = v - (f.conj() @ s @ v) * f
        norm = math.sqrt((v.conj() @ s @ v).real)
        basis.append(v / norm)
    f_mat = np.column_stack(basis)
    f_inv = np.linalg.inv(f_mat)
    return Representation(rep.label, d, f_inv @ mats @ f_mat)


def change_basis(rep: Representation, u: np.ndarray) -> Representation:
    """Conjugate by a unitary: g -> U rho(g) U^dag."""
    u = np.asarray(u, dtype=complex)
    if u.shape != (rep.dim, rep.dim):
        raise ValueError(f"basis matrix shape {u.shape} does not match dim {rep.dim}")
    if np.max(np.abs(u.conj().T @ u - np.eye(rep.dim))) > MATRIX_TOL:
        raise ValueError("basis change matrix is not unitary")
    return Representation(rep.label, rep.dim, u @ rep.matrices @ u.conj().T)


def unitary2(theta: float, alpha: float, beta: float, gamma: float = 0.0) -> np.ndarray:
    """The general 2x2 unitary, parametrized by one angle and three phases."""
    c, s = math.cos(theta), math.sin(theta)
    return cmath.exp(1j * gamma) * np.array(
        [
            [c, s * cmath.exp(1j * alpha)],
            [s * cmath.exp(1j * beta), -c * cmath.exp(1j * (alpha + beta))],
        ],
        dtype=complex,
    )


def fit_unitary2(u: np.ndarray) -> tuple[float, float, float, float]:
    """Recover (theta, alpha, beta, gamma) with unitary2(...) == u."""
    u = np.asarray(u, dtype=complex)
    if u.shape != (2, 2):
        raise ValueError("expected a 2x2 matrix")
    if np.max(np.abs(u.conj().T @ u - np.eye(2))) > MATRIX_TOL:
        raise ValueError("matrix is not unitary")
    theta = math.atan2(abs(u[0, 1]), abs(u[0, 0]))
    if abs(u[0, 0]) > 1e-12:
        gamma = cmath.phase(u[0, 0])
    else:
        gamma = 0.0
    alpha = cmath.phase(u[0, 1]) - gamma if abs(u[0, 1]) > 1e-12 else 0.0
    beta = cmath.phase(u[1, 0]) - gamma if abs(u[1, 0]) > 1e-12 else 0.0
    return theta, alpha % (2 * math.pi), beta % (2 * math.pi), gamma % (2 * math.pi)


def rep_kernel(group: Group, rep: Representation) -> Subgroup:
    """Elements represented by the identity matrix (within tolerance)."""
    eye = np.eye(rep.dim)
    members = [
        g
        for g in group.elements()
        if np.max(np.abs(rep.matrices[g] - eye)) < MATRIX_TOL
    ]
    return make_subgroup(group, members)


@dataclass(frozen=True)
class TableReport:
    """Residuals of the classical identities for one irrep table."""

    group: str
    order: int
    dim_square_sum: int
    character_delta_residual: float
    dim_sum_residual: int
    schur_residual: float
    homomorphism_residual: float
    unitarity_residual: float

    @property
    def max_float_residual(self) -> float:
        return max(
            self.character_delta_residual,
            self.schur_residual,
            self.homomorphism_residual,
            self.unitarity_residual,
        )

    def ok(self, tol: float = MATRIX_TOL) -> bool:
        return self.dim_sum_residual == 0 and self.max_float_residual < tol

    def as_dict(self) -> dict:
        return {
            "group": self.group,
            "order": self.order,
            "dim_square_sum": self.dim_square_sum,
            "character_delta_residual": self.character_delta_residual,
            "dim_sum_residual": self.dim_sum_residual,
            "schur_residual": self.schur_residual,
            "homomorphism_residual": self.homomorphism_residual,
            "unitarity_residual": self.unitarity_residual,
        }


def _product_table(group: Group, a_idx: np.ndarray, b_idx: np.ndarray) -> np.ndarray:
    """Elementwise group.mul over index arrays, mixed-radix when abelian."""
    orders = cyclic_factors(group)
    if orders is None:
        return np.fromiter(
            (group.mul(int(a), int(b)) for a, b in zip(a_idx, b_idx)),
            dtype=np.int64,
            count=len(a_idx),
        )
    out = np.zeros(len(a_idx), dtype=np.int64)
    a, b = a_idx, b_idx
    place = 1
    for t in orders:
        out += ((a % t + b % t) % t) * place
        a, b = a // t, b // t
        place *= t
    return out


def validate_table(table: IrrepTable, pair_cap: int = 200_000) -> TableReport:
    """Check completeness, Schur orthogonality, homomorphism, unitarity.

    Reports residuals; never raises. Homomorphism pairs are subsampled
    deterministically above pair_cap.
    """
    group = table.group
    n = group.order
    dimsq = table.dim_total

    # sum_rho d_rho chi_rho(g) / |G| should be the indicator of the identity
    delta = np.zeros(n, dtype=complex)
    for r in table.irreps:
        delta += r.dim * r.characters
    delta /= n
    target = np.zeros(n)
    target[group.identity()] = 1.0
    character_delta = float(np.max(np.abs(delta - target)))

    # rows of the would-be Fourier matrix must be orthonormal
    rows = np.zeros((dimsq, n), dtype=complex)
    pos = 0
    for r in table.irreps:
        scale = math.sqrt(r.dim / n)
        block = r.matrices.reshape(n, r.dim * r.dim).T * scale
        rows[pos : pos + r.dim * r.dim] = block
        pos += r.dim * r.dim
    gram = rows @ rows.conj().T
    schur = float(np.max(np.abs(gram - np.eye(dimsq))))

    if n * n <= pair_cap:
        flat = np.arange(n * n, dtype=np.int64)
    else:
        step = max(1, (n * n) // pair_cap)
        flat = np.arange(0, n * n, step, dtype=np.int64)
    a_idx = flat // n
    b_idx = flat % n
    ab_idx = _product_table(group, a_idx, b_idx)
    homo = 0.0
    for r in table.irreps:
        prod = np.einsum("pij,pjk->pik", r.matrices[a_idx], r.matrices[b_idx])
        err = np.max(np.abs(r.matrices[ab_idx] - prod))
        homo = max(homo, float(err))

    unit = 0.0
    for r in table.irreps:
        eye = np.eye(r.dim)
        prod = np.einsum("gki,gkj->gij", r.matrices.conj(), r.matrices)
        unit = max(unit, float(np.max(np.abs(prod - eye))))

    return TableReport(
        group=group.describe(),
        order=n,
        dim_square_sum=dimsq,
        character_delta_residual=character_delta,
        dim_sum_residual=abs(n - dimsq),
        schur_residual=schur,
        homomorphism_residual=homo,
        unitarity_residual=unit,
    )


@dataclass(frozen=True)
class DihedralBasis:
    """Basis choice for the two-dimensional dihedral irreps.

    For each k the pair (lambda_k, mu_k) with lambda_k in [0,1] and mu_k in
    [0,2pi) fixes the column-probability profile of strong sampling; the
    realizing change-of-basis matrix is unitary2(theta_k, alpha_k, 0, 0)
    with theta_k = arcsin(lambda_k)/2 and alpha_k = mu_k + pi.
    """

    n: int
    lambdas: tuple[float, ...]
    mus: tuple[float, ...]

    def __post_init__(self):
        count = two_dim_count(self.n)
        object.__setattr__(self, "lambdas", tuple(float(x) for x in self.lambdas))
        object.__setattr__(self, "mus", tuple(float(x) for x in self.mus))
        if len(self.lambdas) != count or len(self.mus) != count:
            raise ValueError(
                f"need {count} (lambda, mu) pairs for dihedral:{self.n}, got "
                f"{len(self.lambdas)}/{len(self.mus)}"
            )
        for lam in self.lambdas:
            if not 0.0 <= lam <= 1.0:
                raise ValueError(f"lambda {lam} outside [0, 1]")
        for mu in self.mus:
            if not 0.0 <= mu < 2 * math.pi:
                raise ValueError(f"mu {mu} outside [0, 2pi)")

    def theta(self, k: int) -> float:
        return math.asin(self.lambdas[k - 1]) / 2

    def alpha(self, k: int) -> float:
        return (self.mus[k - 1] + math.pi) % (2 * math.pi)

    def matrix(self, k: int) -> np.ndarray:
        return unitary2(self.theta(k), self.alpha(k), 0.0, 0.0)


def two_dim_count(n: int) -> int:
    """Number of two-dimensional irreps of D_n."""
    return (n + 1) // 2 - 1 if n % 2 else n // 2 - 1


def identity_dihedral_basis(n: int) -> DihedralBasis:
    """lambda = 0: keeps the diagonal/antidiagonal matrices unchanged."""
    count = two_dim_count(n)
    return DihedralBasis(n, (0.0,) * count, (0.0,) * count)


def balanced_dihedral_basis(n: int) -> DihedralBasis:
    """lambda = 1, mu = pi: the Hadamard rebasing used by the phase solvers."""
    count = two_dim_count(n)
    return DihedralBasis(n, (1.0,) * count, (math.pi,) * count)


def change_dihedral_basis(table: IrrepTable, basis: DihedralBasis) -> IrrepTable:
    """Conjugate every two-dimensional irrep by the basis matrix for its k."""
    if not isinstance(table.group, DihedralGroup) or table.group.n != basis.n:
        raise ValueError("basis and table are for different dihedral groups")
    reps = []
    for r in table.irreps:
        if r.dim == 1:
            reps.append(r)
        else:
            k = int(r.label.removeprefix("tau"))
            reps.append(change_basis(r, basis.matrix(k)))
    return IrrepTable(table.group, tuple(reps))


def table_to_json(table: IrrepTable) -> dict:
    return {
        "group": table.group.describe(),
        "irreps": [
            {
                "label": r.label,
                "dim": r.dim,
                "matrices": [
                    [[z.real, z.imag] for z in mat.flatten()] for mat in r.matrices
                ],
            }
            for r in table.irreps
        ],
    }


def table_from_json(doc: dict) -> IrrepTable:
    group = parse_group(doc["group"])
    reps = []
    for item in doc["irreps"]:
        d = int(item["dim"])
        mats = np.array(
            [[complex(re, im) for re, im in mat] for mat in item["matrices"]],
            dtype=complex,
        ).reshape(group.order, d, d)
        reps.append(Representation(item["label"], d, mats))
    return IrrepTable(group, tuple(reps))
