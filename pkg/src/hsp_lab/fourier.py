"""Dense quantum Fourier transform over a finite group.

The transform is materialized as a |G| x |G| unitary: columns are indexed
by group elements, rows by the flat (irrep, row, column) basis of the
attached table, with entry sqrt(d_rho/|G|) * rho_ij(g). Gate-level
circuits are out of scope; everything is exact state-vector arithmetic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from hsp_lab.group_core import CapacityError, Group, cyclic_factors
from hsp_lab.rep_theory import MATRIX_TOL, IrrepTable

QFT_ORDER_CAP = 4096


@dataclass(frozen=True, eq=False)
class QftMatrix:
    group: Group
    table: IrrepTable
    matrix: np.ndarray

    @property
    def order(self) -> int:
        return self.group.order


def build_qft(
    group: Group, table: IrrepTable, unitarity_check_limit: int = 1024
) -> QftMatrix:
    """Assemble the Fourier matrix for a group with a full irrep table."""
    if group.order > QFT_ORDER_CAP:
        raise CapacityError(
            f"group order {group.order} above the dense-QFT cap {QFT_ORDER_CAP}"
        )
    if table.group.order != group.order or table.group.describe() != group.describe():
        raise ValueError("irrep table does not belong to this group")
    n = group.order
    if table.dim_total != n:
        raise ValueError(
            f"irrep table is incomplete: sum of squared dims {table.dim_total} != {n}"
        )
    matrix = np.zeros((n, n), dtype=complex)
    pos = 0
    for r in table.irreps:
        block = r.matrices.reshape(n, r.dim * r.dim).T * math.sqrt(r.dim / n)
        matrix[pos : pos + r.dim * r.dim] = block
        pos += r.dim * r.dim
    qft = QftMatrix(group, table, matrix)
    if n <= unitarity_check_limit:
        resid = unitarity_residual(qft)
        if resid > MATRIX_TOL:
            raise ValueError(f"table fails Fourier unitarity: residual {resid:.3e}")
    return qft


def unitarity_residual(qft: QftMatrix) -> float:
    n = qft.order
    gram = qft.matrix @ qft.matrix.conj().T
    return float(np.max(np.abs(gram - np.eye(n))))


def apply_qft(qft: QftMatrix, amplitudes, check_norm: bool = True) -> np.ndarray:
    """Fourier-transform a state vector given over the group basis."""
    arr = np.asarray(amplitudes, dtype=complex)
    if arr.shape != (qft.order,):
        raise ValueError(
            f"state has dimension {arr.shape}, expected ({qft.order},)"
        )
    if check_norm:
        norm = float(np.linalg.norm(arr))
        if abs(norm - 1.0) > MATRIX_TOL:
            raise ValueError(f"state is not normalized: |psi| = {norm}")
    return qft.matrix @ arr


def cyclic_qft_matrix(n: int) -> np.ndarray:
    """F_N with entries exp(2 pi i jk / N) / sqrt(N); symmetric."""
    j, k = np.meshgrid(np.arange(n), np.arange(n), indexing="ij")
    return np.exp(2j * np.pi * ((j * k) % n) / n) / math.sqrt(n)


def abelian_qft_tensor(group: Group) -> np.ndarray:
    """Tensor-product Fourier matrix for a product of cyclic factors.

    Matches build_qft on the abelian character table under the mixed-radix
    encoding (first factor least significant, hence rightmost in the
    Kronecker product).
    """
    ts = cyclic_factors(group)
    if ts is None:
        raise ValueError(f"{group.describe()} is not a product of cyclic factors")
    out = np.array([[1.0 + 0j]])
    for t in ts:
        out = np.kron(cyclic_qft_matrix(t), out)
    return out


def preparation_success_probability(order: int) -> Fraction:
    """Success chance of the comparator-postselection superposition gadget.

    Sampling ceil(log2 |G|) uniform bits and postselecting on reading an
    index below |G| succeeds with probability |G| / 2^ceil(log2 |G|),
    always above 1/2. The gadget itself is not simulated.
    """
    if order < 1:
        raise ValueError("order must be positive")
    bits = (order - 1).bit_length()
    return Fraction(order, 2**bits)
