"""Hiding oracles, coset states, and weak/strong Fourier sampling.

Distributions are available twice over: analytically, from the averaged
subgroup matrix rho(H) = (1/sqrt|H|) sum_h rho(h), and empirically, by
exact state-vector simulation of the standard method (uniform g0, coset
state, Fourier transform, projective measurement).
"""

from __future__ import annotations

import math
from bisect import bisect_right
from dataclasses import dataclass
from typing import Callable, Hashable

import numpy as np

from hsp_lab.fourier import QftMatrix, apply_qft, build_qft
from hsp_lab.group_core import (
    Group,
    Subgroup,
    coset_labels,
    make_subgroup,
)
from hsp_lab.rep_theory import MATRIX_TOL, IrrepTable, Representation, rep_kernel

PROB_TOL = 1e-12


@dataclass(frozen=True, eq=False)
class HidingOracle:
    """A function on group indices, constant exactly on left cosets of H."""

    group: Group
    evaluate: Callable[[int], Hashable]
    hidden: Subgroup | None = None

    def __call__(self, g: int) -> Hashable:
        return self.evaluate(g)


@dataclass(frozen=True, eq=False)
class StateVector:
    """Exact complex amplitudes over a labeled basis."""

    basis: tuple
    amplitudes: np.ndarray

    def __post_init__(self):
        amps = np.asarray(self.amplitudes, dtype=complex)
        if amps.shape != (len(self.basis),):
            raise ValueError(
                f"amplitude count {amps.shape} does not match basis size "
                f"{len(self.basis)}"
            )
        norm = float(np.linalg.norm(amps))
        if abs(norm - 1.0) > MATRIX_TOL:
            raise ValueError(f"state vector is not normalized: |psi| = {norm}")
        object.__setattr__(self, "amplitudes", amps)

    def probabilities(self) -> np.ndarray:
        return np.abs(self.amplitudes) ** 2

    def support(self) -> list:
        return [b for b, a in zip(self.basis, self.amplitudes) if abs(a) > 1e-14]


@dataclass(frozen=True, eq=False)
class Distribution:
    """Probability map over hashable outcome labels."""

    outcomes: dict

    def __post_init__(self):
        cleaned = {}
        total = 0.0
        for key, p in self.outcomes.items():
            p = float(p)
            if p < -PROB_TOL:
                raise ValueError(f"negative probability {p} at {key!r}")
            cleaned[key] = p
            total += p
        if abs(total - 1.0) > 1e-9:
            raise ValueError(f"probabilities sum to {total}, not 1")
        object.__setattr__(self, "outcomes", cleaned)

    def prob(self, key) -> float:
        return self.outcomes.get(key, 0.0)

    def __len__(self) -> int:
        return len(self.outcomes)

    def items(self):
        return self.outcomes.items()

    def tv_distance(self, other: "Distribution") -> float:
        keys = set(self.outcomes) | set(other.outcomes)
        return 0.5 * sum(abs(self.prob(k) - other.prob(k)) for k in keys)

    def marginal(self, key_fn) -> "Distribution":
        out: dict = {}
        for key, p in self.outcomes.items():
            new = key_fn(key)
            out[new] = out.get(new, 0.0) + p
        return Distribution(out)

    def sample(self, rng):
        u = rng.random()
        acc = 0.0
        last = None
        for key, p in self.outcomes.items():
            acc += p
            last = key
            if u < acc:
                return key
        return last

    def max_abs_diff(self, other: "Distribution") -> float:
        keys = set(self.outcomes) | set(other.outcomes)
        return max(abs(self.prob(k) - other.prob(k)) for k in keys)


@dataclass(frozen=True)
class FsObservation:
    """One Fourier-sampling measurement; row/column/value per sampling mode."""

    irrep: str
    row: int | None = None
    col: int | None = None
    value: Hashable | None = None


def oracle_from_subgroup(group: Group, sub: Subgroup) -> HidingOracle:
    """The canonical hiding oracle: g -> rank of min element of its coset."""
    labels = coset_labels(group, sub)
    return HidingOracle(group, labels.__getitem__, hidden=sub)


def coset_state(group: Group, sub: Subgroup, g0: int) -> StateVector:
    """Uniform superposition over the left coset g0 H."""
    group.check_index(g0)
    amps = np.zeros(group.order, dtype=complex)
    scale = 1.0 / math.sqrt(sub.order)
    for h in sub.elements:
        amps[group.mul(g0, h)] = scale
    return StateVector(tuple(range(group.order)), amps)


def sample_coset(group: Group, oracle: HidingOracle, rng):
    """Standard method: measure the oracle register, keep the coset state.

    The post-measurement state is synthesized directly from the oracle's
    level set of a uniform g0; the joint register of the full circuit is
    never materialized.
    """
    g0 = rng.randrange(group.order)
    y = oracle(g0)
    support = [g for g in group.elements() if oracle(g) == y]
    amps = np.zeros(group.order, dtype=complex)
    amps[support] = 1.0 / math.sqrt(len(support))
    return StateVector(tuple(range(group.order)), amps), y


def rep_average(rep: Representation, sub: Subgroup) -> np.ndarray:
    """rho(H) = (1/sqrt|H|) sum_{h in H} rho(h); hermitian, scaled projector."""
    total = rep.matrices[list(sub.elements)].sum(axis=0)
    return total / math.sqrt(sub.order)


def weak_fs_distribution(group: Group, table: IrrepTable, sub: Subgroup) -> Distribution:
    """P(rho) = (d_rho / |G|) * ||rho(H)||_F^2; basis independent."""
    out = {}
    for r in table.irreps:
        m = rep_average(r, sub)
        out[r.label] = r.dim / group.order * float(np.sum(np.abs(m) ** 2))
    return Distribution(out)


def strong_fs_distribution(
    group: Group, table: IrrepTable, sub: Subgroup
) -> Distribution:
    """Column marginal P(rho, ., j) = (d_rho / |G|) * ||rho(H)_j||^2.

    Outcomes are keyed (label, j) with 0-based column j; the row index
    carries no information and is uniform given (rho, j).
    """
    out = {}
    for r in table.irreps:
        m = rep_average(r, sub)
        for j in range(r.dim):
            out[(r.label, j)] = (
                r.dim / group.order * float(np.sum(np.abs(m[:, j]) ** 2))
            )
    return Distribution(out)


def joint_fs_distribution(
    group: Group, table: IrrepTable, sub: Subgroup
) -> Distribution:
    """Full joint P(rho, i, j, k) = d_rho |H| / |G|^2 * |rho(x_k H)_ij|^2.

    k is the canonical coset label and x_k its minimal representative, so
    k coincides with the value of the canonical hiding oracle.
    """
    labels = coset_labels(group, sub)
    count = group.order // sub.order
    reps_of: list[int | None] = [None] * count
    for g in range(group.order):
        if reps_of[labels[g]] is None:
            reps_of[labels[g]] = g
    out = {}
    scale = sub.order / group.order**2
    for r in table.irreps:
        avg = rep_average(r, sub)
        for k in range(count):
            m = r.matrices[reps_of[k]] @ avg
            for i in range(r.dim):
                for j in range(r.dim):
                    out[(r.label, i, j, k)] = r.dim * scale * abs(m[i, j]) ** 2
    return Distribution(out)


class FourierSampler:
    """Exact simulator of repeated Fourier sampling against one oracle.

    Coset states are cached per oracle value: a fresh draw costs one
    uniform g0, one cache lookup, and one inverse-CDF search.
    """

    def __init__(self, qft: QftMatrix, oracle: HidingOracle, mode: str = "strong"):
        if mode not in ("weak", "strong", "joint"):
            raise ValueError(f"unknown sampling mode {mode!r}")
        self.qft = qft
        self.oracle = oracle
        self.mode = mode
        self.group = qft.group
        self._flat = qft.table.flat_labels()
        self._cum: dict = {}

    def _outcome_cdf(self, y) -> np.ndarray:
        cached = self._cum.get(y)
        if cached is None:
            group = self.group
            support = [g for g in group.elements() if self.oracle(g) == y]
            amps = np.zeros(group.order, dtype=complex)
            amps[support] = 1.0 / math.sqrt(len(support))
            transformed = apply_qft(self.qft, amps)
            cached = np.cumsum(np.abs(transformed) ** 2)
            self._cum[y] = cached
        return cached

    def draw(self, rng) -> FsObservation:
        g0 = rng.randrange(self.group.order)
        y = self.oracle(g0)
        cdf = self._outcome_cdf(y)
        idx = min(bisect_right(cdf, rng.random()), len(cdf) - 1)
        label, i, j = self._flat[idx]
        if self.mode == "weak":
            return FsObservation(label)
        if self.mode == "strong":
            return FsObservation(label, i, j)
        return FsObservation(label, i, j, y)


def sample_fourier(
    qft: QftMatrix, oracle: HidingOracle, mode: str, rng
) -> FsObservation:
    """One-shot draw; build a FourierSampler for repeated use."""
    return FourierSampler(qft, oracle, mode).draw(rng)


@dataclass(frozen=True)
class SizeVerdict:
    kind: str  # "proper" or "whole"
    confidence: float
    values: tuple


def size_probe(oracle: HidingOracle, k: int, rng) -> SizeVerdict:
    """Distinguish H = G from proper H by comparing k random oracle values.

    Two distinct values certify a proper subgroup; k equal values leave
    H = G with confidence 1 - 2^-k.
    """
    if k < 1:
        raise ValueError("need at least one repetition")
    group = oracle.group
    values = tuple(oracle(rng.randrange(group.order)) for _ in range(k))
    if any(v != values[0] for v in values):
        return SizeVerdict("proper", 1.0, values)
    return SizeVerdict("whole", 1.0 - 2.0 ** (-k), values)


def solve_normal_hsp(
    group: Group,
    table: IrrepTable,
    oracle: HidingOracle,
    c: float = 4.0,
    rng=None,
    qft: QftMatrix | None = None,
) -> Subgroup:
    """Recover a normal hidden subgroup as an intersection of irrep kernels.

    Applies ceil(c * log2 |G|) rounds of weak Fourier sampling and
    intersects the kernels of the observed irreps. For non-normal H this
    converges to the largest normal subgroup of G contained in H.
    """
    if rng is None:
        raise ValueError("an rng is required")
    if group.order == 1:
        return make_subgroup(group, [group.identity()])
    if qft is None:
        qft = build_qft(group, table)
    sampler = FourierSampler(qft, oracle, mode="weak")
    rounds = math.ceil(c * math.log2(group.order))
    kernels: dict[str, frozenset] = {}
    current = frozenset(group.elements())
    for _ in range(rounds):
        obs = sampler.draw(rng)
        kern = kernels.get(obs.irrep)
        if kern is None:
            kern = frozenset(rep_kernel(group, qft.table.irrep(obs.irrep)).elements)
            kernels[obs.irrep] = kern
        current &= kern
    return make_subgroup(group, sorted(current))
