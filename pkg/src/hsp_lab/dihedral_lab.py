"""Coset-state experiments and solvers for the dihedral groups.

Everything here runs over D_N with hidden subgroups from the H_r / H_{r,d}
family. The quantum side is simulated exactly: measurement outcomes are
drawn from closed-form or small state-vector distributions through an
explicit rng, so runs are reproducible and the solvers never peek at the
hidden slope except where the simulator itself must realize a draw.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .abelian_solver import InconsistentOracleError, solve_abelian
from .group_core import (
    CyclicGroup,
    DihedralGroup,
    DihedralSubgroup,
    subgroup_closure,
)
from .rep_theory import DihedralBasis, identity_dihedral_basis, two_dim_count, unitary2
from .sampling import Distribution, FsObservation, HidingOracle

DEFAULT_SIEVE_BUDGET = 10_000_000


def _check_slope(n: int, d: int) -> int:
    d = int(d)
    if not 0 <= d < n:
        raise ValueError(f"slope {d} outside [0, {n})")
    return d


@dataclass(frozen=True)
class PhaseState:
    """A two-level state labeled |psi_k> over Z_n.

    junk is None for a genuine phase state (|0> + e^{2 pi i k d / n}|1>)/sqrt(2);
    a junk bit c in {0, 1} records that the register actually holds the basis
    state |c> while the pipeline still believes the label k.
    """

    n: int
    k: int
    junk: int | None = None

    def __post_init__(self):
        if not 0 <= self.k < self.n:
            raise ValueError(f"label {self.k} outside [0, {self.n})")
        if self.junk not in (None, 0, 1):
            raise ValueError(f"junk bit must be None, 0 or 1, got {self.junk!r}")

    @property
    def genuine(self) -> bool:
        return self.junk is None


@dataclass(frozen=True)
class DcpState:
    """One output of the coset black box for slope d over Z_n.

    Uncorrupted, the registers hold (|x>|0> + |x + d>|1>)/sqrt(2), both
    amplitudes 1/sqrt(2). Corrupted, they hold the basis state |x>|bit>.
    """

    n: int
    x: int
    d: int
    corrupted: bool = False
    bit: int = 0

    def __post_init__(self):
        if not 0 <= self.x < self.n:
            raise ValueError(f"offset {self.x} outside [0, {self.n})")
        _check_slope(self.n, self.d)
        if self.bit not in (0, 1):
            raise ValueError(f"register bit must be 0 or 1, got {self.bit!r}")

    def state_vector(self) -> np.ndarray:
        """Amplitudes as an (n, 2) array indexed by (value, register bit)."""
        amps = np.zeros((self.n, 2), dtype=complex)
        if self.corrupted:
            amps[self.x, self.bit] = 1.0
        else:
            amps[self.x, 0] = 1 / math.sqrt(2)
            amps[(self.x + self.d) % self.n, 1] = 1 / math.sqrt(2)
        return amps


@dataclass(frozen=True)
class EhSample:
    """One two-register coset-circuit measurement: k in Z_n, j in {0, 1}."""

    k: int
    j: int


@dataclass(frozen=True)
class OverlapWindow:
    """A length-N' window of oracle values F_a^b = {f(a + i, b) : i < N'}.

    N = 4m and N' = 2m, so each window covers exactly half the rotation
    values and two windows overlap in a computable number of values.
    """

    m: int
    a: int
    b: int = 0

    def __post_init__(self):
        if self.m < 1:
            raise ValueError(f"window parameter must be positive, got {self.m}")
        if not 0 <= self.a < 4 * self.m:
            raise ValueError(f"offset {self.a} outside [0, {4 * self.m})")
        if self.b not in (0, 1):
            raise ValueError(f"register bit must be 0 or 1, got {self.b!r}")

    @property
    def n(self) -> int:
        return 4 * self.m

    @property
    def nprime(self) -> int:
        return 2 * self.m

    def support(self, d: int) -> frozenset:
        """Value ids covered by the window when the hidden slope is d.

        Values are canonicalized to the rotation representative of their
        coset: f(x, b) and f(x - d, 0) name the same value when b = 1.
        """
        _check_slope(self.n, d)
        return frozenset((self.a + i - self.b * d) % self.n for i in range(self.nprime))


def dihedral_slope(oracle: HidingOracle) -> int:
    """The d with hidden subgroup {(0,0), (d,1)}, read from one level set.

    Scans the oracle's full level set of the identity; this is simulator
    setup, not part of any solver's query count.
    """
    group = oracle.group
    if not isinstance(group, DihedralGroup):
        raise ValueError(f"expected a dihedral group, got {group.describe()}")
    n = group.order // 2
    v0 = oracle(0)
    level = [g for g in range(group.order) if oracle(g) == v0]
    if len(level) != 2 or level[0] != 0 or level[1] < n:
        raise InconsistentOracleError(
            "oracle does not hide a single-reflection subgroup {(0,0), (d,1)}"
        )
    return level[1] - n


def dcp_blackbox(n: int, d: int, rng, failure_p: float | None = None) -> DcpState:
    """Draw one coset-pair state for slope d, optionally with failures.

    With failure parameter p, the draw is corrupted with probability
    1 / (log2 n)^p and then holds a uniformly random basis state.
    """
    if n < 2:
        raise ValueError(f"modulus must be at least 2, got {n}")
    _check_slope(n, d)
    x = rng.randrange(n)
    if failure_p is not None:
        base = math.log2(n)
        prob = 1.0 if base <= 1.0 else min(1.0, base ** (-float(failure_p)))
        if rng.random() < prob:
            return DcpState(n, x, d, corrupted=True, bit=rng.randrange(2))
    return DcpState(n, x, d)


def dcp_from_oracle(oracle: HidingOracle, rng, failure_p: float | None = None) -> DcpState:
    """Coset-pair draw with the slope taken from a hiding oracle."""
    group = oracle.group
    d = dihedral_slope(oracle)
    return dcp_blackbox(group.order // 2, d, rng, failure_p)


def psi_from_dcp(state: DcpState, rng) -> PhaseState:
    """Fourier the value register of a coset pair and measure it.

    The measured label k is uniform either way; a corrupted input leaves a
    basis state behind, recorded as the junk bit.
    """
    k = rng.randrange(state.n)
    if state.corrupted:
        return PhaseState(state.n, k, junk=state.bit)
    return PhaseState(state.n, k)


def hadamard_measure(state: PhaseState, d: int, rng) -> int:
    """Measure a phase state in the |+>/|-> basis; 1 has weight sin^2(pi k d / n)."""
    if state.genuine:
        _check_slope(state.n, d)
        p1 = math.sin(math.pi * state.k * d / state.n) ** 2
    else:
        p1 = 0.5
    return 1 if rng.random() < p1 else 0


def combine(s1: PhaseState, s2: PhaseState, rng) -> PhaseState:
    """Merge two phase states into |psi_{k1 + k2}> or |psi_{k1 - k2}>, each half.

    Physically this is a controlled-not from the first register onto the
    second followed by measuring the second; both inputs are consumed.
    Junk inputs propagate: the believed label follows the measured branch
    while the surviving register keeps (or becomes) a basis state.
    """
    if s1.n != s2.n:
        raise ValueError(f"cannot combine states over Z_{s1.n} and Z_{s2.n}")
    n = s1.n
    if s1.junk is not None and s2.junk is not None:
        outcome = (s1.junk + s2.junk) % 2
        junk = s1.junk
    else:
        outcome = rng.randrange(2)
        if s1.junk is not None:
            junk = s1.junk
        elif s2.junk is not None:
            junk = 0 if outcome == s2.junk else 1
        else:
            junk = None
    k = (s1.k + s2.k) % n if outcome == 0 else (s1.k - s2.k) % n
    return PhaseState(n, k, junk=junk)


def eh_distribution(n: int, d: int) -> Distribution:
    """Exact law of the two-register coset circuit, outcomes (k, j).

    P(k, 0) = cos^2(pi k d / n) / n and P(k, 1) = sin^2(pi k d / n) / n,
    so the k marginal is uniform.
    """
    _check_slope(n, d)
    out = {}
    for k in range(n):
        c = math.cos(math.pi * k * d / n) ** 2
        out[(k, 0)] = c / n
        out[(k, 1)] = (1.0 - c) / n
    return Distribution(out)


def eh_circuit_distribution(n: int, d: int, x: int = 0) -> Distribution:
    """The same law via the explicit state vector of the circuit.

    Starts from the coset pair at offset x, Fouriers the value register,
    Hadamards the bit register, and reads off squared amplitudes.
    """
    amps = DcpState(n, x % n, _check_slope(n, d)).state_vector()
    amps = np.fft.ifft(amps, axis=0) * math.sqrt(n)
    hadamard = np.array([[1.0, 1.0], [1.0, -1.0]]) / math.sqrt(2)
    amps = amps @ hadamard.T
    probs = np.abs(amps) ** 2
    return Distribution({(k, j): float(probs[k, j]) for k in range(n) for j in (0, 1)})


def eh_sample(n: int, d: int, rng) -> EhSample:
    """One draw from the coset-circuit law: k uniform, then j Bernoulli."""
    _check_slope(n, d)
    k = rng.randrange(n)
    p1 = math.sin(math.pi * k * d / n) ** 2
    return EhSample(k, 1 if rng.random() < p1 else 0)


@dataclass(frozen=True)
class EhResult:
    """Slope estimate from coset-circuit sampling."""

    d: int
    m: int
    tie: bool = False
    shortcut: str | None = None


def eh_solve(
    n: int,
    oracle: HidingOracle,
    rng,
    m: int | None = None,
    multiplier: int = 16,
) -> EhResult:
    """Recover d for a hidden {(0,0), (d,1)} by likelihood over circuit samples.

    The self-paired slopes d = 0 and d = n/2 are settled by one oracle
    comparison each. Otherwise m samples (default multiplier * ceil(log2 n))
    are scored against every candidate in [1, n/2] by negative log
    likelihood, and the winner is disambiguated from n - winner with one
    final comparison. Ties go to the smallest candidate and are flagged.
    """
    group = oracle.group
    if not isinstance(group, DihedralGroup) or group.n != n:
        raise ValueError(f"oracle group does not match dihedral:{n}")
    v0 = oracle(0)
    if oracle(n) == v0:
        return EhResult(0, 0, shortcut="zero")
    if n % 2 == 0 and oracle(n + n // 2) == v0:
        return EhResult(n // 2, 0, shortcut="half")
    if m is None:
        m = multiplier * max(1, math.ceil(math.log2(n)))
    d_true = dihedral_slope(oracle)
    samples = [eh_sample(n, d_true, rng) for _ in range(m)]
    best = math.inf
    best_d = 0
    tie = False
    for cand in range(1, n // 2 + 1):
        score = 0.0
        for s in samples:
            c = math.cos(math.pi * s.k * cand / n) ** 2
            p = c if s.j == 0 else 1.0 - c
            if p <= 1e-300:
                score = math.inf
                break
            score -= math.log(p)
        if score < best:
            best, best_d, tie = score, cand, False
        elif score == best:
            tie = True
    if oracle(n + best_d) != v0:
        best_d = (n - best_d) % n
    return EhResult(best_d, m, tie=tie)


def strong_to_eh(n: int, obs: FsObservation, rng) -> EhSample:
    """Rewrite a strong-sampling outcome (balanced basis) as a circuit sample.

    One-dimensional labels map to the self-paired k values; a two-dimensional
    (tau_k, column) outcome becomes (k, column) or (n - k, column) by a fair
    coin.
    """
    label = obs.irrep
    if label == "psi0":
        return EhSample(0, 0)
    if label == "psi1":
        return EhSample(0, 1)
    if label == "psi2":
        return EhSample(n // 2, 0)
    if label == "psi3":
        return EhSample(n // 2, 1)
    k = int(label.removeprefix("tau"))
    j = int(obs.col)
    return EhSample(k if rng.randrange(2) == 0 else (n - k) % n, j)


def strong_to_eh_distribution(n: int, strong: Distribution) -> Distribution:
    """Push a strong-sampling law through the label rewrite exactly."""
    out: dict = {}
    for (label, col), p in strong.items():
        if label == "psi0":
            key_list = [((0, 0), p)]
        elif label == "psi1":
            key_list = [((0, 1), p)]
        elif label == "psi2":
            key_list = [((n // 2, 0), p)]
        elif label == "psi3":
            key_list = [((n // 2, 1), p)]
        else:
            k = int(label.removeprefix("tau"))
            key_list = [((k, col), p / 2), (((n - k) % n, col), p / 2)]
        for key, q in key_list:
            out[key] = out.get(key, 0.0) + q
    return Distribution(out)


def _phase_vector(state: PhaseState, d: int) -> np.ndarray:
    if state.genuine:
        return np.array([1.0, cmath.exp(2j * math.pi * state.k * d / state.n)]) / math.sqrt(2)
    vec = np.zeros(2, dtype=complex)
    vec[state.junk] = 1.0
    return vec


def dcp_to_strong(state: DcpState, basis: DihedralBasis, rng) -> FsObservation:
    """Turn one coset-pair draw into a strong-sampling outcome in the basis.

    The believed label k picks the branch: k = 0 reports psi0 outright,
    k = n/2 measures the parity in the |+>/|-> basis and reports psi2/psi3,
    and any other k is measured with the basis unitary for min(k, n - k),
    mirrored for k above n/2, mapping measured row 0 to column 0.
    """
    n = state.n
    if basis.n != n:
        raise ValueError(f"basis is for dihedral:{basis.n}, state is over Z_{n}")
    psi = psi_from_dcp(state, rng)
    k = psi.k
    if k == 0:
        return FsObservation("psi0", col=0)
    if n % 2 == 0 and k == n // 2:
        j = hadamard_measure(psi, state.d, rng)
        return FsObservation(f"psi{2 + j}", col=0)
    k0 = min(k, n - k)
    alpha = basis.alpha(k0) if k <= n // 2 else -basis.alpha(k0)
    u = unitary2(basis.theta(k0), alpha, 0.0, 0.0)
    vec = u @ _phase_vector(psi, state.d)
    p0 = float(abs(vec[0]) ** 2)
    j = 0 if rng.random() < p0 else 1
    return FsObservation(f"tau{k0}", col=j)


def dcp_to_strong_distribution(n: int, d: int, basis: DihedralBasis) -> Distribution:
    """Exact law of dcp_to_strong on uncorrupted draws for slope d."""
    _check_slope(n, d)
    if basis.n != n:
        raise ValueError(f"basis is for dihedral:{basis.n}, not dihedral:{n}")
    out: dict = {("psi0", 0): 1.0 / n}
    if n % 2 == 0:
        parity = "psi2" if d % 2 == 0 else "psi3"
        out[(parity, 0)] = out.get((parity, 0), 0.0) + 1.0 / n
        other = "psi3" if parity == "psi2" else "psi2"
        out.setdefault((other, 0), 0.0)
        out.setdefault(("psi1", 0), 0.0)
    else:
        out.setdefault(("psi1", 0), 0.0)
    for k in range(1, n):
        if k == 0 or (n % 2 == 0 and k == n // 2):
            continue
        k0 = min(k, n - k)
        alpha = basis.alpha(k0) if k <= n // 2 else -basis.alpha(k0)
        u = unitary2(basis.theta(k0), alpha, 0.0, 0.0)
        vec = u @ _phase_vector(PhaseState(n, k), d)
        p0 = float(abs(vec[0]) ** 2)
        out[(f"tau{k0}", 0)] = out.get((f"tau{k0}", 0), 0.0) + p0 / n
        out[(f"tau{k0}", 1)] = out.get((f"tau{k0}", 1), 0.0) + (1.0 - p0) / n
    return Distribution(out)


def dihedral_subgroup(n: int, r: int, d: int | None = None) -> DihedralSubgroup:
    """The subgroup H_r (d is None) or H_{r,d} of D_n, built from generators."""
    if n % r:
        raise ValueError(f"{r} does not divide {n}")
    if d is not None and not 0 <= d < r:
        raise ValueError(f"reflection offset {d} outside [0, {r})")
    group = DihedralGroup(n)
    gens = (r % n,) if d is None else (r % n, n + d)
    return DihedralSubgroup(r=r, d=d, subgroup=subgroup_closure(group, gens))


def _two_dim_support(n: int, r: int) -> set[int]:
    """The k with nonzero two-dimensional mass: multiples of n/r below n/2."""
    step = n // r
    return {lam * step for lam in range(1, (r + 1) // 2)}


def dihedral_analytic(
    n: int, sub: DihedralSubgroup, basis: DihedralBasis | None = None
) -> dict:
    """Closed-form weak and strong sampling laws for a dihedral subgroup.

    Weak mass is basis independent. Strong columns for H_{r,d} follow
    (1/r)(1 + (-1)^{j+1} lambda_k cos(2 pi k d / n + mu_k)) on the
    supported k; H_r is flat 1/r per column there in every basis.
    """
    r, d = sub.r, sub.d
    if n % r:
        raise ValueError(f"{r} does not divide {n}")
    if basis is None:
        basis = identity_dihedral_basis(n)
    if basis.n != n:
        raise ValueError(f"basis is for dihedral:{basis.n}, not dihedral:{n}")
    support = _two_dim_support(n, r)
    weak: dict = {}
    strong: dict = {}

    def put(label: str, value: Fraction) -> None:
        weak[label] = float(value)
        strong[(label, 0)] = float(value)

    if d is None:
        put("psi0", Fraction(1, 2 * r))
        put("psi1", Fraction(1, 2 * r))
        if n % 2 == 0:
            half = Fraction(1, 2 * r) if r % 2 == 0 else Fraction(0)
            put("psi2", half)
            put("psi3", half)
    else:
        put("psi0", Fraction(1, r))
        put("psi1", Fraction(0))
        if n % 2 == 0:
            even_r = r % 2 == 0
            put("psi2", Fraction(1, r) if even_r and d % 2 == 0 else Fraction(0))
            put("psi3", Fraction(1, r) if even_r and d % 2 == 1 else Fraction(0))
    for k in range(1, two_dim_count(n) + 1):
        label = f"tau{k}"
        if k not in support:
            weak[label] = 0.0
            strong[(label, 0)] = 0.0
            strong[(label, 1)] = 0.0
            continue
        weak[label] = float(Fraction(2, r))
        if d is None:
            strong[(label, 0)] = float(Fraction(1, r))
            strong[(label, 1)] = float(Fraction(1, r))
        else:
            lam = basis.lambdas[k - 1]
            mu = basis.mus[k - 1]
            angle = 2 * math.pi * float(Fraction(k * d, n)) + mu
            swing = lam * math.cos(angle)
            strong[(label, 0)] = (1.0 - swing) / r
            strong[(label, 1)] = (1.0 + swing) / r
    return {"weak": Distribution(weak), "strong": Distribution(strong)}


@dataclass(frozen=True)
class DihedralReduction:
    """Outcome of collapsing D_n to D_r and solving the reflection part."""

    n: int
    r: int
    group: DihedralGroup
    oracle: HidingOracle
    subgroup: DihedralSubgroup
    slope: int | None
    eh: EhResult | None


def dihedral_reduce(n: int, oracle: HidingOracle, rng, m: int | None = None) -> DihedralReduction:
    """Identify any hidden subgroup of D_n via the rotation quotient.

    First solves the cyclic instance on the rotation half to find r, then
    restricts the oracle to the copy of D_r on {0..r-1} x {0,1}. The
    reflection slope comes from the restricted coset-circuit solver, and a
    single comparison f(d, 1) = f(0, 0) settles H_{r,d} against H_r.
    """
    group = oracle.group
    if not isinstance(group, DihedralGroup) or group.n != n:
        raise ValueError(f"oracle group does not match dihedral:{n}")
    rotations = HidingOracle(CyclicGroup(n), lambda a: oracle(a))
    rot_sub = solve_abelian(CyclicGroup(n), rotations, rng)
    r = n // rot_sub.order
    reduced_group = DihedralGroup(r)
    reduced = HidingOracle(
        reduced_group, lambda g: oracle(g % r + n * (g // r))
    )
    eh: EhResult | None
    try:
        eh = eh_solve(r, reduced, rng, m)
        d0 = eh.d
    except InconsistentOracleError:
        eh = None
        d0 = 0
    if oracle(n + d0 % n) == oracle(0):
        sub = dihedral_subgroup(n, r, d0 % r)
        return DihedralReduction(n, r, reduced_group, reduced, sub, d0 % r, eh)
    return DihedralReduction(n, r, reduced_group, reduced, dihedral_subgroup(n, r), None, eh)


@dataclass(frozen=True)
class SieveLevel:
    """Per-level sieve statistics: modulus bits, draws, and parity votes."""

    bits: int
    drawn: int
    votes: tuple[int, ...]
    parity: int
    leftover: int


@dataclass(frozen=True)
class KuperbergResult:
    """Sieve outcome: recovered slope, low bits found, and query accounting."""

    n: int
    d: int | None
    bits: tuple[int, ...]
    queries: int
    classical_queries: int
    complete: bool
    attempts: int
    levels: tuple[SieveLevel, ...]


def _sieve_pass(pool: list[PhaseState], c: int, rng) -> list[PhaseState]:
    """Pair states with equal labels mod 2^c until no residue collides.

    Each pairing consumes two states for one whose label is divisible by
    2^c on the plus branch; minus-branch outputs recycle into later passes.
    """
    modulus = 1 << c
    while True:
        waiting: dict[int, PhaseState] = {}
        out: list[PhaseState] = []
        changed = False
        for st in pool:
            res = st.k % modulus
            if res == 0:
                out.append(st)
            elif res in waiting:
                out.append(combine(waiting.pop(res), st, rng))
                changed = True
            else:
                waiting[res] = st
        pool = out + list(waiting.values())
        if not changed:
            return pool


def _level_parity(
    m: int,
    d: int,
    rng,
    remaining: int,
    batch: int | None,
    votes: int,
    failure_p: float | None,
    poisoned: bool,
):
    """Sieve one level of 2^m down to the top label and vote on the parity."""
    n = 1 << m
    target = n // 2
    if batch is None:
        batch = 4 * math.ceil(2 ** (2 * math.sqrt(m)))
    step = max(1, math.ceil(math.sqrt(m)))
    stages = sorted(set(range(step, m - 1, step)) | ({m - 1} if m >= 2 else set()))
    pool: list[PhaseState] = []
    measured: list[int] = []
    drawn = 0
    while len(measured) < votes and drawn < remaining:
        burst = min(batch, remaining - drawn)
        for _ in range(burst):
            if poisoned:
                state = DcpState(n, rng.randrange(n), 0, corrupted=True, bit=rng.randrange(2))
            else:
                state = dcp_blackbox(n, d, rng, failure_p)
            pool.append(psi_from_dcp(state, rng))
        drawn += burst
        for c in stages:
            pool = _sieve_pass(pool, c, rng)
        keep = []
        for st in pool:
            if st.k == target and len(measured) < votes:
                measured.append(hadamard_measure(st, d if not poisoned else 0, rng))
            elif st.k != 0:
                keep.append(st)
        pool = keep
    ones = sum(measured)
    parity = 1 if 2 * ones > len(measured) else 0
    level = SieveLevel(m, drawn, tuple(measured), parity, len(pool))
    return parity, drawn, level, len(measured) == votes


def kuperberg(
    n: int,
    oracle: HidingOracle,
    rng,
    budget: int = DEFAULT_SIEVE_BUDGET,
    batch: int | None = None,
    votes: int = 8,
    failure_p: float | None = None,
) -> KuperbergResult:
    """Recover the slope hidden in D_{2^n} by the pairing sieve, bit by bit.

    Each level distills phase states whose label is the top power of two,
    reads the current slope's parity off a majority of Hadamard votes, and
    descends to the half-size instance with slope (d - parity) / 2. A wrong
    vote silently poisons the descent, so every assembled slope is checked
    against the oracle classically and the sieve restarts while the query
    budget lasts.
    """
    group = oracle.group
    if not isinstance(group, DihedralGroup) or group.n != (1 << n):
        raise ValueError(f"oracle group does not match dihedral:{1 << n}")
    d_top = dihedral_slope(oracle)
    v0 = oracle(0)
    queries = 0
    classical = 0
    attempts = 0
    last_levels: list[SieveLevel] = []
    last_bits: list[int] = []
    while queries < budget:
        attempts += 1
        bits: list[int] = []
        levels: list[SieveLevel] = []
        d_cur = d_top
        poisoned = False
        exhausted = False
        for m in range(n, 0, -1):
            parity, used, level, ok = _level_parity(
                m, d_cur, rng, budget - queries, batch, votes, failure_p, poisoned
            )
            queries += used
            levels.append(level)
            if not ok:
                exhausted = True
                break
            bits.append(parity)
            if not poisoned and (d_cur - parity) % 2 != 0:
                poisoned = True
            if not poisoned and m > 1:
                d_cur = ((d_cur - parity) // 2) % (1 << (m - 1))
        last_levels, last_bits = levels, bits
        if exhausted:
            break
        d_hat = sum(b << i for i, b in enumerate(bits))
        classical += 1
        if oracle((1 << n) + d_hat) == v0:
            return KuperbergResult(
                n, d_hat, tuple(bits), queries, classical, True, attempts, tuple(levels)
            )
    return KuperbergResult(
        n, None, tuple(last_bits), queries, classical, False, attempts, tuple(last_levels)
    )


def two_point_index_map(m: int, n: int, v) -> int:
    """Pack an n-vector with entries below 2m into one index, radix 2m.

    The first entry is least significant, matching the product-group
    encoding, so distinct vectors land on distinct indices.
    """
    if m < 1:
        raise ValueError(f"offset bound must be positive, got {m}")
    entries = [int(x) for x in v]
    if len(entries) != n:
        raise ValueError(f"expected {n} entries, got {len(entries)}")
    radix = 2 * m
    total = 0
    for i, x in enumerate(entries):
        if not 0 <= x < radix:
            raise ValueError(f"entry {x} at position {i} outside [0, {radix})")
        total += x * radix**i
    return total


@dataclass(frozen=True)
class EliminationProfile:
    """Certain-elimination accounting for one strong sample over D_{2^n}.

    per_k[k] counts the slope candidates ruled out for sure when a
    two-level outcome lands on label k; the two parity labels each rule
    out half the slopes. expected_total is the exact mean count per sample.
    """

    n: int
    per_k: dict[int, int]
    one_dim: int
    expected_total: Fraction

    def enumerated_total(self) -> Fraction:
        """The same mean assembled term by term from the outcome weights."""
        modulus = 1 << self.n
        total = 2 * Fraction(self.one_dim, modulus)
        for count in self.per_k.values():
            total += Fraction(count, 2 * modulus)
        return total


def elimination_profile(n: int) -> EliminationProfile:
    """Eliminations per outcome for modulus 2^n: label k rules out 2^{v2(k)}."""
    if n < 2:
        raise ValueError(f"need at least 2 bits, got {n}")
    modulus = 1 << n
    per_k = {k: k & -k for k in range(1, modulus)}
    return EliminationProfile(
        n=n,
        per_k=per_k,
        one_dim=modulus // 2,
        expected_total=1 + Fraction(n, 4),
    )


def _pair_weights(psi: np.ndarray, phi: np.ndarray) -> tuple[float, float, float]:
    """Diagonal / symmetric / antisymmetric weights of a product state."""
    diag = float(np.sum(np.abs(psi * phi) ** 2))
    sym = 0.0
    anti = 0.0
    size = len(psi)
    for x in range(size):
        for y in range(x + 1, size):
            cross = psi[x] * phi[y]
            swapped = psi[y] * phi[x]
            sym += abs(cross + swapped) ** 2 / 2
            anti += abs(cross - swapped) ** 2 / 2
    return diag, sym, anti


@dataclass(frozen=True)
class ParityExperiment:
    """Swap-test readout of the slope parity from the two coset sums."""

    n: int
    d: int
    exact: Fraction
    gram: Fraction
    trials: int
    hits: int

    @property
    def empirical(self) -> float:
        return self.hits / self.trials if self.trials else 0.0


def parity_superposition_experiment(n: int, d: int, trials: int, rng) -> ParityExperiment:
    """Measure the two even/odd coset sums in the antisymmetric sector.

    The states sum f over the even rotations at register bits 0 and 1; the
    antisymmetric weight is exactly (d mod 2) / 2, and the Gram field holds
    the same number recomputed from the explicit indicator vectors.
    """
    modulus = 1 << n
    if n < 2:
        raise ValueError(f"need at least 2 bits, got {n}")
    _check_slope(modulus, d)
    half = modulus // 2
    left = {(2 * i) % modulus for i in range(half)}
    right = {(2 * i - d) % modulus for i in range(half)}
    mismatched = 0
    for x in range(modulus):
        for y in range(x + 1, modulus):
            if ((x in left) and (y in right)) != ((y in left) and (x in right)):
                mismatched += 1
    gram = Fraction(mismatched, 2 * half * half)
    exact = Fraction(d % 2, 2)
    p = float(exact)
    hits = sum(1 for _ in range(trials) if rng.random() < p)
    return ParityExperiment(n, d, exact, gram, trials, hits)


def perturbed_parity_probabilities(n: int, d: int, j1: int, j2: int) -> dict:
    """Sector weights when the coset sums carry phase gradients j1 and j2."""
    modulus = 1 << n
    _check_slope(modulus, d)
    half = modulus // 2
    psi = np.zeros(modulus, dtype=complex)
    phi = np.zeros(modulus, dtype=complex)
    for i in range(half):
        psi[(2 * i) % modulus] += cmath.exp(2j * math.pi * j1 * i / half) / math.sqrt(half)
        phi[(2 * i - d) % modulus] += cmath.exp(2j * math.pi * j2 * i / half) / math.sqrt(half)
    diag, sym, anti = _pair_weights(psi, phi)
    return {"diagonal": diag, "symmetric": sym, "antisymmetric": anti}


@dataclass(frozen=True)
class WindowExperiment:
    """Swap-test comparison of two half-length value windows."""

    m: int
    a: int
    d: int
    l: int
    exact: Fraction
    gram: Fraction
    samples: int
    hits: int
    tolerance: float
    l_estimate: float
    blind_interval: tuple[float, float]
    decision: str

    @property
    def n(self) -> int:
        return 4 * self.m

    @property
    def nprime(self) -> int:
        return 2 * self.m

    @property
    def empirical(self) -> float:
        return self.hits / self.samples if self.samples else 0.0


def window_overlap_experiment(
    m: int,
    d: int,
    a: int,
    rng,
    trials: int | None = None,
    p: int = 1,
) -> WindowExperiment:
    """Estimate the overlap of F_0^0 with F_a^1 from swap-test statistics.

    The non-antisymmetric weight is exactly (1 + (l / N')^2) / 2 where l is
    the overlap count, so the sample frequency inverts to an l estimate.
    The decision compares that estimate against N'/2 with Hoeffding margin
    t = ceil(log2 N)^-p over ceil(log2 N)^{2p+1} samples by default;
    estimates inside the +-4t band around N'/2 stay undecided.
    """
    base = OverlapWindow(m, 0, 0)
    window = OverlapWindow(m, a, 1)
    nprime = base.nprime
    overlap = base.support(d) & window.support(d)
    l = len(overlap)
    exact = Fraction(1, 2) * (1 + Fraction(l, nprime) ** 2)
    # Pair census of the two indicator vectors: l equal-value pairs, l(l-1)/2
    # doubly-matched unordered pairs, and nprime^2 - l^2 singly-matched
    # ordered pairs make up the diagonal and symmetric weight.
    gram = (
        Fraction(l, nprime**2)
        + Fraction(l * (l - 1), nprime**2)
        + Fraction(nprime**2 - l * l, 2 * nprime**2)
    )
    bits = max(1, math.ceil(math.log2(base.n)))
    samples = trials if trials is not None else bits ** (2 * p + 1)
    tol = float(bits) ** (-p)
    prob = float(exact)
    hits = sum(1 for _ in range(samples) if rng.random() < prob)
    p_hat = hits / samples if samples else 0.0
    l_estimate = nprime * math.sqrt(max(0.0, 2 * p_hat - 1.0))
    low = nprime / 2 * math.sqrt(max(0.0, 1.0 - 4 * tol))
    high = nprime / 2 * math.sqrt(1.0 + 4 * tol)
    if l_estimate < low:
        decision = "below"
    elif l_estimate > high:
        decision = "above"
    else:
        decision = "blind"
    return WindowExperiment(
        m=m,
        a=a,
        d=d,
        l=l,
        exact=exact,
        gram=gram,
        samples=samples,
        hits=hits,
        tolerance=tol,
        l_estimate=l_estimate,
        blind_interval=(low, high),
        decision=decision,
    )
