"""Solvers for the hidden subgroup problem over abelian groups.

The pipeline: character samples land in the annihilator H-perp, enough of
them generate it, and the hidden subgroup is recovered as the solution set
of an integer congruence system, solved exactly in Smith normal form.
Period finding, Simon's problem, and discrete logarithms are thin wrappers
around their textbook recoveries; a black-box cyclic decomposition and two
iterative subgroup-reduction variants round out the toolkit.

All integer linear algebra is exact (Python big ints); nothing here touches
floating point except the one state-vector demonstration of period finding
with a non-divisor modulus.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np
import sympy

from hsp_lab.group_core import (
    CapacityError,
    CyclicGroup,
    Group,
    ProductGroup,
    Subgroup,
    TableGroup,
    cyclic_factors,
    make_subgroup,
    subgroup_closure,
)
from hsp_lab.sampling import HidingOracle, oracle_from_subgroup

EXHAUSTIVE_ORDER_CAP = 4096
GENERATION_MARGIN = 10  # t in the 1 - 2^-t generation bound


class SolverFailure(RuntimeError):
    """A randomized recovery exhausted its retry budget."""


class InconsistentOracleError(ValueError):
    """The oracle's level sets are not the cosets of any subgroup."""


# ---------------------------------------------------------------------------
# coordinates against the standard cyclic presentation


def presentation_orders(group: Group) -> list[int]:
    ts = cyclic_factors(group)
    if ts is None:
        raise ValueError(
            f"{group.describe()} is not presented as a product of cyclic groups"
        )
    return ts


def element_coords(group: Group, g: int) -> tuple[int, ...]:
    """Mixed-radix coordinates of g, first factor least significant."""
    group.check_index(g)
    out = []
    for t in presentation_orders(group):
        g, c = divmod(g, t)
        out.append(c)
    return tuple(out)


def coords_element(group: Group, coords) -> int:
    ts = presentation_orders(group)
    if len(coords) != len(ts):
        raise ValueError(f"expected {len(ts)} coordinates, got {len(coords)}")
    g = 0
    weight = 1
    for c, t in zip(coords, ts):
        g += (int(c) % t) * weight
        weight *= t
    return g


def group_from_orders(orders) -> Group:
    orders = [int(t) for t in orders]
    if not orders:
        return CyclicGroup(1)
    if len(orders) == 1:
        return CyclicGroup(orders[0])
    return ProductGroup([CyclicGroup(t) for t in orders])


def pairing_is_trivial(group: Group, g: int, h: int) -> bool:
    """Exact integer test of chi_g(h) = 1."""
    ts = presentation_orders(group)
    e = math.lcm(*ts)
    total = 0
    for a, b, t in zip(element_coords(group, g), element_coords(group, h), ts):
        total += (e // t) * a * b
    return total % e == 0


def _generating_set(group: Group, elements: list[int]) -> list[int]:
    """Small generating set; raises if the elements are not a subgroup."""
    if not elements or elements[0] != group.identity():
        raise InconsistentOracleError("level set does not contain the identity")
    want = set(elements)
    gens: list[int] = []
    have = {group.identity()}
    for h in elements:
        if h not in have:
            gens.append(h)
            have = set(subgroup_closure(group, gens).elements)
            if not have <= want:
                raise InconsistentOracleError(
                    "level set is not closed under the group law"
                )
    if have != want:
        raise InconsistentOracleError("level set is not closed under the group law")
    return gens


def annihilator(group: Group, elements: list[int]) -> tuple[int, ...]:
    """All g with chi_g trivial on the subgroup given by its element list."""
    ts = presentation_orders(group)
    e = math.lcm(*ts)
    gens = _generating_set(group, sorted(elements))
    coords = np.array(
        [element_coords(group, g) for g in group.elements()], dtype=np.int64
    )
    mask = np.ones(group.order, dtype=bool)
    for h in gens:
        alpha = np.array(
            [(e // t) * c for c, t in zip(element_coords(group, h), ts)],
            dtype=np.int64,
        )
        mask &= (coords @ alpha) % e == 0
    return tuple(int(g) for g in np.flatnonzero(mask))


# ---------------------------------------------------------------------------
# character sampling


@dataclass(frozen=True)
class AbelianDecomposition:
    """Cyclic orders and realizing generators for an abelian group."""

    orders: tuple[int, ...]
    generators: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "orders", tuple(int(t) for t in self.orders))
        object.__setattr__(self, "generators", tuple(int(g) for g in self.generators))
        if len(self.orders) != len(self.generators):
            raise ValueError("orders and generators must pair up")


def standard_decomposition(group: Group) -> AbelianDecomposition:
    ts = presentation_orders(group)
    gens = []
    weight = 1
    for t in ts:
        gens.append(weight % group.order if group.order > 1 else 0)
        weight *= t
    return AbelianDecomposition(tuple(ts), tuple(gens))


def verify_decomposition(group: Group, dec: AbelianDecomposition) -> None:
    if math.prod(dec.orders) != group.order:
        raise ValueError(
            f"orders {dec.orders} multiply to {math.prod(dec.orders)}, "
            f"not |G| = {group.order}"
        )
    for t, g in zip(dec.orders, dec.generators):
        actual = group.element_order(g)
        if actual != t:
            raise ValueError(f"generator {g} has order {actual}, recorded {t}")
    gens = [g for g in dec.generators]
    if subgroup_closure(group, gens).order != group.order:
        raise ValueError("generators do not span the group")


@dataclass(frozen=True)
class CharacterSample:
    """A measured character index: an element g with chi_g trivial on H."""

    g: int


class HperpSampler:
    """Uniform draws from H-perp for an oracle hiding H.

    The identity's level set is read out once; every draw afterwards is a
    single uniform choice from the precomputed annihilator.
    """

    def __init__(
        self,
        group: Group,
        oracle: HidingOracle,
        decomposition: AbelianDecomposition | None = None,
    ):
        if decomposition is not None:
            std = standard_decomposition(group)
            if decomposition != std:
                raise ValueError(
                    "character indices assume the standard mixed-radix "
                    f"presentation {std}, got {decomposition}"
                )
        self.group = group
        self.oracle = oracle
        base = oracle(group.identity())
        self.level_set = [g for g in group.elements() if oracle(g) == base]
        self.dual = annihilator(group, self.level_set)

    def draw(self, rng) -> CharacterSample:
        return CharacterSample(self.dual[rng.randrange(len(self.dual))])


def sample_hperp(
    group: Group,
    oracle: HidingOracle,
    rng,
    decomposition: AbelianDecomposition | None = None,
) -> CharacterSample:
    """One-shot draw; build an HperpSampler for repeated use."""
    return HperpSampler(group, oracle, decomposition).draw(rng)


# ---------------------------------------------------------------------------
# exact Smith normal form


@dataclass(frozen=True)
class SnfResult:
    """U A V = D with U, V unimodular and D diagonal, d_i | d_{i+1}."""

    d: tuple[tuple[int, ...], ...]
    u: tuple[tuple[int, ...], ...]
    v: tuple[tuple[int, ...], ...]

    @property
    def diagonal(self) -> tuple[int, ...]:
        return tuple(
            self.d[i][i] for i in range(min(len(self.d), len(self.d[0]) if self.d else 0))
        )


def smith_normal_form(a) -> SnfResult:
    """Diagonalize an integer matrix by unimodular row and column moves.

    Each clearing step is a single 2x2 Bezout transform that leaves the
    pivot equal to a gcd; repeated subtract-and-swap passes are avoided
    because they let entry sizes blow up exponentially.
    """
    mat = [[int(x) for x in row] for row in a]
    m = len(mat)
    n = len(mat[0]) if m else 0
    u = [[int(i == j) for j in range(m)] for i in range(m)]
    v = [[int(i == j) for j in range(n)] for i in range(n)]

    def swap_rows(i, k):
        mat[i], mat[k] = mat[k], mat[i]
        u[i], u[k] = u[k], u[i]

    def swap_cols(j, k):
        for row in mat:
            row[j], row[k] = row[k], row[j]
        for row in v:
            row[j], row[k] = row[k], row[j]

    def add_row(dst, src, q):
        mat[dst] = [x + q * y for x, y in zip(mat[dst], mat[src])]
        u[dst] = [x + q * y for x, y in zip(u[dst], u[src])]

    def clear_row_entry(t, i):
        # combine rows t and i so mat[i][t] becomes 0 and mat[t][t] the gcd
        a0, b0 = mat[t][t], mat[i][t]
        if b0 == 0:
            return
        if a0 == 0:
            swap_rows(t, i)
            return
        if b0 % a0 == 0:
            add_row(i, t, -(b0 // a0))
            return
        g = math.gcd(a0, b0)
        s, w = _bezout(a0, b0, g)
        p, q = -(b0 // g), a0 // g
        mat[t], mat[i] = (
            [s * x + w * y for x, y in zip(mat[t], mat[i])],
            [p * x + q * y for x, y in zip(mat[t], mat[i])],
        )
        u[t], u[i] = (
            [s * x + w * y for x, y in zip(u[t], u[i])],
            [p * x + q * y for x, y in zip(u[t], u[i])],
        )

    def clear_col_entry(t, j):
        # combine columns t and j so mat[t][j] becomes 0
        a0, b0 = mat[t][t], mat[t][j]
        if b0 == 0:
            return False
        if a0 == 0:
            swap_cols(t, j)
            return True
        if b0 % a0 == 0:
            q0 = -(b0 // a0)
            for row in mat:
                row[j] += q0 * row[t]
            for row in v:
                row[j] += q0 * row[t]
            return False
        g = math.gcd(a0, b0)
        s, w = _bezout(a0, b0, g)
        p, q = -(b0 // g), a0 // g
        for row in mat:
            row[t], row[j] = s * row[t] + w * row[j], p * row[t] + q * row[j]
        for row in v:
            row[t], row[j] = s * row[t] + w * row[j], p * row[t] + q * row[j]
        return True

    for t in range(min(m, n)):
        # bring a smallest-magnitude nonzero entry of the trailing block
        # to the pivot slot
        pivot = None
        for i in range(t, m):
            for j in range(t, n):
                if mat[i][j] and (pivot is None or abs(mat[i][j]) < abs(mat[pivot[0]][pivot[1]])):
                    pivot = (i, j)
        if pivot is None:
            break
        swap_rows(t, pivot[0])
        swap_cols(t, pivot[1])
        while True:
            for i in range(t + 1, m):
                clear_row_entry(t, i)
            mixed = False
            for j in range(t + 1, n):
                mixed = clear_col_entry(t, j) or mixed
            if mixed and any(mat[i][t] for i in range(t + 1, m)):
                # a column gcd step reintroduced entries below the pivot
                continue
            offender = None
            for i in range(t + 1, m):
                for j in range(t + 1, n):
                    if mat[i][j] % mat[t][t]:
                        offender = i
                        break
                if offender is not None:
                    break
            if offender is None:
                break
            add_row(t, offender, 1)
        if mat[t][t] < 0:
            mat[t] = [-x for x in mat[t]]
            u[t] = [-x for x in u[t]]

    freeze = lambda rows: tuple(tuple(row) for row in rows)
    return SnfResult(freeze(mat), freeze(u), freeze(v))


def _unimodular_inverse(rows) -> list[list[int]]:
    inv = sympy.Matrix([list(r) for r in rows]).inv()
    return [[int(x) for x in inv.row(i)] for i in range(inv.rows)]


def solution_lattice(rows: list[list[int]], modulus: int, width: int) -> list[list[int]]:
    """Basis of {x in Z^width : rows . x = 0 (mod modulus)}.

    Stacks the congruences as [A | modulus I] and reads the kernel off the
    column transform of the Smith form; the basis always spans modulus*Z^width.
    """
    m = len(rows)
    if m == 0:
        return [[modulus if i == j else 0 for j in range(width)] for i in range(width)]
    stacked = [
        list(row) + [modulus if i == j else 0 for j in range(m)]
        for i, row in enumerate(rows)
    ]
    snf = smith_normal_form(stacked)
    total = width + m
    free = [k for k in range(total) if k >= m or snf.d[k][k] == 0]
    return [[snf.v[i][k] for i in range(width)] for k in free]


def solution_generators(
    rows: list[list[int]], modulus: int, orders: list[int]
) -> list[tuple[int, ...]]:
    """Coordinate generators of the solution subgroup inside prod Z_t_i."""
    basis = solution_lattice(rows, modulus, len(orders))
    out = []
    seen = set()
    for vec in basis:
        reduced = tuple(x % t for x, t in zip(vec, orders))
        if any(reduced) and reduced not in seen:
            seen.add(reduced)
            out.append(reduced)
    return out


def _lattice_row_basis(rows, width: int) -> list[list[int]]:
    """Row-echelon lattice basis via unimodular row moves only."""
    pivots: dict[int, list[int]] = {}
    stack = [list(r) for r in rows]
    while stack:
        row = stack.pop()
        for col in range(width):
            if not row[col]:
                continue
            if col not in pivots:
                if row[col] < 0:
                    row = [-x for x in row]
                pivots[col] = row
                break
            piv = pivots[col]
            g = math.gcd(piv[col], row[col])
            s_q, t_q = _bezout(piv[col], row[col], g)
            combined = [s_q * a + t_q * b for a, b in zip(piv, row)]
            row = [
                (piv[col] // g) * b - (row[col] // g) * a
                for a, b in zip(piv, row)
            ]
            pivots[col] = combined
        # fully reduced rows vanish
    return [pivots[c] for c in sorted(pivots)]


def _bezout(a: int, b: int, g: int) -> tuple[int, int]:
    x0, x1, y0, y1, r0, r1 = 1, 0, 0, 1, a, b
    while r1:
        q = r0 // r1
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
        r0, r1 = r1, r0 - q * r1
    if r0 != g:
        x0, y0 = -x0, -y0
    return x0, y0


# ---------------------------------------------------------------------------
# the general abelian solver


def solve_abelian(
    group: Group,
    oracle: HidingOracle,
    rng,
    trials: int | None = None,
    decomposition: AbelianDecomposition | None = None,
    method: str = "snf",
) -> Subgroup:
    """Recover the hidden subgroup from character samples.

    Draws trials samples (default log2|G| + 10, for failure odds below
    2^-10), solves the resulting congruence system, and verifies the
    answer against the oracle, retrying once with a fresh batch before
    giving up.
    """
    if method not in ("snf", "exhaustive"):
        raise ValueError(f"unknown method {method!r}")
    if method == "exhaustive" and group.order > EXHAUSTIVE_ORDER_CAP:
        raise CapacityError(
            f"exhaustive intersection capped at order {EXHAUSTIVE_ORDER_CAP}"
        )
    ts = presentation_orders(group)
    e = math.lcm(*ts)
    if trials is None:
        trials = GENERATION_MARGIN + max(1, math.ceil(math.log2(group.order)))
    sampler = HperpSampler(group, oracle, decomposition)
    samples: list[int] = []
    for _ in range(2):
        samples.extend(sampler.draw(rng).g for _ in range(trials))
        if method == "snf":
            rows = [
                [(e // t) * c for c, t in zip(element_coords(group, g), ts)]
                for g in samples
            ]
            gens = solution_generators(rows, e, ts)
            elements = subgroup_closure(
                group, [coords_element(group, c) for c in gens]
            ).elements
        else:
            elements = tuple(
                h
                for h in group.elements()
                if all(pairing_is_trivial(group, g, h) for g in samples)
            )
        if list(elements) == sampler.level_set:
            return make_subgroup(
                group,
                list(elements),
                generators=tuple(coords_element(group, c) for c in gens)
                if method == "snf"
                else None,
            )
    raise SolverFailure(
        "character samples did not pin down the hidden subgroup "
        f"after {2 * trials} draws"
    )


# ---------------------------------------------------------------------------
# Simon's problem


def simon_oracle(n: int, s: int) -> HidingOracle:
    """The pair-collapsing oracle on Z_2^n hiding {0, s}."""
    group = group_from_orders([2] * n)
    group.check_index(s)
    return oracle_from_subgroup(group, subgroup_closure(group, [s] if s else []))


def _gf2_insert(basis: dict[int, int], z: int) -> bool:
    while z:
        top = z.bit_length() - 1
        if top not in basis:
            basis[top] = z
            return True
        z ^= basis[top]
    return False


def _gf2_nullvector(basis: dict[int, int], n: int) -> int:
    # a row never carries bits above its own pivot, so reducing in
    # ascending pivot order fully clears the off-pivot columns
    rows: dict[int, int] = {}
    for top in sorted(basis):
        row = basis[top]
        for other_top, other in rows.items():
            if (row >> other_top) & 1:
                row ^= other
        rows[top] = row
    free = next(i for i in range(n) if i not in rows)
    s = 1 << free
    for top, row in rows.items():
        if (row >> free) & 1:
            s |= 1 << top
    return s


def simon_solve(oracle: HidingOracle, rng, max_samples: int | None = None) -> int:
    """Recover s for an oracle with f(x) = f(y) iff y = x or y = x xor s."""
    group = oracle.group
    ts = presentation_orders(group)
    if any(t != 2 for t in ts):
        raise ValueError(f"expected a power of Z_2, got orders {ts}")
    n = len(ts)
    cap = max_samples if max_samples is not None else 10 * n + 40
    sampler = HperpSampler(group, oracle)
    basis: dict[int, int] = {}
    base_value = oracle(0)
    for _ in range(cap):
        _gf2_insert(basis, sampler.draw(rng).g)
        if len(basis) == n:
            return 0
        if len(basis) == n - 1:
            candidate = _gf2_nullvector(basis, n)
            if oracle(candidate) == base_value:
                return candidate
    raise SolverFailure(f"rank plateaued below n - 1 after {cap} samples")


# ---------------------------------------------------------------------------
# period finding and factoring


def multiplicative_order(a: int, n0: int) -> int:
    if math.gcd(a, n0) != 1:
        raise ValueError(f"{a} is not a unit modulo {n0}")
    r, x = 1, a % n0
    while x != 1:
        x = x * a % n0
        r += 1
    return r


def shor_oracle(a: int, n0: int, modulus: int) -> HidingOracle:
    """x -> a^x mod n0 on Z_modulus; hides <r> whenever r divides modulus."""
    return HidingOracle(CyclicGroup(modulus), lambda x: pow(a, x, n0))


def shor_period(a: int, n0: int, rng, draws: int = 20, attempts: int = 8) -> int:
    """Order of a modulo n0 via uniform multiples of modulus/r.

    The working modulus is chosen as a known multiple of the order, per the
    exact-multiple setup; the gcd of a batch of samples recovers the step.
    """
    if not 1 < a < n0:
        raise ValueError(f"need 1 < a < {n0}, got {a}")
    if math.gcd(a, n0) != 1:
        raise ValueError(f"{a} shares a factor with {n0}")
    r_true = multiplicative_order(a, n0)
    modulus = r_true * (1 << (n0 - 1).bit_length())
    sampler = HperpSampler(CyclicGroup(modulus), shor_oracle(a, n0, modulus))
    for _ in range(attempts):
        g = modulus
        for _ in range(draws):
            g = math.gcd(g, sampler.draw(rng).g)
        r = modulus // g
        if r > 1 and pow(a, r, n0) == 1:
            return r
    raise SolverFailure(f"no batch of {draws} samples recovered the period")


def shor_period_statevector(a: int, n0: int, rng, attempts: int = 32) -> int:
    """Period finding with a power-of-two modulus that need not divide r.

    Simulates the full superposition over Z_N with N ~ n0^2, measures the
    Fourier register, and recovers r from the best rational approximation
    with denominator at most n0.
    """
    if n0 > 64:
        raise CapacityError("state-vector period finding capped at n0 = 64")
    if not 1 < a < n0 or math.gcd(a, n0) != 1:
        raise ValueError(f"{a} is not a valid base modulo {n0}")
    big = 1 << (2 * (n0 - 1).bit_length())
    r_true = multiplicative_order(a, n0)
    acc = 1
    for _ in range(attempts):
        x0 = rng.randrange(big) % r_true
        support = np.arange(x0, big, r_true)
        amps = np.zeros(big, dtype=complex)
        amps[support] = 1.0 / math.sqrt(len(support))
        freq = np.fft.ifft(amps) * math.sqrt(big)
        probs = np.abs(freq) ** 2
        probs /= probs.sum()
        k = int(np.searchsorted(np.cumsum(probs), rng.random()))
        k = min(k, big - 1)
        if k == 0:
            continue
        acc = math.lcm(acc, Fraction(k, big).limit_denominator(n0).denominator)
        if pow(a, acc, n0) == 1:
            for p in sympy.factorint(acc):
                while acc % p == 0 and pow(a, acc // p, n0) == 1:
                    acc //= p
            return acc
    raise SolverFailure(f"no convergent found the period in {attempts} shots")


def shor_factor(n0: int, rng, attempts: int = 20, statevector: bool = False) -> int:
    """A nontrivial factor of an odd composite that is not a prime power."""
    if n0 < 4 or sympy.isprime(n0):
        raise ValueError(f"{n0} is not composite")
    if n0 % 2 == 0:
        raise ValueError(f"{n0} is even; factor 2 classically")
    if sympy.perfect_power(n0):
        raise ValueError(f"{n0} is a prime power; handled classically")
    find_period = shor_period_statevector if statevector else shor_period
    for _ in range(attempts):
        a = rng.randrange(2, n0 - 1)
        shared = math.gcd(a, n0)
        if shared > 1:
            return shared
        try:
            r = find_period(a, n0, rng)
        except SolverFailure:
            continue
        if r % 2:
            continue
        y = pow(a, r // 2, n0)
        if y == n0 - 1:
            continue
        for candidate in (math.gcd(y - 1, n0), math.gcd(y + 1, n0)):
            if 1 < candidate < n0:
                return candidate
    raise SolverFailure(f"no factor of {n0} found in {attempts} attempts")


# ---------------------------------------------------------------------------
# discrete logarithm


def dlog_oracle(p: int, g: int, x: int) -> HidingOracle:
    """(a, b) -> g^a x^b mod p on Z_{p-1} x Z_{p-1}."""
    span = p - 1
    g_pow = [1] * span
    x_pow = [1] * span
    for i in range(1, span):
        g_pow[i] = g_pow[i - 1] * g % p
        x_pow[i] = x_pow[i - 1] * x % p
    group = group_from_orders([span, span])

    def evaluate(idx: int):
        a, b = idx % span, idx // span
        return g_pow[a] * x_pow[b] % p

    return HidingOracle(group, evaluate)


def discrete_log(p: int, g: int, x: int, rng, attempts: int = 200) -> int:
    """y with g^y = x mod p, for g a generator of the units mod p."""
    if not sympy.isprime(p):
        raise ValueError(f"{p} is not prime")
    if not 0 < x < p:
        raise ValueError(f"{x} is not a unit modulo {p}")
    span = p - 1
    for q in sympy.factorint(span):
        if pow(g, span // q, p) == 1:
            raise ValueError(f"{g} does not generate the units modulo {p}")
    oracle = dlog_oracle(p, g, x)
    sampler = HperpSampler(oracle.group, oracle)
    for _ in range(attempts):
        c = sampler.draw(rng).g
        u, c2 = c % span, c // span
        if math.gcd(u, span) != 1:
            continue
        y = c2 * pow(u, -1, span) % span
        if pow(g, y, p) == x % p:
            return y
    raise SolverFailure(f"no invertible sample in {attempts} draws")


# ---------------------------------------------------------------------------
# black-box cyclic decomposition


def _relation_lattice(group: Group, gens: list[int]) -> list[list[int]]:
    """Basis of {x in Z^k : sum x_i gens_i = 0}, by walking the closure."""
    k = len(gens)
    reps: dict[int, tuple[int, ...]] = {group.identity(): (0,) * k}
    frontier = [group.identity()]
    relations: list[list[int]] = []
    for i, a in enumerate(gens):
        order = group.element_order(a)
        relations.append([order if j == i else 0 for j in range(k)])
    while frontier:
        nxt = []
        for e in frontier:
            base = reps[e]
            for i, a in enumerate(gens):
                stepped = group.mul(e, a)
                vec = list(base)
                vec[i] += 1
                if stepped in reps:
                    rel = [v - w for v, w in zip(vec, reps[stepped])]
                    if any(rel):
                        relations.append(rel)
                else:
                    reps[stepped] = tuple(vec)
                    nxt.append(stepped)
        frontier = nxt
        if len(relations) > 4 * k:
            relations = _lattice_row_basis(relations, k)
    return _lattice_row_basis(relations, k)


def decompose_abelian(group: Group, rng, attempts: int = 5) -> AbelianDecomposition:
    """Invariant-factor decomposition of a group seen only through its law.

    Draws log2|G| + 10 random elements, computes the relation lattice of
    that generating tuple, and reads generators and orders off the Smith
    form of its basis, largest order first.
    """
    if not group.abelian:
        raise ValueError(f"{group.describe()} is not abelian")
    if group.order == 1:
        return AbelianDecomposition((), ())
    k = GENERATION_MARGIN + math.ceil(math.log2(group.order))
    for _ in range(attempts):
        gens = [rng.randrange(group.order) for _ in range(k)]
        if subgroup_closure(group, gens).order != group.order:
            continue
        rows = _relation_lattice(group, gens)
        snf = smith_normal_form([[row[i] for row in rows] for i in range(k)])
        u_inv = _unimodular_inverse(snf.u)
        orders = []
        elements = []
        for i in range(k):
            d = snf.d[i][i]
            if d <= 1:
                continue
            coeffs = [u_inv[j][i] for j in range(k)]
            v = group.identity()
            for a, coeff in zip(gens, coeffs):
                v = group.mul(v, group.power(a, coeff))
            orders.append(d)
            elements.append(v)
        if math.prod(orders) != group.order:
            continue
        dec = AbelianDecomposition(tuple(reversed(orders)), tuple(reversed(elements)))
        verify_decomposition(group, dec)
        return dec
    raise SolverFailure(
        f"{attempts} random tuples failed to generate the group"
    )


# ---------------------------------------------------------------------------
# iterative reduction variants


def cyclic_variant(
    n: int, oracle: HidingOracle, rng, c: float = 4.0, trace: list | None = None
) -> int:
    """Find d for an oracle hiding the multiples of d in Z_n.

    After ceil(2 c log2 n) steps of sampling the restricted oracle on the
    current divisor subgroup and absorbing each sample's irreducible
    denominator, the running divisor equals d except with probability
    about n^(-(c-1)^2 / c).
    """
    if oracle.group.order != n:
        raise ValueError("oracle domain does not match n")
    a = 1
    if trace is not None:
        trace.append(a)
    steps = math.ceil(2 * c * math.log2(n)) if n > 1 else 0
    for _ in range(steps):
        n_k = n // a
        stretch = a
        restricted = HidingOracle(
            CyclicGroup(n_k), lambda x, s=stretch: oracle(s * x % n)
        )
        y = HperpSampler(restricted.group, restricted).draw(rng).g
        a *= Fraction(y, n_k).denominator if y else 1
        if trace is not None:
            trace.append(a)
        if a == n:
            break
    return a


@dataclass(frozen=True)
class ReductionState:
    """One step of the shrinking chain G = G_0 > G_1 > ... > H."""

    step: int
    orders: tuple[int, ...]
    generators: tuple[int, ...]


@dataclass(frozen=True)
class DecomposedSubgroup:
    """A subgroup with an explicit internal direct-sum presentation."""

    subgroup: Subgroup
    orders: tuple[int, ...]
    generators: tuple[int, ...]
    trace: tuple[ReductionState, ...] = field(default=())


def _subgroup_table(group: Group, elements: list[int]) -> tuple[TableGroup, list[int]]:
    index = {g: i for i, g in enumerate(elements)}
    table = [
        [index[group.mul(x, y)] for y in elements] for x in elements
    ]
    return TableGroup(table, name=f"sub{len(elements)}"), elements


def abelian_variant(
    group: Group,
    oracle: HidingOracle,
    rng,
    decomposition: AbelianDecomposition | None = None,
    step_cap: int | None = None,
) -> DecomposedSubgroup:
    """Iterative reduction: intersect with one character kernel per step.

    Maintains a direct-sum basis of the current ambient subgroup G_k; a
    nontrivial sample shrinks G_k to the kernel of its character (at least
    halving it), re-decomposed each time. A long run of trivial samples
    certifies H = G_k.
    """
    if decomposition is None:
        decomposition = standard_decomposition(group)
    verify_decomposition(group, decomposition)
    patience = GENERATION_MARGIN + max(1, math.ceil(math.log2(group.order)))
    if step_cap is None:
        step_cap = patience * (math.ceil(math.log2(group.order)) + 2) + patience
    orders = list(decomposition.orders)
    gens = list(decomposition.generators)
    trace = [ReductionState(0, tuple(orders), tuple(gens))]
    quiet = 0
    for step in range(1, step_cap + 1):
        coord_group = group_from_orders(orders)

        def embed(idx: int) -> int:
            out = group.identity()
            for c, u in zip(element_coords(coord_group, idx), gens):
                out = group.mul(out, group.power(u, c))
            return out

        restricted = HidingOracle(coord_group, lambda idx: oracle(embed(idx)))
        g_k = HperpSampler(coord_group, restricted).draw(rng).g
        if g_k == 0:
            quiet += 1
            if quiet >= patience:
                break
            continue
        quiet = 0
        ts = presentation_orders(coord_group)
        e = math.lcm(*ts)
        row = [(e // t) * c for c, t in zip(element_coords(coord_group, g_k), ts)]
        kernel_coords = solution_generators([row], e, ts)
        kernel_gens = [embed(coords_element(coord_group, c)) for c in kernel_coords]
        elements = list(subgroup_closure(group, kernel_gens).elements)
        table, carrier = _subgroup_table(group, elements)
        dec = decompose_abelian(table, rng)
        orders = list(dec.orders)
        gens = [carrier[v] for v in dec.generators]
        trace.append(ReductionState(step, tuple(orders), tuple(gens)))
    else:
        raise SolverFailure(f"no stable subgroup after {step_cap} reduction steps")
    sub = subgroup_closure(group, gens)
    return DecomposedSubgroup(
        make_subgroup(group, list(sub.elements), generators=tuple(gens)),
        tuple(orders),
        tuple(gens),
        tuple(trace),
    )
