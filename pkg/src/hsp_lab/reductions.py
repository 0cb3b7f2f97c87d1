"""Reductions of classical decision problems to hidden-subgroup instances.

Graph symmetries ride permutation groups: relabeling a graph and sorting
its edge list hides the automorphism group inside S_n, and deciding
whether two rigid connected graphs are isomorphic hides a subgroup of
order one or two inside the wreath product acting on their disjoint
union. Monotone 1-in-3 satisfiability rides module arithmetic instead:
clause sums become a homomorphism into Z_{4^N} whose kernel, rewritten
in a free basis, assembles a closest-vector instance in the infinity
norm that meets its distance bound iff the formula is satisfiable. All
lattice arithmetic is exact rational; no floating point enters here.
"""

from __future__ import annotations

import itertools
import json
import random
from dataclasses import dataclass
from fractions import Fraction

import sympy

from hsp_lab.abelian_solver import (
    element_coords,
    smith_normal_form,
    solution_generators,
    solve_abelian,
)
from hsp_lab.group_core import (
    CyclicGroup,
    ProductGroup,
    Subgroup,
    SymmetricGroup,
    WreathSymZ2,
    make_subgroup,
    perm_inv,
    perm_parity,
)
from hsp_lab.sampling import HidingOracle

GRAPH_DEGREE_CAP = 8
HSP_KERNEL_ORDER_CAP = 4096
SAT_CLAUSE_CAP = 8
SAT_VARIABLE_CAP = 24


# ---------------------------------------------------------------------------
# graphs and their symmetries


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph on {0..n-1} with a canonically sorted edge list."""

    n: int
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"vertex count must be positive, got {self.n}")
        seen = set()
        canon = []
        for edge in self.edges:
            u, v = int(edge[0]), int(edge[1])
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise ValueError(f"edge {edge} out of range for n = {self.n}")
            if u == v:
                raise ValueError(f"loop at vertex {u}")
            pair = (u, v) if u < v else (v, u)
            if pair in seen:
                raise ValueError(f"duplicate edge {pair}")
            seen.add(pair)
            canon.append(pair)
        object.__setattr__(self, "edges", tuple(sorted(canon)))

    @property
    def edge_set(self) -> frozenset:
        return frozenset(self.edges)


def relabel(g: Graph, perm) -> Graph:
    """The image graph under a vertex permutation given as an image tuple."""
    perm = tuple(perm)
    if sorted(perm) != list(range(g.n)):
        raise ValueError(f"{perm} is not a permutation of 0..{g.n - 1}")
    return Graph(g.n, tuple((perm[u], perm[v]) for u, v in g.edges))


def is_connected(g: Graph) -> bool:
    adj = [[] for _ in range(g.n)]
    for u, v in g.edges:
        adj[u].append(v)
        adj[v].append(u)
    seen = {0}
    frontier = [0]
    while frontier:
        x = frontier.pop()
        for y in adj[x]:
            if y not in seen:
                seen.add(y)
                frontier.append(y)
    return len(seen) == g.n


def _permuted_edges(perm, edges) -> tuple[tuple[int, int], ...]:
    out = []
    for u, v in edges:
        a, b = perm[u], perm[v]
        out.append((a, b) if a < b else (b, a))
    return tuple(sorted(out))


def automorphism_subgroup(g: Graph) -> Subgroup:
    """Aut(g) inside S_n, found by checking every permutation."""
    if g.n > GRAPH_DEGREE_CAP:
        raise ValueError(
            f"automorphism search enumerates S_n; n must stay at most {GRAPH_DEGREE_CAP}"
        )
    group = SymmetricGroup(g.n)
    fixers = [
        a
        for a in group.elements()
        if _permuted_edges(group.decode(a), g.edges) == g.edges
    ]
    return make_subgroup(group, fixers)


def is_rigid(g: Graph) -> bool:
    """True when the identity is the only automorphism."""
    if g.n > GRAPH_DEGREE_CAP:
        raise ValueError(
            f"rigidity check enumerates S_n; n must stay at most {GRAPH_DEGREE_CAP}"
        )
    identity = tuple(range(g.n))
    for perm in itertools.permutations(range(g.n)):
        if perm != identity and _permuted_edges(perm, g.edges) == g.edges:
            return False
    return True


def isomorphism(g1: Graph, g2: Graph):
    """An edge-preserving vertex bijection g1 -> g2, or None; exhaustive."""
    if g1.n != g2.n or len(g1.edges) != len(g2.edges):
        return None
    if g1.n > GRAPH_DEGREE_CAP:
        raise ValueError(
            f"isomorphism search enumerates S_n; n must stay at most {GRAPH_DEGREE_CAP}"
        )
    target = g2.edges
    for perm in itertools.permutations(range(g1.n)):
        if _permuted_edges(perm, g1.edges) == target:
            return perm
    return None


def rigid_connected_graphs(
    n: int, max_edges=None, limit=None, up_to_iso: bool = False
) -> list[Graph]:
    """Connected graphs on exactly n vertices with trivial automorphisms.

    Candidates are enumerated by edge count, then lexicographically, so
    the output order is reproducible; with up_to_iso each isomorphism
    class contributes only its first representative. No graph on 2..5
    vertices passes the filter: every such graph has a nontrivial
    automorphism, and the smallest rigid graphs appear at n = 6.
    """
    pairs = list(itertools.combinations(range(n), 2))
    cap = len(pairs) if max_edges is None else min(max_edges, len(pairs))
    found: list[Graph] = []
    lower = 0 if n == 1 else n - 1  # fewer edges cannot connect n vertices
    for count in range(lower, cap + 1):
        for chosen in itertools.combinations(pairs, count):
            g = Graph(n, chosen)
            if not (is_connected(g) and is_rigid(g)):
                continue
            if up_to_iso and any(isomorphism(g, old) is not None for old in found):
                continue
            found.append(g)
            if limit is not None and len(found) >= limit:
                return found
    return found


def _edge_bytes(edges) -> bytes:
    return ";".join(f"{u},{v}" for u, v in edges).encode("ascii")


def graph_auto_oracle(g: Graph) -> HidingOracle:
    """Hiding oracle on S_n whose value is the relabeled, sorted edge list.

    The serialized edge list is constant exactly on left cosets of
    Aut(g), which the oracle carries as its hidden subgroup.
    """
    if g.n > GRAPH_DEGREE_CAP:
        raise ValueError(
            f"the oracle's group is S_n; n must stay at most {GRAPH_DEGREE_CAP}"
        )
    group = SymmetricGroup(g.n)
    edges = g.edges

    def evaluate(a: int) -> bytes:
        return _edge_bytes(_permuted_edges(group.decode(a), edges))

    return HidingOracle(group, evaluate, hidden=automorphism_subgroup(g))


def union_graph(g1: Graph, g2: Graph) -> Graph:
    """Disjoint union with g2's vertices shifted past g1's."""
    shifted = tuple((u + g1.n, v + g1.n) for u, v in g2.edges)
    return Graph(g1.n + g2.n, g1.edges + shifted)


def wreath_union_oracle(g1: Graph, g2: Graph) -> HidingOracle:
    """Hiding oracle on the wreath product acting on a disjoint union.

    Both graphs must be connected and rigid on the same vertex count, so
    the union's only symmetries are the identity and, when the graphs
    are isomorphic, the unique block swap; the hidden subgroup therefore
    has order two iff the graphs are isomorphic.
    """
    if g1.n != g2.n:
        raise ValueError(
            f"vertex counts differ ({g1.n} vs {g2.n}); the block swap needs equal sides"
        )
    n = g1.n
    if n > GRAPH_DEGREE_CAP:
        raise ValueError(
            f"the swap witness search enumerates S_n; n must stay at most {GRAPH_DEGREE_CAP}"
        )
    for side, g in (("first", g1), ("second", g2)):
        if not is_connected(g):
            raise ValueError(f"{side} graph is not connected")
        if not is_rigid(g):
            raise ValueError(f"{side} graph is not rigid")
    group = WreathSymZ2(n)
    union = union_graph(g1, g2)

    def evaluate(a: int) -> bytes:
        mapped = []
        for u, v in union.edges:
            x, y = group.act_on_point(a, u), group.act_on_point(a, v)
            mapped.append((x, y) if x < y else (y, x))
        return _edge_bytes(tuple(sorted(mapped)))

    members = [group.identity()]
    phi = isomorphism(g1, g2)
    if phi is not None:
        # (a, b, 1) sends side-0 vertex v to b[v] on side 1, so the swap
        # stabilizer element carries the isomorphism in its b slot.
        members.append(group.encode((perm_inv(phi), phi, 1)))
    hidden = make_subgroup(group, members)
    return HidingOracle(group, evaluate, hidden=hidden)


@dataclass(frozen=True)
class IsoDecision:
    """Isomorphism verdict with an edge-checked witness when one exists."""

    isomorphic: bool
    witness: tuple | None


def _check_witness(g1: Graph, g2: Graph, perm) -> None:
    if _permuted_edges(perm, g1.edges) != g2.edges:
        raise RuntimeError(f"witness {perm} does not map the edge lists onto each other")


def decide_rigid_iso(g1: Graph, g2: Graph, solver: str = "exhaustive") -> IsoDecision:
    """Decide isomorphism of two rigid connected graphs.

    The exhaustive solver searches permutations directly; the external
    solver reads the answer off the hidden subgroup of the wreath
    oracle. Either way the witness is verified edge by edge.
    """
    if g1.n != g2.n:
        return IsoDecision(False, None)
    if solver == "exhaustive":
        witness = isomorphism(g1, g2)
    elif solver == "external":
        oracle = wreath_union_oracle(g1, g2)
        if oracle.hidden.order == 1:
            witness = None
        else:
            nontrivial = max(oracle.hidden.elements)
            _, phi, swap = oracle.group.decode(nontrivial)
            if swap != 1:
                raise RuntimeError("nontrivial stabilizer element does not swap blocks")
            witness = phi
    else:
        raise ValueError(f"unknown solver {solver!r}")
    if witness is None:
        return IsoDecision(False, None)
    _check_witness(g1, g2, witness)
    return IsoDecision(True, tuple(witness))


def swap_permutation(witness) -> tuple:
    """The doubled-graph automorphism induced by an isomorphism witness.

    Side-0 vertex v goes to the witness image on side 1 and side-1
    vertices come back through the inverse; the result has parity
    (-1)^n regardless of the witness.
    """
    witness = tuple(witness)
    inverse = perm_inv(witness)
    n = len(witness)
    return tuple(witness[v] + n for v in range(n)) + tuple(inverse[u] for u in range(n))


def alternating_swap_witness(g1: Graph, g2: Graph, witness) -> tuple:
    """An even doubled automorphism obtained by padding each side.

    Each side gains one isolated vertex (m = n + 1 per side). When the
    plain swap construction lands on an odd permutation, composing with
    the transposition of the two isolated vertices fixes the padded
    union and flips the sign, so the result always lies in A_{2m}.
    """
    witness = tuple(witness)
    _check_witness(g1, g2, witness)
    n = len(witness)
    m = n + 1
    inverse = perm_inv(witness)
    image = (
        tuple(witness[v] + m for v in range(n))
        + (2 * m - 1,)
        + tuple(inverse[u] for u in range(n))
        + (m - 1,)
    )
    if perm_parity(image) == 1:
        swapped = list(image)
        swapped[m - 1], swapped[2 * m - 1] = swapped[2 * m - 1], swapped[m - 1]
        image = tuple(swapped)
    return image


def padded_union(g1: Graph, g2: Graph) -> Graph:
    """Disjoint union with one isolated vertex appended to each side."""
    wide1 = Graph(g1.n + 1, g1.edges)
    wide2 = Graph(g2.n + 1, g2.edges)
    return union_graph(wide1, wide2)


def graph_to_edge_text(g: Graph) -> str:
    lines = [str(g.n)]
    lines.extend(f"{u} {v}" for u, v in g.edges)
    return "\n".join(lines) + "\n"


def graph_from_edge_text(text: str) -> Graph:
    """Parse a vertex-count line followed by one `u v` edge per line."""
    n = None
    edges = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if n is None:
            n = int(line)
            continue
        parts = line.split()
        if len(parts) != 2:
            raise ValueError(f"expected `u v`, got {raw!r}")
        edges.append((int(parts[0]), int(parts[1])))
    if n is None:
        raise ValueError("missing vertex-count line")
    return Graph(n, tuple(edges))


# ---------------------------------------------------------------------------
# monotone 1-in-3 satisfiability


@dataclass(frozen=True)
class SatInstance:
    """Monotone 1-in-3 formula: each clause lists three variable indices.

    A clause is satisfied when its entries sum to exactly one, counting
    multiplicity, so a clause may legitimately repeat a variable; the
    degree-4 digit encoding below only needs clause sums at most three.
    Flagged instances have the normalized opening clause (0, 1, 2) on
    three variables that appear nowhere else.
    """

    n: int
    clauses: tuple[tuple[int, int, int], ...]
    first_clause: bool = False

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"variable count must be positive, got {self.n}")
        if not self.clauses:
            raise ValueError("at least one clause is required")
        canon = []
        for clause in self.clauses:
            entries = tuple(int(x) for x in clause)
            if len(entries) != 3:
                raise ValueError(f"clause {clause} must have three entries")
            for x in entries:
                if not 0 <= x < self.n:
                    raise ValueError(f"variable {x} out of range for n = {self.n}")
            canon.append(entries)
        multisets = [tuple(sorted(c)) for c in canon]
        if len(set(multisets)) != len(multisets):
            raise ValueError("clauses must be pairwise different")
        object.__setattr__(self, "clauses", tuple(canon))
        if self.first_clause:
            if canon[0] != (0, 1, 2):
                raise ValueError("flagged instances must open with clause (0, 1, 2)")
            for clause in canon[1:]:
                if any(x < 3 for x in clause):
                    raise ValueError(
                        "flagged instances reserve variables 0..2 for the opening clause"
                    )

    @property
    def clause_count(self) -> int:
        return len(self.clauses)


def satisfies(inst: SatInstance, assignment) -> bool:
    """True when every clause sums to exactly one under a 0/1 assignment."""
    assignment = tuple(int(x) for x in assignment)
    if len(assignment) != inst.n or any(x not in (0, 1) for x in assignment):
        raise ValueError(f"assignment must be {inst.n} bits")
    return all(sum(assignment[v] for v in clause) == 1 for clause in inst.clauses)


def sat_solutions(inst: SatInstance) -> list[tuple[int, ...]]:
    """All satisfying assignments, by full enumeration."""
    if inst.n > 20:
        raise ValueError(f"enumeration over 2^{inst.n} assignments refused")
    return [
        bits
        for bits in itertools.product((0, 1), repeat=inst.n)
        if satisfies(inst, bits)
    ]


def with_first_clause(inst: SatInstance) -> SatInstance:
    """Equisatisfiable instance opening with (0, 1, 2) on fresh variables."""
    if inst.first_clause:
        return inst
    shifted = tuple(tuple(x + 3 for x in clause) for clause in inst.clauses)
    return SatInstance(inst.n + 3, ((0, 1, 2),) + shifted, first_clause=True)


def sat_to_text(inst: SatInstance) -> str:
    """One `c v1 v2 v3` line per clause, variables 1-based."""
    return "\n".join(
        "c " + " ".join(str(x + 1) for x in clause) for clause in inst.clauses
    ) + "\n"


def sat_from_text(text: str) -> SatInstance:
    """Parse clause lines; the variable count is the largest index used."""
    clauses = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if parts[0] != "c" or len(parts) != 4:
            raise ValueError(f"expected `c v1 v2 v3`, got {raw!r}")
        entries = tuple(int(x) - 1 for x in parts[1:])
        if any(x < 0 for x in entries):
            raise ValueError(f"variables are 1-based, got {raw!r}")
        clauses.append(entries)
    if not clauses:
        raise ValueError("no clauses found")
    n = 1 + max(max(c) for c in clauses)
    flagged = clauses[0] == (0, 1, 2) and all(
        x >= 3 for clause in clauses[1:] for x in clause
    )
    return SatInstance(n, tuple(clauses), first_clause=flagged)


@dataclass(frozen=True)
class SatMap:
    """Clause-sum homomorphism into Z_{4^N} in coefficient form.

    f(x) = sum_j coefficients[j] x_j; digit i of the result is the i-th
    clause's sum whenever all x_j are 0/1, so f(x) = target iff every
    clause sums to exactly one.
    """

    modulus: int
    coefficients: tuple[int, ...]
    target: int

    def __call__(self, x) -> int:
        x = tuple(int(v) for v in x)
        if len(x) != len(self.coefficients):
            raise ValueError(f"expected {len(self.coefficients)} coordinates")
        return sum(c * v for c, v in zip(self.coefficients, x)) % self.modulus


def sat_oracle(inst: SatInstance) -> SatMap:
    """The instance's homomorphism and the all-digits-one target value."""
    if inst.clause_count > SAT_CLAUSE_CAP or inst.n > SAT_VARIABLE_CAP:
        raise ValueError(
            f"desk scale caps instances at {SAT_CLAUSE_CAP} clauses "
            f"and {SAT_VARIABLE_CAP} variables"
        )
    modulus = 4 ** inst.clause_count
    coefficients = [0] * inst.n
    for i, clause in enumerate(inst.clauses):
        for v in clause:
            coefficients[v] += 4**i
    return SatMap(modulus, tuple(coefficients), (modulus - 1) // 3)


# ---------------------------------------------------------------------------
# kernel extraction


def _matmul(a, b) -> list[list[int]]:
    return [
        [sum(x * y for x, y in zip(row, col)) for col in zip(*b)]
        for row in a
    ]


def _exact_inverse(rows) -> list[list[Fraction]]:
    inv = sympy.Matrix([[int(x) for x in row] for row in rows]).inv()
    return [
        [Fraction(int(e.p), int(e.q)) for e in inv.row(i)]
        for i in range(inv.rows)
    ]


def _int_det(rows) -> int:
    return int(sympy.Matrix([[int(x) for x in row] for row in rows]).det())


def _rational_rank(rows) -> int:
    if not rows:
        return 0
    return sympy.Matrix([[int(x) for x in row] for row in rows]).rank()


def module_basis(generators, modulus: int, width: int) -> list[tuple[int, tuple[int, ...]]]:
    """Independent generators, with orders, of <generators> + modulus Z^width.

    The generator rows are first completed to a full lattice basis B by
    unimodular row moves (the span always contains modulus Z^width).
    Writing modulus I = C B, the Smith form U C V = D then yields a new
    basis F = V^-1 B of the same lattice with modulus-scaled rows of U
    equal to d_i F_i, so row F_i has order exactly d_i in the quotient
    by modulus Z^width; rows of order one are dropped.
    """
    stacked = [[int(x) for x in row] for row in generators]
    if any(len(row) != width for row in stacked):
        raise ValueError(f"generators must have width {width}")
    stacked += [
        [modulus if j == i else 0 for j in range(width)] for i in range(width)
    ]
    completion = smith_normal_form(stacked)
    b_rows = [row for row in _matmul(completion.u, stacked) if any(row)]
    if len(b_rows) != width:
        raise ValueError("generator span lost full rank; this cannot happen")
    c_rows = []
    for scaled_row in _exact_inverse(b_rows):
        entries = [modulus * x for x in scaled_row]
        if any(e.denominator != 1 for e in entries):
            raise ValueError("modulus I is not integral over the basis; impossible")
        c_rows.append([int(e) for e in entries])
    relative = smith_normal_form(c_rows)
    f_rows = _matmul(_exact_inverse(relative.v), b_rows)
    out = []
    for i in range(width):
        order = relative.d[i][i]
        if order != 1:
            out.append((order, tuple(int(x) % modulus for x in f_rows[i])))
    return out


def kernel_generators(
    coefficients, modulus: int, method: str = "snf", rng=None
) -> list[tuple[int, ...]]:
    """Generators of {x : sum c_j x_j = 0 mod modulus} inside Z_modulus^width."""
    coefficients = tuple(int(c) for c in coefficients)
    width = len(coefficients)
    if method == "snf":
        return solution_generators([list(coefficients)], modulus, [modulus] * width)
    if method != "hsp":
        raise ValueError(f"unknown method {method!r}")
    order = modulus**width
    if order > HSP_KERNEL_ORDER_CAP:
        raise ValueError(
            f"hidden-subgroup path needs the full group in memory; "
            f"order {order} exceeds {HSP_KERNEL_ORDER_CAP}"
        )
    group = ProductGroup([CyclicGroup(modulus) for _ in range(width)])
    dot = SatMap(modulus, coefficients, 0)
    oracle = HidingOracle(group, lambda g: dot(element_coords(group, g)))
    sub = solve_abelian(group, oracle, rng if rng is not None else random.Random(0))
    return [element_coords(group, g) for g in sub.generators]


@dataclass(frozen=True)
class SatKernel:
    """Kernel of an instance's homomorphism with a free (n-1)-row basis."""

    modulus: int
    coefficients: tuple[int, ...]
    generators: tuple[tuple[int, ...], ...]
    basis: tuple[tuple[int, ...], ...]


def sat_kernel(inst: SatInstance, method: str = "snf", rng=None) -> SatKernel:
    """Kernel generators for the clause homomorphism, reduced to n-1 rows.

    Every clause has odd total multiplicity, so some coefficient is odd
    and the homomorphism is onto; its kernel is then free of rank n-1
    and the reduction must produce exactly n-1 rows of full order.
    """
    fmap = sat_oracle(inst)
    gens = kernel_generators(fmap.coefficients, fmap.modulus, method=method, rng=rng)
    for g in gens:
        if fmap(g) != 0:
            raise ValueError(f"generator {g} is not in the kernel")
    reduced = module_basis(gens, fmap.modulus, inst.n)
    if len(reduced) != inst.n - 1 or any(order != fmap.modulus for order, _ in reduced):
        raise ValueError(
            "degenerate instance: kernel reduction produced orders "
            f"{[order for order, _ in reduced]} instead of {inst.n - 1} full-order rows"
        )
    basis = tuple(row for _, row in reduced)
    for row in basis:
        if fmap(row) != 0:
            raise ValueError(f"basis row {row} is not in the kernel")
    if _rational_rank(basis) != inst.n - 1:
        raise ValueError("basis rows are not independent over the rationals")
    return SatKernel(fmap.modulus, fmap.coefficients, tuple(tuple(g) for g in gens), basis)


# ---------------------------------------------------------------------------
# the lattice instance


@dataclass(frozen=True)
class LatticeInstance:
    """Closest-vector instance in the infinity norm, exact rationals.

    The 2n basis columns are: the n-1 kernel rows b^1..b^{n-1} (zeros
    below), one completion column holding modulus at completion_index,
    and n mixed columns with modulus at row i and epsilon at row n+i.
    A lattice point within bound of the target exists iff the source
    formula is satisfiable.
    """

    sat_vars: int
    modulus: int
    kernel_basis: tuple[tuple[int, ...], ...]
    completion_index: int
    shift: tuple[int, ...]
    bound_m: int
    radius: int
    epsilon: Fraction
    basis: tuple[tuple[Fraction, ...], ...]
    target: tuple[Fraction, ...]
    bound: Fraction

    def __post_init__(self):
        n = self.sat_vars
        if len(self.basis) != 2 * n or any(len(col) != 2 * n for col in self.basis):
            raise ValueError("basis must be 2n columns of height 2n")
        if len(self.target) != 2 * n:
            raise ValueError("target must have 2n coordinates")
        if self.radius != max(self.bound_m + 2, self.modulus - 1):
            raise ValueError(f"radius {self.radius} does not match its parameters")
        if self.epsilon * self.radius * 2 != 1:
            raise ValueError(f"epsilon must be 1/(2 radius), got {self.epsilon}")
        block = [
            [int(self.basis[j][i]) for j in range(n)] for i in range(n)
        ]
        if _int_det(block) == 0:
            raise ValueError("integer block is singular")

    @property
    def dimension(self) -> int:
        return 2 * self.sat_vars

    @property
    def completion(self) -> tuple[int, ...]:
        return tuple(
            self.modulus if i == self.completion_index else 0
            for i in range(self.sat_vars)
        )


def gapcvp_build(inst: SatInstance, kernel: SatKernel | None = None) -> LatticeInstance:
    """Assemble the instance's lattice, shift, and target exactly.

    The shift p solves f(p) = target using the smallest variable with an
    odd coefficient (invertible mod 4^N); the completion column is
    modulus e_j for the smallest j that keeps the integer block
    nonsingular.
    """
    if kernel is None:
        kernel = sat_kernel(inst)
    n = inst.n
    modulus = kernel.modulus
    target_value = (modulus - 1) // 3
    pivot = next(j for j in range(n) if kernel.coefficients[j] % 2 == 1)
    shift = [0] * n
    shift[pivot] = target_value * pow(kernel.coefficients[pivot], -1, modulus) % modulus
    columns_b = kernel.basis
    completion_index = None
    for j in range(n):
        block = [
            [columns_b[k][i] for k in range(n - 1)]
            + [modulus if i == j else 0]
            for i in range(n)
        ]
        if _int_det(block) != 0:
            completion_index = j
            break
    if completion_index is None:
        raise RuntimeError(
            "every completion column leaves the block singular; "
            "instance flagged for analysis"
        )
    bound_m = 1 + max((abs(x) for row in columns_b for x in row), default=0)
    radius = max(bound_m + 2, modulus - 1)
    epsilon = Fraction(1, 2 * radius)
    zero = Fraction(0)
    columns: list[tuple[Fraction, ...]] = []
    for k in range(n - 1):
        columns.append(
            tuple(Fraction(columns_b[k][i]) for i in range(n)) + (zero,) * n
        )
    columns.append(
        tuple(
            Fraction(modulus) if i == completion_index else zero for i in range(n)
        )
        + (zero,) * n
    )
    for i in range(n):
        top = tuple(Fraction(modulus) if r == i else zero for r in range(n))
        bottom = tuple(epsilon if r == i else zero for r in range(n))
        columns.append(top + bottom)
    target = tuple(Fraction(1, 2) - shift[i] for i in range(n)) + (zero,) * n
    return LatticeInstance(
        sat_vars=n,
        modulus=modulus,
        kernel_basis=columns_b,
        completion_index=completion_index,
        shift=tuple(shift),
        bound_m=bound_m,
        radius=radius,
        epsilon=epsilon,
        basis=tuple(columns),
        target=target,
        bound=Fraction(1, 2),
    )


def _frac_str(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def gapcvp_json(lat: LatticeInstance) -> str:
    """Stable JSON form with every rational as a num/den string."""
    doc = {
        "dimension": lat.dimension,
        "modulus": lat.modulus,
        "bound": _frac_str(lat.bound),
        "epsilon": _frac_str(lat.epsilon),
        "radius": lat.radius,
        "basis": [[_frac_str(x) for x in col] for col in lat.basis],
        "target": [_frac_str(x) for x in lat.target],
    }
    return json.dumps(doc, indent=2)


# ---------------------------------------------------------------------------
# two-sided verification


@dataclass(frozen=True)
class VerifyReport:
    """Outcome of brute-forcing both sides of the reduction.

    Verdicts are None when the corresponding search space exceeded its
    cap; agree is None unless both sides produced a verdict.
    """

    sat: bool | None
    cvp: bool | None
    agree: bool | None
    sat_assignment: tuple[int, ...] | None
    cvp_coefficients: tuple[int, ...] | None

    @property
    def inconclusive(self) -> bool:
        return self.agree is None


def _cvp_search(lat: LatticeInstance):
    """First coefficient vector within the bound, by digit enumeration.

    Free coefficients run over [0, modulus); the completion coefficient
    is pinned to zero; each mixed coefficient is forced by the residue
    of its coordinate and must stay within the radius. Kernel entries
    are nonnegative, so partial sums only grow and any coordinate past
    its largest reachable value kills the whole subtree.
    """
    n = lat.sat_vars
    modulus = lat.modulus
    radius = lat.radius
    columns = lat.kernel_basis
    high = 1 + modulus * radius
    partial = list(lat.shift)

    def descend(k: int):
        if k == n - 1:
            forced = []
            for i in range(n):
                residue = partial[i] % modulus
                if residue > 1:
                    return None
                fold = (residue - partial[i]) // modulus
                if abs(fold) > radius:
                    return None
                forced.append(fold)
            return forced
        column = columns[k]
        for digit in range(modulus):
            if digit:
                for i in range(n):
                    partial[i] += column[i]
                if any(partial[i] > high for i in range(n)):
                    for i in range(n):
                        partial[i] -= digit * column[i]
                    break
            found = descend(k + 1)
            if found is not None:
                for i in range(n):
                    partial[i] -= digit * column[i]
                return [digit] + found if k < n - 1 else found
        else:
            for i in range(n):
                partial[i] -= (modulus - 1) * column[i]
        return None

    if n == 1:
        found = descend(0)
        return None if found is None else (0,) + tuple(found)
    found = descend(0)
    if found is None:
        return None
    digits, folds = found[: n - 1], found[n - 1 :]
    return tuple(digits) + (0,) + tuple(folds)


def reduction_verify(
    inst: SatInstance,
    lat: LatticeInstance,
    assignment_cap: int = 2**20,
    point_cap: int = 2**21,
) -> VerifyReport:
    """Brute-force the formula and the lattice independently and compare.

    The formula side enumerates assignments; the lattice side enumerates
    coefficient vectors under the forward bounds (free digits in
    [0, modulus), completion zero, folds within the radius). Either side
    over its cap yields None there and an inconclusive comparison.
    """
    sat_verdict = None
    sat_witness = None
    if 2**inst.n <= assignment_cap:
        sat_verdict = False
        for bits in itertools.product((0, 1), repeat=inst.n):
            if satisfies(inst, bits):
                sat_verdict = True
                sat_witness = bits
                break
    cvp_verdict = None
    cvp_witness = None
    if lat.modulus ** (lat.sat_vars - 1) <= point_cap:
        cvp_witness = _cvp_search(lat)
        cvp_verdict = cvp_witness is not None
    agree = None
    if sat_verdict is not None and cvp_verdict is not None:
        agree = sat_verdict == cvp_verdict
    return VerifyReport(
        sat=sat_verdict,
        cvp=cvp_verdict,
        agree=agree,
        sat_assignment=sat_witness,
        cvp_coefficients=cvp_witness,
    )


def deviation_profile(lat: LatticeInstance, coefficients) -> tuple[Fraction, Fraction]:
    """Largest |Cu - v| over the first n and last n coordinates, exactly."""
    coefficients = tuple(int(u) for u in coefficients)
    if len(coefficients) != lat.dimension:
        raise ValueError(f"expected {lat.dimension} coefficients")
    point = [Fraction(0)] * lat.dimension
    for u, column in zip(coefficients, lat.basis):
        if u:
            for i in range(lat.dimension):
                point[i] += u * column[i]
    deviations = [abs(p - t) for p, t in zip(point, lat.target)]
    n = lat.sat_vars
    return max(deviations[:n]), max(deviations[n:])


# ---------------------------------------------------------------------------
# the desk corpus


def _canonical_instances(max_vars: int, max_clauses: int):
    """All instances using every variable, in a fixed enumeration order.

    Clauses are drawn, repeats allowed, from sorted triples; requiring
    that each variable actually occurs keeps relabeled duplicates with
    dangling variables out of the stream.
    """
    for n in range(1, max_vars + 1):
        triples = list(itertools.combinations_with_replacement(range(n), 3))
        for count in range(1, max_clauses + 1):
            for chosen in itertools.combinations(triples, count):
                used = {x for clause in chosen for x in clause}
                if len(used) == n:
                    yield SatInstance(n, chosen)


def find_unsatisfiable(
    count: int = 1, max_vars: int = 6, max_clauses: int = 2
) -> list[SatInstance]:
    """First unsatisfiable instances in the canonical enumeration order."""
    out = []
    for inst in _canonical_instances(max_vars, max_clauses):
        if not sat_solutions(inst):
            out.append(inst)
            if len(out) >= count:
                break
    return out


def desk_corpus() -> tuple[SatInstance, ...]:
    """At least twenty end-to-end instances, satisfiable and not.

    Two flagged instances anchor the list; the rest are the first
    satisfiable and the first unsatisfiable entries of the canonical
    enumeration, skipping clause sets already present.
    """
    items = [
        SatInstance(3, ((0, 1, 2),), first_clause=True),
        SatInstance(6, ((0, 1, 2), (3, 4, 5)), first_clause=True),
    ]
    seen = {(inst.n, inst.clauses) for inst in items}
    satisfiable = []
    for inst in _canonical_instances(6, 2):
        if len(satisfiable) >= 14:
            break
        key = (inst.n, inst.clauses)
        if key not in seen and sat_solutions(inst):
            seen.add(key)
            satisfiable.append(inst)
    unsatisfiable = [
        inst
        for inst in find_unsatisfiable(count=6)
        if (inst.n, inst.clauses) not in seen
    ][:4]
    return tuple(items + satisfiable + unsatisfiable)
