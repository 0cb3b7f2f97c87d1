"""Finite groups with integer element encodings and subgroup machinery.

Every construction fixes a bijective codec between group elements and the
integers 0..order-1, so oracles, state vectors, and distributions can use
plain arrays indexed by element. All instances are immutable after
construction and all operations are pure.

Codecs:
  cyclic(N)                 the residue itself
  product(G_1, ..., G_k)    mixed radix, first factor least significant
  dihedral(N)               (a, b) -> a + N*b
  generalized dihedral(A)   (a, b) -> a + |A|*b
  symmetric(n)              Lehmer-code rank of the image tuple
  wreath_sym_z2(n)          (a, b, c) -> rank(a) + n!*rank(b) + (n!)^2*c
"""

from __future__ import annotations

import math
from bisect import bisect_left
from dataclasses import dataclass

DEFAULT_ENUMERATION_CAP = 100_000


class CapacityError(RuntimeError):
    """An operation would exceed the configured desk-scale cap."""


class Group:
    """Finite group on the index set {0, ..., order - 1}."""

    order: int
    abelian: bool

    def mul(self, a: int, b: int) -> int:
        raise NotImplementedError

    def inv(self, a: int) -> int:
        raise NotImplementedError

    def identity(self) -> int:
        return 0

    def decode(self, a: int):
        """Index -> natural coordinates (an int or a tuple)."""
        raise NotImplementedError

    def encode(self, coords) -> int:
        """Natural coordinates -> index."""
        raise NotImplementedError

    def describe(self) -> str:
        """Stable grammar string, e.g. 'dihedral:4'."""
        raise NotImplementedError

    def elements(self) -> range:
        return range(self.order)

    def check_index(self, a: int) -> int:
        if not 0 <= a < self.order:
            raise ValueError(
                f"element index {a} out of range for {self.describe()} "
                f"(order {self.order})"
            )
        return a

    def conj(self, g: int, h: int) -> int:
        """g h g^-1."""
        return self.mul(self.mul(g, h), self.inv(g))

    def power(self, a: int, k: int) -> int:
        if k < 0:
            a, k = self.inv(a), -k
        out = self.identity()
        while k:
            if k & 1:
                out = self.mul(out, a)
            a = self.mul(a, a)
            k >>= 1
        return out

    def element_order(self, a: int) -> int:
        e = self.identity()
        x, k = a, 1
        while x != e:
            x = self.mul(x, a)
            k += 1
        return k

    def __repr__(self) -> str:
        return f"{type(self).__name__}[{self.describe()}]"


class CyclicGroup(Group):
    """Z_N under addition."""

    def __init__(self, n: int):
        n = int(n)
        if n < 1:
            raise ValueError(f"cyclic group order must be positive, got {n}")
        self.n = n
        self.order = n
        self.abelian = True

    def mul(self, a: int, b: int) -> int:
        self.check_index(a)
        self.check_index(b)
        return (a + b) % self.n

    def inv(self, a: int) -> int:
        self.check_index(a)
        return (-a) % self.n

    def decode(self, a: int) -> int:
        self.check_index(a)
        return a

    def encode(self, coords) -> int:
        return int(coords) % self.n

    def describe(self) -> str:
        return f"cyclic:{self.n}"


class ProductGroup(Group):
    """Direct product with a mixed-radix codec (first factor least significant)."""

    def __init__(self, factors):
        factors = tuple(factors)
        if not factors:
            raise ValueError("product group needs at least one factor")
        self.factors = factors
        self.order = math.prod(f.order for f in factors)
        self.abelian = all(f.abelian for f in factors)

    def split(self, a: int) -> tuple[int, ...]:
        self.check_index(a)
        out = []
        for f in self.factors:
            a, r = divmod(a, f.order)
            out.append(r)
        return tuple(out)

    def join(self, coords) -> int:
        coords = tuple(coords)
        if len(coords) != len(self.factors):
            raise ValueError(
                f"expected {len(self.factors)} coordinates, got {len(coords)}"
            )
        idx = 0
        for f, c in zip(reversed(self.factors), reversed(coords)):
            idx = idx * f.order + f.check_index(c)
        return idx

    def mul(self, a: int, b: int) -> int:
        xs, ys = self.split(a), self.split(b)
        return self.join(f.mul(x, y) for f, x, y in zip(self.factors, xs, ys))

    def inv(self, a: int) -> int:
        return self.join(f.inv(x) for f, x in zip(self.factors, self.split(a)))

    def decode(self, a: int) -> tuple[int, ...]:
        return self.split(a)

    def encode(self, coords) -> int:
        return self.join(f.encode(c) for f, c in zip(self.factors, coords))

    def describe(self) -> str:
        return "product:" + ",".join(f.describe() for f in self.factors)


class DihedralGroup(Group):
    """D_N of order 2N.

    (a, b) stands for the rotation-reflection word r^a s^b, encoded a + N*b.
    Law: (a1, b1)(a2, b2) = (a1 + (-1)^{b1} a2, b1 + b2); inverse
    (a, b)^-1 = ((-1)^{b+1} a, b).
    """

    def __init__(self, n: int):
        n = int(n)
        if n < 1:
            raise ValueError(f"dihedral parameter must be positive, got {n}")
        self.n = n
        self.order = 2 * n
        self.abelian = n <= 2

    def mul(self, a: int, b: int) -> int:
        self.check_index(a)
        self.check_index(b)
        n = self.n
        a1, b1 = a % n, a // n
        a2, b2 = b % n, b // n
        ar = (a1 + a2) % n if b1 == 0 else (a1 - a2) % n
        return ar + n * ((b1 + b2) % 2)

    def inv(self, a: int) -> int:
        self.check_index(a)
        n = self.n
        a1, b1 = a % n, a // n
        return ((-a1) % n if b1 == 0 else a1) + n * b1

    def decode(self, a: int) -> tuple[int, int]:
        self.check_index(a)
        return (a % self.n, a // self.n)

    def encode(self, coords) -> int:
        a, b = coords
        return int(a) % self.n + self.n * (int(b) % 2)

    def describe(self) -> str:
        return f"dihedral:{self.n}"


class GeneralizedDihedralGroup(Group):
    """Semidirect product A x| Z_2 with Z_2 inverting the abelian group A.

    Same shape of law as the dihedral one, with A-arithmetic in the first
    coordinate: (a1, b1)(a2, b2) = (a1 * a2^{(-1)^{b1}}, b1 + b2).
    """

    def __init__(self, base: Group):
        if not base.abelian:
            raise ValueError(
                f"generalized dihedral base must be abelian, got {base.describe()}"
            )
        self.base = base
        self.order = 2 * base.order
        self.abelian = all(base.inv(a) == a for a in base.elements())

    def mul(self, a: int, b: int) -> int:
        self.check_index(a)
        self.check_index(b)
        m = self.base.order
        a1, b1 = a % m, a // m
        a2, b2 = b % m, b // m
        ar = self.base.mul(a1, a2 if b1 == 0 else self.base.inv(a2))
        return ar + m * ((b1 + b2) % 2)

    def inv(self, a: int) -> int:
        self.check_index(a)
        m = self.base.order
        a1, b1 = a % m, a // m
        return (self.base.inv(a1) if b1 == 0 else a1) + m * b1

    def decode(self, a: int) -> tuple:
        self.check_index(a)
        return (self.base.decode(a % self.base.order), a // self.base.order)

    def encode(self, coords) -> int:
        a, b = coords
        return self.base.encode(a) + self.base.order * (int(b) % 2)

    def describe(self) -> str:
        return f"gendihedral:{self.base.describe()}"


def perm_mul(p: tuple, q: tuple) -> tuple:
    """Compose permutations, q applied first: (p q)(i) = p[q[i]]."""
    return tuple(p[q[i]] for i in range(len(p)))


def perm_inv(p: tuple) -> tuple:
    out = [0] * len(p)
    for i, x in enumerate(p):
        out[x] = i
    return tuple(out)


def perm_rank(p) -> int:
    """Lehmer-code rank; the identity ranks 0, descending order ranks n!-1."""
    p = tuple(p)
    n = len(p)
    r = 0
    for i in range(n):
        smaller = sum(1 for j in range(i + 1, n) if p[j] < p[i])
        r = r * (n - i) + smaller
    return r


def perm_unrank(n: int, r: int) -> tuple:
    lehmer = []
    for base in range(1, n + 1):
        r, digit = divmod(r, base)
        lehmer.append(digit)
    lehmer.reverse()
    pool = list(range(n))
    return tuple(pool.pop(d) for d in lehmer)


def perm_parity(p) -> int:
    """0 for even permutations, 1 for odd."""
    p = list(p)
    seen = [False] * len(p)
    parity = 0
    for i in range(len(p)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = p[j]
            length += 1
        parity ^= (length - 1) & 1
    return parity


class SymmetricGroup(Group):
    """S_n on {0, ..., n-1}; elements are image tuples ranked by Lehmer code."""

    # Decoded permutations are cached below this order to keep oracle loops
    # over all of S_n cheap.
    _CACHE_LIMIT = 50_000

    def __init__(self, n: int):
        n = int(n)
        if n < 1:
            raise ValueError(f"symmetric group degree must be positive, got {n}")
        self.n = n
        self.order = math.factorial(n)
        self.abelian = n <= 2
        self._perms: list[tuple] | None = None

    def _table(self) -> list[tuple]:
        if self._perms is None:
            if self.order > self._CACHE_LIMIT:
                raise CapacityError(
                    f"permutation table for symmetric:{self.n} exceeds cache limit"
                )
            self._perms = [perm_unrank(self.n, r) for r in range(self.order)]
        return self._perms

    def decode(self, a: int) -> tuple:
        self.check_index(a)
        if self.order <= self._CACHE_LIMIT:
            return self._table()[a]
        return perm_unrank(self.n, a)

    def encode(self, coords) -> int:
        p = tuple(int(x) for x in coords)
        if sorted(p) != list(range(self.n)):
            raise ValueError(f"{p} is not a permutation of 0..{self.n - 1}")
        return perm_rank(p)

    def mul(self, a: int, b: int) -> int:
        return perm_rank(perm_mul(self.decode(a), self.decode(b)))

    def inv(self, a: int) -> int:
        return perm_rank(perm_inv(self.decode(a)))

    def apply(self, a: int, point: int) -> int:
        return self.decode(a)[point]

    def describe(self) -> str:
        return f"symmetric:{self.n}"


class WreathSymZ2(Group):
    """The wreath product (S_n x S_n) x| Z_2, the swap acting on the pair.

    Element (a, b, c) is the pair permutation (a, b) followed by c swaps of
    the two blocks; the law twists the second pair by the first swap bit:
    (a1, b1, c1)(a2, b2, c2) = ((a1, b1) . tau^{c1}(a2, b2), c1 + c2).
    """

    def __init__(self, n: int):
        n = int(n)
        if n < 1:
            raise ValueError(f"wreath degree must be positive, got {n}")
        self.n = n
        self.sym = SymmetricGroup(n)
        self._f = self.sym.order
        self.order = 2 * self._f * self._f
        self.abelian = self.order <= 2

    def _split(self, a: int) -> tuple[int, int, int]:
        self.check_index(a)
        f = self._f
        return (a % f, (a // f) % f, a // (f * f))

    def mul(self, a: int, b: int) -> int:
        ra1, rb1, c1 = self._split(a)
        ra2, rb2, c2 = self._split(b)
        if c1:
            ra2, rb2 = rb2, ra2
        f = self._f
        return (
            self.sym.mul(ra1, ra2)
            + f * self.sym.mul(rb1, rb2)
            + f * f * ((c1 + c2) % 2)
        )

    def inv(self, a: int) -> int:
        ra, rb, c = self._split(a)
        ia, ib = self.sym.inv(ra), self.sym.inv(rb)
        if c:
            ia, ib = ib, ia
        return ia + self._f * ib + self._f * self._f * c

    def decode(self, a: int) -> tuple:
        ra, rb, c = self._split(a)
        return (self.sym.decode(ra), self.sym.decode(rb), c)

    def encode(self, coords) -> int:
        a, b, c = coords
        return (
            self.sym.encode(a)
            + self._f * self.sym.encode(b)
            + self._f * self._f * (int(c) % 2)
        )

    def act_on_point(self, a: int, point: int) -> int:
        """Left action on the doubled point set {0..2n-1}, block v + n*side."""
        n = self.n
        if not 0 <= point < 2 * n:
            raise ValueError(f"point {point} out of range for 2n = {2 * n}")
        ra, rb, c = self._split(a)
        side = (point // n) ^ c
        perm = self.sym.decode(ra if side == 0 else rb)
        return perm[point % n] + n * side

    def describe(self) -> str:
        return f"wreath-s:{self.n}"


class TableGroup(Group):
    """Group backed by an explicit Cayley table; used for quotients."""

    def __init__(self, table, name: str = "table"):
        rows = tuple(tuple(int(x) for x in row) for row in table)
        n = len(rows)
        if n == 0 or any(len(row) != n for row in rows):
            raise ValueError("Cayley table must be square and non-empty")
        full = frozenset(range(n))
        for i, row in enumerate(rows):
            if frozenset(row) != full:
                raise ValueError(f"Cayley table row {i} is not a permutation")
        for j in range(n):
            if frozenset(rows[i][j] for i in range(n)) != full:
                raise ValueError(f"Cayley table column {j} is not a permutation")
        ident = None
        for e in range(n):
            if all(rows[e][x] == x and rows[x][e] == x for x in range(n)):
                ident = e
                break
        if ident is None:
            raise ValueError("Cayley table has no identity element")
        self._table = rows
        self._identity = ident
        self._inv = [0] * n
        for a in range(n):
            hits = [b for b in range(n) if rows[a][b] == ident and rows[b][a] == ident]
            if not hits:
                raise ValueError(f"element {a} has no two-sided inverse")
            self._inv[a] = hits[0]
        self.order = n
        self.abelian = all(
            rows[i][j] == rows[j][i] for i in range(n) for j in range(i + 1, n)
        )
        self.name = name

    def mul(self, a: int, b: int) -> int:
        self.check_index(a)
        self.check_index(b)
        return self._table[a][b]

    def inv(self, a: int) -> int:
        self.check_index(a)
        return self._inv[a]

    def identity(self) -> int:
        return self._identity

    def decode(self, a: int) -> int:
        self.check_index(a)
        return a

    def encode(self, coords) -> int:
        return self.check_index(int(coords))

    def check_associativity(self) -> bool:
        n = self.order
        t = self._table
        return all(
            t[t[a][b]][c] == t[a][t[b][c]]
            for a in range(n)
            for b in range(n)
            for c in range(n)
        )

    def describe(self) -> str:
        return f"table:{self.order}"


@dataclass(frozen=True)
class Subgroup:
    """A subgroup materialized as a sorted element-index list."""

    group: Group
    elements: tuple[int, ...]
    generators: tuple[int, ...]

    @property
    def order(self) -> int:
        return len(self.elements)

    def contains(self, x: int) -> bool:
        i = bisect_left(self.elements, x)
        return i < len(self.elements) and self.elements[i] == x

    @property
    def is_trivial(self) -> bool:
        return len(self.elements) == 1

    def __iter__(self):
        return iter(self.elements)

    def coords(self) -> list:
        return [self.group.decode(x) for x in self.elements]


def verify_subgroup(sub: Subgroup) -> None:
    """Raise unless the element list is a genuine subgroup."""
    group = sub.group
    elems = frozenset(sub.elements)
    if len(elems) != len(sub.elements) or list(sub.elements) != sorted(elems):
        raise ValueError("subgroup element list must be sorted and duplicate-free")
    if group.identity() not in elems:
        raise ValueError("subgroup is missing the identity")
    if group.order % len(elems):
        raise ValueError(
            f"subgroup size {len(elems)} does not divide group order {group.order}"
        )
    for a in elems:
        if group.inv(a) not in elems:
            raise ValueError(f"subgroup not closed under inversion at {a}")
        for b in elems:
            if group.mul(a, b) not in elems:
                raise ValueError(f"subgroup not closed under composition at ({a}, {b})")


def make_subgroup(group: Group, elements, generators=None) -> Subgroup:
    """Build a Subgroup from an explicit element list, verifying closure."""
    elems = tuple(sorted({group.check_index(x) for x in elements}))
    sub = Subgroup(group, elems, tuple(generators) if generators else elems)
    verify_subgroup(sub)
    return sub


def subgroup_closure(group: Group, gens) -> Subgroup:
    """Smallest subgroup containing the generators."""
    gens = tuple(group.check_index(g) for g in gens)
    e = group.identity()
    seen = {e}
    frontier = [e]
    while frontier:
        x = frontier.pop()
        for g in gens:
            y = group.mul(x, g)
            if y not in seen:
                seen.add(y)
                frontier.append(y)
    return Subgroup(group, tuple(sorted(seen)), gens)


def trivial_subgroup(group: Group) -> Subgroup:
    return Subgroup(group, (group.identity(),), ())


def full_subgroup(group: Group, cap: int = DEFAULT_ENUMERATION_CAP) -> Subgroup:
    elems = tuple(enumerate_elements(group, cap))
    return Subgroup(group, elems, elems)


def enumerate_elements(group: Group, cap: int = DEFAULT_ENUMERATION_CAP) -> list[int]:
    if group.order > cap:
        raise CapacityError(
            f"{group.describe()} has order {group.order}, above the cap {cap}"
        )
    return list(range(group.order))


def coset_labels(group: Group, sub: Subgroup) -> list[int]:
    """Left-coset label for every element.

    Labels are canonical: cosets are numbered by increasing minimal element
    index, so the identity coset is always label 0.
    """
    n = group.order
    h = sub.order
    if n % h:
        raise ValueError(f"subgroup size {h} does not divide group order {n}")
    if not sub.contains(group.identity()):
        raise ValueError("subgroup is missing the identity")
    labels = [-1] * n
    next_label = 0
    for g in range(n):
        if labels[g] != -1:
            continue
        for hh in sub.elements:
            x = group.mul(g, hh)
            if labels[x] != -1:
                raise ValueError("element list is not closed; cosets overlap")
            labels[x] = next_label
        next_label += 1
    if next_label * h != n:
        raise ValueError("element list is not closed; coset count mismatch")
    return labels


def is_normal(group: Group, sub: Subgroup) -> bool:
    gens = sub.generators if sub.generators else sub.elements
    elems = frozenset(sub.elements)
    for g in group.elements():
        gi = group.inv(g)
        for h in gens:
            if group.mul(group.mul(g, h), gi) not in elems:
                return False
    return True


def quotient_group(group: Group, nsub: Subgroup) -> tuple[TableGroup, tuple[int, ...]]:
    """Quotient by a normal subgroup: (table-backed group, projection map)."""
    if not is_normal(group, nsub):
        raise ValueError("cannot form the quotient: subgroup is not normal")
    labels = coset_labels(group, nsub)
    k = group.order // nsub.order
    reps: list[int | None] = [None] * k
    for g in range(group.order):
        if reps[labels[g]] is None:
            reps[labels[g]] = g
    table = [
        [labels[group.mul(reps[i], reps[j])] for j in range(k)] for i in range(k)
    ]
    name = f"{group.describe()}/{nsub.order}"
    return TableGroup(table, name=name), tuple(labels)


@dataclass(frozen=True)
class DihedralSubgroup:
    """One subgroup of D_N in the two-parameter classification.

    r divides N. d is None for the rotation subgroup H_r = {(rl, 0)} and an
    integer in [0, r) for H_{r,d} = {(rl, 0)} u {(d + rl, 1)}.
    """

    r: int
    d: int | None
    subgroup: Subgroup

    @property
    def label(self) -> str:
        return f"H_{self.r}" if self.d is None else f"H_{{{self.r},{self.d}}}"


def divisors(n: int) -> list[int]:
    out = [d for d in range(1, n + 1) if n % d == 0]
    return out


def dihedral_subgroups(n_or_group) -> list[DihedralSubgroup]:
    """All subgroups of D_N: H_r and H_{r,d} for r | N, 0 <= d < r."""
    if isinstance(n_or_group, DihedralGroup):
        group = n_or_group
    else:
        group = DihedralGroup(int(n_or_group))
    n = group.n
    out = []
    for r in divisors(n):
        rot = tuple(sorted((r * l) % n for l in range(n // r)))
        out.append(
            DihedralSubgroup(r=r, d=None, subgroup=Subgroup(group, rot, (r % n,)))
        )
        for d in range(r):
            refl = tuple((d + r * l) % n + n for l in range(n // r))
            elems = tuple(sorted(rot + refl))
            out.append(
                DihedralSubgroup(
                    r=r, d=d, subgroup=Subgroup(group, elems, (r % n, d + n))
                )
            )
    return out


def parse_group(spec: str) -> Group:
    """Parse the group grammar: cyclic:N, dihedral:N, product:spec,...,
    gendihedral:spec, symmetric:n, wreath-s:n."""
    spec = spec.strip()
    kind, _, rest = spec.partition(":")
    kind = kind.strip().lower()
    if kind == "cyclic":
        return CyclicGroup(int(rest))
    if kind == "dihedral":
        return DihedralGroup(int(rest))
    if kind == "symmetric":
        return SymmetricGroup(int(rest))
    if kind == "wreath-s":
        return WreathSymZ2(int(rest))
    if kind == "gendihedral":
        return GeneralizedDihedralGroup(parse_group(rest))
    if kind == "product":
        parts = [p.strip() for p in rest.split(",") if p.strip()]
        if not parts:
            raise ValueError(f"empty product spec: {spec!r}")
        factors = [
            CyclicGroup(int(p)) if p.isdigit() else parse_group(p) for p in parts
        ]
        return ProductGroup(factors)
    raise ValueError(f"unknown group spec {spec!r}")


def cyclic_factors(group: Group) -> list[int] | None:
    """Cyclic decomposition orders if the group is built from cyclic pieces."""
    if isinstance(group, CyclicGroup):
        return [group.n]
    if isinstance(group, ProductGroup):
        out: list[int] = []
        for f in group.factors:
            sub = cyclic_factors(f)
            if sub is None:
                return None
            out.extend(sub)
        return out
    return None
