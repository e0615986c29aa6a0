"""Finite permutation groups: generation, conjugacy, cyclic subgroups, orbits.

Everything is brute force by design: groups are capped at a desk scale
(10,000 elements, degree 64 by default) where exhaustive enumeration is
both tractable and the most trustworthy oracle.  All values are immutable
and all operations are pure functions.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

from .errors import (
    BadCharacteristicError,
    GroupTooLargeError,
    NonBijectionError,
    NotAnActionError,
    NotASubgroupError,
    NotInNormalizerError,
)

DEFAULT_ELEMENT_CAP = 10_000
DEFAULT_DEGREE_CAP = 64


class Perm:
    """A permutation of {0..degree-1}, stored as the tuple of images.

    Composition is right-to-left: ``(a * b)(x) == a(b(x))``.
    """

    __slots__ = ("images", "_hash")

    def __init__(self, images: Iterable[int]):
        imgs = tuple(int(x) for x in images)
        n = len(imgs)
        seen = [False] * n
        for x in imgs:
            if not 0 <= x < n or seen[x]:
                raise NonBijectionError(f"images {imgs!r} are not a bijection on 0..{n - 1}")
            seen[x] = True
        self.images = imgs
        self._hash = hash(imgs)

    @property
    def degree(self) -> int:
        return len(self.images)

    @classmethod
    def identity(cls, degree: int) -> "Perm":
        return cls(range(degree))

    @classmethod
    def from_cycles(cls, degree: int, cycles: Sequence[Sequence[int]]) -> "Perm":
        imgs = list(range(degree))
        for cyc in cycles:
            for i, pt in enumerate(cyc):
                imgs[pt] = cyc[(i + 1) % len(cyc)]
        return cls(imgs)

    def __call__(self, point: int) -> int:
        return self.images[point]

    def __mul__(self, other: "Perm") -> "Perm":
        if self.degree != other.degree:
            raise NonBijectionError("cannot compose permutations of different degrees")
        return Perm(self.images[x] for x in other.images)

    def inverse(self) -> "Perm":
        inv = [0] * self.degree
        for i, x in enumerate(self.images):
            inv[x] = i
        return Perm(inv)

    def order(self) -> int:
        return math.lcm(*(len(c) for c in self.cycles())) if self.degree else 1

    def is_identity(self) -> bool:
        return all(i == x for i, x in enumerate(self.images))

    def cycles(self) -> tuple[tuple[int, ...], ...]:
        """All cycles, fixed points included."""
        seen = [False] * self.degree
        out = []
        for start in range(self.degree):
            if seen[start]:
                continue
            cyc = [start]
            seen[start] = True
            x = self.images[start]
            while x != start:
                cyc.append(x)
                seen[x] = True
                x = self.images[x]
            out.append(tuple(cyc))
        return tuple(out)

    def cycle_string(self) -> str:
        parts = ["(" + " ".join(map(str, c)) + ")" for c in self.cycles() if len(c) > 1]
        return "".join(parts) if parts else "()"

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Perm) and self.images == other.images

    def __lt__(self, other: "Perm") -> bool:
        return self.images < other.images

    def __le__(self, other: "Perm") -> bool:
        return self.images <= other.images

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"Perm({self.images!r})"


class FiniteGroup:
    """A finite permutation group with its full, canonically ordered element list.

    Construct through :func:`generate_group` or the named-family helpers; the
    constructor trusts its arguments.
    """

    def __init__(self, degree: int, generators: tuple[Perm, ...], elements: tuple[Perm, ...],
                 words: dict[Perm, tuple[int, ...]]):
        self.degree = degree
        self.generators = generators
        self.elements = elements
        self.words = words  # element -> generator word, product read left to right
        self.index = {g: i for i, g in enumerate(elements)}
        self._conjugacy_classes: tuple[ConjugacyClass, ...] | None = None

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def identity(self) -> Perm:
        return Perm.identity(self.degree)

    def __contains__(self, g: Perm) -> bool:
        return g in self.index

    def __iter__(self):
        return iter(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def __repr__(self) -> str:
        return f"<FiniteGroup degree={self.degree} order={self.order}>"

    def exponent(self) -> int:
        return math.lcm(*(g.order() for g in self.elements))

    def is_abelian(self) -> bool:
        gens = self.generators
        return all(a * b == b * a for a in gens for b in gens)


@dataclass(frozen=True)
class ConjugacyClass:
    """One conjugacy class of group elements."""

    representative: Perm
    members: tuple[Perm, ...]
    order: int

    @property
    def size(self) -> int:
        return len(self.members)


@dataclass(frozen=True)
class Subgroup:
    """A subgroup given by its element subset inside a parent group."""

    parent: FiniteGroup
    elements: tuple[Perm, ...]

    @property
    def order(self) -> int:
        return len(self.elements)

    def __contains__(self, g: Perm) -> bool:
        return g in set(self.elements)

    def as_group(self) -> FiniteGroup:
        """Repackage as a standalone FiniteGroup (same degree, reduced generators)."""
        gens = reduce_generators(self.elements, self.parent.degree)
        return generate_group(self.parent.degree, gens,
                              degree_cap=max(DEFAULT_DEGREE_CAP, self.parent.degree))


@dataclass(frozen=True)
class CyclicClass:
    """A conjugacy class of cyclic subgroups, with canonical generator and normalizer."""

    generator: Perm
    order: int
    subgroup_elements: tuple[Perm, ...]  # powers g^0 .. g^(m-1)
    normalizer: Subgroup

    def power_index(self, h: Perm) -> int:
        """Discrete log of h with respect to the canonical generator."""
        for k, p in enumerate(self.subgroup_elements):
            if p == h:
                return k
        raise ValueError("element is not in the cyclic subgroup")


def generate_group(degree: int, generators: Sequence[Perm], *,
                   element_cap: int = DEFAULT_ELEMENT_CAP,
                   degree_cap: int = DEFAULT_DEGREE_CAP) -> FiniteGroup:
    """Close a generating set under composition and return the full group.

    Elements are sorted lexicographically on image tuples; each element also
    receives a word in the generators (used to transport actions on models).
    """
    if degree > degree_cap:
        raise GroupTooLargeError(f"degree {degree} exceeds cap {degree_cap}")
    gens = tuple(generators)
    for i, g in enumerate(gens):
        if not isinstance(g, Perm):
            raise NonBijectionError(f"generator {i} is not a permutation")
        if g.degree != degree:
            raise NonBijectionError(f"generator {i} has degree {g.degree}, expected {degree}")

    ident = Perm.identity(degree)
    words: dict[Perm, tuple[int, ...]] = {ident: ()}
    frontier = [ident]
    while frontier:
        nxt = []
        for x in frontier:
            for i, g in enumerate(gens):
                y = x * g
                if y not in words:
                    if len(words) >= element_cap:
                        raise GroupTooLargeError(f"closure exceeds element cap {element_cap}")
                    words[y] = words[x] + (i,)
                    nxt.append(y)
        frontier = nxt
    elements = tuple(sorted(words))
    return FiniteGroup(degree, gens, elements, words)


def reduce_generators(elements: Sequence[Perm], degree: int) -> tuple[Perm, ...]:
    """Greedily pick a small generating subset of a closed element list."""
    target = len(elements)
    chosen: list[Perm] = []
    closure = {Perm.identity(degree)}
    for g in sorted(elements):
        if g in closure:
            continue
        chosen.append(g)
        closure = _close(closure | {g}, chosen)
        if len(closure) == target:
            break
    return tuple(chosen)


def _close(start: set[Perm], gens: Sequence[Perm]) -> set[Perm]:
    out = set(start)
    frontier = list(start)
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = x * g
                if y not in out:
                    out.add(y)
                    nxt.append(y)
        frontier = nxt
    return out


def conjugacy_classes(G: FiniteGroup) -> tuple[ConjugacyClass, ...]:
    """Partition the group into conjugacy classes, canonically ordered."""
    if G._conjugacy_classes is not None:
        return G._conjugacy_classes
    remaining = set(G.elements)
    classes = []
    while remaining:
        seed = min(remaining)
        orbit = {seed}
        frontier = [seed]
        while frontier:
            nxt = []
            for x in frontier:
                for g in G.generators:
                    y = g * x * g.inverse()
                    if y not in orbit:
                        orbit.add(y)
                        nxt.append(y)
            frontier = nxt
        members = tuple(sorted(orbit))
        classes.append(ConjugacyClass(members[0], members, members[0].order()))
        remaining -= orbit
    classes.sort(key=lambda c: (c.order, c.representative.images))
    result = tuple(classes)
    G._conjugacy_classes = result
    return result


def _check_characteristic(p: int) -> None:
    if p == 0:
        return
    if p < 2 or any(p % d == 0 for d in range(2, math.isqrt(p) + 1)):
        raise BadCharacteristicError(f"characteristic {p} is neither 0 nor a prime")


def cyclic_subgroup_classes(G: FiniteGroup, p: int = 0) -> tuple[CyclicClass, ...]:
    """Conjugacy classes of cyclic subgroups whose order is prime to p.

    ``p = 0`` keeps every order.  The trivial subgroup is always included.
    """
    _check_characteristic(p)
    subgroups = {frozenset(_powers(g)) for g in G.elements}
    if p != 0:
        subgroups = {s for s in subgroups if math.gcd(len(s), p) == 1}

    def key(s: frozenset[Perm]) -> tuple:
        return tuple(x.images for x in sorted(s))

    seen: set[frozenset[Perm]] = set()
    classes = []
    for s in sorted(subgroups, key=key):
        if s in seen:
            continue
        orbit = {s}
        frontier = [s]
        while frontier:
            nxt = []
            for t in frontier:
                for g in G.generators:
                    ginv = g.inverse()
                    u = frozenset(g * x * ginv for x in t)
                    if u not in orbit:
                        orbit.add(u)
                        nxt.append(u)
            frontier = nxt
        seen |= orbit
        canon = min(orbit, key=key)
        m = len(canon)
        gen = min(x for x in canon if x.order() == m)
        powers = tuple(_powers(gen))
        classes.append(CyclicClass(gen, m, powers, normalizer(G, canon)))
    classes.sort(key=lambda c: (c.order, c.generator.images))
    return tuple(classes)


def _powers(g: Perm) -> list[Perm]:
    out = [Perm.identity(g.degree)]
    x = g
    while not x.is_identity():
        out.append(x)
        x = x * g
    return out


def _require_subgroup(G: FiniteGroup, elems: Sequence[Perm]) -> tuple[Perm, ...]:
    s = set(elems)
    if not s or any(x not in G for x in s):
        raise NotASubgroupError("element set is not contained in the group")
    if Perm.identity(G.degree) not in s:
        raise NotASubgroupError("subgroup must contain the identity")
    for a in s:
        if a.inverse() not in s:
            raise NotASubgroupError(f"subset not closed under inverse at {a.cycle_string()}")
        for b in s:
            if a * b not in s:
                raise NotASubgroupError("subset not closed under composition")
    return tuple(sorted(s))


def normalizer(G: FiniteGroup, c: Iterable[Perm]) -> Subgroup:
    """All g with g c g^-1 = c, by direct membership test."""
    elems = _require_subgroup(G, tuple(c))
    cset = frozenset(elems)
    members = tuple(g for g in G.elements
                    if frozenset(g * x * g.inverse() for x in cset) == cset)
    return Subgroup(G, members)


def centralizer(G: FiniteGroup, h: Perm) -> Subgroup:
    """All g commuting with h."""
    if h not in G:
        raise NotASubgroupError("element is not in the group")
    return Subgroup(G, tuple(g for g in G.elements if g * h == h * g))


def conjugation_exponent(n: Perm, c: CyclicClass) -> int:
    """The unit a (mod the subgroup order) with n^-1 g n = g^a for the canonical generator."""
    if c.order == 1:
        return 1
    if n not in set(c.normalizer.elements):
        raise NotInNormalizerError(f"{n.cycle_string()} does not normalize the subgroup")
    h = n.inverse() * c.generator * n
    a = c.power_index(h)
    if math.gcd(a, c.order) != 1:
        raise NotInNormalizerError("conjugation did not map the generator to a generator")
    return a


def orbit_count(elements: Sequence[Perm], action: Callable[[Perm, int], int], points: int) -> int:
    """Number of orbits of a group action on {0..points-1}.

    ``elements`` must be the full group: the result is double-checked against
    the Burnside fixed-point average, which needs every element.  The action
    axioms are spot-checked on a bounded sample; a violation raises
    NotAnActionError, a Burnside mismatch is an internal error.
    """
    if points == 0:
        return 0
    elems = list(elements)
    elem_set = set(elems)
    ident = Perm.identity(elems[0].degree)
    if ident in elem_set:
        for pt in range(points):
            if action(ident, pt) != pt:
                raise NotAnActionError(f"identity moves point {pt}")
    sample = elems[:6]
    for a in sample:
        for b in sample:
            ab = a * b
            if ab in elem_set:
                for pt in range(min(points, 6)):
                    if action(ab, pt) != action(a, action(b, pt)):
                        raise NotAnActionError(
                            f"action violates (a*b)(x) = a(b(x)) at point {pt}")

    seen = [False] * points
    orbits = 0
    for start in range(points):
        if seen[start]:
            continue
        orbits += 1
        stack = [start]
        seen[start] = True
        while stack:
            x = stack.pop()
            for g in elems:
                y = action(g, x)
                if not 0 <= y < points:
                    raise NotAnActionError(f"action maps point {x} out of range")
                if not seen[y]:
                    seen[y] = True
                    stack.append(y)

    fixed_total = sum(sum(1 for pt in range(points) if action(g, pt) == pt) for g in elems)
    if fixed_total % len(elems) != 0 or fixed_total // len(elems) != orbits:
        raise RuntimeError(
            f"internal error: Burnside average {fixed_total}/{len(elems)} "
            f"disagrees with orbit count {orbits}")
    return orbits


# ---------------------------------------------------------------------------
# Named families, used by tests, the verification suite and documentation.

def trivial_group() -> FiniteGroup:
    return generate_group(1, [])


def cyclic_group(n: int) -> FiniteGroup:
    if n == 1:
        return trivial_group()
    return generate_group(n, [Perm([(i + 1) % n for i in range(n)])])


def symmetric_group(n: int) -> FiniteGroup:
    if n <= 1:
        return trivial_group()
    cycle = Perm([(i + 1) % n for i in range(n)])
    swap = Perm.from_cycles(n, [(0, 1)])
    return generate_group(n, [swap, cycle] if n > 2 else [swap])


def alternating_group(n: int) -> FiniteGroup:
    if n <= 2:
        return trivial_group()
    gens = [Perm.from_cycles(n, [(i, i + 1, i + 2)]) for i in range(n - 2)]
    return generate_group(n, gens)


def dihedral_group(n: int) -> FiniteGroup:
    """Symmetries of the regular n-gon, order 2n."""
    if n == 1:
        return generate_group(2, [Perm([1, 0])])
    if n == 2:
        return generate_group(4, [Perm([1, 0, 2, 3]), Perm([0, 1, 3, 2])])
    rot = Perm([(i + 1) % n for i in range(n)])
    ref = Perm([(-i) % n for i in range(n)])
    return generate_group(n, [rot, ref])


def quaternion_group() -> FiniteGroup:
    """The quaternion group of order 8 in its left-regular representation."""
    # elements 1,-1,i,-i,j,-j,k,-k encoded as (basis, sign) with basis 0..3
    def enc(b: int, s: int) -> int:
        return 2 * b + s

    table = {}
    signs = {(1, 1): (0, 1), (1, 2): (3, 0), (1, 3): (2, 1),
             (2, 1): (3, 1), (2, 2): (0, 1), (2, 3): (1, 0),
             (3, 1): (2, 0), (3, 2): (1, 1), (3, 3): (0, 1)}
    for b1 in range(4):
        for s1 in range(2):
            for b2 in range(4):
                for s2 in range(2):
                    if b1 == 0:
                        b, extra = b2, 0
                    elif b2 == 0:
                        b, extra = b1, 0
                    else:
                        b, extra = signs[(b1, b2)]
                    table[(enc(b1, s1), enc(b2, s2))] = enc(b, (s1 + s2 + extra) % 2)

    def left_mul(x: int) -> Perm:
        return Perm([table[(x, y)] for y in range(8)])

    return generate_group(8, [left_mul(enc(1, 0)), left_mul(enc(2, 0))])


def direct_product(G: FiniteGroup, H: FiniteGroup, *,
                   element_cap: int = DEFAULT_ELEMENT_CAP) -> FiniteGroup:
    """G x H acting on the disjoint union of the two point sets."""
    a, b = G.degree, H.degree
    gens = [Perm(tuple(g.images) + tuple(range(a, a + b))) for g in G.generators]
    gens += [Perm(tuple(range(a)) + tuple(x + a for x in h.images)) for h in H.generators]
    return generate_group(a + b, gens, element_cap=element_cap)
