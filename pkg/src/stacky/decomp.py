"""Decompositions of quotient-stack models.

Implements the component calculus for finite-group quotient models: the
cyclotomic inertia components indexed by conjugacy classes of cyclic
subgroups, the element-indexed inertia components, the coarse and the
character-refined quotient motives, classifying stacks, gerbes over a base,
and one-dimensional orbifolds.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from .chars import character_table, rep_ring
from .errors import BadOrderError, NotAnAutomorphismError, ValidationError
from .motives import (
    UNIT,
    Atom,
    EquivariantModel,
    Motive,
    invariants,
    model_motive,
)
from .perms import (
    CyclicClass,
    FiniteGroup,
    Perm,
    Subgroup,
    conjugacy_classes,
    conjugation_exponent,
    cyclic_subgroup_classes,
    direct_product,
    generate_group,
    orbit_count,
)


def character_indices(order: int) -> tuple[int, ...]:
    """Index set of the injective characters of a cyclic group of this order."""
    if order == 1:
        return (0,)
    return tuple(j for j in range(1, order) if math.gcd(j, order) == 1)


@dataclass(frozen=True)
class InjectiveCharacters:
    """The injective characters of a cyclic class with the normalizer action.

    Characters are indexed by exponents j prime to the order; an element n of
    the normalizer with conjugation exponent a sends index j to j*a mod m.
    """

    cyclic: CyclicClass
    indices: tuple[int, ...]
    exponents: dict[Perm, int]

    @property
    def size(self) -> int:
        return len(self.indices)

    def act(self, n: Perm, pos: int) -> int:
        m = self.cyclic.order
        if m == 1:
            return 0
        j = self.indices[pos] * self.exponents[n] % m
        return self.indices.index(j)


def injective_characters(c: CyclicClass) -> InjectiveCharacters:
    exps = {n: conjugation_exponent(n, c) for n in c.normalizer.elements}
    return InjectiveCharacters(c, character_indices(c.order), exps)


@dataclass(frozen=True)
class CyclotomicInertiaComponent:
    """One component of the cyclotomic inertia of a model: a cyclic class,
    its fixed-point model carrying the normalizer action, and the character
    set s(c)."""

    cyclic: CyclicClass
    fixed_model: EquivariantModel
    chars: InjectiveCharacters


@dataclass(frozen=True)
class InertiaComponent:
    """One component of the element-indexed inertia: a class representative,
    its centralizer, and the fixed model with the centralizer action."""

    representative: Perm
    centralizer: Subgroup
    fixed_model: EquivariantModel


def _locus_cells_and_action(X: EquivariantModel, c: CyclicClass
                            ) -> tuple[tuple[int, ...], dict[Perm, Perm]]:
    """Fixed cells of the class representative subgroup plus the action of
    every normalizer element on them (local cell indices)."""
    if c.order == 1:
        # the trivial class sees the ambient cells with the full action
        return X.dims, {n: X.action_of(n) for n in c.normalizer.elements}
    if X.kind == "hset":
        fixed = tuple(p for p in range(X.size)
                      if X.action_of(c.generator)(p) == p)
        pos = {p: i for i, p in enumerate(fixed)}
        actions = {}
        for n in c.normalizer.elements:
            amb = X.action_of(n)
            actions[n] = Perm([pos[amb(p)] for p in fixed])
        return tuple(X.dims[p] for p in fixed), actions

    canon = frozenset(c.subgroup_elements)
    matches = []
    for locus, act in zip(X.fixed_loci, X.locus_actions):
        sub = set()
        x = X.group.identity
        g = locus.generator
        while x not in sub:
            sub.add(x)
            x = x * g
        conj = _find_conjugator(X.group, frozenset(sub), canon)
        if conj is not None:
            matches.append((locus, act, conj))
    if not matches:
        return (), {n: Perm(()) for n in c.normalizer.elements}
    if len(matches) > 1:
        raise ValidationError("multiple declared loci match one cyclic class")
    locus, act, x = matches[0]
    # transport: x conjugates the declared subgroup onto the canonical one,
    # so n in N_canon acts on the declared cells through x^-1 n x
    xinv = x.inverse()
    actions = {n: act[xinv * n * x] for n in c.normalizer.elements}
    return locus.dims, actions


def _find_conjugator(G: FiniteGroup, sub: frozenset[Perm],
                     target: frozenset[Perm]) -> Perm | None:
    if len(sub) != len(target):
        return None
    for x in G.elements:
        xinv = x.inverse()
        if all(x * s * xinv in target for s in sub):
            return x
    return None


def _restricted_model(parent_group: Subgroup, dims: Sequence[int],
                      action: dict[Perm, Perm]) -> EquivariantModel:
    """Package a sub-action as a standalone model over the subgroup."""
    H = parent_group.as_group()
    images = [action[g] for g in H.generators]
    return EquivariantModel(H, dims, images, kind="cells")


def cyclotomic_inertia(X: EquivariantModel, p: int = 0
                       ) -> tuple[CyclotomicInertiaComponent, ...]:
    """One component per conjugacy class of cyclic subgroups of order prime
    to p: the fixed model with its normalizer action and the character set."""
    out = []
    for c in cyclic_subgroup_classes(X.group, p):
        dims, action = _locus_cells_and_action(X, c)
        fixed = _restricted_model(c.normalizer, dims, action)
        out.append(CyclotomicInertiaComponent(c, fixed, injective_characters(c)))
    return tuple(out)


def inertia(X: EquivariantModel, p: int = 0) -> tuple[InertiaComponent, ...]:
    """One component per conjugacy class of elements of order prime to p.

    Element classes are enumerated inside each cyclic class: the classes of
    generators of the canonical subgroup under its normalizer.
    """
    G = X.group
    out = []
    for c in cyclic_subgroup_classes(X.group, p):
        dims, action = _locus_cells_and_action(X, c)
        gens_of_c = [g for g in c.subgroup_elements if g.order() == c.order]
        remaining = set(gens_of_c)
        reps = []
        while remaining:
            h = min(remaining)
            orbit = {n.inverse() * h * n for n in c.normalizer.elements}
            reps.append(h)
            remaining -= orbit
        for h in sorted(reps):
            Z = Subgroup(G, tuple(g for g in G.elements if g * h == h * g))
            sub_action = {z: action[z] for z in Z.elements}
            fixed = _restricted_model(Z, dims, sub_action)
            out.append(InertiaComponent(h, Z, fixed))
    return tuple(out)


def quotient_motive(X: EquivariantModel) -> Motive:
    """Motive of the quotient: the invariant part of the model's motive."""
    return invariants(model_motive(X))


@dataclass(frozen=True)
class ComponentContribution:
    component: CyclotomicInertiaComponent
    ranks: tuple[tuple[int, int], ...]  # (twist, multiplicity)
    motive: Motive


@dataclass(frozen=True)
class InertialMotive:
    """Character-refined motive of a quotient model with its per-component
    breakdown; the trivial-class component is the coarse quotient motive."""

    motive: Motive
    components: tuple[ComponentContribution, ...]

    def trivial_component(self) -> Motive:
        return next(cc.motive for cc in self.components
                    if cc.component.cyclic.order == 1)

    def ranks_by_twist(self) -> dict[int, int]:
        return self.motive.unit_multiplicities()


def _component_ranks(comp: CyclotomicInertiaComponent) -> dict[int, int]:
    """Per-twist orbit counts of the normalizer on fixed cells x characters."""
    model = comp.fixed_model
    N = model.group
    chars = comp.chars
    k = chars.size
    out = {}
    for d, cells in sorted(model.cells_of_dim().items()):
        pos = {cell: i for i, cell in enumerate(cells)}

        def action(n: Perm, pair: int, cells=cells, pos=pos) -> int:
            cell_pos, char_pos = divmod(pair, k)
            new_cell = pos[model.action_of(n)(cells[cell_pos])]
            return new_cell * k + chars.act(n, char_pos)

        out[d] = orbit_count(N.elements, action, len(cells) * k)
    return out


def inertial_quotient_motive(X: EquivariantModel, p: int = 0) -> InertialMotive:
    """The character-refined motive: sum over cyclotomic inertia components
    of the normalizer-invariants of (fixed cells) x (injective characters)."""
    contribs = []
    total = Motive.zero()
    for comp in cyclotomic_inertia(X, p):
        ranks = _component_ranks(comp)
        mot = Motive.of([(UNIT, d, r) for d, r in ranks.items()])
        contribs.append(ComponentContribution(comp, tuple(sorted(ranks.items())), mot))
        total = total + mot
    return InertialMotive(total, tuple(contribs))


def inertia_ranks_by_twist(X: EquivariantModel, p: int = 0) -> dict[int, int]:
    """Per-twist orbit counts summed over the element-indexed inertia: the
    independent second route to the refined ranks."""
    out: dict[int, int] = {}
    for comp in inertia(X, p):
        model = comp.fixed_model
        for d, cells in model.cells_of_dim().items():
            pos = {cell: i for i, cell in enumerate(cells)}

            def action(z: Perm, q: int, cells=cells, pos=pos) -> int:
                return pos[model.action_of(z)(cells[q])]

            count = orbit_count(model.group.elements, action, len(cells))
            out[d] = out.get(d, 0) + count
    return {d: r for d, r in out.items() if r}


# ---------------------------------------------------------------------------
# Classifying stacks.

@dataclass(frozen=True)
class ClassifyingStackMotive:
    """Refined motive of a classifying stack: a sum of r points, and for
    characteristic 0 the rank-3 tensor of product structure constants."""

    motive: Motive
    rank: int
    product_constants: tuple[tuple[tuple[int, ...], ...], ...] | None


def bh_motive(H: FiniteGroup, p: int = 0) -> ClassifyingStackMotive:
    """Refined motive of the classifying stack of H.

    The rank is the number of conjugacy classes of elements of order prime
    to p (cross-checked internally against the character-orbit count); the
    product structure is emitted for p = 0 only.
    """
    rank = sum(1 for cls in conjugacy_classes(H)
               if p == 0 or cls.order % p != 0)
    # independent route: orbits of each normalizer on the injective characters
    via_chars = 0
    for c in cyclic_subgroup_classes(H, p):
        chars = injective_characters(c)
        N = c.normalizer.as_group()
        via_chars += orbit_count(N.elements, chars.act, chars.size)
    if via_chars != rank:
        raise RuntimeError(
            f"internal error: class count {rank} and character-orbit count "
            f"{via_chars} disagree")
    constants = None
    if p == 0:
        ring = rep_ring(character_table(H))
        if ring.rank != rank:
            raise RuntimeError("internal error: table rank differs from class count")
        constants = ring.constants
    return ClassifyingStackMotive(Motive.point(rank), rank, constants)


# ---------------------------------------------------------------------------
# Gerbes.

@dataclass(frozen=True)
class GerbeDatum:
    """A gerbe presentation: the band group, monodromy automorphisms given by
    generator images, the base motive and its display label."""

    group: FiniteGroup
    monodromy: tuple[tuple[Perm, ...], ...]
    base: Motive
    base_label: str = "X"


@dataclass(frozen=True)
class CharacterOrbitSet:
    """Conjugation orbits of (cyclic subgroup, injective character) pairs,
    with the permutations induced by a list of outer automorphisms."""

    elements: tuple[tuple[tuple[tuple[int, ...], ...], int], ...]
    aut_perms: tuple[Perm, ...]
    distinguished: int

    @property
    def size(self) -> int:
        return len(self.elements)


def _automorphism_map(H: FiniteGroup, images: Sequence[Perm]) -> dict[Perm, Perm]:
    """Extend generator images to an automorphism of H, fully verified."""
    if len(images) != len(H.generators):
        raise NotAnAutomorphismError(
            f"expected {len(H.generators)} generator images, got {len(images)}")
    for img in images:
        if img not in H:
            raise NotAnAutomorphismError("generator image is not a group element")
    phi: dict[Perm, Perm] = {}
    for x in H.elements:
        acc = H.identity
        for i in H.words[x]:
            acc = acc * images[i]
        phi[x] = acc
    for a in H.elements:
        for b in H.elements:
            if phi[a * b] != phi[a] * phi[b]:
                raise NotAnAutomorphismError(
                    f"images are not multiplicative at {a.cycle_string()}, {b.cycle_string()}")
    if len(set(phi.values())) != H.order:
        raise NotAnAutomorphismError("images define a non-bijective endomorphism")
    return phi


def _cyclic_subgroups_with_generator(H: FiniteGroup, p: int
                                     ) -> dict[frozenset[Perm], Perm]:
    subs: dict[frozenset[Perm], Perm] = {}
    for g in H.elements:
        sub = []
        x = H.identity
        while True:
            sub.append(x)
            x = x * g
            if x.is_identity():
                break
        key = frozenset(sub)
        if p != 0 and math.gcd(len(key), p) != 1:
            continue
        if key not in subs:
            m = len(key)
            subs[key] = min(h for h in key if h.order() == m)
    return subs


def _pair_key(sub: frozenset[Perm], j: int) -> tuple:
    return (len(sub), tuple(sorted(x.images for x in sub)), j)


def _dlog(gen: Perm, target: Perm, order: int) -> int:
    x = Perm.identity(gen.degree)
    for k in range(order):
        if x == target:
            return k
        x = x * gen
    raise ValueError("element is not a power of the generator")


def gerbe_rset(H: FiniteGroup, p: int, monodromy: Sequence[Sequence[Perm]]
               ) -> CharacterOrbitSet:
    """Orbits of conjugation on (cyclic subgroup, injective character) pairs
    and the permutations induced by the monodromy automorphisms."""
    subs = _cyclic_subgroups_with_generator(H, p)

    def act_elem(h: Perm, pair):
        sub, j = pair
        hinv = h.inverse()
        new_sub = frozenset(h * x * hinv for x in sub)
        m = len(sub)
        if m == 1:
            return (new_sub, 0)
        t = _dlog(subs[sub], hinv * subs[new_sub] * h, m)
        return (new_sub, j * t % m)

    pairs = [(sub, j) for sub in subs for j in character_indices(len(sub))]
    orbit_of: dict[tuple, tuple] = {}
    orbits = []
    seen = set()
    for pair in sorted(pairs, key=lambda pr: _pair_key(*pr)):
        key = _pair_key(*pair)
        if key in seen:
            continue
        orbit = {pair}
        frontier = [pair]
        while frontier:
            nxt = []
            for q in frontier:
                for h in H.generators:
                    r = act_elem(h, q)
                    if r not in orbit:
                        orbit.add(r)
                        nxt.append(r)
            frontier = nxt
        rep = min(orbit, key=lambda pr: _pair_key(*pr))
        orbits.append(rep)
        for q in orbit:
            seen.add(_pair_key(*q))
            orbit_of[_pair_key(*q)] = rep
    orbits.sort(key=lambda pr: _pair_key(*pr))
    index = {_pair_key(*rep): i for i, rep in enumerate(orbits)}

    # cross-check: orbit count must match the sum of per-class character orbits
    expected = 0
    for c in cyclic_subgroup_classes(H, p):
        chars = injective_characters(c)
        N = c.normalizer.as_group()
        expected += orbit_count(N.elements, chars.act, chars.size)
    if expected != len(orbits):
        raise RuntimeError("internal error: pair-orbit count disagrees with "
                           "per-class character orbits")

    aut_perms = []
    for images in monodromy:
        phi = _automorphism_map(H, tuple(images))
        phi_inv = {v: k for k, v in phi.items()}
        moved = []
        for sub, j in orbits:
            new_sub = frozenset(phi[x] for x in sub)
            m = len(sub)
            if m == 1:
                image_pair = (new_sub, 0)
            else:
                t = _dlog(subs[sub], phi_inv[subs[new_sub]], m)
                image_pair = (new_sub, j * t % m)
            moved.append(index[_pair_key(*orbit_of[_pair_key(*image_pair)])])
        aut_perms.append(Perm(moved))

    trivial_pair_key = _pair_key(frozenset([H.identity]), 0)
    distinguished = index[trivial_pair_key]
    for perm in aut_perms:
        if perm(distinguished) != distinguished:
            raise RuntimeError("internal error: an automorphism moved the trivial pair")

    elements = tuple((tuple(sorted(x.images for x in sub)), j) for sub, j in orbits)
    return CharacterOrbitSet(elements, tuple(aut_perms), distinguished)


@dataclass(frozen=True)
class GerbeMotive:
    """Refined motive of a gerbe: one base copy per fixed pair orbit, one
    cover atom per nontrivial monodromy orbit; the distinguished copy is the
    coarse factor."""

    motive: Motive
    coarse_factor: Motive
    orbit_sizes: tuple[int, ...]


def gerbe_motive(datum: GerbeDatum, p: int = 0) -> GerbeMotive:
    rset = gerbe_rset(datum.group, p, datum.monodromy)
    n = rset.size
    if rset.aut_perms:
        mono = generate_group(n, list(rset.aut_perms),
                              degree_cap=max(64, n))
        elems = mono.elements
    else:
        elems = (Perm.identity(n),)
    seen = [False] * n
    sizes = []
    total = Motive.zero()
    for start in range(n):
        if seen[start]:
            continue
        orbit = sorted({g(start) for g in elems})
        for q in orbit:
            seen[q] = True
        sizes.append(len(orbit))
        if len(orbit) == 1:
            total = total + datum.base
        else:
            total = total + Motive.of([(Atom.cover(datum.base_label, len(orbit)), 0, 1)])
    return GerbeMotive(total, datum.base, tuple(sizes))


# ---------------------------------------------------------------------------
# One-dimensional orbifolds.

@dataclass(frozen=True)
class OrbifoldCurveMotive:
    """Refined motive of a one-dimensional orbifold: the coarse curve motive
    plus one point per nontrivial character of each stacky point."""

    motive: Motive
    coarse_factor: Motive


def orbifold_curve_motive(genus: int, orders: Sequence[int]) -> OrbifoldCurveMotive:
    if genus < 0:
        raise BadOrderError(f"genus {genus} is negative")
    for n in orders:
        if n < 2:
            raise BadOrderError(f"stacky point order {n} is below 2")
    curve_terms = [(UNIT, 0, 1), (UNIT, 1, 1)]
    if genus > 0:
        curve_terms.insert(1, (Atom.h1(genus), 0, 1))
    curve = Motive.of(curve_terms)
    extra = sum(n - 1 for n in orders)
    return OrbifoldCurveMotive(curve + Motive.point(extra) if extra else curve, curve)


# ---------------------------------------------------------------------------
# Product models (Kunneth direction).

def product_with_point_model(X: EquivariantModel, H: FiniteGroup) -> EquivariantModel:
    """The model (X, G) x (point, H): the product group acts on X's points
    with the second factor acting trivially.  Point-set models only."""
    if X.kind != "hset":
        raise ValidationError("product models are supported for point-set models")
    GH = direct_product(X.group, H)
    ident = Perm.identity(X.size)
    images = list(X.generator_images) + [ident] * len(H.generators)
    return EquivariantModel.hset(GH, X.size, images)
