"""Formal Tate-type motives: twisted atoms, direct sums, tensor products,
group actions, invariants, and graded Chow dimensions.

A motive is a finite multiset of (atom, twist, multiplicity) terms.  Unit
atoms are the Tate pieces; curve weight-1 parts, etale covers and other
non-Tate constituents stay opaque and are tracked symbolically.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import InconsistentActionError, OpaqueTensorError
from .perms import FiniteGroup, Perm, normalizer, orbit_count


@dataclass(frozen=True)
class Atom:
    """One indivisible motive constituent.

    kind is one of "unit" (the point motive; its twists are the Tate pieces),
    "h1" (weight-1 part of a genus-g curve, rank 2g), "cover" (degree-d etale
    cover of a named base) or "opaque" (free symbol).
    """

    kind: str
    genus: int = 0
    base: str = ""
    degree: int = 0
    label: str = ""

    KINDS = ("unit", "h1", "cover", "opaque")

    def __post_init__(self):
        if self.kind not in self.KINDS:
            raise ValueError(f"unknown atom kind {self.kind!r}")
        if self.kind == "h1" and self.genus < 0:
            raise ValueError("h1 atom needs genus >= 0")
        if self.kind == "cover" and (self.degree < 2 or not self.base):
            raise ValueError("cover atom needs a nonempty base label and degree >= 2")
        if self.kind == "opaque" and not self.label:
            raise ValueError("opaque atom needs a nonempty label")

    @classmethod
    def unit(cls) -> "Atom":
        return cls("unit")

    @classmethod
    def h1(cls, genus: int) -> "Atom":
        return cls("h1", genus=genus)

    @classmethod
    def cover(cls, base: str, degree: int) -> "Atom":
        return cls("cover", base=base, degree=degree)

    @classmethod
    def opaque(cls, label: str) -> "Atom":
        return cls("opaque", label=label)

    @property
    def is_unit(self) -> bool:
        return self.kind == "unit"

    def sort_key(self) -> tuple:
        return (self.KINDS.index(self.kind), self.genus, self.base, self.degree, self.label)

    def render(self) -> str:
        if self.kind == "unit":
            return "1"
        if self.kind == "h1":
            return f"[H1_{self.genus}]"
        if self.kind == "cover":
            return f"[Cover({self.base},{self.degree})]"
        return f"[{self.label}]"


UNIT = Atom.unit()


@dataclass(frozen=True)
class Motive:
    """Formal direct sum of twisted atoms; terms are merged and sorted."""

    terms: tuple[tuple[Atom, int, int], ...]

    @classmethod
    def of(cls, terms: Iterable[tuple[Atom, int, int]]) -> "Motive":
        merged: dict[tuple[int, ...], tuple[Atom, int, int]] = {}
        for atom, twist, mult in terms:
            if mult < 0:
                raise ValueError("multiplicities must be nonnegative")
            if mult == 0:
                continue
            key = (twist, *atom.sort_key())
            if key in merged:
                a, t, m = merged[key]
                merged[key] = (a, t, m + mult)
            else:
                merged[key] = (atom, twist, mult)
        return cls(tuple(merged[k] for k in sorted(merged)))

    @classmethod
    def zero(cls) -> "Motive":
        return cls(())

    @classmethod
    def point(cls, mult: int = 1) -> "Motive":
        return cls.of([(UNIT, 0, mult)])

    @classmethod
    def lefschetz(cls, twist: int = 1, mult: int = 1) -> "Motive":
        return cls.of([(UNIT, twist, mult)])

    def is_zero(self) -> bool:
        return not self.terms

    def is_unit_only(self) -> bool:
        return all(atom.is_unit for atom, _, _ in self.terms)

    def unit_multiplicities(self) -> dict[int, int]:
        return {twist: mult for atom, twist, mult in self.terms if atom.is_unit}

    def unit_multiplicity(self, twist: int) -> int:
        return self.unit_multiplicities().get(twist, 0)

    def total_unit_multiplicity(self) -> int:
        return sum(self.unit_multiplicities().values())

    def twists(self) -> tuple[int, ...]:
        return tuple(sorted({t for _, t, _ in self.terms}))

    def __add__(self, other: "Motive") -> "Motive":
        return direct_sum(self, other)

    def __mul__(self, other: "Motive") -> "Motive":
        return tensor(self, other)

    def __str__(self) -> str:
        return poincare_polynomial(self)


def direct_sum(a: Motive, b: Motive) -> Motive:
    """Multiset union with merging; the empty motive is the unit."""
    return Motive.of(a.terms + b.terms)


def tensor(a: Motive, b: Motive) -> Motive:
    """Bilinear tensor product; at least one factor must be pure Tate."""
    if not a.is_unit_only() and not b.is_unit_only():
        raise OpaqueTensorError("both tensor factors contain non-Tate atoms")
    out = []
    for atom_a, ta, ma in a.terms:
        for atom_b, tb, mb in b.terms:
            atom = atom_b if atom_a.is_unit else atom_a
            out.append((atom, ta + tb, ma * mb))
    return Motive.of(out)


@dataclass(frozen=True)
class ChowDimensions:
    """Tate dimension of one graded Chow group plus the opaque atoms that may
    also contribute there (never silently dropped)."""

    tate_dim: int
    opaque_terms: tuple[tuple[Atom, int], ...]


def chow_dim(M: Motive, m: int) -> ChowDimensions:
    """Dimension data of the codimension-m Chow group of M.

    Non-Tate atoms at twist <= m are reported as opaque contributions.
    """
    tate = M.unit_multiplicity(m)
    opaque = tuple((atom, twist) for atom, twist, _ in M.terms
                   if not atom.is_unit and twist <= m)
    return ChowDimensions(tate, opaque)


def poincare_polynomial(M: Motive) -> str:
    """Human-readable sum over terms, Tate pieces rendered as powers of L."""
    if M.is_zero():
        return "0"
    parts = []
    for atom, twist, mult in M.terms:
        if atom.is_unit:
            if twist == 0:
                parts.append(str(mult))
                continue
            power = "L" if twist == 1 else f"L^{twist}"
            parts.append(power if mult == 1 else f"{mult}*{power}")
        else:
            sym = atom.render()
            if twist != 0:
                sym = f"{sym}*L" if twist == 1 else f"{sym}*L^{twist}"
            parts.append(sym if mult == 1 else f"{mult}*{sym}")
    return " + ".join(parts)


# ---------------------------------------------------------------------------
# Equivariant combinatorial models.

@dataclass(frozen=True)
class FixedLocus:
    """Declared fixed-point model for one cyclic subgroup of a cell model.

    The cells listed here model the subvariety fixed by the subgroup
    generated by ``generator``; they are separate from the ambient cells.
    ``action_generators`` are elements of the subgroup's normalizer (they
    must generate it) and ``action_images`` their permutations of the locus
    cells; both empty means the normalizer acts trivially.
    """

    generator: Perm
    dims: tuple[int, ...]
    action_generators: tuple[Perm, ...] = ()
    action_images: tuple[Perm, ...] = ()


class EquivariantModel:
    """A finite point set or graded cell list with a group action.

    The generator images are verified to extend to an action of the whole
    group; the per-element cell permutations are precomputed.  For "hset"
    models fixed loci are computed from the points; "cells" models carry
    declared fixed loci (see FixedLocus).
    """

    def __init__(self, group: FiniteGroup, dims: Sequence[int],
                 generator_images: Sequence[Perm], *, kind: str = "hset",
                 fixed_loci: Sequence[FixedLocus] = ()):
        if kind not in ("hset", "cells"):
            raise ValueError(f"unknown model kind {kind!r}")
        if kind == "hset" and any(d != 0 for d in dims):
            raise ValueError("hset models have all cells in dimension 0")
        if kind == "hset" and fixed_loci:
            raise ValueError("hset models compute their fixed loci")
        self.group = group
        self.kind = kind
        self.dims = tuple(int(d) for d in dims)
        self.generator_images = tuple(generator_images)
        self.fixed_loci = tuple(fixed_loci)

        if len(self.generator_images) != len(group.generators):
            raise InconsistentActionError(
                f"expected {len(group.generators)} generator images, "
                f"got {len(self.generator_images)}")
        n = len(self.dims)
        for i, img in enumerate(self.generator_images):
            if img.degree != n:
                raise InconsistentActionError(
                    f"generator image {i} permutes {img.degree} cells, model has {n}")
            for cell in range(n):
                if self.dims[img(cell)] != self.dims[cell]:
                    raise InconsistentActionError(
                        f"generator image {i} moves cell {cell} across dimensions")
        self.element_actions = extend_action(
            group.elements, group.generators, self.generator_images, n,
            words=group.words)
        self.locus_actions = tuple(self._validate_locus(locus) for locus in self.fixed_loci)

    def _validate_locus(self, locus: FixedLocus) -> dict[Perm, Perm]:
        """Check one declared fixed locus and extend its normalizer action."""
        g = locus.generator
        if g not in self.group:
            raise ValueError("fixed-locus generator is not a group element")
        if g.is_identity():
            raise ValueError("the ambient cells already model the trivial locus")
        sub = [self.group.identity]
        x = g
        while not x.is_identity():
            sub.append(x)
            x = x * g
        key = _subgroup_class_key(self.group, frozenset(sub))
        for other in self.fixed_loci:
            if other is locus:
                break
            o = other.generator
            osub = [self.group.identity]
            x = o
            while not x.is_identity():
                osub.append(x)
                x = x * o
            if _subgroup_class_key(self.group, frozenset(osub)) == key:
                raise ValueError("two fixed loci declare conjugate subgroups")
        N = normalizer(self.group, sub)
        n_loc = len(locus.dims)
        if len(locus.action_generators) != len(locus.action_images):
            raise InconsistentActionError("locus action generators and images differ in count")
        for img in locus.action_images:
            if img.degree != n_loc:
                raise InconsistentActionError("locus action image has the wrong degree")
            for cell in range(n_loc):
                if locus.dims[img(cell)] != locus.dims[cell]:
                    raise InconsistentActionError("locus action moves a cell across dimensions")
        if locus.action_generators:
            nset = set(N.elements)
            for a in locus.action_generators:
                if a not in nset:
                    raise InconsistentActionError(
                        f"{a.cycle_string()} does not normalize the locus subgroup")
            act = extend_action(N.elements, locus.action_generators,
                                locus.action_images, n_loc)
        else:
            ident = Perm.identity(n_loc)
            act = {n: ident for n in N.elements}
        for x in sub:
            if not act[x].is_identity():
                raise InconsistentActionError(
                    "the fixing subgroup must act trivially on its own fixed cells")
        return act

    @property
    def size(self) -> int:
        return len(self.dims)

    def action_of(self, g: Perm) -> Perm:
        return self.element_actions[g]

    def cells_of_dim(self) -> dict[int, tuple[int, ...]]:
        out: dict[int, list[int]] = {}
        for i, d in enumerate(self.dims):
            out.setdefault(d, []).append(i)
        return {d: tuple(v) for d, v in out.items()}

    @classmethod
    def hset(cls, group: FiniteGroup, size: int,
             generator_images: Sequence[Perm]) -> "EquivariantModel":
        return cls(group, (0,) * size, generator_images, kind="hset")

    @classmethod
    def point(cls, group: FiniteGroup) -> "EquivariantModel":
        """The one-point model (classifying-stack case)."""
        return cls.hset(group, 1, [Perm([0])] * len(group.generators))


def _subgroup_class_key(group: FiniteGroup, sub: frozenset[Perm]) -> tuple:
    """Canonical key of the conjugacy class of a subgroup."""
    orbit = {sub}
    frontier = [sub]
    while frontier:
        nxt = []
        for s in frontier:
            for g in group.generators:
                ginv = g.inverse()
                t = frozenset(g * x * ginv for x in s)
                if t not in orbit:
                    orbit.add(t)
                    nxt.append(t)
        frontier = nxt
    return min(tuple(sorted(x.images for x in s)) for s in orbit)


def extend_action(elements: Sequence[Perm], gens: Sequence[Perm],
                  images: Sequence[Perm], degree: int, *,
                  words: dict[Perm, tuple[int, ...]] | None = None) -> dict[Perm, Perm]:
    """Extend generator images to every element, verifying the extension is a
    group homomorphism (raises InconsistentActionError otherwise)."""
    if len(gens) != len(images):
        raise InconsistentActionError("generator and image counts differ")
    ident_cells = Perm.identity(degree)
    actions: dict[Perm, Perm] = {}
    if words is not None:
        for x in elements:
            acc = ident_cells
            for i in words[x]:
                acc = acc * images[i]
            actions[x] = acc
    else:
        ident = Perm.identity(gens[0].degree if gens else elements[0].degree)
        actions[ident] = ident_cells
        frontier = [ident]
        while frontier:
            nxt = []
            for x in frontier:
                for g, img in zip(gens, images):
                    y = x * g
                    if y not in actions:
                        actions[y] = actions[x] * img
                        nxt.append(y)
            frontier = nxt
        if set(actions) != set(elements):
            raise InconsistentActionError(
                "generators do not generate the expected element set")
    for x in elements:
        fx = actions[x]
        for g, img in zip(gens, images):
            if actions[x * g] != fx * img:
                raise InconsistentActionError(
                    f"images do not extend to a group action at {x.cycle_string()}")
    return actions


@dataclass(frozen=True)
class MotiveAction:
    """A group acting on a motive by permuting the copies of each (atom, twist)."""

    motive: Motive
    group: FiniteGroup
    # one entry per motive term, aligned with it: permutations of the
    # multiplicity index set, aligned with group.elements
    slot_actions: tuple[tuple[Perm, ...], ...] = field(repr=False)

    def __post_init__(self):
        if len(self.slot_actions) != len(self.motive.terms):
            raise InconsistentActionError("one action slot per motive term required")
        for (atom, twist, mult), perms in zip(self.motive.terms, self.slot_actions):
            if len(perms) != self.group.order:
                raise InconsistentActionError("need one permutation per group element")
            if any(p.degree != mult for p in perms):
                raise InconsistentActionError(
                    f"slot ({atom.render()}, {twist}) permutations must have degree {mult}")
        idx = self.group.index
        for perms in self.slot_actions:
            if not perms[idx[self.group.identity]].is_identity():
                raise InconsistentActionError("identity must act trivially")
            for x in self.group.elements:
                for g in self.group.generators:
                    if perms[idx[x * g]] != perms[idx[x]] * perms[idx[g]]:
                        raise InconsistentActionError("slot action is not a homomorphism")


def invariants(act: MotiveAction) -> Motive:
    """The fixed part: per (atom, twist) the multiplicity drops to the number
    of orbits of the group on the index set (rank of the averaging projector)."""
    idx = act.group.index
    out = []
    for (atom, twist, mult), perms in zip(act.motive.terms, act.slot_actions):
        count = orbit_count(act.group.elements, lambda g, p: perms[idx[g]](p), mult)
        out.append((atom, twist, count))
    return Motive.of(out)


def model_motive(X: EquivariantModel) -> MotiveAction:
    """h(X) of a model: one Tate summand per cell at the cell's dimension,
    with the induced permutation action."""
    by_dim = X.cells_of_dim()
    motive = Motive.of([(UNIT, d, len(cells)) for d, cells in by_dim.items()])
    slots = []
    for _, twist, _ in motive.terms:
        cells = by_dim[twist]
        pos = {c: i for i, c in enumerate(cells)}
        slots.append(tuple(Perm([pos[X.action_of(g)(c)] for c in cells])
                           for g in X.group.elements))
    return MotiveAction(motive, X.group, tuple(slots))
