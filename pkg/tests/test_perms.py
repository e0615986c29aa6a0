"""Permutation-group kernel tests, cross-checked against naive oracles."""

from __future__ import annotations

import random

import pytest

import oracles
from stacky.errors import (
    BadCharacteristicError,
    GroupTooLargeError,
    NonBijectionError,
    NotAnActionError,
    NotASubgroupError,
    NotInNormalizerError,
)
from stacky.perms import (
    Perm,
    alternating_group,
    centralizer,
    conjugacy_classes,
    conjugation_exponent,
    cyclic_group,
    cyclic_subgroup_classes,
    dihedral_group,
    direct_product,
    generate_group,
    normalizer,
    orbit_count,
    quaternion_group,
    symmetric_group,
    trivial_group,
)

S3_GENS = [Perm([1, 0, 2]), Perm([1, 2, 0])]


def test_perm_rejects_non_bijection():
    with pytest.raises(NonBijectionError):
        Perm([0, 0, 1])
    with pytest.raises(NonBijectionError):
        Perm([0, 3, 1])


def test_perm_composition_applies_right_factor_first():
    a = Perm([1, 0, 2])   # (0 1)
    b = Perm([1, 2, 0])   # (0 1 2)
    # (a*b)(x) = a(b(x)): 0 -> 1 -> 0, 1 -> 2 -> 2, 2 -> 0 -> 1
    assert (a * b).images == (0, 2, 1)
    assert (a * a).is_identity()
    assert (b * b.inverse()).is_identity()


def test_perm_cycles_and_order():
    g = Perm.from_cycles(5, [(0, 1, 2), (3, 4)])
    assert g.order() == 6
    assert g.cycle_string() == "(0 1 2)(3 4)"
    assert Perm.identity(4).cycle_string() == "()"


def test_generate_group_s3():
    # oracle: fixed-point closure on raw tuples
    oracle = oracles.closure(3, [(1, 0, 2), (1, 2, 0)])
    G = generate_group(3, S3_GENS)
    assert G.order == 6
    assert {g.images for g in G.elements} == oracle
    assert list(G.elements) == sorted(G.elements)


def test_generate_group_trivial_and_cyclic():
    assert generate_group(1, []).order == 1
    oracle = oracles.closure(4, [(1, 2, 3, 0)])
    C4 = generate_group(4, [Perm([1, 2, 3, 0])])
    assert C4.order == 4
    assert {g.images for g in C4.elements} == oracle


def test_generate_group_words_reconstruct_elements():
    G = generate_group(3, S3_GENS)
    for g in G.elements:
        acc = Perm.identity(3)
        for i in G.words[g]:
            acc = acc * G.generators[i]
        assert acc == g


def test_generate_group_caps():
    with pytest.raises(GroupTooLargeError):
        generate_group(5, [Perm([1, 2, 3, 4, 0])], element_cap=3)
    with pytest.raises(GroupTooLargeError):
        generate_group(65, [], degree_cap=64)


@pytest.mark.parametrize("make,expected_sizes", [
    (lambda: symmetric_group(3), [1, 3, 2]),
    (lambda: trivial_group(), [1]),
    (lambda: cyclic_group(4), [1, 1, 1, 1]),
])
def test_conjugacy_class_sizes(make, expected_sizes):
    G = make()
    classes = conjugacy_classes(G)
    assert sorted(c.size for c in classes) == sorted(expected_sizes)
    oracle = oracles.conj_classes({g.images for g in G.elements})
    assert sorted(len(c) for c in oracle) == sorted(expected_sizes)


def test_conjugacy_classes_partition_and_order():
    for G in (symmetric_group(4), quaternion_group(), dihedral_group(4)):
        classes = conjugacy_classes(G)
        seen = [g for c in classes for g in c.members]
        assert len(seen) == G.order and len(set(seen)) == G.order
        for c in classes:
            assert G.order % c.size == 0
            assert c.representative == min(c.members)
            assert all(g.order() == c.order for g in c.members)
        keys = [(c.order, c.representative.images) for c in classes]
        assert keys == sorted(keys)


def test_cyclic_subgroup_classes_s3():
    G = symmetric_group(3)
    classes = cyclic_subgroup_classes(G, 0)
    assert [c.order for c in classes] == [1, 2, 3]
    # oracle: enumerate subgroups on raw tuples, partition by conjugacy
    elems = {g.images for g in G.elements}
    subs = oracles.cyclic_subgroups(elems)
    assert len(oracles.subgroup_conj_classes(elems, subs)) == 3
    assert [c.order for c in cyclic_subgroup_classes(G, 3)] == [1, 2]
    assert [c.order for c in cyclic_subgroup_classes(trivial_group(), 5)] == [1]


def test_cyclic_subgroup_classes_invariants():
    for G in (symmetric_group(4), alternating_group(4), quaternion_group()):
        for c in cyclic_subgroup_classes(G, 0):
            assert len(c.subgroup_elements) == c.order
            assert c.normalizer.order % c.order == 0
            # conjugates * normalizer order = group order
            conjs = {frozenset(x * s * x.inverse() for s in c.subgroup_elements)
                     for x in G.elements}
            assert len(conjs) * c.normalizer.order == G.order
            powers = set(c.subgroup_elements)
            assert {c.generator} <= powers <= set(c.normalizer.elements)


def test_bad_characteristic_rejected():
    with pytest.raises(BadCharacteristicError):
        cyclic_subgroup_classes(symmetric_group(3), 4)
    with pytest.raises(BadCharacteristicError):
        cyclic_subgroup_classes(symmetric_group(3), 1)


def test_normalizer_and_centralizer_s3():
    G = symmetric_group(3)
    c3 = [Perm([0, 1, 2]), Perm([1, 2, 0]), Perm([2, 0, 1])]
    assert normalizer(G, c3).order == 6
    c2 = [Perm([0, 1, 2]), Perm([1, 0, 2])]
    assert normalizer(G, c2).order == 2
    assert centralizer(G, G.identity).order == 6
    # oracle: direct membership test
    cset = {t.images for t in c2}
    direct = [g for g in G.elements
              if {oracles.compose(oracles.compose(g.images, t), oracles.invert(g.images))
                  for t in cset} == cset]
    assert len(direct) == 2


def test_normalizer_rejects_non_subgroup():
    G = symmetric_group(3)
    with pytest.raises(NotASubgroupError):
        normalizer(G, [Perm([1, 0, 2])])  # missing identity
    with pytest.raises(NotASubgroupError):
        normalizer(G, [Perm([0, 1, 2]), Perm([1, 2, 0])])  # not closed
    with pytest.raises(NotASubgroupError):
        centralizer(G, Perm([1, 0, 3, 2]))


def test_conjugation_exponent_s3():
    G = symmetric_group(3)
    c3 = next(c for c in cyclic_subgroup_classes(G, 0) if c.order == 3)
    # oracle: (0 1)(0 1 2)(0 1) = (0 2 1) = g^2
    n = Perm([1, 0, 2])
    assert conjugation_exponent(n, c3) == 2
    assert conjugation_exponent(G.identity, c3) == 1
    c1 = next(c for c in cyclic_subgroup_classes(G, 0) if c.order == 1)
    assert conjugation_exponent(n, c1) == 1


def test_conjugation_exponent_is_a_homomorphism():
    for G in (symmetric_group(4), quaternion_group(), dihedral_group(6)):
        for c in cyclic_subgroup_classes(G, 0):
            m = c.order
            exps = {n: conjugation_exponent(n, c) for n in c.normalizer.elements}
            for n1 in c.normalizer.elements:
                for n2 in c.normalizer.elements:
                    assert exps[n1 * n2] % m == (exps[n1] * exps[n2]) % m if m > 1 else True


def test_conjugation_exponent_requires_normalizer_membership():
    G = symmetric_group(3)
    c2 = next(c for c in cyclic_subgroup_classes(G, 0) if c.order == 2)
    outside = next(g for g in G.elements if g not in set(c2.normalizer.elements))
    with pytest.raises(NotInNormalizerError):
        conjugation_exponent(outside, c2)


def test_orbit_count_examples():
    C2 = cyclic_group(2)
    assert orbit_count(C2.elements, lambda g, p: g(p), 2) == 1
    S3 = symmetric_group(3)
    assert orbit_count(S3.elements, lambda g, p: g(p), 3) == 1
    T = trivial_group()
    assert orbit_count(T.elements, lambda g, p: p, 7) == 7


def test_orbit_count_matches_oracle_on_coset_actions():
    rng = random.Random(7)
    for G in (symmetric_group(3), dihedral_group(4), alternating_group(4)):
        g = rng.choice(G.elements)
        sub = set()
        x = G.identity
        while x not in sub:
            sub.add(x)
            x = x * g
        cosets = sorted({tuple(sorted((h * s for s in sub))) for h in G.elements})
        idx = {c: i for i, c in enumerate(cosets)}

        def act(y, p, cosets=cosets, idx=idx):
            rep = cosets[p][0]
            moved = y * rep
            return next(idx[c] for c in cosets if moved in c)

        n = len(cosets)
        expected = len(oracles.orbits([h for h in G.elements], act, n))
        assert orbit_count(G.elements, act, n) == expected == 1
        assert oracles.burnside([h for h in G.elements], act, n) == 1


def test_orbit_count_rejects_non_action():
    S3 = symmetric_group(3)
    with pytest.raises(NotAnActionError):
        orbit_count(S3.elements, lambda g, p: (g(p) + 1) % 3, 3)


def test_closure_property_random_groups():
    for G in (symmetric_group(3), quaternion_group(), cyclic_group(6),
              dihedral_group(3), alternating_group(4)):
        elems = set(G.elements)
        assert G.identity in elems
        for a in G.elements:
            assert a.inverse() in elems
            for b in G.elements:
                assert a * b in elems


def test_named_families_have_expected_orders():
    assert [cyclic_group(n).order for n in (1, 2, 5, 12)] == [1, 2, 5, 12]
    assert [symmetric_group(n).order for n in (2, 3, 4)] == [2, 6, 24]
    assert [alternating_group(n).order for n in (3, 4)] == [3, 12]
    assert [dihedral_group(n).order for n in (1, 2, 3, 6)] == [2, 4, 6, 12]
    assert quaternion_group().order == 8
    q8 = quaternion_group()
    assert sorted(g.order() for g in q8.elements) == [1, 2, 4, 4, 4, 4, 4, 4]
    GH = direct_product(symmetric_group(3), cyclic_group(2))
    assert GH.order == 12 and GH.degree == 5
