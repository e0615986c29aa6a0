"""Independent dual-route cross-checks packaged as callable verifications.

Every check compares two values computed along genuinely different routes and
returns a report; nothing is tolerance-based, all comparisons are exact.  The
randomized suite draws desk-scale groups and coset actions from a seeded
generator, so failures are reproducible from the digest alone.
"""

from __future__ import annotations

import hashlib
import json
import random
from dataclasses import dataclass
from typing import Iterator, Sequence

from .chars import character_table, rep_ring
from .corresp import (
    Correspondence,
    compose,
    graph_correspondences,
    splitting_certificate,
)
from .cyclo import Cyclotomic
from .decomp import (
    bh_motive,
    inertia_ranks_by_twist,
    inertial_quotient_motive,
    product_with_point_model,
)
from .motives import EquivariantModel
from .perms import (
    FiniteGroup,
    Perm,
    alternating_group,
    cyclic_group,
    dihedral_group,
    quaternion_group,
    symmetric_group,
)


@dataclass(frozen=True)
class VerificationReport:
    """Outcome of one exact cross-check."""

    check_name: str
    input_digest: str
    lhs: str
    rhs: str
    passed: bool

    def to_dict(self) -> dict:
        return {"check": self.check_name, "inputDigest": self.input_digest,
                "lhs": self.lhs, "rhs": self.rhs, "pass": self.passed}


def _digest(payload: object) -> str:
    blob = json.dumps(payload, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(blob.encode()).hexdigest()[:16]


def _model_payload(X: EquivariantModel) -> dict:
    return {
        "degree": X.group.degree,
        "generators": [list(g.images) for g in X.group.generators],
        "kind": X.kind,
        "dims": list(X.dims),
        "images": [list(g.images) for g in X.generator_images],
        "loci": [{"generator": list(l.generator.images), "dims": list(l.dims)}
                 for l in X.fixed_loci],
    }


def _render_ranks(ranks: dict[int, int]) -> str:
    return json.dumps({str(t): r for t, r in sorted(ranks.items())},
                      sort_keys=True, separators=(",", ":"))


def check_inertia_dimension(X: EquivariantModel, p: int = 0) -> VerificationReport:
    """Per-twist ranks of the refined quotient motive against the orbit counts
    summed over the element-indexed inertia components."""
    lhs = inertial_quotient_motive(X, p).ranks_by_twist()
    rhs = inertia_ranks_by_twist(X, p)
    return VerificationReport(
        "inertia-dim", _digest({"model": _model_payload(X), "p": p}),
        _render_ranks(lhs), _render_ranks(rhs), lhs == rhs)


def check_kunneth(X: EquivariantModel, H: FiniteGroup, p: int = 0) -> VerificationReport:
    """Per-twist ranks of the product model against the convolution of the
    factors' rank vectors."""
    prod = product_with_point_model(X, H)
    lhs = inertial_quotient_motive(prod, p).ranks_by_twist()
    xr = inertial_quotient_motive(X, p).ranks_by_twist()
    hr = {0: bh_motive(H, p).rank}
    conv: dict[int, int] = {}
    for a, ra in xr.items():
        for b, rb in hr.items():
            conv[a + b] = conv.get(a + b, 0) + ra * rb
    conv = {t: r for t, r in conv.items() if r}
    payload = {"model": _model_payload(X), "p": p,
               "h": [list(g.images) for g in H.generators], "hdeg": H.degree}
    return VerificationReport("kunneth", _digest(payload),
                              _render_ranks(lhs), _render_ranks(conv), lhs == conv)


def check_rep_ring_vs_classes(H: FiniteGroup) -> VerificationReport:
    """Rank of the representation ring against the refined classifying-stack
    rank, plus the pointwise character identity on every class."""
    T = character_table(H)
    ring = rep_ring(T)
    bh = bh_motive(H, 0)
    rank_ok = ring.rank == bh.rank
    pointwise_ok = True
    r = ring.rank
    for i in range(r):
        for j in range(r):
            for ci in range(len(T.classes)):
                acc = Cyclotomic.from_rational(0)
                for k in range(r):
                    if ring.constants[i][j][k]:
                        acc = acc + T.rows[k][ci] * ring.constants[i][j][k]
                if not acc == T.rows[i][ci] * T.rows[j][ci]:
                    pointwise_ok = False
    lhs = f"ring rank {ring.rank}, pointwise identities "
    lhs += "hold" if pointwise_ok else "fail"
    rhs = f"class-count rank {bh.rank}"
    payload = {"degree": H.degree, "generators": [list(g.images) for g in H.generators]}
    return VerificationReport("rep-ring", _digest(payload), lhs, rhs,
                              rank_ok and pointwise_ok)


def check_degree_splitting(f: Sequence[int], n: int, k: int, m: int) -> VerificationReport:
    """Pushforward after pullback of an equidegree cover must be m times the
    identity and the averaging idempotent must split exactly."""
    payload = {"map": list(f), "n": n, "k": k, "m": m}
    digest = _digest(payload)
    fibers = [0] * k
    for v in f:
        fibers[v] += 1
    if any(size != m for size in fibers):
        return VerificationReport("splitting", digest,
                                  f"fiber sizes {fibers}", f"claimed degree {m}", False)
    pull, push = graph_correspondences(f, n, k)
    scaled = compose(push, pull)
    target = Correspondence(pull.source, pull.source,
                            {0: tuple(tuple(m if i == j else 0 for j in range(k))
                                      for i in range(k))})
    identity_ok = scaled == target
    factor = splitting_certificate(f, n, k, m)
    round_ok = (compose(factor.retraction, factor.inclusion)
                == Correspondence.identity(factor.image))
    projector = compose(factor.inclusion, factor.retraction)
    round_ok = round_ok and compose(projector, projector) == projector
    return VerificationReport(
        "splitting", digest,
        f"pushforward o pullback {'=' if identity_ok else '!='} {m}*id",
        f"round trips {'hold' if round_ok else 'fail'}",
        identity_ok and round_ok)


# ---------------------------------------------------------------------------
# Randomized suite.

def _group_pool() -> list[tuple[str, FiniteGroup]]:
    pool = [(f"C{n}", cyclic_group(n)) for n in range(1, 13)]
    pool += [(f"D{n}", dihedral_group(n)) for n in range(2, 7)]
    pool += [("S3", symmetric_group(3)), ("S4", symmetric_group(4)),
             ("A4", alternating_group(4)), ("Q8", quaternion_group())]
    return pool


def _random_subgroup(rng: random.Random, G: FiniteGroup, max_index: int) -> list[Perm]:
    """A random subgroup whose coset space fits the point budget."""
    for _ in range(30):
        seeds = [rng.choice(G.elements) for _ in range(rng.randint(1, 2))]
        elems = {G.identity}
        frontier = [G.identity]
        while frontier:
            nxt = []
            for x in frontier:
                for s in seeds:
                    y = x * s
                    if y not in elems:
                        elems.add(y)
                        nxt.append(y)
            frontier = nxt
        if G.order // len(elems) <= max_index:
            return sorted(elems)
    return sorted(G.elements)


def random_coset_model(rng: random.Random, G: FiniteGroup,
                       max_points: int = 20) -> EquivariantModel:
    """Disjoint union of coset spaces of random subgroups, as a point model."""
    blocks: list[list[tuple[Perm, ...]]] = []
    total = 0
    for _ in range(rng.randint(1, 3)):
        budget = max_points - total
        if budget < 1:
            break
        sub = _random_subgroup(rng, G, budget)
        cosets = sorted({tuple(sorted(x * s for s in sub)) for x in G.elements})
        if total + len(cosets) > max_points:
            continue
        blocks.append(cosets)
        total += len(cosets)
    if not blocks:
        blocks = [[tuple(sorted(G.elements))]]
        total = 1

    images = []
    for g in G.generators:
        img: list[int] = []
        offset = 0
        for cosets in blocks:
            lookup = {c: i for i, c in enumerate(cosets)}
            for coset in cosets:
                moved = tuple(sorted(g * x for x in coset))
                img.append(offset + lookup[moved])
            offset += len(cosets)
        images.append(Perm(img))
    return EquivariantModel.hset(G, total, images)


def suite_inputs(seed: int, count: int = 100
                 ) -> Iterator[tuple[str, EquivariantModel, FiniteGroup, int]]:
    """Deterministic stream of (label, model, second factor, characteristic)."""
    rng = random.Random(seed)
    pool = _group_pool()
    second = [("C2", cyclic_group(2)), ("C3", cyclic_group(3)),
              ("S3", symmetric_group(3)), ("C4", cyclic_group(4))]
    for i in range(count):
        gname, G = rng.choice(pool)
        X = random_coset_model(rng, G)
        hname, H = rng.choice(second)
        p = rng.choice([0, 2, 3])
        yield f"seed={seed} input={i} group={gname} h={hname} p={p}", X, H, p


def run_suite(seed: int = 0, count: int = 100) -> tuple[VerificationReport, ...]:
    """Run the inertia-dimension and product-rank checks on the seeded suite."""
    reports = []
    for label, X, H, p in suite_inputs(seed, count):
        rep = check_inertia_dimension(X, p)
        reports.append(VerificationReport(
            rep.check_name, f"{rep.input_digest} [{label}]", rep.lhs, rep.rhs, rep.passed))
        rep = check_kunneth(X, H, p)
        reports.append(VerificationReport(
            rep.check_name, f"{rep.input_digest} [{label}]", rep.lhs, rep.rhs, rep.passed))
    return tuple(reports)


def standard_splitting_reports(max_points: int = 12) -> tuple[VerificationReport, ...]:
    """Splitting checks over every equidegree cover shape up to a point budget."""
    reports = []
    for k in range(1, max_points + 1):
        for m in range(1, max_points // k + 1):
            n = k * m
            f = [j for j in range(k) for _ in range(m)]
            reports.append(check_degree_splitting(f, n, k, m))
    return tuple(reports)
