"""Command-line front end: parse JSON input documents, dispatch computations,
render deterministic text or JSON reports.

Exit codes: 0 on success, 1 when a verification fails, 2 on input errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from typing import Any, Sequence

from .chars import character_table
from .decomp import (
    GerbeDatum,
    bh_motive,
    gerbe_motive,
    inertial_quotient_motive,
    orbifold_curve_motive,
)
from .errors import ParseError, StackyError, ValidationError
from .motives import Atom, EquivariantModel, FixedLocus, Motive, chow_dim, poincare_polynomial
from .perms import (
    FiniteGroup,
    Perm,
    conjugacy_classes,
    cyclic_group,
    cyclic_subgroup_classes,
    generate_group,
)
from .verify import (
    check_inertia_dimension,
    check_kunneth,
    check_rep_ring_vs_classes,
    run_suite,
    standard_splitting_reports,
)

CHECK_NAMES = ("inertia-dim", "kunneth", "rep-ring", "splitting", "suite", "all")


@dataclass(frozen=True)
class InputDocument:
    """A parsed input file: the group plus at most one computation target."""

    characteristic: int
    group: FiniteGroup
    model: EquivariantModel | None
    gerbe: GerbeDatum | None
    curve: tuple[int, tuple[int, ...]] | None

    def to_dict(self) -> dict:
        doc: dict[str, Any] = {
            "characteristic": self.characteristic,
            "group": {"degree": self.group.degree,
                      "generators": [list(g.images) for g in self.group.generators]},
        }
        if self.model is not None:
            if self.model.kind == "hset":
                doc["model"] = {"hset": {
                    "size": self.model.size,
                    "generatorImages": [list(g.images) for g in self.model.generator_images]}}
            else:
                cells: dict[str, Any] = {
                    "cells": [{"dim": d} for d in self.model.dims],
                    "generatorImages": [list(g.images) for g in self.model.generator_images]}
                if self.model.fixed_loci:
                    cells["fixedLoci"] = [_locus_to_dict(l) for l in self.model.fixed_loci]
                doc["model"] = {"cells": cells}
        if self.gerbe is not None:
            doc["gerbe"] = {
                "monodromy": [[list(p.images) for p in auto] for auto in self.gerbe.monodromy],
                "base": motive_to_json(self.gerbe.base),
                "baseLabel": self.gerbe.base_label}
        if self.curve is not None:
            doc["curve"] = {"genus": self.curve[0], "orders": list(self.curve[1])}
        return doc


def _locus_to_dict(locus: FixedLocus) -> dict:
    out: dict[str, Any] = {"generator": list(locus.generator.images),
                           "cells": [{"dim": d} for d in locus.dims]}
    if locus.action_generators:
        out["normalizerGenerators"] = [list(g.images) for g in locus.action_generators]
        out["normalizerImages"] = [list(g.images) for g in locus.action_images]
    return out


# ---------------------------------------------------------------------------
# Parsing with path-qualified messages.

def _expect(cond: bool, path: str, message: str) -> None:
    if not cond:
        raise ValidationError(f"{path}: {message}")


def _get_int(obj: Any, path: str, *, minimum: int | None = None) -> int:
    _expect(isinstance(obj, int) and not isinstance(obj, bool), path, "expected an integer")
    if minimum is not None:
        _expect(obj >= minimum, path, f"expected an integer >= {minimum}")
    return obj


def _get_list(obj: Any, path: str) -> list:
    _expect(isinstance(obj, list), path, "expected an array")
    return obj


def _get_dict(obj: Any, path: str) -> dict:
    _expect(isinstance(obj, dict), path, "expected an object")
    return obj


def _parse_perm(obj: Any, path: str, degree: int) -> Perm:
    arr = _get_list(obj, path)
    _expect(len(arr) == degree, path, f"expected {degree} entries, got {len(arr)}")
    for i, x in enumerate(arr):
        _expect(isinstance(x, int) and not isinstance(x, bool), f"{path}[{i}]",
                "expected an integer")
        _expect(0 <= x < degree, f"{path}[{i}]", f"index {x} out of range 0..{degree - 1}")
    try:
        return Perm(arr)
    except StackyError as exc:
        raise ValidationError(f"{path}: {exc}") from exc


def atom_from_json(obj: Any, path: str) -> Atom:
    spec = _get_dict(obj, path)
    kind = spec.get("kind")
    _expect(kind in Atom.KINDS, f"{path}.kind", f"expected one of {list(Atom.KINDS)}")
    try:
        if kind == "unit":
            return Atom.unit()
        if kind == "h1":
            return Atom.h1(_get_int(spec.get("genus"), f"{path}.genus", minimum=0))
        if kind == "cover":
            base = spec.get("base")
            _expect(isinstance(base, str) and base, f"{path}.base",
                    "expected a nonempty string")
            return Atom.cover(base, _get_int(spec.get("degree"), f"{path}.degree", minimum=2))
        label = spec.get("label")
        _expect(isinstance(label, str) and label, f"{path}.label",
                "expected a nonempty string")
        return Atom.opaque(label)
    except ValueError as exc:
        raise ValidationError(f"{path}: {exc}") from exc


def motive_from_json(obj: Any, path: str) -> Motive:
    terms = []
    for i, term in enumerate(_get_list(obj, path)):
        tpath = f"{path}[{i}]"
        spec = _get_dict(term, tpath)
        atom = atom_from_json(spec.get("atom"), f"{tpath}.atom")
        twist = spec.get("twist", 0)
        _expect(isinstance(twist, int) and not isinstance(twist, bool),
                f"{tpath}.twist", "expected an integer")
        mult = _get_int(spec.get("mult", 1), f"{tpath}.mult", minimum=1)
        terms.append((atom, twist, mult))
    return Motive.of(terms)


def motive_to_json(M: Motive) -> list[dict]:
    out = []
    for atom, twist, mult in M.terms:
        a: dict[str, Any] = {"kind": atom.kind}
        if atom.kind == "h1":
            a["genus"] = atom.genus
        elif atom.kind == "cover":
            a["base"] = atom.base
            a["degree"] = atom.degree
        elif atom.kind == "opaque":
            a["label"] = atom.label
        out.append({"atom": a, "twist": twist, "mult": mult})
    return out


def parse_document(raw: Any) -> InputDocument:
    doc = _get_dict(raw, "document")
    characteristic = doc.get("characteristic", 0)
    _expect(isinstance(characteristic, int) and characteristic >= 0,
            "characteristic", "expected a nonnegative integer")

    gspec = _get_dict(doc.get("group"), "group")
    degree = _get_int(gspec.get("degree"), "group.degree", minimum=1)
    gens = [_parse_perm(g, f"group.generators[{i}]", degree)
            for i, g in enumerate(_get_list(gspec.get("generators"), "group.generators"))]
    try:
        group = generate_group(degree, gens)
    except StackyError as exc:
        raise ValidationError(f"group: {exc}") from exc

    model = None
    if "model" in doc:
        model = _parse_model(doc["model"], group)
    gerbe = None
    if "gerbe" in doc:
        gerbe = _parse_gerbe(doc["gerbe"], group)
    curve = None
    if "curve" in doc:
        cspec = _get_dict(doc["curve"], "curve")
        genus = _get_int(cspec.get("genus"), "curve.genus", minimum=0)
        orders = tuple(_get_int(n, f"curve.orders[{i}]", minimum=2)
                       for i, n in enumerate(_get_list(cspec.get("orders"), "curve.orders")))
        curve = (genus, orders)
    return InputDocument(characteristic, group, model, gerbe, curve)


def _parse_model(obj: Any, group: FiniteGroup) -> EquivariantModel:
    spec = _get_dict(obj, "model")
    keys = set(spec)
    _expect(keys in ({"hset"}, {"cells"}), "model",
            'expected exactly one of "hset" or "cells"')
    try:
        if "hset" in spec:
            h = _get_dict(spec["hset"], "model.hset")
            size = _get_int(h.get("size"), "model.hset.size", minimum=0)
            images = [_parse_perm(im, f"model.hset.generatorImages[{i}]", size)
                      for i, im in enumerate(_get_list(h.get("generatorImages"),
                                                       "model.hset.generatorImages"))]
            return EquivariantModel.hset(group, size, images)
        c = _get_dict(spec["cells"], "model.cells")
        dims = []
        for i, cell in enumerate(_get_list(c.get("cells"), "model.cells.cells")):
            cd = _get_dict(cell, f"model.cells.cells[{i}]")
            dims.append(_get_int(cd.get("dim"), f"model.cells.cells[{i}].dim", minimum=0))
        n = len(dims)
        images = [_parse_perm(im, f"model.cells.generatorImages[{i}]", n)
                  for i, im in enumerate(_get_list(c.get("generatorImages"),
                                                   "model.cells.generatorImages"))]
        loci = []
        for i, lspec in enumerate(_get_list(c.get("fixedLoci", []), "model.cells.fixedLoci")):
            loci.append(_parse_locus(lspec, f"model.cells.fixedLoci[{i}]", group))
        return EquivariantModel(group, dims, images, kind="cells", fixed_loci=loci)
    except (StackyError, ValueError) as exc:
        if isinstance(exc, ValidationError):
            raise
        raise ValidationError(f"model: {exc}") from exc


def _parse_locus(obj: Any, path: str, group: FiniteGroup) -> FixedLocus:
    spec = _get_dict(obj, path)
    gen = _parse_perm(spec.get("generator"), f"{path}.generator", group.degree)
    dims = []
    for i, cell in enumerate(_get_list(spec.get("cells"), f"{path}.cells")):
        cd = _get_dict(cell, f"{path}.cells[{i}]")
        dims.append(_get_int(cd.get("dim"), f"{path}.cells[{i}].dim", minimum=0))
    action_gens = []
    action_imgs = []
    if "normalizerGenerators" in spec or "normalizerImages" in spec:
        raw_gens = _get_list(spec.get("normalizerGenerators"), f"{path}.normalizerGenerators")
        raw_imgs = _get_list(spec.get("normalizerImages"), f"{path}.normalizerImages")
        _expect(len(raw_gens) == len(raw_imgs), f"{path}.normalizerImages",
                "expected as many images as normalizer generators")
        action_gens = [_parse_perm(g, f"{path}.normalizerGenerators[{i}]", group.degree)
                       for i, g in enumerate(raw_gens)]
        action_imgs = [_parse_perm(g, f"{path}.normalizerImages[{i}]", len(dims))
                       for i, g in enumerate(raw_imgs)]
    return FixedLocus(gen, tuple(dims), tuple(action_gens), tuple(action_imgs))


def _parse_gerbe(obj: Any, group: FiniteGroup) -> GerbeDatum:
    spec = _get_dict(obj, "gerbe")
    monodromy = []
    for i, auto in enumerate(_get_list(spec.get("monodromy", []), "gerbe.monodromy")):
        images = _get_list(auto, f"gerbe.monodromy[{i}]")
        _expect(len(images) == len(group.generators), f"gerbe.monodromy[{i}]",
                f"expected {len(group.generators)} generator images")
        monodromy.append(tuple(
            _parse_perm(im, f"gerbe.monodromy[{i}][{j}]", group.degree)
            for j, im in enumerate(images)))
    base = motive_from_json(spec.get("base", [{"atom": {"kind": "unit"}}]), "gerbe.base")
    label = spec.get("baseLabel", "X")
    _expect(isinstance(label, str) and label, "gerbe.baseLabel", "expected a nonempty string")
    return GerbeDatum(group, tuple(monodromy), base, label)


def load_document(path: str) -> InputDocument:
    try:
        with open(path, encoding="utf-8") as fh:
            raw = json.load(fh)
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path} is not valid JSON: {exc}") from exc
    return parse_document(raw)


# ---------------------------------------------------------------------------
# Output assembly.

def _chow_dims_json(M: Motive) -> dict:
    out = {}
    for t in M.twists():
        res = chow_dim(M, t)
        out[str(t)] = {"tateDim": res.tate_dim,
                       "opaque": [f"{atom.render()}@{tw}" for atom, tw in res.opaque_terms]}
    return out


def _motive_payload(M: Motive) -> dict:
    return {"motive": motive_to_json(M), "poincare": poincare_polynomial(M),
            "chowDims": _chow_dims_json(M)}


def cmd_group(doc: InputDocument, with_chars: bool) -> dict:
    G = doc.group
    p = doc.characteristic
    classes = conjugacy_classes(G)
    cyclics = cyclic_subgroup_classes(G, p)
    out: dict[str, Any] = {
        "command": "group",
        "characteristic": p,
        "order": G.order,
        "conjugacyClasses": [
            {"order": c.order, "size": c.size, "representative": list(c.representative.images)}
            for c in classes],
        "cyclicClasses": [
            {"order": c.order, "generator": list(c.generator.images),
             "normalizerOrder": c.normalizer.order}
            for c in cyclics],
    }
    if with_chars:
        T = character_table(G)
        out["characterTable"] = {
            "degrees": list(T.degrees),
            "classes": [list(c.representative.images) for c in T.classes],
            "rows": [[str(v) for v in row] for row in T.rows],
        }
    return out


def cmd_motive_bh(doc: InputDocument) -> dict:
    res = bh_motive(doc.group, doc.characteristic)
    out = {"command": "motive-bh", "characteristic": doc.characteristic,
           "rank": res.rank, **_motive_payload(res.motive)}
    if res.product_constants is not None:
        out["productMatrix"] = [[list(row) for row in plane]
                                for plane in res.product_constants]
    return out


def cmd_motive_quotient(doc: InputDocument) -> dict:
    if doc.model is None:
        raise ValidationError("model: required for the quotient command")
    res = inertial_quotient_motive(doc.model, doc.characteristic)
    components = []
    for cc in res.components:
        components.append({
            "cyclicOrder": cc.component.cyclic.order,
            "generator": list(cc.component.cyclic.generator.images),
            "fixedCells": cc.component.fixed_model.size,
            "ranks": {str(t): r for t, r in cc.ranks},
            "motive": motive_to_json(cc.motive),
        })
    return {"command": "motive-quotient", "characteristic": doc.characteristic,
            "components": components,
            "coarse": _motive_payload(res.trivial_component()),
            **_motive_payload(res.motive)}


def cmd_motive_gerbe(doc: InputDocument) -> dict:
    if doc.gerbe is None:
        raise ValidationError("gerbe: required for the gerbe command")
    res = gerbe_motive(doc.gerbe, doc.characteristic)
    return {"command": "motive-gerbe", "characteristic": doc.characteristic,
            "orbitSizes": list(res.orbit_sizes),
            "coarse": _motive_payload(res.coarse_factor),
            **_motive_payload(res.motive)}


def cmd_motive_curve(genus: int, orders: Sequence[int]) -> dict:
    res = orbifold_curve_motive(genus, orders)
    return {"command": "motive-curve", "genus": genus, "orders": list(orders),
            "coarse": _motive_payload(res.coarse_factor),
            **_motive_payload(res.motive)}


def cmd_verify(doc: InputDocument, check: str, seed: int) -> dict:
    model = doc.model if doc.model is not None else EquivariantModel.point(doc.group)
    p = doc.characteristic
    reports = []
    if check in ("inertia-dim", "all"):
        reports.append(check_inertia_dimension(model, p))
    if check == "kunneth" or (check == "all" and model.kind == "hset"):
        reports.append(check_kunneth(model, cyclic_group(2), p))
    if check in ("rep-ring", "all"):
        reports.append(check_rep_ring_vs_classes(doc.group))
    if check in ("splitting", "all"):
        reports.extend(standard_splitting_reports(12))
    if check in ("suite", "all"):
        reports.extend(run_suite(seed=seed, count=100))
    return {"command": "verify", "check": check, "seed": seed,
            "reports": [r.to_dict() for r in reports],
            "allPassed": all(r.passed for r in reports)}


# ---------------------------------------------------------------------------
# Rendering.

def render_json(out: dict) -> str:
    return json.dumps(out, sort_keys=True, separators=(",", ":")) + "\n"


def render_text(out: dict) -> str:
    lines = [f"command: {out['command']}"]
    if "order" in out:
        lines.append(f"order: {out['order']}")
        lines.append(f"conjugacy classes: {len(out['conjugacyClasses'])}")
        for c in out["conjugacyClasses"]:
            lines.append(f"  order {c['order']} size {c['size']} rep {c['representative']}")
        lines.append(f"cyclic subgroup classes: {len(out['cyclicClasses'])}")
        for c in out["cyclicClasses"]:
            lines.append(f"  order {c['order']} normalizer {c['normalizerOrder']} "
                         f"gen {c['generator']}")
        if "characterTable" in out:
            T = out["characterTable"]
            lines.append(f"character table ({len(T['rows'])} rows):")
            for deg, row in zip(T["degrees"], T["rows"]):
                lines.append(f"  deg {deg}: " + ", ".join(row))
    if "poincare" in out:
        lines.append(f"poincare: {out['poincare']}")
        for t, info in sorted(out["chowDims"].items(), key=lambda kv: int(kv[0])):
            opaque = f" (opaque: {', '.join(info['opaque'])})" if info["opaque"] else ""
            lines.append(f"  A^{t}: dim {info['tateDim']}{opaque}")
    if "rank" in out:
        lines.append(f"rank: {out['rank']}")
    if "components" in out:
        lines.append("components:")
        for c in out["components"]:
            ranks = ", ".join(f"A^{t}={r}" for t, r in sorted(c["ranks"].items(),
                                                              key=lambda kv: int(kv[0])))
            lines.append(f"  cyclic order {c['cyclicOrder']}: fixed cells "
                         f"{c['fixedCells']}, {ranks if ranks else 'empty'}")
    if "orbitSizes" in out:
        lines.append(f"orbit sizes: {out['orbitSizes']}")
    if "reports" in out:
        for r in out["reports"]:
            status = "PASS" if r["pass"] else "FAIL"
            lines.append(f"{status} {r['check']} [{r['inputDigest']}] "
                         f"lhs={r['lhs']} rhs={r['rhs']}")
        lines.append(f"all passed: {out['allPassed']}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# Argument handling.

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="stacky",
        description="Exact Tate-motive decompositions for finite-group "
                    "quotient stack models")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser, needs_input: bool = True) -> None:
        if needs_input:
            p.add_argument("--input", required=True, help="JSON input document")
        p.add_argument("--format", choices=("text", "json"), default="text")
        p.add_argument("--characteristic", type=int, default=None,
                       help="override the document characteristic")

    g = sub.add_parser("group", help="group invariants and character data")
    common(g)
    g.add_argument("--chars", action="store_true", help="include the character table")

    m = sub.add_parser("motive", help="motive decompositions")
    msub = m.add_subparsers(dest="target", required=True)
    for name in ("bh", "quotient", "gerbe"):
        common(msub.add_parser(name))
    curve = msub.add_parser("curve")
    curve.add_argument("--input", required=False, default=None)
    curve.add_argument("--format", choices=("text", "json"), default="text")
    curve.add_argument("--characteristic", type=int, default=None)
    curve.add_argument("--genus", type=int, default=None)
    curve.add_argument("--orders", type=str, default=None,
                       help="comma-separated stacky point orders")

    v = sub.add_parser("verify", help="run exact cross-checks")
    common(v)
    v.add_argument("--check", choices=CHECK_NAMES, default="all")
    v.add_argument("--seed", type=int, default=0, help="randomized suite seed")
    return parser


def _apply_characteristic(doc: InputDocument, override: int | None) -> InputDocument:
    if override is None:
        return doc
    if override < 0:
        raise ValidationError("characteristic: expected a nonnegative integer")
    return InputDocument(override, doc.group, doc.model, doc.gerbe, doc.curve)


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "group":
            doc = _apply_characteristic(load_document(args.input), args.characteristic)
            out = cmd_group(doc, args.chars)
        elif args.command == "motive":
            if args.target == "curve":
                genus, orders = _curve_arguments(args)
                out = cmd_motive_curve(genus, orders)
            else:
                doc = _apply_characteristic(load_document(args.input), args.characteristic)
                out = {"bh": cmd_motive_bh,
                       "quotient": cmd_motive_quotient,
                       "gerbe": cmd_motive_gerbe}[args.target](doc)
        else:
            doc = _apply_characteristic(load_document(args.input), args.characteristic)
            out = cmd_verify(doc, args.check, args.seed)
    except StackyError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    sys.stdout.write(render_json(out) if args.format == "json" else render_text(out))
    if args.command == "verify" and not out["allPassed"]:
        return 1
    return 0


def _curve_arguments(args) -> tuple[int, tuple[int, ...]]:
    genus = args.genus
    orders: tuple[int, ...] | None = None
    if args.orders is not None:
        try:
            orders = tuple(int(x) for x in args.orders.split(",") if x != "")
        except ValueError as exc:
            raise ValidationError(f"--orders: {exc}") from exc
    if args.input is not None:
        doc = load_document(args.input)
        if doc.curve is not None:
            if genus is None:
                genus = doc.curve[0]
            if orders is None:
                orders = doc.curve[1]
    if genus is None:
        raise ValidationError("curve.genus: required (use --genus or an input document)")
    if orders is None:
        orders = ()
    return genus, orders


if __name__ == "__main__":
    raise SystemExit(main())
