"""Batch front end: ``hovey-forge <command> <specfile> [flags]``.

Commands: ``catalog``, ``ext-table``, ``check-pair``, ``build-hovey`` and
``classify`` (the latter takes a morphism file via ``--morphism``). A spec
file may be replaced by ``--demo lambda2|a2|n3``. The process exit code is
0 exactly when every requested verification passed with no inconclusive
entries, unless ``--allow-inconclusive`` is given; ``build-hovey``
additionally requires full certification.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import dataclass

import numpy as np

from .algebra import Algebra, algebra_to_dict, validate_algebra
from .catalog import (Catalog, CotorsionPair, build_catalog,
                      build_cotorsion_pair, object_class)
from .demos import DEMO_NAMES, demo_spec
from .exceptions import HoveyForgeError, SpecError
from .homological import ext1
from .hovey import build_hovey_triple, classify_morphism
from .report import Report, emit_report
from .serialize import morphism_from_dict, ses_to_dict
from .verification import FAIL, INCONCLUSIVE

COMMANDS = ("catalog", "ext-table", "check-pair", "build-hovey", "classify")
_BUILDER_KEYS = ("cofibration_pair", "fibration_pair")


@dataclass
class RunSpec:
    algebra: Algebra
    algebra_dict: dict
    pairs: dict               # builder names, echoed
    command: str | None
    witness_bound: int | None
    classify_morphism_input: object | None = None

    def echo(self) -> dict:
        return {
            "algebra": self.algebra_dict,
            "pairs": self.pairs,
            "command": self.command,
            "witness_bound": self.witness_bound,
        }


def _validate_builder(b) -> object:
    if isinstance(b, str):
        if b not in ("all", "proj", "inj"):
            raise SpecError(f"unknown class builder '{b}'")
        return b
    if isinstance(b, list) and all(isinstance(i, int) for i in b):
        return b
    raise SpecError("class builder must be 'all', 'proj', 'inj' or an id list")


def parse_spec_dict(raw: dict) -> RunSpec:
    if not isinstance(raw, dict):
        raise SpecError("run spec must be a JSON object")
    if "algebra" not in raw:
        raise SpecError("missing 'algebra' section")
    algebra = validate_algebra(raw["algebra"])
    pairs_raw = raw.get("pairs", {})
    pairs = {}
    for key in _BUILDER_KEYS:
        entry = pairs_raw.get(key, {})
        pairs[key] = {
            "left": _validate_builder(entry.get("left", "all")),
            "right": _validate_builder(entry.get("right", "all")),
        }
    command = raw.get("command")
    if command is not None and command not in COMMANDS:
        raise SpecError(f"unknown command '{command}'")
    bound = raw.get("witness_bound")
    if bound is not None:
        bound = int(bound)
        if bound <= 0:
            raise SpecError("witness_bound must be positive")
    return RunSpec(algebra=algebra, algebra_dict=algebra_to_dict(algebra),
                   pairs=pairs, command=command, witness_bound=bound)


def parse_spec(path: str) -> RunSpec:
    """Load and validate a run spec file; parse errors carry line positions."""
    with open(path, "r", encoding="utf-8") as fh:
        text = fh.read()
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as e:
        raise SpecError(f"{path}:{e.lineno}:{e.colno}: {e.msg}") from None
    return parse_spec_dict(raw)


def _catalog_dict(cat: Catalog) -> dict:
    from .serialize import module_to_dict
    return {
        "truncated": cat.truncated,
        "entries": [{
            "id": e.id,
            "dims": module_to_dict(e.module)["dims"],
            "total_dim": e.module.total_dim,
            "action": module_to_dict(e.module)["action"],
            "provenance": e.provenance,
            "projective": e.projective,
            "injective": e.injective,
        } for e in cat.entries],
    }


def _ext_table_dict(cat: Catalog) -> dict:
    ids = list(cat.ids())
    dims = [[ext1(cat.module(i), cat.module(j)).dimension for j in ids]
            for i in ids]
    return {"ids": ids, "dims": dims}


def _pair_dict(pair: CotorsionPair) -> dict:
    return {
        "left": sorted(pair.left.member_ids),
        "right": sorted(pair.right.member_ids),
        "checks": [pair.orthogonality.to_dict(), pair.heredity.to_dict(),
                   pair.completeness_check.to_dict()],
        "completeness_witnesses": {
            str(i): {
                "preenvelope": (ses_to_dict(w.preenvelope)
                                if w.preenvelope else None),
                "precover": ses_to_dict(w.precover) if w.precover else None,
                "bound": w.bound,
            } for i, w in sorted(pair.completeness.items())
        },
    }


def run(spec: RunSpec, command: str, *, bound: int | None = None,
        seed: int | None = None) -> Report:
    """Execute one command deterministically and assemble the report."""
    del seed  # randomized fallbacks stay disabled in batch runs
    t0 = time.perf_counter()
    report = Report(command=command, spec=spec.echo())
    cat = build_catalog(spec.algebra)
    report.catalog = _catalog_dict(cat)
    if cat.truncated:
        report.inconclusive.append("catalog-truncated")
    bound = bound or spec.witness_bound
    if command == "ext-table":
        report.ext_table = _ext_table_dict(cat)
    if command in ("check-pair", "build-hovey", "classify"):
        pairs = {}
        for key in _BUILDER_KEYS:
            left = object_class(cat, spec.pairs[key]["left"])
            right = object_class(cat, spec.pairs[key]["right"])
            pairs[key] = build_cotorsion_pair(left, right, bound)
        report.pairs = {k: _pair_dict(p) for k, p in pairs.items()}
        for k, p in pairs.items():
            for c in (p.orthogonality, p.heredity, p.completeness_check):
                if c.status == INCONCLUSIVE:
                    report.inconclusive.append(f"{k}-{c.name}")
                report.checks.append({**c.to_dict(), "name": f"{k}-{c.name}"})
    if command in ("build-hovey", "classify"):
        outcome = build_hovey_triple(pairs["cofibration_pair"],
                                     pairs["fibration_pair"], cat, bound)
        report.checks = [c.to_dict() for c in outcome.report.checks]
        for c in outcome.report.inconclusive:
            report.inconclusive.append(c.name)
        report.compatibility = next(
            (c.to_dict() for c in outcome.report.checks
             if c.name == "compatibility"), None)
        trivial = next((c for c in outcome.report.checks
                        if c.name == "trivial-class-descriptions"), None)
        if trivial is not None and outcome.triple is not None:
            report.trivial_class = {
                "member_ids": sorted(outcome.triple.trivial.member_ids),
                "absent_within_bound":
                    trivial.details.get("absent_within_bound", {}),
                "witnesses": {
                    str(i): {"coresolution": ses_to_dict(w.coresolution),
                             "resolution": ses_to_dict(w.resolution)}
                    for i, w in sorted(outcome.triple.witnesses.items())},
            }
        elif trivial is not None:
            report.trivial_class = {
                "member_ids": trivial.details.get("members", []),
                "absent_within_bound":
                    trivial.details.get("absent_within_bound", {}),
                "witnesses": {},
            }
        report.thickness = next((c.to_dict() for c in outcome.report.checks
                                 if c.name == "thickness"), None)
        report.identities = next((c.to_dict() for c in outcome.report.checks
                                  if c.name == "triple-identities"), None)
        report.certified = outcome.certified
    if command == "classify":
        if report.certified:
            f = spec.classify_morphism_input  # attached by main()
            cls = classify_morphism(f, outcome.triple)
            report.classification = cls.to_dict()
    report.timing_seconds = time.perf_counter() - t0
    return report


def _exit_code(report: Report, command: str, allow_inconclusive: bool) -> int:
    failed = any(c["status"] == FAIL for c in report.checks)
    inconclusive = bool(report.inconclusive) and not allow_inconclusive
    if command in ("build-hovey", "classify"):
        return 0 if (report.certified and not inconclusive) else 1
    return 0 if (not failed and not inconclusive) else 1


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(
        prog="hovey-forge",
        description="Build and certify Hovey triples over quiver algebras.")
    parser.add_argument("command", choices=COMMANDS)
    parser.add_argument("specfile", nargs="?",
                        help="JSON run specification (or use --demo)")
    parser.add_argument("--demo", choices=DEMO_NAMES,
                        help="use a built-in demo spec instead of a file")
    parser.add_argument("--bound", type=int, default=None,
                        help="override the witness dimension bound")
    parser.add_argument("--format", choices=("text", "json"), default="json")
    parser.add_argument("--allow-inconclusive", action="store_true")
    parser.add_argument("--seed", type=int, default=None,
                        help="seed for randomized fallback paths only")
    parser.add_argument("--morphism", default=None,
                        help="morphism JSON file (classify command)")
    args = parser.parse_args(argv)
    try:
        if (args.specfile is None) == (args.demo is None):
            raise SpecError("give exactly one of a spec file or --demo")
        if args.demo is not None:
            spec = parse_spec_dict(demo_spec(args.demo))
        else:
            spec = parse_spec(args.specfile)
        if args.command == "classify":
            if args.morphism is None:
                raise SpecError("classify needs --morphism FILE")
            with open(args.morphism, "r", encoding="utf-8") as fh:
                try:
                    raw = json.load(fh)
                except json.JSONDecodeError as e:
                    raise SpecError(
                        f"{args.morphism}:{e.lineno}:{e.colno}: {e.msg}"
                    ) from None
            spec.classify_morphism_input = morphism_from_dict(spec.algebra, raw)
        report = run(spec, args.command, bound=args.bound, seed=args.seed)
    except HoveyForgeError as e:
        print(f"hovey-forge: error: {e}", file=sys.stderr)
        return 2
    sys.stdout.write(emit_report(report, args.format))
    return _exit_code(report, args.command, args.allow_inconclusive)


if __name__ == "__main__":
    sys.exit(main())
