"""The run report: one structure, two renderings.

The machine form is JSON with sorted keys and every field present, so
identical run specifications emit byte-identical documents; for that
reason the wall-clock timing is reported as null in the machine form and
only shown in the text form.
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field


@dataclass
class Report:
    command: str
    spec: dict
    catalog: dict | None = None
    ext_table: dict | None = None
    pairs: dict | None = None
    compatibility: dict | None = None
    trivial_class: dict | None = None
    thickness: dict | None = None
    identities: dict | None = None
    classification: dict | None = None
    checks: list = field(default_factory=list)
    certified: bool | None = None
    inconclusive: list = field(default_factory=list)
    timing_seconds: float | None = None

    def to_dict(self, include_timing: bool = False) -> dict:
        d = asdict(self)
        if not include_timing:
            d["timing_seconds"] = None
        return d

    def __eq__(self, other):
        if not isinstance(other, Report):
            return NotImplemented
        return self.to_dict() == other.to_dict()


def emit_report(report: Report, format: str = "json") -> str:
    if format == "json":
        return json.dumps(report.to_dict(), sort_keys=True, indent=2) + "\n"
    if format == "text":
        return _render_text(report)
    raise ValueError(f"unknown format {format!r}")


def parse_report(text: str) -> Report:
    d = json.loads(text)
    return Report(**d)


def _render_text(r: Report) -> str:
    lines = [f"hovey-forge report: {r.command}", "=" * 40]
    if r.timing_seconds is not None:
        lines.append(f"elapsed: {r.timing_seconds:.3f}s")
    if r.catalog is not None:
        lines.append("")
        lines.append(f"catalog ({len(r.catalog['entries'])} indecomposables"
                     + (", TRUNCATED" if r.catalog["truncated"] else "") + ")")
        for e in r.catalog["entries"]:
            flags = "".join(k for k, on in
                            (("P", e["projective"]), ("I", e["injective"])) if on)
            lines.append(f"  M{e['id']}: dims {e['dims']} "
                         f"[{flags or '-'}] ({e['provenance']})")
    if r.ext_table is not None:
        lines.append("")
        lines.append("Ext^1 dimensions (rows: first argument)")
        ids = r.ext_table["ids"]
        header = "      " + " ".join(f"M{j:<3}" for j in ids)
        lines.append(header)
        for i, row in zip(ids, r.ext_table["dims"]):
            lines.append(f"  M{i:<3} " + " ".join(f"{d:<4}" for d in row))
    if r.pairs is not None:
        lines.append("")
        for name, p in r.pairs.items():
            lines.append(f"{name}: left={p['left']} right={p['right']}")
            for c in p["checks"]:
                lines.append(f"  {c['name']}: {c['status']}")
    if r.compatibility is not None:
        lines.append("")
        lines.append(f"compatibility: {r.compatibility['status']}")
        for k, v in r.compatibility["details"].items():
            if v:
                lines.append(f"  {k}: {v}")
    if r.trivial_class is not None:
        lines.append("")
        lines.append(f"trivial class W: {r.trivial_class['member_ids']}")
        lines.append(f"  absent within bound: "
                     f"{sorted(r.trivial_class['absent_within_bound'])}")
    if r.thickness is not None:
        lines.append(f"thickness: {r.thickness['status']} "
                     f"({r.thickness['details']['sequences_checked']} sequences)")
    if r.identities is not None:
        lines.append(f"identities: {r.identities['status']}")
    if r.classification is not None:
        lines.append("")
        lines.append("morphism classification:")
        for k, v in sorted(r.classification.items()):
            lines.append(f"  {k}: {v}")
    if r.certified is not None:
        lines.append("")
        lines.append(f"CERTIFIED: {r.certified}")
    if r.inconclusive:
        lines.append(f"inconclusive entries: {r.inconclusive}")
    return "\n".join(lines) + "\n"
