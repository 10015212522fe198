"""
JSON link files (``linkfile-v1``) and report files (``reportfile-v1``).

Link file::

    {"format": "linkfile-v1",
     "crossings": [[1, 4, 2, 5], ...],      # counterclockwise from incoming under-arc
     "components": [[1, 2, 3, 4, 5, 6]],    # arc labels in traversal order
     "framings": [1],
     "colors": [null]}                      # optional; null marks a surgery component

Report file: criterion, p, verdict, passing_j, invariant (exponent -> coefficient,
sorted by exponent; rationals written as "a/b" strings), ring, notes.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Any

import jsonschema

from .diagram import FramedLinkDiagram, PDCode, validate
from .errors import MalformedDiagram

LINKFILE_SCHEMA: dict[str, Any] = {
    "type": "object",
    "required": ["format", "crossings", "components", "framings"],
    "additionalProperties": False,
    "properties": {
        "format": {"const": "linkfile-v1"},
        "crossings": {
            "type": "array",
            "items": {"type": "array", "minItems": 4, "maxItems": 4,
                      "items": {"type": "integer", "minimum": 1}},
        },
        "components": {
            "type": "array",
            "items": {"type": "array", "minItems": 1, "items": {"type": "integer", "minimum": 1}},
        },
        "framings": {"type": "array", "items": {"type": "integer"}},
        "colors": {"type": "array", "items": {"type": ["integer", "null"], "minimum": 0}},
        "name": {"type": "string"},
    },
}

REPORTFILE_SCHEMA: dict[str, Any] = {
    "type": "object",
    "required": ["format", "criterion", "p", "verdict", "passing_j", "invariant", "ring", "notes"],
    "properties": {
        "format": {"const": "reportfile-v1"},
        "criterion": {"enum": ["jones", "bracket", "bracket_framed", "manifold", "invariant"]},
        "p": {"type": "integer"},
        "verdict": {"enum": ["pass", "fail", "n/a"]},
        "passing_j": {"type": "array", "items": {"type": "integer"}},
        "invariant": {"type": "object",
                      "additionalProperties": {"type": ["integer", "string"]}},
        "ring": {"type": "string"},
        "notes": {"type": "string"},
    },
}


def parse_linkfile(data: dict) -> FramedLinkDiagram:
    try:
        jsonschema.validate(data, LINKFILE_SCHEMA)
    except jsonschema.ValidationError as exc:
        raise MalformedDiagram(f"link file schema violation: {exc.message}") from None
    pd = PDCode(tuple(map(tuple, data["crossings"])), tuple(map(tuple, data["components"])))
    n = pd.n_components
    if len(data["framings"]) != n:
        raise MalformedDiagram(f"{len(data['framings'])} framings for {n} components")
    colors = data.get("colors")
    if colors is not None and len(colors) != n:
        raise MalformedDiagram(f"{len(colors)} colors for {n} components")
    validate(pd)
    return FramedLinkDiagram(pd, tuple(data["framings"]), None if colors is None else tuple(colors))


def load_linkfile(path: str | Path) -> FramedLinkDiagram:
    try:
        data = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise MalformedDiagram(f"{path}: not valid JSON ({exc})") from None
    return parse_linkfile(data)


def linkfile_dict(d: FramedLinkDiagram, name: str | None = None) -> dict:
    out: dict[str, Any] = {"format": "linkfile-v1"}
    if name:
        out["name"] = name
    out["crossings"] = [list(c) for c in d.pd.crossings]
    out["components"] = [list(c) for c in d.pd.components]
    out["framings"] = list(d.framings)
    if d.colors is not None:
        out["colors"] = list(d.colors)
    return out


def dump_linkfile(d: FramedLinkDiagram, name: str | None = None) -> str:
    return json.dumps(linkfile_dict(d, name), indent=None) + "\n"


# ---------------------------------------------------------------------------


def _coeff_out(c):
    if isinstance(c, Fraction):
        return c.numerator if c.denominator == 1 else f"{c.numerator}/{c.denominator}"
    return int(c)


def _coeff_in(c):
    if isinstance(c, str):
        f = Fraction(c)
        return f.numerator if f.denominator == 1 else f
    return int(c)


@dataclass(frozen=True)
class ReportFile:
    criterion: str
    p: int
    verdict: str
    passing_j: tuple[int, ...]
    invariant: tuple[tuple[int, int | Fraction], ...]
    ring: str
    notes: str

    def to_dict(self) -> dict:
        return {
            "format": "reportfile-v1",
            "criterion": self.criterion,
            "p": self.p,
            "verdict": self.verdict,
            "passing_j": list(self.passing_j),
            "invariant": {str(e): _coeff_out(c) for e, c in sorted(self.invariant)},
            "ring": self.ring,
            "notes": self.notes,
        }

    def dumps(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"

    @classmethod
    def from_dict(cls, data: dict) -> ReportFile:
        jsonschema.validate(data, REPORTFILE_SCHEMA)
        inv = tuple(sorted((int(e), _coeff_in(c)) for e, c in data["invariant"].items()))
        return cls(data["criterion"], data["p"], data["verdict"], tuple(data["passing_j"]),
                   inv, data["ring"], data["notes"])

    @classmethod
    def loads(cls, text: str) -> ReportFile:
        return cls.from_dict(json.loads(text))


def report_from_periodicity(rep) -> ReportFile:
    return ReportFile(rep.criterion, rep.p, rep.verdict, tuple(rep.passing_phases),
                      tuple(sorted(rep.invariant.items())), rep.ring, rep.note)


def report_from_invariant(inv, notes: str = "") -> ReportFile:
    return ReportFile("invariant", inv.p, "n/a", (), tuple(sorted(inv.value.terms().items())),
                      inv.ring_name, notes or f"{inv.provenance} computation")
