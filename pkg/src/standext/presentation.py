"""Quiver-with-relations-and-heights input language.

The on-disk format is flat JSON:

    {
      "name": "...",
      "vertices": [{"id": "u", "ht": 1}, ...],
      "arrows":   [{"id": "a", "from": "u", "to": "v"}, ...],
      "relations": [[{"coeff": "1", "path": ["a", "b"]}, ...], ...]
    }

Paths are written left-to-right: ["a", "b"] means "a first, then b", so the
target of "a" must be the source of "b".  Every relation is a homogeneous
linear combination: all its paths share source, target and length (>= 2).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction


class PresentationError(ValueError):
    """Raised on malformed or inconsistent algebra descriptions."""


@dataclass(frozen=True)
class Arrow:
    name: str
    source: str
    target: str


@dataclass(frozen=True)
class QuiverPresentation:
    name: str
    vertices: tuple[str, ...]
    heights: dict[str, int] = field(compare=False)
    arrows: tuple[Arrow, ...] = ()
    # each relation: tuple of (coefficient, path), path = tuple of arrow names
    relations: tuple[tuple[tuple[Fraction, tuple[str, ...]], ...], ...] = ()

    def arrow(self, name: str) -> Arrow:
        for a in self.arrows:
            if a.name == name:
                return a
        raise KeyError(name)

    def arrows_from(self, v: str) -> list[Arrow]:
        return [a for a in self.arrows if a.source == v]

    def arrows_between(self, x: str, y: str) -> list[Arrow]:
        return [a for a in self.arrows if a.source == x and a.target == y]

    def path_endpoints(self, path: tuple[str, ...]) -> tuple[str, str]:
        arrows = {a.name: a for a in self.arrows}
        return arrows[path[0]].source, arrows[path[-1]].target

    def opposite(self) -> "QuiverPresentation":
        """Reverse all arrows and relation paths; heights are preserved."""
        op_arrows = tuple(Arrow(a.name, a.target, a.source) for a in self.arrows)
        op_rels = tuple(
            tuple((c, tuple(reversed(p))) for c, p in rel) for rel in self.relations
        )
        return QuiverPresentation(
            name=self.name + "^op",
            vertices=self.vertices,
            heights=dict(self.heights),
            arrows=op_arrows,
            relations=op_rels,
        )


def _parse_coeff(raw) -> Fraction:
    if isinstance(raw, bool):
        raise PresentationError(f"bad coefficient {raw!r}")
    if isinstance(raw, (int, str)):
        try:
            return Fraction(raw)
        except (ValueError, ZeroDivisionError) as exc:
            raise PresentationError(f"bad coefficient {raw!r}") from exc
    raise PresentationError(f"bad coefficient {raw!r}")


def validate(pres: QuiverPresentation) -> None:
    """Check the structural invariants; raise PresentationError on failure."""
    if len(set(pres.vertices)) != len(pres.vertices):
        raise PresentationError("duplicate vertex id")
    names = [a.name for a in pres.arrows]
    if len(set(names)) != len(names):
        raise PresentationError("duplicate arrow id")
    vset = set(pres.vertices)
    for v, h in pres.heights.items():
        if v not in vset:
            raise PresentationError(f"height given for unknown vertex {v!r}")
        if not isinstance(h, int) or h < 0:
            raise PresentationError(f"height of {v!r} must be a nonnegative integer")
    if set(pres.heights) != vset:
        raise PresentationError("every vertex needs a height")
    arrows = {a.name: a for a in pres.arrows}
    for a in pres.arrows:
        if a.source not in vset or a.target not in vset:
            raise PresentationError(f"arrow {a.name!r} references unknown vertex")
    for rel in pres.relations:
        if not rel:
            raise PresentationError("empty relation")
        endpoints = set()
        lengths = set()
        for coeff, path in rel:
            if len(path) < 2:
                raise PresentationError("relation path of length < 2")
            for nm in path:
                if nm not in arrows:
                    raise PresentationError(f"relation references unknown arrow {nm!r}")
            for first, second in zip(path, path[1:]):
                if arrows[first].target != arrows[second].source:
                    raise PresentationError(
                        f"non-composable path {list(path)} in relation"
                    )
            endpoints.add((arrows[path[0]].source, arrows[path[-1]].target))
            lengths.add(len(path))
            if coeff == 0:
                raise PresentationError("zero coefficient in relation")
        if len(endpoints) > 1 or len(lengths) > 1:
            raise PresentationError("inhomogeneous relation")


def parse_algebra(document: str) -> QuiverPresentation:
    """Parse and validate a JSON algebra description."""
    try:
        data = json.loads(document)
    except json.JSONDecodeError as exc:
        raise PresentationError(f"malformed JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise PresentationError("top level must be an object")
    try:
        vertices = tuple(v["id"] for v in data["vertices"])
        heights = {v["id"]: v["ht"] for v in data["vertices"]}
        arrows = tuple(
            Arrow(a["id"], a["from"], a["to"]) for a in data.get("arrows", [])
        )
        relations = tuple(
            tuple((_parse_coeff(t["coeff"]), tuple(t["path"])) for t in rel)
            for rel in data.get("relations", [])
        )
    except (KeyError, TypeError) as exc:
        raise PresentationError(f"missing or malformed field: {exc}") from exc
    pres = QuiverPresentation(
        name=str(data.get("name", "unnamed")),
        vertices=vertices,
        heights=heights,
        arrows=arrows,
        relations=relations,
    )
    validate(pres)
    return pres


def to_json(pres: QuiverPresentation) -> str:
    data = {
        "name": pres.name,
        "vertices": [{"id": v, "ht": pres.heights[v]} for v in pres.vertices],
        "arrows": [{"id": a.name, "from": a.source, "to": a.target}
                   for a in pres.arrows],
        "relations": [
            [{"coeff": str(c), "path": list(p)} for c, p in rel]
            for rel in pres.relations
        ],
    }
    return json.dumps(data, indent=2, sort_keys=True)
