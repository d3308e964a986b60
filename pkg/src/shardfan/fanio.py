"""JSON fan documents and DOT export."""
from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import TYPE_CHECKING

from .errors import ParseError, SchemaError

if TYPE_CHECKING:
    from .intersections import ShardIntersectionLattice
    from .lattice import ChamberPoset

FIELDS = ("dim", "rays", "chambers", "name")
REQUIRED = ("dim", "rays", "chambers")


@dataclass(frozen=True)
class FanDocument:
    dim: int
    rays: tuple[tuple[int, ...], ...]
    chambers: tuple[tuple[int, ...], ...]
    name: str | None = None

    def to_dict(self) -> dict:
        d = {"dim": self.dim, "rays": [list(r) for r in self.rays],
             "chambers": [list(c) for c in self.chambers]}
        if self.name is not None:
            d["name"] = self.name
        return d

    @classmethod
    def from_dict(cls, data) -> "FanDocument":
        if not isinstance(data, dict):
            raise SchemaError("fan document must be a JSON object")
        for key in data:
            if key not in FIELDS:
                raise SchemaError(f"unknown field {key!r}", field=key)
        for key in REQUIRED:
            if key not in data:
                raise SchemaError(f"missing field {key!r}", field=key)
        dim = data["dim"]
        if not _is_int(dim) or dim < 1:
            raise SchemaError("dim must be a positive integer", field="dim")
        rays = _int_rows(data["rays"], "rays")
        chambers = _int_rows(data["chambers"], "chambers")
        for i, r in enumerate(rays):
            if len(r) != dim:
                raise SchemaError(f"ray {i} has {len(r)} coordinates, expected {dim}", field="rays")
        for i, c in enumerate(chambers):
            if any(not 0 <= x < len(rays) for x in c):
                raise SchemaError(f"chamber {i} has an out-of-range ray index", field="chambers")
        name = data.get("name")
        if name is not None and not isinstance(name, str):
            raise SchemaError("name must be a string", field="name")
        return cls(dim, rays, chambers, name)


def _is_int(x) -> bool:
    return isinstance(x, int) and not isinstance(x, bool)


def _int_rows(value, field: str) -> tuple[tuple[int, ...], ...]:
    if not isinstance(value, list) or not all(isinstance(r, list) for r in value):
        raise SchemaError(f"{field} must be a list of integer lists", field=field)
    for r in value:
        if not all(_is_int(x) for x in r):
            raise SchemaError(f"{field} must contain integers only", field=field)
    return tuple(tuple(r) for r in value)


def loads_fan(text: str) -> FanDocument:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, line=exc.lineno) from None
    return FanDocument.from_dict(data)


def dumps_fan(doc: FanDocument) -> str:
    return json.dumps(doc.to_dict(), indent=None) + "\n"


def load_fan(path) -> FanDocument:
    return loads_fan(Path(path).read_text(encoding="utf-8"))


def save_fan(doc: FanDocument, path) -> None:
    Path(path).write_text(dumps_fan(doc), encoding="utf-8")


# -- DOT ----------------------------------------------------------------------

def _tuple_label(t) -> str:
    return "(" + ",".join(str(x) for x in t) + ")"


def export_dot(structure) -> str:
    """Deterministic DOT digraph of a chamber poset or shard-intersection lattice."""
    from .intersections import ShardIntersectionLattice
    from .lattice import ChamberPoset

    if isinstance(structure, ChamberPoset):
        return _poset_dot(structure)
    if isinstance(structure, ShardIntersectionLattice):
        return _lattice_dot(structure)
    raise TypeError(f"cannot export {type(structure).__name__} to DOT")


def _poset_dot(poset: "ChamberPoset") -> str:
    names = [_tuple_label(poset.fan.chambers[c]) if poset.fan else str(c) for c in range(poset.size)]
    lines = ["digraph chambers {"]
    for c in sorted(range(poset.size), key=lambda c: names[c]):
        lines.append(f'  "{names[c]}";')
    for u, l in sorted((names[a.upper], names[a.lower]) for a in poset.arrows):
        lines.append(f'  "{u}" -> "{l}";')
    lines.append("}")
    return "\n".join(lines) + "\n"


def _lattice_dot(lat: "ShardIntersectionLattice") -> str:
    names = [_tuple_label(el.generators) for el in lat.elements]
    lines = ["digraph shard_intersections {"]
    for i in sorted(range(len(names)), key=lambda i: names[i]):
        lines.append(f'  "{names[i]}";')
    for big, small in sorted((names[a], names[b]) for a, b in lat.covers):
        lines.append(f'  "{big}" -> "{small}";')
    lines.append("}")
    return "\n".join(lines) + "\n"
