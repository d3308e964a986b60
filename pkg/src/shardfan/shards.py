"""Plates, cutting and shards of a fan, plus the maps to join-irreducibles.

A shard is stored combinatorially: the walls it consists of and the ids of
all fan faces contained in their union.  Cutting only ever removes
codimension-two loci, so "closure of a connected component" amounts to
taking a connected component of the uncut-adjacency graph of walls.
"""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable

from . import errors
from .exactgeom import IntVec, solve_rational
from .fan import Face, Fan
from .lattice import ChamberPoset, canonical_join_rep_oracle, join_irreducibles, star_interval, gamma


@dataclass(frozen=True)
class Plate:
    id: int
    normal: IntVec
    walls: tuple[int, ...]


@dataclass(frozen=True)
class Shard:
    id: int
    plate: int | None
    normal: IntVec
    walls: tuple[int, ...]
    faces: frozenset[int]
    # (wall, wall, codim-2 face id) pairs joined inside the shard
    edges: tuple[tuple[int, int, int], ...] = ()


class _UnionFind:
    def __init__(self, items: Iterable[int]):
        self.parent = {x: x for x in items}

    def find(self, x: int) -> int:
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a: int, b: int) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[max(ra, rb)] = min(ra, rb)

    def groups(self) -> list[tuple[int, ...]]:
        out: dict[int, list[int]] = defaultdict(list)
        for x in self.parent:
            out[self.find(x)].append(x)
        return sorted(tuple(sorted(g)) for g in out.values())


def walls_through_codim2(fan: Fan) -> dict[int, tuple[int, ...]]:
    """Map each codimension-two face id to the ids of the walls containing it."""
    out: dict[int, list[int]] = defaultdict(list)
    for w in fan.walls:
        rays = w.face.rays
        for drop in range(len(rays)):
            out[fan.face_index[rays[:drop] + rays[drop + 1:]]].append(w.id)
    return {k: tuple(sorted(v)) for k, v in out.items()}


def _walls_by_normal(fan: Fan) -> dict[IntVec, list[int]]:
    groups: dict[IntVec, list[int]] = defaultdict(list)
    for w in fan.walls:
        groups[w.hyperplane.normal].append(w.id)
    return groups


def plates(fan: Fan) -> list[Plate]:
    """Walls grouped by hyperplane, split into components glued along codim-2 faces."""
    through = walls_through_codim2(fan) if fan.dim >= 2 else {}
    found = []
    for normal, wids in _walls_by_normal(fan).items():
        uf = _UnionFind(wids)
        members = set(wids)
        for ws in through.values():
            inside = [w for w in ws if w in members]
            for w in inside[1:]:
                uf.union(inside[0], w)
        for g in uf.groups():
            found.append((normal, g))
    found.sort()
    return [Plate(i, normal, g) for i, (normal, g) in enumerate(found)]


def basic_walls(fan: Fan, poset: ChamberPoset, face: Face) -> frozenset[int]:
    """Walls through ``face`` that are facets of the max or min chamber of its star."""
    iv = star_interval(fan, poset, face)
    rays = set(face.rays)
    out = set()
    for c in (iv.max, iv.min):
        ch = fan.chambers[c]
        for drop in range(len(ch)):
            w = ch[:drop] + ch[drop + 1:]
            if rays.issubset(w):
                out.add(fan.wall_of_face[fan.face_index[w]])
    return frozenset(out)


def is_cut(fan: Fan, poset: ChamberPoset, plate: Plate, face: Face | Iterable[int],
           _basic: frozenset[int] | None = None) -> bool:
    """Does some wall cut ``plate`` along the codimension-two ``face``?

    True iff the plate holds none of the basic walls at ``face`` while some
    wall through ``face`` is basic.
    """
    if not isinstance(face, Face):
        face = fan.face(face)
    if face.dim != fan.dim - 2:
        raise errors.FaceNotCodim2(f"face {face.rays} is not of codimension two")
    basic = basic_walls(fan, poset, face) if _basic is None else _basic
    return bool(basic) and basic.isdisjoint(plate.walls)


def _shard_faces(fan: Fan, wall_ids: Iterable[int]) -> frozenset[int]:
    out: set[int] = set()
    for w in wall_ids:
        out |= fan.face_closure(fan.walls[w].face.rays)
    return frozenset(out)


def _components_to_shards(fan: Fan, comps) -> list[Shard]:
    """``comps``: iterable of (plate id, normal, walls, edges)."""
    keyed = sorted(comps, key=lambda c: (c[1], c[2][0]))
    return [Shard(i, plate, normal, walls, _shard_faces(fan, walls), tuple(sorted(edges)))
            for i, (plate, normal, walls, edges) in enumerate(keyed)]


def shards(fan: Fan, poset: ChamberPoset, plate_list: list[Plate] | None = None) -> list[Shard]:
    if plate_list is None:
        plate_list = plates(fan)
    through = walls_through_codim2(fan) if fan.dim >= 2 else {}
    basic_cache: dict[int, frozenset[int]] = {}
    comps = []
    for p in plate_list:
        members = set(p.walls)
        uf = _UnionFind(p.walls)
        edges = []
        for L, ws in sorted(through.items()):
            inside = [w for w in ws if w in members]
            if len(inside) < 2:
                continue
            if L not in basic_cache:
                basic_cache[L] = basic_walls(fan, poset, fan.faces[L])
            if is_cut(fan, poset, p, fan.faces[L], basic_cache[L]):
                continue
            for w in inside[1:]:
                uf.union(inside[0], w)
                edges.append((inside[0], w, L))
        for g in uf.groups():
            gs = set(g)
            comps.append((p.id, p.normal, g, [e for e in edges if e[0] in gs]))
    return _components_to_shards(fan, comps)


class ShardSystem:
    """Shards of a fan together with the derived upper/lower chamber data."""

    def __init__(self, fan: Fan, poset: ChamberPoset, shard_list: list[Shard] | None = None):
        self.fan = fan
        self.poset = poset
        self.plates = plates(fan)
        self.shards = shards(fan, poset, self.plates) if shard_list is None else shard_list
        self.shard_of_wall: dict[int, int] = {}
        for s in self.shards:
            for w in s.walls:
                if w in self.shard_of_wall:
                    raise errors.ShardfanError(f"wall {w} lies in two shards")
                self.shard_of_wall[w] = s.id
        self.arrow_of_wall = {a.wall: a for a in poset.arrows}

    def up(self, s: int) -> frozenset[int]:
        return frozenset(self.arrow_of_wall[w].upper for w in self.shards[s].walls)

    def lo(self, s: int) -> frozenset[int]:
        return frozenset(self.arrow_of_wall[w].lower for w in self.shards[s].walls)

    @cached_property
    def J(self) -> tuple[int, ...]:
        return tuple(j_of_shard(self.poset, self, s.id) for s in self.shards)

    def shard_of_cover(self, upper: int, lower: int) -> int:
        return self.shard_of_wall[self.poset.arrow(upper, lower).wall]

    def lower_shards(self, chamber: int) -> tuple[int, ...]:
        return tuple(sorted(self.shard_of_cover(chamber, d) for d in self.poset.lower_covers[chamber]))


def upper_lower(system: ShardSystem, s: int) -> tuple[frozenset[int], frozenset[int]]:
    return system.up(s), system.lo(s)


def j_of_shard(poset: ChamberPoset, system: ShardSystem, s: int) -> int:
    """Unique minimal upper chamber of shard ``s``."""
    up = system.up(s)
    mask = sum(1 << c for c in up)
    mins = [c for c in up if poset.down[c] & mask == 1 << c]
    if len(mins) != 1:
        raise errors.NonUniqueMinimum(f"shard {s} has minimal upper chambers {sorted(mins)}")
    j = mins[0]
    if len(poset.lower_covers[j]) != 1:
        raise errors.NonUniqueMinimum(f"minimal upper chamber {j} of shard {s} is not join-irreducible")
    return j


def shard_of_cover(system: ShardSystem, upper: int, lower: int) -> int:
    return system.shard_of_cover(upper, lower)


@dataclass
class BijectionReport:
    pairs: int = 0
    arrows: int = 0
    violations: list = None

    def __post_init__(self):
        if self.violations is None:
            self.violations = []

    @property
    def ok(self) -> bool:
        return not self.violations


def verify_jirr_shard_bijection(system: ShardSystem) -> BijectionReport:
    poset = system.poset
    rep = BijectionReport()
    jirr = sorted(join_irreducibles(poset))
    try:
        J = system.J
    except errors.NonUniqueMinimum as exc:
        rep.violations.append(("J", str(exc)))
        return rep
    if len(jirr) != len(system.shards):
        rep.violations.append(("count", len(jirr), len(system.shards)))
    for j in jirr:
        s = system.shard_of_cover(j, poset.lower_covers[j][0])
        if J[s] != j:
            rep.violations.append(("J(Sigma(j)) != j", j, s, J[s]))
        else:
            rep.pairs += 1
    for s in system.shards:
        j = J[s.id]
        if system.shard_of_cover(j, poset.lower_covers[j][0]) != s.id:
            rep.violations.append(("Sigma(J(s)) != s", s.id, j))
    for a in poset.arrows:
        rep.arrows += 1
        try:
            g = gamma(poset, a.upper, a.lower)
        except errors.LatticeError as exc:
            rep.violations.append(("gamma", a.upper, a.lower, str(exc)))
            continue
        if g != J[system.shard_of_wall[a.wall]]:
            rep.violations.append(("gamma != J.Sigma", a.upper, a.lower, g))
    return rep


def canonical_join_via_shards(system: ShardSystem, chamber: int) -> frozenset[int]:
    """``{J(S) : S a lower shard of chamber}``."""
    return frozenset(system.J[s] for s in system.lower_shards(chamber))


def check_cjr_via_shards(system: ShardSystem, chamber: int) -> list:
    """Problems with the shard-based canonical join representation (empty if fine)."""
    poset = system.poset
    rep = canonical_join_via_shards(system, chamber)
    problems = []
    if len(rep) != len(system.lower_shards(chamber)):
        problems.append(("J not injective on lower shards", chamber))
    if poset.join_all(rep) != chamber:
        problems.append(("join mismatch", chamber, sorted(rep)))
    oracle = canonical_join_rep_oracle(poset, chamber)
    if oracle != rep:
        problems.append(("oracle mismatch", chamber, sorted(rep), sorted(oracle)))
    return problems


def shard_wall_connectivity_check(system: ShardSystem, s: int) -> bool:
    """Walls connected; across each inner edge the upper (lower) chambers compare."""
    shard = system.shards[s]
    poset = system.poset
    uf = _UnionFind(shard.walls)
    for w1, w2, _ in shard.edges:
        uf.union(w1, w2)
        a1, a2 = system.arrow_of_wall[w1], system.arrow_of_wall[w2]
        if not (poset.leq(a1.upper, a2.upper) or poset.leq(a2.upper, a1.upper)):
            return False
        if not (poset.leq(a1.lower, a2.lower) or poset.leq(a2.lower, a1.lower)):
            return False
    return len(uf.groups()) == 1


# -- classical rule for hyperplane arrangements -------------------------------

def _cross(u, v):
    return u[0] * v[1] - u[1] * v[0]


def basic_hyperplanes(normals: list[IntVec]) -> frozenset[IntVec]:
    """The two hyperplanes bounding the base region of a rank-two subarrangement.

    ``normals`` are canonical (all-ones side positive), pairwise distinct and
    span a plane.  The base region is the cone cut out by all ``n . x >= 0``;
    its facets are the extreme rays of the cone generated by the normals.
    """
    u, v = normals[0], normals[1]
    coords = []
    for nu in normals:
        c = solve_rational([u, v], nu)
        if c is None:
            raise errors.NotAnArrangement("normals through a codim-2 face do not span a plane")
        coords.append(c)
    out = set()
    for i, ci in enumerate(coords):
        crosses = [_cross(ci, cj) for cj in coords]
        if all(x >= 0 for x in crosses) or all(x <= 0 for x in crosses):
            out.add(normals[i])
    return frozenset(out)


def arrangement_shards_oracle(fan: Fan, poset: ChamberPoset) -> list[Shard]:
    """Shards of a hyperplane-arrangement fan by the classical cutting rule.

    ``H`` is cut along a codimension-two locus iff it is not one of the two
    basic hyperplanes of the rank-two subarrangement through that locus.
    Uses only hyperplane geometry, never the chamber order.
    """
    groups = _walls_by_normal(fan)
    through = walls_through_codim2(fan) if fan.dim >= 2 else {}
    normal_of = {w.id: w.hyperplane.normal for w in fan.walls}
    for normal, wids in groups.items():
        members = set(wids)
        for L, ws in through.items():
            k = sum(1 for w in ws if w in members)
            if k not in (0, 2):
                raise errors.NotAnArrangement(
                    f"hyperplane {normal} is not covered around face {fan.faces[L].rays}")
    comps = []
    for normal, wids in sorted(groups.items()):
        members = set(wids)
        uf = _UnionFind(wids)
        edges = []
        for L, ws in sorted(through.items()):
            inside = [w for w in ws if w in members]
            if len(inside) < 2:
                continue
            local = sorted({normal_of[w] for w in ws})
            if normal not in basic_hyperplanes(local):
                continue
            uf.union(inside[0], inside[1])
            edges.append((inside[0], inside[1], L))
        for g in uf.groups():
            gs = set(g)
            comps.append((None, normal, g, [e for e in edges if e[0] in gs]))
    return _components_to_shards(fan, comps)
