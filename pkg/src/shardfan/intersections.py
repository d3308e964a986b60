"""Shard intersections, the shard-intersection and core-label orders.

A shard intersection is a face-closed set of fan face ids.  Since a fan face
lying in a union of closed walls is a face of one of those walls, unions and
intersections of shards are plain set operations on face ids.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

from .fan import Face, Fan
from .lattice import ChamberPoset, star_interval
from .shards import ShardSystem


@dataclass(frozen=True)
class ShardIntersection:
    faces: frozenset[int]
    generators: tuple[int, ...]

    def dim(self, fan: Fan) -> int:
        return max(fan.faces[f].dim for f in self.faces)


def intersect_shards(system: ShardSystem, shard_ids: Iterable[int]) -> ShardIntersection:
    ids = tuple(sorted(set(shard_ids)))
    faces = system.fan.all_face_ids
    for s in ids:
        faces = faces & system.shards[s].faces
    return ShardIntersection(frozenset(faces), ids)


def s_of_chamber(system: ShardSystem, chamber: int) -> ShardIntersection:
    """Intersection of the shards through the lower walls of ``chamber``."""
    return intersect_shards(system, system.lower_shards(chamber))


def si_leq(a: ShardIntersection, b: ShardIntersection) -> bool:
    return a.faces <= b.faces


@dataclass
class ShardIntersectionLattice:
    """Shard intersections indexed by chamber, ordered by containment.

    ``covers`` holds ``(bigger, smaller)`` index pairs of the containment
    Hasse diagram.
    """

    fan: Fan
    elements: list[ShardIntersection]
    covers: list[tuple[int, int]]
    violations: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def index_of(self, faces: frozenset[int]) -> int | None:
        for i, el in enumerate(self.elements):
            if el.faces == faces:
                return i
        return None


def enumerate_shard_intersections(system: ShardSystem) -> ShardIntersectionLattice:
    """All shard intersections, obtained as the images of chambers.

    The result is certified complete by checking that the image is injective,
    contains V and every single shard, and is closed under pairwise
    intersection.
    """
    fan = system.fan
    elements = [s_of_chamber(system, c) for c in range(len(fan.chambers))]
    violations = []
    by_faces: dict[frozenset[int], int] = {}
    for i, el in enumerate(elements):
        if el.faces in by_faces:
            violations.append(("not injective", by_faces[el.faces], i))
        else:
            by_faces[el.faces] = i
    if fan.all_face_ids not in by_faces:
        violations.append(("V missing",))
    for s in system.shards:
        if s.faces not in by_faces:
            violations.append(("shard missing", s.id))
    keys = list(by_faces)
    for i in range(len(keys)):
        for j in range(i + 1, len(keys)):
            if keys[i] & keys[j] not in by_faces:
                violations.append(("not closed", by_faces[keys[i]], by_faces[keys[j]]))
    covers = _containment_covers([el.faces for el in elements])
    return ShardIntersectionLattice(fan, elements, covers, violations)


def _containment_covers(sets: list[frozenset[int]]) -> list[tuple[int, int]]:
    n = len(sets)
    below = [[j for j in range(n) if j != i and sets[j] < sets[i]] for i in range(n)]
    covers = []
    for i in range(n):
        bs = below[i]
        for j in bs:
            if not any(sets[j] < sets[k] for k in bs if k != j):
                covers.append((i, j))
    return sorted(covers)


def core_label_set(poset: ChamberPoset, chamber: int) -> frozenset[int]:
    """gamma-labels of the arrows inside ``[R_down, R]``, R_down the meet of R's covers."""
    lows = poset.lower_covers[chamber]
    if not lows:
        return frozenset()
    r_down = poset.meet_all(lows)
    labels = poset.gamma_labels
    interval = poset.down[chamber] & poset.up[r_down]
    return frozenset(labels[a.upper, a.lower] for a in poset.arrows
                     if (interval >> a.upper) & 1 and (interval >> a.lower) & 1)


@dataclass
class CheckReport:
    checked: int = 0
    violations: list = field(default_factory=list)
    notes: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


def verify_anti_isomorphism(system: ShardSystem, lattice: ShardIntersectionLattice) -> CheckReport:
    """SI order (containment) equals the reversed core-label order."""
    poset = system.poset
    n = poset.size
    clo = [core_label_set(poset, c) for c in range(n)]
    rep = CheckReport()
    J = system.J
    for r in range(n):
        expected = frozenset(J[s.id] for s in system.shards if lattice.elements[r].faces <= s.faces)
        if clo[r] != expected:
            rep.violations.append(("core labels != J of containing shards", r))
    for r in range(n):
        for t in range(n):
            rep.checked += 1
            si = lattice.elements[r].faces <= lattice.elements[t].faces
            if si != (clo[r] >= clo[t]):
                rep.violations.append(("order mismatch", r, t))
    return rep


def gamma_of_face(system: ShardSystem, face: Face | Iterable[int]) -> ShardIntersection:
    """Intersect the shards of the covers of the star maximum that stay in the star."""
    fan, poset = system.fan, system.poset
    if not isinstance(face, Face):
        face = fan.face(face)
    iv = star_interval(fan, poset, face)
    ids = [system.shard_of_cover(iv.max, t) for t in poset.lower_covers[iv.max]
           if t in iv.chambers]
    return intersect_shards(system, ids)


def verify_containing_shard(system: ShardSystem, lattice: ShardIntersectionLattice) -> CheckReport:
    """Gamma(U) is the unique shard intersection of U's dimension containing U,
    and equals the intersection of all shards containing U."""
    fan = system.fan
    rep = CheckReport()
    dims = [el.dim(fan) for el in lattice.elements]
    for face in fan.faces:
        if face.dim == fan.dim:
            rep.notes.append(("chamber face, Gamma = V by convention", face.id))
            continue
        g = gamma_of_face(system, face)
        containing = intersect_shards(system, [s.id for s in system.shards if face.id in s.faces])
        rep.checked += 1
        if g.faces != containing.faces:
            rep.violations.append(("Gamma(U) != shards containing U", face.rays))
        for el, d in zip(lattice.elements, dims):
            if d == face.dim and face.id in el.faces and el.faces != g.faces:
                rep.violations.append(("Gamma != Gamma(U)", face.rays, el.generators))
    return rep


@dataclass
class RankReport:
    """``ranks`` count lower walls (V has rank 0); ``heights`` grade the same
    lattice from the other end, so ``heights[c] = n - ranks[c]`` when graded."""

    ranks: list[int]
    heights: list[int]
    graded: bool
    violations: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


def rank_and_gradedness(system: ShardSystem, lattice: ShardIntersectionLattice) -> RankReport:
    """Rank of S(R) is the number of lower walls of R."""
    fan, poset = system.fan, system.poset
    ranks = [len(poset.lower_covers[c]) for c in range(poset.size)]
    violations = []
    graded = True
    for big, small in lattice.covers:
        if ranks[small] != ranks[big] + 1:
            graded = False
            violations.append(("cover changes rank by != 1", big, small))
    for c, el in enumerate(lattice.elements):
        if el.dim(fan) != fan.dim - ranks[c]:
            violations.append(("dim != n - rank", c))
    return RankReport(ranks, _heights(len(ranks), lattice.covers), graded, violations)


def _heights(n: int, covers: list[tuple[int, int]]) -> list[int]:
    """Length of the longest containment chain down to the smallest element."""
    below: list[list[int]] = [[] for _ in range(n)]
    for big, small in covers:
        below[big].append(small)
    memo: dict[int, int] = {}

    def h(i: int) -> int:
        if i not in memo:
            memo[i] = 1 + max((h(j) for j in below[i]), default=-1)
        return memo[i]

    return [h(i) for i in range(n)]
