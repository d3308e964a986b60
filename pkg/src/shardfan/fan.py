"""Complete simplicial fans: validation, faces, walls and stars.

A face is identified with the sorted tuple of its ray indices; this is
legitimate because the face-to-face axiom is validated, not assumed.
"""
from __future__ import annotations

import random
from collections import defaultdict
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from typing import Iterable, Sequence

from . import errors
from .exactgeom import (
    Hyperplane,
    IntVec,
    cones_meet_beyond_common_face,
    det_sign,
    dot,
    hyperplane_through,
    integer_inverse,
    is_primitive,
    vec_gcd,
)

RayTuple = tuple[int, ...]

MONTE_CARLO_POINTS = 100
MONTE_CARLO_SEED = 0


@dataclass(frozen=True)
class Face:
    id: int
    rays: RayTuple

    @property
    def dim(self) -> int:
        return len(self.rays)


@dataclass(frozen=True)
class Wall:
    id: int
    face: Face
    chambers: tuple[int, int]
    hyperplane: Hyperplane


@dataclass(frozen=True, eq=False)
class Fan:
    """A validated complete nonsingular fan.

    Build instances with :func:`validate_fan`; the constructor does not check
    the axioms.  Chambers keep the order of the input document and are
    referred to by their position.
    """

    dim: int
    rays: tuple[IntVec, ...]
    chambers: tuple[RayTuple, ...]
    name: str | None = None
    _chamber_index: dict = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        self._chamber_index.update({c: i for i, c in enumerate(self.chambers)})

    def chamber_id(self, rays: Iterable[int]) -> int:
        return self._chamber_index[tuple(sorted(rays))]

    def chamber_vectors(self, c: int) -> list[IntVec]:
        return [self.rays[i] for i in self.chambers[c]]

    def barycenter(self, c: int) -> IntVec:
        return tuple(sum(col) for col in zip(*self.chamber_vectors(c)))

    def ray_index(self, vector: Sequence[int]) -> int:
        return self.rays.index(tuple(vector))

    @cached_property
    def identity_chamber(self) -> int:
        return self._signed_coordinate_chamber(1)

    @cached_property
    def negated_chamber(self) -> int:
        return self._signed_coordinate_chamber(-1)

    def _signed_coordinate_chamber(self, sign: int) -> int:
        idx = []
        for i in range(self.dim):
            v = tuple(sign if j == i else 0 for j in range(self.dim))
            if v not in self.rays:
                return -1
            idx.append(self.rays.index(v))
        return self._chamber_index.get(tuple(sorted(idx)), -1)

    # -- faces ----------------------------------------------------------------

    @cached_property
    def faces(self) -> tuple[Face, ...]:
        seen: set[RayTuple] = set()
        for ch in self.chambers:
            for k in range(len(ch) + 1):
                seen.update(combinations(ch, k))
        ordered = sorted(seen, key=lambda t: (len(t), t))
        return tuple(Face(i, t) for i, t in enumerate(ordered))

    @cached_property
    def face_index(self) -> dict[RayTuple, int]:
        return {f.rays: f.id for f in self.faces}

    def face(self, rays: Iterable[int]) -> Face:
        key = tuple(sorted(rays))
        try:
            return self.faces[self.face_index[key]]
        except KeyError:
            raise errors.FaceNotInFan(f"ray set {key} is not a face of the fan") from None

    def face_closure(self, rays: Iterable[int]) -> frozenset[int]:
        """Ids of all faces of the cone on ``rays`` (itself included)."""
        rays = tuple(sorted(rays))
        return frozenset(self.face_index[sub] for k in range(len(rays) + 1)
                         for sub in combinations(rays, k))

    @cached_property
    def all_face_ids(self) -> frozenset[int]:
        return frozenset(range(len(self.faces)))

    # -- walls ----------------------------------------------------------------

    @cached_property
    def walls(self) -> tuple[Wall, ...]:
        incident = _wall_incidence(self.chambers)
        out = []
        for wid, key in enumerate(sorted(incident)):
            chs = incident[key]
            hp = hyperplane_through([self.rays[i] for i in key], self.dim)
            out.append(Wall(wid, self.face(key), (chs[0], chs[1]), hp))
        return tuple(out)

    @cached_property
    def wall_of_face(self) -> dict[int, int]:
        return {w.face.id: w.id for w in self.walls}

    def wall_between(self, a: int, b: int) -> Wall:
        key = tuple(sorted(set(self.chambers[a]) & set(self.chambers[b])))
        return self.walls[self.wall_of_face[self.face_index[key]]]

    @cached_property
    def codim2_faces(self) -> tuple[Face, ...]:
        return tuple(f for f in self.faces if f.dim == self.dim - 2)

    def star_chambers(self, face: Face | Iterable[int]) -> frozenset[int]:
        rays = face.rays if isinstance(face, Face) else tuple(sorted(face))
        if rays not in self.face_index:
            raise errors.FaceNotInFan(f"ray set {rays} is not a face of the fan")
        s = set(rays)
        return frozenset(i for i, ch in enumerate(self.chambers) if s.issubset(ch))

    @cached_property
    def adjacency(self) -> dict[int, list[int]]:
        adj: dict[int, list[int]] = defaultdict(list)
        for w in self.walls:
            a, b = w.chambers
            adj[a].append(b)
            adj[b].append(a)
        return {c: sorted(adj[c]) for c in range(len(self.chambers))}


def _wall_incidence(chambers: Sequence[RayTuple]) -> dict[RayTuple, list[int]]:
    incident: dict[RayTuple, list[int]] = defaultdict(list)
    for cid, ch in enumerate(chambers):
        for drop in range(len(ch)):
            incident[ch[:drop] + ch[drop + 1:]].append(cid)
    return incident


def enumerate_faces(fan: Fan) -> tuple[tuple[Face, ...], dict[int, frozenset[int]]]:
    """All faces together with their containment relation.

    The relation maps each face id to the ids of the faces it contains.
    """
    contains = {f.id: fan.face_closure(f.rays) for f in fan.faces}
    return fan.faces, contains


def walls(fan: Fan) -> tuple[Wall, ...]:
    return fan.walls


def star_chambers(fan: Fan, face) -> frozenset[int]:
    return fan.star_chambers(face)


# -- validation ---------------------------------------------------------------

def _separated(a_rays, b_rays, common, dim) -> bool:
    """Cheap certificate that two simplicial cones meet only in cone(common).

    Looks for a facet hyperplane of either cone, through ``common``, that has
    the other cone on its closed opposite side and touches it exactly in the
    common rays.
    """
    common_set = set(common)
    for own, other in ((a_rays, b_rays), (b_rays, a_rays)):
        for drop in own:
            if drop in common_set:
                continue
            facet = [v for v in own if v != drop]
            hp = hyperplane_through(facet, dim)
            inward = 1 if dot(hp.normal, drop) > 0 else -1
            vals = [inward * dot(hp.normal, v) for v in other]
            if all(x <= 0 for x in vals):
                on = {v for v, x in zip(other, vals) if x == 0}
                if on == common_set:
                    return True
    return False


def validate_fan(doc, *, monte_carlo_points: int = MONTE_CARLO_POINTS,
                 seed: int = MONTE_CARLO_SEED, feasibility: str = "auto") -> Fan:
    """Check the fan axioms for a :class:`~shardfan.fanio.FanDocument`.

    Raises the first violated axiom as a :class:`~shardfan.errors.FanError`
    subclass; otherwise returns the validated :class:`Fan`.
    """
    n = doc.dim
    if n < 1:
        raise errors.MalformedChamber("dimension must be positive", dim=n)
    rays = tuple(tuple(int(x) for x in r) for r in doc.rays)
    for i, r in enumerate(rays):
        if len(r) != n:
            raise errors.MalformedChamber(f"ray {i} has length {len(r)}, expected {n}", ray=i)
        if not is_primitive(r):
            raise errors.RayNotPrimitive(f"ray {i} = {list(r)} is not primitive (gcd {vec_gcd(r)})",
                                         ray=i)
    primitive_seen: dict[IntVec, int] = {}
    for i, r in enumerate(rays):
        # primitive rays are positively proportional iff equal
        if r in primitive_seen:
            raise errors.DuplicateRay(f"rays {primitive_seen[r]} and {i} coincide",
                                      rays=[primitive_seen[r], i])
        primitive_seen[r] = i

    chambers = []
    for cid, ch in enumerate(doc.chambers):
        key = tuple(sorted(ch))
        if len(key) != n or len(set(key)) != n or any(not 0 <= i < len(rays) for i in key):
            raise errors.MalformedChamber(f"chamber {cid} = {list(ch)} is not {n} distinct ray indices",
                                          chamber=cid)
        chambers.append(key)
    if len(set(chambers)) != len(chambers):
        raise errors.MalformedChamber("duplicate chamber")

    for cid, ch in enumerate(chambers):
        sign, mag = det_sign([rays[i] for i in ch])
        if mag != 1:
            raise errors.NotUnimodular(f"chamber {cid} = {list(ch)} has |det| = {mag}",
                                       chamber=cid, det=mag)

    fan = Fan(n, rays, tuple(chambers), doc.name)
    if fan.identity_chamber < 0:
        raise errors.MissingIdentityChamber("no chamber spanned by e_1..e_n")
    if fan.negated_chamber < 0:
        raise errors.MissingNegatedChamber("no chamber spanned by -e_1..-e_n")

    for key, chs in sorted(_wall_incidence(fan.chambers).items()):
        if len(chs) != 2:
            raise errors.WallNotTwoChambers(
                f"wall {list(key)} lies in {len(chs)} chamber(s)",
                wall=list(key), chambers=chs)

    for a, b in combinations(range(len(chambers)), 2):
        common = sorted(set(chambers[a]) & set(chambers[b]))
        ra = fan.chamber_vectors(a)
        rb = fan.chamber_vectors(b)
        cr = [rays[i] for i in common]
        if _separated(ra, rb, cr, n):
            continue
        if cones_meet_beyond_common_face(ra, rb, cr, method=feasibility):
            raise errors.NotFaceToFace(
                f"chambers {a} and {b} overlap beyond their common face {common}",
                pair=[a, b])

    # connected dual graph
    seen = {0}
    stack = [0]
    while stack:
        c = stack.pop()
        for d in fan.adjacency[c]:
            if d not in seen:
                seen.add(d)
                stack.append(d)
    if len(seen) != len(chambers):
        raise errors.DisconnectedFan("chamber adjacency graph is disconnected",
                                     unreachable=sorted(set(range(len(chambers))) - seen))

    if monte_carlo_points:
        missing = sample_uncovered_points(fan, monte_carlo_points, seed)
        if missing:
            raise errors.InternalInconsistency(
                "walls and connectivity certify completeness but sampled points are uncovered",
                points=[list(p) for p in missing])
    return fan


def sample_uncovered_points(fan: Fan, count: int, seed: int) -> list[IntVec]:
    """Random integer points not lying in any chamber (diagnostic only)."""
    rng = random.Random(seed)
    inverses = []
    for c in range(len(fan.chambers)):
        cols = fan.chamber_vectors(c)
        rows = [[cols[j][i] for j in range(fan.dim)] for i in range(fan.dim)]
        inverses.append(integer_inverse(rows))
    missing = []
    for _ in range(count):
        p = tuple(rng.randint(-10**6, 10**6) for _ in range(fan.dim))
        if not any(all(dot(row, p) >= 0 for row in inv) for inv in inverses):
            missing.append(p)
    return missing
