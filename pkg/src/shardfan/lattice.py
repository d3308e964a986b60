"""The chamber poset: orientation of the dual graph and lattice queries.

Order relations are stored as Python-int bitsets: ``down[c]`` has bit ``x``
set iff ``x <= c``.  Meets and joins are found by looking the intersection of
two down-sets (up-sets) up among the principal ones.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from . import errors
from .exactgeom import dot
from .fan import Face, Fan


@dataclass(frozen=True, order=True)
class CoverArrow:
    upper: int
    lower: int
    wall: int | None = None


def _bits(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


class ChamberPoset:
    """Finite poset given by its Hasse arrows ``upper -> lower``."""

    def __init__(self, size: int, arrows: Iterable[CoverArrow], fan: Fan | None = None):
        self.size = size
        self.fan = fan
        self.arrows: tuple[CoverArrow, ...] = tuple(sorted(arrows))
        self.lower_covers: list[list[int]] = [[] for _ in range(size)]
        self.upper_covers: list[list[int]] = [[] for _ in range(size)]
        self._arrow_at: dict[tuple[int, int], CoverArrow] = {}
        for a in self.arrows:
            self.lower_covers[a.upper].append(a.lower)
            self.upper_covers[a.lower].append(a.upper)
            self._arrow_at[a.upper, a.lower] = a
        self.down = self._closure(self.lower_covers, self.upper_covers)
        self.up = self._closure(self.upper_covers, self.lower_covers)
        self._by_down = {m: c for c, m in enumerate(self.down)}
        self._by_up = {m: c for c, m in enumerate(self.up)}

    @classmethod
    def from_covers(cls, size: int, pairs: Iterable[tuple[int, int]]) -> "ChamberPoset":
        return cls(size, (CoverArrow(u, l) for u, l in pairs))

    def _closure(self, succ: list[list[int]], pred: list[list[int]]) -> list[int]:
        # Kahn's algorithm from the sinks of ``succ``
        remaining = [len(s) for s in succ]
        ready = [c for c in range(self.size) if remaining[c] == 0]
        mask = [0] * self.size
        done = 0
        while ready:
            c = ready.pop()
            m = 1 << c
            for d in succ[c]:
                m |= mask[d]
            mask[c] = m
            done += 1
            for p in pred[c]:
                remaining[p] -= 1
                if remaining[p] == 0:
                    ready.append(p)
        if done != self.size:
            raise errors.CyclicOrientation("the oriented Hasse quiver has a cycle")
        return mask

    # -- order ----------------------------------------------------------------

    def leq(self, a: int, b: int) -> bool:
        return bool((self.down[b] >> a) & 1)

    def below(self, c: int) -> list[int]:
        return _bits(self.down[c])

    def arrow(self, upper: int, lower: int) -> CoverArrow:
        return self._arrow_at[upper, lower]

    @cached_property
    def maxima(self) -> list[int]:
        return [c for c in range(self.size) if not self.upper_covers[c]]

    @cached_property
    def minima(self) -> list[int]:
        return [c for c in range(self.size) if not self.lower_covers[c]]

    @property
    def top(self) -> int:
        if len(self.maxima) != 1:
            raise errors.LatticeError(f"poset has {len(self.maxima)} maximal elements")
        return self.maxima[0]

    @property
    def bottom(self) -> int:
        if len(self.minima) != 1:
            raise errors.LatticeError(f"poset has {len(self.minima)} minimal elements")
        return self.minima[0]

    def transitive_arrows(self) -> list[CoverArrow]:
        """Arrows implied by a longer path (none in a genuine Hasse quiver)."""
        bad = []
        for a in self.arrows:
            others = 0
            for d in self.lower_covers[a.upper]:
                if d != a.lower:
                    others |= self.down[d]
            if (others >> a.lower) & 1:
                bad.append(a)
        return bad

    # -- lattice operations ---------------------------------------------------

    def meet(self, a: int, b: int) -> int:
        m = self._by_down.get(self.down[a] & self.down[b])
        if m is None:
            raise errors.NotALattice(a, b, "meet")
        return m

    def join(self, a: int, b: int) -> int:
        m = self._by_up.get(self.up[a] & self.up[b])
        if m is None:
            raise errors.NotALattice(a, b, "join")
        return m

    def join_all(self, elems: Iterable[int]) -> int:
        mask = (1 << self.size) - 1
        for e in elems:
            mask &= self.up[e]
        m = self._by_up.get(mask)
        if m is None:
            raise errors.NotALattice(-1, -1, "join")
        return m

    def meet_all(self, elems: Iterable[int]) -> int:
        mask = (1 << self.size) - 1
        for e in elems:
            mask &= self.down[e]
        m = self._by_down.get(mask)
        if m is None:
            raise errors.NotALattice(-1, -1, "meet")
        return m

    @cached_property
    def meet_table(self) -> np.ndarray:
        return np.array([[self.meet(a, b) for b in range(self.size)] for a in range(self.size)],
                        dtype=np.int64)

    @cached_property
    def join_table(self) -> np.ndarray:
        return np.array([[self.join(a, b) for b in range(self.size)] for a in range(self.size)],
                        dtype=np.int64)

    @cached_property
    def gamma_labels(self) -> dict[tuple[int, int], int]:
        """gamma of every Hasse arrow, keyed by ``(upper, lower)``."""
        return {(a.upper, a.lower): gamma(self, a.upper, a.lower) for a in self.arrows}

    def is_lattice(self) -> bool:
        try:
            self.meet_table
            self.join_table
        except errors.NotALattice:
            return False
        return True


def orient_hasse(fan: Fan) -> ChamberPoset:
    """Orient each wall from the chamber on its positive side to the other one."""
    arrows = []
    for w in fan.walls:
        if w.hyperplane.ambiguous:
            raise errors.AmbiguousOrientation(
                f"wall {list(w.face.rays)}: all-ones vector lies on its hyperplane", wall=w.id)
        a, b = w.chambers
        sa = dot(w.hyperplane.normal, fan.barycenter(a))
        sb = dot(w.hyperplane.normal, fan.barycenter(b))
        if sa == 0 or sb == 0 or (sa > 0) == (sb > 0):
            raise errors.AmbiguousOrientation(
                f"wall {list(w.face.rays)} does not separate its chambers", wall=w.id)
        upper, lower = (a, b) if sa > 0 else (b, a)
        arrows.append(CoverArrow(upper, lower, w.id))
    return ChamberPoset(len(fan.chambers), arrows, fan)


def meet(poset: ChamberPoset, a: int, b: int) -> int:
    return poset.meet(a, b)


def join(poset: ChamberPoset, a: int, b: int) -> int:
    return poset.join(a, b)


@dataclass(frozen=True)
class SemidistributivityResult:
    ok: bool
    witness: tuple[str, int, int, int] | None = None

    def __bool__(self) -> bool:
        return self.ok


def check_semidistributive(poset: ChamberPoset) -> SemidistributivityResult:
    """Exhaustive check of meet- and join-semidistributivity over all triples."""
    M = poset.meet_table
    J = poset.join_table
    for a in range(poset.size):
        # meet: a^b = a^c  =>  a^b = a^(b v c)
        Ma = M[a]
        bad = (Ma[:, None] == Ma[None, :]) & (Ma[:, None] != Ma[J])
        if bad.any():
            b, c = map(int, np.argwhere(bad)[0])
            return SemidistributivityResult(False, ("meet", a, b, c))
        Ja = J[a]
        bad = (Ja[:, None] == Ja[None, :]) & (Ja[:, None] != Ja[M])
        if bad.any():
            b, c = map(int, np.argwhere(bad)[0])
            return SemidistributivityResult(False, ("join", a, b, c))
    return SemidistributivityResult(True)


def join_irreducibles(poset: ChamberPoset) -> frozenset[int]:
    return frozenset(c for c in range(poset.size) if len(poset.lower_covers[c]) == 1)


def gamma(poset: ChamberPoset, a: int, b: int) -> int:
    """Minimum of ``{x : b v x = a}`` for the Hasse arrow ``a -> b``."""
    if b not in poset.lower_covers[a]:
        raise ValueError(f"{a} -> {b} is not a Hasse arrow")
    sols = [x for x in range(poset.size) if poset.join(b, x) == a]
    sols_mask = sum(1 << x for x in sols)
    mins = [x for x in sols if (poset.up[x] & sols_mask) == sols_mask]
    if len(mins) != 1:
        raise errors.NoMinimum(f"no minimum solution of b v x = a for arrow {a} -> {b}")
    g = mins[0]
    if len(poset.lower_covers[g]) != 1:
        raise errors.NoMinimum(f"label {g} of arrow {a} -> {b} is not join-irreducible")
    return g


def irredundant_join_reps(poset: ChamberPoset, x: int, jirr: Iterable[int] | None = None) -> list[frozenset[int]]:
    """All irredundant sets of join-irreducibles whose join is ``x``.

    Depth-first over increasing index; a partial set is kept only while no
    member lies below the join of the others (otherwise every completion is
    redundant).
    """
    if jirr is None:
        jirr = join_irreducibles(poset)
    cands = sorted(j for j in jirr if poset.leq(j, x))
    found: list[frozenset[int]] = []
    if x == poset.bottom:
        return [frozenset()]

    def independent(chosen: list[int]) -> bool:
        for i, c in enumerate(chosen):
            rest = chosen[:i] + chosen[i + 1:]
            if rest and poset.leq(c, poset.join_all(rest)):
                return False
        return True

    def extend(start: int, chosen: list[int], current: int | None):
        for k in range(start, len(cands)):
            y = cands[k]
            if current is not None and poset.leq(y, current):
                continue
            nxt = chosen + [y]
            if not independent(nxt):
                continue
            j = y if current is None else poset.join(current, y)
            if j == x:
                found.append(frozenset(nxt))
            else:
                extend(k + 1, nxt, j)

    extend(0, [], None)
    return found


def canonical_join_rep_oracle(poset: ChamberPoset, x: int) -> frozenset[int]:
    """Brute-force canonical join representation of ``x``.

    Among all irredundant join representations by join-irreducibles, return
    the one that every other representation refines.
    """
    reps = irredundant_join_reps(poset, x)
    downs = [_union_down(poset, r) for r in reps]
    canonical = [c for c in reps if all(all((d >> e) & 1 for e in c) for d in downs)]
    if len(canonical) != 1:
        raise errors.NoCanonicalJoinRepresentation(
            f"element {x} has {len(canonical)} candidate canonical representations")
    return canonical[0]


def _union_down(poset: ChamberPoset, elems) -> int:
    m = 0
    for e in elems:
        m |= poset.down[e]
    return m


@dataclass(frozen=True)
class StarInterval:
    face: Face
    min: int
    max: int
    chambers: frozenset[int]


def star_interval(fan: Fan, poset: ChamberPoset, face: Face | Sequence[int]) -> StarInterval:
    """Chambers containing ``face``; checks they form the interval [min, max]."""
    if not isinstance(face, Face):
        face = fan.face(face)
    star = fan.star_chambers(face)
    mask = sum(1 << c for c in star)
    tops = [c for c in star if (poset.down[c] & mask) == mask]
    bots = [c for c in star if (poset.up[c] & mask) == mask]
    if len(tops) != 1 or len(bots) != 1:
        raise errors.IntervalMismatch(f"star of face {face.rays} has no unique max/min")
    lo, hi = bots[0], tops[0]
    if poset.down[hi] & poset.up[lo] != mask:
        raise errors.IntervalMismatch(f"star of face {face.rays} is not the interval [{lo}, {hi}]")
    return StarInterval(face, lo, hi, star)


@dataclass(frozen=True)
class CrownReport:
    ok: bool
    face: Face
    chains: tuple[tuple[int, ...], ...] = ()
    reason: str = ""

    @property
    def chain_lengths(self) -> tuple[int, ...]:
        """Number of chambers strictly between max and min on each side."""
        return tuple(len(c) for c in self.chains)

    @property
    def arrow_lengths(self) -> tuple[int, ...]:
        return tuple(len(c) + 1 for c in self.chains)


def crown_check(fan: Fan, poset: ChamberPoset, face: Face | Sequence[int]) -> CrownReport:
    """Is the star of a codimension-two face two disjoint chains from max to min?"""
    if not isinstance(face, Face):
        face = fan.face(face)
    if face.dim != fan.dim - 2:
        raise errors.FaceNotCodim2(f"face {face.rays} has dimension {face.dim}, expected {fan.dim - 2}")
    try:
        iv = star_interval(fan, poset, face)
    except errors.IntervalMismatch as exc:
        return CrownReport(False, face, reason=str(exc))
    star = iv.chambers
    down = {c: [d for d in poset.lower_covers[c] if d in star] for c in star}
    up = {c: [d for d in poset.upper_covers[c] if d in star] for c in star}
    if len(down[iv.max]) != 2 or len(up[iv.min]) != 2:
        return CrownReport(False, face, reason="max or min does not have exactly two neighbours")
    for c in star:
        if c not in (iv.max, iv.min) and (len(down[c]) != 1 or len(up[c]) != 1):
            return CrownReport(False, face, reason=f"chamber {c} is not on a chain")
    chains = []
    visited = {iv.max, iv.min}
    for start in sorted(down[iv.max]):
        chain = []
        c = start
        while c != iv.min:
            if c in visited:
                return CrownReport(False, face, reason="chains are not disjoint")
            visited.add(c)
            chain.append(c)
            c = down[c][0]
        chains.append(tuple(chain))
    if visited != set(star):
        return CrownReport(False, face, reason="star has chambers off the two chains")
    chains.sort(key=lambda ch: (len(ch), ch))
    return CrownReport(True, face, tuple(chains))
