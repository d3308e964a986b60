"""End-to-end verification suite over a fan document."""
from __future__ import annotations

import json
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

from . import errors
from .fan import Fan, validate_fan
from .fanio import FanDocument
from .intersections import (
    enumerate_shard_intersections,
    rank_and_gradedness,
    verify_anti_isomorphism,
    verify_containing_shard,
)
from .lattice import (
    ChamberPoset,
    check_semidistributive,
    crown_check,
    join_irreducibles,
    orient_hasse,
    star_interval,
)
from .shards import (
    ShardSystem,
    arrangement_shards_oracle,
    check_cjr_via_shards,
    shard_wall_connectivity_check,
    verify_jirr_shard_bijection,
)

SUITES = ("all", "lattice", "shards", "intersections")
MAX_WITNESSES = 10


@dataclass
class VerifyReport:
    name: str | None
    checks: list[dict] = field(default_factory=list)
    counts: dict[str, int] = field(default_factory=dict)
    timing: dict[str, float] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(c["status"] != "fail" for c in self.checks)

    @property
    def failures(self) -> list[dict]:
        return [c for c in self.checks if c["status"] == "fail"]

    def add(self, name: str, ok: bool | None, witnesses=(), **info) -> None:
        status = "skip" if ok is None else "pass" if ok else "fail"
        entry = {"name": name, "status": status, **info}
        witnesses = list(witnesses)
        if witnesses:
            entry["witnesses"] = [_jsonable(w) for w in witnesses[:MAX_WITNESSES]]
            entry["violations"] = len(witnesses)
        self.checks.append(entry)

    def to_dict(self, timing: bool = False) -> dict:
        d = {"name": self.name, "ok": self.ok, "counts": self.counts, "checks": self.checks}
        if timing:
            d["timing"] = self.timing
        return d

    def to_json(self, timing: bool = False) -> str:
        return json.dumps(self.to_dict(timing), sort_keys=True, indent=2) + "\n"


def _jsonable(x):
    if isinstance(x, (list, tuple, set, frozenset)):
        items = sorted(x) if isinstance(x, (set, frozenset)) else x
        return [_jsonable(i) for i in items]
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    return x


def lattice_checks(poset: ChamberPoset, report: VerifyReport, fan: Fan | None = None) -> None:
    """Lattice-level checks; also usable on synthetic posets without a fan."""
    if fan is not None:
        ok = poset.maxima == [fan.identity_chamber] and poset.minima == [fan.negated_chamber]
        report.add("extremes", ok, [] if ok else [("maxima", poset.maxima), ("minima", poset.minima)])
    bad = poset.transitive_arrows()
    report.add("hasse_reduced", not bad, [(a.upper, a.lower) for a in bad])
    if not poset.is_lattice():
        report.add("lattice", False, ["meet or join missing"])
        report.add("semidistributive", None, reason="not a lattice")
        return
    report.add("lattice", True)
    sd = check_semidistributive(poset)
    report.add("semidistributive", sd.ok, [sd.witness] if sd.witness else [])


def _crown_and_star_checks(fan: Fan, poset: ChamberPoset, report: VerifyReport) -> None:
    if fan.dim >= 2:
        bad = []
        for face in fan.codim2_faces:
            cr = crown_check(fan, poset, face)
            if not cr.ok:
                bad.append((face.rays, cr.reason))
        report.add("crown", not bad, bad, faces=len(fan.codim2_faces))
    else:
        report.add("crown", None, reason="no codimension-two faces")
    bad = []
    for face in fan.faces:
        try:
            star_interval(fan, poset, face)
        except errors.IntervalMismatch as exc:
            bad.append((face.rays, str(exc)))
    report.add("star_interval", not bad, bad, faces=len(fan.faces))


def _shard_checks(system: ShardSystem, report: VerifyReport, workers: int) -> None:
    fan, poset = system.fan, system.poset
    covered = sorted(system.shard_of_wall)
    report.add("shards_partition_walls", covered == list(range(len(fan.walls))))
    jirr = join_irreducibles(poset)
    report.add("shards_equal_jirr", len(system.shards) == len(jirr),
               [] if len(system.shards) == len(jirr) else [(len(system.shards), len(jirr))])
    bad = []
    for s in system.shards:
        up, lo = system.up(s.id), system.lo(s.id)
        if not (len(up) == len(lo) == len(s.walls)):
            bad.append(("up/lo size", s.id))
        if s.faces != frozenset().union(*(fan.face_closure(fan.walls[w].face.rays) for w in s.walls)):
            bad.append(("faces", s.id))
    report.add("shard_up_lo_faces", not bad, bad)
    try:
        system.J
        report.add("unique_minimal_upper", True)
    except errors.NonUniqueMinimum as exc:
        report.add("unique_minimal_upper", False, [str(exc)])
        return
    bad = [s.id for s in system.shards if not shard_wall_connectivity_check(system, s.id)]
    report.add("shard_connectivity", not bad, bad)
    bij = verify_jirr_shard_bijection(system)
    report.add("jirr_shard_bijection", bij.ok, bij.violations, pairs=bij.pairs, arrows=bij.arrows)

    chambers = range(poset.size)
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(lambda c: check_cjr_via_shards(system, c), chambers))
    else:
        results = [check_cjr_via_shards(system, c) for c in chambers]
    bad = [p for r in results for p in r]
    report.add("cjr_via_shards", not bad, bad, chambers=poset.size)

    try:
        oracle = arrangement_shards_oracle(fan, poset)
    except errors.NotAnArrangement as exc:
        report.add("arrangement_oracle", None, reason=f"not an arrangement: {exc}")
    else:
        same = sorted(s.faces for s in oracle) == sorted(s.faces for s in system.shards)
        report.add("arrangement_oracle", same)


def _intersection_checks(system: ShardSystem, report: VerifyReport) -> int:
    fan, poset = system.fan, system.poset
    lat = enumerate_shard_intersections(system)
    report.add("shard_intersections_closed", lat.ok, lat.violations)
    ok = (lat.elements[poset.bottom].faces == fan.all_face_ids
          and lat.elements[poset.top].faces == frozenset({fan.face_index[()]}))
    report.add("s_extremes", ok)
    bad = []
    for j in sorted(join_irreducibles(poset)):
        s = system.shard_of_cover(j, poset.lower_covers[j][0])
        if lat.elements[j].faces != system.shards[s].faces:
            bad.append(j)
    report.add("s_of_jirr", not bad, bad)
    anti = verify_anti_isomorphism(system, lat)
    report.add("si_clo_anti_isomorphism", anti.ok, anti.violations, pairs=anti.checked)
    cont = verify_containing_shard(system, lat)
    report.add("containing_shard", cont.ok, cont.violations, faces=cont.checked,
               boundary_cases=len(cont.notes))
    rk = rank_and_gradedness(system, lat)
    report.add("graded", rk.ok, rk.violations,
               rank_counts={str(r): rk.ranks.count(r) for r in sorted(set(rk.ranks))})
    return len(lat.elements)


def run_verify_suite(doc: FanDocument, suite: str = "all", workers: int = 1) -> VerifyReport:
    """Run the selected checks; fan-validation errors propagate as exceptions."""
    if suite not in SUITES:
        raise ValueError(f"unknown suite {suite!r}; choose from {SUITES}")
    report = VerifyReport(doc.name)
    t0 = time.perf_counter()
    fan = validate_fan(doc)
    report.add("fan_valid", True)
    poset = orient_hasse(fan)
    report.timing["validate"] = time.perf_counter() - t0
    report.counts.update(chambers=len(fan.chambers), faces=len(fan.faces), walls=len(fan.walls))

    t = time.perf_counter()
    if suite in ("all", "lattice"):
        lattice_checks(poset, report, fan)
        _crown_and_star_checks(fan, poset, report)
    report.timing["lattice"] = time.perf_counter() - t
    report.counts["join_irreducibles"] = len(join_irreducibles(poset))
    if suite == "lattice":
        return report

    t = time.perf_counter()
    try:
        system = ShardSystem(fan, poset)
    except errors.ShardfanError as exc:
        report.add("shards_built", False, [str(exc)])
        return report
    report.counts.update(plates=len(system.plates), shards=len(system.shards))
    if suite in ("all", "shards"):
        _shard_checks(system, report, workers)
    report.timing["shards"] = time.perf_counter() - t
    if suite == "shards":
        return report

    t = time.perf_counter()
    try:
        report.counts["shard_intersections"] = _intersection_checks(system, report)
    except errors.ShardfanError as exc:
        report.add("intersections_built", False, [str(exc)])
    report.timing["intersections"] = time.perf_counter() - t
    return report
