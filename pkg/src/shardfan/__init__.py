"""Shards, shard intersections and canonical join representations of g-fans."""
from .builders import gen_coxeter_A, gen_crown, gen_orthant, path_a2
from .fan import Fan, validate_fan
from .fanio import FanDocument, export_dot, load_fan, save_fan
from .intersections import enumerate_shard_intersections
from .lattice import ChamberPoset, orient_hasse
from .shards import ShardSystem
from .verify import VerifyReport, run_verify_suite

__all__ = [
    "ChamberPoset",
    "Fan",
    "FanDocument",
    "ShardSystem",
    "VerifyReport",
    "enumerate_shard_intersections",
    "export_dot",
    "gen_coxeter_A",
    "gen_crown",
    "gen_orthant",
    "load_fan",
    "orient_hasse",
    "path_a2",
    "run_verify_suite",
    "save_fan",
    "validate_fan",
]
