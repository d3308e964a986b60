import json
import subprocess
import sys

import pytest

from shardfan import builders, cli
from shardfan.errors import ParseError, RayNotPrimitive, SchemaError
from shardfan.fan import validate_fan
from shardfan.fanio import FanDocument, dumps_fan, export_dot, load_fan, loads_fan, save_fan
from shardfan.intersections import enumerate_shard_intersections
from shardfan.verify import run_verify_suite

from conftest import built


def chamber_vector_sets(doc):
    return {frozenset(doc.rays[i] for i in ch) for ch in doc.chambers}


@pytest.mark.parametrize("n", [1, 2, 3])
def test_orthant_counts(n):
    _, poset, system = built("orthant", n)
    assert poset.size == 2 ** n and len(system.shards) == n


def test_orthant_bounds():
    with pytest.raises(ValueError):
        builders.gen_orthant(0)
    with pytest.raises(ValueError):
        builders.gen_orthant(7)


def test_crown_0_1_is_fa2():
    assert chamber_vector_sets(builders.gen_crown(0, 1)) == chamber_vector_sets(builders.path_a2())
    assert set(builders.gen_crown(0, 1).rays) == set(builders.path_a2().rays)


def test_crown_1_1_is_coxeter_a2():
    a, b = builders.gen_crown(1, 1), builders.gen_coxeter_A(2)
    assert set(a.rays) == set(b.rays) == {(1, 0), (0, 1), (-1, 0), (0, -1), (-1, 1), (1, -1)}
    assert chamber_vector_sets(a) == chamber_vector_sets(b)


def test_crown_2_3_counts():
    fan, _, system = built("crown", 2, 3)
    assert len(fan.chambers) == 9 and len(system.shards) == 7


@pytest.mark.parametrize("n, chambers", [(2, 6), (3, 24), (4, 120)])
def test_coxeter_chamber_counts(n, chambers):
    doc = builders.gen_coxeter_A(n)
    assert len(doc.chambers) == chambers
    ident = tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))
    assert frozenset(ident) in chamber_vector_sets(doc)
    assert frozenset(tuple(-x for x in v) for v in ident) in chamber_vector_sets(doc)


def test_reflections_are_involutions():
    for n in (2, 3, 4):
        for s in builders.simple_reflections_A(n):
            sq = [[sum(s[i][k] * s[k][j] for k in range(n)) for j in range(n)] for i in range(n)]
            assert sq == [[int(i == j) for j in range(n)] for i in range(n)]


def test_round_trip(tmp_path):
    doc = builders.path_a2()
    path = tmp_path / "fa2.json"
    save_fan(doc, path)
    assert load_fan(path) == doc
    assert loads_fan(dumps_fan(doc)) == doc


def test_unknown_field_named():
    text = json.dumps({"dim": 2, "rays": [[1, 0]], "chamberz": [[0]]})
    with pytest.raises(SchemaError) as info:
        loads_fan(text)
    assert info.value.field == "chamberz"


@pytest.mark.parametrize("payload", [
    {"dim": 2, "rays": [[1, 0.5]], "chambers": []},
    {"dim": 2, "rays": [[1, 0]], "chambers": [[3]]},
    {"dim": "2", "rays": [], "chambers": []},
    {"rays": [], "chambers": []},
    [1, 2, 3],
])
def test_schema_errors(payload):
    with pytest.raises(SchemaError):
        loads_fan(json.dumps(payload))


def test_parse_error_has_line():
    with pytest.raises(ParseError) as info:
        loads_fan('{"dim": 2,\n "rays": [[1, 0]\n}')
    assert info.value.line == 3


def test_non_primitive_ray_reaches_validation():
    doc = loads_fan(json.dumps({"dim": 2, "rays": [[2, 4], [0, 1]], "chambers": [[0, 1]]}))
    with pytest.raises(RayNotPrimitive):
        validate_fan(doc)


def _dot_counts(text):
    lines = text.strip().splitlines()[1:-1]
    edges = sum("->" in l for l in lines)
    return len(lines) - edges, edges


def test_dot_counts(fa2):
    _, poset, system = fa2
    assert _dot_counts(export_dot(poset)) == (5, 5)
    assert _dot_counts(export_dot(enumerate_shard_intersections(system))) == (5, 6)
    _, poset, _ = built("orthant", 1)
    assert _dot_counts(export_dot(poset)) == (2, 1)


def test_dot_node_names(fa2):
    _, poset, system = fa2
    text = export_dot(poset)
    assert '"(0,1)" -> "(0,4)";' in text
    assert '"()";' in export_dot(enumerate_shard_intersections(system))


def test_dot_byte_stable():
    from shardfan.lattice import orient_hasse
    from shardfan.shards import ShardSystem
    outs = set()
    for _ in range(2):
        fan = validate_fan(builders.gen_coxeter_A(3))
        poset = orient_hasse(fan)
        outs.add(export_dot(poset) + export_dot(enumerate_shard_intersections(ShardSystem(fan, poset))))
    assert len(outs) == 1


def test_export_dot_rejects_other_types():
    with pytest.raises(TypeError):
        export_dot(object())


def test_verify_report_fa2():
    rep = run_verify_suite(builders.path_a2())
    assert rep.ok
    assert rep.counts == {"chambers": 5, "faces": 11, "walls": 5, "plates": 3, "shards": 3,
                          "join_irreducibles": 3, "shard_intersections": 5}
    status = {c["name"]: c["status"] for c in rep.checks}
    assert status["arrangement_oracle"] == "skip"


def test_verify_report_a3():
    rep = run_verify_suite(builders.gen_coxeter_A(3))
    assert rep.ok and not rep.failures
    c = rep.counts
    assert (c["chambers"], c["walls"], c["shards"], c["join_irreducibles"], c["shard_intersections"]) == (
        24, 36, 11, 11, 24)


@pytest.mark.parametrize("suite, last", [("lattice", "star_interval"), ("shards", "arrangement_oracle")])
def test_verify_suite_selector(suite, last):
    rep = run_verify_suite(builders.path_a2(), suite)
    assert rep.checks[-1]["name"] == last


def test_verify_report_ignores_timing_unless_asked():
    rep = run_verify_suite(builders.path_a2())
    assert "timing" not in json.loads(rep.to_json())
    assert "timing" in json.loads(rep.to_json(timing=True))


# -- CLI ------------------------------------------------------------------------

@pytest.fixture
def fa2_path(tmp_path):
    path = tmp_path / "fa2.json"
    save_fan(builders.path_a2(), path)
    return str(path)


def run_cli(capsys, *argv):
    code = cli.main(list(argv))
    return code, capsys.readouterr()


def test_cli_validate(capsys, fa2_path):
    code, out = run_cli(capsys, "validate", fa2_path)
    assert code == 0 and json.loads(out.out)["faces"] == 11


def test_cli_poset(capsys, fa2_path):
    code, out = run_cli(capsys, "poset", fa2_path, "--json")
    data = json.loads(out.out)
    assert code == 0 and len(data["arrows"]) == 5 and len(data["join_irreducibles"]) == 3
    code, out = run_cli(capsys, "poset", fa2_path, "--dot")
    assert code == 0 and out.out.startswith("digraph")


def test_cli_shards(capsys, fa2_path):
    code, out = run_cli(capsys, "shards", fa2_path, "--json")
    assert code == 0 and len(json.loads(out.out)["shards"]) == 3


def test_cli_cjr(capsys, fa2_path):
    code, out = run_cli(capsys, "cjr", fa2_path, "--chamber", "0")
    (row,) = json.loads(out.out)
    assert code == 0 and row["canonical_join"] == row["oracle"] == [2, 4]
    code, _ = run_cli(capsys, "cjr", fa2_path, "--chamber", "9")
    assert code == 1


@pytest.mark.parametrize("order", ["si", "clo"])
def test_cli_shardint(capsys, fa2_path, order):
    code, out = run_cli(capsys, "shardint", fa2_path, "--order", order)
    data = json.loads(out.out)
    assert code == 0 and len(data["elements"]) == 5
    # the two orders are reverse to each other; si lists covers only
    assert len(data["relation"]) == (6 if order == "si" else 7)


def test_cli_verify(capsys, fa2_path):
    code, out = run_cli(capsys, "verify", fa2_path, "--json")
    assert code == 0 and json.loads(out.out)["ok"]


def test_cli_gen(capsys, tmp_path):
    path = tmp_path / "c.json"
    code, _ = run_cli(capsys, "gen", "crown", "2", "3", "-o", str(path))
    assert code == 0 and len(load_fan(path).chambers) == 9
    code, out = run_cli(capsys, "gen", "papera2")
    assert code == 0 and loads_fan(out.out) == builders.path_a2()
    assert run_cli(capsys, "gen", "crown", "2")[0] == 1
    assert run_cli(capsys, "gen", "hexagon")[0] == 1


def test_cli_fan_error_exit_1(capsys, tmp_path):
    doc = builders.path_a2()
    bad = FanDocument(doc.dim, doc.rays, doc.chambers[:-1], doc.name)
    path = tmp_path / "bad.json"
    save_fan(bad, path)
    code, out = run_cli(capsys, "validate", str(path))
    assert code == 1 and json.loads(out.out)["error"] == "WallNotTwoChambers"


def test_cli_missing_file(capsys, tmp_path):
    code, out = run_cli(capsys, "validate", str(tmp_path / "nope.json"))
    assert code == 1 and "error" in out.err


def test_cli_violation_exit_2(capsys, tmp_path, monkeypatch):
    # valid fans satisfy every theorem, so a failing check is simulated
    from shardfan import verify
    from shardfan.lattice import SemidistributivityResult
    monkeypatch.setattr(verify, "check_semidistributive",
                        lambda poset: SemidistributivityResult(False, ("meet", 0, 1, 2)))
    path = tmp_path / "fa2.json"
    save_fan(builders.path_a2(), path)
    code, _ = run_cli(capsys, "verify", str(path), "--suite", "lattice")
    assert code == 2


def test_module_entry_point(fa2_path):
    res = subprocess.run([sys.executable, "-m", "shardfan", "validate", fa2_path],
                         capture_output=True, text=True)
    assert res.returncode == 0 and json.loads(res.stdout)["valid"]
