import json
import subprocess
import sys

import pytest
from hypothesis import given

from bipwhc.cli import main
from bipwhc.conditions import full_report
from bipwhc.families import make_complete, make_Q, make_R
from bipwhc.graphfile import GraphFileError, parse_graph_file, write_graph_file
from bipwhc.report import emit_report

from conftest import C6_EDGES, balanced_graphs, bipartite_graphs


# -- graph files -------------------------------------------------------


def test_parse_k22():
    g = parse_graph_file("p bip 2 2\ne 1 1\ne 1 2\ne 2 1\ne 2 2\n")
    assert g == make_complete(2, 2)


def test_parse_c6(c6):
    text = "p bip 3 3\n" + "".join(f"e {i + 1} {j + 1}\n" for i, j in C6_EDGES)
    assert parse_graph_file(text) == c6


@pytest.mark.parametrize("text,line", [
    ("p bip 2 2\ne 3 1\n", 2),
    ("c hello\np bip 2 2\ne 1 x\n", 3),
    ("p bip 2\n", 1),
    ("e 1 1\n", 1),
    ("p bip 2 2\np bip 2 2\n", 2),
    ("p bip 2 2\nq 1 1\n", 2),
    ("c only a comment\n", 2),
])
def test_parse_errors_carry_line(text, line):
    with pytest.raises(GraphFileError) as info:
        parse_graph_file(text)
    assert info.value.line == line


def test_comments_and_blank_lines_ignored():
    g = parse_graph_file("c K_{1,1}\n\np bip 1 1\n\ne 1 1\n")
    assert g.edge_count == 1


@given(bipartite_graphs(max_side=6))
def test_round_trip(g):
    assert parse_graph_file(write_graph_file(g, comment="x\ny")) == g


# -- reports -----------------------------------------------------------


def test_structured_report_k22():
    doc = json.loads(emit_report(full_report(make_complete(2, 2), run_oracle=True), "structured"))
    assert set(doc) >= {"graph", "verdicts", "oracle"}
    assert set(doc["graph"]) >= {"n", "e", "delta", "sigma"}
    assert doc["oracle"] == {"weakly_hc": True, "failing_pair": None}
    for v in doc["verdicts"]:
        assert set(v) == {"id", "applicable", "satisfied", "certified", "confidence", "detail"}
        assert v["certified"] or not v["applicable"] or not v["satisfied"]
    assert any(v["certified"] for v in doc["verdicts"])


def test_structured_report_c6(c6):
    doc = json.loads(emit_report(full_report(c6, run_oracle=True), "structured"))
    assert not any(v["certified"] for v in doc["verdicts"])
    assert doc["oracle"] == {"weakly_hc": False, "failing_pair": ["x1", "y2"]}


@given(balanced_graphs(min_n=2, max_n=5))
def test_structured_report_is_deterministic(g):
    a = emit_report(full_report(g, run_oracle=True, raise_on_violation=False), "structured")
    b = emit_report(full_report(g, run_oracle=True, raise_on_violation=False), "structured")
    assert a == b


def test_text_report_table():
    text = emit_report(full_report(make_Q(5, 2), run_oracle=True))
    assert "edge_count_k" in text and "oracle: weakly Hamilton-connected" in text


def test_unknown_format():
    with pytest.raises(ValueError):
        emit_report(full_report(make_complete(2, 2)), "xml")


# -- command line ------------------------------------------------------


@pytest.fixture
def q52_file(tmp_path):
    path = tmp_path / "q52.txt"
    assert main(["construct", "Q", "--n", "5", "--t", "2", "-o", str(path)]) == 0
    return path


def test_construct_round_trips(q52_file):
    assert parse_graph_file(q52_file.read_text()) == make_Q(5, 2)


def test_check_structured(q52_file, capsys):
    assert main(["check", str(q52_file), "--oracle", "--format", "structured"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["graph"]["e"] == 22 and doc["oracle"]["weakly_hc"] is True


def test_check_single_condition(q52_file, capsys):
    assert main(["check", str(q52_file), "--condition", "pair_sum", "--format", "structured"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert [v["id"] for v in doc["verdicts"]] == ["pair_sum"]


def test_oracle_and_closure_commands(tmp_path, capsys):
    path = tmp_path / "r.txt"
    path.write_text(write_graph_file(make_R(5, 2)))
    assert main(["oracle", str(path), "--format", "structured"]) == 0
    assert json.loads(capsys.readouterr().out)["weakly_hc"] is False
    near = tmp_path / "near.txt"
    near.write_text(write_graph_file(make_complete(4, 4).remove_edge(0, 0)))
    assert main(["closure", str(near), "--format", "structured"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["added_edges"] == [["x1", "y1"]] and doc["complete"]


def test_oracle_witnesses(tmp_path, capsys):
    path = tmp_path / "k22.txt"
    path.write_text(write_graph_file(make_complete(2, 2)))
    assert main(["oracle", str(path), "--witnesses"]) == 0
    out = capsys.readouterr().out
    assert "x1-y1: x1 y2 x2 y1" in out


def test_spectrum_command(q52_file, capsys):
    assert main(["spectrum", str(q52_file), "--format", "structured", "--tol", "1e-11"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["rho"]["value"] > 20 ** 0.5 and all(b["holds"] for b in doc["bounds"].values())


def test_verify_command(capsys):
    assert main(["verify", "--condition", "pair_sum", "--n", "3", "--exhaustive", "--format", "structured"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["violations"] == [] and doc["examined"] == 512


def test_exit_codes(tmp_path, capsys):
    bad = tmp_path / "bad.txt"
    bad.write_text("p bip 2 2\ne 3 1\n")
    assert main(["check", str(bad)]) == 1
    assert "line 2" in capsys.readouterr().err
    assert main(["check", str(tmp_path / "missing.txt")]) == 1
    assert main(["construct", "Q", "--n", "5", "--t", "4"]) == 1
    assert main(["verify", "--condition", "all", "--n", "5", "--exhaustive"]) == 1
    with pytest.raises(SystemExit) as info:
        main(["verify", "--n", "3"])
    assert info.value.code == 1


def test_violation_exit_code(monkeypatch, tmp_path, capsys):
    import bipwhc.cli as cli
    from bipwhc.sweep import SweepReport

    fake = SweepReport("pair_sum", 3, "exhaustive", None, None, None, examined=1,
                       violations=[{"certified_by": ["pair_sum"], "graph": "p bip 3 3\n"}])
    monkeypatch.setattr(cli, "verify_implication", lambda *a, **k: fake)
    assert main(["verify", "--condition", "pair_sum", "--n", "3", "--exhaustive"]) == 2
    out = capsys.readouterr().out
    assert "p bip 3 3" in out and "FAILED" in out


def test_help_prints_defaults(capsys):
    with pytest.raises(SystemExit):
        main(["check", "--help"])
    out = capsys.readouterr().out
    assert "1e-10" in out and "1e-07" in out
    with pytest.raises(SystemExit):
        main(["verify", "--help"])
    assert "random seed (default: 0)" in capsys.readouterr().out


def test_module_entry_point_is_byte_deterministic(tmp_path):
    path = tmp_path / "q.txt"
    path.write_text(write_graph_file(make_Q(6, 2)))
    cmd = [sys.executable, "-m", "bipwhc", "check", str(path), "--oracle", "--format", "structured"]
    a = subprocess.run(cmd, capture_output=True, check=True).stdout
    b = subprocess.run(cmd, capture_output=True, check=True).stdout
    assert a == b and b"spectral_rho" in a
