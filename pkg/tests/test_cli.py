import csv
import io
import json
import subprocess
import sys

import numpy as np
import pydot
import pytest

from kinalg.algebra import from_json, to_json
from kinalg.cli import EXIT_FAIL, EXIT_LIMIT, EXIT_OK, EXIT_USAGE, main


def run(*argv):
    buf = io.StringIO()
    code = main(list(argv), out=buf)
    return code, buf.getvalue()


@pytest.mark.parametrize("which", ["table1", "table2", "poisson", "motion", "quantities"])
@pytest.mark.parametrize("fmt", ["text", "csv", "json"])
def test_tables_all_formats(which, fmt):
    code, text = run("tables", "--which", which, "--format", fmt)
    assert code == EXIT_OK and text.strip()
    if fmt == "json":
        assert isinstance(json.loads(text), list)
    if fmt == "csv":
        rows = list(csv.reader(io.StringIO(text)))
        assert len({len(r) for r in rows}) == 1


def test_table2_rows():
    rows = json.loads(run("tables", "--which", "table2", "--format", "json")[1])
    assert len(rows) == 8
    assert rows[-1][next(iter(rows[-1]))] == "S"


@pytest.mark.parametrize("algebra, limit, result", [("dS+", "E0", "NH+"), ("S", "m", "S"), ("P", "C", "P"),
                                                    ("dS-", "c,r", "NH-"), ("dS+", "r,tau", "P")])
def test_contract_examples(algebra, limit, result):
    code, text = run("contract", "--algebra", algebra, "--limit", limit)
    assert code == EXIT_OK
    assert text.splitlines()[-1] == f"identified: {result}"


def test_contract_iw():
    code, text = run("contract", "--algebra", "dS+", "--iw", "J,H", "--basis", "kinematical")
    assert code == EXIT_OK and text.endswith("identified: NH+\n")
    assert run("contract", "--algebra", "dS+", "--iw", "J1,Q2")[0] == EXIT_LIMIT


def test_contract_usage_errors():
    assert run("contract", "--algebra", "XY", "--limit", "m")[0] == EXIT_USAGE
    assert run("contract", "--algebra", "dS+", "--limit", "m", "--iw", "J,H")[0] == EXIT_USAGE


def test_json_round_trip(tmp_path):
    code, text = run("contract", "--algebra", "dS-", "--limit", "C", "--format", "json")
    assert code == EXIT_OK and json.loads(text)["label"] == "P"
    path = tmp_path / "alg.json"
    path.write_text(text, encoding="utf-8")
    assert run("identify", str(path)) == (EXIT_OK, "P\n")
    assert to_json(from_json(text)) == text


def test_identify_bad_input(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text("{not json", encoding="utf-8")
    assert run("identify", str(path))[0] == EXIT_USAGE
    assert run("identify", str(tmp_path / "missing.json"))[0] == EXIT_USAGE


def test_graph_dot_parses():
    code, text = run("graph", "--format", "dot")
    assert code == EXIT_OK
    (graph,) = pydot.graph_from_dot_data(text)
    nodes = {n.get_name().strip('"') for n in graph.get_nodes()} - {"node", "edge", "graph"}
    assert len(nodes) == 8
    edges = graph.get_edges()
    assert len(edges) == 12
    assert {e.get("color") for e in edges} == {"green", "red", "blue"}


def test_graph_text_sign():
    code, text = run("graph", "--sign", "-")
    assert code == EXIT_OK and "dS- --(E0)--> NH-" in text


@pytest.mark.parametrize("sign", ["+", "-"])
def test_realize(sign):
    code, text = run("realize", "--sign", sign, "--operators")
    assert code == EXIT_OK
    assert "PASS matrix commutators match the O(5) relations" in text
    assert "differential operators:" in text


def _csv_array(text):
    rows = list(csv.reader(io.StringIO(text)))
    return rows[0], np.array(rows[1:], dtype=float)


def test_simulate_oscillator():
    code, text = run("simulate", "--family", "NH-", "--h", "0.01", "--T", "10")
    assert code == EXIT_OK
    header, data = _csv_array(text)
    t, q1 = data[:, header.index("t")], data[:, header.index("q1")]
    assert np.max(np.abs(q1 - np.cos(t))) < 1e-6


def test_simulate_static_and_para_galilei(tmp_path):
    _, text = run("simulate", "--family", "S", "--q0", "1,2,3", "--p0", "4,5,6", "--T", "1")
    header, data = _csv_array(text)
    assert np.all(data[:, 1:7] == data[0, 1:7])
    out = tmp_path / "g.csv"
    assert run("simulate", "--family", "G±", "--sign", "+", "--C", "2", "--T", "1", "-o", str(out)) == (EXIT_OK, "")
    header, data = _csv_array(out.read_text())
    np.testing.assert_allclose(data[:, header.index("p1")], data[:, 0] / 2, atol=1e-12)


def test_simulate_errors():
    assert run("simulate", "--family", "NH-", "--h", "0")[0] == EXIT_USAGE
    assert run("simulate", "--family", "NH±")[0] == EXIT_USAGE
    assert run("simulate", "--family", "XY")[0] == EXIT_USAGE
    assert run("simulate", "--family", "G", "--q0", "1,2")[0] == EXIT_USAGE


def test_verify_scope(monkeypatch):
    code, text = run("verify", "--scope", "algebra", "--seed", "3")
    assert code == EXIT_OK
    assert text.startswith("seed 3\n")
    assert "0 failed" in text.splitlines()[-1]
    monkeypatch.setenv("KINALG_SEED", "7")
    assert run("verify", "--scope", "realization")[1].startswith("seed 7\n")
    monkeypatch.setenv("KINALG_SEED", "x")
    assert run("verify", "--scope", "realization")[0] == EXIT_USAGE


def test_verify_poisson_reports_t_warning():
    code, text = run("verify", "--scope", "poisson")
    assert code == EXIT_OK
    assert any(line.startswith("WARN") and "moment NH-" in line and "t/m" in line for line in text.splitlines())


def test_argparse_usage_exit():
    with pytest.raises(SystemExit) as exc:
        main(["contract"])
    assert exc.value.code == EXIT_USAGE


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "kinalg", "graph"], capture_output=True, text=True, check=False)
    assert proc.returncode == EXIT_OK and "--(m)-->" in proc.stdout
    assert EXIT_FAIL == 1
