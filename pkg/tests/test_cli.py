import json
import math

import pytest

import gibbscert as gc
from gibbscert.cli import (
    EXIT_FAIL,
    EXIT_INCONCLUSIVE,
    EXIT_PASS,
    EXIT_USAGE,
    main,
)
from gibbscert import generators as gen


@pytest.fixture
def chain_file(tmp_path):
    path = tmp_path / "chain9.txt"
    main(["generate", "chain", "--n", "9", "--out", str(path)])
    return str(path)


# ---------------------------------------------------------------------------
# generate and round trips


def test_generate_round_trip_text(tmp_path):
    out = tmp_path / "g.txt"
    assert main(["generate", "grid", "--rows", "3", "--cols", "4", "--out", str(out)]) == EXIT_PASS
    g = gen.load_graph(str(out))
    assert set(g.edges) == set(gen.grid(3, 4).edges)
    # serialize -> parse -> serialize is byte-identical
    text = out.read_text()
    assert gen.edges_to_text(gen.parse_edge_text(text)) == text


def test_generate_round_trip_json(tmp_path):
    out = tmp_path / "g.json"
    assert main(["generate", "growing-tree", "--depth", "3", "--out", str(out)]) == EXIT_PASS
    g = gen.load_graph(str(out))
    assert set(g.edges) == set(gen.growing_tree(3).edges)
    blob = out.read_text()
    assert gen.edges_to_json(gen.parse_edge_json(blob)) + "\n" == blob


def test_generate_stdout(capsys):
    assert main(["generate", "chain", "--n", "3"]) == EXIT_PASS
    lines = [l for l in capsys.readouterr().out.splitlines() if l and not l.startswith("#")]
    assert lines == ["0 1", "1 2"]


def test_graph_hash_stable(tmp_path):
    g = gen.grid(3, 3)
    assert gen.graph_hash(g) == gen.graph_hash(gen.grid(3, 3))
    assert gen.graph_hash(g) != gen.graph_hash(gen.grid(3, 4))


# ---------------------------------------------------------------------------
# scalar commands


def test_beta_star_command(capsys):
    rc = main([
        "beta-star", "--family", "exponential", "--param", "8",
        "--gamma", str(math.log(2.0)), "--tol", "1e-12",
    ])
    assert rc == EXIT_PASS
    report = json.loads(capsys.readouterr().out)
    assert report["beta_star"] == pytest.approx(2.0 / 3.0, abs=1e-8)


def test_kappa_command(capsys):
    rc = main(["kappa", "--family", "constant", "--param", "1", "--beta", "0.25"])
    assert rc == EXIT_PASS
    report = json.loads(capsys.readouterr().out)
    assert report["kappa"] == pytest.approx(math.e - 1.0)


def test_certificate_exit_codes(capsys):
    base = ["certificate", "--family", "constant", "--param", "0.05", "--gamma", str(math.log(2.0))]
    assert main(base + ["--beta", "1.0"]) == EXIT_PASS
    assert main(base + ["--beta", "5.0"]) == EXIT_FAIL
    capsys.readouterr()


# ---------------------------------------------------------------------------
# graph commands and exit-code partition


def test_check_tempered_pass(chain_file, tmp_path, capsys):
    out = tmp_path / "rep.json"
    rc = main([
        "check-tempered", "--graph", chain_file, "--root", "4",
        "--radii", "1 2 3", "--out", str(out),
    ])
    assert rc == EXIT_PASS
    report = json.loads(out.read_text())
    assert report["verdict"] == "certified-on-window"
    assert report["gamma"] == pytest.approx(math.log(2.0))
    assert report["config"]["graph_hash"] == gen.graph_hash(gen.load_graph(chain_file))


def test_check_tempered_fail_with_witness(tmp_path):
    gpath = tmp_path / "t.txt"
    main(["generate", "growing-tree", "--depth", "4", "--out", str(gpath)])
    out = tmp_path / "rep.json"
    rc = main([
        "check-tempered", "--graph", str(gpath), "--root", "0",
        "--radii", "1 2", "--gamma-target", "1.0", "--out", str(out),
    ])
    assert rc == EXIT_FAIL
    report = json.loads(out.read_text())
    assert report["verdict"] == "failed"
    assert report["witness"]  # vertex list of the violating animal


def test_check_tempered_inconclusive(tmp_path, capsys):
    gpath = tmp_path / "t.txt"
    main(["generate", "growing-tree", "--depth", "4", "--out", str(gpath)])
    rc = main([
        "check-tempered", "--graph", str(gpath), "--root", "0",
        "--radii", "1 2 3", "--max-items", "2000",
    ])
    capsys.readouterr()
    assert rc == EXIT_INCONCLUSIVE


def test_check_repulsive_exit_codes(tmp_path, capsys):
    gpath = tmp_path / "s.txt"
    # 2x2 grid: adjacent degree-2 pairs at distance 1 < phi(2) = 2
    main(["generate", "grid", "--rows", "2", "--cols", "2", "--out", str(gpath)])
    rc = main(["check-repulsive", "--graph", str(gpath), "--phi", "power:1", "--n-star", "2"])
    capsys.readouterr()
    assert rc == EXIT_FAIL
    cpath = tmp_path / "c.txt"
    main(["generate", "chain", "--n", "6", "--out", str(cpath)])
    rc = main(["check-repulsive", "--graph", str(cpath), "--phi", "power:2", "--n-star", "3"])
    capsys.readouterr()
    assert rc == EXIT_PASS


def test_verify_lemma27_command(chain_file, tmp_path):
    out = tmp_path / "lem.json"
    rc = main([
        "verify-lemma27", "--graph", chain_file, "--z", "4", "--radius", "1",
        "--spins", "ising", "--family", "constant", "--param", "1",
        "--beta", "0.3", "--seed", "0", "--out", str(out),
    ])
    assert rc == EXIT_PASS
    report = json.loads(out.read_text())
    assert report["verdict"] == "holds"
    assert report["lhs"] <= report["rhs"] + 1e-9


def test_verify_expansion_command(chain_file, capsys):
    rc = main([
        "verify-expansion", "--graph", chain_file, "--z", "4", "--radius", "1",
        "--family", "uniform", "--param", "1", "--beta", "0.4", "--seed", "1",
    ])
    report = json.loads(capsys.readouterr().out)
    assert rc == EXIT_PASS
    assert report["max_defect"] <= 1e-10
    assert report["gamma_properties_ok"]


def test_dlr_check_command(chain_file, capsys):
    rc = main([
        "dlr-check", "--graph", chain_file, "--delta", "3 4 5", "--lambda", "4",
        "--family", "exponential", "--param", "8", "--beta", "0.5", "--seed", "2",
        "--all-boundaries",
    ])
    report = json.loads(capsys.readouterr().out)
    assert rc == EXIT_PASS
    assert report["max_defect"] <= 1e-10


def test_decay_command_csv(chain_file, tmp_path):
    out = tmp_path / "decay.csv"
    rc = main([
        "decay", "--graph", chain_file, "--z", "4", "--radii", "1 2",
        "--family", "constant", "--param", "0.05", "--beta", "1.0",
        "--gamma", str(math.log(2.0)), "--samples", "3", "--seed", "0",
        "--out", str(out),
    ])
    assert rc == EXIT_PASS
    lines = out.read_text().strip().splitlines()
    assert lines[0].startswith("N_k,mean,se,bound_a,bound_b")
    assert len(lines) == 3


# ---------------------------------------------------------------------------
# usage errors


def test_bad_family_is_usage_error(capsys):
    rc = main(["kappa", "--family", "weird", "--param", "1", "--beta", "0.1"])
    capsys.readouterr()
    assert rc == EXIT_USAGE


def test_missing_graph_file(capsys):
    rc = main(["check-tempered", "--graph", "/nonexistent.txt", "--root", "0", "--radii", "1"])
    capsys.readouterr()
    assert rc == EXIT_USAGE


def test_malformed_graph_file(tmp_path, capsys):
    bad = tmp_path / "bad.txt"
    bad.write_text("0 0\n")
    rc = main(["check-tempered", "--graph", str(bad), "--root", "0", "--radii", "1"])
    capsys.readouterr()
    assert rc == EXIT_USAGE


def test_bad_spin_model(chain_file, capsys):
    rc = main([
        "verify-lemma27", "--graph", chain_file, "--z", "4", "--spins", "bogus",
        "--family", "constant", "--param", "1", "--beta", "0.1", "--seed", "0",
    ])
    capsys.readouterr()
    assert rc == EXIT_USAGE


def test_help_exits_clean(capsys):
    assert main(["--help"]) == 0
    capsys.readouterr()
