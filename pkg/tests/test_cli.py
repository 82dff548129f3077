"""End-to-end command-line runs: exit codes, files, determinism."""

import json

import pytest

from pconfig.cli import main


@pytest.fixture
def quad_config(tmp_path):
    p = tmp_path / "quad.json"
    p.write_text(json.dumps({"family": "quadratic", "c": 0.2}))
    return p


@pytest.fixture
def std_config(tmp_path):
    p = tmp_path / "std.json"
    p.write_text(json.dumps({"family": "standard"}))
    return p


def run(args):
    return main([str(a) for a in args])


# ---------------------------------------------------------------------------
# validate
# ---------------------------------------------------------------------------


def test_validate_standard_exits_zero(std_config, tmp_path):
    out = tmp_path / "out"
    assert run(["validate", "--config", std_config, "--out", out]) == 0
    report = json.loads((out / "validation.json").read_text())
    assert report["classification"] == "regular"


def test_validate_invalid_family_exits_one(tmp_path):
    cfg = tmp_path / "bad.json"
    cfg.write_text(json.dumps({"family": "quadratic", "c": 0.3}))
    assert run(["validate", "--config", cfg, "--out", tmp_path]) == 1


def test_validate_missing_file_exits_two(tmp_path):
    assert run(["validate", "--config", tmp_path / "nope.json"]) == 2


def test_validate_malformed_json_exits_two(tmp_path):
    cfg = tmp_path / "broken.json"
    cfg.write_text("{not json")
    assert run(["validate", "--config", cfg]) == 2


def test_validate_unknown_family_exits_two(tmp_path):
    cfg = tmp_path / "mystery.json"
    cfg.write_text(json.dumps({"family": "cubic"}))
    assert run(["validate", "--config", cfg]) == 2


# ---------------------------------------------------------------------------
# conjugate
# ---------------------------------------------------------------------------


def test_conjugate_writes_solution_and_log(quad_config, tmp_path):
    out = tmp_path / "out"
    code = run(["conjugate", "--config", quad_config, "--grid", 1025,
                "--out", out])
    assert code == 0
    log = json.loads((out / "convergence.json").read_text())
    assert log["iterations"] <= 45
    assert all(r <= 0.501 for r in log["ratios"])
    assert (out / "h.csv").read_text().startswith("t,value\n")
    assert (out / "h.gp").exists()


def test_conjugate_byte_deterministic(quad_config, tmp_path):
    a, b = tmp_path / "a", tmp_path / "b"
    for out in (a, b):
        assert run(["conjugate", "--config", quad_config, "--grid", 1025,
                    "--out", out]) == 0
    assert (a / "h.csv").read_bytes() == (b / "h.csv").read_bytes()
    assert (a / "convergence.json").read_bytes() == \
        (b / "convergence.json").read_bytes()


def test_conjugate_to_explicit_target(quad_config, tmp_path):
    code = run(["conjugate", "--config", quad_config, "--grid", 1025,
                "--target", "quadratic:-0.2", "--out", tmp_path])
    assert code == 0


def test_conjugate_standard_to_itself_is_identity(std_config, tmp_path):
    from pconfig import funcspace, identity, sup_distance
    assert run(["conjugate", "--config", std_config, "--grid", 1025,
                "--target", "standard", "--out", tmp_path]) == 0
    h = funcspace.from_csv((tmp_path / "h.csv").read_text())
    assert sup_distance(h, identity(nodes=h.nodes)) <= 1e-12


# ---------------------------------------------------------------------------
# solve-fe
# ---------------------------------------------------------------------------


def test_solve_fe_quadratic(quad_config, tmp_path):
    out = tmp_path / "out"
    assert run(["solve-fe", "--config", quad_config, "--grid", 1025,
                "--out", out]) == 0
    cert = json.loads((out / "certificate.json").read_text())
    assert cert["nonlinearity_gap"] >= 0.19
    assert (out / "solution.csv").exists()


def test_solve_fe_standard_uses_default_switch(std_config, tmp_path):
    out = tmp_path / "out"
    assert run(["solve-fe", "--config", std_config, "--grid", 1025,
                "--out", out]) == 0
    cert = json.loads((out / "certificate.json").read_text())
    assert cert["target"] == {"family": "quadratic", "c": 0.2}
    assert cert["nonlinearity_gap"] > 0.0


def test_solve_fe_degenerate_exits_one(std_config, tmp_path):
    from pconfig import DegenerateChoice
    with pytest.warns(DegenerateChoice):
        code = run(["solve-fe", "--config", std_config, "--grid", 1025,
                    "--target", "standard", "--out", tmp_path])
    assert code == 1


@pytest.mark.filterwarnings("ignore::pconfig.errors.DegenerateChoice")
def test_solve_fe_degenerate_override(std_config, tmp_path):
    code = run(["solve-fe", "--config", std_config, "--grid", 1025,
                "--target", "standard", "--allow-degenerate",
                "--out", tmp_path])
    assert code == 0


# ---------------------------------------------------------------------------
# probe
# ---------------------------------------------------------------------------


def test_probe_inline_solution(quad_config, tmp_path):
    out = tmp_path / "out"
    code = run(["probe", "--config", quad_config, "--grid", 4097,
                "--scales", "4:8", "--out", out])
    assert code == 0
    probe = json.loads((out / "probe.json").read_text())
    assert len(probe["quotients"]) == 5
    assert (out / "probe.csv").read_text().startswith("k,step,quotient,ratio")


def test_probe_existing_csv_and_scale_mismatch(tmp_path):
    from pconfig import funcspace
    coarse = funcspace.identity(257)
    csv_path = tmp_path / "h.csv"
    csv_path.write_text(funcspace.to_csv(coarse))
    code = run(["probe", "--h-csv", csv_path, "--scales", "8:13",
                "--out", tmp_path])
    assert code == 2
    code = run(["probe", "--h-csv", csv_path, "--scales", "2:5",
                "--out", tmp_path])
    assert code == 0


# ---------------------------------------------------------------------------
# nonregular
# ---------------------------------------------------------------------------


def test_nonregular_experiment(tmp_path):
    out = tmp_path / "out"
    code = run(["nonregular", "--n", 2, "--k", 3, "--grid", 1025,
                "--out", out])
    assert code == 0
    report = json.loads((out / "experiment.json").read_text())
    assert report["verdict"] == "non-isomorphic"


def test_nonregular_equal_cells_exits_two(tmp_path):
    assert run(["nonregular", "--n", 2, "--k", 2, "--out", tmp_path]) == 2


# ---------------------------------------------------------------------------
# misc
# ---------------------------------------------------------------------------


def test_bad_subcommand_exits_two():
    assert run(["frobnicate"]) == 2


def test_bad_grid_exits_two(std_config, tmp_path):
    assert run(["validate", "--config", std_config, "--grid", 64,
                "--out", tmp_path]) == 2
