import json
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from twistk.cli import main, run
from twistk.config import ConfigError, RunConfig, format_config, parse_config

NON_ASSOCIATIVE = """
command = kgroups
space = custom
k0_orders = [0, 0, 0]
unit_vector = [1, 0, 0]
mult_table = [[[1,0,0],[0,1,0],[0,0,1]], [[0,1,0],[0,0,1],[0,1,0]], [[0,0,1],[0,1,0],[0,0,0]]]
lambda_class = [1, 0, 0]
"""


def test_minimal_config():
    cfg = parse_config("command = kgroups\nspace = S2\nk = 2\n")
    assert (cfg.command, cfg.space, cfg.k) == ("kgroups", "S2", 2)


def test_all_errors_reported():
    with pytest.raises(ConfigError) as err:
        parse_config("command = nope\nk = -1\ncharge_window = 6\nmode_cutoff = 6\nbogus = 1\n")
    msgs = err.value.errors
    assert len(msgs) == 3
    assert any("q_max" in m and "Lambda" in m for m in msgs)
    assert err.value.warnings == ["unknown key 'bogus' ignored"]


def test_non_associative_presentation():
    with pytest.raises(ConfigError) as err:
        parse_config(NON_ASSOCIATIVE)
    assert any("triple (1, 1, 2)" in m for m in err.value.errors)


def test_sectioned_config_is_flattened():
    cfg = parse_config("[run]\ncommand = flow\n[flow]\nflow_samples = 128\n")
    assert cfg.flow_samples == 128


@settings(max_examples=60, deadline=None)
@given(
    st.sampled_from(["kgroups", "spectrum", "character", "all"]),
    st.sampled_from(["S2", "T2"]),
    st.integers(0, 12),
    st.lists(st.fractions(min_value=-2, max_value=2, max_denominator=8), max_size=4),
    st.lists(st.sampled_from([1.0, 10.0, 100.0, 400.0]), unique=True, max_size=3),
    st.integers(0, 10**6),
)
def test_roundtrip(command, space, k, ys, ts, seed):
    cfg = RunConfig(command=command, space=space, k=k, y=tuple(ys), t_schedule=tuple(sorted(ts)), seed=seed)
    assert parse_config(format_config(cfg)) == cfg


def test_roundtrip_custom():
    text = NON_ASSOCIATIVE.replace("[[0,1,0],[0,0,1],[0,1,0]]", "[[0,1,0],[0,0,1],[0,0,0]]") \
        .replace("[[0,0,1],[0,1,0],[0,0,0]]", "[[0,0,1],[0,0,0],[0,0,0]]")
    cfg = parse_config(text)
    assert parse_config(format_config(cfg)) == cfg


def test_kgroups_report():
    report, code = run(parse_config("command = kgroups\nspace = S2\nk = 2\n"))
    assert code == 0
    assert report["results"]["k1"] == {"rank": 1, "torsion": [2]}
    assert report["schema_version"] == 1
    for chk in report["checks"]:
        assert set(chk) == {"name", "status", "tolerance", "measured"}


def test_supercharge_report():
    report, code = run(parse_config("command = supercharge\ny = 1/2\nmode_cutoff = 4\ncharge_window = 2\n"
                                    "fermion_cutoff = 4\nenergy_cutoff = 4\n"))
    assert code == 0
    assert report["results"]["per_y"][0]["kernel_dimension"] == 0


def test_character_report():
    report, code = run(parse_config("command = character\nxi_rank = 2\nxi_degree = 5\nk = 3\n"))
    assert code == 0
    assert report["results"]["pair"] == ["2", "2 mod 3"]


def test_cocycle_report_is_seeded():
    cfg = parse_config("command = cocycle\ncover = S2\nk = 2\nseed = 3\n")
    a, code = run(cfg)
    b, _ = run(cfg)
    assert code == 0 and a["seed"] == 3
    a.pop("elapsed_seconds"), b.pop("elapsed_seconds")
    assert a == b


def test_exit_codes(tmp_path, capsys):
    good = tmp_path / "good.ini"
    good.write_text("space = S2\nk = 4\n")
    out = tmp_path / "report.json"
    assert main(["kgroups", "--config", str(good), "--out", str(out), "--seed", "5"]) == 0
    assert json.loads(out.read_text())["seed"] == 5

    torus = tmp_path / "torus.ini"
    torus.write_text("space = T2\nk = 4\n")
    assert main(["kgroups", "--config", str(torus)]) == 2

    bad = tmp_path / "bad.ini"
    bad.write_text("charge_window = 9\n")
    assert main(["spectrum", "--config", str(bad)]) == 1
    assert main(["flow", "--config", str(tmp_path / "missing.ini")]) == 1


def test_flow_command(capsys):
    assert main(["flow"]) == 0
    report = json.loads(capsys.readouterr().out)
    assert report["results"]["flow"] == 1


def test_theta_csv(tmp_path):
    path = tmp_path / "theta.csv"
    cfg = parse_config(f"command = character\nk = 1\nt_schedule = 100, 400\ncsv = {path}\n")
    report, code = run(cfg)
    assert code == 0
    assert path.read_text().startswith("y,t,monomial,value")
