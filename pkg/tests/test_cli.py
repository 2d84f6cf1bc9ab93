import json
import subprocess
import sys
from pathlib import Path as FilePath

FIXTURES = FilePath(__file__).parent / "fixtures"


def run_cli(*args, expect=0):
    proc = subprocess.run(
        [sys.executable, "-m", "valleydyck", *args],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == expect, proc.stderr + proc.stdout
    return proc


def test_series_pretty_matches_example():
    proc = run_cli("series", "--spec", "geom_3x", "--order", "5")
    assert proc.stdout.splitlines() == ["0: 1", "1: 0", "2: 1", "3: 4", "4: 13", "5: 40"]


def test_series_spec_file_round_trip(tmp_path):
    dump = tmp_path / "spec.json"
    first = run_cli(
        "series", "--spec", "motzkin_ab", "--order", "5", "--dump-spec", str(dump)
    )
    again = run_cli("series", "--spec", f"@{dump}", "--order", "5")
    assert first.stdout == again.stdout
    data = json.loads(dump.read_text())
    assert set(data) == {"alpha", "beta", "gamma"}


def test_series_json_round_trips_through_library():
    from valleydyck.series import TruncatedSeries

    proc = run_cli("series", "--spec", "narayana_t", "--order", "4", "--format", "json")
    series = TruncatedSeries.from_json(json.loads(proc.stdout))
    assert series.order == 4


def test_series_csv_requires_bound_params():
    proc = run_cli(
        "series",
        "--spec",
        "motzkin_ab",
        "--order",
        "4",
        "--format",
        "csv",
        "--param",
        "a=1",
        "--param",
        "b=1",
    )
    rows = proc.stdout.splitlines()
    assert rows[0] == "n,value"
    assert rows[1:] == ["0,1", "1,0", "2,1", "3,2", "4,5"]
    run_cli("series", "--spec", "motzkin_ab", "--format", "csv", expect=2)


def test_count_command():
    proc = run_cli("count", "--spec", "geom_3x", "--n", "4")
    assert proc.stdout.strip() == "13"
    proc = run_cli(
        "count",
        "--spec",
        "delannoy_tuple",
        "--n",
        "4",
        "--param", "a=4", "--param", "b=3", "--param", "c=7", "--param", "d=2",
    )
    assert proc.stdout.strip() == "245"


def test_enumerate_json_reingested_by_render(tmp_path):
    proc = run_cli("enumerate", "--family", "dyck", "--n", "2", "--format", "json")
    paths = json.loads(proc.stdout)
    assert {"family": "dyck", "steps": "UUDD"} in paths
    target = tmp_path / "path.json"
    target.write_text(json.dumps(paths[0]))
    rendered = run_cli("render", "--path", f"@{target}")
    direct = run_cli("render", "--path", paths[0]["steps"])
    assert rendered.stdout == direct.stdout


def test_render_matches_golden_fixtures():
    for name, steps in [
        ("schroder_source", "UUUDDDUUDUDUDD"),
        ("intro_example", "UUUUUUDDDUDUDDDDUUUDUDDDUUDD"),
    ]:
        proc = run_cli("render", "--path", steps)
        golden = (FIXTURES / f"{name}.txt").read_text()
        assert proc.stdout == golden


def test_oracle_command():
    proc = run_cli("oracle", "--name", "narayana", "--n", "5", "--param", "t=sym")
    assert proc.stdout.strip() == "t^5 + 10*t^4 + 20*t^3 + 10*t^2 + t"
    proc = run_cli("oracle", "--name", "delannoy", "--n", "2", "--format", "json")
    data = json.loads(proc.stdout)
    assert data["value"] == [{"coeff": "13", "monomial": {}}]
    run_cli("oracle", "--name", "nonsense", "--n", "1", expect=2)


def test_biject_roundtrip_exit_codes():
    for map_id in ("phi", "theta", "sigma", "rho", "psi", "tau"):
        run_cli("biject", "--map", map_id, "--n", "4", "--roundtrip")


def test_biject_apply_both_directions(tmp_path):
    source = FIXTURES / "exchange_source.json"
    proc = run_cli("biject", "--map", "tau", "--apply", f"@{source}")
    image = json.loads(proc.stdout)
    assert image["side"] == "dst_2174"
    assert image["parts"][0]["k0"] == 6
    assert image["parts"][0]["blocks"] == [4, 1, 2, 1]
    back_file = tmp_path / "image.json"
    back_file.write_text(proc.stdout)
    back = run_cli("biject", "--map", "tau", "--apply", f"@{back_file}")
    assert json.loads(back.stdout) == json.loads(source.read_text())


def test_biject_apply_phi(tmp_path):
    obj = {
        "map": "phi",
        "parts": [
            {"kind": "pyramid", "height": 5, "sub": "FFF"},
            {"kind": "block", "ascent": 3, "heights": [1, 1, 1, 1], "sub": "FF"},
            {"kind": "pyramid", "height": 2, "sub": ""},
        ],
    }
    source = tmp_path / "obj.json"
    source.write_text(json.dumps(obj))
    proc = run_cli("biject", "--map", "phi", "--apply", f"@{source}")
    image = json.loads(proc.stdout)
    assert image == {"family": "motzkin", "steps": "UFFFDUFFDFFFUD"}
    path_file = tmp_path / "img.json"
    path_file.write_text(proc.stdout)
    back = run_cli(
        "biject", "--map", "phi", "--apply", f"@{path_file}", "--direction", "inverse"
    )
    assert json.loads(back.stdout) == obj


def test_verify_all_passes_and_jobs_invariance():
    base = run_cli("verify", "--suite", "all", "--max-n", "6")
    jobs = run_cli("verify", "--suite", "all", "--max-n", "6", "--jobs", "4")
    assert base.stdout == jobs.stdout
    assert "result: PASS" in base.stdout
    json_base = run_cli("verify", "--suite", "all", "--max-n", "6", "--format", "json")
    json_jobs = run_cli(
        "verify", "--suite", "all", "--max-n", "6", "--jobs", "3", "--format", "json"
    )
    assert json_base.stdout == json_jobs.stdout
    assert json.loads(json_base.stdout)["passed"] is True


def test_enumerate_ascii_and_csv_formats():
    proc = run_cli("enumerate", "--family", "dyck", "--n", "2", "--format", "ascii")
    assert "/\\" in proc.stdout
    proc = run_cli("enumerate", "--family", "dyck", "--n", "2", "--format", "csv")
    assert proc.stdout.splitlines() == ["family,steps", "dyck,UUDD", "dyck,UDUD"]


def test_seed_fixtures_regenerates_goldens(tmp_path):
    run_cli("--seed-fixtures", str(tmp_path))
    for name in ("intro_example", "schroder_source", "exchange_source"):
        fresh = (tmp_path / f"{name}.txt").read_text()
        assert fresh == (FIXTURES / f"{name}.txt").read_text()
    assert json.loads((tmp_path / "exchange_source.json").read_text()) == json.loads(
        (FIXTURES / "exchange_source.json").read_text()
    )


def test_usage_errors_exit_two():
    run_cli("enumerate", "--family", "nope", "--n", "1", expect=2)
    run_cli("series", "--spec", "no_such_table", expect=2)
    run_cli(expect=2)
