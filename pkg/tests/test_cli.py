import csv
import io
import json
import math
from importlib import resources
from pathlib import Path

import jsonschema
import pytest

from cauchydisc.cli import main, read_datafile, DataFileError

DATA = Path(__file__).parent / "data"


def schema(name):
    return json.loads(resources.files("cauchydisc").joinpath("schema", name).read_text())


def run(argv, capsys):
    code = main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.fixture
def pm1(tmp_path):
    p = tmp_path / "pm1.txt"
    p.write_text("# two points\n1\n\n-1\n")
    return p


@pytest.fixture
def cauchy_file(tmp_path, capsys):
    p = tmp_path / "c.txt"
    assert run(["simulate", "cauchy", "--n", 1000, "--seed", 7, "--out", p], capsys)[0] == 0
    return p


def test_simulate_is_byte_identical(tmp_path, capsys):
    a, b = tmp_path / "a.txt", tmp_path / "b.txt"
    for p in (a, b):
        assert run(["simulate", "cauchy", "--mu", 0, "--sigma", 1, "--n", 1000, "--seed", 7,
                    "--out", p], capsys)[0] == 0
    assert a.read_bytes() == b.read_bytes()
    assert read_datafile(str(a)).size == 1000


def test_simulate_replace_last(tmp_path, capsys):
    p = tmp_path / "g.txt"
    assert run(["simulate", "gaussian", "--n", 100, "--replace-last", 5, "--out", p], capsys)[0] == 0
    assert p.read_text().splitlines()[-1] == "5"


def test_simulate_errors(tmp_path, capsys):
    assert run(["simulate", "cauchy", "--sigma", -1, "--n", 10], capsys)[0] == 3
    assert run(["simulate", "cauchy", "--n", 10, "--out", tmp_path / "no" / "x.txt"], capsys)[0] == 2


def test_estimate_two_points(pm1, capsys):
    code, out, _ = run(["estimate", "-i", pm1], capsys)
    assert code == 0
    doc = json.loads(out)
    assert doc["p_n"]["re"] == pytest.approx(0, abs=1e-15)
    assert doc["p_n"]["im"] == pytest.approx(1, rel=1e-15)
    assert doc["n"] == 2 and doc["region"]["kind"] == "disc"
    jsonschema.validate(doc, schema("result.schema.json"))


def test_estimate_cauchy_file(cauchy_file, capsys):
    code, out, _ = run(["estimate", "-i", cauchy_file, "--region", "all"], capsys)
    assert code == 0
    doc = json.loads(out)
    jsonschema.validate(doc, schema("result.schema.json"))
    assert [r["kind"] for r in doc["region"]] == ["disc", "square", "intervals"]
    assert 0.10 <= doc["region"][0]["radius"] <= 0.145


@pytest.mark.parametrize("flag", ["paired", "upper"])
def test_estimate_subtract_median(cauchy_file, flag, capsys):
    code, out, _ = run(["estimate", "-i", cauchy_file, "--subtract-median", flag], capsys)
    assert code == 0
    doc = json.loads(out)
    jsonschema.validate(doc, schema("result.schema.json"))
    assert doc["shift"]["kind"] == flag
    # an even sample shifted by an order statistic collapses
    assert doc["shift"]["degenerate"] is (flag == "upper")


def test_estimate_json_is_lossless(cauchy_file, capsys):
    from cauchydisc.estimate import estimate
    doc = json.loads(run(["estimate", "-i", cauchy_file], capsys)[1])
    e = estimate(read_datafile(str(cauchy_file)))
    assert complex(doc["p_n"]["re"], doc["p_n"]["im"]) == e.p_n
    assert doc["v_n"] == e.v_n


def test_estimate_csv_matches_json(cauchy_file, capsys):
    doc = json.loads(run(["estimate", "-i", cauchy_file, "--region", "all"], capsys)[1])
    rows = list(csv.DictReader(io.StringIO(run(["estimate", "-i", cauchy_file, "--region", "all",
                                                "--format", "csv"], capsys)[1])))
    assert len(rows) == 3
    for row, reg in zip(rows, doc["region"]):
        assert row["kind"] == reg["kind"]
        assert float(row["p_re"]) == doc["p_n"]["re"] and float(row["v_n"]) == doc["v_n"]
    assert float(rows[0]["radius"]) == doc["region"][0]["radius"]
    assert float(rows[1]["half_side"]) == doc["region"][1]["half_side"]
    assert float(rows[2]["mu_lo"]) == doc["region"][2]["mu"][0]
    assert float(rows[2]["sigma_hi"]) == doc["region"][2]["sigma"][1]


def test_estimate_svg_golden(capsys):
    argv = ["estimate", "-i", DATA / "small.txt", "--region", "all", "--format", "svg",
            "--truth", 0, 1]
    code, out, _ = run(argv, capsys)
    assert code == 0
    assert out == (DATA / "small.svg").read_text()
    assert 'width="600" height="600"' in out
    assert out == run(argv, capsys)[1]


@pytest.mark.parametrize("text,lineno", [("1\nabc\n", 2), ("1\n2\n0\n", 3), ("1\ninf\n", 2)])
def test_estimate_parse_errors(tmp_path, text, lineno, capsys):
    p = tmp_path / "bad.txt"
    p.write_text(text)
    code, _, err = run(["estimate", "-i", p], capsys)
    assert code == 2
    assert f"bad.txt:{lineno}:" in err
    with pytest.raises(DataFileError):
        read_datafile(str(p))


def test_estimate_domain_errors(pm1, tmp_path, capsys):
    assert run(["estimate", "-i", pm1, "--alpha", 1.5], capsys)[0] == 3
    assert run(["estimate", "-i", pm1, "--region", "square", "--alpha", 1], capsys)[0] == 3
    one = tmp_path / "one.txt"
    one.write_text("3\n")
    assert run(["estimate", "-i", one], capsys)[0] == 3
    assert run(["estimate", "-i", tmp_path / "missing.txt"], capsys)[0] == 2


def test_coverage_command(capsys):
    code, out, _ = run(["coverage", "--n", 30, "--trials", 1000, "--seed", 0], capsys)
    assert code == 0
    doc = json.loads(out)
    jsonschema.validate(doc, schema("coverage.schema.json"))
    assert 0.90 <= doc["coverage"] <= 0.945


def test_coverage_errors(capsys):
    assert run(["coverage", "--trials", 0], capsys)[0] == 3
    assert run(["coverage", "--n", 1, "--trials", 5], capsys)[0] == 3


def test_coverage_thread_env_is_result_invariant(tmp_path, monkeypatch, capsys):
    outs = []
    for t in ("1", "4"):
        monkeypatch.setenv("CAUCHYDISC_THREADS", t)
        p = tmp_path / f"cov{t}.json"
        assert run(["coverage", "--n", 100, "--trials", 400, "--seed", 3, "--output", p], capsys)[0] == 0
        outs.append(p.read_bytes())
    assert outs[0] == outs[1]


def test_moments(capsys):
    code, out, _ = run(["moments", "--mu", 5, "--sigma", 1], capsys)
    assert code == 0
    assert json.loads(out)["log_moments"]["var_log"] == pytest.approx(1.162, abs=1e-3)


def test_moments_verify(capsys):
    code, out, _ = run(["moments", "--mu", 0, "--sigma", 1, "--p", 0.5, "--n", 5, "--verify", 1e-8],
                       capsys)
    assert code == 0
    doc = json.loads(out)
    assert doc["verify"]["ok"] and doc["verify"]["max_rel_err"] <= 1e-7
    assert len(doc["verify"]["checks"]) == 6
    assert doc["expected_pow"]["re"] == pytest.approx(math.sqrt(0.5))


def test_moments_errors(capsys):
    assert run(["moments", "--mu", 0, "--sigma", 1, "--p", 1.0], capsys)[0] == 3
    assert run(["moments", "--mu", 0, "--sigma", 0], capsys)[0] == 3
    assert run(["moments", "--mu", 0, "--sigma", 1, "--verify", 1e-14], capsys)[0] == 3


def test_outlier_command(capsys):
    code, out, _ = run(["outlier"], capsys)
    assert code == 0
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ["sample", "variant", "contaminated", "center", "radius", "lo", "hi"]
    assert len(rows) == 41
    assert {r[1] for r in rows[1:]} == {"t_based", "gm_based"}
    assert run(["outlier", "--samples", 0], capsys)[0] == 3
