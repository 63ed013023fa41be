import csv
import io
import math

import pytest

from berrut_lab.cli import UsageError, main, parse_range


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def rows(text):
    lines = text.splitlines()
    assert lines[0] == "#schema=1"
    return list(csv.DictReader(io.StringIO("\n".join(lines[1:]))))


@pytest.mark.parametrize("spec,want", [
    ("3:7", [3, 4, 5, 6, 7]),
    ("11:31:10", [11, 21, 31]),
    ("51:3201:*2", [51, 101, 201, 401, 801, 1601, 3201]),
    ("10:1000:*10", [10, 100, 1000]),
    ("5", [5]),
    ("5,8,13", [5, 8, 13]),
])
def test_parse_range(spec, want):
    assert parse_range(spec) == want


@pytest.mark.parametrize("spec", ["7:3", "a:b", "1:5:0", "1:5:*1", "0:3", "1:2:3:4"])
def test_parse_range_rejects(spec):
    with pytest.raises(UsageError):
        parse_range(spec)


def test_interpolate(capsys):
    code, out, _ = run(capsys, "interpolate", "--fn", "exp", "--n", "101", "--scheme", "berrut", "--x", "0.3")
    assert code == 0
    (r,) = rows(out)
    assert list(r) == ["n", "x", "value", "error"]
    assert float(r["value"]) - math.exp(0.3) == pytest.approx(float(r["error"]))


def test_interpolate_constant_and_node(capsys):
    _, out, _ = run(capsys, "interpolate", "--fn", "const1", "--n", "10", "--x", "0.5")
    assert abs(float(rows(out)[0]["error"])) <= 1e-13
    _, out, _ = run(capsys, "interpolate", "--fn", "quadratic", "--n", "100", "--x", "-1", "--scheme", "halved")
    assert float(rows(out)[0]["value"]) == 1.0


def test_interpolate_several_points(capsys):
    _, out, _ = run(capsys, "interpolate", "--fn", "sinpi", "--n", "20", "--x", "0.1,0.2", "--x", "-0.3")
    assert [float(r["x"]) for r in rows(out)] == [0.1, 0.2, -0.3]


@pytest.mark.parametrize("argv", [
    ["interpolate", "--fn", "nope", "--n", "3", "--x", "0"],
    ["interpolate", "--fn", "exp", "--n", "0", "--x", "0"],
    ["interpolate", "--fn", "exp", "--n", "3", "--x", "2"],
    ["interpolate", "--fn", "exp", "--n", "3", "--x", "0", "--scheme", "cubic"],
    ["limits", "--rational", "2/4"],
    ["limits", "--rational", "x"],
    ["limits", "--irrational", "0.4"],
    ["convergence", "--fn", "exp", "--n", "9:3"],
    ["convergence", "--fn", "exp", "--n", "2:8:2", "--parity", "odd"],
    ["convergence", "--fn", "exp", "--n", "3:9", "--parity", "sideways"],
    ["verify", "--only", "nonsense"],
])
def test_usage_errors_exit_2(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2 and "error" in err


def test_argparse_errors_exit_2(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["interpolate", "--n", "3"])
    assert exc.value.code == 2


def test_convergence_exp_ladder(capsys):
    code, out, _ = run(capsys, "convergence", "--fn", "exp", "--parity", "odd", "--n", "51:3201:*2")
    recs = rows(out)
    assert code == 0 and len(recs) == 7
    bc = [float(r["bias_corrected"]) for r in recs]
    assert all(b < a for a, b in zip(bc, bc[1:]))
    assert all(r["bound_satisfied"] == "true" for r in recs)


def test_convergence_xabsx_both(capsys):
    _, out, _ = run(capsys, "convergence", "--fn", "xabsx", "--parity", "both", "--n", "10:2000:37", "--probes", "501")
    recs = rows(out)
    assert {int(r["n"]) % 2 for r in recs} == {0, 1}
    assert all(r["bound_satisfied"] == "true" for r in recs)


def test_convergence_warning_without_tv(capsys):
    code, out, _ = run(capsys, "convergence", "--fn", "abs", "--n", "10:12")
    recs = rows(out)
    assert code == 0 and all(r["warning"] and r["bound_satisfied"] == "" for r in recs)


def test_limits_rational(capsys):
    _, out, _ = run(capsys, "limits", "--rational", "1/1", "--parity", "odd")
    vals = sorted(float(r["value"]) for r in rows(out))
    assert vals == pytest.approx([-math.pi / 2, math.pi / 2], abs=1e-12)


def test_limits_rational_with_function(capsys):
    _, out, _ = run(capsys, "limits", "--rational", "1/3", "--fn", "quadratic")
    recs = rows(out)
    even_den = [float(r["value"]) for r in recs if r["set"] == "denominator" and r["parity"] == "even"]
    assert even_den == pytest.approx([-1.8137993642341479, 1.8137993642341479])
    e = [float(r["value"]) for r in recs if r["set"] == "bias" and r["parity"] == "even"][0]
    even_err = [float(r["value"]) for r in recs if r["set"] == "error" and r["parity"] == "even"]
    assert sorted(even_err) == pytest.approx(sorted(e / v for v in even_den))


def test_limits_irrational(capsys):
    _, out, _ = run(capsys, "limits", "--irrational", "0.41421356", "--fn", "quadratic", "--parity", "odd")
    recs = {r["kind"]: float(r["value"]) for r in rows(out) if r["set"] == "error"}
    o = [float(r["value"]) for r in rows(out) if r["set"] == "bias" and r["parity"] == "odd"][0]
    assert recs["hi"] == pytest.approx(2 * abs(o) / math.pi) and recs["lo"] == -recs["hi"]


def test_text_format(capsys):
    _, out, _ = run(capsys, "interpolate", "--fn", "exp", "--n", "5", "--x", "0.1", "--format", "text")
    assert not out.startswith("#") and "value" in out.splitlines()[0]


def test_output_file_is_deterministic(tmp_path, capsys):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    for path in (a, b):
        assert main(["convergence", "--fn", "runge", "--n", "5:200:13", "--probes", "301", "-o", str(path)]) == 0
    assert a.read_bytes() == b.read_bytes()
    data = a.read_bytes()
    assert data.startswith(b"#schema=1\n") and b"\r" not in data


def test_verify_only_alias(capsys):
    code, out, _ = run(capsys, "verify", "--only", "mainR2", "--m", "256,4096")
    assert code == 0 and "[PASS] main-term" in out


def test_verify_samples_summary(capsys):
    code, out, _ = run(capsys, "verify", "--only", "lemDen", "--samples", "300")
    assert code == 0 and "over 300 samples" in out


def test_verify_bad_m(capsys):
    code, _, err = run(capsys, "verify", "--only", "mainR2", "--m", "100")
    assert code == 2


def test_verify_failure_exit_1(capsys, monkeypatch):
    from berrut_lab import verification

    def broken(opts):
        res = verification.SectionResult("uk", "forced failure")
        res.add("always false", 1.0, 0.0, False)
        return res

    monkeypatch.setitem(verification.SECTIONS, "uk", broken)
    code, out, _ = run(capsys, "verify", "--only", "u_k")
    assert code == 1 and "failing: uk (u_k)" in out
