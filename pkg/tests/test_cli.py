import json

import pytest

from boolsd import catalog
from boolsd.cli import EXIT_NUMERIC, EXIT_OK, EXIT_USAGE, main, parse_source
from boolsd.svg import line_chart


def run(capsys, *argv):
    code = main(list(argv))
    cap = capsys.readouterr()
    return code, cap.out, cap.err


def test_list(capsys):
    code, out, _ = run(capsys, "list")
    assert code == EXIT_OK
    data = json.loads(out)
    assert set(catalog.family_ids()) <= set(data)


def test_eval_semicircle(capsys):
    code, out, _ = run(capsys, "eval", "--dist", "semicircle", "--z", "1j", "--transform", "G")
    assert code == EXIT_OK
    assert "-0.6180339887" in out


def test_output_is_byte_identical(capsys):
    argv = ("check-sd", "--dist", "kesten", "--t", "3")
    first = run(capsys, *argv)[1]
    second = run(capsys, *argv)[1]
    assert first == second and first


@pytest.mark.parametrize("fid", catalog.family_ids())
def test_check_sd_every_family(capsys, fid):
    code, out, _ = run(capsys, "check-sd", "--dist", fid)
    assert code == EXIT_OK
    assert json.loads(out)["verdict"] in ("pass", "fail", "inconclusive")


def test_negative_grid_and_csv(capsys):
    code, out, _ = run(capsys, "k-profile", "--dist", "normal", "--grid", "-1.5:1.5:7", "--format", "csv")
    assert code == EXIT_OK
    assert out.splitlines()[0].startswith("x,k,ell")


def test_family_parameter_flags(capsys):
    code, out, _ = run(capsys, "check-sd", "--dist", "semicircle", "--m", "3")
    assert code == EXIT_OK and json.loads(out)["verdict"] == "fail"
    code, out, _ = run(capsys, "check-sd", "--dist", "mp", "--param", "lambda=1")
    assert code == EXIT_OK and json.loads(out)["verdict"] == "pass"


def test_convolve_diracs(capsys):
    code, out, _ = run(capsys, "convolve", "--a", "dirac:1", "--b", "dirac:2")
    assert code == EXIT_OK
    atoms = json.loads(out)
    assert json.dumps(atoms).count("3") >= 1


def test_decompose_refusal_and_success(capsys):
    code, out, _ = run(capsys, "decompose", "--dist", "mp", "--lambda", "2", "--c", "0.5")
    assert code == EXIT_OK and json.loads(out)["decomposable"] is False
    code, out, _ = run(capsys, "decompose", "--dist", "bernoulli", "--c", "0.5")
    assert code == EXIT_OK and json.loads(out)["decomposable"] is True


def test_bijection(capsys):
    code, out, _ = run(capsys, "bijection", "--dist", "bernoulli", "--z", "0.3+0.9j")
    assert code == EXIT_OK


def test_shift_threshold_normal(capsys):
    code, out, _ = run(capsys, "shift-threshold", "--dist", "normal")
    assert code == EXIT_OK
    assert json.loads(out)["M_plus"] == pytest.approx(3.0865, abs=5e-3)


def test_shift_scan_csv(capsys):
    code, out, _ = run(capsys, "shift-scan", "--dist", "normal", "--m", "0,3.3", "--format", "csv")
    assert code == EXIT_OK
    assert "fail" in out and "pass" in out


def test_normal_threshold(capsys):
    code, out, _ = run(capsys, "normal-threshold")
    assert code == EXIT_OK
    assert json.loads(out)["a0"] == pytest.approx(-2.0297, abs=1e-4)


def test_svg_output_to_directory(tmp_path, capsys):
    code, out, _ = run(capsys, "k-profile", "--dist", "normal", "--format", "svg", "--out", str(tmp_path))
    assert code == EXIT_OK
    files = list(tmp_path.iterdir())
    assert len(files) == 1 and files[0].read_text().startswith("<svg")


@pytest.mark.parametrize("argv", [
    ("check-sd", "--dist", "nope"),
    ("check-sd",),
    ("check-sd", "--dist", "kesten", "--t", "0.5"),
    ("check-sd", "--dist", "normal", "--param", "m"),
    ("eval", "--dist", "normal", "--z", "zz"),
    ("decompose", "--dist", "normal", "--c", "2"),
])
def test_spec_errors_exit_2(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == EXIT_USAGE and err.startswith("error:")


def test_argparse_errors_exit_2(capsys):
    with pytest.raises(SystemExit) as info:
        main(["frobnicate"])
    assert info.value.code == EXIT_USAGE


def test_numerical_diagnostic_exit_3(capsys, monkeypatch):
    from boolsd import cli
    from boolsd.errors import ExtrapolationError

    def broken(args, extra, out):
        raise ExtrapolationError("ladder did not settle", partial=0.5)

    monkeypatch.setitem(cli.HANDLERS, "atoms", broken)
    code, _, err = run(capsys, "atoms", "--dist", "normal")
    assert code == EXIT_NUMERIC and "numerical diagnostic" in err


def test_parse_source_positional_and_named():
    e = parse_source("boolean_gaussian:0.5,a=2")
    assert e.params == {"gamma": 0.5, "a": 2.0}
    assert parse_source("semicircle:1").params["m"] == 1.0


def test_line_chart_deterministic_and_breaks():
    s = [([0, 1, 2, 3], [0, 1, float("nan"), 2], "demo")]
    a, b = line_chart(s, "t"), line_chart(s, "t")
    assert a == b
    assert a.count("<polyline") == 2
    assert line_chart([([-1, 1], [0, 1], "")]).count("stroke-dasharray") == 1
