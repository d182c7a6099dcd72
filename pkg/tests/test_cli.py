import json
import subprocess
import sys

import pytest

from hurwitzlab.cli import parse_complex_literal, parse_digit_list, run
from hurwitzlab.gaussian import GaussInt, GaussRational


def run_cli(args, capsys):
    code = run(args)
    out = capsys.readouterr().out
    return code, out


def payload_of(out):
    doc = json.loads(out)
    doc.pop("meta", None)
    return doc


# ----------------------------------------------------------------- parsing

@pytest.mark.parametrize("text,re,im", [
    ("2/5", "2/5", "0"),
    ("-1/2", "-1/2", "0"),
    ("1/2+1/3i", "1/2", "1/3"),
    ("-1+2i", "-1", "2"),
    ("3i", "0", "3"),
    ("-i", "0", "-1"),
    ("0", "0", "0"),
    ("2-2i", "2", "-2"),
])
def test_parse_complex(text, re, im):
    from fractions import Fraction
    q = parse_complex_literal(text)
    assert q == GaussRational.from_fractions(Fraction(re), Fraction(im))


@pytest.mark.parametrize("bad", ["", "1+", "i2", "2//3", "1+2j", "x"])
def test_parse_complex_rejects(bad):
    from hurwitzlab.cli import _UsageError
    with pytest.raises(_UsageError):
        parse_complex_literal(bad)


def test_parse_digit_list():
    assert parse_digit_list("3,-2") == [GaussInt(3), GaussInt(-2)]
    assert parse_digit_list("-1+1i,1-2i") == [GaussInt(-1, 1), GaussInt(1, -2)]


# ------------------------------------------------------------- subcommands

def test_expand_example(capsys):
    code, out = run_cli(["expand", "--z", "2/5", "--no-meta"], capsys)
    assert code == 0
    doc = payload_of(out)
    digs = doc["payload"]["digit_string"]
    assert digs["terminated"] is True
    assert [(d["re"], d["im"]) for d in digs["digits"]] == [("3", "0"), ("-2", "0")]


def test_shells_example(capsys):
    code, out = run_cli(["shells", "--region", "F", "--m", "2", "--no-meta"],
                        capsys)
    assert code == 0
    assert payload_of(out)["payload"]["count"] == 14


def test_cylinder_degenerate(capsys):
    # values starting with '-' need the --opt=value spelling
    code, out = run_cli(["cylinder", "--digits=-1+1i,1-2i", "--no-meta"],
                        capsys)
    assert code == 0
    doc = payload_of(out)
    assert doc["payload"]["classification"] == "Degenerate"
    assert doc["payload"]["regular"] is False


def test_usage_error_exit_code(capsys):
    assert run(["expand"]) == 1
    assert run(["expand", "--z", "nonsense"]) == 1
    assert run(["nope"]) == 1


def test_quality_pass(capsys):
    code, out = run_cli(["quality", "--z", "3/7+1/9i", "--no-meta"], capsys)
    assert code == 0
    doc = payload_of(out)
    assert doc["payload"]["all_within_bound"] is True


def test_measure_csvless_json(capsys):
    code, out = run_cli(["measure", "--prefix", "3", "--seed", "11",
                         "--count", "30000", "--bits", "64", "--depth", "8",
                         "--no-meta"], capsys)
    assert code == 0
    doc = payload_of(out)
    assert doc["payload"]["verdict"] == "pass"


def test_levy_csv(capsys):
    code, out = run_cli(["levy", "--seed", "3", "--count", "50", "--bits",
                         "512", "--depth", "100", "--checkpoints", "50,100",
                         "--format", "csv"], capsys)
    assert code == 0
    lines = out.strip().split("\n")
    assert lines[0] == "checkpoint,samples,exhausted,mean,sd"
    assert len(lines) == 3


def test_golden_byte_identical_across_runs_and_workers(capsys):
    args = ["bb", "--u", "power:1", "--seed", "7", "--count", "2000",
            "--depth", "32", "--bits", "64", "--windows", "4:8,8:16,16:32",
            "--no-constants", "--no-meta"]
    outs = []
    for workers in ("1", "2", "1"):
        code, out = run_cli(args + ["--workers", workers], capsys)
        assert code == 0
        outs.append(out)
    assert outs[0] == outs[1] == outs[2]


def test_meta_envelope_excluded_from_goldens(capsys):
    args = ["expand", "--z", "1/2"]
    _, out1 = run_cli(args, capsys)
    _, out2 = run_cli(args, capsys)
    d1, d2 = json.loads(out1), json.loads(out2)
    assert "meta" in d1 and "wall_ms" in d1["meta"]
    d1.pop("meta")
    d2.pop("meta")
    assert d1 == d2


def test_census_svg(capsys, tmp_path):
    out_path = tmp_path / "atlas.svg"
    code = run(["census", "--depth", "1", "--format", "svg", "--out",
                str(out_path)])
    assert code == 0
    svg = out_path.read_text()
    assert svg.startswith("<svg") and svg.rstrip().endswith("</svg>")


def test_console_script_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "hurwitzlab.cli", "eval", "--a0", "0",
         "--digits", "2,2", "--no-meta"],
        capture_output=True, text=True)
    assert proc.returncode == 0
    doc = json.loads(proc.stdout)
    assert doc["payload"]["value"] == {"re": "2", "im": "0", "den": "5"}
