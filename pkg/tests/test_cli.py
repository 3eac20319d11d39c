import csv
import io
import json

import pytest

from blockmoments import __version__
from blockmoments.cli import main


@pytest.fixture
def run(capsys):
    def _run(*argv):
        code = main([str(a) for a in argv])
        out, err = capsys.readouterr()
        return code, out, err

    return _run


@pytest.fixture
def s3(tmp_path):
    path = tmp_path / "s3.grp"
    path.write_text("# symmetric group on 3 letters\n<a,b | a^2, b^3, (ab)^2>\n", encoding="utf-8")
    return path


@pytest.fixture
def free_grp(tmp_path):
    path = tmp_path / "free.grp"
    path.write_text("<x | >\n", encoding="utf-8")
    return path


def test_parse(run, s3, free_grp):
    code, out, _ = run("parse", s3)
    assert code == 0
    assert out == "<a, b | a^2, b^3, abab>\na: order 2\nb: order 3\n"
    code, out, _ = run("parse", free_grp)
    assert code == 0
    assert "x: order infinite" in out


def test_parse_json(run, s3):
    code, out, _ = run("parse", s3, "--format", "json")
    doc = json.loads(out)
    assert doc["command"] == "parse"
    assert doc["payload"]["generators"] == [
        {"generator": "a", "order": "2"},
        {"generator": "b", "order": "3"},
    ]


def test_parse_error_position(run, tmp_path):
    bad = tmp_path / "bad.grp"
    bad.write_text("<a, b |\n  a^2, c>\n")
    code, out, err = run("parse", bad)
    assert code == 2
    assert out == ""
    assert "2:8" in err and "unknown generator 'c'" in err


def test_moment_all(run):
    code, out, _ = run("moment", "--order", 3, "-m", 6, "--method", "all")
    assert code == 0
    assert "closed 22" in out and "exact 22" in out and "agree" in out


def test_moment_dp_free(run):
    code, out, _ = run("moment", "--free", "-m", 10, "--method", "dp")
    assert code == 0
    assert out.strip() == "m=10, exact 252"


def test_moment_disagree(run):
    code, out, _ = run("moment", "--order", 4, "-m", 8, "--format", "json")
    rec = json.loads(out)["payload"]["records"][0]
    assert (rec["closed"], rec["exact"], rec["agree"]) == ("72", "128", False)
    assert rec["case"] == {"label": "at_or_above_order", "k1": "2", "k2": "0"}


def test_moment_from_presentation(run, s3):
    code, out, _ = run("moment", "--presentation", s3, "--generator", "b", "-m", 3, "--format", "json")
    doc = json.loads(out)
    assert doc["inputs"] == {"generator": "b", "order": "3", "m": "3", "method": "all"}
    assert doc["payload"]["records"][0]["exact"] == "2"


def test_moment_formal(run):
    code, out, _ = run("moment", "--order", 2, "-m", 2, "--method", "formal", "--format", "json")
    assert json.loads(out)["payload"] == {"expansion": {"0": "4"}, "trace": "4"}


def test_order_one_warns(run):
    code, out, err = run("moment", "--order", 1, "-m", 4)
    assert code == 0 and "warning" in err


def test_big_integers_are_strings(run):
    code, out, _ = run("moment", "--free", "-m", 200, "--method", "dp", "--format", "json")
    value = json.loads(out)["payload"]["records"][0]["exact"]
    assert isinstance(value, str) and int(value) > 2**53


def test_audit_csv(run):
    code, out, _ = run("audit", "--order", 3, "--max-m", 6, "--format", "csv")
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert out.startswith("m,closed,exact,agree,case\n")
    assert "\r" not in out
    assert len(rows) == 7
    agree = {int(r["m"]): r["agree"] == "true" for r in rows}
    assert agree == {0: True, 1: True, 2: True, 3: True, 4: False, 5: False, 6: True}


def test_audit_json_matches_csv(run):
    _, csv_out, _ = run("audit", "--order", 3, "--max-m", 6, "--format", "csv")
    _, json_out, _ = run("audit", "--order", 3, "--max-m", 6, "--format", "json")
    doc = json.loads(json_out)
    assert doc["tool_version"] == __version__
    assert doc["payload"]["first_disagreement"] == "4"
    rows = list(csv.DictReader(io.StringIO(csv_out)))
    for row, rec in zip(rows, doc["payload"]["records"]):
        assert (row["m"], row["closed"], row["exact"]) == (rec["m"], rec["closed"], rec["exact"])
        assert row["case"] == rec["case"]["label"]


def test_series_single_method_blank_column(run):
    code, out, _ = run("series", "--free", "--max-m", 2, "--method", "dp")
    assert out == "m,closed,exact,agree,case\n0,,1,,\n1,,0,,\n2,,2,,\n"


def test_compare(run):
    code, out, _ = run("compare", "--left-order", 5, "--right-order", 5, "--mode", "theorem")
    assert code == 0 and out.startswith("identical")
    code, out, _ = run("compare", "--left-order", 2, "--right-order", 3, "--max-m", 6)
    assert out.startswith("not identical") and "witness m=2: 4 vs 2" in out
    code, out, _ = run("compare", "--left-free", "--right-order", 3, "--format", "csv")
    assert out == "left,right,mode,max_m,identical,witness\ninf,3,oracle,6,false,3\n"


def test_compare_presentations(run, s3, free_grp):
    code, out, _ = run(
        "compare",
        "--left-presentation", s3, "--left-generator", "a",
        "--right-presentation", free_grp, "--right-generator", "x",
        "--format", "json",
    )
    doc = json.loads(out)
    assert doc["inputs"]["left"] == {"generator": "a", "order": "2"}
    assert doc["inputs"]["right"] == {"generator": "x", "order": "inf"}
    assert doc["payload"]["identically_distributed"] is False


def test_classify(run):
    code, out, _ = run("classify", "-m", 6, "--order", 3)
    assert code == 0
    assert "|W_j|=4" in out and "|W_j'|=2" in out and "|S0|=20" in out
    code, out, _ = run("classify", "-m", 7, "--order", 3, "--format", "csv")
    assert out.splitlines()[1] == "7,3,,0,,,,"


def test_deterministic(run):
    argv = ("audit", "--order", 4, "--max-m", 12, "--format", "json")
    assert run(*argv) == run(*argv)


@pytest.mark.parametrize(
    "argv, code",
    [
        (("moment", "--order", 3, "--free", "-m", 2), 1),
        (("moment", "-m", 2), 1),
        (("moment", "--order", 0, "-m", 2), 1),
        (("moment", "--order", 3, "-m", -1), 1),
        (("moment", "--order", 3), 1),
        (("moment", "--generator", "a", "--order", 3, "-m", 2), 1),
        (("series", "--order", 3, "--max-m", 4, "--method", "magic"), 1),
        (("compare", "--left-order", 3), 1),
        (("compare", "--left-order", 3, "--right-order", 3, "--max-m", 0), 1),
        (("frobnicate",), 1),
        (("parse", "/nonexistent/file.grp"), 1),
        (("moment", "--order", 3, "-m", 25, "--method", "enum"), 3),
        (("series", "--free", "--max-m", 30, "--method", "enum"), 3),
        (("classify", "-m", 30, "--order", 3), 3),
    ],
)
def test_exit_codes(run, argv, code):
    got, out, err = run(*argv)
    assert got == code
    assert out == ""
    assert err


def test_unknown_generator_is_usage_error(run, s3):
    code, _, err = run("moment", "--presentation", s3, "--generator", "z", "-m", 2)
    assert code == 1 and "unknown generator" in err
