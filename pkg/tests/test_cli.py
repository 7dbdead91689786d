import json
import subprocess
import sys

import pytest

from zerosum import Sequence, zero_sum_length_spectrum
from zerosum.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_invariant(capsys):
    code, out, _ = run(capsys, "invariant", "--group", "3^1^3", "--avoid", "1..7")
    assert code == 0 and out.strip() == "7"


def test_invariant_json(capsys):
    code, out, _ = run(capsys, "invariant", "--group", "3^1^2", "--json")
    data = json.loads(out)
    assert code == 0 and data["schema"] == "zerosum/1" and data["value"] == 5 and data["exact"] is True


def test_invariant_budget(capsys):
    code, out, _ = run(capsys, "invariant", "--group", "5^1^3", "--budget-nodes", "500")
    assert code == 3 and out.startswith(">=")


def test_construct_then_count(capsys, tmp_path):
    path = tmp_path / "t6.seq"
    code, out, _ = run(capsys, "construct", "--which", "thm6", "--p", "3", "--n", "1", "--output", str(path))
    assert code == 0 and "{5, 6}" in out
    assert zero_sum_length_spectrum(Sequence.parse(path.read_text())) == {5, 6}
    code, out, _ = run(capsys, "count", "--input", str(path), "--json")
    data = json.loads(out)
    assert data["spectrum"] == [5, 6] and data["counts"]["0"] == "1" and data["length"] == 9


def test_construct_stdout_is_a_sequence_file(capsys):
    code, out, _ = run(capsys, "construct", "--which", "thm2", "--p", "5", "--r", "3")
    S = Sequence.parse(out)
    assert code == 0 and S.length() == 13 and "# certified" in out


def test_construct_missing_param(capsys):
    code, _, err = run(capsys, "construct", "--which", "thm3", "--p", "5")
    assert code == 2 and "--r" in err


def test_construct_domain(capsys):
    code, _, err = run(capsys, "construct", "--which", "thm6", "--p", "2")
    assert code == 2 and "odd" in err


def test_verify_olson(capsys):
    code, out, _ = run(capsys, "verify-congruence", "--statement", "olson", "--group", "3^1^3", "--trials", "1000", "--seed", "7")
    assert code == 0 and "1000/1000" in out


@pytest.mark.parametrize(
    "argv",
    [
        ["--statement", "corollary", "--group", "9,9,9", "--trials", "50"],
        ["--statement", "window", "--group", "3^1^3", "--trials", "30"],
        ["--statement", "lucas", "--max-a", "60"],
        ["--statement", "lemma6"],
        ["--statement", "thm3-rank", "--p", "7"],
    ],
)
def test_verify_other(capsys, argv):
    code, out, _ = run(capsys, "verify-congruence", "--json", *argv)
    data = json.loads(out)
    assert code == 0 and data["failures"] == 0 and data["checked"] > 0


def test_verify_reproducible(capsys):
    argv = ["verify-congruence", "--statement", "window", "--group", "3^1^2", "--trials", "20", "--seed", "3", "--json"]
    assert run(capsys, *argv)[1] == run(capsys, *argv)[1]


def test_verify_non_p_group(capsys):
    code, _, err = run(capsys, "verify-congruence", "--statement", "olson", "--group", "6")
    assert code == 2


def test_find(capsys, tmp_path):
    path = tmp_path / "s.seq"
    path.write_text("group 3^1^3\n1,0,0 x3\n0,1,0\n")
    code, out, _ = run(capsys, "find", "--target", "length", "3", "--input", str(path))
    assert code == 0 and "# verified" in out
    assert Sequence.parse(out).entries == (((1, 0, 0), 3),)
    code, out, _ = run(capsys, "find", "--target", "in", "1..2", "--input", str(path))
    assert code == 1
    code, out, _ = run(capsys, "find", "--target", "3x", "--input", str(path))
    assert code == 2


def test_find_2x_json(capsys, tmp_path):
    path = tmp_path / "z.seq"
    path.write_text("group 3^2^3\n0,0,0 x55\n")
    code, out, _ = run(capsys, "find", "--target", "2x", "--input", str(path), "--json")
    data = json.loads(out)
    assert code == 0 and data["length"] == 18 and data["info"]["depth"] == 1


def test_search(capsys):
    code, out, _ = run(capsys, "search", "--group", "3^1^3", "--avoid", "1..5", "--json")
    data = json.loads(out)
    assert code == 0 and data["value"] == 9 and data["certificate"]["status"] == "Exhaustive"


def test_search_checkpoint(capsys, tmp_path):
    ck = str(tmp_path / "c.ckpt")
    code, out, _ = run(capsys, "search", "--group", "3^1^2", "--avoid", "{9}", "--budget-nodes", "3000", "--checkpoint", ck)
    assert code == 3
    code, out, _ = run(capsys, "search", "--group", "3^1^2", "--avoid", "{9}", "--checkpoint", ck)
    assert code == 0 and "s_L = 13" in out


@pytest.mark.parametrize(
    "argv,needle",
    [
        (["invariant", "--group", "3^x"], "group"),
        (["invariant", "--group", "3^1^3", "--avoid", "1..2"], "exp(G)"),
        (["invariant", "--group", "3^1^3", "--avoid", "x"], "length set"),
        (["count", "--input", "/nonexistent/file"], "cannot read"),
    ],
)
def test_usage_errors(capsys, argv, needle):
    code, _, err = run(capsys, *argv)
    assert code == 2 and needle in err


def test_parse_error_has_line(capsys, tmp_path):
    path = tmp_path / "bad.seq"
    path.write_text("group 3^1^3\n1,0,0\n1,0,7\n")
    code, _, err = run(capsys, "count", "--input", str(path))
    assert code == 2 and "line 3" in err


def test_unknown_flag():
    with pytest.raises(SystemExit) as exc:
        main(["count", "--bogus"])
    assert exc.value.code == 2


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "zerosum", "invariant", "--group", "3^1^2"], capture_output=True, text=True, check=False
    )
    assert proc.returncode == 0 and proc.stdout.strip() == "5"
