import json

import pytest

from incidence_ldpc.cli import build_parser, main
from incidence_ldpc.code import HAMMING_7_4, export_alist, import_alist


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_construct_then_analyze(tmp_path, capsys):
    spec = tmp_path / "g.json"
    assert run(capsys, "construct", "--family", "ring", "--base", "3", "--out", str(spec))[0] == 0
    code, out, _ = run(capsys, "analyze", "--graph", str(spec), "--format", "json")
    doc = json.loads(out)
    assert code == 0
    assert doc["num_vertices"] == 324 and doc["num_edges"] == 729 and doc["bidegree"] == [3, 9]


def test_analyze_text_and_sampled(capsys):
    code, out, _ = run(capsys, "analyze", "--family", "field", "--base", "2")
    assert code == 0 and "girth     8" in out
    code, out, _ = run(capsys, "analyze", "--family", "field", "--base", "3", "--girth-roots", "10")
    assert code == 0 and "girth     not computed" in out and "sampled 10 roots" in out
    code, out, _ = run(capsys, "analyze", "--family", "field", "--base", "3", "--girth", "skip",
                       "--format", "json")
    assert json.loads(out)["girth"] is None


def test_export_alist(capsys):
    code, out, _ = run(capsys, "export", "--family", "field", "--base", "3", "--format", "alist")
    assert code == 0
    H = import_alist(out)
    assert H.shape == (81, 243)
    assert set(H.col_weights()) == {3} and set(H.row_weights()) == {9}


def test_export_json(capsys):
    code, out, _ = run(capsys, "export", "--family", "ring", "--base", "5", "--restrict-r", "16",
                       "--format", "json")
    assert code == 0 and json.loads(out)["restriction"] == list(range(16))


def test_rank_and_rate(tmp_path, capsys):
    path = tmp_path / "h.alist"
    path.write_text(export_alist(HAMMING_7_4))
    assert run(capsys, "rank", "--code", str(path))[1] == "3\n"
    code, out, _ = run(capsys, "rate", "--family", "ring", "--base", "5", "--restrict-r", "16",
                       "--format", "json")
    doc = json.loads(out)
    assert doc["N"] == 2000 and doc["design_rate"] == "11/16"


def test_simulate_deterministic(tmp_path, capsys):
    path = tmp_path / "hamming74.alist"
    path.write_text(export_alist(HAMMING_7_4))
    argv = ["simulate", "--code", str(path), "--ebn0", "8:1:8", "--max-frames", "1000", "--seed", "7"]
    a = run(capsys, *argv)
    b = run(capsys, *argv, "--threads", "3")
    assert a[0] == b[0] == 0 and a[1] == b[1]
    assert len(a[1].splitlines()) == 2
    out = tmp_path / "ber.csv"
    assert run(capsys, *argv, "--out", str(out))[0] == 0
    assert out.read_text() == a[1]


@pytest.mark.parametrize("argv", [
    ["construct", "--family", "field", "--base", "6"],
    ["construct", "--family", "ring", "--base", "1"],
    ["construct", "--family", "ring"],
    ["construct", "--family", "ring", "--base", "3", "--restrict-x", "0,0"],
    ["construct", "--family", "ring", "--base", "3", "--restrict-r", "10"],
    ["simulate", "--family", "ring", "--base", "2", "--ebn0", "1:0:2"],
    ["simulate", "--family", "ring", "--base", "2", "--max-frames", "0"],
])
def test_usage_errors(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 1 and "error" in err


def test_invalid_base_names_flag(capsys):
    _, _, err = run(capsys, "construct", "--family", "field", "--base", "6")
    assert "--base 6" in err and "--family field" in err


def test_unknown_flag_exit_1(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["construct", "--bogus"])
    assert exc.value.code == 1


def test_io_error_exit_2(tmp_path, capsys):
    code, _, _ = run(capsys, "rank", "--code", str(tmp_path / "missing.alist"))
    assert code == 2
    bad_dir = tmp_path / "nope" / "out.json"
    code, _, _ = run(capsys, "construct", "--family", "ring", "--base", "2", "--out", str(bad_dir))
    assert code == 2 and not bad_dir.exists()


def test_malformed_alist_exit_2(tmp_path, capsys):
    path = tmp_path / "bad.alist"
    path.write_text("3 2\n2 2\n1 2 1\n2 2\n1 0\n1 2\n2 0\n1 2\n2\n")
    assert run(capsys, "rank", "--code", str(path))[0] == 2


def test_help_lists_flags_and_defaults(capsys):
    parser = build_parser()
    sub = parser._subparsers._group_actions[0].choices
    for name, p in sub.items():
        text = p.format_help()
        assert "--out" in text
        if name == "simulate":
            for flag in ["--ebn0", "--decoder", "--max-iter", "--max-frames", "--min-bit-errors",
                         "--seed", "--threads", "--code"]:
                assert flag in text
            assert "default: 50" in text
