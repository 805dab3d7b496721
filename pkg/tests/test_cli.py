import json
import subprocess
import sys

import pytest

from clusterchar.cli import main

A2 = {
    "p": 5, "vertices": 2,
    "arrows": [{"id": "a", "src": 1, "tgt": 2}],
    "relations": [],
    "modules": {"S1": {"dims": [1, 0]}, "M": {"dims": [1, 1], "maps": {"a": [[1]]}}, "Z": {"dims": [0, 0]}},
}


@pytest.fixture
def a2_file(tmp_path):
    path = tmp_path / "a2.json"
    path.write_text(json.dumps(A2))
    return str(path)


def run(argv, capsys):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_verify_theorem_pentagon(tmp_path, capsys):
    out = tmp_path / "r.json"
    code, _, err = run(["verify", "theorem", "--typeA-rank", "2", "--jobs", "1", "--out", str(out)], capsys)
    assert code == 0
    report = json.loads(out.read_text())
    assert report["schema"] == 1
    assert report["summary"] == {"total": 25, "passed": 25, "failed": 0}
    assert "25/25" in err


def test_report_is_deterministic_and_jobs_independent(tmp_path, capsys):
    texts = []
    for jobs in ("1", "1", "3"):
        out = tmp_path / f"r{len(texts)}.json"
        assert run(["verify", "ind", "--typeA-rank", "3", "--jobs", jobs, "--seed", "7", "--out", str(out)],
                   capsys)[0] == 0
        texts.append(out.read_bytes())
    assert texts[0] == texts[1] == texts[2]


@pytest.mark.parametrize("suite,total", [("prop-a", 1), ("prop-b", 2), ("prop-c", 2), ("lemma-fibers", 8)])
def test_module_level_suites(a2_file, capsys, suite, total):
    code, out, _ = run(["verify", suite, "--algebra", a2_file, "--q", "2,3"], capsys)
    report = json.loads(out)
    assert code == 0
    assert report["summary"]["total"] == total


def test_algebra_suites_over_a_rank(capsys):
    code, out, _ = run(["verify", "prop-a", "--typeA-rank", "2"], capsys)
    assert code == 0 and json.loads(out)["summary"]["failed"] == 0


def test_fpoly_and_char(a2_file, capsys):
    assert run(["fpoly", "--algebra", a2_file, "--module", "S1"], capsys)[1] == "1 + y1\n"
    assert run(["fpoly", "--algebra", a2_file, "--module", "M"], capsys)[1] == "1 + y2 + y1*y2\n"
    assert run(["fpoly", "--algebra", a2_file, "--module", "Z"], capsys)[1] == "1\n"
    assert run(["char", "--algebra", a2_file, "--module", "Z"], capsys)[1] == "1\n"
    code, out, _ = run(["char", "--algebra", a2_file, "--module", "S1"], capsys)
    assert code == 0 and out.strip() == "x1^-1 + x1^-1*x2"
    code, out, _ = run(["char", "--typeA-rank", "3", "--triangulation", "[[1,3],[1,4],[1,5]]", "--arc", "1,5"],
                       capsys)
    assert out.strip() == "x3"


@pytest.mark.parametrize("argv", [
    ["verify", "theorem"],
    ["verify", "theorem", "--algebra", "x.json"],
    ["verify", "prop-a", "--algebra", "/nonexistent.json"],
    ["verify", "theorem", "--typeA-rank", "9"],
    ["char", "--typeA-rank", "2", "--triangulation", "[[1,3],[2,4]]", "--arc", "1,3"],
    ["char", "--typeA-rank", "2", "--triangulation", "not json", "--arc", "1,3"],
    ["char", "--typeA-rank", "2", "--triangulation", "[[1,3],[1,4]]", "--arc", "1,2"],
])
def test_input_errors_exit_2(argv, capsys):
    assert run(argv, capsys)[0] == 2


def test_malformed_files_exit_2(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert run(["fpoly", "--algebra", str(bad), "--module", "M"], capsys)[0] == 2
    wrong = tmp_path / "wrong.json"
    wrong.write_text(json.dumps({**A2, "modules": {"M": {"dims": [1, 1], "maps": {"a": [[1, 2]]}}}}))
    assert run(["fpoly", "--algebra", str(wrong), "--module", "M"], capsys)[0] == 2
    assert run(["fpoly", "--algebra", str(wrong), "--module", "nope"], capsys)[0] == 2


@pytest.mark.parametrize("argv", [["verify", "nosuch"], ["verify", "theorem", "--q", "4"],
                                  ["verify", "theorem", "--jobs", "0"], ["verify", "theorem", "--seed", "-1"]])
def test_argparse_errors_exit_2(argv):
    with pytest.raises(SystemExit) as exc:
        main(argv)
    assert exc.value.code == 2


def test_violations_exit_1(monkeypatch, tmp_path, capsys):
    import clusterchar.cli as cli
    from clusterchar.character import Verdict

    monkeypatch.setattr(cli, "check_prop_b", lambda alg, i, primes: Verdict("prop-b", f"P{i + 1}", False, "a", "b"))
    path = tmp_path / "a2.json"
    path.write_text(json.dumps(A2))
    code, out, err = run(["verify", "prop-b", "--algebra", str(path)], capsys)
    assert code == 1
    assert json.loads(out)["summary"]["failed"] == 2
    assert "FAIL prop-b" in err


def test_module_entry_point(a2_file):
    res = subprocess.run([sys.executable, "-m", "clusterchar", "fpoly", "--algebra", a2_file, "--module", "M"],
                         capture_output=True, text=True)
    assert res.returncode == 0 and res.stdout == "1 + y2 + y1*y2\n"


def test_non_polynomial_count_exits_1(monkeypatch, a2_file, capsys):
    import clusterchar.cli as cli
    from clusterchar.grassmann import NotPolynomialCount

    def boom(*args, **kwargs):
        raise NotPolynomialCount("held-out prime disagrees")

    monkeypatch.setattr(cli, "f_polynomial", boom)
    assert run(["fpoly", "--algebra", a2_file, "--module", "M"], capsys)[0] == 1
    monkeypatch.setattr(cli, "check_prop_a", boom)
    code, out, _ = run(["verify", "prop-a", "--algebra", a2_file], capsys)
    assert code == 1
    assert "NotPolynomialCount" in json.loads(out)["instances"][0]["details"]["error"]
