import json

import pytest

from uqlab.cli import _int_range, _workers, main


def _run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_relations_default(capsys):
    code, out, _ = _run(capsys, "relations")
    assert code == 0
    assert "affine-relations" in out and "pass" in out


def test_reducible_point_still_passes(capsys):
    # y = 6 = x z1 z2 lies on the first Condition 2 ray.
    code, out, _ = _run(capsys, "irreducible", "--y", "6")
    assert code == 0
    assert "reducible" in out


@pytest.mark.parametrize(
    "argv",
    [
        ["identity", "--l", "0"],
        ["relations", "--p", "4"],
        ["relations", "--p", "15"],
        ["relations", "--z1", "0"],
        ["relations", "--x", "nope"],
        ["frobnicate"],
        ["identity", "--l", "3", "--iz1", "2"],
    ],
)
def test_usage_errors_exit_2(capsys, argv):
    code, _, _ = _run(capsys, *argv)
    assert code == 2


def test_condition1_failure_is_error_exit_1(capsys):
    # z1 = q lies on the unit circle and breaks Condition 1.
    code, out, _ = _run(capsys, "hwv", "--z1", "w")
    assert code == 1
    assert "error" in out


def test_report_to_stdout_is_pure_json(capsys):
    code, out, err = _run(capsys, "decompose", "--p", "3,5", "--report", "-")
    assert code == 0
    doc = json.loads(out)
    assert [r["params"]["p"] for r in doc["results"]] == [3, 5]
    assert "decompose" in err


def test_report_deterministic(tmp_path, capsys):
    paths = [tmp_path / "a.json", tmp_path / "b.json"]
    for path, jobs in zip(paths, ("1", "4")):
        assert main(["basis", "--sweep", "5", "--jobs", jobs, "--report", str(path)]) == 0
    capsys.readouterr()
    docs = []
    for path in paths:
        doc = json.loads(path.read_text())
        for r in doc["results"]:
            r.pop("elapsed_ms")
        doc["config"].pop("jobs", None)
        docs.append(doc)
    assert docs[0] == docs[1]


def test_suite_covers_every_check(tmp_path, capsys):
    path = tmp_path / "suite.json"
    assert main(["suite", "--p", "3", "--mn-max", "3", "--report", str(path)]) == 0
    capsys.readouterr()
    checks = {r["check"] for r in json.loads(path.read_text())["results"]}
    assert checks == {
        "affine-relations",
        "decompose",
        "hwv",
        "coeffs",
        "irreducible",
        "rmatrix",
        "identity",
        "basis-delta",
        "basis-dual",
        "factorial-form",
    }


def test_float_backend(capsys):
    code, out, _ = _run(capsys, "rmatrix", "--backend", "float", "--p", "5")
    assert code == 0 and "pass" in out


def test_int_range():
    assert _int_range("3") == [3]
    assert _int_range("1..4") == [1, 2, 3, 4]
    assert _int_range("3,5") == [3, 5]


def test_thread_cap(monkeypatch):
    monkeypatch.setenv("UQLAB_THREADS", "2")
    assert _workers(8) == 2
    monkeypatch.setenv("UQLAB_THREADS", "bad")
    assert _workers(3) == 3
    monkeypatch.delenv("UQLAB_THREADS")
    assert _workers(0) == 1
