import io
import json

from ccc.chainfile import parse_chain
from ccc.cli import main
from ccc.presets import example5


def run_cli(capsys, *argv) -> tuple[int, str, str]:
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def run_json(capsys, *argv) -> tuple[int, dict]:
    code, out, _ = run_cli(capsys, *argv, "--format", "json")
    return code, json.loads(out)


def test_lattice_example1_refuted(capsys):
    code, report = run_json(capsys, "lattice", "--preset", "example1")
    assert code == 1
    assert report["results"]["is_lattice"] is False
    assert report["results"]["witness"]["s"] == [1, 1]
    assert report["input"]["n"] == 2


def test_gu_example1_certified(capsys):
    code, report = run_json(capsys, "gu", "--preset", "example1")
    assert code == 0
    assert report["results"]["uniform"] is True
    assert {"x": [1, 1], "signs": [-1, -1]} in report["results"]["certificates"]


def test_eds_example3_exit_one(capsys):
    code, report = run_json(capsys, "eds", "--preset", "example3", "--r2max", "4")
    assert code == 1
    w = report["results"]["witness"]
    assert (w["center_a"], w["center_b"], w["d2"]) == ([0], [1], 1)
    assert (w["count_a"], w["count_b"]) == (1, 2)


def test_theorem1_dplus4_all_true(capsys):
    code, report = run_json(capsys, "theorem1", "--preset", "dplus4")
    assert code == 0
    r = report["results"]
    assert r["verdict"] is True and r["consistent"] is True
    assert all(r[k] for k in ("is_lattice", "equals_smallest_lattice", "schur_closed", "equals_construction_d"))


def test_theorem1_example5_all_false(capsys):
    code, report = run_json(capsys, "theorem1", "--preset", "example5")
    assert code == 1
    assert report["results"]["verdict"] is False
    assert report["results"]["consistent"] is True


def test_theorem1_nonlinear_is_input_error(capsys, tmp_path):
    path = tmp_path / "bad.chain"
    path.write_text("n 2\nL 1\ncode 1 explicit\n10\n")
    code, out, err = run_cli(capsys, "theorem1", str(path))
    assert code == 2
    assert "linear" in err


def test_spectrum_tsv(capsys):
    code, out, _ = run_cli(
        capsys, "spectrum", "--preset", "example3", "--center", "0", "--r2max", "9",
        "--format", "tsv",
    )
    assert code == 0
    assert out == "1\t1\n4\t1\n9\t1\n"


def test_tsv_rejected_elsewhere(capsys):
    code, _, err = run_cli(capsys, "info", "--preset", "example1", "--format", "tsv")
    assert code == 2
    assert "tsv" in err


def test_partner_modes(capsys):
    code, report = run_json(
        capsys, "partner", "--preset", "example3", "--mode", "cw-brute",
        "--x", "0", "--y", "3", "--xp", "9",
    )
    assert code == 1 and report["results"]["partner"] is None

    code, report = run_json(
        capsys, "partner", "--preset", "example5", "--mode", "euclid-brute",
        "--x", "1,0,1", "--y", "5,3,6", "--xp", "3,5,6",
    )
    assert code == 0
    assert report["results"]["d2"] == 50
    assert [8, 9, 9] in report["results"]["solutions"]

    code, report = run_json(
        capsys, "partner", "--preset", "example1", "--mode", "lemma1",
        "--x", "0,0", "--y", "1,1", "--xp", "1,1",
    )
    assert code == 0
    assert report["results"]["partner"] == [0, 0]
    assert report["results"]["trace"]["delta"] == [0, 0]


def test_gu_search_verdicts(capsys):
    code, report = run_json(capsys, "gu-search", "--preset", "example1")
    assert code == 0 and report["results"]["verdict"] == "certified"
    code, report = run_json(capsys, "gu-search", "--preset", "example3")
    assert code == 1 and report["results"]["verdict"] == "refuted_by_eds"


def test_nsm_report(capsys):
    code, report = run_json(
        capsys, "nsm", "--preset", "dplus3", "--samples", "2000", "--seed", "42"
    )
    assert code == 0
    assert report["seed"] == 42
    assert report["results"]["samples"] == 2000
    assert report["results"]["covolume"] == "8/1"
    assert report["results"]["value"] > 0


def test_dplus_output_parses(capsys):
    code, out, _ = run_cli(capsys, "dplus", "--n", "5")
    assert code == 0
    chain = parse_chain(out)
    assert chain.n == 5 and chain.codes[0].size == 2 and chain.codes[1].size == 16


def test_presets_listing(capsys):
    code, out, _ = run_cli(capsys, "presets")
    assert code == 0
    for name in ("example1", "example3", "example5", "dplusN"):
        assert name in out


def test_chain_file_and_stdin(capsys, tmp_path, monkeypatch):
    text = "n 1\nL 3\ncode 1 explicit\n0\n1\ncode 2 explicit\n0\n1\ncode 3 explicit\n0\n"
    path = tmp_path / "chain.txt"
    path.write_text(text)
    code, report = run_json(capsys, "info", str(path))
    assert code == 0 and report["results"]["residue_count"] == 4

    monkeypatch.setattr("sys.stdin", io.StringIO(text))
    code, report = run_json(capsys, "info", "-")
    assert code == 0 and report["results"]["L"] == 3


def test_input_errors(capsys, tmp_path):
    code, _, err = run_cli(capsys, "eds", "--preset", "nosuch")
    assert code == 2 and "unknown preset" in err

    code, _, err = run_cli(capsys, "info")
    assert code == 2 and "required" in err

    path = tmp_path / "c.txt"
    path.write_text("n 2\nL 1\ncode 1 explicit\n02\n")
    code, _, err = run_cli(capsys, "info", str(path))
    assert code == 2 and "invalid symbol" in err

    code, _, err = run_cli(capsys, "info", str(path), "--preset", "example1")
    assert code == 2 and "not both" in err


def test_ccc_threads_env(capsys, monkeypatch):
    monkeypatch.setenv("CCC_THREADS", "2")
    code, report = run_json(capsys, "eds", "--preset", "example1")
    assert code == 0 and report["results"]["eds"] is True


def test_digest_is_canonical(capsys, tmp_path):
    generator = "n 3\nL 3\ncode 1 generator\n101\n110\ncode 2 generator\n101\n110\ncode 3 generator\n101\n110\n"
    path = tmp_path / "g.txt"
    path.write_text(generator)
    _, rep_file = run_json(capsys, "info", str(path))
    _, rep_preset = run_json(capsys, "info", "--preset", "example5")
    assert rep_file["input"]["digest"] == rep_preset["input"]["digest"]
    assert parse_chain(generator) == example5()
