import json

import pytest

from cli.main import EXIT_EMPTY, EXIT_OK, EXIT_USAGE, EXIT_VERIFY, RunConfig, main


def test_run_config_defaults():
    """The canonical setting is the default"""
    cfg = RunConfig()
    assert (cfg.D, cfg.p, cfg.psi) == (39, 43, 0)
    assert cfg.depth == [4, 5, 6]
    assert cfg.report_config() == {"D": 39, "p": 43, "psi": 0, "prec": cfg.prec, "qmax": cfg.qmax}
    assert RunConfig(depth=[6, 4, 4]).depth == [4, 6]


@pytest.mark.parametrize("argv", [
    ["search", "--dmax", "0"],
    ["compute", "--p", "4"],
    ["compute", "--p", "2"],
    ["compute", "--prec", "10"],
    ["verify", "--depth", "1"],
    ["compute", "--D", "36", "--prec", "20"],
    ["compute", "--D", "39", "--psi", "5", "--prec", "20"],
    ["compute", "--D", "39", "--p", "5", "--prec", "20"],
])
def test_usage_errors(argv, capsys):
    """Bad arguments and inadmissible settings exit with status 2"""
    assert main(argv) == EXIT_USAGE
    assert capsys.readouterr().err


def test_yaml_config_is_validated(tmp_path):
    """Values from --config go through the same validation"""
    path = tmp_path / "run.yaml"
    path.write_text("p: 2\nqmax: 100\n")
    assert main(["--config", str(path), "search"]) == EXIT_USAGE
    path.write_text("- not a mapping\n")
    assert main(["--config", str(path), "search"]) == EXIT_USAGE


def test_unknown_command():
    """argparse rejects unknown subcommands"""
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate"])
    assert exc.value.code == 2


def test_search_empty(capsys):
    """No D <= 20 has a class group of order divisible by 4"""
    assert main(["search", "--dmax", "20", "--pmax", "50", "--prec", "20"]) == EXIT_EMPTY
    assert "no admissible settings" in capsys.readouterr().err


def test_search_lists_canonical_setting(capsys):
    """(39, 43) is found for both order-4 characters"""
    assert main(["search", "--dmax", "40", "--pmax", "50", "--prec", "20"]) == EXIT_OK
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "D\tp\tpsi\th\td1\td2\tf"
    assert lines[1:] == ["39\t43\t1\t4\t13\t-3\t2", "39\t43\t3\t4\t13\t-3\t2"]


def test_cache_commands(tmp_path, capsys):
    """stats on an empty cache, verify on a corrupted one"""
    path = tmp_path / "artifacts.jsonl"
    assert main(["--cache", str(path), "cache", "stats"]) == EXIT_OK
    assert json.loads(capsys.readouterr().out) == {}
    path.write_text('{"kind": "class_polynomial", "key": {"D": 4}, "value": [1], "sha256": "0"}\n')
    assert main(["--cache", str(path), "cache", "verify"]) == EXIT_VERIFY
    err = json.loads(capsys.readouterr().err.strip().splitlines()[-1])
    assert err["error"] == "cache_corrupted"


def test_verify_rejects_corrupted_cache(tmp_path, capsys):
    """A cache that fails its checksums turns verify into a witness failure"""
    path = tmp_path / "artifacts.jsonl"
    path.write_text("{broken\n")
    code = main(["--cache", str(path), "verify", "--prec", "20", "--qmax", "50",
                 "--suite", "identities"])
    assert code == EXIT_VERIFY
    err = json.loads(capsys.readouterr().err.strip().splitlines()[-1])
    assert err["error"] == "inconsistent_witnesses"


def test_report_rejects_invalid_document(tmp_path, capsys):
    """report exits 5 on a document that fails its schema"""
    path = tmp_path / "report.json"
    path.write_text(json.dumps({"schema": 1}))
    assert main(["report", str(path)]) == EXIT_VERIFY
    err = json.loads(capsys.readouterr().err.strip().splitlines()[-1])
    assert err["error"] == "verification_failed"
    assert err["message"].startswith("schema:")


@pytest.mark.slow
def test_verify_identities(tmp_path, capsys):
    """The identities suite passes and prints metrics"""
    code = main(["--cache", str(tmp_path / "c.jsonl"), "verify", "--prec", "20", "--qmax", "50",
                 "--suite", "identities"])
    out = capsys.readouterr().out.splitlines()
    assert code == EXIT_OK
    assert out[0] == "PASS\tidentities\tOK"
    assert "cmlinv_computations_total" in out[-1]


@pytest.mark.slow
def test_compute_then_report(tmp_path):
    """compute writes a valid report; report re-checks it and exports CSV"""
    cache = str(tmp_path / "c.jsonl")
    report = tmp_path / "report.json"
    csv_out = tmp_path / "report.csv"
    assert main(["--cache", cache, "--out", str(report), "compute", "--prec", "20",
                 "--qmax", "60"]) == EXIT_OK
    doc = json.loads(report.read_text())
    assert doc["config"] == {"D": 39, "p": 43, "psi": 0, "prec": 20, "qmax": 60}
    assert main(["--out", str(csv_out), "report", str(report), "--format", "csv"]) == EXIT_OK
    assert csv_out.read_text().splitlines()[0] == "label,n,val,prec,unit"


@pytest.mark.slow
def test_output_does_not_depend_on_threads(tmp_path):
    """Reports computed with one and three threads are byte-identical"""
    cache = str(tmp_path / "c.jsonl")
    outs = []
    for threads in ("1", "3"):
        out = tmp_path / f"report-{threads}.json"
        assert main(["--cache", cache, "--out", str(out), "compute", "--prec", "20",
                     "--qmax", "60", "--threads", threads]) == EXIT_OK
        outs.append(out.read_bytes())
    assert outs[0] == outs[1]


def test_report_rejects_unreadable_input(tmp_path, capsys):
    """A missing or non-JSON report file is a usage error, not a traceback"""
    assert main(["report", str(tmp_path / "missing.json")]) == EXIT_USAGE
    assert "cannot read" in capsys.readouterr().err
    path = tmp_path / "report.json"
    path.write_text("not json {")
    assert main(["report", str(path)]) == EXIT_USAGE
    assert "cannot read" in capsys.readouterr().err
