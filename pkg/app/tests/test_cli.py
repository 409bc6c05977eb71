import csv
import json
from pathlib import Path

import pytest

from app.cli import EXIT_FAIL, EXIT_PASS, EXIT_USAGE, join_list_options, main
from app.schemas import Certificate, RunConfig
from app.services.certificate_service import CertificateService


def test_verify_writes_certificate(tmp_path):
    out = tmp_path / "cert.json"
    assert main(["verify", "tetrahedron", "--N", "1", "--out", str(out)]) == EXIT_PASS
    payload = json.loads(out.read_text())
    assert payload["passed"] is True
    [check] = payload["checks"]
    assert check["relation"] == "tetrahedron"
    assert check["pass"] is True
    assert check["states_checked"] == 64
    assert check["N"] == 1
    assert Certificate.model_validate(payload).hash_matches()


def test_verify_prints_certificate_without_out(capsys):
    assert main(["verify", "qosc", "--N", "2"]) == EXIT_PASS
    captured = capsys.readouterr()
    payload = json.loads(captured.out)
    assert payload["checks"][0]["states_checked"] == 3
    assert "qosc: PASS" in captured.err


def test_usage_errors():
    assert main(["verify", "hexagon"]) == EXIT_USAGE
    assert main(["verify", "ybe", "--s", "3"]) == EXIT_USAGE
    assert main(["verify", "ybe", "--orders", "3..1"]) == EXIT_USAGE
    assert main(["verify", "symmetry", "--cyclic"]) == EXIT_USAGE
    assert main(["dilog", "check", "--b-re", "-0.5"]) == EXIT_USAGE


def test_failing_regime_exits_one(tmp_path):
    out = tmp_path / "dilog.json"
    code = main(["dilog", "check", "--identity", "unitarity", "--b-re", "0.8", "--b-im", "0.3", "--out", str(out)])
    assert code == EXIT_FAIL
    [check] = json.loads(out.read_text())["checks"]
    assert check["identity"] == "unitarity"
    assert check["status"] == "error"


def test_dilog_check_passes(tmp_path):
    out = tmp_path / "dilog.json"
    code = main(["dilog", "check", "--identity", "difference", "--samples", "-0.3,0.2", "--out", str(out)])
    assert code == EXIT_PASS
    [check] = json.loads(out.read_text())["checks"]
    assert check["samples"] == 2
    assert check["max_residual"] < check["tolerance"]


def test_gen_r3d(tmp_path):
    out = tmp_path / "r3d.csv"
    assert main(["gen", "r3d", "--N", "1", "--out", str(out)]) == EXIT_PASS
    with out.open() as handle:
        rows = list(csv.reader(handle))
    assert rows[0] == ["a", "b", "c", "i", "j", "k", "scalar"]
    assert ["1", "0", "1", "0", "1", "0", "(1)/(1)"] in rows
    assert ["0", "1", "0", "1", "0", "1", "(1 - u^4)/(1)"] in rows


def test_gen_rmatrix_json(tmp_path):
    out = tmp_path / "rmatrix.json"
    assert main(["gen", "rmatrix", "--orders", "1", "--N", "1", "--out", str(out)]) == EXIT_PASS
    payload = json.loads(out.read_text())
    assert payload["orders"] == [0, 1]
    vacuum = {
        row["z_order"]: row["coeff"]
        for row in payload["S"]
        if row["in_state"] == [0, 0] and row["out_state"] == [0, 0]
    }
    assert vacuum == {0: "(1)/(1)", 1: "(1 + u^2)/(1 - u^2)"}
    assert payload["S_hat"]


def test_gen_rmatrix_csv(tmp_path):
    out = tmp_path / "rmatrix.csv"
    assert main(["gen", "rmatrix", "--N", "1", "--orders", "0", "--format", "csv", "--out", str(out)]) == EXIT_PASS
    with out.open() as handle:
        rows = list(csv.reader(handle))
    assert rows[0] == ["matrix", "z_order", "in_state", "out_state", "coeff"]
    assert ["S", "0", "0 0", "0 0", "(1)/(1)"] in rows


def test_same_config_same_hash():
    config = RunConfig(command="verify", target="involution", cutoff=1)
    service = CertificateService(workers=1)
    first, second = service.run(config), service.run(config)
    assert first.content_hash == second.content_hash
    assert first.passed


def test_summary_lists_checks():
    config = RunConfig(command="verify", target="conservation", cutoff=1)
    service = CertificateService(workers=1)
    summary = service.summary(service.run(config))
    assert "conservation: PASS (8 checked)" in summary
    assert "content hash" in summary


def test_list_options_take_negative_values(tmp_path):
    assert join_list_options(["dilog", "check", "--samples", "-0.3,0.2", "--lambda", "-0.1"]) == [
        "dilog", "check", "--samples=-0.3,0.2", "--lambda=-0.1",
    ]
    out = tmp_path / "reflection.json"
    code = main(["dilog", "check", "--identity", "reflection", "--samples", "-0.3,0.2", "--out", str(out)])
    assert code == EXIT_PASS
    [check] = json.loads(out.read_text())["checks"]
    assert check["samples"] == 2


GOLDEN = Path(__file__).parent / "golden"


@pytest.mark.parametrize("s,t", [(1, 1), (1, 2), (2, 1), (2, 2)])
def test_gen_rmatrix_matches_golden(tmp_path, s, t):
    out = tmp_path / "rmatrix.json"
    argv = ["gen", "rmatrix", "--s", str(s), "--t", str(t), "--n", "1", "--orders", "0..2", "--N", "1"]
    assert main(argv + ["--out", str(out)]) == EXIT_PASS
    assert out.read_text(encoding="utf-8") == (GOLDEN / f"rmatrix_s{s}_t{t}.json").read_text(encoding="utf-8")
