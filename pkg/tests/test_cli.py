import json

import pytest

from stacky import cli
from stacky.records import FAIL, PASS, REPORT, VerificationRecord


def run_cli(capsys, *argv):
    code = cli.main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_count_passes(capsys):
    code, out, _ = run_cli(capsys, "count", "--a", "1", "--b", "1", "--n", "1", "--p", "2")
    assert code == 0
    assert "PASS" in out and "FAIL" not in out


def test_count_out_of_hypothesis_reports(capsys):
    code, out, _ = run_cli(capsys, "count", "--a", "2", "--b", "3", "--n", "1",
                           "--p", "2", "--format", "json")
    assert code == 0
    records = json.loads(out)
    report = [r for r in records if r["status"] == REPORT]
    assert len(report) == 1
    assert report[0]["check"] == "weighted_count_vs_formula"
    assert not any(r["status"] == FAIL for r in records)


def test_composite_characteristic_is_usage_error(capsys):
    code, _, err = run_cli(capsys, "count", "--a", "1", "--b", "1", "--n", "1", "--p", "4")
    assert code == 2
    assert "prime" in err


def test_zeta_order_cap_is_usage_error(capsys):
    code, _, _ = run_cli(capsys, "zeta", "--a", "1", "--b", "1", "--n", "1",
                         "--p", "2", "--order", "20")
    assert code == 2


def test_bad_weights_are_usage_errors(capsys):
    code, _, _ = run_cli(capsys, "count", "--a", "0", "--b", "1", "--n", "1", "--p", "2")
    assert code == 2


def test_unknown_flag_exits_2(capsys):
    with pytest.raises(SystemExit) as err:
        cli.main(["count", "--frobnicate"])
    assert err.value.code == 2


def test_budget_exceeded_exits_3(capsys):
    code, _, err = run_cli(capsys, "count", "--a", "2", "--b", "3", "--n", "1",
                           "--p", "7", "--budget", "100")
    assert code == 3
    assert "budget" in err


def test_fail_records_drive_exit_1(capsys, monkeypatch):
    monkeypatch.setattr(
        cli, "count_records",
        lambda config: [VerificationRecord(check="forced", status=FAIL)],
    )
    code, _, _ = run_cli(capsys, "count", "--a", "1", "--b", "1", "--n", "1", "--p", "2")
    assert code == 1


def test_zeta_text_output(capsys):
    code, out, _ = run_cli(capsys, "zeta", "--a", "4", "--b", "6", "--n", "1", "--p", "5")
    assert code == 0
    assert "Z(t) = (1 - 1953125*t) / (1 - 48828125*t)" in out
    assert "status: PASS" in out


def test_zeta_json_output(capsys):
    code, out, _ = run_cli(capsys, "zeta", "--a", "1", "--b", "1", "--n", "1",
                           "--p", "2", "--format", "json")
    assert code == 0
    data = json.loads(out)
    assert data["numerator"] == ["1", "-2"]
    assert data["denominator"] == ["1", "-8"]
    assert data["series"][:4] == ["1", "6", "48", "384"]
    assert data["fitted_eigenvalues"] == ["2", "8"]


def test_table_json_shape(capsys):
    code, out, _ = run_cli(capsys, "table", "--a", "4", "--b", "6", "--n", "1",
                           "--format", "json")
    assert code == 0
    data = json.loads(out)
    assert data["compact"]["kind"] == "compact"
    assert data["compact"]["dim"] == 11
    assert {"i": 22, "weights": [11]} in data["compact"]["entries"]
    assert {"i": 19, "weights": [9]} in data["compact"]["entries"]
    assert data["ordinary"]["entries"] == [
        {"i": 0, "weights": [0]},
        {"i": 3, "weights": [2]},
    ]
    assert data["betti_numbers"] == [1, 0, 0, 1]
    assert data["classification"] == "mixed Tate"


def test_json_round_trips_byte_identically(capsys):
    code, out, _ = run_cli(capsys, "count", "--a", "1", "--b", "2", "--n", "1",
                           "--p", "3", "--format", "json")
    assert code == 0
    assert cli.canonical_json(json.loads(out)) == out


def test_records_independent_of_thread_count(capsys):
    outputs = []
    for threads in ("1", "3"):
        code, out, _ = run_cli(capsys, "count", "--a", "1", "--b", "1", "--n", "2",
                               "--p", "5", "--format", "json", "--threads", threads)
        assert code == 0
        records = json.loads(out)
        for record in records:
            record.pop("elapsed_ms")
        outputs.append(records)
    assert outputs[0] == outputs[1]


def test_bench_runs(capsys):
    code, out, _ = run_cli(capsys, "bench", "--a", "1", "--b", "1", "--n", "1",
                           "--p", "3")
    assert code == 0
    assert "bench_scan_pair" in out
    assert "bench_scan_vector" in out


def test_verify_desk_json(capsys):
    code, out, _ = run_cli(capsys, "verify", "--suite", "desk", "--format", "json")
    assert code == 0
    records = json.loads(out)
    statuses = {r["status"] for r in records}
    assert statuses <= {PASS, REPORT}
    assert sum(1 for r in records if r["status"] == REPORT) == 2
