import json

from hankelab.checks import REGISTRY, CheckDef
from hankelab.cli import main
from hankelab.poly import Poly
from hankelab.report import fail_row, finding_row, ok_row


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_det_symbolic(capsys):
    code, out, _ = run(capsys, "det", "--family", "3,1", "--n", "1", "--x", "symbolic")
    assert code == 0
    assert out.strip() == "5 - 2x"


def test_det_at_point(capsys):
    code, out, _ = run(capsys, "det", "--family", "2,1", "--n", "3", "--x", "2")
    assert code == 0
    assert out.strip() == "-7"


def test_det_n0(capsys):
    code, out, _ = run(capsys, "det", "--family", "3,1", "--n", "0")
    assert code == 0
    assert out.strip() == "1"


def test_det_json_roundtrips_poly(capsys):
    code, out, _ = run(
        capsys, "det", "--family", "3,1", "--n", "2", "--format", "json"
    )
    assert code == 0
    data = json.loads(out)
    assert Poly.from_json(data["value"]) == Poly([74, -60, 12])


def test_det_usage_errors(capsys):
    code, _, err = run(capsys, "det", "--family", "9x", "--n", "1")
    assert code == 2 and "unknown family" in err
    code, _, err = run(capsys, "det", "--family", "3,1", "--n", "0", "--variant", "M")
    assert code == 2


def test_factor_golden_display(capsys):
    code, out, err = run(capsys, "factor", "--family", "3,1", "--n", "10", "--x", "0")
    assert code == 0
    assert out.strip() == "2^2·7^2·37·41^2·43^3·47^2·53 · 41740796329"
    assert "prime" in err


def test_factor_n0(capsys):
    code, out, _ = run(capsys, "factor", "--family", "3,1", "--n", "0")
    assert code == 0
    assert out.strip() == "1"


def test_factor_zero_determinant_is_message_not_failure(capsys):
    # H_1^{(3,1)}(5/2) = 0
    code, out, _ = run(capsys, "factor", "--family", "3,1", "--n", "1", "--x", "5/2")
    assert code == 0
    assert "zero" in out


def test_factor_rational_value(capsys):
    # aex determinants take rational values; both parts get factored
    code, out, _ = run(capsys, "factor", "--family", "aex", "--n", "1", "--x", "3/7")
    assert code == 0
    assert "/" in out


def test_series_commands(capsys):
    code, out, _ = run(capsys, "series", "--t", "--beta", "3", "--order", "3")
    assert code == 0 and out.strip() == "1, 1, 3, 12"
    code, out, _ = run(capsys, "series", "--tau", "--order", "2")
    assert code == 0 and out.strip() == "1, 3/2, 5"
    code, out, _ = run(
        capsys, "series", "--f", "--family", "2,1", "--form", "closed", "--order", "1"
    )
    assert code == 0 and out.strip() == "[1], [3, 1]"


def test_series_usage(capsys):
    code, _, err = run(capsys, "series", "--t", "--order", "2")
    assert code == 2 and "--beta" in err


def test_formula(capsys):
    # golden values frozen from the brute-force (3,2) determinant at x = 0
    code, out, _ = run(capsys, "formula", "--id", "p32", "--n", "1..3")
    assert code == 0
    assert out.splitlines() == ["n=1: 3", "n=2: 26", "n=3: 646"]


def test_verify_pass(capsys):
    code, out, _ = run(capsys, "verify", "--check", "de1", "--n", "1..4")
    assert code == 0
    assert out.count("PASS de1") == 4


def test_verify_unknown_check(capsys):
    code, _, err = run(capsys, "verify", "--check", "bogus", "--n", "1..2")
    assert code == 2


def test_exit_status_contract(capsys):
    # an injected failing check turns the exit status nonzero;
    # findings alone leave it zero
    REGISTRY["selftest"] = CheckDef(
        "selftest", lambda fam, n: [fail_row("selftest", n=n)], default_range=(1, 1)
    )
    REGISTRY["selffinding"] = CheckDef(
        "selffinding",
        lambda fam, n: [finding_row("selffinding", n=n), ok_row("selffinding", n=n)],
        default_range=(1, 1),
    )
    try:
        code, out, _ = run(capsys, "verify", "--check", "selftest")
        assert code == 1 and "FAIL" in out
        code, out, _ = run(capsys, "verify", "--check", "selffinding")
        assert code == 0 and "FINDING" in out
    finally:
        REGISTRY.pop("selftest")
        REGISTRY.pop("selffinding")


def test_verify_json_and_csv(capsys, tmp_path):
    code, out, _ = run(
        capsys, "verify", "--check", "p21at2", "--n", "0..3", "--format", "json"
    )
    assert code == 0
    rows = [json.loads(line) for line in out.strip().splitlines()]
    assert all(r["status"] == "pass" for r in rows)
    out_file = tmp_path / "rows.csv"
    code, _, _ = run(
        capsys,
        "verify", "--check", "p21at2", "--n", "0..3",
        "--format", "csv", "--output", str(out_file),
    )
    assert code == 0
    assert out_file.read_text().startswith("check,family,n,x,status,detail")


def test_cache_and_recheck(capsys, tmp_path):
    cache_path = tmp_path / "dets.jsonl"
    for _ in range(2):
        code, out, _ = run(
            capsys,
            "det", "--family", "3,1", "--n", "4", "--cache", str(cache_path),
        )
        assert code == 0
    assert cache_path.exists()
    lines = cache_path.read_text().strip().splitlines()
    assert len(lines) == 1  # second run was a cache hit
    code, out, _ = run(
        capsys,
        "det", "--family", "3,1", "--n", "4",
        "--cache", str(cache_path), "--recheck",
    )
    assert code == 0


def test_recheck_detects_corruption(capsys, tmp_path):
    cache_path = tmp_path / "dets.jsonl"
    run(capsys, "det", "--family", "3,1", "--n", "3", "--cache", str(cache_path))
    # corrupt the cached value and confirm --recheck trips
    line = json.loads(cache_path.read_text())
    line["value"] = ["999"]
    cache_path.write_text(json.dumps(line) + "\n")
    code, _, err = run(
        capsys,
        "det", "--family", "3,1", "--n", "3",
        "--cache", str(cache_path), "--recheck",
    )
    assert code == 1 and "mismatch" in err


def test_sweep_fast(capsys):
    code, out, _ = run(capsys, "sweep", "--suite", "fast")
    assert code == 0
    assert "FAIL" not in out


def test_parallel_jobs(capsys):
    code, out, _ = run(capsys, "verify", "--check", "p32,p30", "--n", "0..3", "--jobs", "2")
    assert code == 0
    assert out.count("PASS") == 8


def test_report_command(capsys, tmp_path):
    code, out, _ = run(
        capsys, "report", "--suite", "fast", "--output", str(tmp_path / "rep")
    )
    assert code == 0
    assert (tmp_path / "rep" / "report.jsonl").exists()
    assert (tmp_path / "rep" / "report.csv").exists()
    assert "0 fail" in out


def test_checks_listing(capsys):
    code, out, _ = run(capsys, "checks")
    assert code == 0
    assert "de1" in out and "dodgson" in out
