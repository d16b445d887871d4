import json
from pathlib import Path

import pytest

from drinfeld_census import cli
from drinfeld_census.errors import InvariantViolationError


@pytest.fixture(autouse=True)
def clean_env(monkeypatch):
    monkeypatch.delenv("DRINFELD_CENSUS_CAP", raising=False)
    monkeypatch.delenv("DRINFELD_CENSUS_JOBS", raising=False)


def test_census_writes_json_report(capsys):
    """Test that the census command prints a JSON report to stdout."""
    # act
    code = cli.main(["census", "--q", "3", "--n", "1", "--d", "1", "--jobs", "1"])

    # assert
    assert code == cli.EXIT_OK
    data = json.loads(capsys.readouterr().out)
    assert data["parameters"]["q"] == 3
    assert data["totals"]["iso_classes"] == 6
    assert data["statistics"]["C0"] == "1"


def test_census_accepts_p_and_s(capsys):
    """Test that --p/--s is an alternative to --q."""
    # act
    code = cli.main(["census", "--p", "3", "--s", "1", "--n", "2", "--d", "2", "--jobs", "1"])

    # assert
    assert code == cli.EXIT_OK
    assert json.loads(capsys.readouterr().out)["parameters"]["m"] == 1


def test_census_writes_csv_file(tmp_path):
    """Test --format csv with --output."""
    # arrange
    target = tmp_path / "census.csv"

    # act
    code = cli.main(
        ["census", "--q", "3", "--n", "2", "--d", "1", "--jobs", "1"]
        + ["--format", "csv", "--output", str(target)]
    )

    # assert
    assert code == cli.EXIT_OK
    lines = target.read_text(encoding="utf-8").splitlines()
    assert lines[0].startswith("row_type,q,n,d,m")
    assert lines[-1].startswith("summary,3,2,1,2")


def test_even_q_census_marks_skipped_claims(capsys):
    """Test that q = 4 completes with Hurwitz claims skipped."""
    # act
    code = cli.main(["census", "--q", "4", "--n", "2", "--d", "1", "--jobs", "1"])

    # assert
    assert code == cli.EXIT_OK
    data = json.loads(capsys.readouterr().out)
    assert data["class_numbers_checked"] is False
    verdicts = {c["claim_id"]: c for c in data["claims"]}
    assert verdicts["weight-equals-hurwitz"]["verdict"] == "skipped"
    assert verdicts["weight-equals-hurwitz"]["note"] == "skipped (even q)"


def test_hurwitz_prints_summands(capsys):
    """Test H(T^3) = h(T^3) + h(T) = 4 over F_3."""
    # act
    code = cli.main(["hurwitz", "--q", "3", "--disc", "T^3"])

    # assert
    assert code == cli.EXIT_OK
    lines = capsys.readouterr().out.splitlines()
    assert lines == [
        "l = 1  D/l^2 = 0+0*T+0*T^2+1*T^3  h = 3",
        "l = 0+1*T  D/l^2 = 0+1*T  h = 1",
        "H(0+0*T+0*T^2+1*T^3) = 4",
    ]


def test_classno_with_brute_force(capsys):
    """Test that classno prints the formula value and the oracle value."""
    # act
    code = cli.main(["classno", "--q", "3", "--disc", "T^3-T", "--brute-force"])

    # assert
    assert code == cli.EXIT_OK
    lines = capsys.readouterr().out.splitlines()
    assert lines == [
        "h(0+2*T+0*T^2+1*T^3) = 4  [zeta]",
        "h(0+2*T+0*T^2+1*T^3) = 4  [brute-force]",
    ]


@pytest.mark.parametrize(
    "argv",
    [
        ["classno", "--q", "3", "--disc", "T^2"],
        ["hurwitz", "--q", "3", "--disc", "T^^2"],
        ["census", "--q", "3", "--n", "2", "--d", "3"],
        ["census", "--q", "6", "--n", "1", "--d", "1"],
        ["census", "--q", "3", "--n", "9", "--d", "1"],
        ["census", "--n", "1", "--d", "1"],
        ["verify"],
        ["trend", "--d", "1", "--m", "1", "--qs", ","],
    ],
)
def test_usage_errors_exit_with_two(capsys, argv):
    """Test that invalid input is reported on stderr with exit status 2."""
    # act
    code = cli.main(argv)

    # assert
    assert code == cli.EXIT_USAGE
    assert capsys.readouterr().err.startswith("drinfeld-census: error:")


def test_malformed_option_is_an_argparse_error():
    """Test that argparse rejects a malformed --qs list with status 2."""
    # act & assert
    with pytest.raises(SystemExit) as excinfo:
        cli.main(["trend", "--d", "1", "--m", "1", "--qs", "three"])
    assert excinfo.value.code == 2


def test_invariant_violation_exits_with_one(monkeypatch):
    """Test that an internal failure maps to exit status 1."""

    # arrange
    def broken(*args, **kwargs):
        raise InvariantViolationError("deg i1 + deg i2 differs from n")

    monkeypatch.setattr(cli, "run_census", broken)

    # act
    code = cli.main(["census", "--q", "3", "--n", "1", "--d", "1", "--jobs", "1"])

    # assert
    assert code == cli.EXIT_INVARIANT


def test_verify_prints_verdict_table(capsys):
    """Test the consolidated table over a two-run sweep."""
    # act
    code = cli.main(["verify", "--sweep", "3,1,1", "--sweep", "3,2,2", "--jobs", "1"])

    # assert
    assert code == cli.EXIT_OK
    lines = capsys.readouterr().out.splitlines()
    assert lines[0].split()[:4] == ["q", "n", "d", "claim_id"]
    assert len(lines) == 1 + 2 * 22
    assert any("iso-class-total" in line and line.rstrip().endswith("match") for line in lines)


def test_verify_json_format(capsys):
    """Test --format json for the verdict table."""
    # act
    code = cli.main(["verify", "--sweep", "3,1,1", "--format", "json", "--jobs", "1"])

    # assert
    assert code == cli.EXIT_OK
    rows = json.loads(capsys.readouterr().out)
    assert {r["claim_id"] for r in rows} >= {"iso-class-total", "closed-form-c0"}


def test_trend_prints_table(capsys):
    """Test the trend table for (d, m) = (1, 1) over q = 3, 5."""
    # act
    code = cli.main(["trend", "--d", "1", "--m", "1", "--qs", "3,5", "--jobs", "1"])

    # assert
    assert code == cli.EXIT_OK
    lines = capsys.readouterr().out.splitlines()
    assert lines[0].split() == ["q", "C", "C0", "1-C", "1-C0"]
    assert lines[1].split() == ["3", "1", "1", "0", "0"]
    assert lines[2].split() == ["5", "1", "1", "0", "0"]
    assert lines[-1] == "1-C0 strictly decreasing: False"


def test_acceptance_sweep_covers_the_q_n_grid():
    """Test (q, n, d) over q in {3, 5, 7}, n in {1, 2, 3}, d | n and q^n <= 400."""
    # act
    sweep = cli.acceptance_sweep()

    # assert
    assert len(sweep) == 15
    assert (7, 3, 3) in sweep
    assert (3, 2, 2) in sweep
    assert all(n % d == 0 and q**n <= 400 for q, n, d in sweep)
    assert cli.acceptance_sweep(max_order=30) == [
        (3, 1, 1),
        (3, 2, 1),
        (3, 2, 2),
        (3, 3, 1),
        (3, 3, 3),
        (5, 1, 1),
        (5, 2, 1),
        (5, 2, 2),
        (7, 1, 1),
    ]


def test_acceptance_writes_every_artifact(tmp_path):
    """Test the artifact layout for a two-run sweep and one trend."""
    # arrange
    settings = cli.CensusSettings(jobs=1)

    # act
    code = cli.cmd_acceptance(
        str(tmp_path), settings, sweep=[(3, 1, 1), (3, 2, 1)], trends=[(1, 2, (3,))]
    )

    # assert
    assert code == cli.EXIT_OK
    assert sorted(p.name for p in tmp_path.iterdir()) == [
        "census-q3-n1-d1.csv",
        "census-q3-n1-d1.json",
        "census-q3-n2-d1.csv",
        "census-q3-n2-d1.json",
        "trend-d1-m2.json",
        "trend-d1-m2.txt",
        "verdicts.json",
        "verdicts.txt",
    ]
    rows = json.loads((tmp_path / "verdicts.json").read_text(encoding="utf-8"))
    assert len(rows) == 2 * 22
    report = json.loads((tmp_path / "census-q3-n2-d1.json").read_text(encoding="utf-8"))
    assert report["totals"]["iso_classes"] == 24
    trend = json.loads((tmp_path / "trend-d1-m2.json").read_text(encoding="utf-8"))
    assert trend["rows"] == [{"q": 3, "C": "1", "C0": "1", "1-C": "0", "1-C0": "0"}]
    assert trend["one_minus_c0_decreasing"] is False


def test_acceptance_rejects_an_empty_sweep(tmp_path):
    """Test that an empty sweep is a configuration error."""
    # act & assert
    with pytest.raises(cli.ConfigError):
        cli.cmd_acceptance(str(tmp_path), cli.CensusSettings(jobs=1), sweep=[])


@pytest.mark.slow
def test_committed_trend_table_is_reproduced(tmp_path):
    """Test that the (d, m) = (1, 2) trend under reports/ is what the command writes."""
    # arrange
    committed = Path(__file__).parent.parent / "reports"
    settings = cli.CensusSettings(jobs=2, check_twist_invariance=False)

    # act
    code = cli.cmd_acceptance(
        str(tmp_path), settings, sweep=[(3, 2, 1)], trends=[(1, 2, (3, 5, 7, 9))]
    )

    # assert
    assert code == cli.EXIT_OK
    for name in ("trend-d1-m2.txt", "trend-d1-m2.json"):
        expected = (committed / name).read_text(encoding="utf-8")
        assert (tmp_path / name).read_text(encoding="utf-8") == expected, name
