"""Job parsing, report schema, determinism, fiber witnesses, and the CLI."""

from fractions import Fraction
from pathlib import Path

import pytest
from click.testing import CliRunner

from lndkit import JobParseError, Polynomial, Subalgebra, VarContext, parse_polynomial
from lndkit.harness import (
    FiberWitness,
    TriangularProfile,
    check_fiber_witness,
    parse_job,
    random_triangular_lnd,
    run_job,
    validate_report_text,
)
from lndkit.harness.cli import main as cli_main
from lndkit import is_fixed_point_free, is_triangular

MINIMAL = """
job minimal
ring coeff: t
ring main: X, Y
base: full
algebra: full
derivation D: X: 0, Y: 1
task find_slice derivation=D bound=1
"""


def test_parse_minimal_job():
    spec = parse_job(MINIMAL)
    assert spec.name == "minimal"
    assert spec.context == VarContext(("t",), ("X", "Y"))
    assert spec.subalgebra.full_ring
    assert list(spec.derivations) == ["D"]
    assert spec.tasks[0].name == "find_slice"
    assert spec.tasks[0].params == {"derivation": "D", "bound": "1"}


def test_parse_unknown_variable_diagnostic():
    bad = MINIMAL.replace("Y: 1", "Y: Z + 1")
    with pytest.raises(JobParseError) as err:
        parse_job(bad)
    assert "Z" in str(err.value)
    assert err.value.line == 7


def test_parse_dangling_derivation_reference():
    bad = MINIMAL.replace("derivation=D", "derivation=E")
    with pytest.raises(JobParseError) as err:
        parse_job(bad)
    assert "E" in str(err.value)


def test_parse_expect_requires_provenance():
    bad = MINIMAL + '  expect verdict=slice\n'
    with pytest.raises(JobParseError):
        parse_job(bad)


def test_jobspec_roundtrip():
    spec = parse_job(MINIMAL)
    again = parse_job(spec.to_text())
    assert again.to_text() == spec.to_text()
    assert again.context == spec.context
    assert again.derivations == spec.derivations


def test_corpus_files_roundtrip():
    from lndkit.harness import corpus_dir

    for path in sorted(Path(corpus_dir()).glob("*.job")):
        spec = parse_job(path.read_text())
        again = parse_job(spec.to_text())
        assert again.to_text() == spec.to_text(), path.name


def test_run_job_deterministic():
    spec = parse_job(MINIMAL)
    first = run_job(spec).comparable_text()
    second = run_job(spec).comparable_text()
    assert first == second


def test_report_validates_against_schema():
    report = run_job(parse_job(MINIMAL))
    assert validate_report_text(report.to_text()) == []
    assert validate_report_text(report.comparable_text()) == []
    assert report.task_value(1, "slice") == "Y"


def test_schema_rejects_malformed_reports():
    report = run_job(parse_job(MINIMAL)).to_text()
    assert validate_report_text(report.replace("lndkit-report 1", "bogus 1"))
    assert validate_report_text(report.replace("end report", "end"))
    assert validate_report_text(report + "junk line that matches nothing\n")


def test_bound_and_seed_overrides():
    text = MINIMAL.replace(" bound=1", "")
    spec = parse_job(text)
    report = run_job(spec, bound_override=2, seed_override=42)
    assert report.seed == 42
    assert report.tasks[0].verdict == "slice"
    assert ("bound", "2") not in report.tasks[0].params  # override, not a param


def test_task_errors_do_not_abort():
    text = MINIMAL + "task dixmier derivation=D slice=\"X\" arg=\"Y\"\n"
    report = run_job(parse_job(text))
    assert report.tasks[0].ok
    assert not report.tasks[1].ok
    assert "slice" in report.tasks[1].error


def test_random_triangular_deterministic():
    a = random_triangular_lnd(1, TriangularProfile(fpf=True))
    b = random_triangular_lnd(1, TriangularProfile(fpf=True))
    assert a == b


def test_random_triangular_fpf_verified():
    for seed in range(5):
        d = random_triangular_lnd(seed, TriangularProfile(fpf=True))
        assert is_triangular(d) is not None
        assert is_fixed_point_free(d) is not None


def test_random_triangular_nonfpf_proper_ideal():
    for seed in range(5):
        d = random_triangular_lnd(seed, TriangularProfile(fpf=False))
        assert is_triangular(d) is not None
        assert is_fixed_point_free(d) is None


def test_fiber_witness_full_plane():
    ctx = VarContext(("t",), ("X", "Y"))
    S = Subalgebra.full(ctx)
    w = FiberWitness(
        {"t": Fraction(0)},
        (Polynomial.variable(ctx, "X"), Polynomial.variable(ctx, "Y")),
        2,
    )
    assert check_fiber_witness(S, w).passed


def test_fiber_witness_wrong_coordinates():
    ctx = VarContext(("t",), ("X",))
    S = Subalgebra.full(ctx)
    w = FiberWitness({"t": Fraction(0)}, (parse_polynomial("X^2", ctx),), 6)
    check = check_fiber_witness(S, w)
    assert not check.passed
    assert check.direction == "generator-not-reachable"
    assert str(check.element) == "X"  # lives in the specialized fiber context


def test_cli_run_and_exit_codes(tmp_path):
    job = tmp_path / "job.job"
    job.write_text(MINIMAL)
    runner = CliRunner()
    result = runner.invoke(cli_main, ["run", str(job)])
    assert result.exit_code == 0
    assert "verdict slice" in result.output

    bad = tmp_path / "bad.job"
    bad.write_text("job broken\n")
    result = runner.invoke(cli_main, ["run", str(bad)])
    assert result.exit_code == 2


def test_cli_corpus_filter_and_parallel():
    runner = CliRunner()
    result = runner.invoke(cli_main, ["corpus", "--filter", "a2-pair", "--parallel", "2"])
    assert result.exit_code == 0
    assert "status pass" in result.output


def test_cli_corpus_env_override(tmp_path, monkeypatch):
    (tmp_path / "solo.job").write_text(MINIMAL.replace("job minimal", "job solo"))
    monkeypatch.setenv("LNDKIT_CORPUS_DIR", str(tmp_path))
    runner = CliRunner()
    result = runner.invoke(cli_main, ["corpus"])
    assert result.exit_code == 0
    assert "entry solo" in result.output


def test_cli_corpus_missing_directory(monkeypatch):
    monkeypatch.setenv("LNDKIT_CORPUS_DIR", "/nonexistent/corpus")
    runner = CliRunner()
    result = runner.invoke(cli_main, ["corpus"])
    assert result.exit_code == 2


def test_cli_exit_one_on_mismatch(tmp_path, monkeypatch):
    (tmp_path / "wrong.job").write_text(
        MINIMAL.replace("job minimal", "job wrong")
        + '  expect slice="X" type=poly provenance=trivial\n'
    )
    monkeypatch.setenv("LNDKIT_CORPUS_DIR", str(tmp_path))
    runner = CliRunner()
    result = runner.invoke(cli_main, ["corpus"])
    assert result.exit_code == 1
    assert "mismatch" in result.output

    job = tmp_path / "erroring.job"
    job.write_text(MINIMAL + 'task dixmier derivation=D slice="X" arg="Y"\n')
    result = runner.invoke(cli_main, ["run", str(job)])
    assert result.exit_code == 1


def test_cli_random_family():
    runner = CliRunner()
    result = runner.invoke(
        cli_main, ["random", "--family", "triangular-fpf", "--count", "3", "--seed", "1"]
    )
    assert result.exit_code == 0
    assert "verdict pass" in result.output


def test_output_file_roundtrip(tmp_path):
    job = tmp_path / "job.job"
    job.write_text(MINIMAL)
    out = tmp_path / "report.txt"
    runner = CliRunner()
    result = runner.invoke(cli_main, ["run", str(job), "--out", str(out)])
    assert result.exit_code == 0
    assert validate_report_text(out.read_text()) == []
