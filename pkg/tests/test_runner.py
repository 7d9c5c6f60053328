import logging

import pytest
from rich.logging import RichHandler

from audits.runner import expand_jobs, load_config, parse_config, run
from config import CONFIGS_DIR
from errors import ConfigError
from logger import set_level, setup_logger
from models import AuditReport, RunReport
from planners.registry import PLANNERS

QUICK = """
# quick run
suites = support, section
planners = rp_tc, circle_tc
dims = 2
samples = 12
ladder = 0.1, 0.01
pairs_per_rung = 4
seed = 7
"""


def test_parse_config():
    config = parse_config(QUICK)
    assert config.suites == ["support", "section"]
    assert config.planners == ["rp_tc", "circle_tc"]
    assert config.dims == [2]
    assert config.ladder == [0.1, 0.01]
    assert config.seed == 7


def test_overrides_win():
    config = parse_config(QUICK, {"samples": 3, "seed": None})
    assert config.samples == 3
    assert config.seed == 7


@pytest.mark.parametrize(
    "text, line",
    [
        ("samples = 10\nbogus = 1", 2),
        ("samples = -5", 1),
        ("suites = support\n\nladder = 0.01, 0.1", 3),
        ("seed 42", 1),
        ("seed = 1\nseed = 2", 2),
    ],
)
def test_config_errors_carry_line_numbers(text, line):
    with pytest.raises(ConfigError) as excinfo:
        parse_config(text)
    assert excinfo.value.line == line
    assert str(excinfo.value).startswith(f"line {line}:")


def test_unknown_planner_is_a_config_error():
    with pytest.raises(ConfigError):
        parse_config("planners = rp_tc, nope")


def test_missing_config_file(tmp_path):
    with pytest.raises(ConfigError):
        load_config(tmp_path / "missing.conf")


def test_expand_jobs():
    """Bundles expand per planner; circle planners ignore dimensions."""
    config = parse_config("suites = bundle, monad\nplanners = rp_tc, circle_tc\ndims = 2, 3")
    labels = [(job.suite, job.planner, job.d) for job in expand_jobs(config)]
    assert labels.count(("support", "rp_tc", 3)) == 1
    assert labels.count(("support", "circle_tc", None)) == 1
    assert ("monad", None, 2) in labels
    assert len(labels) == 3 * 2 + 3 + 1


def test_run_writes_identical_reports(tmp_path):
    """Equal configs give byte-identical report.json files."""
    first = parse_config(QUICK, {"report": tmp_path / "a" / "report.json"})
    second = parse_config(QUICK, {"report": tmp_path / "b" / "report.json"})
    outcome = run(first)
    run(second)
    assert outcome.exit_code == 0
    assert (tmp_path / "a" / "report.json").read_bytes() == (tmp_path / "b" / "report.json").read_bytes()
    assert (tmp_path / "a" / "timings.json").exists()
    assert "wall" not in (tmp_path / "a" / "report.json").read_text()


def test_run_reports_failures(tmp_path):
    config = parse_config(
        "suites = bundle\nplanners = rp_tc_misdeclared\nsamples = 10",
        {"report": tmp_path / "report.json"},
    )
    outcome = run(config)
    assert outcome.exit_code == 1
    assert outcome.report.failed == ["support:rp_tc_misdeclared:d=2"]


def test_run_exports_samples(tmp_path):
    config = parse_config(
        "suites = support\nplanners = circle_tc\nsamples = 4",
        {"report": tmp_path / "report.json", "samples_csv": tmp_path / "samples.csv"},
    )
    run(config)
    header = (tmp_path / "samples.csv").read_text().splitlines()[0]
    assert header == "planner,sample,atom,weight,t,x0"


def test_controls_fail_as_expected(tmp_path):
    """Each control fails only the audit its entry names; nothing else surprises."""
    config = parse_config(
        "suites = bundle\n"
        "planners = rp_tc_misdeclared, sphere_acat_shifted\n"
        "dims = 2\nsamples = 20\nladder = 0.1, 0.01\npairs_per_rung = 4",
        {"report": tmp_path / "report.json"},
    )
    outcome = run(config)
    assert outcome.exit_code == 1
    failed = {report.label for report in outcome.report.reports if not report.passed}
    assert failed == {"support:rp_tc_misdeclared:d=2", "section:sphere_acat_shifted:d=2"}
    assert all(report.expected_to_fail for report in outcome.report.reports)
    assert outcome.report.surprises == []


def test_surprises_flag_both_directions():
    reports = [
        AuditReport(suite="support", planner="a", seed=1, samples=1, passed=False),
        AuditReport(suite="section", planner="b", seed=1, samples=1, passed=True, expected_to_fail=True),
        AuditReport(suite="section", planner="c", seed=1, samples=1, passed=False, expected_to_fail=True),
    ]
    assert RunReport(seed=1, passed=False, reports=reports).surprises == ["support:a", "section:b"]


def test_log_level_from_run_file(tmp_path):
    config = parse_config(QUICK + "log_level = warning\n", {"report": tmp_path / "report.json"})
    assert config.log_level == "WARNING"
    setup_logger("INFO")
    try:
        run(config)
        root = logging.getLogger()
        assert root.level == logging.WARNING
        rich_handlers = [h for h in root.handlers if isinstance(h, RichHandler)]
        assert rich_handlers
        assert all(handler.level == logging.WARNING for handler in rich_handlers)
    finally:
        set_level("INFO")
    with pytest.raises(ConfigError):
        parse_config("log_level = LOUD")


@pytest.mark.parametrize(
    "name, dims",
    [("acceptance.conf", [1, 2, 3, 8]), ("acceptance_torus.conf", [2, 4])],
)
def test_shipped_acceptance_configs(name, dims):
    config = load_config(CONFIGS_DIR / name)
    assert config.dims == dims
    assert config.samples == 10_000
    assert not any(PLANNERS[planner].control for planner in config.planners)
    jobs = expand_jobs(config)
    for planner in config.planners:
        if PLANNERS[planner].default_d is not None:
            assert {job.d for job in jobs if job.planner == planner} == set(dims)
