import pytest

from finjac.verify import SUITES, RunReport, run_suite


@pytest.mark.parametrize("suite", SUITES)
def test_each_suite_passes(suite):
    report = run_suite(suite, cases=15, seed=3)
    assert report.failures == 0, report.messages
    assert report.cases > 0


def test_all_aggregates_parts():
    report = run_suite("all", cases=5, seed=11)
    assert [p["suite"] for p in report.as_dict()["suites"]] == list(SUITES)
    assert report.cases == sum(p.cases for p in report.parts)
    assert report.failures == 0


def test_deterministic_per_seed():
    a = run_suite("jtable", cases=10, seed=5).as_dict()
    b = run_suite("jtable", cases=10, seed=5).as_dict()
    assert a == b
    assert "wall_time_ms" not in a


def test_bad_arguments():
    with pytest.raises(ValueError):
        run_suite("bogus")
    with pytest.raises(ValueError):
        run_suite("jtable", cases=-1)


def test_report_records_failures():
    r = RunReport("x")
    r.record(True, 1e-3)
    r.record(False, 2e-3, "broken")
    assert (r.cases, r.failures, r.max_error, r.messages) == (2, 1, 2e-3, ["broken"])
