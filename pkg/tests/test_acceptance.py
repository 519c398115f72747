"""Acceptance gate: the twelve corpus-wide criteria.

The verification runs once per session; each test owns one criterion and
prints its PASS/FAIL line, so `pytest -v tests/test_acceptance.py -s`
doubles as the human-readable report. `spectra verify` prints the same
lines from the command line.
"""

import pytest

from spectra.checks import CRITERIA, run_verification


@pytest.fixture(scope="module")
def report():
    return run_verification()


def test_report_covers_every_criterion(report):
    assert [r.criterion_id for r in report.results] == list(CRITERIA)


@pytest.mark.parametrize("criterion_id", CRITERIA)
def test_criterion(report, criterion_id):
    result = next(r for r in report.results
                  if r.criterion_id == criterion_id)
    print(result.line)
    assert result.ok, result.line
