"""The twelve acceptance criteria, run exactly (all comparisons are equalities of rationals).

Each criterion prints one ``criterion k: pass|FAIL <title>`` line; the lines
are repeated in the terminal summary.
"""

import pytest

from conftest import ACCEPTANCE_LINES
from krich.verify import SUITES, run_criterion, verify_suite

SEED, WINDOW = 0, 8


@pytest.mark.parametrize("number", range(1, 13))
def test_criterion(number):
    res = run_criterion(number, seed=SEED, window=WINDOW)
    line = f"criterion {number}: {'pass' if res.passed else 'FAIL'} {res.title}"
    ACCEPTANCE_LINES[number] = line
    print(line)
    failed = [f"{c.name}: computed {c.computed}, expected {c.expected}" for c in res.checks if not c.passed]
    assert res.checks, "criterion ran no checks"
    assert not failed, "\n".join(failed)


def test_suites_cover_every_criterion():
    assert sorted(SUITES["all"]) == list(range(1, 13))
    covered = sorted({k for name, ks in SUITES.items() if name != "all" for k in ks})
    assert covered == list(range(1, 13))


def test_reports_are_deterministic():
    a = verify_suite("gaps", seed=3, window=WINDOW).to_json()
    b = verify_suite("gaps", seed=3, window=WINDOW).to_json()
    assert a == b
