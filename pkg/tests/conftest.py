import sys
from pathlib import Path

import pytest
from hypothesis import settings

sys.path.insert(0, str(Path(__file__).parent))

# Solver-backed rules make individual draws slow enough to trip the default
# per-example deadline; determinism matters here, wall-clock does not.
settings.register_profile("prizealloc", deadline=None)
settings.load_profile("prizealloc")

from prizealloc.axioms import SampleBudget, run_axiom_matrix
from prizealloc.cli import bundled_rules


@pytest.fixture(scope="session")
def default_budget():
    return SampleBudget()


@pytest.fixture(scope="session")
def axiom_matrix(default_budget):
    """The full axiom matrix over the bundled rules; computed once per run."""
    rules = bundled_rules()
    return rules, run_axiom_matrix(rules, default_budget)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(RESULTS):
        passed, title = RESULTS[num]
        status = "PASS" if passed else "FAIL"
        terminalreporter.write_line(f"criterion {num}: {status} — {title}")
