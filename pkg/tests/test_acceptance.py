"""Acceptance criteria, one test each, at the stated tolerances and runtime budgets."""

import pytest

from faberwalsh import checks

# (runner, runtime budget in seconds or None)
CRITERIA = [
    (checks.chebyshev_identity, 1.0),
    (checks.oracle_triangle, 10.0),
    (checks.explicit_values, None),
    (checks.acf_closed_form, None),
    (checks.koch_liesen_acf, 1.0),
    (checks.faber_relation, None),
    (checks.rate_match, 30.0),
    (checks.bernstein_walsh_suite, None),
    (checks.affine_covariance, None),
    (checks.focus_balance, None),
    (checks.series_maximal_convergence, None),
]


@pytest.mark.parametrize("runner,budget", CRITERIA, ids=[f"{i + 1:02d}_{r.__name__}" for i, (r, _) in enumerate(CRITERIA)])
def test_criterion(runner, budget, capsys):
    res = runner()
    in_time = budget is None or res.seconds < budget
    with capsys.disabled():
        print(f"\n{res.line()}" + ("" if in_time else f" over budget {budget}s"))
        if not res.passed and res.detail:
            print(f"    detail: {res.detail}")
    assert res.passed, res.line()
    assert in_time, f"{res.name} took {res.seconds:.2f}s (budget {budget}s)"
