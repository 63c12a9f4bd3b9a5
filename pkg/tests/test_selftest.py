from idemap.selftest import SUITES, run_all


def test_all_suites_pass_at_small_budget():
    results = run_all(seed=5, budget=24, tol_scale=1.0)
    assert len(results) == len(SUITES) == 8
    for r in results:
        assert r.passed, f"{r.name}: {r.detail}"
        assert r.cases > 0


def test_zero_budget_is_vacuous():
    results = run_all(seed=5, budget=0)
    assert all(r.passed and r.cases == 0 for r in results)
    assert all("vacuous" in r.detail for r in results)


def test_impossible_tolerance_fails():
    results = run_all(seed=5, budget=16, tol_scale=1e-12)
    assert any(not r.passed for r in results)


def test_deterministic_given_seed():
    a = run_all(seed=9, budget=16)
    b = run_all(seed=9, budget=16)
    assert [(r.name, r.passed, r.cases, r.detail) for r in a] == \
           [(r.name, r.passed, r.cases, r.detail) for r in b]
