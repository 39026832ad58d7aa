from orbitkit.verify import run_suite


def test_suite_green_small():
    result = run_suite(seed=5, count=8)
    assert result.ok, f"failing checks: {result.failures}"
    assert len(result.checks) == 19
    assert all(c.instances > 0 for c in result.checks)


def test_suite_deterministic():
    a = run_suite(seed=9, count=5)
    b = run_suite(seed=9, count=5)
    assert [(c.name, c.passed, c.instances, c.worst) for c in a.checks] == [
        (c.name, c.passed, c.instances, c.worst) for c in b.checks
    ]


def test_suite_seed_sensitivity():
    a = run_suite(seed=1, count=5)
    b = run_suite(seed=2, count=5)
    assert [c.worst for c in a.checks] != [c.worst for c in b.checks]
