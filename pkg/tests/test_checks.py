import dataclasses

from cavitylink.checks import CheckResult, run_all_checks
from cavitylink.oracle import exact_amplitudes


def test_all_checks_pass_on_a_fresh_build():
    results = run_all_checks()
    assert len(results) == 15
    assert all(r.passed for r in results), [r.line() for r in results if not r.passed]
    names = [r.name for r in results]
    assert len(set(names)) == len(names)


def test_check_line_format():
    result = CheckResult("demo", True, 1.5e-9, 1e-8, "context")
    assert result.line() == "PASS demo: measured=1.500e-09 tolerance=1.000e-08 (context)"
    failed = CheckResult("demo", False, 2.0, 1e-8)
    assert failed.line().startswith("FAIL demo:")


def test_injected_sign_error_is_caught():
    # a corrupted closed form must trip the equation-of-motion residual;
    # the sign flip keeps normalization and branch symmetry intact, so
    # those checks alone would miss it
    def corrupted(lam, nu, t):
        amps = exact_amplitudes(lam, nu, t)
        return dataclasses.replace(amps, d3=-amps.d3, d7=-amps.d7)

    by_name = {r.name: r for r in run_all_checks(exact_amplitude_fn=corrupted)}
    assert not by_name["schroedinger-residual"].passed
    assert not by_name["propagator-vs-closed-form"].passed
    assert by_name["closed-form-normalization"].passed
    assert by_name["closed-form-symmetry"].passed


def test_tolerance_override_reports_failures_without_raising():
    results = run_all_checks(tolerance=1e-15)
    assert any(not r.passed for r in results)
    for result in results:
        assert result.tolerance == 1e-15
        assert result.line()
