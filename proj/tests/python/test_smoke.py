"""Smoke tests for the persistlab Python module."""

import math

import pytest

import persistlab as pl

R211 = pl.Rates(lam=2.0, a=1.0, b=1.0)


def test_spectral_reference_point():
    sd = pl.spectral(R211)
    assert sd.disc == pytest.approx(8.0, rel=1e-14)
    assert sd.nu1 == pytest.approx(math.sqrt(2.0), rel=1e-14)
    assert sd.nu2 == pytest.approx(-math.sqrt(2.0), rel=1e-14)
    assert sd.c1 + sd.c2 == pytest.approx(1.0, rel=1e-14)


def test_mean_dynamics_values():
    sd = pl.spectral(R211)
    assert pl.mean_persistent(sd, 0.0) == pytest.approx(1.0)
    assert pl.mean_persistent(sd, 1.0) == pytest.approx(0.80988468459998018, rel=1e-12)
    assert pl.mean_normal(sd, 1.0) == pytest.approx(1.3682988720085907, rel=1e-12)
    lo, hi = pl.envelope_bounds(sd, 0.0)
    assert lo == pytest.approx(sd.c2)
    assert hi == 1.0


def test_critical_thresholds():
    tc = pl.find_tc(R211)
    assert tc.value == pytest.approx(1.2464504802804610, abs=1e-9)
    assert tc.value == pytest.approx(pl.tc_closed_form_balanced(R211), abs=1e-9)

    lb = pl.delta_c_lower_bound(R211)
    assert lb == pytest.approx(0.73614997440773955, rel=1e-10)
    dc = pl.find_delta_c(R211, tol=1e-6)
    assert dc.value >= lb
    assert dc.value == pytest.approx(1.3490302996990987, abs=1e-4)
    assert pl.m_prime(R211, 0.5) > 0
    assert pl.m_prime(R211, 100.0) < 0


def test_killing_schedules():
    det = pl.KillingSchedule.deterministic(1.0)
    assert pl.killing_times(det, 3.5) == [1.0, 2.0, 3.0]
    poi = pl.KillingSchedule.poisson(2.0)
    times = pl.killing_times(poi, 100.0, seed=1)
    assert times == sorted(times)
    assert all(t > 0 for t in times)
    assert times == pl.killing_times(poi, 100.0, seed=1)


def test_simulation_reproducibility():
    est1 = pl.estimate_survival(R211, pl.KillingSchedule.poisson(0.5), reps=500,
                                max_epochs=20, seed=7, population_cap=2000)
    est2 = pl.estimate_survival(R211, pl.KillingSchedule.poisson(0.5), reps=500,
                                max_epochs=20, seed=7, population_cap=2000,
                                threads=4)
    assert est1.survivors == est2.survivors
    assert est1.p_hat == est2.p_hat
    assert 0.0 <= est1.ci_lo <= est1.p_hat <= est1.ci_hi <= 1.0


def test_offspring_mean_tracks_closed_form():
    est = pl.estimate_mean_offspring(R211, t=1.0, reps=20000, seed=3)
    assert abs(est.mean - 0.80988468459998018) <= 4 * est.std_error


def test_epoch_trace_shape():
    trace = pl.run_epochs(R211, pl.KillingSchedule.deterministic(0.6),
                          init_n2=1, max_epochs=50, seed=11)
    if trace.extinct_at is not None:
        assert trace.z[-1] == 0
        assert all(z > 0 for z in trace.z[:-1])
    else:
        assert len(trace.z) == 50 or trace.capped


def test_coupling_check():
    summary = pl.coupling_check(R211, delta=0.3, delta_high=3.0, horizon=10.0,
                                reps=400, seed=5)
    assert summary.violations == 0
    assert summary.p_low >= summary.p_high
    out = pl.coupled_run(R211, 0.3, 3.0, 10.0, seed=5, replicate=0)
    assert out.containment_ok
    if out.alive_high:
        assert out.alive_low


def test_decimate():
    points = [0.5, 1.5, 2.5, 4.0]
    assert pl.decimate(points, 1.0, seed=9) == points
    kept = pl.decimate(points, 0.5, seed=9)
    assert all(p in points for p in kept)


def test_validation_errors():
    with pytest.raises(ValueError):
        pl.spectral(pl.Rates(lam=-1.0, a=1.0, b=1.0))
    with pytest.raises(ValueError):
        pl.find_tc(pl.Rates(lam=2.0, a=0.0, b=1.0))
    with pytest.raises(ValueError):
        pl.KillingSchedule.poisson(0.0)
    with pytest.raises(pl.NumericalError):
        pl.m_prime(R211, 0.5, pl.QuadratureSettings(node_count=16,
                                                    refinement_tolerance=1e-15,
                                                    max_refinements=0))
