import math

import pytest

import gadam


def worked_plan():
    return gadam.plan_local(0.4, 0.4, A=1.0, eps=1.0, beta2=0.1, alpha="upper")


def test_worked_plan_constants():
    p = worked_plan()
    s11 = math.sqrt(11.0)
    assert abs(p.L0 - (1 + 2 * s11) / 8) < 1e-12
    assert abs(p.L - (9 + 2 * s11) / 16) < 1e-12
    assert "L0 = " in str(p)


def test_compute_d_closed_form():
    delta, mu, eps = 0.4, 0.4, 1.0
    alpha = delta * math.sqrt(eps) / (2 * mu * mu) * (1 + delta / 4)
    beta1 = 1 - delta * math.sqrt(eps) / (2 * alpha * mu * mu)
    assert abs(gadam.compute_D(delta, mu, eps, alpha, beta1) - math.sqrt(11) / 4) < 1e-12


def test_infeasible_plan_raises():
    with pytest.raises(gadam.InfeasibleError, match="delta <= mu"):
        gadam.plan_local(0.5, 0.4)


def test_basin_plan_thetas():
    b = gadam.plan_basin(sigma=1.0, eta=0.1, M=2.0, beta1=0.05, eps=2.0)
    assert abs(b.theta1 - 0.9) < 1e-12
    assert abs(b.theta2 - (math.sqrt(2.0) - 1 / 0.9)) < 1e-12


def test_adam_step_matches_hand_computation():
    eps, b1, b2, alpha = 1.0, 0.5, 0.25, 0.1
    zeta = [2.0, -1.0]
    r = gadam.adam_step([0.0, 0.0], [0.0, 0.0], [1.0, 1.0], zeta, 0, eps, b1, b2, alpha)
    a0 = alpha * math.sqrt(1 - b2) / (1 - b1)
    for i, z in enumerate(zeta):
        m = (1 - b1) * z
        v = (1 - b2) * z * z
        assert r["m"][i] == pytest.approx(m, abs=1e-15)
        assert r["v"][i] == pytest.approx(v, abs=1e-15)
        assert r["w"][i] == pytest.approx(1.0 - a0 * m / math.sqrt(v + eps), abs=1e-15)
        assert r["gamma_w"][i] + r["omega_w"][i] == r["w"][i]


def test_min_norm_point_of_segment():
    point, coeffs = gadam.min_norm_point([[2.0, 0.0], [0.0, 2.0]])
    assert point == pytest.approx([1.0, 1.0], abs=1e-12)
    assert sum(coeffs) == pytest.approx(1.0)


def test_clarke_selection_at_tie():
    f = gadam.sq_linf(2)
    assert f.clarke_selection([1.0, 1.0]) == pytest.approx([1.0, 1.0], abs=1e-12)
    assert f.minimizer() == [0.0, 0.0]


def test_local_run_converges_at_planned_rate():
    p = worked_plan()
    f = gadam.sq_l2_scaled(5)
    w0 = [0.5 * p.r / p.K, 0, 0, 0, 0]
    t = gadam.run_local(f, w0, p)
    assert t.termination == "tolerance_reached"
    assert gadam.fit_rate(t).rate <= p.L + 0.005
    assert t.to_csv().startswith("n,C,zeta_norm,m_norm,v_norm,err_w,triple_err,alpha_n\n")


def test_global_run_on_nonsmooth_objective():
    g = gadam.run_global(gadam.sq_linf(2), [2.0, 2.0])
    assert g.basin.termination == "eta_reached"
    assert g.handoff_ok
    assert g.local is not None
    assert max(abs(x) for x in g.local.final_w) <= 1e-10


def test_negative_control_is_caught():
    p = worked_plan()
    f = gadam.sq_l2_scaled(5)
    assert gadam.check_gamma_contraction(f, p, 2000, 1).passed
    bad = gadam.check_gamma_contraction(f, gadam.negative_control_plan(p), 2000, 1)
    assert not bad.passed
    assert bad.witness is not None


def test_objective_from_config():
    f = gadam.objective_from_config("objective = phi_norm\ndim = 3\nnorm = linf\nprofile = quadratic\n")
    assert f.dim == 3
    assert f.eval([0.0, 0.0, 0.0]) == 0.0
