import numpy                                                        as _np
import pandas                                                       as _pd
import pytest

from phi_heat.parametrix.contraction_budget                         import ContractionBudget
from phi_heat.parametrix.doubled_grid                               import DoubledGrid
from phi_heat.parametrix.error_scaling                              import ErrorScaling
from phi_heat.parametrix.homogeneous_solver                         import HomogeneousSolver
from phi_heat.parametrix.neumann_solver                             import NeumannSolver, ParametrixReport
from phi_heat.parametrix.parametrix_config                          import ParametrixConfig
from phi_heat.parametrix.probe_set                                  import ProbeSet
from phi_heat.parametrix.time_gluer                                 import TimeGluer
from phi_heat.spaces.holder_estimator                               import HolderEstimator
from phi_heat.spaces.norm_spec                                      import NormSpec
from phi_heat.spaces.space_time_field                               import SpaceTimeField
from phi_heat.spaces.time_axis                                      import TimeAxis
from phi_heat.util.phi_heat_errors                                  import ConfigurationError, ContractionBudgetError, GluingError, \
                                                                           NoConvergenceError, ParameterError
from phi_heat.util.phi_heat_statics                                 import PhiHeatStatics


def _collar_datum(parametrix):
    return SpaceTimeField.from_function(parametrix.grid, parametrix.time_axis,
                                        lambda x, y, t: _np.exp(-((_np.log(x) + 3.0) / 0.8)**2) * (1.5 + _np.cos(y)) * (1 + 10 * t),
                                        label="l")


def test_doubled_grid(grid_a):
    doubled                                             = DoubledGrid(grid_a, 1 / 8)
    assert doubled.shape[1:] == grid_a.shape[1:]
    assert _np.all(doubled.x_nodes >= doubled.x_c)
    assert _np.allclose(doubled.positions, -doubled.positions[::-1])
    rng                                                 = _np.random.default_rng(0)
    values                                              = rng.normal(size=(2, grid_a.size))
    restored                                            = doubled.restrict(doubled.lift(values))
    kept                                                = grid_a.broadcast_x(grid_a.x_nodes > doubled.x_c).ravel()
    assert _np.array_equal(restored[:, kept], values[:, kept])
    assert _np.all(restored[:, ~kept] == 0)


def test_doubled_grid_needs_room_below_the_seam(grid_a):
    with pytest.raises(ConfigurationError):
        DoubledGrid(grid_a, 1 / 32)


def test_parametrix_config_validation(family_a):
    with pytest.raises(ParameterError):
        ParametrixConfig(family_a.config, 0.01, 4, probe_count=10)
    with pytest.raises(ParameterError):
        ParametrixConfig(family_a.config, 0.01, 4, delta=1.0)
    config                                              = ParametrixConfig(family_a.config, 0.01, 4)
    assert config.but(T=0.02).T == 0.02
    assert config.epsilon == family_a.epsilon


def test_error_decomposition_is_consistent(parametrix_a):
    action                                              = parametrix_a.apply(_collar_datum(parametrix_a))
    scale                                               = max(1.0, float(_np.max(_np.abs(action.r_total.values))))
    assert action.consistency_error() <= 1e-9 * scale
    assert _np.allclose(action.u.at(0), 0.0)
    for label in PhiHeatStatics.ERROR_LABELS:
        assert action.error(label).shape == action.u.shape
    with pytest.raises(ParameterError):
        action.error("R4")


def test_parametrix_splits_into_boundary_and_interior(parametrix_a):
    datum                                               = _collar_datum(parametrix_a)
    total                                               = parametrix_a.apply(datum).u
    parts                                               = parametrix_a.boundary_apply(datum) + parametrix_a.interior_apply(datum)
    assert _np.allclose(total.values, parts.values, rtol=1e-12, atol=1e-14)


def test_parametrix_rejects_foreign_data(parametrix_a):
    other                                               = SpaceTimeField.zeros(parametrix_a.grid, TimeAxis(1.0, 8))
    with pytest.raises(ParameterError):
        parametrix_a.apply(other)


def test_neumann_residual_matches_the_heat_operator(neumann_a, parametrix_a):
    datum                                               = _collar_datum(parametrix_a)
    u, report                                           = neumann_a.neumann_solve(datum)
    assert _np.allclose(u.at(0), 0.0)
    defect                                              = parametrix_a.heat_operator.apply(u) - datum
    measured                                            = float(_np.max(_np.abs(defect.values[1:])))
    assert measured == pytest.approx(report.residual_final, rel=1e-6, abs=1e-9)
    assert 1 <= report.neumann_terms <= neumann_a.config.neumann_max
    assert report.converged
    assert report.residual_final <= neumann_a.config.tol * max(1.0, float(_np.max(_np.abs(datum.values))))


def test_neumann_solve_of_zero_is_zero(neumann_a, parametrix_a):
    u, report                                           = neumann_a.neumann_solve(SpaceTimeField.zeros(parametrix_a.grid,
                                                                                                      parametrix_a.time_axis))
    assert _np.all(u.values == 0.0)
    assert report.converged and report.neumann_terms == 1


def test_neumann_series_refuses_a_large_proxy(parametrix_a, parametrix_settings):
    solver                                              = NeumannSolver(parametrix_a, parametrix_settings, proxy=1.5)
    with pytest.raises(ContractionBudgetError) as info:
        solver.neumann_solve(_collar_datum(parametrix_a))
    assert info.value.proxy == 1.5
    assert info.value.terms_needed is None


def test_planned_terms(parametrix_a, parametrix_settings):
    solver                                              = NeumannSolver(parametrix_a, parametrix_settings, proxy=0.5)
    assert solver.required_terms(1.0) == 17
    assert solver.planned_terms(1.0) == 12
    assert solver.planned_terms(0.0) == 1
    assert NeumannSolver(parametrix_a, parametrix_settings, proxy=0.2).required_terms(1.0) == 8
    # Above the unit norm the tolerance scales with the datum
    assert solver.required_terms(100.0) == 17


@pytest.mark.parametrize("neumann_max", [0, 13, 30, 2.5])
def test_neumann_cap_is_enforced_by_the_settings(neumann_max, parametrix_settings):
    with pytest.raises(ParameterError):
        parametrix_settings.but(neumann_max=neumann_max)


def test_neumann_series_refuses_more_terms_than_its_cap(parametrix_a, parametrix_settings):
    datum                                               = _collar_datum(parametrix_a)
    solver                                              = NeumannSolver(parametrix_a, parametrix_settings, proxy=0.5)
    with pytest.raises(ContractionBudgetError) as info:
        solver.neumann_solve(datum)
    assert info.value.terms_needed == solver.required_terms(float(_np.max(_np.abs(datum.values))))
    assert info.value.terms_needed > parametrix_settings.neumann_max
    assert str(info.value).startswith("Measured error-operator proxy")


def test_neumann_series_gives_up_at_its_cap(parametrix_a, parametrix_settings):
    datum                                               = _collar_datum(parametrix_a)
    # A vanishing proxy plans a single term, which cannot reach a residual of 1e-300
    solver                                              = NeumannSolver(parametrix_a, parametrix_settings.but(neumann_max=1, tol=1e-300),
                                                                        proxy=1e-310)
    assert solver.required_terms(float(_np.max(_np.abs(datum.values)))) == 1
    with pytest.raises(NoConvergenceError) as info:
        solver.neumann_solve(datum)
    assert len(info.value.history) == 1
    assert info.value.history[0] > 1e-300


def test_measured_proxies(parametrix_a, parametrix_settings):
    solver                                              = NeumannSolver(parametrix_a, parametrix_settings)
    proxy                                               = solver.measure()
    assert _np.isfinite(proxy) and proxy >= 0
    assert set(solver.proxies.keys()) == set(PhiHeatStatics.ERROR_LABELS)
    assert solver.consistency_err <= 1e-8


def test_report_row():
    report                                              = ParametrixReport(0.125, 0.01, {"R_total": 0.3}, [1e-2, 1e-4, 1e-9],
                                                                           True, 1.5)
    row                                                 = report.to_row(mask_timings=True)
    assert row["seconds"] == 0.0
    assert row["neumann_terms"] == 3
    assert row["residual_final"] == 1e-9
    assert _np.isnan(row["r1_proxy"])
    assert report.is_monotone()
    assert not ParametrixReport(0.125, 0.01, {}, [1e-2, 1e-1], False, 0.0).is_monotone()


def test_homogeneous_solve_keeps_the_initial_value(neumann_a, parametrix_a):
    grid                                                = parametrix_a.grid
    x, y                                                = grid.coordinates()
    u0                                                  = _np.cos(y) * x
    u, report                                           = HomogeneousSolver(neumann_a).homogeneous_solve(u0)
    assert _np.allclose(u.at(0), u0, rtol=0, atol=1e-14)
    assert report.neumann_terms >= 1


def test_homogeneous_solve_of_constants(neumann_a, parametrix_a):
    u0                                                  = _np.full(parametrix_a.grid.shape, 2.0)
    u, _                                                = HomogeneousSolver(neumann_a).homogeneous_solve(u0)
    assert _np.allclose(u.values, 2.0, atol=1e-8)


def test_probes_have_unit_norm(grid_a, short_axis):
    spec                                                = NormSpec(0.5, pair_budget=1000)
    probes                                              = ProbeSet(grid_a, short_axis, 20, spec, seed=3).probes()
    assert len(probes) == 20
    assert probes[0][0].startswith("bump_") and probes[-1][0].startswith("random_")
    for _, probe in probes[:3]:
        assert HolderEstimator().k_alpha_norm(probe, spec.but(k=0)).total == pytest.approx(1.0, rel=1e-10)


def test_budget_search_halves_the_window():
    budget                                              = ContractionBudget(lambda eps, T: 9 * T, 0.5)
    eps, T, proxy                                       = budget.search(0.125, 0.4)
    assert eps == 0.125
    assert T == pytest.approx(0.05)
    assert proxy == pytest.approx(0.45)
    frame                                               = budget.history_frame()
    assert list(frame["accepted"]) == [False, False, False, True]


def test_budget_search_halves_eps_after_the_window():
    budget                                              = ContractionBudget(lambda eps, T: 80 * eps, 0.5)
    eps, T, _                                           = budget.search(0.02, 0.1)
    assert eps == pytest.approx(0.005)
    assert T == 0.1


def test_budget_search_gives_up():
    budget                                              = ContractionBudget(lambda eps, T: 2.0, 0.5)
    with pytest.raises(ContractionBudgetError) as info:
        budget.search(0.125, 0.1)
    assert info.value.proxy == 2.0
    assert len(budget.history) == (ContractionBudget.MAX_EPS_HALVINGS + 1) * (ContractionBudget.MAX_T_HALVINGS + 1)


def test_budget_search_stops_at_unrealizable_cells():
    def measure(eps, T):
        raise ConfigurationError("no room")

    with pytest.raises(ContractionBudgetError) as info:
        ContractionBudget(measure, 0.5).search(0.125, 0.1)
    assert _np.isnan(info.value.proxy)


def test_gluing_extends_the_solution(neumann_a, parametrix_a):
    datum                                               = _collar_datum(parametrix_a)
    homogeneous                                         = HomogeneousSolver(neumann_a)
    h                                                   = parametrix_a.time_axis.h
    first, _                                            = homogeneous.window(0, 5).solve(datum.window(0, 5))
    glued                                               = TimeGluer(homogeneous, tolerance=_np.inf).extend_in_time(
                                                            datum, first, 2 * h, horizon=parametrix_a.time_axis.T)
    assert len(glued.field.time_axis) == len(parametrix_a.time_axis)
    assert len(glued.seams) == 1
    assert glued.seams[0]["t_seam"] == pytest.approx(5 * h)
    assert _np.array_equal(glued.field.values[:4], first.values[:4])


def test_gluing_reports_a_mismatch(neumann_a, parametrix_a):
    datum                                               = _collar_datum(parametrix_a)
    homogeneous                                         = HomogeneousSolver(neumann_a)
    first, _                                            = homogeneous.window(0, 5).solve(datum.window(0, 5))
    with pytest.raises(GluingError) as info:
        TimeGluer(homogeneous, tolerance=1e-12).extend_in_time(datum, first * 2.0, 2 * parametrix_a.time_axis.h)
    assert info.value.diagnostics["mismatch"] > 1e-12


def test_gluing_rejects_a_long_overlap(neumann_a, parametrix_a):
    datum                                               = _collar_datum(parametrix_a)
    homogeneous                                         = HomogeneousSolver(neumann_a)
    first, _                                            = homogeneous.window(0, 4).solve(datum.window(0, 4))
    with pytest.raises(ParameterError):
        TimeGluer(homogeneous).extend_in_time(datum, first, parametrix_a.time_axis.T / 2)


def test_largest_proxy_meets_the_cap():
    assert NeumannSolver.largest_proxy(1e-8, 8) == pytest.approx(0.1)
    assert NeumannSolver.largest_proxy(1e-8, 12) < 0.5


def _phase(T, r1, r2, r3, eps=0.125):
    S                                                   = PhiHeatStatics
    return _pd.DataFrame({S.EPS_COL:        [eps] * len(T),
                          S.WINDOW_COL:     T,
                          S.R1_PROXY_COL:   r1,
                          S.R2_PROXY_COL:   r2,
                          S.R3_PROXY_COL:   r3})


def test_error_scaling_of_power_laws():
    T                                                   = _np.array([0.04, 0.01, 0.0025])
    law                                                 = ErrorScaling(0.5)
    scaling                                             = law.fit(_phase(T, 2 * T**0.25, T**0.5, _np.ones(3)))
    row                                                 = scaling.iloc[0]
    assert row[PhiHeatStatics.R1_SLOPE_COL] == pytest.approx(0.25)
    assert row[PhiHeatStatics.R1_EXPECTED_SLOPE_COL] == pytest.approx(0.25)
    assert row[PhiHeatStatics.R2_SHRINK_COL] == pytest.approx(0.5)
    assert row[PhiHeatStatics.R3_SHRINK_COL] == pytest.approx(1.0)
    assert law.checks(scaling) == {"r1_slope_eps_0.125": True, "r2_shrinks_eps_0.125": True,
                                   "r3_shrinks_eps_0.125": False}


def test_error_scaling_flags_a_wrong_slope():
    T                                                   = _np.array([0.04, 0.01, 0.0025])
    law                                                 = ErrorScaling(0.5)
    checks                                              = law.checks(law.fit(_phase(T, T, 0.5 * T, 0.1 * T)))
    assert checks["r1_slope_eps_0.125"] is False
    assert checks["r2_shrinks_eps_0.125"] and checks["r3_shrinks_eps_0.125"]


def test_error_scaling_skips_what_it_cannot_fit():
    law                                                 = ErrorScaling(0.5)
    T                                                   = _np.array([0.04, 0.01])
    # A constant coefficient has no freezing error at all
    checks                                              = law.checks(law.fit(_phase(T, _np.zeros(2), _np.zeros(2), [0.3, 0.1])))
    assert checks == {"r2_shrinks_eps_0.125": True, "r3_shrinks_eps_0.125": True}
    # Windows closer than a quartering are not compared
    assert law.checks(law.fit(_phase([0.04, 0.02], [1.0, 0.5], [1.0, 0.5], [1.0, 0.5]))) == \
        {"r1_slope_eps_0.125": False}
    with pytest.raises(ParameterError):
        ErrorScaling(1.5)
