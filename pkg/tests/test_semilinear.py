import numpy                                                        as _np
import pytest

from phi_heat.operators.coefficient_field                           import CoefficientField
from phi_heat.operators.coefficient_propagator                      import CoefficientPropagator
from phi_heat.semilinear.explicit_reference_stepper                 import ExplicitReferenceStepper
from phi_heat.semilinear.lipschitz_auditor                          import LipschitzAuditor
from phi_heat.semilinear.nonlinear_rhs                              import NonlinearRHS
from phi_heat.semilinear.picard_solver                              import PicardSolver, PicardState
from phi_heat.spaces.norm_spec                                      import NormSpec
from phi_heat.spaces.space_time_field                               import SpaceTimeField
from phi_heat.spaces.time_axis                                      import TimeAxis
from phi_heat.util.phi_heat_errors                                  import ConfigValidationError, NoConvergenceError, \
                                                                           ParameterError
from phi_heat.util.phi_heat_statics                                 import PhiHeatStatics


def _samples(grid, axis, count=3, scale=0.5):
    rng                                                 = _np.random.default_rng(11)
    samples                                             = []
    for j in range(count):
        a, b                                            = rng.uniform(-1, 1, size=2)
        samples.append(SpaceTimeField.from_function(grid, axis,
                                                    lambda x, y, t: scale * (a * x + b * x * _np.cos(y)) * (1 + t),
                                                    label="s" + str(j)))
    return samples


def _smooth_initial(grid):
    x, y                                                = grid.coordinates()
    return _np.exp(-(_np.log(x) + 2.0)**2) * (1.5 + _np.cos(y))


def test_rhs_rejects_non_positive_radius():
    with pytest.raises(ParameterError):
        NonlinearRHS(mu=0.0)


def test_zero_rhs(grid_a, short_axis):
    assert NonlinearRHS().is_zero()
    assert NonlinearRHS(source=SpaceTimeField.zeros(grid_a, short_axis)).is_zero()
    assert not NonlinearRHS(f1=NonlinearRHS.linear_term(2.0)).is_zero()
    assert NonlinearRHS.expression_term("0") is None


def test_evaluate_adds_terms_and_source(grid_a, short_axis):
    u                                                   = SpaceTimeField.from_function(grid_a, short_axis, lambda x, y, t: x + 0 * t)
    source                                              = SpaceTimeField.from_function(grid_a, short_axis, lambda x, y, t: 1 + 0 * x)
    rhs                                                 = NonlinearRHS(NonlinearRHS.linear_term(2.0), NonlinearRHS.quadratic_term(),
                                                                       source=source)
    x                                                   = grid_a.coordinates()[0]
    assert _np.allclose(rhs.evaluate(u).at(3), 2 * x + x**2 + 1)
    assert _np.allclose(rhs.evaluate_part(NonlinearRHS.F2, u).at(0), x**2)
    with pytest.raises(ParameterError):
        rhs.term("F3")
    with pytest.raises(ParameterError):
        rhs.evaluate(SpaceTimeField.zeros(grid_a, TimeAxis(1.0, 8)))


def test_gradient_squared_follows_the_frame(grid_a):
    x                                                   = grid_a.coordinates()[0]
    grad2                                               = NonlinearRHS.gradient_squared(x[None, ...], grid_a)
    assert _np.allclose(grad2[0], x**4, rtol=1e-8)


def test_expression_terms(grid_a, short_axis):
    rhs                                                 = NonlinearRHS.from_expressions("0.5*u", "u**2 + t")
    u                                                   = SpaceTimeField.from_function(grid_a, short_axis, lambda x, y, t: x + 0 * t)
    x                                                   = grid_a.coordinates()[0]
    expected                                            = 0.5 * x + x**2 + short_axis.times[-1]
    assert _np.allclose(rhs.evaluate(u).at(short_axis.nt), expected)


def test_expression_rejects_fiber_coordinate_without_a_fiber(grid_a, short_axis):
    rhs                                                 = NonlinearRHS.from_expressions("z*u")
    with pytest.raises(ConfigValidationError):
        rhs.evaluate(SpaceTimeField.zeros(grid_a, short_axis))


def test_source_interpolates_in_time(grid_a):
    axis                                                = TimeAxis(1.0, 4)
    source                                              = SpaceTimeField.from_function(grid_a, axis, lambda x, y, t: t + 0 * x)
    rhs                                                 = NonlinearRHS(source=source)
    assert _np.allclose(rhs.source_at(0.6), 0.6)
    assert _np.allclose(rhs.evaluate_at(_np.zeros(grid_a.shape), grid_a, 0.3), 0.3)
    with pytest.raises(ParameterError):
        rhs.source_at(1.5)
    assert rhs.window(1, 2).source.time_axis.start == pytest.approx(0.25)


@pytest.mark.parametrize("c", [0.5, -2.0])
def test_linear_part_has_its_slope_as_constant(c, grid_a, short_axis):
    rhs                                                 = NonlinearRHS(f1=NonlinearRHS.linear_term(c))
    frame                                               = LipschitzAuditor().lipschitz_audit(rhs, _samples(grid_a, short_axis),
                                                                                             NormSpec(0.5, pair_budget=1000))
    S                                                   = PhiHeatStatics
    assert len(frame) == 4
    linear                                              = frame[frame[S.PART_COL] == NonlinearRHS.F1]
    assert _np.allclose(linear[S.C_MU_COL], abs(c), rtol=1e-10)
    assert (frame[frame[S.PART_COL] == NonlinearRHS.F2][S.C_MU_COL] == 0).all()


def test_quadratic_part_is_bounded_in_sup(grid_a, short_axis):
    rhs                                                 = NonlinearRHS(f2=NonlinearRHS.quadratic_term())
    frame                                               = LipschitzAuditor().lipschitz_audit(rhs, _samples(grid_a, short_axis, 4),
                                                                                             NormSpec(0.5, pair_budget=1000))
    S                                                   = PhiHeatStatics
    row                                                 = frame[(frame[S.PART_COL] == NonlinearRHS.F2)
                                                                & (frame[S.NORM_COL] == LipschitzAuditor.SUP)]
    assert row[S.STYLE_COL].iloc[0] == 2
    assert 0 < row[S.C_MU_COL].iloc[0] <= 2.0 + 1e-12


def test_lipschitz_audit_rejects_bad_samples(grid_a, short_axis):
    spec                                                = NormSpec(0.5, pair_budget=1000)
    auditor                                             = LipschitzAuditor()
    samples                                             = _samples(grid_a, short_axis)
    with pytest.raises(ParameterError):
        auditor.lipschitz_audit(NonlinearRHS(), samples[:1], spec)
    with pytest.raises(ParameterError):
        auditor.lipschitz_audit(NonlinearRHS(), [samples[0], SpaceTimeField.zeros(grid_a, TimeAxis(1.0, 8))], spec)
    with pytest.raises(ParameterError):
        auditor.lipschitz_audit(NonlinearRHS(mu=1e-6), samples, spec)


def test_picard_with_zero_rhs_stops_at_once(neumann_a):
    state                                               = PicardSolver(neumann_a, NonlinearRHS()).picard_solve()
    assert state.converged
    assert state.n == 1
    assert _np.all(state.u.values == 0.0)
    assert state.T_prime == pytest.approx(neumann_a.parametrix.time_axis.T)


def test_picard_with_a_linear_term(neumann_a, parametrix_a):
    grid, axis                                          = parametrix_a.grid, parametrix_a.time_axis
    source                                              = SpaceTimeField.from_function(grid, axis,
                                                            lambda x, y, t: _np.exp(-(_np.log(x) + 2.0)**2) * (1 + t))
    rhs                                                 = NonlinearRHS(f1=NonlinearRHS.linear_term(0.5), source=source)
    state                                               = PicardSolver(neumann_a, rhs).picard_solve(max_iter=20)
    assert state.converged
    assert state.n >= 1
    gaps                                                = state.gaps()
    assert gaps[-1] <= gaps[0]
    frame                                               = state.to_frame()
    assert list(frame.columns) == [PhiHeatStatics.ITERATE_COL, PhiHeatStatics.GAP_COL, PhiHeatStatics.RESIDUAL_COL,
                                   PhiHeatStatics.T_PRIME_COL]
    assert len(frame) >= state.n


def test_picard_settings(neumann_a):
    solver                                              = PicardSolver(neumann_a, NonlinearRHS())
    h                                                   = neumann_a.parametrix.time_axis.h
    with pytest.raises(ParameterError):
        solver.picard_solve(max_iter=0)
    with pytest.raises(ParameterError):
        solver.picard_solve(T_prime=2 * neumann_a.parametrix.time_axis.T)
    with pytest.raises(NoConvergenceError):
        solver.picard_solve(T_prime=3 * h)


def test_contraction_factor_ignores_the_initial_transient():
    T_COL, GAP_COL                                      = PhiHeatStatics.T_PRIME_COL, PhiHeatStatics.GAP_COL
    history                                             = [{T_COL: 0.5, GAP_COL: 9.0}] \
                                                          + [{T_COL: 0.25, GAP_COL: g} for g in [1.0, 2.0, 1.0, 0.5, 0.4]]
    state                                               = PicardState(None, 5, 0.4, 0.25, history, True, [])
    assert state.gaps() == [1.0, 2.0, 1.0, 0.5, 0.4]
    assert state.contraction_factor() == pytest.approx(0.8)
    assert _np.isnan(PicardState(None, 1, 0.0, 0.25, [{T_COL: 0.25, GAP_COL: 0.0}], True, []).contraction_factor())


def test_explicit_stepper_keeps_constants(laplacian_a):
    grid                                                = laplacian_a.grid
    coefficient                                         = CoefficientField.constant(grid, TimeAxis(0.05, 5), 1.0)
    stepper                                             = ExplicitReferenceStepper(laplacian_a, coefficient, NonlinearRHS())
    u                                                   = stepper.solve(_np.full(grid.shape, 2.0))
    assert _np.allclose(u.values, 2.0, atol=1e-10)
    assert stepper.substeps() * stepper.stable_step() >= coefficient.time_axis.h


def test_explicit_stepper_conserves_mass(laplacian_a):
    grid                                                = laplacian_a.grid
    coefficient                                         = CoefficientField.constant(grid, TimeAxis(0.05, 5), 1.0)
    u                                                   = ExplicitReferenceStepper(laplacian_a, coefficient, NonlinearRHS()).solve(
                                                            _smooth_initial(grid))
    masses                                              = u.flat() @ laplacian_a.mass
    assert _np.allclose(masses, masses[0], rtol=1e-10)


def test_explicit_stepper_agrees_with_the_implicit_solver(laplacian_a):
    grid                                                = laplacian_a.grid
    axis                                                = TimeAxis(0.05, 10)
    coefficient                                         = CoefficientField.constant(grid, axis, 1.0)
    u0                                                  = _smooth_initial(grid)
    explicit                                            = ExplicitReferenceStepper(laplacian_a, coefficient, NonlinearRHS(),
                                                                                   min_substeps=4).solve(u0)
    implicit                                            = CoefficientPropagator(laplacian_a, coefficient).solve(None, u0)
    assert _np.max(_np.abs(explicit.values - implicit.values)) <= 0.05 * _np.max(_np.abs(u0))


def test_explicit_stepper_settings(laplacian_a):
    coefficient                                         = CoefficientField.constant(laplacian_a.grid, TimeAxis(0.05, 5), 1.0)
    with pytest.raises(ParameterError):
        ExplicitReferenceStepper(laplacian_a, coefficient, NonlinearRHS(), safety=1.5)
    with pytest.raises(ParameterError):
        ExplicitReferenceStepper(laplacian_a, coefficient, NonlinearRHS(), min_substeps=0)
