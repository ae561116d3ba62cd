import numpy                                                        as _np
import pytest

from phi_heat.spaces.holder_estimator                               import HolderEstimator
from phi_heat.spaces.norm_spec                                      import NormSpec
from phi_heat.spaces.pair_sampler                                   import PairSampler
from phi_heat.spaces.space_time_field                               import SpaceTimeField
from phi_heat.spaces.time_axis                                      import TimeAxis
from phi_heat.util.phi_heat_errors                                  import ParameterError, UnsupportedError


def test_time_axis():
    axis                                                = TimeAxis(0.5, 4)
    assert axis.h == pytest.approx(0.125)
    assert len(axis) == 5
    assert axis.steps_for(0.25) == 2
    with pytest.raises(ParameterError):
        axis.steps_for(0.3)
    window                                              = axis.window(2, 2)
    assert window.start == pytest.approx(0.25)
    assert window.times[-1] == pytest.approx(0.5)


def test_time_axis_rejects_bad_settings():
    with pytest.raises(ParameterError):
        TimeAxis(0.0, 4)
    with pytest.raises(ParameterError):
        TimeAxis(1.0, 2.5)


def test_field_shape_is_checked(grid_a):
    axis                                                = TimeAxis(1.0, 2)
    with pytest.raises(ParameterError):
        SpaceTimeField(_np.zeros((2,) + grid_a.shape), grid_a, axis)
    with pytest.raises(ParameterError):
        SpaceTimeField(_np.full((3,) + grid_a.shape, _np.nan), grid_a, axis)


def test_field_is_read_only(grid_a):
    u                                                   = SpaceTimeField.zeros(grid_a, TimeAxis(1.0, 2))
    with pytest.raises(ValueError):
        u.values[0, 0, 0]                               = 1.0


def test_field_arithmetic_needs_matching_axes(grid_a):
    u                                                   = SpaceTimeField.zeros(grid_a, TimeAxis(1.0, 2))
    v                                                   = SpaceTimeField.zeros(grid_a, TimeAxis(2.0, 2))
    with pytest.raises(ParameterError):
        u + v
    w                                                   = 2.0 * (u + 1.0)
    assert _np.all(w.values == 2.0)


def test_field_from_function_sees_time(grid_a):
    axis                                                = TimeAxis(1.0, 4)
    u                                                   = SpaceTimeField.from_function(grid_a, axis, lambda x, y, t: x + t)
    assert _np.allclose(u.at(4) - u.at(0), 1.0)


def test_field_window(grid_a):
    axis                                                = TimeAxis(1.0, 4)
    u                                                   = SpaceTimeField.from_function(grid_a, axis, lambda x, y, t: t + 0 * x)
    w                                                   = u.window(1, 2)
    assert w.time_axis.start == pytest.approx(0.25)
    assert _np.allclose(w.at(0), 0.25)
    with pytest.raises(ParameterError):
        u.window(3, 2)


def test_norm_spec_validation():
    with pytest.raises(ParameterError):
        NormSpec(1.0)
    with pytest.raises(ParameterError):
        NormSpec(0.5, pair_budget=500)
    assert NormSpec(0.5, k=1).but(k=2).k == 2


def test_sup_norm(grid_a):
    axis                                                = TimeAxis(1.0, 2)
    u                                                   = SpaceTimeField.from_function(grid_a, axis, lambda x, y, t: -3 * x + 0 * t)
    assert HolderEstimator().sup_norm(u) == pytest.approx(3.0)


def test_seminorm_of_constant_vanishes(grid_b):
    u                                                   = SpaceTimeField.constant_in_time(grid_b, TimeAxis(1.0, 2), _np.full(grid_b.shape, 7.0))
    value, pair                                         = HolderEstimator().alpha_seminorm_with_pair(u, NormSpec(0.5))
    assert value == 0.0
    assert pair is None


def test_seminorm_of_time_is_attained_across_the_axis(grid_a):
    '''
    For ``u = t`` every quotient is at most ``|t-t'|^(1-alpha/2)``, and the pair joining the end nodes at a fixed
    point attains ``T^(1-alpha/2)``.
    '''
    T, alpha                                            = 0.25, 0.5
    u                                                   = SpaceTimeField.from_function(grid_a, TimeAxis(T, 4), lambda x, y, t: t + 0 * x)
    value                                               = HolderEstimator().alpha_seminorm(u, NormSpec(alpha))
    assert value == pytest.approx(T**(1 - alpha / 2), rel=1e-12)


def test_seminorm_grows_with_the_budget(grid_a):
    rng                                                 = _np.random.default_rng(3)
    u                                                   = SpaceTimeField(rng.normal(size=(3,) + grid_a.shape), grid_a, TimeAxis(1.0, 2))
    estimator                                           = HolderEstimator()
    small                                               = estimator.alpha_seminorm(u, NormSpec(0.5, pair_budget=1000))
    large                                               = estimator.alpha_seminorm(u, NormSpec(0.5, pair_budget=4000))
    assert small <= large


def test_pair_cache_is_bounded(grid_a):
    u                                                   = SpaceTimeField(_np.ones((3,) + grid_a.shape), grid_a, TimeAxis(1.0, 2))
    estimator                                           = HolderEstimator()
    spec                                                = NormSpec(0.5, pair_budget=NormSpec.MIN_PAIR_BUDGET)
    for seed in range(HolderEstimator.PAIR_CACHE_SIZE + 4):
        estimator.alpha_seminorm(u, spec.but(seed=seed))
    assert estimator.pair_cache_info().currsize == HolderEstimator.PAIR_CACHE_SIZE
    hits                                                = estimator.pair_cache_info().hits
    estimator.alpha_seminorm(u, spec.but(seed=HolderEstimator.PAIR_CACHE_SIZE + 3))
    assert estimator.pair_cache_info().hits == hits + 1


def test_pair_stream_is_prefix_stable():
    sampler                                             = PairSampler((16, 8), 4, seed=5)
    short                                               = sampler.pairs(600)
    long                                                = PairSampler((16, 8), 4, seed=5).pairs(1500)
    for a, b in zip(short, long):
        assert _np.array_equal(a, b[:600])
    i1, n1, i2, n2                                      = short
    assert i1[0] == i2[0] and n1[0] == 0 and n2[0] == 4


def test_pairs_stay_in_focus():
    focus                                               = _np.array([3, 4, 5])
    i1, _, _, _                                         = PairSampler((16, 8), 4, seed=0, focus=focus).pairs(1000)
    assert set(_np.unique(i1)).issubset(set(focus))


def test_frame_derivative_along_x(grid_a):
    u                                                   = SpaceTimeField.from_function(grid_a, TimeAxis(1.0, 2), lambda x, y, t: x + 0 * t)
    D                                                   = HolderEstimator().phi_derivative(u, 0)
    x                                                   = grid_a.coordinates()[0]
    assert _np.allclose(D.at(1), x**2, rtol=1e-10)


def test_frame_derivative_along_the_base(grid_a):
    u                                                   = SpaceTimeField.from_function(grid_a, TimeAxis(1.0, 2), lambda x, y, t: _np.sin(y) + 0 * t)
    D                                                   = HolderEstimator().phi_derivative(u, 1)
    x, y                                                = grid_a.coordinates()
    assert _np.allclose(D.at(0), x * _np.cos(y), atol=0.03)


def test_frame_derivative_rejects_bad_direction(grid_a):
    u                                                   = SpaceTimeField.zeros(grid_a, TimeAxis(1.0, 2))
    with pytest.raises(ParameterError):
        HolderEstimator().phi_derivative(u, 2)


def test_time_derivative(grid_a):
    u                                                   = SpaceTimeField.from_function(grid_a, TimeAxis(1.0, 4), lambda x, y, t: 3 * t + 0 * x)
    assert _np.allclose(HolderEstimator().time_derivative(u).values, 3.0)
    with pytest.raises(ParameterError):
        HolderEstimator().time_derivative(SpaceTimeField.zeros(grid_a, TimeAxis(1.0, 1)))


def test_k_alpha_norm_words(grid_a):
    u                                                   = SpaceTimeField.from_function(grid_a, TimeAxis(1.0, 4), lambda x, y, t: x * _np.cos(y) * (1 + t))
    estimator                                           = HolderEstimator()
    report                                              = estimator.k_alpha_norm(u, NormSpec(0.5, k=2))
    names                                               = [name for name, _, _ in report.terms]
    assert names == ["", "V0", "V1", "V0V0", "V0V1", "V1V0", "V1V1", "t"]
    assert report.total == pytest.approx(sum(s + h for _, s, h in report.terms))
    assert report.total >= estimator.k_alpha_norm(u, NormSpec(0.5, k=1)).total
    assert report.argmax_pair_text() != ""


def test_k_alpha_norm_is_limited_to_two_derivatives(grid_a):
    u                                                   = SpaceTimeField.zeros(grid_a, TimeAxis(1.0, 4))
    with pytest.raises(UnsupportedError):
        HolderEstimator().k_alpha_norm(u, NormSpec(0.5, k=3))


def test_weight_divides_by_x_to_the_gamma(grid_a):
    u                                                   = SpaceTimeField.from_function(grid_a, TimeAxis(1.0, 2), lambda x, y, t: x**0.5 + 0 * t)
    report                                              = HolderEstimator().k_alpha_norm(u, NormSpec(0.5, gamma=0.5))
    assert report.sup_norm == pytest.approx(1.0)
    assert report.alpha_seminorm == pytest.approx(0.0, abs=1e-12)
