import math                                                         as _math

import numpy                                                        as _np
import pytest

from phi_heat.geometry.manifold_model_factory                       import ManifoldModelFactory
from phi_heat.geometry.phi_grid                                     import PhiGrid
from phi_heat.util.phi_heat_errors                                  import DomainError, ParameterError


def _random_points(model, n, seed):
    rng                                                 = _np.random.default_rng(seed)
    chart                                               = model.chart
    x                                                   = rng.uniform(chart.x_min, chart.x_max, size=(n, 1))
    angles                                              = rng.uniform(0, 2 * _math.pi, size=(n, model.m - 1))
    return _np.hstack([x, angles])


def test_factory_dimensions():
    factory                                             = ManifoldModelFactory()
    a                                                   = factory.create("A")
    b                                                   = factory.create("ModelB")
    assert (a.chart.b, a.chart.f, a.m) == (1, 0, 2)
    assert (b.chart.b, b.chart.f, b.m) == (1, 1, 3)
    assert a.has_oracle and b.has_oracle
    assert not factory.create_general(2, 1).has_oracle


def test_factory_rejects_unknown_model():
    with pytest.raises(ParameterError):
        ManifoldModelFactory().create("C")


def test_chart_rejects_bad_truncation():
    with pytest.raises(ParameterError):
        ManifoldModelFactory().create("A", x_min=0.5, x_max=0.25)


@pytest.mark.parametrize("identifier", ["A", "B"])
def test_distance_equivalence(identifier):
    model                                               = ManifoldModelFactory().create(identifier)
    P                                                   = _random_points(model, 500, seed=1)
    Q                                                   = _random_points(model, 500, seed=2)
    d_inf                                               = model.phi_distance(P, Q, q=_np.inf)
    d_2                                                 = model.phi_distance(P, Q, q=2)
    d_1                                                 = model.phi_distance(P, Q, q=1)
    assert _np.all(d_inf <= d_2 * (1 + 1e-12))
    assert _np.all(d_2 <= d_1 * (1 + 1e-12))
    assert _np.all(d_2 <= _math.sqrt(3) * d_inf * (1 + 1e-12))
    assert _np.all(d_1 <= 3 * d_inf * (1 + 1e-12))


def test_distance_uses_shortest_arc(model_a):
    p                                                   = [0.5, 0.1]
    p_prime                                             = [0.5, 2 * _math.pi - 0.1]
    assert model_a.phi_distance(p, p_prime) == pytest.approx(1.0 * 0.2, rel=1e-12)


def test_distance_weights_fiber_by_x_squared(model_b):
    p                                                   = [0.25, 1.0, 0.0]
    p_prime                                             = [0.25, 1.0, 1.0]
    assert model_b.phi_distance(p, p_prime, q=1) == pytest.approx(0.5**2, rel=1e-12)


def test_distance_of_single_points_is_a_float(model_a):
    assert isinstance(model_a.phi_distance([0.5, 0.0], [0.25, 0.0]), float)


def test_distance_rejects_small_exponent(model_a):
    with pytest.raises(ParameterError):
        model_a.phi_distance([0.5, 0.0], [0.25, 0.0], q=0.5)


def test_points_below_truncation_are_rejected(model_a):
    with pytest.raises(DomainError):
        model_a.chart.validate_points([1 / 128, 0.0])
    P                                                   = model_a.chart.validate_points([1 / 128, 0.0], require_truncation=False)
    assert P.shape == (1, 2)


def test_points_with_wrong_dimension_are_rejected(model_b):
    with pytest.raises(DomainError):
        model_b.volume_density([0.5, 0.0])


def test_phi_frame_has_unit_length(model_b):
    p                                                   = [0.2, 1.0, 2.0]
    g                                                   = model_b.metric_tensor_at(p)
    for v in model_b.phi_frame_at(p):
        assert float(v @ g @ v) == pytest.approx(1.0, rel=1e-12)


def test_volume_density(model_a, model_b):
    assert model_a.volume_density([0.5, 0.0]) == pytest.approx(0.5**-3, rel=1e-12)
    assert model_b.volume_density([0.5, 0.0, 0.0]) == pytest.approx(0.5**-3, rel=1e-12)


def test_inverted_coordinates(model_b):
    q                                                   = model_b.to_inverted_coords([0.25, 1.0, 2.0])
    assert _np.allclose(q, [4.0, 1.0, 2.0])
    with pytest.raises(DomainError):
        model_b.to_inverted_coords([0.0, 1.0, 2.0])


def test_geometric_grid_has_constant_ratio(grid_a):
    ratios                                              = grid_a.x_nodes[1:] / grid_a.x_nodes[:-1]
    assert _np.allclose(ratios, ratios[0], rtol=1e-12)
    assert grid_a.x_nodes[0] == pytest.approx(1 / 64)
    assert grid_a.x_nodes[-1] == pytest.approx(1.0)


def test_uniform_grid(model_a):
    grid                                                = PhiGrid(model_a, 17, ny=16, spacing=PhiGrid.UNIFORM)
    assert _np.allclose(_np.diff(grid.x_nodes), _np.diff(grid.x_nodes)[0])


def test_grid_shapes(grid_a, grid_b):
    assert grid_a.shape == (32, 16)
    assert grid_b.shape == (16, 16, 16)
    assert grid_b.points().shape == (grid_b.size, 3)
    assert _np.all(grid_b.volume_weights() > 0)


def test_grid_rejects_bad_settings(model_a):
    with pytest.raises(ParameterError):
        PhiGrid(model_a, 2)
    with pytest.raises(ParameterError):
        PhiGrid(model_a, 16, spacing="chebyshev")


def test_frame_weights_follow_the_metric(grid_b):
    weights                                             = grid_b.frame_weights()
    x                                                   = grid_b.coordinates()[0]
    assert _np.allclose(weights[0], x**2)
    assert _np.allclose(weights[1], x)
    assert _np.allclose(weights[2], 1.0)
