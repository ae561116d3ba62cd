import numpy                                                        as _np
import pytest

from phi_heat.operators.propagator                                  import Propagator
from phi_heat.principle.envelope_trace                              import EnvelopeTrace
from phi_heat.principle.maximum_principle                           import MaximumPrinciple
from phi_heat.spaces.space_time_field                               import SpaceTimeField
from phi_heat.spaces.time_axis                                      import TimeAxis
from phi_heat.util.phi_heat_errors                                  import ParameterError
from phi_heat.util.phi_heat_statics                                 import PhiHeatStatics


def test_envelope_flags():
    trace                                               = EnvelopeTrace([0.0, 0.1, 0.2, 0.3], [1.0, 0.9, 0.95, 0.8],
                                                                        [0.0, 0.1, 0.1, 0.2], [0, 1, 2, 3], [0, 0, 0, 0],
                                                                        tol=0.0)
    assert list(trace.sup_flags) == [True, True, False, True]
    assert trace.inf_non_decreasing()
    assert not trace.sup_non_increasing()
    assert trace.first_violation() == 2
    assert _np.isnan(trace.sup_quotients[0])
    assert trace.sup_quotients[1] == pytest.approx(-1.0)


def test_envelope_tolerance_absorbs_small_growth():
    trace                                               = EnvelopeTrace([0.0, 0.1], [1.0, 1.0 + 1e-12], [0.0, -1e-12],
                                                                        [0, 0], [0, 0], tol=1e-10)
    assert trace.sup_non_increasing() and trace.inf_non_decreasing()
    assert trace.first_violation() is None


def test_omori_yau_point_qualifies_at_the_maximum(laplacian_a):
    u                                                   = _np.random.default_rng(4).uniform(-1, 1, size=laplacian_a.size)
    candidate                                           = MaximumPrinciple().omori_yau_point(u, 10, laplacian_a)
    assert candidate.qualifies
    assert candidate.deficit_laplacian == 0.0
    assert candidate.minus_laplacian <= 0
    assert u.max() - candidate.value < 0.1
    assert len(candidate.point) == 2


def test_omori_yau_point_of_a_constant(laplacian_a):
    candidate                                           = MaximumPrinciple().omori_yau_point(_np.full(laplacian_a.size, 3.0),
                                                                                             1, laplacian_a)
    assert candidate.qualifies
    assert candidate.deficit_value == 0.0


@pytest.mark.parametrize("k", [0, -1, 2.5])
def test_omori_yau_index_must_be_positive(k, laplacian_a):
    with pytest.raises(ParameterError):
        MaximumPrinciple().omori_yau_point(_np.zeros(laplacian_a.size), k, laplacian_a)


def test_uniqueness_gap(grid_a):
    axis                                                = TimeAxis(1.0, 2)
    u                                                   = SpaceTimeField.from_function(grid_a, axis, lambda x, y, t: x * (1 + t))
    assert MaximumPrinciple().uniqueness_gap(u, u) == 0.0
    assert MaximumPrinciple().uniqueness_gap(u, u + 0.5) == pytest.approx(0.5)
    with pytest.raises(ParameterError):
        MaximumPrinciple().uniqueness_gap(u, SpaceTimeField.zeros(grid_a, TimeAxis(2.0, 2)))


def test_report_on_an_implicit_trajectory(laplacian_a):
    grid                                                = laplacian_a.grid
    axis                                                = TimeAxis(0.3, 6)
    prop                                                = Propagator(laplacian_a, 1.0, axis.h, theta=1.0)
    u0                                                  = _np.random.default_rng(7).uniform(-1, 1, size=grid.size)
    u                                                   = SpaceTimeField(prop.trajectory(u0, 6).reshape((7,) + grid.shape),
                                                                         grid, axis, label="u")
    frame, trace                                        = MaximumPrinciple().report(u, 10, laplacian_a, tol=1e-12)
    S                                                   = PhiHeatStatics
    assert len(frame) == 7
    assert list(frame.columns) == [S.T_COL, S.U_SUP_COL, S.U_INF_COL, S.SUP_FLAG_COL, S.INF_FLAG_COL, S.ARGMAX_X_COL,
                                   S.DEFICIT_VALUE_COL, S.DEFICIT_LAPLACIAN_COL]
    assert frame[S.SUP_FLAG_COL].all() and frame[S.INF_FLAG_COL].all()
    assert trace.first_violation() is None
    assert (frame[S.DEFICIT_LAPLACIAN_COL] == 0).all()
    assert frame[S.U_SUP_COL].iloc[0] == pytest.approx(u0.max())
