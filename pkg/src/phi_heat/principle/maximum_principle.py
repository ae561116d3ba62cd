import numpy                                                        as _np
import pandas                                                       as _pd

from phi_heat.application.phi_heat_application                     import PhiHeatApplication
from phi_heat.observability.phi_heat_logger                         import PhiHeat_Logger
from phi_heat.principle.envelope_trace                              import EnvelopeTrace
from phi_heat.util.phi_heat_errors                                  import ParameterError
from phi_heat.util.phi_heat_statics                                 import PhiHeatStatics


class OmoriYauCandidate():

    '''
    A grid point offered as the ``k``-th term of a maximizing sequence.

    :param int index: flat grid index
    :param point: coordinates of the node
    :param float value: ``u`` at the node
    :param float minus_laplacian: ``-(Delta u)`` at the node, with the positive Laplacian ``Delta``
    :param bool qualifies: whether ``u(p) > max u - 1/k`` and ``-(Delta u)(p) < 1/k``
    :param float deficit_value: ``max u - u(p)``
    :param float deficit_laplacian: ``max(0, -(Delta u)(p) - 1/k)``, how far the Laplacian condition is missed
    '''
    def __init__(self, index, point, value, minus_laplacian, qualifies, deficit_value, deficit_laplacian):

        self.index                                      = index
        self.point                                      = point
        self.value                                      = value
        self.minus_laplacian                            = minus_laplacian
        self.qualifies                                  = qualifies
        self.deficit_value                              = deficit_value
        self.deficit_laplacian                          = deficit_laplacian


class MaximumPrinciple():

    '''
    Discrete counterparts of maximizing sequences, envelope monotonicity and uniqueness.

    On a finite grid the sup is attained, so a maximizing sequence degenerates to grid points near the argmax;
    what remains observable is whether such a point also satisfies the Laplacian condition, and by how much
    it misses it when the grid is too coarse.
    '''
    def __init__(self):
        pass

    def omori_yau_point(self, u, k, laplacian):
        '''
        :param u: grid function at a fixed time (grid shaped or flat)
        :param int k: sequence index, at least 1
        :param DiscreteOperator laplacian: the positive Laplacian
        :return: among the nodes with ``u > max u - 1/k``, the one with the smallest ``-(Delta u)``
        :rtype: OmoriYauCandidate
        '''
        if int(k) != k or k < 1:
            raise ParameterError("Sequence index k must be a positive integer, got " + str(k))
        U                                               = _np.asarray(u, dtype=float).ravel()
        minus_lap                                       = -laplacian.apply(U)
        top                                             = float(_np.max(U))
        candidates                                      = _np.flatnonzero(U > top - 1.0 / k)
        best                                            = int(candidates[int(_np.argmin(minus_lap[candidates]))])

        qualifies                                       = bool(minus_lap[best] < 1.0 / k)
        candidate                                       = OmoriYauCandidate(best, tuple(laplacian.grid.points()[best]),
                                                                            float(U[best]), float(minus_lap[best]),
                                                                            qualifies, top - float(U[best]),
                                                                            max(0.0, float(minus_lap[best]) - 1.0 / k))
        if not qualifies:
            PhiHeatApplication.app().log("No node satisfies the Omori-Yau conditions for k=" + str(k)
                                         + "; best candidate misses the Laplacian bound by "
                                         + "{:.3e}".format(candidate.deficit_laplacian) + " (grid under-resolved)",
                                         PhiHeat_Logger.LEVEL_WARNING)
        return candidate

    def envelope_trace(self, u, tol=1e-10):
        '''
        :param SpaceTimeField u: the field
        :param float tol: tolerance of the monotonicity flags, 0 for exact checks
        :rtype: EnvelopeTrace
        '''
        flat                                            = u.flat()
        return EnvelopeTrace(u.time_axis.times, _np.max(flat, axis=1), _np.min(flat, axis=1),
                             _np.argmax(flat, axis=1), _np.argmin(flat, axis=1), tol)

    def uniqueness_gap(self, u, v):
        '''
        :return: ``sup |u - v|`` of two fields on the same grid and time axis
        :raises ParameterError: if the fields are not comparable
        '''
        if not u.compatible_with(v):
            raise ParameterError("Cannot compare '" + str(u.label) + "' and '" + str(v.label)
                                 + "': they live on different grids or time axes")
        return float(_np.max(_np.abs(u.values - v.values)))

    def report(self, u, k, laplacian, tol=1e-10):
        '''
        :return: ``(frame, trace)``: a DataFrame with one row per time node (envelopes, flags, the ``x`` of the sup,
            Omori-Yau deficits of the slice) and the :class:`EnvelopeTrace` it was built from
        '''
        S                                               = PhiHeatStatics
        trace                                           = self.envelope_trace(u, tol)
        x                                               = u.grid.points()[:, 0]
        rows                                            = []
        for n in range(len(u.time_axis)):
            candidate                                   = self.omori_yau_point(u.at(n), k, laplacian)
            rows.append({S.T_COL:                   trace.times[n],
                         S.U_SUP_COL:               trace.u_sup[n],
                         S.U_INF_COL:               trace.u_inf[n],
                         S.SUP_FLAG_COL:            bool(trace.sup_flags[n]),
                         S.INF_FLAG_COL:            bool(trace.inf_flags[n]),
                         S.ARGMAX_X_COL:            float(x[trace.argmax[n]]),
                         S.DEFICIT_VALUE_COL:       candidate.deficit_value,
                         S.DEFICIT_LAPLACIAN_COL:   candidate.deficit_laplacian})
        return _pd.DataFrame(rows), trace
