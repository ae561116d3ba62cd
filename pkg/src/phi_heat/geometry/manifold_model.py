import math                                                         as _math
import numpy                                                        as _np

from phi_heat.util.phi_heat_errors                                  import DomainError, ParameterError


class ManifoldModel():

    '''
    A concrete Phi-geometry: a collar chart together with its metric.

    The built-in models are created by :class:`ManifoldModelFactory`. ``ModelA`` is isometric to a planar annulus
    under ``r = 1/x`` (with ``y`` the polar angle) and ``ModelB`` to that annulus times a unit circle. Both have
    closed-form heat kernels and hence ``has_oracle`` set.

    All operations are pure; instances are immutable after construction.

    :param str identifier: model id, e.g. ``"A"``
    :param FiberedBoundaryChart chart: the collar chart
    :param PhiMetric metric: the metric
    :param bool has_oracle: whether a closed-form heat kernel is available
    '''
    def __init__(self, identifier, chart, metric, has_oracle=False):

        self.identifier                                 = identifier
        self.chart                                      = chart
        self.metric                                     = metric
        self.has_oracle                                 = has_oracle

    @property
    def m(self):
        return self.chart.m

    def __repr__(self):
        return "Model" + str(self.identifier) + "(b=" + str(self.chart.b) + ", f=" + str(self.chart.f) + ")"

    def metric_tensor_at(self, p):
        '''
        :param p: a point ``(x, y..., z...)`` in the truncated chart
        :return: coordinate components of the metric at ``p``
        :rtype: numpy.ndarray of shape (m, m)
        '''
        P                                               = self.chart.validate_points(p)
        return self.metric.matrix(P[0, 0])

    def phi_frame_at(self, p):
        '''
        :return: the Phi-frame ``x^2 d_x, x d_y_i, d_z_j`` at ``p`` as a list of ``m`` coordinate vectors. Each has
            unit length for the metric.
        :rtype: list[numpy.ndarray]
        '''
        P                                               = self.chart.validate_points(p)
        weights                                         = self.metric.frame_weights(P[0, 0])
        return [weights[i] * _np.eye(self.m)[i] for i in range(self.m)]

    def volume_density(self, p):
        '''
        :return: ``sqrt(det g)`` at ``p``
        :rtype: float
        '''
        P                                               = self.chart.validate_points(p)
        return float(self.metric.volume_density(P[0, 0]))

    def to_inverted_coords(self, p):
        '''
        :param p: a point with ``x > 0``; truncation at ``x_min`` is not required
        :return: the point ``(r, y..., z...)`` with ``r = 1/x``
        :rtype: numpy.ndarray
        '''
        P                                               = _np.array(p, dtype=float, ndmin=1)
        if P.shape[-1] != self.m:
            raise DomainError("Expected a point with " + str(self.m) + " coordinates")
        if not P[0] > 0:
            raise DomainError("Inverted coordinates need x > 0, got x=" + str(P[0]))
        result                                          = P.copy()
        result[0]                                       = 1.0 / P[0]
        return result

    def from_inverted_coords(self, q):
        Q                                               = _np.array(q, dtype=float, ndmin=1)
        if not Q[0] > 0:
            raise DomainError("Inverted coordinates need r > 0, got r=" + str(Q[0]))
        result                                          = Q.copy()
        result[0]                                       = 1.0 / Q[0]
        return result

    def phi_distance(self, p, p_prime, q=2, validate=True):
        '''
        Quasi-distance ``d_{q,Phi}`` of the collar:

            ``(|x-x'|^q + ((x+x')|y-y'|)^q + ((x+x')^2 |z-z'|)^q)^(1/q)``

        with shortest-arc periodic differences and Euclidean norms within the base and fiber blocks. For
        ``q = inf`` the maximum of the three terms is returned. No triangle inequality is assumed anywhere.

        :param p: point or array of points of shape ``(n, m)``
        :param p_prime: point or array of points, broadcastable against ``p``
        :param q: exponent in ``[1, inf]``
        :param bool validate: if False the chart checks are skipped (hot paths of estimators)
        :return: distance(s); a float if both inputs were single points
        '''
        if q is None or not q >= 1:
            raise ParameterError("phi_distance needs q >= 1, got q=" + str(q))

        single                                          = _np.ndim(p) == 1 and _np.ndim(p_prime) == 1
        if validate:
            P1                                          = self.chart.validate_points(p)
            P2                                          = self.chart.validate_points(p_prime)
        else:
            P1                                          = _np.atleast_2d(_np.asarray(p, dtype=float))
            P2                                          = _np.atleast_2d(_np.asarray(p_prime, dtype=float))

        terms                                           = self._distance_terms(P1, P2)
        if _math.isinf(q):
            result                                      = _np.max(terms, axis=0)
        else:
            result                                      = _np.sum(terms**q, axis=0) ** (1.0 / q)

        if single:
            return float(result[0])
        return result

    def _distance_terms(self, P1, P2):
        x1, x2                                          = P1[..., 0], P2[..., 0]
        s                                               = x1 + x2
        dx                                              = _np.abs(x1 - x2)
        base                                            = self.chart.base_slots()
        fiber                                           = self.chart.fiber_slots()

        if len(base) > 0:
            dy                                          = self.chart.shortest_arc(P1[..., base] - P2[..., base])
            dy                                          = _np.sqrt(_np.sum(dy**2, axis=-1))
        else:
            dy                                          = _np.zeros_like(dx)
        if len(fiber) > 0:
            dz                                          = self.chart.shortest_arc(P1[..., fiber] - P2[..., fiber])
            dz                                          = _np.sqrt(_np.sum(dz**2, axis=-1))
        else:
            dz                                          = _np.zeros_like(dx)

        return _np.stack([dx, s * dy, s**2 * dz], axis=0)
