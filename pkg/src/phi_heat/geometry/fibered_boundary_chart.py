import math                                                         as _math
import numpy                                                        as _np

from phi_heat.util.phi_heat_errors                                  import DomainError, ParameterError


class FiberedBoundaryChart():

    '''
    Collar chart ``(x, y, z)`` of a manifold with fibered boundary. ``x`` is the boundary defining function,
    ``y`` are ``b`` periodic base coordinates and ``z`` are ``f`` periodic fiber coordinates, all periodic
    coordinates ranging over ``[0, 2*pi)``.

    The chart is truncated at ``x_min > 0``: the complete manifold sends ``x -> 0`` to infinite distance.

    Points are represented as sequences (or arrays whose last axis has length ``m``) ordered as
    ``(x, y_1, ..., y_b, z_1, ..., z_f)``.

    :param int b: dimension of the base ``Y``
    :param int f: dimension of the fiber ``Z``
    :param float x_min: truncation parameter
    :param float x_max: outer end of the collar
    '''
    PERIOD                                              = 2 * _math.pi

    # Slack allowed when checking that points lie in the chart, relative to x_max
    TOLERANCE                                           = 1e-12

    def __init__(self, b, f, x_min=1/64, x_max=1.0):

        if int(b) != b or int(f) != f or b < 0 or f < 0:
            raise ParameterError("Chart dimensions must be nonnegative integers, got b=" + str(b) + ", f=" + str(f))
        if not (0 < x_min < x_max <= 1):
            raise ParameterError("Chart needs 0 < x_min < x_max <= 1, got x_min=" + str(x_min)
                                 + ", x_max=" + str(x_max))

        self.b                                          = int(b)
        self.f                                          = int(f)
        self.x_min                                      = float(x_min)
        self.x_max                                      = float(x_max)

    @property
    def m(self):
        '''
        :return: total dimension ``1 + b + f``
        :rtype: int
        '''
        return 1 + self.b + self.f

    def base_slots(self):
        return list(range(1, 1 + self.b))

    def fiber_slots(self):
        return list(range(1 + self.b, self.m))

    def validate_points(self, points, require_truncation=True):
        '''
        :param points: array-like of shape ``(m,)`` or ``(n, m)``
        :param bool require_truncation: if True, points must satisfy ``x >= x_min``; otherwise only ``x > 0``
        :return: the points as a float array of shape ``(n, m)``
        :rtype: numpy.ndarray
        '''
        P                                               = _np.atleast_2d(_np.asarray(points, dtype=float))
        if P.shape[-1] != self.m:
            raise DomainError("Expected points with " + str(self.m) + " coordinates, got shape " + str(P.shape))
        if not _np.all(_np.isfinite(P)):
            raise DomainError("Points must have finite coordinates")

        x                                               = P[:, 0]
        slack                                           = self.TOLERANCE * self.x_max
        lower                                           = self.x_min - slack if require_truncation else 0.0
        bad                                             = (x > self.x_max + slack) | (x < lower) | (x <= 0)
        if _np.any(bad):
            witness                                     = P[_np.argmax(bad)]
            raise DomainError("Point " + str(tuple(witness)) + " lies outside the chart x in ["
                              + str(self.x_min if require_truncation else 0) + ", " + str(self.x_max) + "]")

        angles                                          = P[:, 1:]
        if angles.size > 0 and (_np.any(angles < -slack) or _np.any(angles > self.PERIOD + slack)):
            raise DomainError("Periodic coordinates must lie in [0, 2*pi)")
        return P

    @staticmethod
    def shortest_arc(delta):
        '''
        :param delta: difference of periodic coordinates, any shape
        :return: absolute value of the shortest-arc representative of ``delta`` modulo ``2*pi``
        :rtype: numpy.ndarray
        '''
        d                                               = _np.mod(_np.asarray(delta, dtype=float), FiberedBoundaryChart.PERIOD)
        return _np.minimum(d, FiberedBoundaryChart.PERIOD - d)
