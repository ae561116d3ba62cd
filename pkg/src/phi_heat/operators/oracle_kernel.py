import math                                                         as _math
import numpy                                                        as _np
import scipy.integrate                                              as _integrate

from phi_heat.util.phi_heat_errors                                  import ParameterError, UnsupportedError


class OracleKernel():

    '''
    Closed-form heat kernels of the built-in models, used as validation oracles.

    Under ``r = 1/x`` ModelA is the Euclidean plane in polar coordinates ``(r, y)``, so its kernel is the planar
    Gaussian ``(4 pi t)^-1 exp(-|p - p'|^2 / 4t)`` with ``|p - p'|^2 = r^2 + r'^2 - 2 r r' cos(y - y')``. ModelB is the
    plane times a unit circle; its kernel is the planar one times the theta kernel of the circle,
    ``sum_n (4 pi t)^-1/2 exp(-(z - z' + 2 pi n)^2 / 4t)`` truncated to ``|n| <= 5``.

    The kernels live on the untruncated manifold: they are what the truncated grid solver should reproduce as
    long as the solution stays away from ``x_min``.

    :param ManifoldModel model: ModelA or ModelB
    '''
    THETA_TERMS                                         = 5

    # Trapezoid nodes per periodic axis in mass quadratures
    QUADRATURE_NODES                                    = 512

    def __init__(self, model):

        if not model.has_oracle:
            raise UnsupportedError("No closed-form heat kernel for " + repr(model)
                                   + "\n\t==> Oracles exist only for the built-in models A and B")
        self.model                                      = model

    def _check_time(self, t):
        if not t > 0:
            raise ParameterError("Heat kernels need t > 0, got t=" + str(t))

    def planar_factor(self, t, p, p_tilde):
        P, Q                                            = self._points(p, p_tilde)
        r, r_t                                          = 1.0 / P[..., 0], 1.0 / Q[..., 0]
        d2                                              = r**2 + r_t**2 - 2 * r * r_t * _np.cos(P[..., 1] - Q[..., 1])
        return _np.exp(-_np.maximum(d2, 0.0) / (4 * t)) / (4 * _math.pi * t)

    def circle_factor(self, t, dz):
        n                                               = _np.arange(-self.THETA_TERMS, self.THETA_TERMS + 1)
        dz                                              = _np.asarray(dz, dtype=float)[..., None]
        terms                                           = _np.exp(-(dz + 2 * _math.pi * n)**2 / (4 * t))
        return _np.sum(terms, axis=-1) / _math.sqrt(4 * _math.pi * t)

    def kernel(self, t, p, p_tilde):
        '''
        :param float t: time, positive
        :param p: point(s) ``(x, y[, z])``, array of shape ``(..., m)``
        :param p_tilde: point(s) broadcastable against ``p``
        :return: kernel values; symmetric in ``p`` and ``p_tilde``
        '''
        self._check_time(t)
        value                                           = self.planar_factor(t, p, p_tilde)
        if self.model.chart.f > 0:
            P, Q                                        = self._points(p, p_tilde)
            value                                       = value * self.circle_factor(t, P[..., 2] - Q[..., 2])
        return value

    def kernel_on_grid(self, grid, t, p_tilde):
        '''
        :return: the kernel centred at ``p_tilde``, sampled at every node of ``grid`` (grid shaped)
        '''
        return self.kernel(t, grid.points(), _np.asarray(p_tilde, dtype=float)[None, :]).reshape(grid.shape)

    def total_mass(self, t, p_tilde, x_min=None, x_max=None):
        '''
        Integral of the kernel against ``dvol`` over ``{x_min <= x <= x_max}``, by adaptive quadrature in ``r = 1/x``
        (where ``dvol = r dr dy dz``) and periodic trapezoid sums in ``y`` and ``z``.

        :param float x_min: lower end of the ``x`` range, the chart's truncation by default
        :param float x_max: upper end of the ``x`` range, the chart's by default
        :rtype: float
        '''
        self._check_time(t)
        chart                                           = self.model.chart
        x_min                                           = chart.x_min if x_min is None else x_min
        x_max                                           = chart.x_max if x_max is None else x_max
        Q                                               = _np.asarray(p_tilde, dtype=float)
        r_t                                             = 1.0 / Q[0]
        ys                                              = 2 * _math.pi * _np.arange(self.QUADRATURE_NODES) / self.QUADRATURE_NODES
        dy                                              = 2 * _math.pi / self.QUADRATURE_NODES

        z_mass                                          = 1.0
        if chart.f > 0:
            zs                                          = ys
            z_mass                                      = float(_np.sum(self.circle_factor(t, zs - Q[2])) * dy)

        def radial(r):
            d2                                          = r**2 + r_t**2 - 2 * r * r_t * _np.cos(ys - Q[1])
            ring                                        = _np.sum(_np.exp(-_np.maximum(d2, 0.0) / (4 * t))) * dy
            return r * ring / (4 * _math.pi * t)

        lo, hi                                          = 1.0 / x_max, 1.0 / x_min
        breaks                                          = [r_t] if lo < r_t < hi else None
        value, _                                        = _integrate.quad(radial, lo, hi, points=breaks, limit=400,
                                                                          epsabs=1e-12, epsrel=1e-10)
        return float(value * z_mass)

    def _points(self, p, p_tilde):
        P                                               = _np.asarray(p, dtype=float)
        Q                                               = _np.asarray(p_tilde, dtype=float)
        if P.shape[-1] != self.model.m or Q.shape[-1] != self.model.m:
            raise ParameterError("Kernel points need " + str(self.model.m) + " coordinates")
        if _np.any(P[..., 0] <= 0) or _np.any(Q[..., 0] <= 0):
            raise ParameterError("Kernel points need x > 0")
        return P, Q
