import numpy                                                        as _np
import scipy.sparse                                                 as _sparse
import scipy.sparse.linalg                                          as _splinalg

from phi_heat.application.phi_heat_application                     import PhiHeatApplication
from phi_heat.observability.phi_heat_logger                         import PhiHeat_Logger
from phi_heat.util.phi_heat_errors                                  import HypothesisViolationError, ParameterError


class Propagator():

    '''
    Theta-scheme solver of the frozen-coefficient heat equation ``d_t u + c Delta u = l`` on a grid.

    With the stiffness ``K`` and lumped mass ``W`` of the Laplacian (``Delta = W^-1 K``) a step reads

        ``(W + theta h c K) u^n = (W - (1-theta) h c K) u^{n-1} + h W l^n``

    i.e. the source is sampled at the new time level. The left matrix is factored once and shared by every
    solve, so concurrent solves on separate data are safe.

    :param DiscreteOperator laplacian: the reference operator ``Delta``
    :param float c: frozen coefficient, positive
    :param float h: time step
    :param float theta: scheme parameter, ``1/2`` for Crank-Nicolson
    '''
    def __init__(self, laplacian, c, h, theta=0.5):

        if not c > 0:
            raise HypothesisViolationError("Frozen coefficient must be positive, got c=" + str(c))
        if not h > 0:
            raise ParameterError("Time step must be positive, got h=" + str(h))
        if not 0 <= theta <= 1:
            raise ParameterError("Scheme parameter theta must lie in [0, 1], got " + str(theta))

        self.laplacian                                  = laplacian
        self.c                                          = float(c)
        self.h                                          = float(h)
        self.theta                                      = float(theta)

        W                                               = _sparse.diags(laplacian.mass)
        K                                               = laplacian.stiffness
        self._A                                         = (W + self.theta * self.h * self.c * K).tocsc()
        self._B                                         = (W - (1 - self.theta) * self.h * self.c * K).tocsr()
        self._lu                                        = _splinalg.splu(self._A)

    @property
    def grid(self):
        return self.laplacian.grid

    def rescaled(self):
        '''
        :return: the unit-coefficient propagator with step ``c h``; its ``n`` steps reproduce the ``n`` steps of this
            one, i.e. propagation with coefficient ``c`` for time ``t`` equals unit-coefficient propagation for ``c t``
        :rtype: Propagator
        '''
        return Propagator(self.laplacian, 1.0, self.c * self.h, self.theta)

    def is_monotone(self):
        '''
        The step map is monotone (preserves order, hence the discrete maximum principle) when the explicit part
        ``W - (1-theta) h c K`` has no negative entry; the implicit matrix is always an M-matrix.
        '''
        W                                               = self.laplacian.mass
        K_diag                                          = self.laplacian.stiffness.diagonal()
        return bool(_np.all(W >= (1 - self.theta) * self.h * self.c * K_diag))

    def step(self, u, source=None):
        '''
        :param u: flat grid function of length ``N`` or a block of shape ``(N, k)``
        :param source: source at the new time level, same shape as ``u``, or None
        :return: the solution one step later
        '''
        U                                               = _np.asarray(u, dtype=float)
        rhs                                             = self._B @ U
        if source is not None:
            W                                           = self.laplacian.mass if U.ndim == 1 else self.laplacian.mass[:, None]
            rhs                                         = rhs + self.h * W * _np.asarray(source, dtype=float)
        return self._lu.solve(rhs)

    def heat_propagate(self, u0, t):
        '''
        Solves ``d_t u + c Delta u = 0`` from ``u0`` for time ``t``.

        :param u0: initial data, grid-shaped or flat
        :param float t: duration, a nonnegative multiple of the time step
        :return: the solution at time ``t``, in the shape of ``u0``
        '''
        if t < 0:
            raise ParameterError("Cannot propagate for negative time t=" + str(t))
        U0                                              = _np.asarray(u0, dtype=float)
        n                                               = self.steps_for(t)
        u                                               = U0.ravel().copy()
        for _ in range(n):
            u                                           = self.step(u)
        return u.reshape(U0.shape)

    def trajectory(self, u0, n_steps):
        '''
        :return: array of shape ``(n_steps + 1, N)`` with the solution from ``u0`` at every step
        '''
        result                                          = _np.empty((n_steps + 1, self.grid.size))
        result[0]                                       = _np.asarray(u0, dtype=float).ravel()
        for n in range(1, n_steps + 1):
            result[n]                                   = self.step(result[n - 1])
        return result

    def heat_convolve(self, source):
        '''
        Duhamel solution ``u = H l`` of ``d_t u + c Delta u = l`` with ``u(0) = 0``, realized by incremental stepping.

        :param SpaceTimeField source: the right-hand side, on a time axis with this propagator's step
        :rtype: SpaceTimeField
        '''
        self._check_axis(source.time_axis)
        flat                                            = source.flat()
        result                                          = _np.zeros_like(flat)
        for n in range(1, len(source.time_axis)):
            result[n]                                   = self.step(result[n - 1], flat[n])
        return source.with_values(result.reshape(source.shape), label="H(" + str(source.label) + ")")

    def steps_for(self, t):
        n                                               = int(round(t / self.h))
        if abs(n * self.h - t) > 1e-9 * max(1.0, abs(t)):
            raise ParameterError("Duration t=" + str(t) + " is not a multiple of the time step h=" + str(self.h))
        return n

    def _check_axis(self, time_axis):
        if abs(time_axis.h - self.h) > 1e-12 * self.h:
            raise ParameterError("Time axis step " + str(time_axis.h) + " differs from the propagator step "
                                 + str(self.h))

    def warn_if_not_monotone(self):
        '''
        Logs a warning when the step map is not monotone; the discrete maximum principle is then only monitored.
        '''
        if not self.is_monotone():
            PhiHeatApplication.app().log("Step map with c=" + str(self.c) + ", h=" + str(self.h)
                                         + " is not monotone on grid " + str(self.grid.shape)
                                         + "; the discrete maximum principle is monitored, not guaranteed",
                                         PhiHeat_Logger.LEVEL_WARNING)
            return False
        return True
