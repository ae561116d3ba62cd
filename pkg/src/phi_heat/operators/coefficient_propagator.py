import numpy                                                        as _np
import scipy.sparse                                                 as _sparse
import scipy.sparse.linalg                                          as _splinalg

from phi_heat.spaces.space_time_field                               import SpaceTimeField
from phi_heat.util.phi_heat_errors                                  import ParameterError


class CoefficientPropagator():

    '''
    Theta-scheme solver of ``d_t u + a Delta u = l`` for a space-time dependent coefficient ``a``. It is the
    solver whose steps :class:`HeatOperator` differentiates exactly:

        ``(W + theta h A^n K) u^n = (W - (1-theta) h A^{n-1} K) u^{n-1} + h W l^n``

    with ``A^n = diag(a(., t_n))``. A time-independent coefficient is factored once; otherwise every step
    factors its own matrix.

    :param DiscreteOperator laplacian: the operator ``Delta``
    :param CoefficientField coefficient: the coefficient, on the laplacian's grid
    :param float theta: scheme parameter
    '''
    def __init__(self, laplacian, coefficient, theta=0.5):

        if not coefficient.grid.same_as(laplacian.grid):
            raise ParameterError("Coefficient grid " + str(coefficient.grid.shape) + " differs from operator grid "
                                 + str(laplacian.grid.shape))

        self.laplacian                                  = laplacian
        self.coefficient                                = coefficient
        self.time_axis                                  = coefficient.time_axis
        self.h                                          = self.time_axis.h
        self.theta                                      = float(theta)

        self._time_independent                          = coefficient.is_time_independent()
        self._factor_cache                              = {}

    def _factor(self, n):
        key                                             = 0 if self._time_independent else n
        if not key in self._factor_cache.keys():
            W                                           = _sparse.diags(self.laplacian.mass)
            A                                           = W + self.theta * self.h * _sparse.diags(self.coefficient.at(n)) \
                                                            @ self.laplacian.stiffness
            self._factor_cache[key]                     = _splinalg.splu(A.tocsc())
        return self._factor_cache[key]

    def step(self, n, u, source=None):
        '''
        Advances from time node ``n-1`` to ``n``.

        :param int n: index of the new time node, ``1 <= n <= nt``
        :param u: flat solution at node ``n-1``
        :param source: flat source at node ``n``, or None
        '''
        W                                               = self.laplacian.mass
        rhs                                             = W * u - (1 - self.theta) * self.h * self.coefficient.at(n - 1) \
                                                            * (self.laplacian.stiffness @ u)
        if source is not None:
            rhs                                         = rhs + self.h * W * source
        return self._factor(n).solve(rhs)

    def solve(self, source=None, u0=None):
        '''
        :param SpaceTimeField source: right-hand side on the coefficient's time axis, or None for 0
        :param u0: grid-shaped initial value, or None for 0
        :return: the solution on the coefficient's time axis
        :rtype: SpaceTimeField
        '''
        axis                                            = self.time_axis
        if source is not None and not source.time_axis.same_as(axis):
            raise ParameterError("Source time axis " + repr(source.time_axis) + " differs from coefficient axis "
                                 + repr(axis))
        N                                               = self.laplacian.size
        result                                          = _np.zeros((len(axis), N))
        if u0 is not None:
            result[0]                                   = _np.asarray(u0, dtype=float).ravel()
        flat                                            = None if source is None else source.flat()
        for n in range(1, len(axis)):
            result[n]                                   = self.step(n, result[n - 1], None if flat is None else flat[n])

        label                                           = "u" if source is None else "H_a(" + str(source.label) + ")"
        return SpaceTimeField(result.reshape((len(axis),) + tuple(self.laplacian.grid.shape)), self.laplacian.grid,
                              axis, label=label)
