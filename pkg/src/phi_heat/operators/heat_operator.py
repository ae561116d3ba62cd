import numpy                                                        as _np

from phi_heat.util.phi_heat_errors                                  import ParameterError


class HeatOperator():

    '''
    Discrete heat operator ``P_a = d_t + a Delta`` on space-time fields, using the stencil of the theta scheme:

        ``(P_a u)^n = (u^n - u^{n-1})/h + theta a^n Delta u^n + (1-theta) a^{n-1} Delta u^{n-1}``

    for ``n >= 1``. Slice 0 has no backward neighbour and copies slice 1. Applied to the output of
    :class:`Propagator` or :class:`CoefficientPropagator` it returns their source up to round-off.

    :param DiscreteOperator laplacian: the operator ``Delta``
    :param coefficient: a :class:`CoefficientField` or a positive constant
    :param float theta: scheme parameter
    '''
    def __init__(self, laplacian, coefficient=1.0, theta=0.5):

        self.laplacian                                  = laplacian
        self.coefficient                                = coefficient
        self.theta                                      = float(theta)

    def _coefficient_at(self, n):
        if _np.isscalar(self.coefficient):
            return float(self.coefficient)
        return self.coefficient.at(n)

    def laplacian_term(self, u):
        '''
        :return: flat array of shape ``(nt + 1, N)`` with ``a^n Delta u^n`` at every time node
        '''
        flat                                            = u.flat()
        D                                               = (self.laplacian.stiffness @ flat.T).T / self.laplacian.mass[None, :]
        for n in range(len(u.time_axis)):
            D[n]                                        *= self._coefficient_at(n)
        return D

    def apply(self, u):
        '''
        :param SpaceTimeField u: field on the laplacian's grid with at least one time step
        :rtype: SpaceTimeField
        '''
        if not u.grid.same_as(self.laplacian.grid):
            raise ParameterError("Field '" + str(u.label) + "' lives on grid " + str(u.grid.shape)
                                 + ", the operator on " + str(self.laplacian.grid.shape))
        if not _np.isscalar(self.coefficient):
            self.coefficient.check_compatible(u.grid, u.time_axis)

        flat                                            = u.flat()
        aD                                              = self.laplacian_term(u)
        h                                               = u.time_axis.h
        result                                          = _np.empty_like(flat)
        result[1:]                                      = (flat[1:] - flat[:-1]) / h + self.theta * aD[1:] \
                                                            + (1 - self.theta) * aD[:-1]
        result[0]                                       = result[1]
        return u.with_values(result.reshape(u.shape), label="P(" + str(u.label) + ")")
