import numpy                                                        as _np

from phi_heat.operators.heat_operator                               import HeatOperator
from phi_heat.parametrix.boundary_parametrix                        import BoundaryParametrix
from phi_heat.parametrix.interior_parametrix                        import InteriorParametrix
from phi_heat.util.phi_heat_errors                                  import ParameterError
from phi_heat.util.phi_heat_statics                                 import PhiHeatStatics


class ParametrixAction():

    '''
    Everything one application of the parametrix to a datum ``l`` produces, as :class:`SpaceTimeField` objects:
    the approximate solution ``u = Q l`` and the error fields ``R1 l``, ``R2 l``, ``R3 l`` and ``R l = P_a(Q l) - l``.

    All error fields are residuals of the discrete heat operator at the nodes ``n >= 1``; their slice 0 repeats
    slice 1.
    '''
    def __init__(self, u, r1, r2, r3, r_total):

        self.u                                          = u
        self.r1                                         = r1
        self.r2                                         = r2
        self.r3                                         = r3
        self.r_total                                    = r_total

    def error(self, label):
        S                                               = PhiHeatStatics
        by_label                                        = {S.R1: self.r1, S.R2: self.r2, S.R3: self.r3, S.R_TOTAL: self.r_total}
        if not label in by_label.keys():
            raise ParameterError("Unknown error operator '" + str(label) + "', expected one of " + str(S.ERROR_LABELS))
        return by_label[label]

    def consistency_error(self):
        '''
        :return: ``max |R l - (R1 l + R2 l + R3 l)|``
        :rtype: float
        '''
        parts                                           = self.r1.values + self.r2.values + self.r3.values
        return float(_np.max(_np.abs(self.r_total.values - parts)))


class Parametrix():

    '''
    The approximate inverse ``Q = Q_B + Q_I`` of the heat operator ``P_a = d_t + a Delta`` on a collar grid, built
    from a bump family and a coefficient, together with its error operators.

    With the theta-average ``Theta(g)^n = theta g^n + (1-theta) g^{n-1}`` the discrete identities

        ``P_a(Q_B l) = phi l + R1 l + R2 l``,   ``R1 l = Theta(g1)``,   ``R2 l = Theta(g2)``
        ``P_a(Q_I l) = (1 - phi) l + R3 l``

    hold at every node ``n >= 1``, with ``g1``, ``g2`` as in :class:`BoundaryAction` and ``R3 l`` the residual of the
    interior term. Hence ``R l = R1 l + R2 l + R3 l`` up to round-off.

    :param DiscreteOperator laplacian: Laplacian on the collar grid
    :param BumpFamily family: bump family on the same grid
    :param CoefficientField coefficient: coefficient on the grid and on the time axis of the solve
    :param float theta: time scheme parameter
    :param InteriorParametrix interior: an interior part to reuse, or None
    '''
    def __init__(self, laplacian, family, coefficient, theta=0.5, interior=None):

        self.laplacian                                  = laplacian
        self.grid                                       = laplacian.grid
        self.family                                     = family.normalize() if not family.is_normalized() else family
        self.coefficient                                = coefficient
        self.time_axis                                  = coefficient.time_axis
        self.theta                                      = float(theta)
        self.epsilon                                    = family.epsilon

        coefficient.check_compatible(self.grid, self.time_axis)
        self.heat_operator                              = HeatOperator(laplacian, coefficient, theta)
        self.boundary                                   = BoundaryParametrix(laplacian, self.family, coefficient, theta)
        self.interior                                   = InteriorParametrix(self.grid, self.family, coefficient, theta) \
                                                            if interior is None else interior.window(coefficient)

    def window(self, first_step, n_steps):
        '''
        :return: the parametrix of the sub-window of ``n_steps`` steps starting at ``first_step``, with the
            coefficient frozen at the window's first time
        :rtype: Parametrix
        '''
        return Parametrix(self.laplacian, self.family, self.coefficient.window(first_step, n_steps), self.theta,
                          interior=self.interior)

    def _check(self, source):
        if not (source.grid.same_as(self.grid) and source.time_axis.same_as(self.time_axis)):
            raise ParameterError("Datum '" + str(source.label) + "' does not live on the parametrix grid "
                                 + str(self.grid.shape) + " and time axis " + repr(self.time_axis))

    def _theta_average(self, g):
        result                                          = _np.empty_like(g)
        result[1:]                                      = self.theta * g[1:] + (1 - self.theta) * g[:-1]
        result[0]                                       = result[1]
        return result

    def _field(self, source, flat, label):
        return source.with_values(flat.reshape(source.shape), label=label)

    def apply(self, source):
        '''
        :param SpaceTimeField source: the datum ``l``
        :rtype: ParametrixAction
        '''
        self._check(source)
        S                                               = PhiHeatStatics
        boundary                                        = self.boundary.apply(source)
        interior                                        = self.interior.apply(source)
        u                                               = boundary.u + interior

        ell                                             = source.flat()
        weight                                          = self.interior.datum_weight.ravel()[None, :]
        interior_residual                               = self._residual(interior, source) - weight * ell
        total_residual                                  = self._residual(u, source) - ell

        for R in (interior_residual, total_residual):
            R[0]                                        = R[1]

        label                                           = str(source.label)
        return ParametrixAction(self._field(source, u, "Q(" + label + ")"),
                                self._field(source, self._theta_average(boundary.g1), S.R1 + "(" + label + ")"),
                                self._field(source, self._theta_average(boundary.g2), S.R2 + "(" + label + ")"),
                                self._field(source, interior_residual, S.R3 + "(" + label + ")"),
                                self._field(source, total_residual, S.R_TOTAL + "(" + label + ")"))

    def _residual(self, flat, source):
        return self.heat_operator.apply(source.with_values(flat.reshape(source.shape))).flat().copy()

    def boundary_apply(self, source):
        '''
        :return: ``Q_B l``
        :rtype: SpaceTimeField
        '''
        self._check(source)
        return self._field(source, self.boundary.apply(source).u, "Q_B(" + str(source.label) + ")")

    def interior_apply(self, source):
        '''
        :return: ``Q_I l``
        :rtype: SpaceTimeField
        '''
        self._check(source)
        return self._field(source, self.interior.apply(source), "Q_I(" + str(source.label) + ")")

    def error_apply(self, label, source):
        '''
        :param str label: one of ``R1``, ``R2``, ``R3``, ``R_total``
        :rtype: SpaceTimeField
        '''
        return self.apply(source).error(label)
