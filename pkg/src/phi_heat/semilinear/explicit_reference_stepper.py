import math                                                         as _math
import numpy                                                        as _np

from phi_heat.application.phi_heat_application                     import PhiHeatApplication
from phi_heat.observability.phi_heat_logger                         import PhiHeat_Logger
from phi_heat.spaces.space_time_field                               import SpaceTimeField
from phi_heat.util.phi_heat_errors                                  import ParameterError


class ExplicitReferenceStepper():

    '''
    Forward Euler solver of ``d_t u + a Delta u = F(u)``, used as an oracle independent of the parametrix.

    Every step of the coefficient's time axis is split into substeps short enough for the explicit scheme to be
    stable: by Gershgorin the spectrum of ``Delta`` lies in ``[0, 2 max_i Delta_ii]``, so substeps of at most
    ``safety / (a_max max_i Delta_ii)`` keep ``1 - dt a Delta`` contracting. The coefficient and the source are
    interpolated linearly in time between nodes.

    :param DiscreteOperator laplacian: the operator ``Delta``
    :param CoefficientField coefficient: the coefficient ``a``, its time axis is the output axis
    :param NonlinearRHS rhs: the right-hand side
    :param float safety: fraction of the stability limit used, in ``(0, 1]``
    :param int min_substeps: lower bound on substeps per output step
    '''
    def __init__(self, laplacian, coefficient, rhs, safety=0.9, min_substeps=1):

        if not 0 < safety <= 1:
            raise ParameterError("safety must lie in (0, 1], got " + str(safety))
        if int(min_substeps) != min_substeps or min_substeps < 1:
            raise ParameterError("min_substeps must be a positive integer, got " + str(min_substeps))
        coefficient.check_compatible(laplacian.grid, coefficient.time_axis)

        self.laplacian                                  = laplacian
        self.coefficient                                = coefficient
        self.rhs                                        = rhs
        self.safety                                     = float(safety)
        self.min_substeps                               = int(min_substeps)

    def stable_step(self):
        '''
        :return: the largest substep used
        '''
        return self.safety / (self.coefficient.a_max * float(_np.max(self.laplacian.diagonal())))

    def substeps(self):
        h                                               = self.coefficient.time_axis.h
        return max(self.min_substeps, int(_math.ceil(h / self.stable_step())))

    def solve(self, u0=None):
        '''
        :param u0: initial value, grid shaped; 0 by default
        :return: the solution on the coefficient's time axis
        :rtype: SpaceTimeField
        '''
        grid                                            = self.laplacian.grid
        axis                                            = self.coefficient.time_axis
        m                                               = self.substeps()
        dt                                              = axis.h / m
        PhiHeatApplication.app().log("Explicit reference solve with " + str(m) + " substeps per step (dt="
                                     + "{:.3e}".format(dt) + ")", PhiHeat_Logger.LEVEL_INFO)

        u                                               = _np.zeros(grid.size) if u0 is None \
                                                            else _np.asarray(u0, dtype=float).ravel().copy()
        values                                          = _np.empty((len(axis), grid.size))
        values[0]                                       = u
        for n in range(axis.nt):
            a0, a1                                      = self.coefficient.at(n), self.coefficient.at(n + 1)
            for j in range(m):
                w                                       = j / m
                t                                       = axis.times[n] + j * dt
                a                                       = (1 - w) * a0 + w * a1
                f                                       = self.rhs.evaluate_at(u.reshape(grid.shape), grid, t).ravel()
                u                                       = u + dt * (f - a * self.laplacian.apply(u))
            values[n + 1]                               = u
        return SpaceTimeField(values.reshape((len(axis),) + tuple(grid.shape)), grid, axis, label="u_explicit")
