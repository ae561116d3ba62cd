import numpy                                                        as _np

from phi_heat.operators.coefficient_propagator                      import CoefficientPropagator
from phi_heat.operators.laplacian_assembler                         import LaplacianAssembler
from phi_heat.parametrix.doubled_grid                               import DoubledGrid
from phi_heat.partition.profile                                     import Profile
from phi_heat.spaces.space_time_field                               import SpaceTimeField
from phi_heat.util.phi_heat_errors                                  import ParameterError


class InteriorParametrix():

    '''
    Interior part of the parametrix: ``Psi_hat . Q_I((1 - phi) l)``.

    The datum ``(1 - phi) l``, supported in ``{x >= eps/2}``, is placed on copy 1 of the :class:`DoubledGrid` and
    zero on copy 2; the equation ``d_t u + a Delta u = (1 - phi) l`` is solved there with the coefficient copied to
    both sheets, and copy 1 of the solution is cut off with

        ``Psi_hat(x) = sigma(max(0, (eps/2 - x)/(eps/4) + 1/2))``

    which is 1 on ``{x >= eps/2}`` and 0 on ``{x <= 3 eps/8}``.

    :param PhiGrid grid: collar grid
    :param BumpFamily family: normalized bump family, providing ``phi = sum phi_q``
    :param CoefficientField coefficient: coefficient on the collar grid
    :param float theta: time scheme parameter
    :param doubled_laplacian: Laplacian of an existing doubled grid of the same collar grid and eps, to reuse
    '''
    def __init__(self, grid, family, coefficient, theta=0.5, doubled_laplacian=None, profile=None):

        self.grid                                       = grid
        self.family                                     = family
        self.epsilon                                    = family.epsilon
        self.coefficient                                = coefficient
        self.theta                                      = float(theta)
        self.profile                                    = Profile() if profile is None else profile

        if doubled_laplacian is None:
            doubled                                     = DoubledGrid(grid, self.epsilon)
            doubled_laplacian                           = LaplacianAssembler().assemble_laplacian(grid.model, doubled)
        self.doubled_laplacian                          = doubled_laplacian
        self.doubled_grid                               = doubled_laplacian.grid

        self.doubled_coefficient                        = coefficient.on_grid(self.doubled_grid,
                                                                              self.doubled_grid.collar_flat_index())
        self.solver                                     = CoefficientPropagator(self.doubled_laplacian,
                                                                                self.doubled_coefficient, self.theta)
        self.cutoff                                     = self.interior_cutoff()
        self.datum_weight                               = 1.0 - family.phi_total()

    def interior_cutoff(self):
        '''
        :return: ``Psi_hat`` on the collar grid (grid shaped)
        '''
        x                                               = self.grid.coordinates()[0]
        eps                                             = self.epsilon
        return self.profile.evaluate(_np.maximum(0.0, (eps / 2 - x) / (eps / 4) + 0.5))

    def window(self, coefficient):
        '''
        :return: an interior parametrix for another time window, sharing the doubled Laplacian
        :rtype: InteriorParametrix
        '''
        return InteriorParametrix(self.grid, self.family, coefficient, self.theta,
                                  doubled_laplacian=self.doubled_laplacian, profile=self.profile)

    def solve_on_double(self, doubled_source):
        '''
        :param doubled_source: array of shape ``(nt + 1, N_doubled)``
        :return: array of the same shape: the solution of the doubled problem with zero initial value
        '''
        axis                                            = self.coefficient.time_axis
        values                                          = _np.asarray(doubled_source, dtype=float)
        if values.shape != (len(axis), self.doubled_grid.size):
            raise ParameterError("Doubled source has shape " + str(values.shape) + ", expected "
                                 + str((len(axis), self.doubled_grid.size)))
        field                                           = SpaceTimeField(values.reshape((len(axis),) + tuple(self.doubled_grid.shape)),
                                                                         self.doubled_grid, axis, label="doubled_source")
        return self.solver.solve(field).flat()

    def apply(self, source):
        '''
        :param SpaceTimeField source: the datum ``l`` on the collar grid
        :return: flat array of shape ``(nt + 1, N)``
        '''
        localized                                       = source.flat() * self.datum_weight.ravel()[None, :]
        solution                                        = self.solve_on_double(self.doubled_grid.lift(localized))
        return self.doubled_grid.restrict(solution) * self.cutoff.ravel()[None, :]
