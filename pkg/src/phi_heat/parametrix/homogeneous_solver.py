from phi_heat.spaces.space_time_field                               import SpaceTimeField


class HomogeneousSolver():

    '''
    Solves ``P_a u = 0`` with ``u(., 0) = u0`` as ``u = u0 - Q (P_a u0)``, where ``u0`` is extended constantly in time
    and ``Q`` is the Neumann-series inverse. Then ``u(., 0) = u0`` exactly and ``P_a u`` is the Neumann residual.

    :param NeumannSolver neumann_solver: inverse of ``P_a`` on the window
    '''
    def __init__(self, neumann_solver):

        self.neumann_solver                             = neumann_solver
        self.parametrix                                 = neumann_solver.parametrix

    def window(self, first_step, n_steps):
        return HomogeneousSolver(self.neumann_solver.window(first_step, n_steps))

    def homogeneous_solve(self, u0):
        '''
        :param u0: initial value, grid shaped
        :return: ``(u, report)`` where ``report`` is the :class:`ParametrixReport` of the inner Neumann solve
        '''
        parametrix                                      = self.parametrix
        initial                                         = SpaceTimeField.constant_in_time(parametrix.grid, parametrix.time_axis,
                                                                                          u0, label="u0")
        source                                          = parametrix.heat_operator.apply(initial)
        correction, report                              = self.neumann_solver.neumann_solve(source)
        u                                               = initial - correction
        return u.with_values(u.values, label="u"), report

    def solve(self, source, u0=None):
        '''
        :return: the solution of ``P_a u = source`` with ``u(., 0) = u0`` (0 when None), and the reports of the
            solves involved
        '''
        u, report                                       = self.neumann_solver.neumann_solve(source)
        reports                                         = [report]
        if u0 is not None:
            v, report                                   = self.homogeneous_solve(u0)
            u                                           = u + v
            reports.append(report)
        return u, reports
