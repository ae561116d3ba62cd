import numpy                                                        as _np
import pandas                                                       as _pd

from phi_heat.application.phi_heat_application                     import PhiHeatApplication
from phi_heat.observability.phi_heat_logger                         import PhiHeat_Logger
from phi_heat.spaces.holder_estimator                               import HolderEstimator
from phi_heat.spaces.space_time_field                               import SpaceTimeField
from phi_heat.util.phi_heat_errors                                  import NoConvergenceError, ParameterError
from phi_heat.util.phi_heat_statics                                 import PhiHeatStatics


class PicardState():

    '''
    Outcome of a Picard iteration.

    :param SpaceTimeField u: the last iterate, on ``[0, T']``
    :param int n: number of iterates computed in the final window
    :param float gap: last successive gap ``||u_{n+1} - u_n||`` in the ``k = 2`` norm
    :param float T_prime: the window the iteration settled on
    :param list history: one dict per iterate over all windows tried, keyed by the ``picard.csv`` columns
    :param bool converged: whether the last gap met the tolerance
    :param list reports: the :class:`ParametrixReport` of every Neumann solve of the final window
    '''
    def __init__(self, u, n, gap, T_prime, history, converged, reports):

        self.u                                          = u
        self.n                                          = n
        self.gap                                        = gap
        self.T_prime                                    = T_prime
        self.history                                    = list(history)
        self.converged                                  = converged
        self.reports                                    = list(reports)

    def gaps(self):
        '''
        :return: the gaps of the final window, in order
        '''
        S                                               = PhiHeatStatics
        return [row[S.GAP_COL] for row in self.history if row[S.T_PRIME_COL] == self.T_prime]

    def contraction_factor(self):
        '''
        :return: the largest ratio ``gap(n+1)/gap(n)`` once the gaps started decreasing, NaN with fewer than 2 gaps
        '''
        gaps                                            = self.gaps()
        ratios                                          = [gaps[k + 1] / gaps[k] for k in range(len(gaps) - 1) if gaps[k] > 0]
        first                                           = next((k for k, r in enumerate(ratios) if r < 1), None)
        if first is None:
            return max(ratios) if len(ratios) > 0 else float("nan")
        return max(ratios[first:])

    @property
    def residual(self):
        return self.history[-1][PhiHeatStatics.RESIDUAL_COL] if len(self.history) > 0 else 0.0

    def to_frame(self):
        return _pd.DataFrame(self.history, columns=[PhiHeatStatics.ITERATE_COL, PhiHeatStatics.GAP_COL,
                                                    PhiHeatStatics.RESIDUAL_COL, PhiHeatStatics.T_PRIME_COL])


class PicardSolver():

    '''
    Solves ``P_a u = F(u)`` with ``u(., 0) = 0`` by the fixed-point iteration ``u_{n+1} = Q F(u_n)``, ``Q`` being the
    Neumann-series inverse of ``P_a``.

    Gaps ``||u_{n+1} - u_n||`` are measured in the ``k = 2`` Hoelder norm of the parametrix norm spec. The
    iteration stops when the gap is below ``tol max(1, ||u_{n+1}||)``, or below the accuracy of the Neumann solves
    themselves, whichever is larger. If the gaps stop decreasing before that, the window ``T'`` is halved and the
    iteration restarts on the shorter window.

    :param NeumannSolver neumann_solver: the inverse of ``P_a`` on the full window ``[0, T]``
    :param NonlinearRHS rhs: the right-hand side, its source on the full window
    :param HolderEstimator estimator: used for the gap norm
    '''
    MAX_HALVINGS                                        = 6
    MIN_STEPS                                           = 4

    # Gaps below this multiple of the Neumann residual are not resolved
    SOLVE_NOISE_FACTOR                                  = 10.0

    def __init__(self, neumann_solver, rhs, estimator=None):

        self.neumann_solver                             = neumann_solver
        self.rhs                                        = rhs
        self.estimator                                  = HolderEstimator() if estimator is None else estimator
        self.time_axis                                  = neumann_solver.parametrix.time_axis
        self.gap_spec                                   = neumann_solver.config.norm_spec.but(k=2)

    def picard_solve(self, T_prime=None, tol=None, max_iter=30, initial=None):
        '''
        :param float T_prime: window to start from, at most ``T``; ``T`` by default
        :param float tol: gap tolerance; the Neumann tolerance by default
        :param int max_iter: iterates per window
        :param SpaceTimeField initial: the first iterate on the full window, zero by default
        :rtype: PicardState
        :raises NoConvergenceError: when the window has been halved below 4 steps, or more than 6 times
        '''
        axis                                            = self.time_axis
        n_steps                                         = axis.nt if T_prime is None else axis.steps_for(T_prime)
        if n_steps > axis.nt:
            raise ParameterError("T'=" + str(T_prime) + " exceeds the window T=" + str(axis.T))
        if int(max_iter) != max_iter or max_iter < 1:
            raise ParameterError("max_iter must be a positive integer, got " + str(max_iter))
        tol                                             = self.neumann_solver.config.tol if tol is None else float(tol)

        history                                         = []
        halvings                                        = 0
        while True:
            if n_steps < self.MIN_STEPS:
                raise NoConvergenceError("Picard iteration stagnated down to a window of " + str(n_steps)
                                         + " steps (T'=" + str(n_steps * axis.h) + ")"
                                         + "\n\t==> Reduce the size of F or of the source, or refine the time step",
                                         [row[PhiHeatStatics.GAP_COL] for row in history])
            state                                       = self._iterate(n_steps, tol, max_iter, initial, history)
            if state is not None:
                return state
            halvings                                    += 1
            if halvings > self.MAX_HALVINGS:
                raise NoConvergenceError("Picard iteration still stagnates after " + str(self.MAX_HALVINGS)
                                         + " halvings of T'", [row[PhiHeatStatics.GAP_COL] for row in history])
            n_steps                                     = n_steps // 2
            PhiHeatApplication.app().log("Picard gaps stopped decreasing, restarting on T'=" + str(n_steps * axis.h),
                                         PhiHeat_Logger.LEVEL_WARNING)

    def _iterate(self, n_steps, tol, max_iter, initial, history):
        '''
        :return: the final state, or None when the gaps stagnate
        '''
        S                                               = PhiHeatStatics
        app                                             = PhiHeatApplication.app()
        solver                                          = self.neumann_solver if n_steps == self.time_axis.nt \
                                                            else self.neumann_solver.window(0, n_steps)
        rhs                                             = self.rhs.window(0, n_steps)
        parametrix                                      = solver.parametrix
        T_prime                                         = parametrix.time_axis.T

        if initial is None:
            u                                           = SpaceTimeField.zeros(parametrix.grid, parametrix.time_axis, label="u")
        else:
            u                                           = initial.window(0, n_steps)
        gap                                             = None
        reports                                         = []
        for n in range(max_iter):
            u_next, report                              = solver.neumann_solve(rhs.evaluate(u))
            reports.append(report)
            previous                                    = gap
            gap                                         = self.estimator.k_alpha_norm(u_next - u, self.gap_spec).total
            size                                        = self.estimator.k_alpha_norm(u_next, self.gap_spec).total \
                                                            if gap > 0 else 0.0
            residual                                    = self.residual(parametrix, rhs, u_next)
            history.append({S.ITERATE_COL: n + 1, S.GAP_COL: gap, S.RESIDUAL_COL: residual, S.T_PRIME_COL: T_prime})
            app.log("Picard iterate " + str(n + 1) + " on T'=" + "{:.4g}".format(T_prime) + ": gap "
                    + "{:.3e}".format(gap) + ", residual " + "{:.3e}".format(residual), PhiHeat_Logger.LEVEL_INFO)

            u                                           = u_next
            threshold                                   = max(tol, self.SOLVE_NOISE_FACTOR * report.residual_final) \
                                                            * max(1.0, size)
            if gap <= threshold:
                return PicardState(u, n + 1, gap, T_prime, history, True, reports)
            if previous is not None and gap >= previous:
                return None

        app.log("Picard iteration reached max_iter=" + str(max_iter) + " with gap " + "{:.3e}".format(gap),
                PhiHeat_Logger.LEVEL_WARNING)
        return PicardState(u, max_iter, gap, T_prime, history, False, reports)

    def residual(self, parametrix, rhs, u):
        '''
        :return: ``max |P_a u - F(u)|`` over the time nodes after the first
        '''
        defect                                          = parametrix.heat_operator.apply(u) - rhs.evaluate(u)
        return float(_np.max(_np.abs(defect.values[1:])))

