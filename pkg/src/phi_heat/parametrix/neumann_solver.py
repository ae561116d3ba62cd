import math                                                         as _math
import time                                                         as _time
import numpy                                                        as _np

from phi_heat.application.phi_heat_application                     import PhiHeatApplication
from phi_heat.observability.phi_heat_logger                         import PhiHeat_Logger
from phi_heat.parametrix.operator_norm_estimator                    import OperatorNormEstimator
from phi_heat.parametrix.probe_set                                  import ProbeSet
from phi_heat.util.phi_heat_errors                                  import ContractionBudgetError, NoConvergenceError
from phi_heat.util.phi_heat_statics                                 import PhiHeatStatics


class ParametrixReport():

    '''
    Outcome of one Neumann solve in a cell ``(eps, T)``.

    :param float epsilon: collar scale
    :param float T: time window
    :param dict proxies: operator-norm proxies by error label
    :param list residual_history: ``||P_a u_k - l||_inf`` after each Neumann term ``k``
    :param bool converged: whether the last residual met the tolerance
    :param float seconds: wall time of the solve
    :param float consistency_err: decomposition consistency measured with the proxies, or None
    '''
    def __init__(self, epsilon, T, proxies, residual_history, converged, seconds, consistency_err=None):

        self.epsilon                                    = epsilon
        self.T                                          = T
        self.proxies                                    = dict(proxies)
        self.residual_history                           = list(residual_history)
        self.converged                                  = converged
        self.seconds                                    = seconds
        self.consistency_err                            = consistency_err

    @property
    def neumann_terms(self):
        return len(self.residual_history)

    @property
    def residual_final(self):
        return self.residual_history[-1] if len(self.residual_history) > 0 else float("nan")

    def is_monotone(self, slack=0.0):
        '''
        :return: True if the residual history never increases by more than ``slack`` relative
        '''
        h                                               = self.residual_history
        return all(h[k + 1] <= h[k] * (1 + slack) for k in range(len(h) - 1))

    def to_row(self, mask_timings=False):
        S                                               = PhiHeatStatics
        row                                             = {S.EPS_COL: self.epsilon, S.WINDOW_COL: self.T}
        for label in S.ERROR_LABELS:
            row[S.PROXY_COLUMNS[label]]                 = self.proxies.get(label, float("nan"))
        row[S.CONVERGED_COL]                            = self.converged
        row[S.NEUMANN_TERMS_COL]                        = self.neumann_terms
        row[S.RESIDUAL_FINAL_COL]                       = self.residual_final
        row[S.SECONDS_COL]                              = 0.0 if mask_timings else self.seconds
        return row


class NeumannSolver():

    '''
    Inverts ``P_a`` on a window through the Neumann series ``Q sum_k (-R)^k``.

    Writing ``r_0 = l`` and ``r_{k+1} = -R r_k``, the partial sums ``u_k = sum_{j<=k} Q r_j`` satisfy
    ``P_a u_k - l = -r_{k+1}``, so the residual history is read off the series without re-applying ``P_a``.
    The series is used only when the measured proxy of ``R`` is below 1 and brings ``proxy^N ||l||`` below
    ``tol max(1, ||l||)`` within ``neumann_max`` terms. Since the proxy is a lower bound the series keeps going past
    that plan, up to ``neumann_max`` terms, and gives up if the residual is still above the tolerance.

    :param Parametrix parametrix: the parametrix of the window
    :param ParametrixConfig config: cell settings
    :param float proxy: measured proxy of ``||R||``; measured on first use when None
    :param dict proxies: all measured proxies, reported alongside the solve
    '''
    def __init__(self, parametrix, config, proxy=None, proxies=None, consistency_err=None):

        self.parametrix                                 = parametrix
        self.config                                     = config
        self.proxy                                      = proxy
        self.proxies                                    = {} if proxies is None else dict(proxies)
        self.consistency_err                            = consistency_err
        if proxy is not None and not PhiHeatStatics.R_TOTAL in self.proxies.keys():
            self.proxies[PhiHeatStatics.R_TOTAL]        = proxy

    def measure(self):
        '''
        Measures the error-operator proxies on the configured probe set.

        :return: the ``R_total`` proxy
        '''
        config                                          = self.config
        probes                                          = ProbeSet(self.parametrix.grid, self.parametrix.time_axis,
                                                                   config.probe_count, config.norm_spec,
                                                                   seed=config.norm_spec.seed)
        estimate                                        = OperatorNormEstimator(self.parametrix, probes).estimate(config.norm_spec)
        self.proxies                                    = dict(estimate.proxies)
        self.proxy                                      = estimate.proxy(PhiHeatStatics.R_TOTAL)
        self.consistency_err                            = estimate.consistency_err
        return self.proxy

    def window(self, first_step, n_steps):
        '''
        :return: a solver for a sub-window, reusing the measured proxies
        :rtype: NeumannSolver
        '''
        parametrix                                      = self.parametrix.window(first_step, n_steps)
        config                                          = self.config.but(T=parametrix.time_axis.T, nt=n_steps)
        return NeumannSolver(parametrix, config, proxy=self.proxy, proxies=self.proxies,
                             consistency_err=self.consistency_err)

    def required_terms(self, source_norm):
        '''
        :return: number of terms after which ``proxy^N ||l||_inf`` is below the residual threshold
            ``tol max(1, ||l||_inf)``, ignoring the cap
        '''
        if self.proxy == 0 or source_norm == 0:
            return 1
        needed                                          = _math.log(self.config.tol * max(1.0, source_norm) / source_norm) \
                                                            / _math.log(self.proxy)
        return int(max(1, _math.ceil(needed)))

    @staticmethod
    def largest_proxy(tol, neumann_max):
        '''
        :return: the largest proxy whose series reaches ``tol`` within ``neumann_max`` terms for a datum of sup norm
            at least 1
        '''
        return tol ** (1.0 / neumann_max)

    def planned_terms(self, source_norm):
        '''
        :return: :meth:`required_terms`, at most ``neumann_max``
        '''
        return min(self.config.neumann_max, self.required_terms(source_norm))

    def neumann_solve(self, source):
        '''
        :param SpaceTimeField source: the datum ``l`` on the parametrix grid and time axis
        :return: ``(u, report)`` with ``u(., 0) = 0``
        :raises ContractionBudgetError: if the measured proxy of ``R`` is not below 1, or if it needs more than
            ``neumann_max`` terms to reach the tolerance
        :raises NoConvergenceError: if the residual is still above the tolerance after ``neumann_max`` terms
        '''
        if self.proxy is None:
            self.measure()
        if self.proxy >= 1:
            raise ContractionBudgetError(self.proxy, self.parametrix.epsilon, self.parametrix.time_axis.T,
                                         delta=self.config.delta)

        start                                           = _time.perf_counter()
        app                                             = PhiHeatApplication.app()
        source_norm                                     = float(_np.max(_np.abs(source.values)))
        threshold                                       = self.config.tol * max(1.0, source_norm)
        required                                        = self.required_terms(source_norm)
        if required > self.config.neumann_max:
            raise ContractionBudgetError(self.proxy, self.parametrix.epsilon, self.parametrix.time_axis.T,
                                         delta=self.config.delta, terms_needed=required,
                                         terms_cap=self.config.neumann_max)
        app.log("Neumann series planned with " + str(required) + " terms for proxy " + "{:.4g}".format(self.proxy),
                PhiHeat_Logger.LEVEL_DEBUG)

        u                                               = source * 0.0
        r                                               = source
        history                                         = []
        for k in range(self.config.neumann_max):
            action                                      = self.parametrix.apply(r)
            u                                           = u + action.u
            r                                           = -action.r_total
            history.append(float(_np.max(_np.abs(r.values))))
            app.log("Neumann term " + str(k) + ": residual " + "{:.3e}".format(history[-1]),
                    PhiHeat_Logger.LEVEL_INFO)
            if history[-1] <= threshold:
                break

        if history[-1] > threshold:
            raise NoConvergenceError("Neumann series stopped at its cap of " + str(len(history)) + " terms with"
                                     + " residual " + "{:.3e}".format(history[-1]) + " above "
                                     + "{:.3e}".format(threshold) + " although the proxy "
                                     + "{:.4g}".format(self.proxy) + " planned " + str(required) + " terms"
                                     + "\n\t==> The proxy underestimates the error operator; raise probe_count"
                                     + " or shrink T or eps", history)
        report                                          = ParametrixReport(self.parametrix.epsilon,
                                                                           self.parametrix.time_axis.T,
                                                                           self.proxies, history, True,
                                                                           _time.perf_counter() - start,
                                                                           consistency_err=self.consistency_err)
        return u.with_values(u.values, label="u"), report
