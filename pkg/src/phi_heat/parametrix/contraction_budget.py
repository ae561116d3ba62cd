import pandas                                                       as _pd

from phi_heat.application.phi_heat_application                     import PhiHeatApplication
from phi_heat.observability.phi_heat_logger                         import PhiHeat_Logger
from phi_heat.util.phi_heat_errors                                  import ConfigurationError, ContractionBudgetError, \
                                                                           ParameterError
from phi_heat.util.phi_heat_statics                                 import PhiHeatStatics


class ContractionBudget():

    '''
    Searches a cell ``(eps, T)`` whose measured ``||R||`` proxy is at most the budget ``delta``.

    Starting from the given cell, ``T`` is halved up to :attr:`MAX_T_HALVINGS` times; if that does not suffice,
    ``eps`` is halved and ``T`` restarts from its initial value, up to :attr:`MAX_EPS_HALVINGS` times. Cells that
    cannot be realized on the grid end the search in the ``eps`` direction.

    :param measure: callable ``measure(eps, T)`` returning the proxy of a cell
    :param float delta: budget in ``(0, 1)``
    '''
    MAX_T_HALVINGS                                      = 4
    MAX_EPS_HALVINGS                                    = 3

    def __init__(self, measure, delta):

        if not 0 < delta < 1:
            raise ParameterError("Contraction budget delta must lie in (0, 1), got " + str(delta))
        self.measure                                    = measure
        self.delta                                      = float(delta)
        self.history                                    = []

    def search(self, epsilon, T):
        '''
        :return: ``(eps, T, proxy)`` of the first cell within budget
        :raises ContractionBudgetError: if no visited cell is within budget
        '''
        S                                               = PhiHeatStatics
        app                                             = PhiHeatApplication.app()
        self.history                                    = []
        best                                            = None
        eps                                             = epsilon
        for _ in range(self.MAX_EPS_HALVINGS + 1):
            window                                      = T
            for _ in range(self.MAX_T_HALVINGS + 1):
                try:
                    proxy                               = float(self.measure(eps, window))
                except ConfigurationError as ex:
                    app.log("Budget search stops at eps=" + str(eps) + ": " + str(ex).split("\n")[0],
                            PhiHeat_Logger.LEVEL_WARNING)
                    return self._give_up(best, epsilon, T)
                accepted                                = proxy <= self.delta
                self.history.append({S.EPS_COL: eps, S.WINDOW_COL: window, S.R_TOTAL_PROXY_COL: proxy,
                                     S.ACCEPTED_COL: accepted})
                app.log("Budget cell eps=" + str(eps) + ", T=" + str(window) + ": proxy " + "{:.4g}".format(proxy),
                        PhiHeat_Logger.LEVEL_INFO)
                if best is None or proxy < best[2]:
                    best                                = (eps, window, proxy)
                if accepted:
                    return eps, window, proxy
                window                                  = window / 2
            eps                                         = eps / 2
        return self._give_up(best, epsilon, T)

    def _give_up(self, best, epsilon, T):
        if best is None:
            raise ContractionBudgetError(float("nan"), epsilon, T, delta=self.delta)
        raise ContractionBudgetError(best[2], best[0], best[1], delta=self.delta)

    def history_frame(self):
        S                                               = PhiHeatStatics
        return _pd.DataFrame(self.history, columns=[S.EPS_COL, S.WINDOW_COL, S.R_TOTAL_PROXY_COL, S.ACCEPTED_COL])
