import numpy                                                        as _np
import pandas                                                       as _pd
import scipy.stats                                                  as _stats

from phi_heat.util.phi_heat_errors                                  import ParameterError
from phi_heat.util.phi_heat_statics                                 import PhiHeatStatics


class ErrorScaling():

    '''
    Small-time behaviour of the error-operator proxies over a ``T`` sweep, one row per ``eps``.

    The coefficient-freezing part ``R1`` should scale like ``T^(alpha/2)``: its ``log proxy`` against ``log T``
    is fitted with a straight line whose slope must be within :attr:`R1_SLOPE_SLACK` of ``alpha/2``. The
    commutator parts ``R2`` and ``R3`` should vanish as ``T -> 0``: every time ``T`` drops by a factor of at least
    4, their proxy must drop to at most :attr:`SHRINK_BOUND` of its previous value.

    :param float alpha: Hölder exponent of the norm the proxies were measured in
    '''
    R1_SLOPE_SLACK                                      = 0.15
    SHRINK_BOUND                                        = 0.7
    SHRINK_STEP                                         = 4.0

    def __init__(self, alpha):

        if not 0 < alpha < 1:
            raise ParameterError("Hölder exponent must lie in (0, 1), got " + str(alpha))
        self.alpha                                      = float(alpha)

    @property
    def expected_r1_slope(self):
        return self.alpha / 2

    def r1_slope(self, T, proxies):
        '''
        :return: slope of ``log proxy`` against ``log T``, or nan when fewer than two cells have a positive proxy
        '''
        T, proxies                                      = _np.asarray(T, dtype=float), _np.asarray(proxies, dtype=float)
        keep                                            = _np.isfinite(proxies) & (proxies > 0)
        if _np.unique(T[keep]).size < 2:
            return float("nan")
        return float(_stats.linregress(_np.log(T[keep]), _np.log(proxies[keep])).slope)

    def worst_shrink(self, T, proxies):
        '''
        :return: the largest ``proxy(T') / proxy(T)`` over pairs of consecutive windows ``T' <= T / 4``;
            0 when every such proxy already vanishes, nan when the sweep has no such pair
        '''
        order                                           = _np.argsort(T)[::-1]
        T, proxies                                      = _np.asarray(T, dtype=float)[order], _np.asarray(proxies, dtype=float)[order]
        worst                                           = float("nan")
        for k in range(len(T) - 1):
            if T[k + 1] * self.SHRINK_STEP > T[k] * (1 + 1e-9):
                continue
            if proxies[k] > 0:
                ratio                                   = proxies[k + 1] / proxies[k]
            else:
                ratio                                   = 0.0 if proxies[k + 1] == 0 else float("inf")
            worst                                       = ratio if _np.isnan(worst) else max(worst, ratio)
        return worst

    def fit(self, phase):
        '''
        :param pandas.DataFrame phase: one row per cell, with the columns of ``phase.csv``
        :return: one row per ``eps`` with the ``R1`` slope and the worst ``R2``, ``R3`` shrink factors
        :rtype: pandas.DataFrame
        '''
        S                                               = PhiHeatStatics
        rows                                            = []
        for eps, cells in phase.groupby(S.EPS_COL, sort=False):
            T                                           = cells[S.WINDOW_COL].to_numpy()
            rows.append({S.EPS_COL:                     eps,
                         S.CELLS_COL:                   len(cells),
                         S.R1_SLOPE_COL:                self.r1_slope(T, cells[S.R1_PROXY_COL].to_numpy()),
                         S.R1_EXPECTED_SLOPE_COL:       self.expected_r1_slope,
                         S.R2_SHRINK_COL:               self.worst_shrink(T, cells[S.R2_PROXY_COL].to_numpy()),
                         S.R3_SHRINK_COL:               self.worst_shrink(T, cells[S.R3_PROXY_COL].to_numpy())})
        return _pd.DataFrame(rows)

    def checks(self, scaling):
        '''
        :param pandas.DataFrame scaling: the output of :meth:`fit`
        :return: named pass/fail outcomes. Checks whose statistic is nan (too few windows, or an ``R1`` that
            vanishes identically for a constant coefficient) are left out.
        :rtype: dict
        '''
        S                                               = PhiHeatStatics
        result                                          = {}
        for _, row in scaling.iterrows():
            suffix                                      = "_eps_" + str(row[S.EPS_COL])
            slope                                       = row[S.R1_SLOPE_COL]
            if _np.isfinite(slope):
                result["r1_slope" + suffix]             = bool(abs(slope - self.expected_r1_slope) <= self.R1_SLOPE_SLACK)
            for name, col in [("r2_shrinks", S.R2_SHRINK_COL), ("r3_shrinks", S.R3_SHRINK_COL)]:
                if not _np.isnan(row[col]):
                    result[name + suffix]               = bool(row[col] <= self.SHRINK_BOUND)
        return result
