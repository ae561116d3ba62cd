import numpy                                                        as _np


class EnvelopeTrace():

    '''
    The envelopes ``u_sup(t_n) = max_p u(p, t_n)`` and ``u_inf(t_n) = min_p u(p, t_n)`` of a field, where they are
    attained, and step-wise monotonicity flags.

    ``sup_flags[n]`` states ``u_sup(t_n) <= u_sup(t_{n-1}) + tol`` and ``inf_flags[n]`` states
    ``u_inf(t_n) >= u_inf(t_{n-1}) - tol``; both flags are True at ``n = 0``. The one-sided difference quotients
    ``(u_sup(t_n) - u_sup(t_{n-1}))/h`` are kept for inspection, with NaN at ``n = 0``.

    :param times: the time nodes
    :param u_sup: sup per time node
    :param u_inf: inf per time node
    :param argmax: flat grid index of the sup per time node
    :param argmin: flat grid index of the inf per time node
    :param float tol: tolerance of the flags
    '''
    def __init__(self, times, u_sup, u_inf, argmax, argmin, tol):

        self.times                                      = _np.asarray(times, dtype=float)
        self.u_sup                                      = _np.asarray(u_sup, dtype=float)
        self.u_inf                                      = _np.asarray(u_inf, dtype=float)
        self.argmax                                     = _np.asarray(argmax, dtype=int)
        self.argmin                                     = _np.asarray(argmin, dtype=int)
        self.tol                                        = float(tol)

        n                                               = len(self.times)
        self.sup_flags                                  = _np.ones(n, dtype=bool)
        self.inf_flags                                  = _np.ones(n, dtype=bool)
        self.sup_quotients                              = _np.full(n, _np.nan)
        self.inf_quotients                              = _np.full(n, _np.nan)
        if n > 1:
            h                                           = _np.diff(self.times)
            self.sup_flags[1:]                          = self.u_sup[1:] <= self.u_sup[:-1] + self.tol
            self.inf_flags[1:]                          = self.u_inf[1:] >= self.u_inf[:-1] - self.tol
            self.sup_quotients[1:]                      = _np.diff(self.u_sup) / h
            self.inf_quotients[1:]                      = _np.diff(self.u_inf) / h

    def sup_non_increasing(self):
        return bool(_np.all(self.sup_flags))

    def inf_non_decreasing(self):
        return bool(_np.all(self.inf_flags))

    def first_violation(self):
        '''
        :return: index of the first time node where a flag fails, or None
        '''
        bad                                             = _np.flatnonzero(~(self.sup_flags & self.inf_flags))
        return int(bad[0]) if len(bad) > 0 else None
