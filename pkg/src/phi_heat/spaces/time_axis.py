import numpy                                                        as _np

from phi_heat.util.phi_heat_errors                                  import ParameterError


class TimeAxis():

    '''
    Uniform time grid ``t_n = start + n*h`` for ``n = 0, ..., nt`` with ``h = T/nt``.

    :param float T: window length
    :param int nt: number of time steps
    :param float start: absolute time of the first node, nonzero for windows that continue an earlier solve
    '''
    def __init__(self, T, nt, start=0.0):

        if not T > 0:
            raise ParameterError("Time window must be positive, got T=" + str(T))
        if int(nt) != nt or nt < 1:
            raise ParameterError("Number of time steps must be a positive integer, got nt=" + str(nt))

        self.T                                          = float(T)
        self.nt                                         = int(nt)
        self.start                                      = float(start)
        self.h                                          = self.T / self.nt
        self.times                                      = self.start + _np.linspace(0.0, self.T, self.nt + 1)
        self.times.setflags(write=False)

    def __len__(self):
        return self.nt + 1

    def __repr__(self):
        return "TimeAxis(T=" + str(self.T) + ", nt=" + str(self.nt) + ", start=" + str(self.start) + ")"

    def steps_for(self, duration):
        '''
        :return: number of steps covering ``duration``
        :rtype: int
        '''
        if duration < 0:
            raise ParameterError("Duration must be nonnegative, got " + str(duration))
        n                                               = int(round(duration / self.h))
        if abs(n * self.h - duration) > 1e-9 * max(1.0, abs(duration)):
            raise ParameterError("Duration " + str(duration) + " is not a multiple of the time step " + str(self.h))
        return n

    def window(self, first_step, n_steps):
        '''
        :return: the axis of the sub-window made of ``n_steps`` steps starting at node ``first_step``
        :rtype: TimeAxis
        '''
        if first_step < 0 or n_steps < 1:
            raise ParameterError("Invalid window: first_step=" + str(first_step) + ", n_steps=" + str(n_steps))
        return TimeAxis(n_steps * self.h, n_steps, start=self.start + first_step * self.h)

    def same_as(self, other):
        return self.nt == other.nt and abs(self.T - other.T) <= 1e-14 * self.T \
                    and abs(self.start - other.start) <= 1e-14 * max(1.0, abs(self.start))
