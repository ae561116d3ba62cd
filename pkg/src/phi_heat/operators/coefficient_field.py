import numpy                                                        as _np

from phi_heat.spaces.space_time_field                               import SpaceTimeField
from phi_heat.util.phi_heat_errors                                  import HypothesisViolationError, ParameterError


class CoefficientField():

    '''
    The coefficient ``a(p, t)`` of the heat operator ``P_a = d_t + a Delta``, sampled on a grid and time axis.

    The standing hypothesis is ``a >= a_min > 0``; it is enforced on construction. When the field was built from a
    callable, the callable is kept so that frozen values can be taken at boundary points ``x = 0`` that are not
    grid nodes.

    :param SpaceTimeField field: the samples
    :param float a_min: lower bound required of the samples
    :param float beta: Hoelder exponent the coefficient is assumed to have, or None
    :param function: optional callable ``fn(x, y..., z..., t)`` the samples were taken from
    '''
    def __init__(self, field, a_min, beta=None, function=None):

        if not a_min > 0:
            raise HypothesisViolationError("The coefficient bound a_min must be positive, got " + str(a_min))
        lowest                                          = float(_np.min(field.values))
        if lowest < a_min:
            idx                                         = _np.unravel_index(int(_np.argmin(field.values)), field.shape)
            raise HypothesisViolationError("Coefficient drops to " + str(lowest) + " < a_min=" + str(a_min)
                                           + " at time node " + str(idx[0]) + ", grid index " + str(idx[1:])
                                           + "\n\t==> The heat operator needs a coefficient bounded away from 0")

        self.field                                      = field
        self.grid                                       = field.grid
        self.time_axis                                  = field.time_axis
        self.a_min                                      = float(a_min)
        self.a_max                                      = float(_np.max(field.values))
        self.beta                                       = beta
        self.function                                   = function

    @staticmethod
    def constant(grid, time_axis, c, a_min=None):
        '''
        :return: the coefficient identically equal to ``c``
        :rtype: CoefficientField
        '''
        values                                          = _np.full((len(time_axis),) + tuple(grid.shape), float(c))
        field                                           = SpaceTimeField(values, grid, time_axis, label="a")
        fn                                              = lambda *args: _np.full(_np.broadcast(*args).shape, float(c))
        return CoefficientField(field, c if a_min is None else a_min, function=fn)

    @staticmethod
    def from_function(grid, time_axis, fn, a_min, beta=None):
        field                                           = SpaceTimeField.from_function(grid, time_axis, fn, label="a")
        return CoefficientField(field, a_min, beta=beta, function=fn)

    def at(self, n):
        '''
        :return: flat array of the coefficient at time node ``n``
        '''
        return self.field.at(n).ravel()

    def is_time_independent(self):
        return bool(_np.all(self.field.values == self.field.values[:1]))

    def is_constant(self):
        return self.a_max == float(_np.min(self.field.values))

    def frozen_at(self, point):
        '''
        Value ``a(p_bar, t_0)`` at a point, typically a boundary anchor with ``x = 0``, at the first time of the axis.

        The callable is used when available and finite there; otherwise the sample at the ``x_min`` node closest
        to ``point`` is used.

        :raises HypothesisViolationError: if the frozen value is not positive
        :rtype: float
        '''
        P                                               = _np.asarray(point, dtype=float).ravel()
        value                                           = None
        if self.function is not None:
            with _np.errstate(all="ignore"):
                raw                                     = _np.asarray(self.function(*P, self.time_axis.start), dtype=float)
            if raw.size == 1 and _np.isfinite(raw).all():
                value                                   = float(raw)
        if value is None:
            value                                       = float(self.field.at(0)[self._nearest_index(P)])
        if not value > 0:
            raise HypothesisViolationError("Frozen coefficient a=" + str(value) + " at " + str(tuple(P))
                                           + " is not positive")
        return value

    def _nearest_index(self, P):
        grid                                            = self.grid
        idx                                             = [int(_np.argmin(_np.abs(grid.x_nodes - P[0])))]
        for a, n in enumerate(grid.periodic_counts):
            idx.append(int(round(P[1 + a] / grid.periodic_spacings[a])) % n)
        return tuple(idx)

    def window(self, first_step, n_steps):
        '''
        :return: the coefficient restricted to a sub-window of the time axis
        :rtype: CoefficientField
        '''
        return CoefficientField(self.field.window(first_step, n_steps), self.a_min, beta=self.beta,
                                function=self.function)

    def on_grid(self, grid, source_index):
        '''
        Resamples the coefficient on another grid by picking, for each node, the sample at a node of this grid.

        :param PhiGrid grid: target grid
        :param source_index: integer array of the target grid shape with flat indices into this grid
        :rtype: CoefficientField
        '''
        flat                                            = self.field.flat()
        values                                          = flat[:, _np.asarray(source_index).ravel()]
        field                                           = SpaceTimeField(values.reshape((len(self.time_axis),) + tuple(grid.shape)),
                                                                         grid, self.time_axis, label="a")
        return CoefficientField(field, self.a_min, beta=self.beta)

    def check_compatible(self, grid, time_axis):
        if not (self.grid.same_as(grid) and self.time_axis.same_as(time_axis)):
            raise ParameterError("Coefficient lives on grid " + str(self.grid.shape) + " / " + repr(self.time_axis)
                                 + ", expected " + str(grid.shape) + " / " + repr(time_axis))
