import numpy                                                        as _np

from phi_heat.util.phi_heat_errors                                  import ParameterError


class SpaceTimeField():

    '''
    Function ``u(p, t)`` sampled on a :class:`PhiGrid` times a :class:`TimeAxis`.

    ``values`` has shape ``(nt + 1,) + grid.shape``, time first. Fields are immutable: the constructor takes a
    private copy and marks it read only, and every operation returns a new field.

    :param values: array of samples
    :param PhiGrid grid: spatial grid
    :param TimeAxis time_axis: time grid
    :param float gamma: weight exponent, i.e. the field is meant to be measured in ``x^gamma C^alpha``
    :param str label: free-form identifier used in reports
    '''
    # Lets numpy defer to the reflected operators of this class, e.g. for ``array * field``
    __array_ufunc__                                     = None

    def __init__(self, values, grid, time_axis, gamma=0.0, label=""):

        V                                               = _np.array(values, dtype=float)
        expected                                        = (len(time_axis),) + tuple(grid.shape)
        if V.shape != expected:
            raise ParameterError("Field '" + str(label) + "' has shape " + str(V.shape) + ", expected " + str(expected))
        if not _np.all(_np.isfinite(V)):
            raise ParameterError("Field '" + str(label) + "' has non-finite values")

        V.setflags(write=False)
        self.values                                     = V
        self.grid                                       = grid
        self.time_axis                                  = time_axis
        self.gamma                                      = float(gamma)
        self.label                                      = label

    @staticmethod
    def from_function(grid, time_axis, fn, gamma=0.0, label=""):
        '''
        :param fn: callable ``fn(x, y..., z..., t)`` evaluated on broadcast coordinate arrays
        :rtype: SpaceTimeField
        '''
        coords                                          = [c[None, ...] for c in grid.coordinates()]
        t                                               = time_axis.times.reshape((-1,) + (1,) * len(grid.shape))
        raw                                             = fn(*coords, t)
        values                                          = _np.broadcast_to(_np.asarray(raw, dtype=float),
                                                                           (len(time_axis),) + tuple(grid.shape))
        return SpaceTimeField(values, grid, time_axis, gamma=gamma, label=label)

    @staticmethod
    def constant_in_time(grid, time_axis, spatial, gamma=0.0, label=""):
        S                                               = _np.asarray(spatial, dtype=float).reshape(grid.shape)
        values                                          = _np.broadcast_to(S, (len(time_axis),) + tuple(grid.shape))
        return SpaceTimeField(values, grid, time_axis, gamma=gamma, label=label)

    @staticmethod
    def zeros(grid, time_axis, label=""):
        return SpaceTimeField(_np.zeros((len(time_axis),) + tuple(grid.shape)), grid, time_axis, label=label)

    @property
    def shape(self):
        return self.values.shape

    def is_empty(self):
        return self.values.size == 0

    def at(self, n):
        '''
        :return: the spatial slice at time node ``n`` (read only)
        '''
        return self.values[n]

    def flat(self):
        '''
        :return: view of the values as an array of shape ``(nt + 1, grid.size)``
        '''
        return self.values.reshape(len(self.time_axis), -1)

    def with_values(self, values, label=None):
        return SpaceTimeField(values, self.grid, self.time_axis, gamma=self.gamma,
                              label=self.label if label is None else label)

    def window(self, first_step, n_steps):
        '''
        :return: the restriction of this field to the sub-window of ``n_steps`` steps starting at ``first_step``
        '''
        if first_step + n_steps > self.time_axis.nt:
            raise ParameterError("Window [" + str(first_step) + ", " + str(first_step + n_steps)
                                 + "] exceeds the field's " + str(self.time_axis.nt) + " steps")
        axis                                            = self.time_axis.window(first_step, n_steps)
        return SpaceTimeField(self.values[first_step:first_step + n_steps + 1], self.grid, axis,
                              gamma=self.gamma, label=self.label)

    def compatible_with(self, other):
        return self.grid.same_as(other.grid) and self.time_axis.same_as(other.time_axis)

    def _check(self, other):
        if not self.compatible_with(other):
            raise ParameterError("Fields '" + str(self.label) + "' and '" + str(other.label)
                                 + "' live on different grids or time axes")

    def __add__(self, other):
        if isinstance(other, SpaceTimeField):
            self._check(other)
            return self.with_values(self.values + other.values)
        return self.with_values(self.values + other)

    def __sub__(self, other):
        if isinstance(other, SpaceTimeField):
            self._check(other)
            return self.with_values(self.values - other.values)
        return self.with_values(self.values - other)

    def __mul__(self, other):
        if isinstance(other, SpaceTimeField):
            self._check(other)
            return self.with_values(self.values * other.values)
        return self.with_values(self.values * other)

    __rmul__                                            = __mul__

    def __neg__(self):
        return self.with_values(-self.values)

    def __repr__(self):
        return "SpaceTimeField('" + str(self.label) + "', shape=" + str(self.shape) + ")"
