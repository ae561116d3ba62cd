import numpy                                                        as _np

from phi_heat.spaces.holder_estimator                               import HolderEstimator
from phi_heat.util.expression                                       import Expression
from phi_heat.util.phi_heat_errors                                  import ConfigValidationError, ParameterError


class NonlinearRHS():

    '''
    Right-hand side ``F(u) = F1(u) + F2(u) + l`` of a semilinear problem ``P_a u = F(u)``.

    ``F1`` is meant to be Lipschitz on the ``mu`` ball, ``||F1(u) - F1(u')|| <= C ||u - u'||``, and ``F2`` to have
    the quadratic structure ``||F2(u) - F2(u')|| <= C max(||u||, ||u'||) ||u - u'||``. Terms are callables
    ``term(values, grid, times)`` acting on arrays of shape ``(n,) + grid.shape``; a missing term is zero.

    :param f1: the first term, or None
    :param f2: the second term, or None
    :param SpaceTimeField source: the ``u``-independent part ``l``, or None
    :param float mu: radius of the ball on which the Lipschitz structure is claimed
    '''
    F1                                                  = "F1"
    F2                                                  = "F2"

    # Bound style of each part: 1 for plain Lipschitz, 2 for the quadratic form
    STYLES                                              = {F1: 1, F2: 2}

    COORDINATE_NAMES                                    = ["x", "y", "z"]
    EXPRESSION_VARIABLES                                = ["u", "grad2", "x", "y", "z", "t"]

    def __init__(self, f1=None, f2=None, source=None, mu=_np.inf):

        if not mu > 0:
            raise ParameterError("The ball radius mu must be positive, got " + str(mu))
        self.f1                                         = f1
        self.f2                                         = f2
        self.source                                     = source
        self.mu                                         = float(mu)

    @staticmethod
    def linear_term(c):
        '''
        :return: the term ``c u``
        '''
        c                                               = float(c)
        return lambda values, grid, times: c * values

    @staticmethod
    def quadratic_term(c=1.0):
        '''
        :return: the term ``c u^2``
        '''
        c                                               = float(c)
        return lambda values, grid, times: c * values**2

    @staticmethod
    def gradient_quadratic_term(c=1.0):
        '''
        :return: the term ``c |grad_Phi u|^2``, summed over the Phi-frame
        '''
        c                                               = float(c)
        return lambda values, grid, times: c * NonlinearRHS.gradient_squared(values, grid)

    @staticmethod
    def gradient_squared(values, grid):
        total                                           = _np.zeros_like(values, dtype=float)
        for direction in range(len(grid.shape)):
            total                                       += HolderEstimator.frame_derivative(values, grid, direction)**2
        return total

    @staticmethod
    def expression_term(text, key="F_expr"):
        '''
        :param str text: expression over ``u``, ``grad2`` (for ``|grad_Phi u|^2``), ``x``, ``y``, ``z`` and ``t``
        :return: the term, or None when ``text`` is the constant 0
        '''
        expression                                      = Expression(text, NonlinearRHS.EXPRESSION_VARIABLES, key=key)
        if expression.is_constant() and float(expression.evaluate()) == 0.0:
            return None

        def term(values, grid, times):
            m                                           = len(grid.shape)
            env                                         = {"u": values,
                                                           "t": _np.asarray(times, dtype=float).reshape((-1,) + (1,) * m)}
            for name, coordinate in zip(NonlinearRHS.COORDINATE_NAMES, grid.coordinates()):
                env[name]                               = coordinate[None, ...]
            for name in NonlinearRHS.COORDINATE_NAMES[m:]:
                if expression.uses(name):
                    raise ConfigValidationError(key, "'" + expression.text + "' uses " + name + ", which model "
                                                + str(grid.model.identifier) + " does not have")
            if expression.uses("grad2"):
                env["grad2"]                            = NonlinearRHS.gradient_squared(values, grid)
            return _np.broadcast_to(expression.evaluate(**env), values.shape)

        return term

    @staticmethod
    def from_expressions(f1_expr="0", f2_expr="0", source=None, mu=_np.inf):
        return NonlinearRHS(NonlinearRHS.expression_term(f1_expr, key="F1_expr"),
                            NonlinearRHS.expression_term(f2_expr, key="F2_expr"), source=source, mu=mu)

    def is_zero(self):
        return self.f1 is None and self.f2 is None and (self.source is None or not _np.any(self.source.values))

    def term(self, part):
        if not part in self.STYLES.keys():
            raise ParameterError("Unknown part '" + str(part) + "', expected one of " + str(list(self.STYLES.keys())))
        return self.f1 if part == self.F1 else self.f2

    def window(self, first_step, n_steps):
        '''
        :return: the same right-hand side with its source restricted to a sub-window
        :rtype: NonlinearRHS
        '''
        source                                          = None if self.source is None \
                                                            else self.source.window(first_step, n_steps)
        return NonlinearRHS(self.f1, self.f2, source=source, mu=self.mu)

    def evaluate_part(self, part, u):
        '''
        :param str part: ``F1`` or ``F2``
        :param SpaceTimeField u: the field
        :return: the part applied to ``u``, without the source
        :rtype: SpaceTimeField
        '''
        fn                                              = self.term(part)
        values                                          = _np.zeros(u.shape) if fn is None \
                                                            else fn(u.values, u.grid, u.time_axis.times)
        return u.with_values(values, label=part + "(" + str(u.label) + ")")

    def evaluate(self, u):
        '''
        :param SpaceTimeField u: the field
        :return: ``F(u)``
        :rtype: SpaceTimeField
        '''
        values                                          = self._terms(u.values, u.grid, u.time_axis.times)
        if self.source is not None:
            if not self.source.compatible_with(u):
                raise ParameterError("The source of F lives on " + repr(self.source.time_axis) + " and grid "
                                     + str(self.source.grid.shape) + ", the field '" + str(u.label) + "' does not")
            values                                      = values + self.source.values
        return u.with_values(values, label="F(" + str(u.label) + ")")

    def evaluate_at(self, spatial, grid, t):
        '''
        :param spatial: values of ``u`` at time ``t``, grid shaped
        :return: ``F(u)`` at time ``t`` as a grid shaped array; the source is interpolated linearly in time
        '''
        values                                          = _np.asarray(spatial, dtype=float).reshape((1,) + tuple(grid.shape))
        result                                          = self._terms(values, grid, _np.array([float(t)]))[0]
        if self.source is not None:
            result                                      = result + self.source_at(t)
        return result

    def source_at(self, t):
        times                                           = self.source.time_axis.times
        if t < times[0] - 1e-12 or t > times[-1] + 1e-12:
            raise ParameterError("Time " + str(t) + " lies outside the source window [" + str(times[0]) + ", "
                                 + str(times[-1]) + "]")
        n                                               = int(min(max(_np.searchsorted(times, t) - 1, 0), len(times) - 2))
        w                                               = (t - times[n]) / (times[n + 1] - times[n])
        return (1 - w) * self.source.at(n) + w * self.source.at(n + 1)

    def _terms(self, values, grid, times):
        result                                          = _np.zeros(values.shape)
        for fn in (self.f1, self.f2):
            if fn is not None:
                result                                  = result + fn(values, grid, times)
        return result
