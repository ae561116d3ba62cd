import itertools                                                    as _itertools

from phi_heat.geometry.manifold_model_factory                       import ManifoldModelFactory
from phi_heat.geometry.phi_grid                                     import PhiGrid
from phi_heat.operators.coefficient_field                           import CoefficientField
from phi_heat.parametrix.parametrix_config                          import ParametrixConfig
from phi_heat.spaces.norm_spec                                      import NormSpec
from phi_heat.spaces.space_time_field                               import SpaceTimeField
from phi_heat.spaces.time_axis                                      import TimeAxis
from phi_heat.util.expression                                       import Expression
from phi_heat.util.phi_heat_errors                                  import ConfigValidationError, PhiHeatError
from phi_heat.util.phi_heat_statics                                 import PhiHeatStatics


class RunConfig():

    '''
    Validated settings of one run. Keys, their types and their defaults are listed in :attr:`DEFAULTS`.

    A key may hold a list of values (a sweep). :meth:`cells` expands the lists that a subcommand does not consume
    itself into one scalar configuration per combination.

    :param dict values: settings by key; missing keys take their defaults
    '''
    DEFAULTS                                            = {"model":         PhiHeatStatics.MODEL_A,
                                                           "grid_nx":       64,
                                                           "grid_ny":       32,
                                                           "grid_nz":       16,
                                                           "x_min":         1 / 64,
                                                           "x_max":         1.0,
                                                           "x_spacing":     PhiGrid.GEOMETRIC,
                                                           "eps":           1 / 8,
                                                           "vartheta":      0.5,
                                                           "alpha":         0.5,
                                                           "beta":          0.75,
                                                           "gamma":         0.0,
                                                           "delta":         0.5,
                                                           "T":             0.05,
                                                           "nt":            20,
                                                           "ht":            None,
                                                           "theta":         0.5,
                                                           "a_min":         0.01,
                                                           "a_expr":        "1",
                                                           "rhs_expr":      "0",
                                                           "u0_expr":       "0",
                                                           "F1_expr":       "0",
                                                           "F2_expr":       "0",
                                                           "T_prime":       None,
                                                           "tol":           1e-8,
                                                           "max_iter":      30,
                                                           "pair_budget":   2000,
                                                           "probe_count":   20,
                                                           "neumann_max":   12,
                                                           "seed":          0,
                                                           "workers":       1,
                                                           "oracle_t0":     2.0,
                                                           "oracle_r0":     10.0,
                                                           "oracle_levels": 2,
                                                           "glue_lambda":   None,
                                                           "mask_timings":  False}

    INT_KEYS                                            = ["grid_nx", "grid_ny", "grid_nz", "nt", "max_iter", "pair_budget",
                                                           "probe_count", "neumann_max", "seed", "workers", "oracle_levels"]
    BOOL_KEYS                                           = ["mask_timings"]
    STRING_KEYS                                         = ["model", "x_spacing"]
    EXPRESSION_KEYS                                     = ["a_expr", "rhs_expr", "u0_expr", "F1_expr", "F2_expr"]
    FLOAT_KEYS                                          = [k for k, excluded in zip(DEFAULTS.keys(), _itertools.repeat(INT_KEYS + BOOL_KEYS + STRING_KEYS + EXPRESSION_KEYS))
                                                           if not k in excluded]

    # Each level of the oracle refinement study has 2**m times the nodes of the previous one
    MAX_ORACLE_LEVELS                                   = 4

    # Variables of the coefficient and data expressions
    FIELD_VARIABLES                                     = ["x", "y", "z", "t"]

    def __init__(self, values=None):

        settings                                        = dict(self.DEFAULTS)
        values                                          = {} if values is None else dict(values)
        unknown                                         = [k for k in values.keys() if not k in self.DEFAULTS.keys()]
        if len(unknown) > 0:
            raise ConfigValidationError(unknown[0], "unknown key. Valid keys are " + ", ".join(self.DEFAULTS.keys()))
        settings.update(values)
        self.values                                     = settings
        self.validate()

    def __getitem__(self, key):
        return self.values[key]

    def to_dict(self):
        return dict(self.values)

    def but(self, **overrides):
        values                                          = dict(self.values)
        values.update(overrides)
        return RunConfig(values)

    def sweep_keys(self):
        return [k for k, v in self.values.items() if isinstance(v, list)]

    def cells(self, consumed=()):
        '''
        :param consumed: keys whose lists the caller handles itself
        :return: one configuration per combination of the remaining lists, in row-major order of the keys
        :rtype: list
        '''
        keys                                            = [k for k in self.sweep_keys() if not k in consumed]
        if len(keys) == 0:
            return [self]
        combos                                          = _itertools.product(*[self.values[k] for k in keys])
        return [self.but(**dict(zip(keys, combo))) for combo in combos]

    def scalars(self, key):
        '''
        :return: the values of ``key`` as a list, whether it is swept or not
        '''
        v                                               = self.values[key]
        return list(v) if isinstance(v, list) else [v]

    def validate(self):
        for key, value in self.values.items():
            if isinstance(value, list):
                if key in self.EXPRESSION_KEYS + self.STRING_KEYS + self.BOOL_KEYS:
                    raise ConfigValidationError(key, "cannot be swept")
                if len(value) == 0:
                    raise ConfigValidationError(key, "empty list")
                self.values[key]                        = [self._coerce(key, v) for v in value]
            else:
                self.values[key]                        = self._coerce(key, value)

        for combo in self._corners():
            self._validate_scalars(combo)
        for key in self.EXPRESSION_KEYS:
            self.expression(key)

    def _corners(self):
        '''
        :return: every combination of swept values, as plain dicts
        '''
        keys                                            = self.sweep_keys()
        if len(keys) == 0:
            return [self.values]
        result                                          = []
        for combo in _itertools.product(*[self.values[k] for k in keys]):
            v                                           = dict(self.values)
            v.update(zip(keys, combo))
            result.append(v)
        return result

    def _coerce(self, key, value):
        if value is None:
            if self.DEFAULTS[key] is None:
                return None
            raise ConfigValidationError(key, "a value is required")
        if key in self.INT_KEYS:
            if isinstance(value, bool) or not float(value) == int(float(value)):
                raise ConfigValidationError(key, "must be an integer, got " + repr(value))
            return int(float(value))
        if key in self.BOOL_KEYS:
            if not isinstance(value, bool):
                raise ConfigValidationError(key, "must be true or false, got " + repr(value))
            return value
        if key in self.FLOAT_KEYS:
            if isinstance(value, bool):
                raise ConfigValidationError(key, "must be a number, got " + repr(value))
            try:
                return float(value)
            except (TypeError, ValueError):
                raise ConfigValidationError(key, "must be a number, got " + repr(value))
        return str(value)

    def _validate_scalars(self, v):
        if not 0 < v["alpha"] < 1:
            raise ConfigValidationError("alpha", "must lie in (0, 1), got " + str(v["alpha"]))
        if not v["alpha"] < v["beta"] <= 1:
            raise ConfigValidationError("beta", "the heat operator needs alpha < beta <= 1, got alpha="
                                        + str(v["alpha"]) + ", beta=" + str(v["beta"]))
        for key in ["eps", "vartheta", "delta"]:
            if not 0 < v[key] < 1:
                raise ConfigValidationError(key, "must lie in (0, 1), got " + str(v[key]))
        if not 0 < v["theta"] <= 1:
            raise ConfigValidationError("theta", "must lie in (0, 1], got " + str(v["theta"]))
        for key in ["T", "a_min", "tol", "oracle_t0", "oracle_r0"]:
            if not v[key] > 0:
                raise ConfigValidationError(key, "must be positive, got " + str(v[key]))
        if not 0 < v["x_min"] < v["x_max"]:
            raise ConfigValidationError("x_min", "need 0 < x_min < x_max, got x_min=" + str(v["x_min"])
                                        + ", x_max=" + str(v["x_max"]))
        for key in ["grid_nx", "grid_ny", "grid_nz", "nt", "max_iter", "neumann_max", "workers"]:
            if v[key] < 1:
                raise ConfigValidationError(key, "must be at least 1, got " + str(v[key]))
        if not 1 <= v["oracle_levels"] <= self.MAX_ORACLE_LEVELS:
            raise ConfigValidationError("oracle_levels", "must lie in [1, " + str(self.MAX_ORACLE_LEVELS) + "], got "
                                        + str(v["oracle_levels"]))
        if v["neumann_max"] > ParametrixConfig.MAX_NEUMANN_TERMS:
            raise ConfigValidationError("neumann_max", "the Neumann series is capped at "
                                        + str(ParametrixConfig.MAX_NEUMANN_TERMS) + " terms, got " + str(v["neumann_max"]))
        if v["ht"] is not None:
            self._steps(v["T"], v["ht"], "ht")
        if v["T_prime"] is not None and not 0 < v["T_prime"] <= v["T"]:
            raise ConfigValidationError("T_prime", "need 0 < T_prime <= T, got " + str(v["T_prime"]))
        if v["glue_lambda"] is not None and not 0 < v["glue_lambda"] < v["T"]:
            raise ConfigValidationError("glue_lambda", "need 0 < glue_lambda < T, got " + str(v["glue_lambda"]))
        if not v["x_spacing"] in [PhiGrid.GEOMETRIC, PhiGrid.UNIFORM]:
            raise ConfigValidationError("x_spacing", "must be '" + PhiGrid.GEOMETRIC + "' or '" + PhiGrid.UNIFORM
                                        + "', got '" + str(v["x_spacing"]) + "'")
        if not str(v["model"]).strip().upper().replace("MODEL", "") in ManifoldModelFactory.DIMENSIONS.keys():
            raise ConfigValidationError("model", "must be one of " + ", ".join(ManifoldModelFactory.DIMENSIONS.keys())
                                        + ", got '" + str(v["model"]) + "'")

    @staticmethod
    def _steps(T, ht, key):
        n                                               = int(round(T / ht))
        if n < 1 or abs(n * ht - T) > 1e-9 * T:
            raise ConfigValidationError(key, "the time step must divide T=" + str(T) + ", got " + str(ht))
        return n

    def steps(self, T=None):
        '''
        :return: the number of time steps of the window ``T``: ``nt``, or ``T/ht`` when ``ht`` is set
        '''
        if self.values["ht"] is None:
            return self.values["nt"]
        return self._steps(self.values["T"] if T is None else T, self.values["ht"], "ht")

    def expression(self, key):
        variables                                       = ["u", "grad2"] + self.FIELD_VARIABLES \
                                                            if key in ["F1_expr", "F2_expr"] else self.FIELD_VARIABLES
        return Expression(self.values[key], variables, key=key)

    def model(self):
        return ManifoldModelFactory().create(self.values["model"], x_min=self.values["x_min"],
                                             x_max=self.values["x_max"])

    def grid(self, model=None):
        model                                           = self.model() if model is None else model
        return PhiGrid(model, self.values["grid_nx"], ny=self.values["grid_ny"], nz=self.values["grid_nz"],
                       spacing=self.values["x_spacing"])

    def time_axis(self, T=None):
        '''
        :return: the time axis of the window ``T`` (the configured one by default), with the configured number of steps
        '''
        T                                               = self.values["T"] if T is None else T
        return TimeAxis(T, self.steps(T))

    def norm_spec(self, k=0):
        return NormSpec(self.values["alpha"], k=k, gamma=self.values["gamma"], pair_budget=self.values["pair_budget"],
                        seed=self.values["seed"])

    def field(self, key, grid, time_axis):
        '''
        :return: the expression ``key`` sampled on ``grid`` and ``time_axis``
        :rtype: SpaceTimeField
        '''
        return SpaceTimeField.from_function(grid, time_axis, self.function(key, grid), label=key)

    def function(self, key, grid):
        '''
        :return: the expression ``key`` as a callable ``fn(x, y..., z..., t)`` for the coordinates of ``grid``
        '''
        expression                                      = self.expression(key)
        m                                               = len(grid.shape)
        names                                           = self.FIELD_VARIABLES[:m]
        for name in self.FIELD_VARIABLES[m:3]:
            if expression.uses(name):
                raise ConfigValidationError(key, "'" + expression.text + "' uses " + name + ", which model "
                                            + str(grid.model.identifier) + " does not have")

        def fn(*args):
            env                                         = dict(zip(names, args[:m]))
            env["t"]                                    = args[-1]
            return expression.evaluate(**{n: env[n] for n in expression.names})

        return fn

    def coefficient(self, grid, time_axis):
        '''
        :return: the coefficient ``a_expr``, checked against ``a_min`` on the grid
        :rtype: CoefficientField
        :raises ConfigValidationError: if ``a_expr`` drops below ``a_min`` somewhere on the grid
        '''
        try:
            return CoefficientField.from_function(grid, time_axis, self.function("a_expr", grid), self.values["a_min"],
                                                  beta=self.values["beta"])
        except PhiHeatError as ex:
            if isinstance(ex, ConfigValidationError):
                raise
            raise ConfigValidationError("a_expr", str(ex).split("\n")[0])

    def check_coefficient(self):
        '''
        Samples ``a_expr`` on the grid and time axis of every cell of the sweep.
        '''
        for v in self._corners():
            cell                                        = RunConfig({k: x for k, x in v.items()})
            cell.coefficient(cell.grid(), cell.time_axis())
