from pathlib                                                        import Path

import yaml                                                         as _yaml

from phi_heat.cli.run_config                                        import RunConfig
from phi_heat.util.expression                                       import Expression
from phi_heat.util.phi_heat_errors                                  import ConfigValidationError


class ConfigParser():

    '''
    Reads the line based run configuration format::

        # comment
        model   = B
        eps     = 0.25, 0.125, 0.0625      # a sweep
        x_min   = 1/64
        a_expr  = 1 + x/2 + x*sin(y)/4

    Values are YAML scalars; numeric values that YAML reads as text (``1/64``, ``2*pi``) are evaluated with the
    expression grammar. Comma separated values form a sweep. The ``*_expr`` keys keep their text as is.
    '''
    COMMENT                                             = "#"
    SEPARATOR                                           = "="
    LIST_SEPARATOR                                      = ","

    def __init__(self):
        pass

    def parse_config(self, text, check_coefficient=True):
        '''
        :param str text: the configuration
        :param bool check_coefficient: if True, ``a_expr`` is sampled on the grid of every cell against ``a_min``
        :rtype: RunConfig
        :raises ConfigValidationError: naming the offending key and the violated constraint
        '''
        values                                          = {}
        for number, raw in enumerate(str(text).splitlines(), start=1):
            line                                        = raw.split(self.COMMENT, 1)[0].strip()
            if len(line) == 0:
                continue
            if not self.SEPARATOR in line:
                raise ConfigValidationError("line " + str(number), "expected 'key = value', got '" + raw.strip() + "'")
            key, value                                  = [s.strip() for s in line.split(self.SEPARATOR, 1)]
            if len(key) == 0:
                raise ConfigValidationError("line " + str(number), "missing key in '" + raw.strip() + "'")
            if key in values.keys():
                raise ConfigValidationError(key, "given twice (second time on line " + str(number) + ")")
            values[key]                                 = self.parse_value(key, value)

        config                                          = RunConfig(values)
        if check_coefficient:
            config.check_coefficient()
        return config

    def parse_file(self, path, check_coefficient=True):
        p                                               = Path(path)
        if not p.exists():
            raise ConfigValidationError("--config", "file '" + str(path) + "' does not exist")
        return self.parse_config(p.read_text(), check_coefficient=check_coefficient)

    def parse_value(self, key, text):
        if key in RunConfig.EXPRESSION_KEYS:
            return text
        pieces                                          = [p.strip() for p in text.split(self.LIST_SEPARATOR)]
        if any(len(p) == 0 for p in pieces):
            raise ConfigValidationError(key, "empty entry in '" + text + "'")
        parsed                                          = [self._scalar(key, p) for p in pieces]
        return parsed if len(parsed) > 1 else parsed[0]

    def _scalar(self, key, text):
        try:
            value                                       = _yaml.safe_load(text)
        except _yaml.YAMLError:
            value                                       = text
        if isinstance(value, str) and not key in RunConfig.STRING_KEYS:
            return float(Expression(value, [], key=key).evaluate())
        if key in RunConfig.STRING_KEYS and value is not None:
            return str(value)
        return value
