import io                                                           as _io
import tokenize                                                     as _tokenize

import numpy                                                        as _np
import sympy                                                        as _sym
from sympy.parsing.sympy_parser                                     import auto_number, auto_symbol, parse_expr

from phi_heat.util.phi_heat_errors                                  import ConfigValidationError


class Expression():

    '''
    A small arithmetic expression over named array variables, such as ``1 + 0.5*x`` or ``u**2 + sin(y)``.

    The grammar is: numbers, the variables passed at construction, ``pi``, the operators ``+ - * / **``,
    parentheses, and one-argument calls of the functions in :attr:`FUNCTIONS`. The text is screened token by
    token against that grammar, then parsed by sympy in a namespace that holds nothing else. Evaluation goes
    through a numpy function generated with ``sympy.lambdify``.

    :param str text: the expression
    :param variables: names the expression may refer to
    :param str key: configuration key the expression came from, used in error messages
    '''
    FUNCTIONS                                           = {"sin":   _sym.sin,
                                                           "cos":   _sym.cos,
                                                           "tan":   _sym.tan,
                                                           "exp":   _sym.exp,
                                                           "log":   _sym.log,
                                                           "sqrt":  _sym.sqrt,
                                                           "abs":   _sym.Abs,
                                                           "tanh":  _sym.tanh}

    CONSTANTS                                           = {"pi":    _sym.pi}

    OPERATORS                                           = ["+", "-", "*", "/", "**", "(", ")"]

    # Names the parser's own transformations emit
    _PARSER_NAMES                                       = {"Integer": _sym.Integer, "Float": _sym.Float,
                                                           "Symbol": _sym.Symbol}

    def __init__(self, text, variables, key="expression"):

        self.text                                       = str(text).strip()
        self.variables                                  = tuple(variables)
        self.key                                        = key
        if len(self.text) == 0:
            raise ConfigValidationError(key, "expression is empty")
        self._screen()

        symbols                                         = {name: _sym.Symbol(name) for name in self.variables}
        namespace                                       = dict(self._PARSER_NAMES)
        namespace.update(self.FUNCTIONS)
        namespace.update(self.CONSTANTS)
        namespace["__builtins__"]                       = {}
        try:
            expr                                        = parse_expr(self.text, local_dict=symbols, global_dict=namespace,
                                                                     transformations=(auto_symbol, auto_number))
        except (SyntaxError, TypeError, ValueError, _tokenize.TokenError) as ex:
            raise ConfigValidationError(key, "cannot parse '" + self.text + "': " + str(ex).split("\n")[0])
        if not isinstance(expr, _sym.Expr):
            self._reject("a non-arithmetic construct")
        if expr.has(_sym.I, _sym.zoo, _sym.nan, _sym.oo, -_sym.oo):
            self._reject("a value that is not a finite real number (" + str(expr) + ")")

        self.symbolic                                   = expr
        self.names                                      = {str(s) for s in expr.free_symbols}
        ordered                                         = [n for n in self.variables if n in self.names]
        self._arguments                                 = ordered
        self._function                                  = _sym.lambdify([symbols[n] for n in ordered], expr, modules="numpy")

    def __repr__(self):
        return "Expression('" + self.text + "')"

    def uses(self, name):
        return name in self.names

    def is_constant(self):
        '''
        :return: True if the expression refers to no variable
        '''
        return len(self.names) == 0

    def evaluate(self, **values):
        '''
        :param values: arrays (or scalars) for the variables the expression uses; they must broadcast together
        :return: the value, as a float array
        '''
        missing                                         = [n for n in self.names if not n in values.keys()]
        if len(missing) > 0:
            raise ConfigValidationError(self.key, "no value supplied for " + ", ".join(sorted(missing)))
        with _np.errstate(all="ignore"):
            result                                      = self._function(*[values[n] for n in self._arguments])
        return _np.asarray(result, dtype=float)

    def _screen(self):
        allowed                                         = set(self.variables) | set(self.FUNCTIONS.keys()) \
                                                            | set(self.CONSTANTS.keys())
        try:
            tokens                                      = list(_tokenize.generate_tokens(_io.StringIO(self.text).readline))
        except (_tokenize.TokenError, SyntaxError) as ex:
            raise ConfigValidationError(self.key, "cannot parse '" + self.text + "': " + str(ex))
        for tok in tokens:
            if tok.type in (_tokenize.NEWLINE, _tokenize.NL, _tokenize.ENDMARKER):
                continue
            if tok.type == _tokenize.NUMBER:
                if tok.string[-1] in "jJ":
                    self._reject("complex literal " + tok.string)
                continue
            if tok.type == _tokenize.NAME:
                if not tok.string in allowed:
                    self._reject("unknown name '" + tok.string + "' (allowed: "
                                 + ", ".join(list(self.variables) + list(self.CONSTANTS.keys())
                                             + list(self.FUNCTIONS.keys())) + ")")
                continue
            if tok.type == _tokenize.OP and tok.string in self.OPERATORS:
                continue
            self._reject("'" + tok.string + "'")

    def _reject(self, what):
        raise ConfigValidationError(self.key, "'" + self.text + "' uses " + what
                                    + "\n\t==> Use numbers, + - * / **, parentheses, pi and the functions "
                                    + ", ".join(self.FUNCTIONS.keys()))
