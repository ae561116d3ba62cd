import numpy                                                        as _np
import pytest
import sympy                                                        as _sym

from phi_heat.util.expression                                       import Expression
from phi_heat.util.phi_heat_errors                                  import ConfigValidationError


def test_evaluation_over_arrays():
    expression                                          = Expression("1 + 0.5*x**2 - y/2", ["x", "y"])
    x                                                   = _np.array([0.0, 1.0, 2.0])
    assert _np.allclose(expression.evaluate(x=x, y=2.0), [0.0, 0.5, 2.0])


def test_constants_and_functions():
    assert float(Expression("cos(pi)", []).evaluate()) == pytest.approx(-1.0)
    assert float(Expression("-sqrt(abs(-4)) + exp(0) + tanh(0)", []).evaluate()) == pytest.approx(-1.0)


def test_used_names():
    expression                                          = Expression("sin(y) * u", ["u", "x", "y"])
    assert expression.uses("u") and expression.uses("y")
    assert not expression.uses("x")
    assert not expression.is_constant()
    assert Expression("2*pi", ["x"]).is_constant()


@pytest.mark.parametrize("text", ["x.real", "w + 1", "lambda: 1", "__import__('os')", "sin(x, x)", "'a'", "True",
                                  "", "   ", "1 +", "x if x else 1", "[x]", "x % 2", "np.sin(x)", "sin(x=1)",
                                  "1/0", "log(0)", "sqrt(-1)", "2j"])
def test_rejected_text(text):
    with pytest.raises(ConfigValidationError) as info:
        Expression(text, ["x"], key="a_expr")
    assert info.value.key == "a_expr"


def test_missing_value():
    with pytest.raises(ConfigValidationError):
        Expression("x + y", ["x", "y"]).evaluate(x=1.0)


def test_symbolic_form():
    x, y                                                = _sym.symbols("x y")
    expression                                          = Expression("x**2 + sin(y)", ["x", "y"])
    assert _sym.diff(expression.symbolic, x) == 2 * x
    assert _sym.diff(expression.symbolic, y) == _sym.cos(y)


def test_cancelled_variables_are_not_used():
    expression                                          = Expression("x - x + 3", ["x"])
    assert expression.is_constant()
    assert float(expression.evaluate()) == pytest.approx(3.0)
