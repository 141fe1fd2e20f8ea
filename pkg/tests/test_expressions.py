"""The small arithmetic expression language used by the CLI."""

import math

import numpy as np
import pytest

from series_summa.expressions import compile_expression


def test_constant():
    f = compile_expression("3.5", ())
    assert f() == 3.5


def test_pi_literal():
    f = compile_expression("pi / 2", ())
    assert abs(f() - 0.5 * math.pi) < 1e-15


def test_precedence_mul_over_add():
    f = compile_expression("2 + 3 * 4", ())
    assert f() == 14.0


def test_parentheses():
    f = compile_expression("(2 + 3) * 4", ())
    assert f() == 20.0


def test_power_binds_tighter_than_unary_minus():
    f = compile_expression("-x^2", ("x",))
    assert f(3.0) == -9.0


def test_power_right_associative():
    f = compile_expression("2^3^2", ())
    assert f() == 512.0


def test_division_left_associative():
    f = compile_expression("8 / 4 / 2", ())
    assert f() == 1.0


def test_unary_minus_chain():
    f = compile_expression("--x", ("x",))
    assert f(2.5) == 2.5


def test_functions():
    f = compile_expression("sin(x) * cos(x)", ("x",))
    assert abs(f(0.7) - math.sin(0.7) * math.cos(0.7)) < 1e-15
    g = compile_expression("exp(-abs(x))", ("x",))
    assert abs(g(-2.0) - math.exp(-2.0)) < 1e-15


def test_vectorized_over_arrays():
    f = compile_expression("x * (pi - x)", ("x",))
    xs = np.linspace(0.0, math.pi, 9)
    assert np.allclose(f(xs), xs * (math.pi - xs), atol=1e-14)


def test_two_variables():
    f = compile_expression("x * y + 1", ("x", "y"))
    assert f(2.0, 3.0) == 7.0


def test_variable_shadowing_order():
    f = compile_expression("x - y", ("x", "y"))
    assert f(5.0, 2.0) == 3.0


def test_metadata_attributes():
    f = compile_expression("sin(2 * x)", ("x",))
    assert f.expression == "sin(2 * x)"
    assert f.variables == ("x",)


def test_rejects_bad_characters():
    with pytest.raises(ValueError):
        compile_expression("__import__('os')", ())
    with pytest.raises(ValueError):
        compile_expression("x ? 2", ("x",))


def test_rejects_unknown_names():
    with pytest.raises(ValueError):
        compile_expression("tan(x)", ("x",))
    with pytest.raises(ValueError):
        compile_expression("y + 1", ("x",))


def test_rejects_trailing_input():
    with pytest.raises(ValueError):
        compile_expression("1 + 2 3", ())
    with pytest.raises(ValueError):
        compile_expression("sin(x))", ("x",))


def test_rejects_empty_and_incomplete():
    with pytest.raises(ValueError):
        compile_expression("", ())
    with pytest.raises(ValueError):
        compile_expression("2 *", ())
    with pytest.raises(ValueError):
        compile_expression("sin()", ())


def test_arity_is_enforced():
    f = compile_expression("x + 1", ("x",))
    with pytest.raises(TypeError):
        f(1.0, 2.0)
    with pytest.raises(TypeError):
        f()
