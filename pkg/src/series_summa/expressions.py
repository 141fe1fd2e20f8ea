"""Small arithmetic expression language shared by the CLI and custom
kernel files.

Grammar: numbers, the constant pi, declared variable names, operators
+ - * / ^ (with ^ right associative), unary minus, parentheses, and the
functions sin, cos, exp, abs.  Anything else is rejected at parse time;
the generated code object never sees raw user text, only tokens that
passed the parser.
"""

from __future__ import annotations

import re

import numpy as np

__all__ = ["compile_expression"]

_TOKEN_RE = re.compile(
    r"\s*(?:"
    r"(?P<num>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)"
    r"|(?P<name>[A-Za-z_][A-Za-z_0-9]*)"
    r"|(?P<op>[-+*/^()])"
    r")"
)

_FUNCTIONS = {"sin": np.sin, "cos": np.cos, "exp": np.exp, "abs": np.abs}


def _tokenize(src: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(src):
        m = _TOKEN_RE.match(src, pos)
        if m is None or m.end() == pos:
            rest = src[pos:].lstrip()
            if not rest:
                break
            raise ValueError(f"bad character in expression at position {pos}: {rest[0]!r}")
        kind = m.lastgroup
        tokens.append((kind, m.group(kind), m.start(kind)))
        pos = m.end()
    return tokens


class _Parser:
    def __init__(self, tokens, variables):
        self.tokens = tokens
        self.i = 0
        self.variables = variables

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else None

    def take(self):
        tok = self.peek()
        if tok is None:
            raise ValueError("unexpected end of expression")
        self.i += 1
        return tok

    def expect(self, text):
        tok = self.take()
        if tok[1] != text:
            raise ValueError(f"expected {text!r} at position {tok[2]}, got {tok[1]!r}")

    def expr(self) -> str:
        code = self.term()
        while self.peek() and self.peek()[1] in "+-":
            op = self.take()[1]
            code = f"({code}{op}{self.term()})"
        return code

    def term(self) -> str:
        code = self.unary()
        while self.peek() and self.peek()[1] in "*/":
            op = self.take()[1]
            code = f"({code}{op}{self.unary()})"
        return code

    def unary(self) -> str:
        if self.peek() and self.peek()[1] == "-":
            self.take()
            return f"(-{self.unary()})"
        return self.power()

    def power(self) -> str:
        base = self.atom()
        if self.peek() and self.peek()[1] == "^":
            self.take()
            return f"({base}**{self.unary()})"
        return base

    def atom(self) -> str:
        kind, text, pos = self.take()
        if kind == "num":
            return text
        if kind == "name":
            if text == "pi":
                return "pi"
            if text in _FUNCTIONS:
                self.expect("(")
                inner = self.expr()
                self.expect(")")
                return f"{text}({inner})"
            if text in self.variables:
                return text
            raise ValueError(f"unknown name {text!r} at position {pos}")
        if text == "(":
            inner = self.expr()
            self.expect(")")
            return f"({inner})"
        raise ValueError(f"unexpected token {text!r} at position {pos}")


def compile_expression(src: str, variables: tuple[str, ...] = ("x",)):
    """Compile an expression string to a callable of the given variables.

    The callable accepts scalars or numpy arrays positionally, in the
    order listed in ``variables``.
    """
    parser = _Parser(_tokenize(src), variables)
    code_text = parser.expr()
    if parser.peek() is not None:
        tok = parser.peek()
        raise ValueError(f"trailing input at position {tok[2]}: {tok[1]!r}")
    code = compile(code_text, "<expression>", "eval")
    base_ns = dict(_FUNCTIONS)
    base_ns["pi"] = np.pi

    def fn(*args):
        if len(args) != len(variables):
            raise TypeError(
                f"expression of {variables} called with {len(args)} arguments")
        ns = dict(base_ns)
        ns.update(zip(variables, args))
        return eval(code, {"__builtins__": {}}, ns)

    fn.expression = src
    fn.variables = variables
    return fn
