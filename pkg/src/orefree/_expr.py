"""Safe evaluation of infix algebraic expressions.

Expressions such as ``(s^2 - s)/2`` or ``1/s*(1 - x)`` are parsed with the
standard :mod:`ast` module (after mapping ``^`` to ``**``) and evaluated by
walking the tree, so nothing but literals, names from an explicit symbol
table and the arithmetic operators is ever executed.
"""

from __future__ import annotations

import ast
import re
from fractions import Fraction
from typing import Callable, Mapping

from .errors import ParseError

_ALLOWED_CHARS = re.compile(r"^[\w\s+\-*/^().]*$")
_IMPLICIT = re.compile(r"(?<![\w.])(\d+(?:\.\d+)?)\s*(?=[A-Za-z(])")


def evaluate(text: str, symbols: Mapping[str, object], lift: Callable[[Fraction], object]):
    """Evaluate ``text`` with names bound by ``symbols``.

    Integer and decimal literals become exact rationals and are passed
    through ``lift`` so the caller controls the ring they land in.
    Exponents must be integer literals (possibly negative). A number
    directly followed by a name or parenthesis is a product (``3k``).
    """
    if not isinstance(text, str) or not text.strip():
        raise ParseError("empty expression")
    if not _ALLOWED_CHARS.match(text):
        raise ParseError(f"unexpected character in expression {text!r}")
    source = _IMPLICIT.sub(r"\1*", text.replace("^", "**"))
    try:
        tree = ast.parse(source, mode="eval")
    except SyntaxError as exc:
        raise ParseError(f"cannot parse {text!r}: {exc.msg} (column {exc.offset})") from None

    def exponent(node) -> int:
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
            e = exponent(node.operand)
            return -e if isinstance(node.op, ast.USub) else e
        if isinstance(node, ast.Constant) and isinstance(node.value, int):
            return node.value
        raise ParseError(f"exponent must be an integer literal in {text!r}")

    def walk(node):
        if isinstance(node, ast.Expression):
            return walk(node.body)
        if isinstance(node, ast.Constant):
            if isinstance(node.value, bool) or not isinstance(node.value, (int, float)):
                raise ParseError(f"unsupported literal {node.value!r}")
            src = ast.get_source_segment(source, node) or repr(node.value)
            return lift(Fraction(src))
        if isinstance(node, ast.Name):
            if node.id not in symbols:
                raise ParseError(f"unknown symbol {node.id!r} in {text!r}")
            return symbols[node.id]
        if isinstance(node, ast.UnaryOp):
            val = walk(node.operand)
            if isinstance(node.op, ast.USub):
                return -val
            if isinstance(node.op, ast.UAdd):
                return val
        if isinstance(node, ast.BinOp):
            if isinstance(node.op, ast.Pow):
                base = walk(node.left)
                e = exponent(node.right)
                if e < 0:
                    return lift(Fraction(1)) / base ** (-e)
                return base ** e
            left, right = walk(node.left), walk(node.right)
            if isinstance(node.op, ast.Add):
                return left + right
            if isinstance(node.op, ast.Sub):
                return left - right
            if isinstance(node.op, ast.Mult):
                return left * right
            if isinstance(node.op, ast.Div):
                return left / right
        raise ParseError(f"unsupported syntax in {text!r}")

    try:
        return walk(tree)
    except ZeroDivisionError as exc:
        raise ParseError(f"division by zero in {text!r}") from exc
    except (TypeError, ValueError) as exc:
        if isinstance(exc, ParseError):
            raise
        raise ParseError(f"cannot evaluate {text!r}: {exc}") from exc
