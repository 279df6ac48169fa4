"""
Canonical printing with minimal parentheses.
"""

from .carriers import render
from .expr import Apply, Expr, FreeSymbol, Literal

ADDITIVE, MULTIPLICATIVE, UNARY, ATOM = 1, 2, 3, 4

_BINARY_PRECEDENCE = {"+": ADDITIVE, "-": ADDITIVE, "*": MULTIPLICATIVE, "/": MULTIPLICATIVE}


def render_literal(e: Literal) -> str:
    return render(e.value)


def _literal_precedence(text: str) -> int:
    if " + " in text or " - " in text:
        return ADDITIVE
    # a signed fraction or basis multiple is a product, not a negation
    if "*" in text or "/" in text or "^" in text:
        return MULTIPLICATIVE
    if text.startswith("-"):
        return UNARY
    return ATOM


def precedence(e: Expr) -> int:
    if isinstance(e, Literal):
        return _literal_precedence(render_literal(e))
    if isinstance(e, FreeSymbol):
        return ATOM
    if e.is_negation:
        return UNARY
    return _BINARY_PRECEDENCE.get(e.op, ATOM)


def _wrap(e: Expr, needs_parens: bool) -> str:
    text = print_expr(e)
    return f"({text})" if needs_parens else text


def print_expr(e: Expr) -> str:
    """Source text that parses back to `e` (for parser-produced trees)."""
    if isinstance(e, Literal):
        return render_literal(e)
    if isinstance(e, FreeSymbol):
        return e.name
    if e.is_negation:
        return "-" + _wrap(e.args[0], precedence(e.args[0]) < ATOM)
    if e.op not in _BINARY_PRECEDENCE:
        return f"{e.op}({print_expr(e.args[0])})"
    own = _BINARY_PRECEDENCE[e.op]
    left, right = e.args
    operator = f" {e.op} " if own == ADDITIVE else e.op
    return (
        _wrap(left, precedence(left) < own)
        + operator
        + _wrap(right, precedence(right) <= own)
    )
