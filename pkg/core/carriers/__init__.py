"""
Concrete carriers: exact values and their arithmetic.

The module-level helpers (``add``, ``mul``, ``inversion``, ...) infer the
carrier from the value itself; use ``arithmetic_for(tag)`` when the tag is
known.
"""

from fractions import Fraction
from functools import lru_cache

from ..errors import TypeCheckError
from ..typetags import INTEGER, RATIONAL, TypeTag, coercible
from .arithmetic import (
    Arithmetic,
    ComplexArithmetic,
    IntegerArithmetic,
    RationalArithmetic,
    render_linear,
    scalar_arithmetic,
)
from .values import AlgebraicValue, ComplexQ, Matrix, Polynomial, Quaternion, Value


@lru_cache(maxsize=None)
def arithmetic_for(tag: TypeTag) -> Arithmetic:
    """The arithmetic object of a carrier tag."""
    from .matrix import MatrixArithmetic
    from .polynomial import PolynomialArithmetic
    from .quaternion import QuaternionArithmetic

    if tag.is_scalar:
        return scalar_arithmetic(tag)
    if tag.carrier == "Quaternion":
        return QuaternionArithmetic()
    if tag.carrier == "Polynomial":
        return PolynomialArithmetic(tag)
    if tag.carrier == "Matrix":
        return MatrixArithmetic(tag)
    raise TypeCheckError(f"No arithmetic for {tag}")


def tag_of(value) -> TypeTag:
    """Tag of a value; ints are Integer and Fractions Rational."""
    if isinstance(value, AlgebraicValue):
        return value.tag
    if isinstance(value, Fraction):
        return RATIONAL
    if isinstance(value, int) and not isinstance(value, bool):
        return INTEGER
    raise TypeCheckError(f"{value!r} is not a value of any carrier")


def coerce_value(value, source: TypeTag, target: TypeTag):
    """Embed `value` of tag `source` into `target`."""
    if source == target:
        return value
    if not coercible(source, target):
        raise TypeCheckError(f"Cannot coerce {source} to {target}")
    return arithmetic_for(target).embed(value, source)


def _same_carrier(a, b) -> Arithmetic:
    tag_a, tag_b = tag_of(a), tag_of(b)
    if tag_a != tag_b:
        raise TypeCheckError(f"Type mismatch: {tag_a} and {tag_b}")
    return arithmetic_for(tag_a)


def add(a, b):
    return _same_carrier(a, b).add(a, b)


def sub(a, b):
    return _same_carrier(a, b).sub(a, b)


def neg(a):
    return arithmetic_for(tag_of(a)).neg(a)


def mul(a, b):
    return _same_carrier(a, b).mul(a, b)


def divide(a, b):
    return _same_carrier(a, b).divide(a, b)


def inversion(a):
    return arithmetic_for(tag_of(a)).inversion(a)


def norm(a):
    return arithmetic_for(tag_of(a)).norm(a)


def conj(a):
    return arithmetic_for(tag_of(a)).conj(a)


def det(a: Matrix):
    if not isinstance(a, Matrix):
        raise TypeCheckError(f"det expects a Matrix, got {a!r}")
    return arithmetic_for(a.tag).det(a)


def poly_eval(p: Polynomial, at):
    if not isinstance(p, Polynomial):
        raise TypeCheckError(f"poly_eval expects a Polynomial, got {p!r}")
    return arithmetic_for(p.tag).evaluate(p, at)


def render(value) -> str:
    return arithmetic_for(tag_of(value)).render(value)


__all__ = [
    "Arithmetic", "IntegerArithmetic", "RationalArithmetic", "ComplexArithmetic",
    "AlgebraicValue", "ComplexQ", "Quaternion", "Polynomial", "Matrix", "Value",
    "arithmetic_for", "scalar_arithmetic", "tag_of", "coerce_value", "render_linear",
    "add", "sub", "neg", "mul", "divide", "inversion", "norm", "conj", "det", "poly_eval", "render",
]
