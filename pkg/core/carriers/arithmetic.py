"""
Per-carrier exact arithmetic.

Every carrier gets an ``Arithmetic`` object bound to its type tag. The
expression engine, the law checker and the value objects all go through
these objects, so there is exactly one implementation of each operation.
"""

import logging
import random
from abc import ABC, abstractmethod
from fractions import Fraction
from typing import List, Tuple

from ..errors import NotInvertible, TypeCheckError
from ..typetags import COMPLEX, INTEGER, RATIONAL, TypeTag, coercible
from .values import ComplexQ

logger = logging.getLogger(__name__)


def render_linear(terms: List[Tuple[Fraction, str]]) -> str:
    """Render a sum of rational multiples of basis names, zero terms omitted."""
    pieces: List[str] = []
    for coefficient, basis in terms:
        if coefficient == 0:
            continue
        magnitude = abs(coefficient)
        if basis:
            body = basis if magnitude == 1 else f"{magnitude}*{basis}"
        else:
            body = str(magnitude)
        if not pieces:
            pieces.append(f"-{body}" if coefficient < 0 else body)
        else:
            pieces.append(f" - {body}" if coefficient < 0 else f" + {body}")
    return "".join(pieces) or "0"


def random_rational(rng: random.Random, value_range: int) -> Fraction:
    return Fraction(rng.randint(-value_range, value_range), rng.randint(1, value_range))


class Arithmetic(ABC):
    """Structure operations of one carrier."""

    def __init__(self, tag: TypeTag):
        self.tag = tag
        self.logger = logging.getLogger(__name__)

    @abstractmethod
    def contains(self, value) -> bool:
        """True iff `value` is a canonical element of this carrier."""

    @abstractmethod
    def zero(self):
        ...

    @abstractmethod
    def unit(self):
        ...

    @abstractmethod
    def add(self, a, b):
        ...

    @abstractmethod
    def neg(self, a):
        ...

    @abstractmethod
    def mul(self, a, b):
        ...

    @abstractmethod
    def embed(self, value, source: TypeTag):
        """Image of `value` (of tag `source`) under the coercion into this carrier."""

    @abstractmethod
    def render(self, value) -> str:
        ...

    @abstractmethod
    def sample(self, rng: random.Random, value_range: int = 9):
        """A random element with numerators/denominators in [-value_range, value_range]."""

    def check(self, *values) -> None:
        for value in values:
            if not self.contains(value):
                raise TypeCheckError(f"{value!r} is not a value of type {self.tag}")

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def inversion(self, a):
        raise NotInvertible(f"{self.render(a)} is not invertible in {self.tag}")

    def divide(self, a, b):
        """a / b is a * Inversion(b) for every carrier."""
        return self.mul(a, self.inversion(b))

    def norm(self, a):
        raise TypeCheckError(f"Norm is not defined on {self.tag}")

    def conj(self, a):
        raise TypeCheckError(f"Conj is not defined on {self.tag}")

    def equal(self, a, b) -> bool:
        return a == b

    def is_zero(self, a) -> bool:
        return self.equal(a, self.zero())

    def is_unit(self, a) -> bool:
        return self.equal(a, self.unit())

    def _require_source(self, source: TypeTag) -> None:
        if not coercible(source, self.tag):
            raise TypeCheckError(f"Cannot coerce {source} to {self.tag}")


class IntegerArithmetic(Arithmetic):
    """Arbitrary-precision integers; only the units ±1 invert."""

    def __init__(self):
        super().__init__(INTEGER)

    def contains(self, value) -> bool:
        return isinstance(value, int) and not isinstance(value, bool)

    def zero(self):
        return 0

    def unit(self):
        return 1

    def add(self, a, b):
        self.check(a, b)
        return a + b

    def neg(self, a):
        self.check(a)
        return -a

    def mul(self, a, b):
        self.check(a, b)
        return a * b

    def inversion(self, a):
        self.check(a)
        if a in (1, -1):
            return a
        raise NotInvertible(f"{a} has no inverse in Integer")

    def embed(self, value, source: TypeTag):
        self._require_source(source)
        return value

    def render(self, value) -> str:
        return str(value)

    def sample(self, rng: random.Random, value_range: int = 9):
        return rng.randint(-value_range, value_range)


class RationalArithmetic(Arithmetic):
    """Canonical fractions: den > 0, gcd(|num|, den) = 1."""

    def __init__(self):
        super().__init__(RATIONAL)

    def contains(self, value) -> bool:
        return isinstance(value, Fraction)

    def zero(self):
        return Fraction(0)

    def unit(self):
        return Fraction(1)

    def add(self, a, b):
        self.check(a, b)
        return a + b

    def neg(self, a):
        self.check(a)
        return -a

    def mul(self, a, b):
        self.check(a, b)
        return a * b

    def inversion(self, a):
        self.check(a)
        if a == 0:
            raise NotInvertible("Division by zero in Rational")
        return 1 / a

    def embed(self, value, source: TypeTag):
        self._require_source(source)
        return Fraction(value)

    def render(self, value) -> str:
        return str(value)

    def sample(self, rng: random.Random, value_range: int = 9):
        return random_rational(rng, value_range)


class ComplexArithmetic(Arithmetic):
    """Gaussian rationals re + im*i."""

    def __init__(self):
        super().__init__(COMPLEX)

    def contains(self, value) -> bool:
        return isinstance(value, ComplexQ)

    def zero(self):
        return ComplexQ(0, 0)

    def unit(self):
        return ComplexQ(1, 0)

    def add(self, a, b):
        self.check(a, b)
        return ComplexQ(a.re + b.re, a.im + b.im)

    def neg(self, a):
        self.check(a)
        return ComplexQ(-a.re, -a.im)

    def mul(self, a, b):
        self.check(a, b)
        return ComplexQ(a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re)

    def inversion(self, a):
        self.check(a)
        modulus = a.re * a.re + a.im * a.im
        if modulus == 0:
            raise NotInvertible("Division by zero in ComplexQ")
        return ComplexQ(a.re / modulus, -a.im / modulus)

    def embed(self, value, source: TypeTag):
        self._require_source(source)
        if isinstance(value, ComplexQ):
            return value
        return ComplexQ(Fraction(value), 0)

    def render(self, value) -> str:
        return render_linear([(value.re, ""), (value.im, "i")])

    def sample(self, rng: random.Random, value_range: int = 9):
        return ComplexQ(random_rational(rng, value_range), random_rational(rng, value_range))


_SCALARS = {
    "Integer": IntegerArithmetic(),
    "Rational": RationalArithmetic(),
    "ComplexQ": ComplexArithmetic(),
}


def scalar_arithmetic(tag: TypeTag) -> Arithmetic:
    try:
        return _SCALARS[tag.carrier]
    except KeyError:
        raise TypeCheckError(f"{tag} is not a scalar type") from None
