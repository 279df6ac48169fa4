"""
Dense univariate polynomials over a commutative scalar ring.
"""

import random
from typing import List

from ..errors import NotInvertible, TypeCheckError
from ..typetags import TypeTag
from .arithmetic import Arithmetic, scalar_arithmetic
from .values import ComplexQ, Polynomial

VARIABLE = "x"


class PolynomialArithmetic(Arithmetic):
    """Ring of polynomials in x with coefficients of one scalar tag."""

    def __init__(self, tag: TypeTag):
        super().__init__(tag)
        self.coeff_tag = tag.element
        self.coeffs = scalar_arithmetic(self.coeff_tag)

    def contains(self, value) -> bool:
        return (
            isinstance(value, Polynomial)
            and value.coeff_tag == self.coeff_tag
            and all(self.coeffs.contains(c) for c in value.coeffs)
        )

    def make(self, coeffs) -> Polynomial:
        return Polynomial(self.coeff_tag, tuple(coeffs))

    def zero(self):
        return self.make(())

    def unit(self):
        return self.make((self.coeffs.unit(),))

    def add(self, a, b):
        self.check(a, b)
        size = max(len(a.coeffs), len(b.coeffs))
        zero = self.coeffs.zero()
        return self.make(
            self.coeffs.add(
                a.coeffs[i] if i < len(a.coeffs) else zero,
                b.coeffs[i] if i < len(b.coeffs) else zero,
            )
            for i in range(size)
        )

    def neg(self, a):
        self.check(a)
        return self.make(self.coeffs.neg(c) for c in a.coeffs)

    def mul(self, a, b):
        self.check(a, b)
        if not a.coeffs or not b.coeffs:
            return self.zero()
        product: List = [self.coeffs.zero()] * (len(a.coeffs) + len(b.coeffs) - 1)
        for i, x in enumerate(a.coeffs):
            for j, y in enumerate(b.coeffs):
                product[i + j] = self.coeffs.add(product[i + j], self.coeffs.mul(x, y))
        return self.make(product)

    def inversion(self, a):
        self.check(a)
        if a.degree != 0:
            raise NotInvertible(f"{self.render(a)} is not invertible in {self.tag}")
        return self.make((self.coeffs.inversion(a.coeffs[0]),))

    def evaluate(self, p, at):
        """Horner evaluation of `p` at a coefficient-ring value."""
        self.check(p)
        if not self.coeffs.contains(at):
            raise TypeCheckError(f"Cannot evaluate {self.tag} at {at!r}: expected {self.coeff_tag}")
        result = self.coeffs.zero()
        for c in reversed(p.coeffs):
            result = self.coeffs.add(self.coeffs.mul(result, at), c)
        return result

    def embed(self, value, source: TypeTag):
        self._require_source(source)
        from . import coerce_value
        if source.carrier == "Polynomial":
            return self.make(coerce_value(c, source.element, self.coeff_tag) for c in value.coeffs)
        return self.make((coerce_value(value, source, self.coeff_tag),))

    def render(self, value) -> str:
        if not value.coeffs:
            return "0"
        pieces: List[str] = []
        for power, c in enumerate(value.coeffs):
            if self.coeffs.is_zero(c):
                continue
            monomial = "" if power == 0 else VARIABLE if power == 1 else f"{VARIABLE}^{power}"
            text = self.coeffs.render(c)
            negative = not isinstance(c, ComplexQ) and c < 0
            if negative:
                text = text[1:]
            elif " " in text:
                text = f"({text})"
            if monomial:
                text = monomial if text == "1" else f"{text}*{monomial}"
            if not pieces:
                pieces.append(f"-{text}" if negative else text)
            else:
                pieces.append(f" - {text}" if negative else f" + {text}")
        return "".join(pieces)

    def sample(self, rng: random.Random, value_range: int = 9):
        degree = rng.randint(-1, 3)
        return self.make(self.coeffs.sample(rng, value_range) for _ in range(degree + 1))
