"""
Rational quaternions: Hamilton product, conjugate, reduced norm.
"""

import random
from fractions import Fraction

from ..errors import NotInvertible
from ..typetags import QUATERNION, TypeTag
from .arithmetic import Arithmetic, random_rational, render_linear
from .values import Quaternion

BASIS_NAMES = ("", "i", "j", "k")

ONE = Quaternion.of(1)
I = Quaternion.of(0, 1)
J = Quaternion.of(0, 0, 1)
K = Quaternion.of(0, 0, 0, 1)


class QuaternionArithmetic(Arithmetic):
    """Division ring and algebra over the rationals; multiplication does not commute."""

    def __init__(self):
        super().__init__(QUATERNION)

    def contains(self, value) -> bool:
        return isinstance(value, Quaternion)

    def zero(self):
        return Quaternion()

    def unit(self):
        return ONE

    def add(self, a, b):
        self.check(a, b)
        return Quaternion(tuple(x + y for x, y in zip(a.data, b.data)))

    def neg(self, a):
        self.check(a)
        return Quaternion(tuple(-x for x in a.data))

    def mul(self, a, b):
        self.check(a, b)
        a0, a1, a2, a3 = a.data
        b0, b1, b2, b3 = b.data
        return Quaternion((
            a0 * b0 - a1 * b1 - a2 * b2 - a3 * b3,
            a0 * b1 + a1 * b0 + a2 * b3 - a3 * b2,
            a0 * b2 - a1 * b3 + a2 * b0 + a3 * b1,
            a0 * b3 + a1 * b2 - a2 * b1 + a3 * b0,
        ))

    def scale(self, scalar: Fraction, a: Quaternion) -> Quaternion:
        return Quaternion(tuple(scalar * x for x in a.data))

    def conj(self, a):
        self.check(a)
        a0, a1, a2, a3 = a.data
        return Quaternion((a0, -a1, -a2, -a3))

    def norm(self, a) -> Fraction:
        """Reduced norm a0² + a1² + a2² + a3² (no square root)."""
        self.check(a)
        return sum((x * x for x in a.data), Fraction(0))

    def inversion(self, a):
        norm = self.norm(a)
        if norm == 0:
            raise NotInvertible("Zero quaternion has no inverse")
        return self.scale(1 / norm, self.conj(a))

    def embed(self, value, source: TypeTag):
        self._require_source(source)
        if isinstance(value, Quaternion):
            return value
        return Quaternion.of(Fraction(value))

    def render(self, value) -> str:
        return render_linear(list(zip(value.data, BASIS_NAMES)))

    def sample(self, rng: random.Random, value_range: int = 9):
        return Quaternion(tuple(random_rational(rng, value_range) for _ in range(4)))

    def basis(self, name: str) -> Quaternion:
        return {"i": I, "j": J, "k": K}[name]
