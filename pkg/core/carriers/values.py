"""
Immutable value objects for the composite carriers.

Integer and Rational values are plain Python ``int`` and ``Fraction``.
Arithmetic on these objects is delegated to the carrier's ``Arithmetic``
so ``a * b`` and ``arithmetic_for(tag).mul(a, b)`` always agree.
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Tuple, Union

from typing_extensions import TypeAlias

from ..typetags import COMPLEX, QUATERNION, TypeTag, matrix, polynomial

Scalar: TypeAlias = Union[int, Fraction, "ComplexQ"]


def is_zero_scalar(value) -> bool:
    if isinstance(value, ComplexQ):
        return value.re == 0 and value.im == 0
    return value == 0


class AlgebraicValue:
    """Operator overloads routed through the carrier arithmetic."""

    @property
    def tag(self) -> TypeTag:
        raise NotImplementedError

    def _arithmetic(self):
        from . import arithmetic_for
        return arithmetic_for(self.tag)

    def __add__(self, other):
        return self._arithmetic().add(self, other)

    def __sub__(self, other):
        return self._arithmetic().sub(self, other)

    def __neg__(self):
        return self._arithmetic().neg(self)

    def __mul__(self, other):
        return self._arithmetic().mul(self, other)

    def __truediv__(self, other):
        return self._arithmetic().divide(self, other)

    def __str__(self) -> str:
        return self._arithmetic().render(self)


@dataclass(frozen=True, eq=True)
class ComplexQ(AlgebraicValue):
    """Gaussian rational re + im*i."""
    re: Fraction = Fraction(0)
    im: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "re", Fraction(self.re))
        object.__setattr__(self, "im", Fraction(self.im))

    @property
    def tag(self) -> TypeTag:
        return COMPLEX


@dataclass(frozen=True, eq=True)
class Quaternion(AlgebraicValue):
    """a0 + a1*i + a2*j + a3*k with rational components."""
    data: Tuple[Fraction, Fraction, Fraction, Fraction] = (Fraction(0),) * 4

    def __post_init__(self):
        if len(self.data) != 4:
            raise ValueError(f"Quaternion needs exactly 4 components, got {len(self.data)}")
        object.__setattr__(self, "data", tuple(Fraction(c) for c in self.data))

    @classmethod
    def of(cls, a0=0, a1=0, a2=0, a3=0) -> "Quaternion":
        return cls((a0, a1, a2, a3))

    @property
    def tag(self) -> TypeTag:
        return QUATERNION


@dataclass(frozen=True, eq=True)
class Polynomial(AlgebraicValue):
    """Dense univariate polynomial, coefficients in ascending degree."""
    coeff_tag: TypeTag
    coeffs: Tuple[Scalar, ...] = ()

    def __post_init__(self):
        coeffs = list(self.coeffs)
        while coeffs and is_zero_scalar(coeffs[-1]):
            coeffs.pop()
        object.__setattr__(self, "coeffs", tuple(coeffs))

    @property
    def tag(self) -> TypeTag:
        return polynomial(self.coeff_tag)

    @property
    def degree(self) -> int:
        """-1 for the zero polynomial."""
        return len(self.coeffs) - 1


@dataclass(frozen=True, eq=True)
class Matrix(AlgebraicValue):
    """Square n×n matrix, rows stored row-major."""
    entry_tag: TypeTag
    n: int
    rows: Tuple[Tuple[Scalar, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(row) for row in self.rows)
        if self.n < 1 or len(rows) != self.n or any(len(row) != self.n for row in rows):
            raise ValueError(f"Matrix of dimension {self.n} needs {self.n}x{self.n} entries")
        object.__setattr__(self, "rows", rows)

    @property
    def tag(self) -> TypeTag:
        return matrix(self.entry_tag, self.n)

    def entry(self, r: int, c: int):
        return self.rows[r][c]


Value: TypeAlias = Union[int, Fraction, ComplexQ, Quaternion, Polynomial, Matrix]
