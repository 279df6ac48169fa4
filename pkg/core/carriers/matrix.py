"""
Square matrices over a scalar carrier.

Multiplication is row-by-column and does not commute. The determinant and
the inverse use Gaussian elimination over the entries' field of fractions.
"""

import random
from typing import List

from ..errors import NotInvertible
from ..typetags import RATIONAL, TypeTag
from .arithmetic import Arithmetic, scalar_arithmetic
from .values import Matrix


class MatrixArithmetic(Arithmetic):
    """n×n matrices; Norm is the determinant, Conj the transpose."""

    def __init__(self, tag: TypeTag):
        super().__init__(tag)
        self.entry_tag = tag.element
        self.n = tag.dimension
        self.entries = scalar_arithmetic(self.entry_tag)
        # integer matrices are eliminated over the rationals
        self._field_tag = RATIONAL if self.entry_tag.carrier == "Integer" else self.entry_tag
        self._field = scalar_arithmetic(self._field_tag)

    def contains(self, value) -> bool:
        return (
            isinstance(value, Matrix)
            and value.entry_tag == self.entry_tag
            and value.n == self.n
            and all(self.entries.contains(x) for row in value.rows for x in row)
        )

    def make(self, rows) -> Matrix:
        return Matrix(self.entry_tag, self.n, tuple(tuple(row) for row in rows))

    def diagonal(self, value) -> Matrix:
        zero = self.entries.zero()
        return self.make(
            [value if r == c else zero for c in range(self.n)] for r in range(self.n)
        )

    def zero(self):
        return self.diagonal(self.entries.zero())

    def unit(self):
        return self.diagonal(self.entries.unit())

    def add(self, a, b):
        self.check(a, b)
        return self.make(
            [self.entries.add(x, y) for x, y in zip(row_a, row_b)]
            for row_a, row_b in zip(a.rows, b.rows)
        )

    def neg(self, a):
        self.check(a)
        return self.make([self.entries.neg(x) for x in row] for row in a.rows)

    def mul(self, a, b):
        self.check(a, b)
        rows = []
        for r in range(self.n):
            row = []
            for c in range(self.n):
                total = self.entries.zero()
                for k in range(self.n):
                    total = self.entries.add(total, self.entries.mul(a.rows[r][k], b.rows[k][c]))
                row.append(total)
            rows.append(row)
        return self.make(rows)

    def conj(self, a):
        """Transpose: additive and reverses products."""
        self.check(a)
        return self.make([a.rows[r][c] for r in range(self.n)] for c in range(self.n))

    def norm(self, a):
        return self.det(a)

    def _to_field(self, a) -> List[List]:
        return [[self._field.embed(x, self.entry_tag) for x in row] for row in a.rows]

    def det(self, a):
        """Exact determinant by Gaussian elimination; zero iff `a` is singular."""
        self.check(a)
        f = self._field
        grid = self._to_field(a)
        result = f.unit()
        for col in range(self.n):
            pivot = next((r for r in range(col, self.n) if not f.is_zero(grid[r][col])), None)
            if pivot is None:
                return self.entries.zero()
            if pivot != col:
                grid[col], grid[pivot] = grid[pivot], grid[col]
                result = f.neg(result)
            result = f.mul(result, grid[col][col])
            inverse = f.inversion(grid[col][col])
            for r in range(col + 1, self.n):
                factor = f.mul(grid[r][col], inverse)
                if f.is_zero(factor):
                    continue
                grid[r] = [f.sub(x, f.mul(factor, y)) for x, y in zip(grid[r], grid[col])]
        if self._field_tag != self.entry_tag:
            # integer matrices have an integer determinant
            return int(result)
        return result

    def inversion(self, a):
        self.check(a)
        if self._field_tag != self.entry_tag:
            raise NotInvertible(f"Matrix inversion requires Field entries, got {self.entry_tag}")
        f = self._field
        grid = [row + [f.unit() if r == c else f.zero() for c in range(self.n)]
                for r, row in enumerate(self._to_field(a))]
        for col in range(self.n):
            pivot = next((r for r in range(col, self.n) if not f.is_zero(grid[r][col])), None)
            if pivot is None:
                raise NotInvertible("Singular matrix has no inverse")
            grid[col], grid[pivot] = grid[pivot], grid[col]
            inverse = f.inversion(grid[col][col])
            grid[col] = [f.mul(inverse, x) for x in grid[col]]
            for r in range(self.n):
                if r != col and not f.is_zero(grid[r][col]):
                    factor = grid[r][col]
                    grid[r] = [f.sub(x, f.mul(factor, y)) for x, y in zip(grid[r], grid[col])]
        return self.make(row[self.n:] for row in grid)

    def embed(self, value, source: TypeTag):
        self._require_source(source)
        from . import coerce_value
        if source.carrier == "Matrix":
            return self.make(
                [coerce_value(x, source.element, self.entry_tag) for x in row] for row in value.rows
            )
        return self.diagonal(coerce_value(value, source, self.entry_tag))

    def render(self, value) -> str:
        return "[" + ", ".join(
            "[" + ", ".join(self.entries.render(x) for x in row) + "]" for row in value.rows
        ) + "]"

    def sample(self, rng: random.Random, value_range: int = 9):
        return self.make(
            [self.entries.sample(rng, value_range) for _ in range(self.n)] for _ in range(self.n)
        )
