"""
Type tags: the algebraic type of a value or expression.

A tag names a concrete carrier (possibly parameterized) and derives the set
of structures it satisfies from the registry. The coercion lattice between
carriers also lives here.
"""

from dataclasses import dataclass
from typing import List, Optional, Tuple, Union

from .errors import LookupFailure, TypeCheckError
from .hierarchy import builtin_registry

# carrier name -> declared structures, most specific first
CARRIERS = {
    "Integer": ("Ring",),
    "Rational": ("Field",),
    "ComplexQ": ("Field",),
    "Quaternion": ("Algebra", "DivisionRing"),
    "Polynomial": ("Ring",),
    "Matrix": ("Algebra",),
}

SCALAR_CHAIN = ("Integer", "Rational", "ComplexQ")


@dataclass(frozen=True)
class TypeTag:
    """Concrete carrier plus parameters (coefficient tag, dimension)."""
    carrier: str
    params: Tuple[Union["TypeTag", int], ...] = ()

    def __post_init__(self):
        if self.carrier not in CARRIERS:
            raise LookupFailure(f"Unknown carrier type: {self.carrier}")
        if self.carrier == "Polynomial":
            if len(self.params) != 1 or not isinstance(self.params[0], TypeTag):
                raise TypeCheckError("Polynomial takes exactly one coefficient type")
            if not self.params[0].is_scalar:
                raise TypeCheckError(
                    f"Polynomial coefficients must be a commutative scalar ring, got {self.params[0]}"
                )
        elif self.carrier == "Matrix":
            if (
                len(self.params) != 2
                or not isinstance(self.params[0], TypeTag)
                or isinstance(self.params[1], bool)
                or not isinstance(self.params[1], int)
            ):
                raise TypeCheckError("Matrix takes an entry type and a dimension")
            if not self.params[0].is_scalar:
                raise TypeCheckError(f"Matrix entries must be a scalar type, got {self.params[0]}")
            if self.params[1] < 1:
                raise TypeCheckError(f"Matrix dimension must be positive, got {self.params[1]}")
        elif self.params:
            raise TypeCheckError(f"{self.carrier} takes no parameters")

    def __str__(self) -> str:
        if not self.params:
            return self.carrier
        return f"{self.carrier}({', '.join(str(p) for p in self.params)})"

    @property
    def is_scalar(self) -> bool:
        return self.carrier in SCALAR_CHAIN

    @property
    def declared_structures(self) -> Tuple[str, ...]:
        return CARRIERS[self.carrier]

    @property
    def satisfied(self) -> List[str]:
        """Every structure the tag satisfies, most specific first."""
        return builtin_registry().closure(self.declared_structures)

    @property
    def element(self) -> "TypeTag":
        """Coefficient / entry tag of a parameterized carrier."""
        if self.carrier not in ("Polynomial", "Matrix"):
            raise TypeCheckError(f"{self} has no element type")
        return self.params[0]

    @property
    def dimension(self) -> int:
        if self.carrier != "Matrix":
            raise TypeCheckError(f"{self} has no dimension")
        return self.params[1]

    @property
    def scalar_tag(self) -> "TypeTag":
        """Result type of Norm."""
        if self.carrier == "Quaternion":
            return RATIONAL
        if self.carrier == "Matrix":
            return self.element
        raise TypeCheckError(f"Norm is not defined on {self}")

    @property
    def class_name(self) -> str:
        """Identifier-safe name used by the code generator."""
        parts = [self.carrier]
        for param in self.params:
            parts.append(param.class_name if isinstance(param, TypeTag) else str(param))
        return "_".join(parts)


INTEGER = TypeTag("Integer")
RATIONAL = TypeTag("Rational")
COMPLEX = TypeTag("ComplexQ")
QUATERNION = TypeTag("Quaternion")


def polynomial(coeff: TypeTag) -> TypeTag:
    return TypeTag("Polynomial", (coeff,))


def matrix(entry: TypeTag, n: int) -> TypeTag:
    return TypeTag("Matrix", (entry, n))


def make_tag(name: str, args: Tuple[Union[TypeTag, int], ...] = ()) -> TypeTag:
    """Build a tag from a parsed type expression."""
    if name not in CARRIERS:
        raise LookupFailure(f"Unknown carrier type: {name}")
    return TypeTag(name, tuple(args))


def coercible(src: TypeTag, dst: TypeTag) -> bool:
    """True iff values of `src` embed into `dst`."""
    if src == dst:
        return True
    if src.is_scalar and dst.is_scalar:
        return SCALAR_CHAIN.index(src.carrier) <= SCALAR_CHAIN.index(dst.carrier)
    if dst.carrier == "Quaternion":
        return src.carrier in ("Integer", "Rational")
    if dst.carrier == "Polynomial":
        if src.carrier == "Polynomial":
            return coercible(src.element, dst.element)
        return src.is_scalar and coercible(src, dst.element)
    if dst.carrier == "Matrix":
        if src.carrier == "Matrix":
            return src.dimension == dst.dimension and coercible(src.element, dst.element)
        return src.is_scalar and coercible(src, dst.element)
    return False


def common_tag(a: TypeTag, b: TypeTag) -> Optional[TypeTag]:
    """Smallest carrier both tags coerce into, or None."""
    if coercible(a, b):
        return b
    if coercible(b, a):
        return a
    for wrapped, other in ((a, b), (b, a)):
        if wrapped.carrier in ("Polynomial", "Matrix") and (other.is_scalar or other.carrier == wrapped.carrier):
            inner = other.element if other.carrier == wrapped.carrier else other
            if other.carrier == "Matrix" and other.dimension != wrapped.dimension:
                return None
            element = common_tag(wrapped.element, inner)
            if element is None or not element.is_scalar:
                return None
            return TypeTag(wrapped.carrier, (element,) + wrapped.params[1:])
    return None
