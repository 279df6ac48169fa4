"""
Expression trees with three mutually substitutable node kinds.

A variable may stand for a known value (``Literal``), for an unknown value
of a known type (``FreeSymbol``), or for the result of an operator applied
to other expressions (``Apply``). Nodes are immutable; tags are ``None`` in
the untyped skeletons the parser produces and filled in by elaboration.
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, Iterator, Mapping, Optional, Set, Tuple, Union

from typing_extensions import TypeAlias

from .errors import BindingError, SourcePosition
from .typetags import TypeTag

logger = logging.getLogger(__name__)

NEG = "-"
FUNCTIONS = ("Norm", "Conj", "Inversion")
BINARY_OPERATORS = ("+", "-", "*", "/")
# reserved names resolved by the expected type when not declared
RESERVED_CONSTANTS = ("Zero", "Unit")
RESERVED_BASIS = ("i", "j", "k")


@dataclass(frozen=True)
class Literal:
    value: object
    tag: Optional[TypeTag] = None
    position: Optional[SourcePosition] = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class FreeSymbol:
    name: str
    tag: Optional[TypeTag] = None
    position: Optional[SourcePosition] = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class Apply:
    op: str
    args: Tuple["Expr", ...]
    tag: Optional[TypeTag] = None
    position: Optional[SourcePosition] = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "args", tuple(self.args))

    @property
    def arity(self) -> int:
        return len(self.args)

    @property
    def is_negation(self) -> bool:
        return self.op == NEG and len(self.args) == 1


Expr: TypeAlias = Union[Literal, FreeSymbol, Apply]


def walk(e: Expr) -> Iterator[Expr]:
    """Pre-order traversal."""
    yield e
    if isinstance(e, Apply):
        for arg in e.args:
            yield from walk(arg)


def strip_tags(e: Expr) -> Expr:
    """Untyped copy of a tree."""
    if isinstance(e, Literal):
        return Literal(e.value)
    if isinstance(e, FreeSymbol):
        return FreeSymbol(e.name)
    return Apply(e.op, tuple(strip_tags(arg) for arg in e.args))


def symbols_in(e: Expr) -> Set[str]:
    return {node.name for node in walk(e) if isinstance(node, FreeSymbol)}


class Environment:
    """Declarations and bindings; every update returns a new environment."""

    def __init__(
        self,
        declarations: Optional[Mapping[str, TypeTag]] = None,
        bindings: Optional[Mapping[str, Expr]] = None,
    ):
        self._declarations: Dict[str, TypeTag] = dict(declarations or {})
        self._bindings: Dict[str, Expr] = dict(bindings or {})

    @property
    def declarations(self) -> Dict[str, TypeTag]:
        return dict(self._declarations)

    @property
    def bindings(self) -> Dict[str, Expr]:
        return dict(self._bindings)

    def bound(self) -> Set[str]:
        return set(self._bindings)

    def is_declared(self, name: str) -> bool:
        return name in self._declarations

    def declared_tag(self, name: str) -> Optional[TypeTag]:
        return self._declarations.get(name)

    def binding(self, name: str) -> Optional[Expr]:
        return self._bindings.get(name)

    def declare(self, name: str, tag: TypeTag) -> "Environment":
        """Add a declaration; redeclaring with the same tag is a no-op."""
        existing = self._declarations.get(name)
        if existing is not None and existing != tag:
            raise BindingError(f"{name} is already declared as {existing}, cannot redeclare as {tag}")
        declarations = dict(self._declarations)
        declarations[name] = tag
        return Environment(declarations, self._bindings)

    def bind(self, name: str, expr: Expr) -> "Environment":
        """Bind a typed expression; the binding graph must stay acyclic.

        Type compatibility with the declaration is checked by the engine
        when it elaborates `expr`; here only the declaration is recorded for
        names bound without one.
        """
        declarations = dict(self._declarations)
        if name not in declarations:
            if expr.tag is None:
                raise BindingError(f"Cannot bind {name} to an untyped expression")
            declarations[name] = expr.tag
        bindings = dict(self._bindings)
        bindings[name] = expr
        self._check_acyclic(bindings, name)
        return Environment(declarations, bindings)

    @staticmethod
    def _check_acyclic(bindings: Mapping[str, Expr], start: str) -> None:
        path = []

        def visit(name: str, on_path: Set[str]) -> None:
            if name in on_path:
                cycle = " -> ".join(path[path.index(name):] + [name])
                raise BindingError(f"Cyclic binding: {cycle}")
            expr = bindings.get(name)
            if expr is None:
                return
            on_path.add(name)
            path.append(name)
            for used in sorted(symbols_in(expr)):
                visit(used, on_path)
            path.pop()
            on_path.discard(name)

        visit(start, set())

    def __repr__(self) -> str:
        return f"Environment(declarations={self._declarations!r}, bindings={self._bindings!r})"
