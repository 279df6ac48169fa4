"""
Type inference, substitution, partial evaluation and simplification.

Elaboration is bidirectional: operands are synthesized first, their common
carrier (or the expected type of the context, when it is wider) becomes the
type of the node, and that type is pushed back into literals and reserved
constants. A Literal, a FreeSymbol and an Apply of the same tag are
interchangeable in every context.
"""

import logging
from typing import Dict, Optional, Set

from .carriers import ComplexQ, arithmetic_for, coerce_value, tag_of
from .errors import (
    AmbiguousLiteralError,
    CAError,
    TypeCheckError,
    UndeclaredSymbolError,
)
from .expr import (
    RESERVED_BASIS,
    RESERVED_CONSTANTS,
    Apply,
    Environment,
    Expr,
    FreeSymbol,
    Literal,
    symbols_in,
)
from .hierarchy import OPERATOR_OWNERS, builtin_registry, operator_owner
from .typetags import COMPLEX, TypeTag, coercible, common_tag

logger = logging.getLogger(__name__)


def _coerce_tree(e: Expr, target: TypeTag) -> Expr:
    """Push a wider type into a typed tree: literals are converted, operator
    nodes retagged, symbols and Norm results keep their own type."""
    if e.tag == target or e.tag is None or not coercible(e.tag, target):
        return e
    if isinstance(e, Literal):
        return Literal(coerce_value(e.value, e.tag, target), target, e.position)
    if isinstance(e, Apply) and e.op != "Norm":
        return Apply(e.op, tuple(_coerce_tree(arg, target) for arg in e.args), target, e.position)
    return e


class _Elaborator:
    """Assigns tags to an (untyped or typed) tree."""

    def __init__(self, env: Environment):
        self.env = env
        self.registry = builtin_registry()

    def check(self, e: Expr, expected: Optional[TypeTag]) -> Expr:
        try:
            if isinstance(e, Literal):
                return self._literal(e, expected)
            if isinstance(e, FreeSymbol):
                return self._symbol(e, expected)
            return self._apply(e, expected)
        except CAError as err:
            raise err.with_position(e.position)

    def _literal(self, e: Literal, expected: Optional[TypeTag]) -> Expr:
        tag = e.tag if e.tag is not None else tag_of(e.value)
        if expected is not None and tag != expected and coercible(tag, expected):
            return Literal(coerce_value(e.value, tag, expected), expected, e.position)
        return Literal(e.value, tag, e.position)

    def _symbol(self, e: FreeSymbol, expected: Optional[TypeTag]) -> Expr:
        declared = self.env.declared_tag(e.name)
        if declared is not None:
            return FreeSymbol(e.name, declared, e.position)
        if e.tag is not None:
            return e
        if e.name in RESERVED_BASIS or e.name in RESERVED_CONSTANTS:
            return self._reserved(e, expected)
        raise UndeclaredSymbolError(f"Undeclared symbol: {e.name}")

    def _reserved(self, e: FreeSymbol, expected: Optional[TypeTag]) -> Literal:
        if expected is None:
            raise AmbiguousLiteralError(f"'{e.name}' is ambiguous without a typing context")
        arithmetic = arithmetic_for(expected)
        if e.name == "Zero":
            return Literal(arithmetic.zero(), expected, e.position)
        if e.name == "Unit":
            return Literal(arithmetic.unit(), expected, e.position)
        if expected.carrier == "Quaternion":
            return Literal(arithmetic.basis(e.name), expected, e.position)
        if e.name == "i" and coercible(COMPLEX, expected):
            return Literal(coerce_value(ComplexQ(0, 1), COMPLEX, expected), expected, e.position)
        raise TypeCheckError(f"'{e.name}' is not a value of {expected}")

    def _require(self, tag: TypeTag, op: str, arity: int) -> None:
        owner = operator_owner(op, arity)
        if not self.registry.satisfies(tag, owner):
            raise TypeCheckError(
                f"Operator {op} needs {owner}, but {tag} only satisfies {', '.join(tag.satisfied)}"
            )

    def _synthesize(self, e: Expr) -> Optional[Expr]:
        try:
            return self.check(e, None)
        except AmbiguousLiteralError:
            return None

    def _apply(self, e: Apply, expected: Optional[TypeTag]) -> Expr:
        if (e.op, len(e.args)) not in OPERATOR_OWNERS:
            raise TypeCheckError(f"Operator {e.op} cannot take {len(e.args)} argument(s)")
        if e.op == "Norm":
            arg = self.check(e.args[0], None)
            self._require(arg.tag, e.op, 1)
            return Apply(e.op, (arg,), arg.tag.scalar_tag, e.position)
        if len(e.args) == 1:
            arg = self.check(e.args[0], expected)
            self._require(arg.tag, e.op, 1)
            return Apply(e.op, (arg,), arg.tag, e.position)

        synthesized = [self._synthesize(arg) for arg in e.args]
        target: Optional[TypeTag] = None
        for typed in synthesized:
            if typed is None:
                continue
            if target is None:
                target = typed.tag
                continue
            joined = common_tag(target, typed.tag)
            if joined is None:
                raise TypeCheckError(f"No common type for {target} and {typed.tag}")
            target = joined
        if expected is not None and (target is None or coercible(target, expected)):
            target = expected
        if target is None:
            raise AmbiguousLiteralError(
                f"Cannot infer the type of '{e.op}': reserved literals need a typing context"
            )
        try:
            args = tuple(
                self.check(arg, target) if typed is None else _coerce_tree(typed, target)
                for arg, typed in zip(e.args, synthesized)
            )
        except TypeCheckError as err:
            if expected is None and type(err) is TypeCheckError:
                # a reserved literal that does not fit the operands' type may
                # still fit the wider type an enclosing node asks for
                raise AmbiguousLiteralError(err.message, err.position) from err
            raise
        for arg in args:
            if not coercible(arg.tag, target):
                raise TypeCheckError(f"Operand of type {arg.tag} does not fit {target}")
        self._require(target, e.op, 2)
        return Apply(e.op, args, target, e.position)


def elaborate(e: Expr, env: Environment, expected: Optional[TypeTag] = None) -> Expr:
    """Typed copy of `e`; `expected` is the type the context asks for."""
    typed = _Elaborator(env).check(e, expected)
    if expected is not None and not coercible(typed.tag, expected):
        raise TypeCheckError(f"Expected {expected}, got {typed.tag}").with_position(e.position)
    return typed


def infer_type(e: Expr, env: Environment) -> TypeTag:
    return elaborate(e, env).tag


def free_symbols(e: Expr) -> Set[str]:
    return symbols_in(e)


def substitute(e: Expr, name: str, replacement: Expr, env: Optional[Environment] = None) -> Expr:
    """Replace every FreeSymbol `name` in `e` by `replacement`."""

    def replace(node: Expr) -> Expr:
        if isinstance(node, FreeSymbol):
            if node.name != name:
                return node
            if node.tag is None or replacement.tag is None:
                if isinstance(replacement, FreeSymbol) and replacement.tag is None:
                    return FreeSymbol(replacement.name, node.tag, replacement.position)
                return replacement
            if not coercible(replacement.tag, node.tag):
                raise TypeCheckError(
                    f"Cannot substitute {replacement.tag} for {name} of type {node.tag}"
                )
            return _coerce_tree(replacement, node.tag)
        if isinstance(node, Apply):
            return Apply(node.op, tuple(replace(arg) for arg in node.args), node.tag, node.position)
        return node

    result = replace(e)
    if env is not None:
        result = elaborate(result, env)
    return result


def fold(op: str, tag: TypeTag, args) -> object:
    """Apply an operator to literal operands in the node's carrier."""
    if op == "Norm":
        (arg,) = args
        return arithmetic_for(arg.tag).norm(arg.value)
    arithmetic = arithmetic_for(tag)
    values = [coerce_value(arg.value, arg.tag, tag) for arg in args]
    if op == "+":
        return arithmetic.add(*values)
    if op == "-":
        return arithmetic.sub(*values) if len(values) == 2 else arithmetic.neg(*values)
    if op == "*":
        return arithmetic.mul(*values)
    if op == "/":
        return arithmetic.divide(*values)
    if op == "Inversion":
        return arithmetic.inversion(*values)
    if op == "Conj":
        return arithmetic.conj(*values)
    raise TypeCheckError(f"Unknown operator {op}")


class _Evaluator:
    """Strict post-order partial evaluation."""

    def __init__(self, env: Environment):
        self.env = env
        self._resolved: Dict[str, Expr] = {}

    def run(self, e: Expr) -> Expr:
        if isinstance(e, Literal):
            return e
        if isinstance(e, FreeSymbol):
            binding = self.env.binding(e.name)
            if binding is None:
                return e
            if e.name not in self._resolved:
                logger.debug(f"Resolving binding of {e.name}")
                self._resolved[e.name] = self.run(binding)
            value = self._resolved[e.name]
            return _coerce_tree(value, e.tag) if e.tag is not None else value
        if e.tag is None:
            raise TypeCheckError("Cannot evaluate an untyped expression").with_position(e.position)
        args = tuple(self.run(arg) for arg in e.args)
        if all(isinstance(arg, Literal) for arg in args):
            try:
                return Literal(fold(e.op, e.tag, args), e.tag, e.position)
            except CAError as err:
                raise err.with_position(e.position)
        return Apply(e.op, args, e.tag, e.position)


def evaluate(e: Expr, env: Environment) -> Expr:
    """Normal form of `e`: bound symbols replaced, literal subtrees folded."""
    return _Evaluator(env).run(e)


def _is_literal_zero(e: Expr) -> bool:
    return isinstance(e, Literal) and e.tag is not None and arithmetic_for(e.tag).is_zero(e.value)


def _is_literal_unit(e: Expr) -> bool:
    return isinstance(e, Literal) and e.tag is not None and arithmetic_for(e.tag).is_unit(e.value)


def _retag(e: Expr, tag: TypeTag) -> Optional[Expr]:
    """`e` as a replacement for a node of type `tag`, or None if it cannot stand in.
    Symbols of a narrower carrier stand in as they are."""
    if e.tag is None or not coercible(e.tag, tag):
        return None
    return _coerce_tree(e, tag)


def _has_residual(e: Expr) -> bool:
    """True if `e` holds an operator node over literals, i.e. a fold that failed."""
    if not isinstance(e, Apply):
        return False
    return all(isinstance(arg, Literal) for arg in e.args) or any(_has_residual(arg) for arg in e.args)


def _rewrite(node: Apply) -> Expr:
    """One identity rule (or constant folding) at the root, if any applies."""
    tag = node.tag
    if tag is None:
        return node
    args = node.args
    if all(isinstance(arg, Literal) for arg in args):
        try:
            return Literal(fold(node.op, tag, args), tag, node.position)
        except CAError:
            return node
    candidate: Optional[Expr] = None
    if node.op == "+":
        left, right = args
        if _is_literal_zero(right):
            candidate = _retag(left, tag)
        if candidate is None and _is_literal_zero(left):
            candidate = _retag(right, tag)
    elif node.op == "*":
        left, right = args
        if (_is_literal_zero(left) or _is_literal_zero(right)) and not _has_residual(node):
            return Literal(arithmetic_for(tag).zero(), tag, node.position)
        if _is_literal_unit(right):
            candidate = _retag(left, tag)
        if candidate is None and _is_literal_unit(left):
            candidate = _retag(right, tag)
    elif node.op == "-" and len(args) == 1:
        inner = args[0]
        if isinstance(inner, Apply) and inner.is_negation:
            candidate = _retag(inner.args[0], tag)
    elif node.op == "-":
        left, right = args
        if left == right and not _has_residual(left):
            return Literal(arithmetic_for(tag).zero(), tag, node.position)
    elif node.op == "/":
        if _is_literal_unit(args[1]):
            candidate = _retag(args[0], tag)
    return candidate if candidate is not None else node


def simplify(e: Expr) -> Expr:
    """Bottom-up fixpoint of the identity rules; never raises on folding."""
    if not isinstance(e, Apply):
        return e
    node = Apply(e.op, tuple(simplify(arg) for arg in e.args), e.tag, e.position)
    rewritten = _rewrite(node)
    if rewritten is node:
        return node
    return simplify(rewritten)
