"""
CA -> OOP lowering and emission in a Pascal-like object notation.

Structures become abstract classes, carriers become data-bearing classes,
and every operator node of a bound expression becomes a class holding
references to its arguments and an ``Eval`` function.
"""

import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, List, Optional, Tuple, Union

from .carriers import arithmetic_for, render
from .errors import LookupFailure
from .expr import Apply, Environment, Expr, FreeSymbol, Literal
from .hierarchy import OperatorSignature, StructureKind, builtin_registry
from .parser import parse_expr
from .printer import print_expr
from .typetags import RATIONAL, TypeTag

logger = logging.getLogger(__name__)


class MemberKind(Enum):
    OPERATION = "operation"
    FUNCTION = "function"
    CONST = "const"


class _Primitive:
    """Body of a member implemented by the runtime library."""

    def __repr__(self) -> str:
        return "PRIMITIVE"


PRIMITIVE = _Primitive()


@dataclass(frozen=True)
class Member:
    kind: MemberKind
    name: str
    signature: str
    body: object = PRIMITIVE

    @property
    def body_text(self) -> Optional[str]:
        if self.body is PRIMITIVE:
            return None
        if isinstance(self.body, (Literal, FreeSymbol, Apply)):
            return print_expr(self.body)
        return render(self.body)

    def render(self) -> str:
        body = self.body_text
        return f"{self.signature};" if body is None else f"{self.signature} = {body};"


@dataclass
class OOClass:
    name: str
    parent: Optional[str] = None
    fields: List[Tuple[str, str]] = field(default_factory=list)
    members: List[Member] = field(default_factory=list)

    def member(self, name: str) -> Member:
        for member in self.members:
            if member.name == name:
                return member
        raise LookupFailure(f"{self.name} has no member {name}")

    def header(self) -> str:
        if self.parent is None:
            return f"{self.name} = Object;"
        return f"{self.name} = Object({self.parent})"


def _member_name(op: OperatorSignature) -> str:
    return f"{op.symbol}/{op.arity}"


def _signature_member(op: OperatorSignature, owner: str, operand: str, result: str) -> Member:
    if op.is_function:
        return Member(
            MemberKind.FUNCTION,
            _member_name(op),
            f"function {op.symbol}(A : {owner}) : {result}",
        )
    if op.arity == 1:
        params = f"A : {operand}"
    elif operand == owner:
        params = f"A,B : {owner}"
    else:
        params = f"A : {operand}; B : {owner}"
    return Member(MemberKind.OPERATION, _member_name(op), f"operation {op.symbol} ({params}) : {result}")


def lower_structure(kind: Union[str, StructureKind]) -> OOClass:
    """Abstract class of a structure; flattened kinds absorb their ancestors' signature."""
    registry = builtin_registry()
    kind = registry.get(kind)
    if kind.flatten:
        ops = registry.effective_ops(kind)
        consts = registry.effective_consts(kind)
        parent = None
    else:
        ops = list(kind.required_ops)
        consts = list(kind.required_consts)
        parent = kind.parents[0] if kind.parents else None

    def rename(structure: str) -> str:
        # inherited signatures read in terms of the flattened class
        return kind.name if kind.flatten and registry.is_ancestor(structure, kind) else structure

    members = [
        _signature_member(op, kind.name, rename(op.operand_structure), rename(op.result_structure))
        for op in ops
    ]
    members.extend(
        Member(MemberKind.CONST, const_name, f"const {const_name} : {kind.name}")
        for const_name, _ in consts
    )
    return OOClass(kind.name, parent, [], members)


def type_text(tag: TypeTag, number_type: str = "Number") -> str:
    """Name of a type in emitted code; the rationals are the scalar Number."""
    return number_type if tag == RATIONAL else tag.class_name


def _carrier_fields(tag: TypeTag, number_type: str) -> List[Tuple[str, str]]:
    if tag.carrier == "Integer":
        return [("Negative", "Boolean"), ("Digits", "array of Word")]
    if tag.carrier == "Rational":
        return [("num", "Integer"), ("den", "Integer")]
    if tag.carrier == "ComplexQ":
        return [("re", number_type), ("im", number_type)]
    if tag.carrier == "Quaternion":
        return [("Data", f"array [0..3] of {number_type}")]
    if tag.carrier == "Polynomial":
        return [("Coeffs", f"array of {type_text(tag.element, number_type)}")]
    last = tag.dimension - 1
    return [("Data", f"array [0..{last}, 0..{last}] of {type_text(tag.element, number_type)}")]


def lower_concrete(tag: TypeTag, number_type: str = "Number") -> OOClass:
    """Data-bearing class of a carrier, parented by its most specific structure."""
    registry = builtin_registry()
    name = tag.class_name
    satisfied = tag.satisfied
    members: List[Member] = []
    if "Algebra" in satisfied:
        members.append(
            Member(MemberKind.FUNCTION, "Norm/0", f"function Norm : {type_text(tag.scalar_tag, number_type)}")
        )
    seen = set()
    for structure in reversed(satisfied):
        for op in registry.get(structure).required_ops:
            key = (op.symbol, op.arity)
            if key in seen or op.symbol == "Norm" or op.operand_structure not in satisfied:
                continue
            seen.add(key)
            members.append(_signature_member(op, name, name, name))
    arithmetic = arithmetic_for(tag)
    for const_name, role in registry.effective_consts(satisfied[0]):
        value = arithmetic.zero() if role == "zero" else arithmetic.unit()
        members.append(Member(MemberKind.CONST, const_name, f"const {const_name} : {name}", value))
    return OOClass(name, satisfied[0], _carrier_fields(tag, number_type), members)


def lower_expr(name: str, e: Expr) -> List[OOClass]:
    """One class per Apply node, post-order, named name_n1, name_n2, ... and `name` for the root."""
    classes: List[OOClass] = []
    counter = [0]

    def node_type(node: Expr) -> str:
        return node.tag.class_name if node.tag is not None else "Object"

    def lower(node: Apply, class_name: Optional[str]) -> str:
        fields: List[Tuple[str, str]] = []
        refs: List[Expr] = []
        for arg in node.args:
            if isinstance(arg, Apply):
                child = lower(arg, None)
                fields.append((child, child))
                refs.append(FreeSymbol(child))
            elif isinstance(arg, FreeSymbol):
                fields.append((arg.name, node_type(arg)))
                refs.append(FreeSymbol(arg.name))
            else:
                refs.append(arg)
        if class_name is None:
            counter[0] += 1
            class_name = f"{name}_n{counter[0]}"
        unique_fields = list(dict.fromkeys(fields))
        result = node_type(node)
        body = Apply(node.op, tuple(refs), node.tag)
        classes.append(
            OOClass(
                class_name,
                result,
                unique_fields,
                [Member(MemberKind.FUNCTION, "Eval", f"function Eval : {result}", body)],
            )
        )
        logger.debug(f"Lowered {class_name}: {print_expr(body)}")
        return class_name

    if isinstance(e, Apply):
        lower(e, name)
    elif isinstance(e, FreeSymbol):
        classes.append(
            OOClass(
                name,
                node_type(e),
                [(e.name, node_type(e))],
                [Member(MemberKind.FUNCTION, "Eval", f"function Eval : {node_type(e)}", FreeSymbol(e.name))],
            )
        )
    else:
        classes.append(
            OOClass(
                name,
                node_type(e),
                [],
                [Member(MemberKind.CONST, "Value", f"const Value : {node_type(e)}", e.value)],
            )
        )
    return classes


def reconstruct(classes: List[OOClass]) -> Expr:
    """Untyped expression rebuilt from the Eval bodies of lowered node classes.

    The last class is the root; references to other node classes are
    replaced by their own reconstruction.
    """
    if not classes:
        raise LookupFailure("Nothing to reconstruct")
    by_name: Dict[str, OOClass] = {cls.name: cls for cls in classes}

    def rebuild(cls: OOClass) -> Expr:
        return resolve(parse_expr(cls.members[0].body_text), cls)

    def resolve(e: Expr, cls: OOClass) -> Expr:
        if isinstance(e, FreeSymbol):
            if e.name in by_name and (e.name, e.name) in cls.fields:
                return rebuild(by_name[e.name])
            return e
        if isinstance(e, Apply):
            return Apply(e.op, tuple(resolve(arg, cls) for arg in e.args))
        return e

    return rebuild(classes[-1])


def library() -> List[OOClass]:
    """Abstract classes for every built-in structure."""
    return [lower_structure(kind) for kind in builtin_registry()]


def lower_program(env: Environment, number_type: str = "Number") -> List[OOClass]:
    """Library classes, carrier classes for the types in use, then every binding."""
    classes = library()
    tags: List[TypeTag] = []
    for tag in env.declarations.values():
        if tag not in tags:
            tags.append(tag)
    classes.extend(lower_concrete(tag, number_type) for tag in tags)
    for name, bound in env.bindings.items():
        classes.extend(lower_expr(name, bound))
    return classes


def emit(classes: List[OOClass], indent: int = 2) -> str:
    """Byte-stable text: header, fields, members, trailer; a blank line between classes."""
    pad = " " * indent
    blocks = []
    for cls in classes:
        lines = [cls.header()]
        lines.extend(f"{pad}{name} : {type_name};" for name, type_name in cls.fields)
        lines.extend(f"{pad}{member.render()}" for member in cls.members)
        lines.append(f"end; {{ {cls.name} }}")
        blocks.append("\n".join(lines) + "\n")
    return "\n".join(blocks)
