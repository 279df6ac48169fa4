"""
Abstract algebraic structures and their inheritance lattice.

Semigroup -> Group -> Module -> Ring -> DivisionRing -> Field, with Algebra
inheriting from both Ring and Module. Each structure lists the operators
and constants it adds and the laws a carrier claiming it must obey.
"""

import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, Iterator, List, Optional, Set, Tuple, Union

from .errors import LookupFailure

logger = logging.getLogger(__name__)

UNARY_SYMBOLS = {"Inversion", "Norm", "Conj"}
BINARY_SYMBOLS = {"+", "*", "/"}
OPERATOR_SYMBOLS = UNARY_SYMBOLS | BINARY_SYMBOLS | {"-"}
CONST_ROLES = {"zero", "unit"}


@dataclass(frozen=True)
class OperatorSignature:
    """One required operator of a structure."""
    symbol: str
    arity: int
    operand_structure: str
    result_structure: str

    def __post_init__(self):
        if self.symbol not in OPERATOR_SYMBOLS:
            raise ValueError(f"Unknown operator symbol: {self.symbol!r}")
        if self.symbol == "-":
            valid = self.arity in (1, 2)
        elif self.symbol in UNARY_SYMBOLS:
            valid = self.arity == 1
        else:
            valid = self.arity == 2
        if not valid:
            raise ValueError(f"Operator {self.symbol!r} cannot have arity {self.arity}")

    @property
    def is_function(self) -> bool:
        """Named functions (Inversion, Norm, Conj) as opposed to infix operations."""
        return self.symbol in UNARY_SYMBOLS


@dataclass(frozen=True)
class StructureKind:
    """A node of the structure lattice."""
    name: str
    parents: Tuple[str, ...] = ()
    required_ops: Tuple[OperatorSignature, ...] = ()
    required_consts: Tuple[Tuple[str, str], ...] = ()
    laws: Tuple[str, ...] = ()
    # emitted as an OOP root with its inherited signature flattened in
    flatten: bool = False

    def __post_init__(self):
        for const_name, role in self.required_consts:
            if role not in CONST_ROLES:
                raise ValueError(f"Constant {const_name} has unknown role {role!r}")


# Which structure introduces each operator; type checking requires the
# carrier to satisfy it.
OPERATOR_OWNERS = {
    ("+", 2): "Semigroup",
    ("-", 2): "Group",
    ("-", 1): "Group",
    ("*", 2): "Ring",
    ("/", 2): "Ring",
    ("Inversion", 1): "Ring",
    ("Norm", 1): "Algebra",
    ("Conj", 1): "Algebra",
}


class Registry:
    """Immutable collection of structures with lattice queries."""

    def __init__(self, kinds: List[StructureKind], aliases: Optional[Dict[str, str]] = None):
        self.logger = logging.getLogger(__name__)
        self._kinds: Dict[str, StructureKind] = {}
        for kind in kinds:
            if kind.name in self._kinds:
                raise ValueError(f"Duplicate structure name: {kind.name}")
            for parent in kind.parents:
                if parent not in self._kinds:
                    # parents must be registered first, which also rules out cycles
                    raise ValueError(f"Structure {kind.name} names unknown parent {parent}")
            self._kinds[kind.name] = kind
        self._aliases = dict(aliases or {})
        self.logger.debug(f"Registry built with {len(self._kinds)} structures")

    def __contains__(self, name: object) -> bool:
        return isinstance(name, str) and self._resolve(name) in self._kinds

    def __iter__(self) -> Iterator[StructureKind]:
        return iter(self._kinds.values())

    def __len__(self) -> int:
        return len(self._kinds)

    def _resolve(self, name: str) -> str:
        return self._aliases.get(name, name)

    def get(self, kind: Union[str, StructureKind]) -> StructureKind:
        """Look a structure up by name (aliases allowed)."""
        name = kind.name if isinstance(kind, StructureKind) else kind
        try:
            return self._kinds[self._resolve(name)]
        except KeyError:
            raise LookupFailure(f"Unknown structure: {name}") from None

    def names(self) -> List[str]:
        return list(self._kinds)

    def ancestors(self, kind: Union[str, StructureKind]) -> Set[str]:
        """All structures `kind` inherits from, itself included."""
        start = self.get(kind)
        seen = {start.name}
        stack = [start]
        while stack:
            for parent in stack.pop().parents:
                if parent not in seen:
                    seen.add(parent)
                    stack.append(self._kinds[parent])
        return seen

    def is_ancestor(self, ancestor: Union[str, StructureKind], kind: Union[str, StructureKind]) -> bool:
        return self.get(ancestor).name in self.ancestors(kind)

    def depth(self, kind: Union[str, StructureKind]) -> int:
        """Length of the longest inheritance path down from a root."""
        node = self.get(kind)
        if not node.parents:
            return 0
        return 1 + max(self.depth(parent) for parent in node.parents)

    def effective_ops(self, kind: Union[str, StructureKind]) -> List[OperatorSignature]:
        """Own and inherited operators, root structures first."""
        ops: List[OperatorSignature] = []
        for name in self.ordered(self.ancestors(kind), most_specific_first=False):
            for op in self._kinds[name].required_ops:
                if op not in ops:
                    ops.append(op)
        return ops

    def effective_op_keys(self, kind: Union[str, StructureKind]) -> Set[Tuple[str, int]]:
        return {(op.symbol, op.arity) for op in self.effective_ops(kind)}

    def effective_consts(self, kind: Union[str, StructureKind]) -> List[Tuple[str, str]]:
        consts: List[Tuple[str, str]] = []
        for name in self.ordered(self.ancestors(kind), most_specific_first=False):
            for const in self._kinds[name].required_consts:
                if const not in consts:
                    consts.append(const)
        return consts

    def effective_laws(self, kind: Union[str, StructureKind]) -> List[str]:
        laws: List[str] = []
        for name in self.ordered(self.ancestors(kind), most_specific_first=False):
            for law in self._kinds[name].laws:
                if law not in laws:
                    laws.append(law)
        return laws

    def owner_of_law(self, law: str) -> StructureKind:
        for kind in self._kinds.values():
            if law in kind.laws:
                return kind
        raise LookupFailure(f"Unknown law: {law}")

    def ordered(self, names: Set[str], most_specific_first: bool = True) -> List[str]:
        """Sort structure names by depth, ties broken alphabetically."""
        if most_specific_first:
            return sorted(names, key=lambda n: (-self.depth(n), n))
        return sorted(names, key=lambda n: (self.depth(n), n))

    def join(self, a: Union[str, StructureKind], b: Union[str, StructureKind]) -> Optional[StructureKind]:
        """Most specific common ancestor of `a` and `b`, or None."""
        common = self.ancestors(a) & self.ancestors(b)
        if not common:
            return None
        # keep the common ancestors no other common ancestor refines
        maximal = [
            name for name in common
            if not any(other != name and name in self.ancestors(other) for other in common)
        ]
        return self._kinds[self.ordered(set(maximal))[0]]

    def closure(self, declared: Tuple[str, ...]) -> List[str]:
        """Declared structures plus everything they inherit, most specific first."""
        names: Set[str] = set()
        for name in declared:
            names |= self.ancestors(name)
        return self.ordered(names)

    def satisfies(self, tag, kind: Union[str, StructureKind]) -> bool:
        """True iff `tag` declares `kind` or one of its descendants."""
        target = self.get(kind).name
        return any(target in self.ancestors(declared) for declared in tag.declared_structures)


def _binary(symbol: str, structure: str, operand: Optional[str] = None) -> OperatorSignature:
    return OperatorSignature(symbol, 2, operand or structure, structure)


def _unary(symbol: str, structure: str, result: Optional[str] = None) -> OperatorSignature:
    return OperatorSignature(symbol, 1, structure, result or structure)


@lru_cache(maxsize=1)
def builtin_registry() -> Registry:
    """The fixed lattice of built-in structures."""
    kinds = [
        StructureKind(
            name="Semigroup",
            required_ops=(_binary("+", "Semigroup"),),
            laws=("assoc_add",),
        ),
        StructureKind(
            name="Group",
            parents=("Semigroup",),
            required_ops=(_binary("-", "Group"), _unary("-", "Group")),
            required_consts=(("Zero", "zero"),),
            laws=("add_identity", "add_inverse"),
        ),
        StructureKind(
            name="Module",
            parents=("Group",),
            laws=("comm_add",),
            flatten=True,
        ),
        StructureKind(
            name="Ring",
            parents=("Module",),
            required_ops=(_binary("*", "Ring"), _binary("/", "Ring"), _unary("Inversion", "Ring")),
            required_consts=(("Unit", "unit"),),
            laws=("assoc_mul", "mul_identity", "distrib_left", "distrib_right"),
        ),
        StructureKind(
            name="DivisionRing",
            parents=("Ring",),
            laws=("mul_inverse",),
        ),
        StructureKind(
            name="Field",
            parents=("DivisionRing",),
            laws=("comm_mul",),
        ),
        StructureKind(
            name="Algebra",
            parents=("Ring", "Module"),
            required_ops=(
                _binary("*", "Algebra", operand="Field"),
                _unary("Norm", "Algebra", result="Field"),
                _unary("Conj", "Algebra"),
            ),
            laws=("norm_multiplicative",),
        ),
    ]
    return Registry(kinds, aliases={"AbelianGroup": "Module"})


def operator_owner(symbol: str, arity: int) -> str:
    """Structure that introduces an operator."""
    try:
        return OPERATOR_OWNERS[(symbol, arity)]
    except KeyError:
        raise LookupFailure(f"Unknown operator {symbol!r} with arity {arity}") from None
