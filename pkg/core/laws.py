"""
Structure laws as equation schemas, checked by exact instantiation.

A schema is a pair of expressions over the schematic variables ``a``, ``b``
and ``c`` (plus the reserved constants ``Zero`` and ``Unit``). Checking a
law instantiates every tuple of sample values (or a seeded random subset of
them when there are too many), evaluates both sides exactly and compares.
"""

import itertools
import logging
import random
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple, Union

from .carriers import arithmetic_for, coerce_value, render
from .engine import elaborate, evaluate
from .errors import CAError, LookupFailure, TypeCheckError
from .expr import Environment, Expr, Literal, symbols_in
from .hierarchy import builtin_registry
from .parser import parse_expr
from .printer import print_expr
from .typetags import TypeTag, common_tag

logger = logging.getLogger(__name__)

SCHEMATIC_VARIABLES = ("a", "b", "c")


@dataclass(frozen=True)
class Law:
    name: str
    lhs: str
    rhs: str
    nonzero: FrozenSet[str] = frozenset()

    @property
    def variables(self) -> Tuple[str, ...]:
        used = symbols_in(parse_expr(self.lhs)) | symbols_in(parse_expr(self.rhs))
        return tuple(v for v in SCHEMATIC_VARIABLES if v in used)

    def __str__(self) -> str:
        return f"{self.name}: {self.lhs} = {self.rhs}"


LAWS: Dict[str, Law] = {
    law.name: law
    for law in (
        Law("assoc_add", "(a + b) + c", "a + (b + c)"),
        Law("comm_add", "a + b", "b + a"),
        Law("add_identity", "a + Zero", "a"),
        Law("add_inverse", "a + -a", "Zero"),
        Law("assoc_mul", "(a*b)*c", "a*(b*c)"),
        Law("mul_identity", "a*Unit", "a"),
        Law("distrib_left", "a*(b + c)", "a*b + a*c"),
        Law("distrib_right", "(a + b)*c", "a*c + b*c"),
        Law("comm_mul", "a*b", "b*a"),
        Law("mul_inverse", "a*Inversion(a)", "Unit", frozenset({"a"})),
        Law("norm_multiplicative", "Norm(a*b)", "Norm(a)*Norm(b)"),
    )
}

LawId = Union[str, Law]


def get_law(law: LawId) -> Law:
    if isinstance(law, Law):
        return law
    try:
        return LAWS[law]
    except KeyError:
        raise LookupFailure(f"Unknown law: {law}") from None


def laws_for(tag: TypeTag) -> List[Tuple[str, str]]:
    """(structure, law) pairs for every structure `tag` claims, root first."""
    registry = builtin_registry()
    pairs: List[Tuple[str, str]] = []
    seen = set()
    for structure in reversed(tag.satisfied):
        for law in registry.get(structure).laws:
            if law not in seen:
                seen.add(law)
                pairs.append((structure, law))
    return pairs


@dataclass
class LawReport:
    law: str
    tag: TypeTag
    passed: bool
    checked: int
    counterexample: Optional[Dict[str, object]] = None
    detail: str = ""

    def __str__(self) -> str:
        if self.passed:
            return f"{self.law} on {self.tag}: pass ({self.checked} instances)"
        assignment = ", ".join(f"{name} = {render(value)}" for name, value in self.counterexample.items())
        return f"{self.law} on {self.tag}: counterexample {assignment} ({self.detail})"


@lru_cache(maxsize=None)
def _typed_schema(law: Law, tag: TypeTag) -> Tuple[Expr, Expr]:
    env = Environment({name: tag for name in law.variables})
    lhs = elaborate(parse_expr(law.lhs), env)
    rhs = elaborate(parse_expr(law.rhs), env, expected=lhs.tag)
    return lhs, rhs


def _tuples(samples: Sequence, arity: int, tuple_limit: int, seed: int) -> Iterable[Tuple]:
    if len(samples) ** arity <= tuple_limit:
        return itertools.product(samples, repeat=arity)
    rng = random.Random(seed)
    return (tuple(rng.choice(samples) for _ in range(arity)) for _ in range(len(samples)))


def _same(left: Literal, right: Literal) -> bool:
    tag = common_tag(left.tag, right.tag)
    if tag is None:
        return False
    return arithmetic_for(tag).equal(
        coerce_value(left.value, left.tag, tag), coerce_value(right.value, right.tag, tag)
    )


def check_laws(
    tag: TypeTag,
    samples: Sequence,
    law: LawId,
    tuple_limit: int = 4096,
    seed: int = 1998,
) -> LawReport:
    """Instantiate `law` over tuples of `samples`; first counterexample wins."""
    law = get_law(law)
    arithmetic = arithmetic_for(tag)
    for sample in samples:
        if not arithmetic.contains(sample):
            raise TypeCheckError(f"Sample {sample!r} is not a value of {tag}")
    lhs, rhs = _typed_schema(law, tag)
    variables = law.variables
    samples = list(samples)
    checked = 0
    for values in _tuples(samples, len(variables), tuple_limit, seed):
        assignment = dict(zip(variables, values))
        if any(arithmetic.is_zero(assignment[name]) for name in law.nonzero):
            continue
        env = Environment(
            {name: tag for name in variables},
            {name: Literal(value, tag) for name, value in assignment.items()},
        )
        checked += 1
        try:
            left, right = evaluate(lhs, env), evaluate(rhs, env)
        except CAError as e:
            return LawReport(law.name, tag, False, checked, assignment, str(e))
        if not _same(left, right):
            detail = f"{print_expr(lhs)} = {print_expr(left)}, {print_expr(rhs)} = {print_expr(right)}"
            logger.debug(f"{law.name} fails on {tag}: {detail}")
            return LawReport(law.name, tag, False, checked, assignment, detail)
    return LawReport(law.name, tag, True, checked)


def check_all_laws(
    tag: TypeTag,
    samples: Sequence,
    tuple_limit: int = 4096,
    seed: int = 1998,
) -> List[Tuple[str, LawReport]]:
    """Every law of every structure `tag` claims."""
    return [
        (structure, check_laws(tag, samples, law, tuple_limit, seed))
        for structure, law in laws_for(tag)
    ]


def random_samples(tag: TypeTag, count: int, seed: int = 1998, value_range: int = 9) -> List:
    rng = random.Random(seed)
    arithmetic = arithmetic_for(tag)
    return [arithmetic.sample(rng, value_range) for _ in range(count)]
