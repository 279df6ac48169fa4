"""
Shared fixtures and the hypothesis profile for the kernel test suites.
"""

from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings, strategies as st

from core.carriers import ComplexQ, Quaternion
from core.errors import CAError
from core.expr import Apply, Environment, FreeSymbol, Literal
from core.typetags import RATIONAL

settings.register_profile(
    "kernel",
    derandomize=True,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("kernel")

SYMBOLS = ("a", "b", "c", "d")

small_ints = st.integers(min_value=-9, max_value=9)
fractions = st.builds(Fraction, small_ints, st.integers(min_value=1, max_value=9))
quaternions = st.builds(lambda *c: Quaternion(c), fractions, fractions, fractions, fractions)
complexes = st.builds(ComplexQ, fractions, fractions)


def untyped_trees(max_leaves: int = 12, ops=("+", "-", "*", "/")):
    """Parser-shaped skeletons: non-negative integer literals, symbols, binary and unary nodes."""
    leaves = st.one_of(
        st.integers(min_value=0, max_value=20).map(Literal),
        st.sampled_from(SYMBOLS).map(FreeSymbol),
    )

    def extend(children):
        return st.one_of(
            st.tuples(st.sampled_from(ops), children, children).map(lambda t: Apply(t[0], (t[1], t[2]))),
            children.map(lambda c: Apply("-", (c,))),
        )

    return st.recursive(leaves, extend, max_leaves=max_leaves)


def symbol_env(tag, values=None) -> Environment:
    """All test symbols declared `tag`, optionally bound to literals."""
    env = Environment({name: tag for name in SYMBOLS})
    for name, value in (values or {}).items():
        env = env.bind(name, Literal(value, tag))
    return env


def rational_env(values=None) -> Environment:
    return symbol_env(RATIONAL, {name: Fraction(value) for name, value in (values or {}).items()})


@pytest.fixture
def env() -> Environment:
    return rational_env()


def outcome(compute):
    """Result of `compute()`, or the type of the kernel error it raised."""
    try:
        return compute()
    except CAError as err:
        return type(err)
