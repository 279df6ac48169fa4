from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from core.carriers import ComplexQ, tag_of
from core.engine import elaborate, evaluate
from core.errors import LexicalError, LookupFailure, ParseError, TypeCheckError
from core.expr import Apply, Environment, FreeSymbol, Literal
from core.parser import (
    Binding,
    Declaration,
    ExprStatement,
    TokenKind,
    TypeExpr,
    parse_expr,
    parse_program,
    parse_type,
    tokenize,
)
from core.printer import print_expr
from core.typetags import COMPLEX, INTEGER, QUATERNION, RATIONAL, matrix, polynomial

from .conftest import SYMBOLS, complexes, fractions, outcome, symbol_env, untyped_trees


def a(name):
    return FreeSymbol(name)


def kinds_and_texts(source):
    return [(token.kind, token.text) for token in tokenize(source)]


# tokenizer

def test_tokenize_binding():
    assert kinds_and_texts("z := 2*i;") == [
        (TokenKind.IDENTIFIER, "z"),
        (TokenKind.OPERATOR, ":="),
        (TokenKind.INTEGER, "2"),
        (TokenKind.OPERATOR, "*"),
        (TokenKind.IDENTIFIER, "i"),
        (TokenKind.PUNCTUATION, ";"),
    ]


def test_tokenize_empty():
    assert tokenize("") == []
    assert tokenize("  -- only a comment\n\t") == []


def test_illegal_character():
    with pytest.raises(LexicalError) as excinfo:
        tokenize("@")
    assert str(excinfo.value) == "1:1: illegal character '@'"


def test_positions_on_later_lines():
    tokens = tokenize("x : Rational;\n  x := 1; -- done\ny")
    assert [(t.text, t.line, t.column) for t in tokens][-4:] == [
        (":=", 2, 5),
        ("1", 2, 8),
        (";", 2, 9),
        ("y", 3, 1),
    ]


def test_keywords():
    assert [t.kind for t in tokenize("Norm Zero Unit Normal")] == [
        TokenKind.KEYWORD,
        TokenKind.KEYWORD,
        TokenKind.KEYWORD,
        TokenKind.IDENTIFIER,
    ]


@given(untyped_trees())
def test_token_positions_index_the_source(tree):
    source = print_expr(tree)
    lines = source.split("\n")
    previous = (0, 0)
    for token in tokenize(source):
        assert (token.line, token.column) > previous
        start = token.column - 1
        assert lines[token.line - 1][start:start + len(token.text)] == token.text
        previous = (token.line, token.column)


# expressions

def test_parse_sum_of_product():
    assert parse_expr("x + i*y") == Apply("+", (a("x"), Apply("*", (a("i"), a("y")))))
    assert parse_expr("a*y + 2") == Apply("+", (Apply("*", (a("a"), a("y"))), Literal(2)))


def test_parse_parenthesized_negation():
    assert parse_expr("-(x)") == Apply("-", (a("x"),))


def test_left_associativity():
    assert parse_expr("a - b - c") == Apply("-", (Apply("-", (a("a"), a("b"))), a("c")))
    assert parse_expr("a/b*c") == Apply("*", (Apply("/", (a("a"), a("b"))), a("c")))


def test_unary_minus_binds_tightest():
    assert parse_expr("-a*b") == Apply("*", (Apply("-", (a("a"),)), a("b")))


def test_functions_and_reserved_constants():
    assert parse_expr("Norm(q*Conj(q)) + Zero") == Apply(
        "+",
        (Apply("Norm", (Apply("*", (a("q"), Apply("Conj", (a("q"),)))),)), a("Zero")),
    )


@pytest.mark.parametrize(
    "source, message",
    [
        ("(a + b", "1:7: unexpected end of input, expected ')'"),
        ("a + * b", "1:5: unexpected token '*', expected an expression"),
        ("a b", "1:3: unexpected token 'b'"),
        ("Norm q", "1:6: unexpected token 'q', expected '('"),
        ("", "1:1: unexpected end of input, expected an expression"),
    ],
)
def test_expression_errors(source, message):
    with pytest.raises(ParseError) as excinfo:
        parse_expr(source)
    assert str(excinfo.value) == message


# programs

def test_parse_program():
    statements = parse_program("x : Rational; x := 1/2;")
    assert statements == [
        Declaration("x", TypeExpr("Rational")),
        Binding("x", Apply("/", (Literal(1), Literal(2)))),
    ]
    assert statements[0].type_expr.to_tag() == RATIONAL


def test_parse_quaternion_declaration():
    (declaration,) = parse_program("q : Quaternion;")
    assert declaration.name == "q"
    assert declaration.type_expr.to_tag() == QUATERNION


def test_expression_statement():
    assert parse_program("a*3 + 2;\n") == [
        ExprStatement(Apply("+", (Apply("*", (a("a"), Literal(3))), Literal(2))))
    ]


def test_missing_expression_in_binding():
    with pytest.raises(ParseError) as excinfo:
        parse_program("x := ;")
    assert excinfo.value.position.line == 1
    assert excinfo.value.position.column == 6


def test_missing_semicolon():
    with pytest.raises(ParseError, match="expected ';'"):
        parse_program("x := 1")


@pytest.mark.parametrize(
    "source, expected",
    [
        ("Integer", INTEGER),
        ("ComplexQ", COMPLEX),
        ("Polynomial(Rational)", polynomial(RATIONAL)),
        ("Matrix(Rational, 3)", matrix(RATIONAL, 3)),
        ("Polynomial(ComplexQ)", polynomial(COMPLEX)),
    ],
)
def test_parse_type(source, expected):
    assert parse_type(source) == expected


@pytest.mark.parametrize(
    "source, error",
    [
        ("Real", LookupFailure),
        ("Matrix(Rational, 0)", TypeCheckError),
        ("Polynomial(Quaternion)", TypeCheckError),
        ("Matrix(Rational)", TypeCheckError),
        ("Matrix(Rational, 2) x", ParseError),
    ],
)
def test_bad_types(source, error):
    with pytest.raises(error):
        parse_type(source)


# printer

def test_print_examples():
    assert print_expr(Apply("+", (Apply("*", (a("a"), a("y"))), Literal(2)))) == "a*y + 2"
    assert print_expr(Apply("*", (Apply("+", (a("x"), a("y"))), a("z")))) == "(x + y)*z"
    assert print_expr(Literal(F(5, 6), RATIONAL)) == "5/6"


@pytest.mark.parametrize(
    "source",
    ["a - (b - c)", "a/(b*c)", "-(a + b)", "-(-a)", "a*-b", "Norm(a)*Conj(b - c)", "(a - b)*(c + d)"],
)
def test_print_keeps_needed_parentheses(source):
    assert print_expr(parse_expr(source)) == source


def test_print_drops_redundant_parentheses():
    assert print_expr(parse_expr("((a)) + (b*c)")) == "a + b*c"


def test_print_wraps_compound_literals():
    assert print_expr(Apply("*", (Literal(F(1, 2), RATIONAL), a("x")))) == "1/2*x"
    assert print_expr(Apply("-", (Literal(F(-3), RATIONAL),))) == "-(-3)"


@pytest.mark.parametrize(
    "value, text",
    [
        (F(-1, 2), "a/(-1/2)"),
        (ComplexQ(0, -2), "a/(-2*i)"),
        (ComplexQ(1, -1), "a/(1 - i)"),
        (F(-3), "a/-3"),
        (ComplexQ(0, -1), "a/-i"),
    ],
)
def test_print_signed_literal_divisors(value, text):
    assert print_expr(Apply("/", (a("a"), Literal(value, tag_of(value))))) == text


def test_printed_quotient_keeps_its_value():
    env = Environment({"a": RATIONAL}).bind("a", Literal(F(1), RATIONAL))
    e = Apply("/", (FreeSymbol("a", RATIONAL), Literal(F(-1, 2), RATIONAL)), RATIONAL)
    reparsed = elaborate(parse_expr(print_expr(e)), env)
    assert evaluate(reparsed, env) == evaluate(e, env) == Literal(F(-2), RATIONAL)


def printed_result_keeps_its_value(tree, tag, bound, values):
    partial = symbol_env(tag, {name: values[name] for name in bound})
    result = outcome(lambda: evaluate(elaborate(tree, partial), partial))
    if isinstance(result, type):
        return
    reparsed = elaborate(parse_expr(print_expr(result)), partial, result.tag)
    total = symbol_env(tag, values)
    assert outcome(lambda: evaluate(reparsed, total)) == outcome(lambda: evaluate(result, total))


@settings(max_examples=300)
@given(untyped_trees(), st.sets(st.sampled_from(SYMBOLS)), st.fixed_dictionaries({n: fractions for n in SYMBOLS}))
def test_printed_partial_results_keep_their_value(tree, bound, values):
    printed_result_keeps_its_value(tree, RATIONAL, bound, values)


@settings(max_examples=300)
@given(untyped_trees(), st.sets(st.sampled_from(SYMBOLS)), st.fixed_dictionaries({n: complexes for n in SYMBOLS}))
def test_printed_complex_results_keep_their_value(tree, bound, values):
    printed_result_keeps_its_value(tree, COMPLEX, bound, values)


@settings(max_examples=500)
@given(untyped_trees(max_leaves=24))
def test_print_then_parse_round_trips(tree):
    assert parse_expr(print_expr(tree)) == tree


# precedence oracle

PRECEDENCE = {"+": 1, "-": 1, "*": 2}


def shunting_yard(tokens):
    """Reference evaluator for flat integer expressions."""
    output, operators = [], []

    def reduce():
        op = operators.pop()
        right, left = output.pop(), output.pop()
        output.append(left + right if op == "+" else left - right if op == "-" else left * right)

    for token in tokens:
        if isinstance(token, int):
            output.append(token)
            continue
        while operators and PRECEDENCE[operators[-1]] >= PRECEDENCE[token]:
            reduce()
        operators.append(token)
    while operators:
        reduce()
    return output[0]


flat_expressions = st.tuples(
    st.integers(min_value=0, max_value=50),
    st.lists(st.tuples(st.sampled_from(sorted(PRECEDENCE)), st.integers(min_value=0, max_value=50)), max_size=10),
).map(lambda t: [t[0]] + [item for pair in t[1] for item in pair])


@settings(max_examples=200)
@given(flat_expressions)
def test_precedence_matches_shunting_yard(tokens):
    source = " ".join(str(token) for token in tokens)
    env = Environment()
    result = evaluate(elaborate(parse_expr(source), env), env)
    assert result == Literal(shunting_yard(tokens), INTEGER)
