"""
Tokenizer and recursive-descent parser for the CA surface language.

    program   = { statement } ;
    statement = ident ":" type ";" | ident ":=" expr ";" | expr ";" ;
    type      = ident [ "(" type { "," (type | int) } ")" ] ;
    expr      = term { ("+" | "-") term } ;
    term      = unary { ("*" | "/") unary } ;
    unary     = [ "-" ] atom ;
    atom      = int | ident | func "(" expr ")" | "(" expr ")" ;
    func      = "Norm" | "Conj" | "Inversion" ;

Comments run from "--" to the end of the line.
"""

import logging
import re
from dataclasses import dataclass, field
from enum import Enum
from typing import List, Optional, Sequence, Tuple, Union

from .errors import CAError, LexicalError, ParseError, SourcePosition
from .expr import FUNCTIONS, NEG, RESERVED_CONSTANTS, Apply, Expr, FreeSymbol, Literal
from .typetags import TypeTag, make_tag

logger = logging.getLogger(__name__)

KEYWORDS = FUNCTIONS + RESERVED_CONSTANTS


class TokenKind(Enum):
    IDENTIFIER = "identifier"
    INTEGER = "integer-literal"
    OPERATOR = "operator"
    PUNCTUATION = "punctuation"
    KEYWORD = "keyword"


@dataclass(frozen=True)
class Token:
    kind: TokenKind
    text: str
    line: int
    column: int

    @property
    def position(self) -> SourcePosition:
        return SourcePosition(self.line, self.column)

    def __str__(self) -> str:
        return f"{self.kind.value} {self.text}"


_TOKEN_PATTERN = re.compile(
    r"""
    (?P<NEWLINE>\n)
  | (?P<SKIP>[ \t\r\f]+)
  | (?P<COMMENT>--[^\n]*)
  | (?P<INTEGER>[0-9]+)
  | (?P<IDENTIFIER>[A-Za-z][A-Za-z0-9_]*)
  | (?P<OPERATOR>:=|[-+*/])
  | (?P<PUNCTUATION>[:(),;])
    """,
    re.VERBOSE,
)


def tokenize(source: str) -> List[Token]:
    """Longest-match tokens with 1-based positions."""
    tokens: List[Token] = []
    line, line_start, pos = 1, 0, 0
    while pos < len(source):
        match = _TOKEN_PATTERN.match(source, pos)
        if match is None:
            raise LexicalError(
                f"illegal character {source[pos]!r}", SourcePosition(line, pos - line_start + 1)
            )
        kind = match.lastgroup
        text = match.group()
        column = pos - line_start + 1
        pos = match.end()
        if kind == "NEWLINE":
            line, line_start = line + 1, pos
        elif kind == "IDENTIFIER":
            token_kind = TokenKind.KEYWORD if text in KEYWORDS else TokenKind.IDENTIFIER
            tokens.append(Token(token_kind, text, line, column))
        elif kind not in ("SKIP", "COMMENT"):
            tokens.append(Token(TokenKind[kind], text, line, column))
    return tokens


@dataclass(frozen=True)
class TypeExpr:
    """Parsed type expression such as ``Matrix(Rational, 2)``."""
    name: str
    args: Tuple[Union["TypeExpr", int], ...] = ()
    position: Optional[SourcePosition] = field(default=None, compare=False, repr=False)

    def to_tag(self) -> TypeTag:
        args = tuple(arg.to_tag() if isinstance(arg, TypeExpr) else arg for arg in self.args)
        try:
            return make_tag(self.name, args)
        except CAError as e:
            raise e.with_position(self.position)

    def __str__(self) -> str:
        if not self.args:
            return self.name
        return f"{self.name}({', '.join(str(arg) for arg in self.args)})"


@dataclass(frozen=True)
class Declaration:
    name: str
    type_expr: TypeExpr
    position: Optional[SourcePosition] = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class Binding:
    name: str
    expr: Expr
    position: Optional[SourcePosition] = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class ExprStatement:
    expr: Expr
    position: Optional[SourcePosition] = field(default=None, compare=False, repr=False)


Statement = Union[Declaration, Binding, ExprStatement]


class Parser:
    """Recursive descent over a token list."""

    def __init__(self, tokens: Sequence[Token]):
        self.tokens = list(tokens)
        self.index = 0

    def _peek(self, offset: int = 0) -> Optional[Token]:
        index = self.index + offset
        return self.tokens[index] if index < len(self.tokens) else None

    def _end_position(self) -> SourcePosition:
        if not self.tokens:
            return SourcePosition(1, 1)
        last = self.tokens[-1]
        return SourcePosition(last.line, last.column + len(last.text))

    def _unexpected(self, token: Optional[Token], wanted: str = "") -> ParseError:
        suffix = f", expected {wanted}" if wanted else ""
        if token is None:
            return ParseError(f"unexpected end of input{suffix}", self._end_position())
        return ParseError(f"unexpected token '{token.text}'{suffix}", token.position)

    def _accept(self, text: str) -> Optional[Token]:
        token = self._peek()
        if token is not None and token.text == text and token.kind in (
            TokenKind.OPERATOR,
            TokenKind.PUNCTUATION,
        ):
            self.index += 1
            return token
        return None

    def _expect(self, text: str) -> Token:
        token = self._accept(text)
        if token is None:
            raise self._unexpected(self._peek(), f"'{text}'")
        return token

    def at_end(self) -> bool:
        return self.index >= len(self.tokens)

    def expect_end(self) -> None:
        if not self.at_end():
            raise self._unexpected(self._peek())

    # expressions

    def expr(self) -> Expr:
        left = self.term()
        while True:
            token = self._accept("+") or self._accept("-")
            if token is None:
                return left
            left = Apply(token.text, (left, self.term()), position=token.position)

    def term(self) -> Expr:
        left = self.unary()
        while True:
            token = self._accept("*") or self._accept("/")
            if token is None:
                return left
            left = Apply(token.text, (left, self.unary()), position=token.position)

    def unary(self) -> Expr:
        token = self._accept(NEG)
        if token is not None:
            return Apply(NEG, (self.atom(),), position=token.position)
        return self.atom()

    def atom(self) -> Expr:
        token = self._peek()
        if token is None:
            raise self._unexpected(None, "an expression")
        if token.kind == TokenKind.INTEGER:
            self.index += 1
            return Literal(int(token.text), position=token.position)
        if token.kind == TokenKind.IDENTIFIER:
            self.index += 1
            return FreeSymbol(token.text, position=token.position)
        if token.kind == TokenKind.KEYWORD:
            self.index += 1
            if token.text in RESERVED_CONSTANTS:
                return FreeSymbol(token.text, position=token.position)
            self._expect("(")
            argument = self.expr()
            self._expect(")")
            return Apply(token.text, (argument,), position=token.position)
        if self._accept("("):
            inner = self.expr()
            self._expect(")")
            return inner
        raise self._unexpected(token, "an expression")

    # statements

    def type_expr(self) -> TypeExpr:
        token = self._peek()
        if token is None or token.kind != TokenKind.IDENTIFIER:
            raise self._unexpected(token, "a type name")
        self.index += 1
        args: List[Union[TypeExpr, int]] = []
        if self._accept("("):
            args.append(self.type_expr())
            while self._accept(","):
                following = self._peek()
                if following is not None and following.kind == TokenKind.INTEGER:
                    self.index += 1
                    args.append(int(following.text))
                else:
                    args.append(self.type_expr())
            self._expect(")")
        return TypeExpr(token.text, tuple(args), token.position)

    def statement(self) -> Statement:
        first, second = self._peek(), self._peek(1)
        if first is not None and first.kind == TokenKind.IDENTIFIER and second is not None:
            if second.text == ":" and second.kind == TokenKind.PUNCTUATION:
                self.index += 2
                declared = self.type_expr()
                self._expect(";")
                return Declaration(first.text, declared, first.position)
            if second.text == ":=":
                self.index += 2
                bound = self.expr()
                self._expect(";")
                return Binding(first.text, bound, first.position)
        start = first.position if first is not None else self._end_position()
        value = self.expr()
        self._expect(";")
        return ExprStatement(value, start)

    def program(self) -> List[Statement]:
        statements = []
        while not self.at_end():
            statements.append(self.statement())
        return statements


def _as_tokens(source: Union[str, Sequence[Token]]) -> List[Token]:
    return tokenize(source) if isinstance(source, str) else list(source)


def parse_expr(source: Union[str, Sequence[Token]]) -> Expr:
    """Untyped skeleton of a single expression; all tokens must be consumed."""
    parser = Parser(_as_tokens(source))
    result = parser.expr()
    parser.expect_end()
    return result


def parse_program(source: str) -> List[Statement]:
    statements = Parser(tokenize(source)).program()
    logger.debug(f"Parsed {len(statements)} statement(s)")
    return statements


def parse_type(source: str) -> TypeTag:
    """Tag named by a type expression, e.g. ``Polynomial(Rational)``."""
    parser = Parser(tokenize(source))
    declared = parser.type_expr()
    parser.expect_end()
    return declared.to_tag()
