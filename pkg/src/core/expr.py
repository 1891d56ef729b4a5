"""
Parser for the correction-term mini-language
修正项小语言的解析器

Grammar (public, versioned contract used by the CLI --an flag), version 1:

    expr   := term (('+' | '-') term)*
    term   := factor (('*' | '/' | implicit) factor)*
    factor := ['-'] atom ['^' uint]
    atom   := number | 'n' | '(' expr ')' | '\\frac' '{' expr '}' '{' expr '}'

Implicit multiplication is accepted only as <number>n and <number>( , which is how
published bounds write denominators ("12n", "10n^3", "2(2n+1)"). Decimal literals
(".9", "1.1") are terminating decimals read as exact rationals. "^{k}" braces and
the Unicode minus sign are accepted as well.
"""

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Tuple

from .errors import ExactArithmeticError, ExprDomainError, ExprSyntaxError
from .exact import Poly, RatFunc

GRAMMAR_VERSION = 1

LITERAL, VAR, NEG, ADD, SUB, MUL, DIV, POW = "literal", "n", "neg", "add", "sub", "mul", "div", "pow"
_BINARY = {ADD: "+", SUB: "-", MUL: "*", DIV: "/"}


@dataclass(frozen=True)
class ExprAst:
    """
    Expression tree node
    表达式树节点

    kind is one of literal, n, neg, add, sub, mul, div, pow; value is set for
    literals and exponent for pow nodes.
    """
    kind: str
    children: Tuple["ExprAst", ...] = ()
    value: Optional[Fraction] = None
    exponent: Optional[int] = None

    def __post_init__(self):
        if self.kind == POW and (self.exponent is None or self.exponent < 1):
            raise ExprDomainError("pow exponent must be a positive integer")

    @staticmethod
    def literal(value) -> "ExprAst":
        return ExprAst(LITERAL, value=Fraction(value))

    @staticmethod
    def var() -> "ExprAst":
        return ExprAst(VAR)

    @staticmethod
    def neg(child: "ExprAst") -> "ExprAst":
        return ExprAst(NEG, (child,))

    @staticmethod
    def binary(kind: str, left: "ExprAst", right: "ExprAst") -> "ExprAst":
        return ExprAst(kind, (left, right))

    @staticmethod
    def pow(base: "ExprAst", exponent: int) -> "ExprAst":
        return ExprAst(POW, (base,), exponent=exponent)


_WHITESPACE = " \t\r\n"
_MINUS = ("-", "−")
_TIMES = ("*", "·", "×")


class _Parser:
    """Recursive descent over the source string; offsets are reported in UTF-8 bytes"""

    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    # Lexical helpers

    def _byte_offset(self, pos: Optional[int] = None) -> int:
        pos = self.pos if pos is None else pos
        return len(self.text[:pos].encode("utf-8"))

    def _error(self, message: str, expected=()) -> ExprSyntaxError:
        return ExprSyntaxError(message, self._byte_offset(), expected)

    def _skip(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos] in _WHITESPACE:
            self.pos += 1

    def _peek(self) -> str:
        self._skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def _starts(self, token: str) -> bool:
        self._skip()
        return self.text.startswith(token, self.pos)

    def _expect(self, token: str) -> None:
        if not self._starts(token):
            found = self._peek() or "end of input"
            raise self._error(f"unexpected {found!r}", [token])
        self.pos += len(token)

    # Grammar

    def parse(self) -> ExprAst:
        node = self.expr()
        if self._peek():
            raise self._error(f"unexpected {self._peek()!r}", ["+", "-", "*", "/", ")", "end of input"])
        return node

    def expr(self) -> ExprAst:
        node = self.term()
        while True:
            ch = self._peek()
            if ch == "+":
                self.pos += 1
                node = ExprAst.binary(ADD, node, self.term())
            elif ch in _MINUS and ch:
                self.pos += 1
                node = ExprAst.binary(SUB, node, self.term())
            else:
                return node

    def term(self) -> ExprAst:
        node, implicit_ok = self.factor()
        while True:
            ch = self._peek()
            if ch and ch in _TIMES:
                self.pos += 1
                right, implicit_ok = self.factor()
                node = ExprAst.binary(MUL, node, right)
            elif ch == "/":
                self.pos += 1
                right, implicit_ok = self.factor()
                node = ExprAst.binary(DIV, node, right)
            elif implicit_ok and ch in ("n", "("):
                right, implicit_ok = self.factor()
                node = ExprAst.binary(MUL, node, right)
            else:
                return node

    def factor(self) -> Tuple[ExprAst, bool]:
        """Returns the factor and whether it may be followed by implicit multiplication"""
        negate = False
        ch = self._peek()
        if ch and ch in _MINUS:
            self.pos += 1
            negate = True
        node, is_number = self.atom()
        if self._peek() == "^":
            self.pos += 1
            node = ExprAst.pow(node, self.exponent())
            is_number = False
        if negate:
            node = ExprAst.neg(node)
        return node, is_number

    def exponent(self) -> int:
        braced = self._peek() == "{"
        if braced:
            self.pos += 1
        ch = self._peek()
        if ch and ch in _MINUS:
            raise ExprDomainError(f"negative exponent at byte {self._byte_offset()}")
        match = re.compile(r"\d+").match(self.text, self.pos)
        if not match:
            raise self._error("expected an exponent", ["unsigned integer"])
        value = int(match.group())
        if value == 0:
            raise ExprDomainError(f"exponent 0 at byte {self._byte_offset()}")
        self.pos = match.end()
        if braced:
            self._expect("}")
        return value

    _NUMBER = re.compile(r"\d+(?:\.\d*)?|\.\d+")

    def atom(self) -> Tuple[ExprAst, bool]:
        ch = self._peek()
        if ch == "n":
            self.pos += 1
            return ExprAst.var(), False
        if ch == "(":
            self.pos += 1
            node = self.expr()
            self._expect(")")
            return node, False
        if self._starts("\\frac"):
            self.pos += len("\\frac")
            self._expect("{")
            top = self.expr()
            self._expect("}")
            self._expect("{")
            bottom = self.expr()
            self._expect("}")
            return ExprAst.binary(DIV, top, bottom), False
        match = self._NUMBER.match(self.text, self.pos)
        if match:
            self.pos = match.end()
            text = match.group()
            if text.endswith("."):
                text += "0"
            return ExprAst.literal(Fraction(text)), True
        found = ch or "end of input"
        raise self._error(f"unexpected {found!r}", ["number", "n", "(", "\\frac", "-"])


def parse_expr(text: str) -> ExprAst:
    """
    Parse a correction-term expression into an AST
    将修正项表达式解析为语法树
    """
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    return _Parser(text).parse()


def lower_to_ratfunc(ast: ExprAst) -> RatFunc:
    """
    Lower an AST to an exact normalized rational function in n
    将语法树转换为精确的有理函数
    """
    kind = ast.kind
    if kind == LITERAL:
        return RatFunc(Poly([ast.value]))
    if kind == VAR:
        return RatFunc(Poly.var())
    if kind == NEG:
        return -lower_to_ratfunc(ast.children[0])
    if kind == POW:
        return lower_to_ratfunc(ast.children[0]) ** ast.exponent
    left, right = (lower_to_ratfunc(c) for c in ast.children)
    if kind == ADD:
        return left + right
    if kind == SUB:
        return left - right
    if kind == MUL:
        return left * right
    if kind == DIV:
        if right.is_zero():
            raise ExactArithmeticError("division by an expression that is identically zero")
        return left / right
    raise ValueError(f"Unknown node kind: {kind}")


def parse_ratfunc(text: str) -> RatFunc:
    return lower_to_ratfunc(parse_expr(text))


def evaluate_ast(ast: ExprAst, x) -> Fraction:
    """Direct exact interpretation of the AST at n = x"""
    x = Fraction(x)
    kind = ast.kind
    if kind == LITERAL:
        return ast.value
    if kind == VAR:
        return x
    if kind == NEG:
        return -evaluate_ast(ast.children[0], x)
    if kind == POW:
        return evaluate_ast(ast.children[0], x) ** ast.exponent
    left, right = (evaluate_ast(c, x) for c in ast.children)
    if kind == ADD:
        return left + right
    if kind == SUB:
        return left - right
    if kind == MUL:
        return left * right
    if right == 0:
        raise ExactArithmeticError(f"division by zero at n={x}")
    return left / right


# Pretty printing

_LEVEL = {ADD: 1, SUB: 1, MUL: 2, DIV: 2, NEG: 3, POW: 4, LITERAL: 5, VAR: 5}


def _literal_text(q: Fraction) -> str:
    if q < 0:
        return f"({q})"
    if q.denominator == 1:
        return str(q.numerator)
    den, twos, fives = q.denominator, 0, 0
    while den % 2 == 0:
        den //= 2
        twos += 1
    while den % 5 == 0:
        den //= 5
        fives += 1
    if den != 1:
        return f"({q.numerator}/{q.denominator})"
    k = max(twos, fives)
    digits = str(q.numerator * 10**k // q.denominator).rjust(k + 1, "0")
    return f"{digits[:-k]}.{digits[-k:]}"


def _level(ast: ExprAst) -> int:
    # literals always print as an atom, parenthesized when not a plain decimal
    return _LEVEL[ast.kind]


def format_expr(ast: ExprAst) -> str:
    """Render an AST so that parse_expr(format_expr(ast)) == ast for parsed input"""
    kind = ast.kind
    if kind == LITERAL:
        return _literal_text(ast.value)
    if kind == VAR:
        return "n"
    if kind == NEG:
        child = ast.children[0]
        inner = format_expr(child)
        return f"-{inner}" if _level(child) >= 4 else f"-({inner})"
    if kind == POW:
        base = ast.children[0]
        inner = format_expr(base)
        if _level(base) < 5:
            inner = f"({inner})"
        return f"{inner}^{ast.exponent}"
    left, right = ast.children
    level = _LEVEL[kind]
    ltext, rtext = format_expr(left), format_expr(right)
    if _level(left) < level:
        ltext = f"({ltext})"
    if _level(right) <= level:
        rtext = f"({rtext})"
    return f"{ltext} {_BINARY[kind]} {rtext}"


_CONSTANT = re.compile(r"(?<![A-Za-z\\])c(?![A-Za-z])")


def substitute_constant(template: str, c) -> str:
    """Replace the unknown constant c of a family template by an exact value"""
    c = Fraction(c)
    return _CONSTANT.sub(f"({c.numerator}/{c.denominator})", template)
