"""ASCII surface syntax for state expressions.

Grammar (whitespace is allowed between tokens)::

    expr  := term | expr sop term
    sop   := ('+' | '-') kind              kind in 1, 2, 3
    term  := atom | term atom              juxtaposition is the tensor product
    atom  := ['-'] '|' ('0'|'1') '>_' domain
           | 'null'
           | '(' expr ')'
           | ['-'] ('C'|'A') sop '^' domain domain
    domain := 'x' | 'y' | 'z' | 't'

``|0)_x`` is spelled ``|0>_x``; ``C_{+1}^{xy}`` is spelled ``C+1^xy``.
"""
from __future__ import annotations

from .errors import ParseError, UnknownDomain
from .model import ModelConfig
from .states import Expr, Leaf, Product, Superpose
from .values import DOMAIN_ORDER, NULL, Correlated, Ket, Signed, sign_char


class _Parser:
    def __init__(self, text: str, config: ModelConfig | None):
        self.text = text
        self.pos = 0
        self.config = config

    def error(self, message: str, pos: int | None = None):
        offset = len(self.text[: self.pos if pos is None else pos].encode("utf-8"))
        raise ParseError(message, offset)

    def skip(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self, ahead: int = 0) -> str:
        self.skip()
        i = self.pos + ahead
        return self.text[i] if i < len(self.text) else ""

    def peek_after_sign(self) -> str:
        """First non-space character after a leading '-'."""
        self.skip()
        i = self.pos + 1
        while i < len(self.text) and self.text[i].isspace():
            i += 1
        return self.text[i] if i < len(self.text) else ""

    def expect(self, literal: str) -> None:
        if not self.text.startswith(literal, self.pos):
            self.error(f"expected {literal!r}")
        self.pos += len(literal)

    def domain(self) -> str:
        if self.pos >= len(self.text) or self.text[self.pos] not in DOMAIN_ORDER:
            self.error("expected a domain label x, y, z or t")
        label = self.text[self.pos]
        if self.config is not None and not self.config.has_domain(label):
            raise UnknownDomain(
                f"domain {label!r} is not part of the {self.config.variant.value} model "
                f"(at byte {len(self.text[: self.pos].encode('utf-8'))})"
            )
        self.pos += 1
        return label

    def sop(self) -> tuple[int, int]:
        self.skip()
        start = self.pos
        sign = self.text[self.pos] if self.pos < len(self.text) else ""
        if sign not in "+-" or not sign:
            self.error("expected '+k' or '-k'")
        self.pos += 1
        self.skip()
        digit = self.text[self.pos] if self.pos < len(self.text) else ""
        if digit not in ("1", "2", "3"):
            self.error("map kind must be 1, 2 or 3", start if not digit else self.pos)
        self.pos += 1
        return (1 if sign == "+" else -1), int(digit)

    def at_sop(self) -> bool:
        c = self.peek()
        return c in ("+", "-") and c != "" and self.peek_after_sign().isdigit()

    def at_atom(self) -> bool:
        c = self.peek()
        if c in ("|", "(", "C", "A"):
            return True
        if c == "-":
            return self.peek_after_sign() in ("|", "C", "A")
        return self.text.startswith("null", self.pos)

    def expr(self) -> Expr:
        left = self.term()
        while self.at_sop():
            op, kind = self.sop()
            right = self.term()
            left = Superpose(kind, op, left, right)
        return left

    def term(self) -> Expr:
        left = self.atom()
        while self.at_atom():
            left = Product(left, self.atom())
        return left

    def atom(self) -> Expr:
        self.skip()
        if self.text.startswith("null", self.pos):
            self.pos += 4
            return Leaf(NULL)
        if self.peek() == "(":
            self.pos += 1
            inner = self.expr()
            self.skip()
            self.expect(")")
            return inner
        sign = 1
        if self.peek() == "-":
            sign = -1
            self.pos += 1
            self.skip()
        c = self.peek()
        if c == "|":
            self.pos += 1
            if self.pos >= len(self.text) or self.text[self.pos] not in "01":
                self.error("ket index must be 0 or 1")
            index = int(self.text[self.pos])
            self.pos += 1
            self.expect(">_")
            return Leaf(Signed(sign, Ket(self.domain(), index)))
        if c in ("C", "A"):
            self.pos += 1
            op, kind = self.sop()
            self.skip()
            self.expect("^")
            a = self.domain()
            b = self.domain()
            return Leaf(Signed(sign, Correlated(c, op, kind, (a, b))))
        self.error("expected a ket, 'null', '(' or a correlated state")


def parse(text: str, config: ModelConfig | None = None) -> Expr:
    """Parse expression text; ``config`` restricts the admissible domains."""
    p = _Parser(text, config)
    result = p.expr()
    p.skip()
    if p.pos != len(text):
        p.error("unexpected trailing input")
    return result


def render(expr) -> str:
    """Canonical spelling of an expression or a canonical value."""
    if isinstance(expr, Signed):
        return expr.render()
    if isinstance(expr, Leaf):
        return expr.value.render()
    if isinstance(expr, Superpose):
        right = render(expr.right)
        if isinstance(expr.right, Superpose):
            right = f"({right})"
        return f"{render(expr.left)} {sign_char(expr.op)}{expr.kind} {right}"
    if isinstance(expr, Product):
        left = render(expr.left)
        if isinstance(expr.left, Superpose):
            left = f"({left})"
        right = render(expr.right)
        if isinstance(expr.right, (Superpose, Product)):
            right = f"({right})"
        return left + right
    raise TypeError(f"cannot render {expr!r}")
