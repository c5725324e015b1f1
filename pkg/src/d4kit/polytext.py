"""Text form of polynomials in Z[i][X].

Grammar (whitespace is ignored everywhere)::

    poly  := ['+'|'-'] term (('+'|'-') term)*
    term  := coeff | coeff? var
    var   := 'X' ('^' uint)?
    coeff := uint | uint? 'i' | '(' int (('+'|'-') uint? 'i')? ')'

Examples: ``4X^3+24X^2+44X+24``, ``-2iX^2 - 4iX``, ``(1-2i)X + 3``.
"""
from __future__ import annotations

from .gint import GaussianInt
from .gpoly import GPoly, poly_print

__all__ = ["ParseError", "poly_parse", "poly_print"]


class ParseError(ValueError):
    """Malformed polynomial text; ``position`` indexes the original string."""

    def __init__(self, text: str, position: int, expected: str) -> None:
        self.text = text
        self.position = position
        self.expected = expected
        found = repr(text[position]) if position < len(text) else "end of input"
        super().__init__(f"at position {position}: expected {expected}, found {found}")


class _Parser:
    def __init__(self, text: str) -> None:
        self.text = text
        # strip whitespace but remember where every kept character came from
        self.chars = [ch for ch in text if not ch.isspace()]
        self.origin = [k for k, ch in enumerate(text) if not ch.isspace()]
        self.pos = 0

    def error(self, expected: str) -> ParseError:
        at = self.origin[self.pos] if self.pos < len(self.chars) else len(self.text)
        return ParseError(self.text, at, expected)

    def peek(self) -> str:
        return self.chars[self.pos] if self.pos < len(self.chars) else ""

    def take(self, ch: str) -> bool:
        if self.peek() == ch:
            self.pos += 1
            return True
        return False

    def uint(self) -> int:
        start = self.pos
        while self.peek().isdigit():
            self.pos += 1
        if start == self.pos:
            raise self.error("digit")
        return int("".join(self.chars[start:self.pos]))

    def parse(self) -> GPoly:
        if not self.chars:
            raise self.error("term")
        terms: dict[int, GaussianInt] = {}
        sign = -1 if self.take("-") else 1
        if sign == 1:
            self.take("+")
        while True:
            coeff, power = self.term()
            terms[power] = terms.get(power, GaussianInt(0, 0)) + coeff * sign
            if self.pos == len(self.chars):
                break
            if self.take("+"):
                sign = 1
            elif self.take("-"):
                sign = -1
            else:
                raise self.error("'+' or '-'")
        top = max(terms)
        return GPoly([terms.get(k, 0) for k in range(top + 1)])

    def term(self) -> tuple[GaussianInt, int]:
        ch = self.peek()
        if ch == "(":
            coeff = self.paren()
        elif ch.isdigit():
            n = self.uint()
            coeff = GaussianInt(0, n) if self.take("i") else GaussianInt(n, 0)
        elif ch == "i":
            self.pos += 1
            coeff = GaussianInt(0, 1)
        elif ch == "X":
            coeff = GaussianInt(1, 0)
        else:
            raise self.error("term")
        power = 0
        if self.take("X"):
            power = 1
            if self.take("^"):
                power = self.uint()
        return coeff, power

    def paren(self) -> GaussianInt:
        self.take("(")
        neg = self.take("-")
        if not neg:
            self.take("+")
        if self.peek() == "i":
            # "(i)", "(-i)"
            self.pos += 1
            value = GaussianInt(0, -1 if neg else 1)
        else:
            n = self.uint()
            if self.take("i"):
                value = GaussianInt(0, -n if neg else n)
            else:
                real = -n if neg else n
                value = GaussianInt(real, 0)
                if self.peek() in ("+", "-"):
                    s = 1 if self.chars[self.pos] == "+" else -1
                    self.pos += 1
                    mag = self.uint() if self.peek().isdigit() else 1
                    if not self.take("i"):
                        raise self.error("'i'")
                    value = GaussianInt(real, s * mag)
        if not self.take(")"):
            raise self.error("')'")
        return value


def poly_parse(text: str) -> GPoly:
    """Parse the text form into a :class:`GPoly`; raises :class:`ParseError`."""
    return _Parser(text).parse()
