"""Parse big-integer inputs such as ``2^100000 - 1`` or ``20,480``.

Grammar::

    expr    := term (('+' | '-') term)?
    term    := literal ('^' literal)?
    literal := digit (digit | '_' | ',')*

Whitespace between tokens is ignored.  Evaluation is exact.
"""

from __future__ import annotations

from .errors import CollatzError

_MINUS_SIGNS = "-−"
_POWER_SIGNS = ("^", "**")


_CHUNK = 1000


def _digits_to_int(digits: str) -> int:
    # int() refuses very long strings on interpreters with a digit limit
    value = 0
    for i in range(0, len(digits), _CHUNK):
        chunk = digits[i : i + _CHUNK]
        value = value * 10 ** len(chunk) + int(chunk)
    return value


def decimal_string(n: int) -> str:
    """``str(n)`` without tripping the interpreter's digit limit."""
    if n < 10**_CHUNK:
        return str(n)
    digits = []
    while n:
        n, low = divmod(n, 10**_CHUNK)
        digits.append(str(low).zfill(_CHUNK) if n else str(low))
    return "".join(reversed(digits))


def parse_decimal(text: str) -> int:
    return _digits_to_int(text.strip())


class ParseError(CollatzError):
    def __init__(self, message: str, text: str, position: int):
        super().__init__(f"{message} at position {position} in {text!r}")
        self.text = text
        self.position = position


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def skip_space(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def fail(self, message):
        raise ParseError(message, self.text, self.pos)

    def literal(self) -> int:
        self.skip_space()
        start = self.pos
        if start >= len(self.text) or not self.text[start].isdigit():
            self.fail("expected a decimal literal")
        digits = []
        while self.pos < len(self.text):
            ch = self.text[self.pos]
            if ch.isdigit() and ch.isascii():
                digits.append(ch)
            elif ch in "_,":
                nxt = self.text[self.pos + 1 : self.pos + 2]
                if not (nxt.isdigit() and nxt.isascii()):
                    self.fail("digit separator must be followed by a digit")
            else:
                break
            self.pos += 1
        return _digits_to_int("".join(digits))

    def term(self) -> int:
        base = self.literal()
        self.skip_space()
        for sign in _POWER_SIGNS:
            if self.text.startswith(sign, self.pos):
                self.pos += len(sign)
                return base ** self.literal()
        return base

    def expr(self) -> int:
        value = self.term()
        self.skip_space()
        if self.pos < len(self.text):
            ch = self.text[self.pos]
            if ch == "+":
                self.pos += 1
                value += self.term()
            elif ch in _MINUS_SIGNS:
                self.pos += 1
                value -= self.term()
        self.skip_space()
        if self.pos != len(self.text):
            self.fail("unexpected character")
        return value


def parse_input(text: str) -> int:
    """Evaluate ``text`` and require a result of at least 1."""
    value = _Parser(text).expr()
    if value < 1:
        raise ParseError(f"value {value} is not a positive integer", text, 0)
    return value
