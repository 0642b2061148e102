"""Code-word encoding of Collatz sequences.

Each odd term above 1 is folded together with its ``3x + 1`` and the
halving that must follow into one ``ODD_GROUP`` symbol; every further
halving is an ``EXTRA_DIV`` symbol.  The word for 7 is ``---0-00-000``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .core import DEFAULT_BUDGET, StopReport, _check_natural
from .errors import BudgetExceeded, CollatzError


class Symbol(enum.Enum):
    ODD_GROUP = "-"
    EXTRA_DIV = "0"


@dataclass(frozen=True)
class CodeWord:
    symbols: tuple[Symbol, ...]

    def __str__(self) -> str:
        return "".join(s.value for s in self.symbols)

    def __len__(self) -> int:
        return len(self.symbols)

    @property
    def odd_groups(self) -> int:
        """U, the number of ``3x + 1`` computations."""
        return sum(1 for s in self.symbols if s is Symbol.ODD_GROUP)

    @property
    def extra_divisions(self) -> int:
        """D - U, halvings not paired with a ``3x + 1``."""
        return len(self.symbols) - self.odd_groups

    @property
    def divisions(self) -> int:
        """D, the total number of halvings (equal to the word length)."""
        return len(self.symbols)

    @classmethod
    def parse(cls, text: str) -> "CodeWord":
        try:
            return cls(tuple(Symbol(ch) for ch in text if not ch.isspace()))
        except ValueError:
            raise CollatzError(f"not a code word: {text!r}") from None


def encode(n: int, budget: int = DEFAULT_BUDGET) -> CodeWord:
    """Encode the sequence from ``n`` to 1; ``budget`` caps the symbol count."""
    _check_natural(n)
    symbols = []
    while n != 1:
        if len(symbols) >= budget:
            raise BudgetExceeded(n, budget)
        if n & 1:
            symbols.append(Symbol.ODD_GROUP)
            n = (3 * n + 1) >> 1
        else:
            symbols.append(Symbol.EXTRA_DIV)
            n >>= 1
    return CodeWord(tuple(symbols))


def decode(n: int, word: CodeWord) -> list[int]:
    """Replay ``word`` from ``n`` and return every term visited, ``n`` first.

    Raises :class:`CollatzError` if a symbol does not fit the parity of the
    current term or the replay does not end at 1.
    """
    _check_natural(n)
    terms = [n]
    for position, symbol in enumerate(word.symbols):
        if symbol is Symbol.ODD_GROUP:
            if n % 2 == 0 or n == 1:
                raise CollatzError(f"symbol {position} expects an odd term > 1, found {n}")
            n = 3 * n + 1
            terms.append(n)
            n //= 2
        else:
            if n % 2:
                raise CollatzError(f"symbol {position} expects an even term, found {n}")
            n //= 2
        terms.append(n)
    if n != 1:
        raise CollatzError(f"replay ended at {n}, not 1")
    return terms


def code_length_law(report: StopReport) -> int:
    """Code-word length predicted from a stop report: terms minus odd terms."""
    return report.stopping_time - report.odd_count
