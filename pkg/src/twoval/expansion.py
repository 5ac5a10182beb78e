"""Binary expansions x = sum sigma_k / beta^k for bases beta in (1, 2].

Digits are read off the orbit x_{k+1} = beta*x_k - sigma_k.  On the unit
interval a digit 1 is admissible when beta*x >= 1 and a digit 0 when
beta*x <= 1, so away from the single crossover the digit is forced; the
greedy convention prefers 1 there (making greedy(1, 2) = 111...).

Enumeration of all expansions works on the tail space [0, 1/(beta-1)] of
values an infinite digit stream can still represent.  There a genuine
overlap window exists for beta < 2 and one point can carry many words.
Words are kept in normal form: a digit 0 that would park the remainder
exactly on the all-ones tail is not taken, which is what makes dyadic
points at beta = 2 single-word.

Exact bases give exact orbits; float bases use a small slack so that
states grazing a threshold through rounding keep the digits the exact
orbit would produce.
"""

from __future__ import annotations

from typing import Iterable, Iterator

from .numerics import MixedBackendError, Scalar, Surd, exactify

#: Threshold tolerance for float orbits; exact orbits use zero.
FLOAT_SLACK = 1e-12


class InadmissibleChoiceError(ValueError):
    """A supplied digit choice is not admissible at the current state."""


class BudgetExceededError(RuntimeError):
    """Enumeration found more words than the caller allowed."""


class DigitSequence:
    """An immutable word of binary digits."""

    __slots__ = ("digits",)

    def __init__(self, digits: Iterable[int]):
        ds = tuple(int(d) for d in digits)
        if any(d not in (0, 1) for d in ds):
            raise ValueError("digits must be 0 or 1")
        object.__setattr__(self, "digits", ds)

    def __setattr__(self, name, value):  # pragma: no cover - guard only
        raise AttributeError("DigitSequence is immutable")

    @classmethod
    def from_string(cls, text: str) -> "DigitSequence":
        if not all(ch in "01" for ch in text):
            raise ValueError(f"bad digit string {text!r}")
        return cls(int(ch) for ch in text)

    def __len__(self) -> int:
        return len(self.digits)

    def __iter__(self) -> Iterator[int]:
        return iter(self.digits)

    def __getitem__(self, i):
        return self.digits[i]

    def __eq__(self, other):
        if isinstance(other, DigitSequence):
            return self.digits == other.digits
        if isinstance(other, (tuple, list)):
            return self.digits == tuple(other)
        return NotImplemented

    def __hash__(self):
        return hash(self.digits)

    def __str__(self):
        return "".join(str(d) for d in self.digits)

    def __repr__(self):
        return f"DigitSequence.from_string({str(self)!r})"


def _typed_pair(x, beta) -> tuple:
    """Put the point and the base on one backend (base decides)."""
    if isinstance(beta, float):
        if isinstance(x, Surd):
            raise MixedBackendError("exact point with float base; convert explicitly")
        return float(x), beta
    beta = exactify(beta)
    return exactify(x), beta


def _check_beta(beta):
    if not 1 < beta <= 2:
        raise ValueError("base must lie in (1, 2]")
    return beta


def evaluate_expansion(digits, beta) -> Scalar:
    """Value of the word: sum of digit_k / beta^k, k = 1..len."""
    beta = _check_beta(beta if isinstance(beta, float) else exactify(beta))
    word = DigitSequence(digits)
    acc = 0.0 if isinstance(beta, float) else exactify(0)
    for d in reversed(word.digits):
        acc = (acc + d) / beta
    return acc


def orbit_expansion(x, beta, length: int, choose=None) -> DigitSequence:
    """Digits read off the orbit, with a pluggable rule at crossover states.

    ``choose`` may be None (prefer 1: greedy), "lazy" (prefer 0), or a
    callable ``(k, options) -> digit`` receiving the admissible digits in
    ascending order.  A callable returning anything else raises
    InadmissibleChoiceError.
    """
    if length < 0:
        raise ValueError("length must be nonnegative")
    if choose is not None and choose != "lazy" and not callable(choose):
        raise TypeError("choose must be None, 'lazy', or a callable")
    x, beta = _typed_pair(x, beta)
    _check_beta(beta)
    if x < 0 or x > 1:
        raise ValueError("point must lie in [0,1]")
    is_float = isinstance(beta, float)
    slack = FLOAT_SLACK if is_float else 0
    digits = []
    for k in range(length):
        bx = beta * x
        options = []
        if bx <= 1 + slack:
            options.append(0)
        if bx >= 1 - slack:
            options.append(1)
        if choose is None:
            d = options[-1]
        elif choose == "lazy":
            d = options[0]
        else:
            d = choose(k, tuple(options))
            if d not in options:
                raise InadmissibleChoiceError(f"digit {d!r} not admissible at step {k}")
        x = bx - d
        if is_float:
            x = min(max(x, 0.0), 1.0)
        digits.append(d)
    return DigitSequence(digits)


def greedy_expansion(x, beta, length: int) -> DigitSequence:
    """The lexicographically largest word: digit 1 whenever beta*x >= 1."""
    return orbit_expansion(x, beta, length)


def enumerate_expansions(x, beta, length: int, max_words: int = 4096) -> list:
    """All normal-form words of the given length that can start an expansion of x.

    Words come out in decreasing lexicographic order, so the first one is
    the greedy word.  Each word w satisfies
    0 <= x - value(w) <= tail/beta^length with tail = 1/(beta-1).
    Raises BudgetExceededError beyond ``max_words`` words.
    """
    if length < 0:
        raise ValueError("length must be nonnegative")
    if length > 900:
        # the search recurses one frame per digit
        raise ValueError("enumeration length is capped at 900")
    if max_words < 1:
        raise ValueError("max_words must be positive")
    x, beta = _typed_pair(x, beta)
    _check_beta(beta)
    tail = 1 / (beta - 1)
    if x < 0 or x > tail:
        raise ValueError("point is not representable: must lie in [0, 1/(beta-1)]")
    is_float = isinstance(beta, float)
    slack = FLOAT_SLACK if is_float else 0
    words: list[DigitSequence] = []
    prefix: list[int] = []

    def descend(y, k: int):
        if k == length:
            if len(words) >= max_words:
                raise BudgetExceededError(f"more than {max_words} words")
            words.append(DigitSequence(prefix))
            return
        by = beta * y
        if by >= 1 - slack:
            nxt = by - 1
            if is_float:
                nxt = min(max(nxt, 0.0), tail)
            prefix.append(1)
            descend(nxt, k + 1)
            prefix.pop()
        # strictly below the all-ones tail value: keeps words in normal form
        if by < tail:
            prefix.append(0)
            descend(by, k + 1)
            prefix.pop()

    descend(x, 0)
    return words
