"""Scalars for interval-map computations: exact quadratic surds and float64.

Two backends share one algebra:

* exact -- elements ``q0 + q1*sqrt(d)`` of a real quadratic field, with
  ``Fraction`` coefficients and a square-free radicand ``d``.  Plain
  rationals carry ``d = 1``.  Arithmetic, equality and ordering are all
  decided by rational arithmetic, never by rounding.
* float -- ordinary Python floats, used for Monte Carlo work and as a
  cross-check of the exact path.

The backends never mix silently.  Combining a :class:`Surd` with a float
raises :class:`MixedBackendError`; combining two surds over distinct
irrational radicands raises :class:`MixedRadicandError`.  Conversion is
always explicit (``float(x)``).
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from typing import Union


class MixedBackendError(TypeError):
    """An exact scalar and a float were combined in one operation."""


class MixedRadicandError(ArithmeticError):
    """Two exact scalars over different irrational radicands were combined."""


class ParseError(ValueError):
    """A scalar, step-function or system text form could not be parsed."""


def _square_free_split(v: int) -> tuple[int, int]:
    """Return ``(s, d)`` with ``v == s*s*d`` and ``d`` square-free."""
    if v < 0:
        raise ValueError("radicand must be nonnegative")
    if v == 0:
        return 0, 1
    s, d, rem = 1, 1, v
    f = 2
    while f * f <= rem:
        if rem % f == 0:
            e = 0
            while rem % f == 0:
                rem //= f
                e += 1
            s *= f ** (e // 2)
            if e % 2:
                d *= f
        f += 1
    return s, d * rem


_RationalLike = Union[int, Fraction, str]


class Surd:
    """Exact scalar ``q0 + q1*sqrt(d)`` with rational q0, q1 and square-free d.

    Construction canonicalizes: the square part of the radicand is folded
    into ``q1`` (``sqrt(8)`` becomes ``2*sqrt(2)``), and a vanishing ``q1``
    forces ``d == 1``.  The canonical triple makes equality and hashing
    structural.
    """

    __slots__ = ("q0", "q1", "d")

    def __init__(self, q0: _RationalLike = 0, q1: _RationalLike = 0, d: int = 1):
        if isinstance(q0, float) or isinstance(q1, float):
            raise MixedBackendError("exact scalars take rational coefficients, not floats")
        q0 = Fraction(q0)
        q1 = Fraction(q1)
        d = int(d)
        if d < 0:
            raise ValueError("radicand must be a nonnegative integer")
        if d == 0:
            q1 = Fraction(0)
            d = 1
        elif q1:
            s, d = _square_free_split(d)
            q1 *= s
            if d == 1:
                q0 += q1
                q1 = Fraction(0)
        if not q1:
            d = 1
        object.__setattr__(self, "q0", q0)
        object.__setattr__(self, "q1", q1)
        object.__setattr__(self, "d", d)

    def __setattr__(self, name, value):  # pragma: no cover - guard only
        raise AttributeError("Surd is immutable")

    # -- helpers ---------------------------------------------------------

    @staticmethod
    def _coerce(other) -> "Surd | None":
        if isinstance(other, Surd):
            return other
        if isinstance(other, bool):
            return None
        if isinstance(other, (int, Fraction)):
            return Surd(other)
        if isinstance(other, float):
            raise MixedBackendError("cannot mix exact and float scalars; convert explicitly")
        return None

    def _common_d(self, other: "Surd") -> int:
        if self.d == other.d:
            return self.d
        if other.d == 1:
            return self.d
        if self.d == 1:
            return other.d
        raise MixedRadicandError(f"cannot combine sqrt({self.d}) with sqrt({other.d})")

    def _sign(self) -> int:
        q0, q1, d = self.q0, self.q1, self.d
        if not q1:
            return (q0 > 0) - (q0 < 0)
        if not q0:
            return 1 if q1 > 0 else -1
        s0 = 1 if q0 > 0 else -1
        s1 = 1 if q1 > 0 else -1
        if s0 == s1:
            return s0
        # Opposite signs: |q0| vs |q1|*sqrt(d) decided by squaring.
        lhs = q0 * q0
        rhs = q1 * q1 * d
        if lhs == rhs:
            return 0  # only possible when q1 == 0; kept for safety
        return s0 if lhs > rhs else s1

    # -- arithmetic ------------------------------------------------------

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        d = self._common_d(o)
        return Surd(self.q0 + o.q0, self.q1 + o.q1, d)

    __radd__ = __add__

    def __neg__(self):
        return Surd(-self.q0, -self.q1, self.d)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        d = self._common_d(o)
        return Surd(self.q0 - o.q0, self.q1 - o.q1, d)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        d = self._common_d(o)
        return Surd(self.q0 * o.q0 + self.q1 * o.q1 * d, self.q0 * o.q1 + self.q1 * o.q0, d)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        d = self._common_d(o)
        norm = o.q0 * o.q0 - o.q1 * o.q1 * d
        if norm == 0:
            # d square-free: the conjugate norm vanishes only at zero.
            raise ZeroDivisionError("division by zero scalar")
        return Surd(
            (self.q0 * o.q0 - self.q1 * o.q1 * d) / norm,
            (self.q1 * o.q0 - self.q0 * o.q1) / norm,
            d,
        )

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o / self

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int):
            return NotImplemented
        if exponent < 0:
            return Surd(1) / self ** (-exponent)
        out = Surd(1)
        base = self
        e = exponent
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def __abs__(self):
        return -self if self._sign() < 0 else self

    # -- comparisons -----------------------------------------------------

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if self.d != o.d:
            return False  # distinct canonical radicands never collide
        return self.q0 == o.q0 and self.q1 == o.q1

    def __hash__(self):
        if not self.q1:
            return hash(self.q0)  # agrees with int/Fraction hashing
        return hash((self.q0, self.q1, self.d))

    def __lt__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return (self - o)._sign() < 0

    def __le__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return (self - o)._sign() <= 0

    def __gt__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return (self - o)._sign() > 0

    def __ge__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return (self - o)._sign() >= 0

    def __bool__(self):
        return bool(self.q0) or bool(self.q1)

    # -- conversions -----------------------------------------------------

    def __float__(self):
        if not self.q1:
            return float(self.q0)
        # sqrt(d) as a Fraction good to 1e-20, so the (possibly cancelling)
        # sum is formed exactly and rounded once at the end
        scale = 10**20
        root = Fraction(math.isqrt(self.d * scale * scale), scale)
        return float(self.q0 + self.q1 * root)

    @property
    def is_rational(self) -> bool:
        return not self.q1

    def as_fraction(self) -> Fraction:
        if self.q1:
            raise ValueError("scalar is irrational")
        return self.q0

    def __str__(self):
        return format_scalar(self)

    def __repr__(self):
        if not self.q1:
            return f"Surd({str(self.q0)!r})"
        return f"Surd({str(self.q0)!r}, {str(self.q1)!r}, {self.d})"


def sqrt_scalar(v: _RationalLike) -> Surd:
    """Exact square root of a nonnegative rational, as a surd.

    ``sqrt(p/q) = sqrt(p*q)/q``; the square part of the argument folds into
    the rational coefficient, keeping the stored radicand square-free.
    """
    r = Fraction(v)
    if r < 0:
        raise ValueError("square root of a negative rational")
    return Surd(0, Fraction(1, r.denominator), r.numerator * r.denominator)


#: One scalar value on either backend.
Scalar = Union[Surd, float]


def is_exact(x: Scalar) -> bool:
    """True for exact-backend scalars (surds, ints, Fractions)."""
    return isinstance(x, (Surd, int, Fraction)) and not isinstance(x, bool)


def exactify(x) -> Surd:
    """Coerce an int/Fraction/Surd to a Surd; floats are rejected."""
    if isinstance(x, Surd):
        return x
    if isinstance(x, float):
        raise MixedBackendError("float cannot be lifted to the exact backend")
    return Surd(x)


_FLOAT_MARK = re.compile(r"[.eE]")
_TERM_SPLIT = re.compile(r"[+-]?[^+-]+")
_SURD_TERM = re.compile(r"([+-]?)(?:(\d+(?:/\d+)?)\*)?sqrt\((\d+)\)")
_RATIONAL_TERM = re.compile(r"[+-]?\d+(?:/\d+)?")


def parse_scalar(text: str) -> Scalar:
    """Parse ``p/q``, ``q0 + q1*sqrt(d)``, or a decimal.

    Decimal forms (anything with a point or exponent) parse to a float and
    therefore force the float backend; everything else stays exact.
    """
    s = text.strip().replace(" ", "")
    if not s:
        raise ParseError("empty scalar")
    if "sqrt" not in s and _FLOAT_MARK.search(s):
        try:
            v = float(s)
        except ValueError as exc:
            raise ParseError(f"bad scalar {text!r}") from exc
        if not math.isfinite(v):
            raise ParseError(f"non-finite scalar {text!r}")
        return v
    total = Surd(0)
    pos = 0
    try:
        for m in _TERM_SPLIT.finditer(s):
            if m.start() != pos:
                raise ParseError(f"bad scalar {text!r}")
            pos = m.end()
            term = m.group(0)
            sm = _SURD_TERM.fullmatch(term)
            if sm:
                sign, coeff, d = sm.groups()
                q1 = Fraction(coeff) if coeff else Fraction(1)
                if sign == "-":
                    q1 = -q1
                total = total + Surd(0, q1, int(d))
                continue
            if _RATIONAL_TERM.fullmatch(term):
                total = total + Surd(Fraction(term))
                continue
            raise ParseError(f"bad scalar term {term!r} in {text!r}")
    except MixedRadicandError as exc:
        raise ParseError(f"mixed radicands in {text!r}") from exc
    except ZeroDivisionError as exc:
        raise ParseError(f"zero denominator in {text!r}") from exc
    if pos != len(s):
        raise ParseError(f"bad scalar {text!r}")
    return total


def format_scalar(x: Scalar) -> str:
    """Canonical text form; ``parse_scalar`` round-trips it bit-exactly."""
    if isinstance(x, float):
        return repr(x)
    x = exactify(x)
    if not x.q1:
        return str(x.q0)
    if not x.q0:
        return f"{x.q1}*sqrt({x.d})"
    if x.q1 < 0:
        return f"{x.q0} - {-x.q1}*sqrt({x.d})"
    return f"{x.q0} + {x.q1}*sqrt({x.d})"


def _pair_backend(lo, hi) -> tuple[Scalar, Scalar]:
    lo_f = isinstance(lo, float)
    hi_f = isinstance(hi, float)
    if lo_f or hi_f:
        if (not lo_f and isinstance(lo, Surd)) or (not hi_f and isinstance(hi, Surd)):
            raise MixedBackendError("interval endpoints mix exact and float scalars")
        return float(lo), float(hi)
    return exactify(lo), exactify(hi)


class Interval:
    """Subinterval of [0,1] with scalar endpoints, half-open by default.

    ``closed_right`` is bookkeeping for display; all integration and
    comparison semantics in this package are almost-everywhere, so a
    single endpoint never carries weight.
    """

    __slots__ = ("lo", "hi", "closed_right")

    def __init__(self, lo, hi, closed_right: bool = False):
        lo, hi = _pair_backend(lo, hi)
        if hi < lo:
            raise ValueError(f"empty interval: [{lo}, {hi})")
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)
        object.__setattr__(self, "closed_right", bool(closed_right))

    def __setattr__(self, name, value):  # pragma: no cover - guard only
        raise AttributeError("Interval is immutable")

    @property
    def length(self) -> Scalar:
        return self.hi - self.lo

    @property
    def is_null(self) -> bool:
        """True when the interval carries no measure."""
        return self.lo == self.hi

    def contains(self, x) -> bool:
        if self.closed_right:
            return self.lo <= x <= self.hi
        return self.lo <= x < self.hi

    def intersect(self, other: "Interval") -> "Interval | None":
        lo = self.lo if self.lo >= other.lo else other.lo
        if self.hi < other.hi:
            hi, closed = self.hi, self.closed_right
        elif other.hi < self.hi:
            hi, closed = other.hi, other.closed_right
        else:
            hi, closed = self.hi, self.closed_right and other.closed_right
        if hi < lo:
            return None
        return Interval(lo, hi, closed)

    def __eq__(self, other):
        if not isinstance(other, Interval):
            return NotImplemented
        return (
            self.lo == other.lo
            and self.hi == other.hi
            and self.closed_right == other.closed_right
        )

    def __hash__(self):
        return hash((self.lo, self.hi, self.closed_right))

    def __repr__(self):
        right = "]" if self.closed_right else ")"
        return f"[{format_scalar(self.lo)}, {format_scalar(self.hi)}{right}"
