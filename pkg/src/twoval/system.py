"""Weighted two-branch interval transformations and their pushforward.

The transformation has two expanding branches with common slope 1/(1-a),
a in (0, 1/2].  The first map sends [0, 1-a) up by x/(1-a) and the tail
[1-a, 1] by (x-a)/(1-a); the second map switches at a instead of 1-a.
A point at x follows the first map with probability alpha1(x), so a
density p splits into branch weights A1 = alpha1*p and A2 = p - A1.

:func:`pushforward_density` assembles the image density from the four
inverse branches; :func:`pushforward_measure` integrates the weights over
preimages directly, so the two agree only if both are right.
"""

from __future__ import annotations

import json
from enum import Enum
from fractions import Fraction

from .numerics import (
    Interval,
    MixedBackendError,
    ParseError,
    Scalar,
    exactify,
    format_scalar,
    parse_scalar,
)
from .piecewise import StepFunction, step_from_json_dict, step_to_json_dict


class BranchChoice(Enum):
    FIRST = 1
    SECOND = 2


def derive_n(a) -> int:
    """The integer n >= 2 with 1/(n+1) < a <= 1/n."""
    if not 0 < a or Fraction(1, 2) < a:
        raise ValueError(f"parameter must lie in (0, 1/2], got {a!r}")
    n = 2
    while not Fraction(1, n + 1) < a:
        n += 1
    return n


def apply_branch(a, branch: BranchChoice, x) -> Scalar:
    """One step of the chosen branch map at x."""
    if x < 0 or x > 1:
        raise ValueError(f"{x!r} is outside [0,1]")
    cut = (1 - a) if branch is BranchChoice.FIRST else a
    if x < cut:
        return x / (1 - a)
    return (x - a) / (1 - a)


class EquippedSystem:
    """Parameter a plus a weighting (p, alpha1) on one backend.

    p is a nonnegative step density (not necessarily of unit mass) and
    alpha1 maps into [0,1].  The derived quantities n = derive_n(a) and
    beta = 1/(1-a) in (1,2] come for free.
    """

    __slots__ = ("a", "density", "alpha1")

    def __init__(self, a, density: StepFunction, alpha1: StepFunction):
        if not isinstance(density, StepFunction) or not isinstance(alpha1, StepFunction):
            raise TypeError("density and alpha1 must be step functions")
        is_float = isinstance(a, float)
        if not is_float:
            a = exactify(a)
        if density.is_float != is_float or alpha1.is_float != is_float:
            raise MixedBackendError("a, density and alpha1 must share one backend")
        if not 0 < a or Fraction(1, 2) < a:
            raise ValueError(f"parameter must lie in (0, 1/2], got {format_scalar(a)}")
        if not density.is_nonnegative():
            raise ValueError("density must be nonnegative")
        if alpha1.min_value < 0 or alpha1.max_value > 1:
            raise ValueError("alpha1 must map into [0,1]")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "density", density)
        object.__setattr__(self, "alpha1", alpha1)

    def __setattr__(self, name, value):  # pragma: no cover - guard only
        raise AttributeError("EquippedSystem is immutable")

    @property
    def is_float(self) -> bool:
        return isinstance(self.a, float)

    @property
    def n(self) -> int:
        return derive_n(self.a)

    @property
    def beta(self) -> Scalar:
        return 1 / (1 - self.a)

    @property
    def weight_first(self) -> StepFunction:
        """A1 = alpha1 * p, the mass following the first map."""
        return self.alpha1 * self.density

    @property
    def weight_second(self) -> StepFunction:
        """A2 = (1 - alpha1) * p."""
        return self.density - self.weight_first

    def apply(self, branch: BranchChoice, x) -> Scalar:
        return apply_branch(self.a, branch, x)

    def __eq__(self, other):
        if not isinstance(other, EquippedSystem):
            return NotImplemented
        return (
            self.is_float == other.is_float
            and self.a == other.a
            and self.density == other.density
            and self.alpha1 == other.alpha1
        )

    def __hash__(self):
        return hash((self.a, self.density, self.alpha1))

    def __repr__(self):
        return (
            f"EquippedSystem(a={format_scalar(self.a)}, density={self.density!r}, "
            f"alpha1={self.alpha1!r})"
        )


def pushforward_density(system: EquippedSystem) -> StepFunction:
    """Image of the weighted density under one step of the transformation.

    Sums the four inverse-branch contributions; each inverse has slope
    (1-a), so every term carries the factor (1-a).  Total mass is
    conserved by construction.
    """
    a = system.a
    w = 1 - a
    a1 = system.weight_first
    a2 = system.weight_second
    # first map, upper branch: images start at (1-2a)/(1-a)
    c1_lo = (1 - 2 * a) / w
    # second map, lower branch: images stop at a/(1-a)
    c2_hi = a / w
    term_1l = a1.compose_affine(w, 0)
    term_1u = a1.compose_affine(w, a).mask(c1_lo, 1)
    term_2l = a2.compose_affine(w, 0).mask(0, c2_hi)
    term_2u = a2.compose_affine(w, a)
    return w * (term_1l + term_1u + term_2l + term_2u)


def pushforward_measure(system: EquippedSystem, interval: Interval) -> Scalar:
    """Mass the transformation carries into the interval, via preimages.

    Independent of :func:`pushforward_density`: integrates A1 and A2 over
    the four preimage intervals without ever building the image density.
    """
    a = system.a
    w = 1 - a
    lo, hi = interval.lo, interval.hi
    if lo < 0 or hi > 1:
        raise ValueError("interval must lie inside [0,1]")
    a1 = system.weight_first
    a2 = system.weight_second
    lo_low, hi_low = w * lo, w * hi  # preimage under x -> x/(1-a)
    lo_up, hi_up = w * lo + a, w * hi + a  # preimage under x -> (x-a)/(1-a)
    total = a1.integrate(lo_low, min(hi_low, w))
    total = total + a1.integrate(max(lo_up, w), hi_up)
    total = total + a2.integrate(lo_low, min(hi_low, a))
    total = total + a2.integrate(max(lo_up, a), hi_up)
    return total


def as_float_system(system: EquippedSystem) -> EquippedSystem:
    """Rounded float64 copy of an exact system (lossy, explicit)."""
    if system.is_float:
        return system

    def conv(f: StepFunction) -> StepFunction:
        return StepFunction([float(t) for t in f.breakpoints], [float(v) for v in f.values])

    return EquippedSystem(float(system.a), conv(system.density), conv(system.alpha1))


# -- serialization -------------------------------------------------------


def system_to_json_dict(system: EquippedSystem) -> dict:
    a = float(system.a) if system.is_float else format_scalar(system.a)
    return {
        "a": a,
        "p": step_to_json_dict(system.density),
        "alpha1": step_to_json_dict(system.alpha1),
    }


def system_from_json_dict(d: dict) -> EquippedSystem:
    try:
        raw_a = d["a"]
        raw_p = d["p"]
        raw_alpha = d["alpha1"]
    except (KeyError, TypeError) as exc:
        raise ParseError(f"system JSON needs a/p/alpha1: {exc}") from exc
    if isinstance(raw_a, bool):
        raise ParseError("bad parameter a")
    if isinstance(raw_a, str):
        a = parse_scalar(raw_a)
    elif isinstance(raw_a, (int, float)):
        a = float(raw_a)
    else:
        raise ParseError(f"bad parameter a: {raw_a!r}")
    density = step_from_json_dict(raw_p)
    alpha1 = step_from_json_dict(raw_alpha)
    try:
        return EquippedSystem(a, density, alpha1)
    except (ValueError, MixedBackendError) as exc:
        raise ParseError(f"invalid system: {exc}") from exc


def system_to_json(system: EquippedSystem) -> str:
    return json.dumps(system_to_json_dict(system), indent=2) + "\n"


def system_from_json(text: str) -> EquippedSystem:
    try:
        d = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from exc
    return system_from_json_dict(d)
