"""Window identities that decide invariance, and the alpha1 solver.

For n = derive_n(a), a weighting (p, alpha1) yields an invariant measure
exactly when three families of identities hold:

* density_window_full, on [a, 1-(n-1)a): the n+1 translates p(x+ka),
  k = -1..n-1, sum to 1/(1-a) times the n rescaled translates
  p((x+ka)/(1-a)), k = -1..n-2.
* density_window_short, on [1-(n-1)a, 2a): the same identity with one
  fewer term on each side.
* weight_identity, on each window J_m (m = 0..n-2, J_m = [(m+1)a, (m+2)a)
  except the last, which ends at 1-a): the first-map weight A1 = alpha1*p
  is pinned to an explicit combination of translates of p.

Together the J_m tile [a, 1-a); alpha1 is unconstrained on [0,a) and
[1-a, 1].  Windows can be empty (at a = 1/n the full window and the last
J_m vanish); empty windows hold vacuously.

:func:`solve_alpha1` inverts the weight identity: given (a, p) it checks
the two density identities, reads A1 off the windows, and divides by p.
Infeasibility is reported with the violated identity and its deviation.
"""

from __future__ import annotations

from dataclasses import dataclass

from .numerics import Interval, MixedBackendError, Scalar, format_scalar
from .piecewise import StepFunction, _to_backend
from .system import EquippedSystem, derive_n, pushforward_density

FLOAT_TOL = 1e-10

FULL_WINDOW = "density_window_full"
SHORT_WINDOW = "density_window_short"
WEIGHT_IDENTITY = "weight_identity"
RANGE = "range"


class InfeasibleError(ValueError):
    """No admissible alpha1 exists for the given (a, p).

    ``which`` names the obstruction: one of the two density identities,
    or "range" when the forced weight leaves [0, p].  ``deviation`` is
    the size of the violation.
    """

    def __init__(self, which: str, deviation):
        self.which = which
        self.deviation = deviation
        super().__init__(f"{which} violated by {format_scalar(deviation)}")


@dataclass(frozen=True)
class ConditionCheck:
    name: str
    window: Interval
    deviation: Scalar
    passed: bool
    vacuous: bool


@dataclass(frozen=True)
class ConditionReport:
    n: int
    passed: bool
    max_deviation: Scalar
    density_window_full: ConditionCheck
    density_window_short: ConditionCheck
    weight_identity: tuple

    @property
    def checks(self) -> tuple:
        return (self.density_window_full, self.density_window_short) + self.weight_identity


def _default_tol(is_float: bool, tol):
    if tol is not None:
        return tol
    return FLOAT_TOL if is_float else 0


def _sum_translates(p: StepFunction, a, ks, rescale: bool) -> StepFunction:
    """Sum of p(x + ka), or of p((x + ka)/(1-a)) when rescaled."""
    w = 1 - a
    total = None
    for k in ks:
        if rescale:
            term = p.compose_affine(1 / w, k * a / w)
        else:
            term = p.compose_affine(1, k * a)
        total = term if total is None else total + term
    return total


def _window_check(name: str, diff: StepFunction, lo, hi, tol) -> ConditionCheck:
    if not lo < hi:
        lo = min(lo, hi)
        return ConditionCheck(name, Interval(lo, lo), 0, True, True)
    dev = diff.mask(lo, hi).sup_norm()
    return ConditionCheck(name, Interval(lo, hi), dev, not dev > tol, False)


def _density_checks(a, density: StepFunction, tol) -> tuple[ConditionCheck, ConditionCheck]:
    n = derive_n(a)
    w = 1 - a
    split = 1 - (n - 1) * a  # the two windows meet here
    lhs = _sum_translates(density, a, range(-1, n), rescale=False)
    rhs = _sum_translates(density, a, range(-1, n - 1), rescale=True) / w
    full = _window_check(FULL_WINDOW, lhs - rhs, a, split, tol)
    lhs_s = _sum_translates(density, a, range(-1, n - 1), rescale=False)
    rhs_s = _sum_translates(density, a, range(-1, n - 2), rescale=True) / w
    short = _window_check(SHORT_WINDOW, lhs_s - rhs_s, split, 2 * a, tol)
    return full, short


def _weight_window(a, n: int, m: int) -> tuple:
    lo = (m + 1) * a
    hi = (m + 2) * a if m < n - 2 else 1 - a
    return lo, hi


def _weight_target(density: StepFunction, a, m: int) -> StepFunction:
    """The function the weight identity pins A1 to on window J_m."""
    w = 1 - a
    plus = _sum_translates(density, a, range(-m - 1, 1), rescale=False)
    minus = _sum_translates(density, a, range(-m - 1, 0), rescale=True) / w
    return plus - minus


def check_invariance_conditions(system: EquippedSystem, tol=None) -> ConditionReport:
    """Evaluate every window identity for the equipped system.

    With ``tol`` omitted, exact systems must satisfy the identities
    exactly and float systems up to sup-deviation 1e-10.
    """
    a = system.a
    n = system.n
    tol = _default_tol(system.is_float, tol)
    full, short = _density_checks(a, system.density, tol)
    a1 = system.weight_first
    weight_checks = []
    for m in range(n - 1):
        lo, hi = _weight_window(a, n, m)
        diff = a1 - _weight_target(system.density, a, m)
        weight_checks.append(_window_check(f"{WEIGHT_IDENTITY}[{m}]", diff, lo, hi, tol))
    checks = [full, short, *weight_checks]
    return ConditionReport(
        n=n,
        passed=all(c.passed for c in checks),
        max_deviation=max(c.deviation for c in checks),
        density_window_full=full,
        density_window_short=short,
        weight_identity=tuple(weight_checks),
    )


def invariance_defect(system: EquippedSystem) -> StepFunction:
    """Pushforward minus density: identically zero iff the measure is invariant."""
    return pushforward_density(system) - system.density


def _alpha_from_target(a, density: StepFunction, target: StepFunction, fill, tol) -> StepFunction:
    """Divide the forced weight by p on [a, 1-a); use fill elsewhere.

    Raises InfeasibleError("range", ...) when the forced alpha1 would
    leave [0,1], including where p vanishes but the target does not.
    """
    is_float = density.is_float
    fill = _to_backend(fill, is_float)
    if fill < 0 or fill > 1:
        raise ValueError("fill must lie in [0,1]")
    lo_cut, hi_cut = a, 1 - a
    marker = StepFunction.indicator(lo_cut, hi_cut, float_backend=is_float)
    grid = (target + density + marker).breakpoints
    zero = _to_backend(0, is_float)
    one = _to_backend(1, is_float)
    values = []
    for g_lo, g_hi in zip(grid, grid[1:]):
        mid = (g_lo + g_hi) / 2
        if not lo_cut <= mid < hi_cut:
            values.append(fill)
            continue
        pv = density(mid)
        tv = target(mid)
        if pv == zero:
            if abs(tv) > tol:
                raise InfeasibleError(RANGE, abs(tv))
            values.append(fill)
            continue
        r = tv / pv
        if r < -tol or r > 1 + tol:
            raise InfeasibleError(RANGE, max(-r, r - 1))
        values.append(min(max(r, zero), one))
    return StepFunction(grid, values)


def solve_alpha1(a, density: StepFunction, *, fill=0, tol=None) -> EquippedSystem:
    """Equip (a, p) with the alpha1 the weight identity forces.

    The two density identities must already hold for p; on [a, 1-a) the
    weight identity determines A1 = alpha1*p window by window, and alpha1
    is set to ``fill`` where it is unconstrained.  The result passes
    :func:`check_invariance_conditions` by construction.
    """
    if not isinstance(density, StepFunction):
        raise TypeError("density must be a step function")
    is_float = isinstance(a, float)
    if density.is_float != is_float:
        raise MixedBackendError("a and density must share one backend")
    n = derive_n(a)
    tol = _default_tol(is_float, tol)
    full, short = _density_checks(a, density, tol)
    if not full.passed:
        raise InfeasibleError(FULL_WINDOW, full.deviation)
    if not short.passed:
        raise InfeasibleError(SHORT_WINDOW, short.deviation)
    target = StepFunction.constant(0.0 if is_float else 0)
    for m in range(n - 1):
        lo, hi = _weight_window(a, n, m)
        if lo < hi:
            target = target + _weight_target(density, a, m).mask(lo, hi)
    alpha1 = _alpha_from_target(a, density, target, fill, tol)
    return EquippedSystem(a, density, alpha1)
