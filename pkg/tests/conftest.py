"""Shared builders for randomized tests."""

import random
from fractions import Fraction

from twoval.piecewise import StepFunction
from twoval.system import EquippedSystem


def make_fraction_grid(rng: random.Random, max_cuts: int = 4, denom: int = 60) -> list:
    cuts = sorted({Fraction(rng.randint(1, denom - 1), denom) for _ in range(rng.randint(0, max_cuts))})
    return [Fraction(0), *cuts, Fraction(1)]


def make_exact_step(rng: random.Random, max_cuts: int = 4, lo: int = -18, hi: int = 18) -> StepFunction:
    bps = make_fraction_grid(rng, max_cuts)
    vals = [Fraction(rng.randint(lo, hi), 6) for _ in range(len(bps) - 1)]
    return StepFunction(bps, vals)


def make_float_step(rng: random.Random, max_cuts: int = 4, lo: float = -2.0, hi: float = 2.0) -> StepFunction:
    cuts = sorted({rng.uniform(0.05, 0.95) for _ in range(rng.randint(0, max_cuts))})
    vals = [rng.uniform(lo, hi) for _ in range(len(cuts) + 1)]
    return StepFunction([0.0, *cuts, 1.0], vals)


def make_exact_system(rng: random.Random, denom: int = 40) -> EquippedSystem:
    a = Fraction(rng.randint(1, denom // 2), denom)
    density = make_exact_step(rng, lo=0)
    grid = make_fraction_grid(rng)
    alpha1 = StepFunction(grid, [Fraction(rng.randint(0, 6), 6) for _ in range(len(grid) - 1)])
    return EquippedSystem(a, density, alpha1)


def make_float_system(rng: random.Random) -> EquippedSystem:
    a = rng.uniform(0.02, 0.5)
    density = make_float_step(rng, lo=0.0, hi=2.0)
    cuts = sorted({rng.uniform(0.05, 0.95) for _ in range(rng.randint(0, 4))})
    alpha1 = StepFunction([0.0, *cuts, 1.0], [rng.random() for _ in range(len(cuts) + 1)])
    return EquippedSystem(a, density, alpha1)
