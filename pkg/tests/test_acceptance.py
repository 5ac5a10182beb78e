"""Acceptance gate: one test per shipped guarantee, one printed line each.

Every test exercises its guarantee at full size and stated tolerance, so
this file doubles as the quick field check that an installed copy works:
run `pytest tests/test_acceptance.py` and read the nine lines.
"""

import random
import time
from contextlib import contextmanager
from fractions import Fraction

from twoval import (
    EquippedSystem,
    Interval,
    StepFunction,
    Surd,
    as_float_system,
    check_invariance_conditions,
    enumerate_expansions,
    evaluate_expansion,
    greedy_expansion,
    invariance_defect,
    lebesgue_family,
    nonconstant_family,
    one_step_stationarity_test,
    orbit_expansion,
    pushforward_density,
    pushforward_measure,
    renyi_density,
    renyi_transfer,
    total_mass,
)

from conftest import make_float_system, make_fraction_grid

WEIGHT_PAIRS = [(1, 0), (0, 1), (1, 2), (3, 5)]
PHI = Surd(Fraction(1, 2), Fraction(1, 2), 5)


@contextmanager
def criterion(capsys, num: int, name: str):
    try:
        yield
    except BaseException:
        with capsys.disabled():
            print(f"criterion {num} ({name}): FAIL")
        raise
    with capsys.disabled():
        print(f"criterion {num} ({name}): PASS")


def test_criterion_1_families_are_exactly_invariant(capsys):
    with criterion(capsys, 1, "exact invariance of the two-level families"):
        t0 = time.perf_counter()
        for n in range(2, 13):
            for b, g in WEIGHT_PAIRS:
                system = nonconstant_family(n, b, g)
                assert invariance_defect(system).sup_norm() == 0, (n, b, g)
        assert time.perf_counter() - t0 < 5.0


def test_criterion_2_lebesgue_pushforward_and_failure_cases(capsys):
    with criterion(capsys, 2, "Lebesgue families fixed, off-family parameters not"):
        for n in range(2, 13):
            system = lebesgue_family(n)
            assert pushforward_density(system) == system.density, n
            assert system.density == StepFunction.constant(Fraction(1))
        half = StepFunction.constant(Fraction(1, 2))
        for a in (Fraction(9, 20), Fraction(301, 1000)):
            system = EquippedSystem(a, StepFunction.constant(Fraction(1)), half)
            deviation = invariance_defect(system).sup_norm()
            assert deviation > Fraction(1, 1000), a


def test_criterion_3_half_parameter_ignores_branch_weights(capsys):
    with criterion(capsys, 3, "a = 1/2 invariance for arbitrary branch weights"):
        rng = random.Random(2026)
        uniform = StepFunction.constant(Fraction(1))
        for _ in range(10):
            grid = make_fraction_grid(rng)
            alpha = StepFunction(grid, [Fraction(rng.randint(0, 8), 8) for _ in range(len(grid) - 1)])
            system = EquippedSystem(Fraction(1, 2), uniform, alpha)
            assert invariance_defect(system).sup_norm() == 0


def test_criterion_4_conditions_agree_with_measured_defect(capsys):
    with criterion(capsys, 4, "finite conditions match the defect on float systems"):
        rng = random.Random(77)
        systems = [make_float_system(rng) for _ in range(140)]
        for k in range(11):
            systems.append(as_float_system(lebesgue_family(k % 11 + 2)))
        for k in range(25):
            n = k % 11 + 2
            b, g = WEIGHT_PAIRS[k % 4]
            if b == 0 and g == 0:
                continue
            systems.append(as_float_system(nonconstant_family(n, b, g)))
        for k in range(24):
            vals = [rng.random() for _ in range(3)]
            alpha = StepFunction([0, 0.3, 0.7, 1], vals)
            systems.append(EquippedSystem(0.5, StepFunction.constant(1.0), alpha))
        assert len(systems) == 200
        discordant = []
        for i, system in enumerate(systems):
            passed = check_invariance_conditions(system).passed
            defect = invariance_defect(system).sup_norm()
            if passed != (defect <= 1e-10):
                discordant.append((i, passed, defect))
        assert discordant == []


def test_criterion_5_closed_form_mass_equals_integral(capsys):
    with criterion(capsys, 5, "closed-form family mass"):
        for n in range(2, 13):
            for b, g in WEIGHT_PAIRS:
                mass = total_mass(n, b, g)
                integral = nonconstant_family(n, b, g).density.integrate()
                assert mass == integral, (n, b, g)
                float_integral = as_float_system(nonconstant_family(n, b, g)).density.integrate()
                assert abs(float(mass) - float_integral) <= 1e-14


def test_criterion_6_renyi_density_is_fixed_exactly(capsys):
    with criterion(capsys, 6, "base-phi transfer operator fixed point"):
        h = renyi_density()
        assert renyi_transfer(h) == h
        assert h.values == (Surd(Fraction(1, 2), Fraction(3, 10), 5), Surd(Fraction(1, 2), Fraction(1, 10), 5))
        assert h.integrate() == 1


def test_criterion_7_measure_pushforward_matches_density_integral(capsys):
    with criterion(capsys, 7, "set-wise pushforward against the density"):
        t0 = time.perf_counter()
        rng = random.Random(404)
        for _ in range(20):
            system = make_float_system(rng)
            q = pushforward_density(system)
            for _ in range(50):
                lo, hi = sorted(rng.random() for _ in range(2))
                got = pushforward_measure(system, Interval(lo, hi))
                want = q.mask(lo, hi).integrate()
                assert abs(got - want) <= 1e-9, (system.a, lo, hi)
        assert time.perf_counter() - t0 < 10.0


def test_criterion_8_monte_carlo_separates_invariant_from_not(capsys):
    with criterion(capsys, 8, "one-step Monte Carlo detection"):
        t0 = time.perf_counter()
        stationary = nonconstant_family(10, 1, 2)
        rep = one_step_stationarity_test(stationary, 1_000_000, seed=20260819)
        assert rep.post.l1_distance_to_reference <= 0.01

        alpha = StepFunction([0, 0.25, 0.6, 1], [0.8, 0.1, 0.55])
        half = EquippedSystem(0.5, StepFunction.constant(1.0), alpha)
        rep = one_step_stationarity_test(half, 1_000_000, seed=20260820)
        assert rep.post.l1_distance_to_reference <= 0.01

        control = EquippedSystem(0.45, StepFunction.constant(1.0), StepFunction.constant(0.5))
        rep = one_step_stationarity_test(control, 1_000_000, seed=20260821)
        assert rep.post.l1_distance_to_reference >= 0.05
        assert time.perf_counter() - t0 < 30.0


def test_criterion_9_expansions_round_trip(capsys):
    with criterion(capsys, 9, "expansion round trips and word counts"):
        k = 40
        rng = random.Random(9)
        for beta in (float(PHI), 1.8, 2.0):
            bound = beta ** (-k)
            for _ in range(50):
                x = rng.random()
                word = greedy_expansion(x, beta, k)
                assert abs(x - evaluate_expansion(word, beta)) <= bound
            for _ in range(20):
                x = rng.random()
                word = orbit_expansion(x, beta, k, choose=lambda i, opts: rng.choice(opts))
                assert abs(x - evaluate_expansion(word, beta)) <= bound
        word = greedy_expansion(1, 2, k)
        assert word == (1,) * k
        assert abs(1 - evaluate_expansion(word, 2.0)) <= 2.0 ** (-k)

        assert len(enumerate_expansions(Fraction(1, 2), PHI, 8)) > 1
        assert len(enumerate_expansions(0.5, float(PHI), 8)) > 1
        assert len(enumerate_expansions(Fraction(1, 2), 2, 8)) == 1
        assert len(enumerate_expansions(0.5, 2.0, 8)) == 1
