"""Monte Carlo checks of invariance claims.

Samples are drawn from a step density by inverting its piecewise-linear
CDF, pushed through one random branch step (branch picked by a coin with
the local first-branch weight), and binned against a reference density.
A density that really is invariant keeps the post-step histogram close
to itself; the gap scales like sqrt(bins / n_samples).

All randomness flows through a counter-based Philox generator keyed by
(seed, stream), so runs are reproducible and independent streams are
cheap to construct.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .piecewise import StepFunction, ZeroMassError
from .system import EquippedSystem, as_float_system


def _rng(seed: int, stream: int) -> np.random.Generator:
    if not isinstance(seed, int) or isinstance(seed, bool) or seed < 0:
        raise ValueError("seed must be a nonnegative integer")
    if not isinstance(stream, int) or isinstance(stream, bool) or stream < 0:
        raise ValueError("stream must be a nonnegative integer")
    ss = np.random.SeedSequence(entropy=seed, spawn_key=(stream,))
    return np.random.Generator(np.random.Philox(ss))


def _float_steps(f: StepFunction) -> tuple[np.ndarray, np.ndarray]:
    bps = np.array([float(b) for b in f.breakpoints], dtype=np.float64)
    vals = np.array([float(v) for v in f.values], dtype=np.float64)
    return bps, vals


def _eval_step(bps: np.ndarray, vals: np.ndarray, x: np.ndarray) -> np.ndarray:
    idx = np.searchsorted(bps, x, side="right") - 1
    return vals[np.clip(idx, 0, len(vals) - 1)]


def _sample_with_rng(density: StepFunction, n: int, rng: np.random.Generator) -> np.ndarray:
    bps, vals = _float_steps(density)
    if np.any(vals < 0):
        raise ValueError("density must be nonnegative")
    widths = np.diff(bps)
    masses = vals * widths
    total = masses.sum()
    if not total > 0:
        raise ZeroMassError("density has no mass to sample from")
    cum = np.cumsum(masses) / total
    cum[-1] = 1.0
    u = rng.random(n)
    idx = np.searchsorted(cum, u, side="right")
    prev = np.concatenate(([0.0], cum[:-1]))
    rel = (u - prev[idx]) / (masses[idx] / total)
    return np.clip(bps[idx] + rel * widths[idx], 0.0, 1.0)


@dataclass(frozen=True, eq=False)
class SampleSet:
    """Reproducible draw from a step density."""

    values: np.ndarray
    seed: int
    stream: int

    def __len__(self) -> int:
        return len(self.values)


def sample_from_density(density: StepFunction, n_samples: int, seed: int, *, stream: int = 0) -> SampleSet:
    """Draw n_samples points by inverse-CDF sampling of the step density."""
    if n_samples < 1:
        raise ValueError("n_samples must be positive")
    rng = _rng(seed, stream)
    values = _sample_with_rng(density, n_samples, rng)
    return SampleSet(values=values, seed=seed, stream=stream)


def _reference_cdf_factory(density: StepFunction):
    bps, vals = _float_steps(density)
    widths = np.diff(bps)
    masses = vals * widths
    total = masses.sum()
    if not total > 0:
        raise ZeroMassError("reference density has no mass")
    cum_at_bp = np.concatenate(([0.0], np.cumsum(masses)))

    def cdf(x: np.ndarray) -> np.ndarray:
        idx = np.clip(np.searchsorted(bps, x, side="right") - 1, 0, len(vals) - 1)
        f = (cum_at_bp[idx] + vals[idx] * (x - bps[idx])) / total
        return np.clip(f, 0.0, 1.0)

    return cdf


@dataclass(frozen=True, eq=False)
class HistogramReport:
    """Empirical sample histogram held against a reference density."""

    bin_edges: np.ndarray
    bin_masses: np.ndarray
    reference_masses: np.ndarray
    l1_distance_to_reference: float
    ks_statistic: float


def histogram_report(values: np.ndarray, reference: StepFunction, bins: int = 100) -> HistogramReport:
    """Bin the values on a uniform grid and measure the gap to the reference.

    The L1 figure is the total variation between the two binned mass
    vectors; the KS figure is the usual one-sample statistic against the
    reference CDF.
    """
    if bins < 1:
        raise ValueError("bins must be positive")
    values = np.asarray(values, dtype=np.float64)
    n = len(values)
    if n == 0:
        raise ValueError("no samples to report on")
    edges = np.linspace(0.0, 1.0, bins + 1)
    counts, _ = np.histogram(values, bins=edges)
    emp = counts / n
    cdf = _reference_cdf_factory(reference)
    ref = np.diff(cdf(edges))
    l1 = float(np.abs(emp - ref).sum())
    xs = np.sort(values)
    f = cdf(xs)
    i = np.arange(1, n + 1)
    ks = float(max((i / n - f).max(), (f - (i - 1) / n).max()))
    return HistogramReport(
        bin_edges=edges,
        bin_masses=emp,
        reference_masses=ref,
        l1_distance_to_reference=l1,
        ks_statistic=ks,
    )


def _advance(x: np.ndarray, system: EquippedSystem, coins: np.ndarray) -> np.ndarray:
    a = float(system.a)
    w = 1.0 - a
    alpha_bps, alpha_vals = _float_steps(system.alpha1)
    first = coins < _eval_step(alpha_bps, alpha_vals, x)
    cut = np.where(first, w, a)
    y = np.where(x < cut, x / w, (x - a) / w)
    return np.clip(y, 0.0, 1.0)


@dataclass(frozen=True, eq=False)
class OneStepReport:
    """Histograms before and after one random branch step."""

    pre: HistogramReport
    post: HistogramReport
    l1_pre_post: float
    n_samples: int
    seed: int


def one_step_stationarity_test(
    system: EquippedSystem,
    n_samples: int,
    seed: int,
    *,
    bins: int = 100,
    stream: int = 0,
) -> OneStepReport:
    """Sample the system's density, take one random step, compare back.

    ``post.l1_distance_to_reference`` is the operative figure: it holds
    the post-step histogram against the density itself, so it stays at
    the sqrt(bins/n_samples) noise floor exactly when the density is
    invariant and saturates at the true displacement otherwise.
    """
    if n_samples < 1:
        raise ValueError("n_samples must be positive")
    fs = system if system.is_float else as_float_system(system)
    rng = _rng(seed, stream)
    x = _sample_with_rng(fs.density, n_samples, rng)
    coins = rng.random(n_samples)
    y = _advance(x, fs, coins)
    pre = histogram_report(x, fs.density, bins)
    post = histogram_report(y, fs.density, bins)
    l1_pre_post = float(np.abs(pre.bin_masses - post.bin_masses).sum())
    return OneStepReport(pre=pre, post=post, l1_pre_post=l1_pre_post, n_samples=n_samples, seed=seed)


@dataclass(frozen=True, eq=False)
class ChainReport:
    """Distance to the reference density along an iterated chain."""

    step_distances: list[float]
    final: HistogramReport
    final_values: np.ndarray
    n_samples: int
    n_steps: int
    seed: int


def run_chain(
    system: EquippedSystem,
    n_samples: int,
    n_steps: int,
    seed: int,
    *,
    bins: int = 100,
    stream: int = 0,
    initial: str = "density",
) -> ChainReport:
    """Iterate the random branch step and track the gap to the density.

    ``initial`` is "density" (start from the system's own density) or
    "uniform" (start from Lebesgue, watching the chain pull toward the
    invariant density).

    Caveat for a = 1/2 in floats: both branches double the mantissa, so
    every orbit lands on dyadic rationals and collapses to 0 after about
    50 steps.  Keep such chains short; the effect is a float artifact,
    not a property of the dynamics.
    """
    if n_samples < 1:
        raise ValueError("n_samples must be positive")
    if n_steps < 0:
        raise ValueError("n_steps must be nonnegative")
    if initial not in ("density", "uniform"):
        raise ValueError("initial must be 'density' or 'uniform'")
    fs = system if system.is_float else as_float_system(system)
    rng = _rng(seed, stream)
    if initial == "density":
        x = _sample_with_rng(fs.density, n_samples, rng)
    else:
        x = rng.random(n_samples)
    distances = []
    report = histogram_report(x, fs.density, bins)
    for _ in range(n_steps):
        coins = rng.random(n_samples)
        x = _advance(x, fs, coins)
        report = histogram_report(x, fs.density, bins)
        distances.append(report.l1_distance_to_reference)
    return ChainReport(
        step_distances=distances,
        final=report,
        final_values=x,
        n_samples=n_samples,
        n_steps=n_steps,
        seed=seed,
    )


def write_sample_file(path, values) -> None:
    """Binary sample export: 8-byte little-endian count, then float64 LE values."""
    arr = np.ascontiguousarray(np.asarray(values, dtype="<f8"))
    with open(path, "wb") as fh:
        fh.write(len(arr).to_bytes(8, "little"))
        fh.write(arr.tobytes())


def read_sample_file(path) -> np.ndarray:
    with open(path, "rb") as fh:
        head = fh.read(8)
        if len(head) != 8:
            raise ValueError("sample file is truncated: missing count header")
        n = int.from_bytes(head, "little")
        payload = fh.read()
    if len(payload) != 8 * n:
        raise ValueError(f"sample file payload does not match count {n}")
    return np.frombuffer(payload, dtype="<f8").copy()
