import numpy as np
import pytest

from twoval.piecewise import StepFunction, ZeroMassError
from twoval.simulate import (
    ChainReport,
    HistogramReport,
    OneStepReport,
    SampleSet,
    histogram_report,
    one_step_stationarity_test,
    read_sample_file,
    run_chain,
    sample_from_density,
    write_sample_file,
)
from twoval.system import EquippedSystem, as_float_system

from test_system import golden_system

UNIFORM = StepFunction.constant(1.0)


def control_system() -> EquippedSystem:
    """Uniform density that is NOT invariant at a = 9/20 with even weights."""
    return EquippedSystem(0.45, StepFunction.constant(1.0), StepFunction.constant(0.5))


class TestSampler:
    def test_same_seed_reproduces(self):
        s1 = sample_from_density(UNIFORM, 500, seed=42)
        s2 = sample_from_density(UNIFORM, 500, seed=42)
        assert np.array_equal(s1.values, s2.values)

    def test_seed_and_stream_change_the_draw(self):
        base = sample_from_density(UNIFORM, 500, seed=42)
        other_seed = sample_from_density(UNIFORM, 500, seed=43)
        other_stream = sample_from_density(UNIFORM, 500, seed=42, stream=1)
        assert not np.array_equal(base.values, other_seed.values)
        assert not np.array_equal(base.values, other_stream.values)

    def test_sample_set_fields(self):
        s = sample_from_density(UNIFORM, 100, seed=7, stream=3)
        assert isinstance(s, SampleSet)
        assert len(s) == 100
        assert s.seed == 7
        assert s.stream == 3

    def test_values_stay_in_unit_interval(self):
        s = sample_from_density(UNIFORM, 10_000, seed=1)
        assert np.all(s.values >= 0)
        assert np.all(s.values <= 1)

    def test_respects_support(self):
        half = StepFunction([0, 0.5, 1], [2.0, 0.0])
        s = sample_from_density(half, 5_000, seed=5)
        assert np.all(s.values < 0.5)

    def test_skips_interior_gap(self):
        gap = StepFunction([0, 0.25, 0.75, 1], [1.0, 0.0, 1.0])
        s = sample_from_density(gap, 5_000, seed=5)
        inside = (s.values >= 0.25) & (s.values < 0.75)
        assert not inside.any()

    def test_piece_masses_come_out_right(self):
        f = StepFunction([0, 0.5, 1], [0.5, 1.5])
        s = sample_from_density(f, 40_000, seed=11)
        frac_left = np.mean(s.values < 0.5)
        assert frac_left == pytest.approx(0.25, abs=0.01)

    def test_exact_density_is_accepted(self):
        sys = golden_system()
        s = sample_from_density(sys.density, 20_000, seed=3)
        rep = histogram_report(s.values, sys.density)
        assert rep.ks_statistic < 0.02

    def test_zero_mass_rejected(self):
        with pytest.raises(ZeroMassError):
            sample_from_density(StepFunction.constant(0.0), 10, seed=1)

    def test_negative_density_rejected(self):
        with pytest.raises(ValueError):
            sample_from_density(StepFunction([0, 0.5, 1], [1.0, -1.0]), 10, seed=1)

    def test_bad_counts_and_seeds_rejected(self):
        with pytest.raises(ValueError):
            sample_from_density(UNIFORM, 0, seed=1)
        with pytest.raises(ValueError):
            sample_from_density(UNIFORM, 10, seed=-1)
        with pytest.raises(ValueError):
            sample_from_density(UNIFORM, 10, seed=True)
        with pytest.raises(ValueError):
            sample_from_density(UNIFORM, 10, seed=1, stream=-2)


class TestHistogramReport:
    def test_two_point_hand_case(self):
        rep = histogram_report(np.array([0.1, 0.6]), UNIFORM, bins=2)
        assert np.allclose(rep.bin_masses, [0.5, 0.5])
        assert np.allclose(rep.reference_masses, [0.5, 0.5])
        assert rep.l1_distance_to_reference == pytest.approx(0.0)
        assert rep.ks_statistic == pytest.approx(0.4)

    def test_masses_sum_to_one(self):
        s = sample_from_density(UNIFORM, 1000, seed=2)
        rep = histogram_report(s.values, UNIFORM, bins=37)
        assert rep.bin_masses.sum() == pytest.approx(1.0)
        assert rep.reference_masses.sum() == pytest.approx(1.0)
        assert len(rep.bin_edges) == 38

    def test_matched_samples_sit_at_noise_floor(self):
        s = sample_from_density(UNIFORM, 40_000, seed=8)
        rep = histogram_report(s.values, UNIFORM, bins=100)
        assert rep.l1_distance_to_reference < 0.08
        assert rep.ks_statistic < 0.015

    def test_unnormalized_reference_is_normalized(self):
        s = sample_from_density(UNIFORM, 10_000, seed=9)
        doubled = StepFunction.constant(2.0)
        a = histogram_report(s.values, UNIFORM, bins=20)
        b = histogram_report(s.values, doubled, bins=20)
        assert a.l1_distance_to_reference == pytest.approx(b.l1_distance_to_reference)

    def test_rejects_empty_and_bad_bins(self):
        with pytest.raises(ValueError):
            histogram_report(np.array([]), UNIFORM)
        with pytest.raises(ValueError):
            histogram_report(np.array([0.5]), UNIFORM, bins=0)


class TestOneStep:
    def test_invariant_density_stays_put(self):
        rep = one_step_stationarity_test(golden_system(), 200_000, seed=17)
        assert isinstance(rep, OneStepReport)
        assert rep.post.l1_distance_to_reference < 0.03
        assert rep.post.ks_statistic < 0.01

    def test_half_parameter_uniform_stays_put(self):
        alpha = StepFunction([0, 0.3, 0.8, 1], [0.2, 0.9, 0.5])
        sys = EquippedSystem(0.5, StepFunction.constant(1.0), alpha)
        rep = one_step_stationarity_test(sys, 200_000, seed=23)
        assert rep.post.l1_distance_to_reference < 0.03

    def test_control_is_detected(self):
        rep = one_step_stationarity_test(control_system(), 100_000, seed=29)
        assert rep.pre.l1_distance_to_reference < 0.03
        assert rep.post.l1_distance_to_reference > 0.05
        assert rep.post.ks_statistic > 0.02
        assert rep.l1_pre_post > 0.04

    def test_exact_system_matches_its_float_copy(self):
        exact = golden_system()
        rep_exact = one_step_stationarity_test(exact, 20_000, seed=31)
        rep_float = one_step_stationarity_test(as_float_system(exact), 20_000, seed=31)
        assert np.array_equal(rep_exact.post.bin_masses, rep_float.post.bin_masses)

    def test_reproducible(self):
        r1 = one_step_stationarity_test(golden_system(), 10_000, seed=5)
        r2 = one_step_stationarity_test(golden_system(), 10_000, seed=5)
        assert r1.post.l1_distance_to_reference == r2.post.l1_distance_to_reference

    def test_rejects_bad_sizes(self):
        with pytest.raises(ValueError):
            one_step_stationarity_test(golden_system(), 0, seed=1)


class TestRunChain:
    def test_uniform_start_pulls_toward_golden_density(self):
        rep = run_chain(golden_system(), 200_000, 12, seed=37, initial="uniform")
        assert isinstance(rep, ChainReport)
        assert len(rep.step_distances) == 12
        assert rep.step_distances[0] > rep.step_distances[-1]
        assert rep.final.l1_distance_to_reference < 0.03
        assert len(rep.final_values) == 200_000

    def test_density_start_stays_at_noise_floor(self):
        rep = run_chain(golden_system(), 100_000, 5, seed=41)
        assert all(d < 0.05 for d in rep.step_distances)

    def test_zero_steps(self):
        rep = run_chain(golden_system(), 10_000, 0, seed=43)
        assert rep.step_distances == []
        assert isinstance(rep.final, HistogramReport)

    def test_half_parameter_short_chain_smoke(self):
        sys = EquippedSystem(0.5, StepFunction.constant(1.0), StepFunction.constant(0.3))
        rep = run_chain(sys, 50_000, 5, seed=47)
        assert all(d < 0.06 for d in rep.step_distances)

    def test_rejects_bad_arguments(self):
        with pytest.raises(ValueError):
            run_chain(golden_system(), 100, -1, seed=1)
        with pytest.raises(ValueError):
            run_chain(golden_system(), 100, 2, seed=1, initial="spike")


class TestSampleFile:
    def test_round_trips(self, tmp_path):
        values = sample_from_density(UNIFORM, 1000, seed=13).values
        path = tmp_path / "samples.bin"
        write_sample_file(path, values)
        back = read_sample_file(path)
        assert np.array_equal(back, values)

    def test_layout_is_count_header_then_le_doubles(self, tmp_path):
        path = tmp_path / "two.bin"
        write_sample_file(path, np.array([0.5, 0.25]))
        raw = path.read_bytes()
        assert len(raw) == 8 + 16
        assert int.from_bytes(raw[:8], "little") == 2
        assert np.frombuffer(raw[8:], dtype="<f8").tolist() == [0.5, 0.25]

    def test_empty_file_rejected(self, tmp_path):
        path = tmp_path / "empty.bin"
        path.write_bytes(b"")
        with pytest.raises(ValueError):
            read_sample_file(path)

    def test_short_payload_rejected(self, tmp_path):
        path = tmp_path / "short.bin"
        path.write_bytes((3).to_bytes(8, "little") + b"\x00" * 16)
        with pytest.raises(ValueError):
            read_sample_file(path)
