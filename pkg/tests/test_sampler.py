from __future__ import annotations

import numpy as np
import pytest

from shifted_subsets.errors import DomainError
from shifted_subsets.sampling.rng import RngState
from shifted_subsets.sampling.sampler import (
    ShiftedState,
    fourier_sample,
    fourier_samples,
    goodness_of_fit,
    make_shifted_state,
    sample_weight,
    sample_weights,
    state_from_elements,
    walsh_hadamard,
    weight_cdf,
)
from shifted_subsets.spectra.distributions import (
    pi_ball,
    pi_elements,
    pi_sphere,
    pi_subset,
)
from shifted_subsets.spectra.hadamard import hadamard
from shifted_subsets.spectra.subsets import SubsetSpec


def test_hadamard_twice_scales_by_cube_size() -> None:
    values = np.array([3, -1, 0, 2, 5, 5, -4, 1], dtype=np.int64)
    assert np.array_equal(hadamard(hadamard(values)), 8 * values)
    assert hadamard(np.array([1, 0, 0, 0])).tolist() == [1, 1, 1, 1]


def test_hadamard_rejects_non_power_of_two() -> None:
    with pytest.raises(ValueError):
        hadamard(np.zeros(6))


def test_walsh_hadamard_is_an_involution() -> None:
    generator = RngState(seed=5).generator()
    values = generator.normal(size=32)
    assert np.allclose(walsh_hadamard(walsh_hadamard(values)), values)


def test_shifted_state_support_and_norm() -> None:
    spec = SubsetSpec.sphere(4, 1)
    state = make_shifted_state(spec, "0011")
    assert state.support == frozenset(y ^ 0b0011 for y in spec.members())
    assert state.shift == 3
    assert np.isclose(np.dot(state.amplitudes, state.amplitudes), 1.0)


def test_shifted_state_validates_amplitudes() -> None:
    with pytest.raises(ValueError):
        ShiftedState(n=2, amplitudes=np.array([1.0, 1.0, 0.0, 0.0]))
    with pytest.raises(ValueError):
        ShiftedState(n=2, amplitudes=np.array([0.8, 0.6, 0.0, 0.0]))
    with pytest.raises(DomainError):
        state_from_elements(3, [1], shift=8)
    with pytest.raises(DomainError):
        make_shifted_state(SubsetSpec.sphere(4, 1), "011")


def test_outcome_probabilities_ignore_the_shift() -> None:
    elements = [1, 6, 7, 12, 13]
    exact = pi_elements(4, elements).as_floats()
    for shift in (0, 5, 15):
        state = state_from_elements(4, elements, shift)
        assert np.allclose(state.outcome_probabilities, exact, atol=1e-12)


def test_fourier_sample_is_reproducible() -> None:
    state = make_shifted_state(SubsetSpec.sphere(6, 2), 9)
    first, advanced = fourier_sample(state, RngState(seed=11))
    assert (first, advanced) == fourier_sample(state, RngState(seed=11))
    assert advanced == RngState(seed=11, draws=1)
    assert len(first) == 6 and set(first) <= {"0", "1"}


def _chain(state: ShiftedState, rng: RngState, count: int) -> list[str]:
    outcomes = []
    for _ in range(count):
        outcome, rng = fourier_sample(state, rng)
        outcomes.append(outcome)
    return outcomes


def test_repeated_fourier_samples_walk_the_stream() -> None:
    spec = SubsetSpec.ball(6, 3)
    state = make_shifted_state(spec, 5)
    outcomes = _chain(state, RngState(seed=1), 4000)
    assert outcomes == _chain(state, RngState(seed=1), 4000)
    assert len(set(outcomes)) > 1
    weights = np.bincount([o.count("1") for o in outcomes], minlength=7)
    assert goodness_of_fit(weights, pi_ball(6, 3).as_floats()) > 0.001


def test_repeated_weight_samples_walk_the_stream() -> None:
    rng = RngState(seed=8, algorithm="philox")
    draws = []
    for _ in range(2000):
        weight, rng = sample_weight(pi_sphere(4, 2), rng)
        draws.append(weight)
    assert rng.draws == 2000
    assert len(set(draws)) > 1
    assert abs(draws.count(2) / 2000 - 0.25) < 0.05


def test_fourier_samples_fit_the_exact_distribution() -> None:
    spec = SubsetSpec.ball(5, 2)
    state = make_shifted_state(spec, "10110")
    draws = fourier_samples(state, RngState(seed=3), 20000)
    observed = np.bincount(draws, minlength=32)
    assert goodness_of_fit(observed, pi_subset(spec).as_floats()) > 0.001


def test_weight_sampling_never_returns_impossible_weights() -> None:
    dist = pi_sphere(4, 1)
    draws = sample_weights(dist, RngState(seed=0).generator(), 10000)
    assert 2 not in set(draws.tolist())
    assert set(draws.tolist()) <= {0, 1, 3, 4}
    assert weight_cdf(dist)[-1] == 1.0


def test_goodness_of_fit_fails_on_impossible_counts() -> None:
    probs = np.array([0.5, 0.0, 0.5])
    assert goodness_of_fit(np.array([10, 1, 10]), probs) == 0.0


def test_rng_streams() -> None:
    base = RngState(seed=42)
    a = base.for_trial(3).generator().integers(1 << 30, size=5)
    b = RngState(seed=42, stream=3).generator().integers(1 << 30, size=5)
    c = base.for_trial(4).generator().integers(1 << 30, size=5)
    assert np.array_equal(a, b)
    assert not np.array_equal(a, c)
    philox = RngState(seed=42, algorithm="philox").generator()
    assert philox.integers(10) in range(10)


def test_rng_state_validation() -> None:
    with pytest.raises(ValueError):
        RngState(seed=-1)
    with pytest.raises(ValueError):
        RngState(seed=1, algorithm="mt19937")


def test_rng_state_advances_by_draws() -> None:
    base = RngState(seed=42)
    stream = base.generator().random(4)
    assert base.advanced(3).generator().random() == stream[3]
    assert base.advanced(2).for_trial(1) == RngState(seed=42, stream=1)
    with pytest.raises(ValueError):
        base.advanced(-1)


def test_weight_sampling_frequency_at_the_center() -> None:
    draws = sample_weights(pi_sphere(4, 2), RngState(seed=13), 100000)
    assert abs(float(np.mean(draws == 2)) - 0.25) < 0.01
    draws = sample_weights(pi_sphere(4, 1), RngState(seed=14), 100000)
    assert not np.any(draws == 2)


def test_shifted_spheres_pass_chi_square() -> None:
    generator = RngState(seed=30).generator()
    for n, r in ((8, 3), (10, 2), (12, 4), (12, 5)):
        members = SubsetSpec.sphere(n, r).members()
        shift = int(generator.integers(1, 2**n))
        state = state_from_elements(n, members, shift)
        assert np.allclose(
            state.outcome_probabilities,
            state_from_elements(n, members).outcome_probabilities,
            rtol=0,
            atol=1e-15,
        )
        draws = fourier_samples(state, RngState(seed=n + r), 100000)
        weights = np.bincount(np.bitwise_count(draws), minlength=n + 1)
        assert goodness_of_fit(weights, pi_sphere(n, r).as_floats()) > 0.001


def test_elements_outside_the_cube_are_rejected() -> None:
    with pytest.raises(DomainError):
        state_from_elements(3, [8])
    with pytest.raises(DomainError):
        state_from_elements(3, [-1, 2])
    with pytest.raises(DomainError):
        pi_elements(3, [-1])
    with pytest.raises(DomainError):
        pi_elements(3, [0, 8])
