from __future__ import annotations

from fractions import Fraction
from math import comb

import pytest

from shifted_subsets.errors import DomainError
from shifted_subsets.sampling.rng import RngState
from shifted_subsets.spectra.distributions import (
    center_gap_even,
    center_probability_floor,
    central_binomial_bounds,
    flank_gap_even,
    flank_gap_odd,
    flank_values,
    lemma1_probs,
    pi_ball,
    pi_elements,
    pi_sphere,
    pi_subset,
    to_mpf,
)
from shifted_subsets.spectra.subsets import SubsetSpec


def test_sphere_distribution_small_case() -> None:
    q = Fraction(1, 4)
    assert pi_sphere(4, 1).probs == (q, q, Fraction(0), q, q)
    assert pi_sphere(4, 0).probs == (1, 0, 0, 0, 0)


def test_sphere_matches_brute_force_collapse() -> None:
    for n in range(1, 15):
        for r in range(n // 2 + 1):
            spec = SubsetSpec.sphere(n, r)
            assert pi_subset(spec).weight_collapse() == pi_sphere(n, r)


def test_ball_matches_brute_force_collapse() -> None:
    for n in range(1, 9):
        for r in range(n + 1):
            spec = SubsetSpec.ball(n, r)
            assert pi_subset(spec).weight_collapse() == pi_ball(n, r)


def test_odd_radius_never_reaches_the_center() -> None:
    for n in range(2, 41, 2):
        for r in range(1, n // 2 + 1, 2):
            assert pi_sphere(n, r)[n // 2] == 0


def test_lemma1_closed_forms() -> None:
    for n in range(1, 41):
        for r in range(n // 2 + 1):
            probs = lemma1_probs(n, r)
            low, high = flank_values(n, r)
            assert low == high
            assert probs.flank == low + high
            if n % 2 == 0:
                assert probs.center == pi_sphere(n, r)[n // 2]
            else:
                assert probs.center is None


def test_even_gaps_match_direct_and_scale_like_n_cubed() -> None:
    for n in range(4, 65, 2):
        half = n // 2
        for r in range(0, half - 1, 2):
            gap = center_gap_even(n, r)
            assert gap == pi_sphere(n, r)[half] - pi_sphere(n, r + 2)[half]
            assert gap * n**3 >= 1
        for r in range(1, half - 1, 2):
            gap = flank_gap_even(n, r)
            assert gap == lemma1_probs(n, r + 2).flank - lemma1_probs(n, r).flank
            assert gap * n**3 >= 1


def test_odd_gaps_match_direct_and_scale_like_n_squared() -> None:
    for n in range(7, 64, 2):
        for r in range(1, n // 2 - 1, 2):
            gap = flank_gap_odd(n, r)
            assert gap == lemma1_probs(n, r + 2).flank - lemma1_probs(n, r).flank
            assert gap * n**2 >= 1


def test_gap_domains() -> None:
    with pytest.raises(DomainError):
        center_gap_even(7, 0)
    with pytest.raises(DomainError):
        flank_gap_even(8, 2)
    with pytest.raises(DomainError):
        flank_gap_odd(9, 3)


def test_central_binomial_bounds() -> None:
    for m in range(1, 65):
        lower, exact, upper = central_binomial_bounds(m)
        assert lower <= exact <= upper
        assert exact == comb(2 * m, m)


def test_center_probability_floor() -> None:
    for n in range(2, 65, 2):
        for r in range(0, n // 2 + 1, 2):
            assert to_mpf(pi_sphere(n, r)[n // 2]) >= center_probability_floor(n, r)


def test_parity_set_distribution_is_two_points() -> None:
    spec = SubsetSpec.parity(5, [2, 4])
    dist = pi_subset(spec)
    assert dist.support() == [0, spec.t]
    assert dist[0] == dist["01010"] == Fraction(1, 2)


def test_pi_elements_is_shift_free_and_normalised() -> None:
    dist = pi_elements(3, [1, 2, 6])
    shifted = pi_elements(3, [1 ^ 5, 2 ^ 5, 6 ^ 5])
    assert dist == shifted
    assert sum(p for _, p in dist.items()) == 1
    assert dist[0] == Fraction(3, 8)


def test_random_sets_are_shift_invariant() -> None:
    generator = RngState(seed=12).generator()
    for n in range(1, 13):
        for _ in range(5):
            size = int(generator.integers(1, 2**n + 1))
            elements = generator.choice(2**n, size=size, replace=False).tolist()
            shift = int(generator.integers(2**n))
            dist = pi_elements(n, elements)
            assert dist == pi_elements(n, [y ^ shift for y in elements])
            assert dist[0] == Fraction(size, 2**n)
            assert sum(p for _, p in dist.items()) == 1


def test_records_carry_exact_values() -> None:
    record = pi_sphere(4, 1).records()[1]
    assert record == {"weight": 1, "numerator": 1, "denominator": 4, "decimal": 0.25}
