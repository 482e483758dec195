from __future__ import annotations

import pytest

from shifted_subsets.errors import CapacityError, DomainError
from shifted_subsets.spectra.subsets import (
    SubsetSpec,
    dot,
    from_bits,
    restrict,
    shift_elements,
    to_bits,
    variable_mask,
)


def test_bit_string_helpers() -> None:
    assert to_bits(5, 4) == "0101"
    assert from_bits("0101") == 5
    assert to_bits(0, 0) == ""
    assert variable_mask(4, [1]) == 0b1000
    assert variable_mask(4, [1, 4]) == 0b1001
    assert restrict(0b1010, 4, [1, 3]) == 0b11
    assert restrict(0b1010, 4, [2, 4]) == 0
    assert dot(0b1101, 0b0101) == 0
    assert shift_elements([0, 3], 1) == frozenset({1, 2})


def test_bad_bit_strings_and_variables() -> None:
    with pytest.raises(DomainError):
        from_bits("01a")
    with pytest.raises(DomainError):
        variable_mask(4, [5])


def test_sphere_and_ball_members() -> None:
    sphere = SubsetSpec.sphere(4, 1)
    assert sphere.members() == (1, 2, 4, 8)
    assert sphere.size() == 4
    ball = SubsetSpec.ball(4, 1)
    assert ball.members() == (0, 1, 2, 4, 8)
    assert ball.size() == len(ball.members())


def test_sphere_radius_above_half_is_rejected() -> None:
    with pytest.raises(DomainError):
        SubsetSpec.sphere(4, 3)
    with pytest.raises(DomainError):
        SubsetSpec.ball(4, 5)


def test_parity_set() -> None:
    spec = SubsetSpec.parity(6, [2, 5])
    assert spec.t == from_bits("010010")
    members = spec.members()
    assert len(members) == spec.size() == 32
    assert all(dot(y, spec.t) == 1 for y in members)


def test_junta_members_and_validation() -> None:
    spec = SubsetSpec.junta(4, (1, 2), (0, 0, 0, 1))
    assert spec.size() == 4
    assert set(spec.members()) == {0b1100, 0b1101, 0b1110, 0b1111}
    with pytest.raises(DomainError):
        SubsetSpec.junta(4, (1, 2), (1, 1, 1, 1))
    with pytest.raises(DomainError):
        SubsetSpec.junta(4, (1, 1), (0, 1, 0, 1))
    with pytest.raises(DomainError):
        SubsetSpec.junta(4, (1, 2), (0, 1))


def test_generalised_parity_sizes() -> None:
    spec = SubsetSpec.generalised_parity(5, "101", [1, 0, 0, 1])
    assert spec.recoverable
    assert spec.size() == 16
    assert len(spec.members()) == 16

    zero = SubsetSpec.generalised_parity(5, "000", [1, 0, 0, 1])
    assert not zero.recoverable
    assert zero.size() == 2 * 2**3
    assert len(zero.members()) == zero.size()


def test_generalised_parity_rejects_empty_set() -> None:
    with pytest.raises(DomainError):
        SubsetSpec.generalised_parity(4, "00", [0, 0, 0, 0])


def test_explicit_set() -> None:
    spec = SubsetSpec.explicit(3, ["011", 5])
    assert spec.members() == (3, 5)
    assert spec.describe() == "explicit(n=3, |S|=2)"
    with pytest.raises(DomainError):
        SubsetSpec.explicit(3, [])
    with pytest.raises(DomainError):
        SubsetSpec.explicit(3, [8])


def test_members_need_a_materialisable_cube() -> None:
    with pytest.raises(CapacityError):
        SubsetSpec.parity(21, [1]).members()


def test_from_params() -> None:
    assert SubsetSpec.from_params(6, {"r": 2}) == SubsetSpec.sphere(6, 2)
    ball = SubsetSpec.from_params(6, {"subset": "ball", "r": 4})
    assert ball.kind == "ball" and ball.radius == 4
    parity = SubsetSpec.from_params(6, {"subset": "parity", "variables": [1, 3]})
    assert parity.t == 0b101000
    with pytest.raises(DomainError, match="'r'"):
        SubsetSpec.from_params(6, {"subset": "sphere"})
    with pytest.raises(DomainError):
        SubsetSpec.from_params(6, {"subset": "cube"})
