"""Exact Krawtchouk polynomials K_r^n(x) and the identities they satisfy.

Everything here is integer arithmetic; no value is ever rounded.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import comb
from typing import NamedTuple

from shifted_subsets.errors import DomainError


def _check_dimension(n: int) -> None:
    if n < 0:
        raise DomainError(f"dimension must be non-negative, got {n}")


def _check_index(name: str, value: int, n: int) -> None:
    if not 0 <= value <= n:
        raise DomainError(f"{name} must lie in [0, {n}], got {value}")


def kraw_direct(n: int, r: int, x: int) -> int:
    """Alternating sum  sum_i (-1)^i C(x, i) C(n - x, r - i)."""
    _check_dimension(n)
    _check_index("degree r", r, n)
    _check_index("weight x", x, n)
    return sum((-1) ** i * comb(x, i) * comb(n - x, r - i) for i in range(r + 1))


@dataclass(frozen=True)
class KrawtchoukTable:
    n: int
    rows: tuple[tuple[int, ...], ...]

    def __getitem__(self, key: tuple[int, int]) -> int:
        r, x = key
        _check_index("degree r", r, self.n)
        _check_index("weight x", x, self.n)
        return self.rows[r][x]

    def value(self, r: int, x: int) -> int:
        """Like indexing, but K_r(x) = 0 for r outside [0, n]."""
        if r < 0 or r > self.n:
            return 0
        return self[r, x]

    @property
    def entries(self) -> dict[tuple[int, int], int]:
        return {
            (r, x): value
            for r, row in enumerate(self.rows)
            for x, value in enumerate(row)
        }


@lru_cache(maxsize=None)
def kraw_table(n: int) -> KrawtchoukTable:
    """Full table for dimension n, grown from n - 1 by Pascal-style addition.

    K_r^n(x) = K_r^{n-1}(x) + K_{r-1}^{n-1}(x) for x <= n - 1, and the last
    column uses K_r^n(n) = K_r^{n-1}(n-1) - K_{r-1}^{n-1}(n-1).
    """
    _check_dimension(n)
    if n == 0:
        return KrawtchoukTable(n=0, rows=((1,),))

    previous = kraw_table(n - 1)
    rows: list[tuple[int, ...]] = []
    for r in range(n + 1):
        row = [previous.value(r, x) + previous.value(r - 1, x) for x in range(n)]
        row.append(previous.value(r, n - 1) - previous.value(r - 1, n - 1))
        rows.append(tuple(row))
    return KrawtchoukTable(n=n, rows=tuple(rows))


def _poly_mul(a: list[int], b: list[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai == 0:
            continue
        for j, bj in enumerate(b):
            out[i + j] += ai * bj
    return out


def kraw_gf_coefficients(n: int, x: int) -> list[int]:
    """Coefficients of (1 - z)^x (1 + z)^(n - x); entry r is K_r^n(x)."""
    _check_dimension(n)
    _check_index("weight x", x, n)
    coefficients = [1]
    for _ in range(x):
        coefficients = _poly_mul(coefficients, [1, -1])
    for _ in range(n - x):
        coefficients = _poly_mul(coefficients, [1, 1])
    return coefficients


def kraw_ball_identity(n: int, r: int, x: int) -> tuple[int, int]:
    """Both sides of  sum_{s<=r} K_s^n(x) = K_r^{n-1}(x - 1)."""
    _check_dimension(n)
    _check_index("radius r", r, n)
    if not 1 <= x <= n:
        raise DomainError(f"weight x must lie in [1, {n}], got {x}")
    table = kraw_table(n)
    lhs = sum(table[s, x] for s in range(r + 1))
    rhs = kraw_table(n - 1).value(r, x - 1)
    return lhs, rhs


class RecurrenceResiduals(NamedTuple):
    three_term: int | None
    pascal: int | None


def kraw_recurrence_residual(n: int, r: int, x: int) -> RecurrenceResiduals:
    """Residuals of the two x-recurrences; each is None outside its domain.

    three_term: x K_r(x-1) - (n-2r) K_r(x) + (n-x) K_r(x+1), for 1 <= x <= n-1.
    pascal:     K_r(x-1) - K_{r-1}(x) - K_{r-1}(x-1) - K_r(x), for x, r >= 1.
    """
    _check_dimension(n)
    _check_index("degree r", r, n)
    _check_index("weight x", x, n)
    table = kraw_table(n)

    three_term = None
    if 1 <= x <= n - 1:
        three_term = (
            x * table[r, x - 1]
            - (n - 2 * r) * table[r, x]
            + (n - x) * table[r, x + 1]
        )

    pascal = None
    if x >= 1 and r >= 1:
        pascal = (
            table[r, x - 1] - table[r - 1, x] - table[r - 1, x - 1] - table[r, x]
        )

    if three_term is None and pascal is None:
        raise DomainError(f"no recurrence applies at n={n}, r={r}, x={x}")
    return RecurrenceResiduals(three_term=three_term, pascal=pascal)


def kraw_center_value(n: int, r: int) -> int:
    """K_r(n/2) for even n: 0 for odd r, (-1)^(r/2) C(n/2, r/2) for even r."""
    if n % 2:
        raise DomainError("center value needs an even dimension")
    _check_index("degree r", r, n)
    if r % 2:
        return 0
    return (-1) ** (r // 2) * comb(n // 2, r // 2)


def kraw_near_center(n: int, r: int) -> int:
    """K_r(n/2 - 1) for even n >= 2, in closed form."""
    if n % 2 or n < 2:
        raise DomainError("near-center value needs an even dimension >= 2")
    _check_index("degree r", r, n)
    half = n // 2
    if r % 2 == 0:
        # (1 - 2r/n) (-1)^(r/2) C(n/2, r/2), always an integer
        numerator = (n - 2 * r) * (-1) ** (r // 2) * comb(half, r // 2)
        return numerator // n
    return 2 * (-1) ** ((r - 1) // 2) * comb(half - 1, (r - 1) // 2)
