"""Odd-index Fibonacci numbers and the staircase anchor sequences.

The sequence ``g_0, g_1, g_2, ... = 1, 1, 2, 5, 13, 34, ...`` satisfies
``g_{n+1} = 3*g_n - g_{n-1}``, which we use directly instead of indexing
into the full Fibonacci sequence (no off-by-one hazards).  The anchors

    a_n = (g_{n+1}/g_n)^2        b_n = g_{n+2}/g_n

mark the corners of the staircase: both increase to tau^4 = (7+3*sqrt5)/2.

``verify_identities`` machine-checks the handful of identities about the
``g_n`` that the index and capacity computations lean on (the linear
recurrence identity, the quadratic identity, coprimality, indivisibility
by 3, and the lattice-count closed form).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

__all__ = ["odd_fib", "anchors", "StaircaseAnchor", "IdentityCheck",
           "IdentityReport", "verify_identities", "IDENTITY_NAMES"]

_G = [1, 1]


def odd_fib(n: int) -> int:
    """g_n, the n-th odd-index Fibonacci number (g_0 = g_1 = 1)."""
    if n < 0:
        raise ValueError("index must be nonnegative")
    while len(_G) <= n:
        _G.append(3 * _G[-1] - _G[-2])
    return _G[n]


@dataclass(frozen=True, slots=True)
class StaircaseAnchor:
    """Corner data (a_n, b_n) of the n-th staircase step."""

    n: int
    a: Fraction
    b: Fraction


def anchors(n: int) -> StaircaseAnchor:
    """Exact anchors a_n = (g_{n+1}/g_n)^2 and b_n = g_{n+2}/g_n."""
    g0, g1, g2 = odd_fib(n), odd_fib(n + 1), odd_fib(n + 2)
    return StaircaseAnchor(n, Fraction(g1, g0) ** 2, Fraction(g2, g0))


# Identity checks, each at a single index n.  Names are stable: they key
# the report and appear in CLI output.

def _id_linear(n: int) -> bool:
    return 3 * odd_fib(n + 1) == odd_fib(n + 2) + odd_fib(n)


def _id_quadratic(n: int) -> bool:
    g, h = odd_fib(n), odd_fib(n + 1)
    return g * g + h * h - 3 * g * h == -1


def _id_coprime_adjacent(n: int) -> bool:
    return gcd(odd_fib(n), odd_fib(n + 1)) == 1


def _id_coprime_skip(n: int) -> bool:
    return gcd(odd_fib(n), odd_fib(n + 2)) == 1


def _id_coprime_product(n: int) -> bool:
    return gcd(odd_fib(n + 1), odd_fib(n) * odd_fib(n + 2)) == 1


def _id_not_div_three(n: int) -> bool:
    return odd_fib(n) % 3 != 0


def _id_count_closed_form(n: int) -> bool:
    g0, g1, g2 = odd_fib(n), odd_fib(n + 1), odd_fib(n + 2)
    return g0 * g2 + g2 + g0 - 1 == g1 * g1 + 3 * g1


_IDENTITIES = {
    "three-g-linear": _id_linear,
    "quadratic-minus-one": _id_quadratic,
    "coprime-adjacent": _id_coprime_adjacent,
    "coprime-skip": _id_coprime_skip,
    "coprime-product": _id_coprime_product,
    "not-divisible-by-3": _id_not_div_three,
    "count-closed-form": _id_count_closed_form,
}

IDENTITY_NAMES = tuple(_IDENTITIES)


@dataclass(frozen=True, slots=True)
class IdentityCheck:
    name: str
    ok: bool
    failures: tuple[int, ...]


@dataclass(frozen=True, slots=True)
class IdentityReport:
    n_max: int
    checks: tuple[IdentityCheck, ...]

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)


def verify_identities(n_max: int) -> IdentityReport:
    """Check every identity for all 0 <= n <= n_max; failures reported, not raised."""
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    checks = []
    for name, fn in _IDENTITIES.items():
        bad = tuple(n for n in range(n_max + 1) if not fn(n))
        checks.append(IdentityCheck(name, not bad, bad))
    return IdentityReport(n_max, tuple(checks))
