"""The Fibonacci staircase c_B on [1, tau^4), folding, and the stabilized bound.

c_B(x) is the optimal ball capacity for embedding the ellipsoid E(1, x):
linear with slope g_n/g_{n+1} on [a_n, b_n], constant g_{n+2}/g_{n+1} on
[b_n, a_{n+1}], with the steps accumulating at tau^4.  Everything here is
exact: tau^4 is irrational, so membership of a rational x in [1, tau^4)
is decided by the sign of x^2 - 7x + 1 (tau^4 and tau^-4 are its roots
and their sum is 7), never by radicals.

Symplectic folding embeds E(1, x) x R^(2N-4) into B^4(3x/(x+1) + eps) x
R^(2N-4), so the stabilized embedding function f satisfies
f(x) <= min(c_B(x), 3x/(x+1)).  Below tau^4 the staircase is sharp:
f = c_B there, and 3x/(x+1) touches c_B exactly at the anchors b_n
(3*b_n/(b_n+1) = g_{n+2}/g_{n+1} via 3*g_{n+1} = g_{n+2} + g_n).  Beyond
tau^4 only the folding upper bound is returned; the exact value there is
open, and the trivial lower bounds from staircase approximants are left
to the caller.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .fibonacci import anchors, odd_fib

__all__ = ["StairValue", "StabilizedAnswer", "OutOfDomainError",
           "below_tau4", "c_B", "folding_bound", "stabilized_f"]

LINEAR = "linear-interval"
CONSTANT = "constant-interval"


class OutOfDomainError(ValueError):
    """x is outside [1, tau^4), where the staircase is defined."""


def _rat(x) -> Fraction:
    if isinstance(x, float):
        raise TypeError("floats are not accepted; pass Fraction or int")
    return Fraction(x)


def below_tau4(x) -> bool:
    """True iff x < tau^4, decided by the sign of x^2 - 7x + 1 (x >= 1)."""
    q = _rat(x)
    if q < 1:
        raise ValueError("x must be >= 1")
    return q * q - 7 * q + 1 < 0


@dataclass(frozen=True, slots=True)
class StairValue:
    x: Fraction
    value: Fraction
    regime: str  # LINEAR or CONSTANT
    n: int


def c_B(x) -> StairValue:
    """Exact staircase value; shared endpoints report the linear regime."""
    q = _rat(x)
    if q < 1 or not below_tau4(q):
        raise OutOfDomainError(f"{q} is outside [1, tau^4)")
    n = 0
    while True:
        step = anchors(n)
        if step.a <= q <= step.b:
            return StairValue(q, q * Fraction(odd_fib(n), odd_fib(n + 1)), LINEAR, n)
        if step.b < q < anchors(n + 1).a:
            return StairValue(q, Fraction(odd_fib(n + 2), odd_fib(n + 1)), CONSTANT, n)
        n += 1


def folding_bound(x) -> Fraction:
    """The folding value 3x/(x+1), an upper bound for the stabilized problem."""
    q = _rat(x)
    if q < 1:
        raise ValueError("x must be >= 1")
    return 3 * q / (q + 1)


@dataclass(frozen=True, slots=True)
class StabilizedAnswer:
    x: Fraction
    exact_value: Optional[Fraction]
    upper_bound: Fraction
    known_exact: bool


def stabilized_f(x) -> StabilizedAnswer:
    """The stabilized embedding function where known, else its upper bound."""
    q = _rat(x)
    fold = folding_bound(q)
    if below_tau4(q):
        value = c_B(q).value
        return StabilizedAnswer(q, value, min(value, fold), True)
    return StabilizedAnswer(q, None, fold, False)
