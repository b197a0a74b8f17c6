"""Ellipsoids, orbit sets, actions, gradings, and ECH capacity sequences.

The boundary of an irrational ellipsoid E(a, b) carries exactly two
embedded Reeb orbits, of actions a (short) and b (long).  Irrationality
of b/a is modeled here without irrationals: an :class:`Ellipsoid` is
*nondegenerate* when the jet of b/a has a nonzero infinitesimal part,
equivalently ``a.re*b.inf != b.re*a.inf``, which guarantees that no two
distinct multiplicity pairs share an action.

For a nondegenerate ellipsoid the grading of an orbit set is twice the
number of lattice pairs of strictly smaller action, every even grading
is hit by exactly one orbit set, and the k-th capacity N(a, b)_k is the
action of the grading-2k generator.  Capacity sequences are generated by
bounded lattice enumeration (integer kernels take over when both axes
are pure rationals and the request is large).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import floor, isqrt, lcm
from typing import Optional

import numpy as np

from ._kernels import sorted_pair_sums
from .exactnum import (EPS, ZERO, EpsRational, OrderInsufficientError,
                       eps_cmp, eps_div)
from .fibonacci import odd_fib

__all__ = ["OrbitSet", "Ellipsoid", "DegenerateEllipsoidError",
           "CapacitySequence", "CapacityComparison", "action",
           "grading_count", "capacities", "capacity_compare",
           "generator_of_grading", "grading_threshold", "step_ellipsoids"]

_KERNEL_CUTOFF = 2048  # below this, plain enumeration wins and stays simple


class DegenerateEllipsoidError(ValueError):
    """Operation requires an irrational-ratio (nondegenerate) ellipsoid."""


@dataclass(frozen=True, slots=True)
class OrbitSet:
    """Multiplicities (x1, x2) on the short and long embedded orbits."""

    x1: int
    x2: int

    def __post_init__(self):
        if self.x1 < 0 or self.x2 < 0:
            raise ValueError("multiplicities must be nonnegative")

    @property
    def empty(self) -> bool:
        return self.x1 == 0 and self.x2 == 0


EMPTY_SET = OrbitSet(0, 0)


@dataclass(frozen=True, slots=True)
class Ellipsoid:
    """E(a, b) with 0 < a <= b; axes are exact infinitesimal-aware rationals."""

    a: EpsRational
    b: EpsRational

    def __post_init__(self):
        a = EpsRational.coerce(self.a)
        b = EpsRational.coerce(self.b)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        if eps_cmp(a, ZERO) <= 0:
            raise ValueError("short axis must be positive")
        if eps_cmp(a, b) > 0:
            raise ValueError("axes must satisfy a <= b")

    @property
    def nondegenerate(self) -> bool:
        """True iff the axis ratio b/a has a nonzero infinitesimal jet."""
        d = self.a.re * self.b.inf - self.b.re * self.a.inf
        if d != 0:
            return True
        if self.a.exact and self.b.exact:
            return False
        raise OrderInsufficientError(
            "degeneracy of the axis ratio rests on truncated terms"
        )

    def require_nondegenerate(self) -> "Ellipsoid":
        if not self.nondegenerate:
            raise DegenerateEllipsoidError(
                f"E({self.a}, {self.b}) has an exact rational axis ratio"
            )
        return self

    def angle_short(self) -> EpsRational:
        """Monodromy angle of the short orbit: a/b."""
        return eps_div(self.a, self.b)

    def angle_long(self) -> EpsRational:
        """Monodromy angle of the long orbit: b/a."""
        return eps_div(self.b, self.a)


def action(E: Ellipsoid, S: OrbitSet) -> EpsRational:
    """Action x1*a + x2*b of the orbit set."""
    return S.x1 * E.a + S.x2 * E.b


def _row_count(step: EpsRational, rem: EpsRational) -> int:
    """#{m >= 0 : m*step < rem} for step > 0, strictness via eps_cmp."""
    if eps_cmp(rem, ZERO) <= 0:
        return 0
    f = floor(rem.re / step.re)
    if f < 0:
        return 0
    # m <= f-1 are strictly below in the real part already; m = f can tie.
    return f + (1 if eps_cmp(step * f, rem) < 0 else 0)


def _count_below(E: Ellipsoid, bound: EpsRational) -> int:
    """#{(m, n) >= 0 : m*a + n*b < bound}, rows indexed by the long axis."""
    total = 0
    n = 0
    while True:
        rem = bound - n * E.b
        if eps_cmp(rem, ZERO) <= 0:
            return total
        total += _row_count(E.a, rem)
        n += 1


def grading_count(E: Ellipsoid, S: OrbitSet) -> int:
    """Grading 2 * #{(m, n) : action(m, n) < action(S)} of an orbit set."""
    E.require_nondegenerate()
    return 2 * _count_below(E, action(E, S))


def grading_threshold(E: Ellipsoid, bound: EpsRational) -> int:
    """#{(m, n) >= 0 : m*a + n*b < bound}; the raw lattice count."""
    return _count_below(E, EpsRational.coerce(bound))


@dataclass(frozen=True)
class CapacitySequence:
    """The sequence N(a, b): sorted values m*a + n*b, indexed from 0."""

    a: EpsRational
    b: EpsRational
    terms: tuple[EpsRational, ...]

    def __post_init__(self):
        if self.terms:
            if eps_cmp(self.terms[0], ZERO) != 0:
                raise ValueError("capacity sequences start at 0")
            for i in range(len(self.terms) - 1):
                if eps_cmp(self.terms[i], self.terms[i + 1]) > 0:
                    raise ValueError("capacity sequences are nondecreasing")

    def __len__(self) -> int:
        return len(self.terms)

    def __getitem__(self, k: int) -> EpsRational:
        return self.terms[k]


def _pairs_upto(a: EpsRational, b: EpsRational, bound: Fraction):
    """All (value, m, n) with value.re <= bound; cheap rational filter."""
    out = []
    n = 0
    while b.re * n <= bound:
        base = n * b
        m = 0
        value = base
        while value.re <= bound:
            out.append((value, m, n))
            m += 1
            value = base + m * a
        n += 1
    return out


def _sorted_pairs(a: EpsRational, b: EpsRational, count: int):
    """First ``count`` pairs sorted by action, ties by (m, n)."""
    area = 2 * count * a.re * b.re  # bound^2 holding ~count lattice points
    bound = isqrt(area.numerator // area.denominator) + a.re + b.re
    while True:
        pairs = _pairs_upto(a, b, bound)
        if len(pairs) >= count:
            break
        bound *= 2
    pairs.sort(key=lambda t: (t[0].re, t[0].inf, t[1], t[2]))
    return pairs[:count]


# Grading sweeps ask for prefixes of the same enumeration over and over;
# memoize per axis pair, regrowing geometrically.
_PAIRS_CACHE: dict[tuple, list] = {}


def _sorted_pairs_cached(a: EpsRational, b: EpsRational, count: int):
    key = (a.re, a.inf, a.exact, b.re, b.inf, b.exact)
    have = _PAIRS_CACHE.get(key, [])
    if len(have) < count:
        have = _sorted_pairs(a, b, max(count, 2 * len(have)))
        _PAIRS_CACHE[key] = have
    return have[:count]


def capacities(a, b, count: int) -> CapacitySequence:
    """First ``count`` terms of N(a, b), deterministically ordered.

    Ties in value are broken by lexicographic (m, n) during enumeration,
    which the emitted values cannot see but keeps generation canonical.
    """
    av = EpsRational.coerce(a)
    bv = EpsRational.coerce(b)
    if count < 1:
        raise ValueError("count must be >= 1")
    if eps_cmp(av, ZERO) <= 0 or eps_cmp(bv, ZERO) <= 0:
        raise ValueError("axes must be positive")
    pure_rational = av.inf == 0 and bv.inf == 0 and av.exact and bv.exact
    if pure_rational and count > _KERNEL_CUTOFF:
        scale = lcm(av.re.denominator, bv.re.denominator)
        values = sorted_pair_sums(int(av.re * scale), int(bv.re * scale), count)
        terms = tuple(EpsRational(Fraction(int(v), scale)) for v in values)
        return CapacitySequence(av, bv, terms)
    pairs = _sorted_pairs(av, bv, count)
    return CapacitySequence(av, bv, tuple(p[0] for p in pairs))


def generator_of_grading(E: Ellipsoid, gr: int) -> OrbitSet:
    """The unique orbit set with the given even grading."""
    E.require_nondegenerate()
    if gr < 0 or gr % 2 != 0:
        raise ValueError("grading must be a nonnegative even integer")
    _, m, n = _sorted_pairs_cached(E.a, E.b, gr // 2 + 1)[gr // 2]
    found = OrbitSet(m, n)
    got = grading_count(E, found)
    if got != gr:  # uniqueness is structural; this guards the plumbing
        raise RuntimeError(f"grading inversion failed: {got} != {gr}")
    return found


@dataclass(frozen=True, slots=True)
class CapacityComparison:
    """Outcome of the staircase-step capacity dichotomy at one step n.

    With b_n = g_{n+2}/g_n and c = g_{n+2}/g_{n+1}, the claim verified is
    N(1, b_n)_k < N(c, c)_k for 1 <= k < K_n, equality N = g_{n+2} at
    K_n = (g_{n+1}^2 + 3 g_{n+1})/2, and N(1, b_n)_k <= N(c, c)_k beyond.
    """

    n: int
    k_max: int
    k_star: int
    ok: bool
    equality_value: Fraction
    first_failure: Optional[tuple[int, Fraction, Fraction]]


def capacity_compare(n: int, k_max: int) -> CapacityComparison:
    """Compare N(1, b_n) against N(c, c) at exact rational axes (no eps)."""
    g0, g1, g2 = odd_fib(n), odd_fib(n + 1), odd_fib(n + 2)
    k_star = (g1 * g1 + 3 * g1) // 2
    if k_max < k_star:
        raise ValueError(f"k_max must be at least K_n = {k_star}")
    # Scale both sequences to integers: N(1, b_n) = N(g_n, g_{n+2}) / g_n
    # and N(c, c) = (g_{n+2}/g_{n+1}) * N(1, 1), so the comparison
    #   N(1, b_n)_k  vs  N(c, c)_k
    # is g_{n+1} * N(g_n, g_{n+2})_k  vs  g_n * g_{n+2} * N(1, 1)_k.
    left = sorted_pair_sums(g0, g2, k_max + 1)
    unit = sorted_pair_sums(1, 1, k_max + 1)
    if g1 * int(left[-1]) >= 2**62 or g0 * g2 * int(unit[-1]) >= 2**62:
        raise OverflowError("comparison exceeds the int64 range; lower k_max")
    lhs = g1 * left
    rhs = (g0 * g2) * unit
    equality_value = Fraction(g2)

    def fail(k: int) -> CapacityComparison:
        lv = Fraction(int(left[k]), g0)
        rv = Fraction(g2 * int(unit[k]), g1)
        return CapacityComparison(n, k_max, k_star, False, equality_value,
                                  (k, lv, rv))

    strict = lhs[1:k_star] < rhs[1:k_star]
    if not bool(strict.all()):
        return fail(1 + int(np.argmin(strict)))
    if lhs[k_star] != rhs[k_star] or int(left[k_star]) != g0 * g2:
        return fail(k_star)
    weak = lhs[k_star:] <= rhs[k_star:]
    if not bool(weak.all()):
        return fail(k_star + int(np.argmin(weak)))
    return CapacityComparison(n, k_max, k_star, True, equality_value, None)


def step_ellipsoids(n: int) -> tuple[Ellipsoid, Ellipsoid]:
    """The step-n pair: target E(c, c+E) and source E(1, b_n+E)."""
    c = Fraction(odd_fib(n + 2), odd_fib(n + 1))
    b = Fraction(odd_fib(n + 2), odd_fib(n))
    top = Ellipsoid(EpsRational(c), EpsRational(c) + EPS)
    bottom = Ellipsoid(EpsRational(1), EpsRational(b) + EPS)
    return top, bottom
