"""Fredholm index formulas for punctured spheres in dimension 2N >= 6.

Three moduli spaces appear around the completed cobordism obtained by
removing a product neighborhood of E(1, b+eps, S, ..., S) from
E(c, c+eps) x (CP^1)^(N-2): curves in the cobordism itself, curves in
the symplectization of the positive (round, "ball-like") end, and curves
in the symplectization of the negative ellipsoid end.  Each index is
evaluated in both of its displayed forms, with the agreement asserted on
every call; the simplifications floor(r*c/(c+E)) = r - 1 and
floor(s*(c+E)/c) = s are theorems of the infinitesimal model, not
assumptions.  All three indices are structurally even.

The scanners exhaust the small configuration spaces behind the rigidity
statements: ``scan_topid`` (positive-end curves over the round factor
satisfy index >= 2(N-2) + 2(cov-1), equality only for cylinder covers),
``scan_bottomid`` (curves in the ellipsoid end with one negative end on
the g_{n+2}-fold short orbit have index >= 0, equality only for the
cylinder), and ``keyest_bound`` (the multi-component estimate controlling
glued configurations, driven by Hermite's floor inequality
l*floor(x/l) - floor(x) >= -l + 1).

``lambda_sup`` is the scaling threshold extracted from curve-action
positivity: 1 + (eps + eps')*g_{n+1}/g_{n+2}.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import ceil, floor, gcd
from typing import Iterator

from .exactnum import EPS, EpsRational, eps_div, eps_floor
from .fibonacci import odd_fib

__all__ = ["EndSpecN", "CurveCover", "ComponentDescriptor", "ScanReport",
           "index_cobordism", "index_symp_top", "index_symp_bottom",
           "scan_topid", "scan_bottomid", "hermite_gap", "floor_sum",
           "keyest_bound", "lambda_sup", "sample_descriptor"]


def _check(cond: bool, msg: str) -> None:
    # internal consistency; survives python -O
    if not cond:
        raise RuntimeError(msg)


@dataclass(frozen=True, slots=True)
class EndSpecN:
    """End data of a punctured sphere: dimension parameter and multiplicities.

    ``r``/``s`` list positive-end multiplicities on the first/second
    orbit family, ``t``/``u`` negative-end multiplicities.  ``c`` and
    ``b`` are the unperturbed axis ratios of the two ends; the formulas
    perturb them by the formal infinitesimal internally.
    """

    N: int
    r: tuple[int, ...] = ()
    s: tuple[int, ...] = ()
    t: tuple[int, ...] = ()
    u: tuple[int, ...] = ()
    c: EpsRational = field(default_factory=lambda: EpsRational(2))
    b: EpsRational = field(default_factory=lambda: EpsRational(2))

    def __post_init__(self):
        if self.N < 3:
            raise ValueError("dimension parameter N must be >= 3")
        for name in ("r", "s", "t", "u"):
            vals = tuple(getattr(self, name))
            object.__setattr__(self, name, vals)
            if any(v < 1 for v in vals):
                raise ValueError(f"{name} multiplicities must be >= 1")
        object.__setattr__(self, "c", EpsRational.coerce(self.c))
        object.__setattr__(self, "b", EpsRational.coerce(self.b))

    @classmethod
    def for_step(cls, n: int, N: int, *, r=(), s=(), t=(), u=()) -> "EndSpecN":
        """End data with c = g_{n+2}/g_{n+1} and b = b_n = g_{n+2}/g_n."""
        c = Fraction(odd_fib(n + 2), odd_fib(n + 1))
        b = Fraction(odd_fib(n + 2), odd_fib(n))
        return cls(N, tuple(r), tuple(s), tuple(t), tuple(u),
                   EpsRational(c), EpsRational(b))

    @classmethod
    def main_moduli(cls, n: int, N: int) -> "EndSpecN":
        """g_{n+1} simple positive ends on the long orbit, one negative
        end on the g_{n+2}-fold short orbit of the ellipsoid factor."""
        return cls.for_step(n, N, s=(1,) * odd_fib(n + 1), t=(odd_fib(n + 2),))


# Floors appearing in the index formulas, memoized: scans hit the same
# (multiplicity, axis) pairs thousands of times.
_FLOORS: dict[tuple, int] = {}


def _axis_key(axis: EpsRational):
    return (axis.re, axis.inf, axis.exact)


def _floor_ratio_down(mult: int, axis: EpsRational) -> int:
    """floor(mult * axis / (axis + E))."""
    key = ("rd", mult, _axis_key(axis))
    if key not in _FLOORS:
        _FLOORS[key] = eps_floor(eps_div(mult * axis, axis + EPS))
    return _FLOORS[key]


def _floor_ratio_up(mult: int, axis: EpsRational) -> int:
    """floor(mult * (axis + E) / axis)."""
    key = ("ru", mult, _axis_key(axis))
    if key not in _FLOORS:
        _FLOORS[key] = eps_floor(eps_div(mult * (axis + EPS), axis))
    return _FLOORS[key]


def _floor_div(mult: int, axis: EpsRational) -> int:
    """floor(mult / (axis + E))."""
    key = ("dv", mult, _axis_key(axis))
    if key not in _FLOORS:
        _FLOORS[key] = eps_floor(eps_div(EpsRational(mult), axis + EPS))
    return _FLOORS[key]


def _floor_mul(mult: int, axis: EpsRational) -> int:
    """floor(mult * (axis + E))."""
    key = ("ml", mult, _axis_key(axis))
    if key not in _FLOORS:
        _FLOORS[key] = eps_floor(mult * (axis + EPS))
    return _FLOORS[key]


def index_cobordism(spec: EndSpecN) -> int:
    """Virtual index in the completed cobordism (both forms, asserted equal)."""
    N, c, b = spec.N, spec.c, spec.b
    n1, n2, n3, n4 = len(spec.r), len(spec.s), len(spec.t), len(spec.u)
    form_a = (N - 3) * (2 - n1 - n2 - n3 - n4)
    form_a += sum(2 * ri + 2 * _floor_ratio_down(ri, c) + N - 1 for ri in spec.r)
    form_a += sum(2 * si + 2 * _floor_ratio_up(si, c) + N - 1 for si in spec.s)
    form_a -= sum(2 * ti + 2 * _floor_div(ti, b) + N - 1 for ti in spec.t)
    form_a -= sum(2 * ui + 2 * _floor_mul(ui, b) + N - 1 for ui in spec.u)

    form_b = (2 * (N - 3) + 2 * n2 - (2 * N - 4) * (n3 + n4)
              + 4 * sum(spec.r) + 4 * sum(spec.s)
              - 2 * sum(ti + _floor_div(ti, b) for ti in spec.t)
              - 2 * sum(ui + _floor_mul(ui, b) for ui in spec.u))
    _check(form_a == form_b, "cobordism index: displayed forms disagree")
    _check(form_a % 2 == 0, "cobordism index must be even")
    return form_a


def index_symp_top(spec: EndSpecN) -> int:
    """Virtual index in the symplectization of the round end.

    Here the negative ends (``t`` on the short orbit, ``u`` on the long
    one) live on the same boundary as the positive ends.
    """
    N, c = spec.N, spec.c
    n1, n2, n3, n4 = len(spec.r), len(spec.s), len(spec.t), len(spec.u)
    form_a = (N - 3) * (2 - n1 - n2 - n3 - n4)
    form_a += sum(2 * ri + 2 * _floor_ratio_down(ri, c) + N - 1 for ri in spec.r)
    form_a += sum(2 * si + 2 * _floor_ratio_up(si, c) + N - 1 for si in spec.s)
    form_a -= sum(2 * ti + 2 * _floor_ratio_down(ti, c) - N + 3 for ti in spec.t)
    form_a -= sum(2 * ui + 2 * _floor_ratio_up(ui, c) - N + 3 for ui in spec.u)

    form_b = (2 * (N - 3) + 2 * n2 + 2 * n3
              + 4 * sum(spec.r) + 4 * sum(spec.s)
              - 4 * sum(spec.t) - 4 * sum(spec.u))
    _check(form_a == form_b, "round-end index: displayed forms disagree")
    _check(form_a % 2 == 0, "round-end index must be even")
    return form_a


def index_symp_bottom(spec: EndSpecN) -> int:
    """Virtual index in the symplectization of the ellipsoid end.

    Ends on both sides lie on the E(1, b+eps) orbits: ``r``/``t`` on the
    short one (action 1), ``s``/``u`` on the long one (action b+eps).
    """
    N, b = spec.N, spec.b
    n1, n2, n3, n4 = len(spec.r), len(spec.s), len(spec.t), len(spec.u)
    form_a = (N - 3) * (2 - n1 - n2 - n3 - n4)
    form_a += sum(2 * ri + 2 * _floor_div(ri, b) + N - 1 for ri in spec.r)
    form_a += sum(2 * si + 2 * _floor_mul(si, b) + N - 1 for si in spec.s)
    form_a -= sum(2 * ti + 2 * _floor_div(ti, b) + N - 1 for ti in spec.t)
    form_a -= sum(2 * ui + 2 * _floor_mul(ui, b) + N - 1 for ui in spec.u)

    form_b = (2 * (N - 3) + 2 * n1 + 2 * n2 - (2 * N - 4) * (n3 + n4)
              + 2 * sum(ri + _floor_div(ri, b) for ri in spec.r)
              + 2 * sum(si + _floor_mul(si, b) for si in spec.s)
              - 2 * sum(ti + _floor_div(ti, b) for ti in spec.t)
              - 2 * sum(ui + _floor_mul(ui, b) for ui in spec.u))
    _check(form_a == form_b, "ellipsoid-end index: displayed forms disagree")
    _check(form_a % 2 == 0, "ellipsoid-end index must be even")
    return form_a


@dataclass(frozen=True, slots=True)
class ScanReport:
    """Outcome of an exhaustive configuration scan."""

    name: str
    configs: int
    violations: tuple
    equalities: tuple

    @property
    def ok(self) -> bool:
        return not self.violations


def scan_topid(N: int, k_max: int, c: Fraction = Fraction(2)) -> ScanReport:
    """Check index >= 2(N-2) + 2(cov-1) over all single-negative-end configs.

    Configurations: k simple positive ends on the long orbit and one
    negative end on either orbit with multiplicity r <= k (larger r is
    excluded by positivity of area).  Equality must occur exactly at the
    cylinder covers (negative end = k-fold long orbit).
    """
    if k_max < 1:
        raise ValueError("k_max must be >= 1")
    cv = EpsRational(c)
    violations = []
    equalities = []
    configs = 0
    for k in range(1, k_max + 1):
        for orbit in ("short", "long"):
            for r in range(1, k + 1):
                spec = EndSpecN(N, s=(1,) * k,
                                t=(r,) if orbit == "short" else (),
                                u=(r,) if orbit == "long" else (),
                                c=cv, b=cv)
                idx = index_symp_top(spec)
                cov = r if orbit == "long" else 0
                bound = 2 * (N - 2) + 2 * (cov - 1)
                configs += 1
                is_cyl_cover = orbit == "long" and r == k
                if idx < bound or (idx == bound) != is_cyl_cover:
                    violations.append((k, orbit, r, idx, bound))
                if idx == bound:
                    equalities.append((k, orbit, r))
    return ScanReport("topid", configs, tuple(violations), tuple(equalities))


def _partitions(total: int) -> Iterator[tuple[int, ...]]:
    """Partitions of ``total`` into positive parts, descending."""
    if total == 0:
        yield ()
        return

    def rec(remaining: int, cap: int, prefix: tuple[int, ...]):
        if remaining == 0:
            yield prefix
            return
        for part in range(min(cap, remaining), 0, -1):
            yield from rec(remaining - part, part, prefix + (part,))

    yield from rec(total, total, ())


def scan_bottomid(n: int, N: int) -> ScanReport:
    """Check index >= 0 for curves in the ellipsoid end with one negative
    end on the g_{n+2}-fold short orbit.

    Positive end multisets (r on the short orbit, s on the long one) are
    enumerated inside the action window
    g_{n+2} <= sum(r) + sum(s)*b_n <= g_{n+2} + 1: the lower cut is the
    curve-area constraint, the upper one the desk-scale envelope.
    Equality must occur exactly at the single positive end of
    multiplicity g_{n+2}.
    """
    if not 0 <= n <= 4:
        raise ValueError("enumeration is desk-scale only: need 0 <= n <= 4")
    g2 = odd_fib(n + 2)
    b = Fraction(odd_fib(n + 2), odd_fib(n))
    violations = []
    equalities = []
    configs = 0
    sigma_s = 0
    while sigma_s * b <= g2 + 1:
        # smallest/largest total short-orbit multiplicity inside the window
        rho_lo = max(0, ceil(g2 - sigma_s * b))
        rho_hi = floor(g2 + 1 - sigma_s * b)
        for s_part in _partitions(sigma_s):
            for rho in range(rho_lo, rho_hi + 1):
                for r_part in _partitions(rho):
                    spec = EndSpecN.for_step(n, N, r=r_part, s=s_part,
                                             t=(g2,))
                    idx = index_symp_bottom(spec)
                    configs += 1
                    is_cyl = r_part == (g2,) and not s_part
                    if idx < 0 or (idx == 0) != is_cyl:
                        violations.append((r_part, s_part, idx))
                    if idx == 0:
                        equalities.append((r_part, s_part))
        sigma_s += 1
    return ScanReport("bottomid", configs, tuple(violations), tuple(equalities))


def hermite_gap(l: int, x) -> int:
    """l*floor(x/l) - floor(x); always >= -l + 1 (Hermite)."""
    if l < 1:
        raise ValueError("l must be a positive integer")
    xv = EpsRational.coerce(x)
    gap = l * eps_floor(xv / l) - eps_floor(xv)
    _check(gap >= -l + 1, "Hermite inequality violated")
    return gap


def floor_sum(p: int, q: int) -> int:
    """sum_{i=0}^{q-1} floor(i*p/q) for coprime p, q; equals (p-1)(q-1)/2."""
    if p < 1 or q < 1:
        raise ValueError("p and q must be positive")
    if gcd(p, q) != 1:
        raise ValueError("p and q must be coprime")
    total = sum((i * p) // q for i in range(q))
    _check(2 * total == (p - 1) * (q - 1), "floor-sum identity violated")
    return total


@dataclass(frozen=True, slots=True)
class CurveCover:
    """One cobordism curve of a component: a k-fold cover and its end counts.

    ``underlying_ends`` are the end counts of the underlying simple
    curve; ``end_counts`` those of the cover (each underlying end is
    covered by between 1 and k ends).  ``t_underlying`` lists the
    underlying negative-end multiplicities on the short ellipsoid orbit.
    """

    k: int
    underlying_ends: tuple[int, int, int, int]
    end_counts: tuple[int, int, int, int]
    t_underlying: tuple[int, ...] = ()

    def __post_init__(self):
        if self.k < 1:
            raise ValueError("cover degree must be >= 1")
        for tilde, covered in zip(self.underlying_ends, self.end_counts):
            if tilde < 0 or covered < tilde or covered > self.k * tilde:
                raise ValueError("end counts incompatible with the cover degree")
        if len(self.t_underlying) != self.underlying_ends[2]:
            raise ValueError("one underlying multiplicity per underlying end")
        if any(t < 1 for t in self.t_underlying):
            raise ValueError("multiplicities must be >= 1")


@dataclass(frozen=True, slots=True)
class ComponentDescriptor:
    """A glued component: P cobordism curves plus Q lower subcomponents.

    The distinguished unmatched negative end sits on the first curve,
    covering its first underlying short-orbit end with local degree
    ``local_degree`` <= k^1, so its multiplicity is
    local_degree * t_underlying[0].  Genus-0 matching forces
    P + Q = N3 + N4 over the covered end counts.
    """

    curves: tuple[CurveCover, ...]
    q_components: int
    local_degree: int

    def __post_init__(self):
        if not self.curves:
            raise ValueError("a component contains at least one curve")
        if self.q_components < 0:
            raise ValueError("Q must be >= 0")
        first = self.curves[0]
        if first.underlying_ends[2] < 1:
            raise ValueError("the first curve needs an underlying short-orbit "
                             "negative end to carry the unmatched end")
        if not 1 <= self.local_degree <= first.k:
            raise ValueError("local degree must satisfy 1 <= l <= k^1")
        # block-1 end count: one end of local degree l plus at most k - l others
        cap = first.k * first.underlying_ends[2] - self.local_degree + 1
        if first.end_counts[2] > cap:
            raise ValueError("covered short-orbit ends exceed the cover structure")
        n3 = sum(c.end_counts[2] for c in self.curves)
        n4 = sum(c.end_counts[3] for c in self.curves)
        if len(self.curves) + self.q_components != n3 + n4:
            raise ValueError("genus-0 matching requires P + Q = N3 + N4")

    @property
    def t11(self) -> int:
        return self.local_degree * self.curves[0].t_underlying[0]


def keyest_bound(desc: ComponentDescriptor, n: int) -> tuple[int, int, bool]:
    """Evaluate the component index bound chain at step n.

    Returns ``(bound, rhs, tight)`` where ``bound`` is twice the reduced
    chain value

        sum_p (n2^p - k^p * ntilde2^p) + (k^1 ntilde3^1 - n3^1)
        - floor(t11/(b+E)) + k^1 floor(ttilde11/(b+E))

    and ``rhs = 2 * sum_p (n2^p - k^p * ntilde2^p)``; ``bound >= rhs``
    always, via Hermite's inequality and the cover-structure counts.
    """
    b = Fraction(odd_fib(n + 2), odd_fib(n))
    first = desc.curves[0]
    l = desc.local_degree
    t11 = desc.t11
    x = eps_div(EpsRational(t11), EpsRational(b) + EPS)
    # -floor(t11/(b+E)) + k1*floor(ttilde11/(b+E))
    #   = hermite_gap(l, x) + (k1 - l) * floor(ttilde11/(b+E))
    floor_tilde = eps_floor(x / l)
    floor_part = hermite_gap(l, x) + (first.k - l) * floor_tilde
    s2_deficit = sum(c.end_counts[1] - c.k * c.underlying_ends[1]
                     for c in desc.curves)
    half = s2_deficit + (first.k * first.underlying_ends[2]
                         - first.end_counts[2]) + floor_part
    bound = 2 * half
    rhs = 2 * s2_deficit
    _check(bound >= rhs, "component index bound fell below its floor")
    return bound, rhs, bound == rhs


def sample_descriptor(rng: random.Random, *, max_k: int = 4,
                      max_ends: int = 4, max_mult: int = 4) -> ComponentDescriptor:
    """Random valid descriptor for bulk scans of the component bound."""
    while True:
        p_count = rng.randint(1, 3)
        curves = []
        local_degree = 1
        for p in range(p_count):
            k = rng.randint(1, max_k)
            tilde = [rng.randint(0, max_ends // 2) for _ in range(4)]
            if p == 0:
                if tilde[2] == 0:
                    tilde[2] = rng.randint(1, max_ends // 2)
                local_degree = rng.randint(1, k)
            covered = []
            for j, nt in enumerate(tilde):
                hi = k * nt - (local_degree - 1 if p == 0 and j == 2 else 0)
                hi = max(nt, min(hi, max_ends))
                covered.append(rng.randint(nt, hi) if nt else 0)
            t_und = tuple(rng.randint(1, max_mult) for _ in range(tilde[2]))
            curves.append(CurveCover(k, tuple(tilde), tuple(covered), t_und))
        n3 = sum(c.end_counts[2] for c in curves)
        n4 = sum(c.end_counts[3] for c in curves)
        q = n3 + n4 - p_count
        if q < 0:
            continue
        return ComponentDescriptor(tuple(curves), q, local_degree)


def lambda_sup(n: int, eps: Fraction | int = 0, eps2: Fraction | int = 0) -> Fraction:
    """Largest scaling compatible with positive curve action:
    1 + (eps + eps')*g_{n+1}/g_{n+2}."""
    e1, e2 = Fraction(eps), Fraction(eps2)
    if e1 < 0 or e2 < 0:
        raise ValueError("perturbations must be nonnegative")
    return 1 + (e1 + e2) * Fraction(odd_fib(n + 1), odd_fib(n + 2))
