"""Conley-Zehnder sums, the ECH and J0 indices, and partition conditions.

For an elliptic orbit whose linearized return map rotates by angle
2*pi*theta in the product trivialization, the k-fold cover has
CZ(gamma^k) = 2*floor(k*theta) + 1.  On an ellipsoid boundary the
monodromy angle of each orbit is its action divided by the other
orbit's action, so everything reduces to infinitesimal-aware floors.
The convention is pinned by the grading identity

    gr(S) = x1 + x2 + 2*x1*x2 + CZ_I(S) = 2 * (lattice count below S)

which the test suite enforces against :func:`staircap.ech_core.grading_count`.

A relative homology class between orbit sets on two ellipsoid boundaries
has

    I  = c + Q + CZ_I(top) - CZ_I(bottom)      (ECH index)
    J0 = -c + Q + CZ_J(top) - CZ_J(bottom)     (topological complexity)

with c = (m1+m2) - (n1+n2) and Q = 2*(m1*m2 - n1*n2), and the two are
linked by I - J0 = 2c + CZ_top.  J0 dominates 2(g - 1 + delta) +
sum_gamma (2*n_gamma - 1) for embedded-curve topology, which
:func:`topology_solve` inverts by enumeration.

Positive ends at an elliptic orbit of angle theta and total multiplicity
m are partitioned by the maximal concave lattice path under the line of
slope theta: take the upper concave hull of the points (k, floor(k*theta)),
k = 0..m, split each edge at its interior lattice points, and read off
horizontal displacements.  Only the positive-end partition is
implemented; the negative-end analogue is not needed anywhere here.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Literal, Mapping

from .ech_core import Ellipsoid, OrbitSet, step_ellipsoids
from .exactnum import EpsRational, OrderInsufficientError, eps_floor
from .fibonacci import odd_fib

__all__ = ["CurveClass", "Partition", "EndTopology", "cz_elliptic",
           "cz_total", "ech_index_I", "j0_index", "i_j0_gap",
           "topology_solve", "positive_partition", "step_curve_class",
           "j0_step_value"]


def cz_elliptic(theta, k: int) -> int:
    """CZ of the k-fold cover of an elliptic orbit with monodromy angle theta."""
    if k < 1:
        raise ValueError("cover multiplicity must be >= 1")
    return 2 * eps_floor(k * EpsRational.coerce(theta)) + 1


# Prefix sums of CZ over cover multiplicities, keyed by the full angle
# data (jet plus exactness, since floors react to the exactness flag).
_PREFIX: dict[tuple, list[int]] = {}


def _cz_prefix(theta: EpsRational, m: int) -> int:
    """sum_{l=1..m} cz_elliptic(theta, l); m = 0 gives 0.

    Loops in plain integers: floor(l*theta) is floor(l*p/q) shifted by
    the sign of l*inf, which for l >= 1 is the sign of inf.  This is the
    multiplicity hot loop (step-n classes reach l ~ g_{n+2}).
    """
    key = (theta.re, theta.inf, theta.exact)
    acc = _PREFIX.setdefault(key, [0])
    if len(acc) <= m:
        p, q = theta.re.numerator, theta.re.denominator
        shift = 1 if theta.inf > 0 else (-1 if theta.inf < 0 else 0)
        for l in range(len(acc), m + 1):
            num = l * p
            if num % q == 0:
                if shift == 0 and not theta.exact:
                    raise OrderInsufficientError(
                        f"CZ of cover {l} at angle {theta!r} is undecided"
                    )
                fl = num // q + min(shift, 0)
            else:
                fl = num // q
            acc.append(acc[-1] + 2 * fl + 1)
    return acc[m]


Variant = Literal["I", "J", "top"]


def cz_total(E: Ellipsoid, S: OrbitSet, variant: Variant) -> int:
    """Total CZ of an orbit set: full sums ("I"), sums to multiplicity - 1
    ("J"), or top-cover terms only ("top")."""
    E.require_nondegenerate()
    total = 0
    for theta, mult in ((E.angle_short(), S.x1), (E.angle_long(), S.x2)):
        if mult == 0:
            continue
        if variant == "I":
            total += _cz_prefix(theta, mult)
        elif variant == "J":
            total += _cz_prefix(theta, mult - 1)
        elif variant == "top":
            total += _cz_prefix(theta, mult) - _cz_prefix(theta, mult - 1)
        else:
            raise ValueError(f"unknown variant {variant!r}")
    return total


@dataclass(frozen=True, slots=True)
class CurveClass:
    """Asymptotics of a relative class in a 4d ellipsoid cobordism."""

    top_ellipsoid: Ellipsoid
    bottom_ellipsoid: Ellipsoid
    top: OrbitSet
    bottom: OrbitSet

    def __post_init__(self):
        self.top_ellipsoid.require_nondegenerate()
        self.bottom_ellipsoid.require_nondegenerate()


def _c_tau(C: CurveClass) -> int:
    return (C.top.x1 + C.top.x2) - (C.bottom.x1 + C.bottom.x2)


def _q_tau(C: CurveClass) -> int:
    return 2 * (C.top.x1 * C.top.x2 - C.bottom.x1 * C.bottom.x2)


def ech_index_I(C: CurveClass) -> int:
    """ECH index I = c + Q + CZ_I(top) - CZ_I(bottom)."""
    return (_c_tau(C) + _q_tau(C)
            + cz_total(C.top_ellipsoid, C.top, "I")
            - cz_total(C.bottom_ellipsoid, C.bottom, "I"))


def j0_index(C: CurveClass) -> int:
    """J0 = -c + Q + CZ_J(top) - CZ_J(bottom)."""
    return (-_c_tau(C) + _q_tau(C)
            + cz_total(C.top_ellipsoid, C.top, "J")
            - cz_total(C.bottom_ellipsoid, C.bottom, "J"))


def i_j0_gap(C: CurveClass) -> int:
    """2c + CZ_top, cross-checked against I - J0 on every call."""
    gap = (2 * _c_tau(C)
           + cz_total(C.top_ellipsoid, C.top, "top")
           - cz_total(C.bottom_ellipsoid, C.bottom, "top"))
    if gap != ech_index_I(C) - j0_index(C):
        raise RuntimeError("I - J0 relation violated; internal inconsistency")
    return gap


@dataclass(frozen=True, slots=True)
class EndTopology:
    """End counts per embedded orbit, genus, and singularity count."""

    end_counts: Mapping[str, int]
    genus: int
    delta: int

    def complexity(self) -> int:
        """2(g - 1 + delta) + sum over orbits of (2 * n_gamma - 1)."""
        return (2 * (self.genus - 1 + self.delta)
                + sum(2 * n - 1 for n in self.end_counts.values()))


def topology_solve(j0: int, n_top: int) -> list[tuple[int, int, int]]:
    """All (genus, delta, x) with ends on two orbits fitting under j0.

    The curve has n_top ends on the top orbit and x >= 1 ends on the
    bottom one; admissible triples satisfy
    2(g - 1 + delta) + (2*n_top - 1) + (2x - 1) <= j0.
    """
    if j0 < 0:
        raise ValueError("j0 must be >= 0")
    if n_top < 1:
        raise ValueError("n_top must be >= 1")
    out = []
    # 2(g + delta + x) <= j0 + 4 - 2*n_top
    budget = (j0 + 4 - 2 * n_top) // 2
    for x in range(1, budget + 1):
        for g in range(0, budget - x + 1):
            for delta in range(0, budget - x - g + 1):
                topo = EndTopology({"top": n_top, "bottom": x}, g, delta)
                if topo.complexity() <= j0:
                    out.append((g, delta, x))
    return sorted(out)


@dataclass(frozen=True, slots=True)
class Partition:
    """Unordered partition, canonically stored in descending order."""

    entries: tuple[int, ...]

    def __post_init__(self):
        if any(e < 1 for e in self.entries):
            raise ValueError("partition entries must be positive")
        object.__setattr__(self, "entries", tuple(sorted(self.entries, reverse=True)))

    @property
    def total(self) -> int:
        return sum(self.entries)


def _upper_hull(points: list[tuple[int, int]]) -> list[tuple[int, int]]:
    """Upper concave chain of points already sorted by x (strict right turns)."""
    hull: list[tuple[int, int]] = []
    for p in points:
        while len(hull) >= 2:
            ox, oy = hull[-2]
            ax, ay = hull[-1]
            if (ax - ox) * (p[1] - oy) - (ay - oy) * (p[0] - ox) >= 0:
                hull.pop()
            else:
                break
        hull.append(p)
    return hull


def positive_partition(m: int, theta) -> Partition:
    """Positive-end multiplicities forced on an index-0 curve.

    Upper concave hull of (k, floor(k*theta)) for 0 <= k <= m; each hull
    edge is split at its interior lattice points and contributes its
    horizontal displacements.
    """
    if m < 1:
        raise ValueError("total multiplicity must be >= 1")
    th = EpsRational.coerce(theta)
    points = [(k, eps_floor(k * th)) for k in range(m + 1)]
    hull = _upper_hull(points)
    entries: list[int] = []
    for (x0, y0), (x1, y1) in zip(hull, hull[1:]):
        dx, dy = x1 - x0, y1 - y0
        d = gcd(dx, abs(dy))
        entries.extend([dx // d] * d)
    return Partition(tuple(entries))


def step_curve_class(n: int) -> CurveClass:
    """The step-n class: top gamma_2^{g_{n+1}}, bottom gamma_1^{g_{n+2}}."""
    top_e, bottom_e = step_ellipsoids(n)
    return CurveClass(top_e, bottom_e,
                      OrbitSet(0, odd_fib(n + 1)),
                      OrbitSet(odd_fib(n + 2), 0))


def j0_step_value(n: int) -> int:
    """Closed form 2*g_{n+2} - 4*g_{n+1} + 2*(g_n - 1) of the step-n J0."""
    return 2 * odd_fib(n + 2) - 4 * odd_fib(n + 1) + 2 * (odd_fib(n) - 1)
