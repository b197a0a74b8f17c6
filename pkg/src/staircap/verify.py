"""Per-step verification pipeline with machine-readable reports.

``run_verification(n, N, k_max)`` replays every arithmetic claim behind
staircase step n in dimension 2N and records one check per claim:
Fibonacci identities, the two grading routes, the source-side lattice
count, the capacity dichotomy, the J0 evaluation with its unique
topology solution, the positive-end partition, the vanishing cobordism
index, the two symplectization scans, and the scaling threshold.

Checks whose enumeration would exceed the configured budget are emitted
with status "skipped" rather than silently shrunk; the overall verdict
is the conjunction of the non-skipped checks.  Reports serialize to
canonical JSON (sorted keys, no whitespace), byte-identical for
identical inputs.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

from . import cobordism_index as cob
from . import ech_core, ech_index
from .ech_core import OrbitSet, step_ellipsoids
from .exactnum import EpsRational, eps_div
from .fibonacci import odd_fib, verify_identities

__all__ = ["CheckResult", "VerificationReport", "run_verification",
           "DEFAULT_BUDGET", "step2_count"]

DEFAULT_BUDGET = 40   # scan_bottomid enumerates partitions of ~g_{n+2}
TOPID_KMAX = 4


@dataclass(frozen=True, slots=True)
class CheckResult:
    name: str
    status: str  # "pass" | "fail" | "skipped"
    lhs: str
    rhs: str
    detail: str


@dataclass(frozen=True, slots=True)
class VerificationReport:
    n: int
    N: int
    checks: tuple[CheckResult, ...]

    @property
    def overall(self) -> bool:
        return all(c.status == "pass" for c in self.checks if c.status != "skipped")

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "N": self.N,
            "checks": [
                {"name": c.name, "status": c.status, "lhs": c.lhs,
                 "rhs": c.rhs, "detail": c.detail}
                for c in self.checks
            ],
            "overall": self.overall,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, separators=(",", ":"))


def step2_count(n: int) -> int:
    """#{(a, b) >= 0 : a + b*(b_n + E) < g_{n+2}} by lattice enumeration."""
    _, bottom = step_ellipsoids(n)
    return ech_core.grading_threshold(bottom, EpsRational(odd_fib(n + 2)))


def _result(name: str, ok: bool, lhs, rhs, detail: str = "") -> CheckResult:
    return CheckResult(name, "pass" if ok else "fail", str(lhs), str(rhs), detail)


def run_verification(n: int, N: int, k_max: int,
                     budget: int = DEFAULT_BUDGET) -> VerificationReport:
    """Run the full step-n pipeline; failures are captured, never raised."""
    if n < 0:
        raise ValueError("n must be >= 0")
    if N < 3:
        raise ValueError("N must be >= 3")
    g0, g1, g2 = odd_fib(n), odd_fib(n + 1), odd_fib(n + 2)
    k_star = (g1 * g1 + 3 * g1) // 2
    if k_max < k_star:
        raise ValueError(f"k_max must be at least K_n = {k_star}")
    checks: list[CheckResult] = []

    ident = verify_identities(max(n, 1))
    bad = [c.name for c in ident.checks if not c.ok]
    checks.append(_result("fibonacci-identities", not bad,
                          "all identities", "hold up to n",
                          "failing: " + ",".join(bad) if bad else ""))

    top, bottom = step_ellipsoids(n)
    alpha = OrbitSet(0, g1)
    expected_gr = g1 * g1 + 3 * g1
    gr_lattice = ech_core.grading_count(top, alpha)
    checks.append(_result("grading-lattice", gr_lattice == expected_gr,
                          gr_lattice, expected_gr,
                          "2 * lattice count below the generator action"))
    gr_cz = g1 + ech_index.cz_total(top, alpha, "I")
    checks.append(_result("grading-cz", gr_cz == expected_gr,
                          gr_cz, expected_gr,
                          "x1 + x2 + 2*x1*x2 + CZ_I route"))

    count = step2_count(n)
    checks.append(_result("source-lattice-count", 2 * count == expected_gr,
                          count, Fraction(expected_gr, 2),
                          "points strictly inside the action simplex"))

    comparison = ech_core.capacity_compare(n, k_max)
    checks.append(_result(
        "capacity-dichotomy", comparison.ok,
        f"strict below K_n={comparison.k_star}", f"equality {comparison.equality_value} at K_n",
        "" if comparison.ok else f"first failure {comparison.first_failure}"))

    C = ech_index.step_curve_class(n)
    j0 = ech_index.j0_index(C)
    j0_expected = ech_index.j0_step_value(n)
    checks.append(_result("j0-value", j0 == j0_expected, j0, j0_expected,
                          "2*g_{n+2} - 4*g_{n+1} + 2*(g_n - 1)"))
    index_i = ech_index.ech_index_I(C)
    checks.append(_result("ech-index-zero", index_i == 0, index_i, 0, ""))
    gap = ech_index.i_j0_gap(C)
    checks.append(_result("i-j0-relation", gap == index_i - j0,
                          gap, index_i - j0, "2c + CZ_top against I - J0"))
    solutions = ech_index.topology_solve(j0, g1) if j0 >= 0 else []
    checks.append(_result("topology-unique", solutions == [(0, 0, 1)],
                          solutions, [(0, 0, 1)],
                          "genus 0, embedded, one negative end"))

    theta = eps_div(top.b, top.a)  # 1 + E/c: fractional part small positive
    part = ech_index.positive_partition(g1, theta)
    checks.append(_result("partition-all-ones", part.entries == (1,) * g1,
                          part.entries, (1,) * g1,
                          "simple positive ends forced"))

    idx = cob.index_cobordism(cob.EndSpecN.main_moduli(n, N))
    checks.append(_result("cobordism-index-zero", idx == 0, idx, 0, ""))

    top_scan = cob.scan_topid(N, TOPID_KMAX)
    expected_eq = tuple((k, "long", k) for k in range(1, TOPID_KMAX + 1))
    checks.append(_result("scan-topid",
                          top_scan.ok and top_scan.equalities == expected_eq,
                          f"{len(top_scan.violations)} violations",
                          "0 violations, cylinder equalities",
                          f"{top_scan.configs} configurations"))

    if g2 <= budget:
        bottom_scan = cob.scan_bottomid(n, N)
        eq_expected = (((g2,), ()),)
        checks.append(_result("scan-bottomid",
                              bottom_scan.ok and bottom_scan.equalities == eq_expected,
                              f"{len(bottom_scan.violations)} violations",
                              "0 violations, unique equality",
                              f"{bottom_scan.configs} configurations"))
    else:
        checks.append(CheckResult("scan-bottomid", "skipped",
                                  f"g_{{n+2}}={g2}", f"budget={budget}",
                                  "partition enumeration beyond budget"))

    lam = cob.lambda_sup(n, 0, 0)
    checks.append(_result("lambda-sup", lam == 1, lam, 1,
                          "scaling threshold at vanishing perturbation"))

    return VerificationReport(n, N, tuple(checks))
