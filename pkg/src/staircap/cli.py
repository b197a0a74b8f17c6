"""Command-line front end with exact rational I/O.

Every value crossing the CLI boundary is an exact serialization: plain
rationals as ``p/q``, infinitesimal-aware values as ``p/q+r/sE``.  Exit
codes: 0 on success / all checks passing, 1 when a verifier reports a
failure, 2 on usage errors (including out-of-domain inputs).
"""

from __future__ import annotations

import csv
import io
import json
import random
import sys
from fractions import Fraction
from math import gcd
from pathlib import Path

import click

from . import cobordism_index as cob
from . import ech_core, ech_index, staircase, verify
from .exactnum import EpsRational, parse_eps
from .fibonacci import anchors, odd_fib, verify_identities

_FORMATS = ("table", "json", "csv")


def _parse_fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise click.UsageError(f"cannot parse {text!r} as a rational p/q")


def _parse_eps_arg(text: str) -> EpsRational:
    try:
        return parse_eps(text)
    except ValueError as exc:
        raise click.UsageError(str(exc))


def _parse_int_list(text: str) -> tuple[int, ...]:
    text = text.strip()
    if not text:
        return ()
    try:
        return tuple(int(part) for part in text.split(","))
    except ValueError:
        raise click.UsageError(f"cannot parse {text!r} as a comma list of integers")


def format_options(fn):
    fn = click.option("--format", "fmt", type=click.Choice(_FORMATS),
                      default="table", show_default=True,
                      help="Output format.")(fn)
    fn = click.option("--json", "as_json", is_flag=True,
                      help="Shorthand for --format json.")(fn)
    return fn


def _emit(fmt: str, as_json: bool, payload, order: list[str] | None = None):
    """Render a dict (or list of scalars) in the chosen format."""
    if as_json:
        fmt = "json"
    if isinstance(payload, list):
        if fmt == "json":
            click.echo(json.dumps(payload, sort_keys=True, separators=(",", ":")))
        elif fmt == "csv":
            buf = io.StringIO()
            writer = csv.writer(buf)
            writer.writerow(["term"])
            for item in payload:
                writer.writerow([item])
            click.echo(buf.getvalue().rstrip("\n"))
        else:
            for item in payload:
                click.echo(item)
        return
    keys = order or list(payload)
    if fmt == "json":
        click.echo(json.dumps(payload, sort_keys=True, separators=(",", ":")))
    elif fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf)
        writer.writerow(keys)
        writer.writerow([payload[k] for k in keys])
        click.echo(buf.getvalue().rstrip("\n"))
    else:
        for k in keys:
            click.echo(f"{k}: {payload[k]}")


@click.group()
def main():
    """Exact staircase, capacity, and index computations."""


@main.command()
@click.option("--n", type=int, required=True, help="Index into g_0, g_1, ...")
@format_options
def fib(n, fmt, as_json):
    """Odd-index Fibonacci number g_n."""
    if n < 0:
        raise click.UsageError("n must be >= 0")
    _emit(fmt, as_json, {"n": n, "g": str(odd_fib(n))}, ["n", "g"])


@main.command(name="anchors")
@click.option("--n", type=int, required=True)
@format_options
def anchors_cmd(n, fmt, as_json):
    """Staircase anchors a_n = (g_{n+1}/g_n)^2 and b_n = g_{n+2}/g_n."""
    if n < 0:
        raise click.UsageError("n must be >= 0")
    step = anchors(n)
    _emit(fmt, as_json, {"n": n, "a": str(step.a), "b": str(step.b)},
          ["n", "a", "b"])


@main.command(name="staircase")
@click.option("--x", required=True, help="Rational in [1, tau^4).")
@format_options
def staircase_cmd(x, fmt, as_json):
    """Staircase value c_B(x)."""
    q = _parse_fraction(x)
    try:
        value = staircase.c_B(q)
    except (staircase.OutOfDomainError, ValueError) as exc:
        raise click.UsageError(str(exc))
    _emit(fmt, as_json,
          {"x": str(value.x), "value": str(value.value),
           "regime": value.regime, "n": value.n},
          ["x", "value", "regime", "n"])


@main.command()
@click.option("--x", required=True, help="Rational >= 1.")
@format_options
def fold(x, fmt, as_json):
    """Folding upper bound 3x/(x+1)."""
    q = _parse_fraction(x)
    try:
        value = staircase.folding_bound(q)
    except ValueError as exc:
        raise click.UsageError(str(exc))
    _emit(fmt, as_json, {"x": str(q), "bound": str(value)}, ["x", "bound"])


@main.command()
@click.option("--x", required=True, help="Rational >= 1.")
@format_options
def stabilized(x, fmt, as_json):
    """Stabilized embedding function: exact below tau^4, else upper bound."""
    q = _parse_fraction(x)
    try:
        ans = staircase.stabilized_f(q)
    except ValueError as exc:
        raise click.UsageError(str(exc))
    payload = {
        "x": str(ans.x),
        "exact_value": "" if ans.exact_value is None else str(ans.exact_value),
        "upper_bound": str(ans.upper_bound),
        "known_exact": ans.known_exact,
    }
    _emit(fmt, as_json, payload, ["x", "exact_value", "upper_bound", "known_exact"])


def _axis(re_text: str, eps_text: str | None) -> EpsRational:
    re_part = _parse_fraction(re_text)
    inf_part = _parse_fraction(eps_text) if eps_text else Fraction(0)
    return EpsRational(re_part, inf_part)


@main.command()
@click.option("--a", "a_text", required=True, help="Short axis, rational.")
@click.option("--b", "b_text", required=True, help="Long axis, rational.")
@click.option("--count", type=int, required=True)
@click.option("--eps-a", "eps_a", default=None, help="E-coefficient of a.")
@click.option("--eps-b", "eps_b", default=None, help="E-coefficient of b.")
@click.option("--cache", "cache_path", type=click.Path(path_type=Path),
              default=None, help="Advisory JSON cache of computed sequences.")
@format_options
def capacities(a_text, b_text, count, eps_a, eps_b, cache_path, fmt, as_json):
    """First COUNT capacities N(a, b), serialized exactly."""
    if count < 1:
        raise click.UsageError("count must be >= 1")
    a = _axis(a_text, eps_a)
    b = _axis(b_text, eps_b)
    key = f"{a}|{b}|{count}"
    terms: list[str] | None = None
    cache: dict[str, list[str]] = {}
    if cache_path is not None and cache_path.exists():
        cache = json.loads(cache_path.read_text())
        terms = cache.get(key)
    if terms is None:
        try:
            seq = ech_core.capacities(a, b, count)
        except ValueError as exc:
            raise click.UsageError(str(exc))
        terms = [str(t) for t in seq.terms]
        if cache_path is not None:
            cache[key] = terms
            cache_path.write_text(json.dumps(cache, sort_keys=True))
    _emit(fmt, as_json, terms)


@main.command()
@click.option("--n", type=int, required=True, help="Staircase step.")
@click.option("--kmax", type=int, required=True)
@format_options
def compare(n, kmax, fmt, as_json):
    """Capacity dichotomy N(1, b_n) vs N(c, c) through index kmax."""
    if n < 0:
        raise click.UsageError("n must be >= 0")
    try:
        report = ech_core.capacity_compare(n, kmax)
    except (ValueError, OverflowError) as exc:
        raise click.UsageError(str(exc))
    payload = {
        "n": report.n,
        "kmax": report.k_max,
        "k_star": report.k_star,
        "equality_value": str(report.equality_value),
        "ok": report.ok,
        "first_failure": "" if report.first_failure is None else str(report.first_failure),
    }
    _emit(fmt, as_json, payload,
          ["n", "kmax", "k_star", "equality_value", "ok", "first_failure"])
    sys.exit(0 if report.ok else 1)


def _ellipsoid_from_options(a_text, b_text, eps_a, eps_b) -> ech_core.Ellipsoid:
    try:
        return ech_core.Ellipsoid(_axis(a_text, eps_a), _axis(b_text, eps_b))
    except ValueError as exc:
        raise click.UsageError(str(exc))


@main.command()
@click.option("--a", "a_text", required=True)
@click.option("--b", "b_text", required=True)
@click.option("--eps-a", "eps_a", default=None)
@click.option("--eps-b", "eps_b", default=None)
@click.option("--x1", type=int, required=True)
@click.option("--x2", type=int, required=True)
@format_options
def grading(a_text, b_text, eps_a, eps_b, x1, x2, fmt, as_json):
    """Grading of the orbit set gamma_1^x1 gamma_2^x2."""
    E = _ellipsoid_from_options(a_text, b_text, eps_a, eps_b)
    try:
        value = ech_core.grading_count(E, ech_core.OrbitSet(x1, x2))
    except (ech_core.DegenerateEllipsoidError, ValueError) as exc:
        raise click.UsageError(str(exc))
    _emit(fmt, as_json, {"x1": x1, "x2": x2, "grading": value},
          ["x1", "x2", "grading"])


@main.command()
@click.option("--a", "a_text", required=True)
@click.option("--b", "b_text", required=True)
@click.option("--eps-a", "eps_a", default=None)
@click.option("--eps-b", "eps_b", default=None)
@click.option("--gr", type=int, required=True, help="Even grading.")
@format_options
def generator(a_text, b_text, eps_a, eps_b, gr, fmt, as_json):
    """The unique orbit set in a given grading."""
    E = _ellipsoid_from_options(a_text, b_text, eps_a, eps_b)
    try:
        S = ech_core.generator_of_grading(E, gr)
    except (ech_core.DegenerateEllipsoidError, ValueError) as exc:
        raise click.UsageError(str(exc))
    _emit(fmt, as_json, {"gr": gr, "x1": S.x1, "x2": S.x2}, ["gr", "x1", "x2"])


def _curve_class(top, bottom, etop, ebot) -> ech_index.CurveClass:
    m = _parse_int_list(top)
    n = _parse_int_list(bottom)
    if len(m) != 2 or len(n) != 2:
        raise click.UsageError("--top and --bottom take two multiplicities m1,m2")
    axes_top = [s.strip() for s in etop.split(",")]
    axes_bot = [s.strip() for s in ebot.split(",")]
    if len(axes_top) != 2 or len(axes_bot) != 2:
        raise click.UsageError("--etop and --ebot take two axes a,b")
    try:
        return ech_index.CurveClass(
            ech_core.Ellipsoid(_parse_eps_arg(axes_top[0]), _parse_eps_arg(axes_top[1])),
            ech_core.Ellipsoid(_parse_eps_arg(axes_bot[0]), _parse_eps_arg(axes_bot[1])),
            ech_core.OrbitSet(*m),
            ech_core.OrbitSet(*n),
        )
    except (ech_core.DegenerateEllipsoidError, ValueError) as exc:
        raise click.UsageError(str(exc))


@main.command()
@click.option("--top", required=True, help="m1,m2 on the target boundary.")
@click.option("--bottom", required=True, help="n1,n2 on the source boundary.")
@click.option("--etop", required=True, help="Target axes a,b (EpsRational).")
@click.option("--ebot", required=True, help="Source axes a,b (EpsRational).")
@format_options
def index4(top, bottom, etop, ebot, fmt, as_json):
    """Four-dimensional ECH index of a relative class."""
    C = _curve_class(top, bottom, etop, ebot)
    _emit(fmt, as_json, {"I": ech_index.ech_index_I(C)}, ["I"])


@main.command()
@click.option("--top", required=True)
@click.option("--bottom", required=True)
@click.option("--etop", required=True)
@click.option("--ebot", required=True)
@format_options
def j0(top, bottom, etop, ebot, fmt, as_json):
    """J0 index and the I - J0 gap of a relative class."""
    C = _curve_class(top, bottom, etop, ebot)
    payload = {
        "J0": ech_index.j0_index(C),
        "I": ech_index.ech_index_I(C),
        "gap": ech_index.i_j0_gap(C),
    }
    _emit(fmt, as_json, payload, ["J0", "I", "gap"])


@main.command()
@click.option("--m", type=int, required=True, help="Total multiplicity.")
@click.option("--theta", required=True, help="Monodromy angle P/Q[+R/SE].")
@format_options
def partition(m, theta, fmt, as_json):
    """Positive-end partition at an elliptic orbit."""
    if m < 1:
        raise click.UsageError("m must be >= 1")
    th = _parse_eps_arg(theta)
    try:
        part = ech_index.positive_partition(m, th)
    except ValueError as exc:
        raise click.UsageError(str(exc))
    _emit(fmt, as_json,
          {"m": m, "theta": str(th), "entries": ",".join(map(str, part.entries))},
          ["m", "theta", "entries"])


@main.command(name="indexN")
@click.option("--dim", "n_dim", type=int, required=True, help="Dimension parameter N >= 3.")
@click.option("--r", "r_text", default="", help="Comma list.")
@click.option("--s", "s_text", default="")
@click.option("--t", "t_text", default="")
@click.option("--u", "u_text", default="")
@click.option("--n", "step", type=int, required=True, help="Staircase step.")
@click.option("--space", type=click.Choice(["middle", "top", "bottom"]),
              default="middle", show_default=True,
              help="Cobordism, round-end, or ellipsoid-end moduli space.")
@format_options
def index_n(n_dim, r_text, s_text, t_text, u_text, step, space, fmt, as_json):
    """Higher-dimensional virtual index of a punctured sphere."""
    try:
        spec = cob.EndSpecN.for_step(step, n_dim,
                                     r=_parse_int_list(r_text),
                                     s=_parse_int_list(s_text),
                                     t=_parse_int_list(t_text),
                                     u=_parse_int_list(u_text))
    except ValueError as exc:
        raise click.UsageError(str(exc))
    fn = {"middle": cob.index_cobordism, "top": cob.index_symp_top,
          "bottom": cob.index_symp_bottom}[space]
    _emit(fmt, as_json, {"space": space, "index": fn(spec)}, ["space", "index"])


@main.command()
@click.option("--which", required=True,
              type=click.Choice(["mainspace", "topid", "bottomid", "keyest",
                                 "hermite", "floorsum"]))
@click.option("--n", "step", type=int, default=1, show_default=True)
@click.option("--dim", "n_dim", type=int, default=3, show_default=True)
@click.option("--kmax", type=int, default=6, show_default=True)
@click.option("--count", type=int, default=10_000, show_default=True,
              help="Sample size for the randomized checks.")
@click.option("--seed", type=int, default=0, show_default=True)
@format_options
def lemmas(which, step, n_dim, kmax, count, seed, fmt, as_json):
    """Run one arithmetic lemma verifier; exit 1 on any violation."""
    rng = random.Random(seed)
    try:
        if which == "mainspace":
            idx = cob.index_cobordism(cob.EndSpecN.main_moduli(step, n_dim))
            ok = idx == 0
            payload = {"which": which, "index": idx, "ok": ok}
        elif which == "topid":
            report = cob.scan_topid(n_dim, kmax)
            ok = report.ok
            payload = {"which": which, "configs": report.configs,
                       "violations": len(report.violations),
                       "equalities": len(report.equalities), "ok": ok}
        elif which == "bottomid":
            report = cob.scan_bottomid(step, n_dim)
            ok = report.ok
            payload = {"which": which, "configs": report.configs,
                       "violations": len(report.violations),
                       "equalities": len(report.equalities), "ok": ok}
        elif which == "keyest":
            worst = None
            for _ in range(count):
                desc = cob.sample_descriptor(rng)
                bound, rhs, _tight = cob.keyest_bound(desc, step)
                margin = bound - rhs
                worst = margin if worst is None else min(worst, margin)
            ok = worst is not None and worst >= 0
            payload = {"which": which, "samples": count,
                       "min_margin": worst, "ok": ok}
        elif which == "hermite":
            tight = 0
            for _ in range(count):
                l = rng.randint(1, 50)
                x = EpsRational(Fraction(rng.randint(-100, 100), rng.randint(1, 40)),
                                Fraction(rng.randint(-5, 5)))
                if cob.hermite_gap(l, x) == -l + 1:
                    tight += 1
            payload = {"which": which, "samples": count, "tight": tight, "ok": True}
            ok = True
        else:  # floorsum
            pairs = 0
            cap = min(count, 200)
            for p in range(1, cap + 1):
                for q in range(1, cap + 1):
                    if gcd(p, q) == 1:
                        cob.floor_sum(p, q)
                        pairs += 1
            payload = {"which": which, "pairs": pairs, "ok": True}
            ok = True
    except (ValueError, RuntimeError) as exc:
        raise click.UsageError(str(exc))
    _emit(fmt, as_json, payload)
    sys.exit(0 if ok else 1)


@main.command(name="verify")
@click.option("--n", "step", type=int, required=True)
@click.option("--dim", "n_dim", type=int, required=True)
@click.option("--kmax", type=int, default=None,
              help="Capacity indices to check; defaults to K_n.")
@click.option("--budget", type=int, default=verify.DEFAULT_BUDGET,
              envvar="STAIRCAP_BUDGET", show_default=True,
              help="Enumeration budget for the ellipsoid-end scan.")
@format_options
def verify_cmd(step, n_dim, kmax, budget, fmt, as_json):
    """Full per-step verification pipeline; exit 0 iff all checks pass."""
    g1 = odd_fib(step + 1)
    k_star = (g1 * g1 + 3 * g1) // 2
    if kmax is None:
        kmax = k_star
    try:
        report = verify.run_verification(step, n_dim, kmax, budget=budget)
    except (ValueError, OverflowError) as exc:
        raise click.UsageError(str(exc))
    if as_json or fmt == "json":
        click.echo(report.to_json())
    elif fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf)
        writer.writerow(["name", "status", "lhs", "rhs", "detail"])
        for c in report.checks:
            writer.writerow([c.name, c.status, c.lhs, c.rhs, c.detail])
        writer.writerow(["overall", "pass" if report.overall else "fail", "", "", ""])
        click.echo(buf.getvalue().rstrip("\n"))
    else:
        for c in report.checks:
            click.echo(f"{c.status:7s} {c.name}: {c.lhs} vs {c.rhs}"
                       + (f"  ({c.detail})" if c.detail else ""))
        click.echo(f"overall: {'pass' if report.overall else 'fail'}")
    sys.exit(0 if report.overall else 1)


@main.command()
@click.option("--nmax", type=int, default=40, show_default=True)
@format_options
def identities(nmax, fmt, as_json):
    """Check every Fibonacci identity up to nmax; exit 1 on failure."""
    if nmax < 1:
        raise click.UsageError("nmax must be >= 1")
    report = verify_identities(nmax)
    payload = {c.name: ("pass" if c.ok else f"fails at {list(c.failures)}")
               for c in report.checks}
    payload["overall"] = "pass" if report.ok else "fail"
    _emit(fmt, as_json, payload)
    sys.exit(0 if report.ok else 1)


if __name__ == "__main__":
    main()
