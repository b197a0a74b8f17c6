"""Exact rationals extended by one formal positive infinitesimal.

Values are first-order jets ``re + inf*E`` where ``E`` is a formal symbol
ordered strictly between 0 and every positive rational.  The order is
lexicographic on ``(re, inf)``, which turns every "for all sufficiently
small eps > 0" statement into a decidable exact comparison.

Jets are truncated at first order in E.  Addition, subtraction and
scaling by rationals are closed and exact; the reciprocal of a value
carrying E discards an E^2 tail and is marked *truncated*.  Any floor or
order decision that would rest on discarded terms raises
:class:`OrderInsufficientError` instead of guessing, and multiplying two
values that both carry E is rejected outright (nothing here needs it,
and allowing it would silently drop an E^2 term).

Serialization is ``p/q`` for pure rationals and ``p/q+r/sE`` (or
``p/q-r/sE``) otherwise: components in lowest terms, no spaces, integer
values written without the ``/1``.
"""

from __future__ import annotations

import re as _regex
from fractions import Fraction
from math import floor as _math_floor
from typing import Iterable, Tuple, Union

Rat = Union[int, Fraction]

__all__ = [
    "EpsRational",
    "OrderInsufficientError",
    "EPS",
    "ZERO",
    "ONE",
    "eps_linear",
    "eps_inv",
    "eps_div",
    "eps_floor",
    "eps_cmp",
    "parse_eps",
]


class OrderInsufficientError(ArithmeticError):
    """A floor or comparison would depend on terms lost to truncation."""


def _rat(value: Rat) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    raise TypeError(f"expected int or Fraction, got {type(value).__name__}")


_PARSE = _regex.compile(
    r"^(?P<re>-?\d+(?:/\d+)?)(?:(?P<sign>[+-])(?P<inf>\d+(?:/\d+)?)E)?$"
)


class EpsRational:
    """A first-order jet ``re + inf*E``.

    ``re`` and ``inf`` are :class:`fractions.Fraction` (always in lowest
    terms with positive denominator).  ``exact`` records whether the jet
    is the whole value; it is cleared by :func:`eps_inv` and
    :func:`eps_div` when the divisor carries E.

    ``==`` and ``hash`` compare jets structurally (the ``exact`` flag is
    ignored), so exact and truncated values with equal jets collide; the
    semantic order, which refuses to resolve ties involving truncated
    values, lives in :func:`eps_cmp` and the ``<``/``<=`` operators.
    """

    __slots__ = ("re", "inf", "exact")

    re: Fraction
    inf: Fraction
    exact: bool

    def __init__(self, re: Rat = 0, inf: Rat = 0, exact: bool = True):
        object.__setattr__(self, "re", _rat(re))
        object.__setattr__(self, "inf", _rat(inf))
        object.__setattr__(self, "exact", bool(exact))

    def __setattr__(self, name, value):  # immutable
        raise AttributeError("EpsRational is immutable")

    # -- coercion ---------------------------------------------------------

    @staticmethod
    def coerce(value: "EpsRational | Rat") -> "EpsRational":
        if isinstance(value, EpsRational):
            return value
        return EpsRational(_rat(value))

    # -- arithmetic (exact unless noted) ----------------------------------

    def __add__(self, other):
        o = EpsRational.coerce(other)
        return EpsRational(self.re + o.re, self.inf + o.inf, self.exact and o.exact)

    __radd__ = __add__

    def __neg__(self):
        return EpsRational(-self.re, -self.inf, self.exact)

    def __sub__(self, other):
        return self + (-EpsRational.coerce(other))

    def __rsub__(self, other):
        return EpsRational.coerce(other) + (-self)

    def __mul__(self, other):
        o = EpsRational.coerce(other)
        if self.inf != 0 and o.inf != 0:
            raise ValueError(
                "product of two infinitesimal-carrying values is rejected "
                "(it would drop an E^2 term)"
            )
        return EpsRational(
            self.re * o.re,
            self.re * o.inf + self.inf * o.re,
            self.exact and o.exact,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        return eps_div(self, EpsRational.coerce(other))

    def __rtruediv__(self, other):
        return eps_div(EpsRational.coerce(other), self)

    # -- order ------------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, (EpsRational, int, Fraction)):
            o = EpsRational.coerce(other)
            return self.re == o.re and self.inf == o.inf
        return NotImplemented

    def __hash__(self):
        return hash((self.re, self.inf))

    def __lt__(self, other):
        return eps_cmp(self, EpsRational.coerce(other)) < 0

    def __le__(self, other):
        return eps_cmp(self, EpsRational.coerce(other)) <= 0

    def __gt__(self, other):
        return eps_cmp(self, EpsRational.coerce(other)) > 0

    def __ge__(self, other):
        return eps_cmp(self, EpsRational.coerce(other)) >= 0

    # -- presentation ------------------------------------------------------

    def __str__(self) -> str:
        if self.inf == 0:
            return str(self.re)
        sign = "+" if self.inf > 0 else "-"
        return f"{self.re}{sign}{abs(self.inf)}E"

    def __repr__(self) -> str:
        mark = "" if self.exact else "~"
        return f"<Eps {mark}{self}>"


ZERO = EpsRational(0)
ONE = EpsRational(1)
EPS = EpsRational(0, 1)


def eps_linear(terms: Iterable[Tuple[Rat, "EpsRational | Rat"]]) -> EpsRational:
    """Exact linear combination ``sum(coeff * value)`` with rational coeffs."""
    re = Fraction(0)
    inf = Fraction(0)
    exact = True
    for coeff, value in terms:
        c = _rat(coeff)
        v = EpsRational.coerce(value)
        re += c * v.re
        inf += c * v.inf
        exact = exact and v.exact
    return EpsRational(re, inf, exact)


def eps_inv(x: "EpsRational | Rat") -> EpsRational:
    """First-order reciprocal ``(1/re, -inf/re^2)``.

    The result is truncated whenever ``x`` carries E, since the true
    expansion continues at order E^2.  Values with ``re == 0`` (pure
    infinitesimals) have no reciprocal in this model.
    """
    v = EpsRational.coerce(x)
    if v.re == 0:
        raise ValueError("division by an infinitesimal (re == 0) is rejected")
    return EpsRational(1 / v.re, -v.inf / v.re**2, v.exact and v.inf == 0)


def eps_div(x: "EpsRational | Rat", y: "EpsRational | Rat") -> EpsRational:
    """First-order quotient jet of ``x / y``; agrees with ``x * eps_inv(y)``.

    Truncated whenever the divisor carries E.  Division by a pure
    rational is an exact scaling.
    """
    a = EpsRational.coerce(x)
    b = EpsRational.coerce(y)
    if b.re == 0:
        raise ValueError("division by an infinitesimal (re == 0) is rejected")
    return EpsRational(
        a.re / b.re,
        (a.inf * b.re - a.re * b.inf) / b.re**2,
        a.exact and b.exact and b.inf == 0,
    )


def eps_floor(x: "EpsRational | Rat") -> int:
    """Floor under the reading "E > 0 arbitrarily small".

    For non-integer ``re`` the infinitesimal part is irrelevant.  On an
    integer ``re`` the sign of ``inf`` decides; a zero ``inf`` on a
    truncated value leaves the answer resting on discarded terms, so
    that case raises :class:`OrderInsufficientError`.
    """
    v = EpsRational.coerce(x)
    if v.re.denominator == 1:
        n = int(v.re)
        if v.inf > 0:
            return n
        if v.inf < 0:
            return n - 1
        if v.exact:
            return n
        raise OrderInsufficientError(
            f"floor of {v!r} depends on truncated higher-order terms"
        )
    return _math_floor(v.re)


def eps_cmp(x: "EpsRational | Rat", y: "EpsRational | Rat") -> int:
    """Lexicographic comparison on ``(re, inf)``: -1, 0, or +1.

    A full tie is equality only when both sides are exact; otherwise the
    order is not determined at first order and we refuse to answer.
    """
    a = EpsRational.coerce(x)
    b = EpsRational.coerce(y)
    if a.re != b.re:
        return -1 if a.re < b.re else 1
    if a.inf != b.inf:
        return -1 if a.inf < b.inf else 1
    if a.exact and b.exact:
        return 0
    raise OrderInsufficientError(
        f"comparison of {a!r} and {b!r} ties at first order with truncation"
    )


def parse_eps(text: str) -> EpsRational:
    """Parse ``p/q`` or ``p/q+r/sE`` / ``p/q-r/sE`` (no spaces)."""
    m = _PARSE.match(text)
    if not m:
        raise ValueError(f"cannot parse {text!r} as an EpsRational")
    try:
        re_part = Fraction(m.group("re"))
        inf_part = Fraction(m.group("inf")) if m.group("inf") else Fraction(0)
    except ZeroDivisionError:
        raise ValueError(f"zero denominator in {text!r}") from None
    if m.group("sign") == "-":
        inf_part = -inf_part
    return EpsRational(re_part, inf_part)
