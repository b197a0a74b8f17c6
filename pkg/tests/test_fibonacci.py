from fractions import Fraction as F

import pytest

from staircap.fibonacci import (IDENTITY_NAMES, anchors, odd_fib,
                                verify_identities)


def test_prefix():
    assert [odd_fib(n) for n in range(6)] == [1, 1, 2, 5, 13, 34]


def test_recurrence_value():
    assert odd_fib(7) == 233  # 3*89 - 34


def test_negative_index_rejected():
    with pytest.raises(ValueError):
        odd_fib(-1)


@pytest.mark.parametrize("n, a, b", [
    (0, F(1), F(2)),
    (1, F(4), F(5)),
    (2, F(25, 4), F(13, 2)),
])
def test_anchor_values(n, a, b):
    step = anchors(n)
    assert (step.a, step.b) == (a, b)


def test_anchor_ordering_and_accumulation():
    # a_n <= b_n <= a_{n+1}, both increasing for n >= 1, both below tau^4,
    # widths shrinking to zero
    prev_width = None
    for n in range(1, 41):
        step, nxt = anchors(n), anchors(n + 1)
        assert step.a <= step.b <= nxt.a
        assert step.a < nxt.a and step.b < nxt.b
        for value in (step.a, step.b):
            assert value * value - 7 * value + 1 < 0
        width = step.b - step.a
        if prev_width is not None:
            assert width < prev_width
        prev_width = width


def test_identity_instances():
    assert 3 * odd_fib(2) == odd_fib(3) + odd_fib(1)          # 3*2 = 5+1
    g, h = odd_fib(2), odd_fib(3)
    assert g * g + h * h - 3 * g * h == -1                    # 4+25-30


def test_all_identities_to_40():
    report = verify_identities(40)
    assert report.ok
    assert {c.name for c in report.checks} == set(IDENTITY_NAMES)
    assert all(c.failures == () for c in report.checks)


def test_report_rejects_small_bound():
    with pytest.raises(ValueError):
        verify_identities(0)
