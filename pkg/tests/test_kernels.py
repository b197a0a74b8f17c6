import numpy as np
import pytest

from staircap._kernels import (HAVE_NUMBA, active_backend, count_pairs_upto,
                               pair_sums_numpy, sorted_pair_sums)


def brute_sorted(p, q, count):
    # independent oracle: oversample a box, sort everything, truncate
    hi = count + 1
    vals = sorted(m * p + n * q for m in range(hi) for n in range(hi))
    return vals[:count]


@pytest.mark.parametrize("p, q, count", [
    (1, 1, 7), (1, 2, 6), (2, 5, 40), (13, 89, 300), (7, 7, 25),
])
def test_matches_bruteforce(p, q, count):
    assert list(sorted_pair_sums(p, q, count)) == brute_sorted(p, q, count)


def test_count_pairs_matches_enumeration():
    for p, q, bound in [(1, 1, 9), (2, 5, 37), (3, 4, 0), (3, 4, -1)]:
        expected = sum(1 for m in range(60) for n in range(60)
                       if m * p + n * q <= bound)
        assert count_pairs_upto(p, q, bound) == expected


def test_zero_and_negative_count():
    assert len(sorted_pair_sums(3, 5, 0)) == 0
    with pytest.raises(ValueError):
        sorted_pair_sums(0, 5, 3)


@pytest.mark.skipif(not HAVE_NUMBA, reason="numba not importable")
def test_backends_bit_identical():
    for p, q, count in [(1, 1, 5000), (610, 4181, 200_000), (5, 13, 33_333)]:
        a = sorted_pair_sums(p, q, count, backend="numba")
        b = sorted_pair_sums(p, q, count, backend="numpy")
        assert a.dtype == b.dtype == np.int64
        assert np.array_equal(a, b)


def test_active_backend_is_known():
    assert active_backend() in ("numba", "numpy")


def test_numpy_path_direct():
    out = pair_sums_numpy(2, 3, 6)
    assert list(out) == [0, 2, 3, 4, 5, 6, 6]
