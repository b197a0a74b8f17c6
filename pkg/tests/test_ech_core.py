import heapq
import random
from fractions import Fraction as F

import pytest

from staircap.ech_core import (CapacitySequence, DegenerateEllipsoidError,
                               Ellipsoid, OrbitSet, action, capacities,
                               capacity_compare, generator_of_grading,
                               grading_count, step_ellipsoids)
from staircap.exactnum import EPS, EpsRational, eps_cmp
from staircap.fibonacci import odd_fib


def ellipsoid(a_re, b_re, a_inf=0, b_inf=0):
    return Ellipsoid(EpsRational(F(a_re), F(a_inf)),
                     EpsRational(F(b_re), F(b_inf)))


def random_nondegenerate(rng):
    while True:
        a_re = F(rng.randint(1, 30), rng.randint(1, 3))
        b_re = a_re + F(rng.randint(0, 20), rng.randint(1, 3))
        a_inf = F(rng.choice([0, 0, 1, -1]), rng.randint(1, 3))
        b_inf = F(rng.choice([0, 1, 1, 2, -1]), rng.randint(1, 3))
        if a_re == b_re and b_inf < a_inf:
            continue
        if a_re * b_inf != b_re * a_inf:
            return Ellipsoid(EpsRational(a_re, a_inf), EpsRational(b_re, b_inf))


class TestEllipsoid:
    def test_axis_validation(self):
        with pytest.raises(ValueError):
            ellipsoid(2, 1, b_inf=1)
        with pytest.raises(ValueError):
            ellipsoid(0, 1)

    def test_degeneracy(self):
        assert ellipsoid(1, 5, b_inf=1).nondegenerate
        assert not ellipsoid(1, 5).nondegenerate
        # ratio exactly 2 even with matching perturbations
        assert not ellipsoid(2, 4, a_inf=1, b_inf=2).nondegenerate

    def test_degenerate_rejected_by_grading(self):
        with pytest.raises(DegenerateEllipsoidError):
            grading_count(ellipsoid(1, 5), OrbitSet(1, 0))

    def test_orbit_set_validation(self):
        with pytest.raises(ValueError):
            OrbitSet(-1, 0)


class TestAction:
    def test_short_cover(self):
        assert action(ellipsoid(1, 5, b_inf=1), OrbitSet(5, 0)) == EpsRational(5)

    def test_long_cover(self):
        E = ellipsoid(F(5, 2), F(5, 2), b_inf=1)
        assert action(E, OrbitSet(0, 2)) == EpsRational(5, 2)

    def test_empty(self):
        assert action(ellipsoid(1, 5, b_inf=1), OrbitSet(0, 0)) == 0


class TestGrading:
    def test_long_orbit_square(self):
        E = ellipsoid(F(5, 2), F(5, 2), b_inf=1)
        assert grading_count(E, OrbitSet(0, 2)) == 10

    def test_short_orbit_fifth(self):
        assert grading_count(ellipsoid(1, 5, b_inf=1), OrbitSet(5, 0)) == 10

    def test_empty(self):
        assert grading_count(ellipsoid(1, 5, b_inf=1), OrbitSet(0, 0)) == 0

    def test_against_pairwise_enumeration(self):
        rng = random.Random(4)
        for _ in range(25):
            E = random_nondegenerate(rng)
            S = OrbitSet(rng.randint(0, 6), rng.randint(0, 6))
            target = action(E, S)
            mmax = int(target.re / E.a.re) + 2
            nmax = int(target.re / E.b.re) + 2
            brute = sum(
                1
                for m in range(mmax + 1)
                for n in range(nmax + 1)
                if eps_cmp(action(E, OrbitSet(m, n)), target) < 0
            )
            assert grading_count(E, S) == 2 * brute


def heap_capacities(a, b, count):
    """Independent oracle: best-first search over the lattice."""
    a = EpsRational.coerce(a)
    b = EpsRational.coerce(b)
    start = (F(0), F(0), 0, 0)
    heap = [start]
    seen = {(0, 0)}
    out = []
    while len(out) < count:
        re, inf, m, n = heapq.heappop(heap)
        out.append(EpsRational(re, inf))
        for dm, dn in ((1, 0), (0, 1)):
            key = (m + dm, n + dn)
            if key not in seen:
                seen.add(key)
                value = key[0] * a + key[1] * b
                heapq.heappush(heap, (value.re, value.inf, *key))
    return out


class TestCapacities:
    @pytest.mark.parametrize("a, b, expected", [
        (1, 1, ["0", "1", "1", "2", "2", "2", "3"]),
        (1, 2, ["0", "1", "2", "2", "3", "3"]),
    ])
    def test_small_sequences(self, a, b, expected):
        seq = capacities(a, b, len(expected))
        assert [str(t) for t in seq.terms] == expected

    def test_perturbed_axis(self):
        seq = capacities(EpsRational(1), EpsRational(5, 1), 6)
        assert [str(t) for t in seq.terms] == ["0", "1", "2", "3", "4", "5"]

    def test_matches_heap_oracle(self):
        rng = random.Random(5)
        for _ in range(12):
            a = EpsRational(F(rng.randint(1, 8), rng.randint(1, 3)),
                            F(rng.choice([0, 1]), 4))
            b = a + EpsRational(F(rng.randint(0, 9), 2), F(rng.choice([0, 1]), 3))
            got = capacities(a, b, 120)
            assert list(got.terms) == heap_capacities(a, b, 120)

    def test_kernel_path_matches_enumeration(self):
        # above the cutoff the integer kernel takes over; compare overlap
        big = capacities(F(3, 2), F(7, 3), 3000)
        small = capacities(F(3, 2), F(7, 3), 500)
        assert list(big.terms[:500]) == list(small.terms)

    def test_ten_thousand_terms_match_heap_oracle(self):
        for a, b in ((F(1), F(1)), (F(2), F(5))):
            got = capacities(a, b, 10_000)
            assert list(got.terms) == heap_capacities(a, b, 10_000)

    def test_sequence_invariants_enforced(self):
        with pytest.raises(ValueError):
            CapacitySequence(EpsRational(1), EpsRational(1),
                             (EpsRational(1),))

    def test_monotone_in_long_axis(self):
        base = capacities(1, 1, 501)
        for x in (F(3, 2), F(2), F(13, 5), F(4)):
            wide = capacities(1, x, 501)
            for k in range(501):
                assert eps_cmp(base[k], wide[k]) <= 0


class TestGeneratorOfGrading:
    def test_inverts_examples(self):
        E = ellipsoid(1, 5, b_inf=1)
        assert generator_of_grading(E, 10) == OrbitSet(5, 0)
        assert generator_of_grading(E, 0) == OrbitSet(0, 0)
        E2 = ellipsoid(F(5, 2), F(5, 2), b_inf=1)
        assert generator_of_grading(E2, 10) == OrbitSet(0, 2)

    def test_bijectivity(self):
        rng = random.Random(6)
        for _ in range(6):
            E = random_nondegenerate(rng)
            seen = set()
            for gr in range(0, 402, 2):
                S = generator_of_grading(E, gr)
                assert grading_count(E, S) == gr
                assert S not in seen
                seen.add(S)

    def test_duality_with_capacities(self):
        rng = random.Random(7)
        for _ in range(20):
            E = random_nondegenerate(rng)
            seq = capacities(E.a, E.b, 201)
            for k in range(201):
                S = generator_of_grading(E, 2 * k)
                assert action(E, S) == seq[k]

    def test_odd_grading_rejected(self):
        with pytest.raises(ValueError):
            generator_of_grading(ellipsoid(1, 5, b_inf=1), 3)


class TestCapacityCompare:
    def test_step_one(self):
        report = capacity_compare(1, 5)
        assert report.ok and report.k_star == 5 and report.equality_value == 5

    def test_step_zero(self):
        report = capacity_compare(0, 2)
        assert report.ok and report.k_star == 2

    def test_step_two(self):
        report = capacity_compare(2, 20)
        assert report.ok and report.k_star == 20 and report.equality_value == 13

    def test_kmax_below_threshold_rejected(self):
        with pytest.raises(ValueError):
            capacity_compare(2, 19)

    def test_beyond_threshold_checked(self):
        assert capacity_compare(1, 40).ok

    def test_sequences_match_known_values(self):
        left = capacities(1, 5, 6)
        right = capacities(F(5, 2), F(5, 2), 6)
        assert [str(t) for t in left.terms] == ["0", "1", "2", "3", "4", "5"]
        assert [str(t) for t in right.terms] == ["0", "5/2", "5/2", "5", "5", "5"]


def test_step_ellipsoids_shape():
    top, bottom = step_ellipsoids(1)
    assert top.a == EpsRational(F(5, 2)) and top.b == EpsRational(F(5, 2), 1)
    assert bottom.a == EpsRational(1) and bottom.b == EpsRational(5, 1)
    assert top.nondegenerate and bottom.nondegenerate
    assert action(top, OrbitSet(0, odd_fib(2))) - action(bottom, OrbitSet(odd_fib(3), 0)) == EPS * 2
