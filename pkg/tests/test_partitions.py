from itertools import product

import pytest
from hypothesis import given
from hypothesis import strategies as st

from gct.partitions import (
    BoundedPartitionView,
    Partition,
    box_partition,
    dominance_leq,
    enumerate_dominated,
    enumerate_partitions,
    is_regular,
    is_regular_in,
    meet,
    parse_partition,
    regular_exists,
    shift_and_pad,
    staircase,
    transpose,
)


def count_partitions(d, k, largest=None):
    """Recursive partition counter used as an oracle."""
    largest = d if largest is None else largest
    if d == 0:
        return 1
    if k == 0:
        return 0
    return sum(count_partitions(d - p, k - 1, p) for p in range(1, min(d, largest) + 1))


def prefix(p, n):
    p = list(p) + [0] * n
    return [sum(p[:i + 1]) for i in range(n)]


def all_partitions(d, k):
    return enumerate_partitions(d, k)


partitions_st = st.integers(0, 10).flatmap(lambda d: st.sampled_from(enumerate_partitions(d)))


class TestBasics:
    def test_normalizes_and_validates(self):
        assert Partition((3, 1, 0, 0)) == Partition((3, 1))
        with pytest.raises(ValueError):
            Partition((1, 2))
        with pytest.raises(ValueError):
            Partition((2, -1))

    @pytest.mark.parametrize("text,expected", [
        ("5,1,1,1", (5, 1, 1, 1)), ("2^4", (2, 2, 2, 2)), ("5 1^3", (5, 1, 1, 1)), ("", ()),
    ])
    def test_parse(self, text, expected):
        assert parse_partition(text) == Partition(expected)

    def test_str_is_comma_list(self):
        assert str(Partition((5, 1, 1, 1))) == "5,1,1,1"


class TestDominance:
    @pytest.mark.parametrize("a,b,expected", [
        ((2, 2, 2, 2), (5, 1, 1, 1), True), ((3, 1), (3, 1), True), ((3, 1), (2, 2), False),
    ])
    def test_examples(self, a, b, expected):
        assert dominance_leq(a, b) is expected

    def test_partial_order_exhaustive(self):
        for d in range(0, 9):
            ps = all_partitions(d, 5)
            for a, b in product(ps, repeat=2):
                if dominance_leq(a, b) and dominance_leq(b, a):
                    assert a == b
                for c in ps:
                    if dominance_leq(a, b) and dominance_leq(b, c):
                        assert dominance_leq(a, c)
            assert all(dominance_leq(a, a) for a in ps)

    def test_matches_prefix_sum_oracle(self):
        for d in range(1, 9):
            ps = all_partitions(d, d)
            for a, b in product(ps, repeat=2):
                n = max(len(a), len(b), 1)
                expected = all(x <= y for x, y in zip(prefix(a, n), prefix(b, n)))
                assert dominance_leq(a, b) is expected

    def test_transpose_reverses(self):
        for d in range(1, 9):
            for a, b in product(all_partitions(d, d), repeat=2):
                assert dominance_leq(a, b) == dominance_leq(transpose(b), transpose(a))

    @given(partitions_st, partitions_st, partitions_st)
    def test_addition_preserves(self, a, b, c):
        if a.size == b.size and dominance_leq(a, b):
            assert dominance_leq(a + c, b + c)


class TestMeet:
    @pytest.mark.parametrize("a,b,expected", [
        ((2, 2, 2, 2), (5, 1, 1, 1), (2, 2, 2, 2)), ((3, 1), (2, 2), (2, 2)), ((4, 2, 1), (4, 2, 1), (4, 2, 1)),
    ])
    def test_examples(self, a, b, expected):
        assert meet(a, b) == Partition(expected)

    def test_greatest_lower_bound_exhaustive(self):
        for d in range(1, 9):
            ps = all_partitions(d, d)
            for a, b in product(ps, repeat=2):
                lower = [x for x in ps if dominance_leq(x, a) and dominance_leq(x, b)]
                m = meet(a, b)
                assert m in lower
                assert all(dominance_leq(x, m) for x in lower)

    @given(st.integers(1, 9).flatmap(lambda d: st.tuples(*(st.sampled_from(enumerate_partitions(d)),) * 3)))
    def test_lattice_laws(self, abc):
        a, b, c = abc
        assert meet(a, b) == meet(b, a)
        assert meet(meet(a, b), c) == meet(a, meet(b, c))
        assert meet(a, a) == a


class TestShapes:
    @pytest.mark.parametrize("lam,expected", [((3, 1), (2, 1, 1)), ((4,), (1, 1, 1, 1)), ((), ())])
    def test_transpose(self, lam, expected):
        assert transpose(lam) == Partition(expected)

    @given(partitions_st)
    def test_transpose_involution(self, lam):
        assert transpose(transpose(lam)) == lam

    @pytest.mark.parametrize("lam,slots,expected", [((3, 1), 3, True), ((4,), 3, False), ((2, 1), 2, True)])
    def test_regular(self, lam, slots, expected):
        assert is_regular(BoundedPartitionView(Partition(lam), slots)) is expected
        assert is_regular_in(lam, slots) is expected

    @pytest.mark.parametrize("m,d,expected", [(3, 7, (3, 2, 2)), (3, 0, ()), (1, 5, (5,))])
    def test_box(self, m, d, expected):
        assert box_partition(m, d) == Partition(expected)

    def test_box_is_smallest(self):
        for m in range(1, 5):
            for d in range(0, 10):
                box = box_partition(m, d)
                assert all(dominance_leq(box, p) for p in all_partitions(d, m))

    @pytest.mark.parametrize("m,d,expected", [(3, 6, (3, 2, 1)), (3, 4, (3, 1)), (1, 7, (7,))])
    def test_staircase(self, m, d, expected):
        assert staircase(m, d) == Partition(expected)

    def test_staircase_rejects_zero(self):
        with pytest.raises(ValueError):
            staircase(3, 0)

    def test_staircase_minimal_small(self):
        # full range m <= 5, d <= 12 runs in the acceptance suite
        for m in range(1, 4):
            for d in range(1, 9):
                regs = [p for p in all_partitions(d, m) if is_regular_in(p, m)]
                if regs:
                    s = staircase(m, d)
                    assert s in regs and all(dominance_leq(s, p) for p in regs)

    def test_regular_exists_threshold(self):
        for m in range(1, 7):
            for d in range(0, 21):
                brute = any(is_regular_in(p, m) for p in all_partitions(d, m))
                assert brute == (d >= m * (m - 1) // 2) == regular_exists(m, d)

    def test_shift_threshold(self):
        for m in range(1, 5):
            k = m * (m + 1) // 2 + m + 1
            for d in range(0, 9):
                for lam in all_partitions(d, m):
                    lifted = shift_and_pad(lam, m, k)
                    assert lifted.size == d + k * m
                    assert dominance_leq(staircase(m + 1, d + k * m), lifted)


class TestEnumeration:
    def test_examples(self):
        assert enumerate_partitions(4, 2) == [Partition((4,)), Partition((3, 1)), Partition((2, 2))]
        assert enumerate_partitions(0, 3) == [Partition()]
        assert len(enumerate_partitions(8, 5)) == 18

    def test_counts(self):
        for d in range(0, 13):
            for k in range(1, 7):
                assert len(enumerate_partitions(d, k)) == count_partitions(d, k)

    def test_lexicographic_descending(self):
        ps = enumerate_partitions(9, 4)
        assert ps == sorted(ps, reverse=True)

    @pytest.mark.parametrize("bound,slots,expected", [
        ((2, 2, 2, 2), 5, [(2, 2, 2, 2), (2, 2, 2, 1, 1)]),
        ((5,), 1, [(5,)]),
        ((3, 2, 1), 3, [(3, 2, 1), (2, 2, 2)]),
    ])
    def test_dominated(self, bound, slots, expected):
        assert enumerate_dominated(bound, slots) == [Partition(e) for e in expected]
