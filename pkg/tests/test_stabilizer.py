import random
from fractions import Fraction
from itertools import product
from math import prod

import pytest
from hypothesis import given
from hypothesis import strategies as st

from gct.kronecker import WeightTriple, kronecker
from gct.partitions import Partition, enumerate_partitions, is_regular_in
from gct.stabilizer import (
    MatmulFormat,
    YoungSubgroup,
    barrier_bound,
    barrier_lift,
    in_So_unit,
    matmul_invariant_dim,
    regular_witness,
    stab_alpha_invariant_dim,
    unique_invariant_tensor_check,
    unit_invariant_dim,
    unit_invariant_dim_bruteforce,
    unit_invariant_terms,
)
from gct.tableaux import weight_space_dim

L2 = ((2, 2, 2, 2), (2, 2, 2, 2), (5, 1, 1, 1))


class TestYoungSubgroup:
    def test_blocks_include_zero_slots(self):
        g = YoungSubgroup.of((2, 2, 0, 0, 0))
        assert g.block_sizes == (2, 3)
        assert g.order == 12

    def test_class_sizes_sum_to_order(self):
        for alpha in [(3, 3, 1), (2, 2, 2, 1, 1), (1, 0, 0, 0)]:
            g = YoungSubgroup.of(alpha)
            assert sum(size for _, size in g.classes()) == g.order


class TestUnitInvariants:
    def test_family_summands_vanish(self):
        assert stab_alpha_invariant_dim(L2, (2, 2, 2, 2), 5) == 0
        assert stab_alpha_invariant_dim(L2, (2, 2, 2, 1, 1), 5) == 0
        terms = unit_invariant_terms(L2, 5)
        assert [a for a, _ in terms] == [Partition((2, 2, 2, 2)), Partition((2, 2, 2, 1, 1))]
        assert unit_invariant_dim(L2, 5) == 0

    @pytest.mark.parametrize("d", range(1, 6))
    def test_one_slot(self, d):
        assert stab_alpha_invariant_dim(((d,), (d,), (d,)), (d,), 1) == 1
        assert unit_invariant_dim(((d,), (d,), (d,)), 1) == 1

    def test_trivial_stabilizer_is_product_of_kostka(self):
        lams = ((4, 2), (3, 3), (4, 1, 1))
        alpha = (3, 2, 1)
        expected = prod(weight_space_dim(l, alpha) for l in lams)
        assert stab_alpha_invariant_dim(lams, alpha, 3) == expected

    def test_not_dominated_rejected(self):
        with pytest.raises(ValueError):
            stab_alpha_invariant_dim(((2, 2), (2, 2), (2, 2)), (3, 1), 2)

    def test_bruteforce_small(self):
        assert unit_invariant_dim(((2,), (1, 1), (1, 1)), 2) == unit_invariant_dim_bruteforce(
            ((2,), (1, 1), (1, 1)), 2)
        assert unit_invariant_dim(((2,), (2,), (2,)), 2) == unit_invariant_dim_bruteforce(((2,), (2,), (2,)), 2)
        assert unit_invariant_dim_bruteforce(((1,), (1,), (1,)), 1) == 1

    def test_bruteforce_sampled_m4(self):
        rng = random.Random(0)
        pool = enumerate_partitions(6, 4)
        for _ in range(4):
            lams = tuple(rng.choice(pool) for _ in range(3))
            assert unit_invariant_dim(lams, 4) == unit_invariant_dim_bruteforce(lams, 4)

    def test_regular_triples_are_members(self):
        for m in range(1, 4):
            for d in range(1, 8):
                regs = [p for p in enumerate_partitions(d, m) if is_regular_in(p, m)]
                for lams in product(regs, repeat=3):
                    assert regular_witness(lams, m) is not None
                    assert in_So_unit(lams, m)

    def test_regular_witness_examples(self):
        assert regular_witness(((3, 2, 1),) * 3, 3) == Partition((3, 2, 1))
        assert regular_witness(L2, 5) is None
        assert regular_witness(((4,), (4,), (4,)), 1) == Partition((4,))

    def test_in_So_examples(self):
        assert not in_So_unit(L2, 5)
        assert in_So_unit(((3,), (3,), (3,)), 1)


class TestMatmulInvariants:
    def test_degree_one(self):
        for fmt in [(1, 1, 1), (2, 2, 2), (1, 2, 3)]:
            assert matmul_invariant_dim((1,), (1,), (1,), MatmulFormat(*fmt)) == 1

    @pytest.mark.parametrize("d", range(1, 6))
    def test_unit_format(self, d):
        assert matmul_invariant_dim((d,), (d,), (d,), MatmulFormat(1, 1, 1)) == 1

    def test_family_positive_via_square_term(self):
        mu = (4, 4)
        factor = prod(kronecker(l, mu, mu) for l in L2)
        assert factor >= 1
        assert matmul_invariant_dim(*L2, MatmulFormat(2, 2, 2)) >= factor

    def test_cyclic_rotation(self):
        for n in product((1, 2), repeat=3):
            fmt = MatmulFormat(*n)
            limits = fmt.tensor_format
            for d in range(1, 5):
                pools = [enumerate_partitions(d, k) for k in limits]
                for l12, l23, l31 in product(*pools):
                    a = matmul_invariant_dim(l12, l23, l31, fmt)
                    assert a == matmul_invariant_dim(l23, l31, l12, fmt.rotated())

    def test_too_many_parts(self):
        with pytest.raises(ValueError):
            matmul_invariant_dim((1, 1, 1), (3,), (3,), MatmulFormat(1, 1, 1))


class TestBarrier:
    def test_bound(self):
        assert barrier_bound(3) == 10

    def test_already_witnessed(self):
        k, lifted = barrier_lift(((3, 2, 1),) * 3, 3)
        assert k == 0
        assert in_So_unit(lifted, 4)

    @given(st.integers(1, 6).flatmap(lambda d: st.tuples(*(st.sampled_from(enumerate_partitions(d, 3)),) * 3)))
    def test_lift_lands_in_So(self, lams):
        k, lifted = barrier_lift(lams, 3)
        assert 0 <= k <= barrier_bound(3)
        assert lifted.format == (4, 4, 4)
        assert in_So_unit(lifted, 4, method="exact")


class TestUniqueInvariant:
    @pytest.mark.parametrize("m", [1, 2, 3, 4])
    def test_unit_tensor_is_the_only_invariant(self, m):
        assert unique_invariant_tensor_check(m)
