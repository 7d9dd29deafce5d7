from math import factorial

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from gct.kronecker import _specht_matrices
from gct.partitions import Partition, enumerate_partitions, transpose
from gct.symgroup import (
    character,
    character_table,
    class_size,
    hook_length_dimension,
    irrep_dimension,
    sign_of_class,
)


def cycle_type(perm):
    seen, out = set(), []
    for s in range(len(perm)):
        if s in seen:
            continue
        n, x = 0, s
        while x not in seen:
            seen.add(x)
            x = perm[x]
            n += 1
        out.append(n)
    return Partition(sorted(out, reverse=True))


@pytest.mark.parametrize("rho,expected", [((1, 1, 1), 1), ((2, 1), 3), ((3,), 2)])
def test_class_size(rho, expected):
    assert class_size(rho) == expected


def test_class_sizes_sum_to_factorial():
    for d in range(1, 11):
        assert sum(class_size(r) for r in enumerate_partitions(d)) == factorial(d)


@pytest.mark.parametrize("lam,expected", [((5,), 1), ((2, 2), 2), ((3, 1, 1), 6)])
def test_dimension(lam, expected):
    assert irrep_dimension(lam) == expected == hook_length_dimension(lam)


def test_trivial_sign_and_standard():
    for d in range(1, 8):
        for rho in enumerate_partitions(d):
            assert character((d,), rho) == 1
            assert character((1,) * d, rho) == (-1) ** (d - len(rho)) == sign_of_class(rho)
    assert character((2, 1), (1, 1, 1)) == 2


def test_size_mismatch():
    with pytest.raises(ValueError):
        character((2, 1), (2,))


def test_sum_of_squares():
    for d in range(1, 11):
        assert sum(irrep_dimension(l) ** 2 for l in enumerate_partitions(d)) == factorial(d)


def test_row_orthogonality():
    for d in range(1, 9):
        table = character_table(d)
        for a in table.irreps:
            for b in table.irreps:
                s = sum(size * table[a, r] * table[b, r] for r, size in zip(table.classes, table.sizes))
                assert s == (factorial(d) if a == b else 0)


@given(st.integers(1, 9).flatmap(lambda d: st.tuples(st.sampled_from(enumerate_partitions(d)),
                                                     st.sampled_from(enumerate_partitions(d)))))
def test_transpose_twists_by_sign(pair):
    lam, rho = pair
    assert character(transpose(lam), rho) == sign_of_class(rho) * character(lam, rho)


def test_matches_explicit_matrices():
    # traces of the explicit standard-tableau representation are an independent oracle
    for d in range(1, 6):
        for lam in enumerate_partitions(d):
            mats = _specht_matrices(lam)
            for perm, mat in mats.items():
                zero_based = tuple(p - 1 for p in perm)
                assert int(round(np.trace(mat))) == character(lam, cycle_type(zero_based))
