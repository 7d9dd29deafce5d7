import random
from collections import Counter
from itertools import permutations, product
from math import comb, prod

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from gct.partitions import Partition, dominance_leq, enumerate_partitions, transpose
from gct.symgroup import character, class_size
from gct.tableaux import (
    StraighteningDefect,
    Tableau,
    _order_key,
    content,
    enumerate_semistandard,
    enumerate_standard,
    format_expansion,
    highest_tableau,
    perm_action_matrix,
    perm_action_trace,
    straighten,
    straighten_columns,
    weight_space_dim,
    weyl_dimension,
)


# --- oracles -------------------------------------------------------------------

def brute_kostka(shape, alpha):
    """Fill every box with every value and keep semistandard fillings of the right content."""
    shape = list(shape)
    cells = [(r, c) for r, n in enumerate(shape) for c in range(n)]
    m = len(alpha)
    count = 0
    for values in product(range(1, m + 1), repeat=len(cells)):
        if Counter(values) != Counter({i + 1: a for i, a in enumerate(alpha) if a}):
            continue
        fill = dict(zip(cells, values))
        ok = all(fill[r, c] <= fill[r, c + 1] for r, c in cells if (r, c + 1) in fill) and \
            all(fill[r, c] < fill[r + 1, c] for r, c in cells if (r + 1, c) in fill)
        count += ok
    return count


def hook_content_dimension(lam, m):
    num = den = 1
    conj = transpose(lam)
    for r, row in enumerate(lam):
        for c in range(row):
            num *= m + c - r
            den *= (row - c - 1) + (conj[c] - r - 1) + 1
    return num // den


def _group(blocks):
    """All permutations of 0..d-1 preserving each block, as dicts."""
    out = [{}]
    for block in blocks:
        nxt = []
        for g in out:
            for img in permutations(block):
                h = dict(g)
                h.update(zip(block, img))
                nxt.append(h)
        out = nxt
    return out


def _sign(g):
    seen, sign = set(), 1
    for s in g:
        if s in seen:
            continue
        n, x = 0, s
        while x not in seen:
            seen.add(x)
            x = g[x]
            n += 1
        sign *= (-1) ** (n - 1)
    return sign


def young_vector(t, m):
    """Dense v(T): row symmetrisation of the column antisymmetrisation of e(T).

    Tensor positions follow the column-wise numbering of the diagram.  With
    the column wedges taken first, the exchange relations lie in the kernel
    of the row symmetrisation, so they hold exactly in the tensor power.
    """
    cols = t.columns()
    pos, rows_of, cols_of = 0, {}, []
    for col in cols:
        block = []
        for r in range(len(col)):
            rows_of.setdefault(r, []).append(pos)
            block.append(pos)
            pos += 1
        cols_of.append(block)
    d = pos
    word = [x for col in cols for x in col]
    vec = np.zeros(m ** d, dtype=np.int64)
    ps = _group(list(rows_of.values()))
    for q in _group(cols_of):
        sign = _sign(q)
        w1 = [0] * d
        for k in range(d):
            w1[q[k]] = word[k]
        for p in ps:
            w2 = [0] * d
            for k in range(d):
                w2[p[k]] = w1[k]
            idx = 0
            for x in w2:
                idx = idx * m + (x - 1)
            vec[idx] += sign
    return vec


def compositions(d, m):
    if m == 1:
        yield (d,)
        return
    for a in range(d, -1, -1):
        for rest in compositions(d - a, m - 1):
            yield (a,) + rest


# --- tests ---------------------------------------------------------------------

class TestContent:
    def test_examples(self):
        assert content(highest_tableau((2, 1)), 3) == (2, 1, 0)
        assert content(Tableau.from_rows([[1]]), 2) == (1, 0)
        assert content(Tableau.from_rows([[1, 2], [2, 3]]), 3) == (1, 2, 1)

    def test_out_of_range(self):
        with pytest.raises(ValueError):
            content(Tableau.from_rows([[1, 4]]), 3)


class TestSemistandard:
    def test_examples(self):
        assert len(enumerate_semistandard((2, 1), (1, 1, 1))) == 2
        assert enumerate_semistandard((3, 1), (3, 1)) == [highest_tableau((3, 1))]
        assert len(enumerate_semistandard((2, 2, 2), (2, 2, 1, 1))) == 1

    def test_kostka_brute_force(self):
        for d in range(1, 6):
            for lam in enumerate_partitions(d, 3):
                for alpha in compositions(d, 3):
                    assert weight_space_dim(lam, alpha) == brute_kostka(lam, alpha)

    def test_positivity_iff_dominance_small(self):
        for d in range(1, 7):
            for lam in enumerate_partitions(d, 4):
                for alpha in enumerate_partitions(d, 4):
                    assert (weight_space_dim(lam, alpha) > 0) == dominance_leq(alpha, lam)

    def test_weight_spaces_sum_to_weyl_dimension(self):
        for m in range(1, 5):
            for d in range(1, 7):
                for lam in enumerate_partitions(d, m):
                    total = sum(weight_space_dim(lam, a) for a in compositions(d, m))
                    assert total == weyl_dimension(lam, m) == hook_content_dimension(lam, m)

    def test_hook_shape_weight_space(self):
        for m in range(2, 5):
            for d in range(1, 3):
                for s in range(m):
                    lam = (d * m - s,) + (1,) * s
                    std = enumerate_standard((m - s,) + (1,) * s)
                    assert weight_space_dim(lam, (d,) * m) == comb(m - 1, s) == len(std)


class TestStraighten:
    def test_examples(self):
        t = Tableau.from_rows([[1, 2], [2, 3]])
        assert straighten(t) == {t: 1}
        assert straighten(Tableau.from_rows([[1, 2], [1, 3]])) == {}
        assert straighten(Tableau.from_columns([[2, 1]])) == {Tableau.from_columns([[1, 2]]): -1}
        expansion = straighten(Tableau.from_rows([[2, 1], [3]]))
        assert format_expansion(expansion) == "+1 [1,2;3] -1 [1,3;2]"
        assert format_expansion({}) == "0"

    @pytest.mark.parametrize("seed", range(6))
    def test_matches_dense_young_vectors(self, seed):
        rng = random.Random(seed)
        for _ in range(15):
            d = rng.randint(2, 4)
            shape = rng.choice(enumerate_partitions(d, 3))
            m = 3
            rows = [[rng.randint(1, m) for _ in range(n)] for n in shape]
            t = Tableau.from_rows(rows)
            expansion = straighten(t)
            lhs = young_vector(t, m)
            rhs = sum((c * young_vector(s, m) for s, c in expansion.items()),
                      np.zeros_like(lhs))
            assert np.array_equal(lhs, rhs)
            assert all(s.is_semistandard() for s in expansion)
            assert all(content(s, m) == content(t, m) for s in expansion)

    def test_cache_does_not_change_results(self):
        rng = random.Random(7)
        for _ in range(40):
            rows = [[rng.randint(1, 4) for _ in range(2)] for _ in range(3)]
            cols = Tableau.from_rows(rows).columns()
            assert straighten_columns(cols, cache=True) == straighten_columns(cols, cache=False)

    def test_order_key_is_total(self):
        key = _order_key(((1, 2), (1,)))
        assert isinstance(key, tuple)

    def test_defect_type_exists(self):
        assert issubclass(StraighteningDefect, RuntimeError)


class TestAction:
    def test_identity(self):
        for lam, alpha in [((2, 1), (1, 1, 1)), ((2, 2, 2), (2, 2, 1, 1))]:
            m = len(alpha)
            mat = perm_action_matrix(tuple(range(1, m + 1)), lam, alpha)
            assert np.array_equal(mat, np.eye(mat.shape[0], dtype=mat.dtype))

    def test_swap_is_trivial_on_single_tableau(self):
        for m in (3, 4, 5):
            lam = (2,) * m
            alpha = (2,) * (m - 1) + (1, 1)
            perm = list(range(1, m + 2))
            perm[m - 1], perm[m] = perm[m], perm[m - 1]
            assert perm_action_matrix(tuple(perm), lam, alpha).tolist() == [[1]]

    def test_rejects_non_stabilizing(self):
        with pytest.raises(ValueError):
            perm_action_matrix((2, 1, 3), (2, 1), (2, 1, 0))

    def test_homomorphism(self):
        lam, alpha = (3, 2, 1), (2, 2, 2)
        rng = random.Random(3)
        for _ in range(6):
            s = tuple(rng.sample(range(1, 4), 3))
            t = tuple(rng.sample(range(1, 4), 3))
            st_ = tuple(s[t[i] - 1] for i in range(3))
            ms, mt = perm_action_matrix(s, lam, alpha), perm_action_matrix(t, lam, alpha)
            assert np.array_equal(perm_action_matrix(st_, lam, alpha), ms @ mt)

    def test_trace_against_power_sums(self):
        # sum over fixed contents of trace(sigma | V^alpha) = s_lam(eigenvalues of sigma)
        for m in (2, 3):
            for d in range(1, 5):
                for lam in enumerate_partitions(d, m):
                    for perm in permutations(range(1, m + 1)):
                        lhs = 0
                        for alpha in compositions(d, m):
                            if all(alpha[perm[i] - 1] == alpha[i] for i in range(m)):
                                lhs += perm_action_trace(perm, lam, alpha)

                        def fixed(k):
                            count = 0
                            for i in range(m):
                                x = i
                                for _ in range(k):
                                    x = perm[x] - 1
                                count += x == i
                            return count

                        rhs = sum(character(lam, rho) * class_size(rho) * prod(fixed(k) for k in rho)
                                  for rho in enumerate_partitions(d))
                        from math import factorial
                        assert rhs % factorial(d) == 0
                        assert lhs == rhs // factorial(d)

    def test_hook_weight_space_character(self):
        # weight space of ((2m-3),1,1,1) at 2^{m-1}1^2 as an S_{m-1} x S_2 module
        from gct.stabilizer import YoungSubgroup

        for m in (4, 5):
            lam = (2 * m - 3, 1, 1, 1)
            alpha = (2,) * (m - 1) + (1, 1)
            group = YoungSubgroup.of(alpha)
            parts = [((m - 2, 1), (1, 1)), ((m - 3, 1, 1), (2,)), ((m - 3, 1, 1), (1, 1))]
            if m > 4:
                # the hook (m-4, 1^3) only exists once its arm is positive
                parts.append(((m - 4, 1, 1, 1), (2,)))
            for perm, _ in group.classes():
                types = []
                for block in group.blocks:
                    seen, cyc = set(), []
                    for s in block:
                        if s in seen:
                            continue
                        n, x = 0, s
                        while x not in seen:
                            seen.add(x)
                            x = perm[x - 1]
                            n += 1
                        cyc.append(n)
                    types.append(tuple(sorted(cyc, reverse=True)))
                expected = sum(character(Partition(a), types[0]) * character(Partition(b), types[1])
                               for a, b in parts)
                assert perm_action_trace(perm, lam, alpha) == expected
