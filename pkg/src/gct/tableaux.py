"""Semistandard bases of weight spaces and tableau straightening.

The Schur module of shape ``lam`` is modelled as the span of column-wedge
products (one wedge per column of the diagram) modulo the exchange
relations.  A tableau ``T`` names the vector ``v(T)``; its columns are read
top to bottom, leftmost column first.  Permutation matrices act by
permuting entries, so ``P_sigma v(T) = v(sigma T)``.

Normalisation constants are dropped throughout.  Every downstream use
(invariant dimensions, nonvanishing of evaluations) is insensitive to a
global scale.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import prod
from typing import Iterator, Sequence

import numpy as np

from .partitions import Partition, as_partition, transpose

Columns = tuple[tuple[int, ...], ...]

# Straightening recursion depth at which we assume the ordering argument
# has been broken by a bug rather than by a large input.
MAX_STRAIGHTEN_DEPTH = 5000


class StraighteningDefect(RuntimeError):
    pass


@dataclass(frozen=True)
class Tableau:
    shape: Partition
    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if tuple(len(r) for r in self.rows) != tuple(self.shape):
            raise ValueError(f"rows {self.rows} do not fit shape {self.shape}")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]]) -> "Tableau":
        rows = tuple(tuple(int(x) for x in r) for r in rows if len(r))
        return cls(Partition(len(r) for r in rows), rows)

    @classmethod
    def from_columns(cls, cols: Sequence[Sequence[int]]) -> "Tableau":
        cols = [tuple(c) for c in cols if len(c)]
        height = len(cols[0]) if cols else 0
        rows = tuple(tuple(c[i] for c in cols if len(c) > i) for i in range(height))
        return cls.from_rows(rows)

    def columns(self) -> Columns:
        return _rows_to_cols(self.rows)

    def is_semistandard(self) -> bool:
        return is_semistandard_cols(self.columns())

    def permuted(self, perm: Sequence[int]) -> "Tableau":
        """Apply a permutation of the entry alphabet (``perm[i-1]`` is the image of ``i``)."""
        return Tableau(self.shape, tuple(tuple(perm[x - 1] for x in r) for r in self.rows))

    def __str__(self) -> str:
        return ";".join(",".join(str(x) for x in r) for r in self.rows)


def _rows_to_cols(rows) -> Columns:
    if not rows:
        return ()
    return tuple(tuple(r[j] for r in rows if len(r) > j) for j in range(len(rows[0])))


def highest_tableau(lam) -> Tableau:
    """``T_lam``: row ``i`` filled with the entry ``i``."""
    lam = as_partition(lam)
    return Tableau(lam, tuple((i + 1,) * p for i, p in enumerate(lam)))


def column_reading_word(t: Tableau) -> tuple[int, ...]:
    return tuple(x for c in t.columns() for x in c)


def content(t: Tableau, m: int) -> tuple[int, ...]:
    out = [0] * m
    for row in t.rows:
        for x in row:
            if not 1 <= x <= m:
                raise ValueError(f"entry {x} outside 1..{m}")
            out[x - 1] += 1
    return tuple(out)


def is_semistandard_cols(cols: Columns) -> bool:
    for c in cols:
        if any(a >= b for a, b in zip(c, c[1:])):
            return False
    for left, right in zip(cols, cols[1:]):
        if any(a > b for a, b in zip(left, right)):
            return False
    return True


# --- enumeration -----------------------------------------------------------

def _horizontal_strips(inner: tuple[int, ...], outer: tuple[int, ...], size: int):
    """Shapes ``mu`` with ``inner <= mu <= outer`` and ``mu / inner`` a horizontal strip of ``size``."""
    n = len(outer)
    inner = inner + (0,) * (n - len(inner))

    def rec(i: int, left: int, acc: list[int]):
        if i == n:
            if left == 0:
                yield tuple(acc)
            return
        cap = outer[i] if i == 0 else min(outer[i], inner[i - 1])
        for v in range(min(cap, inner[i] + left), inner[i] - 1, -1):
            acc.append(v)
            yield from rec(i + 1, left - (v - inner[i]), acc)
            acc.pop()

    yield from rec(0, size, [])


def enumerate_semistandard(shape, content_vec: Sequence[int]) -> list[Tableau]:
    """All semistandard tableaux of ``shape`` with the given content, in a fixed order."""
    shape = as_partition(shape)
    content_vec = tuple(int(a) for a in content_vec)
    if sum(content_vec) != shape.size or any(a < 0 for a in content_vec):
        return []
    outer = tuple(shape)
    results: list[Tableau] = []

    def rec(value: int, current: tuple[int, ...], rows: list[list[int]]):
        if value == len(content_vec):
            if current == outer:
                results.append(Tableau(shape, tuple(tuple(r) for r in rows)))
            return
        for nxt in _horizontal_strips(current, outer, content_vec[value]):
            cur = current + (0,) * (len(outer) - len(current))
            new_rows = [r + [value + 1] * (nxt[i] - cur[i]) for i, r in enumerate(rows)]
            rec(value + 1, nxt, new_rows)

    rec(0, (0,) * len(outer), [[] for _ in outer])
    return results


def weight_space_dim(lam, alpha: Sequence[int]) -> int:
    """Kostka number: dimension of the ``alpha`` weight space of ``V_lam``."""
    return len(enumerate_semistandard(lam, alpha))


def weyl_dimension(lam, m: int) -> int:
    """dim V_lam(GL_m) by the Weyl dimension formula."""
    v = as_partition(lam)
    if v.length > m:
        return 0
    v = v.padded(m)
    num = prod(v[i] - v[j] + j - i for i in range(m) for j in range(i + 1, m))
    den = prod(j - i for i in range(m) for j in range(i + 1, m))
    return num // den


def enumerate_standard(shape) -> list[Tableau]:
    shape = as_partition(shape)
    return enumerate_semistandard(shape, (1,) * shape.size)


# --- straightening ---------------------------------------------------------

def _sort_column(col: tuple[int, ...]) -> tuple[int, tuple[int, ...]] | None:
    """Sort a column ascending; return (sign, sorted) or None on a repeated entry."""
    if len(set(col)) != len(col):
        return None
    inversions = sum(1 for i in range(len(col)) for j in range(i + 1, len(col)) if col[i] > col[j])
    return (-1 if inversions % 2 else 1), tuple(sorted(col))


def _normalize(cols: Columns) -> tuple[int, Columns] | None:
    sign = 1
    out = []
    for c in cols:
        r = _sort_column(c)
        if r is None:
            return None
        s, sc = r
        sign *= s
        out.append(sc)
    return sign, tuple(out)


def _order_key(cols: Columns) -> tuple[int, ...]:
    # rightmost column first, each column bottom to top
    return tuple(x for c in reversed(cols) for x in reversed(c))


def _first_violation(cols: Columns) -> tuple[int, int] | None:
    for j in range(len(cols) - 1):
        for k, (a, b) in enumerate(zip(cols[j], cols[j + 1])):
            if a > b:
                return j, k
    return None


def _exchanges(cols: Columns, j: int, k: int) -> Iterator[Columns]:
    left, right = cols[j], cols[j + 1]
    top = right[: k + 1]
    for sel in combinations(range(len(left)), k + 1):
        new_left = list(left)
        for pos, val in zip(sel, top):
            new_left[pos] = val
        new_right = tuple(left[p] for p in sel) + right[k + 1:]
        yield cols[:j] + (tuple(new_left), new_right) + cols[j + 2:]


def _straighten_sorted(cols: Columns, memo: dict | None, depth: int) -> dict[Columns, int]:
    if memo is not None:
        hit = memo.get(cols)
        if hit is not None:
            return hit
    if depth > MAX_STRAIGHTEN_DEPTH:
        raise StraighteningDefect("straightening recursion exceeded its depth guard")
    viol = _first_violation(cols)
    if viol is None:
        result = {cols: 1}
    else:
        j, k = viol
        key = _order_key(cols)
        result: dict[Columns, int] = {}
        for ex in _exchanges(cols, j, k):
            norm = _normalize(ex)
            if norm is None:
                continue
            sign, sorted_ex = norm
            if _order_key(sorted_ex) <= key:
                raise StraighteningDefect(f"exchange did not increase the tableau order at {cols}")
            for t, c in _straighten_sorted(sorted_ex, memo, depth + 1).items():
                v = result.get(t, 0) + sign * c
                if v:
                    result[t] = v
                else:
                    result.pop(t, None)
    if memo is not None:
        memo[cols] = result
    return result


_MEMO: dict[Columns, dict[Columns, int]] = {}


def straighten_columns(cols: Columns, cache: bool = True) -> dict[Columns, int]:
    """Expand ``v(T)`` (given by columns) over semistandard tableaux, as columns."""
    norm = _normalize(tuple(tuple(c) for c in cols))
    if norm is None:
        return {}
    sign, sorted_cols = norm
    expansion = _straighten_sorted(sorted_cols, _MEMO if cache else {}, 0)
    return {t: sign * c for t, c in expansion.items()}


def straighten(t: Tableau, cache: bool = True) -> dict[Tableau, int]:
    """``v(T)`` as an integer combination of semistandard ``v(S)``."""
    return {Tableau.from_columns(c): v for c, v in straighten_columns(t.columns(), cache).items()}


def clear_straighten_cache() -> None:
    _MEMO.clear()


# --- permutation action on weight spaces ----------------------------------

def check_stabilizes(perm: Sequence[int], alpha: Sequence[int]) -> None:
    if len(perm) != len(alpha):
        raise ValueError(f"permutation of {len(perm)} letters vs content of length {len(alpha)}")
    for i, a in enumerate(alpha):
        if alpha[perm[i] - 1] != a:
            raise ValueError(f"permutation {tuple(perm)} does not stabilise {tuple(alpha)}")


def perm_action_matrix(perm: Sequence[int], lam, alpha: Sequence[int]) -> np.ndarray:
    """Matrix of ``P_perm`` on the semistandard basis of ``V_lam^alpha``.

    ``perm`` is one-line notation on ``1..m`` (``perm[i-1]`` is the image
    of ``i``); column ``T`` holds the straightened expansion of ``perm T``.
    """
    check_stabilizes(perm, alpha)
    basis = enumerate_semistandard(lam, alpha)
    index = {t.columns(): i for i, t in enumerate(basis)}
    mat = np.zeros((len(basis), len(basis)), dtype=np.int64)
    for col, t in enumerate(basis):
        for s, c in straighten_columns(t.permuted(perm).columns()).items():
            mat[index[s], col] = c
    return mat


def perm_action_trace(perm: Sequence[int], lam, alpha: Sequence[int]) -> int:
    check_stabilizes(perm, alpha)
    total = 0
    for t in enumerate_semistandard(lam, alpha):
        total += straighten_columns(t.permuted(perm).columns()).get(t.columns(), 0)
    return total


def format_expansion(expansion: dict[Tableau, int]) -> str:
    """Stable text form: ``+2 [1,2;3] -1 [1,3;2]`` sorted by row reading, or ``0``."""
    if not expansion:
        return "0"
    items = sorted(expansion.items(), key=lambda kv: kv[0].rows)
    return " ".join(f"{c:+d} [{t}]" for t, c in items)
