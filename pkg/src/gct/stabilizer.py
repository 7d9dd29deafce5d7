"""Invariant dimensions under the stabilisers of unit and matrix-multiplication tensors.

``unit_invariant_dim`` sums, over partitions ``alpha`` below the meet of
the three weights, the dimension of ``stab(alpha)``-invariants in the
triple product of weight spaces.  ``matmul_invariant_dim`` is the triple
sum of products of Kronecker coefficients.  Both are exact integers.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import permutations, product
from math import factorial, prod
from typing import Sequence

from . import _linalg
from .kronecker import InexactDivision, WeightTriple, kronecker
from .partitions import (
    Partition,
    as_partition,
    dominance_leq,
    enumerate_dominated,
    enumerate_partitions,
    is_regular_in,
    meet_all,
    shift_and_pad,
    staircase,
)
from .symgroup import class_size
from .tableaux import perm_action_trace


@dataclass(frozen=True)
class YoungSubgroup:
    """``stab(alpha)``: one symmetric group per block of equal slot values."""

    blocks: tuple[tuple[int, ...], ...]  # 1-based slot positions

    @classmethod
    def of(cls, alpha: Sequence[int]) -> "YoungSubgroup":
        groups: dict[int, list[int]] = {}
        for pos, a in enumerate(alpha, start=1):
            groups.setdefault(a, []).append(pos)
        return cls(tuple(tuple(v) for v in groups.values()))

    @property
    def block_sizes(self) -> tuple[int, ...]:
        return tuple(len(b) for b in self.blocks)

    @property
    def order(self) -> int:
        return prod(factorial(k) for k in self.block_sizes)

    @property
    def degree(self) -> int:
        return sum(self.block_sizes)

    def classes(self):
        """Yield ``(representative, class size)`` for each conjugacy class."""
        m = self.degree
        for types in product(*(enumerate_partitions(k) for k in self.block_sizes)):
            perm = list(range(1, m + 1))
            for block, rho in zip(self.blocks, types):
                start = 0
                for cyc in rho:
                    pts = block[start:start + cyc]
                    for a, b in zip(pts, pts[1:] + pts[:1]):
                        perm[a - 1] = b
                    start += cyc
            yield tuple(perm), prod(class_size(r) for r in types)


@dataclass(frozen=True)
class MatmulFormat:
    n1: int
    n2: int
    n3: int

    def __post_init__(self):
        if min(self.n1, self.n2, self.n3) < 1:
            raise ValueError("matrix formats need n_i >= 1")

    @property
    def tensor_format(self) -> tuple[int, int, int]:
        return (self.n1 * self.n2, self.n2 * self.n3, self.n3 * self.n1)

    def rotated(self) -> "MatmulFormat":
        return MatmulFormat(self.n2, self.n3, self.n1)


def _as_triple(lams, m: int) -> WeightTriple:
    if isinstance(lams, WeightTriple):
        return lams.padded(m)
    return WeightTriple.of(*lams, fmt=m)


@lru_cache(maxsize=None)
def _stab_dim(parts: tuple[Partition, ...], alpha_vec: tuple[int, ...]) -> int:
    group = YoungSubgroup.of(alpha_vec)
    total = 0
    for perm, size in group.classes():
        term = size
        for lam in parts:
            term *= perm_action_trace(perm, lam, alpha_vec)
            if term == 0:
                break
        total += term
    q, r = divmod(total, group.order)
    if r:
        raise InexactDivision(f"class sum {total} not divisible by |stab| = {group.order}")
    return q


def stab_alpha_invariant_dim(lams, alpha, m: int) -> int:
    """dim of stab(alpha)-invariants in the tensor product of the three alpha-weight spaces."""
    triple = _as_triple(lams, m)
    alpha = as_partition(alpha)
    bound = meet_all(triple.parts)
    if not dominance_leq(alpha, bound):
        raise ValueError(f"{alpha} is not dominated by the meet {bound}")
    return _stab_dim(triple.parts, alpha.padded(m))


def unit_invariant_terms(lams, m: int) -> list[tuple[Partition, int]]:
    """The per-alpha summands of ``unit_invariant_dim`` in enumeration order."""
    triple = _as_triple(lams, m)
    bound = meet_all(triple.parts)
    return [(a, _stab_dim(triple.parts, a.padded(m))) for a in enumerate_dominated(bound, m)]


def unit_invariant_dim(lams, m: int) -> int:
    """dim of invariants of the unit-tensor stabiliser in V_lambda (weights in m slots)."""
    return sum(v for _, v in unit_invariant_terms(lams, m))


def _compositions(d: int, m: int):
    if m == 0:
        if d == 0:
            yield ()
        return
    for first in range(d, -1, -1):
        for rest in _compositions(d - first, m - 1):
            yield (first,) + rest


BRUTEFORCE_MAX_M = 4
BRUTEFORCE_MAX_D = 6


def unit_invariant_dim_bruteforce(lams, m: int) -> int:
    """Same quantity by averaging all of S_m over every weight-matched block.

    Torus invariance forces the three weights to agree; the diagonal S_m
    then acts on the sum over *all* compositions alpha, and we average its
    trace permutation by permutation.  No dominance or orbit reasoning.
    """
    triple = _as_triple(lams, m)
    if m > BRUTEFORCE_MAX_M or triple.degree > BRUTEFORCE_MAX_D:
        raise ValueError(f"brute force limited to m <= {BRUTEFORCE_MAX_M}, d <= {BRUTEFORCE_MAX_D}")
    total = 0
    alphas = list(_compositions(triple.degree, m))
    for perm in permutations(range(1, m + 1)):
        for alpha in alphas:
            if any(alpha[perm[i] - 1] != alpha[i] for i in range(m)):
                continue
            term = 1
            for lam in triple.parts:
                term *= perm_action_trace(perm, lam, alpha)
                if term == 0:
                    break
            total += term
    q, r = divmod(total, factorial(m))
    if r:
        raise InexactDivision(f"S_{m} average {total} not divisible by {factorial(m)}")
    return q


def matmul_invariant_dim(l12, l23, l31, fmt: MatmulFormat) -> int:
    """dim of invariants of the matrix-multiplication stabiliser in V_lambda."""
    l12, l23, l31 = as_partition(l12), as_partition(l23), as_partition(l31)
    d = l12.size
    if not d == l23.size == l31.size:
        raise ValueError("the three partitions must have the same size")
    limits = fmt.tensor_format
    for lam, lim in zip((l12, l23, l31), limits):
        if lam.length > lim:
            raise ValueError(f"{lam} has more than {lim} parts for format {fmt}")
    mu1s = enumerate_partitions(d, fmt.n1)
    mu3s = enumerate_partitions(d, fmt.n3)
    total = 0
    for mu2 in enumerate_partitions(d, fmt.n2):
        for mu1 in mu1s:
            g12 = kronecker(l12, mu1, mu2)
            if g12 == 0:
                continue
            for mu3 in mu3s:
                g23 = kronecker(l23, mu2, mu3)
                if g23:
                    total += g12 * g23 * kronecker(l31, mu3, mu1)
    return total


def regular_witness(lams, m: int) -> Partition | None:
    """The staircase partition when it is a regular alpha below the meet, else None.

    The staircase is the smallest regular element, so if it is not below
    the meet no regular alpha is.
    """
    triple = _as_triple(lams, m)
    d = triple.degree
    if d == 0:
        return Partition() if m == 1 else None
    cand = staircase(m, d)
    if not is_regular_in(cand, m):
        return None
    if dominance_leq(cand, meet_all(triple.parts)):
        return cand
    return None


def in_So_unit(lams, m: int, method: str = "auto") -> bool:
    """Membership in the orbit semigroup of the unit tensor of size m.

    ``method="auto"`` accepts a regular witness without summing;
    ``"exact"`` always evaluates the full invariant dimension.
    """
    if method not in ("auto", "exact"):
        raise ValueError(method)
    if method == "auto" and regular_witness(lams, m) is not None:
        return True
    return unit_invariant_dim(lams, m) > 0


def barrier_bound(m: int) -> int:
    return m * (m + 1) // 2 + m + 1


def barrier_lift(lams, m: int) -> tuple[int, WeightTriple]:
    """Smallest k such that the shifted triple has a regular witness in m + 1 slots."""
    triple = _as_triple(lams, m)
    for k in range(barrier_bound(m) + 1):
        lifted = WeightTriple(*(shift_and_pad(p, m, k) for p in triple.parts), (m + 1,) * 3)
        if regular_witness(lifted, m + 1) is not None:
            return k, lifted
    raise AssertionError(f"no lift within the proof bound for {triple}")


def unique_invariant_tensor_check(m: int, torus_samples: int = 4, seed: int = 0) -> bool:
    """Whether the unit tensor spans the tensors fixed by S_m and sampled torus elements.

    Torus elements are rational ``(diag a, diag b, diag c)`` with
    ``a_i b_i c_i = 1``.  Finite sampling can only enlarge the fixed space,
    so a ``True`` answer is conclusive.
    """
    if m < 1 or m > 4:
        raise ValueError("unique_invariant_tensor_check supports 1 <= m <= 4")
    rng = random.Random(seed)
    n = m**3

    def idx(i, j, k):
        return (i * m + j) * m + k

    rows: list[list[Fraction]] = []
    for _ in range(torus_samples):
        a = [Fraction(rng.randint(1, 9), rng.randint(1, 9)) * rng.choice((1, -1)) for _ in range(m)]
        b = [Fraction(rng.randint(1, 9), rng.randint(1, 9)) * rng.choice((1, -1)) for _ in range(m)]
        c = [1 / (x * y) for x, y in zip(a, b)]
        for i, j, k in product(range(m), repeat=3):
            factor = a[i] * b[j] * c[k]
            if factor != 1:
                row = [Fraction(0)] * n
                row[idx(i, j, k)] = factor - 1
                rows.append(row)
    for perm in permutations(range(m)):
        for i, j, k in product(range(m), repeat=3):
            src, dst = idx(i, j, k), idx(perm[i], perm[j], perm[k])
            if src != dst:
                row = [Fraction(0)] * n
                row[dst] += 1
                row[src] -= 1
                rows.append(row)
    basis = _linalg.nullspace(rows, n) if rows else [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    if len(basis) != 1:
        return False
    unit = [Fraction(int(i == j == k)) for i, j, k in product(range(m), repeat=3)]
    v = basis[0]
    pivot = next(i for i, x in enumerate(v) if x != 0)
    scale = unit[pivot] / v[pivot] if unit[pivot] else None
    return scale is not None and all(scale * x == u for x, u in zip(v, unit))
