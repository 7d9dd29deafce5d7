"""Kronecker coefficients and the Kronecker semigroup."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations, product
from math import factorial

import numpy as np

from .partitions import Partition, as_partition, enumerate_partitions
from .symgroup import character_table
from .tableaux import enumerate_standard, perm_action_matrix

BRUTEFORCE_MAX_DEGREE = 5


class InexactDivision(ArithmeticError):
    """An integer formula that must divide exactly did not; signals a defect."""


@dataclass(frozen=True)
class WeightTriple:
    lambda1: Partition
    lambda2: Partition
    lambda3: Partition
    format: tuple[int, int, int]

    def __post_init__(self):
        for name in ("lambda1", "lambda2", "lambda3"):
            object.__setattr__(self, name, as_partition(getattr(self, name)))
        object.__setattr__(self, "format", tuple(int(m) for m in self.format))
        sizes = {p.size for p in self.parts}
        if len(sizes) != 1:
            raise ValueError(f"partitions of different sizes: {self.parts}")
        for p, m in zip(self.parts, self.format):
            if p.length > m:
                raise ValueError(f"{p} has more than {m} parts")

    @classmethod
    def of(cls, l1, l2, l3, fmt=None) -> "WeightTriple":
        parts = [as_partition(x) for x in (l1, l2, l3)]
        if fmt is None:
            fmt = tuple(max(1, p.length) for p in parts)
        elif isinstance(fmt, int):
            fmt = (fmt, fmt, fmt)
        return cls(*parts, tuple(fmt))

    @property
    def parts(self) -> tuple[Partition, Partition, Partition]:
        return (self.lambda1, self.lambda2, self.lambda3)

    @property
    def degree(self) -> int:
        return self.lambda1.size

    def padded(self, fmt) -> "WeightTriple":
        if isinstance(fmt, int):
            fmt = (fmt, fmt, fmt)
        return WeightTriple(*self.parts, tuple(fmt))

    def __add__(self, other: "WeightTriple") -> "WeightTriple":
        return WeightTriple(*(a + b for a, b in zip(self.parts, other.parts)), self.format)


def _exact_div(num: int, den: int) -> int:
    q, r = divmod(num, den)
    if r:
        raise InexactDivision(f"{num} is not divisible by {den}")
    return q


@lru_cache(maxsize=None)
def _kron(lam: Partition, mu: Partition, nu: Partition) -> int:
    d = lam.size
    table = character_table(d)
    total = 0
    for rho, size in zip(table.classes, table.sizes):
        total += size * table.values[(lam, rho)] * table.values[(mu, rho)] * table.values[(nu, rho)]
    return _exact_div(total, factorial(d))


def kronecker(lam, mu, nu) -> int:
    """g(lam, mu, nu) by the character-sum formula."""
    lam, mu, nu = as_partition(lam), as_partition(mu), as_partition(nu)
    if not lam.size == mu.size == nu.size:
        raise ValueError(f"size mismatch: {lam}, {mu}, {nu}")
    key = tuple(sorted((lam, mu, nu)))
    return _kron(*key)


@lru_cache(maxsize=None)
def _specht_matrices(lam: Partition) -> dict[tuple[int, ...], np.ndarray]:
    d = lam.size
    eps = (1,) * d
    return {p: perm_action_matrix(p, lam, eps) for p in permutations(range(1, d + 1))}


def kronecker_bruteforce(lam, mu, nu) -> int:
    """Dimension of S_d-invariants in [lam] x [mu] x [nu] by explicit group averaging.

    The irreducible S_d matrices are the permutation action on the
    standard-tableau basis of the (1,...,1) weight space of V_lam(GL_d).
    """
    lam, mu, nu = as_partition(lam), as_partition(mu), as_partition(nu)
    d = lam.size
    if not d == mu.size == nu.size:
        raise ValueError("size mismatch")
    if d > BRUTEFORCE_MAX_DEGREE:
        raise ValueError(f"brute force limited to d <= {BRUTEFORCE_MAX_DEGREE}")
    if d == 0:
        return 1
    ml, mm, mn = _specht_matrices(lam), _specht_matrices(mu), _specht_matrices(nu)
    n = len(enumerate_standard(lam)) * len(enumerate_standard(mu)) * len(enumerate_standard(nu))
    avg = np.zeros((n, n), dtype=np.int64)
    for p in ml:
        avg += np.kron(np.kron(ml[p], mm[p]), mn[p])
    order = factorial(d)
    # avg / d! is an idempotent; its trace is the invariant dimension
    if not np.array_equal(avg @ avg, order * avg):
        raise InexactDivision("group average is not a multiple of a projector")
    return _exact_div(int(np.trace(avg)), order)


def kronecker_semigroup_points(fmt, max_degree: int) -> list[WeightTriple]:
    """All triples of format ``fmt`` and degree <= ``max_degree`` with g != 0."""
    fmt = tuple(fmt)
    out = []
    for d in range(max_degree + 1):
        pools = [enumerate_partitions(d, m) for m in fmt]
        for l1, l2, l3 in product(*pools):
            if kronecker(l1, l2, l3):
                out.append(WeightTriple(l1, l2, l3, fmt))
    return out
