"""Integer partitions: dominance order, meets, staircases and enumeration.

Partitions are stored as weakly decreasing tuples with trailing zeros
stripped.  Anything that depends on a fixed number of slots (regularity,
padding to a tensor format) takes the slot count explicitly.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import accumulate
from typing import Iterable, Iterator, Sequence


class Partition(tuple):
    """A weakly decreasing tuple of positive integers.

    ``Partition((3, 1, 0))`` normalises to ``(3, 1)``.  Unsorted input is
    rejected rather than silently sorted, because a non-monotone vector
    is usually a content/weight that was passed to the wrong place.
    """

    __slots__ = ()

    def __new__(cls, parts: Iterable[int] = ()) -> "Partition":
        parts = [int(p) for p in parts]
        while parts and parts[-1] == 0:
            parts.pop()
        for a, b in zip(parts, parts[1:]):
            if a < b:
                raise ValueError(f"not weakly decreasing: {tuple(parts)}")
        if parts and parts[-1] < 0:
            raise ValueError(f"negative part in {tuple(parts)}")
        return super().__new__(cls, parts)

    @property
    def size(self) -> int:
        return sum(self)

    @property
    def length(self) -> int:
        return tuple.__len__(self)

    def padded(self, slots: int) -> tuple[int, ...]:
        if self.length > slots:
            raise ValueError(f"{self} has more than {slots} parts")
        return tuple(self) + (0,) * (slots - self.length)

    def __add__(self, other):  # componentwise, not concatenation
        n = max(self.length, len(other))
        a = self.padded(n)
        b = tuple(other) + (0,) * (n - len(other))
        return Partition(x + y for x, y in zip(a, b))

    def __repr__(self) -> str:
        return f"Partition({format_partition(self)})"

    def __str__(self) -> str:
        return format_partition(self)


@dataclass(frozen=True)
class BoundedPartitionView:
    """A partition read as an ``slots``-component vector with explicit zeros."""

    partition: Partition
    slots: int

    def __post_init__(self):
        if self.partition.length > self.slots:
            raise ValueError(f"{self.partition} does not fit in {self.slots} slots")

    def vector(self) -> tuple[int, ...]:
        return self.partition.padded(self.slots)


def as_partition(p) -> Partition:
    return p if isinstance(p, Partition) else Partition(p)


def format_partition(p: Sequence[int]) -> str:
    return ",".join(str(x) for x in p)


def parse_partition(text: str) -> Partition:
    """Parse ``"5,1,1,1"``, ``"2^4"`` or ``"5 1^3"`` into a partition."""
    text = text.strip()
    if not text or text in ("()", "0"):
        return Partition()
    parts: list[int] = []
    for token in text.replace(",", " ").split():
        if "^" in token:
            value, _, count = token.partition("^")
            parts.extend([int(value)] * int(count))
        else:
            parts.append(int(token))
    return Partition(parts)


def prefix_sums(p: Sequence[int], length: int) -> list[int]:
    padded = list(p) + [0] * (length - len(p))
    return list(accumulate(padded))


def dominance_leq(alpha, lam) -> bool:
    """True iff ``alpha`` is dominated by ``lam`` (equal sizes required)."""
    if sum(alpha) != sum(lam):
        return False
    n = max(len(alpha), len(lam))
    return all(a <= b for a, b in zip(prefix_sums(alpha, n), prefix_sums(lam, n)))


def meet(lam, mu) -> Partition:
    """Greatest lower bound of two partitions of the same size.

    The pointwise minimum of two concave prefix-sum sequences is concave,
    so its consecutive differences form a partition.
    """
    if sum(lam) != sum(mu):
        raise ValueError(f"meet needs equal sizes, got {sum(lam)} and {sum(mu)}")
    n = max(len(lam), len(mu))
    low = [min(a, b) for a, b in zip(prefix_sums(lam, n), prefix_sums(mu, n))]
    return Partition(b - a for a, b in zip([0] + low, low))


def meet_all(parts: Iterable) -> Partition:
    parts = list(parts)
    out = as_partition(parts[0])
    for p in parts[1:]:
        out = meet(out, p)
    return out


def transpose(lam) -> Partition:
    lam = as_partition(lam)
    if not lam:
        return Partition()
    return Partition(sum(1 for p in lam if p > j) for j in range(lam[0]))


def is_regular(view: BoundedPartitionView) -> bool:
    v = view.vector()
    return len(set(v)) == len(v)


def is_regular_in(lam, slots: int) -> bool:
    return is_regular(BoundedPartitionView(as_partition(lam), slots))


def box_partition(m: int, d: int) -> Partition:
    """The dominance-smallest partition of ``d`` into at most ``m`` parts."""
    if m < 1:
        if d == 0:
            return Partition()
        raise ValueError("box_partition needs m >= 1 when d > 0")
    q, r = divmod(d, m)
    return Partition([q + 1] * r + [q] * (m - r))


def symmetric_staircase(n: int) -> Partition:
    return Partition(range(n, 0, -1))


def staircase_length(m: int, d: int) -> int:
    if d < 1 or m < 1:
        raise ValueError("staircase needs m >= 1 and d >= 1")
    ell = 1
    while ell + 1 <= m and (ell + 1) * (ell + 2) // 2 <= d:
        ell += 1
    return ell


def staircase(m: int, d: int) -> Partition:
    """The dominance-smallest regular partition in ``m`` slots (when one exists)."""
    ell = staircase_length(m, d)
    return symmetric_staircase(ell) + box_partition(ell, d - ell * (ell + 1) // 2)


def _partitions(d: int, max_parts: int, max_part: int) -> Iterator[tuple[int, ...]]:
    if d == 0:
        yield ()
        return
    if max_parts == 0:
        return
    for first in range(min(d, max_part), 0, -1):
        if first * max_parts < d:
            break
        for rest in _partitions(d - first, max_parts - 1, first):
            yield (first,) + rest


@lru_cache(maxsize=None)
def _partitions_cached(d: int, max_parts: int) -> tuple[Partition, ...]:
    return tuple(Partition(p) for p in _partitions(d, max_parts, d))


def enumerate_partitions(d: int, max_parts: int | None = None) -> list[Partition]:
    """Partitions of ``d`` into at most ``max_parts`` parts, lexicographically descending."""
    if max_parts is None:
        max_parts = d
    return list(_partitions_cached(d, max_parts))


def enumerate_dominated(bound, slots: int) -> list[Partition]:
    bound = as_partition(bound)
    return [a for a in _partitions_cached(bound.size, slots) if dominance_leq(a, bound)]


def regular_exists(m: int, d: int) -> bool:
    return d >= m * (m - 1) // 2


def shift_and_pad(lam, m: int, k: int) -> Partition:
    """``(lam_1 + k, ..., lam_m + k, 0)``: the barrier lift in ``m + 1`` slots."""
    return Partition(x + k for x in as_partition(lam).padded(m))
