"""Characters of the symmetric group via the Murnaghan-Nakayama rule."""

from __future__ import annotations

import threading
from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache
from math import factorial, prod

from .partitions import Partition, as_partition, enumerate_partitions


def class_size(rho) -> int:
    """Number of permutations with cycle type ``rho``."""
    rho = as_partition(rho)
    denom = 1
    for k, a in Counter(rho).items():
        denom *= k**a * factorial(a)
    return factorial(rho.size) // denom


def sign_of_class(rho) -> int:
    rho = as_partition(rho)
    return -1 if (rho.size - rho.length) % 2 else 1


def _strip_removals(lam: tuple[int, ...], r: int):
    """Yield ``(shape, height)`` for every border strip of size ``r`` in ``lam``."""
    n = len(lam)
    beads = [lam[i] + (n - 1 - i) for i in range(n)]
    occupied = set(beads)
    for i, b in enumerate(beads):
        target = b - r
        if target < 0 or target in occupied:
            continue
        height = sum(1 for c in beads if target < c < b)
        moved = sorted((c if c != b else target for c in beads), reverse=True)
        shape = tuple(moved[j] - (n - 1 - j) for j in range(n))
        yield Partition(shape), height


@lru_cache(maxsize=None)
def _mn(lam: Partition, rho: tuple[int, ...]) -> int:
    if not rho:
        return 1 if not lam else 0
    r, rest = rho[0], rho[1:]
    total = 0
    for shape, height in _strip_removals(tuple(lam), r):
        term = _mn(shape, rest)
        total += -term if height % 2 else term
    return total


def character(lam, rho) -> int:
    """chi_lam(rho), exactly."""
    lam, rho = as_partition(lam), as_partition(rho)
    if lam.size != rho.size:
        raise ValueError(f"size mismatch: |{lam}| != |{rho}|")
    # removing the largest cycles first keeps the memo table small
    return _mn(lam, tuple(rho))


def hook_length_dimension(lam) -> int:
    lam = as_partition(lam)
    cols = [sum(1 for p in lam if p > j) for j in range(lam[0])] if lam else []
    hooks = prod((lam[i] - j) + (cols[j] - i) - 1 for i in range(lam.length) for j in range(lam[i]))
    return factorial(lam.size) // hooks


def irrep_dimension(lam) -> int:
    lam = as_partition(lam)
    return character(lam, Partition([1] * lam.size))


@dataclass
class CharacterTable:
    degree: int
    irreps: tuple[Partition, ...] = field(init=False)
    classes: tuple[Partition, ...] = field(init=False)
    sizes: tuple[int, ...] = field(init=False)
    values: dict[tuple[Partition, Partition], int] = field(init=False, repr=False)

    def __post_init__(self):
        parts = tuple(enumerate_partitions(self.degree))
        self.irreps = parts
        self.classes = parts
        self.sizes = tuple(class_size(r) for r in parts)
        self.values = {(lam, rho): character(lam, rho) for lam in parts for rho in parts}

    def __getitem__(self, key) -> int:
        lam, rho = key
        return self.values[(as_partition(lam), as_partition(rho))]

    def row(self, lam) -> tuple[int, ...]:
        lam = as_partition(lam)
        return tuple(self.values[(lam, rho)] for rho in self.classes)


_tables: dict[int, CharacterTable] = {}
_tables_lock = threading.Lock()


def character_table(d: int) -> CharacterTable:
    """Shared, build-once character table of S_d."""
    table = _tables.get(d)
    if table is None:
        with _tables_lock:
            table = _tables.get(d)
            if table is None:
                table = CharacterTable(d)
                _tables[d] = table
    return table
