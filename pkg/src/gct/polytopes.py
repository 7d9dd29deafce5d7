"""Normalized weight points, exact convex-hull membership and small polytope checks."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import permutations
from typing import Sequence

import numpy as np

from . import _lp
from .hwv import EvalCertificate, certify_in_S
from .kronecker import WeightTriple, kronecker, kronecker_semigroup_points
from .partitions import enumerate_partitions, is_regular_in, parse_partition
from .stabilizer import in_So_unit, unit_invariant_dim
from .tensors import unit_tensor

Block = tuple[Fraction, ...]


@dataclass(frozen=True)
class RationalPoint:
    blocks: tuple[Block, Block, Block]

    def __post_init__(self):
        blocks = tuple(tuple(Fraction(x) for x in b) for b in self.blocks)
        if len(blocks) != 3:
            raise ValueError("a point has three blocks")
        for b in blocks:
            if not b or sum(b) != 1 or any(x < 0 for x in b) or any(x < y for x, y in zip(b, b[1:])):
                raise ValueError(f"block {b} is not in the ordered simplex")
        object.__setattr__(self, "blocks", blocks)

    @property
    def format(self) -> tuple[int, int, int]:
        return tuple(len(b) for b in self.blocks)

    def coords(self) -> list[Fraction]:
        return [x for b in self.blocks for x in b]

    def to_json(self) -> dict:
        return {"format": list(self.format), "blocks": [[_frac_str(x) for x in b] for b in self.blocks]}

    @classmethod
    def from_json(cls, obj: dict) -> "RationalPoint":
        return cls(tuple(tuple(Fraction(x) for x in b) for b in obj["blocks"]))


def _frac_str(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


@dataclass
class GeneratorSet:
    points: list[RationalPoint]
    sources: list[WeightTriple | None] = field(default_factory=list)

    def __post_init__(self):
        if not self.sources:
            self.sources = [None] * len(self.points)
        if len(self.sources) != len(self.points):
            raise ValueError("one source per point")
        if len({p.format for p in self.points}) > 1:
            raise ValueError("generators of mixed formats")

    @property
    def format(self):
        return self.points[0].format if self.points else None

    @classmethod
    def from_weights(cls, weights: Sequence[WeightTriple]) -> "GeneratorSet":
        seen: dict[RationalPoint, WeightTriple] = {}
        for w in weights:
            seen.setdefault(normalize(w), w)
        return cls(list(seen), list(seen.values()))

    def to_json(self) -> dict:
        pts = []
        for p, src in zip(self.points, self.sources):
            entry = p.to_json()
            if src is not None:
                entry["source"] = {"lambda1": str(src.lambda1), "lambda2": str(src.lambda2),
                                   "lambda3": str(src.lambda3), "degree": str(src.degree)}
            pts.append(entry)
        return {"format": list(self.format or ()), "points": pts}

    @classmethod
    def from_json(cls, obj: dict) -> "GeneratorSet":
        pts, srcs = [], []
        for entry in obj["points"]:
            pts.append(RationalPoint.from_json(entry))
            src = entry.get("source")
            srcs.append(None if src is None else WeightTriple.of(
                *(parse_partition(src[k]) for k in ("lambda1", "lambda2", "lambda3")), fmt=pts[-1].format))
        return cls(pts, srcs)


def normalize(triple: WeightTriple) -> RationalPoint:
    d = triple.degree
    if d == 0:
        raise ValueError("cannot normalize a degree-0 weight")
    return RationalPoint(tuple(tuple(Fraction(x, d) for x in lam.padded(m))
                               for lam, m in zip(triple.parts, triple.format)))


def uniform_point(fmt) -> RationalPoint:
    return RationalPoint(tuple((Fraction(1, m),) * m for m in fmt))


@dataclass(frozen=True)
class HullWitness:
    coefficients: tuple[Fraction, ...]  # one per generator

    def reproduces(self, p: RationalPoint, gens: GeneratorSet) -> bool:
        c = self.coefficients
        if len(c) != len(gens.points) or any(x < 0 for x in c) or sum(c) != 1:
            return False
        combo = [sum(cj * g.coords()[i] for cj, g in zip(c, gens.points) if cj) for i in range(len(p.coords()))]
        return combo == p.coords()


def hull_membership(p: RationalPoint, gens: GeneratorSet) -> HullWitness | None:
    """Convex-combination coefficients expressing ``p`` through ``gens``, or None if impossible."""
    if not gens.points:
        raise ValueError("empty generator set")
    if gens.format != p.format:
        raise ValueError(f"format {p.format} does not match generators {gens.format}")
    cols = [g.coords() for g in gens.points]
    rows = [[c[i] for c in cols] for i in range(len(cols[0]))]
    rows.append([Fraction(1)] * len(cols))
    x = _lp.solve_nonneg(rows, p.coords() + [Fraction(1)])
    if x is None:
        return None
    witness = HullWitness(tuple(x))
    if not witness.reproduces(p, gens):
        raise AssertionError("hull witness failed exact revalidation")
    return witness


def hull_distance_at_most(p: RationalPoint, gens: GeneratorSet, eps: Fraction) -> HullWitness | None:
    """Coefficients of a hull point within ``eps`` of ``p`` in the max norm, or None."""
    cols = [g.coords() for g in gens.points]
    k, n = len(cols[0]), len(cols)
    # variables: lambda (n), u (k), v (k), su (k), sv (k); combo - p = v - u, u + su = eps, v + sv = eps
    width = n + 4 * k
    rows, rhs = [], []
    target = p.coords()
    for i in range(k):
        row = [Fraction(0)] * width
        for j in range(n):
            row[j] = cols[j][i]
        row[n + i] = Fraction(1)
        row[n + k + i] = Fraction(-1)
        rows.append(row)
        rhs.append(target[i])
    for off in (n, n + k):
        for i in range(k):
            row = [Fraction(0)] * width
            row[off + i] = Fraction(1)
            row[off + 2 * k + i] = Fraction(1)
            rows.append(row)
            rhs.append(Fraction(eps))
    rows.append([Fraction(1)] * n + [Fraction(0)] * (4 * k))
    rhs.append(Fraction(1))
    x = _lp.solve_nonneg(rows, rhs)
    if x is None:
        return None
    lam = tuple(x[:n])
    combo = [sum(c * col[i] for c, col in zip(lam, cols) if c) for i in range(k)]
    if sum(lam) != 1 or any(c < 0 for c in lam) or max(abs(a - b) for a, b in zip(combo, target)) > eps:
        raise AssertionError("distance witness failed exact revalidation")
    return HullWitness(lam)


def kron_generators(fmt, max_degree: int) -> GeneratorSet:
    return GeneratorSet.from_weights([t for t in kronecker_semigroup_points(fmt, max_degree) if t.degree])


def _regular_partitions(d: int, m: int):
    return [p for p in enumerate_partitions(d, m) if is_regular_in(p, m)]


def unit_So_points(m: int, max_degree: int) -> list[WeightTriple]:
    """All triples of degree <= max_degree with nonzero unit-stabiliser invariants (exact)."""
    out = []
    for d in range(1, max_degree + 1):
        pool = enumerate_partitions(d, m)
        for a in pool:
            for b in pool:
                if b > a:
                    continue
                for c in pool:
                    if c > b:
                        continue
                    if unit_invariant_dim((a, b, c), m) > 0:
                        # the unit tensor is symmetric under permuting its factors
                        for perm in set(permutations((a, b, c))):
                            out.append(WeightTriple.of(*perm, fmt=m))
    return out


def sample_simplex_point(m: int, rng: np.random.Generator, denominator: int = 1000) -> RationalPoint:
    """A seeded rational point of the ordered simplex, uniform up to the grid."""
    blocks = []
    for _ in range(3):
        cuts = np.sort(rng.integers(0, denominator + 1, size=m - 1))
        parts = np.diff(np.concatenate(([0], cuts, [denominator])))
        blocks.append(tuple(sorted((Fraction(int(x), denominator) for x in parts), reverse=True)))
    return RationalPoint(tuple(blocks))


def verify_theorem84_unit(m: int, max_degree: int, samples: int = 20, seed: int = 0) -> bool:
    """Finite check that normalized S°(<m>) points fill the ordered simplex triple.

    (a) Every triple of regular partitions of degree <= max_degree passes
    the exact invariant-dimension test.  (b) Every seeded sample point is
    within 1/max_degree (max norm) of the convex hull of normalized points
    whose invariant dimension is positive; that hull lies in the orbit
    polytope because S° is a semigroup.
    """
    if m == 1:
        return True
    for d in range(1, max_degree + 1):
        pool = _regular_partitions(d, m)
        for a in pool:
            for b in pool:
                for c in pool:
                    if not in_So_unit((a, b, c), m, method="exact"):
                        return False
    gens = GeneratorSet.from_weights(unit_So_points(m, max_degree))
    rng = np.random.default_rng(seed)
    eps = Fraction(1, max_degree)
    for _ in range(samples):
        if hull_distance_at_most(sample_simplex_point(m, rng), gens, eps) is None:
            return False
    return True


def verify_lemma82(m: int, max_degree: int, trials: int = 200, seed: int = 0
                   ) -> tuple[int, EvalCertificate] | None:
    """Smallest ell with ``(ell^m)^3`` in S(<m>), certified by an exact evaluation."""
    for ell in range(1, max_degree // m + 1):
        lam = (ell,) * m
        if kronecker(lam, lam, lam) == 0:
            continue
        cert = certify_in_S(WeightTriple.of(lam, lam, lam, fmt=m), unit_tensor(m), trials, seed)
        if cert is not None:
            return ell, cert
    return None


def dumps(obj) -> str:
    return json.dumps(obj, indent=2)
