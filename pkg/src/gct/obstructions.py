"""Border-rank lower bounds from weights in S(w) but not in S°(<m>).

A weight whose unit-stabiliser invariant space is zero cannot occur in
the coordinate ring of the orbit of ``<m>``, hence not in that of its
closure.  A nonzero highest-weight-vector evaluation at ``w`` (or at
``g w``) shows it does occur for ``w``.  Together they separate the orbit
closures, so ``w`` has border rank greater than ``m``.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Iterator

from .hwv import EvalCertificate, certify_in_S
from .kronecker import WeightTriple, kronecker
from .partitions import Partition, enumerate_partitions
from .stabilizer import MatmulFormat, matmul_invariant_dim, unit_invariant_dim
from .tensors import RankOneDecomposition

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class ObstructionReport:
    weight: WeightTriple
    target_m: int
    invariant_dim: int
    membership: EvalCertificate | None
    tensor_name: str = "w"

    @property
    def not_in_So(self) -> bool:
        return self.invariant_dim == 0

    @property
    def conclusive(self) -> bool:
        return self.not_in_So and self.membership is not None

    @property
    def conclusion(self) -> str | None:
        if not self.conclusive:
            return None
        return f"R̲({self.tensor_name}) > {self.target_m}"


def lemma61_weight(n: int) -> WeightTriple:
    """``(2^{n^2}, 2^{n^2}, (2n^2 - 3) 1^3)`` in format ``(n^2, n^2, n^2)``."""
    if n < 2:
        raise ValueError("the family starts at n = 2")
    big = n * n
    return WeightTriple.of((2,) * big, (2,) * big, (2 * big - 3, 1, 1, 1), fmt=big)


def run_obstruction(weight: WeightTriple, w: RankOneDecomposition, m: int, trials: int = 1000,
                    seed: int = 0, *, random_g: bool = True, tensor_name: str = "w",
                    stats: dict | None = None) -> ObstructionReport:
    """Both halves of the argument; the report is inconclusive unless both succeed."""
    if any(p.length > m for p in weight.parts):
        # more parts than slots: not even a weight of <m>'s ambient space
        dim = 0
    else:
        dim = unit_invariant_dim(weight, m)
    log.info("unit invariant dimension at m = %d: %d", m, dim)
    cert = None
    if dim == 0:
        cert = certify_in_S(weight, w, trials, seed, random_g=random_g, stats=stats)
    return ObstructionReport(weight, m, dim, cert, tensor_name)


def remark62_check(n: int) -> bool:
    """Matmul-side membership of the family weight via the ``mu = (2n)^n`` summand."""
    weight = lemma61_weight(n)
    mu = Partition((2 * n,) * n)
    factor = 1
    for lam in weight.parts:
        factor *= kronecker(lam, mu, mu)
    if factor <= 0:
        return False
    return matmul_invariant_dim(*weight.parts, MatmulFormat(n, n, n)) >= factor


def candidate_weights(fmt, max_degree: int, m: int) -> Iterator[WeightTriple]:
    """Triples of degree <= max_degree in ``fmt`` with zero unit invariants at m.

    Exploratory: these are S°(<m>) non-members; whether any lies in S(w)
    must still be certified by evaluation.
    """
    for d in range(1, max_degree + 1):
        parts = [enumerate_partitions(d, k) for k in fmt]
        for l1 in parts[0]:
            for l2 in parts[1]:
                for l3 in parts[2]:
                    if kronecker(l1, l2, l3) == 0:
                        continue
                    triple = WeightTriple.of(l1, l2, l3, fmt=tuple(fmt))
                    if max(p.length for p in triple.parts) <= m and unit_invariant_dim(triple.padded(m), m):
                        continue
                    yield triple


def search(w: RankOneDecomposition, m: int, max_degree: int, trials: int = 50, seed: int = 0,
           tensor_name: str = "w") -> ObstructionReport | None:
    """First conclusive report among small candidate weights, or None."""
    for triple in candidate_weights(w.format, max_degree, m):
        report = run_obstruction(triple, w, m, trials, seed, tensor_name=tensor_name)
        if report.conclusive:
            return report
    return None
