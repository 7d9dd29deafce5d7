"""Exact evaluation of highest weight vectors at rank-decomposed tensors.

For weights ``lam = (lam_1, lam_2, lam_3)`` of degree ``d`` and a triple
of permutations ``pi``, the highest weight vector ``pi v_lam`` is paired
with ``w^{(x) d}``.  Writing ``w = sum_s a_s (x) b_s (x) c_s`` this is

    sum over phi: {1..d} -> {1..r} of
        prod over factors i, prod over columns C of the diagram of lam_i:
            det[ top |C| coordinates of the factor-i vectors of terms
                 phi(pi_i(p)), p in C ]

where the boxes of each diagram are numbered column by column.  The
symmetrisation onto Sym^d drops out because ``w^{(x) d}`` is already
symmetric, and all normalising constants are omitted, so values are
integers proportional to the true evaluation by a fixed positive factor.

Two backends compute the same integer: a numba depth-first enumeration
with precomputed determinant and linear-dependence tables (prunes whole
subtrees), and a numpy tensor-network contraction of the determinant
tables.  Object arrays take over whenever int64 could overflow.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from itertools import permutations as _all_perms
from itertools import product
from typing import Sequence

import numpy as np

from . import _backend, _linalg
from .kronecker import WeightTriple
from .partitions import transpose
from .tensors import (
    GroupElement,
    RankOneDecomposition,
    apply_group,
    random_group_element,
)

log = logging.getLogger(__name__)

INT64_SAFE_BITS = 62
MAX_TABLE_ENTRIES = 1 << 26


# --- permutations ------------------------------------------------------------

@dataclass(frozen=True)
class PermTriple:
    """Three permutations of 1..d in one-line notation (``p[i-1]`` is the image of i)."""

    p1: tuple[int, ...]
    p2: tuple[int, ...]
    p3: tuple[int, ...]

    def __post_init__(self):
        perms = tuple(tuple(int(x) for x in p) for p in (self.p1, self.p2, self.p3))
        for name, p in zip(("p1", "p2", "p3"), perms):
            if sorted(p) != list(range(1, len(p) + 1)):
                raise ValueError(f"{name} = {p} is not a permutation")
            object.__setattr__(self, name, p)
        if len({len(p) for p in perms}) != 1:
            raise ValueError("permutations of different degrees")

    @classmethod
    def identity(cls, d: int) -> "PermTriple":
        e = tuple(range(1, d + 1))
        return cls(e, e, e)

    @property
    def degree(self) -> int:
        return len(self.p1)

    @property
    def perms(self):
        return (self.p1, self.p2, self.p3)

    def cycles(self) -> list[str]:
        return [format_cycles(p) for p in self.perms]


def parse_cycles(text: str, d: int) -> tuple[int, ...]:
    """``"(1 2 3)(4 5)"`` (commas allowed) as one-line notation on 1..d."""
    perm = list(range(1, d + 1))
    text = text.strip()
    if text in ("", "()", "id", "e"):
        return tuple(perm)
    for chunk in text.replace(")", "").split("("):
        pts = [int(x) for x in chunk.replace(",", " ").split()]
        if not pts:
            continue
        if any(not 1 <= x <= d for x in pts) or len(set(pts)) != len(pts):
            raise ValueError(f"bad cycle {chunk!r} for degree {d}")
        for a, b in zip(pts, pts[1:] + pts[:1]):
            perm[a - 1] = b
    if sorted(perm) != list(range(1, d + 1)):
        raise ValueError(f"cycles {text!r} overlap")
    return tuple(perm)


def format_cycles(perm: Sequence[int]) -> str:
    seen = set()
    out = []
    for start in range(1, len(perm) + 1):
        if start in seen or perm[start - 1] == start:
            continue
        cyc = [start]
        seen.add(start)
        nxt = perm[start - 1]
        while nxt != start:
            cyc.append(nxt)
            seen.add(nxt)
            nxt = perm[nxt - 1]
        out.append("(" + " ".join(str(x) for x in cyc) + ")")
    return "".join(out) or "()"


# --- planning ----------------------------------------------------------------

@dataclass
class ColumnPlan:
    """Columns of the column-numbered diagram of one weight, as tensor positions."""

    factor: int
    lengths: tuple[int, ...]
    columns: tuple[tuple[int, ...], ...]  # 0-based positions in 1..d after the permutation

    @classmethod
    def build(cls, factor: int, lam, perm: Sequence[int]) -> "ColumnPlan":
        lengths = tuple(transpose(lam))
        cols = []
        box = 0
        for length in lengths:
            cols.append(tuple(perm[box + s] - 1 for s in range(length)))
            box += length
        return cls(factor, lengths, tuple(cols))


@dataclass
class _Plan:
    d: int
    r: int
    columns: list[tuple[int, tuple[int, ...]]]  # (factor, positions in row order)
    order: list[int]
    vecs: list[list[list[int]]]  # per factor: r vectors
    zero: bool = False
    table_keys: list[tuple[int, int]] = field(default_factory=list)


def _choose_order(d: int, columns: list[tuple[int, tuple[int, ...]]]) -> list[int]:
    """Assign positions column by column, always finishing the nearest-complete column."""
    level: dict[int, int] = {}
    while len(level) < d:
        best = None
        for idx, (_, pos) in enumerate(columns):
            missing = [p for p in pos if p not in level]
            if not missing:
                continue
            key = (len(missing), -len(pos), idx)
            if best is None or key < best[0]:
                best = (key, missing)
        for p in best[1]:
            level[p] = len(level)
    return sorted(level, key=level.get)


def _plan(triple: WeightTriple, perms: PermTriple, w: RankOneDecomposition) -> _Plan:
    d = triple.degree
    if perms.degree != d:
        raise ValueError(f"permutations have degree {perms.degree}, weights have degree {d}")
    if not w.is_integral():
        raise ValueError("evaluation needs integer coordinates")
    columns = []
    zero = False
    for i, (lam, perm, m) in enumerate(zip(triple.parts, perms.perms, w.format)):
        if lam.length > m:
            zero = True
        plan = ColumnPlan.build(i, lam, perm)
        columns.extend((i, pos) for pos in plan.columns)
    vecs = [[[int(x) for x in t[i]] for t in w.terms] for i in range(3)]
    r = len(w.terms)
    order = _choose_order(d, columns) if d else []
    return _Plan(d, r, columns, order, vecs, zero or r == 0)


def _magnitude_bits(plan: _Plan) -> float:
    """log2 of a bound on every integer the kernels form (sum, products, Bareiss steps).

    Hadamard bounds each column determinant by ``(sqrt(L) B)^L`` and each
    Gram determinant by ``(L B^2)^p``; Bareiss multiplies two minors
    before dividing, hence the doubling.
    """
    bits = plan.d * math.log2(max(plan.r, 1))
    step = 0.0
    for factor, pos in plan.columns:
        length = len(pos)
        top = max((abs(int(x)) for v in plan.vecs[factor] for x in v[:length]), default=0)
        if top == 0:
            return 0.0
        col = length * (0.5 * math.log2(length) + math.log2(top))
        bits += col
        step = max(step, 2 * col, 2 * length * (math.log2(length) + 2 * math.log2(top)))
    return max(bits, step)


# --- numpy backend -----------------------------------------------------------

def _leibniz_table(vecs: np.ndarray, length: int, dtype) -> np.ndarray:
    """Determinant table of shape (r,)*length, vectorised over all index tuples."""
    r = vecs.shape[0]
    sub = vecs[:, :length].astype(dtype)
    grids = np.indices((r,) * length).reshape(length, -1)
    out = np.zeros(grids.shape[1], dtype=dtype)
    for perm in _all_perms(range(length)):
        inv = sum(1 for a in range(length) for b in range(a + 1, length) if perm[a] > perm[b])
        term = np.ones(grids.shape[1], dtype=dtype)
        for s in range(length):
            term = term * sub[grids[s], perm[s]]
        out = out - term if inv % 2 else out + term
    return out.reshape((r,) * length)


def _letters(n: int) -> str:
    alphabet = "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ"
    if n > len(alphabet):
        raise ValueError("numpy backend supports degree <= 52")
    return alphabet[:n]


def _evaluate_numpy(plan: _Plan, exact_object: bool) -> int:
    dtype = object if exact_object else np.int64
    tables: dict[tuple[int, int], np.ndarray] = {}
    operands = []
    subscripts = []
    letters = _letters(plan.d)
    for factor, pos in plan.columns:
        key = (factor, len(pos))
        if key not in tables:
            arr = np.array(plan.vecs[factor], dtype=object if exact_object else np.int64)
            tables[key] = _leibniz_table(arr, len(pos), dtype)
        tab = tables[key]
        # a column that repeats a position cannot happen: positions are distinct
        operands.append(tab)
        subscripts.append("".join(letters[p] for p in pos))
    expr = ",".join(subscripts) + "->"
    return int(np.einsum(expr, *operands, optimize="greedy"))


# --- numba backend -----------------------------------------------------------

def _numba_arrays(plan: _Plan, with_tables: bool):
    from . import _kernels

    d, r = plan.d, plan.r
    ncol = len(plan.columns)
    maxlen = max(len(pos) for _, pos in plan.columns)
    level = {p: k for k, p in enumerate(plan.order)}
    order = np.array(plan.order, dtype=np.int64)
    pos_cols = np.zeros((d, 3), dtype=np.int64)
    pos_pref = np.zeros((d, 3), dtype=np.int64)
    col_len = np.zeros(ncol, dtype=np.int64)
    col_rows = np.zeros((ncol, maxlen), dtype=np.int64)
    col_bylevel = np.zeros((ncol, maxlen), dtype=np.int64)
    col_factor = np.zeros(ncol, dtype=np.int64)
    col_table = np.zeros(ncol, dtype=np.int64)
    keys: dict[tuple[int, int], int] = {}
    for c, (factor, pos) in enumerate(plan.columns):
        col_len[c] = len(pos)
        col_factor[c] = factor
        col_rows[c, :len(pos)] = pos
        by_level = sorted(pos, key=level.get)
        col_bylevel[c, :len(pos)] = by_level
        for p in pos:
            pos_cols[p, factor] = c
            pos_pref[p, factor] = sum(1 for x in pos if level[x] <= level[p])
        col_table[c] = keys.setdefault((factor, len(pos)), len(keys))
    maxm = max(len(v[0]) if v else 0 for v in plan.vecs)
    vecs = np.zeros((3, r, maxm), dtype=np.int64)
    for f in range(3):
        for t, v in enumerate(plan.vecs[f]):
            vecs[f, t, :len(v)] = v
    arrays = dict(order=order, pos_cols=pos_cols, pos_pref=pos_pref, col_len=col_len,
                  col_table=col_table, col_rows=col_rows, col_bylevel=col_bylevel,
                  col_factor=col_factor, vecs=vecs)
    if not with_tables:
        return arrays
    tabs, offs = [], []
    dep_off = np.zeros((len(keys), maxlen + 1), dtype=np.int64)
    deps = []
    total_tab = total_dep = 0
    for (factor, length), tid in sorted(keys.items(), key=lambda kv: kv[1]):
        if r**length > MAX_TABLE_ENTRIES:
            raise MemoryError(f"determinant table r^{length} = {r**length} exceeds guard")
        sub = np.ascontiguousarray(vecs[factor])
        t = _kernels.det_table(sub, length)
        offs.append(total_tab)
        tabs.append(t)
        total_tab += t.size
        for p in range(1, length):
            dt = _kernels.dependence_table(sub, length, p)
            dep_off[tid, p] = total_dep
            deps.append(dt)
            total_dep += dt.size
    arrays["tab_off"] = np.array(offs, dtype=np.int64)
    arrays["tabs"] = np.concatenate(tabs)
    arrays["dep_off"] = dep_off
    arrays["deps"] = np.concatenate(deps) if deps else np.zeros(1, dtype=np.uint8)
    return arrays


def _evaluate_numba(plan: _Plan, cache: bool, stats: dict | None = None) -> int:
    from . import _kernels

    a = _numba_arrays(plan, with_tables=cache)
    if not cache:
        return int(_kernels.evaluate_direct(a["order"], a["pos_cols"], a["pos_pref"], a["col_len"],
                                            a["col_factor"], a["col_rows"], a["vecs"], plan.r, plan.d))
    split = min(2, plan.d)
    partial, counts = _kernels.evaluate_tables(a["order"], a["pos_cols"], a["pos_pref"], a["col_len"],
                                       a["col_table"], a["col_rows"], a["col_bylevel"], a["tab_off"],
                                       a["tabs"], a["dep_off"], a["deps"], plan.r, plan.d, split)
    if stats is not None:
        stats["terms"] = stats.get("terms", 0) + int(counts.sum())
    return sum(int(x) for x in partial)


# --- pure python reference -----------------------------------------------------

def evaluate_naive(triple: WeightTriple, perms: PermTriple, w: RankOneDecomposition) -> int:
    """Literal sum over all maps phi; exponential, for cross-checking tiny cases only."""
    plan = _plan(triple, perms, w)
    if plan.zero:
        return 0
    total = 0
    for phi in product(range(plan.r), repeat=plan.d):
        term = 1
        for factor, pos in plan.columns:
            length = len(pos)
            mat = [[plan.vecs[factor][phi[p]][row] for p in pos] for row in range(length)]
            term *= _linalg.det(mat)
            if term == 0:
                break
        total += term
    return total


# --- public API ----------------------------------------------------------------

def evaluate(triple: WeightTriple, perms: PermTriple, w: RankOneDecomposition, *,
             cache: bool = True, backend: str | None = None, stats: dict | None = None) -> int:
    """Integer evaluation of ``P_Sym(pi v_lam)`` at ``w`` (up to a fixed positive scale).

    ``stats["terms"]`` accumulates the number of nonzero determinant
    products formed (table-driven numba path only).
    """
    triple = triple.padded(tuple(max(a, b) for a, b in zip(triple.format, w.format)))
    if triple.format != w.format:
        w = w.padded(triple.format)
    plan = _plan(triple, perms, w)
    if plan.zero:
        return 0
    if plan.d == 0:
        return 1
    backend = backend or _backend.backend()
    safe = _magnitude_bits(plan) < INT64_SAFE_BITS
    if backend == "numba" and safe:
        return _evaluate_numba(plan, cache, stats)
    if not cache and safe:
        return evaluate_naive(triple, perms, w)
    return _evaluate_numpy(plan, exact_object=not safe)


@dataclass(frozen=True)
class EvalCertificate:
    weight: WeightTriple
    perm_triple: PermTriple
    group_element: GroupElement | None
    value: int
    tensor_id: str
    trial: int = field(default=0, compare=False)

    def __post_init__(self):
        if self.value == 0:
            raise ValueError("a certificate needs a nonzero value")

    def verify(self, w: RankOneDecomposition) -> bool:
        if w.digest() != self.tensor_id:
            return False
        target = apply_group(self.group_element, w) if self.group_element is not None else w
        return evaluate(self.weight, self.perm_triple, target) == self.value


def _cyclic_shift(d: int, s: int) -> tuple[int, ...]:
    return tuple((p + s) % d + 1 for p in range(d))


def candidate_perm_triples(d: int, seed: int):
    """Search order: identity, single-factor cyclic shifts, then seeded random triples.

    Random triples keep the first permutation fixed: relabelling all
    tensor positions by one permutation leaves the value unchanged.
    """
    ident = tuple(range(1, d + 1))
    yield PermTriple.identity(d)
    for i in range(3):
        for s in range(1, d):
            perms = [ident, ident, ident]
            perms[i] = _cyclic_shift(d, s)
            yield PermTriple(*perms)
    rng = np.random.default_rng(seed)
    while True:
        p2 = tuple(int(x) + 1 for x in rng.permutation(d))
        p3 = tuple(int(x) + 1 for x in rng.permutation(d))
        yield PermTriple(ident, p2, p3)


def certify_in_S(triple: WeightTriple, w: RankOneDecomposition, trials: int = 1000, seed: int = 0, *,
                 random_g: bool = False, g_bound: int = 1, stats: dict | None = None) -> EvalCertificate | None:
    """Search for a nonzero evaluation proving that ``triple`` lies in S(w).

    Each trial takes the next permutation triple and evaluates at ``w``;
    with ``random_g`` it also evaluates at ``g w`` for a seeded integer
    ``g``.  A weight whose content cannot be matched by the support of
    ``w`` always vanishes at ``w`` itself, so ``random_g`` is often needed.
    Returns None when all trials vanish; that is inconclusive, not a
    proof of non-membership.
    """
    fmt = tuple(max(a, b) for a, b in zip(triple.format, w.format))
    triple = triple.padded(fmt)
    target = w.padded(fmt) if w.format != fmt else w
    digest = w.digest()
    if w.format != fmt:
        random_g = False  # g must act on the original format to be re-verifiable
    g_rng = np.random.default_rng([seed, 1])
    for count, perms in enumerate(candidate_perm_triples(triple.degree, seed), start=1):
        if count > trials:
            return None
        value = evaluate(triple, perms, target, stats=stats)
        if value:
            return EvalCertificate(triple, perms, None, value, digest, count)
        if random_g:
            g = random_group_element(fmt, g_bound, int(g_rng.integers(2**31)))
            value = evaluate(triple, perms, apply_group(g, target), stats=stats)
            if value:
                log.info("nonzero evaluation at g w after %d trials", count)
                return EvalCertificate(triple, perms, g, value, digest, count)
    return None


def random_decomposition(fmt, terms: int, bound: int, seed: int) -> RankOneDecomposition:
    rng = np.random.default_rng(seed)
    return RankOneDecomposition(
        tuple(fmt),
        tuple(tuple(tuple(int(x) for x in rng.integers(-bound, bound + 1, size=m)) for m in fmt)
              for _ in range(terms)),
    )


def hwv_is_nonzero_function(triple: WeightTriple, perms: PermTriple, fmt, trials: int = 4,
                            seed: int = 0, bound: int = 3) -> bool:
    """True if some seeded random tensor gives a nonzero value (False is inconclusive).

    A degree-d form that is not identically zero is nonzero somewhere on
    sums of d rank-one tensors (polarisation), so d random terms suffice.
    """
    fmt = tuple(fmt)
    if any(p.length > m for p, m in zip(triple.parts, fmt)):
        return False
    triple = triple.padded(fmt)
    d = max(triple.degree, 1)
    for k in range(trials):
        w = random_decomposition(fmt, d, bound, seed + k)
        if evaluate(triple, perms, w):
            return True
    return False


def weight_to_json(t: WeightTriple) -> dict:
    return {"lambda1": str(t.lambda1), "lambda2": str(t.lambda2), "lambda3": str(t.lambda3),
            "format": [str(m) for m in t.format]}


def weight_from_json(obj: dict) -> WeightTriple:
    from .partitions import parse_partition

    return WeightTriple.of(*(parse_partition(obj[k]) for k in ("lambda1", "lambda2", "lambda3")),
                           fmt=tuple(int(m) for m in obj["format"]))


def certificate_to_json(cert: EvalCertificate) -> dict:
    return {
        "weight": weight_to_json(cert.weight),
        "perms": cert.perm_triple.cycles(),
        "g": cert.group_element.to_lists() if cert.group_element is not None else None,
        "value": str(cert.value),
        "tensor_digest": cert.tensor_id,
    }


def certificate_from_json(obj: dict) -> EvalCertificate:
    weight = weight_from_json(obj["weight"])
    d = weight.degree
    perms = PermTriple(*(parse_cycles(c, d) for c in obj["perms"]))
    g = None
    if obj.get("g") is not None:
        from fractions import Fraction

        g = GroupElement(*([[Fraction(x) if "/" in x else int(x) for x in row] for row in m] for m in obj["g"]))
    return EvalCertificate(weight, perms, g, int(obj["value"]), obj["tensor_digest"])
