"""Rank-one decompositions of unit and matrix-multiplication tensors."""

from __future__ import annotations

import hashlib
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Sequence

import numpy as np

from . import _linalg
from .stabilizer import MatmulFormat

MAX_DENSE_ENTRIES = 1 << 20

Vector = tuple  # of int (or Fraction after a rational group action)
Term = tuple[Vector, Vector, Vector]


@dataclass(frozen=True)
class RankOneDecomposition:
    """``w = sum_s a_s (x) b_s (x) c_s``."""

    format: tuple[int, int, int]
    terms: tuple[Term, ...]

    def __post_init__(self):
        object.__setattr__(self, "format", tuple(int(x) for x in self.format))
        terms = tuple(tuple(tuple(v) for v in t) for t in self.terms)
        for t in terms:
            if len(t) != 3 or tuple(len(v) for v in t) != self.format:
                raise ValueError(f"term {t} does not match format {self.format}")
        object.__setattr__(self, "terms", terms)

    @property
    def rank_bound(self) -> int:
        return len(self.terms)

    def __neg__(self) -> "RankOneDecomposition":
        return RankOneDecomposition(
            self.format, tuple((tuple(-x for x in a), b, c) for a, b, c in self.terms)
        )

    def __add__(self, other: "RankOneDecomposition") -> "RankOneDecomposition":
        if self.format != other.format:
            raise ValueError("format mismatch")
        return RankOneDecomposition(self.format, self.terms + other.terms)

    def padded(self, fmt: Sequence[int]) -> "RankOneDecomposition":
        """Embed into a larger format by appending zero coordinates."""
        fmt = tuple(fmt)
        if any(n < m for n, m in zip(fmt, self.format)):
            raise ValueError(f"cannot pad {self.format} into {fmt}")
        grow = [n - m for n, m in zip(fmt, self.format)]
        return RankOneDecomposition(
            fmt, tuple(tuple(tuple(v) + (0,) * g for v, g in zip(t, grow)) for t in self.terms)
        )

    def is_integral(self) -> bool:
        return all(isinstance(x, (int, np.integer)) or (isinstance(x, Fraction) and x.denominator == 1)
                   for t in self.terms for v in t for x in v)

    def to_text(self) -> str:
        lines = ["format {} {} {}".format(*self.format)]
        for t in self.terms:
            lines.append(" | ".join(",".join(str(x) for x in v) for v in t))
        return "\n".join(lines) + "\n"

    def digest(self) -> str:
        return "sha256:" + hashlib.sha256(self.to_text().encode()).hexdigest()[:16]


@dataclass(frozen=True)
class GroupElement:
    g1: tuple[tuple, ...]
    g2: tuple[tuple, ...]
    g3: tuple[tuple, ...]

    def __post_init__(self):
        for name in ("g1", "g2", "g3"):
            mat = tuple(tuple(r) for r in getattr(self, name))
            object.__setattr__(self, name, mat)
            if any(len(r) != len(mat) for r in mat):
                raise ValueError(f"{name} is not square")
        if any(_linalg.rank(m) != len(m) for m in self.mats):
            raise ValueError("group element is singular")

    @property
    def mats(self):
        return (self.g1, self.g2, self.g3)

    @property
    def format(self) -> tuple[int, int, int]:
        return tuple(len(m) for m in self.mats)

    @classmethod
    def identity(cls, fmt) -> "GroupElement":
        return cls(*(tuple(tuple(int(i == j) for j in range(n)) for i in range(n)) for n in fmt))

    def to_lists(self) -> list:
        return [[[str(x) for x in r] for r in m] for m in self.mats]


def _unit_vector(n: int, i: int) -> tuple[int, ...]:
    return tuple(int(j == i) for j in range(n))


def unit_tensor(m: int) -> RankOneDecomposition:
    if m < 1:
        raise ValueError("unit tensor needs m >= 1")
    return RankOneDecomposition((m, m, m), tuple((_unit_vector(m, j),) * 3 for j in range(m)))


def matmul_tensor(fmt: MatmulFormat | Sequence[int]) -> RankOneDecomposition:
    """``sum e_ij (x) e_jk (x) e_ki`` with row-major flattening of each factor."""
    if not isinstance(fmt, MatmulFormat):
        fmt = MatmulFormat(*fmt)
    n1, n2, n3 = fmt.n1, fmt.n2, fmt.n3
    terms = []
    for i in range(n1):
        for j in range(n2):
            for k in range(n3):
                terms.append((
                    _unit_vector(n1 * n2, i * n2 + j),
                    _unit_vector(n2 * n3, j * n3 + k),
                    _unit_vector(n3 * n1, k * n1 + i),
                ))
    return RankOneDecomposition(fmt.tensor_format, tuple(terms))


def _strassen_terms() -> list[Term]:
    def mat(entries: dict[tuple[int, int], int]) -> tuple[int, ...]:
        v = [0] * 4
        for (i, j), x in entries.items():
            v[i * 2 + j] = x
        return tuple(v)

    # products M_s = (A-form)(B-form); C-entries receiving M_s
    a_forms = [
        {(0, 0): 1, (1, 1): 1}, {(1, 0): 1, (1, 1): 1}, {(0, 0): 1}, {(1, 1): 1},
        {(0, 0): 1, (0, 1): 1}, {(1, 0): 1, (0, 0): -1}, {(0, 1): 1, (1, 1): -1},
    ]
    b_forms = [
        {(0, 0): 1, (1, 1): 1}, {(0, 0): 1}, {(0, 1): 1, (1, 1): -1}, {(1, 0): 1, (0, 0): -1},
        {(1, 1): 1}, {(0, 0): 1, (0, 1): 1}, {(1, 0): 1, (1, 1): 1},
    ]
    c_uses = [
        {(0, 0): 1, (1, 1): 1}, {(1, 0): 1, (1, 1): -1}, {(0, 1): 1, (1, 1): 1},
        {(0, 0): 1, (1, 0): 1}, {(0, 0): -1, (0, 1): 1}, {(1, 1): 1}, {(0, 0): 1},
    ]
    terms = []
    for af, bf, cu in zip(a_forms, b_forms, c_uses):
        # (AB)_{ik} pairs with the third-factor basis vector e_{ki}
        c = mat({(k, i): x for (i, k), x in cu.items()})
        terms.append((mat(af), mat(bf), c))
    return terms


def strassen_decomposition() -> RankOneDecomposition:
    """A 7-term decomposition of the 2x2 matrix multiplication tensor, verified on construction."""
    dec = RankOneDecomposition((4, 4, 4), tuple(_strassen_terms()))
    if not np.array_equal(dense_expand(dec), dense_expand(matmul_tensor((2, 2, 2)))):
        raise AssertionError("Strassen decomposition does not expand to <2,2,2>")
    if any(x not in (-1, 0, 1) for t in dec.terms for v in t for x in v):
        raise AssertionError("Strassen entries must lie in {-1, 0, 1}")
    return dec


def _matvec(g, v):
    return tuple(sum(gij * vj for gij, vj in zip(row, v)) for row in g)


def apply_group(g: GroupElement, w: RankOneDecomposition) -> RankOneDecomposition:
    if g.format != w.format:
        raise ValueError(f"group format {g.format} != tensor format {w.format}")
    return RankOneDecomposition(
        w.format,
        tuple((_matvec(g.g1, a), _matvec(g.g2, b), _matvec(g.g3, c)) for a, b, c in w.terms),
    )


def dense_expand(w: RankOneDecomposition, max_entries: int = MAX_DENSE_ENTRIES) -> np.ndarray:
    m1, m2, m3 = w.format
    if m1 * m2 * m3 > max_entries:
        raise ValueError(f"dense size {m1 * m2 * m3} exceeds guard {max_entries}")
    exact_ints = w.is_integral()
    dtype = np.int64 if exact_ints else object
    out = np.zeros(w.format, dtype=dtype)
    for term in w.terms:
        a, b, c = (np.array([int(x) for x in v] if exact_ints else list(v), dtype=dtype) for v in term)
        out = out + np.multiply.outer(np.multiply.outer(a, b), c)
    return out


def act_dense(g: GroupElement, t: np.ndarray) -> np.ndarray:
    """Multilinear action of ``g`` on a dense tensor."""
    dtype = t.dtype
    g1, g2, g3 = (np.array(m, dtype=object) for m in g.mats)
    out = np.einsum("ip,jq,kr,pqr->ijk", g1, g2, g3, t.astype(object), optimize=False)
    if dtype != object and all(isinstance(x, int) for x in out.flat):
        return out.astype(dtype)
    return out


def random_group_element(fmt, bound: int, seed: int) -> GroupElement:
    """Integer matrices with entries in [-bound, bound], resampled until invertible."""
    if bound < 1:
        raise ValueError("bound must be >= 1")
    rng = np.random.default_rng(seed)
    mats = []
    for n in fmt:
        while True:
            m = rng.integers(-bound, bound + 1, size=(n, n))
            rows = [[int(x) for x in r] for r in m]
            if _linalg.det(rows) != 0:
                mats.append(rows)
                break
    return GroupElement(*mats)


def kron_matrix(a, b) -> tuple[tuple, ...]:
    """Kronecker product of two square matrices with exact entries."""
    na, nb = len(a), len(b)
    return tuple(
        tuple(a[i // nb][j // nb] * b[i % nb][j % nb] for j in range(na * nb)) for i in range(na * nb)
    )


def inverse_transpose(a) -> tuple[tuple, ...]:
    n = len(a)
    aug = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(a)]
    red, pivots = _linalg.row_reduce(aug)
    if pivots[:n] != list(range(n)):
        raise ValueError("singular matrix")
    inv = [r[n:] for r in red]
    return tuple(tuple(inv[j][i] for j in range(n)) for i in range(n))


def matmul_stabilizer_element(a1, a2, a3) -> GroupElement:
    """Image of ``(a1, a2, a3)`` in the stabiliser of the matrix-multiplication tensor.

    With the row-major flattening ``(i, j) -> i * n_2 + j`` of the first
    factor (and cyclically for the others), the element is
    ``(a1^{-T} (x) a2, a2^{-T} (x) a3, a3^{-T} (x) a1)``.
    """
    return GroupElement(
        kron_matrix(inverse_transpose(a1), a2),
        kron_matrix(inverse_transpose(a2), a3),
        kron_matrix(inverse_transpose(a3), a1),
    )


# --- text format -----------------------------------------------------------

def _parse_number(tok: str):
    tok = tok.strip()
    return Fraction(tok) if "/" in tok else int(tok)


def parse_decomposition(text: str) -> RankOneDecomposition:
    lines = [ln.strip() for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    if not lines or not lines[0].startswith("format"):
        raise ValueError("decomposition text must start with 'format m1 m2 m3'")
    fmt = tuple(int(x) for x in lines[0].split()[1:])
    if len(fmt) != 3:
        raise ValueError("format line needs three dimensions")
    terms = []
    for ln in lines[1:]:
        parts = ln.split("|")
        if len(parts) != 3:
            raise ValueError(f"bad term line: {ln!r}")
        terms.append(tuple(tuple(_parse_number(x) for x in p.split(",")) for p in parts))
    return RankOneDecomposition(fmt, tuple(terms))


def named_tensor(name: str) -> RankOneDecomposition:
    """``unit:m``, ``matmul:n1,n2,n3``, ``strassen`` or ``naive`` (= matmul:2,2,2)."""
    kind, _, arg = name.partition(":")
    if kind == "unit":
        return unit_tensor(int(arg))
    if kind == "matmul":
        return matmul_tensor(tuple(int(x) for x in arg.split(",")))
    if kind == "strassen":
        return strassen_decomposition()
    if kind == "naive":
        return matmul_tensor((2, 2, 2))
    raise ValueError(f"unknown tensor name {name!r}")


def load_tensor(source: str) -> RankOneDecomposition:
    path = Path(source)
    if path.exists():
        return parse_decomposition(path.read_text(encoding="utf-8"))
    return named_tensor(source)
