"""Exact linear feasibility ``A x = b, x >= 0`` over the rationals.

Phase I of the simplex method with Bland's rule in ``Fraction``
arithmetic, so it terminates and never rounds.  A floating-point LP may
propose a support first; its answer is only used if the exact solve on
that support succeeds.
"""

from __future__ import annotations

import logging
from fractions import Fraction
from typing import Sequence

import numpy as np

log = logging.getLogger(__name__)


def _phase_one(rows: list[list[Fraction]], rhs: list[Fraction]) -> list[Fraction] | None:
    n_rows = len(rows)
    n = len(rows[0]) if rows else 0
    tab = []
    for i, (row, b) in enumerate(zip(rows, rhs)):
        sign = -1 if b < 0 else 1
        art = [Fraction(0)] * n_rows
        art[i] = Fraction(1)
        tab.append([sign * x for x in row] + art + [sign * b])
    width = n + n_rows
    obj = [Fraction(0)] * (width + 1)
    for r in tab:
        for j in range(n):
            obj[j] -= r[j]
        obj[width] -= r[width]
    basis = list(range(n, n + n_rows))
    while True:
        enter = next((j for j in range(width) if obj[j] < 0), None)
        if enter is None:
            break
        best = None
        for i, r in enumerate(tab):
            if r[enter] > 0:
                ratio = r[width] / r[enter]
                if best is None or ratio < best[0] or (ratio == best[0] and basis[i] < basis[best[1]]):
                    best = (ratio, i)
        if best is None:
            # unbounded direction cannot occur in phase I (objective is bounded below by 0)
            raise AssertionError("phase I reported unbounded")
        pr = best[1]
        piv = tab[pr][enter]
        tab[pr] = [x / piv for x in tab[pr]]
        prow = tab[pr]
        for i, r in enumerate(tab):
            if i != pr and r[enter] != 0:
                f = r[enter]
                tab[i] = [x - f * y for x, y in zip(r, prow)]
        f = obj[enter]
        obj = [x - f * y for x, y in zip(obj, prow)]
        basis[pr] = enter
    if obj[width] != 0:
        return None
    x = [Fraction(0)] * n
    for i, j in enumerate(basis):
        if j < n:
            x[j] = tab[i][width]
    return x


def _float_support(rows, rhs) -> list[int] | None:
    try:
        from scipy.optimize import linprog
    except ImportError:
        return None
    a = np.array([[float(x) for x in r] for r in rows])
    b = np.array([float(x) for x in rhs])
    res = linprog(np.zeros(a.shape[1]), A_eq=a, b_eq=b, bounds=(0, None), method="highs")
    if res.status != 0:
        return None
    return [j for j, v in enumerate(res.x) if v > 1e-12]


def check_solution(rows, rhs, x) -> bool:
    return all(v >= 0 for v in x) and all(sum(a * v for a, v in zip(r, x)) == b for r, b in zip(rows, rhs))


def solve_nonneg(rows: Sequence[Sequence], rhs: Sequence, use_float_hint: bool = True) -> list[Fraction] | None:
    """A nonnegative rational solution of ``rows @ x = rhs``, or None if none exists."""
    rows = [[Fraction(x) for x in r] for r in rows]
    rhs = [Fraction(x) for x in rhs]
    if not rows:
        return []
    n = len(rows[0])
    if use_float_hint and n > 2 * len(rows):
        support = _float_support(rows, rhs)
        if support:
            sub = [[r[j] for j in support] for r in rows]
            y = _phase_one(sub, rhs)
            if y is not None:
                x = [Fraction(0)] * n
                for j, v in zip(support, y):
                    x[j] = v
                return x
            log.debug("float support rejected by exact solve; running full phase I")
    return _phase_one(rows, rhs)
