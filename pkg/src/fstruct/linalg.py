"""Exact elimination over a field.

The routines accept any element type with ``+ - * /`` and an exact
``x == 0`` test: Fractions, :class:`~fstruct.expr.Expr` (the rational
function field of a chart), or complex pairs of those.
"""

from __future__ import annotations

from typing import Sequence


def _echelon(rows: Sequence[Sequence]) -> tuple[list[list], list[int]]:
    """Fraction-free (Bareiss) row echelon form; returns (rows, pivot columns).

    Pivots prefer the entry whose printed form is shortest, which keeps
    intermediate swell down on symbolic input without changing the result.
    """
    m = [list(r) for r in rows]
    if not m:
        return m, []
    ncols = len(m[0])
    pivots: list[int] = []
    prev = None
    r = 0
    for c in range(ncols):
        if r == len(m):
            break
        cands = [i for i in range(r, len(m)) if not m[i][c] == 0]
        if not cands:
            continue
        p = min(cands, key=lambda i: _weight(m[i][c]))
        m[r], m[p] = m[p], m[r]
        piv = m[r][c]
        for i in range(r + 1, len(m)):
            a = m[i][c]
            if a == 0:
                # rank is unaffected; skipping the Bareiss rescale is safe over a field
                continue
            row = m[i][:c]
            for j in range(c, ncols):
                v = piv * m[i][j] - a * m[r][j]
                if prev is not None:
                    v = v / prev
                row.append(v)
            m[i] = row
        prev = piv
        pivots.append(c)
        r += 1
    return m, pivots


def _weight(x) -> int:
    w = getattr(x, "weight", None)
    if w is not None:
        return w()
    num = getattr(x, "num", None)
    if num is not None and hasattr(num, "terms"):
        return len(num.terms) + len(x.den.terms)
    return 0


def rank(rows: Sequence[Sequence]) -> int:
    return len(_echelon(rows)[1])


def pivot_columns(rows: Sequence[Sequence]) -> list[int]:
    """Indices of a maximal linearly independent set of columns."""
    return _echelon(rows)[1]


def columns_to_rows(cols: Sequence[Sequence]) -> list[list]:
    if not cols:
        return []
    return [list(r) for r in zip(*cols)]


def vectors_rank(vectors: Sequence[Sequence]) -> int:
    """Rank of a list of vectors (each a sequence of field elements)."""
    if not vectors:
        return 0
    return rank([list(v) for v in vectors])


def in_span(basis: Sequence[Sequence], v: Sequence) -> bool:
    """True if ``v`` is a linear combination of ``basis``."""
    if all(x == 0 for x in v):
        return True
    if not basis:
        return False
    return vectors_rank(list(basis) + [v]) == vectors_rank(basis)
