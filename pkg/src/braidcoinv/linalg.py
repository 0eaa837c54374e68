"""Sparse exact Gaussian elimination over a field of CycNum values.

Rows are dicts ``{column: CycNum}`` with zero entries absent.  Columns are
any totally ordered hashable keys; the ordering fixes the echelon form.
"""

from __future__ import annotations

from typing import Hashable, Iterable, Optional

from .cyclo import CycNum

Row = dict


def add_scaled(target: Row, source: Row, c: CycNum) -> None:
    """target += c * source, in place, pruning zeros."""
    for col, v in source.items():
        w = target.get(col)
        w = v * c if w is None else w + v * c
        if w:
            target[col] = w
        else:
            target.pop(col, None)


class Echelon:
    """Incremental row echelon form with optional combination tracking.

    A pivot row is reduced against every pivot inserted before it, so
    eliminating in insertion order terminates. The pivot is the row's
    smallest column at insertion, normalized to 1.
    """

    def __init__(self, track: bool = False):
        self.pivots: dict[Hashable, Row] = {}
        self.track = track
        self._tags: dict[Hashable, Row] = {}
        self._order: dict[Hashable, int] = {}

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def reduce(self, row: Row, tag: Optional[Row] = None) -> tuple[Row, Optional[Row]]:
        row = dict(row)
        tag = dict(tag) if tag is not None else None
        order = self._order
        while True:
            cands = [c for c in row if c in order]
            if not cands:
                return row, tag
            col = min(cands, key=order.__getitem__)
            c = -row[col]
            add_scaled(row, self.pivots[col], c)
            if tag is not None and self.track:
                add_scaled(tag, self._tags[col], c)

    def add(self, row: Row, tag: Optional[Row] = None) -> tuple[bool, Optional[Row]]:
        """Insert a row; returns (was_independent, residual_tag).

        When tracking, a dependent row yields the combination of inserted
        tags that reduces to zero.
        """
        row, tag = self.reduce(row, tag)
        if not row:
            return False, tag
        col = min(row)
        s = row[col].inv()
        row = {k: v * s for k, v in row.items()}
        self._order[col] = len(self._order)
        self.pivots[col] = row
        if self.track:
            self._tags[col] = {k: v * s for k, v in (tag or {}).items()}
        return True, None

    def contains(self, row: Row) -> bool:
        red, _ = self.reduce(row)
        return not red


def rank(rows: Iterable[Row], target: Optional[int] = None) -> int:
    """Rank of a family of sparse rows; stops early once ``target`` is reached."""
    ech = Echelon()
    for r in rows:
        ech.add(r)
        if target is not None and ech.rank >= target:
            break
    return ech.rank


def nullspace(columns: Iterable[tuple[Hashable, Row]], level: int) -> tuple[int, list[Row]]:
    """Kernel of the linear map sending basis key ``k`` to vector ``v``.

    ``columns`` yields (key, image) pairs. Returns (rank, kernel basis) with
    kernel vectors expressed as dicts over keys.
    """
    ech = Echelon(track=True)
    kernel = []
    one = CycNum.one(level)
    for key, image in columns:
        indep, comb = ech.add(image, {key: one})
        if not indep:
            kernel.append(comb)
    return ech.rank, kernel


def solve(matrix: list[list[CycNum]], rhs: list[CycNum]) -> list[CycNum]:
    """Solve a square nonsingular system exactly."""
    n = len(matrix)
    ech = Echelon(track=False)
    # augmented rows: columns 0..n-1 unknowns, column n rhs
    for i in range(n):
        row = {j: matrix[i][j] for j in range(n) if matrix[i][j]}
        if rhs[i]:
            row[n] = rhs[i]
        indep, _ = ech.add(row)
        if not indep:
            raise ValueError("singular system")
    if n in ech.pivots:
        raise ValueError("inconsistent system")
    level = rhs[0].level
    x = [CycNum.zero(level)] * n
    for col in sorted(ech.pivots, reverse=True):
        row = ech.pivots[col]
        val = row.get(n, CycNum.zero(level))
        for j, v in row.items():
            if j != col and j != n:
                val = val - v * x[j]
        x[col] = val
    return x
