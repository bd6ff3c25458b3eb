"""Truncated matrices of the defining representation and norm brackets.

The algebra acts on l2(X) (x) l2(Z+) by U^n f : delta_x (x) e_k ->
f(phi^k(x)) delta_x (x) e_(k+n); multiplication operators act
diagonally in the spatial index, so each basis column only moves up in
level.  Compressing to a finite window of points and levels 0..K gives
a matrix whose largest singular value is a lower bound for the operator
norm, nondecreasing under refinement, while the l1 norm is always an
upper bound.  Entries are exact; only the singular-value step goes
through floating point.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

import numpy as np

from .algebra import Series
from .dynamics import System
from .scalars import Scalar, SqrtSum


@dataclass(frozen=True)
class TruncationParams:
    """A finite compression: spatial window plus the number of kept levels."""

    window: tuple[int, ...]
    levels: int

    @staticmethod
    def make(system: System, window: Iterable[int], levels: int) -> "TruncationParams":
        if levels < 0:
            raise ValueError("levels must be nonnegative")
        pts = system.sort_points(set(window))
        return TruncationParams(tuple(pts), levels)

    def contains(self, other: "TruncationParams") -> bool:
        return set(other.window) <= set(self.window) and other.levels <= self.levels


@dataclass(frozen=True)
class RepMatrix:
    """The compressed matrix, with its basis book-keeping.

    Basis vectors are (point, level) pairs; `entries` maps
    (row_index, col_index) to exact scalars.  Nonzero entries occur only
    at ((x, k+n), (x, k)) for stored degrees n: a block lower-shift band.
    """

    basis: tuple[tuple[int, int], ...]
    entries: Mapping[tuple[int, int], Scalar]

    def index(self, x: int, k: int) -> int:
        return self.basis.index((x, k))

    def entry(self, row: tuple[int, int], col: tuple[int, int]) -> Scalar:
        try:
            i = self.basis.index(row)
            j = self.basis.index(col)
        except ValueError:
            return Scalar()
        return self.entries.get((i, j), Scalar())

    def to_numpy(self) -> np.ndarray:
        n = len(self.basis)
        out = np.zeros((n, n), dtype=complex)
        for (i, j), v in self.entries.items():
            out[i, j] = v.to_complex()
        return out


def rep_matrix(system: System, series: Series, params: TruncationParams) -> RepMatrix:
    """Compression of the represented series to the given truncation."""
    if not params.window:
        raise ValueError("truncation window must be nonempty")
    window = system.sort_points(set(params.window))
    basis = tuple((x, k) for x in window for k in range(params.levels + 1))
    index = {bk: i for i, bk in enumerate(basis)}
    entries: dict[tuple[int, int], Scalar] = {}
    for n, f in series.items():
        for x in window:
            for k in range(params.levels + 1 - n):
                v = f.at(system.iterate(x, k))
                if not v.is_zero():
                    entries[(index[(x, k + n)], index[(x, k)])] = v
    return RepMatrix(basis=basis, entries=entries)


def opnorm_lower(system: System, series: Series, params: TruncationParams) -> float:
    """Largest singular value of the compression (an operator-norm lower bound)."""
    if series.is_zero():
        return 0.0
    mat = rep_matrix(system, series, params).to_numpy()
    if mat.size == 0:
        return 0.0
    return float(np.linalg.svd(mat, compute_uv=False)[0])


def adequate_truncation(system: System, series: Series, pad: int = 0) -> TruncationParams:
    """A truncation large enough for the sandwich bound.

    Window: all coefficient supports together with their forward orbits up
    to the degree (cheap on every system; preimage layers can grow
    geometrically on expanding maps, so they are left to refinement
    schedules).  Levels: the degree.  With these, the compression norm
    already dominates the largest coefficient sup norm: the column of
    (x*, 0) for a maximizing point x* keeps all its entries.
    """
    deg = max(series.degree(), 0)
    levels = deg + pad
    window = set(series.support_points())
    for x in list(window):
        y = x
        for _ in range(levels):
            y = system.apply(y)
            window.add(y)
    if not window:
        window = {next(iter(system.enumerate_carrier()))}
    if pad:
        window |= set(system.canonical_window(pad))
    return TruncationParams.make(system, window, levels)


def refinement_schedule(
    system: System,
    series: Series,
    steps: int = 4,
    window_cap: int = 4096,
) -> list[TruncationParams]:
    """Nested truncations, adequate first, then preimage-padded layers.

    Each step adds one preimage layer of the running window (capped in
    size: preimages of the halving map double per layer) and one extra
    level, so compressions are genuinely nested and the lower bounds are
    nondecreasing.
    """
    if steps < 1:
        raise ValueError("schedule needs at least one step")
    base = adequate_truncation(system, series)
    out = [base]
    window = set(base.window)
    levels = base.levels
    for _ in range(steps - 1):
        layer = {z for y in window for z in system.fiber(y)}
        if len(window | layer) <= window_cap:
            window |= layer
        levels += 1
        out.append(TruncationParams.make(system, window, levels))
    return out


def opnorm_bracket(
    system: System, series: Series, schedule: Sequence[TruncationParams] | None = None
) -> tuple[float, SqrtSum]:
    """(best compression lower bound, l1 upper bound) for the operator norm."""
    if schedule is None:
        schedule = refinement_schedule(system, series)
    lower = 0.0
    for params in schedule:
        lower = max(lower, opnorm_lower(system, series, params))
    return lower, series.l1_norm()
