"""Approximate-unit nets, residuals, and obstruction witnesses.

For an ideal with constant levels (right case) or the difference-shift
property (left case), the net of indicator functions of window-minus-
level-0, indexed by the canonical window exhaustion, is a contractive
approximate unit; on finitely supported elements its residuals vanish
exactly once the window passes a computable finite threshold.

When a decision is negative, the failure level yields a witness: a
norm-one monomial A in the ideal such that every V in the ideal keeps
the residual at 1.  The certificate evaluates one Fourier coefficient of
the exact product; Fourier coefficients are operator-norm contractive,
so the bound is sound in the operator norm, not just in l1.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional

from .algebra import Func, Series
from .checks import CheckReport
from .dynamics import CoSet
from .errors import InvalidIdealError
from .ideals import (
    CoreSeedIdeal,
    IdealSpec,
    StableIdeal,
    active_mutation,
    contains,
    member_x_n,
)
from .scalars import ONE, SqrtSum


# -- the unit net ---------------------------------------------------------------


def unit_element(spec: IdealSpec, window: Iterable[int]) -> Series:
    """U^0(indicator of window-minus-level-0): contractive, in the ideal."""
    points = [x for x in set(window) if not member_x_n(spec, 0, x)]
    if not points:
        return Series.zero(spec.system)
    return Series.of(spec.system, {0: Func.indicator(points)})


@dataclass(frozen=True)
class UnitNet:
    """The candidate approximate unit along the canonical window exhaustion."""

    spec: IdealSpec

    def window(self, radius: int) -> tuple[int, ...]:
        return self.spec.system.canonical_window(radius)

    def element(self, radius: int) -> Series:
        return unit_element(self.spec, self.window(radius))


def _require_member(spec: IdealSpec, series: Series) -> None:
    if not contains(spec, series):
        raise InvalidIdealError("series is not in the ideal")


def residual_right(spec: IdealSpec, series: Series, window: Iterable[int]) -> SqrtSum:
    """Exact l1 norm of A*u - A for the window's unit element."""
    _require_member(spec, series)
    u = unit_element(spec, window)
    return series.mul(u).sub(series).l1_norm()


def residual_left(spec: IdealSpec, series: Series, window: Iterable[int]) -> SqrtSum:
    """Exact l1 norm of u*A - A for the window's unit element."""
    _require_member(spec, series)
    u = unit_element(spec, window)
    return u.mul(series).sub(series).l1_norm()


def min_exact_window(
    spec: IdealSpec, series: Series, side: str
) -> Optional[frozenset]:
    """Smallest window with residual exactly zero, or None if none exists.

    Right side: the union of coefficient supports - the unit must take
    the value 1 there, which is possible iff no such point lies in level
    0.  Left side: the same after pushing each degree-n support forward n
    steps.  A required point inside level 0 can never be covered (unit
    elements vanish there), so None signals that the relevant one-sided
    condition already fails on this element's support.
    """
    _require_member(spec, series)
    sys = spec.system
    if side == "right":
        required = set(series.support_points())
    elif side == "left":
        required = {
            sys.iterate(x, n) for n, f in series.items() for x in f.support
        }
    else:
        raise ValueError("side must be 'left' or 'right'")
    if any(member_x_n(spec, 0, x) for x in required):
        return None
    return frozenset(required)


# -- witnesses ---------------------------------------------------------------


@dataclass(frozen=True)
class Witness:
    """A norm-one ideal element certifying that no one-sided unit exists.

    side "right": x0 sits in level n0 but not n0+1 and the series is
    U^(n0+1) delta_x0.  side "left": x0 is outside level n0 yet its n0-th
    image lands in level 0, and the series is U^(n0) delta_x0.  The
    degenerate left case (level 0 is the whole carrier) satisfies the
    same shape vacuously.
    """

    side: str
    n0: int
    x0: int
    series: Series
    bound: Fraction = Fraction(1)
    degenerate: bool = False

    def to_record(self) -> dict:
        terms = []
        for n, f in self.series.items():
            entries = [[x, str(v.re), str(v.im)] for x, v in f.items()]
            terms.append([n, entries])
        return {
            "side": self.side,
            "n0": self.n0,
            "x0": self.x0,
            "series": terms,
            "bound": str(self.bound),
            "degenerate": self.degenerate,
        }


def _level_drops(spec: IdealSpec, scan: int) -> list[int]:
    """Indices n with level n+1 a proper subset of level n."""
    if isinstance(spec, StableIdeal):
        return [
            n
            for n in range(spec.stable_from)
            if spec.levels[n + 1] != spec.levels[n]
        ]
    if not spec.seed:
        return []
    return list(range(scan))


def witness_no_right_au(spec: IdealSpec) -> Witness:
    """The obstruction at the first level drop."""
    scan = 4
    drops = _level_drops(spec, scan)
    if not drops:
        raise InvalidIdealError("levels are constant: no right obstruction exists")
    n0 = drops[0]
    if active_mutation() == "witness-nonminimal" and len(drops) > 1:
        n0 = drops[1]
    if isinstance(spec, StableIdeal):
        x0 = spec.level(n0).difference(spec.level(n0 + 1)).min_point()
    else:
        x0 = spec.seed_translate(n0)[0]
    series = Series.monomial(spec.system, n0 + 1, x0)
    return Witness(side="right", n0=n0, x0=x0, series=series)


def _power_image_failures(spec: StableIdeal, scan: int) -> list[int]:
    """Levels n whose complement's n-th image escapes the level-0 complement."""
    target = spec.level(0).complement()
    out = []
    for n in range(scan + 1):
        img = spec.level(n).complement().image_iter(n)
        if not img.subset(target):
            out.append(n)
    return out


def witness_no_left_au(spec: IdealSpec) -> Witness:
    """The obstruction at the first power-image failure.

    When level 0 is the whole carrier the ideal kills every degree-0
    coefficient, so any monomial in the ideal is already an obstruction;
    the first non-full level supplies one (degenerate case).
    """
    if isinstance(spec, CoreSeedIdeal):
        raise InvalidIdealError("core/seed ideals always have a left unit")
    if spec.level(0).is_full:
        candidates = [
            n for n in range(spec.stable_from + 1) if not spec.level(n).is_full
        ]
        if not candidates:
            raise InvalidIdealError("zero ideal has no witness")
        n0 = candidates[0]
        if active_mutation() == "witness-nonminimal" and len(candidates) > 1:
            n0 = candidates[1]
        x0 = spec.level(n0).complement().min_point()
        series = Series.monomial(spec.system, n0, x0)
        return Witness(side="left", n0=n0, x0=x0, series=series, degenerate=True)
    scan = spec.stable_from + 2
    failures = _power_image_failures(spec, scan + 2)
    if not failures:
        raise InvalidIdealError("left-unit criterion holds: no obstruction exists")
    n0 = failures[0]
    if active_mutation() == "witness-nonminimal" and len(failures) > 1:
        n0 = failures[1]
    qualifying = spec.level(n0).complement().intersect(
        spec.level(0).preimage_iter(n0)
    )
    x0 = qualifying.min_point()
    series = Series.monomial(spec.system, n0, x0)
    return Witness(side="left", n0=n0, x0=x0, series=series)


# -- certification --------------------------------------------------------------


def certify_obstruction(spec: IdealSpec, witness: Witness, candidate: Series) -> SqrtSum:
    """Exact Fourier-coefficient lower bound for the witness residual.

    Right: |(A*V - A) coefficient at degree n0+1, point x0|; left:
    |(V*A - A) coefficient at degree n0, point x0|.  Both equal 1 for
    every V in the ideal, because the degree-0 coefficient of V vanishes
    where the construction needs it to.  Fourier coefficients are
    operator-norm contractive, so this is a sound operator-norm bound.
    """
    _require_member(spec, candidate)
    a = witness.series
    if witness.side == "right":
        diff = a.mul(candidate).sub(a)
        value = diff.fourier(witness.n0 + 1).at(witness.x0)
    else:
        diff = candidate.mul(a).sub(a)
        value = diff.fourier(witness.n0).at(witness.x0)
    return value.abs_value()


def verify_witness(
    spec: IdealSpec, witness: Witness, candidates: Iterable[Series]
) -> CheckReport:
    """Independent re-check of a witness record.

    Confirms shape (norm-one monomial in the ideal), the defining level
    geometry including minimality of n0, and, for every supplied
    candidate V in the ideal, that the certified bound is exactly 1 and
    the l1 residual is at least 1.
    """
    report = CheckReport(title=f"witness:{witness.side}")
    report.add("in-ideal", contains(spec, witness.series))
    report.add("norm-one", witness.series.l1_norm() == 1)
    report.add("bound-is-one", witness.bound == 1)
    expected_degree = witness.n0 + 1 if witness.side == "right" else witness.n0
    shape = (
        witness.series.degrees() == [expected_degree]
        and witness.series.fourier(expected_degree).items()
        == [(witness.x0, ONE)]
    )
    report.add("monomial-shape", shape)

    if witness.side == "right":
        report.add(
            "level-geometry",
            member_x_n(spec, witness.n0, witness.x0)
            and not member_x_n(spec, witness.n0 + 1, witness.x0),
        )
        minimal = not _level_drops_below(spec, witness.n0)
        report.add("n0-minimal", minimal)
    else:
        if not isinstance(spec, StableIdeal):
            report.add("stable-form", False, "left witnesses need explicit levels")
        elif witness.degenerate:
            report.add("level-geometry", not member_x_n(spec, witness.n0, witness.x0))
            report.add("level0-full", spec.level(0).is_full)
            minimal = all(
                spec.level(k).is_full for k in range(witness.n0)
            )
            report.add("n0-minimal", minimal)
        else:
            image_point = spec.system.iterate(witness.x0, witness.n0)
            report.add(
                "level-geometry",
                not member_x_n(spec, witness.n0, witness.x0)
                and member_x_n(spec, 0, image_point),
            )
            minimal = not _power_image_failures_below(spec, witness.n0)
            report.add("n0-minimal", minimal)

    for i, candidate in enumerate(candidates):
        if not contains(spec, candidate):
            report.add(f"candidate[{i}]-in-ideal", False)
            continue
        bound = certify_obstruction(spec, witness, candidate)
        report.add(f"certified[{i}]", bound == 1, f"bound={bound}")
        a = witness.series
        if witness.side == "right":
            res = a.mul(candidate).sub(a).l1_norm()
        else:
            res = candidate.mul(a).sub(a).l1_norm()
        report.add(f"l1-residual[{i}]", res >= 1, f"residual={res}")
    return report


def _level_drops_below(spec: IdealSpec, n0: int) -> list[int]:
    if isinstance(spec, StableIdeal):
        return [
            n for n in range(min(n0, spec.stable_from))
            if spec.levels[n + 1] != spec.levels[n]
        ]
    return list(range(n0)) if spec.seed else []


def _power_image_failures_below(spec: StableIdeal, n0: int) -> list[int]:
    target = spec.level(0).complement()
    return [
        n
        for n in range(n0)
        if not spec.level(n).complement().image_iter(n).subset(target)
    ]
