"""Ideal descriptions and the approximate-unit decision procedures.

A closed two-sided ideal of the algebra is described by a nested sequence
of level sets L_0 >= L_1 >= ... with L_(n+1) united with phi(L_(n+1))
inside L_n; the ideal consists of the series whose degree-n coefficient
vanishes on L_n.  Two descriptions are supported:

* StableIdeal: an explicit eventually-constant sequence of CoSets.
* CoreSeedIdeal: on homeomorphism systems, the lazy sequence
  L_n = core u (union over k >= n of phi^-k(seed)) for a phi-invariant
  core and a finite "wandering" seed whose backward translates are
  pairwise disjoint and never meet the core.  Levels are never
  materialized; membership goes through the forward hitting oracle.

Decision rules (each returns a Decision carrying re-checkable evidence):

* right approximate unit  <=>  all levels are equal;
* left approximate unit   <=>  phi maps the complement of L_1 onto the
  complement of L_0 and each difference L_(n+1) \\ L_(n+2) onto
  L_n \\ L_(n+1)  (the "difference shift" condition, a finite check on
  stable sequences; core/seed descriptions satisfy it by construction);
* two-sided approximate unit  <=>  both, equivalently: constant levels
  with phi-invariant complement;
* M-ideal (compact carrier only)  <=>  two-sided approximate unit.

An equivalent unbounded-power form of the left criterion - level-0
complement is exactly the n-th image of every level-n complement - is
kept as `check_power_condition` for bounded cross-validation only.

The mutation hooks deliberately corrupt single clauses so the harness
can prove its cross-checks are not vacuous; they are never active
outside `decision_mutation`.
"""

from __future__ import annotations

import contextlib
from dataclasses import dataclass, field
from typing import Iterable, Union

from .algebra import Series
from .checks import CheckReport
from .dynamics import CoSet, System
from .errors import (
    CapabilityError,
    InvalidIdealError,
    NotCompactError,
    ZeroIdealError,
)

# -- mutation hooks (test instrumentation) -----------------------------------

_MUTATION: str | None = None

MUTATIONS = (
    "difference-shift-superset",  # weaken clause equalities to containment
    "witness-nonminimal",         # witnesses pick a later failing level
    "skip-zero-guard",            # drop the non-zero-ideal hypothesis check
)


@contextlib.contextmanager
def decision_mutation(name: str):
    """Temporarily corrupt one decision clause (harness sanity checks)."""
    global _MUTATION
    if name not in MUTATIONS:
        raise ValueError(f"unknown mutation {name!r}; known: {MUTATIONS}")
    prev = _MUTATION
    _MUTATION = name
    try:
        yield
    finally:
        _MUTATION = prev


def active_mutation() -> str | None:
    return _MUTATION


# -- ideal descriptions --------------------------------------------------------


@dataclass(frozen=True)
class StableIdeal:
    """Levels L_0..L_m as CoSets, constant from index m on.

    Constructed via `of`, which drops repeated trailing levels so equal
    ideals get equal descriptions.
    """

    system: System
    levels: tuple[CoSet, ...]

    @staticmethod
    def of(system: System, levels: Iterable[CoSet]) -> "StableIdeal":
        lv = tuple(levels)
        if not lv:
            raise InvalidIdealError("at least one level set is required")
        for s in lv:
            if s.system != system:
                raise InvalidIdealError("level sets must live on the given system")
        while len(lv) > 1 and lv[-1] == lv[-2]:
            lv = lv[:-1]
        return StableIdeal(system, lv)

    @property
    def stable_from(self) -> int:
        return len(self.levels) - 1

    def level(self, n: int) -> CoSet:
        return self.levels[min(n, self.stable_from)]

    def describe(self) -> str:
        return "stable:" + ";".join(s.describe() for s in self.levels)


@dataclass(frozen=True)
class CoreSeedIdeal:
    """Lazy levels over a homeomorphism: invariant core plus wandering seed."""

    system: System
    core: CoSet
    seed: tuple[int, ...]

    @staticmethod
    def of(system: System, core: CoSet, seed: Iterable[int]) -> "CoreSeedIdeal":
        if core.system != system:
            raise InvalidIdealError("core must live on the given system")
        return CoreSeedIdeal(system, core, tuple(system.sort_points(set(seed))))

    def seed_translate(self, n: int) -> tuple[int, ...]:
        """phi^-n(seed) as explicit points (the n-th level difference)."""
        pts = list(self.seed)
        for _ in range(n):
            pts = [self.system.inverse(x) for x in pts]
        return tuple(self.system.sort_points(pts))

    def describe(self) -> str:
        seed = " ".join(str(x) for x in sorted(self.seed))
        return f"core-seed:{self.core.describe()};{{{seed}}}"


IdealSpec = Union[StableIdeal, CoreSeedIdeal]


@dataclass(frozen=True)
class Decision:
    """A verdict plus machine-checkable evidence.

    For yes: a unit recipe (how to build the approximate unit along the
    canonical window exhaustion).  For no: the obstruction witness record
    and, where applicable, the failed clause.
    """

    verdict: bool
    rule: str
    evidence: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "verdict": "yes" if self.verdict else "no",
            "rule": self.rule,
            "evidence": self.evidence,
        }


# -- membership ---------------------------------------------------------------


def member_x_n(spec: IdealSpec, n: int, x: int) -> bool:
    """Is x in the n-th level set?"""
    if n < 0:
        raise ValueError("level index must be nonnegative")
    if isinstance(spec, StableIdeal):
        return spec.level(n).member(x)
    if spec.core.member(x):
        return True
    return bool(spec.system.hitting_times(x, spec.seed, n_min=n))


def is_zero_ideal(spec: IdealSpec) -> bool:
    """True when every level is the whole carrier (the ideal is {0})."""
    if isinstance(spec, StableIdeal):
        return all(s.is_full for s in spec.levels)
    return spec.core.is_full and not spec.seed


def contains(spec: IdealSpec, series: Series) -> bool:
    """Does every coefficient vanish on its level set?"""
    if series.system != spec.system:
        raise InvalidIdealError("series and ideal live on different systems")
    for n, f in series.items():
        for x in f.support:
            if member_x_n(spec, n, x):
                return False
    return True


# -- validation ----------------------------------------------------------------


def validate_star(spec: IdealSpec, k_budget: int = 64) -> CheckReport:
    """Check that the description actually defines an ideal.

    Stable form: the nesting-and-image condition level by level, plus
    invariance of the stable tail.  Core/seed form: the core is exactly
    phi-invariant, the seed avoids the core (invariance then covers every
    translate), and no seed point ever returns to the seed.  With an
    exact hitting oracle the wandering check is exact; otherwise it walks
    forward k_budget steps and says so.
    """
    report = CheckReport(title=spec.describe())
    if isinstance(spec, StableIdeal):
        m = spec.stable_from
        for n in range(m):
            nxt = spec.levels[n + 1]
            ok = nxt.union(nxt.image()).subset(spec.levels[n])
            report.add(f"nesting-and-image[{n}]", ok)
        tail = spec.levels[m]
        report.add("tail-invariant", tail.image().subset(tail))
        return report

    sys = spec.system
    report.add("homeomorphism", sys.is_homeomorphism)
    report.add("membership-oracle", sys.has_hitting_oracle)
    if not report.ok:
        return report
    report.add("core-invariant", spec.core.image() == spec.core)
    outside = [w for w in spec.seed if spec.core.member(w)]
    report.add(
        "seed-avoids-core",
        not outside,
        "" if not outside else f"seed points inside the core: {outside}",
    )
    for w in spec.seed:
        try:
            returns = sys.hitting_times(w, spec.seed, n_min=1)
            report.add(
                f"seed-wandering[{w}]",
                not returns,
                "" if not returns else f"returns to the seed at steps {returns}",
            )
        except CapabilityError as exc:
            report.add(f"seed-wandering[{w}]", False, str(exc))
    return report


def _require_decidable(spec: IdealSpec) -> None:
    report = validate_star(spec)
    if not report.ok:
        bad = ", ".join(item.name for item in report.failures())
        raise InvalidIdealError(f"not a valid ideal description: {bad}")
    if _MUTATION != "skip-zero-guard" and is_zero_ideal(spec):
        raise ZeroIdealError("decision procedures require a non-zero ideal")


# -- decisions -------------------------------------------------------------------


def _unit_recipe(spec: IdealSpec, side: str) -> dict:
    return {
        "kind": "unit-recipe",
        "side": side,
        "construction": "indicators of window-minus-level-0 along the "
        "canonical window exhaustion",
    }


def _witness_evidence(witness) -> dict:
    return {"kind": "witness", **witness.to_record()}


def decide_right_au(spec: IdealSpec) -> Decision:
    """Right approximate unit  <=>  the level sequence is constant."""
    _require_decidable(spec)
    if isinstance(spec, StableIdeal):
        constant = all(s == spec.levels[0] for s in spec.levels)
    else:
        constant = not spec.seed
    if constant:
        return Decision(True, "right-unit:constant-levels", _unit_recipe(spec, "right"))
    from .units import witness_no_right_au

    witness = witness_no_right_au(spec)
    return Decision(False, "right-unit:level-drop", _witness_evidence(witness))


def _difference_shift_report(spec: StableIdeal) -> CheckReport:
    """The finite left-unit criterion on a stable sequence.

    Clause 0: phi maps the complement of L_1 onto the complement of L_0.
    Clause n+1: phi maps L_(n+1) \\ L_(n+2) onto L_n \\ L_(n+1).  Beyond
    the stable index both sides are empty.
    """
    report = CheckReport(title="difference-shift")
    mutated = _MUTATION == "difference-shift-superset"

    def clause(lhs: CoSet, rhs: CoSet) -> bool:
        if mutated:
            return rhs.subset(lhs)
        return lhs == rhs

    img = spec.level(1).complement().image()
    target = spec.level(0).complement()
    report.add(
        "complement-onto[0]",
        clause(img, target),
        f"phi(~L1)={img.describe()} vs ~L0={target.describe()}",
    )
    for n in range(spec.stable_from):
        lhs = spec.level(n + 1).difference(spec.level(n + 2)).image()
        rhs = spec.level(n).difference(spec.level(n + 1))
        report.add(
            f"difference-onto[{n}]",
            clause(lhs, rhs),
            f"phi(L{n + 1}\\L{n + 2})={lhs.describe()} vs "
            f"L{n}\\L{n + 1}={rhs.describe()}",
        )
    return report


def decide_left_au(spec: IdealSpec) -> Decision:
    """Left approximate unit via the finite difference-shift criterion."""
    _require_decidable(spec)
    if isinstance(spec, CoreSeedIdeal):
        # Validity of the core/seed invariants is exactly the criterion.
        return Decision(
            True, "left-unit:core-seed-form", _unit_recipe(spec, "left")
        )
    report = _difference_shift_report(spec)
    if report.ok:
        return Decision(True, "left-unit:difference-shift", _unit_recipe(spec, "left"))
    from .units import witness_no_left_au

    witness = witness_no_left_au(spec)
    first_fail = report.failures()[0]
    evidence = _witness_evidence(witness)
    evidence["failed-clause"] = {"name": first_fail.name, "detail": first_fail.detail}
    return Decision(False, "left-unit:difference-shift-failure", evidence)


def check_power_condition(spec: StableIdeal, n_max: int) -> CheckReport:
    """Bounded check of the unbounded-power form of the left criterion.

    Verifies that level 0 is a proper subset of the carrier and that the
    n-th image of every level-n complement equals the level-0 complement,
    for n up to n_max.  Cross-validation only; decisions go through the
    finite difference-shift criterion.
    """
    if not isinstance(spec, StableIdeal):
        raise InvalidIdealError("the power condition needs explicit level sets")
    report = CheckReport(title="power-condition")
    if _MUTATION != "skip-zero-guard":
        report.add("level0-proper", not spec.level(0).is_full)
    target = spec.level(0).complement()
    for n in range(n_max + 1):
        img = spec.level(n).complement().image_iter(n)
        report.add(f"power-image[{n}]", img == target)
    return report


def decide_au(spec: IdealSpec) -> Decision:
    """Two-sided approximate unit: both one-sided decisions, cross-checked
    against the direct characterization (constant levels, invariant
    complement)."""
    right = decide_right_au(spec)
    left = decide_left_au(spec)
    both = right.verdict and left.verdict
    if isinstance(spec, StableIdeal):
        constant = all(s == spec.levels[0] for s in spec.levels)
        comp = spec.level(0).complement()
        direct = constant and comp.image() == comp
    else:
        direct = not spec.seed
    if _MUTATION is None and direct != both:
        raise AssertionError(
            "one-sided decisions disagree with the direct two-sided "
            f"characterization on {spec.describe()}"
        )
    evidence = {
        "right": {"verdict": right.verdict, "rule": right.rule},
        "left": {"verdict": left.verdict, "rule": left.rule},
        "direct-conditions": direct,
    }
    if not right.verdict:
        evidence["right-witness"] = right.evidence
    if not left.verdict:
        evidence["left-witness"] = left.evidence
    if both:
        evidence.update(_unit_recipe(spec, "two-sided"))
    return Decision(both, "two-sided:conjunction", evidence)


def decide_m_ideal(spec: IdealSpec) -> Decision:
    """M-ideal status, defined on compact (finite) carriers only, where it
    coincides with having a two-sided approximate unit."""
    if not spec.system.is_finite:
        raise NotCompactError("carrier not compact: M-ideal decision undefined")
    inner = decide_au(spec)
    return Decision(inner.verdict, "m-ideal:via-approximate-unit", inner.evidence)


# -- core/seed decomposition -----------------------------------------------------


def build_core_seed(
    system: System, core: CoSet, seed: Iterable[int], k_budget: int = 64
) -> CoreSeedIdeal:
    """Validated construction of a core/seed description.

    Raises InvalidIdealError with the failing invariant; the zero ideal
    (full core) is constructible but flagged by decision preconditions.
    """
    spec = CoreSeedIdeal.of(system, core, seed)
    report = validate_star(spec, k_budget=k_budget)
    if not report.ok:
        bad = "; ".join(
            f"{item.name}" + (f": {item.detail}" if item.detail else "")
            for item in report.failures()
        )
        raise InvalidIdealError(f"core/seed invariants fail: {bad}")
    return spec


def decompose_core_seed(
    spec: IdealSpec, check_window: int = 8
) -> tuple[CoSet, tuple[int, ...]]:
    """Invariant core and wandering seed of a left-unit ideal.

    The core is the stable tail (equivalently the intersection of all
    levels), the seed is the 0/1 level difference, which must be finite.
    The reconstruction is spot-checked for membership agreement on a
    canonical window before returning.
    """
    if not spec.system.is_homeomorphism:
        raise CapabilityError("core/seed decomposition requires a homeomorphism")
    if not decide_left_au(spec).verdict:  # pragma: no cover - guarded by callers
        raise InvalidIdealError("core/seed decomposition requires a left unit")
    if isinstance(spec, CoreSeedIdeal):
        return spec.core, spec.seed
    core = spec.levels[-1]
    diff = spec.level(0).difference(spec.level(1))
    if diff.cofinite:
        raise InvalidIdealError("level difference is not finite: no finite seed")
    seed = tuple(spec.system.sort_points(diff.points))
    rebuilt = build_core_seed(spec.system, core, seed)
    window = spec.system.canonical_window(check_window)
    for n in range(2 * spec.stable_from + 5):
        for x in window:
            if member_x_n(spec, n, x) != member_x_n(rebuilt, n, x):
                raise AssertionError(
                    f"core/seed reconstruction disagrees at level {n}, point {x}"
                )
    return core, seed
