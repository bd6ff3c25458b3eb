"""Enumeration and cross-validation of the decision procedures.

Enumerates all small finite systems (one permutation per cycle type;
finite proper surjections are exactly permutations) and, per system, all
eventually-stable ideal descriptions within a budget, then checks every
theorem-level equivalence behaviorally:

* a yes-verdict must produce exactly-zero residuals at the computed
  finite windows for every sampled ideal element;
* a no-verdict must produce a witness whose certificate is exactly 1
  against every sampled candidate;
* the finite difference-shift criterion must agree with the bounded
  unbounded-power criterion, the two-sided decision with the direct
  characterization computed here independently, and left-unit rigidity
  (constant, invariant levels) must hold on finite systems;
* core/seed round trips must reproduce membership.

Identical budgets give byte-identical reports.  A mutation mode corrupts
one decision clause at a time to prove these checks can actually fail.
"""

from __future__ import annotations

import json
import random
from dataclasses import asdict, dataclass
from typing import Iterator

from .algebra import Func, Series
from .checks import CheckReport
from .dynamics import CoSet, System
from .errors import InvalidIdealError, ZeroIdealError
from .ideals import (
    CoreSeedIdeal,
    IdealSpec,
    StableIdeal,
    build_core_seed,
    check_power_condition,
    decide_au,
    decide_left_au,
    decide_right_au,
    decision_mutation,
    decompose_core_seed,
    member_x_n,
    validate_star,
)
from .scalars import Scalar
from .units import (
    min_exact_window,
    residual_left,
    residual_right,
    unit_element,
    verify_witness,
    witness_no_left_au,
    witness_no_right_au,
)


@dataclass(frozen=True)
class EnumBudget:
    """Bounds for the enumeration sweep; equal budgets => equal corpora."""

    max_carrier: int = 4
    max_stable_len: int = 3
    template_window: int = 8
    seed: int = 0
    sample_count: int = 25

    def __post_init__(self):
        if min(self.max_carrier, self.max_stable_len, self.template_window) < 1:
            raise ValueError("budget bounds must be positive")
        if self.sample_count < 1:
            raise ValueError("sample count must be positive")


# -- enumeration -----------------------------------------------------------------


def _partitions(n: int, cap: int | None = None) -> Iterator[tuple[int, ...]]:
    cap = n if cap is None else cap
    if n == 0:
        yield ()
        return
    for first in range(min(n, cap), 0, -1):
        for rest in _partitions(n - first, first):
            yield (first,) + rest


def permutation_from_cycle_type(cycle_type: tuple[int, ...]) -> System:
    """The canonical permutation on 0..n-1 with consecutive-block cycles."""
    mapping = {}
    start = 0
    for length in cycle_type:
        block = list(range(start, start + length))
        for i, x in enumerate(block):
            mapping[x] = block[(i + 1) % length]
        start += length
    return System.finite(mapping, carrier=range(start))


def enum_finite_systems(budget: EnumBudget) -> list[System]:
    """All permutations with carrier size 1..max_carrier, one per cycle type."""
    out = []
    for n in range(1, budget.max_carrier + 1):
        for cycle_type in _partitions(n):
            out.append(permutation_from_cycle_type(cycle_type))
    return out


def enum_stable_ideals(system: System, budget: EnumBudget) -> list[StableIdeal]:
    """All canonical stable descriptions within the budget, zero excluded.

    Canonical means the listed levels end strictly: either a single level
    or a final level different from its predecessor; the tail must be
    invariant and every step must satisfy the nesting-and-image
    condition.
    """
    if not system.is_finite:
        raise InvalidIdealError("stable enumeration runs on finite systems")
    carrier = system.carrier
    subsets = [
        frozenset(x for i, x in enumerate(carrier) if mask >> i & 1)
        for mask in range(1 << len(carrier))
    ]
    cosets = [CoSet.finite_set(system, s) for s in subsets]
    out: list[StableIdeal] = []

    def invariant(s: CoSet) -> bool:
        return s.image().subset(s)

    def extend(prefix: list[CoSet]) -> None:
        last = prefix[-1]
        if invariant(last) and (len(prefix) == 1 or last != prefix[-2]):
            spec = StableIdeal(system, tuple(prefix))
            if not all(s.is_full for s in prefix):
                out.append(spec)
        if len(prefix) < budget.max_stable_len:
            for nxt in cosets:
                if nxt.union(nxt.image()).subset(last):
                    extend(prefix + [nxt])

    for first in cosets:
        extend([first])
    return out


# -- random elements ----------------------------------------------------------------


def _random_scalar(rng: random.Random) -> Scalar:
    from fractions import Fraction

    def part():
        return Fraction(rng.randint(-3, 3), rng.choice((1, 2, 3)))

    re = part()
    im = part() if rng.random() < 0.4 else Fraction(0)
    return Scalar(re, im)


def random_series(
    system: System,
    spec: IdealSpec | None,
    budget: EnumBudget,
    rng: random.Random,
    max_degree: int | None = None,
    points: tuple[int, ...] | None = None,
) -> Series:
    """A seeded random series; with a spec, coefficients are masked so the
    result lies in the ideal by construction."""
    if max_degree is None:
        max_degree = min(2 * budget.max_stable_len, 6)
    if points is None:
        points = (
            system.carrier
            if system.is_finite
            else system.canonical_window(budget.template_window)
        )
    coeffs = {}
    for n in range(max_degree + 1):
        if rng.random() > 0.6:
            continue
        chosen = rng.sample(points, k=min(len(points), rng.randint(1, 3)))
        values = {}
        for x in chosen:
            if spec is not None and member_x_n(spec, n, x):
                continue
            values[x] = _random_scalar(rng)
        f = Func.of(values)
        if not f.is_zero():
            coeffs[n] = f
    return Series.of(system, coeffs)


def monomials_in_ideal(
    spec: IdealSpec, max_degree: int, points: tuple[int, ...]
) -> list[Series]:
    """Every U^n delta_x in the ideal with n <= max_degree, x in points."""
    out = []
    for n in range(max_degree + 1):
        for x in points:
            if not member_x_n(spec, n, x):
                out.append(Series.monomial(spec.system, n, x))
    return out


# -- the crosscheck ------------------------------------------------------------------


@dataclass
class CrosscheckReport:
    budget: EnumBudget
    mutation: str | None
    cases: list[dict]

    @property
    def disagreements(self) -> list[dict]:
        out = []
        for case in self.cases:
            for check in case["checks"]:
                if not check["pass"]:
                    out.append({"case": case["case"], "check": check["name"]})
        return out

    @property
    def ok(self) -> bool:
        return not self.disagreements

    def to_dict(self) -> dict:
        return {
            "schema": "semicrossed.crosscheck/1",
            "budget": asdict(self.budget),
            "mutation": self.mutation,
            "cases": self.cases,
            "summary": {
                "cases": len(self.cases),
                "checks": sum(len(c["checks"]) for c in self.cases),
                "disagreements": len(self.disagreements),
            },
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2)

    def render_text(self) -> str:
        lines = []
        for case in self.cases:
            bad = [c for c in case["checks"] if not c["pass"]]
            status = "ok" if not bad else "DISAGREE"
            lines.append(f"[{status}] {case['case']} ({len(case['checks'])} checks)")
            for c in bad:
                lines.append(f"    FAIL {c['name']}" + (f": {c['detail']}" if c.get("detail") else ""))
        d = self.disagreements
        lines.append(f"cases: {len(self.cases)}, disagreements: {len(d)}")
        return "\n".join(lines)


def _direct_two_sided(spec: IdealSpec) -> bool:
    """Constant levels with invariant complement, computed independently
    of the decision module's conjunction."""
    if isinstance(spec, CoreSeedIdeal):
        return not spec.seed
    constant = all(s == spec.levels[0] for s in spec.levels)
    comp = spec.levels[0].complement()
    return constant and comp.image() == comp


def _case_points(system: System, budget: EnumBudget) -> tuple[int, ...]:
    if system.is_finite:
        return system.carrier
    return system.canonical_window(budget.template_window)


def _scan_degree(spec: IdealSpec) -> int:
    if isinstance(spec, StableIdeal):
        return spec.stable_from + 2
    return 3


def check_case(
    system: System, spec: IdealSpec, budget: EnumBudget, case_key: str
) -> CheckReport:
    """All cross-validation checks for one (system, ideal) pair."""
    report = CheckReport(title=case_key)
    rng = random.Random(f"{budget.seed}:{case_key}")
    points = _case_points(system, budget)
    samples = [
        random_series(system, spec, budget, rng) for _ in range(budget.sample_count)
    ]
    monos = monomials_in_ideal(spec, _scan_degree(spec), points)
    elements = samples + monos
    unit_candidates = [unit_element(spec, system.canonical_window(r)) for r in (1, 4)]

    report.add("star-valid", validate_star(spec).ok)

    right = decide_right_au(spec)
    left = decide_left_au(spec)

    for side, decision, residual in (
        ("right", right, residual_right),
        ("left", left, residual_left),
    ):
        if decision.verdict:
            ok, detail = True, ""
            for a in elements:
                window = min_exact_window(spec, a, side)
                if window is None:
                    ok, detail = False, f"no finite window for {a}"
                    break
                if residual(spec, a, window) != 0:
                    ok, detail = False, f"nonzero residual for {a}"
                    break
            report.add(f"{side}-behavioral-exact", ok, detail)
        else:
            witness = (
                witness_no_right_au(spec)
                if side == "right"
                else witness_no_left_au(spec)
            )
            wrep = verify_witness(spec, witness, samples + unit_candidates)
            detail = "; ".join(i.name for i in wrep.failures())
            report.add(f"{side}-witness-verified", wrep.ok, detail)

    if isinstance(spec, StableIdeal):
        n_max = max(10, 2 * spec.stable_from + 4)
        power_ok = check_power_condition(spec, n_max).ok
        report.add(
            "power-vs-difference-shift",
            power_ok == left.verdict,
            f"power={power_ok}, difference-shift={left.verdict}",
        )

    try:
        two_sided = decide_au(spec).verdict
    except AssertionError as exc:
        report.add("two-sided-consistent", False, str(exc))
    else:
        expected = right.verdict and left.verdict
        direct = _direct_two_sided(spec)
        report.add(
            "two-sided-consistent",
            two_sided == expected == direct,
            f"conjunction={expected}, direct={direct}, decided={two_sided}",
        )

    if left.verdict and isinstance(spec, StableIdeal):
        constant = all(s == spec.levels[0] for s in spec.levels)
        lvl = spec.levels[0]
        rigid = (
            constant
            and lvl.image() == lvl
            and lvl.complement().image() == lvl.complement()
        )
        report.add("left-rigidity", rigid)

    if system.is_finite:
        report.add(
            "left-implies-right-on-permutations",
            (not left.verdict) or right.verdict,
        )

    if left.verdict and system.is_homeomorphism and system.has_hitting_oracle:
        try:
            core, seed = decompose_core_seed(spec)
            rebuilt = build_core_seed(system, core, seed)
            scan = 2 * _scan_degree(spec) + 1
            agree = all(
                member_x_n(spec, n, x) == member_x_n(rebuilt, n, x)
                for n in range(scan)
                for x in system.canonical_window(min(budget.template_window, 8))
            )
            report.add("core-seed-roundtrip", agree)
        except (InvalidIdealError, AssertionError) as exc:
            report.add("core-seed-roundtrip", False, str(exc))

    return report


def _zero_probe(system: System) -> CheckReport:
    report = CheckReport(title="zero-ideal-probe")
    spec = StableIdeal.of(system, [CoSet.full(system)])
    for name, decide in (("right", decide_right_au), ("left", decide_left_au)):
        try:
            decide(spec)
        except ZeroIdealError:
            report.add(f"zero-rejected-{name}", True)
        else:
            report.add(f"zero-rejected-{name}", False, "decision ran on the zero ideal")
    return report


def template_suite_cases(budget: EnumBudget) -> list[tuple[str, object]]:
    """Fixed template systems and ideal descriptions, including seeds and
    cores that must be rejected (non-invariant core; colliding seed)."""
    shift = System.from_template("shift")
    doubling = System.from_template("doubling")
    e = CoSet.empty
    cases: list[tuple[str, object]] = []

    def stable(sys, *levels):
        return StableIdeal.of(sys, [CoSet.finite_set(sys, s) for s in levels])

    cases.append(("valid", stable(shift, [0], [])))
    cases.append(("valid", stable(shift, [])))
    cases.append(("valid", stable(doubling, [0, -1])))
    cases.append(("valid", stable(doubling, [0, -1], [])))
    cases.append(("valid", stable(doubling, [])))
    cases.append(
        (
            "valid",
            StableIdeal.of(
                doubling,
                [CoSet.cofinite_set(doubling, [2, 3]), CoSet.finite_set(doubling, [0, -1])],
            ),
        )
    )
    cases.append(("build", (shift, e(shift), (0,))))
    cases.append(("build", (shift, e(shift), (5,))))
    cases.append(("build", (shift, e(shift), ())))
    cases.append(("reject", (shift, e(shift), (0, 5))))
    cases.append(("reject", (shift, CoSet.cofinite_set(shift, [0, 1, 2]), (5,))))
    cases.append(("reject", (doubling, e(doubling), (0,))))
    cases.append(("invalid-stable", stable(shift, [0])))
    return cases


def crosscheck(budget: EnumBudget, mutation: str | None = None) -> CrosscheckReport:
    """The full sweep; exit-code friendly via `.ok`."""
    if mutation is not None:
        with decision_mutation(mutation):
            return _crosscheck_body(budget, mutation)
    return _crosscheck_body(budget, None)


def _crosscheck_body(budget: EnumBudget, mutation: str | None) -> CrosscheckReport:
    entries: list[tuple[str, CheckReport]] = []

    for system in enum_finite_systems(budget):
        skey = system.describe()
        entries.append((f"{skey}|zero-probe", _zero_probe(system)))
        for spec in enum_stable_ideals(system, budget):
            key = f"{skey}|{spec.describe()}"
            entries.append((key, check_case(system, spec, budget, key)))

    for kind, payload in template_suite_cases(budget):
        if kind == "valid":
            spec = payload
            key = f"{spec.system.describe()}|{spec.describe()}"
            entries.append((key, check_case(spec.system, spec, budget, key)))
        elif kind == "build":
            system, core, seed = payload
            spec = build_core_seed(system, core, seed)
            key = f"{system.describe()}|{spec.describe()}"
            entries.append((key, check_case(system, spec, budget, key)))
        elif kind == "reject":
            system, core, seed = payload
            key = (
                f"{system.describe()}|reject-core-seed:"
                f"{core.describe()};{tuple(sorted(seed))}"
            )
            report = CheckReport(title=key)
            try:
                build_core_seed(system, core, seed)
                report.add("expected-rejection", False, "construction succeeded")
            except InvalidIdealError as exc:
                report.add("expected-rejection", True, str(exc))
            entries.append((key, report))
        else:  # invalid-stable
            spec = payload
            key = f"{spec.system.describe()}|invalid:{spec.describe()}"
            report = CheckReport(title=key)
            report.add("expected-star-failure", not validate_star(spec).ok)
            entries.append((key, report))

    for system in (System.from_template("shift"), System.from_template("doubling")):
        entries.append((f"{system.describe()}|zero-probe", _zero_probe(system)))

    entries.sort(key=lambda kv: kv[0])
    cases = [
        {"case": key, "checks": [item.to_dict() for item in rep.items]}
        for key, rep in entries
    ]
    return CrosscheckReport(budget=budget, mutation=mutation, cases=cases)
