"""Discrete dynamical systems and the finite/cofinite subset algebra.

A system is a countable discrete carrier X together with a proper
surjection phi: every fiber phi^-1(x) is finite and nonempty.  Finite
systems are given by an explicit map (surjective iff a permutation);
infinite systems come from registered templates over the integers, such
as the shift n -> n+1 and the halving map n -> floor(n/2).

Subsets are represented in the finite/cofinite algebra, which is closed
under Boolean operations and under phi-images and phi-preimages for any
proper surjection with computable fibers.  On finite carriers the
cofinite mode normalizes away, so equality is structural.

Points are plain integers.  The canonical point order is declaration
order on finite carriers and the spiral 0, 1, -1, 2, -2, ... on integer
templates; the spiral is a well-order, so even cofinite sets have a
canonical least element (used for deterministic witness tie-breaking).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Callable, Iterable, Iterator, Optional

from .checks import CheckReport
from .errors import (
    CapabilityError,
    CarrierError,
    IterationBudgetError,
    SystemMismatchError,
)

DEFAULT_ITERATION_BUDGET = 10**6


# ---------------------------------------------------------------------------
# Templates
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class TemplateDef:
    """An infinite system over the integers with attested properties.

    `hitting(x, targets, n_min)` must return the exact, finite, sorted list
    of all k >= n_min with phi^k(x) in targets, or raise CapabilityError
    when that set is infinite.  Templates without an exact hitting rule
    should leave it None; there is no sound generic fallback on carriers
    with non-recurrent orbits.
    """

    name: str
    apply: Callable[[int], int]
    fiber: Callable[[int], tuple[int, ...]]
    homeomorphism: bool
    inverse: Optional[Callable[[int], int]] = None
    hitting: Optional[Callable[[int, frozenset, int], list[int]]] = None
    backward_hitting: Optional[Callable[[int, frozenset, int], list[int]]] = None
    description: str = ""


_TEMPLATES: dict[str, TemplateDef] = {}


def register_template(template: TemplateDef) -> None:
    if template.name in _TEMPLATES:
        raise ValueError(f"template {template.name!r} already registered")
    _TEMPLATES[template.name] = template


def template_names() -> tuple[str, ...]:
    return tuple(sorted(_TEMPLATES))


def _shift_hitting(x: int, targets: frozenset, n_min: int) -> list[int]:
    return sorted(w - x for w in targets if w - x >= n_min)


def _shift_backward_hitting(x: int, targets: frozenset, n_min: int) -> list[int]:
    return sorted(x - w for w in targets if x - w >= n_min)


def _halving_hitting(x: int, targets: frozenset, n_min: int) -> list[int]:
    # Orbits reach the fixed point 0 (x >= 0) or -1 (x < 0) in O(log|x|)
    # steps; a hit at the fixed point recurs forever.
    hits = []
    k, y = 0, x
    while True:
        if y in targets:
            if y == y // 2:
                raise CapabilityError(
                    f"orbit of {x} is eventually fixed at {y}, which lies in "
                    "the target: the hitting-time set is infinite"
                )
            if k >= n_min:
                hits.append(k)
        if y == y // 2:
            return hits
        y //= 2
        k += 1


register_template(
    TemplateDef(
        name="shift",
        apply=lambda x: x + 1,
        fiber=lambda x: (x - 1,),
        homeomorphism=True,
        inverse=lambda x: x - 1,
        hitting=_shift_hitting,
        backward_hitting=_shift_backward_hitting,
        description="translation n -> n+1 on the integers",
    )
)

register_template(
    TemplateDef(
        name="doubling",
        apply=lambda x: x // 2,
        fiber=lambda x: (2 * x, 2 * x + 1),
        homeomorphism=False,
        hitting=_halving_hitting,
        description="floor halving n -> n//2 on the integers (two-point fibers)",
    )
)


# ---------------------------------------------------------------------------
# Systems
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class System:
    """A discrete dynamical system (X, phi).

    Either `finite` with an explicit carrier (declaration order matters
    for canonical tie-breaking) and image tuple aligned with it, or
    `template` referring to a registered integer template.
    """

    kind: str
    carrier: tuple[int, ...] = ()
    images: tuple[int, ...] = ()
    template: str = ""

    @staticmethod
    def finite(mapping: dict[int, int], carrier: Iterable[int] | None = None) -> "System":
        pts = tuple(carrier) if carrier is not None else tuple(sorted(mapping))
        if len(set(pts)) != len(pts):
            raise CarrierError("carrier contains duplicate points")
        if set(pts) != set(mapping):
            raise CarrierError("map must be total on the carrier and nothing else")
        images = tuple(mapping[x] for x in pts)
        for y in images:
            if y not in mapping:
                raise CarrierError(f"map sends a point to {y}, outside the carrier")
        return System(kind="finite", carrier=pts, images=images)

    @staticmethod
    def from_template(name: str) -> "System":
        if name not in _TEMPLATES:
            raise CarrierError(f"unknown template {name!r}; known: {template_names()}")
        return System(kind="template", template=name)

    # -- structure ---------------------------------------------------------

    @property
    def is_finite(self) -> bool:
        return self.kind == "finite"

    @cached_property
    def _map(self) -> dict[int, int]:
        return dict(zip(self.carrier, self.images))

    @cached_property
    def _fibers(self) -> dict[int, tuple[int, ...]]:
        fibers: dict[int, list[int]] = {x: [] for x in self.carrier}
        for x in self.carrier:
            fibers[self._map[x]].append(x)
        return {x: tuple(v) for x, v in fibers.items()}

    @cached_property
    def _template_def(self) -> TemplateDef:
        return _TEMPLATES[self.template]

    @property
    def is_homeomorphism(self) -> bool:
        if self.is_finite:
            return len(set(self.images)) == len(self.images)
        return self._template_def.homeomorphism

    @property
    def has_hitting_oracle(self) -> bool:
        return self.is_finite or self._template_def.hitting is not None

    def describe(self) -> str:
        if self.is_finite:
            arrows = ",".join(f"{x}>{self._map[x]}" for x in self.carrier)
            return f"finite:{arrows}"
        return f"template:{self.template}"

    # -- the map -----------------------------------------------------------

    def _check_point(self, x: int) -> None:
        if self.is_finite and x not in self._map:
            raise CarrierError(f"point {x} outside carrier {self.carrier}")

    def apply(self, x: int) -> int:
        self._check_point(x)
        if self.is_finite:
            return self._map[x]
        return self._template_def.apply(x)

    def iterate(self, x: int, n: int) -> int:
        if n < 0:
            raise ValueError("iteration count must be nonnegative")
        self._check_point(x)
        for _ in range(n):
            x = self.apply(x)
        return x

    def fiber(self, x: int) -> tuple[int, ...]:
        self._check_point(x)
        if self.is_finite:
            return self._fibers.get(x, ())
        return tuple(sorted(self._template_def.fiber(x)))

    def inverse(self, x: int) -> int:
        if not self.is_homeomorphism:
            raise CapabilityError("inverse map requires a homeomorphism")
        fib = self.fiber(x)
        if len(fib) != 1:
            raise CapabilityError(f"fiber of {x} is not a singleton: {fib}")
        return fib[0]

    # -- hitting times -----------------------------------------------------

    def hitting_times(
        self,
        x: int,
        targets: Iterable[int],
        n_min: int = 0,
        budget: int = DEFAULT_ITERATION_BUDGET,
    ) -> list[int]:
        """All k >= n_min with phi^k(x) in targets; exact and finite.

        Raises CapabilityError when the set is provably infinite (the
        orbit recurs through the targets) or when no exact rule exists;
        IterationBudgetError when a walk exceeds its budget undecided.
        """
        w = frozenset(targets)
        self._check_point(x)
        if not self.is_finite:
            rule = self._template_def.hitting
            if rule is None:
                raise CapabilityError(
                    f"template {self.template!r} has no forward-hitting oracle"
                )
            return rule(x, w, n_min)
        # Finite carrier: the orbit is eventually periodic, so walk with
        # first-visit bookkeeping.  A hit inside the cycle recurs forever.
        first_visit: dict[int, int] = {}
        hits = []
        k, y = 0, x
        while y not in first_visit:
            if k > budget:
                raise IterationBudgetError(f"orbit walk exceeded {budget} steps")
            first_visit[y] = k
            if y in w:
                hits.append(k)
            y = self.apply(y)
            k += 1
        cycle_start = first_visit[y]
        if any(h >= cycle_start for h in hits):
            raise CapabilityError(
                f"orbit of {x} meets the target inside its cycle: the "
                "hitting-time set is infinite"
            )
        return [h for h in hits if h >= n_min]

    def backward_hitting_times(
        self, x: int, targets: Iterable[int], n_min: int = 0
    ) -> list[int]:
        """All k >= n_min with phi^-k(x) in targets (homeomorphisms only)."""
        if not self.is_homeomorphism:
            raise CapabilityError("backward hitting requires a homeomorphism")
        w = frozenset(targets)
        if not self.is_finite:
            rule = self._template_def.backward_hitting
            if rule is None:
                raise CapabilityError(
                    f"template {self.template!r} has no backward-hitting oracle"
                )
            return rule(x, w, n_min)
        # A permutation's backward orbit is the full cycle through x, so
        # any hit at all recurs forever.
        seen = set()
        y = x
        while y not in seen:
            seen.add(y)
            if y in w:
                raise CapabilityError(
                    f"backward orbit of {x} is periodic through the target: "
                    "the hitting-time set is infinite"
                )
            y = self.inverse(y)
        return []

    # -- canonical order and windows ----------------------------------------

    def point_key(self, x: int):
        if self.is_finite:
            self._check_point(x)
            return self.carrier.index(x)
        return (abs(x), 0 if x >= 0 else 1)

    def sort_points(self, points: Iterable[int]) -> list[int]:
        return sorted(points, key=self.point_key)

    def enumerate_carrier(self) -> Iterator[int]:
        """Points in canonical order (infinite generator on templates)."""
        if self.is_finite:
            yield from self.carrier
            return
        yield 0
        r = 1
        while True:
            yield r
            yield -r
            r += 1

    def canonical_window(self, radius: int) -> tuple[int, ...]:
        """The canonical finite window of the given radius.

        Templates: all integers with |x| <= radius, spiral order.  Finite
        systems: the first radius+1 carrier points in declaration order
        (the whole carrier once radius is large enough).
        """
        if radius < 0:
            return ()
        if self.is_finite:
            return self.carrier[: radius + 1]
        out = [0]
        for r in range(1, radius + 1):
            out += [r, -r]
        return tuple(out)

    # -- validation ----------------------------------------------------------

    def validate(self, window_radius: int = 8) -> CheckReport:
        report = CheckReport(title=f"system {self.describe()}")
        if self.is_finite:
            missing = [x for x in self.carrier if not self._fibers.get(x)]
            report.add(
                "surjective",
                not missing,
                "" if not missing else f"no preimage for {missing}",
            )
            report.add("proper", True, "finite carrier: all fibers finite")
            if self.is_homeomorphism:
                bad = [x for x in self.carrier if len(self.fiber(x)) != 1]
                report.add("injective", not bad)
            return report
        window = self.canonical_window(window_radius)
        bad_surj = []
        bad_fiber = []
        bad_homeo = []
        for y in window:
            fib = self.fiber(y)
            if not fib:
                bad_surj.append(y)
            if any(self.apply(x) != y for x in fib):
                bad_fiber.append(y)
            if self.is_homeomorphism and len(fib) != 1:
                bad_homeo.append(y)
        report.add(
            "surjective-on-window",
            not bad_surj,
            "" if not bad_surj else f"empty fiber at {bad_surj}",
        )
        report.add(
            "fibers-consistent",
            not bad_fiber,
            "" if not bad_fiber else f"fiber members not mapping back at {bad_fiber}",
        )
        if self.is_homeomorphism:
            report.add(
                "homeomorphism-fibers-singleton",
                not bad_homeo,
                "" if not bad_homeo else f"fiber size != 1 at {bad_homeo}",
            )
            inv_bad = [
                y for y in window if self.apply(self.inverse(y)) != y
            ]
            report.add("inverse-consistent", not inv_bad)
        return report


def same_system(a: System, b: System) -> None:
    if a != b:
        raise SystemMismatchError(
            f"values belong to different systems: {a.describe()} vs {b.describe()}"
        )


# ---------------------------------------------------------------------------
# Finite/cofinite sets
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CoSet:
    """A finite or cofinite subset of the carrier, in canonical form.

    `points` lists the members (finite mode) or the non-members (cofinite
    mode).  On finite carriers the cofinite mode normalizes to finite, so
    structural equality is set equality.
    """

    system: System
    cofinite: bool
    points: frozenset

    @staticmethod
    def make(system: System, cofinite: bool, points: Iterable[int]) -> "CoSet":
        pts = frozenset(points)
        if system.is_finite:
            for x in pts:
                if x not in system._map:
                    raise CarrierError(f"point {x} outside carrier")
            if cofinite:
                return CoSet(system, False, frozenset(system.carrier) - pts)
        return CoSet(system, cofinite, pts)

    @staticmethod
    def finite_set(system: System, points: Iterable[int] = ()) -> "CoSet":
        return CoSet.make(system, False, points)

    @staticmethod
    def cofinite_set(system: System, excluded: Iterable[int] = ()) -> "CoSet":
        return CoSet.make(system, True, excluded)

    @staticmethod
    def empty(system: System) -> "CoSet":
        return CoSet.make(system, False, ())

    @staticmethod
    def full(system: System) -> "CoSet":
        return CoSet.make(system, True, ())

    # -- predicates ----------------------------------------------------------

    def member(self, x: int) -> bool:
        self.system._check_point(x)
        return (x in self.points) != self.cofinite

    @property
    def is_empty(self) -> bool:
        return not self.cofinite and not self.points

    @property
    def is_full(self) -> bool:
        if self.cofinite:
            return not self.points
        return self.system.is_finite and len(self.points) == len(self.system.carrier)

    def size(self) -> int | None:
        """Cardinality for finite mode, None for genuinely cofinite sets."""
        return None if self.cofinite else len(self.points)

    # -- Boolean algebra -----------------------------------------------------

    def complement(self) -> "CoSet":
        return CoSet.make(self.system, not self.cofinite, self.points)

    def union(self, other: "CoSet") -> "CoSet":
        same_system(self.system, other.system)
        if not self.cofinite and not other.cofinite:
            return CoSet.make(self.system, False, self.points | other.points)
        if self.cofinite and other.cofinite:
            return CoSet.make(self.system, True, self.points & other.points)
        fin, cof = (self, other) if not self.cofinite else (other, self)
        return CoSet.make(self.system, True, cof.points - fin.points)

    def intersect(self, other: "CoSet") -> "CoSet":
        return self.complement().union(other.complement()).complement()

    def difference(self, other: "CoSet") -> "CoSet":
        return self.intersect(other.complement())

    def subset(self, other: "CoSet") -> bool:
        return self.difference(other).is_empty

    # -- images under the map --------------------------------------------------

    def image(self) -> "CoSet":
        """phi(S).  Cofinite mode: the image misses y exactly when every
        preimage of y lies among the exceptions, and such y are images of
        exceptional points, so a finite scan suffices."""
        sys = self.system
        if not self.cofinite:
            return CoSet.make(sys, False, {sys.apply(x) for x in self.points})
        candidates = {sys.apply(x) for x in self.points}
        missed = {y for y in candidates if set(sys.fiber(y)) <= self.points}
        return CoSet.make(sys, True, missed)

    def preimage(self) -> "CoSet":
        sys = self.system
        pulled = {z for y in self.points for z in sys.fiber(y)}
        return CoSet.make(sys, self.cofinite, pulled)

    def image_iter(self, n: int) -> "CoSet":
        s = self
        for _ in range(n):
            s = s.image()
        return s

    def preimage_iter(self, n: int) -> "CoSet":
        s = self
        for _ in range(n):
            s = s.preimage()
        return s

    # -- canonical order -------------------------------------------------------

    def sorted_points(self) -> list[int]:
        if self.cofinite:
            raise CapabilityError("cannot list a cofinite set")
        return self.system.sort_points(self.points)

    def min_point(self) -> int:
        """Canonically least member (well-defined even for cofinite sets)."""
        if self.is_empty:
            raise ValueError("empty set has no least element")
        if not self.cofinite:
            return self.sorted_points()[0]
        for x in self.system.enumerate_carrier():
            if x not in self.points:
                return x
        raise RuntimeError("unreachable")  # pragma: no cover

    def describe(self) -> str:
        body = " ".join(str(x) for x in sorted(self.points))
        return ("~{" if self.cofinite else "{") + body + "}"
