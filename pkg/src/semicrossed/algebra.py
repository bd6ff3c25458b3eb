"""Formal series over a dynamical system, with the covariance product.

Elements are finitely supported series A = sum_n U^n f_n where each f_n
is a finitely supported function on the carrier with complex-rational
values.  The product follows the covariance rule

    (U^n f)(U^m g) = U^(n+m) ((f . phi^m) * g),

i.e. the composition operator U intertwines multiplication operators with
the map.  Fourier coefficients, partial sums, arithmetic (Cesaro) means,
and the l1 / sup norms are all computed exactly.

The product never materializes pullbacks f . phi^m: the pointwise factor
g bounds the support, so values are read off by forward iteration.  The
standalone `pullback` keeps the materialized form (its support is the
iterated preimage of the support, which can grow geometrically on
expanding maps such as halving).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping

from .dynamics import System, same_system
from .scalars import ONE, Scalar, SqrtSum


@dataclass(frozen=True)
class Func:
    """A finitely supported function carrier -> Scalar (no stored zeros)."""

    values: Mapping[int, Scalar]

    @staticmethod
    def of(values: Mapping[int, Scalar]) -> "Func":
        return Func({x: v for x, v in values.items() if not v.is_zero()})

    @staticmethod
    def delta(x: int, value: Scalar = ONE) -> "Func":
        return Func.of({x: value})

    @staticmethod
    def indicator(points: Iterable[int]) -> "Func":
        return Func.of({x: ONE for x in points})

    @staticmethod
    def zero() -> "Func":
        return Func({})

    def at(self, x: int) -> Scalar:
        return self.values.get(x, Scalar())

    @property
    def support(self) -> frozenset:
        return frozenset(self.values)

    def is_zero(self) -> bool:
        return not self.values

    def add(self, other: "Func") -> "Func":
        out = dict(self.values)
        for x, v in other.values.items():
            out[x] = out.get(x, Scalar()) + v
        return Func.of(out)

    def sub(self, other: "Func") -> "Func":
        return self.add(other.neg())

    def neg(self) -> "Func":
        return Func({x: -v for x, v in self.values.items()})

    def scale(self, c) -> "Func":
        c = c if isinstance(c, Scalar) else Scalar.of(c)
        return Func.of({x: v * c for x, v in self.values.items()})

    def pointwise_mul(self, other: "Func") -> "Func":
        out = {}
        small, big = sorted((self.values, other.values), key=len)
        for x, v in small.items():
            w = big.get(x)
            if w is not None:
                out[x] = v * w
        return Func.of(out)

    def sup_norm(self) -> SqrtSum:
        best = Fraction(0)
        for v in self.values.values():
            best = max(best, v.abs_sq())
        return SqrtSum.sqrt(best)

    def items(self) -> list[tuple[int, Scalar]]:
        return sorted(self.values.items())

    def __eq__(self, other) -> bool:
        if not isinstance(other, Func):
            return NotImplemented
        return dict(self.values) == dict(other.values)

    def __hash__(self):
        return hash(tuple(self.items()))


def pullback(system: System, f: Func, m: int) -> Func:
    """f . phi^m, materialized: support is the m-fold preimage of supp(f)."""
    if m < 0:
        raise ValueError("pullback power must be nonnegative")
    support = set(f.values)
    for _ in range(m):
        support = {z for y in support for z in system.fiber(y)}
    return Func.of({x: f.at(system.iterate(x, m)) for x in support})


@dataclass(frozen=True)
class Series:
    """A finitely supported series over a fixed system.

    `coeffs` maps degrees to nonzero coefficient functions; both layers
    stay in canonical sparse form.
    """

    system: System
    coeffs: Mapping[int, Func]

    @staticmethod
    def of(system: System, coeffs: Mapping[int, Func]) -> "Series":
        return Series(system, {n: f for n, f in coeffs.items() if not f.is_zero()})

    @staticmethod
    def zero(system: System) -> "Series":
        return Series(system, {})

    @staticmethod
    def monomial(system: System, n: int, x: int, value: Scalar = ONE) -> "Series":
        """The elementary series U^n (value * delta_x)."""
        if n < 0:
            raise ValueError("degrees are nonnegative")
        return Series.of(system, {n: Func.delta(x, value)})

    @staticmethod
    def multiplication_unit(system: System) -> "Series":
        """U^0 1_X; a genuine two-sided unit only on finite carriers."""
        if not system.is_finite:
            raise ValueError("the constant one is not finitely supported here")
        return Series.of(system, {0: Func.indicator(system.carrier)})

    # -- structure -----------------------------------------------------------

    def fourier(self, n: int) -> Func:
        if n < 0:
            raise ValueError("degrees are nonnegative")
        return self.coeffs.get(n, Func.zero())

    def degree(self) -> int:
        """Largest stored degree; -1 for the zero series."""
        return max(self.coeffs, default=-1)

    def is_zero(self) -> bool:
        return not self.coeffs

    def degrees(self) -> list[int]:
        return sorted(self.coeffs)

    def items(self) -> list[tuple[int, Func]]:
        return sorted(self.coeffs.items())

    def support_points(self) -> frozenset:
        return frozenset(x for f in self.coeffs.values() for x in f.support)

    # -- linear structure ------------------------------------------------------

    def add(self, other: "Series") -> "Series":
        same_system(self.system, other.system)
        out = dict(self.coeffs)
        for n, f in other.coeffs.items():
            out[n] = out.get(n, Func.zero()).add(f)
        return Series.of(self.system, out)

    def sub(self, other: "Series") -> "Series":
        return self.add(other.scale(-1))

    def scale(self, c) -> "Series":
        return Series.of(self.system, {n: f.scale(c) for n, f in self.coeffs.items()})

    def __add__(self, other: "Series") -> "Series":
        return self.add(other)

    def __sub__(self, other: "Series") -> "Series":
        return self.sub(other)

    # -- covariance product ------------------------------------------------------

    def mul(self, other: "Series") -> "Series":
        same_system(self.system, other.system)
        sys = self.system
        out: dict[int, dict[int, Scalar]] = {}
        for n, f in self.coeffs.items():
            for m, g in other.coeffs.items():
                acc = out.setdefault(n + m, {})
                for x, gv in g.values.items():
                    fv = f.at(sys.iterate(x, m))
                    if fv.is_zero():
                        continue
                    prev = acc.get(x)
                    acc[x] = fv * gv if prev is None else prev + fv * gv
        return Series.of(sys, {p: Func.of(vals) for p, vals in out.items()})

    def __mul__(self, other: "Series") -> "Series":
        return self.mul(other)

    # -- truncations ---------------------------------------------------------------

    def partial_sum(self, l: int) -> "Series":
        if l < 0:
            raise ValueError("truncation degree must be nonnegative")
        return Series.of(self.system, {n: f for n, f in self.coeffs.items() if n <= l})

    def cesaro(self, k: int) -> "Series":
        """The k-th arithmetic mean of the partial sums.

        Closed form: degree-n coefficient scaled by (k+1-n)/(k+1) for
        n <= k, dropped above.
        """
        if k < 0:
            raise ValueError("mean index must be nonnegative")
        out = {}
        for n, f in self.coeffs.items():
            if n <= k:
                out[n] = f.scale(Fraction(k + 1 - n, k + 1))
        return Series.of(self.system, out)

    # -- norms ------------------------------------------------------------------

    def l1_norm(self) -> SqrtSum:
        total = SqrtSum()
        for f in self.coeffs.values():
            total = total + f.sup_norm()
        return total

    def sup_coeff_norm(self) -> SqrtSum:
        best = SqrtSum()
        for f in self.coeffs.values():
            s = f.sup_norm()
            if s > best:
                best = s
        return best

    def __eq__(self, other) -> bool:
        if not isinstance(other, Series):
            return NotImplemented
        return self.system == other.system and dict(self.coeffs) == dict(other.coeffs)

    def __hash__(self):
        return hash((self.system, tuple((n, f) for n, f in self.items())))

    def __str__(self) -> str:
        if self.is_zero():
            return "0"
        parts = []
        for n, f in self.items():
            body = " ".join(f"{x}:{v}" for x, v in f.items())
            parts.append(f"U^{n}[{body}]")
        return " + ".join(parts)
