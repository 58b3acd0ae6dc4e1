"""Exact sparse Laurent series, graded and truncated by anticanonical degree.

A term is a :class:`Monomial` with three exponent blocks:

* ``curve``  -- non-negative exponents over a fixed basis of effective
  curve classes (the ``t`` variables),
* ``chart``  -- integer (Laurent) exponents over chart coordinates
  (the ``x`` variables),
* ``z``      -- a single integer exponent, negative powers allowed.

A :class:`GradedSeries` maps monomials to exact ``Fraction`` coefficients.
Every curve-class generator carries a positive integer weight (its
anticanonical degree) and a series only stores terms of weighted curve
degree at most ``trunc``; multiplication silently drops anything heavier.
Chart and z exponents are not truncated, so a series is finite only
because callers keep curve degrees bounded.

No floating point enters this module; numeric evaluation lives with the
quadrature code.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Tuple


class SeriesError(ValueError):
    """Structural misuse: mixing arities, truncations or contexts."""


class SeriesDomainError(ValueError):
    """Value precondition failure for exp, log or revert."""


@dataclass(frozen=True)
class SeriesContext:
    """Variable arity plus the grading weights of the curve generators."""

    curve_degrees: Tuple[int, ...]
    n_chart: int

    def __post_init__(self) -> None:
        if any(w <= 0 for w in self.curve_degrees):
            raise SeriesError("curve generator weights must be positive")
        if self.n_chart < 0:
            raise SeriesError("negative chart arity")

    @property
    def n_curve(self) -> int:
        return len(self.curve_degrees)

    def adeg(self, curve_exp: Tuple[int, ...]) -> int:
        """Anticanonical degree of a curve exponent vector."""
        return sum(e * w for e, w in zip(curve_exp, self.curve_degrees))


@dataclass(frozen=True)
class Monomial:
    """t^curve * x^chart * z^z with componentwise-additive product."""

    curve: Tuple[int, ...]
    chart: Tuple[int, ...]
    z: int = 0

    def __post_init__(self) -> None:
        if any(e < 0 for e in self.curve):
            raise SeriesError("curve exponents must be non-negative (effectivity)")

    def __mul__(self, other: "Monomial") -> "Monomial":
        if len(self.curve) != len(other.curve) or len(self.chart) != len(other.chart):
            raise SeriesError("monomial arity mismatch")
        return Monomial(
            tuple(a + b for a, b in zip(self.curve, other.curve)),
            tuple(a + b for a, b in zip(self.chart, other.chart)),
            self.z + other.z,
        )

    def is_unit(self) -> bool:
        return self.z == 0 and not any(self.curve) and not any(self.chart)


def unit_monomial(ctx: SeriesContext) -> Monomial:
    return Monomial((0,) * ctx.n_curve, (0,) * ctx.n_chart, 0)


class GradedSeries:
    """Finite map Monomial -> Fraction, truncated in curve degree."""

    __slots__ = ("ctx", "trunc", "terms")

    def __init__(
        self,
        ctx: SeriesContext,
        trunc: int,
        terms: Mapping[Monomial, Fraction] | None = None,
    ) -> None:
        if trunc < 0:
            raise SeriesError("truncation order must be non-negative")
        self.ctx = ctx
        self.trunc = trunc
        out: dict[Monomial, Fraction] = {}
        for mono, coeff in (terms or {}).items():
            if len(mono.curve) != ctx.n_curve or len(mono.chart) != ctx.n_chart:
                raise SeriesError("monomial arity does not match context")
            if coeff == 0 or ctx.adeg(mono.curve) > trunc:
                continue
            out[mono] = Fraction(coeff)
        self.terms = out

    # -- constructors -------------------------------------------------

    @classmethod
    def zero(cls, ctx: SeriesContext, trunc: int) -> "GradedSeries":
        return cls(ctx, trunc)

    @classmethod
    def one(cls, ctx: SeriesContext, trunc: int) -> "GradedSeries":
        return cls(ctx, trunc, {unit_monomial(ctx): Fraction(1)})

    @classmethod
    def from_monomial(
        cls, ctx: SeriesContext, trunc: int, mono: Monomial, coeff: Fraction | int = 1
    ) -> "GradedSeries":
        return cls(ctx, trunc, {mono: Fraction(coeff)})

    @classmethod
    def curve_var(cls, ctx: SeriesContext, trunc: int, j: int) -> "GradedSeries":
        exp = [0] * ctx.n_curve
        exp[j] = 1
        return cls.from_monomial(ctx, trunc, Monomial(tuple(exp), (0,) * ctx.n_chart))

    @classmethod
    def chart_var(cls, ctx: SeriesContext, trunc: int, j: int, power: int = 1) -> "GradedSeries":
        exp = [0] * ctx.n_chart
        exp[j] = power
        return cls.from_monomial(ctx, trunc, Monomial((0,) * ctx.n_curve, tuple(exp)))

    # -- inspection ---------------------------------------------------

    def coefficient(self, mono: Monomial) -> Fraction:
        return self.terms.get(mono, Fraction(0))

    def items(self) -> Iterator[tuple[Monomial, Fraction]]:
        return iter(self.terms.items())

    def is_zero(self) -> bool:
        return not self.terms

    def min_adeg(self) -> int:
        """Smallest curve degree among stored terms (0 for the zero series)."""
        if not self.terms:
            return 0
        return min(self.ctx.adeg(m.curve) for m in self.terms)

    def curve_profile(self) -> dict[int, Fraction]:
        """Collapse a pure-t series to {anticanonical degree: coefficient}.

        Raises if any chart or z exponent is present.
        """
        out: dict[int, Fraction] = {}
        for mono, coeff in self.terms.items():
            if any(mono.chart) or mono.z:
                raise SeriesError("curve_profile needs a series in t only")
            d = self.ctx.adeg(mono.curve)
            out[d] = out.get(d, Fraction(0)) + coeff
        return {d: c for d, c in out.items() if c != 0}

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GradedSeries):
            return NotImplemented
        return (
            self.ctx == other.ctx
            and self.trunc == other.trunc
            and self.terms == other.terms
        )

    def __hash__(self):  # mutable mapping inside; not hashable
        raise TypeError("GradedSeries is not hashable")

    def __repr__(self) -> str:
        if not self.terms:
            return "<series 0>"
        bits = []
        for mono, coeff in sorted(
            self.terms.items(), key=lambda kv: (self.ctx.adeg(kv[0].curve), kv[0].chart, kv[0].z)
        )[:8]:
            bits.append(f"{coeff}*t{mono.curve}x{mono.chart}z^{mono.z}")
        more = "" if len(self.terms) <= 8 else f" (+{len(self.terms) - 8} terms)"
        return "<series " + " + ".join(bits) + more + ">"

    # -- ring operations ----------------------------------------------

    def _check_compatible(self, other: "GradedSeries") -> None:
        if self.ctx != other.ctx or self.trunc != other.trunc:
            raise SeriesError("series contexts or truncations differ")

    def add(self, other: "GradedSeries") -> "GradedSeries":
        self._check_compatible(other)
        out = dict(self.terms)
        for mono, coeff in other.terms.items():
            s = out.get(mono, Fraction(0)) + coeff
            if s:
                out[mono] = s
            else:
                out.pop(mono, None)
        res = GradedSeries(self.ctx, self.trunc)
        res.terms = out
        return res

    def neg(self) -> "GradedSeries":
        return self.scale(Fraction(-1))

    def sub(self, other: "GradedSeries") -> "GradedSeries":
        return self.add(other.neg())

    def scale(self, c: Fraction | int) -> "GradedSeries":
        c = Fraction(c)
        res = GradedSeries(self.ctx, self.trunc)
        if c != 0:
            res.terms = {m: c * v for m, v in self.terms.items()}
        return res

    def mul(self, other: "GradedSeries") -> "GradedSeries":
        self._check_compatible(other)
        ctx, trunc = self.ctx, self.trunc
        out: dict[Monomial, Fraction] = {}
        # iterate over the smaller operand outside for fewer dict probes
        a, b = (self.terms, other.terms)
        if len(a) > len(b):
            a, b = b, a
        for m1, c1 in a.items():
            d1 = ctx.adeg(m1.curve)
            for m2, c2 in b.items():
                if d1 + ctx.adeg(m2.curve) > trunc:
                    continue
                m = m1 * m2
                s = out.get(m, Fraction(0)) + c1 * c2
                if s:
                    out[m] = s
                else:
                    out.pop(m, None)
        res = GradedSeries(ctx, trunc)
        res.terms = out
        return res

    def __add__(self, other):
        return self.add(other)

    def __sub__(self, other):
        return self.sub(other)

    def __mul__(self, other):
        if isinstance(other, GradedSeries):
            return self.mul(other)
        return self.scale(other)

    __rmul__ = __mul__

    def __neg__(self):
        return self.neg()

    def pow(self, k: int) -> "GradedSeries":
        if k < 0:
            raise SeriesDomainError("negative powers of a series are not defined")
        result = GradedSeries.one(self.ctx, self.trunc)
        base = self
        while k:
            if k & 1:
                result = result.mul(base)
            k >>= 1
            if k:
                base = base.mul(base)
        return result

    # -- structural extraction ----------------------------------------

    def constant_term(self) -> "GradedSeries":
        """Sub-series of terms with chart exponent zero (t and z retained)."""
        res = GradedSeries(self.ctx, self.trunc)
        res.terms = {m: c for m, c in self.terms.items() if not any(m.chart)}
        return res

    # -- exp / log / reversion ----------------------------------------

    def exp(self) -> "GradedSeries":
        """exp(f) for f with every term of positive curve degree."""
        if any(self.ctx.adeg(m.curve) == 0 for m in self.terms):
            raise SeriesDomainError("series_exp needs strictly positive curve degree")
        result = GradedSeries.one(self.ctx, self.trunc)
        power = GradedSeries.one(self.ctx, self.trunc)
        kmax = self.trunc if self.trunc > 0 else 0
        step = self.min_adeg() if self.terms else 1
        for k in range(1, kmax // max(step, 1) + 1):
            power = power.mul(self)
            if power.is_zero():
                break
            result = result.add(power.scale(Fraction(1, math.factorial(k))))
        return result

    def log(self) -> "GradedSeries":
        """log(f) for f = 1 + h with h of positive curve degree."""
        unit = unit_monomial(self.ctx)
        if self.coefficient(unit) != 1:
            raise SeriesDomainError("series_log needs constant term 1")
        h = self.sub(GradedSeries.one(self.ctx, self.trunc))
        if any(self.ctx.adeg(m.curve) == 0 for m in h.terms):
            raise SeriesDomainError("series_log needs 1 + (positive-degree terms)")
        result = GradedSeries.zero(self.ctx, self.trunc)
        power = GradedSeries.one(self.ctx, self.trunc)
        step = h.min_adeg() if h.terms else 1
        for k in range(1, self.trunc // max(step, 1) + 1):
            power = power.mul(h)
            if power.is_zero():
                break
            result = result.add(power.scale(Fraction((-1) ** (k + 1), k)))
        return result

    def _univariate(self, var: tuple[str, int]) -> dict[int, Fraction]:
        """Read the series as {exponent: coeff} in one curve variable."""
        kind, j = var
        if kind != "curve":
            raise SeriesDomainError("reversion supports curve variables only")
        coeffs: dict[int, Fraction] = {}
        for mono, coeff in self.terms.items():
            if any(mono.chart) or mono.z or any(e for i, e in enumerate(mono.curve) if i != j):
                raise SeriesDomainError("revert needs a univariate series")
            coeffs[mono.curve[j]] = coeff
        return coeffs

    def revert(self, var: tuple[str, int] = ("curve", 0)) -> "GradedSeries":
        """Compositional inverse g with f(g(u)) = u, for f = u*(1 + ...)."""
        kind, j = var
        f = self._univariate(var)
        if f.get(0):
            raise SeriesDomainError("revert needs zero constant term")
        if f.get(1) != 1:
            raise SeriesDomainError("revert needs leading coefficient 1")
        w = self.ctx.curve_degrees[j]
        kmax = self.trunc // w
        # g_n via f(g) = u, solved degree by degree; powers of g recomputed
        # each round (orders here are tiny).
        g: dict[int, Fraction] = {1: Fraction(1)}
        for n in range(2, kmax + 1):
            acc = Fraction(0)
            gpow = dict(g)  # g^k, starting at k=1
            for k in range(2, n + 1):
                gpow = _poly_mul_trunc(gpow, g, n)
                acc += f.get(k, Fraction(0)) * gpow.get(n, Fraction(0))
            g[n] = -acc
        res = GradedSeries.zero(self.ctx, self.trunc)
        for k, c in g.items():
            if c == 0:
                continue
            exp = [0] * self.ctx.n_curve
            exp[j] = k
            res.terms[Monomial(tuple(exp), (0,) * self.ctx.n_chart)] = c
        return res

    def compose_univariate(self, outer: Mapping[int, Fraction]) -> "GradedSeries":
        """Evaluate sum_k outer[k] * self^k; self must have positive curve degree."""
        if any(self.ctx.adeg(m.curve) == 0 for m in self.terms):
            raise SeriesDomainError("composition needs positive curve degree inside")
        result = GradedSeries.zero(self.ctx, self.trunc)
        if 0 in outer:
            result = result.add(GradedSeries.one(self.ctx, self.trunc).scale(outer[0]))
        power = GradedSeries.one(self.ctx, self.trunc)
        step = max(self.min_adeg(), 1)
        top = max((k for k in outer if k > 0), default=0)
        for k in range(1, min(top, self.trunc // step) + 1):
            power = power.mul(self)
            if k in outer:
                result = result.add(power.scale(outer[k]))
        return result


def _poly_mul_trunc(
    a: Mapping[int, Fraction], b: Mapping[int, Fraction], top: int
) -> dict[int, Fraction]:
    out: dict[int, Fraction] = {}
    for i, ci in a.items():
        for k, ck in b.items():
            if i + k > top:
                continue
            out[i + k] = out.get(i + k, Fraction(0)) + ci * ck
    return {k: v for k, v in out.items() if v != 0}


# Functional aliases matching the operation names used around the package.

def add(f: GradedSeries, g: GradedSeries) -> GradedSeries:
    return f.add(g)


def mul(f: GradedSeries, g: GradedSeries) -> GradedSeries:
    return f.mul(g)


def constant_term(f: GradedSeries) -> GradedSeries:
    return f.constant_term()


def series_exp(f: GradedSeries) -> GradedSeries:
    return f.exp()


def series_log(f: GradedSeries) -> GradedSeries:
    return f.log()


def revert(f: GradedSeries, var: tuple[str, int] = ("curve", 0)) -> GradedSeries:
    return f.revert(var)
