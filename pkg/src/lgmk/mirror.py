"""The mirror algebra of the pair: theta basis, potential, periods.

Theta functions are indexed by integer points of the dual cone complex B.
In the trivial-mirror-map scope every theta is a Laurent monomial in the
chart coordinates of a maximal cone, so products are monomial products,
re-expressed in the theta basis through a unique decomposition

    x^u t^gamma  =  t^{beta'} * (chart expression of theta_r).

The decomposition is solved in every maximal cone; if two cones ever
produced different answers the product would raise instead of choosing.
Structure constants are therefore 0 or 1 by construction, and that fact
is still asserted where products are consumed.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .geometry import GeometryError, ToricFanoPair
from .series import GradedSeries, Monomial, SeriesContext


class MirrorError(ValueError):
    """Operation outside the trivial-mirror-map scope or malformed input."""


class ChartInconsistencyError(MirrorError):
    """Theta decomposition differed between maximal cones (never resolved silently)."""


def t_context(pair: ToricFanoPair) -> SeriesContext:
    return SeriesContext(curve_degrees=pair.anticanonical_degree, n_chart=0)


def require_trivial_mirror_map(pair: ToricFanoPair, order: int = 12) -> None:
    """Reject pairs whose relative mirror map has corrections.

    Sufficient criterion: at least two boundary divisors meet every
    effective class positively.
    """
    if pair.boundary != "toric":
        raise MirrorError("trivial relative mirror map required (smooth-divisor pair)")
    for beta in pair.betas_up_to(order, nonzero=True):
        positive = sum(1 for i in range(pair.m) if pair.intersection_number(i, beta) > 0)
        if positive < 2:
            raise MirrorError("trivial relative mirror map required")


# ---------------------------------------------------------------------------
# Theta elements and products
# ---------------------------------------------------------------------------


@dataclass
class ThetaElement:
    """Finite combination sum_p c_p(t) theta_p with exact t-series coefficients."""

    pair: ToricFanoPair
    trunc: int
    coeffs: dict[tuple[int, ...], GradedSeries]

    def cleaned(self) -> "ThetaElement":
        return ThetaElement(
            self.pair, self.trunc, {p: s for p, s in self.coeffs.items() if not s.is_zero()}
        )

    def coefficient(self, p: Sequence[int]) -> GradedSeries:
        ctx = t_context(self.pair)
        return self.coeffs.get(tuple(p), GradedSeries.zero(ctx, self.trunc))

    def __eq__(self, other):
        if not isinstance(other, ThetaElement):
            return NotImplemented
        a, b = self.cleaned().coeffs, other.cleaned().coeffs
        return self.pair is other.pair and self.trunc == other.trunc and a == b

    def star(self, other: "ThetaElement") -> "ThetaElement":
        out: dict[tuple[int, ...], GradedSeries] = {}
        ctx = t_context(self.pair)
        for p1, s1 in self.coeffs.items():
            for p2, s2 in other.coeffs.items():
                base = theta_product(self.pair, p1, p2, self.trunc)
                weight = s1.mul(s2)
                if weight.is_zero():
                    continue
                for r, sr in base.coeffs.items():
                    term = weight.mul(sr)
                    if term.is_zero():
                        continue
                    out[r] = out.get(r, GradedSeries.zero(ctx, self.trunc)).add(term)
        return ThetaElement(self.pair, self.trunc, out).cleaned()


def theta_basis_element(pair: ToricFanoPair, p: Sequence[int], trunc: int) -> ThetaElement:
    if not pair.in_lattice_B(p):
        raise MirrorError(f"{tuple(p)} is not an integer point of B")
    return ThetaElement(pair, trunc, {tuple(p): GradedSeries.one(t_context(pair), trunc)})


def _solve_theta_in_cone(pair, mono: Monomial, sigma, target_cone):
    """Try r supported on target_cone with chart(r, sigma) * t^beta' = mono."""
    basis = [pair.chart_monomial(pair.unit_vector(i), sigma) for i in target_cone]
    n = pair.dim
    rows = list(sigma)
    mat = [[Fraction(basis[k].chart[i]) for k in range(n)] for i in rows]
    rhs = [Fraction(mono.chart[i]) for i in rows]
    sol = _solve_square(mat, rhs)
    if sol is None:
        return None
    if any(v.denominator != 1 or v < 0 for v in sol):
        return None
    r = [0] * pair.m
    curve = [0] * pair.r
    for k, i in enumerate(target_cone):
        r[i] = int(sol[k])
        for j in range(pair.r):
            curve[j] += int(sol[k]) * basis[k].curve[j]
    # entries of the chart exponent off the reference cone must match too
    rebuilt = pair.chart_monomial(tuple(r), sigma)
    if rebuilt.chart != mono.chart:
        return None
    beta_prime = tuple(g - c for g, c in zip(mono.curve, curve))
    if any(b < 0 for b in beta_prime):
        return None
    return tuple(r), beta_prime


def _solve_square(mat, rhs):
    n = len(rhs)
    aug = [list(mat[i]) + [rhs[i]] for i in range(n)]
    for col in range(n):
        pr = next((r for r in range(col, n) if aug[r][col] != 0), None)
        if pr is None:
            return None
        aug[col], aug[pr] = aug[pr], aug[col]
        pv = aug[col][col]
        aug[col] = [v / pv for v in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [a - f * b for a, b in zip(aug[r], aug[col])]
    return [aug[i][n] for i in range(n)]


def decompose_monomial(pair: ToricFanoPair, mono: Monomial, sigma) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Unique (r, beta') with mono = t^{beta'} chart(theta_r) in the given chart."""
    sigma = tuple(sorted(sigma))
    found = set()
    for cone in pair.max_cones:
        sol = _solve_theta_in_cone(pair, mono, sigma, cone)
        if sol is not None:
            found.add(sol)
    if not found:
        raise MirrorError("no theta decomposition for monomial (outside scope)")
    if len(found) > 1:
        raise ChartInconsistencyError(f"ambiguous theta decomposition: {sorted(found)}")
    return next(iter(found))


def theta_product(
    pair: ToricFanoPair,
    p1: Sequence[int],
    p2: Sequence[int],
    trunc: int,
    cone=None,
) -> ThetaElement:
    """theta_{p1} * theta_{p2} = t^{beta'} theta_r (structure constants 0 or 1)."""
    require_trivial_mirror_map(pair, trunc)
    sigma = tuple(sorted(cone)) if cone is not None else pair.max_cones[0]
    m1 = pair.chart_monomial(p1, sigma)
    m2 = pair.chart_monomial(p2, sigma)
    r, beta_prime = decompose_monomial(pair, m1 * m2, sigma)
    ctx = t_context(pair)
    if pair.adeg(beta_prime) > trunc:
        return ThetaElement(pair, trunc, {})
    series = GradedSeries.from_monomial(ctx, trunc, Monomial(beta_prime, ()))
    return ThetaElement(pair, trunc, {r: series})


def frobenius_constant(pair: ToricFanoPair, points: Sequence[Sequence[int]], trunc: int) -> GradedSeries:
    """Coefficient of theta_0 in theta_{p_1} * ... * theta_{p_l}."""
    if not points:
        raise MirrorError("need at least one lattice point")
    acc = theta_basis_element(pair, points[0], trunc)
    for p in points[1:]:
        acc = acc.star(theta_basis_element(pair, p, trunc))
    return acc.coefficient((0,) * pair.m)


def corrected_theta(pair: ToricFanoPair, p: Sequence[int], trunc: int, correction_hook=None) -> ThetaElement:
    """Theta with quantum corrections for snc boundaries.

    The snc correction series is not computable here; with no hook this is
    the uncorrected theta.  A hook maps (pair, p, trunc) to a ThetaElement
    added to the result.  The smooth-divisor corrected potential lives in
    relative.proper_potential.
    """
    base = theta_basis_element(pair, p, trunc)
    if correction_hook is None:
        return base
    extra = correction_hook(pair, tuple(p), trunc)
    out = dict(base.coeffs)
    for r, s in extra.coeffs.items():
        ctx = t_context(pair)
        out[r] = out.get(r, GradedSeries.zero(ctx, trunc)).add(s)
    return ThetaElement(pair, trunc, out).cleaned()


# ---------------------------------------------------------------------------
# The potential and its periods
# ---------------------------------------------------------------------------


@dataclass
class LGPotential:
    """sum_i theta_{e_i}, stored per chart as a Laurent polynomial."""

    pair: ToricFanoPair
    trunc: int
    charts: dict[tuple[int, ...], GradedSeries]

    def chart(self, cone=None) -> GradedSeries:
        key = tuple(sorted(cone)) if cone is not None else self.pair.max_cones[0]
        return self.charts[key]

    def chart_json(self, cone=None) -> dict:
        series = self.chart(cone)
        monomials = []
        for mono, coeff in sorted(series.terms.items(), key=lambda kv: (kv[0].curve, kv[0].chart)):
            monomials.append(
                {
                    "x_exps": list(mono.chart),
                    "t_exp": self.pair.adeg(mono.curve),
                    "coeff": str(coeff),
                }
            )
        return {"monomials": monomials}


def potential(pair: ToricFanoPair, trunc: int) -> LGPotential:
    require_trivial_mirror_map(pair, trunc)
    charts = {}
    for cone in pair.max_cones:
        series = GradedSeries.zero(pair.ctx, trunc)
        for i in range(pair.m):
            mono = pair.chart_monomial(pair.unit_vector(i), cone)
            series = series.add(GradedSeries.from_monomial(pair.ctx, trunc, mono))
        charts[cone] = series
    return LGPotential(pair, trunc, charts)


def classical_period(W: LGPotential | GradedSeries, trunc: int, pair: ToricFanoPair | None = None) -> dict[int, Fraction]:
    """{degree: constant term of W^d}; each power is homogeneous in t."""
    if isinstance(W, LGPotential):
        pair = W.pair
        series = W.chart()
    else:
        series = W
    power = GradedSeries.one(series.ctx, trunc)
    out: dict[int, Fraction] = {}
    for d in range(trunc + 1):
        ct = power.constant_term()
        for mono, coeff in ct.items():
            if mono.z:
                raise MirrorError("classical period input must be z-free")
            deg = series.ctx.adeg(mono.curve)
            out[deg] = out.get(deg, Fraction(0)) + coeff
        if d < trunc:
            power = power.mul(series)
            if power.is_zero():
                break
    return {d: c for d, c in out.items() if c != 0}


# ---------------------------------------------------------------------------
# Functions attached to H^0 and H^2 classes
# ---------------------------------------------------------------------------


@dataclass
class PhiFunction:
    """Mirror function of 1 or of an H^2 class written on the boundary divisors.

    Two equivalent faces are exposed: a Laurent polynomial per chart
    (sum_i c_i theta_{e_i}) and the degree-weight action t^beta -> (phi.beta) t^beta.
    Multiplying the chart function into the compact-cycle integrand and
    extracting x^0 agrees with acting by -z times the weight; the tests pin
    that identity order by order.
    """

    pair: ToricFanoPair
    divisor_coeffs: tuple[Fraction, ...] | None  # None marks the unit function

    @property
    def is_unit(self) -> bool:
        return self.divisor_coeffs is None

    def chart_series(self, cone, trunc: int) -> GradedSeries:
        if self.is_unit:
            return GradedSeries.one(self.pair.ctx, trunc)
        out = GradedSeries.zero(self.pair.ctx, trunc)
        for i, c in enumerate(self.divisor_coeffs):
            if c == 0:
                continue
            mono = self.pair.chart_monomial(self.pair.unit_vector(i), tuple(sorted(cone)))
            out = out.add(GradedSeries.from_monomial(self.pair.ctx, trunc, mono, c))
        return out

    def weight(self, beta) -> Fraction:
        if self.is_unit:
            return Fraction(1)
        return sum(
            (c * self.pair.intersection_number(i, beta) for i, c in enumerate(self.divisor_coeffs)),
            start=Fraction(0),
        )

    def act(self, series: GradedSeries) -> GradedSeries:
        """Degree-weight action: scales each t^beta term by phi.beta."""
        if self.is_unit:
            return series
        out = GradedSeries.zero(series.ctx, series.trunc)
        for mono, coeff in series.items():
            w = self.weight(mono.curve)
            if w:
                out.terms[mono] = coeff * w
        return out

    def cohomology_class(self):
        if self.is_unit:
            return self.pair.ring.unit()
        return self.pair.phi_from_divisors(self.divisor_coeffs)


def phi_function(pair: ToricFanoPair, phi, trunc: int, divisors: bool = False) -> PhiFunction:
    """Mirror function for phi in {1} union H^2.

    ``phi`` may be 1 (the unit), a cohomology vector over the ring basis,
    or, with ``divisors=True``, coefficients over the boundary divisors.
    """
    if phi in (1, "1", None):
        return PhiFunction(pair, None)
    if divisors:
        coeffs = tuple(Fraction(c) for c in phi)
        if len(coeffs) != pair.m:
            raise MirrorError("divisor coefficient vector has wrong length")
        return PhiFunction(pair, coeffs)
    vec = tuple(Fraction(c) for c in phi)
    ring = pair.ring
    if len(vec) != len(ring.basis_names):
        raise MirrorError("class vector has wrong length")
    for i, c in enumerate(vec):
        if c != 0 and ring.degrees[i] > 1:
            raise MirrorError("requires Birkhoff factorization: unsupported")
    if any(c != 0 and ring.degrees[i] == 0 for i, c in enumerate(vec)):
        if any(c != 0 and ring.degrees[i] == 1 for i, c in enumerate(vec)):
            raise MirrorError("mixed H^0 + H^2 classes are not supported")
        return PhiFunction(pair, None)
    return PhiFunction(pair, pair.divisor_coefficients(vec))


# ---------------------------------------------------------------------------
# Recurrence discovery for period sequences
# ---------------------------------------------------------------------------


@dataclass
class Recurrence:
    """sum_{j=0..order} P_j(d) a_{d-j} = 0 with integer polynomial coefficients."""

    order: int
    degree: int
    polys: tuple[tuple[int, ...], ...]  # polys[j][e] multiplies d^e a_{d-j}
    step: int  # degree step of the underlying period variable

    def poly_value(self, j: int, d: int) -> int:
        return sum(c * d**e for e, c in enumerate(self.polys[j]))

    def annihilates(self, seq: Sequence[Fraction], start: int | None = None) -> bool:
        lo = self.order if start is None else start
        for d in range(lo, len(seq)):
            total = sum(
                self.poly_value(j, d) * seq[d - j] for j in range(self.order + 1)
            )
            if total != 0:
                return False
        return True

    def to_json(self) -> dict:
        return {
            "order": self.order,
            "degree": self.degree,
            "step": self.step,
            "coeffs": [list(p) for p in self.polys],
        }


def period_sequence(period: Mapping[int, Fraction]) -> tuple[list[Fraction], int]:
    """Collapse {degree: coeff} to a unit-step sequence plus the step size."""
    degrees = sorted(d for d in period if d > 0)
    if not degrees:
        return [period.get(0, Fraction(0))], 1
    step = 0
    for d in degrees:
        step = math.gcd(step, d)
    top = max(degrees)
    seq = [period.get(d, Fraction(0)) for d in range(0, top + 1, step)]
    return seq, step


def qde_recurrence(
    period: Mapping[int, Fraction] | Sequence[Fraction],
    max_order: int = 4,
    max_degree: int = 2,
) -> Recurrence | None:
    """Minimal integer recurrence with polynomial coefficients, or None.

    Searches (order, degree) lexicographically, solving the exact linear
    system on all available coefficients; raises if no cell has the
    required (order+1)(degree+1)+5 data points.
    """
    if isinstance(period, Mapping):
        seq, step = period_sequence(period)
    else:
        seq, step = list(period), 1
    attempted = False
    for order in range(1, max_order + 1):
        for degree in range(0, max_degree + 1):
            unknowns = (order + 1) * (degree + 1)
            if len(seq) < unknowns + 5 or len(seq) - order < unknowns:
                continue
            attempted = True
            sol = _recurrence_nullspace(seq, order, degree)
            if sol is not None:
                return Recurrence(order, degree, sol, step)
    if not attempted:
        raise MirrorError("need more terms")
    return None


def _recurrence_nullspace(seq, order, degree):
    cols = (order + 1) * (degree + 1)
    rows = []
    for d in range(order, len(seq)):
        row = []
        for j in range(order + 1):
            for e in range(degree + 1):
                row.append(Fraction(d**e) * seq[d - j])
        rows.append(row)
    basis = _nullspace(rows, cols)
    for vec in basis:
        polys = tuple(
            tuple(vec[j * (degree + 1) + e] for e in range(degree + 1))
            for j in range(order + 1)
        )
        if any(c != 0 for c in polys[0]):
            return _normalize_polys(polys)
    return None


def _nullspace(rows, cols):
    mat = [list(r) for r in rows]
    pivots = {}
    row = 0
    for col in range(cols):
        pr = next((r for r in range(row, len(mat)) if mat[r][col] != 0), None)
        if pr is None:
            continue
        mat[row], mat[pr] = mat[pr], mat[row]
        pv = mat[row][col]
        mat[row] = [v / pv for v in mat[row]]
        for r in range(len(mat)):
            if r != row and mat[r][col] != 0:
                f = mat[r][col]
                mat[r] = [a - f * b for a, b in zip(mat[r], mat[row])]
        pivots[col] = row
        row += 1
    free = [c for c in range(cols) if c not in pivots]
    basis = []
    for f in free:
        vec = [Fraction(0)] * cols
        vec[f] = Fraction(1)
        for col, r in pivots.items():
            vec[col] = -mat[r][f]
        basis.append(vec)
    return basis


def _normalize_polys(polys):
    denom = 1
    for p in polys:
        for c in p:
            denom = denom * c.denominator // math.gcd(denom, c.denominator)
    ints = [[int(c * denom) for c in p] for p in polys]
    content = 0
    for p in ints:
        for c in p:
            content = math.gcd(content, abs(c))
    if content > 1:
        ints = [[c // content for c in p] for p in ints]
    lead = next((c for c in reversed(ints[0]) if c != 0), 1)
    if lead < 0:
        ints = [[-c for c in p] for p in ints]
    return tuple(tuple(p) for p in ints)
