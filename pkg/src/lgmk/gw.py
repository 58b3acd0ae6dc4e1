"""Absolute genus-zero Gromov-Witten series of the Fano X.

The small J-function of a smooth toric Fano is assembled from its closed
hypergeometric form: for each effective class beta,

    J_beta = z * prod_i  prod_{a <= 0} (D_i + a z) / prod_{a <= d_i} (D_i + a z),
    d_i = D_i . beta,

expanded exactly in the cohomology ring and in 1/z.  One- and two-point
descendant invariants are read off the expansion (two-point ones through
the divisor equation), which is all the downstream period and Gamma
machinery consumes.  Pairs that are not backed by a toric fan may supply
point descendants directly in their config; only the period-type queries
work in that mode.
"""

from __future__ import annotations

import io
import math
from fractions import Fraction
from typing import Mapping, Sequence

from .geometry import GeometryError, ToricFanoPair


class GWError(ValueError):
    """Missing or inconsistent Gromov-Witten input data."""


ZLaurent = dict[int, tuple[Fraction, ...]]  # z exponent -> cohomology vector


class JFunction:
    """Exact coefficients of the small J-function up to a curve-degree cut.

    ``coeffs[(beta, z_exp)]`` is a cohomology vector; the beta = 0 part is
    ``z + tau02``.  The H^2 parameter only enters evaluation through
    ``exp(tau02 . beta)`` weights and is kept separate.
    """

    def __init__(self, pair: ToricFanoPair, trunc: int, tau02, coeffs, full: bool):
        self.pair = pair
        self.trunc = trunc
        self.tau02 = tau02
        self.coeffs = coeffs
        self.full = full
        self._one_point_cache: dict[tuple[int, ...], dict] = {}

    def betas(self, nonzero: bool = False):
        return self.pair.betas_up_to(self.trunc, nonzero=nonzero)

    def coefficient(self, beta, z_exp: int):
        return self.coeffs.get((tuple(beta), z_exp), self.pair.ring.zero())

    def z_exponents(self, beta):
        beta = tuple(beta)
        return sorted(z for (b, z) in self.coeffs if b == beta)

    # -- invariant extraction -------------------------------------------

    def one_point(self, beta) -> dict[tuple[int, int], Fraction]:
        """{(basis index alpha, psi power a): <phi_alpha psi^a>_{0,1,beta}}."""
        beta = tuple(beta)
        if beta in self._one_point_cache:
            return self._one_point_cache[beta]
        if not any(beta):
            return {}
        if not self.full:
            raise GWError("J-source missing: only point descendants supplied")
        ring = self.pair.ring
        out: dict[tuple[int, int], Fraction] = {}
        for z_exp in self.z_exponents(beta):
            a = -z_exp - 1
            if a < 0:
                continue
            coeff = self.coefficient(beta, z_exp)
            for alpha in range(len(ring.basis_names)):
                val = ring.pairing(coeff, ring.basis_vector(alpha))
                if val:
                    out[(alpha, a)] = val
        self._one_point_cache[beta] = out
        return out

    def one_point_class(self, gamma, a: int, beta) -> Fraction:
        """<gamma psi^a> for an arbitrary class by linearity."""
        table = self.one_point(beta)
        total = Fraction(0)
        for alpha, g in enumerate(gamma):
            if g:
                total += g * table.get((alpha, a), Fraction(0))
        return total

    def point_descendant(self, beta) -> Fraction:
        """<pt psi^{(-K.beta)-2}>_{0,1,beta} feeding the quantum period."""
        beta = tuple(beta)
        if not any(beta):
            raise GWError("point descendant needs beta != 0")
        if not self.full:
            try:
                return self.pair.point_invariants[beta]
            except KeyError:
                raise GWError("J-source missing: no invariant supplied for this class")
        k = self.pair.adeg(beta) - 2
        if k < 0:
            return Fraction(0)
        pt = self.pair.ring.point_class()
        return self.one_point_class(pt, k, beta)

    def two_point_class(self, phi, beta) -> ZLaurent:
        """sum_i <phi, phi^i / (z - psi)>_{0,2,beta} phi_i as a z-Laurent class.

        Reduced to one-point descendants by the divisor equation, so phi
        must lie in H^2 (or H^0, where the string equation applies).
        """
        ring = self.pair.ring
        beta = tuple(beta)
        duals = ring.dual_basis()
        phi_deg2 = ring.degree_part(phi, 1)
        phi_deg0 = ring.degree_part(phi, 0)
        if ring.add(phi_deg0, phi_deg2) != tuple(phi):
            raise GWError("two-point reduction supports classes of degree <= 2 only")
        out: ZLaurent = {}
        unit_coeff = phi_deg0[ring.degrees.index(0)] if 0 in ring.degrees else Fraction(0)
        pairing_beta = (
            self.pair.curve_pairing(phi_deg2, beta) if any(phi_deg2) else Fraction(0)
        )
        for i in range(len(ring.basis_names)):
            for a in range(0, self.pair.dim + self.pair.adeg(beta) + 2):
                val = Fraction(0)
                # divisor equation for the degree-2 part
                if any(phi_deg2):
                    val += pairing_beta * self.one_point_class(duals[i], a, beta)
                    if a >= 1:
                        cup = ring.cup(phi_deg2, duals[i])
                        val += self.one_point_class(cup, a - 1, beta)
                # string equation for the degree-0 part
                if unit_coeff and a >= 1:
                    val += unit_coeff * self.one_point_class(duals[i], a - 1, beta)
                if val:
                    z_exp = -a - 1
                    vec = out.get(z_exp, ring.zero())
                    out[z_exp] = ring.add(vec, ring.scale(val, ring.basis_vector(i)))
        return {z: v for z, v in out.items() if any(v)}


def _invert_linear_factor(ring, divisor_vec, a: int) -> ZLaurent:
    """1/(D + a z) as a finite z-Laurent class (a != 0, D nilpotent)."""
    out: ZLaurent = {}
    power = ring.unit()
    for k in range(ring.dim + 1):
        coeff = Fraction((-1) ** k, a ** (k + 1))
        out[-(k + 1)] = ring.scale(coeff, power)
        power = ring.cup(power, divisor_vec)
        if not any(power):
            break
    return out


def _zl_mul(ring, f: ZLaurent, g: ZLaurent) -> ZLaurent:
    out: ZLaurent = {}
    for z1, v1 in f.items():
        for z2, v2 in g.items():
            prod = ring.cup(v1, v2)
            if not any(prod):
                continue
            key = z1 + z2
            out[key] = ring.add(out.get(key, ring.zero()), prod)
    return {z: v for z, v in out.items() if any(v)}


def hypergeometric_class(pair: ToricFanoPair, beta) -> ZLaurent:
    """z * prod_i [prod_{a<=0}(D_i+az) / prod_{a<=d_i}(D_i+az)] for one beta."""
    ring = pair.ring
    out: ZLaurent = {1: ring.unit()}
    for i in range(pair.m):
        d = pair.intersection_number(i, beta)
        vec = ring.divisor_classes[i]
        if d > 0:
            for a in range(1, d + 1):
                out = _zl_mul(ring, out, _invert_linear_factor(ring, vec, a))
        elif d < 0:
            for a in range(d + 1, 1):
                factor: ZLaurent = {0: vec}
                if a != 0:
                    factor[1] = ring.scale(Fraction(a), ring.unit())
                out = _zl_mul(ring, out, factor)
    return out


def j_function(pair: ToricFanoPair, tau02=None, trunc: int = 8) -> JFunction:
    """Small J-function data for a preset (toric closed form) or supplied input."""
    source = pair if pair.boundary == "toric" else pair.ambient
    ring = pair.ring
    if source is None:
        if pair.point_invariants:
            return JFunction(pair, trunc, tau02, {}, full=False)
        raise GWError("J-source missing")
    if source.intersection and len(source.intersection[0]) != pair.r:
        raise GWError("ambient curve-class basis does not match the pair")
    coeffs = {}
    zero = tuple([0] * pair.r)
    coeffs[(zero, 1)] = ring.unit()
    if tau02 is not None and any(tau02):
        coeffs[(zero, 0)] = tuple(tau02)
    for beta in pair.betas_up_to(trunc, nonzero=True):
        block = hypergeometric_class(source, beta)
        for z_exp, vec in block.items():
            if z_exp >= 0 and any(vec):
                raise GWError(
                    "absolute mirror map nontrivial: toric closed form is not a J-source"
                )
            coeffs[(beta, z_exp)] = vec
    return JFunction(pair, trunc, tau02, coeffs, full=True)


# ---------------------------------------------------------------------------
# Periods
# ---------------------------------------------------------------------------


def quantum_period(pair: ToricFanoPair, trunc: int) -> dict[int, Fraction]:
    """{anticanonical degree: sum_beta <pt psi^{deg-2}>}, constant term 1."""
    J = j_function(pair, None, trunc)
    out = {0: Fraction(1)}
    for beta in pair.betas_up_to(trunc, nonzero=True):
        val = J.point_descendant(beta)
        if val:
            d = pair.adeg(beta)
            out[d] = out.get(d, Fraction(0)) + val
    return out


def regularized_quantum_period(pair: ToricFanoPair, trunc: int) -> dict[int, Fraction]:
    """Quantum period with the degree-d coefficient scaled by d!."""
    return {d: math.factorial(d) * c for d, c in quantum_period(pair, trunc).items()}


def period_csv(period: Mapping[int, Fraction]) -> str:
    """CSV rows (degree, numerator, denominator), degree ascending."""
    buf = io.StringIO()
    buf.write("degree,numerator,denominator\n")
    for d in sorted(period):
        c = period[d]
        buf.write(f"{d},{c.numerator},{c.denominator}\n")
    return buf.getvalue()
