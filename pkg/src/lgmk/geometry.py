"""Toric Fano pairs with their boundary combinatorics and cohomology.

The data model holds a smooth toric Fano variety X together with its full
toric anticanonical boundary D = sum D_i: ray generators, maximal cones of
the fan (equivalently, cones of the dual intersection complex B), a basis
of effective curve classes, the intersection matrix D_i . beta_j, and the
cup-product table of H*(X; Q) with an integration functional.

A separate "smooth" boundary kind carries only intersection numbers for an
irreducible anticanonical divisor (used by the relative mirror map and the
proper potential); fan-level checks do not apply to it.

All coefficients are exact rationals.  Numeric evaluation converts on the
way out.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Iterable, Mapping, Sequence

from .series import GradedSeries, Monomial, SeriesContext


class GeometryError(ValueError):
    """Invalid or out-of-scope geometry input."""


def _frac(value) -> Fraction:
    """Parse an exact rational from int or 'p/q' string."""
    if isinstance(value, bool):
        raise GeometryError(f"not a rational: {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, Fraction):
        return value
    if isinstance(value, str):
        return Fraction(value)
    raise GeometryError(f"not an exact rational: {value!r}")


def _frac_str(value: Fraction):
    return int(value) if value.denominator == 1 else f"{value.numerator}/{value.denominator}"


# ---------------------------------------------------------------------------
# Cohomology
# ---------------------------------------------------------------------------


class CohomologyRing:
    """H*(X; Q) with a fixed graded basis, cup table and integration."""

    def __init__(
        self,
        basis_names: Sequence[str],
        degrees: Sequence[int],
        mult: Mapping[tuple[int, int], Sequence[Fraction]] | Sequence[Sequence[Sequence]],
        integration: Sequence[Fraction],
        divisor_classes: Sequence[Sequence[Fraction]],
        dim: int,
    ) -> None:
        self.basis_names = tuple(basis_names)
        self.degrees = tuple(int(d) for d in degrees)  # complex degrees
        self.dim = dim
        b = len(self.basis_names)
        table: dict[tuple[int, int], tuple[Fraction, ...]] = {}
        if isinstance(mult, Mapping):
            items = mult.items()
        else:
            items = (((i, j), mult[i][j]) for i in range(b) for j in range(b))
        for (i, j), vec in items:
            table[(i, j)] = tuple(_frac(v) for v in vec)
        self.mult = table
        self.integration = tuple(_frac(v) for v in integration)
        self.divisor_classes = tuple(tuple(_frac(v) for v in vec) for vec in divisor_classes)
        self.c1 = self.sum(self.divisor_classes) if self.divisor_classes else self.zero()
        self._validate()

    # -- vectors over the basis ----------------------------------------

    def zero(self) -> tuple[Fraction, ...]:
        return (Fraction(0),) * len(self.basis_names)

    def unit(self) -> tuple[Fraction, ...]:
        vec = [Fraction(0)] * len(self.basis_names)
        vec[self.basis_names.index("1") if "1" in self.basis_names else 0] = Fraction(1)
        return tuple(vec)

    def basis_vector(self, i: int) -> tuple[Fraction, ...]:
        vec = [Fraction(0)] * len(self.basis_names)
        vec[i] = Fraction(1)
        return tuple(vec)

    def add(self, u, v):
        return tuple(a + b for a, b in zip(u, v))

    def sum(self, vecs):
        out = self.zero()
        for v in vecs:
            out = self.add(out, v)
        return out

    def scale(self, c, u):
        return tuple(c * a for a in u)

    def cup(self, u, v):
        out = [0 * (u[0] + v[0])] * len(self.basis_names)
        for i, a in enumerate(u):
            if a == 0:
                continue
            for j, b in enumerate(v):
                if b == 0:
                    continue
                for k, s in enumerate(self.mult[(i, j)]):
                    if s:
                        out[k] = out[k] + a * b * s
        return tuple(out)

    def integrate(self, u):
        return sum((a * w for a, w in zip(u, self.integration)), start=Fraction(0) * u[0])

    def pairing(self, u, v):
        return self.integrate(self.cup(u, v))

    def degree_part(self, u, k: int):
        """Component of u in complex degree k."""
        return tuple(a if self.degrees[i] == k else Fraction(0) for i, a in enumerate(u))

    def point_class(self) -> tuple[Fraction, ...]:
        """Top-degree class normalized so it integrates to 1."""
        for i, d in enumerate(self.degrees):
            if d == self.dim and self.integration[i] != 0:
                return self.scale(1 / self.integration[i], self.basis_vector(i))
        raise GeometryError("no top-degree class with nonzero integral")

    def exp_nilpotent(self, u):
        """exp of a positive-degree class; terminates by nilpotency."""
        if any(a != 0 and self.degrees[i] == 0 for i, a in enumerate(u)):
            raise GeometryError("exp_nilpotent needs a positive-degree class")
        out = self.unit()
        power = self.unit()
        fact = 1
        for k in range(1, self.dim + 1):
            power = self.cup(power, u)
            fact *= k
            out = self.add(out, self.scale(Fraction(1, fact), power))
        return out

    def dual_basis(self) -> list[tuple[Fraction, ...]]:
        """Poincare-dual basis: dual[i] pairs to delta_ij against basis j."""
        b = len(self.basis_names)
        gram = [[self.pairing(self.basis_vector(i), self.basis_vector(j)) for j in range(b)] for i in range(b)]
        inv = _invert_fraction_matrix(gram)
        if inv is None:
            raise GeometryError("singular pairing")
        # Gram matrix is symmetric, so row i of its inverse gives the class
        # pairing to delta_ij against the basis.
        return [tuple(inv[i][j] for j in range(b)) for i in range(b)]

    # -- validation ------------------------------------------------------

    def _validate(self) -> None:
        b = len(self.basis_names)
        if len(self.degrees) != b or len(self.integration) != b:
            raise GeometryError("cohomology table sizes disagree")
        for i in range(b):
            for j in range(b):
                if (i, j) not in self.mult:
                    raise GeometryError("incomplete cup-product table")
                if self.mult[(i, j)] != self.mult[(j, i)]:
                    raise GeometryError("cup table not commutative")
        for i, d in enumerate(self.degrees):
            if d < self.dim and self.integration[i] != 0:
                raise GeometryError("integration must vanish below top degree")
        # associativity on basis triples
        for i in range(b):
            for j in range(b):
                for k in range(b):
                    left = self.cup(self.cup(self.basis_vector(i), self.basis_vector(j)), self.basis_vector(k))
                    right = self.cup(self.basis_vector(i), self.cup(self.basis_vector(j), self.basis_vector(k)))
                    if left != right:
                        raise GeometryError("cup table not associative")
        gram = [[self.pairing(self.basis_vector(i), self.basis_vector(j)) for j in range(b)] for i in range(b)]
        if _invert_fraction_matrix(gram) is None:
            raise GeometryError("singular pairing")


def _fraction_kernel(rows):
    """Basis of the left null space of a matrix with exact entries."""
    m = len(rows)
    if m == 0:
        return []
    ncols = len(rows[0])
    # row-reduce [A | I] and read kernel vectors off zero rows of A
    aug = [[Fraction(rows[i][j]) for j in range(ncols)] + [Fraction(int(i == k)) for k in range(m)] for i in range(m)]
    pivot_row = 0
    for col in range(ncols):
        pr = next((r for r in range(pivot_row, m) if aug[r][col] != 0), None)
        if pr is None:
            continue
        aug[pivot_row], aug[pr] = aug[pr], aug[pivot_row]
        pv = aug[pivot_row][col]
        aug[pivot_row] = [v / pv for v in aug[pivot_row]]
        for r in range(m):
            if r != pivot_row and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [a - f * b for a, b in zip(aug[r], aug[pivot_row])]
        pivot_row += 1
    return [row[ncols:] for row in aug[pivot_row:]]


def _invert_fraction_matrix(rows):
    n = len(rows)
    aug = [[Fraction(rows[i][j]) for j in range(n)] + [Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if aug[r][col] != 0), None)
        if pivot is None:
            return None
        aug[col], aug[pivot] = aug[pivot], aug[col]
        pv = aug[col][col]
        aug[col] = [v / pv for v in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [a - f * b for a, b in zip(aug[r], aug[col])]
    return [row[n:] for row in aug]


# ---------------------------------------------------------------------------
# Sector indices
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SectorIndex:
    """Contact-order vector labeling a summand of the relative state space."""

    s: tuple[int, ...]
    class_tag: str = "identity"  # "identity" or "point"

    def __post_init__(self):
        if self.class_tag not in ("identity", "point"):
            raise GeometryError("class_tag must be 'identity' or 'point'")

    def negatives(self) -> int:
        return sum(1 for v in self.s if v < 0)

    def support(self) -> tuple[int, ...]:
        return tuple(i for i, v in enumerate(self.s) if v != 0)

    def stratum_nonempty(self, pair: "ToricFanoPair") -> bool:
        return pair.cone_containing(self.support()) is not None

    def deg0(self, pair: "ToricFanoPair") -> Fraction:
        """deg0 grading: identity -> #negatives; point -> dim D_s + #negatives."""
        if self.class_tag == "identity":
            return Fraction(self.negatives())
        return Fraction(pair.stratum_dim(self.support()) + self.negatives())


# ---------------------------------------------------------------------------
# The pair (X, D)
# ---------------------------------------------------------------------------


class ToricFanoPair:
    def __init__(
        self,
        name: str,
        dim: int,
        rays: Sequence[Sequence[int]],
        max_cones: Sequence[Iterable[int]],
        intersection: Sequence[Sequence[int]],
        ring: CohomologyRing,
        boundary: str = "toric",
        point_invariants: Mapping[tuple[int, ...], Fraction] | None = None,
        ambient: "ToricFanoPair | None" = None,
    ) -> None:
        self.name = name
        self.ambient = ambient
        self.dim = dim
        self.rays = tuple(tuple(int(c) for c in ray) for ray in rays)
        self.max_cones = tuple(tuple(sorted(int(i) for i in cone)) for cone in max_cones)
        self.intersection = tuple(tuple(int(v) for v in row) for row in intersection)
        self.ring = ring
        self.boundary = boundary
        self.point_invariants = dict(point_invariants or {})
        self.m = len(self.intersection)
        self.r = len(self.intersection[0]) if self.intersection else 0
        self.anticanonical_degree = tuple(
            sum(self.intersection[i][j] for i in range(self.m)) for j in range(self.r)
        )
        self._chart_cache: dict[tuple[int, tuple[int, ...]], Monomial] = {}
        self._validate()

    # -- validation ------------------------------------------------------

    def _validate(self) -> None:
        if self.boundary not in ("toric", "smooth"):
            raise GeometryError("boundary kind must be 'toric' or 'smooth'")
        if any(d <= 0 for d in self.anticanonical_degree):
            raise GeometryError("not Fano: (-K).beta <= 0 for some generator")
        if len(self.ring.divisor_classes) != self.m:
            raise GeometryError("divisor class count does not match ray count")
        # anticanonical consistency: any linear relation among the divisor
        # classes in H^2 must also annihilate the intersection rows, else the
        # stated boundary cannot represent -K_X against these curve classes
        for a in _fraction_kernel([list(v) for v in self.ring.divisor_classes]):
            for j in range(self.r):
                if sum(a[i] * self.intersection[i][j] for i in range(self.m)) != 0:
                    raise GeometryError(
                        "not anticanonical: divisor classes inconsistent with intersection numbers"
                    )
        if self.boundary == "toric":
            if any(len(ray) != self.dim for ray in self.rays):
                raise GeometryError("ray dimension mismatch")
            if len(self.rays) != self.m:
                raise GeometryError("ray count does not match intersection rows")
            covered = set()
            for cone in self.max_cones:
                if len(cone) != self.dim:
                    raise GeometryError("non-simplicial cone: wrong ray count")
                det = _det_int([[self.rays[i][k] for k in range(self.dim)] for i in cone])
                if abs(det) != 1:
                    raise GeometryError("non-simplicial cone: rays do not span Z^n")
                covered.update(cone)
            if covered != set(range(self.m)):
                raise GeometryError("a ray lies in no maximal cone (B not pure-dimensional)")

    # -- basic queries -----------------------------------------------------

    def adeg(self, beta: Sequence[int]) -> int:
        return sum(int(b) * d for b, d in zip(beta, self.anticanonical_degree))

    def effective(self, beta: Sequence[int]) -> bool:
        return all(int(b) >= 0 for b in beta)

    def betas_up_to(self, order: int, nonzero: bool = False):
        """All effective classes of anticanonical degree <= order."""
        out = []

        def rec(prefix, j, left):
            if j == self.r:
                out.append(tuple(prefix))
                return
            w = self.anticanonical_degree[j]
            for c in range(left // w + 1):
                rec(prefix + [c], j + 1, left - c * w)

        rec([], 0, order)
        if nonzero:
            out = [b for b in out if any(b)]
        return sorted(out, key=lambda b: (self.adeg(b), b))

    def intersection_number(self, i: int, beta: Sequence[int]) -> int:
        if not self.effective(beta):
            raise GeometryError("curve class outside the effective cone")
        return sum(self.intersection[i][j] * int(b) for j, b in enumerate(beta))

    def d_vector(self, beta: Sequence[int]) -> tuple[int, ...]:
        return tuple(self.intersection_number(i, beta) for i in range(self.m))

    def stratum_dim(self, support: Sequence[int]) -> int:
        """Complex dimension of D_s = cap_{i in supp} D_i (X itself for empty)."""
        support = tuple(sorted(set(support)))
        if not support:
            return self.dim
        if not self.cone_containing(support):
            raise GeometryError(f"stratum D_{support} is empty")
        return self.dim - len(support)

    def cone_containing(self, support: Sequence[int]):
        support = set(support)
        for cone in self.max_cones:
            if support <= set(cone):
                return cone
        return None

    def in_lattice_B(self, p: Sequence[int]) -> bool:
        p = tuple(int(v) for v in p)
        if any(v < 0 for v in p):
            return False
        return self.cone_containing([i for i, v in enumerate(p) if v]) is not None

    # -- series plumbing ---------------------------------------------------

    @property
    def ctx(self) -> SeriesContext:
        return SeriesContext(curve_degrees=self.anticanonical_degree, n_chart=self.m)

    def unit_vector(self, i: int) -> tuple[int, ...]:
        e = [0] * self.m
        e[i] = 1
        return tuple(e)

    def chart_monomial(self, p: Sequence[int], cone: Sequence[int]) -> Monomial:
        """Laurent monomial representing theta_p in the chart of a maximal cone."""
        p = tuple(int(v) for v in p)
        cone = tuple(sorted(cone))
        if cone not in self.max_cones:
            raise GeometryError(f"{cone} is not a maximal cone")
        if not self.in_lattice_B(p):
            raise GeometryError(f"{p} is not an integer point of B")
        mono = Monomial((0,) * self.r, (0,) * self.m)
        for i, power in enumerate(p):
            for _ in range(power):
                mono = mono * self._chart_unit(i, cone)
        return mono

    def _chart_unit(self, i: int, cone: tuple[int, ...]) -> Monomial:
        key = (i, cone)
        if key in self._chart_cache:
            return self._chart_cache[key]
        if i in cone:
            exp = [0] * self.m
            exp[i] = 1
            mono = Monomial((0,) * self.r, tuple(exp))
        else:
            beta0 = self._chart_relation_class(i, cone)
            chart = [0] * self.m
            for j in cone:
                chart[j] = -self.intersection_number(j, beta0)
            mono = Monomial(beta0, tuple(chart))
        self._chart_cache[key] = mono
        return mono

    def _chart_relation_class(self, i: int, cone: tuple[int, ...]) -> tuple[int, ...]:
        """Effective beta0 with D_i.beta0 = 1 and D_j.beta0 = 0 for j outside cone+{i}."""
        outside = [j for j in range(self.m) if j not in cone and j != i]
        solutions = []
        bound = max(self.anticanonical_degree) * 4
        for beta in self.betas_up_to(bound, nonzero=True):
            if self.intersection_number(i, beta) != 1:
                continue
            if any(self.intersection_number(j, beta) != 0 for j in outside):
                continue
            solutions.append(beta)
        if not solutions:
            raise GeometryError("chart relation unsolvable")
        if len(solutions) > 1:
            raise GeometryError("chart relation ambiguous; geometry outside scope")
        return solutions[0]

    def divisor_coefficients(self, phi: Sequence[Fraction]) -> tuple[Fraction, ...]:
        """Some exact solution c of sum_i c_i [D_i] = phi.

        The anticanonical consistency check at load time makes every curve
        pairing computed from such a solution independent of the choice.
        """
        b = len(self.ring.basis_names)
        cols = [list(vec) for vec in self.ring.divisor_classes]
        target = [Fraction(v) for v in phi]
        aug = [[cols[i][k] for i in range(self.m)] + [target[k]] for k in range(b)]
        pivots = []
        row = 0
        for col in range(self.m):
            pr = next((r for r in range(row, b) if aug[r][col] != 0), None)
            if pr is None:
                continue
            aug[row], aug[pr] = aug[pr], aug[row]
            pv = aug[row][col]
            aug[row] = [v / pv for v in aug[row]]
            for r in range(b):
                if r != row and aug[r][col] != 0:
                    f = aug[r][col]
                    aug[r] = [x - f * y for x, y in zip(aug[r], aug[row])]
            pivots.append(col)
            row += 1
        for r in range(row, b):
            if aug[r][self.m] != 0:
                raise GeometryError("class is not a combination of boundary divisors")
        c = [Fraction(0)] * self.m
        for r, col in enumerate(pivots):
            c[col] = aug[r][self.m]
        return tuple(c)

    def curve_pairing(self, phi: Sequence[Fraction], beta: Sequence[int]) -> Fraction:
        """phi . beta for an H^2 class, through the intersection matrix."""
        coeffs = self.divisor_coefficients(phi)
        return sum(
            (c * self.intersection_number(i, beta) for i, c in enumerate(coeffs)),
            start=Fraction(0),
        )

    def phi_from_divisors(self, coeffs: Sequence[Fraction]) -> tuple[Fraction, ...]:
        """Cohomology vector of sum_i coeffs[i] * [D_i]."""
        out = self.ring.zero()
        for c, vec in zip(coeffs, self.ring.divisor_classes):
            out = self.ring.add(out, self.ring.scale(Fraction(c), vec))
        return out

    # -- serialization -------------------------------------------------------

    def to_config(self) -> dict:
        b = len(self.ring.basis_names)
        return {
            "name": self.name,
            "dim": self.dim,
            "boundary": self.boundary,
            "rays": [list(r) for r in self.rays],
            "max_cones": [[i + 1 for i in cone] for cone in self.max_cones],
            "ne_generators": self.r,
            "intersection": [list(row) for row in self.intersection],
            "cohomology": {
                "basis": [
                    {"name": n, "degree": d}
                    for n, d in zip(self.ring.basis_names, self.ring.degrees)
                ],
                "mult": [
                    [[_frac_str(v) for v in self.ring.mult[(i, j)]] for j in range(b)]
                    for i in range(b)
                ],
                "integration": [_frac_str(v) for v in self.ring.integration],
            },
            "divisor_classes": [[_frac_str(v) for v in vec] for vec in self.ring.divisor_classes],
        }


def _det_int(rows) -> int:
    n = len(rows)
    if n == 0:
        return 1
    if n == 1:
        return rows[0][0]
    det = 0
    for j in range(n):
        minor = [r[:j] + r[j + 1 :] for r in rows[1:]]
        det += (-1) ** j * rows[0][j] * _det_int(minor)
    return det


# ---------------------------------------------------------------------------
# Presets
# ---------------------------------------------------------------------------


def _projective_space_ring(n: int) -> CohomologyRing:
    names = ["1"] + [f"H^{k}" if k > 1 else "H" for k in range(1, n + 1)]
    degrees = list(range(n + 1))
    b = n + 1
    mult = {}
    for i in range(b):
        for j in range(b):
            vec = [Fraction(0)] * b
            if i + j < b:
                vec[i + j] = Fraction(1)
            mult[(i, j)] = vec
    integration = [Fraction(0)] * b
    integration[n] = Fraction(1)
    hyper = [Fraction(0)] * b
    hyper[1] = Fraction(1)
    divisors = [tuple(hyper)] * (n + 1)
    return CohomologyRing(names, degrees, mult, integration, divisors, n)


def _p1xp1_ring() -> CohomologyRing:
    names = ["1", "H1", "H2", "pt"]
    degrees = [0, 1, 1, 2]
    zero = [Fraction(0)] * 4
    unit = lambda k: [Fraction(1) if i == k else Fraction(0) for i in range(4)]
    mult = {
        (0, 0): unit(0), (0, 1): unit(1), (0, 2): unit(2), (0, 3): unit(3),
        (1, 0): unit(1), (1, 1): list(zero), (1, 2): unit(3), (1, 3): list(zero),
        (2, 0): unit(2), (2, 1): unit(3), (2, 2): list(zero), (2, 3): list(zero),
        (3, 0): unit(3), (3, 1): list(zero), (3, 2): list(zero), (3, 3): list(zero),
    }
    integration = [Fraction(0), Fraction(0), Fraction(0), Fraction(1)]
    h1, h2 = tuple(unit(1)), tuple(unit(2))
    return CohomologyRing(names, degrees, mult, integration, [h1, h1, h2, h2], 2)


def _preset_projective(n: int) -> ToricFanoPair:
    rays = [[1 if j == i else 0 for j in range(n)] for i in range(n)]
    rays.append([-1] * n)
    cones = [tuple(sorted(set(range(n + 1)) - {i})) for i in range(n + 1)]
    intersection = [[1]] * (n + 1)
    return ToricFanoPair(
        name=f"P{n}",
        dim=n,
        rays=rays,
        max_cones=cones,
        intersection=intersection,
        ring=_projective_space_ring(n),
    )


def _preset_p1xp1() -> ToricFanoPair:
    rays = [[1, 0], [-1, 0], [0, 1], [0, -1]]
    cones = [(0, 2), (0, 3), (1, 2), (1, 3)]
    # rows: divisors, columns: the two rulings
    intersection = [[1, 0], [1, 0], [0, 1], [0, 1]]
    return ToricFanoPair(
        name="P1xP1",
        dim=2,
        rays=rays,
        max_cones=cones,
        intersection=intersection,
        ring=_p1xp1_ring(),
    )


def _preset_p2_cubic() -> ToricFanoPair:
    ring = _projective_space_ring(2)
    cubic = tuple(3 * v for v in ring.divisor_classes[0])
    ring_smooth = CohomologyRing(
        ring.basis_names, ring.degrees,
        {k: list(v) for k, v in ring.mult.items()},
        ring.integration, [cubic], 2,
    )
    return ToricFanoPair(
        name="P2_cubic",
        dim=2,
        rays=[],
        max_cones=[(0,)],
        intersection=[[3]],
        ring=ring_smooth,
        boundary="smooth",
        ambient=_preset_projective(2),
    )


_PRESETS = {
    "p1": lambda: _preset_projective(1),
    "p2": lambda: _preset_projective(2),
    "p3": lambda: _preset_projective(3),
    "p1xp1": _preset_p1xp1,
    "p2_cubic": _preset_p2_cubic,
}

PRESET_NAMES = ("P1", "P2", "P3", "P1xP1", "P2_cubic")


def load_pair(config) -> ToricFanoPair:
    """Build and validate a pair from a preset name, dict or JSON path."""
    if isinstance(config, ToricFanoPair):
        return config
    if isinstance(config, str) and config.lower() in _PRESETS:
        return _PRESETS[config.lower()]()
    if isinstance(config, (str, Path)):
        path = Path(config)
        if not path.exists():
            raise GeometryError(f"unknown preset or missing file: {config}")
        config = json.loads(path.read_text())
    if not isinstance(config, Mapping):
        raise GeometryError("geometry config must be a mapping")
    try:
        coh = config["cohomology"]
        names = [b["name"] for b in coh["basis"]]
        degrees = [b["degree"] for b in coh["basis"]]
        ring = CohomologyRing(
            names,
            degrees,
            coh["mult"],
            [_frac(v) for v in coh["integration"]],
            [[_frac(v) for v in vec] for vec in config["divisor_classes"]],
            int(config["dim"]),
        )
        inv = {}
        for entry in config.get("point_invariants", []):
            inv[tuple(int(b) for b in entry["beta"])] = _frac(entry["value"])
        ambient = config.get("ambient")
        pair = ToricFanoPair(
            name=config.get("name", "custom"),
            dim=int(config["dim"]),
            rays=config.get("rays", []),
            max_cones=[[i - 1 for i in cone] for cone in config["max_cones"]],
            intersection=config["intersection"],
            ring=ring,
            boundary=config.get("boundary", "toric"),
            point_invariants=inv,
            ambient=load_pair(ambient) if ambient is not None else None,
        )
    except KeyError as exc:
        raise GeometryError(f"geometry config missing field {exc}") from exc
    if int(config.get("ne_generators", pair.r)) != pair.r:
        raise GeometryError("ne_generators disagrees with intersection matrix width")
    return pair
