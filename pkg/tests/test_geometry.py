"""Pair ingestion, fan validation, chart monomials, cohomology checks."""

import json
from fractions import Fraction

import pytest

from lgmk.geometry import (
    GeometryError,
    SectorIndex,
    load_pair,
    PRESET_NAMES,
)
from lgmk.series import Monomial


@pytest.fixture(scope="module")
def p2():
    return load_pair("P2")


@pytest.fixture(scope="module")
def p1():
    return load_pair("P1")


@pytest.fixture(scope="module")
def p1xp1():
    return load_pair("P1xP1")


def test_p2_preset_shape(p2):
    assert p2.dim == 2 and p2.m == 3 and p2.r == 1
    assert p2.rays == ((1, 0), (0, 1), (-1, -1))
    assert [p2.intersection_number(i, (1,)) for i in range(3)] == [1, 1, 1]
    assert p2.anticanonical_degree == (3,)


def test_p1xp1_preset_shape(p1xp1):
    assert p1xp1.m == 4 and p1xp1.r == 2
    # each ruling meets its two transverse divisors once and its own pair not at all
    assert [p1xp1.intersection_number(i, (1, 0)) for i in range(4)] == [1, 1, 0, 0]
    assert [p1xp1.intersection_number(i, (0, 1)) for i in range(4)] == [0, 0, 1, 1]
    assert p1xp1.anticanonical_degree == (2, 2)


def test_all_presets_load():
    for name in PRESET_NAMES:
        pair = load_pair(name)
        assert pair.name == name


def test_intersection_linearity(p1xp1):
    beta = (2, 3)
    for i in range(4):
        a = p1xp1.intersection_number(i, (1, 0))
        b = p1xp1.intersection_number(i, (0, 1))
        assert p1xp1.intersection_number(i, beta) == 2 * a + 3 * b
        assert p1xp1.intersection_number(i, (0, 0)) == 0


def test_intersection_rejects_ineffective(p2):
    with pytest.raises(GeometryError):
        p2.intersection_number(0, (-1,))


def test_not_anticanonical_rejected(p2):
    config = p2.to_config()
    config["divisor_classes"] = config["divisor_classes"][:2] + [["0", "0", "0"]]
    with pytest.raises(GeometryError, match="anticanonical"):
        load_pair(config)


def test_non_fano_rejected(p2):
    config = p2.to_config()
    config["intersection"] = [[1], [1], [-2]]
    # row sums now give (-K).beta = 0
    with pytest.raises(GeometryError, match="Fano"):
        load_pair(config)


def test_non_simplicial_cone_rejected(p2):
    config = p2.to_config()
    config["rays"] = [[1, 0], [0, 1], [-2, -1]]  # third cone det = 2
    with pytest.raises(GeometryError, match="cone"):
        load_pair(config)


def test_singular_pairing_rejected(p2):
    config = p2.to_config()
    config["cohomology"]["integration"] = ["0", "0", "0"]
    with pytest.raises(GeometryError, match="singular|integration"):
        load_pair(config)


def test_roundtrip_through_json(tmp_path, p1xp1):
    path = tmp_path / "pair.json"
    path.write_text(json.dumps(p1xp1.to_config()))
    again = load_pair(path)
    assert again.intersection == p1xp1.intersection
    assert again.max_cones == p1xp1.max_cones
    assert again.ring.mult == p1xp1.ring.mult


# -- chart monomials ---------------------------------------------------------


def test_chart_monomial_inside_cone(p2):
    cone = (0, 1)
    mono = p2.chart_monomial((1, 0, 0), cone)
    assert mono == Monomial((0,), (1, 0, 0))


def test_chart_monomial_outside_cone(p2):
    # theta_{e3} in the chart of cone(v1, v2) is t * x1^-1 * x2^-1
    mono = p2.chart_monomial((0, 0, 1), (0, 1))
    assert mono == Monomial((1,), (-1, -1, 0))


def test_chart_monomial_unit(p2):
    mono = p2.chart_monomial((0, 0, 0), (0, 1))
    assert mono.is_unit()


def test_chart_monomial_t_degree_nonnegative():
    for name in ("P1", "P2", "P3", "P1xP1"):
        pair = load_pair(name)
        for cone in pair.max_cones:
            for i in range(pair.m):
                mono = pair.chart_monomial(pair.unit_vector(i), cone)
                assert pair.adeg(mono.curve) >= 0
                if i in cone:
                    exp = [0] * pair.m
                    exp[i] = 1
                    assert mono == Monomial((0,) * pair.r, tuple(exp))


def test_chart_relation_product_is_t_beta():
    # prod_i chart(e_i)^(D_i.beta) = t^beta for every generator beta
    for name in ("P1", "P2", "P3", "P1xP1"):
        pair = load_pair(name)
        for cone in pair.max_cones:
            for j in range(pair.r):
                beta = tuple(1 if k == j else 0 for k in range(pair.r))
                prod = Monomial((0,) * pair.r, (0,) * pair.m)
                for i in range(pair.m):
                    d = pair.intersection_number(i, beta)
                    for _ in range(d):
                        prod = prod * pair.chart_monomial(pair.unit_vector(i), cone)
                assert prod == Monomial(beta, (0,) * pair.m)


def test_lattice_membership(p1):
    assert p1.in_lattice_B((1, 0))
    assert p1.in_lattice_B((0, 3))
    assert not p1.in_lattice_B((1, 1))  # rays of P1 span no common cone
    assert not p1.in_lattice_B((-1, 0))


# -- cohomology --------------------------------------------------------------


def test_integration_and_pairing(p2):
    ring = p2.ring
    assert ring.integrate(ring.point_class()) == 1
    H = ring.divisor_classes[0]
    assert ring.pairing(H, H) == 1
    duals = ring.dual_basis()
    for i in range(len(ring.basis_names)):
        for j in range(len(ring.basis_names)):
            assert ring.pairing(duals[i], ring.basis_vector(j)) == (1 if i == j else 0)


def test_c1_is_divisor_sum(p1xp1):
    ring = p1xp1.ring
    expected = ring.sum(ring.divisor_classes)
    assert ring.c1 == expected
    assert ring.c1 == (0, 2, 2, 0)


def test_exp_nilpotent(p2):
    ring = p2.ring
    H = ring.divisor_classes[0]
    e = ring.exp_nilpotent(H)
    assert e == (1, 1, Fraction(1, 2))


# -- sector indices -----------------------------------------------------------


def test_sector_deg0(p2):
    s = SectorIndex((-1, -1, -1), "identity")
    assert s.deg0(p2) == 3
    pt0 = SectorIndex((0, 0, 0), "point")
    assert pt0.deg0(p2) == 2  # dim X + no negatives
    mixed = SectorIndex((2, 0, 0), "point")
    assert mixed.deg0(p2) == 1  # dim D_1 = 1


def test_sector_empty_stratum(p1):
    s = SectorIndex((1, 1), "point")
    assert not s.stratum_nonempty(p1)
    with pytest.raises(GeometryError):
        s.deg0(p1)


def test_smooth_divisor_preset():
    pair = load_pair("P2_cubic")
    assert pair.boundary == "smooth"
    assert pair.m == 1 and pair.r == 1
    assert pair.intersection_number(0, (1,)) == 3
    assert pair.anticanonical_degree == (3,)
    mono = pair.chart_monomial((1,), (0,))
    assert mono == Monomial((0,), (1,))
