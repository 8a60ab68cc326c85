import random
from fractions import Fraction
from itertools import product

import pytest

from src.combi import Partition
from src.decide import decide_real_preimage
from src.emptiness import (
    SAMPLE_GRID,
    NonnegStatus,
    ObjectiveSpec,
    build_objective,
    critical_points_sym,
    lagrange_system,
    nonneg_degree_principle,
    _certify,
    real_emptiness,
    verify_regularity,
)
from src.errors import AssumptionViolated, NotSymmetric
from src.groebner import groebner_basis
from src.poly import parse
from src.realroot import UniPoly
from src.symfun import BasisKind, BlockStructure, basis_polynomial, ftsp_rewrite, lambda_substitute
from src.zerodim import solve_zero_dim


def test_objective_shape(rng):
    spec = build_objective(Partition((1, 2)), rng)
    assert spec.c == (1, 1)
    assert all(len(row) == 1 and row[0] >= 1 for row in spec.a)
    (a1,), (a2,) = spec.a
    assert spec.polynomial() == parse(f"{a1}*x1 + x1^2 + {a2}*x2 + x2^2", 2)


def test_objective_without_top_power():
    spec = ObjectiveSpec(Partition((1, 1)), ((Fraction(2), Fraction(3)),), (0,))
    assert spec.polynomial() == parse("2*x1 + 3*x1^2 + 2*x2 + 3*x2^2", 2)


def test_lagrange_system():
    system = lagrange_system([parse("x1^2 + x2^2 - 1", 2)], parse("x1 + x2", 2))
    assert system.nvars == 2
    assert system.multipliers == 1
    assert system.equations == (
        parse("x1^2 + x2^2 - 1", 3),
        parse("2*x1*x3 + 1", 3),
        parse("2*x2*x3 + 1", 3),
    )


def test_critical_points_on_a_single_orbit_type(rng):
    partition = Partition((2,))
    reduced = [lambda_substitute(parse("x1^2 + x2^2 - 1", 2), partition)]
    objective = build_objective(partition, rng).polynomial()
    orbit = critical_points_sym(reduced, objective, partition, rng)
    assert orbit.param.nvars == 1
    assert orbit.param.degree == 2
    assert decide_real_preimage(orbit)


@pytest.mark.parametrize(
    "texts,empty",
    [
        (["x1^2 + x2^2 - 1"], False),
        (["x1^2 + x2^2 + 1"], True),
        (["x1 + x2"], False),
        (["x1^2 + x2^2", "x1 + x2"], False),
        (["x1*x2 + 1", "x1 + x2"], False),
        (["x1*x2 - 1", "x1 + x2"], True),
    ],
)
def test_real_emptiness_in_two_variables(texts, empty, rng):
    polys = [parse(text, 2) for text in texts]
    assert real_emptiness(polys, rng) is empty


@pytest.mark.slow
def test_real_emptiness_in_three_variables(seeded_rng):
    n = 3
    assert real_emptiness([parse("x1^2 + x2^2 + x3^2 + 1", n)], seeded_rng) is True
    assert real_emptiness([parse("x1^2 + x2^2 + x3^2 - 2", n)], seeded_rng) is False


def test_real_emptiness_input_checks(rng):
    assert real_emptiness([], rng) is False
    with pytest.raises(AssumptionViolated):
        real_emptiness([parse("x1", 1), parse("x1^2", 1)], rng)
    with pytest.raises(NotSymmetric):
        real_emptiness([parse("x1 - x2", 2)], rng)
    with pytest.raises(AssumptionViolated):
        real_emptiness([parse("x1^2 + x2^2", 2)], rng, verify=True)


def test_verify_regularity():
    assert verify_regularity([parse("x1^2 + x2^2 - 1", 2)]) is True
    assert verify_regularity([parse("x1 + x2", 2)]) is True
    assert verify_regularity([parse("x1^2 + x2^2", 2)]) is False
    assert verify_regularity([parse("x1^2 + x2^2 - 2", 2), parse("x1 + x2", 2)]) is True


def test_witness_for_a_linear_form(rng):
    result = nonneg_degree_principle(parse("x1 + x2 + x3", 3), rng)
    assert result.status is NonnegStatus.WITNESS
    assert result.witness == (-1, -1, -1)
    assert result.pattern == Partition((3,))


def test_witness_at_the_origin(rng):
    result = nonneg_degree_principle(parse("x1^2 + x2^2 - 3", 2), rng)
    assert result.status is NonnegStatus.WITNESS
    assert result.witness == (0, 0)


def test_sum_of_monomial_squares_is_certified(rng):
    f = parse("(x1^2 + x2^2 + x3^2 + x4^2)^2 - x1^4 - x2^4 - x3^4 - x4^4", 4)
    assert nonneg_degree_principle(f, rng).status is NonnegStatus.NONNEGATIVE


def test_certified_through_critical_values(rng):
    f = parse("x1^2 + x2^2 - 2*x1 - 2*x2 + 2", 2)
    assert nonneg_degree_principle(f, rng).status is NonnegStatus.NONNEGATIVE


def test_positive_dimensional_minimum_stays_unknown(rng):
    result = nonneg_degree_principle(parse("(x1^2 + x2^2 - 1)^2", 2), rng)
    assert result.status is NonnegStatus.UNKNOWN
    assert result.pattern == Partition((1, 1))


def test_witness_is_negative():
    f = parse("x1^4 + x2^4 + x3^4 - 4*x1*x2*x3 + 1/2", 3)
    result = nonneg_degree_principle(f)
    assert result.status is NonnegStatus.WITNESS
    assert f.evaluate(result.witness) < 0


def test_nonneg_rejects_non_symmetric_input():
    with pytest.raises(NotSymmetric):
        nonneg_degree_principle(parse("x1^2 - x2", 2))
    assert nonneg_degree_principle(parse("0", 2)).status is NonnegStatus.NONNEGATIVE


def test_univariate_certificates(rng):
    assert _certify(parse("-3", 1), rng) is False
    assert _certify(parse("-x1^2", 1), rng) is False
    assert _certify(parse("x1^4 - x1 + 1", 1), rng) is True
    assert _certify(parse("x1^2 - 2*x1", 1), rng) is False


def vanishes_on_param(h, param):
    """``h(v / q') = 0`` at every complex root of ``q``."""
    degree = h.total_degree()
    acc = UniPoly()
    for m, c in h.terms.items():
        term = UniPoly([c]) * param.denominator ** (degree - m.degree)
        for var, exp in m.exponents:
            term = term * param.v[var - 1] ** exp % param.q
        acc = (acc + term) % param.q
    return acc.is_zero()


@pytest.mark.parametrize("parts", [(2,), (1, 2)])
def test_critical_points_satisfy_constraints_and_lagrange_rows(parts):
    partition = Partition(parts)
    n = partition.n
    f = parse(" + ".join(f"x{i}^2" for i in range(1, n + 1)) + " - 3", n)
    reduced = [lambda_substitute(f, partition)]
    objective = build_objective(partition, random.Random(3)).polynomial()
    orbit = critical_points_sym(reduced, objective, partition, random.Random(11))

    bs = BlockStructure.from_partition(partition)
    constraints = [ftsp_rewrite(g, BasisKind.ELEMENTARY, bs) for g in reduced]
    system = lagrange_system(constraints, ftsp_rewrite(objective, BasisKind.ELEMENTARY, bs))
    ell = partition.length
    full = solve_zero_dim(system.equations, ell + 1, rng=random.Random(11), gamma_vars=range(1, ell + 1))
    assert full.project(ell) == orbit.param
    assert orbit.param.degree > 0
    assert all(vanishes_on_param(g, orbit.param) for g in constraints)
    assert all(vanishes_on_param(row, full) for row in system.equations)


def random_quadric(rng, n):
    """``alpha p2 + beta p1^2 + gamma p1`` with random small coefficients."""
    alpha, beta, gamma = rng.randint(1, 3), rng.randint(-2, 2), rng.randint(-3, 3)
    p1 = basis_polynomial(BasisKind.POWER_SUM, 1, n)
    return basis_polynomial(BasisKind.POWER_SUM, 2, n) * alpha + p1 ** 2 * beta + p1 * gamma


def planted_instance(rng, n):
    """A symmetric system together with its known real emptiness."""
    kind = rng.choice(["point", "positive", "inconsistent"])
    f = random_quadric(rng, n)
    if kind == "point":
        point = tuple(rng.choice(SAMPLE_GRID) for _ in range(n))
        return [f - f.evaluate(point)], False
    if kind == "positive":
        shift = basis_polynomial(BasisKind.POWER_SUM, 1, n) - rng.randint(-2, 2)
        f = basis_polynomial(BasisKind.POWER_SUM, 2, n) * rng.randint(1, 3) + shift ** 2 * rng.randint(0, 2)
        return [f + rng.randint(1, 5)], True
    return [f - 1, f + rng.randint(1, 5)], True


def regular_instances(rng, n, count):
    found = []
    while len(found) < count:
        polys, empty = planted_instance(rng, n)
        if verify_regularity(polys):
            found.append((polys, empty))
    return found


def check_against_certificates(polys, empty):
    n = polys[0].nvars
    if empty:
        # either strictly positive or complex infeasible
        if len(polys) == 1:
            assert all(polys[0].evaluate(p) > 0 for p in product(SAMPLE_GRID, repeat=n))
        else:
            assert groebner_basis(polys) == [1]
    else:
        assert any(all(g.evaluate(p) == 0 for g in polys) for p in product(SAMPLE_GRID, repeat=n))


def test_real_emptiness_on_planted_regular_instances(seeded_rng):
    for polys, empty in regular_instances(seeded_rng, 2, 20):
        check_against_certificates(polys, empty)
        assert real_emptiness(polys, seeded_rng) is empty


@pytest.mark.slow
def test_real_emptiness_on_planted_regular_instances_in_three_variables(seeded_rng):
    for polys, empty in regular_instances(seeded_rng, 3, 4):
        check_against_certificates(polys, empty)
        assert real_emptiness(polys, seeded_rng) is empty


@pytest.mark.slow
def test_battery_of_power_sum_systems(rng):
    n = 3
    p1 = basis_polynomial(BasisKind.POWER_SUM, 1, n)
    p2 = basis_polynomial(BasisKind.POWER_SUM, 2, n)
    assert real_emptiness([p2 + 1], rng) is True
    assert real_emptiness([p2 - 1], rng) is False
    assert real_emptiness([p1], rng) is False
