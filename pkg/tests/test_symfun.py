import random
from fractions import Fraction

import pytest

from src.combi import Composition, Partition, enumerate_compositions
from src.errors import NotInSubring, NotSymmetric, TooManyVariables, UnsupportedBasisPair
from src.poly import Monomial, Polynomial, jacobian, parse
from src.symfun import (
    BasisKind,
    BlockStructure,
    basis_polynomial,
    distribution_matrix,
    ftsp_rewrite,
    is_symmetric,
    lambda_substitute,
    newton_convert,
    subring_membership,
    symmetric_closure_gate,
    vandermonde_map,
    weighted_power_sum,
)

FTSF = "x1^2*x2 + x1^2*x3 + x2^2*x1 + x2^2*x3 + x3^2*x1 + x3^2*x2"


def ys(text, count):
    return parse(text, count, names=[f"y{k}" for k in range(1, count + 1)])


def test_basis_polynomials():
    assert basis_polynomial("e", 2, 3) == parse("x1*x2 + x1*x3 + x2*x3", 3)
    h2 = basis_polynomial(BasisKind.COMPLETE_HOMOGENEOUS, 2, 3)
    assert len(h2.terms) == 6
    assert basis_polynomial("m", (2, 1), 3) == parse(FTSF, 3)
    assert basis_polynomial("e", 0, 2) == 1


def test_symmetry_checks():
    assert is_symmetric(basis_polynomial("p", 2, 3))
    assert not is_symmetric(parse("x1 - x2", 2))
    f = parse("(x1 + x2 + x3)^3 + x4^2 + x5^2", 5)
    assert is_symmetric(f, BlockStructure((3, 2)))
    assert not is_symmetric(f)


def test_ftsp_rewrite_in_three_bases():
    f = parse(FTSF, 3)
    assert ftsp_rewrite(f, "e") == ys("y1*y2 - 3*y3", 3)
    assert ftsp_rewrite(f, "p") == ys("y1*y2 - y3", 3)
    assert ftsp_rewrite(f, "h") == ys("-2*y1^3 + 5*y1*y2 - 3*y3", 3)


@pytest.mark.parametrize("kind", ["e", "p", "h"])
def test_rewrite_expands_back(kind):
    f = parse(FTSF + " + 2*x1*x2*x3 - 5", 3)
    rewritten = ftsp_rewrite(f, kind)
    gens = [basis_polynomial(kind, k, 3) for k in range(1, 4)]
    assert rewritten.substitute({k: g for k, g in enumerate(gens, start=1)}, nvars=3) == f


def test_block_rewrite():
    bs = BlockStructure((2, 1))
    f = parse("x1*x2 + x1^2 + x2^2 + x3^3", 3)
    rewritten = ftsp_rewrite(f, "e", bs)
    assert rewritten == ys("y1^2 - y2 + y3^3", 3)


def test_rewrite_rejects_non_symmetric_input():
    with pytest.raises(NotSymmetric):
        ftsp_rewrite(parse("x1 - x2", 2))
    with pytest.raises(UnsupportedBasisPair):
        ftsp_rewrite(parse("x1 + x2", 2), "m")


def test_newton_identities():
    p_in_e = newton_convert(ys("y2", 2), "p", "e", 3)
    assert p_in_e == ys("y1^2 - 2*y2", 3)
    assert newton_convert(ys("y1", 1), "p", "e", 3) == ys("y1", 3)
    assert newton_convert(ys("y3", 3), "p", "e", 3) == ys("y1^3 - 3*y1*y2 + 3*y3", 3)


def test_newton_round_trip():
    expression = ys("y1^2*y2 - 3*y3 + 1/2*y2^2", 3)
    there = newton_convert(expression, "e", "p", 3)
    assert newton_convert(there, "p", "e", 3) == expression


def test_subring_membership():
    gens = [basis_polynomial("e", k, 3) for k in range(1, 4)]
    assert subring_membership(parse(FTSF, 3), gens, 2) == ys("y1*y2 - 3*y3", 3)
    with pytest.raises(NotInSubring):
        subring_membership(parse("x1", 1), [parse("x1^2", 1)], 3)
    g = parse("x1 + 2*x2 - 1", 2)
    assert subring_membership(g * g, [g], 2) == ys("y1^2", 1)


def test_lambda_substitute():
    p2 = basis_polynomial("p", 2, 3)
    assert lambda_substitute(p2, Composition((2, 1))) == parse("2*x1^2 + x2^2", 2)
    f = parse(FTSF, 3)
    assert lambda_substitute(f, Composition((1, 1, 1))) == f
    p1 = basis_polynomial("p", 1, 7)
    assert lambda_substitute(p1, Partition.parse("2^2 3^1")) == parse("2*x1 + 2*x2 + 3*x3", 3)


def test_distribution_matrix():
    d = distribution_matrix(Partition.parse("2^2 3^1"))
    assert d.shape == (3, 7)
    third = Fraction(1, 3)
    half = Fraction(1, 2)
    assert d.entries == (
        (half, half, 0, 0, 0, 0, 0),
        (0, 0, half, half, 0, 0, 0),
        (0, 0, 0, 0, third, third, third),
    )
    assert d.row_labels() == [(1, 1), (1, 2), (2, 1)]
    assert distribution_matrix(Composition((1, 1, 1))).entries == ((1, 0, 0), (0, 1, 0), (0, 0, 1))
    assert distribution_matrix(Composition((4,))).entries == ((Fraction(1, 4),) * 4,)


def _chain_rule_holds(f: Polynomial, lam: Composition) -> bool:
    # Jac(f^[lam]) = (Jac f)^[lam] * D^T scaled back by the part sizes
    reduced = lambda_substitute(f, lam)
    (grad_reduced,) = jacobian([reduced])
    (grad,) = jacobian([f])
    d = distribution_matrix(lam)
    for t, row in enumerate(d.entries):
        combined = Polynomial.zero(lam.length)
        for column, weight in enumerate(row):
            if weight:
                combined = combined + lambda_substitute(grad[column], lam) * (weight * lam.parts[t])
        if combined != grad_reduced[t]:
            return False
    return True


def test_chain_rule_identity():
    rng = random.Random(11)
    for _ in range(50):
        n = rng.randint(2, 6)
        terms = {}
        for _ in range(4):
            exps = tuple(rng.randint(0, 2) for _ in range(n))
            terms[exps] = rng.randint(-5, 5)
        f = Polynomial.from_dense_terms(terms, n)
        lam = rng.choice(enumerate_compositions(n))
        assert _chain_rule_holds(f, lam)


def test_symmetric_closure_gate():
    assert symmetric_closure_gate([parse("x1 - x2", 2)]) == parse("2*(x1 - x2)^2", 2)
    assert symmetric_closure_gate([parse("x1", 2)]) == parse("x1^2 + x2^2", 2)
    with pytest.raises(TooManyVariables):
        symmetric_closure_gate([parse("x1", 3)], max_vars=2)


def test_weighted_power_sums():
    assert weighted_power_sum(1, (1, 1, 1)) == basis_polynomial("p", 1, 3)
    assert weighted_power_sum(2, (2, 1)) == parse("2*x1^2 + x2^2", 2)
    assert vandermonde_map((1, 2), 3, weights=(2, 1)) == (4, 6, 10)


def weighted_exponents(n, bound):
    """Exponent vectors of ``y_1 .. y_n`` with ``sum k * a_k <= bound``."""
    found = [()]
    for k in range(1, n + 1):
        found = [vec + (a,) for vec in found for a in range(bound // k + 1)
                 if sum((i + 1) * x for i, x in enumerate(vec)) + k * a <= bound]
    return found


def random_generator_expression(rng, n, bound=4):
    choices = weighted_exponents(n, bound)
    terms = {}
    for exps in rng.sample(choices, min(4, len(choices))):
        terms[Monomial.from_dense(exps)] = Fraction(rng.randint(-5, 5), rng.randint(1, 3))
    return Polynomial(terms, n)


def expand(expression, kind, n):
    gens = {k: basis_polynomial(kind, k, n) for k in range(1, n + 1)}
    return expression.substitute(gens, nvars=n)


@pytest.mark.parametrize("kind", ["e", "p", "h"])
def test_random_rewrites_round_trip(kind):
    rng = random.Random(31)
    for _ in range(12):
        n = rng.randint(2, 5)
        expression = random_generator_expression(rng, n)
        assert ftsp_rewrite(expand(expression, kind, n), kind) == expression


def test_power_sum_rewrite_uses_low_generators_only():
    rng = random.Random(4)
    for _ in range(12):
        n = rng.randint(3, 5)
        f = expand(random_generator_expression(rng, n), "e", n)
        degree = f.total_degree()
        if f.is_zero() or degree > n:
            continue
        rewritten = ftsp_rewrite(f, "p")
        assert all(m.max_var <= degree for m in rewritten.terms)


@pytest.mark.parametrize("kind", ["e", "p", "h"])
def test_rewrite_agrees_with_the_polynomial_at_random_points(kind):
    rng = random.Random(12)
    n = 4
    f = expand(random_generator_expression(rng, n), "e", n) + parse("x1*x2*x3*x4", n)
    rewritten = ftsp_rewrite(f, kind)
    for _ in range(20):
        point = [Fraction(rng.randint(-6, 6), rng.randint(1, 4)) for _ in range(n)]
        values = [basis_polynomial(kind, k, n).evaluate(point) for k in range(1, n + 1)]
        assert rewritten.evaluate(values) == f.evaluate(point)
