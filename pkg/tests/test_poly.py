from fractions import Fraction

import pytest
import sympy

from src.errors import ArityMismatch, PolynomialSyntaxError, UnknownVariable, ZeroDenominator
from src.poly import Monomial, Polynomial, infer_nvars, jacobian, parse


def test_parse_and_format_square_of_difference():
    f = parse("(x1 - x2)^2", 2)
    assert f == parse("x1^2 - 2*x1*x2 + x2^2", 2)
    assert f.format() == "x1^2 - 2*x1*x2 + x2^2"


def test_parse_two_term_cubic():
    f = parse("x1^2*x2 + x1*x2^2", 2)
    assert len(f.terms) == 2
    assert f.total_degree() == 3


def test_rational_cancellation_gives_zero():
    f = parse("1/2*x1 - 1/2*x1", 1)
    assert f.is_zero()
    assert f.format() == "0"
    assert f.total_degree() == -1


def test_leading_minus_and_rational_coefficients():
    f = parse("-x1 + 3/4", 1)
    assert f.format() == "-x1 + 3/4"
    assert f.coefficient(Monomial.of({1: 1})) == -1
    assert parse(f.format(), 1) == f


def test_syntax_error_reports_position():
    with pytest.raises(PolynomialSyntaxError) as info:
        parse("x1 + * x2", 2)
    assert info.value.position == 5


def test_unknown_variable_and_zero_denominator():
    with pytest.raises(UnknownVariable):
        parse("x3 + x1", 2)
    with pytest.raises(UnknownVariable):
        parse("y + 1", 1)
    with pytest.raises(ZeroDenominator):
        parse("1/0*x1", 1)


def test_custom_variable_names():
    q = parse("T^2 - 2", 1, names=["T"])
    assert q.format(["T"]) == "T^2 - 2"
    assert parse("e1*e2 - 3*e3", 3, names=["e1", "e2", "e3"]).total_degree() == 2


def test_arity_mismatch():
    with pytest.raises(ArityMismatch):
        parse("x1", 1) + parse("x1", 2)


def test_arithmetic():
    a = parse("x1 - x2", 2)
    b = parse("x1 + x2", 2)
    assert a * b == parse("x1^2 - x2^2", 2)
    assert a ** 0 == 1
    assert (a + 2) - 2 == a
    assert a * Fraction(1, 2) == parse("1/2*x1 - 1/2*x2", 2)


def test_evaluate_motzkin():
    motzkin = parse("x1^4*x2^2 + x1^2*x2^4 + x3^6 - 3*x1^2*x2^2*x3^2", 3)
    assert motzkin.evaluate((1, 1, 1)) == 0
    assert motzkin.evaluate((Fraction(1, 2), 0, 1)) == 1


def test_substitute_merges_variables():
    f = parse("x1*x2", 2)
    t = Polynomial.variable(1, 1)
    assert f.substitute({1: t, 2: t}) == t ** 2
    with pytest.raises(ArityMismatch):
        f.substitute({1: t})


def test_rename_adds_exponents_of_merged_variables():
    f = parse("x1^2*x2^3 + x3", 3)
    assert f.rename({2: 1}, 3) == parse("x1^5 + x3", 3)
    assert f.rename({1: 2, 2: 1}, 3) == parse("x1^3*x2^2 + x3", 3)
    assert parse("x1 - x2", 2).rename({2: 1}, 1).is_zero()


def test_jacobian():
    assert jacobian([parse("x1*x2*x3", 3)]) == [[parse("x2*x3", 3), parse("x1*x3", 3), parse("x1*x2", 3)]]
    assert jacobian([Polynomial.constant(5, 2)]) == [[Polynomial.zero(2), Polynomial.zero(2)]]
    assert jacobian([parse("x1^2 + x2^2", 2)]) == [[parse("2*x1", 2), parse("2*x2", 2)]]


def test_derivative_matches_difference_quotients():
    f = parse("x1^4 - 3*x1^2*x2 + x2^3", 2)
    df = f.diff(1)
    a = (Fraction(1, 3), Fraction(-2))
    h = Fraction(1)
    errors = []
    for _ in range(10):
        h /= 2
        quotient = (f.evaluate((a[0] + h, a[1])) - f.evaluate(a)) / h
        errors.append(abs(quotient - df.evaluate(a)))
    assert all(later < earlier for earlier, later in zip(errors, errors[1:]))


def test_homogeneous_parts():
    f = parse("x1^2 + x1*x2 + x2 + 1", 2)
    assert f.homogeneous_part(2) == parse("x1^2 + x1*x2", 2)
    assert not f.is_homogeneous()
    assert parse("x1^2 - x2^2", 2).is_homogeneous()


def test_infer_nvars():
    assert infer_nvars("x1*x12 + x3") == 12
    assert infer_nvars("7") == 0


def test_expansion_matches_sympy():
    a, b, c = sympy.symbols("a b c")
    ours = parse("(x1 + 2*x2 - x3)^5", 3)
    theirs = sympy.Poly(sympy.expand((a + 2 * b - c) ** 5), a, b, c)
    expected = {exps: Fraction(int(coeff)) for exps, coeff in theirs.terms()}
    assert ours.dense_terms() == expected
