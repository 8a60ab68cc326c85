"""
Gram-matrix sums of squares: constraint systems, exact certificate checks,
SDPA export and the representation of symmetric quartics.
"""
import logging
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple, Union

from .errors import CertificateWriteError, DimensionMismatch, OddDegree, TooFewVariables
from .linalg import is_positive_semidefinite
from .poly import Monomial, Polynomial, Scalar, grlex_key
from .symfun import BasisKind, basis_polynomial

logger = logging.getLogger(__name__)

Matrix = Sequence[Sequence[Scalar]]


@dataclass(frozen=True)
class GramConstraint:
    """``sum weight * Q[i][j] == rhs`` over ``(i, j, weight)`` with ``i <= j`` (0-based)."""

    monomial: Monomial
    rhs: Fraction
    entries: Tuple[Tuple[int, int, int], ...]


@dataclass(frozen=True)
class GramSystem:
    polynomial: Polynomial
    basis: Tuple[Monomial, ...]
    constraints: Tuple[GramConstraint, ...]

    @property
    def size(self) -> int:
        return len(self.basis)


def _monomials_of_degree(degree: int, nvars: int) -> List[Monomial]:
    """All monomials of the given degree, lexicographically descending."""
    if nvars == 0:
        return [Monomial.one()] if degree == 0 else []
    out = []

    def walk(var: int, remaining: int, prefix: Tuple[int, ...]):
        if var == nvars - 1:
            out.append(Monomial.from_dense(prefix + (remaining,)))
            return
        for exp in range(remaining, -1, -1):
            walk(var + 1, remaining - exp, prefix + (exp,))

    walk(0, degree, ())
    return out


def _exponent_bounds(f: Polynomial) -> List[Tuple[Fraction, Fraction]]:
    bounds = []
    for var in range(1, f.nvars + 1):
        exps = [m.exponent(var) for m in f.terms]
        bounds.append((Fraction(min(exps), 2), Fraction(max(exps), 2)))
    return bounds


def gram_basis(f: Polynomial, full_basis: bool = False, prune: bool = False) -> List[Monomial]:
    """Monomial vector ``v`` of ``f = v^T Q v``, by degree then lex descending."""
    degree = max(f.total_degree(), 0)
    if degree % 2:
        raise OddDegree(f"{f} has odd degree {degree}")
    half = degree // 2
    degrees = [half] if f.is_homogeneous() and not full_basis else range(half + 1)
    basis = [m for d in degrees for m in _monomials_of_degree(d, f.nvars)]
    if prune and not f.is_zero():
        bounds = _exponent_bounds(f)
        basis = [
            m for m in basis
            if all(low <= m.exponent(var) <= high for var, (low, high) in enumerate(bounds, start=1))
        ]
    return basis


def gram_system(f: Polynomial, full_basis: bool = False, prune: bool = False) -> GramSystem:
    """Coefficient matching of ``f = v^T Q v`` for a symmetric unknown ``Q``.

    One constraint per monomial that occurs in ``f`` or as a product of two
    basis monomials, in decreasing graded-lex order.
    """
    basis = gram_basis(f, full_basis=full_basis, prune=prune)
    entries: Dict[Monomial, List[Tuple[int, int, int]]] = {}
    for i, left in enumerate(basis):
        for j in range(i, len(basis)):
            entries.setdefault(left * basis[j], []).append((i, j, 1 if i == j else 2))
    monomials = set(entries) | set(f.terms)
    ordered = sorted(monomials, key=lambda m: grlex_key(m, f.nvars), reverse=True)
    constraints = tuple(
        GramConstraint(m, f.coefficient(m), tuple(entries.get(m, ()))) for m in ordered
    )
    logger.debug("gram system: basis of %d monomials, %d constraints", len(basis), len(constraints))
    return GramSystem(f, tuple(basis), constraints)


def gram_form(basis: Sequence[Monomial], matrix: Matrix, nvars: int) -> Polynomial:
    """The polynomial ``v^T Q v``."""
    terms: Dict[Monomial, Fraction] = {}
    for (i, left), (j, right) in product(enumerate(basis), repeat=2):
        value = Fraction(matrix[i][j])
        if value:
            m = left * right
            terms[m] = terms.get(m, Fraction(0)) + value
    return Polynomial(terms, nvars)


def verify_gram(f: Polynomial, basis: Sequence[Monomial], matrix: Matrix) -> bool:
    """True iff ``v^T Q v == f`` exactly and ``Q`` is positive semidefinite."""
    size = len(basis)
    if len(matrix) != size or any(len(row) != size for row in matrix):
        raise DimensionMismatch(f"Gram matrix must be {size} x {size}")
    if any(Fraction(matrix[i][j]) != Fraction(matrix[j][i]) for i in range(size) for j in range(i)):
        raise DimensionMismatch("Gram matrix is not symmetric")
    if any(m.max_var > f.nvars for m in basis):
        raise DimensionMismatch(f"basis uses variables beyond x{f.nvars}")
    if gram_form(basis, matrix, f.nvars) != f:
        return False
    return is_positive_semidefinite(matrix)


# SDPA export

def _decimal_string(value: Fraction) -> Optional[str]:
    """Exact finite decimal for ``value`` or None when it has none."""
    den = value.denominator
    twos = fives = 0
    while den % 2 == 0:
        den //= 2
        twos += 1
    while den % 5 == 0:
        den //= 5
        fives += 1
    if den != 1:
        return None
    digits = max(twos, fives)
    scaled = abs(value.numerator) * 10 ** digits // value.denominator
    sign = "-" if value < 0 else ""
    if digits == 0:
        return f"{sign}{scaled}"
    whole, frac = divmod(scaled, 10 ** digits)
    frac_text = str(frac).rjust(digits, "0").rstrip("0")
    return f"{sign}{whole}.{frac_text}"


def sdpa_text(system: GramSystem) -> str:
    """Sparse SDPA (dual form, one block) with ``F_k . Q = c_k`` per constraint.

    A right-hand side without an exact decimal is cleared by scaling the
    whole constraint with its denominator.
    """
    rhs_values = []
    lines = []
    for k, constraint in enumerate(system.constraints, start=1):
        text = _decimal_string(constraint.rhs)
        scale = 1
        if text is None:
            scale = constraint.rhs.denominator
            text = str(constraint.rhs.numerator)
        rhs_values.append(text)
        for i, j, _ in constraint.entries:
            lines.append(f"{k} 1 {i + 1} {j + 1} {scale}")
    header = [str(len(system.constraints)), "1", str(system.size), " ".join(rhs_values)]
    return "\n".join(header + lines) + "\n"


def emit_sdpa(system: GramSystem, path: Union[str, Path]) -> Path:
    path = Path(path)
    try:
        path.write_text(sdpa_text(system), encoding="utf-8")
    except OSError as exc:
        raise CertificateWriteError(f"cannot write {path}: {exc}") from exc
    logger.info("SDPA problem written to %s", path)
    return path


# Symmetric quartics

def _matrix2(values: Matrix, name: str) -> Tuple[Tuple[Fraction, Fraction], Tuple[Fraction, Fraction]]:
    rows = tuple(tuple(Fraction(v) for v in row) for row in values)
    if len(rows) != 2 or any(len(row) != 2 for row in rows):
        raise DimensionMismatch(f"{name} must be a 2 x 2 matrix")
    if rows[0][1] != rows[1][0]:
        raise DimensionMismatch(f"{name} must be symmetric")
    return rows


@dataclass(frozen=True)
class QuarticParams:
    alpha: Tuple[Tuple[Fraction, Fraction], Tuple[Fraction, Fraction]]
    beta: Tuple[Tuple[Fraction, Fraction], Tuple[Fraction, Fraction]]
    gamma: Fraction
    n: int

    def __post_init__(self):
        object.__setattr__(self, "alpha", _matrix2(self.alpha, "alpha"))
        object.__setattr__(self, "beta", _matrix2(self.beta, "beta"))
        object.__setattr__(self, "gamma", Fraction(self.gamma))


def _require_enough_variables(params: QuarticParams):
    if params.n <= 4:
        raise TooFewVariables(f"the quartic representation needs n > 4, got n = {params.n}")


def quartic_from_params(params: QuarticParams) -> Polynomial:
    """Symmetric quartic built from the Gram data in normalized power sums ``pi_j = p_j / n``."""
    _require_enough_variables(params)
    n = params.n
    pi = {j: basis_polynomial(BasisKind.POWER_SUM, j, n) / n for j in range(1, 5)}
    (a11, a12), (_, a22) = params.alpha
    (b11, b12), (_, b22) = params.beta
    g = params.gamma
    p1_2 = pi[1] ** 2
    p1_4 = p1_2 ** 2
    p1_2p2 = p1_2 * pi[2]
    p2_2 = pi[2] ** 2
    p1p3 = pi[1] * pi[3]
    f = p1_4 * a11 + p1_2p2 * (2 * a12) + p2_2 * a22
    f = f + (p1_2p2 - p1_4) * b11 + (p1p3 - p1_2p2) * (2 * b12) + (pi[4] - p2_2) * b22
    tail = (
        p1_4 * Fraction(1, 2)
        - p1_2p2
        + p2_2 * Fraction(n * n - 3 * n + 3, 2 * n * n)
        + p1p3 * Fraction(2 * n - 2, n * n)
        + pi[4] * Fraction(1 - n, 2 * n * n)
    )
    return f + tail * g


def _psd2(matrix) -> bool:
    (a, b), (_, c) = matrix
    return a >= 0 and c >= 0 and a * c - b * b >= 0


def quartic_check(params: QuarticParams) -> bool:
    """``gamma >= 0`` and both 2 x 2 matrices positive semidefinite."""
    _require_enough_variables(params)
    return params.gamma >= 0 and _psd2(params.alpha) and _psd2(params.beta)
