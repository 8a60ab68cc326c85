"""
Real emptiness of symmetric systems and nonnegativity via the degree principle.
"""
import logging
import random
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from itertools import combinations, product
from typing import List, Optional, Sequence, Tuple

from settings import get_settings

from .combi import Partition, enumerate_partitions
from .decide import OrbitParam, decide_real_preimage
from .errors import (
    AssumptionViolated,
    DegenerateInstance,
    NotSymmetric,
    PositiveDimensional,
    SeparationFailure,
)
from .groebner import buchberger, to_sparse
from .poly import Monomial, Polynomial, jacobian
from .symfun import BasisKind, BlockStructure, ftsp_rewrite, is_symmetric, lambda_substitute
from .zerodim import solve_zero_dim

logger = logging.getLogger(__name__)

SAMPLE_GRID = tuple(Fraction(v) for v in (0, 1, -1, 2, -2, Fraction(1, 2), Fraction(-1, 2), 3, -3))


@dataclass(frozen=True)
class ObjectiveSpec:
    """Proper block-symmetric objective ``sum_i c_i p_{i,l_i+1} + sum_{i,j} a_ij p_ij``."""

    partition: Partition
    a: Tuple[Tuple[Fraction, ...], ...]
    c: Tuple[int, ...]

    def polynomial(self) -> Polynomial:
        bs = BlockStructure.from_partition(self.partition)
        nvars = bs.nvars
        terms = {}
        for (start, size), weights, top in zip(bs.spans(), self.a, self.c):
            for var in range(start + 1, start + size + 1):
                for j, a in enumerate(weights, start=1):
                    terms[Monomial(((var, j),))] = a
                if top:
                    terms[Monomial(((var, size + 1),))] = Fraction(top)
        return Polynomial(terms, nvars)


def build_objective(partition: Partition, rng: random.Random) -> ObjectiveSpec:
    bound = get_settings().random_bound
    a = tuple(
        tuple(Fraction(rng.randint(1, bound)) for _ in range(count))
        for _, count in partition.blocks
    )
    c = tuple(count % 2 for _, count in partition.blocks)
    return ObjectiveSpec(partition, a, c)


@dataclass(frozen=True)
class LagrangeSystem:
    """Equations in the original variables followed by one multiplier per constraint."""

    equations: Tuple[Polynomial, ...]
    nvars: int
    multipliers: int


def lagrange_system(constraints: Sequence[Polynomial], objective: Polynomial) -> LagrangeSystem:
    """``g = 0`` together with ``sum_k L_k grad g_k + grad phi = 0``."""
    n = objective.nvars
    s = len(constraints)
    total = n + s
    gs = [g.with_nvars(total) for g in constraints]
    phi = objective.with_nvars(total)
    multipliers = [Polynomial.variable(n + k, total) for k in range(1, s + 1)]
    equations = list(gs)
    for j in range(1, n + 1):
        row = phi.diff(j)
        for mult, g in zip(multipliers, gs):
            row = row + mult * g.diff(j)
        equations.append(row)
    return LagrangeSystem(tuple(equations), n, s)


def critical_points_sym(
    constraints: Sequence[Polynomial],
    objective: Polynomial,
    partition: Partition,
    rng: random.Random,
) -> OrbitParam:
    """Critical points of ``objective`` on ``V(constraints)`` in block elementary coordinates."""
    bs = BlockStructure.from_partition(partition)
    rewritten = [ftsp_rewrite(g, BasisKind.ELEMENTARY, bs) for g in constraints]
    target = ftsp_rewrite(objective, BasisKind.ELEMENTARY, bs)
    system = lagrange_system(rewritten, target)
    ell = partition.length
    param = solve_zero_dim(
        system.equations, ell + system.multipliers, rng=rng, gamma_vars=range(1, ell + 1)
    )
    return OrbitParam(partition, param.project(ell))


def _determinant(matrix: List[List[Polynomial]]) -> Polynomial:
    if len(matrix) == 1:
        return matrix[0][0]
    total = None
    for col, entry in enumerate(matrix[0]):
        if entry.is_zero():
            continue
        minor = [row[:col] + row[col + 1:] for row in matrix[1:]]
        term = entry * _determinant(minor)
        term = term if col % 2 == 0 else -term
        total = term if total is None else total + term
    return total if total is not None else Polynomial.zero(matrix[0][0].nvars)


def verify_regularity(polys: Sequence[Polynomial]) -> bool:
    """True when the Jacobian has full rank at every complex point of ``V(polys)``."""
    n = polys[0].nvars
    s = len(polys)
    jac = jacobian(polys)
    minors = []
    for cols in combinations(range(n), s):
        minor = _determinant([[row[c] for c in cols] for row in jac])
        if not minor.is_zero():
            minors.append(minor)
    basis = buchberger([to_sparse(p, n) for p in list(polys) + minors if not p.is_zero()])
    return len(basis) == 1 and all(e == 0 for e in next(iter(basis[0])))


def real_emptiness(
    polys: Sequence[Polynomial],
    rng: Optional[random.Random] = None,
    verify: bool = False,
) -> bool:
    """True when ``polys`` have no common real zero.

    Partitions of length at least the number of equations are visited by
    increasing length; the first critical point with a real preimage proves
    nonemptiness.
    """
    settings = get_settings()
    rng = rng or random.Random(settings.default_seed)
    if not polys:
        return False
    n = polys[0].nvars
    s = len(polys)
    if s > n:
        raise AssumptionViolated(f"{s} equations in {n} variables")
    for f in polys:
        if not is_symmetric(f):
            raise NotSymmetric(f"{f} is not symmetric")
    if verify and not verify_regularity(polys):
        raise AssumptionViolated("the system is not regular on its zero set")

    for partition in enumerate_partitions(n, min_length=s):
        reduced = [lambda_substitute(f, partition) for f in polys]
        orbit = None
        failure = None
        for _ in range(2):
            objective = build_objective(partition, rng)
            try:
                orbit = critical_points_sym(reduced, objective.polynomial(), partition, rng)
                break
            except (PositiveDimensional, SeparationFailure) as exc:
                logger.debug("objective for %s rejected: %s", partition, exc)
                failure = exc
        if orbit is None:
            raise DegenerateInstance(f"no usable objective for the partition {partition}: {failure}")
        logger.debug("partition %s: %d critical points", partition, orbit.param.degree)
        if decide_real_preimage(orbit):
            return False
    return True


# Nonnegativity

class NonnegStatus(Enum):
    NONNEGATIVE = "nonnegative"
    WITNESS = "witness"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class NonnegResult:
    status: NonnegStatus
    witness: Optional[Tuple[Fraction, ...]] = None
    pattern: Optional[Partition] = None


def _sample_points(nvars: int, rng: random.Random):
    yield from product(SAMPLE_GRID, repeat=nvars)
    for _ in range(get_settings().sample_count):
        yield tuple(Fraction(rng.randint(-64, 64), rng.randint(1, 16)) for _ in range(nvars))


def _find_negative(g: Polynomial, rng: random.Random) -> Optional[Tuple[Fraction, ...]]:
    for point in _sample_points(g.nvars, rng):
        if g.evaluate(point) < 0:
            return tuple(point)
    return None


def _is_sum_of_monomial_squares(g: Polynomial) -> bool:
    return all(m.is_even() and c > 0 for m, c in g.terms.items())


def _ellipsoid_signs(form: Polynomial, rng: random.Random) -> Optional[set]:
    """Signs of a form at its critical points on a random ellipsoid (None if not computable)."""
    n = form.nvars
    degree = form.total_degree()
    total = n + 1
    multiplier = Polynomial.variable(total, total)
    lifted = form.with_nvars(total)
    for _ in range(2):
        weights = [rng.randint(1, 16) for _ in range(n)]
        sphere = Polynomial.constant(-1, total)
        for i, w in enumerate(weights, start=1):
            sphere = sphere + Polynomial.variable(i, total) ** 2 * w
        system = [sphere] + [
            lifted.diff(i) - multiplier * Polynomial.variable(i, total) * (2 * w)
            for i, w in enumerate(weights, start=1)
        ]
        try:
            param = solve_zero_dim(system, total, rng=rng)
        except (PositiveDimensional, SeparationFailure) as exc:
            logger.debug("ellipsoid critical points unavailable: %s", exc)
            continue
        # on the ellipsoid form = (2 / degree) * multiplier
        return {point.sign_of(multiplier) for point in param.real_points()}
    return None


def _certify(g: Polynomial, rng: random.Random) -> bool:
    if _is_sum_of_monomial_squares(g):
        return True
    degree = g.total_degree()
    if degree % 2:
        return False
    top = g.homogeneous_part(degree)
    if g.nvars == 1:
        leading_positive = top.coefficient(Monomial.from_dense((degree,))) > 0
        if g.is_homogeneous():
            return leading_positive
    else:
        signs = _ellipsoid_signs(top, rng)
        if signs is None:
            return False
        if g.is_homogeneous():
            return min(signs, default=1) >= 0
        leading_positive = min(signs, default=1) > 0
    if not leading_positive:
        return False
    gradient = [g.diff(j) for j in range(1, g.nvars + 1)]
    try:
        param = solve_zero_dim(gradient, g.nvars, rng=rng)
    except (PositiveDimensional, SeparationFailure) as exc:
        logger.debug("critical points unavailable: %s", exc)
        return False
    return all(point.sign_of(g) >= 0 for point in param.real_points())


def nonneg_degree_principle(f: Polynomial, rng: Optional[random.Random] = None) -> NonnegResult:
    """Decide ``f >= 0`` on R^n for symmetric ``f`` by checking points with few distinct coordinates."""
    rng = rng or random.Random(get_settings().default_seed)
    if not is_symmetric(f):
        raise NotSymmetric(f"{f} is not symmetric")
    if f.is_zero():
        return NonnegResult(NonnegStatus.NONNEGATIVE)
    r = max(2, f.total_degree() // 2)
    patterns = enumerate_partitions(f.nvars, max_length=r) if f.nvars else []
    if not patterns:
        ok = f.constant_value() >= 0
        return NonnegResult(NonnegStatus.NONNEGATIVE if ok else NonnegStatus.WITNESS, None if ok else ())
    restricted = [(partition, lambda_substitute(f, partition)) for partition in patterns]
    for partition, g in restricted:
        point = _find_negative(g, rng)
        if point is not None:
            witness = partition.expand(point)
            logger.debug("negative value on pattern %s", partition)
            return NonnegResult(NonnegStatus.WITNESS, witness, partition)
    for partition, g in restricted:
        if not _certify(g, rng):
            return NonnegResult(NonnegStatus.UNKNOWN, None, partition)
    return NonnegResult(NonnegStatus.NONNEGATIVE)
