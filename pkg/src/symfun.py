"""
Symmetric and block-symmetric polynomials: bases, rewriting, substitutions.
"""
import logging
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from itertools import combinations, combinations_with_replacement, permutations
from typing import Dict, List, Optional, Sequence, Tuple, Union

from settings import get_settings

from .combi import Composition, Partition
from .errors import (
    ArityMismatch,
    IndexOutOfRange,
    NonTermination,
    NotInSubring,
    NotSymmetric,
    TooManyVariables,
    UnsupportedBasisPair,
)
from .linalg import solve
from .poly import Monomial, Polynomial, Scalar, lex_key

logger = logging.getLogger(__name__)


class BasisKind(Enum):
    ELEMENTARY = "e"
    POWER_SUM = "p"
    COMPLETE_HOMOGENEOUS = "h"
    MONOMIAL = "m"

    @classmethod
    def parse(cls, value: Union[str, "BasisKind"]) -> "BasisKind":
        if isinstance(value, cls):
            return value
        for kind in cls:
            if value in (kind.value, kind.name.lower()):
                return kind
        raise UnsupportedBasisPair(f"unknown basis {value!r}")


@dataclass(frozen=True)
class BlockStructure:
    """Consecutive variable blocks of the given sizes; one symmetric group per block."""

    sizes: Tuple[int, ...]

    def __post_init__(self):
        sizes = tuple(int(s) for s in self.sizes)
        if not sizes or any(s < 1 for s in sizes):
            raise ValueError(f"block sizes must be positive, got {self.sizes!r}")
        object.__setattr__(self, "sizes", sizes)

    @classmethod
    def single(cls, nvars: int) -> "BlockStructure":
        return cls((nvars,))

    @classmethod
    def from_partition(cls, partition: Partition) -> "BlockStructure":
        return cls(partition.block_lengths)

    @property
    def nvars(self) -> int:
        return sum(self.sizes)

    def spans(self) -> List[Tuple[int, int]]:
        """``(start, size)`` per block, ``start`` 0-based."""
        out, start = [], 0
        for size in self.sizes:
            out.append((start, size))
            start += size
        return out

    def labels(self) -> List[Tuple[int, int]]:
        return [(k + 1, j + 1) for k, size in enumerate(self.sizes) for j in range(size)]

    def y_names(self, kind: BasisKind) -> List[str]:
        if len(self.sizes) == 1:
            return [f"{kind.value}{j}" for _, j in self.labels()]
        return [f"{kind.value}{{{k},{j}}}" for k, j in self.labels()]


# Bases

def _from_monomials(exponent_lists, nvars: int) -> Polynomial:
    terms: Dict[Monomial, Fraction] = {}
    for exps in exponent_lists:
        m = Monomial.from_dense(exps)
        terms[m] = terms.get(m, Fraction(0)) + 1
    return Polynomial(terms, nvars)


def basis_polynomial(kind: Union[BasisKind, str], index: Union[int, Sequence[int]], nvars: int) -> Polynomial:
    """``e_k``, ``p_k``, ``h_k`` or ``m_lambda`` in ``nvars`` variables."""
    kind = BasisKind.parse(kind)
    if kind is BasisKind.MONOMIAL:
        parts = sorted((int(p) for p in index), reverse=True)
        if len(parts) > nvars or any(p < 1 for p in parts):
            raise IndexOutOfRange(f"m_{tuple(parts)} needs at most {nvars} positive parts")
        padded = tuple(parts) + (0,) * (nvars - len(parts))
        return _from_monomials(set(permutations(padded)), nvars)
    k = int(index)
    if kind is BasisKind.ELEMENTARY:
        if not 0 <= k <= nvars:
            raise IndexOutOfRange(f"e_{k} needs 0 <= k <= {nvars}")
        if k == 0:
            return Polynomial.constant(1, nvars)
        rows = []
        for chosen in combinations(range(nvars), k):
            exps = [0] * nvars
            for i in chosen:
                exps[i] = 1
            rows.append(tuple(exps))
        return _from_monomials(rows, nvars)
    if kind is BasisKind.POWER_SUM:
        if k < 1:
            raise IndexOutOfRange(f"p_{k} needs k >= 1")
        return _from_monomials(
            [tuple(k if i == j else 0 for i in range(nvars)) for j in range(nvars)], nvars
        )
    if k < 0:
        raise IndexOutOfRange(f"h_{k} needs k >= 0")
    rows = []
    for chosen in combinations_with_replacement(range(nvars), k):
        exps = [0] * nvars
        for i in chosen:
            exps[i] += 1
        rows.append(tuple(exps))
    return _from_monomials(rows, nvars)


def block_generators(kind: BasisKind, bs: BlockStructure) -> List[Polynomial]:
    """Generators ``g_{k,j}`` for ``j = 1..size_k``, flattened block by block."""
    gens = []
    for start, size in bs.spans():
        mapping = {j: start + j for j in range(1, size + 1)}
        for j in range(1, size + 1):
            local = basis_polynomial(kind, j, size)
            gens.append(local.rename(mapping, bs.nvars))
    return gens


def weighted_power_sum(degree: int, weights: Sequence[Scalar]) -> Polynomial:
    """``sum_i m_i x_i^degree``."""
    if degree < 1:
        raise IndexOutOfRange(f"weighted power sum of degree {degree}")
    terms = {Monomial(((i + 1, degree),)): Fraction(w) for i, w in enumerate(weights)}
    return Polynomial(terms, len(weights))


def vandermonde_map(point: Sequence[Scalar], degree: int, weights: Optional[Sequence[Scalar]] = None) -> Tuple[Fraction, ...]:
    """Values of the weighted power sums ``p_1 .. p_degree`` at ``point``."""
    weights = [1] * len(point) if weights is None else weights
    if len(weights) != len(point):
        raise ArityMismatch("one weight per coordinate is required")
    values = [Fraction(u) for u in point]
    return tuple(
        sum((Fraction(w) * u ** j for w, u in zip(weights, values)), Fraction(0))
        for j in range(1, degree + 1)
    )


# Symmetry

def _swap(f: Polynomial, i: int, j: int) -> Polynomial:
    return f.rename({i: j, j: i}, f.nvars)


def is_symmetric(f: Polynomial, bs: Optional[BlockStructure] = None) -> bool:
    """Invariance under every adjacent transposition inside each block."""
    bs = bs or BlockStructure.single(f.nvars)
    if bs.nvars != f.nvars:
        raise ArityMismatch(f"block structure covers {bs.nvars} of {f.nvars} variables")
    for start, size in bs.spans():
        for j in range(start + 1, start + size):
            if _swap(f, j, j + 1) != f:
                return False
    return True


# Rewriting

class _PowerCache:
    def __init__(self, gens: Sequence[Polynomial]):
        self.gens = gens
        self.cache: Dict[Tuple[int, int], Polynomial] = {}

    def get(self, index: int, exp: int) -> Polynomial:
        key = (index, exp)
        if key not in self.cache:
            if exp == 1:
                self.cache[key] = self.gens[index]
            else:
                self.cache[key] = self.get(index, exp - 1) * self.gens[index]
        return self.cache[key]


def _elementary_rewrite(f: Polynomial, bs: BlockStructure) -> Polynomial:
    n = f.nvars
    powers = _PowerCache(block_generators(BasisKind.ELEMENTARY, bs))
    remainder = f
    result: Dict[Tuple[int, ...], Fraction] = {}
    steps = 0
    while not remainder.is_zero():
        monomial, coeff = remainder.lex_leading_term()
        alpha = monomial.dense(n)
        exps = [0] * n
        for start, size in bs.spans():
            block = alpha[start:start + size]
            for j in range(size):
                following = block[j + 1] if j + 1 < size else 0
                if block[j] < following:
                    raise NotSymmetric("leading exponents are not non-increasing inside a block")
                exps[start + j] = block[j] - following
        product = Polynomial.constant(coeff, n)
        for index, exp in enumerate(exps):
            if exp:
                product = product * powers.get(index, exp)
        key = tuple(exps)
        result[key] = result.get(key, Fraction(0)) + coeff
        remainder = remainder - product
        steps += 1
        if not remainder.is_zero():
            lead, _ = remainder.lex_leading_term()
            if lex_key(lead, n) >= lex_key(monomial, n):
                raise NonTermination(f"leading monomial did not decrease at step {steps}")
    logger.debug("elementary rewrite finished after %d steps", steps)
    return Polynomial.from_dense_terms(result, n)


def _elementary_in_power_sums(size: int) -> List[Polynomial]:
    """``e_1 .. e_size`` written in the power sums ``p_1 .. p_size`` (Newton)."""
    p = [None] + [Polynomial.variable(k, size) for k in range(1, size + 1)]
    e = [Polynomial.constant(1, size)]
    for k in range(1, size + 1):
        acc = Polynomial.zero(size)
        for i in range(1, k + 1):
            term = e[k - i] * p[i]
            acc = acc + term if i % 2 == 1 else acc - term
        e.append(acc / k)
    return e[1:]


def _power_sums_in_elementary(count: int, nvars: int) -> List[Polynomial]:
    """``p_1 .. p_count`` written in ``e_1 .. e_nvars`` (``e_j = 0`` for ``j > nvars``)."""
    e = [Polynomial.constant(1, nvars)] + [Polynomial.variable(j, nvars) for j in range(1, nvars + 1)]

    def elem(j: int) -> Polynomial:
        return e[j] if j <= nvars else Polynomial.zero(nvars)

    p: List[Polynomial] = [Polynomial.constant(nvars, nvars)]
    for k in range(1, count + 1):
        acc = elem(k) * k if k % 2 == 1 else -(elem(k) * k)
        for j in range(1, k):
            term = elem(j) * p[k - j]
            acc = acc + term if j % 2 == 1 else acc - term
        p.append(acc)
    return p[1:]


def ftsp_rewrite(
    f: Polynomial,
    target: Union[BasisKind, str] = BasisKind.ELEMENTARY,
    bs: Optional[BlockStructure] = None,
) -> Polynomial:
    """Express a (block-)symmetric ``f`` in the chosen generators.

    The result lives in one variable per generator, ordered block by block
    (``y_{k,j}`` stands for the j-th generator of block k).
    """
    target = BasisKind.parse(target)
    bs = bs or BlockStructure.single(f.nvars)
    if not is_symmetric(f, bs):
        raise NotSymmetric("polynomial is not invariant under its symmetry group")
    if target is BasisKind.MONOMIAL:
        raise UnsupportedBasisPair("rewriting into monomial symmetric functions is not supported")
    if f.nvars == 0:
        return f
    if target is BasisKind.ELEMENTARY:
        return _elementary_rewrite(f, bs)
    if target is BasisKind.POWER_SUM:
        rewritten = _elementary_rewrite(f, bs)
        images: Dict[int, Polynomial] = {}
        for start, size in bs.spans():
            mapping = {j: start + j for j in range(1, size + 1)}
            for j, local in enumerate(_elementary_in_power_sums(size), start=1):
                images[start + j] = local.rename(mapping, bs.nvars)
        return rewritten.substitute(images, nvars=bs.nvars)
    gens = block_generators(BasisKind.COMPLETE_HOMOGENEOUS, bs)
    return subring_membership(f, gens, max(f.total_degree(), 0))


def _exponent_vectors(count: int, bound: int, weights: Optional[Sequence[int]], weight_bound: int):
    def walk(index: int, remaining: int, weight_left: int, prefix: Tuple[int, ...]):
        if index == count:
            yield prefix
            return
        top = remaining
        if weights is not None:
            top = min(top, weight_left // weights[index])
        for exp in range(top + 1):
            used = weights[index] * exp if weights is not None else 0
            yield from walk(index + 1, remaining - exp, weight_left - used, prefix + (exp,))

    yield from walk(0, bound, weight_bound, ())


def subring_membership(f: Polynomial, gens: Sequence[Polynomial], degree_bound: int) -> Polynomial:
    """Find ``F`` with ``deg F <= degree_bound`` and ``F(gens) = f`` by exact linear algebra.

    When every generator is homogeneous of positive degree only exponent
    vectors of weighted degree ``<= deg f`` are tried.
    """
    if not gens:
        raise NotInSubring("no generators given")
    nvars = gens[0].nvars
    if f.nvars != nvars or any(g.nvars != nvars for g in gens):
        raise ArityMismatch("f and the generators live in different rings")
    k = len(gens)
    weights = None
    weight_bound = 0
    if all(g.is_homogeneous() and g.total_degree() > 0 for g in gens):
        weights = [g.total_degree() for g in gens]
        weight_bound = max(f.total_degree(), 0)
    vectors = list(_exponent_vectors(k, degree_bound, weights, weight_bound))
    products: Dict[Tuple[int, ...], Polynomial] = {(0,) * k: Polynomial.constant(1, nvars)}

    def product(beta: Tuple[int, ...]) -> Polynomial:
        if beta not in products:
            last = max(i for i, b in enumerate(beta) if b)
            smaller = beta[:last] + (beta[last] - 1,) + beta[last + 1:]
            products[beta] = product(smaller) * gens[last]
        return products[beta]

    columns = [product(beta) for beta in vectors]
    monomials = sorted(
        {m for poly in columns for m in poly.terms} | set(f.terms),
        key=lambda m: lex_key(m, nvars),
    )
    matrix = [[col.coefficient(m) for col in columns] for m in monomials]
    rhs = [f.coefficient(m) for m in monomials]
    solution = solve(matrix, rhs) if monomials else [Fraction(0)] * len(vectors)
    if solution is None:
        raise NotInSubring("polynomial is not in the subalgebra spanned by the generators")
    return Polynomial.from_dense_terms(
        {beta: c for beta, c in zip(vectors, solution) if c}, k
    )


def newton_convert(
    expression: Polynomial,
    source: Union[BasisKind, str],
    target: Union[BasisKind, str],
    nvars: int,
) -> Polynomial:
    """Translate an expression in ``e``-coordinates to ``p``-coordinates or back.

    Variable ``y_k`` of ``expression`` denotes the k-th generator of ``source``;
    the result lives in ``nvars`` variables of ``target``.
    """
    source, target = BasisKind.parse(source), BasisKind.parse(target)
    if source is target:
        return expression
    if (source, target) == (BasisKind.POWER_SUM, BasisKind.ELEMENTARY):
        images = _power_sums_in_elementary(expression.nvars, nvars)
    elif (source, target) == (BasisKind.ELEMENTARY, BasisKind.POWER_SUM):
        local = _elementary_in_power_sums(nvars)
        images = [
            local[k - 1] if k <= nvars else Polynomial.zero(nvars)
            for k in range(1, expression.nvars + 1)
        ]
    else:
        raise UnsupportedBasisPair(f"no Newton identities between {source.value} and {target.value}")
    return expression.substitute({k: images[k - 1] for k in range(1, expression.nvars + 1)}, nvars=nvars)


# Substitutions along compositions

def lambda_substitute(f: Polynomial, composition: Composition) -> Polynomial:
    """``f^[lambda]``: variables of the j-th run of ``composition`` all become ``X_j``."""
    if composition.n != f.nvars:
        raise ArityMismatch(f"composition of {composition.n} for a polynomial in {f.nvars} variables")
    mapping = {}
    var = 1
    for j, part in enumerate(composition.parts, start=1):
        for _ in range(part):
            mapping[var] = j
            var += 1
    return f.rename(mapping, composition.length)


@dataclass(frozen=True)
class DistributionMatrix:
    """Rows indexed by the runs of a composition, columns by the original variables."""

    composition: Composition
    entries: Tuple[Tuple[Fraction, ...], ...]

    @property
    def shape(self) -> Tuple[int, int]:
        return len(self.entries), len(self.entries[0]) if self.entries else 0

    def row_labels(self) -> List[Tuple[int, int]]:
        if isinstance(self.composition, Partition):
            return [(i + 1, j + 1) for i, (_, count) in enumerate(self.composition.blocks) for j in range(count)]
        return [(t + 1, 1) for t in range(self.composition.length)]


def distribution_matrix(composition: Composition) -> DistributionMatrix:
    n = composition.n
    rows = []
    column = 0
    for part in composition.parts:
        row = [Fraction(0)] * n
        for c in range(column, column + part):
            row[c] = Fraction(1, part)
        rows.append(tuple(row))
        column += part
    return DistributionMatrix(composition, tuple(rows))


def symmetric_closure_gate(polys: Sequence[Polynomial], max_vars: Optional[int] = None) -> Polynomial:
    """``sum_i sum_sigma sigma(f_i)^2`` over all permutations of the variables."""
    if not polys:
        raise ArityMismatch("at least one polynomial is required")
    n = polys[0].nvars
    if any(p.nvars != n for p in polys):
        raise ArityMismatch("polynomials live in different rings")
    cap = get_settings().closure_max_vars if max_vars is None else max_vars
    if n > cap:
        raise TooManyVariables(f"closure over {n}! permutations exceeds the cap of {cap} variables")
    total = Polynomial.zero(n)
    for f in polys:
        square = f * f
        for sigma in permutations(range(1, n + 1)):
            total = total + square.rename({i + 1: sigma[i] for i in range(n)}, n)
    return total
