"""
Zero-dimensional polynomial systems and their rational parametrizations.

A parametrization describes finitely many points as
``x_i = v_i(theta) / q0(theta)`` with ``theta`` ranging over the roots of
a squarefree ``q``; by default ``q0 = q'``.
"""
import logging
import random
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from math import comb
from typing import Dict, List, Optional, Sequence, Tuple

from pydantic import BaseModel, Field

from settings import get_settings

from .errors import InvalidParam, PositiveDimensional, SeparationFailure
from .groebner import (
    SparsePoly,
    buchberger,
    is_zero_dimensional,
    leading_monomial,
    reduce,
    standard_monomials,
    to_sparse,
)
from .linalg import IncrementalSpan
from .poly import Polynomial, Scalar, format_rational, parse_rational
from .realroot import RootSigns, ThomEncoding, UniPoly, poly_gcd, rational_roots, root_signs, squarefree_part

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ZeroDimParam:
    """Rational parametrization ``(q, q0, v_1..v_n)`` with separating form ``gamma``."""

    q: UniPoly
    v: Tuple[UniPoly, ...]
    gamma: Tuple[Fraction, ...]
    denominator: Optional[UniPoly] = None

    def __post_init__(self):
        object.__setattr__(self, "v", tuple(self.v))
        object.__setattr__(self, "gamma", tuple(Fraction(g) for g in self.gamma))
        if self.denominator is None:
            object.__setattr__(self, "denominator", self.q.deriv())

    @property
    def nvars(self) -> int:
        return len(self.v)

    @property
    def degree(self) -> int:
        """Number of (complex) points described."""
        return max(self.q.degree, 0)

    @cached_property
    def root_signs(self) -> RootSigns:
        return root_signs(self.q)

    def real_points(self) -> List["RealAlgebraicPoint"]:
        return real_points(self)

    def project(self, count: int) -> "ZeroDimParam":
        """Keep the first ``count`` coordinates; the form must not use the others."""
        if any(self.gamma[count:]):
            raise InvalidParam("cannot drop coordinates used by the separating form")
        return ZeroDimParam(self.q, self.v[:count], self.gamma[:count], self.denominator)

    @classmethod
    def from_points(cls, points: Sequence[Sequence[Scalar]], gamma: Sequence[Scalar]) -> "ZeroDimParam":
        """Parametrization of explicitly given rational points (Lagrange interpolation)."""
        gamma = tuple(Fraction(g) for g in gamma)
        rows = [tuple(Fraction(x) for x in p) for p in points]
        nvars = len(gamma)
        if any(len(p) != nvars for p in rows):
            raise InvalidParam("every point needs one coordinate per entry of gamma")
        nodes = [sum((g * x for g, x in zip(gamma, p)), Fraction(0)) for p in rows]
        if len(set(nodes)) != len(nodes):
            raise SeparationFailure("gamma takes the same value at two of the points")
        q = UniPoly([1])
        for t in nodes:
            q = q * UniPoly([-t, 1])
        den = q.deriv()
        basis = []
        for k, t in enumerate(nodes):
            lag = UniPoly([1])
            for m, s in enumerate(nodes):
                if m != k:
                    lag = lag * UniPoly([-s / (t - s), 1 / (t - s)])
            basis.append(lag)
        v = []
        for i in range(nvars):
            acc = UniPoly()
            for k, t in enumerate(nodes):
                acc = acc + basis[k] * (rows[k][i] * den(t))
            v.append(acc)
        return cls(q, tuple(v), gamma, den)

    def to_document(self) -> "ZeroDimParamDocument":
        return ZeroDimParamDocument(
            q=[format_rational(c) for c in self.q.coeffs],
            denominator=[format_rational(c) for c in self.denominator.coeffs],
            v=[[format_rational(c) for c in vi.coeffs] for vi in self.v],
            gamma=[format_rational(g) for g in self.gamma],
        )

    @classmethod
    def from_document(cls, doc: "ZeroDimParamDocument") -> "ZeroDimParam":
        def poly(values: List[str]) -> UniPoly:
            return UniPoly([parse_rational(c) for c in values])

        return cls(
            q=poly(doc.q),
            v=tuple(poly(vi) for vi in doc.v),
            gamma=tuple(parse_rational(g) for g in doc.gamma),
            denominator=poly(doc.denominator) if doc.denominator is not None else None,
        )


class ZeroDimParamDocument(BaseModel):
    """JSON form of a parametrization; coefficients ascending, rationals as ``"a/b"``."""

    q: List[str]
    v: List[List[str]]
    gamma: List[str]
    denominator: Optional[List[str]] = Field(default=None, description="defaults to q'")


@dataclass(frozen=True)
class ValidationResult:
    valid: bool
    diagnostics: Tuple[str, ...] = ()

    def __bool__(self) -> bool:
        return self.valid


def validate(param: ZeroDimParam) -> ValidationResult:
    """Check the parametrization invariants; diagnostics name the violated clauses."""
    problems = []
    q, den = param.q, param.denominator
    if q.is_zero():
        return ValidationResult(False, ("q is the zero polynomial",))
    if poly_gcd(q, q.deriv()).degree > 0:
        problems.append("q is not squarefree")
    if den.is_zero() and q.degree > 0:
        problems.append("denominator is zero")
    elif poly_gcd(q, den).degree > 0:
        problems.append("q and the denominator share a root")
    if len(param.gamma) != len(param.v):
        problems.append("gamma and v have different lengths")
    for i, vi in enumerate(param.v, start=1):
        if vi.degree > q.degree:
            problems.append(f"deg v_{i} exceeds deg q")
    if len(param.gamma) == len(param.v) and q.degree > 0:
        combination = UniPoly()
        for g, vi in zip(param.gamma, param.v):
            combination = combination + vi * g
        if (combination - UniPoly([0, 1]) * den) % q:
            problems.append("gamma(v) is not congruent to T * denominator modulo q")
    return ValidationResult(not problems, tuple(problems))


@dataclass(frozen=True)
class RealAlgebraicPoint:
    """One real point of a parametrization, selected by a Thom encoding of q."""

    param: ZeroDimParam
    encoding: ThomEncoding

    def sign_of(self, f: Polynomial) -> int:
        """Exact sign of ``f`` at this point."""
        if f.nvars != self.param.nvars:
            raise InvalidParam(f"polynomial in {f.nvars} variables, point has {self.param.nvars}")
        if f.is_zero():
            return 0
        param = self.param
        degree = f.total_degree()
        den = param.denominator
        numerator = UniPoly()
        powers: Dict[Tuple[int, int], UniPoly] = {}

        def power(base_key: int, exp: int) -> UniPoly:
            key = (base_key, exp)
            if key not in powers:
                base = den if base_key == 0 else param.v[base_key - 1]
                powers[key] = (base ** exp) % param.q
            return powers[key]

        for monomial, c in f.terms.items():
            term = UniPoly([c]) * power(0, degree - monomial.degree)
            for var, exp in monomial.exponents:
                term = (term * power(var, exp)) % param.q
            numerator = numerator + term
        signs = param.root_signs
        scale = signs.sign(self.encoding, den)
        return signs.sign(self.encoding, numerator) * scale ** degree

    def coordinate_signs(self) -> Tuple[int, ...]:
        nvars = self.param.nvars
        return tuple(self.sign_of(Polynomial.variable(i, nvars)) for i in range(1, nvars + 1))


def real_points(param: ZeroDimParam) -> List[RealAlgebraicPoint]:
    """Real points, ordered by the root of q they come from."""
    report = validate(param)
    if not report:
        raise InvalidParam("; ".join(report.diagnostics))
    if param.q.degree < 1:
        return []
    return [RealAlgebraicPoint(param, enc) for enc in param.root_signs.encodings()]


def rational_points(param: ZeroDimParam) -> List[Tuple[Fraction, ...]]:
    """Points with rational coordinates (rational roots of q), ordered by root."""
    report = validate(param)
    if not report:
        raise InvalidParam("; ".join(report.diagnostics))
    points = []
    for t in rational_roots(param.q):
        scale = param.denominator(t)
        points.append(tuple(vi(t) / scale for vi in param.v))
    return points


def schwartz_zippel_bound(degree: int, sample_size: int) -> Fraction:
    """Probability bound ``d / |S|`` for a nonzero polynomial of degree ``d`` to vanish at a random point."""
    return Fraction(degree, sample_size)


class _Quotient:
    """Multiplication in Q[x]/I for a zero-dimensional ideal with Groebner basis ``basis``."""

    def __init__(self, basis: List[SparsePoly], nvars: int):
        self.nvars = nvars
        self.pairs = [(g, leading_monomial(g)) for g in basis]
        self.monomials = standard_monomials([lead for _, lead in self.pairs], nvars)
        self.index = {m: k for k, m in enumerate(self.monomials)}
        self.dimension = len(self.monomials)
        # columns[i][b] = coordinates of NF(x_i * b)
        self.columns = [self._columns(i) for i in range(nvars)]

    def _coordinates(self, poly: SparsePoly) -> List[Fraction]:
        vec = [Fraction(0)] * self.dimension
        for m, c in reduce(poly, self.pairs).items():
            vec[self.index[m]] = c
        return vec

    def _columns(self, var: int) -> List[List[Fraction]]:
        out = []
        for m in self.monomials:
            shifted = tuple(e + (1 if k == var else 0) for k, e in enumerate(m))
            out.append(self._coordinates({shifted: Fraction(1)}))
        return out

    def one(self) -> List[Fraction]:
        vec = [Fraction(0)] * self.dimension
        vec[self.index[(0,) * self.nvars]] = Fraction(1)
        return vec

    def multiply(self, columns: List[List[Fraction]], vec: Sequence[Fraction]) -> List[Fraction]:
        out = [Fraction(0)] * self.dimension
        for b, coeff in enumerate(vec):
            if coeff:
                for k, value in enumerate(columns[b]):
                    if value:
                        out[k] += coeff * value
        return out

    def linear_form(self, gamma: Sequence[Fraction]) -> List[List[Fraction]]:
        cols = [[Fraction(0)] * self.dimension for _ in range(self.dimension)]
        for g, var_cols in zip(gamma, self.columns):
            if g:
                for b in range(self.dimension):
                    for k, value in enumerate(var_cols[b]):
                        if value:
                            cols[b][k] += g * value
        return cols

    def minimal_polynomial(self, columns: List[List[Fraction]]) -> UniPoly:
        """Minimal polynomial of the element whose multiplication map is ``columns``."""
        span = IncrementalSpan()
        vec = self.one()
        while True:
            dependency = span.add(vec)
            if dependency is not None:
                return UniPoly([-c for c in dependency] + [1])
            vec = self.multiply(columns, vec)


def _univariate_in(poly: UniPoly, var: int, nvars: int) -> SparsePoly:
    out: SparsePoly = {}
    for k, c in enumerate(poly.coeffs):
        if c:
            out[tuple(k if i == var else 0 for i in range(nvars))] = c
    return out


def solve_zero_dim(
    system: Sequence[Polynomial],
    nvars: int,
    rng: Optional[random.Random] = None,
    gamma_vars: Optional[Sequence[int]] = None,
) -> ZeroDimParam:
    """Rational parametrization of all complex solutions of ``system``.

    ``gamma_vars`` (1-based) restricts the random separating form to some
    coordinates; the remaining ones must then be functions of those.
    """
    settings = get_settings()
    rng = rng or random.Random(settings.default_seed)
    sparse = [to_sparse(p, nvars) for p in system if not p.is_zero()]
    if not sparse:
        raise PositiveDimensional("the empty system has positive dimension")
    chosen = set(range(1, nvars + 1) if gamma_vars is None else gamma_vars)

    def draw_gamma() -> Tuple[Fraction, ...]:
        return tuple(
            Fraction(rng.randint(1, settings.random_bound)) if var in chosen else Fraction(0)
            for var in range(1, nvars + 1)
        )

    basis = buchberger(sparse)
    if basis and all(e == 0 for e in leading_monomial(basis[0])):
        logger.debug("system is inconsistent")
        gamma = draw_gamma()
        return ZeroDimParam(UniPoly([1]), tuple(UniPoly() for _ in range(nvars)), gamma)
    if not is_zero_dimensional([leading_monomial(g) for g in basis], nvars):
        raise PositiveDimensional("the solution set is not finite")

    quotient = _Quotient(basis, nvars)
    # Seidenberg: adjoin squarefree parts of the univariate minimal polynomials
    extra = []
    for var in range(nvars):
        minimal = quotient.minimal_polynomial(quotient.columns[var])
        reduced = squarefree_part(minimal)
        if reduced.degree < minimal.degree:
            extra.append(_univariate_in(reduced, var, nvars))
    if extra:
        logger.debug("adding %d squarefree univariate polynomials for the radical", len(extra))
        basis = buchberger(basis + extra)
        quotient = _Quotient(basis, nvars)

    dimension = quotient.dimension
    attempts = 1 + settings.gamma_retries
    for attempt in range(attempts):
        gamma = draw_gamma()
        form = quotient.linear_form(gamma)
        span = IncrementalSpan()
        vec = quotient.one()
        separating = True
        for _ in range(dimension):
            if span.add(vec) is not None:
                separating = False
                break
            vec = quotient.multiply(form, vec)
        if not separating:
            logger.debug("linear form %d of %d does not separate the points", attempt + 1, attempts)
            continue
        top = span.express(vec)
        q = UniPoly([-c for c in top] + [1])
        den = q.deriv()
        v = []
        for var in range(nvars):
            coords = span.express(quotient.multiply(quotient.columns[var], quotient.one()))
            v.append((UniPoly(coords) * den) % q)
        return ZeroDimParam(q, tuple(v), gamma, den)

    bound = schwartz_zippel_bound(comb(dimension, 2), settings.random_bound)
    raise SeparationFailure(
        f"no separating linear form found in {attempts} attempts; "
        f"a random form fails with probability at most {bound}"
    )
