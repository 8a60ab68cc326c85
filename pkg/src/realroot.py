"""
Real roots of univariate polynomials without numerical approximation.

Roots are counted with signed subresultant (Sturm-Habicht) sequences and
identified by their Thom encodings; signs of other polynomials at a root
come from Tarski queries and incremental sign determination.
"""
import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import cmp_to_key, lru_cache
from math import gcd
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple, Union

from .errors import ArityMismatch, EncodingMismatch, LeadingCoefficientVanishes, ZeroPolynomial
from .linalg import bareiss_determinant, berkowitz_determinant, independent_rows, solve
from .poly import Monomial, Polynomial, Scalar, format_rational

logger = logging.getLogger(__name__)


def sign(value: Fraction) -> int:
    return (value > 0) - (value < 0)


class UniPoly:
    """Dense univariate polynomial with Fraction coefficients (ascending powers)."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Sequence[Scalar] = ()):
        values = [Fraction(c) for c in coeffs]
        while values and not values[-1]:
            values.pop()
        self.coeffs: Tuple[Fraction, ...] = tuple(values)

    @classmethod
    def constant(cls, value: Scalar) -> "UniPoly":
        return cls([value])

    @classmethod
    def monomial(cls, degree: int, coeff: Scalar = 1) -> "UniPoly":
        return cls([0] * degree + [coeff])

    @classmethod
    def from_polynomial(cls, poly: Polynomial, var: int = 1) -> "UniPoly":
        coeffs: Dict[int, Fraction] = {}
        for monomial, c in poly.terms.items():
            others = [v for v, _ in monomial.exponents if v != var]
            if others:
                raise ArityMismatch(f"x{others[0]} occurs in a univariate polynomial")
            coeffs[monomial.exponent(var)] = c
        top = max(coeffs, default=-1)
        return cls([coeffs.get(k, 0) for k in range(top + 1)])

    def to_polynomial(self, nvars: int = 1, var: int = 1) -> Polynomial:
        return Polynomial(
            {Monomial(((var, k),)) if k else Monomial.one(): c for k, c in enumerate(self.coeffs)},
            nvars,
        )

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lc(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = UniPoly([other])
        if not isinstance(other, UniPoly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    @staticmethod
    def _lift(other) -> "UniPoly":
        if isinstance(other, UniPoly):
            return other
        if isinstance(other, (int, Fraction)):
            return UniPoly([other])
        return NotImplemented

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        return UniPoly([x + (b[i] if i < len(b) else 0) for i, x in enumerate(a)])

    __radd__ = __add__

    def __neg__(self) -> "UniPoly":
        return UniPoly([-c for c in self.coeffs])

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        if not self.coeffs or not other.coeffs:
            return UniPoly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return UniPoly(out)

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> "UniPoly":
        result = UniPoly([1])
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            exponent >>= 1
            if exponent:
                base = base * base
        return result

    def __divmod__(self, other: "UniPoly") -> Tuple["UniPoly", "UniPoly"]:
        other = self._lift(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        remainder = list(self.coeffs)
        dq = other.degree
        lead = other.lc
        quotient = [Fraction(0)] * max(len(remainder) - dq, 0)
        for k in range(len(remainder) - 1, dq - 1, -1):
            factor = remainder[k] / lead
            if factor:
                quotient[k - dq] = factor
                for i, c in enumerate(other.coeffs):
                    remainder[k - dq + i] -= factor * c
        return UniPoly(quotient), UniPoly(remainder[:dq] if dq > 0 else [])

    def __mod__(self, other) -> "UniPoly":
        return divmod(self, other)[1]

    def __floordiv__(self, other) -> "UniPoly":
        return divmod(self, other)[0]

    def exact_div(self, other: "UniPoly") -> "UniPoly":
        quotient, remainder = divmod(self, other)
        if remainder:
            raise ArithmeticError("division is not exact")
        return quotient

    def deriv(self, order: int = 1) -> "UniPoly":
        coeffs = list(self.coeffs)
        for _ in range(order):
            coeffs = [k * c for k, c in enumerate(coeffs)][1:]
        return UniPoly(coeffs)

    def __call__(self, x):
        acc = Fraction(0) if not isinstance(x, UniPoly) else UniPoly()
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def monic(self) -> "UniPoly":
        if not self.coeffs:
            return self
        return UniPoly([c / self.lc for c in self.coeffs])

    def primitive(self) -> "UniPoly":
        """Integer coefficients without common factor and a positive leading coefficient."""
        if not self.coeffs:
            return self
        denominator = 1
        for c in self.coeffs:
            denominator = denominator * c.denominator // gcd(denominator, c.denominator)
        ints = [int(c * denominator) for c in self.coeffs]
        content = 0
        for v in ints:
            content = gcd(content, v)
        if ints[-1] < 0:
            content = -content
        return UniPoly([Fraction(v, content) for v in ints])

    def format(self, var: str = "T") -> str:
        return self.to_polynomial().format([var])

    def __str__(self) -> str:
        return self.format()

    def __repr__(self) -> str:
        return f"UniPoly({self.format()!r})"


PolyLike = Union[UniPoly, Polynomial]


def as_unipoly(poly: PolyLike) -> UniPoly:
    return poly if isinstance(poly, UniPoly) else UniPoly.from_polynomial(poly)


def poly_gcd(a: UniPoly, b: UniPoly) -> UniPoly:
    """Monic greatest common divisor (zero only when both inputs are zero)."""
    while b:
        a, b = b, a % b
    return a.monic()


def squarefree_part(q: PolyLike) -> UniPoly:
    q = as_unipoly(q)
    if q.is_zero():
        raise ZeroPolynomial("the zero polynomial has no squarefree part")
    if q.degree == 0:
        return UniPoly([1])
    return q.exact_div(poly_gcd(q, q.deriv())).monic()


# Signed subresultants

@dataclass(frozen=True)
class _Ring:
    zero: Any
    one: Any
    det: Callable[[List[List[Any]]], Any]


def _rational_det(matrix):
    return bareiss_determinant(matrix, lambda a, b: a / b, Fraction(1), Fraction(0))


_RATIONALS = _Ring(Fraction(0), Fraction(1), _rational_det)


def _quotient_ring(modulus: UniPoly) -> _Ring:
    """Q[T]/(modulus); determinants are computed without division."""

    def det(matrix):
        return berkowitz_determinant(matrix, lambda a: a % modulus, UniPoly([1]), UniPoly())

    return _Ring(UniPoly(), UniPoly([1]), det)


def _shifted_row(coeffs: Sequence[Any], shift: int, width: int, zero: Any) -> List[Any]:
    # column c holds the coefficient of T^(width - 1 - c)
    row = []
    for c in range(width):
        m = width - 1 - c - shift
        row.append(coeffs[m] if 0 <= m < len(coeffs) else zero)
    return row


def _habicht_rows(P: Sequence[Any], Q: Sequence[Any], j: int, zero: Any) -> List[List[Any]]:
    p, q = len(P) - 1, len(Q) - 1
    width = p + q - j
    rows = [_shifted_row(P, k, width, zero) for k in range(q - j - 1, -1, -1)]
    rows += [_shifted_row(Q, k, width, zero) for k in range(p - j)]
    return rows


def _principal_coefficients(P: Sequence[Any], Q: Sequence[Any], ring: _Ring) -> List[Any]:
    """``sRes_p, ..., sRes_0`` for coefficient lists with ``deg Q < deg P``."""
    p = len(P) - 1
    q = len(Q) - 1
    out = [P[-1]]
    if p == 0:
        return out
    out.append(Q[-1] if q == p - 1 else ring.zero)
    for j in range(p - 2, -1, -1):
        if j > q:
            out.append(ring.zero)
            continue
        rows = _habicht_rows(P, Q, j, ring.zero)
        size = len(rows)
        out.append(ring.det([row[:size] for row in rows]))
    return out


def _subresultant_coefficients(P: Sequence[Any], Q: Sequence[Any], j: int, ring: _Ring) -> List[Any]:
    """Ascending coefficients of ``sResP_j``."""
    p, q = len(P) - 1, len(Q) - 1
    if j == p:
        return list(P)
    if j == p - 1:
        return list(Q)
    if j > q:
        return []
    rows = _habicht_rows(P, Q, j, ring.zero)
    size = len(rows)
    width = len(rows[0])
    coeffs = []
    for ell in range(j + 1):
        column = width - 1 - ell
        coeffs.append(ring.det([row[:size - 1] + [row[column]] for row in rows]))
    return coeffs


def _pmv(values: Sequence[int]) -> int:
    """Generalized permanences minus variations of a sign list starting with a nonzero entry."""
    total = 0
    last = 0
    for i in range(1, len(values)):
        if not values[i]:
            continue
        gap = i - last
        if gap % 2 == 1:
            epsilon = -1 if (gap * (gap - 1) // 2) % 2 else 1
            total += epsilon * values[last] * values[i]
        last = i
    return total


@dataclass(frozen=True)
class SubresultantSeq:
    """``sResP_p, ..., sResP_0`` together with their principal coefficients."""

    polys: Tuple[UniPoly, ...]
    principal: Tuple[Fraction, ...]

    def cauchy_index(self) -> int:
        return _pmv([sign(c) for c in self.principal])

    def nonzero(self) -> List[UniPoly]:
        return [p for p in self.polys if p]


def sturm_habicht(p: PolyLike, q: PolyLike) -> SubresultantSeq:
    """Signed subresultant sequence ``sResP_d .. sResP_0`` of ``(p, q)`` with ``d = deg p``.

    The whole list is returned, zero entries included, so ``(q, 1)`` with
    ``deg q = 2`` gives three entries ``q, 1, -1``. When ``deg q >= deg p``
    the second argument is replaced by ``q mod p`` first; the second entry is
    then that remainder and not ``q`` itself.
    """
    P, Q = as_unipoly(p), as_unipoly(q)
    if P.is_zero():
        raise ZeroPolynomial("sturm_habicht needs a nonzero first argument")
    if P.degree == 0:
        return SubresultantSeq((P,), (P.lc,))
    if Q.degree >= P.degree:
        Q = Q % P
    pc, qc = list(P.coeffs), list(Q.coeffs)
    principal = _principal_coefficients(pc, qc, _RATIONALS)
    polys = tuple(
        UniPoly(_subresultant_coefficients(pc, qc, j, _RATIONALS))
        for j in range(P.degree, -1, -1)
    )
    return SubresultantSeq(polys, tuple(principal))


def count_real_roots(q: PolyLike) -> int:
    """Number of distinct real roots."""
    q = as_unipoly(q)
    if q.is_zero():
        raise ZeroPolynomial("the zero polynomial has infinitely many roots")
    base = squarefree_part(q)
    if base.degree < 1:
        return 0
    principal = _principal_coefficients(list(base.coeffs), list(base.deriv().coeffs), _RATIONALS)
    return _pmv([sign(c) for c in principal])


# Sturm sequences (fast path for Tarski queries over Q)

def _signed_remainders(P: UniPoly, Q: UniPoly) -> List[UniPoly]:
    chain = [P, Q]
    while chain[-1]:
        chain.append(-(chain[-2] % chain[-1]))
    return chain[:-1]


def _variations(signs: Sequence[int]) -> int:
    nonzero = [s for s in signs if s]
    return sum(1 for a, b in zip(nonzero, nonzero[1:]) if a != b)


def _variations_at_infinity(chain: Sequence[UniPoly], positive: bool) -> int:
    return _variations([
        sign(p.lc) * (1 if positive or p.degree % 2 == 0 else -1) for p in chain
    ])


def _variations_at(chain: Sequence[UniPoly], x: Fraction) -> int:
    return _variations([sign(p(x)) for p in chain])


def _squarefree_query(P: UniPoly, base: UniPoly) -> int:
    if base.degree < 1:
        return 0
    R = (base.deriv() * P) % base
    if R.is_zero():
        return 0
    chain = _signed_remainders(base, R)
    return _variations_at_infinity(chain, False) - _variations_at_infinity(chain, True)


def tarski_query(p: PolyLike, q: PolyLike) -> int:
    """``sum over real roots x of q of sign(p(x))``."""
    return _squarefree_query(as_unipoly(p), squarefree_part(as_unipoly(q)))


# Thom encodings and sign determination

@dataclass(frozen=True)
class ThomEncoding:
    """Signs of ``q', q'', ..., q^(deg q)`` at one real root of ``poly``."""

    poly: UniPoly
    signs: Tuple[int, ...]

    def format(self) -> str:
        return "(" + ",".join({1: "+", -1: "-", 0: "0"}[s] for s in self.signs) + ")"

    def __str__(self) -> str:
        return self.format()


def compare_encodings(first: Sequence[int], second: Sequence[int]) -> int:
    """Order of two roots of the same polynomial given their derivative signs."""
    for k in range(len(first) - 1, -1, -1):
        if first[k] != second[k]:
            above = first[k + 1]
            smaller = (first[k] < second[k]) == (above > 0)
            return -1 if smaller else 1
    return 0


def _sign_power(condition: Sequence[int], exponents: Sequence[int]) -> int:
    value = 1
    for s, e in zip(condition, exponents):
        if e:
            value *= s if e % 2 else s * s
    return value


class RootSigns:
    """Sign determination at the real roots of ``q``.

    The realizable sign conditions of the derivatives of ``q`` are the Thom
    encodings of its roots; extending the table with another polynomial
    reads off that polynomial's sign at each root.
    """

    def __init__(self, q: PolyLike):
        q = as_unipoly(q)
        if q.is_zero():
            raise ZeroPolynomial("the zero polynomial has no Thom encodings")
        self.q = q
        self.base = squarefree_part(q)
        self.derivatives = [q.deriv(k) % self.base for k in range(1, q.degree + 1)]
        self._products: Dict[Tuple[int, ...], UniPoly] = {}
        self._queries: Dict[Tuple[int, ...], int] = {}
        self._cache: Dict[Tuple[Tuple[int, ...], UniPoly], int] = {}
        count = count_real_roots(q)
        if count == 0:
            self._conditions: List[Tuple[int, ...]] = []
            self._adapted: List[Tuple[int, ...]] = []
        else:
            conditions, adapted = [()], [()]
            for level in range(len(self.derivatives)):
                conditions, adapted = self._extend(
                    conditions, adapted, self.derivatives[: level + 1], self._products, self._queries
                )
            self._conditions, self._adapted = conditions, adapted
        self._encodings = sorted(
            (ThomEncoding(q, c) for c in self._conditions),
            key=cmp_to_key(lambda a, b: compare_encodings(a.signs, b.signs)),
        )
        logger.debug("found %d real roots of %s", len(self._encodings), q)

    def _product(self, exps: Tuple[int, ...], polys, products) -> UniPoly:
        key = exps
        while key and key[-1] == 0:
            key = key[:-1]
        if key not in products:
            if not key:
                products[key] = UniPoly([1])
            else:
                head = self._product(key[:-1], polys, products)
                products[key] = (head * polys[len(key) - 1] ** key[-1]) % self.base
        return products[key]

    def _query(self, exps, polys, products, queries) -> int:
        key = exps
        while key and key[-1] == 0:
            key = key[:-1]
        if key not in queries:
            queries[key] = _squarefree_query(self._product(key, polys, products), self.base)
        return queries[key]

    def _extend(self, conditions, adapted, polys, products, queries):
        candidates = [c + (s,) for c in conditions for s in (0, 1, -1)]
        exponents = [a + (e,) for a in adapted for e in (0, 1, 2)]
        values = [Fraction(self._query(e, polys, products, queries)) for e in exponents]
        matrix = [[Fraction(_sign_power(c, e)) for c in candidates] for e in exponents]
        counts = solve(matrix, values)
        keep = [i for i, c in enumerate(counts) if c]
        sub = [[row[i] for i in keep] for row in matrix]
        rows = independent_rows(sub)
        return [candidates[i] for i in keep], [exponents[r] for r in rows]

    def encodings(self) -> List[ThomEncoding]:
        """Encodings of the real roots in increasing order of the roots."""
        return list(self._encodings)

    def check(self, encoding: ThomEncoding):
        if encoding.poly != self.q or tuple(encoding.signs) not in self._conditions:
            raise EncodingMismatch(f"{encoding} is not the encoding of a real root of {self.q}")

    def sign(self, encoding: ThomEncoding, p: PolyLike) -> int:
        """Sign of ``p`` at the root described by ``encoding``."""
        self.check(encoding)
        reduced = as_unipoly(p) % self.base
        if reduced.degree <= 0:
            return sign(reduced.lc)
        key = (tuple(encoding.signs), reduced)
        if key not in self._cache:
            polys = self.derivatives + [reduced]
            conditions, _ = self._extend(
                self._conditions, self._adapted, polys, dict(self._products), dict(self._queries)
            )
            for condition in conditions:
                self._cache[(condition[:-1], reduced)] = condition[-1]
        return self._cache[key]


@lru_cache(maxsize=64)
def root_signs(q: UniPoly) -> RootSigns:
    return RootSigns(q)


def thom_encodings(q: PolyLike) -> List[ThomEncoding]:
    return root_signs(as_unipoly(q)).encodings()


def sign_at(q: PolyLike, encoding: ThomEncoding, p: PolyLike) -> int:
    return root_signs(as_unipoly(q)).sign(encoding, p)


# Parametric counting

def coefficients_in_first_variable(rho: Polynomial) -> List[UniPoly]:
    """View a polynomial in ``(u, T)`` as a list of coefficients in ``T``, ascending in ``u``."""
    if rho.nvars != 2:
        raise ArityMismatch("expected a polynomial in the two variables (u, T)")
    by_power: Dict[int, Dict[int, Fraction]] = {}
    for monomial, c in rho.terms.items():
        by_power.setdefault(monomial.exponent(1), {})[monomial.exponent(2)] = c
    top = max(by_power, default=-1)
    out = []
    for k in range(top + 1):
        coeffs = by_power.get(k, {})
        out.append(UniPoly([coeffs.get(i, 0) for i in range(max(coeffs, default=-1) + 1)]))
    return out


def specialized_root_count(
    coeffs: Sequence[UniPoly],
    signs: RootSigns,
    encoding: ThomEncoding,
    with_multiplicity: bool = False,
) -> int:
    """Real roots in ``u`` of ``sum coeffs[k](theta) u^k`` at the root ``theta`` given by ``encoding``.

    With ``with_multiplicity`` the polynomial is deflated by repeated gcds with
    its derivative and the distinct counts of the chain are summed.
    """
    reduced = [c % signs.base for c in coeffs]
    while reduced and reduced[-1].is_zero():
        reduced.pop()
    if not reduced or signs.sign(encoding, reduced[-1]) == 0:
        raise LeadingCoefficientVanishes("leading coefficient vanishes at the chosen root")
    p = len(reduced) - 1
    if p == 0:
        return 0
    ring = _quotient_ring(signs.base)
    derivative = [reduced[k] * k for k in range(1, p + 1)]
    principal = _principal_coefficients(reduced, derivative, ring)
    values = [signs.sign(encoding, c) for c in principal]
    distinct = _pmv(values)
    if not with_multiplicity:
        return distinct
    gcd_degree = p - max(i for i, v in enumerate(values) if v)
    if gcd_degree == 0:
        return distinct
    deflated = _subresultant_coefficients(reduced, derivative, gcd_degree, ring)
    return distinct + specialized_root_count(deflated, signs, encoding, with_multiplicity=True)


def parametric_real_root_count(rho: Polynomial, q: PolyLike, encoding: ThomEncoding) -> int:
    """Distinct real roots of ``rho(., theta)`` where ``theta`` is the root of ``q`` given by ``encoding``."""
    signs = root_signs(as_unipoly(q))
    signs.check(encoding)
    return specialized_root_count(coefficients_in_first_variable(rho), signs, encoding)


# Rational roots

def _isolate_integer_roots(coeffs: Sequence[int]) -> List[int]:
    """Integer roots of a squarefree monic integer polynomial (ascending coefficients)."""
    poly = UniPoly(coeffs)
    bound = 1 + max((abs(c) for c in coeffs[:-1]), default=0)
    chain = _signed_remainders(poly, poly.deriv())
    half = Fraction(1, 2)
    roots = []
    stack = [(-bound - half, bound + half)]
    while stack:
        low, high = stack.pop()
        if _variations_at(chain, low) - _variations_at(chain, high) == 0:
            continue
        if high - low == 1:
            candidate = low + half
            if not poly(candidate):
                roots.append(int(candidate))
            continue
        middle = (low + high - 1) // 2 + half
        stack.append((low, middle))
        stack.append((middle, high))
    return sorted(roots)


def rational_roots(q: PolyLike) -> List[Fraction]:
    """All rational roots, increasing."""
    base = squarefree_part(as_unipoly(q))
    if base.degree < 1:
        return []
    ints = [int(c) for c in base.primitive().coeffs]
    degree = len(ints) - 1
    lead = ints[-1]
    monic = [ints[k] * lead ** (degree - 1 - k) for k in range(degree)] + [1]
    return [Fraction(s, lead) for s in _isolate_integer_roots(monic)]


def format_signs(values: Sequence[int]) -> str:
    return "[" + ",".join({1: "+", -1: "-", 0: "0"}[v] for v in values) + "]"


def format_coefficients(poly: UniPoly) -> List[str]:
    return [format_rational(c) for c in poly.coeffs]
