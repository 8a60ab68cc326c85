"""
Exact sparse multivariate polynomials over the rationals.

Variables are 1-based indices; a polynomial declares how many variables it
lives in (``nvars``) so that arithmetic between polynomials of different
rings is caught early instead of silently padding.
"""
import re
from dataclasses import dataclass
from fractions import Fraction
from types import MappingProxyType
from typing import Callable, Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

from .errors import ArityMismatch, PolynomialSyntaxError, UnknownVariable, ZeroDenominator

Rational = Fraction
Scalar = Union[int, Fraction]
NameSpec = Union[Sequence[str], Callable[[int], str], None]


@dataclass(frozen=True)
class Monomial:
    """Power product stored as sorted ``(variable, exponent)`` pairs, zero exponents omitted."""

    exponents: Tuple[Tuple[int, int], ...] = ()

    @classmethod
    def of(cls, mapping: Mapping[int, int]) -> "Monomial":
        pairs = []
        for var, exp in sorted(mapping.items()):
            if var < 1 or exp < 0:
                raise ValueError(f"invalid monomial entry x{var}^{exp}")
            if exp:
                pairs.append((var, exp))
        return cls(tuple(pairs))

    @classmethod
    def from_dense(cls, dense: Sequence[int]) -> "Monomial":
        return cls(tuple((i + 1, e) for i, e in enumerate(dense) if e))

    @classmethod
    def one(cls) -> "Monomial":
        return cls(())

    def dense(self, nvars: int) -> Tuple[int, ...]:
        out = [0] * nvars
        for var, exp in self.exponents:
            out[var - 1] = exp
        return tuple(out)

    @property
    def degree(self) -> int:
        return sum(exp for _, exp in self.exponents)

    @property
    def max_var(self) -> int:
        return self.exponents[-1][0] if self.exponents else 0

    def exponent(self, var: int) -> int:
        for v, e in self.exponents:
            if v == var:
                return e
        return 0

    def as_dict(self) -> Dict[int, int]:
        return dict(self.exponents)

    def __mul__(self, other: "Monomial") -> "Monomial":
        merged = self.as_dict()
        for var, exp in other.exponents:
            merged[var] = merged.get(var, 0) + exp
        return Monomial(tuple(sorted(merged.items())))

    def divides(self, other: "Monomial") -> bool:
        theirs = other.as_dict()
        return all(theirs.get(var, 0) >= exp for var, exp in self.exponents)

    def is_even(self) -> bool:
        return all(exp % 2 == 0 for _, exp in self.exponents)

    def format(self, names: NameSpec = None) -> str:
        if not self.exponents:
            return "1"
        parts = []
        for var, exp in self.exponents:
            name = _variable_name(var, names)
            parts.append(name if exp == 1 else f"{name}^{exp}")
        return "*".join(parts)


def _variable_name(var: int, names: NameSpec) -> str:
    if names is None:
        return f"x{var}"
    if callable(names):
        return names(var)
    return names[var - 1]


def grlex_key(monomial: Monomial, nvars: int) -> Tuple[int, Tuple[int, ...]]:
    """Sort key of the graded-lex order with x1 > x2 > ... (bigger key, bigger monomial)."""
    return (monomial.degree, monomial.dense(nvars))


def lex_key(monomial: Monomial, nvars: int) -> Tuple[int, ...]:
    return monomial.dense(nvars)


def format_rational(value: Fraction) -> str:
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def parse_rational(text: str) -> Fraction:
    """Parse ``"a"`` or ``"a/b"`` (as used in JSON documents) into a Fraction."""
    text = text.strip()
    if not re.fullmatch(r"[+-]?\d+(/\d+)?", text):
        raise PolynomialSyntaxError(f"not a rational number: {text!r}")
    num, _, den = text.partition("/")
    if den and int(den) == 0:
        raise ZeroDenominator("zero denominator in rational constant")
    return Fraction(int(num), int(den) if den else 1)


class Polynomial:
    """Sparse polynomial in ``nvars`` variables with Fraction coefficients.

    Instances are immutable; zero coefficients are never stored.
    """

    __slots__ = ("_terms", "_nvars", "_hash")

    def __init__(self, terms: Optional[Mapping[Monomial, Scalar]] = None, nvars: int = 0):
        clean: Dict[Monomial, Fraction] = {}
        for monomial, coeff in (terms or {}).items():
            coeff = Fraction(coeff)
            if not coeff:
                continue
            if monomial.max_var > nvars:
                raise ArityMismatch(
                    f"monomial {monomial.format()} does not fit in {nvars} variables"
                )
            clean[monomial] = coeff
        self._terms = clean
        self._nvars = nvars
        self._hash: Optional[int] = None

    # Constructors

    @classmethod
    def _raw(cls, terms: Dict[Monomial, Fraction], nvars: int) -> "Polynomial":
        poly = cls.__new__(cls)
        poly._terms = terms
        poly._nvars = nvars
        poly._hash = None
        return poly

    @classmethod
    def zero(cls, nvars: int) -> "Polynomial":
        return cls._raw({}, nvars)

    @classmethod
    def constant(cls, value: Scalar, nvars: int) -> "Polynomial":
        value = Fraction(value)
        return cls._raw({Monomial.one(): value} if value else {}, nvars)

    @classmethod
    def variable(cls, index: int, nvars: int) -> "Polynomial":
        if not 1 <= index <= nvars:
            raise ArityMismatch(f"x{index} is not a variable of a {nvars}-variable ring")
        return cls._raw({Monomial(((index, 1),)): Fraction(1)}, nvars)

    @classmethod
    def from_dense_terms(cls, terms: Mapping[Tuple[int, ...], Scalar], nvars: int) -> "Polynomial":
        return cls({Monomial.from_dense(exps): c for exps, c in terms.items()}, nvars)

    # Accessors

    @property
    def nvars(self) -> int:
        return self._nvars

    @property
    def terms(self) -> Mapping[Monomial, Fraction]:
        return MappingProxyType(self._terms)

    def dense_terms(self, nvars: Optional[int] = None) -> Dict[Tuple[int, ...], Fraction]:
        width = self._nvars if nvars is None else nvars
        return {m.dense(width): c for m, c in self._terms.items()}

    def coefficient(self, monomial: Monomial) -> Fraction:
        return self._terms.get(monomial, Fraction(0))

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return all(not m.exponents for m in self._terms)

    def constant_value(self) -> Fraction:
        return self._terms.get(Monomial.one(), Fraction(0))

    def total_degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((m.degree for m in self._terms), default=-1)

    def degree_in(self, var: int) -> int:
        return max((m.exponent(var) for m in self._terms), default=-1)

    def variables(self) -> List[int]:
        found = {var for m in self._terms for var, _ in m.exponents}
        return sorted(found)

    def sorted_terms(self) -> List[Tuple[Monomial, Fraction]]:
        """Terms in descending graded-lex order."""
        n = self._nvars
        return sorted(self._terms.items(), key=lambda item: grlex_key(item[0], n), reverse=True)

    def lex_leading_term(self) -> Tuple[Monomial, Fraction]:
        n = self._nvars
        monomial = max(self._terms, key=lambda m: lex_key(m, n))
        return monomial, self._terms[monomial]

    def homogeneous_part(self, degree: int) -> "Polynomial":
        return Polynomial._raw({m: c for m, c in self._terms.items() if m.degree == degree}, self._nvars)

    def is_homogeneous(self) -> bool:
        return len({m.degree for m in self._terms}) <= 1

    # Ring structure

    def _coerce(self, other: Union["Polynomial", Scalar]) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other._nvars != self._nvars:
                raise ArityMismatch(
                    f"cannot combine polynomials in {self._nvars} and {other._nvars} variables"
                )
            return other
        if isinstance(other, (int, Fraction)):
            return Polynomial.constant(other, self._nvars)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        terms = dict(self._terms)
        for m, c in other._terms.items():
            total = terms.get(m, 0) + c
            if total:
                terms[m] = total
            else:
                terms.pop(m, None)
        return Polynomial._raw(terms, self._nvars)

    __radd__ = __add__

    def __neg__(self) -> "Polynomial":
        return Polynomial._raw({m: -c for m, c in self._terms.items()}, self._nvars)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Fraction(other)
            if not other:
                return Polynomial.zero(self._nvars)
            return Polynomial._raw({m: c * other for m, c in self._terms.items()}, self._nvars)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        terms: Dict[Monomial, Fraction] = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                m = m1 * m2
                total = terms.get(m, 0) + c1 * c2
                if total:
                    terms[m] = total
                else:
                    terms.pop(m, None)
        return Polynomial._raw(terms, self._nvars)

    __rmul__ = __mul__

    def __truediv__(self, other: Scalar) -> "Polynomial":
        other = Fraction(other)
        if not other:
            raise ZeroDivisionError("division of a polynomial by zero")
        return self * (1 / other)

    def __pow__(self, exponent: int) -> "Polynomial":
        if exponent < 0:
            raise ValueError("negative exponent")
        result = Polynomial.constant(1, self._nvars)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            exponent >>= 1
            if exponent:
                base = base * base
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            return self._terms == Polynomial.constant(other, self._nvars)._terms
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self._nvars == other._nvars and self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self._nvars, frozenset(self._terms.items())))
        return self._hash

    def __bool__(self) -> bool:
        return bool(self._terms)

    # Transformations

    def with_nvars(self, nvars: int) -> "Polynomial":
        """Same polynomial viewed in a ring with ``nvars`` variables."""
        return Polynomial(self._terms, nvars)

    def rename(self, mapping: Mapping[int, int], nvars: int) -> "Polynomial":
        """Relabel variables (``x_i -> x_mapping[i]``); exponents of variables sent to the same target add up."""
        terms: Dict[Monomial, Fraction] = {}
        for m, c in self._terms.items():
            merged: Dict[int, int] = {}
            for var, exp in m.exponents:
                target = mapping.get(var, var)
                merged[target] = merged.get(target, 0) + exp
            new = Monomial.of(merged)
            total = terms.get(new, 0) + c
            if total:
                terms[new] = total
            else:
                terms.pop(new, None)
        return Polynomial(terms, nvars)

    def substitute(
        self,
        assignments: Mapping[int, Union["Polynomial", Scalar]],
        nvars: Optional[int] = None,
    ) -> "Polynomial":
        """Replace every variable by a polynomial (or scalar) of a common target ring."""
        missing = [v for v in self.variables() if v not in assignments]
        if missing:
            raise ArityMismatch(f"no substitution given for x{missing[0]}")
        target = nvars
        for image in assignments.values():
            if isinstance(image, Polynomial):
                if target is None:
                    target = image.nvars
                elif image.nvars != target:
                    raise ArityMismatch("substituted polynomials live in different rings")
        target = 0 if target is None else target
        images = {
            var: image if isinstance(image, Polynomial) else Polynomial.constant(image, target)
            for var, image in assignments.items()
        }
        powers: Dict[Tuple[int, int], Polynomial] = {}

        def power(var: int, exp: int) -> Polynomial:
            key = (var, exp)
            if key not in powers:
                powers[key] = images[var] ** exp
            return powers[key]

        result = Polynomial.zero(target)
        for m, c in self._terms.items():
            term = Polynomial.constant(c, target)
            for var, exp in m.exponents:
                term = term * power(var, exp)
            result = result + term
        return result

    def evaluate(self, point: Sequence[Scalar]) -> Fraction:
        if len(point) != self._nvars:
            raise ArityMismatch(f"expected {self._nvars} coordinates, got {len(point)}")
        values = [Fraction(v) for v in point]
        total = Fraction(0)
        for m, c in self._terms.items():
            term = c
            for var, exp in m.exponents:
                term *= values[var - 1] ** exp
            total += term
        return total

    def diff(self, var: int) -> "Polynomial":
        """Formal partial derivative with respect to ``x_var``."""
        terms: Dict[Monomial, Fraction] = {}
        for m, c in self._terms.items():
            exp = m.exponent(var)
            if not exp:
                continue
            reduced = dict(m.exponents)
            reduced[var] = exp - 1
            new = Monomial.of(reduced)
            terms[new] = terms.get(new, 0) + c * exp
        return Polynomial(terms, self._nvars)

    # Printing

    def format(self, names: NameSpec = None) -> str:
        if not self._terms:
            return "0"
        pieces: List[str] = []
        for index, (m, c) in enumerate(self.sorted_terms()):
            magnitude = abs(c)
            if not m.exponents:
                body = format_rational(magnitude)
            elif magnitude == 1:
                body = m.format(names)
            else:
                body = f"{format_rational(magnitude)}*{m.format(names)}"
            if index == 0:
                pieces.append(f"-{body}" if c < 0 else body)
            else:
                pieces.append(f" - {body}" if c < 0 else f" + {body}")
        return "".join(pieces)

    def __str__(self) -> str:
        return self.format()

    def __repr__(self) -> str:
        return f"Polynomial({self.format()!r}, nvars={self._nvars})"


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_{},]*)|(.))", re.DOTALL)


class _Parser:
    """Recursive-descent parser for the polynomial grammar."""

    def __init__(self, text: str, nvars: int, names: Optional[Sequence[str]]):
        self.text = text
        self.nvars = nvars
        self.lookup = {name: i + 1 for i, name in enumerate(names)} if names else None
        self.tokens: List[Tuple[str, str, int]] = []
        pos = 0
        while pos < len(text):
            match = _TOKEN.match(text, pos)
            if match.group(0).strip() == "":
                break
            start = match.start(match.lastindex)
            if match.group(1) is not None:
                self.tokens.append(("num", match.group(1), start))
            elif match.group(2) is not None:
                self.tokens.append(("name", match.group(2), start))
            else:
                char = match.group(3)
                if char not in "+-*/^()":
                    raise PolynomialSyntaxError(f"unexpected character {char!r}", start)
                self.tokens.append(("op", char, start))
            pos = match.end()
        self.index = 0

    def peek(self) -> Optional[Tuple[str, str, int]]:
        return self.tokens[self.index] if self.index < len(self.tokens) else None

    def take(self) -> Tuple[str, str, int]:
        token = self.peek()
        if token is None:
            raise PolynomialSyntaxError("unexpected end of input", len(self.text))
        self.index += 1
        return token

    def at_op(self, op: str) -> bool:
        token = self.peek()
        return token is not None and token[0] == "op" and token[1] == op

    def parse(self) -> Polynomial:
        if not self.tokens:
            raise PolynomialSyntaxError("empty expression", 0)
        result = self.expr()
        token = self.peek()
        if token is not None:
            raise PolynomialSyntaxError(f"unexpected {token[1]!r}", token[2])
        return result

    def expr(self) -> Polynomial:
        negate = False
        if self.at_op("-") or self.at_op("+"):
            negate = self.take()[1] == "-"
        result = self.term()
        if negate:
            result = -result
        while self.at_op("+") or self.at_op("-"):
            op = self.take()[1]
            rhs = self.term()
            result = result + rhs if op == "+" else result - rhs
        return result

    def term(self) -> Polynomial:
        result = self.factor()
        while self.at_op("*"):
            self.take()
            result = result * self.factor()
        return result

    def factor(self) -> Polynomial:
        base = self.base()
        if self.at_op("^"):
            self.take()
            kind, value, pos = self.take()
            if kind != "num":
                raise PolynomialSyntaxError("exponent must be a non-negative integer", pos)
            return base ** int(value)
        return base

    def base(self) -> Polynomial:
        kind, value, pos = self.take()
        if kind == "num":
            numerator = int(value)
            if self.at_op("/"):
                self.take()
                dkind, dvalue, dpos = self.take()
                if dkind != "num":
                    raise PolynomialSyntaxError("denominator must be an integer", dpos)
                if int(dvalue) == 0:
                    raise ZeroDenominator("zero denominator", dpos)
                return Polynomial.constant(Fraction(numerator, int(dvalue)), self.nvars)
            return Polynomial.constant(numerator, self.nvars)
        if kind == "name":
            return Polynomial.variable(self.resolve(value, pos), self.nvars)
        if value == "(":
            inner = self.expr()
            if not self.at_op(")"):
                token = self.peek()
                raise PolynomialSyntaxError("missing ')'", token[2] if token else len(self.text))
            self.take()
            return inner
        raise PolynomialSyntaxError(f"unexpected {value!r}", pos)

    def resolve(self, name: str, pos: int) -> int:
        if self.lookup is not None:
            if name not in self.lookup:
                raise UnknownVariable(f"unknown variable {name!r}", pos)
            return self.lookup[name]
        match = re.fullmatch(r"x(\d+)", name)
        if not match:
            raise UnknownVariable(f"unknown variable {name!r}", pos)
        index = int(match.group(1))
        if not 1 <= index <= self.nvars:
            raise UnknownVariable(f"variable {name} outside x1..x{self.nvars}", pos)
        return index


def parse(text: str, nvars: int, names: Optional[Sequence[str]] = None) -> Polynomial:
    """Parse ``text`` into a polynomial in ``nvars`` variables.

    Without ``names`` variables are written ``x1 .. x<nvars>``; otherwise
    ``names[i]`` denotes variable ``i + 1``.
    """
    if names is not None:
        nvars = len(names)
    return _Parser(text, nvars, names).parse()


def infer_nvars(text: str) -> int:
    """Largest ``x<k>`` index mentioned in ``text`` (0 when there is none)."""
    return max((int(k) for k in re.findall(r"\bx(\d+)\b", text)), default=0)


def to_string(poly: Polynomial, names: NameSpec = None) -> str:
    return poly.format(names)


def jacobian(polys: Sequence[Polynomial]) -> List[List[Polynomial]]:
    """Matrix of first partial derivatives, one row per polynomial."""
    if not polys:
        return []
    nvars = polys[0].nvars
    if any(p.nvars != nvars for p in polys):
        raise ArityMismatch("jacobian of polynomials from different rings")
    return [[p.diff(j) for j in range(1, nvars + 1)] for p in polys]


def power_product(factors: Iterable[Tuple[Polynomial, int]], nvars: int) -> Polynomial:
    result = Polynomial.constant(1, nvars)
    for base, exp in factors:
        if exp:
            result = result * base ** exp
    return result
