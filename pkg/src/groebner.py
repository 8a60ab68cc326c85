"""
Buchberger's algorithm over Q in graded reverse lexicographic order.

Polynomials are plain dicts from dense exponent tuples to Fractions; the
public entry points convert from and to :class:`Polynomial`.
"""
import logging
from fractions import Fraction
from typing import Dict, List, Sequence, Tuple

from .errors import ArityMismatch
from .poly import Polynomial

logger = logging.getLogger(__name__)

Dense = Tuple[int, ...]
SparsePoly = Dict[Dense, Fraction]


def grevlex_key(monomial: Dense) -> Tuple[int, Tuple[int, ...]]:
    return sum(monomial), tuple(-e for e in reversed(monomial))


def leading_monomial(poly: SparsePoly) -> Dense:
    return max(poly, key=grevlex_key)


def _divides(a: Dense, b: Dense) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _lcm(a: Dense, b: Dense) -> Dense:
    return tuple(max(x, y) for x, y in zip(a, b))


def _shift(a: Dense, b: Dense) -> Dense:
    return tuple(x - y for x, y in zip(a, b))


def _monic(poly: SparsePoly) -> SparsePoly:
    lead = poly[leading_monomial(poly)]
    return {m: c / lead for m, c in poly.items()}


def _subtract_multiple(target: SparsePoly, poly: SparsePoly, factor: Fraction, shift: Dense):
    for m, c in poly.items():
        key = tuple(x + y for x, y in zip(m, shift))
        value = target.get(key, 0) - factor * c
        if value:
            target[key] = value
        else:
            target.pop(key, None)


def reduce(poly: SparsePoly, basis: Sequence[Tuple[SparsePoly, Dense]]) -> SparsePoly:
    """Full reduction of ``poly`` by ``(element, leading monomial)`` pairs."""
    work = dict(poly)
    remainder: SparsePoly = {}
    while work:
        m = leading_monomial(work)
        c = work[m]
        for element, lead in basis:
            if _divides(lead, m):
                _subtract_multiple(work, element, c / element[lead], _shift(m, lead))
                break
        else:
            remainder[m] = c
            del work[m]
    return remainder


def s_polynomial(f: SparsePoly, g: SparsePoly) -> SparsePoly:
    lf, lg = leading_monomial(f), leading_monomial(g)
    lcm = _lcm(lf, lg)
    result: SparsePoly = {}
    _subtract_multiple(result, f, -1 / f[lf], _shift(lcm, lf))
    _subtract_multiple(result, g, 1 / g[lg], _shift(lcm, lg))
    return result


def buchberger(polys: Sequence[SparsePoly]) -> List[SparsePoly]:
    """Reduced monic Groebner basis, sorted by decreasing leading monomial.

    Every nonzero S-polynomial remainder is made monic before it joins the
    basis. Over Q this plays the part of content removal: coefficients stay
    normalized and the reduced basis is the same either way.
    """
    basis: List[Tuple[SparsePoly, Dense]] = []
    pairs: List[Tuple[int, int]] = []

    def add(poly: SparsePoly):
        poly = _monic(poly)
        index = len(basis)
        basis.append((poly, leading_monomial(poly)))
        pairs.extend((i, index) for i in range(index))

    for poly in polys:
        if poly:
            add(poly)
    if not basis:
        return []

    while pairs:
        # normal selection strategy
        k = min(range(len(pairs)), key=lambda t: grevlex_key(_lcm(basis[pairs[t][0]][1], basis[pairs[t][1]][1])))
        i, j = pairs.pop(k)
        li, lj = basis[i][1], basis[j][1]
        lcm = _lcm(li, lj)
        if lcm == tuple(x + y for x, y in zip(li, lj)):
            continue
        pending = set(pairs)
        if any(
            t not in (i, j)
            and _divides(basis[t][1], lcm)
            and (min(i, t), max(i, t)) not in pending
            and (min(j, t), max(j, t)) not in pending
            for t in range(len(basis))
        ):
            continue
        remainder = reduce(s_polynomial(basis[i][0], basis[j][0]), basis)
        if remainder:
            add(remainder)
            if all(e == 0 for e in basis[-1][1]):
                return [basis[-1][0]]
    logger.debug("buchberger produced %d elements before reduction", len(basis))

    # minimalize
    minimal: List[Tuple[SparsePoly, Dense]] = []
    for index, (poly, lead) in enumerate(basis):
        dominated = any(
            _divides(other, lead) and (other != lead or other_index < index)
            for other_index, (_, other) in enumerate(basis)
            if other_index != index
        )
        if not dominated:
            minimal.append((poly, lead))
    # interreduce
    reduced = []
    for index, (poly, lead) in enumerate(minimal):
        others = [pair for k, pair in enumerate(minimal) if k != index]
        reduced.append(_monic(reduce(poly, others)))
    reduced.sort(key=lambda p: grevlex_key(leading_monomial(p)), reverse=True)
    return reduced


def to_sparse(poly: Polynomial, nvars: int) -> SparsePoly:
    if poly.nvars != nvars:
        raise ArityMismatch(f"polynomial in {poly.nvars} variables, system has {nvars}")
    return poly.dense_terms()


def groebner_basis(polys: Sequence[Polynomial]) -> List[Polynomial]:
    """Reduced Groebner basis (grevlex) of the ideal generated by ``polys``."""
    if not polys:
        return []
    nvars = polys[0].nvars
    basis = buchberger([to_sparse(p, nvars) for p in polys])
    return [Polynomial.from_dense_terms(g, nvars) for g in basis]


def is_zero_dimensional(leads: Sequence[Dense], nvars: int) -> bool:
    """Every variable has a pure power among the leading monomials."""
    for i in range(nvars):
        if not any(lead[i] > 0 and all(e == 0 for k, e in enumerate(lead) if k != i) for lead in leads):
            return False
    return True


def standard_monomials(leads: Sequence[Dense], nvars: int) -> List[Dense]:
    """Monomials not divisible by any leading monomial, increasing in grevlex."""
    if any(all(e == 0 for e in lead) for lead in leads):
        return []
    found = []
    seen = {(0,) * nvars}
    frontier = [(0,) * nvars]
    while frontier:
        m = frontier.pop()
        if any(_divides(lead, m) for lead in leads):
            continue
        found.append(m)
        for i in range(nvars):
            child = tuple(e + (1 if k == i else 0) for k, e in enumerate(m))
            if child not in seen:
                seen.add(child)
                frontier.append(child)
    return sorted(found, key=grevlex_key)
