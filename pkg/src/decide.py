"""
Real preimages of points given in block elementary symmetric coordinates.

A point ``w`` of type ``lambda`` lists, for every block ``i``, the values
``e_1 .. e_{l_i}`` of ``l_i`` unknowns; it has a real preimage exactly when
each Vieta polynomial ``u^l - e_1 u^(l-1) + ... + (-1)^l e_l`` splits over R.
"""
import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Sequence, Tuple

from .combi import Partition
from .errors import InvalidParam, LeadingCoefficientVanishes, PatternMismatch
from .poly import Scalar
from .realroot import ThomEncoding, UniPoly, specialized_root_count
from .symfun import BasisKind, basis_polynomial
from .zerodim import ZeroDimParam, validate

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class OrbitParam:
    """Parametrization of points in the block coordinates of ``partition``."""

    partition: Partition
    param: ZeroDimParam

    def __post_init__(self):
        if self.param.nvars != self.partition.length:
            raise InvalidParam(
                f"{self.param.nvars} coordinates for a partition of length {self.partition.length}"
            )

    def blocks(self) -> List[Tuple[UniPoly, ...]]:
        """Coordinate polynomials grouped by block."""
        out, start = [], 0
        for count in self.partition.block_lengths:
            out.append(self.param.v[start:start + count])
            start += count
        return out


@dataclass(frozen=True)
class VietaLift:
    """Per-block polynomials ``rho_i(u, T)`` as coefficient lists in ``u`` (ascending)."""

    orbit: OrbitParam
    blocks: Tuple[Tuple[UniPoly, ...], ...]


def vieta_lift(orbit: OrbitParam) -> VietaLift:
    """``rho_i = q0 u^l - v_{i,1} u^(l-1) + v_{i,2} u^(l-2) - ...``."""
    den = orbit.param.denominator
    blocks = []
    for coords in orbit.blocks():
        length = len(coords)
        coeffs = [UniPoly()] * (length + 1)
        coeffs[length] = den
        for j, vj in enumerate(coords, start=1):
            coeffs[length - j] = vj if j % 2 == 0 else -vj
        blocks.append(tuple(coeffs))
    return VietaLift(orbit, tuple(blocks))


def block_fully_real(coeffs: Sequence[UniPoly], orbit: OrbitParam, encoding: ThomEncoding) -> bool:
    """All roots of one Vieta polynomial at ``theta`` are real (counted with multiplicity)."""
    degree = len(coeffs) - 1
    try:
        total = specialized_root_count(coeffs, orbit.param.root_signs, encoding, with_multiplicity=True)
    except LeadingCoefficientVanishes as exc:
        raise InvalidParam(f"the denominator vanishes at the root {encoding}") from exc
    return total == degree


def decide_real_preimage(orbit: OrbitParam) -> bool:
    """True when some real point of the parametrization has a real preimage."""
    report = validate(orbit.param)
    if not report:
        raise InvalidParam("; ".join(report.diagnostics))
    if orbit.param.q.degree < 1:
        return False
    lift = vieta_lift(orbit)
    for point in orbit.param.real_points():
        if all(block_fully_real(coeffs, orbit, point.encoding) for coeffs in lift.blocks):
            logger.debug("real preimage over the root %s", point.encoding)
            return True
    return False


def orbit_compress(point: Sequence[Scalar], partition: Partition) -> Tuple[Fraction, ...]:
    """Block elementary coordinates of a point laid out along ``partition``.

    The point must repeat each value ``n_i`` times in the order of the parts;
    the result lists ``e_1 .. e_{l_i}`` of the block values, block by block.
    """
    values = [Fraction(x) for x in point]
    if len(values) != partition.n:
        raise PatternMismatch(f"expected {partition.n} coordinates, got {len(values)}")
    representatives: List[Fraction] = []
    position = 0
    for part in partition.parts:
        run = values[position:position + part]
        if any(x != run[0] for x in run):
            raise PatternMismatch(f"coordinates {position + 1}..{position + part} are not equal")
        representatives.append(run[0])
        position += part
    out: List[Fraction] = []
    start = 0
    for count in partition.block_lengths:
        block = representatives[start:start + count]
        for j in range(1, count + 1):
            out.append(basis_polynomial(BasisKind.ELEMENTARY, j, count).evaluate(block))
        start += count
    return tuple(out)
