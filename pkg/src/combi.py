"""
Compositions, partitions and the combinatorics of orbits under the symmetric group.
"""
from collections import Counter
from dataclasses import dataclass
from enum import Enum
from itertools import groupby
from math import factorial
from typing import FrozenSet, Iterable, List, Optional, Sequence, Tuple

from .errors import InvalidComposition, NotSorted, SumMismatch


@dataclass(frozen=True)
class Composition:
    """Ordered tuple of positive integers; ``n`` is their sum."""

    parts: Tuple[int, ...]

    def __post_init__(self):
        parts = tuple(int(p) for p in self.parts)
        if not parts or any(p < 1 for p in parts):
            raise InvalidComposition(f"parts must be positive integers, got {self.parts!r}")
        object.__setattr__(self, "parts", parts)

    @property
    def n(self) -> int:
        return sum(self.parts)

    @property
    def length(self) -> int:
        return len(self.parts)

    def __len__(self) -> int:
        return len(self.parts)

    def __iter__(self):
        return iter(self.parts)

    def __getitem__(self, index):
        return self.parts[index]

    def cuts(self) -> FrozenSet[int]:
        """Partial sums strictly inside (0, n)."""
        total, out = 0, set()
        for part in self.parts[:-1]:
            total += part
            out.add(total)
        return frozenset(out)

    def equalities(self) -> FrozenSet[int]:
        """Positions ``j`` (1-based) with ``x_j = x_{j+1}`` on the face of the Weyl chamber."""
        return frozenset(range(1, self.n)) - self.cuts()

    @classmethod
    def from_cuts(cls, n: int, cuts: Iterable[int]) -> "Composition":
        points = sorted(set(cuts) | {0, n})
        return cls(tuple(b - a for a, b in zip(points, points[1:])))

    @classmethod
    def from_equalities(cls, n: int, equalities: Iterable[int]) -> "Composition":
        return cls.from_cuts(n, set(range(1, n)) - set(equalities))

    def expand(self, values: Sequence) -> Tuple:
        """Repeat ``values[j]`` ``parts[j]`` times (a point of the face)."""
        if len(values) != len(self.parts):
            raise InvalidComposition("one value per part is required")
        return tuple(v for v, part in zip(values, self.parts) for _ in range(part))

    def __str__(self) -> str:
        return "(" + ",".join(str(p) for p in self.parts) + ")"


class Partition(Composition):
    """Composition with non-decreasing parts, read as blocks ``(n_i, l_i)``."""

    def __post_init__(self):
        super().__post_init__()
        if list(self.parts) != sorted(self.parts):
            raise InvalidComposition(f"partition parts must be non-decreasing, got {self.parts!r}")

    @classmethod
    def of(cls, parts: Iterable[int]) -> "Partition":
        return cls(tuple(sorted(parts)))

    @classmethod
    def from_blocks(cls, blocks: Sequence[Tuple[int, int]]) -> "Partition":
        """Build from multiplicity form ``[(n_1, l_1), ...]`` with ``n_1 < n_2 < ...``."""
        sizes = [size for size, _ in blocks]
        if sizes != sorted(set(sizes)):
            raise InvalidComposition("block sizes must be strictly increasing")
        return cls(tuple(size for size, count in blocks for _ in range(count)))

    @property
    def blocks(self) -> List[Tuple[int, int]]:
        return [(size, len(list(group))) for size, group in groupby(self.parts)]

    @property
    def block_lengths(self) -> Tuple[int, ...]:
        return tuple(count for _, count in self.blocks)

    @classmethod
    def parse(cls, text: str) -> "Partition":
        """Accepts ``"2,2,3"`` or the multiplicity form ``"2^2 3^1"``."""
        text = text.strip()
        if "^" in text:
            blocks = []
            for chunk in text.replace(",", " ").split():
                size, _, count = chunk.partition("^")
                blocks.append((int(size), int(count or 1)))
            return cls.from_blocks(blocks)
        return cls.of(int(p) for p in text.replace(" ", "").split(",") if p)

    def __str__(self) -> str:
        return "(" + " ".join(f"{size}^{count}" for size, count in self.blocks) + ")"


class Order(Enum):
    PRECEDES = "precedes"
    FOLLOWS = "follows"
    EQUAL = "equal"
    INCOMPARABLE = "incomparable"


@dataclass(frozen=True)
class TranspositionSeq:
    """Adjacent swaps ``(j, j+1)`` (1-based), applied left to right."""

    swaps: Tuple[Tuple[int, int], ...]

    def apply(self, vector: Sequence) -> Tuple:
        out = list(vector)
        for i, j in self.swaps:
            out[i - 1], out[j - 1] = out[j - 1], out[i - 1]
        return tuple(out)

    def __len__(self) -> int:
        return len(self.swaps)


def _compositions(n: int) -> Iterable[Tuple[int, ...]]:
    if n == 0:
        yield ()
        return
    for first in range(1, n + 1):
        for rest in _compositions(n - first):
            yield (first,) + rest


def enumerate_compositions(n: int, length: Optional[int] = None, alternate_odd: bool = False) -> List[Composition]:
    """All compositions of ``n`` in lexicographic order.

    ``length`` restricts to a fixed number of parts; ``alternate_odd`` keeps
    only compositions whose parts in odd positions (1st, 3rd, ...) equal 1.
    """
    if n < 1:
        return []
    found = []
    for parts in _compositions(n):
        if length is not None and len(parts) != length:
            continue
        if alternate_odd and any(parts[i] != 1 for i in range(0, len(parts), 2)):
            continue
        found.append(parts)
    return [Composition(parts) for parts in sorted(found)]


def _partitions(n: int, smallest: int) -> Iterable[Tuple[int, ...]]:
    if n == 0:
        yield ()
        return
    for first in range(smallest, n + 1):
        for rest in _partitions(n - first, first):
            yield (first,) + rest


def enumerate_partitions(n: int, min_length: Optional[int] = None, max_length: Optional[int] = None) -> List[Partition]:
    """Partitions of ``n`` (parts ascending), ordered by length then parts."""
    if n < 1:
        return []
    found = [
        parts for parts in _partitions(n, 1)
        if (min_length is None or len(parts) >= min_length)
        and (max_length is None or len(parts) <= max_length)
    ]
    found.sort(key=lambda parts: (len(parts), parts))
    return [Partition(parts) for parts in found]


def composition_order(first: Composition, second: Composition) -> Order:
    """Compare faces: ``first`` precedes ``second`` when ``second`` is strictly coarser."""
    if first.n != second.n:
        raise SumMismatch(f"compositions of {first.n} and {second.n}")
    a, b = first.cuts(), second.cuts()
    if a == b:
        return Order.EQUAL
    if b < a:
        return Order.PRECEDES
    if a < b:
        return Order.FOLLOWS
    return Order.INCOMPARABLE


def join(first: Composition, second: Composition) -> Composition:
    """Smallest composition coarser than both (intersection of the two faces)."""
    if first.n != second.n:
        raise SumMismatch(f"compositions of {first.n} and {second.n}")
    return Composition.from_cuts(first.n, first.cuts() & second.cuts())


def refines(finer: Partition, coarser: Partition) -> bool:
    """True when the parts of ``finer`` can be grouped to form the parts of ``coarser``."""
    if finer.n != coarser.n:
        raise SumMismatch(f"partitions of {finer.n} and {coarser.n}")
    parts = sorted(finer.parts, reverse=True)
    bins = list(coarser.parts)

    def place(index: int) -> bool:
        if index == len(parts):
            return all(b == 0 for b in bins)
        tried = set()
        for k, room in enumerate(bins):
            if room >= parts[index] and room not in tried:
                tried.add(room)
                bins[k] -= parts[index]
                if place(index + 1):
                    return True
                bins[k] += parts[index]
        return False

    return place(0)


def type_of_point(point: Sequence) -> Partition:
    """Multiset of value multiplicities of ``point`` as a partition."""
    if not point:
        raise InvalidComposition("empty point has no type")
    return Partition.of(Counter(point).values())


def largest_composition(point: Sequence) -> Composition:
    """Run lengths of a sorted point, i.e. the face of the Weyl chamber containing it."""
    if not point:
        raise InvalidComposition("empty point has no composition")
    if any(a > b for a, b in zip(point, point[1:])):
        raise NotSorted("point coordinates must be non-decreasing")
    return Composition(tuple(len(list(group)) for _, group in groupby(point)))


def weyl_face(point: Sequence) -> FrozenSet[int]:
    """Equalities ``x_j = x_{j+1}`` satisfied by a sorted point."""
    return largest_composition(point).equalities()


def orbit_size(partition: Partition) -> int:
    """Number of points in the S_n-orbit of a point of type ``partition``."""
    denominator = 1
    for part in partition.parts:
        denominator *= factorial(part)
    return factorial(partition.n) // denominator


def minimal_adjacent_transpositions(values: Sequence) -> Tuple[TranspositionSeq, Tuple]:
    """Bubble sort recording each swap; equal neighbours are never exchanged."""
    items = list(values)
    swaps: List[Tuple[int, int]] = []
    changed = True
    while changed:
        changed = False
        for j in range(len(items) - 1):
            if items[j] > items[j + 1]:
                items[j], items[j + 1] = items[j + 1], items[j]
                swaps.append((j + 1, j + 2))
                changed = True
    return TranspositionSeq(tuple(swaps)), tuple(items)


def inversions(values: Sequence) -> int:
    return sum(1 for i in range(len(values)) for j in range(i + 1, len(values)) if values[i] > values[j])

