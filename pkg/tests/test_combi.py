import random

import pytest

from src.combi import (
    Composition,
    Order,
    Partition,
    composition_order,
    enumerate_compositions,
    enumerate_partitions,
    inversions,
    join,
    largest_composition,
    minimal_adjacent_transpositions,
    orbit_size,
    refines,
    type_of_point,
    weyl_face,
)
from src.errors import InvalidComposition, NotSorted, SumMismatch

PARTITION_NUMBERS = [1, 2, 3, 5, 7, 11, 15, 22, 30, 42]


@pytest.mark.parametrize("n", range(1, 11))
def test_counts_match_closed_forms(n):
    assert len(enumerate_compositions(n)) == 2 ** (n - 1)
    assert len(enumerate_partitions(n)) == PARTITION_NUMBERS[n - 1]


def test_compositions_of_four_into_three_parts():
    found = {c.parts for c in enumerate_compositions(4, length=3)}
    assert found == {(2, 1, 1), (1, 2, 1), (1, 1, 2)}
    assert [c.parts for c in enumerate_compositions(4, length=3, alternate_odd=True)] == [(1, 2, 1)]


def test_partitions():
    assert len(enumerate_partitions(4)) == 5
    assert {p.parts for p in enumerate_partitions(3)} == {(1, 1, 1), (1, 2), (3,)}
    long_ones = enumerate_partitions(7, min_length=3)
    assert Partition((2, 2, 3)) in long_ones
    assert all(p.length >= 3 for p in long_ones)
    lengths = [p.length for p in enumerate_partitions(6)]
    assert lengths == sorted(lengths)


def test_partition_notation():
    p = Partition.parse("2^2 3^1")
    assert p.parts == (2, 2, 3)
    assert p.blocks == [(2, 2), (3, 1)]
    assert str(p) == "(2^2 3^1)"
    assert Partition.parse("3,1,1") == Partition((1, 1, 3))
    with pytest.raises(InvalidComposition):
        Partition((3, 1))


def test_composition_order_and_join():
    assert composition_order(Composition((1, 2, 1)), Composition((3, 1))) is Order.PRECEDES
    assert composition_order(Composition((3, 1)), Composition((1, 2, 1))) is Order.FOLLOWS
    assert composition_order(Composition((1, 3)), Composition((3, 1))) is Order.INCOMPARABLE
    assert join(Composition((2, 1, 1)), Composition((1, 1, 1, 1))) == Composition((2, 1, 1))
    lam = Composition((1, 2, 1))
    assert join(lam, lam) == lam
    with pytest.raises(SumMismatch):
        join(Composition((1, 1)), Composition((3,)))


def test_weyl_faces():
    c = Composition((1, 2, 1))
    assert c.equalities() == frozenset({2})
    assert Composition.from_equalities(4, {2}) == c
    assert weyl_face((0, 1, 1, 5)) == frozenset({2})


def test_refinement():
    assert refines(Partition((1, 1, 1)), Partition((1, 2)))
    assert not refines(Partition((3,)), Partition((1, 1, 1)))
    assert refines(Partition((1, 2)), Partition((1, 2)))
    assert not refines(Partition((2, 2)), Partition((1, 3)))


def test_point_types():
    assert type_of_point((5, 5, 2)) == Partition((1, 2))
    assert type_of_point((1, 2, 3)) == Partition((1, 1, 1))
    assert largest_composition((2, 5, 5)) == Composition((1, 2))
    with pytest.raises(NotSorted):
        largest_composition((5, 2))


def test_orbit_size():
    assert orbit_size(Partition((1, 1, 1))) == 6
    assert orbit_size(Partition((3,))) == 1
    assert orbit_size(Partition.parse("2^2 3^1")) == 210


def test_minimal_adjacent_transpositions():
    swaps, ordered = minimal_adjacent_transpositions((1, 2, 3))
    assert len(swaps) == 0 and ordered == (1, 2, 3)
    swaps, ordered = minimal_adjacent_transpositions((2, 1))
    assert swaps.swaps == ((1, 2),) and ordered == (1, 2)
    swaps, _ = minimal_adjacent_transpositions((3, 1, 2))
    assert len(swaps) == 2


def test_transposition_count_equals_inversions():
    rng = random.Random(5)
    for _ in range(1000):
        values = [rng.randint(-3, 3) for _ in range(rng.randint(1, 7))]
        swaps, ordered = minimal_adjacent_transpositions(values)
        assert len(swaps) == inversions(values)
        assert swaps.apply(values) == ordered == tuple(sorted(values))


def test_sorted_points_lie_on_the_face_of_their_composition():
    rng = random.Random(9)
    for _ in range(200):
        point = sorted(rng.randint(0, 3) for _ in range(rng.randint(1, 6)))
        lam = largest_composition(point)
        assert Composition.from_equalities(len(point), weyl_face(point)) == lam
        assert lam.expand(sorted(set(point))) == tuple(point)
