import itertools
import math

import pytest
from hypothesis import given, strategies as st

from hyperspectra.errors import OverflowGuard
from hyperspectra.farey import (
    FareySlope, IntegerMappingClass, farey_adjacent, farey_bfs_distances, farey_distance,
    stable_translation_length,
)

INF = FareySlope.infinity()


def test_slope_contract():
    with pytest.raises(ValueError):
        FareySlope(2, 4)
    with pytest.raises(ValueError):
        FareySlope(1, -2)
    with pytest.raises(ValueError):
        FareySlope(-1, 0)
    assert FareySlope.of(-2, -4) == FareySlope(1, 2)
    assert FareySlope.of(-3, 0) == INF


def test_adjacency_examples():
    assert farey_adjacent(FareySlope(0, 1), INF)
    assert farey_adjacent(FareySlope(0, 1), FareySlope(1, 2))
    assert not farey_adjacent(INF, FareySlope(2, 5))


def test_distance_examples():
    a = FareySlope(3, 7)
    assert farey_distance(a, a) == 0
    assert farey_distance(FareySlope(0, 1), FareySlope(1, 2)) == 1
    assert farey_distance(INF, FareySlope(2, 5)) == 3


def test_against_bfs_denominator_50_from_several_sources():
    bound = 50
    sources = [INF, FareySlope(0, 1), FareySlope(2, 5), FareySlope(-13, 21)]
    table = farey_bfs_distances(sources, 60)
    for s in sources:
        for v, dist in table[s].items():
            if v.q <= bound and abs(v.p) <= bound:
                assert farey_distance(s, v) == dist, (s, v)


def _slopes(bound):
    return [FareySlope(p, q) for q in range(1, bound + 1) for p in range(-bound, bound + 1)
            if math.gcd(p, q) == 1] + [INF]


def test_metric_axioms_on_sample():
    pts = _slopes(7)
    for a, b in itertools.product(pts[::3], repeat=2):
        d = farey_distance(a, b)
        assert d == farey_distance(b, a)
        assert (d == 0) == (a == b)
    for a, b, c in itertools.islice(itertools.product(pts[::5], repeat=3), 4000):
        assert farey_distance(a, c) <= farey_distance(a, b) + farey_distance(b, c)


big = st.integers(-10 ** 6, 10 ** 6)
slope = st.tuples(big, big).filter(lambda t: t != (0, 0)).map(lambda t: FareySlope.of(*t))

sl2 = st.lists(st.sampled_from([IntegerMappingClass(1, 1, 0, 1), IntegerMappingClass(1, 0, 1, 1),
                                IntegerMappingClass(0, -1, 1, 0)]), min_size=1, max_size=12)


@given(slope, slope, sl2)
def test_isometric_action(a, b, gens):
    g = IntegerMappingClass(1, 0, 0, 1)
    for h in gens:
        g = g @ h
    assert farey_distance(g.act(a), g.act(b)) == farey_distance(a, b)


def test_mapping_class_kinds():
    assert IntegerMappingClass(2, 1, 1, 1).kind == "pseudo-Anosov"
    assert IntegerMappingClass(1, 1, 0, 1).kind == "reducible"
    assert IntegerMappingClass(0, -1, 1, 0).kind == "finite order"
    with pytest.raises(ValueError):
        IntegerMappingClass(1, 1, 1, 1)


def test_translation_lengths():
    r = stable_translation_length(IntegerMappingClass(1, 0, 0, 1))
    assert r.estimates == [0.0] * 12
    r = stable_translation_length(IntegerMappingClass(1, 1, 0, 1), n_max=12)
    assert r.final < 0.2 and r.subadditive
    r = stable_translation_length(IntegerMappingClass(2, 1, 1, 1), n_max=12)
    assert r.final > 0 and abs(r.estimates[-1] - r.estimates[-2]) < 0.1
    assert r.alternate_final == pytest.approx(r.final, abs=0.25) and r.subadditive
    with pytest.raises(ValueError):
        stable_translation_length(IntegerMappingClass(2, 1, 1, 1), n_max=3)


def test_translation_length_of_longer_word():
    # R^2 L^3 has four letters per period in the ladder and positive translation length
    phi = IntegerMappingClass(1, 2, 0, 1) @ IntegerMappingClass(1, 0, 3, 1)
    r = stable_translation_length(phi, n_max=20)
    assert r.final > 0 and r.subadditive


def test_overflow_guard():
    with pytest.raises(OverflowGuard):
        stable_translation_length(IntegerMappingClass(2, 1, 1, 1), n_max=40, bit_cap=16)
