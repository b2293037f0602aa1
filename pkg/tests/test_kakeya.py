import itertools
import json
import random
from fractions import Fraction

import pytest

from fqkakeya.errors import EnumerationTooLarge, EvenCharacteristic, NotAlmostKakeya, NotAPrimePower
from fqkakeya.geometry import Line, all_directions, all_points, nonhorizontal_directions
from fqkakeya.gf import field_new
from fqkakeya.kakeya import (
    LineSelection,
    PointSet,
    almost_kakeya_size,
    bounds,
    construct_almost_kakeya_odd,
    construct_kakeya_recursive,
    is_almost_kakeya,
    is_kakeya,
    minimal_kakeya_2d,
    recursive_construction,
    select_lines,
)

from oracles import brute_contains_line_in_every

ODD = [(q, n) for q in (3, 5, 7) for n in (2, 3)]


def _kakeya_brute(K):
    return brute_contains_line_in_every(K.field, K.points(), all_directions(K.field, K.n))


def _almost_brute(K):
    return brute_contains_line_in_every(K.field, K.points(), nonhorizontal_directions(K.field, K.n))


# -- checkers ------------------------------------------------------------------------

def test_full_space_is_kakeya():
    for q, n in [(2, 2), (3, 3), (4, 2)]:
        res = is_kakeya(PointSet.full_space(field_new(q), n))
        assert res.ok and len(res.selection) == (q ** n - 1) // (q - 1)


def test_single_line_is_not_kakeya():
    F = field_new(3)
    K = PointSet.from_points(F, 2, Line(F, (0, 0), (1, 1)).points())
    res = is_kakeya(K)
    assert not res.ok
    assert res.failing_direction != (1, 1)


def test_empty_set_is_not_almost_kakeya():
    assert not is_almost_kakeya(PointSet.from_points(field_new(3), 2, [])).ok


@pytest.mark.parametrize("q,n", [(2, 2), (3, 2), (2, 3)])
def test_checkers_match_brute_force_on_random_subsets(q, n):
    rng = random.Random(q * 10 + n)
    F = field_new(q)
    pts = list(all_points(F, n))
    for _ in range(300):
        k = rng.randint(0, len(pts))
        K = PointSet.from_points(F, n, rng.sample(pts, k))
        assert is_kakeya(K).ok == _kakeya_brute(K)
        assert is_almost_kakeya(K).ok == _almost_brute(K)


def test_checkers_exhaustive_gf2_plane():
    F = field_new(2)
    pts = list(all_points(F, 2))
    for mask in range(16):
        K = PointSet.from_points(F, 2, [p for i, p in enumerate(pts) if mask >> i & 1])
        assert is_kakeya(K).ok == _kakeya_brute(K)
        assert is_almost_kakeya(K).ok == _almost_brute(K)


def test_witness_lines_lie_in_set():
    K, _ = construct_almost_kakeya_odd(field_new(5), 2)
    big = K.union(PointSet.from_points(K.field, 2, Line(K.field, (0, 0), (1, 0)).points()))
    res = is_kakeya(big)
    assert res.ok
    for l in res.selection:
        assert all(p in big for p in l.points())


def test_check_limit():
    with pytest.raises(EnumerationTooLarge):
        is_kakeya(PointSet.from_points(field_new(11), 7, []))


# -- constructions ------------------------------------------------------------------

@pytest.mark.parametrize("q,n", ODD)
def test_almost_construction(q, n):
    F = field_new(q)
    K, L = construct_almost_kakeya_odd(F, n)
    assert len(K) == almost_kakeya_size(q, n) == q * ((q + 1) // 2) ** (n - 1)
    assert is_almost_kakeya(K).ok
    assert len(L) == q ** (n - 1)
    for d, l in L.lines.items():
        assert l.direction == d and all(p in K for p in l.points())
    assert len(K) >= bounds(q, n).new_bound


def test_almost_construction_examples():
    assert len(construct_almost_kakeya_odd(field_new(5), 3)[0]) == 45
    assert len(construct_almost_kakeya_odd(field_new(3), 2)[0]) == 6
    assert len(construct_almost_kakeya_odd(field_new(9), 2)[0]) == 45
    with pytest.raises(EvenCharacteristic):
        construct_almost_kakeya_odd(field_new(4), 2)


@pytest.mark.parametrize("q,n", [(3, 2), (5, 2), (3, 3), (5, 3)])
def test_recursive_construction(q, n):
    rec = recursive_construction(field_new(q), n)
    assert len(rec.set) <= rec.expectation
    assert is_kakeya(rec.set).ok
    b = bounds(q, n)
    assert len(rec.set) >= b.new_bound >= b.dkss_bound


def test_recursive_examples():
    assert len(construct_kakeya_recursive(field_new(3), 2)) <= 7
    assert len(construct_kakeya_recursive(field_new(5), 2)) <= 17
    assert construct_kakeya_recursive(field_new(7), 1) == PointSet.full_space(field_new(7), 1)
    with pytest.raises(EvenCharacteristic):
        construct_kakeya_recursive(field_new(2), 2)


def test_recursive_sampled_is_kakeya_and_deterministic():
    F = field_new(5)
    a = recursive_construction(F, 3, strategy="sampled", seed=11, trials=20)
    b = recursive_construction(F, 3, strategy="sampled", seed=11, trials=20)
    assert a.set == b.set and a.shift == b.shift
    assert is_kakeya(a.set).ok


def test_recursive_expectation_literal():
    # |K'| = 6, |K_1| = 3, q^2 = 9
    assert recursive_construction(field_new(3), 2).expectation == 7
    assert recursive_construction(field_new(5), 2).expectation == 17


def test_kakeya_implies_almost_on_random_supersets():
    rng = random.Random(5)
    for q, n in [(3, 2), (5, 2), (3, 3)]:
        F = field_new(q)
        base = construct_kakeya_recursive(F, n)
        pts = list(all_points(F, n))
        for _ in range(30):
            extra = PointSet.from_points(F, n, rng.sample(pts, rng.randint(0, q)))
            K = base.union(extra)
            assert is_kakeya(K).ok and is_almost_kakeya(K).ok


# -- selections ---------------------------------------------------------------------

def test_select_lines_sizes_and_incidences():
    for q, n in [(3, 2), (5, 2), (3, 3)]:
        K, _ = construct_almost_kakeya_odd(field_new(q), n)
        L = select_lines(K)
        assert len(L) == q ** (n - 1)
        inc = L.incidences()
        assert sum(inc.values()) == q ** n
        assert sum(len(L.lines_through(p)) for p in K.points()) == q ** n


def test_select_lines_full_plane_gf2():
    assert len(select_lines(PointSet.full_space(field_new(2), 2))) == 2


def test_select_lines_keeps_witness_and_rejects_bad_ones():
    F = field_new(5)
    K, W = construct_almost_kakeya_odd(F, 2)
    assert select_lines(K, W).lines == W.lines
    bad = LineSelection(dict(W.lines))
    bad.lines[(0, 1)] = Line(F, (1, 0), (0, 1))
    with pytest.raises(NotAlmostKakeya):
        select_lines(K, bad)
    with pytest.raises(NotAlmostKakeya):
        select_lines(PointSet.from_points(F, 2, []))


# -- minimal 2-D search -------------------------------------------------------------

@pytest.mark.parametrize("q,expected", [(2, 3), (3, 7), (4, 10), (5, 17)])
def test_minimal_kakeya_2d(q, expected):
    m = minimal_kakeya_2d(field_new(q))
    assert m.size == expected == bounds(q, 2).sharp_2d
    assert len(m.example) == m.size and is_kakeya(m.example).ok
    assert m.size >= q * (q + 1) // 2
    assert (m.size == q * (q + 1) // 2) == (q % 2 == 0)


@pytest.mark.parametrize("q", [2, 3, 4, 5])
def test_minimal_symmetry_reduction_changes_nothing(q):
    F = field_new(q)
    assert minimal_kakeya_2d(F, fix_translations=False).size == minimal_kakeya_2d(F).size


@pytest.mark.parametrize("q", [2, 3, 4])
def test_minimal_kakeya_2d_against_subset_enumeration(q):
    # Kakeya is upward closed, so it suffices to look at sizes m-1 and m
    F = field_new(q)
    m = minimal_kakeya_2d(F).size
    pts = list(all_points(F, 2))
    dirs = all_directions(F, 2)
    assert not any(brute_contains_line_in_every(F, c, dirs) for c in itertools.combinations(pts, m - 1))
    assert any(brute_contains_line_in_every(F, c, dirs) for c in itertools.combinations(pts, m))


def test_minimal_q7():
    assert minimal_kakeya_2d(field_new(7)).size == 31


def test_minimal_limit():
    with pytest.raises(EnumerationTooLarge):
        minimal_kakeya_2d(field_new(8))


# -- bounds ---------------------------------------------------------------------------

def test_bounds_examples():
    b = bounds(3, 3)
    assert (b.dkss_bound, b.new_bound, b.thm3_bound) == (Fraction(729, 125), Fraction(243, 25), Fraction(30, 4))
    b = bounds(3, 2)
    assert (b.new_bound, b.sharp_2d) == (Fraction(27, 5), 7)
    assert bounds(2, 2).sharp_2d == 3
    with pytest.raises(NotAPrimePower):
        bounds(6, 2)


def test_bound_ratio_identity():
    for q in (2, 3, 4, 5, 7, 8, 9, 11, 13, 16):
        for n in range(1, 7):
            b = bounds(q, n)
            assert b.new_bound / b.dkss_bound == 2 - Fraction(1, q)


def test_even_construction_size():
    assert bounds(4, 2).even_construction == Fraction(10)
    assert bounds(2, 3).even_construction == Fraction(2 + Fraction(3, 4) * 4)


def test_bounds_json_is_exact():
    data = bounds(5, 3).to_json()
    assert data["bounds"]["new"]["numerator"] == 3125
    assert data["bounds"]["new"]["denominator"] == 81


# -- serialization -------------------------------------------------------------------

def test_pointset_json_roundtrip():
    K, L = construct_almost_kakeya_odd(field_new(9), 2)
    data = json.loads(json.dumps(K.to_json()))
    assert data["points"] == sorted(data["points"])
    assert data["modulus"] == [1, 0, 1]  # x^2 + 1, since -1 is not a square mod 3
    assert PointSet.from_json(data) == K
    L2 = LineSelection.from_json(K.field, json.loads(json.dumps(L.to_json())))
    assert L2.lines == L.lines
