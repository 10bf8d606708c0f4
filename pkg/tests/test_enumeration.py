import itertools
from fractions import Fraction

import pytest

from costaslab.enumeration import (
    all_rationals,
    calkin_wilf,
    interval_rationals,
    naturals,
    rationals_in,
    unit_interval_rationals,
)


def take(gen, n):
    return list(itertools.islice(gen, n))


def test_calkin_wilf_prefix():
    assert take(calkin_wilf(), 7) == [
        Fraction(1),
        Fraction(1, 2),
        Fraction(2),
        Fraction(1, 3),
        Fraction(3, 2),
        Fraction(2, 3),
        Fraction(3),
    ]


def test_calkin_wilf_no_repeats_and_reduced():
    seen = take(calkin_wilf(), 5000)
    assert len(set(seen)) == 5000
    for q in seen:
        assert q > 0


def test_all_rationals():
    assert take(all_rationals(), 5) == [0, 1, -1, Fraction(1, 2), Fraction(-1, 2)]
    seen = take(all_rationals(), 4001)
    assert len(set(seen)) == 4001


def test_naturals():
    assert take(naturals(), 4) == [1, 2, 3, 4]
    assert isinstance(next(naturals()), Fraction)


def test_interval_prefix():
    got = take(interval_rationals(Fraction(0), Fraction(1)), 6)
    assert got == [0, 1, Fraction(1, 2), Fraction(1, 3), Fraction(2, 3), Fraction(1, 4)]


def test_interval_affine():
    got = take(interval_rationals(Fraction(2), Fraction(4)), 5)
    assert got == [2, 4, 3, Fraction(8, 3), Fraction(10, 3)]
    for q in take(interval_rationals(Fraction(2), Fraction(4)), 500):
        assert 2 <= q <= 4


def test_interval_half_lines():
    lower = take(interval_rationals(Fraction(5), None), 100)
    assert lower[0] == 5
    assert all(q >= 5 for q in lower)
    upper = take(interval_rationals(None, Fraction(0)), 100)
    assert upper[0] == 0
    assert all(q <= 0 for q in upper)
    unbounded = take(interval_rationals(None, None), 5)
    assert unbounded == [0, 1, -1, Fraction(1, 2), Fraction(-1, 2)]


def test_interval_empty():
    with pytest.raises(ValueError):
        next(interval_rationals(Fraction(1), Fraction(1)))


def test_unit_interval_prefix():
    got = take(unit_interval_rationals(), 6)
    assert got == [0, Fraction(1, 2), Fraction(1, 3), Fraction(2, 3), Fraction(1, 4), Fraction(3, 5)]
    seen = take(unit_interval_rationals(), 2000)
    assert len(set(seen)) == 2000
    assert all(0 <= q < 1 for q in seen)


def test_rationals_in_denominator_order():
    got = take(rationals_in(Fraction(0), Fraction(1)), 8)
    assert got == [
        Fraction(0),
        Fraction(1, 2),
        Fraction(1, 3),
        Fraction(2, 3),
        Fraction(1, 4),
        Fraction(3, 4),
        Fraction(1, 5),
        Fraction(2, 5),
    ]
    for q in take(rationals_in(Fraction(-1, 2), Fraction(1, 2)), 200):
        assert Fraction(-1, 2) <= q < Fraction(1, 2)
