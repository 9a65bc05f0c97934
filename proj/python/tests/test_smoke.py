from fractions import Fraction

import pytest

import htau


def test_hurwitz_routes():
    assert htau.hurwitz(0, [3]) == Fraction(1, 3)
    assert htau.hurwitz(0, [2, 1]) == 1
    for g, parts in [(1, [2, 1]), (0, [1, 1, 2]), (1, [3])]:
        assert htau.hurwitz(g, parts) == htau.hurwitz_series(g, parts)


def test_tbasis():
    T = htau.tbasis(3, 5)
    assert [r["k"] for r in T] == [0, 1, 2, 3]
    assert T[3]["text"].startswith("(u^3)*q1")


def test_intersections():
    rows = {r["label"]: r["value"] for r in htau.intersections(6)}
    assert rows["<tau0 tau0 tau0>"] == 1
    assert rows["<tau2>"] == Fraction(1, 24)


def test_tau_and_errors():
    t = htau.tau("cutjoin", "1", 4)
    assert t["series"]["family"] == "p"
    with pytest.raises(ValueError):
        htau.tau("nope")
    with pytest.raises(ValueError):
        htau.verify(2)


def test_verify_flags_only_the_derivative_identity():
    failed = [r["check"] for r in htau.verify(6) if r["status"] == "fail"]
    assert failed and all("n=" in c for c in failed)
