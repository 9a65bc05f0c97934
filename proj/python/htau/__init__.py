"""Exact computations with Hurwitz numbers and their tau functions."""
import json
from fractions import Fraction

from . import _htau
from ._htau import ConfigError

__all__ = ["ConfigError", "hurwitz", "hurwitz_series", "tbasis", "intersections", "tau", "verify"]


def hurwitz(g, parts):
    """Hurwitz number by counting transposition factorizations."""
    return Fraction(_htau.hurwitz(g, list(parts)))


def hurwitz_series(g, parts):
    """The same number read off the cut-and-join series."""
    return Fraction(_htau.hurwitz_series(g, list(parts)))


def tbasis(K, W):
    return json.loads(_htau.tbasis_json(K, W))


def intersections(W=8, mmax=None):
    rows = json.loads(_htau.intersections_json(W, mmax))
    for r in rows:
        r["value"] = Fraction(r["value"])
    return rows


def tau(family="exponential", c="0", W=6):
    return json.loads(_htau.tau_json(family, c, W))


def verify(W=8):
    return json.loads(_htau.verify_json(W))
