"""The universal one-dimensional solenoid at finite transverse depth.

Points are classes of (x, k) in R x Zhat under the deck action
t.(x, k) = (x + t, k - t); every class has a unique representative with
leaf coordinate in [0, 1).  The leaf coordinate is an exact rational by
default; binary64 is accepted for analytic-map experiments and propagates
through all operations.
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from math import factorial

from .profinite import DEFAULT_DEPTH, ProfiniteInt, embed_int, pf_add, pf_neg

Coordinate = Fraction | float


@dataclass(frozen=True)
class SolenoidPoint:
    """Canonical representative (x, k) with 0 <= x < 1."""

    x: Coordinate
    k: ProfiniteInt

    def __post_init__(self) -> None:
        if isinstance(self.x, int):
            object.__setattr__(self, "x", Fraction(self.x))
        if not 0 <= self.x < 1:
            raise ValueError(f"leaf coordinate {self.x} outside [0, 1)")

    @property
    def depth(self) -> int:
        return self.k.depth

    @property
    def is_exact(self) -> bool:
        return isinstance(self.x, Fraction)

    def render(self) -> str:
        inner = ", ".join(str(r) for r in self.k.residues)
        return f"x={self.x}; k=({inner})"

    def __str__(self) -> str:
        return self.render()


@dataclass(frozen=True)
class CirclePointModN:
    """A point of R/nZ in its canonical range [0, n)."""

    modulus: int
    value: Coordinate

    def __post_init__(self) -> None:
        if self.modulus < 1:
            raise ValueError("modulus must be positive")
        if isinstance(self.value, int):
            object.__setattr__(self, "value", Fraction(self.value))
        if not 0 <= self.value < self.modulus:
            raise ValueError(f"value {self.value} outside [0, {self.modulus})")


def canonicalize(x: Coordinate, k: ProfiniteInt) -> SolenoidPoint:
    """Unique class representative: shift x into [0, 1), compensating in k."""
    if isinstance(x, Fraction):
        t = x.numerator // x.denominator
    else:
        t = math.floor(x)
    if t == 0:
        return SolenoidPoint(x, k)
    return SolenoidPoint(x - t, pf_add(k, embed_int(t, k.depth)))


def zero_point(depth: int = DEFAULT_DEPTH) -> SolenoidPoint:
    return SolenoidPoint(Fraction(0), embed_int(0, depth))


def sol_add(s: SolenoidPoint, t: SolenoidPoint) -> SolenoidPoint:
    return canonicalize(s.x + t.x, pf_add(s.k, t.k))


def sol_neg(s: SolenoidPoint) -> SolenoidPoint:
    return canonicalize(-s.x, pf_neg(s.k))


def sol_sub(s: SolenoidPoint, t: SolenoidPoint) -> SolenoidPoint:
    return sol_add(s, sol_neg(t))


def sigma(t: Coordinate, depth: int = DEFAULT_DEPTH) -> SolenoidPoint:
    """The dense one-parameter subgroup R -> solenoid."""
    if isinstance(t, int):
        t = Fraction(t)
    return canonicalize(t, embed_int(0, depth))


def project(s: SolenoidPoint, n: int) -> CirclePointModN:
    """Projection onto R/nZ; requires n | depth!."""
    return CirclePointModN(n, (s.x + s.k.residue(n)) % n)


def deck(pair: tuple[Coordinate, ProfiniteInt], t: int) -> tuple[Coordinate, ProfiniteInt]:
    """Deck transformation on covering coordinates: (x, k) -> (x + t, k - t)."""
    x, k = pair
    return (x + t, pf_add(k, embed_int(-t, k.depth)))


def sol_dist(s: SolenoidPoint, t: SolenoidPoint) -> Coordinate:
    """Translation-invariant metric: weighted arc distances of the projections.

    Sum over m = 1..M of 2^-m times the arc distance between the level-m!
    projections.  Zero exactly when the points agree at the stored depth.
    """
    depth = min(s.depth, t.depth)
    total: Coordinate = 0
    for m in range(1, depth + 1):
        n = factorial(m)
        d = (project(s, n).value - project(t, n).value) % n
        arc = min(d, n - d)
        if arc:
            total = total + arc * Fraction(1, 2**m)
    if isinstance(total, int):
        return Fraction(total)
    return total


_POINT_RE = re.compile(
    r"^\s*x\s*=\s*(?P<x>[^;]+);\s*k\s*=\s*\(\s*(?P<k>[-0-9,\s]*?)\s*\)\s*$"
)


def parse_point(text: str) -> SolenoidPoint:
    """Inverse of SolenoidPoint.render, e.g. "x=1/4; k=(0, 1, 1)"."""
    m = _POINT_RE.match(text)
    if not m:
        raise ValueError(f"cannot parse point literal: {text!r}")
    x = Fraction(m.group("x").strip())
    parts = [p.strip() for p in m.group("k").split(",") if p.strip()]
    k = ProfiniteInt(tuple(int(p) for p in parts))
    return SolenoidPoint(x, k)
