"""Exact arithmetic in a depth-M truncation of the profinite integers.

A tower of depth M stores the residues r_m = a mod m! for m = 1..M.  The
factorial moduli are cofinal in the divisibility order, so a depth-M tower
determines the class of a mod every n dividing M!.  All arithmetic is exact
(arbitrary-precision integers) and values are immutable.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from math import factorial

from .errors import DepthExceeded

DEFAULT_DEPTH = 8

_FACT = tuple(factorial(m) for m in range(33))


def _fact(m: int) -> int:
    return _FACT[m] if m < 33 else factorial(m)


@dataclass(frozen=True)
class ProfiniteInt:
    """Compatible residue tower (r_1, ..., r_M) with r_m the class mod m!."""

    residues: tuple[int, ...]

    def __post_init__(self) -> None:
        if not self.residues:
            raise ValueError("residue tower must have depth >= 1")
        object.__setattr__(self, "residues", tuple(int(r) for r in self.residues))
        prev = 0
        prev_mod = 1
        for m, r in enumerate(self.residues, start=1):
            mod = _fact(m)
            if not 0 <= r < mod:
                raise ValueError(f"residue {r} outside [0, {mod}) at level {m}")
            if r % prev_mod != prev:
                raise ValueError(f"incompatible residues at levels {m - 1}, {m}")
            prev, prev_mod = r, mod

    @property
    def depth(self) -> int:
        return len(self.residues)

    def truncate(self, depth: int) -> "ProfiniteInt":
        # No silent extension: a truncation does not determine deeper levels.
        if depth < 1 or depth > self.depth:
            raise DepthExceeded(f"cannot truncate depth {self.depth} to {depth}")
        if depth == self.depth:
            return self
        return ProfiniteInt(self.residues[:depth])

    def residue(self, n: int) -> int:
        """Class mod n for any modulus n dividing depth!."""
        if n < 1:
            raise ValueError("modulus must be positive")
        if _fact(self.depth) % n != 0:
            raise DepthExceeded(f"modulus {n} does not divide {self.depth}!")
        return self.residues[-1] % n

    def __add__(self, other: "ProfiniteInt") -> "ProfiniteInt":
        return pf_add(self, other)

    def __neg__(self) -> "ProfiniteInt":
        return pf_neg(self)

    def __sub__(self, other: "ProfiniteInt") -> "ProfiniteInt":
        return pf_add(self, pf_neg(other))

    def render(self) -> str:
        inner = ", ".join(str(r) for r in self.residues)
        return f"({inner}) @ depth {self.depth}"

    def __str__(self) -> str:
        return self.render()


def embed_int(t: int, depth: int = DEFAULT_DEPTH) -> ProfiniteInt:
    """Dense inclusion of the integers: t maps to its residues mod 1!, ..., M!."""
    if depth < 1:
        raise ValueError("depth must be >= 1")
    t = int(t)
    return ProfiniteInt(tuple(t % _fact(m) for m in range(1, depth + 1)))


def pf_add(a: ProfiniteInt, b: ProfiniteInt) -> ProfiniteInt:
    """Componentwise modular addition; mixed depths truncate to the smaller."""
    d = min(a.depth, b.depth)
    ra, rb = a.residues, b.residues
    return ProfiniteInt(
        tuple((ra[m] + rb[m]) % _fact(m + 1) for m in range(d))
    )


def pf_neg(a: ProfiniteInt) -> ProfiniteInt:
    return ProfiniteInt(
        tuple((-r) % _fact(m + 1) for m, r in enumerate(a.residues))
    )


def pf_sub(a: ProfiniteInt, b: ProfiniteInt) -> ProfiniteInt:
    return pf_add(a, pf_neg(b))


def residue(a: ProfiniteInt, n: int) -> int:
    return a.residue(n)


def pf_dist(a: ProfiniteInt, b: ProfiniteInt) -> Fraction:
    """Indicator metric sum_m 2^-m [r_m(a) != r_m(b)]; an ultrametric on towers."""
    d = min(a.depth, b.depth)
    total = Fraction(0)
    for m in range(1, d + 1):
        if a.residues[m - 1] != b.residues[m - 1]:
            total += Fraction(1, 2**m)
    return total


_TOWER_RE = re.compile(
    r"^\s*\(\s*(?P<body>[-0-9,\s]*?)\s*\)\s*@\s*depth\s+(?P<depth>\d+)\s*$"
)


def parse_profinite(text: str) -> ProfiniteInt:
    """Inverse of ProfiniteInt.render, e.g. "(0, 1, 5) @ depth 3"."""
    m = _TOWER_RE.match(text)
    if not m:
        raise ValueError(f"cannot parse residue tower: {text!r}")
    parts = [p.strip() for p in m.group("body").split(",") if p.strip()]
    residues = tuple(int(p) for p in parts)
    if len(residues) != int(m.group("depth")):
        raise ValueError("declared depth does not match residue count")
    return ProfiniteInt(residues)
