"""Induced homeomorphisms of the solenoid and their degree structure.

A degree-n induced map is stored as a base lift F0 of degree n plus an
integer offset (the integer-translation component).  Its lift acts on
covering coordinates by

    F_k(x) = F0(x + r(k)) - r(k) + offset,   r(k) = residue(k, n),

which is the equivariance-consistent reading of the induced-lift normal
form: it satisfies F_{k-t}(x + t) = F_k(x) + t exactly and covers the
circle map u -> F0(u) + offset (mod d) at every level d that the
displacement's minimal period divides.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .circlemaps import (
    AnalyticLift,
    CircleLift,
    PeriodicPL,
    PLLift,
    identity_lift,
    map_from_descriptor,
    minimal_period,
    rotation_lift,
)
from .errors import (
    AnalyticExactUnsupported,
    NotDivisorChain,
    NotHomeomorphism,
    NotInducedAtLevel,
    NotMultiple,
)
from .profinite import ProfiniteInt
from .solenoid import CirclePointModN, SolenoidPoint, canonicalize


@dataclass(frozen=True)
class InducedHomeo:
    """Degree-n induced homeomorphism: base lift plus integer offset."""

    base: CircleLift
    offset: int = 0

    def __post_init__(self) -> None:
        object.__setattr__(self, "offset", int(self.offset))

    @property
    def degree(self) -> int:
        return self.base.degree

    def leaf_lift(self) -> CircleLift:
        """The lift at the zero fiber: F0 + offset."""
        if isinstance(self.base, AnalyticLift):
            return AnalyticLift(
                self.base.alpha + self.offset, self.base.terms, self.base.degree
            )
        return self.base.translate(self.offset)

    def fiber_lift(self, k: ProfiniteInt) -> CircleLift:
        """The lift F_k at a given fiber coordinate."""
        r = k.residue(self.degree)
        if r == 0:
            return self.leaf_lift()
        if isinstance(self.base, AnalyticLift):
            raise AnalyticExactUnsupported("fiber lifts need a PL base")
        return self.base.shift_input(r).translate(self.offset)

    def to_descriptor(self) -> dict:
        return {
            "degree": self.degree,
            "offset": self.offset,
            "lift": self.base.to_descriptor(),
        }

    def __eq__(self, other) -> bool:
        if not isinstance(other, InducedHomeo):
            return NotImplemented
        return self.offset == other.offset and self.base == other.base

    def __hash__(self):
        return hash((self.offset, self.base))


def induce(base: CircleLift, offset: int = 0) -> InducedHomeo:
    return InducedHomeo(base, offset)


def identity_homeo(degree: int = 1) -> InducedHomeo:
    return InducedHomeo(identity_lift(degree), 0)


def translation_homeo(m: int, degree: int = 1) -> InducedHomeo:
    """Translation by sigma(m), an element of the integer-translation kernel."""
    return InducedHomeo(identity_lift(degree), m)


def cover_eval(f: InducedHomeo, x, k: ProfiniteInt):
    """F_k(x) on covering coordinates."""
    n = f.degree
    r = k.residue(n)
    return f.base.eval(x + r) - r + f.offset


def apply(f: InducedHomeo, s: SolenoidPoint) -> SolenoidPoint:
    """Apply the homeomorphism: act leafwise, fiber unchanged, recanonicalize."""
    n = f.degree
    r = s.k.residue(n)
    return canonicalize(f.base.eval(s.x + r) - r + f.offset, s.k)


def apply_iter(f: InducedHomeo, s: SolenoidPoint, q: int) -> SolenoidPoint:
    for _ in range(q):
        s = apply(f, s)
    return s


def displacement_at(f: InducedHomeo, k: ProfiniteInt) -> PeriodicPL:
    """The displacement at fiber k: x -> delta0(x + r(k)) + offset."""
    if not isinstance(f.base, PLLift):
        raise AnalyticExactUnsupported("exact displacement needs a PL base")
    delta0 = f.base.displacement()
    r = k.residue(f.degree)
    out = delta0.translate(r) if r else delta0
    return out.add_const(f.offset) if f.offset else out


def leaf_displacement(f: InducedHomeo) -> PeriodicPL:
    """Displacement at the zero fiber (any depth): delta0 + offset."""
    if not isinstance(f.base, PLLift):
        raise AnalyticExactUnsupported("exact displacement needs a PL base")
    delta0 = f.base.displacement()
    return delta0.add_const(f.offset) if f.offset else delta0


def embed_degree(f: InducedHomeo, m: int) -> InducedHomeo:
    """Direct-limit inclusion: reinterpret a degree-n map at degree m, n | m."""
    n = f.degree
    if m % n != 0:
        raise NotMultiple(f"{m} is not a multiple of {n}")
    if m == n:
        return f
    if not isinstance(f.base, PLLift):
        raise AnalyticExactUnsupported("degree embedding needs a PL base")
    pts = []
    for j in range(m // n):
        off = j * n
        for x, y in zip(f.base.xs, f.base.ys):
            pts.append((x + off, y + off))
    return InducedHomeo(PLLift(m, pts), f.offset)


def circle_map(f: InducedHomeo, d: int) -> "CircleMapModN":
    """The circle homeomorphism of R/dZ covered by f through the projection.

    Exists exactly when the displacement's minimal period divides d (for
    d = degree this is automatic).  Raises NotInducedAtLevel otherwise: a
    degree-n map with genuinely n-periodic displacement does not descend to
    coarser levels.
    """
    if d < 1:
        raise ValueError("level must be a positive integer")
    if not isinstance(f.base, PLLift):
        raise AnalyticExactUnsupported("circle maps are exact-PL only")
    delta = f.base.displacement()
    T = minimal_period(delta)
    if d % T != 0:
        raise NotInducedAtLevel(f"no covered map at level {d}; period {T}")
    xs = sorted({x % T for x, _ in delta.canonical_breakpoints()} | {Fraction(0)})
    pts = [(x, x + delta.eval(x) + f.offset) for x in xs]
    return CircleMapModN(d, PLLift(d, _replicate(pts, T, d)))


def _replicate(pts, span, d):
    if span == d:
        return pts
    out = []
    for j in range(d // span):
        off = j * span
        out.extend((x + off, y + off) for x, y in pts)
    return out


@dataclass(frozen=True)
class CircleMapModN:
    """An orientation-preserving circle homeomorphism of R/nZ with PL lift."""

    modulus: int
    lift: PLLift

    def __call__(self, u):
        val = u.value if isinstance(u, CirclePointModN) else u
        return CirclePointModN(self.modulus, self.lift.eval(val) % self.modulus)


def _normalize(base: PLLift, offset: int) -> InducedHomeo:
    """Move the integer part of base(0) into the offset component."""
    j = math.floor(base.eval(Fraction(0)))
    if j:
        base = base.translate(-j)
    return InducedHomeo(base, offset + j)


def compose_induced(f: InducedHomeo, g: InducedHomeo) -> InducedHomeo:
    """The composite f after g, at degree lcm(deg f, deg g)."""
    L = math.lcm(f.degree, g.degree)
    f2 = embed_degree(f, L)
    g2 = embed_degree(g, L)
    if not isinstance(f2.base, PLLift) or not isinstance(g2.base, PLLift):
        raise AnalyticExactUnsupported("exact composition needs PL bases")
    inner = g2.base.translate(g2.offset) if g2.offset else g2.base
    return _normalize(f2.base.compose(inner), f2.offset)


def invert_induced(f: InducedHomeo) -> InducedHomeo:
    if not isinstance(f.base, PLLift):
        raise AnalyticExactUnsupported("exact inversion needs a PL base")
    inv = f.base.inverse()
    if f.offset:
        inv = inv.compose(rotation_lift(-f.offset, f.degree))
    return _normalize(inv, 0)


def homeo_from_descriptor(d: dict) -> InducedHomeo:
    lift = map_from_descriptor(d["lift"])
    if "degree" in d and d["degree"] != lift.degree:
        raise ValueError("descriptor degree disagrees with lift degree")
    return InducedHomeo(lift, int(d.get("offset", 0)))


@dataclass(frozen=True)
class LimitPeriodicHomeo:
    """Certified finite tower of periodic displacement summands.

    Represents h = id + sum_j delta_j with periods T_1 | T_2 | ... | T_m,
    plus a declared bound on whatever infinite tail the finite data
    truncates.  Every downstream check consumes only finite levels, so
    (finite data + bound) is the whole interface.
    """

    tower: tuple[int, ...]
    summands: tuple[PeriodicPL, ...]
    tail_bound: Fraction = Fraction(0)

    @property
    def levels(self) -> int:
        return len(self.tower)

    def eval(self, x):
        return x + self.displacement_eval(x)

    def displacement_eval(self, x):
        return sum(d.eval(x) for d in self.summands)

    def tail_from(self, level: int) -> Fraction:
        """Certified bound B_j on sup |h - truncation at level j|."""
        if not 1 <= level <= self.levels:
            raise ValueError(f"level must be in 1..{self.levels}")
        return sum(
            (d.sup_norm() for d in self.summands[level:]), start=self.tail_bound
        )

    def to_descriptor(self) -> dict:
        return {
            "lp": {
                "tower": list(self.tower),
                "summands": [
                    {
                        "period": str(d.period),
                        "breakpoints": [[str(x), str(v)] for x, v in zip(d.xs, d.vs)],
                    }
                    for d in self.summands
                ],
                "tail_bound": str(self.tail_bound),
            }
        }


def lp_build(tower, summands, tail_bound=0) -> LimitPeriodicHomeo:
    """Validate and assemble a certified limit-periodic homeomorphism.

    The tower must be a divisor chain; summand j must have stored period
    T_j; every partial sum id + sum_{i<=j} delta_i must be strictly
    increasing (each truncation is itself a homeomorphism).
    """
    tower = tuple(int(T) for T in tower)
    summands = tuple(summands)
    if len(tower) != len(summands) or not tower:
        raise ValueError("tower and summands must be nonempty and equal length")
    for T in tower:
        if T < 1:
            raise NotDivisorChain("tower periods must be positive integers")
    for a, b in zip(tower, tower[1:]):
        if b % a != 0:
            raise NotDivisorChain(f"{a} does not divide {b}")
    for T, d in zip(tower, summands):
        if d.period != T:
            raise ValueError(f"summand period {d.period} != tower period {T}")
    partial = None
    for d in summands:
        partial = d if partial is None else partial.add(d)
        if partial.min_slope() <= -1:
            raise NotHomeomorphism(
                "partial displacement sum has slope <= -1; id + sum not increasing"
            )
    return LimitPeriodicHomeo(tower, summands, Fraction(tail_bound))


def lp_truncate(h: LimitPeriodicHomeo, level: int) -> tuple[InducedHomeo, Fraction]:
    """Induced homeomorphism of degree T_level with the first `level` summands,
    together with the certified sup bound on the discarded tail."""
    if not 1 <= level <= h.levels:
        raise ValueError(f"level must be in 1..{h.levels}")
    S = h.summands[0]
    for d in h.summands[1:level]:
        S = S.add(d)
    T = h.tower[level - 1]
    reps = int(Fraction(T) / S.period)
    grid = {x + j * S.period for j in range(reps) for x in S.xs}
    lift = PLLift(T, [(x, x + S.eval(x)) for x in sorted(grid)])
    return InducedHomeo(lift, 0), h.tail_from(level)


def lp_from_descriptor(d: dict) -> LimitPeriodicHomeo:
    body = d["lp"]
    summands = [
        PeriodicPL(s["period"], [(x, v) for x, v in s["breakpoints"]])
        for s in body["summands"]
    ]
    return lp_build(body["tower"], summands, Fraction(body.get("tail_bound", 0)))
