"""Rotation numbers with certified enclosures and fiber-periodic dynamics.

The enclosure is the classical one for degree-1 monotone lifts: the
translation number tau satisfies |F^q(x) - x - q tau| < 1, so
[(F^q(x) - x - 1)/q, (F^q(x) - x + 1)/q] always contains it.  Exact
rational certification goes through materialized PL powers; analytic maps
get float enclosures only.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Union

from .circlemaps import BREAKPOINT_CAP, CircleLift, PLLift
from .errors import (
    AnalyticExactUnsupported,
    BreakpointCapExceeded,
    DegreeMismatch,
    NoSuchOrbit,
)
from .induced import InducedHomeo, apply, apply_iter
from .profinite import DEFAULT_DEPTH, embed_int
from .solenoid import SolenoidPoint, canonicalize, sigma, sol_add, sol_dist


@dataclass(frozen=True)
class RotationEnclosure:
    """Certified rational interval [lo, hi] containing the translation number.

    When `exact` is present it is a reduced rational inside the interval and
    `witness` satisfies F^q(witness) = witness + p exactly.
    """

    lo: Fraction
    hi: Fraction
    iters: int
    exact: Optional[Fraction] = None
    witness: Optional[Fraction] = None

    def __post_init__(self) -> None:
        if self.lo > self.hi:
            raise ValueError("enclosure has lo > hi")
        if self.exact is not None and not self.lo <= self.exact <= self.hi:
            raise ValueError("exact value outside enclosure")

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    def shift(self, c: int) -> "RotationEnclosure":
        return RotationEnclosure(
            self.lo + c,
            self.hi + c,
            self.iters,
            None if self.exact is None else self.exact + c,
            self.witness,
        )

    def to_report(self) -> dict:
        return {
            "lo": str(self.lo),
            "hi": str(self.hi),
            "exact": None if self.exact is None else str(self.exact),
            "witness": None if self.witness is None else str(self.witness),
        }


def translation_enclosure(F: CircleLift, q: int, x0=0) -> RotationEnclosure:
    """Finite-q enclosure of tau(F) for a degree-1 lift; width exactly 2/q."""
    if F.degree != 1:
        raise DegreeMismatch("translation_enclosure needs a degree-1 lift")
    if q < 1:
        raise ValueError("iteration count must be >= 1")
    v = F.iterate_eval(x0, q)
    d = Fraction(v - x0)
    return RotationEnclosure((d - 1) / q, (d + 1) / q, q)


def enclosure_sequence(F: CircleLift, q_max: int, x0=0):
    """Yield the enclosures for q = 1..q_max from a single orbit pass."""
    if F.degree != 1:
        raise DegreeMismatch("enclosure_sequence needs a degree-1 lift")
    x = x0
    for q in range(1, q_max + 1):
        x = F.eval(x)
        d = Fraction(x - x0)
        yield RotationEnclosure((d - 1) / q, (d + 1) / q, q)


def simplest_rational_in(lo: Fraction, hi: Fraction) -> Fraction:
    """The rational with smallest denominator in [lo, hi] (Stern-Brocot walk)."""
    lo, hi = Fraction(lo), Fraction(hi)
    if lo > hi:
        raise ValueError("empty interval")
    fl = math.ceil(lo)
    if fl <= hi:
        return Fraction(fl)
    base = math.floor(lo)
    inner = simplest_rational_in(1 / (hi - base), 1 / (lo - base))
    return base + 1 / inner


def _leftmost_return(G: PLLift, p: int) -> Optional[Fraction]:
    """Leftmost zero of G(x) - x - p in [0, degree) for a materialized PL G."""
    n = G.degree
    G = G.with_breakpoint(0)
    vals = [y - x - p for x, y in zip(G.xs, G.ys)]
    xs = list(G.xs) + [G.xs[0] + n]
    vals.append(vals[0])
    for i in range(len(xs) - 1):
        if vals[i] == 0:
            return xs[i]
        if vals[i] * vals[i + 1] < 0:
            return xs[i] - vals[i] * (xs[i + 1] - xs[i]) / (vals[i + 1] - vals[i])
    return None


def certify_rational(
    F: PLLift, p: int, q: int, cap: int = BREAKPOINT_CAP
) -> Optional[Fraction]:
    """Leftmost exact solution of F^q(x) = x + p in [0, degree), or None.

    Materializes F^q as PL and scans g(x) = F^q(x) - x - p over one period;
    zeros at breakpoints or inside linear pieces are solved in closed form.
    """
    if not isinstance(F, PLLift):
        raise AnalyticExactUnsupported("certification needs a PL lift")
    if q < 1:
        raise ValueError("q must be >= 1")
    if math.gcd(p, q) != 1:
        raise ValueError(f"{p}/{q} is not reduced")
    return _leftmost_return(F.power(q, cap), p)


def rational_certificate(
    F: PLLift, lo: Fraction, hi: Fraction, max_den: int, cap: int = BREAKPOINT_CAP
) -> Optional[tuple[Fraction, Fraction]]:
    """Search [lo, hi] for a certified rational rotation number.

    Tries every reduced p/q in the interval with q <= max_den, by increasing
    denominator, reusing the materialized powers F^q incrementally.  Returns
    (p/q, witness) for the first exact return orbit found, or None, which
    means: no rational with denominator <= max_den certifies.
    """
    if not isinstance(F, PLLift):
        raise AnalyticExactUnsupported("certification needs a PL lift")
    G = None
    for den in range(1, max_den + 1):
        G = F if G is None else F.compose(G)
        if len(G.xs) > cap:
            raise BreakpointCapExceeded(f"more than {cap} breakpoints")
        for num in range(math.ceil(lo * den), math.floor(hi * den) + 1):
            if math.gcd(num, den) != 1:
                continue
            wit = _leftmost_return(G, num)
            if wit is not None:
                return Fraction(num, den), wit
    return None


def rotation_report(
    F: CircleLift, q: int, x0=0, max_cert_den: Optional[int] = None
) -> RotationEnclosure:
    """Enclosure plus, for PL lifts, an exact-certification sweep.

    Certification tries candidate denominators up to max_cert_den (default
    min(q, 1000); the sweep cost grows quadratically in the bound).  A
    missing `exact` field therefore reads: no rational with denominator up
    to the bound has an exact return orbit.
    """
    enc = translation_enclosure(F, q, x0)
    if not isinstance(F, PLLift):
        return enc
    if max_cert_den is None:
        max_cert_den = min(q, 1000)
    found = rational_certificate(F, enc.lo, enc.hi, max_cert_den)
    if found is None:
        return enc
    cand, wit = found
    assert F.iterate_eval(wit, cand.denominator) == wit + cand.numerator
    return RotationEnclosure(enc.lo, enc.hi, q, cand, wit)


def rho_of_induced(f: InducedHomeo, q: int, x0=0) -> RotationEnclosure:
    """Leafwise translation-number enclosure of an induced map.

    Uses the zero-fiber lift F0 + offset; for degree n the classical bound
    loosens to |F^q(x) - x - q tau| < n, so the width is 2n/q.
    """
    if q < 1:
        raise ValueError("iteration count must be >= 1")
    L = f.leaf_lift()
    n = f.degree
    v = L.iterate_eval(x0, q)
    d = Fraction(v - x0)
    return RotationEnclosure((d - n) / q, (d + n) / q, q)


@dataclass(frozen=True)
class FiberPeriodic:
    """The exact return identity f^q(s) = s + sigma(p) holds at the point."""

    p: int
    q: int
    point: SolenoidPoint


@dataclass(frozen=True)
class AsymptoticToFiber:
    """The orbit approaches the p/q-fiber through `target` monotonically."""

    p: int
    q: int
    target: SolenoidPoint
    distance: Fraction
    iterations: int
    trace: tuple = field(default=(), compare=False)


@dataclass(frozen=True)
class Inconclusive:
    reason: str
    trace: tuple = field(default=(), compare=False)


OrbitClassification = Union[FiberPeriodic, AsymptoticToFiber, Inconclusive]


def find_fiber_periodic(
    f: InducedHomeo, p: int, q: int, depth: int = DEFAULT_DEPTH
) -> SolenoidPoint:
    """A point s with f^q(s) = s + sigma(p), built over the zero fiber.

    Solves the leafwise return equation exactly on one period; raises
    NoSuchOrbit when no exact return orbit exists (certification fails).
    """
    L = f.leaf_lift()
    if not isinstance(L, PLLift):
        raise AnalyticExactUnsupported("fiber-periodic search needs a PL lift")
    wit = certify_rational(L, p, q)
    if wit is None:
        raise NoSuchOrbit(f"no orbit with return p/q = {p}/{q}")
    s = canonicalize(wit, embed_int(0, depth))
    assert apply_iter(f, s, q) == sol_add(s, sigma(p, depth))
    return s


def _nearest_zero(G: PLLift, p: int, x0, upward: bool):
    """Nearest zero of g(x) = G(x) - x - p strictly beyond x0 in the given
    direction, within one period; None if g has constant sign.

    The monotone return orbit converges exactly to this point, so segment
    scanning keeps the candidate nearest to x0 (flat zero segments take the
    near endpoint)."""
    n = G.degree
    lo, hi = (x0, x0 + n) if upward else (x0 - n, x0)
    pts = {lo, hi}
    for x in G.xs:
        j0 = math.floor((lo - x) / n)
        for j in (j0, j0 + 1, j0 + 2):
            z = x + j * n
            if lo <= z <= hi:
                pts.add(z)
    pts = sorted(pts)
    vals = [G.eval(z) - z - p for z in pts]
    indices = range(len(pts) - 1)
    if not upward:
        indices = reversed(indices)
    for i in indices:
        a, b, va, vb = pts[i], pts[i + 1], vals[i], vals[i + 1]
        if va * vb > 0:
            continue
        if upward:
            if va == 0:
                z = a
            elif vb == 0:
                z = b
            else:
                z = a - va * (b - a) / (vb - va)
        else:
            if vb == 0:
                z = b
            elif va == 0:
                z = a
            else:
                z = a - va * (b - a) / (vb - va)
        if (upward and z > x0) or (not upward and z < x0):
            return z
    return None


def fiber_target(f: InducedHomeo, s: SolenoidPoint, p: int, q: int) -> SolenoidPoint:
    """The p/q-fiber periodic point the orbit of s converges to.

    For a fiber-periodic s this is s itself; otherwise it is the point over
    the nearest fixed point of the leafwise return map in the direction of
    motion.  Raises NoSuchOrbit when the return map has no fixed point.
    """
    n = f.degree
    if apply_iter(f, s, q) == sol_add(s, sigma(p, s.depth)):
        return s
    if not isinstance(f.base, PLLift):
        raise AnalyticExactUnsupported("fiber targets need a PL base")
    if n != 1 and p % n != 0:
        raise NoSuchOrbit(f"return map untracked for degree {n} with p = {p}")
    G = f.fiber_lift(s.k).power(q)
    g0 = G.eval(s.x) - s.x - p
    x_inf = _nearest_zero(G, p, s.x, upward=g0 > 0)
    if x_inf is None:
        raise NoSuchOrbit("return map has no fixed point; rho(f) != p/q")
    return canonicalize(x_inf, s.k)


def classify_orbit(
    f: InducedHomeo,
    s: SolenoidPoint,
    p: int,
    q: int,
    max_iters: int = 10_000,
    tol=Fraction(1, 10**6),
    collect_trace: bool = False,
) -> OrbitClassification:
    """Decide whether s is p/q-fiber periodic or asymptotic to such a point.

    Caller certifies rho(f) = p/q beforehand.  The method is the monotone
    leafwise return map h = F_k^q - p: its orbit converges one-sidedly to a
    fixed point, and the fiber-periodic point over that limit is the target.
    Verdicts are conservative; a budget or precondition failure reports
    Inconclusive, never a wrong verdict.
    """
    if q < 1:
        raise ValueError("q must be >= 1")
    n = f.degree
    if apply_iter(f, s, q) == sol_add(s, sigma(p, s.depth)):
        return FiberPeriodic(p, q, s)
    if not isinstance(f.base, PLLift):
        return Inconclusive("asymptotics need a PL lift")
    if n != 1 and p % n != 0:
        # h^m tracks f^{qm} only when integer translation by p commutes
        # with the fiber lift, i.e. n | p (always true at degree 1).
        return Inconclusive(f"return map untracked for degree {n} with p = {p}")
    Fk = f.fiber_lift(s.k)
    G = Fk.power(q)
    g0 = G.eval(s.x) - s.x - p
    x_inf = _nearest_zero(G, p, s.x, upward=g0 > 0)
    if x_inf is None:
        return Inconclusive("return map has no fixed point; rho(f) != p/q")
    target = canonicalize(x_inf, s.k)
    x = s.x
    trace = []
    steps = max_iters // q
    for m in range(1, steps + 1):
        x = G.eval(x) - p
        d = sol_dist(canonicalize(x, s.k), target)
        if collect_trace:
            trace.append((m * q, d))
        if d < tol:
            return AsymptoticToFiber(p, q, target, d, m * q, tuple(trace))
    return Inconclusive(
        f"budget of {max_iters} iterations exhausted", tuple(trace)
    )
