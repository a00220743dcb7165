"""Translation-orbit closures of displacement functions and semi-conjugacy.

For a periodic displacement with minimal period T the map t -> delta^t is a
homeomorphism R/TZ -> hull, so hull points are stored parametrically as a
residue t mod T; nothing is approximated.  Limit-periodic displacements are
handled only through their certified finite truncations.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

from .circlemaps import PeriodicPL, PLLift, minimal_period
from .errors import MixedHulls, NotIncreasing, NotMonotone
from .induced import (
    InducedHomeo,
    LimitPeriodicHomeo,
    apply,
    leaf_displacement,
    lp_truncate,
)
from .solenoid import SolenoidPoint, project


@dataclass(frozen=True)
class Hull:
    """The orbit closure of a periodic displacement, as the circle R/TZ."""

    delta: PeriodicPL
    period: Fraction

    def translate(self, t) -> "HullPoint":
        return HullPoint(self, Fraction(t) % self.period)

    @property
    def neutral(self) -> "HullPoint":
        return HullPoint(self, Fraction(0))


@dataclass(frozen=True)
class HullPoint:
    """The translate delta^t, named by its parameter t in [0, T)."""

    hull: Hull
    param: Fraction

    def eval(self, x):
        return self.hull.delta.eval(x + self.param)


def hull_of(delta: PeriodicPL, candidates=None) -> Hull:
    """Hull of a periodic PL displacement at its exact minimal period."""
    T = Fraction(minimal_period(delta, candidates))
    return Hull(delta, T)


def hull_translate(hull: Hull, t) -> HullPoint:
    return hull.translate(t)


def hull_point_eval(hp: HullPoint, x):
    return hp.eval(x)


def _same_hull(a: HullPoint, b: HullPoint) -> Hull:
    ha, hb = a.hull, b.hull
    if ha.period != hb.period or ha.delta != hb.delta:
        raise MixedHulls("hull points belong to different hulls")
    return ha


def hull_mul(a: HullPoint, b: HullPoint) -> HullPoint:
    """The * product; parameters add mod T."""
    h = _same_hull(a, b)
    return HullPoint(h, (a.param + b.param) % h.period)


def hull_inv(a: HullPoint) -> HullPoint:
    return HullPoint(a.hull, (-a.param) % a.hull.period)


def hull_dist(a: HullPoint, b: HullPoint) -> Fraction:
    """Arc distance of the parameters on R/TZ."""
    h = _same_hull(a, b)
    d = (a.param - b.param) % h.period
    return min(d, h.period - d)


def hull_func_dist(a: HullPoint, b: HullPoint) -> Fraction:
    """Exact sup distance of the translates as functions (validation view)."""
    h = _same_hull(a, b)
    return h.delta.translate(a.param).sup_diff(h.delta.translate(b.param))


def K_map(s: SolenoidPoint, hull: Hull) -> HullPoint:
    """The homomorphism solenoid -> hull with K(sigma(t)) = delta^t.

    For integer minimal period T it factors through the level-T projection,
    so the parameter is project(s, T).
    """
    if hull.period.denominator != 1:
        raise ValueError("K_map needs an integer hull period")
    cp = project(s, hull.period.numerator)
    return HullPoint(hull, Fraction(cp.value))


@dataclass(frozen=True)
class QuotientMap:
    """The quotient dynamics gamma -> gamma * delta^{gamma(0)} on the hull.

    In parameters this is the circle map t -> t + delta(t) mod T, realized
    by a strictly increasing degree-T PL lift.
    """

    period: Fraction
    lift: PLLift

    def param_apply(self, t) -> Fraction:
        return Fraction(self.lift.eval(t)) % self.period


def quotient_map(delta: PeriodicPL, candidates=None) -> QuotientMap:
    T = Fraction(minimal_period(delta, candidates))
    if T.denominator != 1:
        raise ValueError("quotient map needs an integer minimal period")
    xs = sorted({x % T for x, _ in delta.canonical_breakpoints()} | {Fraction(0)})
    try:
        lift = PLLift(T.numerator, [(x, x + delta.eval(x)) for x in xs])
    except NotMonotone as exc:
        raise NotIncreasing(f"id + delta is not strictly increasing: {exc}") from exc
    return QuotientMap(T, lift)


def g_apply(gm: QuotientMap, hp: HullPoint) -> HullPoint:
    if gm.period != hp.hull.period:
        raise MixedHulls("quotient map and hull point have different periods")
    return HullPoint(hp.hull, gm.param_apply(hp.param))


def isotopy_eval(delta: PeriodicPL, c, hp: HullPoint) -> HullPoint:
    """The isotopy G(c, gamma) = gamma * delta^{c gamma(0)} in parameters.

    c = 0 is the identity, c = 1 is the quotient map g.
    """
    if not 0 <= c <= 1:
        raise ValueError("isotopy parameter must lie in [0, 1]")
    c = Fraction(c)
    T = hp.hull.period
    t = hp.param
    return HullPoint(hp.hull, (t + c * delta.eval(t)) % T)


@dataclass(frozen=True)
class SemiconjugacyReport:
    max_error: Fraction
    exact: bool
    samples: int
    period: Fraction

    def to_report(self) -> dict:
        return {
            "max_error": str(self.max_error),
            "exact": self.exact,
            "samples": self.samples,
            "period": str(self.period),
        }


def check_semiconjugacy(
    f: InducedHomeo, samples, quotient: Optional[QuotientMap] = None
) -> SemiconjugacyReport:
    """Verify K(f(s)) = g(K(s)) over the sample points.

    Both sides run in exact rational arithmetic, through genuinely different
    code paths: the left side applies the solenoid map and projects, the
    right side uses the hull parameter lift.  A custom `quotient` may be
    injected to confirm the check detects corrupted dynamics.
    """
    delta = leaf_displacement(f)
    hull = hull_of(delta)
    gm = quotient if quotient is not None else quotient_map(delta)
    worst = Fraction(0)
    count = 0
    for s in samples:
        count += 1
        lhs = K_map(apply(f, s), hull)
        rhs = g_apply(gm, K_map(s, hull))
        err = hull_dist(lhs, rhs)
        if err > worst:
            worst = err
    return SemiconjugacyReport(worst, worst == 0, count, hull.period)


@dataclass(frozen=True)
class Periodic:
    period: int


@dataclass(frozen=True)
class LimitPeriodicCertified:
    tower: tuple[int, ...]
    bounds: tuple[Fraction, ...]


@dataclass(frozen=True)
class Unknown:
    reason: str = ""


PeriodicityVerdict = Union[Periodic, LimitPeriodicCertified, Unknown]


def periodicity_classify(
    source, candidates=None, tol=Fraction(1, 10**9)
) -> PeriodicityVerdict:
    """Classify a displacement source as periodic / certified limit periodic.

    Exact PL sources get their exact minimal period; limit-periodic objects
    echo their certificate; raw (x, value) samples are matched against the
    candidate periods within `tol` and report Unknown when nothing fits.
    """
    if isinstance(source, LimitPeriodicHomeo):
        bounds = tuple(source.tail_from(j) for j in range(1, source.levels + 1))
        return LimitPeriodicCertified(source.tower, bounds)
    if isinstance(source, InducedHomeo):
        source = leaf_displacement(source)
    if isinstance(source, PeriodicPL):
        return Periodic(minimal_period(source, candidates))
    if candidates is None:
        return Unknown("raw samples need explicit candidate periods")
    pts = [(Fraction(x), v) for x, v in source]
    for T in sorted(candidates, key=Fraction):
        groups: dict[Fraction, list] = {}
        for x, v in pts:
            groups.setdefault(Fraction(x) % T, []).append(v)
        if all(max(vs) - min(vs) <= tol for vs in groups.values()):
            return Periodic(T)
    return Unknown("no candidate period fits the samples")


def lp_hull_level(h: LimitPeriodicHomeo, level: int) -> tuple[Hull, Fraction]:
    """Level-j circle hull of a limit-periodic family with its error bound."""
    trunc, bound = lp_truncate(h, level)
    delta = leaf_displacement(trunc)
    return hull_of(delta), bound
