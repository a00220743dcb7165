"""Monotone lifts of circle homeomorphisms of R/nZ.

Two representations are provided.  Piecewise-linear lifts carry exact
rational breakpoint data and support exact composition, inversion and
iteration; every certification claim in this package is made through them.
The analytic family is binary64-only and exists for exploration.
"""
from __future__ import annotations

import bisect
import math
from fractions import Fraction

from .errors import (
    AnalyticExactUnsupported,
    BreakpointCapExceeded,
    DegreeMismatch,
    EmptyBreakpoints,
    NotMonotone,
)

BREAKPOINT_CAP = 10**6


def floor_div(x, n):
    """floor(x / n) without building intermediate Fractions; exact for exact x."""
    if isinstance(x, Fraction):
        if isinstance(n, Fraction):
            return (x.numerator * n.denominator) // (x.denominator * n.numerator)
        return x.numerator // (x.denominator * n)
    if isinstance(x, int):
        return x // n
    return math.floor(x / n)


def as_rational(v) -> Fraction:
    """Coerce exact input (int, Fraction, 'p/q' string) to Fraction.

    Floats are rejected: the PL variant is the exact one and silently
    accepting binary64 would poison certifications.
    """
    if isinstance(v, float):
        raise TypeError("exact PL data requires int/Fraction/str, not float")
    return Fraction(v)


class PLLift:
    """Strictly increasing piecewise-linear map with F(x + n) = F(x) + n."""

    __slots__ = ("degree", "xs", "ys", "slopes")

    def __init__(self, degree: int, breakpoints) -> None:
        degree = int(degree)
        if degree < 1:
            raise ValueError("degree must be a positive integer")
        pts = sorted((as_rational(x), as_rational(y)) for x, y in breakpoints)
        if not pts:
            raise EmptyBreakpoints("a PL lift needs at least one breakpoint")
        xs = tuple(p[0] for p in pts)
        ys = tuple(p[1] for p in pts)
        if xs[0] < 0 or xs[-1] >= degree:
            raise ValueError(f"breakpoint abscissae must lie in [0, {degree})")
        for i in range(len(xs) - 1):
            if xs[i] == xs[i + 1]:
                raise NotMonotone(f"duplicate breakpoint at x={xs[i]}")
            if ys[i] >= ys[i + 1]:
                raise NotMonotone(f"values must increase: y({xs[i]}) >= y({xs[i + 1]})")
        if ys[-1] >= ys[0] + degree:
            raise NotMonotone("wrap-around violates strict monotonicity")
        slopes = []
        for i in range(len(xs) - 1):
            slopes.append((ys[i + 1] - ys[i]) / (xs[i + 1] - xs[i]))
        slopes.append((ys[0] + degree - ys[-1]) / (xs[0] + degree - xs[-1]))
        self.degree = degree
        self.xs = xs
        self.ys = ys
        self.slopes = tuple(slopes)

    def eval(self, x):
        n = self.degree
        j = floor_div(x, n)
        x0 = x - j * n if j else x
        i = bisect.bisect_right(self.xs, x0) - 1
        if i < 0:
            x1 = self.xs[-1] - n
            y1 = self.ys[-1] - n
            s = self.slopes[-1]
        else:
            x1 = self.xs[i]
            y1 = self.ys[i]
            s = self.slopes[i]
        return y1 + (x0 - x1) * s + j * n

    __call__ = eval

    def iterate_eval(self, x, q: int):
        """Evaluate F^q(x) by repeated application; q < 0 uses the inverse."""
        if q < 0:
            return self.inverse().iterate_eval(x, -q)
        for _ in range(q):
            x = self.eval(x)
        return x

    def compose(self, other: "PLLift") -> "PLLift":
        """Exact composition self(other(x)); breakpoint sets merge."""
        if not isinstance(other, PLLift):
            raise AnalyticExactUnsupported("exact composition needs PL lifts")
        if self.degree != other.degree:
            raise DegreeMismatch(f"degree {self.degree} vs {other.degree}")
        n = self.degree
        xs = set(other.xs)
        inv = other.inverse()
        for u in self.xs:
            z = inv.eval(u)
            xs.add(z - floor_div(z, n) * n)
        return PLLift(n, [(x, self.eval(other.eval(x))) for x in sorted(xs)])

    def inverse(self) -> "PLLift":
        n = self.degree
        pts = []
        for x, y in zip(self.xs, self.ys):
            j = floor_div(y, n)
            pts.append((y - j * n, x - j * n))
        return PLLift(n, pts)

    def power(self, q: int, cap: int = BREAKPOINT_CAP) -> "PLLift":
        """Materialize F^q as a PL lift (exponentiation by squaring)."""
        if q < 0:
            return self.inverse().power(-q, cap)
        result = identity_lift(self.degree)
        base = self
        while q:
            if q & 1:
                result = result.compose(base)
                if len(result.xs) > cap:
                    raise BreakpointCapExceeded(f"more than {cap} breakpoints")
            q >>= 1
            if q:
                base = base.compose(base)
                if len(base.xs) > cap:
                    raise BreakpointCapExceeded(f"more than {cap} breakpoints")
        return result

    def translate(self, c) -> "PLLift":
        """The lift F + c."""
        c = as_rational(c)
        return PLLift(self.degree, [(x, y + c) for x, y in zip(self.xs, self.ys)])

    def shift_input(self, r) -> "PLLift":
        """Conjugation by translation: x -> F(x + r) - r."""
        r = as_rational(r)
        n = self.degree
        pts = []
        for x, y in zip(self.xs, self.ys):
            z = x - r
            j = floor_div(z, n)
            pts.append((z - j * n, y - r - j * n))
        return PLLift(n, pts)

    def with_breakpoint(self, x) -> "PLLift":
        x = as_rational(x) % self.degree
        if x in self.xs:
            return self
        pts = list(zip(self.xs, self.ys))
        pts.append((x, self.eval(x)))
        return PLLift(self.degree, pts)

    def canonical_breakpoints(self) -> tuple[tuple[Fraction, Fraction], ...]:
        """Breakpoints where the slope actually changes; rotations anchor at 0.

        Two PL lifts describe the same function iff their degrees and
        canonical breakpoint tuples agree.
        """
        m = len(self.xs)
        keep = []
        for i in range(m):
            if self.slopes[i - 1] != self.slopes[i]:
                keep.append((self.xs[i], self.ys[i]))
        if not keep:
            z = Fraction(0)
            return ((z, self.eval(z)),)
        return tuple(keep)

    def __eq__(self, other) -> bool:
        if not isinstance(other, PLLift):
            return NotImplemented
        return (
            self.degree == other.degree
            and self.canonical_breakpoints() == other.canonical_breakpoints()
        )

    def __hash__(self):
        return hash((self.degree, self.canonical_breakpoints()))

    def __repr__(self) -> str:
        pts = ", ".join(f"({x}, {y})" for x, y in zip(self.xs, self.ys))
        return f"PLLift(degree={self.degree}, [{pts}])"

    def displacement(self) -> "PeriodicPL":
        return PeriodicPL(
            self.degree, [(x, y - x) for x, y in zip(self.xs, self.ys)]
        )

    def to_descriptor(self) -> dict:
        return {
            "degree": self.degree,
            "variant": "pl",
            "breakpoints": [[str(x), str(y)] for x, y in zip(self.xs, self.ys)],
        }


class AnalyticLift:
    """Binary64 lift x + alpha + sum_j a_j sin(2 pi x / T_j).

    Each period T_j must divide the degree so the lift stays n-equivariant
    (to roundoff).  The derivative margin sum |a_j| 2 pi / T_j < 1 keeps the
    map strictly increasing.
    """

    __slots__ = ("degree", "alpha", "terms")

    def __init__(self, alpha: float, terms=(), degree: int = 1) -> None:
        degree = int(degree)
        if degree < 1:
            raise ValueError("degree must be a positive integer")
        terms = tuple((float(a), float(T)) for a, T in terms)
        margin = 0.0
        for a, T in terms:
            if T <= 0:
                raise ValueError("perturbation periods must be positive")
            ratio = degree / T
            if abs(ratio - round(ratio)) > 1e-9:
                raise ValueError(f"period {T} does not divide degree {degree}")
            margin += abs(a) * 2 * math.pi / T
        if margin >= 1:
            raise NotMonotone(f"derivative margin {margin} >= 1")
        self.degree = degree
        self.alpha = float(alpha)
        self.terms = terms

    def eval(self, x):
        x = float(x)
        y = x + self.alpha
        for a, T in self.terms:
            y += a * math.sin(2 * math.pi * x / T)
        return y

    __call__ = eval

    def iterate_eval(self, x, q: int):
        if q < 0:
            raise AnalyticExactUnsupported("analytic lifts have no exact inverse")
        x = float(x)
        for _ in range(q):
            x = self.eval(x)
        return x

    def displacement(self) -> "AnalyticDisplacement":
        return AnalyticDisplacement(self)

    def to_descriptor(self) -> dict:
        return {
            "degree": self.degree,
            "variant": "analytic",
            "alpha": self.alpha,
            "terms": [[a, T] for a, T in self.terms],
        }

    def __repr__(self) -> str:
        return f"AnalyticLift(alpha={self.alpha}, terms={self.terms}, degree={self.degree})"


CircleLift = PLLift | AnalyticLift


class PeriodicPL:
    """Continuous piecewise-linear function with exact rational period."""

    __slots__ = ("period", "xs", "vs", "slopes")

    def __init__(self, period, breakpoints) -> None:
        period = as_rational(period)
        if period <= 0:
            raise ValueError("period must be positive")
        pts = sorted((as_rational(x), as_rational(v)) for x, v in breakpoints)
        if not pts:
            raise EmptyBreakpoints("a periodic PL function needs a breakpoint")
        xs = tuple(p[0] for p in pts)
        vs = tuple(p[1] for p in pts)
        if xs[0] < 0 or xs[-1] >= period:
            raise ValueError(f"breakpoint abscissae must lie in [0, {period})")
        for i in range(len(xs) - 1):
            if xs[i] == xs[i + 1]:
                raise ValueError(f"duplicate breakpoint at x={xs[i]}")
        slopes = []
        for i in range(len(xs) - 1):
            slopes.append((vs[i + 1] - vs[i]) / (xs[i + 1] - xs[i]))
        slopes.append((vs[0] - vs[-1]) / (xs[0] + period - xs[-1]))
        self.period = period
        self.xs = xs
        self.vs = vs
        self.slopes = tuple(slopes)

    def eval(self, x):
        T = self.period
        j = floor_div(x, T)
        x0 = x - j * T if j else x
        i = bisect.bisect_right(self.xs, x0) - 1
        if i < 0:
            x1 = self.xs[-1] - T
            v1 = self.vs[-1]
        else:
            x1 = self.xs[i]
            v1 = self.vs[i]
        return v1 + (x0 - x1) * self.slopes[i]

    __call__ = eval

    def sup_norm(self) -> Fraction:
        """Exact sup |delta|; PL extrema occur at breakpoints."""
        return max(abs(v) for v in self.vs)

    def min_slope(self) -> Fraction:
        return min(self.slopes)

    def translate(self, t) -> "PeriodicPL":
        """The translate delta^t(x) = delta(x + t)."""
        t = as_rational(t)
        T = self.period
        pts = []
        for x, v in zip(self.xs, self.vs):
            z = (x - t) % T
            pts.append((z, v))
        return PeriodicPL(T, pts)

    def add_const(self, c) -> "PeriodicPL":
        c = as_rational(c)
        return PeriodicPL(self.period, [(x, v + c) for x, v in zip(self.xs, self.vs)])

    def scale(self, c) -> "PeriodicPL":
        c = as_rational(c)
        return PeriodicPL(self.period, [(x, v * c) for x, v in zip(self.xs, self.vs)])

    def add(self, other: "PeriodicPL") -> "PeriodicPL":
        """Pointwise sum; periods must be equal or one a multiple of the other."""
        p1, p2 = self.period, other.period
        if p1 == p2:
            T = p1
        elif (p2 / p1).denominator == 1:
            T = p2
        elif (p1 / p2).denominator == 1:
            T = p1
        else:
            raise ValueError(f"incommensurable periods {p1}, {p2}")
        grid = set()
        for f in (self, other):
            reps = int(T / f.period)
            for j in range(reps):
                off = j * f.period
                for x in f.xs:
                    grid.add(x + off)
        return PeriodicPL(T, [(x, self.eval(x) + other.eval(x)) for x in sorted(grid)])

    def sup_diff(self, other: "PeriodicPL") -> Fraction:
        """Exact sup |self - other| over a common period."""
        p1, p2 = self.period, other.period
        if (p2 / p1).denominator == 1:
            T = p2
        elif (p1 / p2).denominator == 1:
            T = p1
        else:
            raise ValueError(f"incommensurable periods {p1}, {p2}")
        grid = set()
        for f in (self, other):
            reps = int(T / f.period)
            for j in range(reps):
                off = j * f.period
                for x in f.xs:
                    grid.add(x + off)
        return max(abs(self.eval(x) - other.eval(x)) for x in grid)

    def has_period(self, T) -> bool:
        """Exact test whether delta(x + T) = delta(x) for all x."""
        T = as_rational(T)
        if T <= 0:
            raise ValueError("candidate period must be positive")
        return self.sup_diff(self.translate(T)) == 0

    def canonical_breakpoints(self) -> tuple[tuple[Fraction, Fraction], ...]:
        keep = []
        for i in range(len(self.xs)):
            if self.slopes[i - 1] != self.slopes[i]:
                keep.append((self.xs[i], self.vs[i]))
        return tuple(keep)

    def is_constant(self) -> bool:
        return not self.canonical_breakpoints()

    def __eq__(self, other) -> bool:
        if not isinstance(other, PeriodicPL):
            return NotImplemented
        if self.period != other.period:
            return False
        a, b = self.canonical_breakpoints(), other.canonical_breakpoints()
        if not a and not b:
            return self.vs[0] == other.vs[0]
        return a == b

    def __hash__(self):
        return hash((self.period, self.canonical_breakpoints() or self.vs[0]))

    def __repr__(self) -> str:
        pts = ", ".join(f"({x}, {v})" for x, v in zip(self.xs, self.vs))
        return f"PeriodicPL(period={self.period}, [{pts}])"


class AnalyticDisplacement:
    """Float view of F - id for an analytic lift, with a certified sup bound."""

    __slots__ = ("lift",)

    def __init__(self, lift: AnalyticLift) -> None:
        self.lift = lift

    def eval(self, x):
        return self.lift.eval(x) - float(x)

    __call__ = eval

    def sup_bound(self) -> float:
        return abs(self.lift.alpha) + sum(abs(a) for a, _ in self.lift.terms)


Displacement = PeriodicPL | AnalyticDisplacement


def pl_new(degree: int, breakpoints) -> PLLift:
    return PLLift(degree, breakpoints)


def analytic_new(alpha: float, terms=(), degree: int = 1) -> AnalyticLift:
    return AnalyticLift(alpha, terms, degree)


def identity_lift(degree: int = 1) -> PLLift:
    return PLLift(degree, [(0, 0)])


def rotation_lift(alpha, degree: int = 1) -> PLLift:
    """The rigid rotation lift x -> x + alpha with exact rational alpha."""
    return PLLift(degree, [(0, as_rational(alpha))])


def lift_eval(F: CircleLift, x):
    return F.eval(x)


def lift_compose(F: CircleLift, G: CircleLift) -> PLLift:
    if not isinstance(F, PLLift) or not isinstance(G, PLLift):
        raise AnalyticExactUnsupported("exact composition needs PL lifts")
    return F.compose(G)


def lift_inverse(F: CircleLift) -> PLLift:
    if not isinstance(F, PLLift):
        raise AnalyticExactUnsupported("exact inversion needs a PL lift")
    return F.inverse()


def lift_iterate_eval(F: CircleLift, x, q: int):
    return F.iterate_eval(x, q)


def displacement_of(F: CircleLift) -> Displacement:
    return F.displacement()


def divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


def minimal_period(delta: PeriodicPL, candidates=None):
    """Smallest candidate period T with delta(x + T) = delta(x), decided exactly.

    By default candidates are the divisors of the (integer) stored period;
    displacements of degree-n lifts always admit T = n, so the search cannot
    fail.  Non-divisor rational periods are out of scope here.
    """
    if candidates is None:
        P = delta.period
        if P.denominator != 1:
            raise ValueError("default candidates need an integer period")
        candidates = divisors(P.numerator)
    for T in sorted(candidates, key=Fraction):
        if delta.has_period(T):
            return T
    raise ValueError("no candidate period fits (stored period always should)")


def map_from_descriptor(d: dict) -> CircleLift:
    """Build a lift from its JSON descriptor."""
    variant = d.get("variant")
    if variant == "pl":
        return PLLift(d.get("degree", 1), [(x, y) for x, y in d["breakpoints"]])
    if variant == "analytic":
        return AnalyticLift(d["alpha"], d.get("terms", ()), d.get("degree", 1))
    raise ValueError(f"unknown map variant: {variant!r}")


def map_to_descriptor(F: CircleLift) -> dict:
    return F.to_descriptor()
