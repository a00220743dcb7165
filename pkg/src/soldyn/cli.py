"""Batch experiment front-end.

Subcommands: rotation | orbit | semiconj | hull | density.  Inputs are JSON
descriptors (map, homeo, or limit-periodic tower); outputs are JSON, CSV or
SVG with rationals serialized as "p/q" strings.  A fixed seed makes every
byte of output reproducible.

Exit codes: 0 success, 1 mathematical failure (e.g. no certified orbit),
2 usage or parse error.
"""
from __future__ import annotations

import csv
import io
import json
import random
from dataclasses import dataclass
from fractions import Fraction
from math import factorial

import click

from . import dynamics, hull as hull_mod
from .circlemaps import AnalyticLift, PLLift, map_from_descriptor
from .errors import SoldynError
from .induced import (
    InducedHomeo,
    LimitPeriodicHomeo,
    apply,
    homeo_from_descriptor,
    leaf_displacement,
    lp_from_descriptor,
    lp_truncate,
)
from .profinite import DEFAULT_DEPTH, embed_int
from .solenoid import SolenoidPoint, parse_point, sigma, sol_add, sol_dist

DEFAULT_TOL = Fraction(1, 10**6)


@dataclass
class ExperimentConfig:
    """Resolved knobs for one experiment run; seed fixed => identical bytes."""

    input_path: str | None = None
    depth: int = DEFAULT_DEPTH
    iters: int = 100
    tol: Fraction = DEFAULT_TOL
    samples: int = 100
    seed: int = 0
    out: str | None = None
    fmt: str = "json"
    start: str | None = None
    p: int | None = None
    q: int | None = None


def _load_json(path: str) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise click.UsageError(f"cannot read {path}: {exc}")
    except json.JSONDecodeError as exc:
        raise click.UsageError(f"malformed JSON in {path}: {exc}")


def _load_input(path: str):
    """Sniff the descriptor kind: lp tower, induced homeo, or bare map."""
    d = _load_json(path)
    try:
        if "lp" in d:
            return lp_from_descriptor(d)
        if "lift" in d:
            return homeo_from_descriptor(d)
        return map_from_descriptor(d)
    except (SoldynError, KeyError, ValueError, TypeError) as exc:
        raise click.UsageError(f"invalid descriptor in {path}: {exc}")


def _emit(text: str, out: str | None) -> None:
    if out is None:
        click.echo(text, nl=False)
    else:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)


def _json_text(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def _csv_text(header: list[str], rows: list[list[str]]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


def _svg_chart(title: str, xs: list[float], series: list[tuple[str, list[float]]]) -> str:
    """Small deterministic polyline chart; fixed canvas, fixed formatting."""
    width, height, margin = 640, 400, 60
    all_vals = [v for _, vals in series for v in vals]
    lo, hi = min(all_vals + [0.0]), max(all_vals + [0.0])
    if hi == lo:
        hi = lo + 1.0
    x_lo, x_hi = min(xs), max(xs)
    if x_hi == x_lo:
        x_hi = x_lo + 1.0

    def px(x: float) -> str:
        return f"{margin + (x - x_lo) / (x_hi - x_lo) * (width - 2 * margin):.2f}"

    def py(v: float) -> str:
        return f"{height - margin - (v - lo) / (hi - lo) * (height - 2 * margin):.2f}"

    colors = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd"]
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}">',
        f'<rect width="{width}" height="{height}" fill="white"/>',
        f'<text x="{width // 2}" y="24" text-anchor="middle" font-size="16">{title}</text>',
        f'<line x1="{margin}" y1="{height - margin}" x2="{width - margin}" '
        f'y2="{height - margin}" stroke="black"/>',
        f'<line x1="{margin}" y1="{margin}" x2="{margin}" '
        f'y2="{height - margin}" stroke="black"/>',
    ]
    for i, (label, vals) in enumerate(series):
        color = colors[i % len(colors)]
        pts = " ".join(f"{px(x)},{py(v)}" for x, v in zip(xs, vals))
        parts.append(f'<polyline points="{pts}" fill="none" stroke="{color}" stroke-width="2"/>')
        parts.append(
            f'<text x="{width - margin}" y="{40 + 18 * i}" text-anchor="end" '
            f'font-size="12" fill="{color}">{label}</text>'
        )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def _random_exact_point(rng: random.Random, depth: int) -> SolenoidPoint:
    den = rng.randint(1, 64)
    x = Fraction(rng.randrange(den), den)
    k = embed_int(rng.randrange(factorial(depth)), depth)
    return SolenoidPoint(x, k)


def _parse_start(cfg: ExperimentConfig) -> SolenoidPoint:
    if cfg.start is None:
        return sigma(Fraction(0), cfg.depth)
    text = cfg.start.strip()
    if text.startswith("x="):
        return parse_point(text)
    return sigma(Fraction(text), cfg.depth)


def _certified_pq(f: InducedHomeo, cfg: ExperimentConfig) -> tuple[int, int]:
    """Given p/q flags use them; otherwise certify from the enclosure."""
    if cfg.p is not None and cfg.q is not None:
        return cfg.p, cfg.q
    L = f.leaf_lift()
    if not isinstance(L, PLLift):
        raise click.ClickException("cannot certify p/q for an analytic map")
    enc = dynamics.rho_of_induced(f, cfg.iters)
    found = dynamics.rational_certificate(L, enc.lo, enc.hi, min(cfg.iters, 1000))
    if found is None:
        raise click.ClickException(
            f"no rational rotation number certified within q = {cfg.iters}"
        )
    cand, _ = found
    return cand.numerator, cand.denominator


def _homeo_rotation_report(f: InducedHomeo, iters: int) -> dynamics.RotationEnclosure:
    enc = dynamics.rho_of_induced(f, iters)
    L = f.leaf_lift()
    if isinstance(L, PLLift):
        found = dynamics.rational_certificate(L, enc.lo, enc.hi, min(iters, 1000))
        if found is not None:
            cand, wit = found
            enc = dynamics.RotationEnclosure(enc.lo, enc.hi, enc.iters, cand, wit)
    return enc


def cmd_rotation(cfg: ExperimentConfig) -> str:
    obj = _load_input(cfg.input_path)
    if isinstance(obj, LimitPeriodicHomeo):
        raise click.UsageError("rotation expects a map or homeo descriptor")
    if isinstance(obj, InducedHomeo):
        enc = _homeo_rotation_report(obj, cfg.iters)
    elif isinstance(obj, AnalyticLift):
        enc = dynamics.translation_enclosure(obj, cfg.iters)
    else:
        enc = dynamics.rotation_report(obj, cfg.iters)
    return _json_text(enc.to_report())


def cmd_orbit(cfg: ExperimentConfig) -> str:
    obj = _load_input(cfg.input_path)
    if isinstance(obj, LimitPeriodicHomeo):
        raise click.UsageError("orbit expects a map or homeo descriptor")
    f = obj if isinstance(obj, InducedHomeo) else InducedHomeo(obj, 0)
    depth = cfg.depth
    s = _parse_start(cfg)
    header = ["iter", "x"] + [f"r{m}" for m in range(1, depth + 1)] + ["dist_to_target"]
    if cfg.iters < 1:
        click.echo("inconclusive: iteration budget is 0", err=True)
        return _csv_text(header, [])
    p, q = _certified_pq(f, cfg)
    try:
        target = dynamics.fiber_target(f, s, p, q)
    except SoldynError as exc:
        raise click.ClickException(f"orbit target not found: {exc}")
    rows = []
    cur = s
    step = Fraction(p, q)
    for i in range(cfg.iters):
        ref = sol_add(target, sigma(i * step, depth))
        d = sol_dist(cur, ref)
        rows.append([str(i), str(cur.x)] + [str(r) for r in cur.k.residues] + [str(d)])
        cur = apply(f, cur)
    return _csv_text(header, rows)


def cmd_semiconj(cfg: ExperimentConfig) -> str:
    obj = _load_input(cfg.input_path)
    if isinstance(obj, LimitPeriodicHomeo):
        raise click.UsageError("semiconj expects a map or homeo descriptor")
    if not isinstance(obj, InducedHomeo):
        obj = InducedHomeo(obj, 0)
    rng = random.Random(cfg.seed)
    pts = [_random_exact_point(rng, cfg.depth) for _ in range(cfg.samples)]
    try:
        report = hull_mod.check_semiconjugacy(obj, pts)
    except SoldynError as exc:
        raise click.ClickException(str(exc))
    return _json_text(report.to_report())


def cmd_hull(cfg: ExperimentConfig) -> str:
    obj = _load_input(cfg.input_path)
    if isinstance(obj, LimitPeriodicHomeo):
        verdict = hull_mod.periodicity_classify(obj)
        return _json_text(
            {
                "classification": "limit_periodic_certified",
                "tower": list(verdict.tower),
                "bounds": [str(b) for b in verdict.bounds],
            }
        )
    if not isinstance(obj, InducedHomeo):
        obj = InducedHomeo(obj, 0)
    try:
        delta = leaf_displacement(obj)
        verdict = hull_mod.periodicity_classify(obj)
        hull_mod.quotient_map(delta)
        enc = _homeo_rotation_report(obj, cfg.iters)
    except SoldynError as exc:
        raise click.ClickException(str(exc))
    return _json_text(
        {
            "classification": "periodic",
            "period": str(verdict.period),
            "displacement_sup": str(delta.sup_norm()),
            "g_rotation": enc.to_report(),
        }
    )


def cmd_density(cfg: ExperimentConfig) -> str:
    obj = _load_input(cfg.input_path)
    if not isinstance(obj, LimitPeriodicHomeo):
        raise click.UsageError("density expects a limit-periodic descriptor")
    h = obj
    N = max(cfg.samples, 1)
    top = h.tower[-1]
    grid = [Fraction(i * top, N) for i in range(N)]
    rows = []
    levels = list(range(1, h.levels + 1))
    bounds, gaps = [], []
    for j in levels:
        trunc, bound = lp_truncate(h, j)
        gap = max(abs(h.eval(x) - trunc.base.eval(x)) for x in grid)
        bounds.append(bound)
        gaps.append(gap)
        rows.append([str(j), str(h.tower[j - 1]), str(bound), str(gap)])
    if cfg.fmt == "svg":
        return _svg_chart(
            "certified bound vs measured gap",
            [float(j) for j in levels],
            [
                ("certified bound", [float(b) for b in bounds]),
                ("measured gap", [float(g) for g in gaps]),
            ],
        )
    if cfg.fmt == "json":
        return _json_text(
            {
                "levels": levels,
                "bounds": [str(b) for b in bounds],
                "gaps": [str(g) for g in gaps],
            }
        )
    return _csv_text(["level", "period", "certified_bound", "measured_sup_gap"], rows)


def _common_options(fn):
    fn = click.option("--input", "input_path", required=True,
                      type=click.Path(exists=True, dir_okay=False),
                      help="JSON descriptor path.")(fn)
    fn = click.option("--depth", default=DEFAULT_DEPTH, show_default=True,
                      help="Profinite truncation depth M.")(fn)
    fn = click.option("--iters", "-q", "iters", default=100, show_default=True,
                      help="Iteration budget q.")(fn)
    fn = click.option("--tol", default="1/1000000", show_default=True,
                      help="Tolerance as a rational p/q.")(fn)
    fn = click.option("--samples", default=100, show_default=True,
                      help="Sample count (points / grid size).")(fn)
    fn = click.option("--seed", default=0, show_default=True,
                      help="RNG seed; fixed seed gives byte-identical output.")(fn)
    fn = click.option("--out", default=None, type=click.Path(dir_okay=False),
                      help="Output path (default: stdout).")(fn)
    fn = click.option("--format", "fmt", default=None,
                      type=click.Choice(["csv", "json", "svg"]),
                      help="Output format (default depends on subcommand).")(fn)
    return fn


def _make_config(default_fmt: str, allowed=None, **kw) -> ExperimentConfig:
    fmt = kw.pop("fmt") or default_fmt
    if allowed is not None and fmt not in allowed:
        raise click.UsageError(f"unsupported format {fmt!r}; choose from {allowed}")
    tol = Fraction(kw.pop("tol"))
    return ExperimentConfig(fmt=fmt, tol=tol, **kw)


@click.group()
def main():
    """Experiments on solenoid homeomorphisms: exact arithmetic throughout."""


@main.command()
@_common_options
def rotation(**kw):
    """Rotation-number enclosure with exact certification when possible."""
    cfg = _make_config("json", allowed=("json",), **kw)
    _emit(cmd_rotation(cfg), cfg.out)


@main.command()
@_common_options
@click.option("--start", default=None,
              help='Start point: rational t (for sigma(t)) or literal "x=p/q; k=(...)".')
@click.option("--p", "p", default=None, type=int, help="Return numerator p.")
@click.option("--q-return", "q_return", default=None, type=int, help="Return denominator q.")
def orbit(start, p, q_return, **kw):
    """Orbit trace CSV with distance to the certified fiber-periodic target."""
    cfg = _make_config("csv", allowed=("csv",), start=start, p=p, q=q_return, **kw)
    _emit(cmd_orbit(cfg), cfg.out)


@main.command()
@_common_options
def semiconj(**kw):
    """Check K o f = g o K exactly on random exact sample points."""
    cfg = _make_config("json", allowed=("json",), **kw)
    _emit(cmd_semiconj(cfg), cfg.out)


@main.command(name="hull")
@_common_options
def hull_cmd(**kw):
    """Hull summary: minimal period, sup norm, quotient rotation enclosure."""
    cfg = _make_config("json", allowed=("json",), **kw)
    _emit(cmd_hull(cfg), cfg.out)


@main.command()
@_common_options
def density(**kw):
    """Per-level certified bound vs measured sup gap for a limit-periodic tower."""
    cfg = _make_config("csv", allowed=("csv", "json", "svg"), **kw)
    _emit(cmd_density(cfg), cfg.out)


if __name__ == "__main__":
    main()
