"""Numerical side: line fields, leaf integration, the discriminant curve,
empirical foliation-swap signs and SVG/JSON output."""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np
from scipy import ndimage
from scipy.spatial import cKDTree
from skimage import measure

from .algebra import RealPoly
from .equivariance import BDE, discriminant
from .errors import Degenerate, Inconsistent, InfiniteGroup, NoSamples, NotInGroup, Undefined
from .groups import GroupElement, GroupSpec, SymmetryGroup

Point = Tuple[float, float]
Polyline = List[Point]

_TINY = 1e-14


@dataclass(frozen=True)
class RenderConfig:
    xmin: Fraction = Fraction(-1)
    xmax: Fraction = Fraction(1)
    ymin: Fraction = Fraction(-1)
    ymax: Fraction = Fraction(1)
    seeds: Tuple[int, int] = (32, 32)
    h: Optional[float] = None  # default: 1/100 of the domain width
    max_steps: int = 10_000
    eps: Optional[float] = None  # default: 1e-3 times the domain scale
    grid: int = 512

    def __post_init__(self):
        for name in ("xmin", "xmax", "ymin", "ymax"):
            object.__setattr__(self, name, Fraction(getattr(self, name)))
        if self.xmax <= self.xmin or self.ymax <= self.ymin:
            raise ValueError("empty domain")
        if min(self.seeds) < 1 or self.max_steps < 1 or self.grid < 2:
            raise ValueError("counts must be positive")
        if (self.h is not None and self.h <= 0) or (self.eps is not None and self.eps <= 0):
            raise ValueError("step size and margin must be positive")

    @property
    def width(self) -> float:
        return float(self.xmax - self.xmin)

    @property
    def step(self) -> float:
        return self.h if self.h is not None else 1e-2 * self.width

    @property
    def margin(self) -> float:
        if self.eps is not None:
            return self.eps
        scale = max(abs(float(v)) for v in (self.xmin, self.xmax, self.ymin, self.ymax))
        return 1e-3 * scale

    def bounds(self) -> Tuple[float, float, float, float]:
        return float(self.xmin), float(self.xmax), float(self.ymin), float(self.ymax)

    def inside(self, x, y):
        x0, x1, y0, y1 = self.bounds()
        return (x >= x0) & (x <= x1) & (y >= y0) & (y <= y1)


@dataclass
class Trajectory:
    label: int  # 1 or 2
    points: List[Point]


@dataclass
class ConfigurationPlot:
    domain: Tuple[float, float, float, float]
    trajectories: List[Trajectory] = field(default_factory=list)
    discriminant: List[Polyline] = field(default_factory=list)


# vectorized evaluation ------------------------------------------------------

def numpy_poly(p: RealPoly) -> Callable:
    terms = [(float(c), i, j) for (i, j), c in p.terms.items()]

    def f(x, y):
        x = np.asarray(x, dtype=float)
        y = np.asarray(y, dtype=float)
        out = np.zeros(np.broadcast(x, y).shape)
        for c, i, j in terms:
            out = out + c * x ** i * y ** j
        return out

    return f


class LineField:
    """Fast float evaluation of the two root directions of a BDE."""

    def __init__(self, e: BDE):
        self.e = e
        self.fa, self.fb, self.fc = (numpy_poly(p) for p in e.triple())

    def coefficients(self, x, y):
        return self.fa(x, y), self.fb(x, y), self.fc(x, y)

    def delta(self, x, y):
        a, b, c = self.coefficients(x, y)
        return b * b - a * c

    def directions(self, x, y, label):
        """Unit direction of foliation ``label`` (root ``-b + (-1)^label sqrt(delta)``)
        and the discriminant; NaN where the root degenerates."""
        a, b, c = self.coefficients(x, y)
        delta = b * b - a * c
        s = 1.0 if label == 2 else -1.0
        sq = np.sqrt(np.maximum(delta, 0.0))
        sgn = np.where(b >= 0, 1.0, -1.0)
        q = -(b + sgn * sq)  # the cancellation-free root
        with np.errstate(divide="ignore", invalid="ignore"):
            other = np.where(q != 0, a * c / np.where(q != 0, q, 1.0), 0.0)
        # roots -b + sq and -b - sq, whichever way q happened to fall
        r_plus = np.where(sgn > 0, other, q)
        r_minus = np.where(sgn > 0, q, other)
        r_s, r_o = (r_plus, r_minus) if s > 0 else (r_minus, r_plus)
        use_a = np.abs(a) >= np.abs(c)
        dx = np.where(use_a, a, r_o)
        dy = np.where(use_a, r_s, c)
        scale = np.abs(a) + np.abs(b) + np.abs(c)
        flat = (np.abs(a) <= _TINY * scale) & (np.abs(c) <= _TINY * scale)
        horizontal = (b > 0) == (s > 0)
        dx = np.where(flat, np.where(horizontal, 1.0, 0.0), dx)
        dy = np.where(flat, np.where(horizontal, 0.0, 1.0), dy)
        norm = np.hypot(dx, dy)
        with np.errstate(divide="ignore", invalid="ignore"):
            dx, dy = dx / norm, dy / norm
        bad = (delta <= 0) | (norm == 0) | (scale == 0)
        dx = np.where(bad, np.nan, dx)
        dy = np.where(bad, np.nan, dy)
        return dx, dy, delta


def _canonical(dx: float, dy: float) -> Point:
    if dy < 0 or (dy == 0 and dx < 0):
        dx, dy = -dx, -dy
    return float(dx) + 0.0, float(dy) + 0.0


def direction_pair(e: BDE, p: Point) -> Tuple[Point, Point]:
    """Unit directions ``(fol1, fol2)`` at p, each with dy >= 0."""
    lf = LineField(e)
    a, b, c = (float(v) for v in lf.coefficients(p[0], p[1]))
    if a == 0 and b == 0 and c == 0:
        raise Undefined(f"a = b = c = 0 at {p}")
    if b * b - a * c <= 0:
        raise Degenerate(f"discriminant is not positive at {p}")
    out = []
    for label in (1, 2):
        dx, dy, _ = lf.directions(p[0], p[1], label)
        out.append(_canonical(dx, dy))
    return out[0], out[1]


# integration ------------------------------------------------------------------

def _seed_points(cfg: RenderConfig) -> np.ndarray:
    x0, x1, y0, y1 = cfg.bounds()
    nx, ny = cfg.seeds
    xs = x0 + (np.arange(nx) + 0.5) * (x1 - x0) / nx
    ys = y0 + (np.arange(ny) + 0.5) * (y1 - y0) / ny
    gx, gy = np.meshgrid(xs, ys)
    return np.column_stack([gx.ravel(), gy.ravel()])


def _trace(
    lf: LineField, start: np.ndarray, label: int, orient: np.ndarray, cfg: RenderConfig
) -> Tuple[List[np.ndarray], np.ndarray]:
    """Batch RK4 along one root field.

    A leaf stops when it leaves the domain, gets within ``eps`` of the
    discriminant or re-enters an ``h``-cell it passed through earlier (closed
    leaves and spirals would otherwise run to ``max_steps``). Returns the point
    sequence of every start and a mask of the leaves that came back to their
    start.
    """
    h, eps = cfg.step, cfg.margin
    x0, x1, y0, y1 = cfg.bounds()
    shape = (int((x1 - x0) / h) + 2, int((y1 - y0) / h) + 2)
    pos = start.copy()
    prev = orient.copy()
    paths = [[p.copy()] for p in pos]
    active = np.arange(len(pos))
    closed = np.zeros(len(pos), dtype=bool)
    seen = np.full((len(pos),) + shape, -1, dtype=np.int32)

    def cells(p):
        ix = np.clip(((p[:, 0] - x0) / h).astype(int), 0, shape[0] - 1)
        iy = np.clip(((p[:, 1] - y0) / h).astype(int), 0, shape[1] - 1)
        return ix, iy

    seen[(active,) + cells(pos)] = 0

    def stage(p, ref):
        dx, dy, dl = lf.directions(p[:, 0], p[:, 1], label)
        d = np.column_stack([dx, dy])
        flip = (d * ref).sum(axis=1) < 0
        d[flip] *= -1
        return d, dl

    for step in range(1, cfg.max_steps + 1):
        if not len(active):
            break
        p, ref = pos[active], prev[active]
        k1, _ = stage(p, ref)
        k2, _ = stage(p + 0.5 * h * k1, k1)
        k3, _ = stage(p + 0.5 * h * k2, k1)
        k4, _ = stage(p + h * k3, k1)
        nxt = p + (h / 6.0) * (k1 + 2 * k2 + 2 * k3 + k4)
        dl = lf.delta(nxt[:, 0], nxt[:, 1])
        ok = (
            np.isfinite(nxt).all(axis=1)
            & cfg.inside(nxt[:, 0], nxt[:, 1])
            & (dl > eps)
        )
        for idx, point in zip(active[ok], nxt[ok]):
            paths[idx].append(point)
        pos[active[ok]] = nxt[ok]
        prev[active[ok]] = k1[ok]
        active = active[ok]
        key = (active,) + cells(pos[active])
        first = seen[key]
        again = (first >= 0) & (step - first > 3)
        seen[key] = np.where(first >= 0, first, step)
        gap = np.hypot(*(pos[active] - start[active]).T)
        closed[active[again & (gap <= 2 * h)]] = True
        active = active[~again]
    return [np.array(p) for p in paths], closed


def integrate_configuration(e: BDE, cfg: Optional[RenderConfig] = None) -> ConfigurationPlot:
    """Leaves of both foliations through a seed grid, each traced both ways."""
    cfg = cfg or RenderConfig()
    lf = LineField(e)
    plot = ConfigurationPlot(cfg.bounds())
    seeds = _seed_points(cfg)
    seeds = seeds[lf.delta(seeds[:, 0], seeds[:, 1]) > cfg.margin]
    for label in (1, 2):
        if not len(seeds):
            continue
        dx, dy, _ = lf.directions(seeds[:, 0], seeds[:, 1], label)
        d0 = np.column_stack([dx, dy])
        good = np.isfinite(d0).all(axis=1)
        s, d0 = seeds[good], d0[good]
        fwd, closed = _trace(lf, s, label, d0, cfg)
        bwd, _ = _trace(lf, s[~closed], label, -d0[~closed], cfg)
        bwd_iter = iter(bwd)
        for f, loop in zip(fwd, closed):
            # a leaf that closed up is drawn once, without a backward pass
            pts = f if loop else np.vstack([next(bwd_iter)[::-1], f[1:]])
            plot.trajectories.append(Trajectory(label, [(float(x), float(y)) for x, y in pts]))
    plot.discriminant = contour_discriminant(e, cfg)
    return plot


def tangency_residuals(e: BDE, plot: ConfigurationPlot) -> np.ndarray:
    """Relative residual ``|a q^2 + 2 b p q + c p^2| / (1 + |a| + |b| + |c|)``
    of the integrated direction at every trajectory point."""
    lf = LineField(e)
    out = []
    for tr in plot.trajectories:
        pts = np.asarray(tr.points)
        dx, dy, _ = lf.directions(pts[:, 0], pts[:, 1], tr.label)
        a, b, c = lf.coefficients(pts[:, 0], pts[:, 1])
        r = np.abs(a * dy * dy + 2 * b * dx * dy + c * dx * dx) / (1 + np.abs(a) + np.abs(b) + np.abs(c))
        out.append(r)
    return np.concatenate(out) if out else np.zeros(0)


def step_lengths(plot: ConfigurationPlot) -> np.ndarray:
    gaps = [np.hypot(*np.diff(np.asarray(t.points), axis=0).T) for t in plot.trajectories if len(t.points) > 1]
    return np.concatenate(gaps) if gaps else np.zeros(0)


# discriminant -------------------------------------------------------------

def _grid(cfg: RenderConfig, n: int):
    x0, x1, y0, y1 = cfg.bounds()
    xs = np.linspace(x0, x1, n)
    ys = np.linspace(y0, y1, n)
    return xs, ys, np.meshgrid(xs, ys)


def _isolated_zeros(f: Callable, xs, ys, vals) -> List[Point]:
    """Grid local minima of |delta| that refine to an actual zero."""
    mag = np.abs(vals)
    top = max(1.0, float(mag.max()))
    local = mag == ndimage.minimum_filter(mag, size=3, mode="nearest")
    # without a sign change delta vanishes to second order, so a nearby node is already small;
    # this also keeps flat plateaus from flooding the refinement loop
    local &= mag <= 1e-3 * top
    # zeros on the frame are not isolated in any meaningful sense
    local[0, :] = local[-1, :] = local[:, 0] = local[:, -1] = False
    found: List[Point] = []
    dx, dy = xs[1] - xs[0], ys[1] - ys[0]
    for i, j in zip(*np.nonzero(local)):
        cx, cy, rx, ry = xs[j], ys[i], dx, dy
        best = mag[i, j]
        for _ in range(8):
            sx = np.linspace(cx - rx, cx + rx, 21)
            sy = np.linspace(cy - ry, cy + ry, 21)
            gx, gy = np.meshgrid(sx, sy)
            m = np.abs(f(gx, gy))
            k = np.unravel_index(np.argmin(m), m.shape)
            cx, cy, best = gx[k], gy[k], m[k]
            rx, ry = rx / 10, ry / 10
        if best <= 1e-12 * top and all(math.hypot(cx - p, cy - q) > 2 * max(dx, dy) for p, q in found):
            found.append((float(cx), float(cy)))
    return found


def contour_discriminant(e: BDE, cfg: Optional[RenderConfig] = None) -> List[Polyline]:
    """Polylines of the zero set of delta; isolated zeros come back as one-point lines."""
    cfg = cfg or RenderConfig()
    f = numpy_poly(discriminant(e))
    xs, ys, (gx, gy) = _grid(cfg, cfg.grid)
    vals = f(gx, gy)
    if np.all(np.abs(vals) <= _TINY):
        return []
    lines: List[Polyline] = []
    for c in measure.find_contours(vals, 0.0):
        r, q = c[:, 0], c[:, 1]
        px = np.interp(q, np.arange(len(xs)), xs)
        py = np.interp(r, np.arange(len(ys)), ys)
        lines.append([(float(a), float(b)) for a, b in zip(px, py)])
    signs = np.sign(vals)
    if not (np.any(signs > 0) and np.any(signs < 0)):
        lines.extend([p] for p in _isolated_zeros(f, xs, ys, vals))
    return lines


# foliation swap sign ------------------------------------------------------

def sample_component(e: BDE, cfg: RenderConfig, samples: int) -> np.ndarray:
    """Points of the largest connected piece of {delta > eps} on a sampling grid."""
    lf = LineField(e)
    n = max(16, int(math.ceil(math.sqrt(4 * samples))))
    xs, ys, (gx, gy) = _grid(cfg, n)
    mask = lf.delta(gx, gy) > cfg.margin
    for label in (1, 2):
        dx, _, _ = lf.directions(gx, gy, label)
        mask &= np.isfinite(dx)
    lab, count = ndimage.label(mask)
    if count == 0:
        raise NoSamples("the discriminant is not positive anywhere on the sampling grid")
    sizes = ndimage.sum(mask, lab, index=range(1, count + 1))
    pick = lab == 1 + int(np.argmax(sizes))
    pts = np.column_stack([gx[pick], gy[pick]])
    stride = max(1, len(pts) // samples)
    return pts[::stride]


def _cross(u: np.ndarray, v: np.ndarray) -> np.ndarray:
    return np.abs(u[:, 0] * v[:, 1] - u[:, 1] * v[:, 0])


def estimate_lambda(
    e: BDE,
    g: GroupElement,
    sg: SymmetryGroup,
    samples: int = 200,
    tol: float = 1e-9,
    cfg: Optional[RenderConfig] = None,
) -> int:
    """+1 when g maps each foliation to itself, -1 when it swaps them."""
    if not sg.group.contains(g):
        raise NotInGroup(f"{g} is not in {sg}")
    cfg = cfg or RenderConfig()
    lf = LineField(e)
    pts = sample_component(e, cfg, samples)
    image = pts @ g.matrix().T
    keep = lf.delta(image[:, 0], image[:, 1]) > cfg.margin
    pts, image = pts[keep], image[keep]
    if not len(pts):
        raise NoSamples("no usable sample points")
    d = {lab: np.column_stack(lf.directions(pts[:, 0], pts[:, 1], lab)[:2]) for lab in (1, 2)}
    t = {lab: np.column_stack(lf.directions(image[:, 0], image[:, 1], lab)[:2]) for lab in (1, 2)}
    votes = set()
    for lab, other in ((1, 2), (2, 1)):
        moved = d[lab] @ g.matrix().T
        same, swap = _cross(moved, t[lab]), _cross(moved, t[other])
        votes |= set(np.where((same <= tol) & (swap > tol), 1, np.where((swap <= tol) & (same > tol), -1, 0)).tolist())
    if votes == {1}:
        return 1
    if votes == {-1}:
        return -1
    raise Inconsistent(f"mixed votes {sorted(votes)} for {g}")


def _sample_elements(group: GroupSpec) -> List[GroupElement]:
    if group.is_finite:
        return group.elements()
    out = [GroupElement.rotation(Fraction(k, 6)) for k in range(12)]
    if group.has_reflections:
        out += [GroupElement.reflection(Fraction(k, 6)) for k in range(12)]
    return out


def _name_subgroup(elements: Sequence[GroupElement], parent: GroupSpec) -> str:
    from .parsing import format_group

    rots = [g for g in elements if g.is_rotation]
    refl = sorted(g.angle for g in elements if not g.is_rotation)
    if not parent.is_finite:
        if refl:
            return "O2" if len(refl) == len(rots) else "?"
        return "SO2"
    if not refl:
        return format_group(GroupSpec.cyclic(len(rots)), kernel_of=parent)
    return format_group(GroupSpec.dihedral(len(rots), refl[0]), kernel_of=parent)


@dataclass
class TheoremCheck:
    element: GroupElement
    det: int
    eta: int
    estimated: int
    ok: bool


@dataclass
class TheoremReport:
    group: SymmetryGroup
    checks: List[TheoremCheck]
    kernel: List[GroupElement]
    kernel_name: str
    corollary_ok: bool

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks) and self.corollary_ok

    def to_dict(self) -> dict:
        return {
            "group": str(self.group),
            "ok": self.ok,
            "elements": [
                {"element": str(c.element), "det": c.det, "eta": c.eta, "lambda": c.estimated, "ok": c.ok}
                for c in self.checks
            ],
            "ker_lambda": self.kernel_name,
            "ker_lambda_elements": [str(g) for g in self.kernel],
            "cyclic_intersection": self.corollary_ok,
        }


def verify_theorem(
    e: BDE, sg: SymmetryGroup, cfg: Optional[RenderConfig] = None, samples: int = 200, tol: float = 1e-9
) -> TheoremReport:
    """Compare the sampled swap sign with det(g) * eta(g) on every element."""
    checks = []
    for g in _sample_elements(sg.group):
        eta = sg.eta_value(g)
        lam = estimate_lambda(e, g, sg, samples, tol, cfg)
        checks.append(TheoremCheck(g, g.det(), eta, lam, lam == g.det() * eta))
    kernel = [c.element for c in checks if c.estimated == 1]
    # elements fixing both the foliations and the sign must all be rotations
    corollary = all(c.element.is_rotation for c in checks if c.estimated == 1 and c.eta == 1)
    return TheoremReport(sg, checks, kernel, _name_subgroup(kernel, sg.group), corollary)


def symmetry_distance(plot: ConfigurationPlot, e: BDE, g: GroupElement, lam: int, cfg: RenderConfig) -> float:
    """Largest distance from a g-image of a leaf point to the leaves of the
    foliation it should land on (points mapped outside the drawn region are skipped)."""
    lf = LineField(e)
    target = {}
    for lab in (1, 2):
        pts = [p for t in plot.trajectories if t.label == lab for p in t.points]
        target[lab] = cKDTree(np.asarray(pts)) if pts else None
    worst = 0.0
    pad = 5 * cfg.step
    x0, x1, y0, y1 = cfg.bounds()
    for t in plot.trajectories:
        dest = t.label if lam == 1 else 3 - t.label
        img = np.asarray(t.points) @ g.matrix().T
        keep = (
            (img[:, 0] > x0 + pad) & (img[:, 0] < x1 - pad) & (img[:, 1] > y0 + pad) & (img[:, 1] < y1 - pad)
            & (lf.delta(img[:, 0], img[:, 1]) > 10 * cfg.margin)
        )
        if not keep.any() or target[dest] is None:
            continue
        dist, _ = target[dest].query(img[keep])
        worst = max(worst, float(dist.max()))
    return worst


# output -------------------------------------------------------------------

def _num(v: float) -> str:
    return format(v, ".17g")


def emit_svg(plot: ConfigurationPlot, path) -> str:
    x0, x1, y0, y1 = plot.domain
    w, h = x1 - x0, y1 - y0
    stroke = _num(max(w, h) / 600)
    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="{_num(x0)} {_num(-y1)} {_num(w)} {_num(h)}">',
        "<style>",
        f".fol1{{stroke:#d62728;fill:none;stroke-width:{stroke}}}",
        f".fol2{{stroke:#1f77b4;fill:none;stroke-width:{stroke}}}",
        f".disc{{stroke:black;fill:black;stroke-width:{_num(3 * float(stroke))}}}",
        "</style>",
    ]

    def pts(ps):
        return " ".join(f"{_num(x)},{_num(-y)}" for x, y in ps)

    for t in plot.trajectories:
        lines.append(f'<polyline class="fol{t.label}" points="{pts(t.points)}"/>')
    for d in plot.discriminant:
        if len(d) == 1:
            (x, y), = d
            lines.append(f'<circle class="disc" cx="{_num(x)}" cy="{_num(-y)}" r="{_num(4 * float(stroke))}"/>')
        else:
            lines.append(f'<polyline class="disc" fill="none" points="{pts(d)}"/>')
    lines.append("</svg>")
    text = "\n".join(lines) + "\n"
    _write(path, text)
    return text


def plot_to_dict(plot: ConfigurationPlot) -> dict:
    x0, x1, y0, y1 = plot.domain
    return {
        "domain": {"xmin": x0, "xmax": x1, "ymin": y0, "ymax": y1},
        "trajectories": [{"label": t.label, "points": [list(p) for p in t.points]} for t in plot.trajectories],
        "discriminant": [[list(p) for p in d] for d in plot.discriminant],
    }


def plot_from_dict(doc: dict) -> ConfigurationPlot:
    d = doc["domain"]
    return ConfigurationPlot(
        (d["xmin"], d["xmax"], d["ymin"], d["ymax"]),
        [Trajectory(t["label"], [tuple(p) for p in t["points"]]) for t in doc["trajectories"]],
        [[tuple(p) for p in line] for line in doc["discriminant"]],
    )


def emit_json(plot: ConfigurationPlot, path) -> str:
    # repr-based float output round-trips exactly
    text = json.dumps(plot_to_dict(plot))
    _write(path, text)
    return text


def _write(path, text: str) -> None:
    if path is None:
        return
    try:
        Path(path).write_text(text)
    except OSError as exc:
        raise OSError(f"cannot write {path}: {exc}") from exc
