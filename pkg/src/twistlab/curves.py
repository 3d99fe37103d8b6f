"""Characteristic curves, periodic-orbit graphs, and the integrability probe.

The vertical tilt of a positive twist map makes x' = p1(F(x, y)) strictly
increasing in y, so level sets of x' are graphs over the circle:

* Psi1(x): the unique y with p1(F(x, y)) = x.  Points above the circle
  that do not move horizontally in one step.
* PsiMinus1(x): the second coordinate of F at (x, Psi1(x)); the analogous
  curve for the inverse map.  The signed area between the two curves is
  the flux; it vanishes exactly for exact symplectic families.
* psi_rho for rho = p/q: the graph of y-values whose orbit advances by p
  over q steps, found as the root of p1(F^q(x, y)) = x + p.  For an exact
  map without conjugate points these graphs are invariant circles and are
  strictly ordered in rho.

The integrability probe ties it together: no over-conjugate points on a
grid (evidence, not proof) plus a residual-certified, ordered family.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .errors import BracketExpansionError, NonMonotoneBracketError
from .maps import LiftedMap, _as_point, iterate
from .torsion import cocycle_scan, detect_overconjugate

ROOT_TOL = 1e-10
FIX_RESIDUAL_TOL = 1e-8
FLUX_TOL = 1e-8
BRACKET_LIMIT = float(2**16)

VERDICT_NOT_APPLICABLE = "NOT_APPLICABLE"
VERDICT_CONJUGATE = "CONJUGATE_POINTS_FOUND"
VERDICT_NO_OBSTRUCTION = "NO_OBSTRUCTION_FOUND"

FIXED = "fixed"
MONOTONE = "monotone"
SWITCH_INTERIOR = "switch_interior"
SWITCH_TOUCHING = "switch_touching"
UNDETERMINED = "undetermined"


@dataclass
class PeriodicCurve:
    """A sampled 1-periodic graph over the circle.

    xs is the uniform grid j/R on [0, 1); evaluation wraps.  residuals
    holds per-node root residuals |p1(F^q(x, y)) - x - p|.  For rotation
    curves, fix_residuals holds the periodicity certificate
    |p2(F^q(x, y)) - y| and fixed_ok records whether it stayed below the
    configured threshold (psi_1 / psi_-1 carry None there).
    """

    xs: np.ndarray
    ys: np.ndarray
    label: str
    residuals: np.ndarray
    rho: Fraction | None = None
    fix_residuals: np.ndarray | None = None
    fixed_ok: bool | None = None

    @property
    def resolution(self) -> int:
        return len(self.xs)

    def evaluate(self, x: float) -> float:
        """Periodic linear interpolation of the sampled graph."""
        r = self.resolution
        t = (float(x) % 1.0) * r
        i = int(t) % r
        frac = t - int(t)
        y0 = self.ys[i]
        y1 = self.ys[(i + 1) % r]
        return float(y0 + frac * (y1 - y0))

    def lipschitz(self) -> float:
        """Max divided difference over adjacent nodes (wrap included)."""
        dy = np.abs(np.diff(self.ys, append=self.ys[0]))
        return float(np.max(dy) * self.resolution)


@dataclass(frozen=True)
class RegionX:
    """Open region between the two characteristic curves.

    The minus region is {(x, y): Psi1(x) < y < PsiMinus1(x)} where that
    slab is nonempty; the plus region is the reverse.  Nonempty regions
    exist only for non-exact maps and wander under the lift.
    """

    sign: str
    lower: PeriodicCurve
    upper: PeriodicCurve

    def contains(self, p) -> bool:
        x, y = _as_point(p)
        return self.lower.evaluate(x) < y < self.upper.evaluate(x)


@dataclass
class PsiFamily:
    """Rotation-ordered family of periodic-orbit curves."""

    rotation_numbers: tuple[Fraction, ...]
    curves: tuple[PeriodicCurve, ...]
    monotone_ok: bool
    ordering_violations: tuple[tuple[Fraction, Fraction, int], ...]

    @property
    def max_root_residual(self) -> float:
        return max(float(np.max(c.residuals)) for c in self.curves)

    @property
    def all_fixed_ok(self) -> bool:
        return all(c.fixed_ok for c in self.curves)


@dataclass(frozen=True)
class RotationEstimate:
    """Finite-horizon rotation number (p1 displacement per step)."""

    value: float
    horizon: int


@dataclass
class ProbeReport:
    """Outcome of the integrability probe (one-sided evidence)."""

    verdict: str
    flux: float
    witness: tuple[float, float] | None = None
    witness_time: int | None = None
    family: PsiFamily | None = None
    grid: tuple[int, int] | None = None
    y_range: tuple[float, float] | None = None
    horizon: int | None = None


def _bisect_root(g, tol: float, monotone_samples: int = 0) -> tuple[float, float]:
    """Root of an increasing function by bracket doubling plus bisection.

    Brackets start at [-1, 1] and double outward to +-2^16 before giving
    up.  With monotone_samples > 0 the bracket is first sampled that many
    times and must be strictly increasing; a decrease raises
    NonMonotoneBracketError since bisection could then land on any of
    several roots.  Returns (root, |g(root)|).
    """
    lo, hi = -1.0, 1.0
    g_lo, g_hi = g(lo), g(hi)
    while g_lo > 0.0:
        lo *= 2.0
        if -lo > BRACKET_LIMIT:
            raise BracketExpansionError(f"no sign change down to {lo}")
        g_lo = g(lo)
    while g_hi < 0.0:
        hi *= 2.0
        if hi > BRACKET_LIMIT:
            raise BracketExpansionError(f"no sign change up to {hi}")
        g_hi = g(hi)
    if monotone_samples > 1:
        prev = None
        for t in np.linspace(lo, hi, monotone_samples):
            val = g(float(t))
            if prev is not None and val <= prev:
                raise NonMonotoneBracketError(
                    f"samples of the bracket [{lo}, {hi}] are not increasing "
                    "(conjugate points present)"
                )
            prev = val
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        g_mid = g(mid)
        if abs(g_mid) < tol:
            return mid, abs(g_mid)
        if g_mid < 0.0:
            lo = mid
        else:
            hi = mid
        if hi - lo <= 4.0 * math.ulp(max(abs(lo), abs(hi), 1.0)):
            mid = 0.5 * (lo + hi)
            g_mid = abs(g(mid))
            if g_mid >= tol:
                raise BracketExpansionError(
                    f"bracket collapsed with residual {g_mid:.3e} >= tol {tol:.3e}"
                )
            return mid, g_mid
    raise BracketExpansionError("bisection failed to meet tolerance")


def psi1(map: LiftedMap, x: float, tol: float = ROOT_TOL) -> float:
    """The unique y with p1(F(x, y)) = x, by bracketed bisection."""
    x = float(x)

    def g(y: float) -> float:
        return map.apply_scalar(x, y)[0] - x

    root, _ = _bisect_root(g, tol)
    return root


def psi_minus1(map: LiftedMap, x: float, tol: float = ROOT_TOL) -> float:
    """Second coordinate of F at (x, psi1(x)): the inverse-map curve."""
    x = float(x)
    y = psi1(map, x, tol)
    return map.apply_scalar(x, y)[1]


def psi1_curve(map: LiftedMap, resolution: int = 256, tol: float = ROOT_TOL) -> PeriodicCurve:
    """Sample Psi1 on the uniform grid j/resolution."""
    xs = np.arange(resolution) / resolution
    ys = np.empty(resolution)
    res = np.empty(resolution)
    for j, x in enumerate(xs):
        y = psi1(map, float(x), tol)
        ys[j] = y
        res[j] = abs(map.apply_scalar(float(x), y)[0] - x)
    return PeriodicCurve(xs=xs, ys=ys, label="Psi1", residuals=res)


def psi_minus1_curve(
    map: LiftedMap, resolution: int = 256, tol: float = ROOT_TOL
) -> PeriodicCurve:
    """Sample PsiMinus1 on the uniform grid j/resolution."""
    xs = np.arange(resolution) / resolution
    ys = np.empty(resolution)
    res = np.empty(resolution)
    for j, x in enumerate(xs):
        y = psi1(map, float(x), tol)
        ys[j] = map.apply_scalar(float(x), y)[1]
        res[j] = abs(map.apply_scalar(float(x), y)[0] - x)
    return PeriodicCurve(xs=xs, ys=ys, label="PsiMinus1", residuals=res)


def region_x(map: LiftedMap, sign: str, resolution: int = 256, tol: float = ROOT_TOL) -> RegionX:
    """Build the region between the characteristic curves for one sign."""
    if sign not in ("minus", "plus"):
        raise ValueError("sign must be 'minus' or 'plus'")
    lower = psi1_curve(map, resolution, tol)
    upper = psi_minus1_curve(map, resolution, tol)
    if sign == "plus":
        lower, upper = upper, lower
    return RegionX(sign=sign, lower=lower, upper=upper)


def flux(map: LiftedMap, resolution: int = 256, tol: float = 1e-12) -> float:
    """Integral of PsiMinus1 - Psi1 over the circle (trapezoid rule).

    Zero (within quadrature and root error) exactly when the map is exact
    symplectic; the drift map returns its drift c.
    """
    if resolution < 2:
        raise ValueError("resolution must be >= 2")
    total = 0.0
    for j in range(resolution):
        x = j / resolution
        y = psi1(map, x, tol)
        total += map.apply_scalar(x, y)[1] - y
    # Periodic trapezoid: endpoints coincide, so the rule is the mean.
    return total / resolution


def rotation_number(map: LiftedMap, p, horizon: int) -> RotationEstimate:
    """Average p1 displacement per step over `horizon` steps."""
    horizon = int(horizon)
    if horizon < 1:
        raise ValueError("horizon must be >= 1")
    x0, y0 = _as_point(p)
    x, y = x0, y0
    for _ in range(horizon):
        x, y = map.apply_scalar(x, y)
    return RotationEstimate(value=(x - x0) / horizon, horizon=horizon)


def periodic_curve(
    map: LiftedMap,
    p: int,
    q: int,
    resolution: int = 256,
    tol: float = ROOT_TOL,
    fix_tol: float = FIX_RESIDUAL_TOL,
    bracket_samples: int = 9,
) -> PeriodicCurve:
    """Graph of the rotation-p/q section: roots of p1(F^q(x, y)) = x + p.

    Each bracket is sampled `bracket_samples` times and must be strictly
    increasing (F^q keeps tilting verticals rightward only in the absence
    of conjugate points); a decrease raises NonMonotoneBracketError.  The
    second-coordinate residual |p2(F^q(x, y)) - y| certifies that the
    section is actually fixed by F^q - (p, 0); when it exceeds fix_tol the
    curve is returned with fixed_ok = False rather than raised, since a
    non-exact map legitimately produces a non-fixed section.
    """
    p = int(p)
    q = int(q)
    if q < 1:
        raise ValueError("q must be a positive integer")
    if math.gcd(p, q) != 1:
        raise ValueError(f"p/q must be in lowest terms, got {p}/{q}")
    rho = Fraction(p, q)

    def forward_q(x: float, y: float) -> tuple[float, float]:
        for _ in range(q):
            x, y = map.apply_scalar(x, y)
        return x, y

    xs = np.arange(resolution) / resolution
    ys = np.empty(resolution)
    root_res = np.empty(resolution)
    fix_res = np.empty(resolution)
    for j, xg in enumerate(xs):
        x = float(xg)

        def g(y: float) -> float:
            return forward_q(x, y)[0] - x - p

        y, gabs = _bisect_root(g, tol, monotone_samples=bracket_samples)
        xq, yq = forward_q(x, y)
        ys[j] = y
        root_res[j] = abs(xq - x - p)
        fix_res[j] = abs(yq - y)
    fixed_ok = bool(np.max(fix_res) <= fix_tol)
    return PeriodicCurve(
        xs=xs,
        ys=ys,
        label=f"PsiRho({p}/{q})",
        residuals=root_res,
        rho=rho,
        fix_residuals=fix_res,
        fixed_ok=fixed_ok,
    )


def _as_fraction(rho) -> Fraction:
    if isinstance(rho, Fraction):
        return rho
    if isinstance(rho, int):
        return Fraction(rho)
    if isinstance(rho, tuple):
        return Fraction(rho[0], rho[1])
    if isinstance(rho, str):
        return Fraction(rho)
    raise ValueError(f"cannot interpret {rho!r} as a rational rotation number")


def psi_family(
    map: LiftedMap,
    rationals: Sequence,
    resolution: int = 256,
    tol: float = ROOT_TOL,
    fix_tol: float = FIX_RESIDUAL_TOL,
) -> PsiFamily:
    """Build periodic curves for a sorted list of rationals and check order.

    monotone_ok requires strict pointwise ordering between consecutive
    curves at every shared node; violations are recorded per pair with
    the number of offending nodes, not raised.
    """
    rhos = tuple(_as_fraction(r) for r in rationals)
    if len(rhos) < 1:
        raise ValueError("need at least one rotation number")
    if any(b <= a for a, b in zip(rhos, rhos[1:])):
        raise ValueError("rotation numbers must be sorted and pairwise distinct")
    curves = tuple(
        periodic_curve(
            map, r.numerator, r.denominator, resolution, tol, fix_tol
        )
        for r in rhos
    )
    violations = []
    for (ra, ca), (rb, cb) in zip(zip(rhos, curves), zip(rhos[1:], curves[1:])):
        bad = int(np.count_nonzero(ca.ys >= cb.ys))
        if bad:
            violations.append((ra, rb, bad))
    return PsiFamily(
        rotation_numbers=rhos,
        curves=curves,
        monotone_ok=not violations,
        ordering_violations=tuple(violations),
    )


def classify_monotonicity(map: LiftedMap, p, horizon: int, zero_tol: float = 1e-12) -> str:
    """Classify the horizontal behaviour of the orbit of p over [-N, N].

    Orbits of a map without conjugate points move horizontally in one of
    three ways: strictly monotonically, with exactly one interior switch
    of direction, or with a single stationary step separating the two
    directions.  The check first rules out an over-conjugate point along
    the sampled segment (single vertical-start pass from F^{-N}(p) over
    2N steps); if one fires the classification is not valid and
    "undetermined" is returned.  Fixed points are reported as "fixed".
    """
    horizon = int(horizon)
    if horizon < 1:
        raise ValueError("horizon must be >= 1")
    back = iterate(map, p, -horizon)
    fwd = iterate(map, p, horizon)
    seg = np.vstack((back[::-1], fwd[1:]))
    px, py = _as_point(p)
    if np.max(np.abs(seg - (px, py))) < 1e-12:
        return FIXED
    if detect_overconjugate(map, tuple(back[-1]), 2 * horizon) is not None:
        return UNDETERMINED
    d = np.diff(seg[:, 0])
    signs = np.where(d > zero_tol, 1, np.where(d < -zero_tol, -1, 0))
    runs: list[int] = []
    for s in signs:
        if not runs or runs[-1] != s:
            runs.append(int(s))
    if runs in ([1], [-1]):
        return MONOTONE
    if runs in ([1, -1], [-1, 1]):
        return SWITCH_INTERIOR
    if runs in ([1, 0, -1], [-1, 0, 1]):
        # The zero run must be a single stationary step.
        if int(np.count_nonzero(signs == 0)) == 1:
            return SWITCH_TOUCHING
    return UNDETERMINED


def integrability_probe(
    map: LiftedMap,
    grid: tuple[int, int] = (64, 64),
    y_range: tuple[float, float] = (-2.0, 2.0),
    horizon: int = 10_000,
    rationals: Sequence = (
        Fraction(-1),
        Fraction(-1, 2),
        Fraction(-1, 3),
        Fraction(0),
        Fraction(1, 3),
        Fraction(1, 2),
        Fraction(1),
    ),
    tol: float = ROOT_TOL,
    fix_tol: float = FIX_RESIDUAL_TOL,
    flux_resolution: int = 256,
    flux_tol: float = FLUX_TOL,
    curve_resolution: int = 256,
) -> ProbeReport:
    """One-sided test for a phase space foliated by invariant circles.

    Order of business: a non-exact map (|flux| > flux_tol) gets
    NOT_APPLICABLE; an over-conjugate point anywhere on the grid within
    the horizon gives CONJUGATE_POINTS_FOUND with the earliest witness;
    otherwise the rational family is built and certified and the verdict
    is NO_OBSTRUCTION_FOUND.  Absence of detection is evidence, not proof.
    """
    nx, ny = int(grid[0]), int(grid[1])
    y0, y1 = float(y_range[0]), float(y_range[1])
    if nx < 1 or ny < 1 or not y0 < y1:
        raise ValueError("grid must be positive and y_range increasing")
    fl = flux(map, flux_resolution)
    report = ProbeReport(
        verdict=VERDICT_NOT_APPLICABLE,
        flux=fl,
        grid=(nx, ny),
        y_range=(y0, y1),
        horizon=int(horizon),
    )
    if abs(fl) > flux_tol:
        return report
    gx = (np.arange(nx) + 0.5) / nx
    gy = y0 + (np.arange(ny) + 0.5) * ((y1 - y0) / ny)
    X, Y = np.meshgrid(gx, gy)
    scan = cocycle_scan(map, X.ravel(), Y.ravel(), int(horizon))
    times = scan.overconj_time
    hit = times > 0
    if np.any(hit):
        t_min = int(times[hit].min())
        idx = int(np.flatnonzero(times == t_min)[0])
        report.verdict = VERDICT_CONJUGATE
        report.witness = (float(X.ravel()[idx]), float(Y.ravel()[idx]))
        report.witness_time = t_min
        return report
    report.verdict = VERDICT_NO_OBSTRUCTION
    report.family = psi_family(map, rationals, curve_resolution, tol, fix_tol)
    return report


def write_curves_csv(curves: Sequence[PeriodicCurve], path, metadata: dict | None = None) -> None:
    """Serialize curves as CSV: columns x, y, residual, label.

    Metadata key=value pairs go into #-prefixed comment lines ahead of the
    header so the file is self-describing.  Floats are written with repr
    so parsing the file back reproduces them bit for bit.
    """
    lines = []
    for key, val in (metadata or {}).items():
        lines.append(f"# {key}={val}")
    lines.append("x,y,residual,label")
    for curve in curves:
        for x, y, r in zip(curve.xs, curve.ys, curve.residuals):
            lines.append(f"{float(x)!r},{float(y)!r},{float(r)!r},{curve.label}")
    text = "\n".join(lines) + "\n"
    with open(path, "w", newline="") as fh:
        fh.write(text)
