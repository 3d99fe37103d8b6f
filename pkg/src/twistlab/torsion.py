"""Angle-lift cocycle engine.

Everything here measures how the derivative of a positive twist map turns
half-line directions, in turns (full revolutions).  The continuous angle
lift along a tangent orbit is reconstructed one step at a time:

* the vertical direction's one-step variation lies in (-1/2, 0) for a
  positive twist map, which pins its lift outright;
* any other direction's one-step variation is the representative of its
  angle class lying within half a turn of the vertical's, which pins the
  rest (two directions at the same point can never drift half a turn
  apart in one step).

The per-step sums (torsion), their sign structure (conjugate points), and
a vectorized ensemble kernel all build on that single anchoring rule.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import CoincidentPointsError, DegenerateAnchorError, TwistViolationError
from .maps import DRIFT, TWO_PI, LiftedMap, _as_point

# Default tolerances; every op taking them accepts overrides.
VERTICAL_TOL = 1e-9
ANCHOR_TOL = 1e-9
HALF_TURN_WARN_TOL = 1e-6

_INV_TWO_PI = 1.0 / TWO_PI


@dataclass(frozen=True)
class TangentVector:
    """A half-line direction attached to a base point."""

    base: tuple[float, float]
    dir: tuple[float, float]

    def __post_init__(self) -> None:
        bx, by = _as_point(self.base)
        dx, dy = float(self.dir[0]), float(self.dir[1])
        norm = math.hypot(dx, dy)
        if not math.isfinite(norm) or norm == 0.0:
            raise ValueError("direction must be a nonzero finite vector")
        if abs(norm - 1.0) > 1e-12:
            dx, dy = dx / norm, dy / norm
        object.__setattr__(self, "base", (bx, by))
        object.__setattr__(self, "dir", (dx, dy))


VERTICAL = (0.0, 1.0)


def _as_dir(w) -> tuple[float, float]:
    """Coerce a direction argument (sequence or TangentVector) to floats."""
    if isinstance(w, TangentVector):
        return w.dir
    wx, wy = float(w[0]), float(w[1])
    norm = math.hypot(wx, wy)
    if not math.isfinite(norm) or norm == 0.0:
        raise ValueError("direction must be a nonzero finite vector")
    return wx / norm, wy / norm


def angle_from_vertical(w) -> float:
    """Oriented angle from the vertical (0,1) to w, in turns.

    Counterclockwise positive, principal representative in (-1/2, 1/2].
    The vector need not be normalized; the zero vector is rejected.
    """
    wx, wy = float(w[0]), float(w[1])
    if wx == 0.0 and wy == 0.0:
        raise ValueError("angle of the zero vector is undefined")
    if not (math.isfinite(wx) and math.isfinite(wy)):
        raise ValueError("direction coordinates must be finite")
    a = math.atan2(-wx, wy) * _INV_TWO_PI
    if a <= -0.5:
        a += 1.0
    return a


def vertical_step_variation(map: LiftedMap, p) -> float:
    """One-step angle variation of the vertical direction at p, in turns.

    For a positive twist map the image of the vertical tilts strictly
    rightward, so the variation has a unique representative in (-1/2, 0);
    that representative is returned.  A non-positive (1,2) Jacobian entry
    raises TwistViolationError.
    """
    x, y = _as_point(p)
    _, b, _, d = map.jacobian_scalar(x, y)
    if b <= 0.0:
        raise TwistViolationError(
            f"twist entry {b!r} <= 0 at {(x, y)}: not a positive twist map here"
        )
    return math.atan2(-b, d) * _INV_TWO_PI


def step_variation(map: LiftedMap, p, w) -> float:
    """One-step angle variation of direction w at p, in turns.

    The representative of the class angle(DF w) - angle(w) is anchored
    within half a turn of vertical_step_variation(map, p), which places it
    in (-1, 1/2).  An anchor gap within ANCHOR_TOL of half a turn raises
    DegenerateAnchorError (orientation preservation forbids exactly 1/2).
    """
    x, y = _as_point(p)
    wx, wy = _as_dir(w)
    a, b, c, d = map.jacobian_scalar(x, y)
    if b <= 0.0:
        raise TwistViolationError(
            f"twist entry {b!r} <= 0 at {(x, y)}: not a positive twist map here"
        )
    dv = math.atan2(-b, d) * _INV_TWO_PI
    iwx = a * wx + b * wy
    iwy = c * wx + d * wy
    raw = angle_from_vertical((iwx, iwy)) - angle_from_vertical((wx, wy))
    delta = raw + round(dv - raw)
    if abs(delta - dv) >= 0.5 - ANCHOR_TOL:
        raise DegenerateAnchorError(
            f"step variation of {(wx, wy)} at {(x, y)} sits {delta - dv:+.3e} turns "
            "from the vertical step: anchored representative is ambiguous"
        )
    return delta


@dataclass
class TorsionTrace:
    """Per-step angle variations along one tangent orbit.

    cumulative[k] equals the running sum of steps[0:k] in index order, so
    cumulative[0] = 0 and cumulative has one more entry than steps.
    points and directions hold the transported base orbit and unit
    directions, points[i] = F^i(p).
    """

    steps: np.ndarray
    cumulative: np.ndarray
    points: np.ndarray
    directions: np.ndarray

    @property
    def n(self) -> int:
        return len(self.steps)

    @property
    def torsion(self) -> float:
        """Finite-time torsion: cumulative[n] / n."""
        return float(self.cumulative[-1]) / self.n


def torsion_trace(map: LiftedMap, p, w=VERTICAL, n: int = 1) -> TorsionTrace:
    """Accumulate n one-step variations along the tangent orbit of (p, w).

    The direction is transported by DF and renormalized every step; each
    steps[i] equals step_variation at the transported pair, and the
    cumulative array is the plain running sum in the same order.
    """
    n = int(n)
    if n < 1:
        raise ValueError("n must be >= 1")
    x, y = _as_point(p)
    wx, wy = _as_dir(w)
    steps = np.empty(n)
    cumulative = np.empty(n + 1)
    points = np.empty((n + 1, 2))
    directions = np.empty((n + 1, 2))
    cumulative[0] = 0.0
    points[0] = (x, y)
    directions[0] = (wx, wy)
    cum = 0.0
    atan2 = math.atan2
    hypot = math.hypot
    for i in range(n):
        a, b, c, d = map.jacobian_scalar(x, y)
        if b <= 0.0:
            raise TwistViolationError(
                f"twist entry {b!r} <= 0 at {(x, y)}: not a positive twist map here"
            )
        iwx = a * wx + b * wy
        iwy = c * wx + d * wy
        dv = atan2(-b, d) * _INV_TWO_PI
        th0 = atan2(-wx, wy) * _INV_TWO_PI
        if th0 <= -0.5:
            th0 += 1.0
        th1 = atan2(-iwx, iwy) * _INV_TWO_PI
        if th1 <= -0.5:
            th1 += 1.0
        raw = th1 - th0
        delta = raw + round(dv - raw)
        if abs(delta - dv) >= 0.5 - ANCHOR_TOL:
            raise DegenerateAnchorError(
                f"ambiguous anchored representative at step {i} from {(x, y)}"
            )
        cum += delta
        steps[i] = delta
        cumulative[i + 1] = cum
        x, y = map.apply_scalar(x, y)
        norm = hypot(iwx, iwy)
        wx, wy = iwx / norm, iwy / norm
        points[i + 1] = (x, y)
        directions[i + 1] = (wx, wy)
    return TorsionTrace(steps, cumulative, points, directions)


@dataclass(frozen=True)
class TorsionEstimate:
    """Finite-horizon torsion with a tail-stability diagnostic."""

    value: float
    last_window_drift: float
    horizon: int
    window: int


def asymptotic_torsion(
    map: LiftedMap, p, horizon: int, window: int = 100, w=VERTICAL
) -> TorsionEstimate:
    """Torsion at time `horizon` plus the drift over the last `window`.

    The drift |torsion_N - torsion_{N-window}| is a convergence
    diagnostic only; no limit is asserted.
    """
    horizon = int(horizon)
    window = int(window)
    if not 1 <= window <= horizon:
        raise ValueError("need horizon >= window >= 1")
    trace = torsion_trace(map, p, w, horizon)
    value = trace.torsion
    earlier = float(trace.cumulative[horizon - window])
    if horizon == window:
        drift = abs(value)
    else:
        drift = abs(value - earlier / (horizon - window))
    return TorsionEstimate(value, drift, horizon, window)


class _CocycleWalker:
    """Streaming scalar cocycle from a vertical start (detector core)."""

    __slots__ = ("map", "x", "y", "wx", "wy", "cum", "step")

    def __init__(self, map: LiftedMap, p) -> None:
        self.map = map
        self.x, self.y = _as_point(p)
        self.wx, self.wy = 0.0, 1.0
        self.cum = 0.0
        self.step = 0

    def advance(self) -> None:
        a, b, c, d = self.map.jacobian_scalar(self.x, self.y)
        if b <= 0.0:
            raise TwistViolationError(
                f"twist entry {b!r} <= 0 at {(self.x, self.y)}"
            )
        wx, wy = self.wx, self.wy
        iwx = a * wx + b * wy
        iwy = c * wx + d * wy
        dv = math.atan2(-b, d) * _INV_TWO_PI
        th0 = math.atan2(-wx, wy) * _INV_TWO_PI
        if th0 <= -0.5:
            th0 += 1.0
        th1 = math.atan2(-iwx, iwy) * _INV_TWO_PI
        if th1 <= -0.5:
            th1 += 1.0
        raw = th1 - th0
        delta = raw + round(dv - raw)
        if abs(delta - dv) >= 0.5 - ANCHOR_TOL:
            raise DegenerateAnchorError(
                f"ambiguous anchored representative at step {self.step}"
            )
        self.cum += delta
        self.x, self.y = self.map.apply_scalar(self.x, self.y)
        norm = math.hypot(iwx, iwy)
        self.wx, self.wy = iwx / norm, iwy / norm
        self.step += 1


def detect_overconjugate(map: LiftedMap, p, horizon: int) -> int | None:
    """First n <= horizon with vertical-start cumulative angle < -1/2.

    Once the cumulative drops below -1/2 it must stay there; that is
    re-checked for the next 50 steps (within the horizon) and a violation
    raises RuntimeError since it would mean the engine miscounted.
    """
    horizon = int(horizon)
    if horizon < 1:
        raise ValueError("horizon must be >= 1")
    walker = _CocycleWalker(map, p)
    found = None
    while walker.step < horizon:
        walker.advance()
        if walker.cum < -0.5:
            found = walker.step
            break
    if found is None:
        return None
    until = min(found + 50, horizon)
    while walker.step < until:
        walker.advance()
        if not walker.cum < -0.5:
            raise RuntimeError(
                f"over-conjugate persistence violated at step {walker.step} "
                f"(cumulative {walker.cum!r}); this indicates an engine bug"
            )
    return found


def _conjugate_scan(
    map: LiftedMap, p, horizon: int, tol: float
) -> tuple[int, int, float] | None:
    """Shared core for detect_conjugate: (n, k, cumulative[n]) or None."""
    horizon = int(horizon)
    if horizon < 1:
        raise ValueError("horizon must be >= 1")
    if not tol > 0.0:
        raise ValueError("tol must be positive")
    walker = _CocycleWalker(map, p)
    prev = None
    while walker.step < horizon:
        walker.advance()
        wx = walker.wx
        crossed = abs(wx) < tol or (prev is not None and (wx < 0.0) != (prev < 0.0))
        if crossed:
            k = round(-2.0 * walker.cum)
            if k >= 1 and abs(walker.cum + 0.5 * k) < 0.25:
                return walker.step, k, walker.cum
        prev = wx
    return None


def detect_conjugate(
    map: LiftedMap, p, horizon: int, tol: float = VERTICAL_TOL
) -> tuple[int, int] | None:
    """First verticality of the transported vertical direction.

    Detection is by sign change (or |first component| < tol) of the
    transported direction's first component, which brackets the exact
    crossing between integer times; the returned n is the first index
    past it.  k counts half-turns: k = round(-2 cumulative[n]), accepted
    when k >= 1 and cumulative[n] is within 1/4 of -k/2.
    """
    hit = _conjugate_scan(map, p, horizon, tol)
    if hit is None:
        return None
    n, k, _ = hit
    return n, k


@dataclass(frozen=True)
class ConjugateReport:
    """Joint conjugate / over-conjugate diagnostics for one start point."""

    first_overconjugate: int | None
    first_conjugate: tuple[int, int] | None
    cumulative_at_detection: float | None
    horizon: int
    tol: float


def conjugate_report(
    map: LiftedMap, p, horizon: int, tol: float = VERTICAL_TOL
) -> ConjugateReport:
    """Run both detectors; cumulative is reported at the earliest hit."""
    over = detect_overconjugate(map, p, horizon)
    hit = _conjugate_scan(map, p, horizon, tol)
    cum_at = None
    if hit is not None and (over is None or hit[0] <= over):
        cum_at = hit[2]
    elif over is not None:
        trace = torsion_trace(map, p, VERTICAL, over)
        cum_at = float(trace.cumulative[over])
    return ConjugateReport(
        first_overconjugate=over,
        first_conjugate=None if hit is None else (hit[0], hit[1]),
        cumulative_at_detection=cum_at,
        horizon=int(horizon),
        tol=tol,
    )


def jacobi_conjugate_oracle(map: LiftedMap, p, horizon: int) -> int | None:
    """Conjugate time from the discrete Jacobi-field recursion.

    For a kick map with generating function h(x, x') = (x'-x)^2/2 + V(x)
    the tangent dynamics of the vertical reduces to the three-term
    recursion xi_{n+1} = (2 + V''(x_n)) xi_n - xi_{n-1} with xi_0 = 0 and
    xi_1 = dF_12(p) along the configuration orbit x_n.  xi_n is
    proportional to the first component of DF^n(p) v, so its first sign
    change or zero at n >= 2 must agree with detect_conjugate up to the
    one-index bracketing slack.

    Only families with a generating function qualify (shear, standard,
    genfun, not inverted); the drift map is not exact and has none.
    """
    horizon = int(horizon)
    if horizon < 2:
        raise ValueError("horizon must be >= 2")
    if map.twist_sign != 1 or map.family == DRIFT:
        raise ValueError(f"map {map.to_spec()!r} has no generating function")
    x, y = _as_point(p)
    xi_prev = 0.0
    _, xi, _, _ = map.jacobian_scalar(x, y)
    x, y = map.apply_scalar(x, y)
    for n in range(2, horizon + 1):
        # x currently holds x_{n-1}; the step to xi_n reads V'' there.
        xi_next = (2.0 + map._vsecond(x)) * xi - xi_prev
        if xi_next == 0.0 or (xi_next < 0.0) != (xi < 0.0):
            return n
        scale = abs(xi_next)
        if scale > 1e100:
            xi_next /= scale
            xi = xi / scale
        xi_prev, xi = xi, xi_next
        x, y = map.apply_scalar(x, y)
    return None


@dataclass(frozen=True)
class LinkingEstimate:
    """Finite-time linking of two orbits, with a trust flag."""

    value: float
    near_half_turn: bool
    n: int


def linking_number(map: LiftedMap, p, q, n: int) -> LinkingEstimate:
    """Average turning of the difference vector F^i(q) - F^i(p), in turns.

    Each per-step angle class takes its representative in (-1/2, 1/2);
    that is only faithful while the difference vector turns less than
    half a turn per step, so any step landing within HALF_TURN_WARN_TOL
    of the boundary sets near_half_turn.  Coincident points are rejected.
    """
    n = int(n)
    if n < 1:
        raise ValueError("n must be >= 1")
    px, py = _as_point(p)
    qx, qy = _as_point(q)
    if px == qx and py == qy:
        raise CoincidentPointsError("linking needs two distinct points")
    total = 0.0
    flagged = False
    th_prev = angle_from_vertical((qx - px, qy - py))
    for _ in range(n):
        px, py = map.apply_scalar(px, py)
        qx, qy = map.apply_scalar(qx, qy)
        dx, dy = qx - px, qy - py
        if dx == 0.0 and dy == 0.0:
            raise CoincidentPointsError("orbits collided to machine precision")
        th = angle_from_vertical((dx, dy))
        raw = th - th_prev
        rep = raw - round(raw)
        if abs(abs(rep) - 0.5) <= HALF_TURN_WARN_TOL:
            flagged = True
        total += rep
        th_prev = th
    return LinkingEstimate(value=total / n, near_half_turn=flagged, n=n)


@dataclass
class CocycleScan:
    """Vectorized vertical-start cocycle results over an ensemble.

    overconj_time is -1 where the cumulative never dropped below -1/2 and
    -2 on lanes flagged invalid (twist violation or degenerate anchor);
    cumulative is NaN there.  history, when requested, holds the full
    cumulative record with history[k] = cumulative after k steps.
    """

    cumulative: np.ndarray
    overconj_time: np.ndarray
    final_x: np.ndarray
    final_y: np.ndarray
    displacement: np.ndarray
    valid: np.ndarray
    n: int
    history: np.ndarray | None = None


def cocycle_scan(
    map: LiftedMap,
    x: np.ndarray,
    y: np.ndarray,
    n: int,
    wx: np.ndarray | None = None,
    wy: np.ndarray | None = None,
    keep_history: bool = False,
) -> CocycleScan:
    """Run the anchored cocycle over many start points at once.

    Elementwise numpy version of torsion_trace's loop (same anchoring
    rule, same renormalization), used by the ensemble statistics and the
    integrability probe.  Lanes are independent: each output entry
    depends only on its own start point, so chunked and whole-array
    executions produce bit-identical results.

    Directions default to vertical; custom unit directions can be passed
    per lane.  Invalid lanes (twist violation, ambiguous anchor) are
    masked out instead of raising.
    """
    n = int(n)
    if n < 1:
        raise ValueError("n must be >= 1")
    x = np.array(x, dtype=float)
    y = np.array(y, dtype=float)
    if x.shape != y.shape or x.ndim != 1:
        raise ValueError("x and y must be 1-d arrays of equal length")
    m = x.shape[0]
    if wx is None:
        wx = np.zeros(m)
        wy = np.ones(m)
    else:
        wx = np.array(wx, dtype=float)
        wy = np.array(wy, dtype=float)
        norm = np.hypot(wx, wy)
        wx = wx / norm
        wy = wy / norm
    x0 = x.copy()
    cum = np.zeros(m)
    oc = np.full(m, -1, dtype=np.int64)
    valid = np.ones(m, dtype=bool)
    history = np.zeros((n + 1, m)) if keep_history else None
    for step in range(1, n + 1):
        a, b, c, d = map.jacobian_array(x, y)
        valid &= b > 0.0
        iwx = a * wx + b * wy
        iwy = c * wx + d * wy
        dv = np.arctan2(-b, d) * _INV_TWO_PI
        th0 = np.arctan2(-wx, wy) * _INV_TWO_PI
        th0 = np.where(th0 <= -0.5, th0 + 1.0, th0)
        th1 = np.arctan2(-iwx, iwy) * _INV_TWO_PI
        th1 = np.where(th1 <= -0.5, th1 + 1.0, th1)
        raw = th1 - th0
        delta = raw + np.rint(dv - raw)
        valid &= np.abs(delta - dv) < 0.5 - ANCHOR_TOL
        cum = cum + delta
        np.copyto(oc, step, where=(oc == -1) & (cum < -0.5))
        x, y = map.apply_array(x, y)
        norm = np.hypot(iwx, iwy)
        wx = iwx / norm
        wy = iwy / norm
        if keep_history:
            history[step] = cum
    cum = np.where(valid, cum, np.nan)
    oc = np.where(valid, oc, -2)
    displacement = np.where(valid, x - x0, np.nan)
    if keep_history:
        history[:, ~valid] = np.nan
    return CocycleScan(
        cumulative=cum,
        overconj_time=oc,
        final_x=x,
        final_y=y,
        displacement=displacement,
        valid=valid,
        n=n,
        history=history,
    )
