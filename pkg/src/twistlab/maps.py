"""Lifted twist maps of the annulus.

A map of the annulus T x R is represented by a lift F: R^2 -> R^2 with
F(x+1, y) = F(x, y) + (1, 0).  Every family in the catalogue is analytic,
area preserving, and has a closed-form inverse and an exact Jacobian, so
angle cocycles downstream are never polluted by finite-difference noise.

Families
--------
shear                F(x, y) = (x + y, y)
drift (DriftShear)   F(x, y) = (x + y, y + c); non-exact, flux c
standard             F(x, y) = (x + y', y') with y' = y - (k/2pi) sin(2pi x)
genfun               same kicked form with V(x) = sum_i a_i cos(2pi i x),
                     i.e. y' = y + V'(x); std:k coincides with a1 = k/(4pi^2)

All coordinates live on the lifted plane; reduction mod 1 happens only at
output time.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import IterationCapError

TWO_PI = 2.0 * math.pi

SHEAR = "shear"
DRIFT = "drift"
STANDARD = "standard"
GENFUN = "genfun"

_FAMILIES = (SHEAR, DRIFT, STANDARD, GENFUN)

# Default orbit-length guard for iterate().
ITERATE_CAP = 10_000_000


def _sinpi(t: float) -> float:
    """sin(pi * t) with exact range reduction.

    Plain sin(2*pi*x) returns ~1.2e-16 at x = 0.5, which is enough to push
    an orbit off a symmetric fixed point and onto its unstable manifold.
    Reducing in t-space keeps half-integer points exact.
    """
    t = math.fmod(t, 2.0)
    if t < 0.0:
        t += 2.0
    sign = 1.0
    if t >= 1.0:
        t -= 1.0
        sign = -1.0
    if t > 0.5:
        t = 1.0 - t
    return sign * math.sin(math.pi * t)


def _cospi(t: float) -> float:
    """cos(pi * t) via the quarter-turn shift of _sinpi."""
    return _sinpi(t + 0.5)


def _sinpi_arr(t: np.ndarray) -> np.ndarray:
    """Vectorized _sinpi (same reduction, same results elementwise)."""
    t = np.fmod(t, 2.0)
    t = np.where(t < 0.0, t + 2.0, t)
    sign = np.where(t >= 1.0, -1.0, 1.0)
    t = np.where(t >= 1.0, t - 1.0, t)
    t = np.where(t > 0.5, 1.0 - t, t)
    return sign * np.sin(np.pi * t)


def _cospi_arr(t: np.ndarray) -> np.ndarray:
    return _sinpi_arr(t + 0.5)


def _as_point(p) -> tuple[float, float]:
    x, y = float(p[0]), float(p[1])
    if not (math.isfinite(x) and math.isfinite(y)):
        raise ValueError(f"point coordinates must be finite, got {(x, y)}")
    return x, y


@dataclass(frozen=True)
class LiftedMap:
    """A catalogued lift with exact derivative and closed-form inverse.

    Parameters
    ----------
    family : str
        One of "shear", "drift", "standard", "genfun".
    params : tuple of float
        Family parameters: () for shear, (c,) for drift, (k,) for standard,
        (a1, ..., am) for genfun.
    twist_sign : int
        +1 for the catalogue maps.  -1 swaps the map with its inverse; it
        exists only as an explicitly inverted test fixture and violates the
        positive-twist requirement of the cocycle engine.
    """

    family: str
    params: tuple[float, ...] = ()
    twist_sign: int = 1

    def __post_init__(self) -> None:
        if self.family not in _FAMILIES:
            raise ValueError(f"unknown map family {self.family!r}")
        if self.twist_sign not in (1, -1):
            raise ValueError("twist_sign must be +1 or -1")
        params = tuple(float(v) for v in self.params)
        if not all(math.isfinite(v) for v in params):
            raise ValueError("map parameters must be finite")
        if self.family == SHEAR and params:
            raise ValueError("shear takes no parameters")
        if self.family == DRIFT and len(params) != 1:
            raise ValueError("drift takes exactly one parameter c")
        if self.family == STANDARD:
            if len(params) != 1:
                raise ValueError("standard takes exactly one parameter k")
            if params[0] < 0.0:
                raise ValueError("standard-map kick strength k must be >= 0")
        if self.family == GENFUN and len(params) < 1:
            raise ValueError("genfun needs at least one cosine coefficient")
        object.__setattr__(self, "params", params)

    # -- constructors ------------------------------------------------------

    @staticmethod
    def shear() -> "LiftedMap":
        return LiftedMap(SHEAR)

    @staticmethod
    def drift_shear(c: float) -> "LiftedMap":
        return LiftedMap(DRIFT, (c,))

    @staticmethod
    def standard(k: float) -> "LiftedMap":
        return LiftedMap(STANDARD, (k,))

    @staticmethod
    def generating_function(*coeffs: float) -> "LiftedMap":
        return LiftedMap(GENFUN, tuple(coeffs))

    def inverted(self) -> "LiftedMap":
        """Swap the map with its inverse (negative-twist test fixture)."""
        return LiftedMap(self.family, self.params, -self.twist_sign)

    # -- kick potential ----------------------------------------------------

    def _vprime(self, x: float) -> float:
        """V'(x) for the kicked families; identically 0 for shear/drift."""
        if self.family == STANDARD:
            k = self.params[0]
            return -(k / TWO_PI) * _sinpi(2.0 * x)
        if self.family == GENFUN:
            s = 0.0
            for i, a in enumerate(self.params, start=1):
                s += TWO_PI * i * a * _sinpi(2.0 * i * x)
            return -s
        return 0.0

    def _vsecond(self, x: float) -> float:
        """V''(x), the kick term appearing in the Jacobian."""
        if self.family == STANDARD:
            return -self.params[0] * _cospi(2.0 * x)
        if self.family == GENFUN:
            s = 0.0
            for i, a in enumerate(self.params, start=1):
                s += (TWO_PI * i) ** 2 * a * _cospi(2.0 * i * x)
            return -s
        return 0.0

    def _vprime_arr(self, x: np.ndarray) -> np.ndarray:
        if self.family == STANDARD:
            k = self.params[0]
            return -(k / TWO_PI) * _sinpi_arr(2.0 * x)
        if self.family == GENFUN:
            s = np.zeros_like(x)
            for i, a in enumerate(self.params, start=1):
                s += TWO_PI * i * a * _sinpi_arr(2.0 * i * x)
            return -s
        return np.zeros_like(x)

    def _vsecond_arr(self, x: np.ndarray) -> np.ndarray:
        if self.family == STANDARD:
            return -self.params[0] * _cospi_arr(2.0 * x)
        if self.family == GENFUN:
            s = np.zeros_like(x)
            for i, a in enumerate(self.params, start=1):
                s += (TWO_PI * i) ** 2 * a * _cospi_arr(2.0 * i * x)
            return -s
        return np.zeros_like(x)

    # -- forward/backward lifts, scalar fast path --------------------------

    def _fwd(self, x: float, y: float) -> tuple[float, float]:
        if self.family == DRIFT:
            return x + y, y + self.params[0]
        if self.family == SHEAR:
            return x + y, y
        y1 = y + self._vprime(x)
        return x + y1, y1

    def _bwd(self, x: float, y: float) -> tuple[float, float]:
        if self.family == DRIFT:
            c = self.params[0]
            return x - y + c, y - c
        if self.family == SHEAR:
            return x - y, y
        x0 = x - y
        return x0, y - self._vprime(x0)

    def apply_scalar(self, x: float, y: float) -> tuple[float, float]:
        """One application of the lift, plain floats (hot-loop path)."""
        if self.twist_sign == 1:
            return self._fwd(x, y)
        return self._bwd(x, y)

    def apply_inverse_scalar(self, x: float, y: float) -> tuple[float, float]:
        if self.twist_sign == 1:
            return self._bwd(x, y)
        return self._fwd(x, y)

    def jacobian_scalar(self, x: float, y: float) -> tuple[float, float, float, float]:
        """Row-major entries (a, b, c, d) of the derivative at (x, y).

        Columns are the images of the horizontal and vertical directions.
        None of the catalogue Jacobians depend on y.
        """
        if self.twist_sign == 1:
            if self.family in (SHEAR, DRIFT):
                return 1.0, 1.0, 0.0, 1.0
            w = self._vsecond(x)
            return 1.0 + w, 1.0, w, 1.0
        # Derivative of the inverse at (x, y): invert the Jacobian of the
        # base map at its preimage; det = 1 keeps this closed-form.
        px, py = self._bwd(x, y)
        if self.family in (SHEAR, DRIFT):
            a, b, c, d = 1.0, 1.0, 0.0, 1.0
        else:
            w = self._vsecond(px)
            a, b, c, d = 1.0 + w, 1.0, w, 1.0
        return d, -b, -c, a

    # -- forward/backward lifts, array path --------------------------------

    def apply_array(self, x: np.ndarray, y: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        """Elementwise application of the lift to coordinate arrays."""
        if self.twist_sign == -1:
            return self._bwd_arr(x, y)
        return self._fwd_arr(x, y)

    def _fwd_arr(self, x: np.ndarray, y: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        if self.family == DRIFT:
            return x + y, y + self.params[0]
        if self.family == SHEAR:
            return x + y, y.copy()
        y1 = y + self._vprime_arr(x)
        return x + y1, y1

    def _bwd_arr(self, x: np.ndarray, y: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        if self.family == DRIFT:
            c = self.params[0]
            return x - y + c, y - c
        if self.family == SHEAR:
            return x - y, y.copy()
        x0 = x - y
        return x0, y - self._vprime_arr(x0)

    def jacobian_array(
        self, x: np.ndarray, y: np.ndarray
    ) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
        """Elementwise Jacobian entries (a, b, c, d) over coordinate arrays."""
        if self.twist_sign == -1:
            px, py = self._bwd_arr(x, y)
            if self.family in (SHEAR, DRIFT):
                one = np.ones_like(x)
                return one, -one, np.zeros_like(x), one
            w = self._vsecond_arr(px)
            one = np.ones_like(x)
            return one, -one, -w, 1.0 + w
        if self.family in (SHEAR, DRIFT):
            one = np.ones_like(x)
            return one, one, np.zeros_like(x), one
        w = self._vsecond_arr(x)
        one = np.ones_like(x)
        return 1.0 + w, one, w, one

    # -- public point API ---------------------------------------------------

    def eval(self, p) -> np.ndarray:
        """F(p) as a length-2 array."""
        x, y = _as_point(p)
        return np.array(self.apply_scalar(x, y))

    def eval_inverse(self, p) -> np.ndarray:
        """F^{-1}(p); eval(eval_inverse(p)) round-trips to machine noise."""
        x, y = _as_point(p)
        return np.array(self.apply_inverse_scalar(x, y))

    def derivative(self, p) -> np.ndarray:
        """The 2x2 derivative of the lift at p (exact, det = 1)."""
        x, y = _as_point(p)
        a, b, c, d = self.jacobian_scalar(x, y)
        return np.array([[a, b], [c, d]])

    def to_spec(self) -> str:
        """The CLI spec string for this map (see parse_map_spec)."""
        if self.family == SHEAR:
            base = "shear"
        elif self.family == DRIFT:
            base = f"drift:c={self.params[0]!r}"
        elif self.family == STANDARD:
            base = f"std:k={self.params[0]!r}"
        else:
            pairs = ",".join(f"a{i}={a!r}" for i, a in enumerate(self.params, start=1))
            base = f"genfun:{pairs}"
        if self.twist_sign == -1:
            return f"inverted({base})"
        return base


def iterate(map: LiftedMap, p, n: int, cap: int = ITERATE_CAP) -> np.ndarray:
    """Orbit segment [p, F(p), ..., F^n(p)] as an (|n|+1, 2) array.

    Negative n walks the inverse map.  Raises IterationCapError when |n|
    exceeds cap.
    """
    n = int(n)
    if abs(n) > cap:
        raise IterationCapError(f"|n| = {abs(n)} exceeds the cap {cap}")
    x, y = _as_point(p)
    out = np.empty((abs(n) + 1, 2))
    out[0] = (x, y)
    step = map.apply_scalar if n >= 0 else map.apply_inverse_scalar
    for i in range(1, abs(n) + 1):
        x, y = step(x, y)
        out[i] = (x, y)
    return out


@dataclass(frozen=True)
class TwistReport:
    """Sampled verification of the positive-twist property."""

    min_twist: float
    argmin: tuple[float, float]
    violations: tuple[tuple[float, float, float], ...]
    samples: int

    @property
    def ok(self) -> bool:
        return self.min_twist > 0.0 and not self.violations


def twist_check(
    map: LiftedMap,
    samples: int = 1000,
    seed: int = 0,
    y_halfwidth: float = 3.0,
) -> TwistReport:
    """Sample the (1,2) Jacobian entry over [0,1] x [-Y, Y].

    Uses a scrambled Halton set so low-probability sign regions are hit
    with far fewer samples than uniform draws would need.  Violations are
    reported, not raised: the fixture maps are supposed to fail this.
    """
    if samples < 1:
        raise ValueError("samples must be >= 1")
    from scipy.stats import qmc

    eng = qmc.Halton(d=2, scramble=True, seed=seed)
    u = eng.random(samples)
    xs = u[:, 0]
    ys = (2.0 * u[:, 1] - 1.0) * y_halfwidth
    _, b, _, _ = map.jacobian_array(xs, ys)
    i_min = int(np.argmin(b))
    bad = np.flatnonzero(b <= 0.0)
    violations = tuple((float(xs[i]), float(ys[i]), float(b[i])) for i in bad)
    return TwistReport(
        min_twist=float(b[i_min]),
        argmin=(float(xs[i_min]), float(ys[i_min])),
        violations=violations,
        samples=samples,
    )


def parse_map_spec(spec: str) -> LiftedMap:
    """Build a LiftedMap from its CLI string.

    Grammar: ``shear`` | ``drift:c=<real>`` | ``std:k=<real>`` |
    ``genfun:a1=<real>,a2=<real>,...``.
    """
    spec = spec.strip()
    if spec == "shear":
        return LiftedMap.shear()
    head, sep, tail = spec.partition(":")
    if not sep or not tail:
        raise ValueError(f"malformed map spec {spec!r}")
    fields = {}
    for item in tail.split(","):
        key, eq, val = item.partition("=")
        if not eq:
            raise ValueError(f"malformed parameter {item!r} in map spec {spec!r}")
        try:
            fields[key.strip()] = float(val)
        except ValueError:
            raise ValueError(f"non-numeric value {val!r} in map spec {spec!r}") from None
    if head == "drift":
        if set(fields) != {"c"}:
            raise ValueError("drift spec takes exactly the parameter c")
        return LiftedMap.drift_shear(fields["c"])
    if head == "std":
        if set(fields) != {"k"}:
            raise ValueError("std spec takes exactly the parameter k")
        return LiftedMap.standard(fields["k"])
    if head == "genfun":
        coeffs: dict[int, float] = {}
        for key, val in fields.items():
            if not (len(key) > 1 and key[0] == "a" and key[1:].isdigit() and int(key[1:]) >= 1):
                raise ValueError(f"genfun parameters look like a1=..., got {key!r}")
            coeffs[int(key[1:])] = val
        top = max(coeffs)
        return LiftedMap.generating_function(*(coeffs.get(i, 0.0) for i in range(1, top + 1)))
    raise ValueError(f"unknown map family {head!r}")

# Module-level constructor aliases for the common import style.
shear = LiftedMap.shear
drift_shear = LiftedMap.drift_shear
standard = LiftedMap.standard
generating_function = LiftedMap.generating_function
