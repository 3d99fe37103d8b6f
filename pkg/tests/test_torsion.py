"""Angle cocycle engine: traces, detectors, oracles, linking, scans."""

import math

import numpy as np
import pytest

from twistlab import (
    CoincidentPointsError,
    DegenerateAnchorError,
    TwistViolationError,
    angle_from_vertical,
    asymptotic_torsion,
    cocycle_scan,
    conjugate_report,
    detect_conjugate,
    detect_overconjugate,
    drift_shear,
    generating_function,
    iterate,
    jacobi_conjugate_oracle,
    linking_number,
    shear,
    standard,
    step_variation,
    torsion_trace,
    vertical_step_variation,
)

TWO_PI = 2.0 * math.pi
SQ2 = math.sqrt(2.0)

POSITIVE_TWIST_MAPS = [
    shear(),
    drift_shear(0.25),
    standard(0.5),
    standard(1.0),
    generating_function(0.02, -0.007),
]


def shear_cumulative(n):
    # transported vertical under the shear is (n, 1) up to scale
    return -math.atan(n) / TWO_PI


def test_angle_from_vertical_examples():
    assert angle_from_vertical((0.0, 1.0)) == 0.0
    assert angle_from_vertical((1.0 / SQ2, 1.0 / SQ2)) == pytest.approx(-0.125, abs=1e-15)
    assert angle_from_vertical((1.0, 0.0)) == pytest.approx(-0.25, abs=1e-15)
    assert angle_from_vertical((-1.0, 0.0)) == pytest.approx(0.25, abs=1e-15)
    # straight down gets the closed end of (-1/2, 1/2]
    assert angle_from_vertical((0.0, -1.0)) == pytest.approx(0.5, abs=1e-15)
    with pytest.raises(ValueError):
        angle_from_vertical((0.0, 0.0))


def test_angle_range_property():
    rng = np.random.default_rng(1)
    for _ in range(1000):
        t = rng.uniform(0, TWO_PI)
        a = angle_from_vertical((math.cos(t), math.sin(t)))
        assert -0.5 < a <= 0.5


def test_vertical_step_examples():
    assert vertical_step_variation(shear(), (2.0, -7.0)) == pytest.approx(-0.125, abs=1e-15)
    assert vertical_step_variation(standard(1.0), (0.0, 0.0)) == pytest.approx(-0.125, abs=1e-15)
    assert vertical_step_variation(standard(1.0), (0.5, 0.0)) == pytest.approx(-0.125, abs=1e-15)


@pytest.mark.parametrize("m", POSITIVE_TWIST_MAPS, ids=lambda m: m.to_spec())
def test_vertical_step_in_open_interval(m):
    rng = np.random.default_rng(13)
    for _ in range(500):
        p = tuple(rng.uniform(-2, 2, size=2))
        d = vertical_step_variation(m, p)
        assert -0.5 < d < 0.0


def test_vertical_step_twist_violation():
    with pytest.raises(TwistViolationError):
        vertical_step_variation(shear().inverted(), (0.0, 0.0))


def test_step_variation_examples():
    m = shear()
    assert step_variation(m, (0.0, 0.0), (1.0, 0.0)) == pytest.approx(0.0, abs=1e-15)
    assert step_variation(m, (0.0, 0.0), (0.0, 1.0)) == pytest.approx(-0.125, abs=1e-15)
    assert step_variation(m, (0.0, 0.0), (-1.0 / SQ2, 1.0 / SQ2)) == pytest.approx(
        -0.125, abs=1e-12
    )


@pytest.mark.parametrize("m", POSITIVE_TWIST_MAPS, ids=lambda m: m.to_spec())
def test_step_variation_in_open_interval(m):
    rng = np.random.default_rng(17)
    for _ in range(500):
        p = tuple(rng.uniform(-2, 2, size=2))
        t = rng.uniform(0, TWO_PI)
        d = step_variation(m, p, (math.cos(t), math.sin(t)))
        assert -1.0 < d < 0.5


def test_trace_invariants():
    m = standard(1.0)
    tr = torsion_trace(m, (0.13, -0.22), (0.3, 0.7), 40)
    assert tr.n == 40
    assert len(tr.steps) == 40
    assert len(tr.cumulative) == 41
    assert tr.cumulative[0] == 0.0
    # cumulative is the plain running sum in the same order, bit for bit
    run = 0.0
    for k in range(40):
        run += tr.steps[k]
        assert tr.cumulative[k + 1] == run
    assert tr.torsion == tr.cumulative[-1] / 40
    orbit = iterate(m, (0.13, -0.22), 40)
    assert np.array_equal(tr.points, orbit)
    norms = np.hypot(tr.directions[:, 0], tr.directions[:, 1])
    assert norms == pytest.approx(np.ones(41), abs=1e-12)


def test_trace_shear_closed_form():
    tr = torsion_trace(shear(), (0.4, 0.9), (0.0, 1.0), 4)
    assert tr.cumulative[4] == pytest.approx(shear_cumulative(4), abs=1e-12)
    assert tr.torsion == pytest.approx(shear_cumulative(4) / 4, abs=1e-12)
    assert tr.steps[0] == pytest.approx(-0.125, abs=1e-15)
    for n in (1, 2, 3, 4):
        assert tr.cumulative[n] == pytest.approx(shear_cumulative(n), abs=1e-12)


def test_trace_hyperbolic_fixed_point():
    tr = torsion_trace(standard(1.0), (0.5, 0.0), (0.0, 1.0), 50)
    assert np.all(tr.cumulative[1:] > -0.25)
    assert np.all(tr.cumulative[1:] < 0.0)
    assert -0.005 < tr.torsion < 0.0


def test_trace_hyperbolic_against_power_iteration():
    """The transported vertical's winding must match a direct matrix
    cocycle with angle unwrapping."""
    m = standard(1.0)
    p = (0.5, 0.0)
    n = 50
    v = np.array([0.0, 1.0])
    x, y = p
    angles = [math.atan2(v[0], v[1])]
    for _ in range(n):
        a, b, c, d = m.jacobian_scalar(x, y)
        v = np.array([a * v[0] + b * v[1], c * v[0] + d * v[1]])
        v /= np.hypot(*v)
        angles.append(math.atan2(v[0], v[1]))
        x, y = m.apply_scalar(x, y)
    unwrapped = np.unwrap(np.array(angles))
    oracle = -(unwrapped - unwrapped[0]) / TWO_PI
    tr = torsion_trace(m, p, (0.0, 1.0), n)
    assert tr.cumulative == pytest.approx(oracle, abs=1e-9)


def test_cocycle_additivity():
    m = standard(1.0)
    p = (0.31, 0.12)
    w = (0.6, 0.8)
    a, b = 37, 63
    whole = torsion_trace(m, p, w, a + b)
    first = torsion_trace(m, p, w, a)
    second = torsion_trace(
        m, tuple(first.points[-1]), tuple(first.directions[-1]), b
    )
    lhs = whole.cumulative[a + b]
    rhs = first.cumulative[a] + second.cumulative[b]
    assert abs(lhs - rhs) < 1e-10 * (a + b)


@pytest.mark.parametrize("m", POSITIVE_TWIST_MAPS, ids=lambda m: m.to_spec())
def test_anchor_control_two_directions(m):
    """Cumulative lifts from two directions at the same point never
    drift half a turn apart."""
    rng = np.random.default_rng(29)
    for _ in range(20):
        p = tuple(rng.uniform(-1, 1, size=2))
        t1, t2 = rng.uniform(0, TWO_PI, size=2)
        c1 = torsion_trace(m, p, (math.cos(t1), math.sin(t1)), 200).cumulative
        c2 = torsion_trace(m, p, (math.cos(t2), math.sin(t2)), 200).cumulative
        assert np.max(np.abs(c1 - c2)) < 0.5


def test_asymptotic_shear():
    est = asymptotic_torsion(shear(), (1.7, 0.4), 10_000)
    want = shear_cumulative(10_000) / 10_000
    assert est.value == pytest.approx(want, abs=1e-12)
    assert abs(est.value) < 3e-5
    assert est.last_window_drift < 1e-6
    assert est.horizon == 10_000


def test_asymptotic_elliptic():
    est = asymptotic_torsion(standard(1.0), (0.0, 0.0), 10_000)
    assert est.value == pytest.approx(-1.0 / 6.0, abs=1e-4)
    # frozen regression value from a direct constant-matrix winding
    assert est.value == pytest.approx(-0.1666625, abs=1e-6)


def test_asymptotic_elliptic_matrix_oracle():
    """At the elliptic fixed point the cocycle is one constant matrix;
    its winding over N steps pins torsion to -arccos(trace/2)/2pi."""
    rho = math.acos(0.5) / TWO_PI
    n = 10_000
    v = np.array([0.0, 1.0])
    angles = [math.atan2(v[0], v[1])]
    for _ in range(n):
        v = np.array([v[1], -v[0] + v[1]])  # [[0,1],[-1,1]] @ v
        v /= np.hypot(*v)
        angles.append(math.atan2(v[0], v[1]))
    winding = -(np.unwrap(np.array(angles))[-1] - angles[0]) / TWO_PI
    assert winding / n == pytest.approx(-rho, abs=1e-3)
    est = asymptotic_torsion(standard(1.0), (0.0, 0.0), n)
    assert est.value == pytest.approx(winding / n, abs=1e-9)


def test_asymptotic_hyperbolic():
    est = asymptotic_torsion(standard(1.0), (0.5, 0.0), 10_000)
    assert -1e-4 < est.value <= 0.0


def test_asymptotic_validation():
    with pytest.raises(ValueError):
        asymptotic_torsion(shear(), (0, 0), 10, window=20)


def test_detect_overconjugate_examples():
    assert detect_overconjugate(shear(), (0.2, 1.4), 100_000) is None
    n = detect_overconjugate(standard(1.0), (0.02, 0.0), 100)
    assert n is not None and n <= 10
    assert n == 4
    assert detect_overconjugate(drift_shear(0.25), (0.7, -0.3), 10_000) is None


def test_overconjugate_is_first_crossing():
    m = standard(1.0)
    p = (0.02, 0.0)
    n = detect_overconjugate(m, p, 100)
    cum = torsion_trace(m, p, (0.0, 1.0), 100).cumulative
    assert cum[n] < -0.5
    assert np.all(cum[:n] >= -0.5)


def test_overconjugate_persistence():
    m = standard(1.0)
    rng = np.random.default_rng(41)
    for _ in range(50):
        p = tuple(rng.uniform(-0.1, 0.1, size=2))
        n = detect_overconjugate(m, p, 200)
        if n is None:
            continue
        cum = torsion_trace(m, p, (0.0, 1.0), min(200, n + 50)).cumulative
        assert np.all(cum[n:] < -0.5)


def test_detect_conjugate_examples():
    assert detect_conjugate(shear(), (0.0, 0.0), 100_000) is None
    hit = detect_conjugate(standard(1.0), (0.02, 0.0), 100)
    assert hit is not None
    n, k = hit
    assert k == 1
    oc = detect_overconjugate(standard(1.0), (0.02, 0.0), 100)
    assert abs(n - oc) <= 1
    assert detect_conjugate(standard(1.0), (0.5, 0.0), 1000) is None


def test_detect_conjugate_cumulative_window():
    m = standard(1.0)
    hit = detect_conjugate(m, (0.02, 0.0), 100)
    n, k = hit
    cum = torsion_trace(m, (0.02, 0.0), (0.0, 1.0), n).cumulative
    assert abs(cum[n] + k / 2.0) < 0.25


def test_conjugate_report_consistency():
    rep = conjugate_report(standard(1.0), (0.02, 0.0), 100)
    assert rep.first_overconjugate == 4
    assert rep.first_conjugate == (4, 1)
    assert rep.cumulative_at_detection < -0.25
    assert rep.horizon == 100

    rep = conjugate_report(shear(), (0.3, 0.3), 1000)
    assert rep.first_overconjugate is None
    assert rep.first_conjugate is None


def test_jacobi_oracle_examples():
    assert jacobi_conjugate_oracle(shear(), (0.1, 0.5), 1000) is None
    n_jac = jacobi_conjugate_oracle(standard(1.0), (0.02, 0.0), 100)
    n_det = detect_conjugate(standard(1.0), (0.02, 0.0), 100)[0]
    assert abs(n_jac - n_det) <= 1
    assert jacobi_conjugate_oracle(standard(1.0), (0.5, 0.0), 1000) is None


def test_jacobi_oracle_rejects_families_without_h():
    with pytest.raises(ValueError):
        jacobi_conjugate_oracle(drift_shear(0.25), (0.0, 0.0), 10)
    with pytest.raises(ValueError):
        jacobi_conjugate_oracle(standard(1.0).inverted(), (0.0, 0.0), 10)


@pytest.mark.parametrize("k", [0.5, 1.0, 1.5])
def test_jacobi_agrees_with_detector(k):
    m = standard(k)
    rng = np.random.default_rng(int(k * 100))
    for _ in range(200):
        p = tuple(rng.uniform([-0.5, -1.0], [0.5, 1.0]))
        jac = jacobi_conjugate_oracle(m, p, 100)
        det = detect_conjugate(m, p, 100)
        if jac is None:
            assert det is None
        else:
            assert det is not None
            assert abs(det[0] - jac) <= 1


def test_conjugate_implies_overconjugate_within_two():
    m = standard(1.0)
    rng = np.random.default_rng(43)
    fired = 0
    for _ in range(100):
        p = tuple(rng.uniform([-0.2, -0.3], [0.2, 0.3]))
        hit = detect_conjugate(m, p, 100)
        if hit is None:
            continue
        fired += 1
        oc = detect_overconjugate(m, p, 110)
        assert oc is not None
        assert oc <= hit[0] + 2
    assert fired > 10


def test_linking_examples():
    est = linking_number(shear(), (0.0, 0.0), (0.0, 0.5), 1)
    assert est.value == pytest.approx(-0.125, abs=1e-12)
    for n in (1, 5, 40):
        est = linking_number(shear(), (0.0, 0.0), (0.0, 0.5), n)
        assert est.value == pytest.approx(-math.atan(n) / (TWO_PI * n), abs=1e-12)
    # integer-translate pairs and horizontal pairs never link
    assert linking_number(shear(), (0.0, 0.3), (1.0, 0.3), 37).value == 0.0
    assert linking_number(shear(), (0.0, 0.0), (0.5, 0.0), 37).value == 0.0


def test_linking_validation():
    with pytest.raises(CoincidentPointsError):
        linking_number(shear(), (0.1, 0.2), (0.1, 0.2), 5)
    est = linking_number(shear(), (0.0, 0.0), (0.0, 0.5), 10)
    assert est.near_half_turn is False
    assert est.n == 10


def test_cocycle_scan_matches_scalar_trace():
    m = standard(1.0)
    rng = np.random.default_rng(59)
    xs = rng.uniform(-0.5, 0.5, size=32)
    ys = rng.uniform(-0.5, 0.5, size=32)
    scan = cocycle_scan(m, xs, ys, 60, keep_history=True)
    assert scan.n == 60
    for i in range(32):
        tr = torsion_trace(m, (xs[i], ys[i]), (0.0, 1.0), 60)
        assert scan.cumulative[i] == pytest.approx(tr.cumulative[-1], abs=1e-12)
        assert scan.history[:, i] == pytest.approx(tr.cumulative, abs=1e-12)
        oc = detect_overconjugate(m, (xs[i], ys[i]), 60)
        assert scan.overconj_time[i] == (-1 if oc is None else oc)
        assert scan.final_x[i] == tr.points[-1][0]
        assert scan.final_y[i] == tr.points[-1][1]
        assert scan.displacement[i] == pytest.approx(
            tr.points[-1][0] - xs[i], abs=0
        )
    assert bool(np.all(scan.valid))


def test_cocycle_scan_custom_directions():
    m = standard(1.0)
    rng = np.random.default_rng(61)
    xs = rng.uniform(-0.5, 0.5, size=8)
    ys = rng.uniform(-0.5, 0.5, size=8)
    ts = rng.uniform(0, TWO_PI, size=8)
    wx, wy = np.cos(ts), np.sin(ts)
    scan = cocycle_scan(m, xs, ys, 40, wx=wx, wy=wy)
    for i in range(8):
        tr = torsion_trace(m, (xs[i], ys[i]), (wx[i], wy[i]), 40)
        assert scan.cumulative[i] == pytest.approx(tr.cumulative[-1], abs=1e-12)


def test_cocycle_scan_invalid_lanes():
    inv = shear().inverted()
    scan = cocycle_scan(inv, np.array([0.0, 0.3]), np.array([0.1, 0.2]), 5)
    assert not scan.valid.any()
    assert np.all(scan.overconj_time == -2)
    assert np.all(np.isnan(scan.cumulative))
    assert np.all(np.isnan(scan.displacement))


def test_trace_validation():
    with pytest.raises(ValueError):
        torsion_trace(shear(), (0, 0), (0, 1), 0)
    with pytest.raises(TwistViolationError):
        torsion_trace(shear().inverted(), (0, 0), (0, 1), 3)
