"""Numerical laboratory for area-preserving positive twist maps of the annulus.

The package measures how tangent directions rotate along orbits (torsion),
detects conjugate and over-conjugate points of the vertical field, builds
the characteristic curves bounding the zero-flux region together with
families of periodic-orbit graphs, and estimates the measure of
negative-torsion regions by deterministic ensemble scans.

Modules:
  maps     lifted map families, Jacobians, iteration, twist checks
  torsion  angle variation traces, conjugate/over-conjugate detection
  curves   characteristic curves, flux, periodic curves, probes
  stats    ensemble scans, island measures, return-time identities
  cli      command-line front end
"""

from .errors import (
    BracketExpansionError,
    CoincidentPointsError,
    DegenerateAnchorError,
    IterationCapError,
    NonMonotoneBracketError,
    TwistLabError,
    TwistViolationError,
)
from .maps import (
    LiftedMap,
    TwistReport,
    drift_shear,
    generating_function,
    iterate,
    parse_map_spec,
    shear,
    standard,
    twist_check,
)
from .torsion import (
    CocycleScan,
    ConjugateReport,
    LinkingEstimate,
    TangentVector,
    TorsionEstimate,
    TorsionTrace,
    angle_from_vertical,
    asymptotic_torsion,
    cocycle_scan,
    conjugate_report,
    detect_conjugate,
    detect_overconjugate,
    jacobi_conjugate_oracle,
    linking_number,
    step_variation,
    torsion_trace,
    vertical_step_variation,
)
from .curves import (
    PeriodicCurve,
    ProbeReport,
    PsiFamily,
    RegionX,
    RotationEstimate,
    VERDICT_CONJUGATE,
    VERDICT_NO_OBSTRUCTION,
    VERDICT_NOT_APPLICABLE,
    classify_monotonicity,
    flux,
    integrability_probe,
    periodic_curve,
    psi1,
    psi1_curve,
    psi_family,
    psi_minus1,
    psi_minus1_curve,
    region_x,
    rotation_number,
    write_curves_csv,
)
from .stats import (
    FirstReturnReport,
    GridMode,
    IntegralEstimate,
    MeasureEstimate,
    MonteCarloMode,
    ScanConfig,
    ScanResult,
    first_return_torsion,
    island_measure,
    read_scan_csv,
    summarize_csv,
    torsion_field,
    torsion_integral,
    write_scan_csv,
)

__version__ = "0.1.0"

__all__ = [
    "BracketExpansionError",
    "CocycleScan",
    "CoincidentPointsError",
    "ConjugateReport",
    "DegenerateAnchorError",
    "FirstReturnReport",
    "GridMode",
    "IntegralEstimate",
    "IterationCapError",
    "LiftedMap",
    "LinkingEstimate",
    "MeasureEstimate",
    "MonteCarloMode",
    "NonMonotoneBracketError",
    "PeriodicCurve",
    "ProbeReport",
    "PsiFamily",
    "RegionX",
    "RotationEstimate",
    "ScanConfig",
    "ScanResult",
    "TangentVector",
    "TorsionEstimate",
    "TorsionTrace",
    "TwistLabError",
    "TwistReport",
    "TwistViolationError",
    "VERDICT_CONJUGATE",
    "VERDICT_NO_OBSTRUCTION",
    "VERDICT_NOT_APPLICABLE",
    "angle_from_vertical",
    "asymptotic_torsion",
    "classify_monotonicity",
    "cocycle_scan",
    "conjugate_report",
    "detect_conjugate",
    "detect_overconjugate",
    "drift_shear",
    "first_return_torsion",
    "flux",
    "generating_function",
    "integrability_probe",
    "island_measure",
    "iterate",
    "jacobi_conjugate_oracle",
    "linking_number",
    "parse_map_spec",
    "periodic_curve",
    "psi1",
    "psi1_curve",
    "psi_family",
    "psi_minus1",
    "psi_minus1_curve",
    "read_scan_csv",
    "region_x",
    "rotation_number",
    "shear",
    "standard",
    "step_variation",
    "summarize_csv",
    "torsion_field",
    "torsion_integral",
    "torsion_trace",
    "twist_check",
    "write_curves_csv",
    "write_scan_csv",
]
