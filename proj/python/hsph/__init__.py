"""Curvature of invariant Hermitian metrics on S^{2n+1} x S^{2p+1}."""

import json

from ._core import (
    CurvatureOperator,
    NonDecomposableBivector,
    NonUnitBivector,
    StructureParams,
    classify_region,
    complex_structure,
    fundamental_form,
    is_positive_associated,
    metric,
    numeric_extremes,
    orthonormal_frame,
    report_json,
    ricci_closed_form,
    ricci_eigenvalues,
    ricci_via_besse,
    ricci_via_contraction,
    scalar_closed_form,
    scalar_via_trace,
    scan_csv,
    theorem_bounds,
    u_tensor,
)


def report(params, restarts=64, seed=0, checks=False):
    """Curvature report for one (a, c) point as a dict."""
    return json.loads(report_json(params, restarts=restarts, seed=seed, checks=checks))


__all__ = [name for name in dir() if not name.startswith("_") and name != "json"]
