from .builder import (EXPANSION_LABELS, Bundle, build_report, compute_bundle, export_csv,
                      recheck_report, recursion_checks)
from .schema import REPORT_SCHEMA, SCHEMA_VERSION, validate_report
from .suites import DEPTH_SUITES, SUITES, run_suites

__all__ = [
    "EXPANSION_LABELS", "Bundle", "build_report", "compute_bundle", "export_csv", "recheck_report",
    "recursion_checks", "REPORT_SCHEMA", "SCHEMA_VERSION", "validate_report", "DEPTH_SUITES",
    "SUITES", "run_suites",
]
