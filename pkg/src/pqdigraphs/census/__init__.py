from .cases import ALL_CASES, CensusCase, verify_case
from .report import CensusReport, emit_report, run_census

__all__ = ["ALL_CASES", "CensusCase", "CensusReport", "emit_report", "run_census", "verify_case"]
