"""Rationality criteria for real singular cubic threefolds, in exact arithmetic."""

from .families import FamilyId, build_cubic, validate_constraints
from .verdict import AnalysisInput, Status, Verdict, analyze, analyze_family

__version__ = "0.1.0"

__all__ = ["AnalysisInput", "FamilyId", "Status", "Verdict", "analyze", "analyze_family",
           "build_cubic", "validate_constraints"]
