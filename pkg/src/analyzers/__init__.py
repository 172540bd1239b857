"""Report rendering for scheduling results."""

from .report_generator import ReportGenerator

__all__ = ["ReportGenerator"]
