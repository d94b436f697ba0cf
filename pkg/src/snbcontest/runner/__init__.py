from .curate import ParameterCategory, categories, curate_parameters, sample_q1
from .queryfile import (
    LineCheck,
    VerificationReport,
    Workload,
    format_workload,
    parse_query_file,
    parse_query_line,
    verify_answers,
)
from .workload import RunReport, run_workload

__all__ = [
    "LineCheck",
    "ParameterCategory",
    "RunReport",
    "VerificationReport",
    "Workload",
    "categories",
    "curate_parameters",
    "format_workload",
    "parse_query_file",
    "parse_query_line",
    "run_workload",
    "sample_q1",
    "verify_answers",
]
