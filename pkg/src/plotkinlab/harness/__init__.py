"""Simulation, statistics, op-count reports, construction audit and the CLI."""

from .audit import audit_constructions
from .opcount import report_opcounts
from .simulate import SimConfig, SimResult, ml_bound_event, run_l_bound, run_wer
from .specparse import SpecError, parse_decoder_spec
from .stats import birthday_approx, birthday_exact, run_cancellation_stats

__all__ = [
    "SimConfig",
    "SimResult",
    "SpecError",
    "audit_constructions",
    "birthday_approx",
    "birthday_exact",
    "ml_bound_event",
    "parse_decoder_spec",
    "report_opcounts",
    "run_cancellation_stats",
    "run_l_bound",
    "run_wer",
]
