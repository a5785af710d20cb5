"""Experiment harness: configuration, runners, reports, plots, verification."""

from .config import KINDS, ExperimentConfig, default_workers, load_config_file
from .experiments import run_experiment
from .report import (
    ExperimentReport,
    emit_report,
    fq_witness_digest,
    load_report_json,
    product_witness_digest,
    replay_digest,
    report_to_csv_text,
    report_to_json_text,
)
from .verify import CheckResult, SuiteResult, verify_suite

__all__ = [
    "KINDS",
    "ExperimentConfig",
    "ExperimentReport",
    "CheckResult",
    "SuiteResult",
    "default_workers",
    "emit_report",
    "fq_witness_digest",
    "load_config_file",
    "load_report_json",
    "product_witness_digest",
    "replay_digest",
    "report_to_csv_text",
    "report_to_json_text",
    "run_experiment",
    "verify_suite",
]
