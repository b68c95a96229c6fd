"""Coupling-protocol synthesis and pattern verification for networked systems."""

from sympat._core import (
    HypothesisError,
    Scenario,
    audit,
    parse_scenario,
    parse_scenario_text,
    protocol_table,
    simulate,
    verify,
)

__all__ = [
    "HypothesisError",
    "Scenario",
    "audit",
    "parse_scenario",
    "parse_scenario_text",
    "protocol_table",
    "simulate",
    "verify",
]
