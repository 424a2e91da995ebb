"""Edge-periodic cops and robbers: exact solver, generators and simulator."""

from ._epcr import (
    DomainError,
    Graph,
    ParseError,
    ResourceError,
    RuleViolation,
    decide,
    decide_k_cops,
    extend_cycle,
    gen_random_cycle,
    gen_theorem17_cycle,
    gen_theorem18_cycle,
    legal_moves,
    load_epg,
    parse_epg,
    serialize_epg,
    simulate,
    strip_analysis,
    theorem17_cop_start,
    verify_bounds,
)

__all__ = [
    "DomainError",
    "Graph",
    "ParseError",
    "ResourceError",
    "RuleViolation",
    "decide",
    "decide_k_cops",
    "extend_cycle",
    "gen_random_cycle",
    "gen_theorem17_cycle",
    "gen_theorem18_cycle",
    "legal_moves",
    "load_epg",
    "parse_epg",
    "serialize_epg",
    "simulate",
    "strip_analysis",
    "theorem17_cop_start",
    "verify_bounds",
]
