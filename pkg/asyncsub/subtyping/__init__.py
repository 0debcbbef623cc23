"""
Asynchronous subtyping: rule system, checks and the bounded game oracle
"""

from asyncsub.subtyping.depth import depth
from asyncsub.subtyping.engine import (
    RelationDomains, SubtypingChecker, check_sin, check_sout, decide, relation_domains, semi_check,
)
from asyncsub.subtyping.judgments import (
    CLOSING_RULES, RECURSION_RULES, RIGHT_UNFOLDING_RULES, CheckResult, CheckStats, Environment,
    Err, FuelExhausted, Inconclusive, Judgment, Mode, NotSubtype, Rule, RuleApplication, Subtype,
)
from asyncsub.subtyping.oracle import oracle_check
from asyncsub.subtyping.rules import match_asmp2, match_asmp3, step

__all__ = [
    'CLOSING_RULES', 'RECURSION_RULES', 'RIGHT_UNFOLDING_RULES',
    'CheckResult', 'CheckStats', 'Environment', 'Err', 'FuelExhausted', 'Inconclusive',
    'Judgment', 'Mode', 'NotSubtype', 'RelationDomains', 'Rule', 'RuleApplication',
    'Subtype', 'SubtypingChecker', 'check_sin', 'check_sout', 'decide', 'depth',
    'match_asmp2', 'match_asmp3', 'oracle_check', 'relation_domains', 'semi_check', 'step',
]
