"""
Subtyping checks: the semi-procedure, the terminating procedure for the
single-choice fragments and the single-choice relations built on it
"""

import logging
from collections import deque
from dataclasses import dataclass
from typing import Any, Deque, Dict, List, Optional, Set, Tuple

from asyncsub.errors import FragmentViolation, StepCeilingExceeded
from asyncsub.session.fragments import is_input_guarded, is_single_input, is_single_output
from asyncsub.session.types import SessionType, deep_terms
from asyncsub.session.unfolding import AnnotationSupply, decorate, erase
from asyncsub.subtyping.judgments import (
    CLOSING_RULES, RECURSION_RULES, RIGHT_UNFOLDING_RULES, CheckResult, CheckStats, Err,
    FuelExhausted, Judgment, Mode, NotSubtype, PairKey, RuleApplication, Subtype,
)
from asyncsub.subtyping.rules import step

logger = logging.getLogger(__name__)


class SubtypingChecker:
    """Runs the rule system over a breadth-first worklist of judgments"""

    def __init__(self, config=None):
        self.config = config
        self.default_fuel = getattr(config, 'ASYNCSUB_DEFAULT_FUEL', 100000)
        self.step_ceiling = getattr(config, 'ASYNCSUB_DECIDE_STEP_CEILING', 0)

    def semi_check(self, t: SessionType, s: SessionType, fuel: Optional[int] = None,
                   record_trace: bool = False) -> CheckResult:
        """
        Semi-decide t ≤ s

        Args:
            t: closed, contractive, un-annotated subtype candidate
            s: closed, contractive, un-annotated supertype candidate
            fuel: bound on rule applications; defaults to ASYNCSUB_DEFAULT_FUEL
            record_trace: keep every rule application in the result

        Returns:
            Subtype, NotSubtype or FuelExhausted
        """
        if fuel is None:
            fuel = self.default_fuel
        if fuel < 1:
            raise ValueError("fuel must be at least 1")
        logger.info(f"Semi-procedure started (fuel {fuel})")
        result = self._run(Judgment(t, s), Mode.SEMI, fuel, None, record_trace)
        self._log_result('semi', result)
        return result

    def decide(self, t: SessionType, s: SessionType, step_ceiling: Optional[int] = None,
               record_trace: bool = False) -> CheckResult:
        """
        Decide t ≤ s for the single-choice fragments

        Requires t single-output and single-input with s single-input, or t
        single-output with s single-input and single-output. Raises
        FragmentViolation otherwise, and StepCeilingExceeded when a positive
        ceiling is configured and reached.
        """
        t, s = erase(t), erase(s)
        self.check_fragment(t, s)
        if step_ceiling is None:
            step_ceiling = self.step_ceiling
        supply = AnnotationSupply()
        decorated = decorate(s, supply)
        logger.info("Terminating procedure started")
        result = self._run(Judgment(t, decorated), Mode.TERMINATING, step_ceiling or None, supply, record_trace)
        self._log_result('decide', result)
        return result

    @staticmethod
    def check_fragment(t: SessionType, s: SessionType):
        """Raise FragmentViolation unless (t, s) lies in a decidable fragment"""
        if not is_single_output(t):
            raise FragmentViolation('left', 'single-output')
        if not is_single_input(s):
            raise FragmentViolation('right', 'single-input')
        if not is_single_input(t) and not is_single_output(s):
            raise FragmentViolation('left', 'single-input and the right type is not single-output')

    def _run(self, start: Judgment, mode: Mode, budget: Optional[int],
             supply: Optional[AnnotationSupply], record_trace: bool) -> CheckResult:
        # each entry remembers whether an unfolding of the right side produced it
        worklist: Deque[Tuple[Judgment, bool]] = deque([(start, False)])
        visited: Set[PairKey] = set()
        trace: List[RuleApplication] = []
        applications = 0
        sigma_max = 0
        debug = logger.isEnabledFor(logging.DEBUG)

        def stats() -> CheckStats:
            return CheckStats(applications, sigma_max, len(visited))

        with deep_terms():
            while worklist:
                if budget is not None and applications >= budget:
                    if mode is Mode.TERMINATING:
                        logger.info(f"Step ceiling of {budget} reached")
                        raise StepCeilingExceeded(applications)
                    return FuelExhausted(stats(), frontier_size=len(worklist), steps_used=applications,
                                         trace=tuple(trace))

                judgment, unfolded = worklist.popleft()
                outcome = step(judgment, mode, supply)
                if isinstance(outcome, Err):
                    if debug:
                        logger.debug(outcome.trace_line())
                    return NotSubtype(stats(), failing=judgment, reason=outcome.reason, trace=tuple(trace))

                applications += 1
                if not unfolded:
                    visited.add(judgment.key())
                if record_trace:
                    trace.append(outcome)
                if debug:
                    logger.debug(outcome.trace_line())

                if outcome.rule in CLOSING_RULES:
                    continue
                if outcome.rule in RECURSION_RULES:
                    # only the recursion rules extend Σ
                    sigma_max = max(sigma_max, len(outcome.produced[0].env))
                from_unfolding = outcome.rule in RIGHT_UNFOLDING_RULES
                for premise in outcome.produced:
                    worklist.append((premise, from_unfolding))

        return Subtype(stats(), trace=tuple(trace))

    @staticmethod
    def _log_result(algorithm: str, result: CheckResult):
        if isinstance(result, FuelExhausted):
            logger.warning(f"{algorithm}: fuel exhausted after {result.steps_used} rule applications "
                           f"({result.frontier_size} judgments pending)")
        else:
            logger.info(f"{algorithm}: {result.verdict} after {result.stats.rule_applications} rule applications "
                        f"(Σ max {result.stats.sigma_max})")


@dataclass(frozen=True)
class RelationDomains:
    """Which single-choice relations a pair of types may belong to"""

    single_choice: bool
    single_choice_input: bool
    single_choice_output: bool

    def to_dict(self) -> Dict[str, Any]:
        return {
            'single_choice': self.single_choice,
            'single_choice_input': self.single_choice_input,
            'single_choice_output': self.single_choice_output,
        }


def relation_domains(t: SessionType, s: SessionType) -> RelationDomains:
    """Domain membership of (t, s) for <<, <<_sin and <<_sout"""
    t_out, t_in = is_single_output(t), is_single_input(t)
    s_out, s_in = is_single_output(s), is_single_input(s)
    guarded = is_input_guarded(t) and is_input_guarded(s)
    return RelationDomains(
        single_choice=guarded and t_out and s_in,
        single_choice_input=guarded and t_in and t_out and s_in,
        single_choice_output=guarded and t_out and s_in and s_out,
    )


def check_sin(t: SessionType, s: SessionType, config=None) -> CheckResult:
    """Decide t <<_sin s: both sides single-input, input guarded, t single-output"""
    if not relation_domains(t, s).single_choice_input:
        return NotSubtype(CheckStats(), reason="pair lies outside the single-choice input relation")
    return SubtypingChecker(config).decide(t, s)


def check_sout(t: SessionType, s: SessionType, config=None) -> CheckResult:
    """Decide t <<_sout s: both sides single-output, input guarded, s single-input"""
    if not relation_domains(t, s).single_choice_output:
        return NotSubtype(CheckStats(), reason="pair lies outside the single-choice output relation")
    return SubtypingChecker(config).decide(t, s)


def semi_check(t: SessionType, s: SessionType, fuel: Optional[int] = None, config=None,
               record_trace: bool = False) -> CheckResult:
    return SubtypingChecker(config).semi_check(t, s, fuel, record_trace)


def decide(t: SessionType, s: SessionType, step_ceiling: Optional[int] = None, config=None,
           record_trace: bool = False) -> CheckResult:
    return SubtypingChecker(config).decide(t, s, step_ceiling, record_trace)
