"""
Rules of the subtyping procedure
One call to step selects the single applicable rule for a judgment and
builds its premises, or reports that no rule applies.
"""

import logging
from dataclasses import dataclass
from typing import List, Optional, Tuple, Union

from asyncsub.session.contexts import anticipate, offered_outputs
from asyncsub.session.types import (
    Annotation, Branch, End, Label, Rec, Select, SessionType, has_branch,
)
from asyncsub.session.unfolding import AnnotationSupply, erase, unfold, unfold_rec
from asyncsub.subtyping.depth import depth
from asyncsub.subtyping.judgments import Err, Judgment, Mode, Rule, RuleApplication

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class InputChain:
    """Leading single-choice input branchings of a term and the tail after them"""

    labels: Tuple[Label, ...]
    annotations: Tuple[Optional[Annotation], ...]
    tail: SessionType

    @property
    def length(self) -> int:
        return len(self.labels)


def input_chain(s: SessionType) -> InputChain:
    labels: List[Label] = []
    marks: List[Optional[Annotation]] = []
    while isinstance(s, Branch) and s.is_single:
        label, continuation = s.choices[0]
        labels.append(label)
        marks.append(s.annotation)
        s = continuation
    return InputChain(tuple(labels), tuple(marks), s)


def _periodic_split(stored: Tuple[Label, ...], current: Tuple[Label, ...]) -> Optional[Tuple[int, int, int]]:
    """
    Smallest period word γ with stored = γ^i·γ[:s] and current = γ^j·γ[:s], j > i

    Returns:
        (|γ|, i, j) for the first period length that works, None otherwise
    """
    n, m = len(stored), len(current)
    for p in range(1, n + 1):
        if n % p != m % p:
            continue
        period = stored[:p]
        if any(stored[k] != period[k % p] for k in range(n)):
            continue
        if any(current[k] != period[k % p] for k in range(m)):
            continue
        i, j = n // p, m // p
        if j > i:
            return p, i, j
    return None


def match_asmp2(j: Judgment) -> Optional[Tuple[SessionType, SessionType]]:
    """
    Find the stored pair that closes j by periodic input accumulation

    The right side of j must start with single-choice inputs followed by an
    output selection or a recursive definition. A stored pair with the same
    left side matches when its own input chain ends in the same erased tail,
    carries the annotation of j's first input somewhere in the chain, and
    both label sequences repeat one period word, the current one more often.
    """
    current = input_chain(j.right)
    if current.length == 0 or not isinstance(current.tail, (Select, Rec)):
        return None
    if not has_branch(j.left):
        return None
    first = current.annotations[0]
    if first is None:
        return None
    current_tail = erase(current.tail)
    for stored_right in j.env.rights_for(j.left):
        stored = input_chain(stored_right)
        if first not in stored.annotations:
            continue
        if erase(stored.tail) != current_tail:
            continue
        if _periodic_split(stored.labels, current.labels) is not None:
            return j.left, stored_right
    return None


def match_asmp3(j: Judgment) -> Optional[Tuple[SessionType, SessionType]]:
    """
    Find the stored pair that closes j when the left side only outputs

    Matches a stored pair with the same left side whose input chain is a
    non-empty strict prefix of the current one and ends in the same erased
    tail. An empty stored chain proves nothing: the accumulated inputs could
    be all the right side ever does.
    """
    if has_branch(j.left):
        return None
    current = input_chain(j.right)
    if current.length == 0 or not isinstance(current.tail, (Select, Rec)):
        return None
    current_tail = erase(current.tail)
    for stored_right in j.env.rights_for(j.left):
        stored = input_chain(stored_right)
        if stored.length == 0 or stored.length >= current.length:
            continue
        if current.labels[:stored.length] != stored.labels:
            continue
        if erase(stored.tail) == current_tail:
            return j.left, stored_right
    return None


def step(j: Judgment, mode: Mode = Mode.SEMI,
         supply: Optional[AnnotationSupply] = None) -> Union[RuleApplication, Err]:
    """
    Apply the one rule whose conclusion matches j

    Args:
        j: judgment Σ ⊢ left ≤ right
        mode: SEMI for the plain procedure, TERMINATING to add Asmp2/Asmp3
            and annotate the inputs exposed by unfolding the right side
        supply: fresh annotations for TERMINATING mode; created above every
            annotation of j and of its environment when omitted

    Returns:
        The rule application with its premises, or Err when no rule applies
    """
    left, right, env = j.left, j.right, j.env

    if env.contains(left, right):
        return RuleApplication(Rule.ASMP, j)

    if mode is Mode.TERMINATING:
        if supply is None:
            supply = AnnotationSupply.above(left, right, *env.stored_rights())
        if match_asmp2(j) is not None:
            return RuleApplication(Rule.ASMP2, j)
        if match_asmp3(j) is not None:
            return RuleApplication(Rule.ASMP3, j)
    else:
        supply = None

    if isinstance(left, Rec):
        return RuleApplication(Rule.REC_L, j, (Judgment(unfold_rec(left), right, env.extend(left, right)),))

    if isinstance(left, (End, Branch)) and isinstance(right, Rec):
        return RuleApplication(Rule.REC_R1, j, (Judgment(left, unfold_rec(right, supply), env.extend(left, right)),))

    if isinstance(left, End):
        if isinstance(right, End):
            return RuleApplication(Rule.END, j)
        return Err(j, "end on the left cannot match a pending action on the right")

    if isinstance(left, Branch):
        if not isinstance(right, Branch):
            return Err(j, "input on the left cannot match an output or end on the right")
        missing = set(right.labels) - set(left.labels)
        if missing:
            return Err(j, f"left input lacks labels {sorted(missing)}")
        premises = tuple(Judgment(left.continuation(label), continuation, env)
                         for label, continuation in right.choices)
        return RuleApplication(Rule.IN, j, premises)

    if isinstance(left, Select):
        unfoldings = depth(right)
        if unfoldings is None:
            return Err(j, "output on the left cannot be anticipated on the right")
        if unfoldings >= 1:
            return RuleApplication(Rule.REC_R2, j,
                                   (Judgment(left, unfold(right, unfoldings, supply), env.extend(left, right)),))
        missing = set(left.labels) - offered_outputs(right)
        if missing:
            return Err(j, f"right output lacks labels {sorted(missing)}")
        # depth 0: every leaf behind the leading inputs is an output selection
        premises = tuple(Judgment(continuation, anticipate(right, label), env)
                         for label, continuation in left.choices)
        return RuleApplication(Rule.OUT, j, premises)

    return Err(j, f"no rule for a {type(left).__name__} on the left")
