"""
Bounded exploration of the asynchronous subtyping game
Independent of the rule system; used to cross-check its verdicts.
"""

import logging
from collections import deque
from typing import Deque, Iterator, List, Optional, Set

from asyncsub.session.contexts import decompose_input_context
from asyncsub.session.types import Branch, End, Rec, Select, SessionType, deep_terms
from asyncsub.session.unfolding import erase, unfold_once, unfold_rec
from asyncsub.subtyping.judgments import CheckResult, CheckStats, Inconclusive, NotSubtype, PairKey, Subtype

logger = logging.getLogger(__name__)

DEFAULT_PAIR_BOUND = 2000
DEFAULT_UNFOLD_BOUND = 8


def _unfoldings(s: SessionType, bound: int) -> Iterator[SessionType]:
    """unfold⁰(s), unfold¹(s), … unfold^bound(s)"""
    yield s
    for _ in range(bound):
        s = unfold_once(s)
        yield s


def _successors(t: SessionType, s: SessionType, unfold_bound: int) -> Optional[List[PairKey]]:
    """
    Pairs that (t, s) requires, using the smallest unfolding of s that works

    Returns:
        The required pairs, or None when no unfolding up to the bound satisfies
        the clause for the shape of t
    """
    if isinstance(t, Rec):
        return [(unfold_rec(t), s)]

    if isinstance(t, End):
        for candidate in _unfoldings(s, unfold_bound):
            if isinstance(candidate, End):
                return []
        return None

    if isinstance(t, Branch):
        offered = set(t.labels)
        for candidate in _unfoldings(s, unfold_bound):
            if isinstance(candidate, Branch) and set(candidate.labels) <= offered:
                return [(t.continuation(label), continuation) for label, continuation in candidate.choices]
        return None

    if isinstance(t, Select):
        wanted = set(t.labels)
        for candidate in _unfoldings(s, unfold_bound):
            decomposition = decompose_input_context(candidate)
            leaves = decomposition.subterms
            if all(isinstance(leaf, Select) and wanted <= set(leaf.labels) for leaf in leaves):
                return [(continuation, decomposition.fill([leaf.continuation(label) for leaf in leaves]))
                        for label, continuation in t.choices]
        return None

    return None


def oracle_check(t: SessionType, s: SessionType, pair_bound: Optional[int] = None,
                 unfold_bound: Optional[int] = None, config=None) -> CheckResult:
    """
    Explore the pairs required for t ≤ s breadth first

    Args:
        t: closed, contractive subtype candidate
        s: closed, contractive supertype candidate
        pair_bound: largest number of distinct pairs to explore
        unfold_bound: largest unfolding of the right side tried per pair

    Returns:
        Subtype when the required pairs close within pair_bound, NotSubtype when
        a reachable pair has no satisfying unfolding, Inconclusive otherwise
    """
    if pair_bound is None:
        pair_bound = getattr(config, 'ASYNCSUB_ORACLE_PAIR_BOUND', DEFAULT_PAIR_BOUND)
    if unfold_bound is None:
        unfold_bound = getattr(config, 'ASYNCSUB_ORACLE_UNFOLD_BOUND', DEFAULT_UNFOLD_BOUND)

    start = (erase(t), erase(s))
    visited: Set[PairKey] = {start}
    frontier: Deque[PairKey] = deque([start])

    with deep_terms():
        while frontier:
            left, right = frontier.popleft()
            required = _successors(left, right, unfold_bound)
            if required is None:
                logger.info(f"Oracle: no unfolding up to {unfold_bound} matches a reachable pair")
                return NotSubtype(CheckStats(pairs_visited=len(visited)),
                                  reason="reachable pair violates every clause of the game")
            for pair in required:
                if pair in visited:
                    continue
                if len(visited) >= pair_bound:
                    logger.warning(f"Oracle inconclusive: more than {pair_bound} pairs")
                    return Inconclusive(CheckStats(pairs_visited=len(visited)))
                visited.add(pair)
                frontier.append(pair)

    logger.info(f"Oracle: subtype, {len(visited)} pairs")
    return Subtype(CheckStats(pairs_visited=len(visited)))
