"""
Number of unfoldings needed before outputs can be anticipated
"""

from typing import AbstractSet, FrozenSet, Optional

from asyncsub.session.types import Branch, Rec, Select, SessionType, derived
from asyncsub.session.unfolding import unfold_rec

_UNKNOWN = object()


def depth(s: SessionType, visited: AbstractSet[str] = frozenset()) -> Optional[int]:
    """
    depth(s, Γ), with None standing for ⊥

    end is ⊥, an output selection is 0, an input branching takes the maximum
    over its continuations and a recursive definition costs one unfolding,
    or ⊥ when it is met again. ⊥ absorbs both max and +1.

    A definition counts as met again when the same rec node comes back
    through unfolding, not when an inner binder reuses an outer name:
    rec t.&{l: rec t.+{m: t}} has depth 2, the inner binder being a
    separate definition that shadows the outer one.

    Args:
        s: closed, contractive term; annotations are ignored
        visited: recursion variables already unfolded by the caller

    Returns:
        Smallest number of unfoldings exposing every output behind the
        leading inputs, or None when anticipation is impossible
    """
    return _depth(s, frozenset(), frozenset(visited))


def _depth(node: SessionType, seen: FrozenSet[SessionType], visited: FrozenSet[str]) -> Optional[int]:
    if isinstance(node, Select):
        return 0
    # only the context-free value is remembered on the node
    remember = not seen and not visited
    if remember:
        known = derived(node).get('depth', _UNKNOWN)
        if known is not _UNKNOWN:
            return known
    result: Optional[int] = None
    if isinstance(node, Branch):
        result = 0
        for _, continuation in node.choices:
            inner = _depth(continuation, seen, visited)
            if inner is None:
                result = None
                break
            result = max(result, inner)
    elif isinstance(node, Rec) and node.name not in visited and node not in seen:
        inner = _depth(unfold_rec(node), seen | {node}, visited)
        result = None if inner is None else inner + 1
    if remember:
        derived(node)['depth'] = result
    return result
