"""
Unfolding of recursive definitions and input-branching annotations
"""

import itertools
from typing import Optional

from asyncsub.session.types import (
    Annotation, Branch, Rec, SessionType, Var, _Choice, annotations, derived, free_names,
)


class AnnotationSupply:
    """Monotone source of fresh annotations, owned by a single check session"""

    def __init__(self, start: int = 0):
        self._counter = itertools.count(start)

    def fresh(self) -> Annotation:
        return Annotation(next(self._counter))

    @classmethod
    def above(cls, *terms: SessionType) -> 'AnnotationSupply':
        """Supply whose annotations do not clash with any annotation in terms"""
        highest = -1
        for term in terms:
            for annotation in annotations(term):
                highest = max(highest, annotation)
        return cls(highest + 1)


def relabel(t: SessionType, supply: AnnotationSupply) -> SessionType:
    """Give every input branching of t a fresh annotation"""
    if isinstance(t, Rec):
        return Rec(t.name, relabel(t.body, supply))
    if isinstance(t, _Choice):
        annotation = supply.fresh() if isinstance(t, Branch) else None
        choices = tuple([(label, relabel(continuation, supply)) for label, continuation in t.choices])
        return Branch.trusted(choices, annotation) if isinstance(t, Branch) else t.with_choices(choices)
    return t


def decorate(s: SessionType, supply: Optional[AnnotationSupply] = None) -> SessionType:
    """Annotate every input branching of s with a pairwise distinct annotation"""
    return relabel(s, supply or AnnotationSupply())


def erase(s: SessionType) -> SessionType:
    """Drop every annotation"""
    if not s._annotated:
        return s
    values = derived(s)
    erased = values.get('erase')
    if erased is None:
        if isinstance(s, Rec):
            erased = Rec(s.name, erase(s.body))
        else:
            choices = tuple([(label, erase(continuation)) for label, continuation in s.choices])
            erased = Branch.trusted(choices) if isinstance(s, Branch) else s.with_choices(choices)
        values['erase'] = erased
    return erased


def _rebuild(t: _Choice, choices) -> SessionType:
    """t itself when no continuation changed"""
    if all(new is old for (_, new), (_, old) in zip(choices, t.choices)):
        return t
    return t.with_choices(choices)


def substitute(t: SessionType, name: str, replacement: SessionType,
               supply: Optional[AnnotationSupply] = None) -> SessionType:
    """
    Replace the free occurrences of Var(name) in t by replacement
    With a supply, every inserted copy is freshly annotated.
    """
    if name not in free_names(t):
        return t
    if isinstance(t, Var):
        return relabel(replacement, supply) if supply is not None else replacement
    if isinstance(t, Rec):
        return Rec(t.name, substitute(t.body, name, replacement, supply))
    choices = tuple([(label, substitute(continuation, name, replacement, supply))
                     for label, continuation in t.choices])
    return _rebuild(t, choices)


def unfold_rec(t: Rec, supply: Optional[AnnotationSupply] = None) -> SessionType:
    """T{rec t.T / t}: one substitution step at a recursive definition"""
    if supply is not None:
        return substitute(relabel(t.body, supply), t.name, t, supply)
    values = derived(t)
    unfolded = values.get('unfold')
    if unfolded is None:
        unfolded = values['unfold'] = substitute(t.body, t.name, t)
    return unfolded


def unfold_once(t: SessionType, supply: Optional[AnnotationSupply] = None) -> SessionType:
    if isinstance(t, Rec):
        return unfold_rec(t, supply)
    if not isinstance(t, _Choice):
        return t
    if supply is not None:
        return _rebuild(t, tuple([(label, unfold_once(continuation, supply))
                                  for label, continuation in t.choices]))
    values = derived(t)
    unfolded = values.get('unfold_once')
    if unfolded is None:
        unfolded = values['unfold_once'] = _rebuild(
            t, tuple([(label, unfold_once(continuation)) for label, continuation in t.choices]))
    return unfolded


def unfold(t: SessionType, n: int, supply: Optional[AnnotationSupply] = None) -> SessionType:
    """
    n-unfolding of t

    Without a supply every copy keeps the annotations of the definition it
    came from, so unfolding a decorated term repeats its annotations; pass a
    supply (or erase first) when distinct annotations matter.

    Args:
        t: closed, contractive term
        n: number of unfolding rounds; 0 returns t itself
        supply: when given, input branchings exposed by the unfolding get fresh annotations

    Returns:
        The unfolded term
    """
    if n < 0:
        raise ValueError("unfolding depth must be a natural number")
    for _ in range(n):
        t = unfold_once(t, supply)
    return t


def expose(t: SessionType, supply: Optional[AnnotationSupply] = None) -> SessionType:
    """Unfold top-level recursive definitions until a choice or end is reached"""
    while isinstance(t, Rec):
        t = unfold_rec(t, supply)
    return t
