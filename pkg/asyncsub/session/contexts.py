"""
Input contexts: multi-hole terms built from input branchings only
"""

from dataclasses import dataclass
from typing import FrozenSet, List, Sequence, Tuple

from asyncsub.session.types import Branch, Hole, Label, Rec, Select, SessionType, _Choice, derived

PathStep = Tuple[Label, FrozenSet[Label]]


@dataclass(frozen=True)
class Leaf:
    """A hole filler together with the branch labels leading to it"""

    path: Tuple[PathStep, ...]
    subterm: SessionType


@dataclass(frozen=True)
class InputDecomposition:
    """
    A term split into an input context and its leaves
    Holes are numbered 1..hole_count from left to right.
    """

    context: SessionType
    leaves: Tuple[Leaf, ...]

    @property
    def hole_count(self) -> int:
        return len(self.leaves)

    @property
    def subterms(self) -> Tuple[SessionType, ...]:
        return tuple(leaf.subterm for leaf in self.leaves)

    def fill(self, subterms: Sequence[SessionType]) -> SessionType:
        return fill(self.context, subterms)

    def reassemble(self) -> SessionType:
        return fill(self.context, self.subterms)


def decompose_input_context(s: SessionType) -> InputDecomposition:
    """
    Maximal input-context decomposition of s
    Descends through input branchings only; every other node reached is a leaf.
    """
    leaves: List[Leaf] = []

    def walk(node: SessionType, path: Tuple[PathStep, ...]) -> SessionType:
        if isinstance(node, Branch):
            siblings = frozenset(node.labels)
            choices = tuple([(label, walk(continuation, path + ((label, siblings),)))
                             for label, continuation in node.choices])
            return Branch.trusted(choices, node.annotation)
        leaves.append(Leaf(path, node))
        return Hole(len(leaves))

    context = walk(s, ())
    return InputDecomposition(context, tuple(leaves))


def fill(context: SessionType, subterms: Sequence[SessionType]) -> SessionType:
    """Replace each hole []ⁿ of context with subterms[n-1]"""
    if isinstance(context, Hole):
        if not 1 <= context.index <= len(subterms):
            raise ValueError(f"no filler for hole {context.index}")
        return subterms[context.index - 1]
    if isinstance(context, Branch):
        choices = tuple([(label, fill(continuation, subterms)) for label, continuation in context.choices])
        return Branch.trusted(choices, context.annotation)
    if isinstance(context, (_Choice, Rec)):
        raise ValueError("an input context may only contain input branchings and holes")
    return context


def holes(context: SessionType) -> List[int]:
    """Hole indices in left-to-right order"""
    found: List[int] = []
    stack = [context]
    while stack:
        node = stack.pop()
        if isinstance(node, Hole):
            found.append(node.index)
        elif isinstance(node, Branch):
            stack.extend(reversed(node._children()))
    return found


def offered_outputs(s: SessionType) -> FrozenSet[Label]:
    """Output labels selectable behind every leaf of the input context of s"""
    values = derived(s)
    offered = values.get('offered')
    if offered is None:
        if isinstance(s, Branch):
            offered = frozenset.intersection(*[offered_outputs(child) for child in s._children()])
        elif isinstance(s, Select):
            offered = frozenset(s.labels)
        else:
            offered = frozenset()
        values['offered'] = offered
    return offered


def anticipate(s: SessionType, label: Label) -> SessionType:
    """
    Take the output label behind every leaf of the input context of s

    s must be an input context over output selections that all offer label,
    that is label in offered_outputs(s).
    """
    if isinstance(s, Select):
        return s.continuation(label)
    values = derived(s)
    key = ('anticipate', label)
    anticipated = values.get(key)
    if anticipated is None:
        if not isinstance(s, Branch):
            raise ValueError(f"cannot anticipate '{label}' past a {type(s).__name__}")
        choices = tuple([(branch_label, anticipate(continuation, label))
                         for branch_label, continuation in s.choices])
        anticipated = values[key] = s.with_choices(choices)
    return anticipated
