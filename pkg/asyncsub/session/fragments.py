"""
Syntactic fragments: single outputs, single inputs, input guarded recursion
"""

from dataclasses import dataclass
from typing import Any, Dict, List, Tuple

from asyncsub.session.types import (
    Branch, Rec, Select, SessionType, Var, _Choice, is_contractive, size, subterms,
)


def is_single_output(t: SessionType) -> bool:
    """Membership in T^out: every output selection has exactly one choice"""
    return all(node.is_single for node in subterms(t) if isinstance(node, Select))


def is_single_input(t: SessionType) -> bool:
    """Membership in T^in: every input branching has exactly one choice"""
    return all(node.is_single for node in subterms(t) if isinstance(node, Branch))


def is_input_guarded(t: SessionType) -> bool:
    """
    Membership in T^noinf: every occurrence of a recursion variable lies under
    an input branching inside the body of its binder
    """
    stack: List[Tuple[SessionType, Dict[str, bool]]] = [(t, {})]
    while stack:
        node, scope = stack.pop()
        if isinstance(node, Var):
            if scope.get(node.name) is False:
                return False
        elif isinstance(node, Rec):
            inner = dict(scope)
            inner[node.name] = False
            stack.append((node.body, inner))
        elif isinstance(node, Branch):
            guarded = {name: True for name in scope}
            for child in node._children():
                stack.append((child, guarded))
        elif isinstance(node, _Choice):
            for child in node._children():
                stack.append((child, scope))
    return True


@dataclass(frozen=True)
class FragmentReport:
    single_output: bool
    single_input: bool
    input_guarded: bool
    contractive: bool
    size: int

    def to_dict(self) -> Dict[str, Any]:
        return {
            'single_output': self.single_output,
            'single_input': self.single_input,
            'input_guarded': self.input_guarded,
            'contractive': self.contractive,
            'size': self.size,
        }


def classify(t: SessionType) -> FragmentReport:
    return FragmentReport(
        single_output=is_single_output(t),
        single_input=is_single_input(t),
        input_guarded=is_input_guarded(t),
        contractive=is_contractive(t),
        size=size(t),
    )
