"""
Session type syntax: terms, concrete syntax, unfolding, input contexts, fragments
"""

from asyncsub.session.contexts import InputDecomposition, Leaf, decompose_input_context, fill
from asyncsub.session.fragments import (
    FragmentReport, classify, is_input_guarded, is_single_input, is_single_output,
)
from asyncsub.session.parser import load_type, parse, render
from asyncsub.session.types import (
    Annotation, Branch, End, Hole, Label, Rec, Select, SessionType, Var,
    annotations, canonical, deep_terms, has_branch, is_contractive, size,
)
from asyncsub.session.unfolding import AnnotationSupply, decorate, erase, expose, unfold

__all__ = [
    'Annotation', 'AnnotationSupply', 'Branch', 'End', 'FragmentReport', 'Hole',
    'InputDecomposition', 'Label', 'Leaf', 'Rec', 'Select', 'SessionType', 'Var',
    'annotations', 'canonical', 'classify', 'decompose_input_context', 'decorate',
    'deep_terms', 'erase', 'expose', 'fill', 'has_branch', 'is_contractive',
    'is_input_guarded', 'is_single_input', 'is_single_output', 'load_type', 'parse',
    'render', 'size', 'unfold',
]
