"""
Concrete syntax of session types
Parses the textual grammar with lark and prints terms back in the same syntax.
"""

import logging
import re
from pathlib import Path
from typing import Dict, List, Union

from lark import Lark, Token, Tree
from lark.exceptions import UnexpectedInput

from asyncsub.errors import DuplicateLabel, NonContractive, TypeSyntaxError, UnboundVariable
from asyncsub.session.types import (
    Annotation, Branch, End, Hole, Rec, Select, SessionType, Var, _Choice,
)

logger = logging.getLogger(__name__)

# Labels and recursion variables share one lexical class
LABEL_PATTERN = r"[A-Za-z_$][A-Za-z0-9_'$]*"

SESSION_TYPE_GRAMMAR = r'''
    ?start: type

    ?type: END                          -> end
         | REC NAME "." type            -> rec
         | "+" "{" choices "}"          -> select
         | "&" annotation? "{" choices "}" -> branch
         | NAME                         -> var

    annotation: "@" INT
    choices: choice ("," choice)*
    choice: label ":" type
    label: NAME | END | REC

    END: "end"
    REC: "rec"
    NAME: /''' + LABEL_PATTERN + r'''/
    COMMENT: /#[^\n]*/

    %import common.INT
    %import common.WS
    %ignore WS
    %ignore COMMENT
'''

_parser = Lark(SESSION_TYPE_GRAMMAR, parser='lalr', propagate_positions=True, maybe_placeholders=False)
_LABEL = re.compile(LABEL_PATTERN)


def is_label(text: str) -> bool:
    """True when text can be written as a choice label"""
    return _LABEL.fullmatch(text) is not None


def parse(text: str) -> SessionType:
    """
    Parse a session type

    Args:
        text: term in the concrete grammar, e.g. ``rec t. &{l: +{l: t}}``

    Returns:
        Closed, contractive term (annotations kept when written as ``&@n``)
    """
    try:
        tree = _parser.parse(text)
    except UnexpectedInput as e:
        raise TypeSyntaxError(f"unexpected input: {_describe(e)}", e.line, e.column) from e
    return _build(tree, {})


def _describe(error: UnexpectedInput) -> str:
    token = getattr(error, 'token', None)
    if token is not None:
        return 'end of input' if token.type == '$END' else repr(str(token))
    char = getattr(error, 'char', None)
    return repr(char) if char is not None else 'syntax error'


def _position(node: Union[Tree, Token]):
    if isinstance(node, Token):
        return node.line, node.column
    return getattr(node.meta, 'line', None), getattr(node.meta, 'column', None)


def _build(node: Union[Tree, Token], scope: Dict[str, bool]) -> SessionType:
    # scope maps each bound variable to whether a choice guards it at this point
    kind = node.data
    if kind == 'end':
        return End()
    if kind == 'var':
        name_token = node.children[0]
        name = str(name_token)
        if name not in scope:
            raise UnboundVariable(f"recursion variable '{name}' is not bound", *_position(name_token))
        if not scope[name]:
            raise NonContractive(f"recursion variable '{name}' occurs unguarded", *_position(name_token))
        return Var(name)
    if kind == 'rec':
        _, name_token, body = node.children
        inner = dict(scope)
        inner[str(name_token)] = False
        return Rec(str(name_token), _build(body, inner))
    if kind in ('select', 'branch'):
        annotation = None
        children = list(node.children)
        if children and isinstance(children[0], Tree) and children[0].data == 'annotation':
            annotation = Annotation(int(children.pop(0).children[0]))
        guarded = {name: True for name in scope}
        choices = []
        seen = set()
        for choice in children[0].children:
            label_tree, continuation = choice.children
            label_token = label_tree.children[0]
            label = str(label_token)
            if label in seen:
                raise DuplicateLabel(f"label '{label}' appears twice in one choice", *_position(label_token))
            seen.add(label)
            choices.append((label, _build(continuation, guarded)))
        if kind == 'select':
            return Select(tuple(choices))
        return Branch(tuple(choices), annotation)
    raise TypeSyntaxError(f"unexpected construct '{kind}'", *_position(node))


def render(t: SessionType) -> str:
    """Print a term in the concrete grammar (annotations as ``&@n``)"""
    parts: List[str] = []
    _render_into(t, parts)
    return ''.join(parts)


def _render_into(t: SessionType, parts: List[str]):
    if isinstance(t, End):
        parts.append('end')
    elif isinstance(t, Var):
        parts.append(t.name)
    elif isinstance(t, Rec):
        parts.append(f'rec {t.name}. ')
        _render_into(t.body, parts)
    elif isinstance(t, _Choice):
        if isinstance(t, Select):
            parts.append('+{')
        elif t.annotation is None:
            parts.append('&{')
        else:
            parts.append(f'&@{t.annotation}{{')
        for position, (label, continuation) in enumerate(t.choices):
            if position:
                parts.append(', ')
            parts.append(f'{label}: ')
            _render_into(continuation, parts)
        parts.append('}')
    elif isinstance(t, Hole):
        parts.append(f'[]{t.index}')
    else:
        raise TypeError(f"not a session type: {t!r}")


def load_type(path: Union[str, Path]) -> SessionType:
    """Read a ``.st`` file (UTF-8) and parse it"""
    path = Path(path)
    text = path.read_text(encoding='utf-8')
    t = parse(text)
    logger.info(f"Loaded session type from {path}")
    return t
