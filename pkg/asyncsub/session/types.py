"""
Session type syntax tree
Terms are immutable and shared: building a term equal to a live one returns
that same object. Structural hashes are computed once, bottom-up, when a node
is built, and derived values (erasure, unfoldings, depth) are remembered on
the node. Long chains of accumulated inputs therefore cost only their newest
nodes when the checker extends or unfolds them.
"""

import sys
import weakref
from contextlib import contextmanager
from dataclasses import dataclass
from typing import Any, Dict, FrozenSet, Iterator, List, Mapping, NewType, Optional, Sequence, Set, Tuple, Union

from asyncsub.errors import DuplicateLabel

Label = str
Annotation = NewType('Annotation', int)
Choices = Tuple[Tuple[Label, 'SessionType'], ...]

# Terms built by the checker grow one input per anticipated output.
DEEP_TERM_RECURSION_LIMIT = 200000


@contextmanager
def deep_terms(limit: int = DEEP_TERM_RECURSION_LIMIT):
    """Temporarily raise the interpreter recursion limit for deep terms"""
    previous = sys.getrecursionlimit()
    if limit > previous:
        sys.setrecursionlimit(limit)
    try:
        yield
    finally:
        sys.setrecursionlimit(previous)


# Keyed by constructor, scalars and the identities of the (already shared) children.
# A live entry keeps its children alive, so their identities cannot be reused.
_TERMS: 'weakref.WeakValueDictionary[tuple, SessionType]' = weakref.WeakValueDictionary()


def _intern(node: 'SessionType') -> 'SessionType':
    key = (type(node), node._scalars(), tuple(map(id, node._children())))
    shared = _TERMS.get(key)
    if shared is None:
        shared = _TERMS.setdefault(key, node)
    return shared


class _Shared(type):
    """Metaclass returning the live term equal to the one being built, if any"""

    def __call__(cls, *args, **kwargs):
        return _intern(super().__call__(*args, **kwargs))


class SessionType(metaclass=_Shared):
    """Base class of the five term constructors (plus context holes)"""

    _hash: int
    _annotated: bool

    def _scalars(self) -> tuple:
        return ()

    def _children(self) -> Tuple['SessionType', ...]:
        return ()

    def _seal(self):
        children = self._children()
        object.__setattr__(self, '_hash', hash((type(self).__name__, self._scalars(),
                                                tuple([child._hash for child in children]))))
        annotated = getattr(self, 'annotation', None) is not None or any(child._annotated for child in children)
        object.__setattr__(self, '_annotated', annotated)

    def __hash__(self) -> int:
        return self._hash

    def __eq__(self, other) -> bool:
        if not isinstance(other, SessionType):
            return NotImplemented
        stack = [(self, other)]
        while stack:
            left, right = stack.pop()
            if left is right:
                continue
            if type(left) is not type(right) or left._hash != right._hash:
                return False
            if left._scalars() != right._scalars():
                return False
            left_children = left._children()
            right_children = right._children()
            if len(left_children) != len(right_children):
                return False
            stack.extend(zip(left_children, right_children))
        return True

    def __ne__(self, other) -> bool:
        result = self.__eq__(other)
        return result if result is NotImplemented else not result

    def __str__(self) -> str:
        from asyncsub.session.parser import render
        return render(self)


def derived(node: SessionType) -> Dict[Any, Any]:
    """Values computed from node; terms never change, so entries never go stale"""
    values = node.__dict__.get('_derived')
    if values is None:
        values = node.__dict__.setdefault('_derived', {})
    return values


@dataclass(frozen=True, eq=False)
class End(SessionType):
    """Session termination"""

    def __post_init__(self):
        self._seal()

    def __repr__(self) -> str:
        return 'End()'


@dataclass(frozen=True, eq=False)
class Var(SessionType):
    name: str

    def __post_init__(self):
        self._seal()

    def _scalars(self) -> tuple:
        return (self.name,)

    def __repr__(self) -> str:
        return f'Var({self.name!r})'


@dataclass(frozen=True, eq=False)
class Rec(SessionType):
    name: str
    body: SessionType

    def __post_init__(self):
        self._seal()

    def _scalars(self) -> tuple:
        return (self.name,)

    def _children(self) -> Tuple[SessionType, ...]:
        return (self.body,)

    def __repr__(self) -> str:
        return f'Rec({self.name!r}, {self.body!r})'


class _Choice(SessionType):
    """Shared behaviour of output selections and input branchings"""

    choices: Choices

    def _check_choices(self):
        if not self.choices:
            raise ValueError(f"{type(self).__name__} needs at least one choice")
        seen: Set[Label] = set()
        for label, _ in self.choices:
            if label in seen:
                raise DuplicateLabel(f"label '{label}' appears twice in one choice")
            seen.add(label)

    def _seal(self):
        object.__setattr__(self, '_labels', tuple([label for label, _ in self.choices]))
        super()._seal()

    def _children(self) -> Tuple[SessionType, ...]:
        return tuple([continuation for _, continuation in self.choices])

    @property
    def labels(self) -> Tuple[Label, ...]:
        return self._labels

    @property
    def is_single(self) -> bool:
        return len(self.choices) == 1

    def continuation(self, label: Label) -> SessionType:
        for candidate, continuation in self.choices:
            if candidate == label:
                return continuation
        raise KeyError(label)

    def items(self) -> Choices:
        return self.choices


@dataclass(frozen=True, eq=False)
class Select(_Choice):
    """Output selection +{l: T, ...}"""

    choices: Choices

    def __post_init__(self):
        self._check_choices()
        self._seal()

    @classmethod
    def of(cls, choices: Union[Mapping[Label, SessionType], Sequence[Tuple[Label, SessionType]]]) -> 'Select':
        pairs = choices.items() if isinstance(choices, Mapping) else choices
        return cls(tuple((label, continuation) for label, continuation in pairs))

    @classmethod
    def trusted(cls, choices: Choices) -> 'Select':
        """Build from the labels of an existing selection, skipping label checks"""
        node = object.__new__(cls)
        object.__setattr__(node, 'choices', choices)
        node._seal()
        return _intern(node)

    def with_choices(self, choices: Choices) -> 'Select':
        """Same labels, new continuations"""
        return Select.trusted(choices)

    def _scalars(self) -> tuple:
        return (self._labels,)

    def __repr__(self) -> str:
        return f'Select({dict(self.choices)!r})'


@dataclass(frozen=True, eq=False)
class Branch(_Choice):
    """Input branching &{l: T, ...}, optionally carrying an annotation"""

    choices: Choices
    annotation: Optional[Annotation] = None

    def __post_init__(self):
        self._check_choices()
        self._seal()

    @classmethod
    def of(cls, choices: Union[Mapping[Label, SessionType], Sequence[Tuple[Label, SessionType]]],
           annotation: Optional[int] = None) -> 'Branch':
        pairs = choices.items() if isinstance(choices, Mapping) else choices
        return cls(tuple((label, continuation) for label, continuation in pairs),
                   None if annotation is None else Annotation(annotation))

    @classmethod
    def trusted(cls, choices: Choices, annotation: Optional[Annotation] = None) -> 'Branch':
        """Build from the labels of an existing branching, skipping label checks"""
        node = object.__new__(cls)
        object.__setattr__(node, 'choices', choices)
        object.__setattr__(node, 'annotation', annotation)
        node._seal()
        return _intern(node)

    def with_choices(self, choices: Choices) -> 'Branch':
        """Same labels and annotation, new continuations"""
        return Branch.trusted(choices, self.annotation)

    def _scalars(self) -> tuple:
        return (self._labels, self.annotation)

    def __repr__(self) -> str:
        suffix = '' if self.annotation is None else f', annotation={self.annotation}'
        return f'Branch({dict(self.choices)!r}{suffix})'


@dataclass(frozen=True, eq=False)
class Hole(SessionType):
    """Numbered hole []ⁿ of an input context"""

    index: int

    def __post_init__(self):
        self._seal()

    def _scalars(self) -> tuple:
        return (self.index,)

    def __repr__(self) -> str:
        return f'Hole({self.index})'


def subterms(t: SessionType) -> Iterator[SessionType]:
    """Pre-order iteration over every node of a term"""
    stack = [t]
    while stack:
        node = stack.pop()
        yield node
        stack.extend(reversed(node._children()))


def size(t: SessionType) -> int:
    return sum(1 for _ in subterms(t))


def has_branch(t: SessionType) -> bool:
    """True when an input branching occurs anywhere in t"""
    values = derived(t)
    found = values.get('has_branch')
    if found is None:
        found = values['has_branch'] = any(isinstance(node, Branch) for node in subterms(t))
    return found


def annotations(t: SessionType) -> List[Annotation]:
    if not t._annotated:
        return []
    return [node.annotation for node in subterms(t)
            if isinstance(node, Branch) and node.annotation is not None]


def free_names(t: SessionType) -> FrozenSet[str]:
    """Free recursion variables of t, remembered per node"""
    values = derived(t)
    names = values.get('free')
    if names is None:
        if isinstance(t, Var):
            names = frozenset((t.name,))
        elif isinstance(t, Rec):
            names = free_names(t.body) - {t.name}
        else:
            names = frozenset().union(*[free_names(child) for child in t._children()])
        values['free'] = names
    return names


def free_vars(t: SessionType) -> Set[str]:
    return set(free_names(t))


def unguarded_recursion(t: SessionType) -> Optional[str]:
    """Name of a recursion variable occurring unguarded in its body, if any"""
    # each binder in scope maps to whether a Select/Branch separates it from the node
    stack: List[Tuple[SessionType, Dict[str, bool]]] = [(t, {})]
    while stack:
        node, scope = stack.pop()
        if isinstance(node, Var):
            if scope.get(node.name) is False:
                return node.name
        elif isinstance(node, Rec):
            inner = dict(scope)
            inner[node.name] = False
            stack.append((node.body, inner))
        elif isinstance(node, _Choice):
            guarded = {name: True for name in scope}
            for child in node._children():
                stack.append((child, guarded))
    return None


def is_contractive(t: SessionType) -> bool:
    return unguarded_recursion(t) is None


def canonical(t: SessionType) -> SessionType:
    """
    Alpha-normal form: bound recursion variables renamed by left-to-right
    numbering of their binders, so alpha-equivalent terms compare equal
    """
    counter = [0]

    def walk(node: SessionType, renaming: Dict[str, str]) -> SessionType:
        if isinstance(node, Var):
            return Var(renaming.get(node.name, node.name))
        if isinstance(node, Rec):
            fresh = f'${counter[0]}'
            counter[0] += 1
            inner = dict(renaming)
            inner[node.name] = fresh
            return Rec(fresh, walk(node.body, inner))
        if isinstance(node, _Choice):
            choices = [(label, walk(continuation, renaming)) for label, continuation in node.choices]
            return node.with_choices(tuple(choices))
        return node

    return walk(t, {})
