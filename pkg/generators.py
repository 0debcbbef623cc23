"""
Hypothesis strategies shared by the test suites
"""

from typing import Dict, List, Tuple

from hypothesis import strategies as st

from asyncsub.queue_machine import Configuration, QueueMachine
from asyncsub.session import Branch, End, Rec, Select, SessionType, Var
from asyncsub.session.types import free_vars

LABELS = ('a', 'b', 'c')
QUEUE_SYMBOLS = ('a', 'b')


def _choices_count(draw, single: bool) -> int:
    return 1 if single else draw(st.integers(min_value=1, max_value=2))


def _term(draw, depth: int, scope: Dict[str, Tuple[bool, bool]], counter: List[int],
          single_output: bool, single_input: bool, input_guarded: bool) -> SessionType:
    # scope maps a bound name to (guarded by some choice, guarded by an input)
    usable = sorted(name for name, (guarded, under_input) in scope.items()
                    if guarded and (under_input or not input_guarded))
    kinds = ['end']
    if usable:
        kinds += ['var', 'var']
    if depth > 0:
        kinds += ['select', 'branch', 'branch', 'rec']
    kind = draw(st.sampled_from(kinds))

    if kind == 'end':
        return End()
    if kind == 'var':
        return Var(draw(st.sampled_from(usable)))
    if kind == 'rec':
        name = f"x{counter[0]}"
        counter[0] += 1
        inner = dict(scope)
        inner[name] = (False, False)
        body = _term(draw, depth - 1, inner, counter, single_output, single_input, input_guarded)
        return Rec(name, body) if name in free_vars(body) else body

    is_branch = kind == 'branch'
    count = _choices_count(draw, single_input if is_branch else single_output)
    labels = draw(st.lists(st.sampled_from(LABELS), min_size=count, max_size=count, unique=True))
    inner = {name: (True, under_input or is_branch) for name, (_, under_input) in scope.items()}
    choices = tuple((label, _term(draw, depth - 1, inner, counter, single_output, single_input, input_guarded))
                    for label in labels)
    return Branch(choices) if is_branch else Select(choices)


@st.composite
def session_types(draw, max_depth: int = 4, single_output: bool = False, single_input: bool = False,
                  input_guarded: bool = False) -> SessionType:
    """Closed, contractive, un-annotated session types"""
    return _term(draw, max_depth, {}, [0], single_output, single_input, input_guarded)


@st.composite
def fragment_pairs(draw, max_depth: int = 4) -> Tuple[SessionType, SessionType]:
    """Pairs inside the decidable single-choice fragments"""
    if draw(st.booleans()):
        t = draw(session_types(max_depth, single_output=True, single_input=True))
        s = draw(session_types(max_depth, single_input=True))
    else:
        t = draw(session_types(max_depth, single_output=True))
        s = draw(session_types(max_depth, single_output=True, single_input=True))
    return t, s


@st.composite
def queue_machines(draw, max_states: int = 3, max_symbols: int = 3) -> QueueMachine:
    """Small queue machines with at most max_symbols queue symbols, $ included"""
    state_count = draw(st.integers(min_value=1, max_value=max_states))
    states = tuple(f"q{i}" for i in range(state_count))
    symbol_count = draw(st.integers(min_value=1, max_value=max_symbols - 1))
    input_alphabet = QUEUE_SYMBOLS[:symbol_count]
    queue_alphabet = input_alphabet + ('$',)
    delta = {}
    for state in states:
        for symbol in queue_alphabet:
            target = draw(st.sampled_from(states))
            word = tuple(draw(st.lists(st.sampled_from(queue_alphabet), max_size=2)))
            delta[(state, symbol)] = (target, word)
    return QueueMachine(states, input_alphabet, queue_alphabet, '$', states[0], delta)


@st.composite
def machine_configurations(draw, max_queue: int = 4) -> Tuple[QueueMachine, Configuration]:
    """A machine with one of its configurations whose queue is not empty"""
    machine = draw(queue_machines())
    state = draw(st.sampled_from(machine.states))
    queue = tuple(draw(st.lists(st.sampled_from(machine.queue_alphabet), min_size=1, max_size=max_queue)))
    return machine, Configuration(state, queue)
