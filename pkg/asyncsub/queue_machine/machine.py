"""
Queue machines
A finite control reading from and writing to a single FIFO queue; a run
accepts by emptying the queue.
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, List, Mapping, Sequence, Tuple, Union

from asyncsub.errors import MachineDefinitionError

logger = logging.getLogger(__name__)

State = str
Symbol = str
Word = Tuple[Symbol, ...]


@dataclass(frozen=True)
class QueueMachine:
    """
    Six-tuple (Q, Σ_in, Γ, $, s, δ)
    Alphabets and states keep their declaration order, which fixes the order
    of choices in the session type encodings.
    """

    states: Tuple[State, ...]
    input_alphabet: Tuple[Symbol, ...]
    queue_alphabet: Tuple[Symbol, ...]
    initial_symbol: Symbol
    start: State
    delta: Mapping[Tuple[State, Symbol], Tuple[State, Word]] = field(hash=False)

    def __post_init__(self):
        self._validate()

    def _validate(self):
        if not self.states:
            raise MachineDefinitionError("a queue machine needs at least one state")
        for name, values in (('states', self.states), ('input alphabet', self.input_alphabet),
                             ('queue alphabet', self.queue_alphabet)):
            if len(set(values)) != len(values):
                raise MachineDefinitionError(f"{name} lists an element twice")
        if self.start not in self.states:
            raise MachineDefinitionError(f"start state '{self.start}' is not a state")
        queue = set(self.queue_alphabet)
        if not set(self.input_alphabet) < queue:
            raise MachineDefinitionError("input alphabet must be a strict subset of the queue alphabet")
        if self.initial_symbol not in queue or self.initial_symbol in self.input_alphabet:
            raise MachineDefinitionError(f"initial symbol '{self.initial_symbol}' must be a queue-only symbol")

        expected = {(state, symbol) for state in self.states for symbol in self.queue_alphabet}
        missing = expected - set(self.delta)
        if missing:
            state, symbol = sorted(missing)[0]
            raise MachineDefinitionError(f"delta is undefined for ({state}, {symbol})")
        extra = set(self.delta) - expected
        if extra:
            state, symbol = sorted(extra)[0]
            raise MachineDefinitionError(f"delta has an entry for unknown pair ({state}, {symbol})")
        for (state, symbol), (target, word) in self.delta.items():
            if target not in self.states:
                raise MachineDefinitionError(f"delta({state}, {symbol}) targets unknown state '{target}'")
            unknown = [written for written in word if written not in queue]
            if unknown:
                raise MachineDefinitionError(f"delta({state}, {symbol}) writes unknown symbol '{unknown[0]}'")

    def transition(self, state: State, symbol: Symbol) -> Tuple[State, Word]:
        return self.delta[(state, symbol)]


@dataclass(frozen=True)
class Configuration:
    """Control state and queue content, front of the queue first"""

    state: State
    queue: Word = ()

    def render(self) -> str:
        content = ''.join(self.queue) if self.queue else 'ε'
        return f"({self.state},{content})"

    def __str__(self) -> str:
        return self.render()


class Terminal:
    """Blocking configuration: the queue is empty"""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return 'TERMINAL'


TERMINAL = Terminal()


@dataclass(frozen=True)
class Accepted:
    steps: int


@dataclass(frozen=True)
class StillRunning:
    configuration: Configuration
    steps: int


RunResult = Union[Accepted, StillRunning]


def step(m: QueueMachine, c: Configuration) -> Union[Configuration, Terminal]:
    """Consume the front symbol and append what delta writes"""
    if not c.queue:
        return TERMINAL
    front, rest = c.queue[0], c.queue[1:]
    target, word = m.transition(c.state, front)
    return Configuration(target, rest + word)


def initial_configuration(m: QueueMachine, input_word: Sequence[Symbol]) -> Configuration:
    word = tuple(input_word)
    unknown = [symbol for symbol in word if symbol not in m.input_alphabet]
    if unknown:
        raise ValueError(f"'{unknown[0]}' is not an input symbol")
    return Configuration(m.start, word + (m.initial_symbol,))


def trace(m: QueueMachine, input_word: Sequence[Symbol], max_steps: int) -> List[Configuration]:
    """Configurations visited from (s, x$), at most max_steps transitions"""
    current = initial_configuration(m, input_word)
    visited = [current]
    while current.queue and len(visited) <= max_steps:
        current = step(m, current)
        visited.append(current)
    return visited


def run(m: QueueMachine, input_word: Sequence[Symbol], max_steps: int) -> RunResult:
    """
    Simulate m on input_word

    Args:
        m: queue machine
        input_word: symbols of the input alphabet (a string is read one character per symbol)
        max_steps: largest number of transitions to take

    Returns:
        Accepted with the number of transitions when the queue empties,
        StillRunning with the last configuration otherwise
    """
    configurations = trace(m, input_word, max_steps)
    last = configurations[-1]
    steps = len(configurations) - 1
    if not last.queue:
        logger.info(f"Input {''.join(input_word) or 'ε'} accepted after {steps} steps")
        return Accepted(steps)
    logger.info(f"Input {''.join(input_word) or 'ε'} still running after {steps} steps at {last.render()}")
    return StillRunning(last, steps)


def anbn_machine() -> QueueMachine:
    """Queue machine accepting aⁿbⁿ, with sink state qs"""
    delta: Dict[Tuple[State, Symbol], Tuple[State, Word]] = {
        ('q1', 'a'): ('q2', ()),
        ('q1', 'b'): ('qs', ('b',)),
        ('q1', '$'): ('q1', ()),
        ('q2', 'a'): ('q2', ('a',)),
        ('q2', 'b'): ('q3', ()),
        ('q2', '$'): ('qs', ('$',)),
        ('q3', 'a'): ('qs', ('a',)),
        ('q3', 'b'): ('q3', ('b',)),
        ('q3', '$'): ('q1', ('$',)),
    }
    for symbol in ('a', 'b', '$'):
        delta[('qs', symbol)] = ('qs', (symbol,))
    return QueueMachine(('q1', 'q2', 'q3', 'qs'), ('a', 'b'), ('a', 'b', '$'), '$', 'q1', delta)


def two_state_machine(symbols: Sequence[Symbol] = ('A',)) -> QueueMachine:
    """Two states s and q: s copies the front symbol to the back, q drops it"""
    queue_alphabet = tuple(symbols) + ('$',)
    delta: Dict[Tuple[State, Symbol], Tuple[State, Word]] = {}
    for symbol in queue_alphabet:
        delta[('s', symbol)] = ('q', (symbol,))
        delta[('q', symbol)] = ('s', ())
    return QueueMachine(('s', 'q'), tuple(symbols), queue_alphabet, '$', 's', delta)
