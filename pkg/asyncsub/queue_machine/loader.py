"""
Line-based queue machine files

    states: q1 q2
    input: a
    queue: a $
    init: $
    start: q1
    delta: q1 a -> q2 .        # "." is the empty word

One delta line per (state, symbol) pair.
"""

import logging
from pathlib import Path
from typing import Dict, List, Tuple, Union

from asyncsub.errors import MachineDefinitionError
from asyncsub.queue_machine.machine import QueueMachine, State, Symbol, Word
from asyncsub.session.parser import is_label

logger = logging.getLogger(__name__)

EMPTY_WORD = '.'
_HEADERS = ('states', 'input', 'queue', 'init', 'start')
# symbols become choice labels of the encoded session types
_SYMBOL_HEADERS = ('input', 'queue', 'init')


def parse_machine(text: str) -> QueueMachine:
    """
    Build a queue machine from its textual definition

    Raises:
        MachineDefinitionError: unknown keys, malformed or duplicate delta
            lines, symbols that cannot be written as labels, missing headers
            or an incomplete transition function
    """
    headers: Dict[str, List[str]] = {}
    delta: Dict[Tuple[State, Symbol], Tuple[State, Word]] = {}

    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split('#', 1)[0].strip()
        if not line:
            continue
        key, separator, value = line.partition(':')
        key = key.strip()
        if not separator:
            raise MachineDefinitionError(f"expected 'key: value', got '{line}'", number)
        if key == 'delta':
            source, target = _parse_delta(value, number)
            if source in delta:
                raise MachineDefinitionError(f"duplicate delta entry for ({source[0]}, {source[1]})", number)
            delta[source] = target
        elif key in _HEADERS:
            if key in headers:
                raise MachineDefinitionError(f"'{key}' is declared twice", number)
            headers[key] = value.split()
            if key in _SYMBOL_HEADERS:
                _check_symbols(headers[key], number)
        else:
            raise MachineDefinitionError(f"unknown key '{key}'", number)

    missing = [key for key in _HEADERS if key not in headers]
    if missing:
        raise MachineDefinitionError(f"missing '{missing[0]}' declaration")
    for key in ('init', 'start'):
        if len(headers[key]) != 1:
            raise MachineDefinitionError(f"'{key}' takes exactly one value")

    return QueueMachine(
        states=tuple(headers['states']),
        input_alphabet=tuple(headers['input']),
        queue_alphabet=tuple(headers['queue']),
        initial_symbol=headers['init'][0],
        start=headers['start'][0],
        delta=delta,
    )


def _check_symbols(symbols: List[Symbol], number: int):
    for symbol in symbols:
        if not is_label(symbol):
            raise MachineDefinitionError(f"symbol '{symbol}' is not a valid label", number)


def _parse_delta(value: str, number: int) -> Tuple[Tuple[State, Symbol], Tuple[State, Word]]:
    lhs, arrow, rhs = value.partition('->')
    source = lhs.split()
    target = rhs.split()
    if not arrow or len(source) != 2 or len(target) < 2:
        raise MachineDefinitionError("delta lines read 'state symbol -> state word'", number)
    word = target[1:]
    if word == [EMPTY_WORD]:
        word = []
    elif EMPTY_WORD in word:
        raise MachineDefinitionError(f"'{EMPTY_WORD}' must stand alone for the empty word", number)
    return (source[0], source[1]), (target[0], tuple(word))


def dump_machine(m: QueueMachine) -> str:
    lines = [
        f"states: {' '.join(m.states)}",
        f"input: {' '.join(m.input_alphabet)}",
        f"queue: {' '.join(m.queue_alphabet)}",
        f"init: {m.initial_symbol}",
        f"start: {m.start}",
    ]
    for state in m.states:
        for symbol in m.queue_alphabet:
            target, word = m.transition(state, symbol)
            lines.append(f"delta: {state} {symbol} -> {target} {' '.join(word) if word else EMPTY_WORD}")
    return '\n'.join(lines) + '\n'


def load_machine(path: Union[str, Path]) -> QueueMachine:
    try:
        text = Path(path).read_text(encoding='utf-8')
        machine = parse_machine(text)
        logger.info(f"Loaded queue machine from {path} ({len(machine.states)} states)")
        return machine
    except MachineDefinitionError as e:
        logger.info(f"Invalid queue machine in {path}: {e}")
        raise
