"""
Session type encodings of queue machines
The finite control becomes a single-output type and the queue content a
single-input type; the machine accepts its input exactly when the pair is
not in the subtyping relation.
"""

import logging
import re
from typing import Dict, FrozenSet, Optional, Sequence, Tuple

from asyncsub.queue_machine.machine import QueueMachine, State, Symbol
from asyncsub.session.types import Branch, Rec, Select, SessionType, Var

logger = logging.getLogger(__name__)

HUB_VARIABLE = 't'


def queue_hub(m: QueueMachine) -> SessionType:
    """⟦ε⟧: offer any queue symbol, then wait for it back"""
    choices = tuple((symbol, Branch(((symbol, Var(HUB_VARIABLE)),))) for symbol in m.queue_alphabet)
    return Rec(HUB_VARIABLE, Select(choices))


def encode_queue(m: QueueMachine, content: Sequence[Symbol]) -> SessionType:
    """⟦C₁…Cₙ⟧: one single-choice input per queued symbol in front of the hub"""
    symbols = tuple(content)
    unknown = [symbol for symbol in symbols if symbol not in m.queue_alphabet]
    if unknown:
        raise ValueError(f"'{unknown[0]}' is not a queue symbol")
    encoded = queue_hub(m)
    for symbol in reversed(symbols):
        encoded = Branch(((symbol, encoded),))
    return encoded


def variable_names(m: QueueMachine) -> Dict[State, str]:
    """Recursion variable per state: the state name restricted to identifier characters"""
    names: Dict[State, str] = {}
    taken = set()
    for state in m.states:
        base = re.sub(r"[^A-Za-z0-9_']", '_', state)
        if not re.match(r'[A-Za-z_]', base):
            base = f"q_{base}"
        if base in ('end', 'rec'):
            base = f"{base}_"
        name, suffix = base, 1
        while name in taken:
            suffix += 1
            name = f"{base}_{suffix}"
        taken.add(name)
        names[state] = name
    return names


def encode_control(m: QueueMachine, state: Optional[State] = None) -> SessionType:
    """
    ⟦q⟧_∅ for the finite control of m, q being the start state unless given

    A state reads any queue symbol A and, for δ(q, A) = (q', B₁…Bₖ), sends
    B₁…Bₖ before continuing as q'; a state already on the current path
    becomes its recursion variable.
    """
    names = variable_names(m)

    def encode(state: State, seen: FrozenSet[State]) -> SessionType:
        if state in seen:
            return Var(names[state])
        inner = seen | {state}
        choices = []
        for symbol in m.queue_alphabet:
            target, word = m.transition(state, symbol)
            continuation = encode(target, inner)
            for written in reversed(word):
                continuation = Select(((written, continuation),))
            choices.append((symbol, continuation))
        return Rec(names[state], Branch(tuple(choices)))

    if state is None:
        state = m.start
    elif state not in m.states:
        raise ValueError(f"'{state}' is not a state")
    return encode(state, frozenset())


def reduction(m: QueueMachine, input_word: Sequence[Symbol]) -> Tuple[SessionType, SessionType]:
    """(⟦s⟧_∅, ⟦x$⟧): not a subtype pair exactly when m accepts input_word"""
    word = tuple(input_word)
    unknown = [symbol for symbol in word if symbol not in m.input_alphabet]
    if unknown:
        raise ValueError(f"'{unknown[0]}' is not an input symbol")
    logger.info(f"Encoding machine with {len(m.states)} states on input {''.join(word) or 'ε'}")
    return encode_control(m), encode_queue(m, word + (m.initial_symbol,))
