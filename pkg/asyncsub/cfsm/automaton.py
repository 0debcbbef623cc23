"""
Communicating finite-state machine of a session type
States are the terms reachable by sending or receiving a label. A recursive
definition moves as its unfolding does, so it is a state of its own and is
unfolded only to find its moves.
"""

import logging
from collections import deque
from dataclasses import dataclass
from typing import Deque, Dict, Iterator, List, Optional, Tuple

import networkx as nx

from asyncsub.errors import StateExplosion
from asyncsub.session.parser import render
from asyncsub.session.types import Branch, Label, Select, SessionType, canonical
from asyncsub.session.unfolding import erase, expose

logger = logging.getLogger(__name__)

SEND = '!'
RECEIVE = '?'
DEFAULT_STATE_CEILING = 100000

Transition = Tuple[SessionType, Label, str, SessionType]


@dataclass
class Cfsm:
    """
    Automaton (Q, q₀, L, δ) over a networkx multigraph
    Nodes are canonical terms; each edge carries its label and polarity.
    """

    graph: nx.MultiDiGraph
    initial: SessionType

    @property
    def states(self) -> List[SessionType]:
        return list(self.graph.nodes)

    @property
    def alphabet(self) -> frozenset:
        return frozenset(label for _, _, label in self.graph.edges(data='label'))

    def transitions(self) -> Iterator[Transition]:
        for source, target, data in self.graph.edges(data=True):
            yield source, data['label'], data['polarity'], target

    def moves(self, state: SessionType) -> List[Tuple[Label, str, SessionType]]:
        return [(data['label'], data['polarity'], target)
                for _, target, data in self.graph.out_edges(state, data=True)]

    def bfs_order(self) -> List[SessionType]:
        """States in breadth-first order from the initial state, edges in insertion order"""
        order = [self.initial]
        seen = {self.initial}
        frontier: Deque[SessionType] = deque([self.initial])
        while frontier:
            state = frontier.popleft()
            for _, target in self.graph.out_edges(state):
                if target not in seen:
                    seen.add(target)
                    order.append(target)
                    frontier.append(target)
        return order


def _state(t: SessionType) -> SessionType:
    return canonical(t)


def build_cfsm(t: SessionType, ceiling: Optional[int] = None, config=None) -> Cfsm:
    """
    Enumerate the states reachable from t

    Args:
        t: closed, contractive term; annotations are dropped
        ceiling: largest number of states; defaults to ASYNCSUB_CFSM_STATE_CEILING

    Returns:
        The automaton CFSM(t)
    """
    if ceiling is None:
        ceiling = getattr(config, 'ASYNCSUB_CFSM_STATE_CEILING', DEFAULT_STATE_CEILING)

    graph = nx.MultiDiGraph()
    initial = _state(erase(t))
    graph.add_node(initial)
    frontier: Deque[SessionType] = deque([initial])

    while frontier:
        state = frontier.popleft()
        exposed = expose(state)
        if not isinstance(exposed, (Select, Branch)):
            continue
        polarity = SEND if isinstance(exposed, Select) else RECEIVE
        for label, continuation in exposed.choices:
            target = _state(continuation)
            if target not in graph:
                if graph.number_of_nodes() >= ceiling:
                    logger.info(f"CFSM construction stopped at {ceiling} states")
                    raise StateExplosion(ceiling)
                graph.add_node(target)
                frontier.append(target)
            graph.add_edge(state, target, label=label, polarity=polarity)

    logger.info(f"Built CFSM with {graph.number_of_nodes()} states and {graph.number_of_edges()} transitions")
    return Cfsm(graph, initial)


def _quote(text: str) -> str:
    return '"' + text.replace('\\', '\\\\').replace('"', '\\"') + '"'


def to_dot(c: Cfsm) -> str:
    """DOT digraph with states numbered in breadth-first order"""
    order = c.bfs_order()
    ids: Dict[SessionType, int] = {state: number for number, state in enumerate(order)}
    lines = ['digraph cfsm {', '    rankdir=LR;']
    for state in order:
        shape = 'doublecircle' if state == c.initial else 'circle'
        lines.append(f"    {ids[state]} [shape={shape}, tooltip={_quote(render(state))}];")
    for state in order:
        for label, polarity, target in c.moves(state):
            lines.append(f"    {ids[state]} -> {ids[target]} [label={_quote(label + polarity)}];")
    lines.append('}')
    return '\n'.join(lines) + '\n'
