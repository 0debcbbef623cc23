"""
Communicating automata extracted from session types
"""

from asyncsub.cfsm.automaton import RECEIVE, SEND, Cfsm, build_cfsm, to_dot

__all__ = ['Cfsm', 'RECEIVE', 'SEND', 'build_cfsm', 'to_dot']
