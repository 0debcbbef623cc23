"""
AsyncSub - asynchronous session subtyping toolkit
Session types, the subtyping procedures, queue machines and their encodings,
and communicating automata.
"""

__version__ = '1.0.0'
