"""
Queue machines, their simulator and their session type encodings
"""

from asyncsub.queue_machine.encoding import encode_control, encode_queue, reduction
from asyncsub.queue_machine.loader import dump_machine, load_machine, parse_machine
from asyncsub.queue_machine.machine import (
    TERMINAL, Accepted, Configuration, QueueMachine, StillRunning, Terminal,
    anbn_machine, run, step, trace, two_state_machine,
)

__all__ = [
    'Accepted', 'Configuration', 'QueueMachine', 'StillRunning', 'TERMINAL', 'Terminal',
    'anbn_machine', 'dump_machine', 'encode_control', 'encode_queue', 'load_machine',
    'parse_machine', 'reduction', 'run', 'step', 'trace', 'two_state_machine',
]
