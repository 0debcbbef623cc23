"""
Shared fixtures for the AsyncSub test suites
"""

import os
import sys
from pathlib import Path

import pytest
from hypothesis import settings

sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

from asyncsub.queue_machine import anbn_machine, two_state_machine
from asyncsub.session import parse

# Checks on random instances can take a while; wall-clock deadlines would make them flaky.
settings.register_profile('asyncsub', deadline=None)
settings.load_profile('asyncsub')

SAMPLES = Path(__file__).parent / 'samples'

collect_ignore = ['examples']


@pytest.fixture
def samples_dir() -> Path:
    return SAMPLES


@pytest.fixture
def anbn():
    return anbn_machine()


@pytest.fixture
def two_state():
    return two_state_machine()


@pytest.fixture
def accumulating_pair():
    """Subtype pair whose witness accumulates inputs without bound"""
    return parse('rec t. &{l: +{l: t}}'), parse('rec t. &{l: &{l: +{l: t}}}')


@pytest.fixture
def coffee_pair():
    """Coffee anticipated before the button, with a finite witness"""
    return (parse('rec t. +{coffee: &{but1: t, but2: t}}'),
            parse('rec s. &{but1: +{coffee: s}, but2: +{coffee: s}}'))


@pytest.fixture
def coffee_tea_pair():
    return (parse('rec t. &{but1: +{coffee: t}, but2: +{tea: t}}'),
            parse('rec t. &{but2: +{coffee: t, tea: &{but1: t, but2: t}}}'))
