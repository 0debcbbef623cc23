#!/usr/bin/env python3
"""
Tests for queue machines, the .qm loader and the session type encodings
"""

import pytest
from hypothesis import given, settings

from asyncsub.errors import MachineDefinitionError
from asyncsub.queue_machine import (
    TERMINAL, Accepted, Configuration, QueueMachine, StillRunning, dump_machine,
    encode_control, encode_queue, load_machine, parse_machine, reduction, run, step, trace,
)
from asyncsub.session import Branch, Rec, classify, parse
from asyncsub.session.contexts import decompose_input_context
from asyncsub.subtyping import NotSubtype, semi_check
from generators import machine_configurations, queue_machines

ANBN_TRACE = [
    '(q1,aabb$)', '(q2,abb$)', '(q2,bb$a)', '(q3,b$a)', '(q3,$ab)',
    '(q1,ab$)', '(q2,b$)', '(q3,$)', '(q1,$)', '(q1,ε)',
]


# --- simulation ---

def test_step_consumes_front_symbol(anbn):
    assert step(anbn, Configuration('q1', tuple('aabb$'))) == Configuration('q2', tuple('abb$'))


def test_step_appends_written_word(anbn):
    assert step(anbn, Configuration('q2', tuple('bb$a'))) == Configuration('q3', tuple('b$a'))


def test_step_on_empty_queue_is_terminal(anbn):
    assert step(anbn, Configuration('q2')) is TERMINAL


def test_run_accepts_aabb(anbn):
    assert run(anbn, 'aabb', 100) == Accepted(9)


def test_trace_reproduces_the_aabb_run(anbn):
    assert [c.render() for c in trace(anbn, 'aabb', 100)] == ANBN_TRACE


def test_run_accepts_empty_word(anbn):
    assert run(anbn, '', 100) == Accepted(1)


def test_run_rejects_into_the_sink(anbn):
    result = run(anbn, 'ba', 1000)
    assert isinstance(result, StillRunning)
    assert result.steps == 1000
    assert result.configuration.state == 'qs'


def test_run_rejects_unknown_input_symbol(anbn):
    with pytest.raises(ValueError):
        run(anbn, 'abc', 10)


def test_delta_examples(anbn):
    assert anbn.transition('q1', 'a') == ('q2', ())
    assert anbn.transition('qs', 'b') == ('qs', ('b',))
    assert anbn.transition('q3', '$') == ('q1', ('$',))


def test_configuration_render():
    assert str(Configuration('q', ())) == '(q,ε)'
    assert Configuration('q', ('a', '$')).render() == '(q,a$)'


# --- machine definitions ---

def test_incomplete_delta_rejected():
    with pytest.raises(MachineDefinitionError) as excinfo:
        QueueMachine(('q',), ('a',), ('a', '$'), '$', 'q', {('q', 'a'): ('q', ())})
    assert '(q, $)' in str(excinfo.value)


def test_initial_symbol_must_be_queue_only():
    delta = {('q', 'a'): ('q', ()), ('q', '$'): ('q', ())}
    with pytest.raises(MachineDefinitionError):
        QueueMachine(('q',), ('a', '$'), ('a', '$'), '$', 'q', delta)


def test_unknown_target_rejected():
    delta = {('q', 'a'): ('p', ()), ('q', '$'): ('q', ())}
    with pytest.raises(MachineDefinitionError):
        QueueMachine(('q',), ('a',), ('a', '$'), '$', 'q', delta)


def test_load_sample_machines(samples_dir, anbn, two_state):
    assert load_machine(samples_dir / 'anbn.qm') == anbn
    assert load_machine(samples_dir / 'two_state.qm') == two_state


def test_dump_then_parse(anbn):
    assert parse_machine(dump_machine(anbn)) == anbn


HEADER = "states: q\ninput: a\nqueue: a $\ninit: $\nstart: q\n"


def test_loader_reports_duplicate_delta():
    text = HEADER + "delta: q a -> q .\ndelta: q $ -> q .\ndelta: q a -> q a\n"
    with pytest.raises(MachineDefinitionError) as excinfo:
        parse_machine(text)
    assert excinfo.value.line == 8


def test_loader_reports_missing_delta():
    with pytest.raises(MachineDefinitionError):
        parse_machine(HEADER + "delta: q a -> q .\n")


def test_loader_reports_unknown_key():
    with pytest.raises(MachineDefinitionError) as excinfo:
        parse_machine("stats: q\n")
    assert excinfo.value.line == 1


def test_loader_reports_malformed_delta():
    with pytest.raises(MachineDefinitionError):
        parse_machine(HEADER + "delta: q a q\n")


def test_loader_reports_missing_header():
    with pytest.raises(MachineDefinitionError) as excinfo:
        parse_machine("states: q\ninput: a\nqueue: a $\ninit: $\n")
    assert 'start' in str(excinfo.value)


@pytest.mark.parametrize('header, symbol, line', [
    ('input', 'a-b', 2),
    ('queue', '0x', 3),
    ('init', '@', 4),
])
def test_loader_rejects_symbols_outside_the_label_charset(header, symbol, line):
    lines = HEADER.splitlines()
    lines[line - 1] = f"{header}: {symbol}"
    with pytest.raises(MachineDefinitionError) as excinfo:
        parse_machine('\n'.join(lines) + '\n')
    assert excinfo.value.line == line
    assert symbol in str(excinfo.value)


def test_loader_ignores_comments():
    text = "# header\n" + HEADER + "delta: q a -> q .   # drop\ndelta: q $ -> q .\n"
    assert parse_machine(text).transition('q', 'a') == ('q', ())


# --- encodings ---

def test_encode_empty_queue(anbn):
    assert encode_queue(anbn, '') == parse('rec t. +{a: &{a: t}, b: &{b: t}, $: &{$: t}}')


def test_encode_queue_content(anbn):
    hub = encode_queue(anbn, '')
    assert encode_queue(anbn, 'ab$') == Branch.of({'a': Branch.of({'b': Branch.of({'$': hub})})})


def test_encode_queue_rejects_unknown_symbol(anbn):
    with pytest.raises(ValueError):
        encode_queue(anbn, 'x')


def test_encode_two_state_control():
    machine = QueueMachine(('s', 'q'), (), ('A',), 'A', 's',
                           {('s', 'A'): ('q', ('A',)), ('q', 'A'): ('s', ())})
    assert encode_control(machine) == parse('rec s. &{A: +{A: rec q. &{A: s}}}')


def test_encode_control_of_another_state(two_state):
    assert encode_control(two_state, 'q') == parse('rec q. &{A: rec s. &{A: +{A: q}, $: +{$: q}}, $: rec s. &{A: +{A: q}, $: +{$: q}}}')


def test_encode_control_rejects_unknown_state(anbn):
    with pytest.raises(ValueError):
        encode_control(anbn, 'q9')


def test_encodings_fall_in_their_fragments(anbn):
    control, queue = reduction(anbn, 'ab')
    control_report, queue_report = classify(control), classify(queue)
    assert control_report.single_output and control_report.input_guarded
    assert queue_report.single_input and queue_report.input_guarded


@given(queue_machines())
def test_random_encodings_fall_in_their_fragments(machine):
    control = classify(encode_control(machine))
    queue = classify(encode_queue(machine, machine.queue_alphabet))
    assert control.single_output and control.input_guarded
    assert queue.single_input and queue.input_guarded


@given(machine_configurations())
def test_queue_encoding_has_one_input_per_symbol(pair):
    machine, configuration = pair
    decomposition = decompose_input_context(encode_queue(machine, configuration.queue))
    (leaf,) = decomposition.leaves
    assert [label for label, _ in leaf.path] == list(configuration.queue)
    assert isinstance(leaf.subterm, Rec)


# --- reduction ---

@pytest.mark.parametrize('word', ['', 'ab', 'aabb', 'aaabbb'])
def test_accepted_words_give_non_subtype_pairs(anbn, word):
    control, queue = reduction(anbn, word)
    assert isinstance(semi_check(control, queue, fuel=100000), NotSubtype)


@pytest.mark.parametrize('word', ['a', 'b', 'ba', 'abab', 'aab'])
def test_rejected_words_never_give_errors(anbn, word):
    control, queue = reduction(anbn, word)
    assert not isinstance(semi_check(control, queue, fuel=10000), NotSubtype)


@settings(max_examples=200)
@given(machine_configurations())
def test_errors_propagate_back_along_machine_steps(pair):
    machine, configuration = pair
    successor = step(machine, configuration)
    later = semi_check(encode_control(machine, successor.state), encode_queue(machine, successor.queue),
                       fuel=2000)
    if isinstance(later, NotSubtype):
        earlier = semi_check(encode_control(machine, configuration.state),
                             encode_queue(machine, configuration.queue), fuel=8000)
        assert isinstance(earlier, NotSubtype)
