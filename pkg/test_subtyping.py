#!/usr/bin/env python3
"""
Tests for the subtyping procedures: depth, the rule system, the semi
procedure, the terminating procedure and the bounded game oracle
"""

import pytest
from hypothesis import assume, given, settings

from asyncsub.errors import FragmentViolation, StepCeilingExceeded
from asyncsub.session import Branch, End, Select, annotations, decorate, parse, size, unfold
from asyncsub.subtyping import (
    CLOSING_RULES, RECURSION_RULES, Environment, Err, FuelExhausted, Inconclusive, Judgment,
    Mode, NotSubtype, Rule, Subtype, SubtypingChecker, check_sin, check_sout, decide, depth, match_asmp2,
    match_asmp3, oracle_check, relation_domains, semi_check, step,
)
from generators import fragment_pairs, session_types

ACCUMULATING_T = parse('rec t. &{l: +{l: t}}')
ACCUMULATING_S = parse('rec t. &{l: &{l: +{l: t}}}')


# --- depth ---

def test_depth_of_output_is_zero():
    assert depth(Select.of({'l': End()})) == 0


def test_depth_of_end_is_undefined():
    assert depth(End()) is None


def test_depth_unfolds_recursion_once():
    assert depth(parse('rec t. &{l: +{l: t}}')) == 1


def test_depth_of_input_loop_is_undefined():
    assert depth(parse('rec t. &{l: t}')) is None


def test_depth_takes_the_maximum_over_branches():
    assert depth(parse('&{a: +{x: end}, b: rec t. &{c: +{y: t}}}')) == 1


def test_depth_respects_visited_names():
    assert depth(parse('rec t. &{l: +{l: t}}'), {'t'}) is None


def test_depth_stops_at_end_behind_inputs():
    assert depth(parse('&{a: +{x: end}, b: end}')) is None


def test_depth_treats_a_shadowing_binder_as_a_new_definition():
    assert depth(parse('rec t. &{l: rec t. +{m: t}}')) == 2


def test_depth_is_remembered_per_term():
    right = parse('&{a: rec t. &{c: +{y: t}}}')
    assert depth(right) == depth(right) == 1
    assert depth(right, {'t'}) is None


# --- single rule applications ---

def test_step_end():
    application = step(Judgment(End(), End()))
    assert application.rule is Rule.END
    assert application.produced == ()


def test_step_end_against_recursive_input():
    right = parse('rec t. &{l: t}')
    application = step(Judgment(End(), right))
    assert application.rule is Rule.REC_R1
    (premise,) = application.produced
    assert premise.right == Branch.of({'l': right})
    assert isinstance(step(premise), Err)


def test_step_assumption():
    t, s = ACCUMULATING_T, ACCUMULATING_S
    application = step(Judgment(t, s, Environment().extend(t, s)))
    assert application.rule is Rule.ASMP


def test_step_recursion_on_the_left_extends_environment():
    application = step(Judgment(ACCUMULATING_T, ACCUMULATING_S))
    assert application.rule is Rule.REC_L
    (premise,) = application.produced
    assert premise.env.contains(ACCUMULATING_T, ACCUMULATING_S)
    assert len(premise.env) == 1


def test_step_input_needs_label_inclusion():
    left = parse('&{a: end}')
    right = parse('&{a: end, b: end}')
    outcome = step(Judgment(left, right))
    assert isinstance(outcome, Err)
    assert 'b' in outcome.reason


def test_step_input_pairs_every_right_label():
    left = parse('&{a: end, b: +{x: end}}')
    right = parse('&{b: +{x: end}}')
    application = step(Judgment(left, right))
    assert application.rule is Rule.IN
    assert [(p.left, p.right) for p in application.produced] == [(parse('+{x: end}'), parse('+{x: end}'))]


def test_step_output_anticipated_through_inputs():
    left = parse('+{coffee: &{but1: end, but2: end}}')
    right = parse('&{but1: +{coffee: end}, but2: +{coffee: end}}')
    application = step(Judgment(left, right))
    assert application.rule is Rule.OUT
    (premise,) = application.produced
    assert premise.left == parse('&{but1: end, but2: end}')
    assert premise.right == parse('&{but1: end, but2: end}')


def test_step_output_unfolds_right_first():
    left = parse('+{l: end}')
    right = parse('rec t. &{l: +{l: t}}')
    application = step(Judgment(left, right))
    assert application.rule is Rule.REC_R2
    (premise,) = application.produced
    assert premise.right == unfold(right, 1)
    assert premise.env.contains(left, right)


def test_step_output_needs_every_leaf_to_offer_the_labels():
    left = parse('+{x: end}')
    right = parse('&{a: +{x: end}, b: +{y: end}}')
    assert isinstance(step(Judgment(left, right)), Err)


def test_step_output_against_end_is_an_error():
    assert isinstance(step(Judgment(parse('+{l: end}'), End())), Err)


def test_step_input_against_output_is_an_error():
    assert isinstance(step(Judgment(parse('&{l: end}'), parse('+{l: end}'))), Err)


def test_standalone_step_annotates_above_the_environment():
    stored = Branch.of({'l': End()}, 5)
    right = parse('rec t. &{l: t}')
    env = Environment().extend(End(), stored)
    application = step(Judgment(End(), right, env), Mode.TERMINATING)
    assert application.rule is Rule.REC_R1
    (premise,) = application.produced
    assert min(annotations(premise.right)) > 5


# --- closing rules of the terminating procedure ---

def _chain(labels, tail, first_annotation=0):
    for offset, label in reversed(list(enumerate(labels))):
        tail = Branch.of({label: tail}, first_annotation + offset)
    return tail


def test_asmp2_closes_periodic_accumulation():
    tail = parse('+{l: end}')
    stored = Branch.of({'l': tail}, 1)
    current = Branch.of({'l': Branch.of({'l': tail}, 2)}, 1)
    j = Judgment(ACCUMULATING_T, current, Environment().extend(ACCUMULATING_T, stored))
    assert match_asmp2(j) == (ACCUMULATING_T, stored)
    assert step(j, Mode.TERMINATING).rule is Rule.ASMP2


def test_asmp2_is_not_used_by_the_semi_procedure():
    tail = parse('+{l: end}')
    stored = Branch.of({'l': tail}, 1)
    current = Branch.of({'l': Branch.of({'l': tail}, 2)}, 1)
    j = Judgment(ACCUMULATING_T, current, Environment().extend(ACCUMULATING_T, stored))
    assert step(j, Mode.SEMI).rule is Rule.REC_L


def test_asmp2_needs_a_leading_input_chain():
    tail = parse('+{l: end}')
    stored = Branch.of({'l': tail}, 1)
    j = Judgment(ACCUMULATING_T, tail, Environment().extend(ACCUMULATING_T, stored))
    assert match_asmp2(j) is None


def test_asmp2_needs_more_repetitions():
    tail = parse('+{l: end}')
    stored = _chain(['l', 'l'], tail, 1)
    current = Branch.of({'l': Branch.of({'l': tail}, 5)}, 1)
    j = Judgment(ACCUMULATING_T, current, Environment().extend(ACCUMULATING_T, stored))
    assert match_asmp2(j) is None


def test_asmp2_needs_the_current_annotation_in_the_stored_chain():
    tail = parse('+{l: end}')
    stored = Branch.of({'l': tail}, 1)
    current = _chain(['l', 'l'], tail, 7)
    j = Judgment(ACCUMULATING_T, current, Environment().extend(ACCUMULATING_T, stored))
    assert match_asmp2(j) is None


def test_asmp3_closes_output_only_left():
    left = parse('rec t. +{a: t}')
    tail = parse('+{x: end}')
    stored = parse('&{a: +{x: end}}')
    current = _chain(['a', 'a'], tail)
    j = Judgment(left, current, Environment().extend(left, stored))
    assert match_asmp3(j) == (left, stored)
    assert step(j, Mode.TERMINATING).rule is Rule.ASMP3


def test_asmp3_rejects_left_with_inputs():
    tail = parse('+{x: end}')
    stored = parse('&{a: +{x: end}}')
    current = _chain(['a', 'a'], tail)
    j = Judgment(ACCUMULATING_T, current, Environment().extend(ACCUMULATING_T, stored))
    assert match_asmp3(j) is None


def test_asmp3_needs_a_prefix():
    left = parse('rec t. +{a: t}')
    tail = parse('+{x: end}')
    stored = _chain(['a', 'b'], tail)
    current = _chain(['a', 'c', 'd'], tail)
    j = Judgment(left, current, Environment().extend(left, stored))
    assert match_asmp3(j) is None


def test_asmp3_needs_a_non_empty_stored_chain():
    stored = parse('rec t. &{l: t}')
    current = Branch.of({'l': stored}, 0)
    j = Judgment(End(), current, Environment().extend(End(), stored))
    assert match_asmp3(j) is None


def test_decide_end_against_an_input_loop():
    result = decide(End(), parse('rec t. &{l: t}'), record_trace=True)
    assert isinstance(result, NotSubtype)
    assert Rule.ASMP3 not in {application.rule for application in result.trace}


# --- semi procedure ---

def test_semi_check_end():
    assert isinstance(semi_check(End(), End()), Subtype)


def test_semi_check_anticipation_example():
    t = parse('+{coffee: &{but1: end, but2: end}}')
    s = parse('&{but1: +{coffee: end}, but2: +{coffee: end}}')
    result = semi_check(t, s)
    assert isinstance(result, Subtype)
    assert result.stats.rule_applications == 4
    assert result.stats.pairs_visited == 3
    assert oracle_check(t, s).stats.pairs_visited == 3


def test_semi_check_recursive_coffee(coffee_pair):
    t, s = coffee_pair
    result = semi_check(t, s, fuel=1000, record_trace=True)
    assert isinstance(result, Subtype)
    assert [application.rule for application in result.trace] == [
        Rule.REC_L, Rule.REC_R2, Rule.OUT, Rule.IN, Rule.ASMP, Rule.ASMP,
    ]
    assert result.stats.pairs_visited == oracle_check(t, s).stats.pairs_visited == 3


def test_semi_check_reversed_accumulation_fails():
    result = semi_check(ACCUMULATING_S, ACCUMULATING_T)
    assert isinstance(result, NotSubtype)
    assert isinstance(result.failing.left, Branch)
    assert isinstance(result.failing.right, Select)


def test_semi_check_runs_out_of_fuel_on_accumulation():
    result = semi_check(ACCUMULATING_T, ACCUMULATING_S, fuel=10000)
    assert isinstance(result, FuelExhausted)
    assert result.steps_used == 10000
    assert result.frontier_size >= 1


def test_semi_check_coffee_tea_needs_an_infinite_witness(coffee_tea_pair):
    t, s = coffee_tea_pair
    assert isinstance(semi_check(t, s, fuel=500), FuelExhausted)


def test_semi_check_rejects_non_positive_fuel():
    with pytest.raises(ValueError):
        semi_check(End(), End(), fuel=0)


def test_semi_check_uses_configured_fuel():
    class Settings:
        ASYNCSUB_DEFAULT_FUEL = 7

    result = SubtypingChecker(Settings()).semi_check(ACCUMULATING_T, ACCUMULATING_S)
    assert isinstance(result, FuelExhausted)
    assert result.steps_used == 7


def test_environment_never_shrinks(coffee_pair):
    t, s = coffee_pair
    result = semi_check(t, s, record_trace=True)
    for application in result.trace:
        for premise in application.produced:
            assert application.consumed.env.pairs() <= premise.env.pairs()


@pytest.mark.parametrize('run', [
    lambda t, s: semi_check(t, s, fuel=200, record_trace=True),
    lambda t, s: decide(t, s, record_trace=True),
], ids=['semi', 'decide'])
def test_only_recursion_rules_extend_the_environment(run):
    result = run(ACCUMULATING_T, ACCUMULATING_S)
    sizes = [0]
    for application in result.trace:
        consumed = application.consumed
        if application.rule in CLOSING_RULES:
            assert application.produced == ()
        elif application.rule in RECURSION_RULES:
            (premise,) = application.produced
            assert premise.env.contains(consumed.left, consumed.right)
            assert len(premise.env) == len(consumed.env) + 1
            sizes.append(len(premise.env))
        else:
            assert all(premise.env is consumed.env for premise in application.produced)
    assert result.stats.sigma_max == max(sizes)


def test_environment_keeps_every_pair_past_compaction():
    tail = parse('+{l: end}')
    rights = [_chain(['l'] * n, tail) for n in range(1, 150)]
    env = Environment()
    for right in rights:
        env = env.extend(ACCUMULATING_T, right)
    assert len(env) == len(rights)
    assert all(env.contains(ACCUMULATING_T, right) for right in rights)
    assert list(env.rights_for(ACCUMULATING_T)) == rights
    assert not env.contains(ACCUMULATING_S, rights[0])


def test_extending_leaves_the_parent_unchanged():
    parent = Environment().extend(ACCUMULATING_T, ACCUMULATING_S)
    child = parent.extend(ACCUMULATING_S, ACCUMULATING_T)
    assert len(parent) == 1
    assert not parent.contains(ACCUMULATING_S, ACCUMULATING_T)
    assert child.contains(ACCUMULATING_T, ACCUMULATING_S)
    assert len(child) == 2


def test_environment_membership_ignores_annotations():
    plain = Environment().extend(ACCUMULATING_T, ACCUMULATING_S)
    decorated = Environment().extend(ACCUMULATING_T, decorate(ACCUMULATING_S))
    assert plain == decorated
    assert decorated.contains(ACCUMULATING_T, ACCUMULATING_S)


def test_semi_check_long_accumulation_stays_affordable():
    result = semi_check(ACCUMULATING_T, ACCUMULATING_S, fuel=30000)
    assert isinstance(result, FuelExhausted)
    assert result.steps_used == 30000


def test_check_is_deterministic(coffee_pair):
    t, s = coffee_pair
    first = semi_check(t, s, record_trace=True)
    second = semi_check(t, s, record_trace=True)
    assert first.to_dict() == second.to_dict()
    assert [a.trace_line() for a in first.trace] == [a.trace_line() for a in second.trace]


# --- terminating procedure ---

def test_decide_accumulation():
    result = decide(ACCUMULATING_T, ACCUMULATING_S, record_trace=True)
    assert isinstance(result, Subtype)
    assert result.stats.rule_applications < 10000
    assert Rule.ASMP2 in {application.rule for application in result.trace}


def test_decide_reversed_accumulation():
    assert isinstance(decide(ACCUMULATING_S, ACCUMULATING_T), NotSubtype)


def test_decide_rejects_multi_input_pair():
    t = parse('&{l1: end, l2: end}')
    with pytest.raises(FragmentViolation) as excinfo:
        decide(t, t)
    assert excinfo.value.side == 'right'


def test_decide_rejects_multi_output_left():
    with pytest.raises(FragmentViolation):
        decide(parse('+{a: end, b: end}'), parse('+{a: end, b: end}'))


def test_decide_ignores_input_annotations():
    assert isinstance(decide(ACCUMULATING_T, decorate(ACCUMULATING_S)), Subtype)


def test_decide_step_ceiling():
    with pytest.raises(StepCeilingExceeded) as excinfo:
        decide(ACCUMULATING_T, ACCUMULATING_S, step_ceiling=2)
    assert excinfo.value.steps == 2


def test_results_serialise():
    payload = decide(ACCUMULATING_S, ACCUMULATING_T).to_dict()
    assert payload['verdict'] == 'not subtype'
    assert payload['reason']
    assert set(payload['failing']) == {'left', 'right'}
    assert {'rule_applications', 'sigma_max', 'pairs_visited'} <= set(payload)


@settings(max_examples=1000)
@given(fragment_pairs(max_depth=3))
def test_decide_terminates(pair):
    t, s = pair
    assume(size(t) + size(s) <= 25)
    result = decide(t, s, step_ceiling=1000000)
    assert isinstance(result, (Subtype, NotSubtype))


@settings(max_examples=200)
@given(fragment_pairs(max_depth=3))
def test_decide_agrees_with_the_semi_procedure(pair):
    t, s = pair
    assume(size(t) + size(s) <= 25)
    semi = semi_check(t, s, fuel=2000)
    if isinstance(semi, FuelExhausted):
        return
    assert type(decide(t, s)) is type(semi)


@settings(max_examples=100)
@given(fragment_pairs(max_depth=3))
def test_decide_agrees_with_the_oracle(pair):
    t, s = pair
    assume(size(t) + size(s) <= 25)
    verdict = oracle_check(t, s, pair_bound=300)
    if isinstance(verdict, Inconclusive):
        return
    assert type(decide(t, s)) is type(verdict)


@settings(max_examples=100)
@given(session_types(max_depth=3), session_types(max_depth=3))
def test_semi_procedure_errors_are_sound(t, s):
    assume(size(t) + size(s) <= 25)
    verdict = oracle_check(t, s, pair_bound=300)
    if isinstance(verdict, NotSubtype):
        # a violation is always reached after finitely many rule applications
        assert isinstance(semi_check(t, s, fuel=20000), NotSubtype)
    elif isinstance(verdict, Subtype):
        assert not isinstance(semi_check(t, s, fuel=2000), NotSubtype)


@settings(max_examples=500)
@given(session_types(max_depth=3, single_output=True, single_input=True))
def test_decide_is_reflexive(t):
    assert isinstance(decide(t, t), Subtype)


# --- single-choice relations ---

def test_relation_domains_of_accumulation():
    domains = relation_domains(ACCUMULATING_T, ACCUMULATING_S)
    assert domains.to_dict() == {
        'single_choice': True,
        'single_choice_input': True,
        'single_choice_output': True,
    }


def test_relation_domains_need_input_guarded_recursion():
    domains = relation_domains(parse('rec t. +{l: t}'), parse('rec t. +{l: t}'))
    assert not domains.single_choice


def test_check_sin_and_sout():
    assert isinstance(check_sin(ACCUMULATING_T, ACCUMULATING_S), Subtype)
    assert isinstance(check_sout(ACCUMULATING_T, ACCUMULATING_S), Subtype)


def test_check_sin_outside_its_domain():
    t = parse('&{a: +{x: end}, b: +{x: end}}')
    result = check_sin(t, t)
    assert isinstance(result, NotSubtype)
    assert 'outside' in result.reason


# --- oracle ---

def test_oracle_end():
    assert isinstance(oracle_check(End(), End()), Subtype)


def test_oracle_end_against_output():
    assert isinstance(oracle_check(End(), parse('+{l: end}')), NotSubtype)


def test_oracle_reversed_accumulation():
    assert isinstance(oracle_check(ACCUMULATING_S, ACCUMULATING_T), NotSubtype)


def test_oracle_coffee_tea_is_inconclusive(coffee_tea_pair):
    t, s = coffee_tea_pair
    result = oracle_check(t, s, pair_bound=200)
    assert isinstance(result, Inconclusive)
    assert result.stats.pairs_visited == 200
