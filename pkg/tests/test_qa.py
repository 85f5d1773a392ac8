"""Query-answer rewriting and dead-code detection."""
import pytest

from corpus import CASES
from oracles import sld_run
from tattoo.bundled import get_example
from tattoo.errors import InputError, ReservedNameError
from tattoo.fta import contextual_transitions, determinize, parse_type_defs
from tattoo.model import least_model, pre_interpretation
from tattoo.qa import (QRY, TypedGoal, analyze_goal, dead_code, goal_seed,
                       qa_transform)
from tattoo.syntax import (format_program, parse_program, parse_typed_goal,
                           signature_of)


def _setting(program, types="", contextual=()):
    sig = signature_of(program)
    fta = parse_type_defs(types, sig, predeclared=contextual)
    fta = fta.union(contextual_transitions(fta.signature, contextual))
    return pre_interpretation(determinize(fta)), fta.states


def _goal(text):
    name, types = parse_typed_goal(text)
    return TypedGoal(name, types)


def test_one_site_per_body_literal():
    prog = parse_program(get_example("transpose").program)
    tr = qa_transform(prog)
    assert len(tr.sites) == sum(len(cl.body) for cl in prog.clauses)
    for (c, i), (name, n) in tr.sites.items():
        assert name.startswith(QRY)
        assert f"{c}.{i}$" in name
        assert n == len(prog.clauses[c].body[i].args)


def test_union_clauses_only_for_defined_callees():
    prog = parse_program("p(X) :- mystery(X), q(X).\nq(a).\n")
    tr = qa_transform(prog)
    defined = tr.program.defined_predicates
    assert ("$qry$q", 1) in defined
    assert ("$qry$mystery", 1) not in defined
    # the site for the builtin call still exists so reachability is visible
    assert (0, 0) in tr.sites


def test_dollar_predicates_rejected():
    prog = parse_program("'$sneaky'(a).\n")
    with pytest.raises(ReservedNameError):
        qa_transform(prog)


def test_transform_survives_printing():
    prog = parse_program(get_example("append").program)
    tr = qa_transform(prog)
    text = format_program(tr.program)
    again = parse_program(text)
    assert format_program(again) == text


def test_goal_seed_is_a_product():
    ex = get_example("append")
    prog = parse_program(ex.program)
    pre, known = _setting(prog, ex.types)
    seed = goal_seed(_goal("append(list,dynamic,dynamic)"), pre, known)
    lists = [d for d in pre.domain if "list" in d]
    assert seed == frozenset((a, b, c) for a in lists
                             for b in pre.domain for c in pre.domain)


def test_goal_types_must_be_declared():
    ex = get_example("append")
    prog = parse_program(ex.program)
    pre, known = _setting(prog, ex.types)
    with pytest.raises(InputError):
        goal_seed(_goal("append(tree,dynamic,dynamic)"), pre, known)


def test_goal_predicate_must_be_defined():
    prog = parse_program("p(a).\n")
    pre, known = _setting(prog)
    with pytest.raises(InputError):
        analyze_goal(prog, pre, _goal("missing(dynamic)"), known)


def test_answers_stay_within_goal_independent_model():
    for case in CASES:
        prog = parse_program(case.program)
        for run in case.runs:
            if run.goal is None:
                continue
            pre, known = _setting(prog, run.types, run.contextual)
            result = analyze_goal(prog, pre, _goal(run.goal), known)
            full = least_model(prog, pre)
            for p, rel in result.answers.items():
                assert rel <= full.get(p, frozenset()), (case.name, run, p)


def test_unreached_literals_slice_off():
    prog = parse_program("p(X) :- zero(X), t(X).\n"
                         "zero(X) :- zero(X).\n"
                         "t(a).\n")
    pre, known = _setting(prog)
    dc = dead_code(analyze_goal(prog, pre, _goal("p(dynamic)"), known))
    assert dc.sliceable == frozenset({(0, 1)})
    assert dc.dead == frozenset({0, 1, 2})


def test_sliceable_closes_to_the_right():
    prog = parse_program("p(X) :- zero(X), t(X), t(X).\n"
                         "zero(X) :- zero(X).\n"
                         "t(a).\n")
    pre, known = _setting(prog)
    dc = dead_code(analyze_goal(prog, pre, _goal("p(dynamic)"), known))
    assert dc.sliceable == frozenset({(0, 1), (0, 2)})


def test_mutex_goal_finds_dead_clauses():
    ex = get_example("mutex")
    prog = parse_program(ex.program)
    pre, known = _setting(prog, ex.types)
    result = analyze_goal(prog, pre, _goal(ex.goal), known)
    assert result.answers[("unsafe", 1)] == frozenset()
    assert dead_code(result).dead == frozenset({7, 8})


def test_execution_respects_the_analysis():
    """Concrete runs only use clauses and reach literals the
    goal-directed model allows."""
    ex = get_example("append")
    prog = parse_program(ex.program)
    pre, known = _setting(prog, ex.types)
    result = analyze_goal(prog, pre, _goal("append(list,dynamic,dynamic)"), known)
    dc = dead_code(result)
    goals = [parse_program("go :- append([a,b],X,Y).\n").clauses[0].body[0]]
    trace = sld_run(prog, goals)
    assert trace.uses and trace.uses.keys().isdisjoint(dc.dead)
    assert set(trace.calls).isdisjoint(dc.sliceable)
