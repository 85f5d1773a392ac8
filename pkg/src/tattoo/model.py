"""Least models over a pre-interpretation.

A determinised type automaton induces a pre-interpretation: the domain
is its set of DStates and every functor denotes a total function on
that domain.  Interpreting a program over it and closing under the
clauses gives the least abstract model, a finite relation per
predicate that safely describes the program's concrete meaning.

Body atoms are solved by a backtracking join.  Matching a term against
a domain element runs the pre-interpretation backwards through an
inverse index, so compound arguments in bodies need no flattening.

Builtins (body predicates with no clauses) default to the complete
relation, i.e. they constrain nothing.  '='/2 defaults to the diagonal
relation, which is exactly abstract unification.  A policy object can
override either choice per predicate or make use an error.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Callable, Iterator, Mapping

from .errors import InputError, InternalError
from .fta import DFTA, DState
from .limits import Budget
from .syntax import EQ, Clause, PredKey, Program, Struct, Term, Var, pred_of, term_vars

Tuple_ = tuple[DState, ...]
Relation = frozenset[Tuple_]
Model = dict[PredKey, Relation]


class _Marker:
    def __init__(self, name: str):
        self.name = name

    def __repr__(self) -> str:
        return self.name


ALL_TUPLES = _Marker("ALL_TUPLES")
ERROR_ON_USE = _Marker("ERROR_ON_USE")


@dataclass(frozen=True)
class BuiltinPolicy:
    """What an undefined body predicate means.

    `relations` maps predicate keys to an explicit relation or one of
    the markers; everything else falls back to `default`.
    """
    relations: Mapping[PredKey, object] = field(default_factory=dict)
    default: object = ALL_TUPLES


@dataclass(frozen=True)
class PreInterpretation:
    domain: tuple[DState, ...]
    signature: frozenset[tuple[str, int]]
    table: dict[tuple[str, tuple[DState, ...]], DState]
    inverse: dict[tuple[str, int, DState], tuple[tuple[DState, ...], ...]]


def pre_interpretation(dfta: DFTA) -> PreInterpretation:
    domain = tuple(sorted(dfta.states))
    inv: dict[tuple[str, int, DState], list[tuple[DState, ...]]] = {}
    for (f, args), res in dfta.transitions.items():
        inv.setdefault((f, len(args), res), []).append(args)
    # a pre-interpretation must be a total function per functor
    for f, n in dfta.signature:
        for tup in product(domain, repeat=n):
            if (f, tup) not in dfta.transitions:
                raise InternalError(f"automaton is not total: {f}/{n} "
                                    f"undefined on {tup}")
    inverse = {k: tuple(sorted(v)) for k, v in inv.items()}
    return PreInterpretation(domain, dfta.signature, dict(dfta.transitions), inverse)


def eval_term(pre: PreInterpretation, term: Term, env: Mapping[str, DState]) -> DState:
    if isinstance(term, Var):
        return env[term.name]
    args = tuple(eval_term(pre, a, env) for a in term.args)
    try:
        return pre.table[(term.functor, args)]
    except KeyError:
        raise InputError(f"functor {term.functor}/{term.arity} "
                         f"is outside the analysed signature") from None


def _match(pre: PreInterpretation, term: Term, value: DState,
           env: dict[str, DState]) -> Iterator[dict[str, DState]]:
    """Extensions of env under which term evaluates to value."""
    if isinstance(term, Var):
        bound = env.get(term.name)
        if bound is None:
            out = dict(env)
            out[term.name] = value
            yield out
        elif bound == value:
            yield env
        return
    for args in pre.inverse.get((term.functor, term.arity, value), ()):
        yield from _match_seq(pre, term.args, args, env)


def _match_seq(pre: PreInterpretation, terms, values,
               env: dict[str, DState]) -> Iterator[dict[str, DState]]:
    if not terms:
        yield env
        return
    for out in _match(pre, terms[0], values[0], env):
        yield from _match_seq(pre, terms[1:], values[1:], out)


Lookup = Callable[[PredKey, int], object]


def relation_lookup(model: Mapping[PredKey, object], defined: frozenset[PredKey],
                    policy: BuiltinPolicy, pre: PreInterpretation) -> Lookup:
    """Body-atom relation resolver: model for defined predicates, the
    builtin policy for the rest.  Reads `model` live, so it tracks
    mutation during fixpoint rounds."""
    diagonal = frozenset((d, d) for d in pre.domain)

    def look(pred: PredKey, _i: int):
        if pred in defined:
            return model.get(pred, frozenset())
        rel = policy.relations.get(pred)
        if rel is None:
            rel = diagonal if pred == (EQ, 2) else policy.default
        if rel is ERROR_ON_USE:
            raise InputError(f"{pred[0]}/{pred[1]} has no clauses and the "
                             f"builtin policy forbids it")
        return rel

    return look


def _solve_body(pre: PreInterpretation, body, i: int, env: dict[str, DState],
                lookup: Lookup) -> Iterator[dict[str, DState]]:
    if i == len(body):
        yield env
        return
    atom = body[i]
    rel = lookup(pred_of(atom), i)
    if rel is ALL_TUPLES:
        yield from _solve_body(pre, body, i + 1, env, lookup)
        return
    for tup in rel:
        for out in _match_seq(pre, atom.args, tup, env):
            yield from _solve_body(pre, body, i + 1, out, lookup)


def clause_consequences(pre: PreInterpretation, clause: Clause,
                        lookup: Lookup) -> set[Tuple_]:
    """Head tuples the clause derives under the given body relations.

    Head variables not bound by the body range over the whole domain.
    """
    head = clause.head
    out: set[Tuple_] = set()
    for env in _solve_body(pre, clause.body, 0, {}, lookup):
        free = [v for v in dict.fromkeys(term_vars(head)) if v not in env]
        for combo in product(pre.domain, repeat=len(free)):
            full = dict(env)
            full.update(zip(free, combo))
            out.add(tuple(eval_term(pre, a, full) for a in head.args))
    return out


def least_model(program: Program, pre: PreInterpretation,
                builtins: BuiltinPolicy | None = None,
                seed: Mapping[PredKey, frozenset] | None = None,
                strategy: str = "seminaive",
                budget: Budget | None = None) -> Model:
    """Least fixpoint of the abstract immediate-consequence operator.

    `seed` injects extra facts; its predicates count as defined.  The
    naive strategy re-derives everything per round and exists as a
    cross-check for the seminaive one, which only rejoins against the
    previous round's new tuples.
    """
    if strategy not in ("naive", "seminaive"):
        raise InputError(f"unknown evaluation strategy {strategy!r}")
    policy = builtins or BuiltinPolicy()
    model: dict[PredKey, set[Tuple_]] = {p: set(ts) for p, ts in (seed or {}).items()}
    defined = frozenset(program.defined_predicates) | frozenset(model)
    for p in program.defined_predicates:
        model.setdefault(p, set())
    full = relation_lookup(model, defined, policy, pre)

    def run_naive() -> None:
        changed = True
        while changed:
            if budget:
                budget.check("model")
            changed = False
            for clause in program.clauses:
                got = clause_consequences(pre, clause, full)
                target = model[pred_of(clause.head)]
                if not got <= target:
                    target |= got
                    changed = True

    def run_seminaive() -> None:
        delta: dict[PredKey, set[Tuple_]] = {p: set(ts) for p, ts in model.items()}
        for clause in program.clauses:
            got = clause_consequences(pre, clause, full)
            pred = pred_of(clause.head)
            fresh = got - model[pred]
            model[pred] |= fresh
            delta.setdefault(pred, set()).update(got)
        while any(delta.values()):
            if budget:
                budget.check("model")
            fresh_round: dict[PredKey, set[Tuple_]] = {}
            for clause in program.clauses:
                positions = [i for i, a in enumerate(clause.body)
                             if pred_of(a) in defined]
                for di in positions:
                    def at(pred: PredKey, i: int, di=di):
                        if i == di:
                            return delta.get(pred, ())
                        return full(pred, i)
                    got = clause_consequences(pre, clause, at)
                    pred = pred_of(clause.head)
                    fresh = got - model[pred]
                    if fresh:
                        model[pred] |= fresh
                        fresh_round.setdefault(pred, set()).update(fresh)
            delta = fresh_round

    if strategy == "naive":
        run_naive()
    else:
        run_seminaive()
    return {p: frozenset(ts) for p, ts in model.items()}


def clause_contributions(program: Program, pre: PreInterpretation, model: Model,
                         builtins: BuiltinPolicy | None = None) -> dict[int, Relation]:
    """What each clause derives once the model is closed.  A clause
    contributing nothing can be removed without changing the model."""
    policy = builtins or BuiltinPolicy()
    defined = frozenset(program.defined_predicates) | frozenset(model)
    look = relation_lookup(model, defined, policy, pre)
    return {c: frozenset(clause_consequences(pre, cl, look))
            for c, cl in enumerate(program.clauses)}


def empty_predicates(model: Model) -> frozenset[PredKey]:
    return frozenset(p for p, rel in model.items() if not rel)
