"""Goal-directed analysis via the query-answer transformation.

The least model is goal-independent.  To analyse a program relative to
a typed goal, the program is rewritten so that calls become explicit:
for every body literal (clause c, position i) there is a call
predicate $qry$c.i$p holding the tuples with which that literal can be
reached, a union predicate $qry$p collecting all calls to p, and an
answer predicate $ans$p holding the answers p actually produces under
those calls.  Left-to-right execution order is baked into the rewrite:
a literal's call predicate depends on the answers of the literals to
its left.

The least model of the rewritten program, seeded with the goal's type
tuple(s), then tells us which clauses can contribute answers and which
body literals are never reached at all.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .errors import InputError, ReservedNameError
from .limits import Budget
from .model import (BuiltinPolicy, Model, PreInterpretation, Relation,
                    clause_consequences, least_model, relation_lookup)
from .syntax import Clause, PredKey, Program, Struct, Var, make_program, pred_of

QRY = "$qry$"
ANS = "$ans$"


@dataclass(frozen=True)
class TypedGoal:
    pred: str
    types: tuple[str, ...]

    @property
    def key(self) -> PredKey:
        return (self.pred, len(self.types))


@dataclass(frozen=True)
class QATransform:
    source: Program
    program: Program
    sites: dict[tuple[int, int], PredKey]
    queries: dict[PredKey, PredKey]
    answers: dict[PredKey, PredKey]
    answer_clauses: dict[int, Clause]


def _qry(p: str) -> str:
    return QRY + p


def _ans(p: str) -> str:
    return ANS + p


def _site(c: int, i: int, p: str) -> str:
    return f"{QRY}{c}.{i}${p}"


def qa_transform(program: Program) -> QATransform:
    for name, _n in program.predicates:
        if name.startswith("$"):
            raise ReservedNameError(
                f"predicate names starting with $ are reserved, found {name!r}")
    defined = program.defined_predicates

    def ansify(atom: Struct) -> Struct:
        if pred_of(atom) in defined:
            return Struct(_ans(atom.functor), atom.args)
        return atom

    clauses: list[Clause] = []
    sites: dict[tuple[int, int], PredKey] = {}
    answer_clauses: dict[int, Clause] = {}
    for c, clause in enumerate(program.clauses):
        head_qry = Struct(_qry(clause.head.functor), clause.head.args)
        prefix: list[Struct] = [head_qry]
        for i, atom in enumerate(clause.body):
            site_head = Struct(_site(c, i, atom.functor), atom.args)
            sites[(c, i)] = pred_of(site_head)
            clauses.append(Clause(site_head, tuple(prefix)))
            prefix.append(ansify(atom))
        ans_head = Struct(_ans(clause.head.functor), clause.head.args)
        answer_clauses[c] = Clause(ans_head, tuple(prefix))
        clauses.append(answer_clauses[c])

    # union clauses route every call site into the callee's query
    # predicate; only defined callees have answers worth driving
    for (c, i), (sname, n) in sorted(sites.items()):
        callee = program.clauses[c].body[i]
        if pred_of(callee) not in defined:
            continue
        args = tuple(Var(f"A{j + 1}") for j in range(n))
        clauses.append(Clause(Struct(_qry(callee.functor), args),
                              (Struct(sname, args),)))

    queries = {p: (_qry(p[0]), p[1]) for p in defined}
    answers = {p: (_ans(p[0]), p[1]) for p in defined}
    return QATransform(program, make_program(clauses), sites, queries,
                       answers, answer_clauses)


@dataclass(frozen=True)
class QAResult:
    goal: TypedGoal
    transform: QATransform
    pre: PreInterpretation
    model: Model
    answers: Model
    call_patterns: dict[tuple[int, int], Relation]
    clause_answers: dict[int, Relation]


def goal_seed(goal: TypedGoal, pre: PreInterpretation,
              known_types: frozenset[str]) -> Relation:
    """All domain tuples compatible with the goal's argument types.

    A goal type names a state of the original automaton; the matching
    domain elements are the DStates containing that name.
    """
    per_arg = []
    for t in goal.types:
        if t not in known_types:
            raise InputError(f"goal type {t!r} is not declared")
        per_arg.append([d for d in pre.domain if t in d])
    return frozenset(product(*per_arg))


def analyze_goal(program: Program, pre: PreInterpretation, goal: TypedGoal,
                 known_types: frozenset[str],
                 builtins: BuiltinPolicy | None = None,
                 budget: Budget | None = None) -> QAResult:
    if goal.key not in program.defined_predicates:
        raise InputError(f"goal predicate {goal.pred}/{len(goal.types)} "
                         f"has no clauses in the program")
    tr = qa_transform(program)
    seed_key = (_qry(goal.pred), len(goal.types))
    seed = {seed_key: goal_seed(goal, pre, known_types)}
    policy = builtins or BuiltinPolicy()
    model = least_model(tr.program, pre, policy, seed=seed, budget=budget)

    answers = {p: model.get(k, frozenset()) for p, k in tr.answers.items()}
    call_patterns = {site: model.get(k, frozenset())
                     for site, k in tr.sites.items()}

    # which source clauses ever produce an answer: re-run each answer
    # clause once against the finished model
    defined = frozenset(tr.program.defined_predicates) | {seed_key}
    look = relation_lookup(model, defined, policy, pre)
    clause_answers = {c: frozenset(clause_consequences(pre, cl, look))
                      for c, cl in tr.answer_clauses.items()}
    return QAResult(goal, tr, pre, model, answers, call_patterns, clause_answers)


@dataclass(frozen=True)
class DeadCode:
    dead: frozenset[int]
    sliceable: frozenset[tuple[int, int]]


def dead_code(result: QAResult) -> DeadCode:
    """Dead clauses and never-reached body literals.

    Unreached literals close to the right on their own (a literal's
    call condition includes its left neighbour's), but the closure is
    applied here regardless rather than trusted.
    """
    dead = frozenset(c for c, rel in result.clause_answers.items() if not rel)
    sliceable: set[tuple[int, int]] = set()
    for c, clause in enumerate(result.transform.source.clauses):
        cut = None
        for i in range(len(clause.body)):
            if cut is None and not result.call_patterns[(c, i)]:
                cut = i
            if cut is not None:
                sliceable.add((c, i))
    return DeadCode(dead, frozenset(sliceable))
