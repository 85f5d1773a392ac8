"""Reference implementations the tests trust.

Everything here recomputes semantics from first principles: ground
bottom-up derivation, resolution with real unification, term
enumeration.  The only package code used is the term representation
and the pre-interpretation's transition table, which are data, not
algorithms.  Slow and obvious beats fast and clever on this side of
the fence.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product

from tattoo.syntax import EQ, VAR_CONST, PredKey, Program, Struct, Term, Var, pred_of


class Exhausted(Exception):
    """Step budget ran out; whatever was collected so far stands."""


# ---------------------------------------------------------- terms


def enumerate_terms(signature, depth: int, include_var: bool = True,
                    cap: int = 200) -> list[Struct]:
    """Ground terms over the signature, smallest first, up to `depth`."""
    sig = sorted(signature)
    if not include_var:
        sig = [(f, n) for f, n in sig if f != VAR_CONST]
    layer: list[Struct] = [Struct(f) for f, n in sig if n == 0]
    seen = list(layer)
    for _ in range(depth - 1):
        grown = []
        for f, n in sig:
            if n == 0:
                continue
            for combo in product(seen, repeat=n):
                t = Struct(f, combo)
                if t not in seen and t not in grown:
                    grown.append(t)
                if len(seen) + len(grown) >= cap:
                    break
        seen.extend(grown)
        if len(seen) >= cap:
            break
    return seen[:cap]


def devar(t: Term) -> Struct:
    """Replace variables by the variable-denoting constant."""
    if isinstance(t, Var):
        return Struct(VAR_CONST)
    return Struct(t.functor, tuple(devar(a) for a in t.args))


def eval_abstract(pre, t: Term):
    """Run the pre-interpretation table by hand on an abstracted term."""
    t = devar(t)

    def go(x: Struct):
        return pre.table[(x.functor, tuple(go(a) for a in x.args))]

    return go(t)


def concretize(t: Struct, counter: list[int]) -> Term:
    """Turn the variable-denoting constant back into fresh variables."""
    if t.functor == VAR_CONST and not t.args:
        counter[0] += 1
        return Var(f"_G{counter[0]}")
    return Struct(t.functor, tuple(concretize(a, counter) for a in t.args))


# ---------------------------------------- ground bottom-up derivation


def _match(pat: Term, t: Struct, env: dict):
    if isinstance(pat, Var):
        bound = env.get(pat.name)
        if bound is None:
            out = dict(env)
            out[pat.name] = t
            yield out
        elif bound == t:
            yield env
        return
    if pat.functor != t.functor or len(pat.args) != len(t.args):
        return

    def seq(i, e):
        if i == len(pat.args):
            yield e
            return
        for e2 in _match(pat.args[i], t.args[i], e):
            yield from seq(i + 1, e2)

    yield from seq(0, env)


def _ground(t: Term, env: dict) -> Struct | None:
    if isinstance(t, Var):
        return env.get(t.name)
    args = tuple(_ground(a, env) for a in t.args)
    if any(a is None for a in args):
        return None
    return Struct(t.functor, args)


def _term_var_names(t: Term) -> list[str]:
    if isinstance(t, Var):
        return [t.name]
    out = []
    for a in t.args:
        for v in _term_var_names(a):
            if v not in out:
                out.append(v)
    return out


@dataclass
class TpResult:
    facts: dict[PredKey, set[Struct]]
    fired: set[int]

    def all_atoms(self):
        for atoms in self.facts.values():
            yield from atoms


def tp_facts(program: Program, universe: list[Struct], rounds: int = 12,
             fact_cap: int = 5000) -> TpResult:
    """Ground facts derivable in `rounds` steps over a finite universe.

    Undefined body predicates hold for every ground instance; '='/2 is
    real equality.  The result under-approximates the true model, which
    is the useful direction for checking abstractions.
    """
    defined = program.defined_predicates
    facts: dict[PredKey, set[Struct]] = {p: set() for p in defined}
    fired: set[int] = set()

    def solve(body, i, env):
        if i == len(body):
            yield env
            return
        atom = body[i]
        p = pred_of(atom)
        if p == (EQ, 2):
            lhs, rhs = atom.args
            gl, gr = _ground(lhs, env), _ground(rhs, env)
            if gl is not None and gr is not None:
                if gl == gr:
                    yield from solve(body, i + 1, env)
            elif gl is not None:
                for e in _match(rhs, gl, env):
                    yield from solve(body, i + 1, e)
            elif gr is not None:
                for e in _match(lhs, gr, env):
                    yield from solve(body, i + 1, e)
            return
        if p in defined:
            for fact in list(facts[p]):
                for e in _match(atom, fact, env):
                    yield from solve(body, i + 1, e)
            return
        free = [v for v in _term_var_names(atom) if v not in env]
        for combo in product(universe, repeat=len(free)):
            e = dict(env)
            e.update(zip(free, combo))
            yield from solve(body, i + 1, e)

    total = 0
    for _ in range(rounds):
        changed = False
        for c, clause in enumerate(program.clauses):
            for env in solve(clause.body, 0, {}):
                free = [v for v in _term_var_names(clause.head) if v not in env]
                for combo in product(universe, repeat=len(free)):
                    e = dict(env)
                    e.update(zip(free, combo))
                    fact = _ground(clause.head, e)
                    target = facts[pred_of(clause.head)]
                    if fact not in target:
                        target.add(fact)
                        changed = True
                        total += 1
                        if total > fact_cap:
                            return TpResult(facts, fired)
                    fired.add(c)
        if not changed:
            break
    return TpResult(facts, fired)


# --------------------------------------------------- resolution


def _walk(t: Term, s: dict) -> Term:
    while isinstance(t, Var) and t.name in s:
        t = s[t.name]
    return t


def unify(a: Term, b: Term, s: dict) -> dict | None:
    a, b = _walk(a, s), _walk(b, s)
    if isinstance(a, Var):
        if isinstance(b, Var) and a.name == b.name:
            return s
        out = dict(s)
        out[a.name] = b
        return out
    if isinstance(b, Var):
        out = dict(s)
        out[b.name] = a
        return out
    if a.functor != b.functor or len(a.args) != len(b.args):
        return None
    for x, y in zip(a.args, b.args):
        s = unify(x, y, s)
        if s is None:
            return None
    return s


def resolve(t: Term, s: dict) -> Term:
    t = _walk(t, s)
    if isinstance(t, Var):
        return t
    return Struct(t.functor, tuple(resolve(a, s) for a in t.args))


def _rename(t: Term, k: int) -> Term:
    if isinstance(t, Var):
        return Var(f"{t.name}@{k}")
    return Struct(t.functor, tuple(_rename(a, k) for a in t.args))


@dataclass
class SldTrace:
    answers: set[Struct] = field(default_factory=set)
    calls: dict[tuple[int, int], set[Struct]] = field(default_factory=dict)
    uses: dict[int, set[Struct]] = field(default_factory=dict)


def sld_run(program: Program, goals: list[Struct], max_depth: int = 8,
            max_steps: int = 4000) -> SldTrace:
    """Left-to-right resolution from each goal, recording every literal
    selection by its clause coordinates and every clause whose body was
    solved through.  Bounded, so the trace is a sample, never a claim
    of completeness."""
    defined = program.defined_predicates
    by_pred: dict[PredKey, list[tuple[int, object]]] = {}
    for c, clause in enumerate(program.clauses):
        by_pred.setdefault(pred_of(clause.head), []).append((c, clause))
    trace = SldTrace()
    counter = [0]
    steps = [0]

    def solve_atom(atom: Term, s: dict, depth: int):
        if depth <= 0:
            return
        a = resolve(atom, s)
        p = pred_of(a)
        if p == (EQ, 2):
            s2 = unify(a.args[0], a.args[1], s)
            if s2 is not None:
                yield s2
            return
        if p not in defined:
            yield s
            return
        for c, clause in by_pred[p]:
            steps[0] += 1
            if steps[0] > max_steps:
                raise Exhausted
            counter[0] += 1
            k = counter[0]
            head = _rename(clause.head, k)
            body = [_rename(b, k) for b in clause.body]
            s2 = unify(a, head, s)
            if s2 is None:
                continue
            yield from solve_clause(c, head, body, s2, depth)

    def solve_clause(c: int, head: Term, body: list, s: dict, depth: int):
        def go(i: int, s: dict):
            if i == len(body):
                trace.uses.setdefault(c, set()).add(resolve(head, s))
                yield s
                return
            trace.calls.setdefault((c, i), set()).add(resolve(body[i], s))
            for s2 in solve_atom(body[i], s, depth - 1):
                yield from go(i + 1, s2)

        yield from go(0, s)

    for goal in goals:
        try:
            for s in solve_atom(goal, {}, max_depth):
                trace.answers.add(resolve(goal, s))
        except Exhausted:
            break
    return trace


def goal_instances(pre, pred: str, arity: int, seed, signature,
                   depth: int = 2, cap: int = 60) -> list[Struct]:
    """Concrete starting goals whose abstraction lands in the seed."""
    pool = enumerate_terms(signature, depth, include_var=True, cap=40)
    out = []
    for combo in product(pool, repeat=arity):
        if tuple(eval_abstract(pre, t) for t in combo) in seed:
            counter = [0]
            out.append(Struct(pred, tuple(concretize(t, counter) for t in combo)))
            if len(out) >= cap:
                break
    return out
