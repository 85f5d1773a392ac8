"""Type inference: well-typings and regular approximations.

Both engines produce descriptions of a program's predicates without
needing any types as input, and both descriptions convert into an
automaton usable as a pre-interpretation, so inferred types can feed a
subsequent model computation.

A well-typing assigns each predicate argument a type such that every
clause is type-correct: solvable by unification over type terms, so
the result is a most general typing rather than an approximation of
the success set.  A regular approximation is the opposite trade: it
over-approximates the success set with an automaton and makes no
promise of generality.
"""
from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass
from typing import Iterator

from .errors import InputError
from .fta import DYNAMIC, FTA, Transition, complete_with_dynamic
from .limits import Budget
from .syntax import (EQ, Clause, PredKey, Program, Struct, Term, Var,
                     pred_of, signature_of, term_vars)

Alt = tuple[str, tuple[str, ...]]


@dataclass(frozen=True)
class WellTyping:
    """Per-predicate argument types plus the rules defining them.

    Type names in `defs` map to alternatives; names in `params` are
    type parameters and stand for any term at all.  Signature entries
    refer to either kind.
    """
    signatures: dict[PredKey, tuple[str, ...]]
    defs: dict[str, tuple[Alt, ...]]
    params: frozenset[str]


class _Classes:
    """Union-find over type classes with one alternative per functor.

    Adding a second alternative for a functor a class already has does
    not widen the class; it unifies the argument classes instead.  The
    root of a class is always its smallest member id, which keeps
    everything downstream order-independent.
    """

    def __init__(self):
        self.parent: list[int] = []
        self.alts: list[dict[tuple[str, int], tuple[int, ...]]] = []

    def fresh(self) -> int:
        self.parent.append(len(self.parent))
        self.alts.append({})
        return self.parent[-1]

    def find(self, a: int) -> int:
        while self.parent[a] != a:
            self.parent[a] = self.parent[self.parent[a]]
            a = self.parent[a]
        return a

    def union(self, a: int, b: int) -> None:
        pending = [(a, b)]
        while pending:
            x, y = pending.pop()
            rx, ry = self.find(x), self.find(y)
            if rx == ry:
                continue
            lo, hi = min(rx, ry), max(rx, ry)
            self.parent[hi] = lo
            merged = self.alts[lo]
            for key, args in self.alts[hi].items():
                if key in merged:
                    pending.extend(zip(merged[key], args))
                else:
                    merged[key] = args
            self.alts[hi] = {}

    def ensure_alt(self, c: int, functor: str, args: tuple[int, ...]) -> None:
        r = self.find(c)
        key = (functor, len(args))
        have = self.alts[r].get(key)
        if have is None:
            self.alts[r][key] = args
        else:
            for x, y in zip(have, args):
                self.union(x, y)

    def roots(self) -> list[int]:
        return [i for i in range(len(self.parent)) if self.find(i) == i]


def _merge_renamings(cls: _Classes) -> None:
    """Collapse classes that are copies of each other.

    Two classes sharing a non-constant alternative whose arguments
    agree position by position, either outright or by swapping the two
    classes themselves, describe the same set of terms up to the name,
    so they are unified.  Repeats until stable.
    """
    changed = True
    while changed:
        changed = False
        roots = [r for r in cls.roots() if cls.alts[r]]
        for ai in range(len(roots)):
            for bi in range(ai + 1, len(roots)):
                a, b = roots[ai], roots[bi]
                if cls.find(a) != a or cls.find(b) != b:
                    continue
                shared = [k for k in cls.alts[a]
                          if k[1] >= 1 and k in cls.alts[b]]
                for key in shared:
                    xs = [cls.find(x) for x in cls.alts[a][key]]
                    ys = [cls.find(y) for y in cls.alts[b][key]]
                    if all(x == y or (x in (a, b) and y in (a, b))
                           for x, y in zip(xs, ys)):
                        cls.union(a, b)
                        changed = True
                        break
            if changed:
                break


def _param_name(i: int) -> str:
    letters = "XYZ"
    return letters[i] if i < 3 else f"{letters[i % 3]}{i // 3}"


def infer_welltyping(program: Program) -> WellTyping:
    """Solve the typing constraints of every clause at once.

    Each predicate argument position and each clause variable gets a
    type class; head and body atoms equate their argument terms with
    the positions they sit in, and '='/2 equates its two sides.
    """
    cls = _Classes()
    pos: dict[tuple[PredKey, int], int] = {}
    order: list[PredKey] = []

    def position(pred: PredKey, j: int) -> int:
        key = (pred, j)
        if key not in pos:
            pos[key] = cls.fresh()
        return pos[key]

    for clause in program.clauses:
        varc: dict[str, int] = {}

        def term_class(t: Term) -> int:
            if isinstance(t, Var):
                if t.name not in varc:
                    varc[t.name] = cls.fresh()
                return varc[t.name]
            c = cls.fresh()
            cls.ensure_alt(c, t.functor, tuple(term_class(a) for a in t.args))
            return c

        for atom in (clause.head, *clause.body):
            pred = pred_of(atom)
            if pred == (EQ, 2):
                cls.union(term_class(atom.args[0]), term_class(atom.args[1]))
                continue
            if pred not in order:
                order.append(pred)
            for j, t in enumerate(atom.args):
                cls.union(position(pred, j), term_class(t))

    _merge_renamings(cls)

    names: dict[int, str] = {}
    defs_order: list[int] = []
    tcount = 0
    pcount = 0

    def visit(c: int) -> str:
        nonlocal tcount, pcount
        r = cls.find(c)
        if r in names:
            return names[r]
        if cls.alts[r]:
            tcount += 1
            names[r] = f"t{tcount}"
            defs_order.append(r)
            for key in sorted(cls.alts[r], key=lambda k: (k[1], k[0])):
                for arg in cls.alts[r][key]:
                    visit(arg)
        else:
            names[r] = _param_name(pcount)
            pcount += 1
        return names[r]

    signatures = {pred: tuple(visit(pos[(pred, j)]) for j in range(pred[1]))
                  for pred in order}
    defs: dict[str, tuple[Alt, ...]] = {}
    for r in defs_order:
        alts = [(f, tuple(names[cls.find(a)] for a in args))
                for (f, _n), args in cls.alts[r].items()]
        alts.sort(key=lambda alt: (len(alt[1]), alt[0], alt[1]))
        defs[names[r]] = tuple(alts)
    params = frozenset(names[r] for r in cls.roots()
                       if r in names and not cls.alts[r])
    return WellTyping(signatures, defs, params)


# ----------------------------------------------------------- checking


def _typed(wt: WellTyping, term: Term, tname: str, env: dict) -> Iterator[dict]:
    """Bindings under which `term` inhabits `tname`.

    Parameters accept anything and leave the environment alone; a
    variable met at a proper type is pinned to it.
    """
    if tname in wt.params:
        yield env
        return
    alts = wt.defs.get(tname)
    if alts is None:
        raise InputError(f"well-typing refers to unknown type {tname!r}")
    if isinstance(term, Var):
        bound = env.get(term.name)
        if bound is None:
            out = dict(env)
            out[term.name] = tname
            yield out
        elif bound == tname:
            yield env
        return
    for f, args in alts:
        if f == term.functor and len(args) == term.arity:
            yield from _typed_seq(wt, term.args, args, env)


def _typed_seq(wt: WellTyping, terms, tnames, env: dict) -> Iterator[dict]:
    if not terms:
        yield env
        return
    for out in _typed(wt, terms[0], tnames[0], env):
        yield from _typed_seq(wt, terms[1:], tnames[1:], out)


def check_welltyping(program: Program, wt: WellTyping) -> tuple[bool, int | None]:
    """Does every clause respect the given typing?

    Atoms of predicates without a signature are skipped when the
    predicate has no clauses (builtins are unconstrained) and fail the
    clause otherwise.  Returns the first offending clause's index.
    """
    defined = program.defined_predicates

    def clause_ok(clause: Clause) -> bool:
        atoms = (clause.head, *clause.body)

        def go(i: int, env: dict) -> Iterator[dict]:
            if i == len(atoms):
                yield env
                return
            sig = wt.signatures.get(pred_of(atoms[i]))
            if sig is None:
                if pred_of(atoms[i]) in defined:
                    return
                yield from go(i + 1, env)
                return
            for out in _typed_seq(wt, atoms[i].args, sig, env):
                yield from go(i + 1, out)

        return next(go(0, {}), None) is not None

    for c, clause in enumerate(program.clauses):
        if not clause_ok(clause):
            return False, c
    return True, None


# ------------------------------------------- regular approximation


@dataclass(frozen=True)
class RegularApprox:
    """Automaton over-approximating every predicate's success set."""
    fta: FTA
    signatures: dict[PredKey, tuple[str, ...]]


def infer_rta(program: Program, budget: Budget | None = None) -> RegularApprox:
    """Success-set approximation by a worklist over flow constraints.

    Head argument structure adds transitions into position states;
    body occurrences give each variable a denotation by projecting the
    enclosing position state; inclusion edges copy transitions along.
    Variables with no occurrence in a defined body atom can hold
    anything and denote the dynamic state.
    """
    sig = sorted(signature_of(program))
    defined = program.defined_predicates

    names: list[str] = [DYNAMIC]
    trans_into: list[set[tuple[str, tuple[int, ...]]]] = [set()]
    incl_out: list[set[int]] = [set()]
    projs: list[list[tuple[str, int, int]]] = [[]]

    def new_state(name: str) -> int:
        names.append(name)
        trans_into.append(set())
        incl_out.append(set())
        projs.append([])
        return len(names) - 1

    taken = {DYNAMIC}

    def position_name(p: str, j: int) -> str:
        base = f"t_{p}{j + 1}"
        while base in taken:
            base += "_"
        taken.add(base)
        return base

    pos: dict[tuple[PredKey, int], int] = {}
    order: list[PredKey] = []
    for clause in program.clauses:
        for atom in (clause.head, *clause.body):
            pred = pred_of(atom)
            if pred in defined and pred not in order:
                order.append(pred)
                for j in range(pred[1]):
                    pos[(pred, j)] = new_state(position_name(pred[0], j))

    aux_count = 0

    def aux_state() -> int:
        nonlocal aux_count
        aux_count += 1
        return new_state(f"s{aux_count}")

    work: deque[tuple[str, tuple[int, ...], int]] = deque()

    def add_trans(f: str, args: tuple[int, ...], s: int) -> None:
        if (f, args) not in trans_into[s]:
            trans_into[s].add((f, args))
            work.append((f, args, s))

    def add_incl(a: int, b: int) -> None:
        if a == b or b in incl_out[a]:
            return
        incl_out[a].add(b)
        for f, args in list(trans_into[a]):
            add_trans(f, args, b)

    def add_proj(src: int, f: str, i: int, tgt: int) -> None:
        projs[src].append((f, i, tgt))
        for g, args in list(trans_into[src]):
            if g == f:
                add_incl(args[i], tgt)

    for f, n in sig:
        add_trans(f, (0,) * n, 0)

    for clause in program.clauses:
        varstate: dict[str, int] = {}

        def bind_vars(t: Term, src: int) -> None:
            """Give unseen variables of t a denotation below src."""
            if isinstance(t, Var):
                varstate.setdefault(t.name, src)
                return
            for i, child in enumerate(t.args):
                if any(v not in varstate for v in term_vars(child)):
                    a = aux_state()
                    add_proj(src, t.functor, i, a)
                    bind_vars(child, a)

        for atom in clause.body:
            pred = pred_of(atom)
            if pred not in defined:
                continue
            for j, t in enumerate(atom.args):
                bind_vars(t, pos[(pred, j)])

        def state_of(t: Term) -> int:
            if isinstance(t, Var):
                return varstate.get(t.name, 0)
            a = aux_state()
            add_trans(t.functor, tuple(state_of(u) for u in t.args), a)
            return a

        hpred = pred_of(clause.head)
        for j, t in enumerate(clause.head.args):
            s = pos[(hpred, j)]
            if isinstance(t, Var):
                add_incl(varstate.get(t.name, 0), s)
            else:
                add_trans(t.functor, tuple(state_of(u) for u in t.args), s)

    ticks = 0
    while work:
        f, args, s = work.popleft()
        ticks += 1
        if budget and ticks % 4096 == 0:
            budget.check("approximation")
        for b in list(incl_out[s]):
            add_trans(f, args, b)
        for g, i, tgt in list(projs[s]):
            if g == f:
                add_incl(args[i], tgt)

    trans = frozenset(Transition(f, tuple(names[a] for a in args), names[s])
                      for s in range(len(names))
                      for f, args in trans_into[s])
    fta = FTA(frozenset(names), trans, frozenset(sig))
    signatures = {pred: tuple(names[pos[(pred, j)]] for j in range(pred[1]))
                  for pred in order}
    return RegularApprox(fta, signatures)


# ------------------------------------------------------- conversion


def to_regular_types(typing, signature) -> FTA:
    """Turn an inference result into an automaton over `signature`,
    ready to determinise.  Type parameters widen to dynamic."""
    if isinstance(typing, RegularApprox):
        return FTA(typing.fta.states, typing.fta.transitions,
                   typing.fta.signature | frozenset(signature))
    if not isinstance(typing, WellTyping):
        raise InputError(f"cannot convert {type(typing).__name__} to types")
    trans: set[Transition] = set()
    sig = set(signature)
    for tname, alts in typing.defs.items():
        for f, args in alts:
            mapped = []
            for a in args:
                if a in typing.defs:
                    mapped.append(a)
                elif a in typing.params:
                    mapped.append(DYNAMIC)
                else:
                    raise InputError(f"well-typing refers to unknown type {a!r}")
            trans.add(Transition(f, tuple(mapped), tname))
            sig.add((f, len(args)))
    states = frozenset(typing.defs) | {DYNAMIC}
    return complete_with_dynamic(FTA(states, frozenset(trans), frozenset(sig)))


# ---------------------------------------------------------- display


def format_welltyping(wt: WellTyping) -> str:
    lines = []
    for (p, _n), sig in wt.signatures.items():
        lines.append(f"{p}({','.join(sig)})." if sig else f"{p}.")
    for tname, alts in wt.defs.items():
        shown = " ; ".join(_format_alt(f, args) for f, args in alts)
        lines.append(f"{tname} --> {shown}.")
    return "\n".join(lines) + "\n"


def _format_alt(f: str, args: tuple[str, ...]) -> str:
    if f == "[]" and not args:
        return "[]"
    if f == "." and len(args) == 2:
        return f"[{args[0]}|{args[1]}]"
    return f"{f}({','.join(args)})" if args else f


def format_regular_approx(ra: RegularApprox) -> str:
    """Signatures, then rules per state.  A state carrying the full
    dynamic rule set denotes all terms and prints as dynamic."""
    sig_functors = sorted(ra.fta.signature)
    by_state: dict[str, set[tuple[str, tuple[str, ...]]]] = {}
    for t in ra.fta.transitions:
        by_state.setdefault(t.result, set()).add((t.functor, t.args))
    lines = []
    for (p, _n), states in ra.signatures.items():
        lines.append(f"{p}({','.join(states)})." if states else f"{p}.")
    for state in sorted(by_state, key=_state_key):
        if state == DYNAMIC:
            continue
        alts = by_state[state]
        if all((f, (DYNAMIC,) * n) in alts for f, n in sig_functors):
            lines.append(f"{state} --> dynamic.")
            continue
        shown = " ; ".join(_format_alt(f, args)
                           for f, args in sorted(alts, key=lambda fa: (len(fa[1]), fa)))
        lines.append(f"{state} --> {shown}.")
    return "\n".join(lines) + "\n"


def _state_key(name: str):
    return [int(p) if p.isdigit() else p for p in re.split(r"(\d+)", name)]
