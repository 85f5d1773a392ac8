"""Regular types as finite tree automata.

A type is a state of a bottom-up finite tree automaton whose rules have
the shape f(q1,...,qn) -> q.  Type definitions are written either as
rules

    matrix --> [] ; [row|matrix].

or directly as transitions

    [row|matrix] -> matrix.

The distinguished type `dynamic` denotes all terms: for every functor
f/n in the signature there is a rule f(dynamic,...,dynamic) -> dynamic,
including $VAR -> dynamic.  Contextual types are generated over a
signature on demand:

    static   f(static,...,static) -> static      for every f but $VAR
    nonvar   f(dynamic,...,dynamic) -> nonvar    for every f but $VAR
    var      $VAR -> var

Determinisation is by subset construction.  The result states (DStates)
are the nonempty sets "all source states accepting t" for ground terms
t, written as canonically sorted tuples of type names.  Because the
dynamic rules are total, the result is a complete deterministic
automaton: every ground term lands in exactly one DState, and distinct
DStates denote disjoint term sets.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from itertools import product

from .errors import (DegenerateSignatureError, InputError, ReservedNameError,
                     ResourceLimitError, TypeSyntaxError, UndeclaredTypeError)
from .limits import DEFAULT_MAX_STATES, Budget
from .syntax import (CONS, NIL, VAR_CONST, Struct, Term, Token, Var, tokenize)

DYNAMIC = "dynamic"
STATIC = "static"
NONVAR = "nonvar"
VAR_TYPE = "var"
CONTEXTUAL_KINDS = (STATIC, NONVAR, VAR_TYPE)


@dataclass(frozen=True)
class Transition:
    functor: str
    args: tuple[str, ...]
    result: str

    @property
    def arity(self) -> int:
        return len(self.args)


@dataclass(frozen=True)
class FTA:
    states: frozenset[str]
    transitions: frozenset[Transition]
    signature: frozenset[tuple[str, int]]

    def union(self, other: "FTA") -> "FTA":
        return FTA(self.states | other.states,
                   self.transitions | other.transitions,
                   self.signature | other.signature)


def empty_fta(signature) -> FTA:
    return FTA(frozenset({DYNAMIC}), frozenset(), frozenset(signature))


def contextual_transitions(signature, kinds=()) -> FTA:
    """The dynamic rules over `signature`, plus rules for the requested
    contextual kinds (any of static, nonvar, var)."""
    kinds = frozenset(kinds) - {DYNAMIC}
    bad = kinds - set(CONTEXTUAL_KINDS)
    if bad:
        raise InputError(f"unknown contextual kinds: {', '.join(sorted(bad))}")
    sig = frozenset(signature)
    trans: set[Transition] = set()
    for f, n in sig:
        trans.add(Transition(f, (DYNAMIC,) * n, DYNAMIC))
        if f == VAR_CONST and n == 0:
            continue
        if STATIC in kinds:
            trans.add(Transition(f, (STATIC,) * n, STATIC))
        if NONVAR in kinds:
            trans.add(Transition(f, (DYNAMIC,) * n, NONVAR))
    if VAR_TYPE in kinds:
        trans.add(Transition(VAR_CONST, (), VAR_TYPE))
    return FTA(frozenset({DYNAMIC}) | kinds, frozenset(trans), sig)


def complete_with_dynamic(fta: FTA) -> FTA:
    """Union in the full dynamic rule set over the automaton's signature."""
    return fta.union(contextual_transitions(fta.signature))


# ------------------------------------------------------- type text


def parse_type_defs(text: str, signature, predeclared=()) -> FTA:
    """Parse user type definitions against a base signature.

    Functors that occur only in the type text are added to the returned
    signature.  `dynamic` is implicitly declared and may not be
    redefined; `predeclared` supplies further usable names (for example
    contextual kinds selected elsewhere).
    """
    toks = tokenize(text, TypeSyntaxError)
    k = 0

    def peek() -> Token:
        return toks[k]

    def take() -> Token:
        nonlocal k
        t = toks[k]
        k += 1
        return t

    def fail(msg: str, tok: Token | None = None):
        tok = tok or peek()
        raise TypeSyntaxError(msg, tok.line, tok.col)

    def expect(kind: str) -> Token:
        if peek().kind != kind:
            fail(f"expected {kind!r}, found {peek().text!r}")
        return take()

    def type_term() -> tuple[str, tuple[str, ...], Token]:
        """One functor applied to type names; list sugar allowed."""
        t = peek()
        if t.kind == "[":
            take()
            if peek().kind == "]":
                take()
                return NIL, (), t
            head = expect("atom").text
            if peek().kind != "|":
                fail("list sugar in type rules must be [] or [name|name]")
            take()
            tail = expect("atom").text
            expect("]")
            return CONS, (head, tail), t
        if t.kind in ("atom", "int"):
            take()
            if peek().kind == "(":
                take()
                args = [expect("atom").text]
                while peek().kind == ",":
                    take()
                    args.append(expect("atom").text)
                expect(")")
                return t.text, tuple(args), t
            return t.text, (), t
        fail(f"expected a type rule, found {t.text!r}")

    declared: set[str] = {DYNAMIC, *predeclared}
    # (functor, argnames, result, token of the alternative) until all
    # declarations are known
    pending: list[tuple[str, tuple[str, ...], str, Token]] = []

    while peek().kind != "eof":
        functor, args, start = type_term()
        t = peek()
        if t.kind == "-->":
            if args or functor in (NIL,) or start.kind not in ("atom",):
                fail("the left side of --> must be a plain type name", start)
            if functor == DYNAMIC:
                raise ReservedNameError("the type dynamic is built in and cannot be redefined",
                                        start.line, start.col)
            take()
            declared.add(functor)
            while True:
                f2, args2, tok2 = type_term()
                pending.append((f2, args2, functor, tok2))
                if peek().kind != ";":
                    break
                take()
            expect(".")
        elif t.kind == "->":
            take()
            result = expect("atom").text
            if result == DYNAMIC:
                raise ReservedNameError("the type dynamic is built in and cannot be redefined",
                                        t.line, t.col)
            expect(".")
            declared.add(result)
            pending.append((functor, args, result, start))
        else:
            fail("expected --> or -> after the rule's left side")

    trans: set[Transition] = set()
    sig = set(signature)
    for functor, args, result, tok in pending:
        for a in args:
            if a not in declared:
                raise UndeclaredTypeError(f"type rule refers to undeclared type {a!r}",
                                          tok.line, tok.col)
        trans.add(Transition(functor, args, result))
        sig.add((functor, len(args)))
    return FTA(frozenset(declared), frozenset(trans), frozenset(sig))


# -------------------------------------------------- determinisation

DState = tuple[str, ...]


def dstate(names) -> DState:
    return tuple(sorted(set(names)))


@dataclass(frozen=True)
class DFTA:
    states: frozenset[DState]
    signature: frozenset[tuple[str, int]]
    transitions: dict[tuple[str, tuple[DState, ...]], DState]

    def eval(self, term: Term) -> DState:
        if isinstance(term, Var):
            raise InputError("cannot evaluate a non-ground term")
        args = tuple(self.eval(a) for a in term.args)
        try:
            return self.transitions[(term.functor, args)]
        except KeyError:
            raise InputError(f"functor {term.functor}/{term.arity} "
                             f"is outside the automaton's signature") from None


def _by_functor(fta: FTA) -> dict[tuple[str, int], list[tuple[tuple[str, ...], str]]]:
    idx: dict[tuple[str, int], list[tuple[tuple[str, ...], str]]] = {}
    for t in fta.transitions:
        idx.setdefault((t.functor, t.arity), []).append((t.args, t.result))
    for rules in idx.values():
        rules.sort()
    return idx


def determinize(fta: FTA, max_states: int | None = None,
                budget: Budget | None = None, require_dynamic: bool = True) -> DFTA:
    """Subset construction.

    With the dynamic rules present (the normal case, checked unless
    `require_dynamic` is off) the result is total: every combination of
    reachable argument states has exactly one successor state.
    """
    cap = max_states if max_states is not None else DEFAULT_MAX_STATES
    sig = sorted(fta.signature)
    if not any(n == 0 for _, n in sig):
        raise DegenerateSignatureError("signature has no constants, no ground terms exist")
    if require_dynamic:
        for f, n in sig:
            if Transition(f, (DYNAMIC,) * n, DYNAMIC) not in fta.transitions:
                raise InputError(f"automaton lacks the dynamic rule for {f}/{n}; "
                                 f"complete it with the dynamic rules first")
    idx = _by_functor(fta)
    states: set[DState] = set()
    table: dict[tuple[str, tuple[DState, ...]], DState] = {}
    changed = True
    while changed:
        if budget:
            budget.check("determinisation")
        changed = False
        known = sorted(states)
        for f, n in sig:
            rules = idx.get((f, n), ())
            for tup in product(known, repeat=n):
                key = (f, tup)
                if key in table:
                    continue
                members = [set(s) for s in tup]
                result = {q for args, q in rules
                          if all(args[i] in members[i] for i in range(n))}
                if not result:
                    continue
                st = dstate(result)
                table[key] = st
                changed = True
                if st not in states:
                    states.add(st)
                    if len(states) > cap:
                        raise ResourceLimitError(
                            f"determinisation exceeded the cap of {cap} states")
    return DFTA(frozenset(states), fta.signature, table)


def dfta_as_fta(dfta: DFTA) -> FTA:
    """View a deterministic automaton as a plain FTA (states renamed to
    '{a,b}' strings); useful for re-determinisation checks."""
    name = lambda s: "{" + ",".join(s) + "}"
    trans = frozenset(Transition(f, tuple(name(a) for a in args), name(res))
                      for (f, args), res in dfta.transitions.items())
    return FTA(frozenset(name(s) for s in dfta.states), trans, dfta.signature)


# ------------------------------------------------------ acceptance


def accepts(fta: FTA, term: Term) -> frozenset[str]:
    """All states accepting a ground term, bottom-up.

    This is the semantic reference point for everything else: a type t
    denotes { ground term g | t in accepts(fta, g) }.
    """
    idx = _by_functor(fta)
    sig = fta.signature

    def go(t: Term) -> frozenset[str]:
        if isinstance(t, Var):
            raise InputError("acceptance is defined on ground terms only")
        if (t.functor, t.arity) not in sig:
            raise InputError(f"functor {t.functor}/{t.arity} "
                             f"is outside the automaton's signature")
        child = [go(a) for a in t.args]
        return frozenset(res for args, res in idx.get((t.functor, t.arity), ())
                         if all(args[i] in child[i] for i in range(len(child))))

    return go(term)


def empty_states(fta: FTA) -> frozenset[str]:
    """States whose denoted term set is empty (inhabitation fixpoint)."""
    inhabited: set[str] = set()
    changed = True
    while changed:
        changed = False
        for t in fta.transitions:
            if t.result not in inhabited and all(a in inhabited for a in t.args):
                inhabited.add(t.result)
                changed = True
    return frozenset(fta.states) - inhabited


# ---------------------------------------------------------- display


def _natural_key(name: str):
    parts = re.split(r"(\d+)", name)
    return [int(p) if p.isdigit() else p for p in parts]


def format_alt(functor: str, args) -> str:
    if functor == NIL and not args:
        return NIL
    if functor == CONS and len(args) == 2:
        return f"[{args[0]}|{args[1]}]"
    if not args:
        return functor
    return f"{functor}({','.join(args)})"


def format_fta(fta: FTA, include_dynamic: bool = False) -> str:
    """Type-rule display, grouped by result state.

    The dynamic rules are implicit and skipped by default, which keeps
    the output parseable by parse_type_defs.
    """
    grouped: dict[str, list[tuple[str, tuple[str, ...]]]] = {}
    for t in fta.transitions:
        if t.result == DYNAMIC and not include_dynamic:
            continue
        grouped.setdefault(t.result, []).append((t.functor, t.args))
    lines = []
    for res in sorted(grouped, key=_natural_key):
        alts = " ; ".join(format_alt(f, a) for f, a in sorted(grouped[res]))
        lines.append(f"{res} --> {alts}.")
    return "\n".join(lines) + ("\n" if lines else "")
