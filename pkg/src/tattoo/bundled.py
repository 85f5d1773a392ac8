"""Ready-to-run example programs.

These double as documentation and as service fixtures: the web UI
lists them, and the test-suite cross-checks several against hand
computed results.
"""
from __future__ import annotations

from dataclasses import dataclass

from .errors import InputError


@dataclass(frozen=True)
class Example:
    name: str
    description: str
    program: str
    types: str = ""
    goal: str | None = None
    contextual: tuple[str, ...] = ()


EXAMPLES: tuple[Example, ...] = (
    Example(
        name="append",
        description="List concatenation, analysed against the list type.",
        program=(
            "append([],Ys,Ys).\n"
            "append([X|Xs],Ys,[X|Zs]) :- append(Xs,Ys,Zs).\n"
        ),
        types="list --> [] ; [dynamic|list].\n",
    ),
    Example(
        name="reverse",
        description="Naive reverse; the accumulator-free classic.",
        program=(
            "rev([],[]).\n"
            "rev([X|Xs],Ys) :- rev(Xs,Zs), app(Zs,[X],Ys).\n"
            "app([],Ys,Ys).\n"
            "app([X|Xs],Ys,[X|Zs]) :- app(Xs,Ys,Zs).\n"
        ),
        types="list --> [] ; [dynamic|list].\n",
        goal="rev(list,dynamic)",
    ),
    Example(
        name="transpose",
        description="Matrix transposition over row and matrix types.",
        program=(
            "transpose(Xss,[]) :- nullrows(Xss).\n"
            "transpose(Xss,[Ys|Yss]) :- makerow(Xss,Ys,Zss), transpose(Zss,Yss).\n"
            "makerow([],[],[]).\n"
            "makerow([[X|Xs]|Yss],[X|Ys],[Xs|Xss]) :- makerow(Yss,Ys,Xss).\n"
            "nullrows([]).\n"
            "nullrows([[]|Ns]) :- nullrows(Ns).\n"
        ),
        types=(
            "row --> [] ; [dynamic|row].\n"
            "matrix --> [] ; [row|matrix].\n"
        ),
    ),
    Example(
        name="mutex",
        description=("Two processes passing a token; the unsafe state is "
                     "unreachable, so its clause is dead."),
        program=(
            "init(conf(tok,idle,idle)).\n"
            "step(conf(tok,idle,B),conf(none,crit,B)).\n"
            "step(conf(none,crit,B),conf(tok,idle,B)).\n"
            "step(conf(tok,A,idle),conf(none,A,crit)).\n"
            "step(conf(none,A,crit),conf(tok,A,idle)).\n"
            "reach(S) :- init(S).\n"
            "reach(T) :- reach(S), step(S,T).\n"
            "unsafe(S) :- reach(S), clash(S).\n"
            "clash(conf(_,crit,crit)).\n"
        ),
        types=(
            "tk --> tok.\n"
            "fr --> none.\n"
            "id --> idle.\n"
            "cr --> crit.\n"
            "safe --> conf(tk,id,id) ; conf(fr,cr,id) ; conf(fr,id,cr).\n"
        ),
        goal="unsafe(dynamic)",
    ),
    Example(
        name="evenodd",
        description="Mutually recursive parity over unary numerals.",
        program=(
            "even(0).\n"
            "even(s(X)) :- odd(X).\n"
            "odd(s(X)) :- even(X).\n"
        ),
        types="nat --> 0 ; s(nat).\n",
        goal="even(nat)",
    ),
)


def get_example(name: str) -> Example:
    for ex in EXAMPLES:
        if ex.name == name:
            return ex
    raise InputError(f"no bundled example named {name!r}")
