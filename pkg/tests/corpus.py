"""Small programs the whole suite chews on.

Each case pairs a program with several run configurations (type text,
contextual kinds, optional goal).  Programs are kept tiny on purpose:
the oracles enumerate and resolve, so every extra clause costs real
time.
"""
from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class Run:
    types: str = ""
    contextual: tuple[str, ...] = ()
    goal: str | None = None


@dataclass(frozen=True)
class Case:
    name: str
    program: str
    runs: tuple[Run, ...]


LIST = "list --> [] ; [dynamic|list].\n"
NAT = "nat --> 0 ; s(nat).\n"
ROWMAT = "row --> [] ; [dynamic|row].\nmatrix --> [] ; [row|matrix].\n"
TREE = "tree --> leaf ; node(tree,tree).\n"
SAFETY = ("tk --> tok.\nfr --> none.\nid --> idle.\ncr --> crit.\n"
          "safe --> conf(tk,id,id) ; conf(fr,cr,id) ; conf(fr,id,cr).\n")

CASES: tuple[Case, ...] = (
    Case(
        "append",
        "append([],Ys,Ys).\n"
        "append([X|Xs],Ys,[X|Zs]) :- append(Xs,Ys,Zs).\n",
        (Run(LIST), Run(LIST, (), "append(list,dynamic,dynamic)"),
         Run("", ("static",)), Run())),
    Case(
        "reverse",
        "rev([],[]).\n"
        "rev([X|Xs],Ys) :- rev(Xs,Zs), app(Zs,[X],Ys).\n"
        "app([],Ys,Ys).\n"
        "app([X|Xs],Ys,[X|Zs]) :- app(Xs,Ys,Zs).\n",
        (Run(LIST), Run(LIST, (), "rev(list,dynamic)"),
         Run("", ("static", "nonvar", "var")))),
    Case(
        "transpose",
        "transpose(Xss,[]) :- nullrows(Xss).\n"
        "transpose(Xss,[Ys|Yss]) :- makerow(Xss,Ys,Zss), transpose(Zss,Yss).\n"
        "makerow([],[],[]).\n"
        "makerow([[X|Xs]|Yss],[X|Ys],[Xs|Xss]) :- makerow(Yss,Ys,Xss).\n"
        "nullrows([]).\n"
        "nullrows([[]|Ns]) :- nullrows(Ns).\n",
        (Run(ROWMAT), Run(ROWMAT, (), "transpose(matrix,dynamic)"), Run())),
    Case(
        "mutex",
        "init(conf(tok,idle,idle)).\n"
        "step(conf(tok,idle,B),conf(none,crit,B)).\n"
        "step(conf(none,crit,B),conf(tok,idle,B)).\n"
        "step(conf(tok,A,idle),conf(none,A,crit)).\n"
        "step(conf(none,A,crit),conf(tok,A,idle)).\n"
        "reach(S) :- init(S).\n"
        "reach(T) :- reach(S), step(S,T).\n"
        "unsafe(S) :- reach(S), clash(S).\n"
        "clash(conf(_,crit,crit)).\n",
        (Run(SAFETY), Run(SAFETY, (), "unsafe(dynamic)"),
         Run("", (), "unsafe(dynamic)"))),
    Case(
        "evenodd",
        "even(0).\neven(s(X)) :- odd(X).\nodd(s(X)) :- even(X).\n",
        (Run(NAT), Run(NAT, (), "even(nat)"), Run("", ("static",)))),
    Case(
        "member",
        "member(X,[X|_]).\nmember(X,[_|Ys]) :- member(X,Ys).\n",
        (Run(LIST, (), "member(dynamic,list)"), Run(LIST), Run())),
    Case(
        "mirror",
        "mirror(leaf,leaf).\n"
        "mirror(node(L,R),node(RM,LM)) :- mirror(R,RM), mirror(L,LM).\n",
        (Run(TREE), Run(TREE, (), "mirror(tree,dynamic)"),
         Run("", ("static",)))),
    Case(
        "last",
        "last([X],X).\nlast([_|Xs],X) :- last(Xs,X).\n",
        (Run(LIST, (), "last(list,dynamic)"), Run(LIST), Run())),
    Case(
        "plus",
        "plus(0,Y,Y).\nplus(s(X),Y,s(Z)) :- plus(X,Y,Z).\n",
        (Run(NAT, (), "plus(nat,nat,dynamic)"), Run(NAT),
         Run("", ("static",)))),
    Case(
        "eqcheck",
        "check(X,Y) :- valid(X), X = Y.\n"
        "same(X,X).\n"
        "pair(X,Y) :- same(X,Z), Z = Y.\n",
        (Run(), Run("", (), "check(dynamic,dynamic)"), Run("", ("var",)))),
    Case(
        "deadslice",
        "p(X) :- zero(X), t(X).\n"
        "zero(X) :- zero(X).\n"
        "t(a).\n",
        (Run("", (), "p(dynamic)"), Run(),
         Run("ab --> a ; b.\n", (), "p(ab)"))),
    Case(
        "cafe",
        "'café'('naïve').\n"
        "likes(X) :- 'café'(X).\n",
        (Run(), Run("", (), "likes(dynamic)"), Run("word --> 'naïve'.\n"))),
    Case(
        "arity_clash",
        "p(a).\n"
        "q(X) :- p(X,X).\n",
        (Run(), Run("", (), "q(dynamic)"), Run("", ("nonvar",)))),
)
