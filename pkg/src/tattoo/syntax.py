"""Terms, clauses and programs of the analysed language.

Programs are sequences of definite clauses in plain Edinburgh style:

    transpose(Xs,[]) :- nullrows(Xs).
    makerow([],[],[]).

The only operators are ',' in bodies, ':-' between head and body, and
list sugar: [a,b|T] desugars to the pair constructor '.'/2 and the
constant '[]'/0.  Atoms are lower-case names, quoted names or '=';
variables start upper-case or with '_' ('_' alone is anonymous and
fresh at each occurrence); integers are constants.  '%' starts a
line comment.

The constant $VAR/0 is reserved: it stands for "a variable" inside the
analyses and may never occur in user text (programs, type definitions
or goals).  It is, however, part of every signature.

Clauses remember their source spans (character offsets into the
original text) so reports can point back at the code.
"""
from __future__ import annotations

import re
from dataclasses import dataclass

from .errors import GoalSyntaxError, ProgramSyntaxError, ReservedNameError, SourcePositionError

CONS = "."
NIL = "[]"
VAR_CONST = "$VAR"
EQ = "="

PredKey = tuple[str, int]


# ---------------------------------------------------------------- terms


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Struct:
    functor: str
    args: tuple["Term", ...] = ()

    @property
    def arity(self) -> int:
        return len(self.args)


Term = Var | Struct


def atom(name: str) -> Struct:
    return Struct(name)


def mklist(items, tail: Term | None = None) -> Term:
    out: Term = tail if tail is not None else Struct(NIL)
    for item in reversed(list(items)):
        out = Struct(CONS, (item, out))
    return out


def term_vars(term: Term):
    """Yield variable names in left-to-right order, with repeats."""
    if isinstance(term, Var):
        yield term.name
    else:
        for arg in term.args:
            yield from term_vars(arg)


def term_functors(term: Term):
    """Yield (functor, arity) pairs of every Struct in the term."""
    if isinstance(term, Struct):
        yield (term.functor, term.arity)
        for arg in term.args:
            yield from term_functors(arg)


def is_ground(term: Term) -> bool:
    if isinstance(term, Var):
        return False
    return all(is_ground(a) for a in term.args)


def pred_of(a: Struct) -> PredKey:
    return (a.functor, a.arity)


# ------------------------------------------------------------- tokens

_PLAIN_ATOM = re.compile(r"[a-z][A-Za-z0-9_]*")
_VAR_NAME = re.compile(r"[A-Z_][A-Za-z0-9_]*")
_DIGITS = re.compile(r"[0-9]+")


@dataclass(frozen=True)
class Token:
    kind: str       # 'atom' | 'var' | 'int' | structural text | 'eof'
    text: str
    pos: int        # character offset of first character
    end: int        # character offset just past the token
    line: int
    col: int


_STRUCTURAL = ("-->", "->", ":-")
_SINGLE = set("()[]|,;")


def tokenize(text: str, error_cls: type[SourcePositionError] = ProgramSyntaxError) -> list[Token]:
    toks: list[Token] = []
    i, n = 0, len(text)
    line, col = 1, 1

    def bump(k: int):
        nonlocal i, line, col
        for _ in range(k):
            if text[i] == "\n":
                line += 1
                col = 1
            else:
                col += 1
            i += 1

    def emit(kind: str, raw_len: int, value: str | None = None):
        toks.append(Token(kind, value if value is not None else text[i:i + raw_len],
                          i, i + raw_len, line, col))
        bump(raw_len)

    while i < n:
        c = text[i]
        if c in " \t\r\n":
            bump(1)
            continue
        if c == "%":
            while i < n and text[i] != "\n":
                bump(1)
            continue
        if c == "'":
            j = i + 1
            buf = []
            while True:
                if j >= n or text[j] == "\n":
                    raise error_cls("unterminated quoted atom", line, col)
                if text[j] == "'":
                    if j + 1 < n and text[j + 1] == "'":
                        buf.append("'")
                        j += 2
                        continue
                    j += 1
                    break
                buf.append(text[j])
                j += 1
            name = "".join(buf)
            if name == VAR_CONST:
                raise ReservedNameError(f"{VAR_CONST} is reserved and may not appear here", line, col)
            toks.append(Token("atom", name, i, j, line, col))
            bump(j - i)
            continue
        matched = False
        for s in _STRUCTURAL:
            if text.startswith(s, i):
                emit(s, len(s))
                matched = True
                break
        if matched:
            continue
        if c in _SINGLE:
            emit(c, 1)
            continue
        if c == ".":
            nxt = text[i + 1] if i + 1 < n else ""
            if nxt == "" or nxt in " \t\r\n%":
                emit(".", 1)
                continue
            raise error_cls("'.' is only valid as an end-of-clause marker", line, col)
        if c == "=":
            emit("atom", 1)
            continue
        m = _PLAIN_ATOM.match(text, i)
        if m:
            emit("atom", len(m.group()))
            continue
        m = _VAR_NAME.match(text, i)
        if m:
            emit("var", len(m.group()))
            continue
        m = _DIGITS.match(text, i)
        if m:
            emit("int", len(m.group()))
            continue
        raise error_cls(f"unexpected character {c!r}", line, col)
    toks.append(Token("eof", "", n, n, line, col))
    return toks


# ------------------------------------------------------------- clauses


@dataclass(frozen=True)
class Clause:
    head: Struct
    body: tuple[Struct, ...]
    span: tuple[int, int] = (0, 0)
    head_span: tuple[int, int] = (0, 0)
    body_spans: tuple[tuple[int, int], ...] = ()


@dataclass(frozen=True)
class Program:
    text: str
    clauses: tuple[Clause, ...]
    warnings: tuple[str, ...] = ()

    @property
    def defined_predicates(self) -> frozenset[PredKey]:
        return frozenset(pred_of(c.head) for c in self.clauses)

    @property
    def called_predicates(self) -> frozenset[PredKey]:
        return frozenset(pred_of(b) for c in self.clauses for b in c.body)

    @property
    def predicates(self) -> frozenset[PredKey]:
        return self.defined_predicates | self.called_predicates

    def clauses_of(self, pred: PredKey) -> tuple[int, ...]:
        return tuple(i for i, c in enumerate(self.clauses) if pred_of(c.head) == pred)


def make_program(clauses, text: str = "") -> Program:
    """Assemble a Program from synthetic clauses (spans stay zeroed)."""
    return Program(text=text, clauses=tuple(clauses))


# -------------------------------------------------------------- parser


class _Parser:
    def __init__(self, tokens: list[Token], error_cls=ProgramSyntaxError):
        self.toks = tokens
        self.k = 0
        self.anon = 0
        self.error_cls = error_cls

    def peek(self) -> Token:
        return self.toks[self.k]

    def take(self) -> Token:
        t = self.toks[self.k]
        self.k += 1
        return t

    def fail(self, msg: str, tok: Token | None = None):
        tok = tok or self.peek()
        raise self.error_cls(msg, tok.line, tok.col)

    def expect(self, kind: str) -> Token:
        t = self.peek()
        if t.kind != kind:
            self.fail(f"expected {kind!r}, found {t.text!r}" if t.kind != "eof"
                      else f"expected {kind!r}, found end of input")
        return self.take()

    # -- terms

    def term(self) -> tuple[Term, int, int]:
        t = self.peek()
        if t.kind == "var":
            self.take()
            name = t.text
            if name == "_":
                # anonymous variables are fresh at each occurrence; the
                # '/' keeps generated names out of the user namespace
                name = f"_/{self.anon}"
                self.anon += 1
            return Var(name), t.pos, t.end
        if t.kind == "int":
            self.take()
            return Struct(t.text), t.pos, t.end
        if t.kind == "atom":
            self.take()
            if self.peek().kind == "(":
                self.take()
                args = [self.term()[0]]
                while self.peek().kind == ",":
                    self.take()
                    args.append(self.term()[0])
                close = self.expect(")")
                return Struct(t.text, tuple(args)), t.pos, close.end
            return Struct(t.text), t.pos, t.end
        if t.kind == "[":
            self.take()
            if self.peek().kind == "]":
                close = self.take()
                return Struct(NIL), t.pos, close.end
            items = [self.term()[0]]
            while self.peek().kind == ",":
                self.take()
                items.append(self.term()[0])
            tail: Term | None = None
            if self.peek().kind == "|":
                self.take()
                tail = self.term()[0]
            close = self.expect("]")
            return mklist(items, tail), t.pos, close.end
        self.fail(f"expected a term, found {t.text!r}" if t.kind != "eof"
                  else "expected a term, found end of input")

    def literal(self) -> tuple[Struct, int, int]:
        term, start, end = self.term()
        t = self.peek()
        if t.kind == "atom" and t.text == EQ:
            # the one infix operator: unification
            self.take()
            rhs, _, end = self.term()
            return Struct(EQ, (term, rhs)), start, end
        if isinstance(term, Var):
            self.fail("a variable cannot be a literal")
        assert isinstance(term, Struct)
        if _DIGITS.fullmatch(term.functor):
            self.fail("a number cannot be a literal")
        return term, start, end

    # -- clauses

    def clause(self) -> Clause:
        self.anon = 0
        head, hs, he = self.literal()
        body: list[Struct] = []
        spans: list[tuple[int, int]] = []
        if self.peek().kind == ":-":
            self.take()
            lit, s, e = self.literal()
            body.append(lit)
            spans.append((s, e))
            while self.peek().kind == ",":
                self.take()
                lit, s, e = self.literal()
                body.append(lit)
                spans.append((s, e))
        dot = self.expect(".")
        return Clause(head, tuple(body), span=(hs, dot.end),
                      head_span=(hs, he), body_spans=tuple(spans))

    def program(self) -> list[Clause]:
        clauses = []
        while self.peek().kind != "eof":
            clauses.append(self.clause())
        return clauses


def parse_program(text: str) -> Program:
    clauses = _Parser(tokenize(text)).program()
    warnings = []
    arities: dict[str, set[int]] = {}
    for c in clauses:
        for a in (c.head, *c.body):
            arities.setdefault(a.functor, set()).add(a.arity)
    for name in sorted(arities):
        if len(arities[name]) > 1:
            used = "/".join(str(n) for n in sorted(arities[name]))
            warnings.append(f"predicate {name} is used at several arities ({used}); "
                            f"they are treated as distinct predicates")
    return Program(text=text, clauses=tuple(clauses), warnings=tuple(warnings))


def parse_term(text: str) -> Term:
    """Parse a single term; handy in tests and term constructors."""
    p = _Parser(tokenize(text))
    term, _, _ = p.term()
    if p.peek().kind != "eof":
        p.fail("trailing input after term")
    return term


def parse_typed_goal(text: str) -> tuple[str, tuple[str, ...]]:
    """Parse a typed goal such as append(list,dynamic,dynamic).

    Arguments must be type names (plain atoms); the predicate arity is
    the number of arguments given.
    """
    p = _Parser(tokenize(text, GoalSyntaxError), GoalSyntaxError)
    name = p.expect("atom")
    types: list[str] = []
    if p.peek().kind == "(":
        p.take()
        types.append(p.expect("atom").text)
        while p.peek().kind == ",":
            p.take()
            types.append(p.expect("atom").text)
        p.expect(")")
    if p.peek().kind != "eof":
        p.fail("trailing input after goal")
    return name.text, tuple(types)


# ----------------------------------------------------------- signature


def signature_of(program: Program, extra=()) -> frozenset[tuple[str, int]]:
    """Function symbols of the program's argument terms plus any extra
    terms, always including the reserved constant $VAR/0.

    Predicate symbols themselves are not part of the signature.
    """
    sig: set[tuple[str, int]] = {(VAR_CONST, 0)}
    for clause in program.clauses:
        for a in (clause.head, *clause.body):
            for arg in a.args:
                sig.update(term_functors(arg))
    for term in extra:
        sig.update(term_functors(term))
    return frozenset(sig)


# ------------------------------------------------------------- printer


def _print_name(name: str) -> str:
    if _PLAIN_ATOM.fullmatch(name) or _DIGITS.fullmatch(name) or name == EQ:
        return name
    if name == NIL:
        return NIL
    if name == VAR_CONST:
        return name  # internal display only; never re-parsed
    return "'" + name.replace("'", "''") + "'"


def format_term(term: Term) -> str:
    if isinstance(term, Var):
        return "_" if term.name.startswith("_/") else term.name
    if term.functor == NIL and not term.args:
        return NIL
    if term.functor == CONS and term.arity == 2:
        items = []
        cur: Term = term
        while isinstance(cur, Struct) and cur.functor == CONS and cur.arity == 2:
            items.append(format_term(cur.args[0]))
            cur = cur.args[1]
        body = ",".join(items)
        if isinstance(cur, Struct) and cur.functor == NIL and not cur.args:
            return f"[{body}]"
        return f"[{body}|{format_term(cur)}]"
    if not term.args:
        return _print_name(term.functor)
    args = ",".join(format_term(a) for a in term.args)
    return f"{_print_name(term.functor)}({args})"


def format_literal(atom: Struct) -> str:
    if atom.functor == EQ and atom.arity == 2:
        return f"{format_term(atom.args[0])} = {format_term(atom.args[1])}"
    return format_term(atom)


def format_clause(clause: Clause) -> str:
    head = format_literal(clause.head)
    if not clause.body:
        return head + "."
    return head + " :- " + ", ".join(format_literal(b) for b in clause.body) + "."


def format_program(program: Program) -> str:
    return "".join(format_clause(c) + "\n" for c in program.clauses)
