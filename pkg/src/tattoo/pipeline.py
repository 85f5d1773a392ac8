"""One request type and one entry point shared by the CLI and the
service, so both faces produce byte-identical reports for the same
input.

An analysis request names an engine:

    dm    interpret the program over the (user plus contextual) types
          and compute its least model, goal-directed when a goal is
          given
    wt    infer a well-typing
    rta   infer a regular approximation of the success set

With `chain` set, the inference engines hand their result types to a
second dm pass over the same program, turning a descriptive result
into model-style annotations.
"""
from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass

from .errors import InputError
from .fta import (CONTEXTUAL_KINDS, FTA, contextual_transitions, determinize,
                  parse_type_defs)
from .infer import (format_regular_approx, format_welltyping, infer_rta,
                    infer_welltyping, to_regular_types)
from .limits import (DEFAULT_BUDGET_SECONDS, MAX_PROGRAM_BYTES,
                     MAX_TYPES_BYTES, Budget, resolve_max_states)
from .model import (clause_contributions, least_model, pre_interpretation)
from .qa import TypedGoal, analyze_goal, dead_code
from .report import AnalysisReport, EngineInfo, build_report
from .syntax import Program, parse_program, parse_typed_goal, signature_of

ENGINES = ("dm", "wt", "rta")


@dataclass(frozen=True)
class AnalysisRequest:
    program: str
    types: str = ""
    contextual: tuple[str, ...] = ()
    engine: str = "dm"
    goal: str | None = None
    max_states: int | None = None
    chain: bool = False


def request_id(req: AnalysisRequest) -> str:
    """Content hash identifying the analysis (not its output format)."""
    blob = json.dumps({
        "program": req.program,
        "types": req.types,
        "contextual": list(req.contextual),
        "engine": req.engine,
        "goal": req.goal,
        "maxStates": req.max_states,
        "chain": req.chain,
    }, sort_keys=True).encode("utf-8")
    return hashlib.sha256(blob).hexdigest()


def _validate(req: AnalysisRequest) -> None:
    if req.engine not in ENGINES:
        raise InputError(f"unknown engine {req.engine!r}; pick one of "
                         + ", ".join(ENGINES))
    bad = set(req.contextual) - set(CONTEXTUAL_KINDS)
    if bad:
        raise InputError("unknown contextual kinds: " + ", ".join(sorted(bad)))
    if len(req.program.encode("utf-8")) > MAX_PROGRAM_BYTES:
        raise InputError(f"program text exceeds {MAX_PROGRAM_BYTES} bytes")
    if len(req.types.encode("utf-8")) > MAX_TYPES_BYTES:
        raise InputError(f"type text exceeds {MAX_TYPES_BYTES} bytes")
    if req.engine == "dm" and req.chain:
        raise InputError("chaining starts from an inference engine (wt or rta)")
    if req.engine != "dm" and req.goal is not None and not req.chain:
        raise InputError("a goal only affects model computation; "
                         "combine it with --chain or the dm engine")


def _model_phase(program: Program, fta: FTA, known_types: frozenset[str],
                 req: AnalysisRequest, engine: EngineInfo, budget: Budget,
                 inferred: str | None) -> AnalysisReport:
    dfta = determinize(fta, max_states=resolve_max_states(req.max_states),
                       budget=budget)
    pre = pre_interpretation(dfta)
    if req.goal is None:
        model = least_model(program, pre, budget=budget)
        tuples = clause_contributions(program, pre, model)
        dead = frozenset(c for c, rel in tuples.items() if not rel)
        return build_report(program, engine, pre.domain, tuples, dead,
                            None, frozenset(), inferred)
    name, types = parse_typed_goal(req.goal)
    result = analyze_goal(program, pre, TypedGoal(name, types), known_types,
                          budget=budget)
    dc = dead_code(result)
    return build_report(program, engine, pre.domain, result.clause_answers,
                        dc.dead, result.call_patterns, dc.sliceable, inferred)


def run_analysis(req: AnalysisRequest) -> AnalysisReport:
    _validate(req)
    budget = Budget(DEFAULT_BUDGET_SECONDS)
    program = parse_program(req.program)
    kinds = tuple(dict.fromkeys(req.contextual))
    sig = signature_of(program)

    if req.engine == "dm":
        user = parse_type_defs(req.types, sig, predeclared=kinds)
        fta = user.union(contextual_transitions(user.signature, kinds))
        source = "user" if req.types.strip() else "contextual"
        engine = EngineInfo("dm", req.goal, kinds, source, None)
        return _model_phase(program, fta, fta.states, req, engine, budget, None)

    if req.engine == "wt":
        inferred = infer_welltyping(program)
        text = format_welltyping(inferred)
    else:
        inferred = infer_rta(program, budget=budget)
        text = format_regular_approx(inferred)

    if not req.chain:
        engine = EngineInfo(req.engine, None, kinds, "inferred", None)
        return build_report(program, engine, inferred_types=text)

    converted = to_regular_types(inferred, sig)
    fta = converted
    if req.types.strip():
        fta = fta.union(parse_type_defs(req.types, fta.signature,
                                        predeclared=kinds))
    fta = fta.union(contextual_transitions(fta.signature, kinds))
    engine = EngineInfo("dm", req.goal, kinds, "chained", req.engine)
    return _model_phase(program, fta, fta.states, req, engine, budget, text)
