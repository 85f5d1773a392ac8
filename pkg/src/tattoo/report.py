"""Analysis reports: an annotated program plus a domain key.

The report never repeats the domain elements at each annotation.
Instead a key lists them once, ordered and numbered from 1, and every
tuple is written as key indices.  Domain elements display without the
ubiquitous dynamic member, so the all-terms element shows as the empty
list.

Spans are byte offsets into the UTF-8 encoding of the analysed source,
which is what editors and the web UI slice by.

Two output shapes, JSON and XML, carry identical information and both
read back losslessly.  Emission is byte-deterministic: equal reports
serialise to equal bytes.
"""
from __future__ import annotations

import json
import xml.etree.ElementTree as ET
from dataclasses import dataclass

from .errors import InputError
from .fta import DYNAMIC, DState
from .syntax import Program

Tuples = tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class EngineInfo:
    name: str
    goal: str | None = None
    contextual: tuple[str, ...] = ()
    types_source: str = "user"
    chained_from: str | None = None


@dataclass(frozen=True)
class KeyEntry:
    index: int
    types: tuple[str, ...]


@dataclass(frozen=True)
class HeadAnnotation:
    tuples: Tuples
    dead: bool


@dataclass(frozen=True)
class BodyAnnotation:
    span: tuple[int, int]
    call_tuples: Tuples | None
    sliceable: bool


@dataclass(frozen=True)
class ClauseAnnotation:
    span: tuple[int, int]
    head: HeadAnnotation | None
    body: tuple[BodyAnnotation, ...]


@dataclass(frozen=True)
class AnalysisReport:
    engine: EngineInfo
    domain_key: tuple[KeyEntry, ...]
    clauses: tuple[ClauseAnnotation, ...]
    inferred_types: str | None = None


def _byte_offsets(text: str) -> list[int]:
    offs = [0] * (len(text) + 1)
    total = 0
    for k, ch in enumerate(text):
        offs[k] = total
        total += len(ch.encode("utf-8"))
    offs[len(text)] = total
    return offs


def display_types(d: DState) -> tuple[str, ...]:
    return tuple(n for n in d if n != DYNAMIC)


def build_report(program: Program, engine: EngineInfo,
                 domain: tuple[DState, ...] = (),
                 clause_tuples: dict[int, frozenset] | None = None,
                 dead: frozenset[int] = frozenset(),
                 call_patterns: dict[tuple[int, int], frozenset] | None = None,
                 sliceable: frozenset[tuple[int, int]] = frozenset(),
                 inferred_types: str | None = None) -> AnalysisReport:
    ordered = tuple(sorted(domain))
    index = {d: i + 1 for i, d in enumerate(ordered)}
    key = tuple(KeyEntry(i + 1, display_types(d)) for i, d in enumerate(ordered))

    def encode(rel) -> Tuples:
        return tuple(sorted(tuple(index[d] for d in tup) for tup in rel))

    offs = _byte_offsets(program.text)

    def bspan(span: tuple[int, int]) -> tuple[int, int]:
        return (offs[span[0]], offs[span[1]])

    clauses = []
    for c, clause in enumerate(program.clauses):
        head = None
        if clause_tuples is not None:
            head = HeadAnnotation(encode(clause_tuples.get(c, frozenset())),
                                  c in dead)
        body = tuple(
            BodyAnnotation(bspan(clause.body_spans[i]),
                           None if call_patterns is None
                           else encode(call_patterns.get((c, i), frozenset())),
                           (c, i) in sliceable)
            for i in range(len(clause.body)))
        clauses.append(ClauseAnnotation(bspan(clause.span), head, body))
    return AnalysisReport(engine, key, tuple(clauses), inferred_types)


# --------------------------------------------------------------- json


def _to_doc(report: AnalysisReport) -> dict:
    eng = report.engine
    return {
        "engine": {
            "name": eng.name,
            "goal": eng.goal,
            "contextual": list(eng.contextual),
            "typesSource": eng.types_source,
            "chainedFrom": eng.chained_from,
        },
        "domainKey": [{"index": e.index, "types": list(e.types)}
                      for e in report.domain_key],
        "clauses": [{
            "span": list(cl.span),
            "headAnnotation": None if cl.head is None else {
                "tuples": [list(t) for t in cl.head.tuples],
                "dead": cl.head.dead,
            },
            "body": [{
                "span": list(b.span),
                "callTuples": None if b.call_tuples is None
                else [list(t) for t in b.call_tuples],
                "sliceable": b.sliceable,
            } for b in cl.body],
        } for cl in report.clauses],
        "inferredTypes": report.inferred_types,
    }


def _from_doc(doc: dict) -> AnalysisReport:
    try:
        eng = doc["engine"]
        engine = EngineInfo(eng["name"], eng.get("goal"),
                            tuple(eng.get("contextual") or ()),
                            eng.get("typesSource", "user"),
                            eng.get("chainedFrom"))
        key = tuple(KeyEntry(e["index"], tuple(e["types"]))
                    for e in doc["domainKey"])
        clauses = []
        for cl in doc["clauses"]:
            ha = cl.get("headAnnotation")
            head = None if ha is None else HeadAnnotation(
                tuple(tuple(t) for t in ha["tuples"]), bool(ha["dead"]))
            body = tuple(BodyAnnotation(
                (b["span"][0], b["span"][1]),
                None if b.get("callTuples") is None
                else tuple(tuple(t) for t in b["callTuples"]),
                bool(b["sliceable"])) for b in cl["body"])
            clauses.append(ClauseAnnotation((cl["span"][0], cl["span"][1]),
                                            head, body))
        return AnalysisReport(engine, key, tuple(clauses),
                              doc.get("inferredTypes"))
    except (KeyError, TypeError, IndexError) as exc:
        raise InputError(f"malformed report: {exc}") from exc


# ---------------------------------------------------------------- xml


def _to_xml(report: AnalysisReport) -> ET.Element:
    root = ET.Element("report")
    eng = ET.SubElement(root, "engine", name=report.engine.name,
                        typesSource=report.engine.types_source)
    if report.engine.goal is not None:
        eng.set("goal", report.engine.goal)
    if report.engine.chained_from is not None:
        eng.set("chainedFrom", report.engine.chained_from)
    for kind in report.engine.contextual:
        ET.SubElement(eng, "contextual").text = kind
    key = ET.SubElement(root, "domainKey")
    for e in report.domain_key:
        entry = ET.SubElement(key, "entry", index=str(e.index))
        for t in e.types:
            ET.SubElement(entry, "type").text = t
    clauses = ET.SubElement(root, "clauses")
    for cl in report.clauses:
        celem = ET.SubElement(clauses, "clause", start=str(cl.span[0]),
                              end=str(cl.span[1]))
        if cl.head is not None:
            helem = ET.SubElement(celem, "head",
                                  dead="true" if cl.head.dead else "false")
            for t in cl.head.tuples:
                ET.SubElement(helem, "tuple").text = " ".join(map(str, t))
        for b in cl.body:
            lelem = ET.SubElement(celem, "literal", start=str(b.span[0]),
                                  end=str(b.span[1]),
                                  sliceable="true" if b.sliceable else "false")
            if b.call_tuples is not None:
                calls = ET.SubElement(lelem, "calls")
                for t in b.call_tuples:
                    ET.SubElement(calls, "tuple").text = " ".join(map(str, t))
    if report.inferred_types is not None:
        ET.SubElement(root, "inferredTypes").text = report.inferred_types
    return root


def _tuple_text(elem: ET.Element) -> tuple[int, ...]:
    return tuple(int(x) for x in (elem.text or "").split())


def _from_xml(root: ET.Element) -> AnalysisReport:
    if root.tag != "report":
        raise InputError(f"malformed report: unexpected root {root.tag!r}")
    try:
        eng = root.find("engine")
        engine = EngineInfo(eng.get("name"), eng.get("goal"),
                            tuple(e.text or "" for e in eng.findall("contextual")),
                            eng.get("typesSource", "user"),
                            eng.get("chainedFrom"))
        key = tuple(KeyEntry(int(e.get("index")),
                             tuple(t.text or "" for t in e.findall("type")))
                    for e in root.find("domainKey").findall("entry"))
        clauses = []
        for celem in root.find("clauses").findall("clause"):
            helem = celem.find("head")
            head = None if helem is None else HeadAnnotation(
                tuple(_tuple_text(t) for t in helem.findall("tuple")),
                helem.get("dead") == "true")
            body = []
            for lelem in celem.findall("literal"):
                calls = lelem.find("calls")
                body.append(BodyAnnotation(
                    (int(lelem.get("start")), int(lelem.get("end"))),
                    None if calls is None
                    else tuple(_tuple_text(t) for t in calls.findall("tuple")),
                    lelem.get("sliceable") == "true"))
            clauses.append(ClauseAnnotation(
                (int(celem.get("start")), int(celem.get("end"))),
                head, tuple(body)))
        inferred = root.find("inferredTypes")
        return AnalysisReport(engine, key, tuple(clauses),
                              None if inferred is None else inferred.text or "")
    except (AttributeError, TypeError, ValueError) as exc:
        raise InputError(f"malformed report: {exc}") from exc


# --------------------------------------------------------------- emit


FORMATS = ("json", "xml")


def emit(report: AnalysisReport, fmt: str = "json") -> bytes:
    if fmt == "json":
        return (json.dumps(_to_doc(report), indent=2) + "\n").encode("utf-8")
    if fmt == "xml":
        root = _to_xml(report)
        ET.indent(root, space="  ")
        return ET.tostring(root, encoding="utf-8", xml_declaration=True) + b"\n"
    raise InputError(f"unknown report format {fmt!r}")


def read_report(data: bytes) -> AnalysisReport:
    text = data.decode("utf-8").strip()
    if not text:
        raise InputError("empty report")
    if text.startswith("<"):
        try:
            return _from_xml(ET.fromstring(text))
        except ET.ParseError as exc:
            raise InputError(f"malformed report: {exc}") from exc
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"malformed report: {exc}") from exc
    if not isinstance(doc, dict):
        raise InputError("malformed report: not an object")
    return _from_doc(doc)
