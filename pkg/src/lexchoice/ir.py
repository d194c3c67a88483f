"""Interlingual representation: one situation plus possibilities, attitudes
and style preferences, with its text format.

Text format::

    { situation
      [provide1 instance-of MakingAvailable
        AGENT #1=[accion-international instance-of NonProfitOrganization]]
      possibility (frequency sometimes type suggestion
        concept [foresight1 instance-of Foreseeing AGENT #1]) % from `provides'
      attitude (type neutral of #1)
      style (formality (level high))
    }

``#n=`` labels an instance where it is written, ``#n`` refers to it. Labels
are only a notation: parsed references hold instance ids and the serializer
renumbers labels in traversal order.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Dict, List, Optional, Tuple

from .errors import (DanglingReferenceError, DuplicateIdError, Report, ValidationError,
                     Violation)
from .graph import (Atom, ConceptInstance, InstanceGraph, Ref, check_duplicate_ids,
                    check_instances, walk)
from .scales import (ATTITUDES, DEFAULT_FREQUENCY, DEFAULT_STRENGTH, FREQUENCIES, LEVELS,
                     NUANCE_TYPES, STRENGTHS)
from .syntax import INSTANCE_OF, InstanceParser, Token, TokenStream, describe_token

@dataclass(frozen=True, kw_only=True)
class Possibility:
    frequency: str = DEFAULT_FREQUENCY
    strength: str = DEFAULT_STRENGTH
    ptype: str
    concept: ConceptInstance
    source: Optional[str] = None


@dataclass(frozen=True)
class AttitudeExpr:
    value: str
    of: str


@dataclass(frozen=True)
class StylePref:
    dimension: str
    level: str


@dataclass(frozen=True)
class IR:
    situation: InstanceGraph
    possibilities: Tuple[Possibility, ...] = ()
    attitudes: Tuple[AttitudeExpr, ...] = ()
    styles: Tuple[StylePref, ...] = ()

    def all_roots(self) -> Tuple[ConceptInstance, ...]:
        return self.situation.roots + tuple(p.concept for p in self.possibilities)

    @cached_property
    def index(self) -> Dict[str, ConceptInstance]:
        """Situation and possibility instances share one id namespace."""
        idx: Dict[str, ConceptInstance] = {}
        for inst in walk(self.all_roots()):
            idx.setdefault(inst.id, inst)
        return idx

    def style_level(self, dimension: str) -> Optional[str]:
        for s in self.styles:
            if s.dimension == dimension:
                return s.level
        return None


# -- parsing -------------------------------------------------------------------

class _IRParser:
    def __init__(self, text: str):
        self.ts = TokenStream(text)
        self.labels: Dict[str, str] = {}
        self.seen_ids: Dict[str, Tuple[int, int]] = {}
        self._prescan_labels()
        self.instances = InstanceParser(self.ts, self._ref, self._def, self._instance)

    def _prescan_labels(self) -> None:
        toks = self.ts.tokens
        for i, tok in enumerate(toks):
            if tok.kind != "def":
                continue
            if i + 2 < len(toks) and toks[i + 1].value == "[" and toks[i + 2].kind == "word":
                label = tok.value[1:-1]
                if label in self.labels:
                    raise DuplicateIdError([Violation(
                        "duplicate-label", f"label #{label} defined twice", tok.line, tok.column)])
                self.labels[label] = toks[i + 2].value

    def _ref(self, tok: Token) -> str:
        label = tok.value[1:]
        if label not in self.labels:
            raise DanglingReferenceError([Violation(
                "dangling-reference", f"#{label} is never defined", tok.line, tok.column)])
        return self.labels[label]

    def _def(self, tok: Token, inst: ConceptInstance) -> None:
        pass

    def _instance(self, tok: Token, inst: ConceptInstance) -> None:
        if inst.id in self.seen_ids:
            first = self.seen_ids[inst.id]
            raise DuplicateIdError([Violation(
                "duplicate-id",
                f"instance id {inst.id!r} already defined at line {first[0]}, column {first[1]}",
                tok.line, tok.column)])
        self.seen_ids[inst.id] = tok.pos

    def parse(self) -> IR:
        ts = self.ts
        ts.expect("punct", "{")
        ts.expect("word", "situation")
        roots = [self.instances.instance()]
        while ts.at("punct", "[") or ts.at("def"):
            roots.append(self.instances.instance())
        possibilities, attitudes, styles = [], [], []
        style_dims: Dict[str, Token] = {}
        while not ts.at("punct", "}"):
            tok = ts.peek()
            if tok.kind != "word":
                raise ts.error(f"expected a component or '}}', found {describe_token(tok)}", tok)
            if tok.value == "possibility":
                ts.next()
                possibilities.append(self._possibility())
            elif tok.value == "attitude":
                ts.next()
                attitudes.append(self._attitude())
            elif tok.value == "style":
                ts.next()
                pref, dim_tok = self._style()
                if pref.dimension in style_dims:
                    raise ValidationError([Violation(
                        "duplicate-style", f"style dimension {pref.dimension!r} given twice",
                        dim_tok.line, dim_tok.column)])
                style_dims[pref.dimension] = dim_tok
                styles.append(pref)
            elif tok.value == "situation":
                raise ts.error("an IR has exactly one situation", tok)
            else:
                raise ts.error(f"unknown keyword {tok.value!r}", tok)
        ts.expect("punct", "}")
        ts.expect("eof", what="end of input")
        return IR(InstanceGraph(tuple(roots)), tuple(possibilities), tuple(attitudes), tuple(styles))

    def _possibility(self) -> Possibility:
        ts = self.ts
        ts.expect("punct", "(")
        fields: Dict[str, str] = {}
        concept = None
        choices = {"frequency": FREQUENCIES, "strength": STRENGTHS, "type": NUANCE_TYPES}
        while not ts.at("punct", ")"):
            tok = ts.expect("word", what="'frequency', 'strength', 'type' or 'concept'")
            if tok.value in choices:
                if tok.value in fields:
                    raise ts.error(f"{tok.value!r} given twice", tok)
                fields[tok.value] = ts.expect_one_of(choices[tok.value], tok.value).value
            elif tok.value == "concept":
                if concept is not None:
                    raise ts.error("'concept' given twice", tok)
                concept = self.instances.instance(1)
            else:
                raise ts.error(f"unknown keyword {tok.value!r} in possibility", tok)
        close = ts.expect("punct", ")")
        if "type" not in fields:
            raise ts.error("possibility needs a 'type'", close)
        if concept is None:
            raise ts.error("possibility needs a 'concept'", close)
        source = ts.take_comment() or None
        return Possibility(
            frequency=fields.get("frequency", DEFAULT_FREQUENCY),
            strength=fields.get("strength", DEFAULT_STRENGTH),
            ptype=fields["type"], concept=concept, source=source)

    def _attitude(self) -> AttitudeExpr:
        ts = self.ts
        ts.expect("punct", "(")
        ts.expect("word", "type")
        value = ts.expect_one_of(ATTITUDES, "attitude").value
        ts.expect("word", "of")
        ref = ts.expect("ref", what="a reference '#n'")
        target = self._ref(ref)
        ts.expect("punct", ")")
        return AttitudeExpr(value, target)

    def _style(self):
        ts = self.ts
        ts.expect("punct", "(")
        dim = ts.expect("word", what="style dimension")
        if dim.value in ("level", INSTANCE_OF):
            raise ts.error(f"expected style dimension, found {dim.value!r}", dim)
        ts.expect("punct", "(")
        ts.expect("word", "level")
        level = ts.expect_one_of(LEVELS, "level").value
        ts.expect("punct", ")")
        ts.expect("punct", ")")
        return StylePref(dim.value, level), dim


def parse_ir(text: str) -> IR:
    """Parse IR text. Raises ParseError on syntax problems and a positioned
    ValidationError subclass on dangling references or duplicate ids."""
    return _IRParser(text).parse()


# -- serialization -------------------------------------------------------------

class _Writer:
    def __init__(self, ir: IR):
        self.ir = ir
        referenced = {r.id for r in _all_refs(ir)}
        self.labels: Dict[str, int] = {}
        for inst in walk(ir.all_roots()):
            if inst.id in referenced and inst.id not in self.labels:
                self.labels[inst.id] = len(self.labels) + 1
        missing = referenced - set(self.labels)
        if missing:
            raise ValueError(f"cannot serialize dangling references: {sorted(missing)}")

    def instance(self, inst: ConceptInstance, indent: int) -> List[str]:
        label = self.labels.get(inst.id)
        head = (f"#{label}=" if label else "") + f"[{inst.id} {INSTANCE_OF} {inst.concept}"
        if not inst.slots:
            return [head + "]"]
        lines = [head]
        pad = " " * (indent + 2)
        for rel, values in inst.slots:
            rendered = [self.value(v, indent + 2) for v in values]
            if all(len(r) == 1 for r in rendered):
                lines.append(pad + rel + " " + " ".join(r[0] for r in rendered))
            else:
                # repeated relation names merge back into one slot on parse
                for r in rendered:
                    lines.append(pad + rel + " " + r[0])
                    lines.extend(r[1:])
        lines[-1] += "]"
        return lines

    def value(self, v, indent: int) -> List[str]:
        if isinstance(v, Atom):
            return [f"[{v.value}]"]
        if isinstance(v, Ref):
            return [f"#{self.labels[v.id]}"]
        return self.instance(v, indent)

    def render(self) -> str:
        out = ["{ situation"]
        for root in self.ir.situation.roots:
            body = self.instance(root, 2)
            out.append("  " + body[0])
            out.extend(body[1:])
        for p in self.ir.possibilities:
            body = self.instance(p.concept, 4)
            out.append(f"  possibility (frequency {p.frequency} strength {p.strength} type {p.ptype}")
            out.append("    concept " + body[0])
            out.extend(body[1:])
            out[-1] += ")"
            if p.source:
                out[-1] += " % " + p.source
        for a in self.ir.attitudes:
            out.append(f"  attitude (type {a.value} of #{self.labels[a.of]})")
        for s in self.ir.styles:
            out.append(f"  style ({s.dimension} (level {s.level}))")
        out.append("}")
        return "\n".join(out) + "\n"


def _all_refs(ir: IR):
    for inst in walk(ir.all_roots()):
        for _, values in inst.slots:
            for v in values:
                if isinstance(v, Ref):
                    yield v
    for a in ir.attitudes:
        yield Ref(a.of)


def serialize_ir(ir: IR) -> str:
    """Canonical text. Every component keeps its order; defaults are written out."""
    return _Writer(ir).render()


# -- validation ----------------------------------------------------------------

def validate_ir(ir: IR, ontology) -> Report:
    report = Report()
    roots = ir.all_roots()
    ids = {inst.id for inst in walk(roots)}
    check_duplicate_ids(roots, report)
    check_instances(ontology, roots, ids, report)
    for i, p in enumerate(ir.possibilities, start=1):
        for name, value, allowed in (("frequency", p.frequency, FREQUENCIES),
                                     ("strength", p.strength, STRENGTHS),
                                     ("type", p.ptype, NUANCE_TYPES)):
            if value not in allowed:
                report.add("bad-value", f"possibility {i}: {name} {value!r} not one of {allowed}")
    for a in ir.attitudes:
        if a.value not in ATTITUDES:
            report.add("bad-value", f"attitude value {a.value!r} not one of {ATTITUDES}")
        if a.of not in ids:
            report.add("dangling-reference", f"attitude refers to missing instance {a.of!r}")
    dims = set()
    for s in ir.styles:
        if s.level not in LEVELS:
            report.add("bad-value", f"style level {s.level!r} not one of {LEVELS}")
        if s.dimension in dims:
            report.add("duplicate-style", f"style dimension {s.dimension!r} given twice")
        dims.add(s.dimension)
    return report
