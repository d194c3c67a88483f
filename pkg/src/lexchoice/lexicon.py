"""Clustered lexical knowledge: near-synonyms grouped under a shared core
template, each entry differing by peripheral distinctions, style and attitude.

Lexicon source::

    cluster en:provide-c {
      language: en
      core: [instance-of MakingAvailable AGENT ?a OBJECT ?o RECIPIENT ?r]
      entry provide {
        distinction (frequency sometimes type suggestion
                     concept [instance-of Foreseeing AGENT ?a])
        style (formality neutral)
        collocates: assistance
      }
      entry "se charger" { attitude (neutral of ?a) }
    }

``%`` starts a comment that runs to the end of the line.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Dict, List, Optional, Tuple

from .errors import Report, ValidationError
from .graph import TNode, Var, iter_tnodes, template_vars
from .scales import (ATTITUDES, DEFAULT_FREQUENCY, DEFAULT_STRENGTH, FREQUENCIES, LEVELS,
                     NUANCE_TYPES, STRENGTHS)
from .syntax import INSTANCE_OF, TokenStream, describe_token, is_plain_word, parse_template

KEYWORDS = frozenset({
    "cluster", "language", "core", "entry", "distinction", "frequency", "strength", "type",
    "concept", "style", "attitude", "of", "collocates", INSTANCE_OF,
})

_Pos = Optional[Tuple[int, int]]


@dataclass(frozen=True, kw_only=True)
class Distinction:
    frequency: str = DEFAULT_FREQUENCY
    strength: str = DEFAULT_STRENGTH
    dtype: str
    concept: TNode
    pos: _Pos = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class StyleValue:
    dimension: str
    level: str


@dataclass(frozen=True)
class AttitudeSpec:
    value: str
    of: str  # core-template variable name, without the '?'


@dataclass(frozen=True, kw_only=True)
class Entry:
    lemma: str
    distinctions: Tuple[Distinction, ...] = ()
    style: Tuple[StyleValue, ...] = ()
    attitude: Optional[AttitudeSpec] = None
    collocates: Tuple[str, ...] = ()
    pos: _Pos = field(default=None, compare=False, repr=False)

    def style_level(self, dimension: str) -> str:
        for s in self.style:
            if s.dimension == dimension:
                return s.level
        return "neutral"

    def signature(self):
        """Everything that distinguishes an entry from its cluster-mates."""
        style = tuple(sorted((s.dimension, s.level) for s in self.style if s.level != "neutral"))
        return (self.distinctions, style, self.attitude)


@dataclass(frozen=True, kw_only=True)
class Cluster:
    id: str
    language: str
    core: TNode
    entries: Tuple[Entry, ...] = ()
    pos: _Pos = field(default=None, compare=False, repr=False)

    def entry(self, lemma: str) -> Optional[Entry]:
        for e in self.entries:
            if e.lemma == lemma:
                return e
        return None

    def core_vars(self) -> List[str]:
        return template_vars(self.core)


@dataclass(frozen=True)
class Lexicon:
    language: Optional[str]
    clusters: Tuple[Cluster, ...] = ()

    @cached_property
    def index(self) -> Dict[str, List[Tuple[Cluster, Entry]]]:
        idx: Dict[str, List[Tuple[Cluster, Entry]]] = {}
        for c in self.clusters:
            for e in c.entries:
                idx.setdefault(e.lemma, []).append((c, e))
        return idx

    def cluster(self, cluster_id: str) -> Optional[Cluster]:
        for c in self.clusters:
            if c.id == cluster_id:
                return c
        return None

    def entries(self):
        for c in self.clusters:
            for e in c.entries:
                yield c, e


def clusters_for_lemma(lexicon: Lexicon, lemma: str) -> List[Tuple[Cluster, Entry]]:
    return list(lexicon.index.get(lemma, ()))


# -- parsing -------------------------------------------------------------------

class _LexiconParser:
    def __init__(self, text: str):
        self.ts = TokenStream(text)

    def parse(self) -> Lexicon:
        ts = self.ts
        clusters = []
        while not ts.at("eof"):
            clusters.append(self._cluster())
        language = clusters[0].language if clusters else None
        return Lexicon(language, tuple(clusters))

    def _name(self, what: str) -> str:
        tok = self.ts.peek()
        if tok.kind == "string" and tok.value.strip():
            return self.ts.next().value
        if tok.kind == "word" and tok.value not in KEYWORDS:
            return self.ts.next().value
        raise self.ts.error(f"expected {what}, found {describe_token(tok)}", tok)

    def _cluster(self) -> Cluster:
        ts = self.ts
        start = ts.expect("word", "cluster")
        cid = self._name("cluster id")
        ts.expect("punct", "{")
        language = core = None
        entries = []
        while not ts.accept("punct", "}"):
            tok = ts.peek()
            if tok.kind == "word" and tok.value == "language":
                if language is not None:
                    raise ts.error("'language' given twice", tok)
                ts.next()
                ts.expect("punct", ":")
                language = self._name("language tag")
            elif tok.kind == "word" and tok.value == "core":
                if core is not None:
                    raise ts.error("'core' given twice", tok)
                ts.next()
                ts.expect("punct", ":")
                core = parse_template(ts)
            elif tok.kind == "word" and tok.value == "entry":
                entries.append(self._entry())
            else:
                raise ts.error(f"expected 'language', 'core', 'entry' or '}}', found {describe_token(tok)}", tok)
        if language is None:
            raise ts.error(f"cluster {cid!r} has no 'language'", start)
        if core is None:
            raise ts.error(f"cluster {cid!r} has no 'core'", start)
        return Cluster(id=cid, language=language, core=core, entries=tuple(entries), pos=start.pos)

    def _entry(self) -> Entry:
        ts = self.ts
        start = ts.expect("word", "entry")
        lemma = self._name("lemma")
        ts.expect("punct", "{")
        distinctions, style, collocates = [], [], []
        attitude = None
        while not ts.accept("punct", "}"):
            tok = ts.peek()
            if tok.kind != "word":
                raise ts.error(f"expected an entry item or '}}', found {describe_token(tok)}", tok)
            if tok.value == "distinction":
                ts.next()
                distinctions.append(self._distinction(tok))
            elif tok.value == "style":
                ts.next()
                ts.expect("punct", "(")
                while True:
                    dim = ts.peek()
                    if dim.kind != "word" or dim.value in KEYWORDS:
                        raise ts.error(f"expected style dimension, found {describe_token(dim)}", dim)
                    ts.next()
                    level = ts.expect_one_of(LEVELS, "level").value
                    style.append(StyleValue(dim.value, level))
                    if ts.accept("punct", ")"):
                        break
            elif tok.value == "attitude":
                if attitude is not None:
                    raise ts.error("'attitude' given twice", tok)
                ts.next()
                ts.expect("punct", "(")
                value = ts.expect_one_of(ATTITUDES, "attitude").value
                ts.expect("word", "of")
                var = ts.expect("var", what="a variable '?name'")
                ts.expect("punct", ")")
                attitude = AttitudeSpec(value, var.value[1:])
            elif tok.value == "collocates":
                ts.next()
                ts.expect("punct", ":")
                collocates.append(self._name("collocate lemma"))
                while ts.accept("punct", ","):
                    collocates.append(self._name("collocate lemma"))
            else:
                raise ts.error(f"unknown keyword {tok.value!r} in entry", tok)
        return Entry(lemma=lemma, distinctions=tuple(distinctions), style=tuple(style),
                     attitude=attitude, collocates=tuple(collocates), pos=start.pos)

    def _distinction(self, start) -> Distinction:
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
                concept = parse_template(ts, 1)
            else:
                raise ts.error(f"unknown keyword {tok.value!r} in distinction", tok)
        close = ts.expect("punct", ")")
        if "type" not in fields:
            raise ts.error("distinction needs a 'type'", close)
        if concept is None:
            raise ts.error("distinction needs a 'concept'", close)
        return Distinction(frequency=fields.get("frequency", DEFAULT_FREQUENCY),
                           strength=fields.get("strength", DEFAULT_STRENGTH),
                           dtype=fields["type"], concept=concept, pos=start.pos)


def parse_lexicon(text: str) -> Lexicon:
    """Syntax-level parse; ontology checks and invariants are left to validation."""
    return _LexiconParser(text).parse()


def load_lexicon(text: str, ontology) -> Lexicon:
    lexicon = parse_lexicon(text)
    report = validate_lexicon(lexicon, ontology)
    if not report.ok:
        raise ValidationError(report.violations)
    return lexicon


# -- validation ----------------------------------------------------------------

def _check_template(template: TNode, ontology, where: str, report: Report) -> None:
    for node in iter_tnodes(template):
        if ontology is not None and not ontology.has_concept(node.concept):
            report.add("unknown-concept", f"{where}: undeclared concept {node.concept!r}", node.pos)
        for rel, _ in node.slots:
            if ontology is not None and not ontology.has_relation(rel):
                report.add("unknown-relation", f"{where}: undeclared relation {rel!r}", node.pos)


def validate_lexicon(lexicon: Lexicon, ontology) -> Report:
    report = Report()
    seen_clusters = set()
    for c in lexicon.clusters:
        where = f"cluster {c.id}"
        if c.id in seen_clusters:
            report.add("duplicate-cluster", f"cluster id {c.id!r} used twice", c.pos)
        seen_clusters.add(c.id)
        if lexicon.language is not None and c.language != lexicon.language:
            report.add("language-mismatch",
                       f"{where} has language {c.language!r}, lexicon is {lexicon.language!r}", c.pos)
        if not c.entries:
            report.add("empty-cluster", f"{where} has no entries", c.pos)
        _check_template(c.core, ontology, where + " core", report)
        core_vars = set(c.core_vars())
        lemmas = set()
        for e in c.entries:
            ewhere = f"{where} entry {e.lemma!r}"
            if not e.lemma.strip():
                report.add("empty-lemma", f"{where} has an entry with an empty lemma", e.pos)
            if e.lemma in lemmas:
                report.add("duplicate-lemma", f"{where} lists {e.lemma!r} twice", e.pos)
            lemmas.add(e.lemma)
            for d in e.distinctions:
                _check_distinction(d, core_vars, ontology, ewhere, report)
            dims = set()
            for s in e.style:
                if s.level not in LEVELS:
                    report.add("bad-value", f"{ewhere}: style level {s.level!r}", e.pos)
                if s.dimension in dims:
                    report.add("duplicate-style", f"{ewhere}: style dimension {s.dimension!r} twice", e.pos)
                dims.add(s.dimension)
            if e.attitude is not None:
                if e.attitude.value not in ATTITUDES:
                    report.add("bad-value", f"{ewhere}: attitude {e.attitude.value!r}", e.pos)
                if e.attitude.of not in core_vars:
                    report.add("unknown-variable",
                               f"{ewhere}: attitude targets ?{e.attitude.of}, absent from the core", e.pos)
        _warn_indistinguishable(c, report)
    return report


def _check_distinction(d: Distinction, core_vars, ontology, where: str, report: Report) -> None:
    for name, value, allowed in (("frequency", d.frequency, FREQUENCIES),
                                 ("strength", d.strength, STRENGTHS),
                                 ("type", d.dtype, NUANCE_TYPES)):
        if value not in allowed:
            report.add("bad-value", f"{where}: distinction {name} {value!r}", d.pos)
    _check_template(d.concept, ontology, where + " distinction", report)
    for node in iter_tnodes(d.concept):
        if node.var is not None:
            report.add("bound-node",
                       f"{where}: distinction nodes cannot carry ?{node.var}; "
                       "use the variable as a filler instead", node.pos)
    for var in template_vars(d.concept):
        if var not in core_vars:
            report.add("unknown-variable", f"{where}: distinction uses ?{var}, absent from the core",
                       d.pos)


def _warn_indistinguishable(cluster: Cluster, report: Report) -> None:
    entries = cluster.entries
    for i, a in enumerate(entries):
        for b in entries[i + 1:]:
            if a.lemma != b.lemma and a.signature() == b.signature():
                report.warnings.append(
                    f"cluster {cluster.id}: {a.lemma!r} and {b.lemma!r} are indistinguishable")


# -- serialization -------------------------------------------------------------

def _quote(name: str) -> str:
    if is_plain_word(name) and name not in KEYWORDS:
        return name
    return f'"{name}"'


def format_template(value) -> str:
    if isinstance(value, Var):
        return str(value)
    if isinstance(value, TNode):
        head = "[" + (f"?{value.var} " if value.var else "") + f"{INSTANCE_OF} {value.concept}"
        for rel, values in value.slots:
            head += f" {rel} " + " ".join(format_template(v) for v in values)
        return head + "]"
    return f"[{value.value}]"


def serialize_lexicon(lexicon: Lexicon) -> str:
    out = []
    for c in lexicon.clusters:
        out.append(f"cluster {_quote(c.id)} {{")
        out.append(f"  language: {_quote(c.language)}")
        out.append(f"  core: {format_template(c.core)}")
        for e in c.entries:
            out.append(f"  entry {_quote(e.lemma)} {{")
            for d in e.distinctions:
                out.append(f"    distinction (frequency {d.frequency} strength {d.strength} "
                           f"type {d.dtype}")
                out.append(f"      concept {format_template(d.concept)})")
            for s in e.style:
                out.append(f"    style ({s.dimension} {s.level})")
            if e.attitude is not None:
                out.append(f"    attitude ({e.attitude.value} of ?{e.attitude.of})")
            if e.collocates:
                out.append("    collocates: " + ", ".join(_quote(x) for x in e.collocates))
            out.append("  }")
        out.append("}")
    return "\n".join(out) + "\n"
