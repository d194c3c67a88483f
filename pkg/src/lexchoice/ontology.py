"""Concept taxonomy and relation vocabulary.

Ontology source is line oriented::

    # comment
    concept Thing
    concept Event isa Thing
    concept Helping isa Event, Activity
    relation AGENT domain Event range Thing
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import cached_property
from typing import Dict, FrozenSet, Mapping, Optional, Tuple

from .errors import ParseError, Report, UnknownConceptError, ValidationError
from .graph import (  # noqa: F401  (re-exported: the ontology module owns these)
    Atom, Bindings, ConceptInstance, InstanceGraph, Ref, Template, TNode, Var,
    iter_unifiers, unify, validate_graph,
)

CONCEPT_NAME = re.compile(r"[A-Z][A-Za-z0-9\-]*\Z")
RELATION_NAME = re.compile(r"[A-Z][A-Z0-9\-]*\Z")
_LINE_TOKEN = re.compile(r",|[^\s,]+")


@dataclass(frozen=True)
class Relation:
    name: str
    domain: Optional[str] = None
    range: Optional[str] = None


@dataclass(frozen=True)
class Ontology:
    concepts: Tuple[str, ...]
    parents: Mapping[str, Tuple[str, ...]] = field(default_factory=dict)
    relations: Mapping[str, Relation] = field(default_factory=dict)
    positions: Mapping[Tuple[str, str], Tuple[int, int]] = field(
        default_factory=dict, compare=False, repr=False)

    @cached_property
    def _concept_set(self) -> FrozenSet[str]:
        return frozenset(self.concepts)

    @cached_property
    def _ancestors(self) -> Dict[str, FrozenSet[str]]:
        # breadth-first per concept; tolerates cycles in unvalidated input
        result: Dict[str, FrozenSet[str]] = {}
        for c in self.concepts:
            seen = {c}
            frontier = [c]
            while frontier:
                nxt = []
                for x in frontier:
                    for p in self.parents.get(x, ()):
                        if p not in seen:
                            seen.add(p)
                            nxt.append(p)
                frontier = nxt
            result[c] = frozenset(seen)
        return result

    def has_concept(self, name: str) -> bool:
        return name in self._concept_set

    def has_relation(self, name: str) -> bool:
        return name in self.relations

    def ancestors(self, concept: str) -> FrozenSet[str]:
        """The concept itself plus every transitive isa-parent."""
        if concept not in self._concept_set:
            raise UnknownConceptError(concept)
        return self._ancestors[concept]

    def is_a(self, specific: str, general: str) -> bool:
        """Lenient subsumption: undeclared names only match themselves."""
        if specific == general:
            return True
        anc = self._ancestors.get(specific)
        return anc is not None and general in anc

    def subsumes(self, general: str, specific: str) -> bool:
        if general not in self._concept_set:
            raise UnknownConceptError(general)
        return general in self.ancestors(specific)

    def roots(self) -> Tuple[str, ...]:
        return tuple(c for c in self.concepts if not self.parents.get(c))

    def without_concept(self, name: str) -> "Ontology":
        """Copy with ``name`` removed from declarations (parents left as written)."""
        return Ontology(
            tuple(c for c in self.concepts if c != name),
            {c: ps for c, ps in self.parents.items() if c != name},
            dict(self.relations),
        )


def subsumes(ontology: Ontology, general: str, specific: str) -> bool:
    return ontology.subsumes(general, specific)


def parse_ontology(text: str) -> Ontology:
    """Syntax-level parse; cycles and undeclared names are left to validation."""
    concepts = []
    parents: Dict[str, Tuple[str, ...]] = {}
    relations: Dict[str, Relation] = {}
    positions: Dict[Tuple[str, str], Tuple[int, int]] = {}

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        toks = [(m.group(), m.start() + 1) for m in _LINE_TOKEN.finditer(line)]
        if not toks:
            continue

        def err(msg, col):
            return ParseError(msg, lineno, col)

        keyword, col = toks[0]
        if keyword == "concept":
            if len(toks) < 2:
                raise err("concept declaration needs a name", col + len(keyword))
            name, ncol = toks[1]
            if not CONCEPT_NAME.match(name):
                raise err(f"concept names must be capitalized identifiers, got {name!r}", ncol)
            if name in parents:
                raise err(f"concept {name!r} declared twice", ncol)
            ps = []
            rest = toks[2:]
            if rest:
                if rest[0][0] != "isa":
                    raise err(f"expected 'isa', found {rest[0][0]!r}", rest[0][1])
                items = rest[1:]
                if not items:
                    raise err("'isa' needs at least one parent", rest[0][1])
                expect_name = True
                for tok, tcol in items:
                    if expect_name:
                        if not CONCEPT_NAME.match(tok):
                            raise err(f"expected parent concept name, found {tok!r}", tcol)
                        if tok in ps:
                            raise err(f"parent {tok!r} listed twice", tcol)
                        ps.append(tok)
                        positions[("parent", name + ">" + tok)] = (lineno, tcol)
                    elif tok != ",":
                        raise err(f"expected ',', found {tok!r}", tcol)
                    expect_name = not expect_name
                if expect_name:
                    raise err("trailing ',' in parent list", items[-1][1])
            concepts.append(name)
            parents[name] = tuple(ps)
            positions[("concept", name)] = (lineno, ncol)
        elif keyword == "relation":
            if len(toks) < 2:
                raise err("relation declaration needs a name", col + len(keyword))
            name, ncol = toks[1]
            if not RELATION_NAME.match(name):
                raise err(f"relation names must be uppercase, got {name!r}", ncol)
            if name in relations:
                raise err(f"relation {name!r} declared twice", ncol)
            constraints: Dict[str, str] = {}
            rest = toks[2:]
            while rest:
                key, kcol = rest[0]
                if key not in ("domain", "range"):
                    raise err(f"expected 'domain' or 'range', found {key!r}", kcol)
                if key in constraints:
                    raise err(f"{key!r} given twice", kcol)
                if len(rest) < 2 or not CONCEPT_NAME.match(rest[1][0]):
                    raise err(f"{key!r} needs a concept name", kcol)
                constraints[key] = rest[1][0]
                positions[(key, name)] = (lineno, rest[1][1])
                rest = rest[2:]
            relations[name] = Relation(name, constraints.get("domain"), constraints.get("range"))
            positions[("relation", name)] = (lineno, ncol)
        else:
            raise err(f"unknown keyword {keyword!r}", col)

    return Ontology(tuple(concepts), parents, relations, positions)


def validate_ontology(ontology: Ontology) -> Report:
    report = Report()
    declared = set(ontology.concepts)
    pos = ontology.positions
    for c in ontology.concepts:
        for p in ontology.parents.get(c, ()):
            if p not in declared:
                report.add("undeclared-parent", f"{c} isa undeclared concept {p}",
                           pos.get(("parent", c + ">" + p)))
    for r in ontology.relations.values():
        for key in ("domain", "range"):
            target = getattr(r, key)
            if target is not None and target not in declared:
                report.add("undeclared-" + key, f"relation {r.name} {key} names undeclared concept {target}",
                           pos.get((key, r.name)))
    for cycle in find_cycles(ontology):
        report.add("isa-cycle", "isa cycle: " + " -> ".join(cycle + [cycle[0]]),
                   pos.get(("concept", cycle[0])))
    return report


def find_cycles(ontology: Ontology):
    """One representative cycle per strongly connected isa component."""
    WHITE, GREY, BLACK = 0, 1, 2
    color = {c: WHITE for c in ontology.concepts}
    cycles = []
    reported = set()

    def visit(c, path):
        color[c] = GREY
        path.append(c)
        for p in ontology.parents.get(c, ()):
            if p not in color:
                continue
            if color[p] == GREY:
                cyc = path[path.index(p):]
                key = frozenset(cyc)
                if not key & reported:
                    cycles.append(list(cyc))
                    reported.update(key)
            elif color[p] == WHITE:
                visit(p, path)
        path.pop()
        color[c] = BLACK

    for c in ontology.concepts:
        if color[c] == WHITE:
            visit(c, [])
    return cycles


def load_ontology(text: str) -> Ontology:
    ontology = parse_ontology(text)
    report = validate_ontology(ontology)
    if not report.ok:
        raise ValidationError(report.violations)
    return ontology
