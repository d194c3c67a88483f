"""Concept instances, instance graphs, templates and template unification."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Dict, Iterator, List, Mapping, Optional, Tuple, Union

from .errors import Report


@dataclass(frozen=True)
class Atom:
    """An atomic literal such as the bare degree value ``high``."""

    value: str


@dataclass(frozen=True)
class Ref:
    """A reference to another instance, by instance id."""

    id: str


@dataclass(frozen=True)
class ConceptInstance:
    id: str
    concept: str
    slots: Tuple[Tuple[str, tuple], ...] = ()

    def get(self, relation: str) -> tuple:
        for rel, values in self.slots:
            if rel == relation:
                return values
        return ()

    def relations(self) -> List[str]:
        return [rel for rel, _ in self.slots]


Value = Union[ConceptInstance, Ref, Atom]


def walk(instances) -> Iterator[ConceptInstance]:
    """Preorder over embedded instances. References are not followed."""
    stack = list(reversed(instances))
    while stack:
        inst = stack.pop()
        yield inst
        children = [v for _, values in inst.slots for v in values if isinstance(v, ConceptInstance)]
        stack.extend(reversed(children))


def walk_refs(instances) -> Iterator[Ref]:
    for inst in walk(instances):
        for _, values in inst.slots:
            for v in values:
                if isinstance(v, Ref):
                    yield v


@dataclass(frozen=True)
class InstanceGraph:
    roots: Tuple[ConceptInstance, ...]

    @cached_property
    def index(self) -> Dict[str, ConceptInstance]:
        idx: Dict[str, ConceptInstance] = {}
        for inst in walk(self.roots):
            idx.setdefault(inst.id, inst)
        return idx

    def instances(self) -> List[ConceptInstance]:
        return list(walk(self.roots))

    def resolve(self, value) -> Optional[ConceptInstance]:
        return resolve(value, self.index)


def resolve(value, index: Optional[Mapping[str, ConceptInstance]]) -> Optional[ConceptInstance]:
    if isinstance(value, ConceptInstance):
        return value
    if isinstance(value, Ref) and index is not None:
        return index.get(value.id)
    return None


# -- templates ---------------------------------------------------------------

@dataclass(frozen=True)
class Var:
    name: str

    def __str__(self) -> str:
        return "?" + self.name


@dataclass(frozen=True)
class TNode:
    """A template node. ``var``, when set, binds to the id of the matched instance."""

    concept: str
    var: Optional[str] = None
    slots: Tuple[Tuple[str, tuple], ...] = ()
    pos: Optional[Tuple[int, int]] = field(default=None, compare=False, repr=False)

    def get(self, relation: str) -> tuple:
        for rel, values in self.slots:
            if rel == relation:
                return values
        return ()


Template = TNode
Bindings = Dict[str, Union[str, Atom]]


def iter_tnodes(template: TNode) -> Iterator[TNode]:
    stack = [template]
    while stack:
        node = stack.pop()
        yield node
        children = [v for _, values in node.slots for v in values if isinstance(v, TNode)]
        stack.extend(reversed(children))


def template_vars(template: TNode) -> List[str]:
    """Variable names in first-occurrence (preorder) order."""
    seen: List[str] = []

    def visit(value):
        if isinstance(value, Var):
            if value.name not in seen:
                seen.append(value.name)
        elif isinstance(value, TNode):
            if value.var is not None and value.var not in seen:
                seen.append(value.var)
            for _, values in value.slots:
                for v in values:
                    visit(v)

    visit(template)
    return seen


# -- unification ---------------------------------------------------------------

MATCH_MODES = ("subsumes", "either", "exact")


def concept_matches(ontology, pattern_concept: str, target_concept: str, match: str) -> bool:
    if match == "exact":
        return pattern_concept == target_concept
    if match == "either":
        return (ontology.is_a(target_concept, pattern_concept)
                or ontology.is_a(pattern_concept, target_concept))
    return ontology.is_a(target_concept, pattern_concept)


def iter_unifiers(ontology, pattern: TNode, target: ConceptInstance,
                  seed: Optional[Mapping] = None, *,
                  index: Optional[Mapping[str, ConceptInstance]] = None,
                  match: str = "subsumes") -> Iterator[Bindings]:
    """Every way ``pattern`` can be laid over ``target``, in backtracking order.

    Fillers of one relation are aligned in order: pattern filler i+1 is only
    tried against target fillers after the one taken by filler i.
    """
    if match not in MATCH_MODES:
        raise ValueError(f"unknown match mode {match!r}")
    m = _Matcher(ontology, index, match)
    yield from m.node(pattern, target, dict(seed or {}))


def unify(ontology, pattern: TNode, target: ConceptInstance,
          seed: Optional[Mapping] = None, *,
          index: Optional[Mapping[str, ConceptInstance]] = None,
          match: str = "subsumes") -> Optional[Bindings]:
    """First consistent binding of ``pattern`` onto ``target``, or None.

    ``index`` resolves references met in the target; without it a pattern
    node facing a reference fails, although a variable still binds to it.
    """
    return next(iter_unifiers(ontology, pattern, target, seed, index=index, match=match), None)


class _Matcher:
    def __init__(self, ontology, index, match):
        self.ontology = ontology
        self.index = index
        self.match = match

    def node(self, p: TNode, t: ConceptInstance, b: dict):
        if not concept_matches(self.ontology, p.concept, t.concept, self.match):
            return
        if p.var is not None:
            bound = b.get(p.var)
            if bound is None:
                b = {**b, p.var: t.id}
            elif bound != t.id:
                return
        yield from self.slots(p.slots, 0, t, b)

    def slots(self, slots, i, t, b):
        if i == len(slots):
            yield b
            return
        rel, pvals = slots[i]
        tvals = t.get(rel)
        if len(tvals) < len(pvals):
            return
        for b2 in self.fillers(pvals, 0, tvals, 0, b):
            yield from self.slots(slots, i + 1, t, b2)

    def fillers(self, pvals, i, tvals, start, b):
        if i == len(pvals):
            yield b
            return
        last = len(tvals) - (len(pvals) - i)
        for j in range(start, last + 1):
            for b2 in self.value(pvals[i], tvals[j], b):
                yield from self.fillers(pvals, i + 1, tvals, j + 1, b2)

    def value(self, p, t, b):
        if isinstance(p, Var):
            val = t if isinstance(t, Atom) else t.id
            bound = b.get(p.name)
            if bound is None:
                yield {**b, p.name: val}
            elif bound == val:
                yield b
        elif isinstance(p, Atom):
            if isinstance(t, Atom) and t.value == p.value:
                yield b
        else:
            inst = resolve(t, self.index)
            if inst is not None:
                yield from self.node(p, inst, b)


# -- validation and display --------------------------------------------------

def check_instances(ontology, instances, known_ids, report: Report) -> None:
    """Concept/relation declarations and reference resolution for ``instances``."""
    for inst in walk(instances):
        if ontology is not None and not ontology.has_concept(inst.concept):
            report.add("unknown-concept", f"instance {inst.id!r} has undeclared concept {inst.concept!r}")
        for rel, values in inst.slots:
            if ontology is not None and not ontology.has_relation(rel):
                report.add("unknown-relation", f"instance {inst.id!r} uses undeclared relation {rel!r}")
            for v in values:
                if isinstance(v, Ref) and v.id not in known_ids:
                    report.add("dangling-reference", f"instance {inst.id!r} refers to missing instance {v.id!r}")


def check_duplicate_ids(instances, report: Report) -> None:
    seen = set()
    for inst in walk(instances):
        if inst.id in seen:
            report.add("duplicate-id", f"instance id {inst.id!r} defined more than once")
        seen.add(inst.id)


def validate_graph(ontology, graph: InstanceGraph) -> Report:
    report = Report()
    ids = {inst.id for inst in walk(graph.roots)}
    check_duplicate_ids(graph.roots, report)
    check_instances(ontology, graph.roots, ids, report)
    return report


def describe(value) -> str:
    """Compact one-line rendering, e.g. ``Preparing(AGENT accion-international)``."""
    if isinstance(value, Atom):
        return value.value
    if isinstance(value, Ref):
        return value.id
    if isinstance(value, Var):
        return str(value)
    if isinstance(value, (ConceptInstance, TNode)):
        inner = ", ".join(
            f"{rel} {' '.join(describe(v) for v in values)}" for rel, values in value.slots
        )
        return f"{value.concept}({inner})" if inner else value.concept
    return str(value)
