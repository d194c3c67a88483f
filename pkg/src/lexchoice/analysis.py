"""Word-level analysis: what a chosen source word may have expressed.

Given a lemma, its cluster and the bindings of the cluster's core roles into
a situation, the entry's distinctions become possibilities, its attitude an
attitude expression and its marked style values style preferences.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Callable, Mapping, Optional, Tuple

from .errors import AnalysisError
from .graph import Atom, Bindings, ConceptInstance, InstanceGraph, Ref, TNode, Var, unify, walk
from .ir import IR, AttitudeExpr, Possibility, StylePref
from .lexicon import Cluster, Entry, Lexicon, clusters_for_lemma


@dataclass(frozen=True)
class AnalysisRequest:
    lemma: str
    situation: InstanceGraph
    bindings: Mapping[str, object] = field(default_factory=dict)
    cluster_id: Optional[str] = None


def select_entry(lexicon: Lexicon, lemma: str, cluster_id: Optional[str] = None) -> Tuple[Cluster, Entry]:
    found = clusters_for_lemma(lexicon, lemma)
    if cluster_id is not None:
        found = [(c, e) for c, e in found if c.id == cluster_id]
        if not found:
            raise AnalysisError("unknown-lemma", f"{lemma!r} is not in cluster {cluster_id!r}")
    if not found:
        raise AnalysisError("unknown-lemma", f"{lemma!r} is not in the {lexicon.language} lexicon")
    if len(found) > 1:
        ids = ", ".join(c.id for c, _ in found)
        raise AnalysisError("ambiguous-lemma", f"{lemma!r} is in several clusters ({ids}); pick one")
    return found[0]


def core_bindings(ontology, cluster: Cluster, situation: InstanceGraph,
                  seed: Optional[Mapping] = None) -> Optional[Bindings]:
    """Bindings of the cluster core against the first situation instance it fits."""
    for inst in walk(situation.roots):
        b = unify(ontology, cluster.core, inst, seed, index=situation.index)
        if b is not None:
            return b
    return None


def fresh_ids(lemma: str, taken) -> Callable[[], str]:
    stem = re.sub(r"[^\w\-]+", "-", lemma).strip("-") or "w"
    counter = [0]

    def fresh() -> str:
        while True:
            counter[0] += 1
            candidate = f"{stem}-n{counter[0]}"
            if candidate not in taken:
                taken.add(candidate)
                return candidate

    return fresh


def instantiate(template: TNode, bindings: Mapping, fresh: Callable[[], str]) -> ConceptInstance:
    """Build an instance from a template: fresh ids for its nodes, references
    for bound variables."""

    def value(v):
        if isinstance(v, Var):
            bound = bindings[v.name]
            return bound if isinstance(bound, Atom) else Ref(bound)
        if isinstance(v, TNode):
            return node(v)
        return v

    def node(t: TNode) -> ConceptInstance:
        new_id = fresh()
        slots = tuple((rel, tuple(value(v) for v in values)) for rel, values in t.slots)
        return ConceptInstance(new_id, t.concept, slots)

    return node(template)


def analyze(lexicon: Lexicon, ontology, request: AnalysisRequest) -> IR:
    cluster, entry = select_entry(lexicon, request.lemma, request.cluster_id)
    bindings = dict(request.bindings)
    missing = [v for v in cluster.core_vars() if v not in bindings]
    if missing:
        raise AnalysisError("incomplete-bindings",
                            f"no binding for {', '.join('?' + v for v in missing)} "
                            f"(core of {cluster.id})")
    if core_bindings(ontology, cluster, request.situation, bindings) is None:
        raise AnalysisError("inapplicable",
                            f"the core of {cluster.id} does not fit the situation under these bindings")

    situation = request.situation
    fresh = fresh_ids(entry.lemma, set(situation.index))
    possibilities = tuple(
        Possibility(frequency=d.frequency, strength=d.strength, ptype=d.dtype,
                    concept=instantiate(d.concept, bindings, fresh), source=entry.lemma)
        for d in entry.distinctions
    )
    attitudes = ()
    if entry.attitude is not None:
        target = bindings[entry.attitude.of]
        if isinstance(target, Atom):
            raise AnalysisError("inapplicable",
                                f"attitude of {entry.lemma!r} targets a literal, not a participant")
        attitudes = (AttitudeExpr(entry.attitude.value, target),)
    styles = tuple(StylePref(s.dimension, s.level) for s in entry.style if s.level != "neutral")
    return IR(situation, possibilities, attitudes, styles)
