"""The three choice-ranking properties, each checked on one seeded random case."""

from __future__ import annotations

import random
from dataclasses import replace

from lexchoice import Weights, choose, parse_ontology
from lexchoice.choice import score_entry
from lexchoice.graph import ConceptInstance, TNode
from lexchoice.ir import Possibility
from lexchoice.scales import FREQUENCIES, NUANCE_TYPES, STRENGTHS

from generators import CHOICE_ONTOLOGY, choice_case, random_distinction

ONTOLOGY = parse_ontology(CHOICE_ONTOLOGY)
BINDINGS = {"e": "e", "a": "pa", "b": "pb"}


def _with_distinction(entry, d):
    return replace(entry, distinctions=entry.distinctions + (d,))


def matched_distinction_monotone(seed: int) -> bool:
    """A new distinction matching an unmatched preference never lowers the total."""
    rng = random.Random(seed)
    lex, ir, ctx = choice_case(rng)
    entry = rng.choice(lex.clusters[0].entries)
    before = score_entry(ONTOLOGY, entry, ir, BINDINGS, ctx)
    open_prefs = [p.preference for p in before.preferences if p.distinction is None]
    if not open_prefs or rng.random() < 0.5:
        fresh = Possibility(frequency=rng.choice(FREQUENCIES), strength=rng.choice(STRENGTHS),
                            ptype=rng.choice(NUANCE_TYPES), concept=ConceptInstance("lone1", "Lone"))
        ir = replace(ir, possibilities=ir.possibilities + (fresh,))
        before = score_entry(ONTOLOGY, entry, ir, BINDINGS, ctx)
        open_prefs = [fresh]
    target = rng.choice(open_prefs)
    d = random_distinction(rng, template=TNode(target.concept.concept))
    after = score_entry(ONTOLOGY, _with_distinction(entry, d), ir, BINDINGS, ctx)
    assert after.preferences[list(ir.possibilities).index(target)].distinction is not None
    return after.total >= before.total


def unmatched_always_never_raises(seed: int) -> bool:
    """A new always-implication distinction that matches nothing never raises the total."""
    rng = random.Random(seed)
    lex, ir, ctx = choice_case(rng)
    entry = rng.choice(lex.clusters[0].entries)
    before = score_entry(ONTOLOGY, entry, ir, BINDINGS, ctx)
    d = random_distinction(rng, dtype=rng.choice(["implication", "denotation"]),
                           frequency="always", template=TNode("Lone"))
    after = score_entry(ONTOLOGY, _with_distinction(entry, d), ir, BINDINGS, ctx)
    assert d in after.unwanted
    return after.total <= before.total


def argmax_scale_invariant(seed: int) -> bool:
    """Scaling frequency values and every penalty by c > 0 keeps the ranking."""
    rng = random.Random(seed)
    lex, ir, ctx = choice_case(rng)
    c = 2.0 ** rng.randint(-4, 4)
    [base] = choose(lex, ONTOLOGY, ir, ctx, Weights())
    [scaled] = choose(lex, ONTOLOGY, ir, ctx, Weights().scaled(c))
    if base.lemmas() != scaled.lemmas():
        return False
    return all(abs(b.total * c - s.total) <= 1e-9 * max(1.0, c)
               for (_, b), (_, s) in zip(base.ranking, scaled.ranking))
