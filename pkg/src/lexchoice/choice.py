"""Generation-side lexical choice.

Clusters whose core fits the situation are activated; each of their entries
is scored against the IR's possibilities (treated as preferences), style and
attitude, and the entries are ranked.

Per preference the best satisfaction over the entry's distinctions counts::

    sat = freq(d) * (1 - |dir(p) - dir(d)| / 3) * (1 - |str(p) - str(d)|)

    total = sum(sat) - gamma * |unwanted| - style - attitude + collocation
"""

from __future__ import annotations

import configparser
from dataclasses import dataclass, field, replace
from typing import List, Mapping, Optional, Sequence, Tuple

from .errors import NoActivationError, ParseError
from .graph import Bindings, describe, unify, walk
from .ir import IR, Possibility
from .lexicon import Cluster, Distinction, Entry, Lexicon
from .scales import LEVEL_VALUES

UNWANTED_TYPES = ("implication", "denotation")


def _frequency_table():
    return {"never": 0.0, "sometimes": 0.5, "always": 1.0}


def _strength_table():
    return {"weak": 0.0, "medium": 0.5, "strong": 1.0}


def _directness_table():
    return {"emphasis": 0, "suggestion": 1, "implication": 2, "denotation": 3}


@dataclass(frozen=True)
class Weights:
    gamma: float = 0.2   # per unwanted nuance
    beta: float = 0.25   # per style level of distance, per dimension
    alpha: float = 0.5   # attitude mismatch
    kappa: float = 0.1   # collocation bonus
    strict: bool = False
    clamp: bool = True
    frequency: Mapping[str, float] = field(default_factory=_frequency_table)
    strength: Mapping[str, float] = field(default_factory=_strength_table)
    directness: Mapping[str, int] = field(default_factory=_directness_table)

    def __post_init__(self):
        for name in ("gamma", "beta", "alpha", "kappa"):
            if getattr(self, name) < 0:
                raise ValueError(f"{name} must be >= 0")
        if any(v not in (0, 1, 2, 3) for v in self.directness.values()):
            raise ValueError("directness values must lie in 0..3")

    def scaled(self, c: float) -> "Weights":
        """Frequency table and penalties multiplied by ``c``, clamping off.

        Every total then scales by ``c``. The strength table is left alone:
        it enters through ``1 - |difference|`` and does not scale linearly.
        """
        return replace(
            self, gamma=self.gamma * c, beta=self.beta * c, alpha=self.alpha * c,
            kappa=self.kappa * c, clamp=False,
            frequency={k: v * c for k, v in self.frequency.items()},
        )


WEIGHT_KEYS = {"gamma", "beta", "alpha", "kappa", "strict_match"}


def load_weights(text: str) -> Weights:
    """Read ``key = value`` lines (gamma, beta, alpha, kappa, strict_match)."""
    cp = configparser.ConfigParser(comment_prefixes=("#", ";"), inline_comment_prefixes=("#",))
    try:
        cp.read_string("[weights]\n" + text)
    except configparser.Error as exc:
        line = getattr(exc, "lineno", 2) or 2
        raise ParseError(str(exc).splitlines()[0], max(line - 1, 1), 1) from None
    section = cp["weights"]
    unknown = set(section) - WEIGHT_KEYS
    if unknown:
        raise ParseError(f"unknown weight key(s): {', '.join(sorted(unknown))}", 1, 1)
    kwargs = {}
    try:
        for key in ("gamma", "beta", "alpha", "kappa"):
            if key in section:
                kwargs[key] = section.getfloat(key)
        if "strict_match" in section:
            kwargs["strict"] = section.getboolean("strict_match")
        return Weights(**kwargs)
    except ValueError as exc:
        raise ParseError(f"bad weight value: {exc}", 1, 1) from None


# -- results -------------------------------------------------------------------

@dataclass(frozen=True)
class PreferenceScore:
    index: int
    preference: Possibility
    distinction: Optional[Distinction]
    satisfaction: float


@dataclass(frozen=True)
class ScoreBreakdown:
    lemma: str
    preferences: Tuple[PreferenceScore, ...]
    unwanted: Tuple[Distinction, ...]
    style_penalty: float
    attitude_penalty: float
    collocation_bonus: float
    total: float


@dataclass(frozen=True)
class ChoiceResult:
    cluster_id: str
    ranking: Tuple[Tuple[str, ScoreBreakdown], ...]

    @property
    def best(self) -> str:
        return self.ranking[0][0]

    def lemmas(self) -> List[str]:
        return [lemma for lemma, _ in self.ranking]


# -- scoring -------------------------------------------------------------------

def activate(lexicon: Lexicon, ontology, ir: IR) -> List[Tuple[Cluster, Bindings]]:
    """Clusters whose core unifies with some situation instance, in lexicon order.

    A cluster is activated once, with the bindings from the first instance
    (situation preorder) its core fits.
    """
    found = []
    instances = list(walk(ir.situation.roots))
    for cluster in lexicon.clusters:
        for inst in instances:
            b = unify(ontology, cluster.core, inst, index=ir.index)
            if b is not None:
                found.append((cluster, b))
                break
    return found


def satisfaction(ontology, distinction: Distinction, preference: Possibility,
                 bindings: Bindings, weights: Weights = Weights(), *,
                 index=None) -> Optional[float]:
    """How well ``distinction`` meets ``preference``; None when the concepts don't match."""
    mode = "exact" if weights.strict else "either"
    if unify(ontology, distinction.concept, preference.concept, bindings,
             index=index, match=mode) is None:
        return None
    if distinction.frequency == "never":
        return weights.frequency["always"] if preference.frequency == "never" else 0.0
    if preference.frequency == "never":
        return 0.0
    d = weights.directness
    s = weights.strength
    value = (weights.frequency[distinction.frequency]
             * (1 - abs(d[preference.ptype] - d[distinction.dtype]) / 3)
             * (1 - abs(s[preference.strength] - s[distinction.strength])))
    if weights.clamp:
        value = min(1.0, max(0.0, value))
    return value


def score_entry(ontology, entry: Entry, ir: IR, bindings: Bindings,
                context: Sequence[str] = (), weights: Weights = Weights()) -> ScoreBreakdown:
    matched = [False] * len(entry.distinctions)
    prefs = []
    for i, p in enumerate(ir.possibilities):
        best, best_d = 0.0, None
        for j, d in enumerate(entry.distinctions):
            s = satisfaction(ontology, d, p, bindings, weights, index=ir.index)
            if s is None:
                continue
            matched[j] = True
            if best_d is None or s > best:
                best, best_d = s, d
        prefs.append(PreferenceScore(i, p, best_d, best))

    unwanted = tuple(
        d for d, hit in zip(entry.distinctions, matched)
        if not hit and d.frequency == "always" and d.dtype in UNWANTED_TYPES
    )
    style = weights.beta * sum(
        abs(LEVEL_VALUES[entry.style_level(s.dimension)] - LEVEL_VALUES[s.level])
        for s in ir.styles
    )
    attitude = 0.0
    if entry.attitude is not None:
        target = bindings.get(entry.attitude.of)
        if any(a.of == target and a.value != entry.attitude.value for a in ir.attitudes):
            attitude = weights.alpha
    colloc = weights.kappa if set(entry.collocates) & set(context) else 0.0

    total = sum(p.satisfaction for p in prefs) - weights.gamma * len(unwanted) - style - attitude + colloc
    return ScoreBreakdown(entry.lemma, tuple(prefs), unwanted, style, attitude, colloc, total)


def rank_cluster(ontology, cluster: Cluster, bindings: Bindings, ir: IR,
                 context: Sequence[str] = (), weights: Weights = Weights()) -> ChoiceResult:
    scored = [score_entry(ontology, e, ir, bindings, context, weights) for e in cluster.entries]
    order = sorted(range(len(scored)), key=lambda k: (-scored[k].total, k))
    return ChoiceResult(cluster.id, tuple((scored[k].lemma, scored[k]) for k in order))


def choose(lexicon: Lexicon, ontology, ir: IR, context: Sequence[str] = (),
           weights: Weights = Weights()) -> List[ChoiceResult]:
    activated = activate(lexicon, ontology, ir)
    if not activated:
        raise NoActivationError(f"no {lexicon.language} cluster covers the situation")
    return [rank_cluster(ontology, c, b, ir, context, weights) for c, b in activated]


# -- reporting -----------------------------------------------------------------

def describe_possibility(p: Possibility) -> str:
    return f"{p.frequency} {p.strength} {p.ptype} {describe(p.concept)}"


def describe_distinction(d: Distinction) -> str:
    return f"{d.frequency} {d.strength} {d.dtype} {describe(d.concept)}"


def explain(result: ChoiceResult) -> str:
    """Per-candidate account of what each word conveys, loses and adds."""
    out = [f"cluster {result.cluster_id}"]
    for rank, (lemma, b) in enumerate(result.ranking, start=1):
        out.append(f"{rank}. {lemma}  total {b.total:+.4f}")
        matched = [p for p in b.preferences if p.satisfaction > 0]
        lost = [p for p in b.preferences if p.satisfaction <= 0]
        out.append("   matched:")
        out.extend(
            f"     [{p.index + 1}] {describe_possibility(p.preference)}"
            f"  <- {describe_distinction(p.distinction)}  {p.satisfaction:.4f}"
            for p in matched
        )
        out.append("   lost:")
        out.extend(f"     [{p.index + 1}] {describe_possibility(p.preference)}" for p in lost)
        out.append("   unwanted:")
        out.extend(f"     {describe_distinction(d)}" for d in b.unwanted)
        out.append(f"   style penalty {b.style_penalty:.4f}"
                   f"  attitude penalty {b.attitude_penalty:.4f}"
                   f"  collocation bonus {b.collocation_bonus:.4f}")
    return "\n".join(out) + "\n"
