"""Acceptance criteria. Each test records one PASS/FAIL line, printed in the
terminal summary (see conftest.py)."""

import random
import signal

import pytest

from lexchoice import (LexChoiceError, ValidationError, choose, parse_ir, parse_lexicon,
                       serialize_ir, serialize_lexicon, unify, validate_ir, validate_lexicon)
from lexchoice.fixtures import read_fixture

from corpus import analyze_entry
from generators import choice_case, random_graph, random_ontology, random_template
from oracles import all_unifiers, closure, oracle_ranking, oracle_totals, preorder
from properties import (ONTOLOGY, argmax_scale_invariant, matched_distinction_monotone,
                        unmatched_always_never_raises)

RESULTS = {}


def record(n, ok, detail):
    RESULTS[n] = f"criterion {n}: {'PASS' if ok else 'FAIL'}  {detail}"
    assert ok, RESULTS[n]


def test_1_ir_round_trip():
    bad = []
    for n in (1, 2, 3, 4):
        ir = parse_ir(read_fixture(f"ex{n}.ir"))
        text = serialize_ir(ir)
        if parse_ir(text) != ir or serialize_ir(parse_ir(text)) != text or serialize_ir(ir) != text:
            bad.append(f"ex{n}")
    record(1, not bad, f"4 fixture IRs round-trip byte-stably; failures: {bad or 'none'}")


def test_2_self_round_trip(onto, en, fr, irs):
    total, misses = 0, []
    for lex in (en, fr):
        for cluster in lex.clusters:
            for entry in cluster.entries:
                total += 1
                ir = analyze_entry(lex, onto, irs, cluster, entry.lemma)
                [result] = [r for r in choose(lex, onto, ir) if r.cluster_id == cluster.id]
                if result.best != entry.lemma:
                    misses.append(f"{entry.lemma}->{result.best}")
    record(2, total == 24 and not misses,
           f"{total - len(misses)}/{total} entries rank first on their own analysis; misses: {misses or 'none'}")


def test_3_reference_pairings(onto, fr, irs):
    [r1] = choose(fr, onto, irs[1])
    [r3] = choose(fr, onto, irs[3])
    [r4] = choose(fr, onto, irs[4])
    l3, l4 = r3.lemmas(), r4.lemmas()
    checks = {
        "ex1 fournir first": r1.best == "fournir",
        "ex3 amorcer > commencer": l3.index("amorcer") < l3.index("commencer"),
        "ex4 démuni > pauvre": l4.index("démuni") < l4.index("pauvre"),
    }
    record(3, all(checks.values()), f"{sum(checks.values())}/3 orderings ({checks})")


def test_4_oracle_equivalence():
    anc = closure(ONTOLOGY.concepts, ONTOLOGY.parents)
    rng = random.Random(20240404)
    cases, bad, worst = 600, 0, 0.0
    for _ in range(cases):
        lex, ir, ctx = choice_case(rng)
        cluster = lex.clusters[0]
        [result] = choose(lex, ONTOLOGY, ir, ctx)
        totals = oracle_totals(anc, cluster, ir, {"e": "e", "a": "pa", "b": "pb"}, ctx)
        by_lemma = dict(result.ranking)
        diff = max(abs(by_lemma[e.lemma].total - t) for e, t in zip(cluster.entries, totals))
        worst = max(worst, diff)
        if result.lemmas() != oracle_ranking(cluster, totals) or diff > 1e-9:
            bad += 1
    record(4, bad == 0, f"{cases - bad}/{cases} rankings equal the oracle; max |Δtotal| {worst:.1e}")


def test_5_unification():
    rng = random.Random(5150)
    cases, bad, successes = 600, 0, 0
    for _ in range(cases):
        onto, names, parents = random_ontology(rng)
        target = random_graph(rng, names, max_nodes=6)
        pattern = random_template(rng, names, target, max_vars=3)
        index = {x.id: x for x in preorder([target])}
        got = unify(onto, pattern, target, index=index)
        valid = all_unifiers(closure(names, parents), pattern, target, index=index)
        successes += bool(valid)
        same = (got is None) == (not valid) and (got is None or got in valid)
        if len(valid) == 1:
            same = same and got == valid[0]
        bad += not same
    record(5, bad == 0, f"{cases - bad}/{cases} agree with enumeration ({successes} unifiable)")


def test_6_choice_properties():
    counts = {}
    for name, prop in (("matched-distinction monotonicity", matched_distinction_monotone),
                       ("unmatched-always penalty", unmatched_always_never_raises),
                       ("argmax scale invariance", argmax_scale_invariant)):
        counts[name] = sum(prop(seed) for seed in range(250))
    record(6, all(c == 250 for c in counts.values()),
           "; ".join(f"{k} {v}/250" for k, v in counts.items()))


# -- fuzzing

ALPHABET = "[]{}()#=?%:,\" \n\t-_" + "abcxyzAEIOU019" + "éø\x00"


def mutate(rng, text):
    chars = list(text)
    for _ in range(rng.randint(1, 4)):
        op = rng.randrange(6)
        i = rng.randrange(len(chars) + 1)
        if op == 0 and chars:
            del chars[i:i + rng.randint(1, 8)]
        elif op == 1:
            chars[i:i] = rng.choice(ALPHABET) * rng.randint(1, 3)
        elif op == 2 and chars:
            j = rng.randrange(len(chars))
            chars[i:i] = chars[j:j + rng.randint(1, 30)]
        elif op == 3 and chars:
            i, j = rng.randrange(len(chars)), rng.randrange(len(chars))
            chars[i], chars[j] = chars[j], chars[i]
        elif op == 4:
            del chars[i:]
        else:
            chars[i:i] = "[" * rng.randint(1, 100)
    return "".join(chars)


class Hang(Exception):
    pass


def _alarm(signum, frame):
    raise Hang()


def _check_ir(text, onto):
    ir = parse_ir(text)
    validate_ir(ir, onto)
    if parse_ir(serialize_ir(ir)) != ir:
        raise AssertionError("IR does not survive its own serialization")


def _check_lexicon(text, onto):
    lex = parse_lexicon(text)
    validate_lexicon(lex, onto)
    if parse_lexicon(serialize_lexicon(lex)) != lex:
        raise AssertionError("lexicon does not survive its own serialization")


def _positioned(exc):
    if isinstance(exc, ValidationError):
        return exc.positioned
    return exc.line is not None and exc.column is not None


@pytest.mark.skipif(not hasattr(signal, "setitimer"), reason="needs SIGALRM")
def test_7_parser_robustness(onto):
    irs = [read_fixture(f"ex{n}.ir") for n in (1, 2, 3, 4)]
    lexicons = [read_fixture(f"{tag}.lex") for tag in ("en", "fr")]
    rng = random.Random(777)
    crashes, hangs, errors, valid = [], 0, 0, 0
    old = signal.signal(signal.SIGALRM, _alarm)
    try:
        for k in range(10_000):
            if k % 2:
                kind, source, check = "lexicon", lexicons[k // 2 % 2], _check_lexicon
            else:
                kind, source, check = "ir", irs[k // 2 % 4], _check_ir
            text = mutate(rng, source)
            signal.setitimer(signal.ITIMER_REAL, 1.0)
            try:
                check(text, onto)
                valid += 1
            except Hang:
                hangs += 1
            except LexChoiceError as exc:
                errors += 1
                if not _positioned(exc):
                    crashes.append((kind, f"unpositioned {type(exc).__name__}: {exc}"))
            except Exception as exc:  # anything else is a crash
                crashes.append((kind, f"{type(exc).__name__}: {exc}"))
            finally:
                signal.setitimer(signal.ITIMER_REAL, 0)
    finally:
        signal.signal(signal.SIGALRM, old)
    record(7, not crashes and not hangs,
           f"10000 mutated inputs: {valid} valid, {errors} positioned errors, "
           f"{len(crashes)} crashes, {hangs} hangs {crashes[:3] if crashes else ''}")
