"""Command-line entry point.

Exit status: 0 success, 1 validation violation, 2 I/O or parse failure,
3 analysis error, 4 no cluster activated.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Dict, List, Optional

from .analysis import AnalysisRequest, analyze, core_bindings, select_entry
from .choice import ChoiceResult, Weights, choose, describe_distinction, explain, load_weights
from .errors import (AnalysisError, LexChoiceError, NoActivationError, ParseError, Report,
                     ValidationError, Violation)
from .fixtures import fixture_dir
from .graph import Atom, describe
from .ir import parse_ir, serialize_ir, validate_ir
from .lexicon import parse_lexicon, validate_lexicon
from .ontology import Ontology, load_ontology, parse_ontology, validate_ontology

EXIT_OK, EXIT_INVALID, EXIT_IO, EXIT_ANALYSIS, EXIT_NO_ACTIVATION = 0, 1, 2, 3, 4


@dataclass
class RunConfig:
    ontology: Path
    lexicons: Dict[str, Path] = field(default_factory=dict)
    weights: Optional[Path] = None
    output: str = "text"
    strict: bool = False


class UsageError(LexChoiceError):
    pass


def resolve_path(path) -> Path:
    """Literal path if it exists, else the same file name in the fixture directory."""
    p = Path(path)
    if p.exists():
        return p
    candidate = fixture_dir() / p.name
    return candidate if candidate.exists() else p


def read(path) -> str:
    return resolve_path(path).read_text(encoding="utf-8")


def make_config(args) -> RunConfig:
    lexicons = {p.stem: p for p in sorted(fixture_dir().glob("*.lex"))}
    given = set()
    for item in args.lexicon or []:
        tag, sep, path = item.partition("=")
        if not sep or not tag or not path:
            raise UsageError(f"--lexicon expects TAG=PATH, got {item!r}")
        if tag in given:
            raise UsageError(f"more than one lexicon given for language {tag!r}")
        given.add(tag)
        lexicons[tag] = Path(path)
    ontology = Path(args.ontology) if args.ontology else fixture_dir() / "core.ont"
    weights = Path(args.weights) if args.weights else None
    return RunConfig(ontology, lexicons, weights, getattr(args, "format", "text"), args.strict)


def load_config_ontology(config: RunConfig) -> Ontology:
    return load_ontology(read(config.ontology))


def load_config_lexicon(config: RunConfig, tag: str, ontology):
    if tag not in config.lexicons:
        raise UsageError(f"no lexicon for language {tag!r} (use --lexicon {tag}=PATH)")
    lexicon = parse_lexicon(read(config.lexicons[tag]))
    report = validate_lexicon(lexicon, ontology)
    if not report.ok:
        raise ValidationError(report.violations)
    if lexicon.language not in (None, tag):
        raise ValidationError([Violation(
            "language-mismatch", f"lexicon given as {tag!r} declares {lexicon.language!r}")])
    return lexicon


def load_config_weights(config: RunConfig) -> Weights:
    weights = load_weights(read(config.weights)) if config.weights else Weights()
    return replace(weights, strict=True) if config.strict else weights


# -- commands ------------------------------------------------------------------

def cmd_validate(config: RunConfig, targets: List[str], out) -> int:
    status = EXIT_OK
    ontology = None

    def need_ontology():
        nonlocal ontology
        if ontology is None:
            ontology = load_config_ontology(config)
        return ontology

    for target in targets:
        path = resolve_path(target)
        text = path.read_text(encoding="utf-8")
        suffix = path.suffix
        if suffix == ".ont":
            onto = parse_ontology(text)
            report = validate_ontology(onto)
        elif suffix == ".lex":
            report = validate_lexicon(parse_lexicon(text), need_ontology())
        elif suffix == ".ir":
            try:
                ir = parse_ir(text)
            except ValidationError as exc:
                report = Report(list(exc.violations))
            else:
                report = validate_ir(ir, need_ontology())
        else:
            raise UsageError(f"{target}: unknown file type {suffix!r} (expected .ont, .lex or .ir)")
        print(f"{target}: {'ok' if report.ok else 'INVALID'}", file=out)
        for v in report.violations:
            print(f"  {v}", file=out)
        for w in report.warnings:
            print(f"  warning: {w}", file=out)
        if not report.ok:
            status = EXIT_INVALID
    return status


def cmd_parse(config: RunConfig, target: str, out) -> int:
    ir = parse_ir(read(target))
    if config.output == "text":
        roots = ir.situation.roots
        print(f"situation: {', '.join(describe(r) for r in roots)}", file=out)
        for i, p in enumerate(ir.possibilities, start=1):
            src = f"  ({p.source})" if p.source else ""
            print(f"possibility {i}: {p.frequency} {p.strength} {p.ptype} {describe(p.concept)}{src}",
                  file=out)
        for a in ir.attitudes:
            print(f"attitude: {a.value} of {a.of}", file=out)
        for s in ir.styles:
            print(f"style: {s.dimension} {s.level}", file=out)
    else:
        out.write(serialize_ir(ir))
    return EXIT_OK


def parse_request(text: str, base: Path):
    """Read an analysis request stanza.

    ::

        lemma: provide
        language: en
        cluster: en:provide-c        (optional)
        situation: ex1.ir
        bind ?a = accion-international   (optional; derived from the core if absent)
    """
    fields: Dict[str, str] = {}
    bindings: Dict[str, object] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("%", 1)[0].strip()
        if not line:
            continue
        if line.startswith("bind "):
            var, sep, value = line[5:].partition("=")
            var, value = var.strip(), value.strip()
            if not sep or not var.startswith("?") or len(var) < 2 or not value:
                raise ParseError("expected 'bind ?var = id'", lineno, 1)
            if value.startswith("[") and value.endswith("]"):
                bindings[var[1:]] = Atom(value[1:-1].strip())
            else:
                bindings[var[1:]] = value
            continue
        key, sep, value = line.partition(":")
        key, value = key.strip(), value.strip()
        if not sep or key not in ("lemma", "language", "cluster", "situation") or not value:
            raise ParseError(f"unrecognised request line {line!r}", lineno, 1)
        fields[key] = value
    for key in ("lemma", "language", "situation"):
        if key not in fields:
            raise ParseError(f"request needs a '{key}:' line", 1, 1)
    situation_path = base / fields["situation"]
    if not situation_path.exists():
        situation_path = resolve_path(fields["situation"])
    return fields, bindings, situation_path


def _analyze_request(config, ontology, lemma, language, situation, bindings=None, cluster_id=None):
    lexicon = load_config_lexicon(config, language, ontology)
    cluster, _ = select_entry(lexicon, lemma, cluster_id)
    if not bindings:
        bindings = core_bindings(ontology, cluster, situation)
        if bindings is None:
            raise AnalysisError("inapplicable", f"the core of {cluster.id} does not fit the situation")
    request = AnalysisRequest(lemma, situation, bindings, cluster.id)
    return cluster, analyze(lexicon, ontology, request)


def cmd_analyze(config: RunConfig, request_path: str, out) -> int:
    path = resolve_path(request_path)
    fields, bindings, situation_path = parse_request(path.read_text(encoding="utf-8"), path.parent)
    ontology = load_config_ontology(config)
    situation = parse_ir(situation_path.read_text(encoding="utf-8")).situation
    _, ir = _analyze_request(config, ontology, fields["lemma"], fields["language"], situation,
                             bindings, fields.get("cluster"))
    out.write(serialize_ir(ir))
    return EXIT_OK


def format_results(results: List[ChoiceResult], output: str) -> str:
    if output == "json":
        data = []
        for r in results:
            ranking = []
            for lemma, b in r.ranking:
                ranking.append({
                    "lemma": lemma,
                    "total": b.total,
                    "preferences": [
                        {"index": p.index + 1, "satisfaction": p.satisfaction,
                         "distinction": describe_distinction(p.distinction) if p.distinction else None}
                        for p in b.preferences
                    ],
                    "unwanted": [describe_distinction(d) for d in b.unwanted],
                    "style_penalty": b.style_penalty,
                    "attitude_penalty": b.attitude_penalty,
                    "collocation_bonus": b.collocation_bonus,
                })
            data.append({"cluster": r.cluster_id, "ranking": ranking})
        return json.dumps(data, ensure_ascii=False, indent=2) + "\n"
    lines = []
    for r in results:
        lines.append(f"cluster {r.cluster_id}")
        width = max(len(lemma) for lemma in r.lemmas())
        for rank, (lemma, b) in enumerate(r.ranking, start=1):
            lines.append(f"  {rank}. {lemma.ljust(width)}  {b.total:+.4f}")
    return "\n".join(lines) + "\n"


def cmd_choose(config: RunConfig, ir_path: str, language: str, context: List[str], out,
               with_explain: bool = False) -> int:
    ontology = load_config_ontology(config)
    lexicon = load_config_lexicon(config, language, ontology)
    ir = parse_ir(read(ir_path))
    results = choose(lexicon, ontology, ir, context, load_config_weights(config))
    out.write(format_results(results, config.output))
    if with_explain:
        for r in results:
            out.write("\n" + explain(r))
    return EXIT_OK


def cmd_translate(config: RunConfig, lemma: str, source: str, target: str, out, *,
                  ir_path: Optional[str] = None, request_path: Optional[str] = None,
                  cluster_id: Optional[str] = None, context: List[str] = (),
                  emit_ir: Optional[str] = None) -> int:
    ontology = load_config_ontology(config)
    bindings = None
    if request_path is not None:
        path = resolve_path(request_path)
        fields, bindings, situation_path = parse_request(path.read_text(encoding="utf-8"), path.parent)
        lemma = lemma or fields["lemma"]
        source = source or fields["language"]
        cluster_id = cluster_id or fields.get("cluster")
        situation = parse_ir(situation_path.read_text(encoding="utf-8")).situation
    elif ir_path is not None:
        situation = parse_ir(read(ir_path)).situation
    else:
        raise UsageError("translate needs --ir or --request")
    if not lemma or not source:
        raise UsageError("translate needs a lemma and a source language")

    cluster, ir = _analyze_request(config, ontology, lemma, source, situation, bindings, cluster_id)
    target_lexicon = load_config_lexicon(config, target, ontology)
    text = serialize_ir(ir)
    if emit_ir == "-":
        out.write(text + "\n")
    elif emit_ir:
        Path(emit_ir).write_text(text, encoding="utf-8")
    results = choose(target_lexicon, ontology, ir, context, load_config_weights(config))
    out.write(f"{lemma} ({cluster.id}) -> {target}\n")
    out.write(format_results(results, config.output))
    if config.output != "json":
        for r in results:
            out.write("\n" + explain(r))
    return EXIT_OK


# -- argument handling ---------------------------------------------------------

def _common(parser, suppress: bool) -> None:
    default = argparse.SUPPRESS if suppress else None
    parser.add_argument("--ontology", default=default, help="ontology file (default: shipped core.ont)")
    parser.add_argument("--lexicon", action="append", default=default, metavar="TAG=PATH",
                        help="lexicon for a language tag; repeatable")
    parser.add_argument("--weights", default=default, help="weights file of key = value lines")
    parser.add_argument("--strict", action="store_true",
                        default=argparse.SUPPRESS if suppress else False,
                        help="match nuance concepts exactly instead of by subsumption")
    parser.add_argument("--emit-ir", nargs="?", const="-", metavar="PATH", default=default,
                        help="translate: also write the intermediate IR (to PATH, or stdout)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="lexchoice", description=__doc__.splitlines()[0])
    _common(parser, suppress=False)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="validate .ont, .lex and .ir files")
    _common(p, suppress=True)
    p.add_argument("files", nargs="+")

    p = sub.add_parser("parse", help="parse an IR file and print it")
    _common(p, suppress=True)
    p.add_argument("file")
    p.add_argument("--format", choices=("canonical-ir", "text"), default="canonical-ir")

    p = sub.add_parser("analyze", help="run word analysis from a request stanza")
    _common(p, suppress=True)
    p.add_argument("request")

    for name, helptext in (("choose", "rank near-synonyms for an IR"),
                           ("explain", "rank near-synonyms and explain each score")):
        p = sub.add_parser(name, help=helptext)
        _common(p, suppress=True)
        p.add_argument("ir")
        p.add_argument("--lang", required=True, help="target language tag")
        p.add_argument("--context", default="", help="comma-separated context lemmas")
        p.add_argument("--format", choices=("text", "json"), default="text")

    p = sub.add_parser("translate", help="analyze a source word, then choose in the target language")
    _common(p, suppress=True)
    p.add_argument("lemma", nargs="?")
    p.add_argument("--from", dest="source", help="source language tag")
    p.add_argument("--to", dest="target", required=True, help="target language tag")
    p.add_argument("--ir", help="IR file whose situation the word describes")
    p.add_argument("--request", help="analysis request stanza")
    p.add_argument("--cluster", help="source cluster id, for polysemous lemmas")
    p.add_argument("--context", default="", help="comma-separated context lemmas")
    p.add_argument("--format", choices=("text", "json"), default="text")
    return parser


def _split(context: str) -> List[str]:
    return [c.strip() for c in context.split(",") if c.strip()]


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        config = make_config(args)
        if args.command == "validate":
            return cmd_validate(config, args.files, out)
        if args.command == "parse":
            return cmd_parse(config, args.file, out)
        if args.command == "analyze":
            return cmd_analyze(config, args.request, out)
        if args.command in ("choose", "explain"):
            return cmd_choose(config, args.ir, args.lang, _split(args.context), out,
                              with_explain=args.command == "explain")
        return cmd_translate(config, args.lemma, args.source, args.target, out,
                             ir_path=args.ir, request_path=args.request, cluster_id=args.cluster,
                             context=_split(args.context), emit_ir=args.emit_ir)
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except (ParseError, UsageError, OSError, UnicodeDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except AnalysisError as exc:
        print(f"error: {exc.kind}: {exc}", file=sys.stderr)
        return EXIT_ANALYSIS
    except NoActivationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NO_ACTIVATION


if __name__ == "__main__":
    sys.exit(main())
