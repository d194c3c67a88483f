import io
import json
import subprocess
import sys

import pytest

from lexchoice import parse_ir
from lexchoice.cli import main, parse_request
from lexchoice.errors import ParseError
from lexchoice.fixtures import fixture_path


def run(*argv):
    out = io.StringIO()
    status = main([str(a) for a in argv], out=out)
    return status, out.getvalue()


def fx(name):
    return str(fixture_path(name))


def test_validate_fixtures():
    status, out = run("validate", fx("core.ont"), fx("en.lex"), fx("fr.lex"), fx("ex1.ir"))
    assert status == 0
    assert out.count(": ok") == 4


def test_validate_cycle(tmp_path):
    bad = tmp_path / "bad.ont"
    bad.write_text("concept A isa B\nconcept B isa A\n")
    status, out = run("validate", bad)
    assert status == 1 and "isa-cycle" in out


def test_validate_missing_file(tmp_path):
    assert run("validate", tmp_path / "missing.ont")[0] == 2


def test_validate_unparseable_ir(tmp_path):
    bad = tmp_path / "bad.ir"
    bad.write_text("{ situation [e instance-of")
    assert run("validate", bad)[0] == 2
    bad.write_text("{ situation [e instance-of Event AGENT #4] }")
    assert run("validate", bad)[0] == 1


def test_translate_provide_into_french():
    status, out = run("translate", "provide", "--from", "en", "--to", "fr", "--ir", fx("ex1.ir"))
    assert status == 0
    assert out.splitlines()[2].split()[:2] == ["1.", "fournir"]
    assert "lost:" in out


def test_translate_within_english_keeps_the_word():
    status, out = run("translate", "supply", "--from", "en", "--to", "en", "--ir", fx("ex1.ir"))
    assert status == 0 and out.splitlines()[2].split()[1] == "supply"


def test_translate_unknown_lemma():
    assert run("translate", "bestow", "--from", "en", "--to", "fr", "--ir", fx("ex1.ir"))[0] == 3


def test_translate_from_request_and_emit_ir(tmp_path):
    target = tmp_path / "mid.ir"
    status, _ = run("--emit-ir", target, "translate", "--request", fx("provide-en.req"), "--to", "fr")
    assert status == 0
    assert run("validate", target)[0] == 0
    status, out = run("translate", "--request", fx("provide-en.req"), "--to", "fr", "--emit-ir")
    ir_text = out[: out.index("}\n") + 2]
    assert parse_ir(ir_text).possibilities[0].source == "provide"


def test_analyze_request():
    status, out = run("analyze", fx("begin-en.req"))
    assert status == 0
    assert parse_ir(out).styles[0].level == "high"


def test_request_stanza_errors(tmp_path):
    with pytest.raises(ParseError):
        parse_request("lemma: x\n", tmp_path)
    with pytest.raises(ParseError):
        parse_request("lemma: x\nlanguage: en\nsituation: a.ir\nbind a = b\n", tmp_path)


def test_choose_formal_begin():
    status, out = run("choose", fx("ex3.ir"), "--lang", "fr")
    lemmas = [line.split()[1] for line in out.splitlines()[1:]]
    assert status == 0 and lemmas.index("amorcer") < lemmas.index("commencer")


def test_choose_without_possibilities_keeps_file_order(tmp_path):
    ir = tmp_path / "plain.ir"
    ir.write_text("{ situation [w instance-of Worker ATTRIBUTE [p instance-of Poor]] }")
    status, out = run("choose", ir, "--lang", "en")
    assert [line.split()[1] for line in out.splitlines()[1:]] == ["poor", "impoverished"]


def test_choose_json_and_determinism():
    first = run("choose", fx("ex1.ir"), "--lang", "fr", "--format", "json")
    second = run("choose", fx("ex1.ir"), "--lang", "fr", "--format", "json")
    assert first == second
    data = json.loads(first[1])
    assert data[0]["ranking"][0]["lemma"] == "fournir"


def test_no_activation(tmp_path):
    ir = tmp_path / "year.ir"
    ir.write_text("{ situation [y instance-of Year] }")
    assert run("choose", ir, "--lang", "fr")[0] == 4


def test_weights_and_strict_flags(tmp_path):
    w = tmp_path / "w.cfg"
    w.write_text("gamma = 0\n")
    _, out = run("--weights", w, "choose", fx("ex1.ir"), "--lang", "fr")
    assert "-0.2000" not in out
    status, out = run("choose", fx("ex1.ir"), "--lang", "fr", "--strict")
    assert status == 0 and "pourvoir   +0.0000" in out
    w.write_text("gamma = many\n")
    assert run("--weights", w, "choose", fx("ex1.ir"), "--lang", "fr")[0] == 2


def test_lexicon_flag(tmp_path):
    lex = tmp_path / "de.lex"
    lex.write_text("cluster de:c { language: de core: [?e instance-of MakingAvailable] "
                   "entry liefern { } }")
    status, out = run("--lexicon", f"de={lex}", "choose", fx("ex1.ir"), "--lang", "de")
    assert status == 0 and "liefern" in out
    assert run("choose", fx("ex1.ir"), "--lang", "de")[0] == 2
    assert run("--lexicon", "de", "choose", fx("ex1.ir"), "--lang", "de")[0] == 2


def test_explain_and_parse_commands():
    status, out = run("explain", fx("ex4.ir"), "--lang", "fr")
    assert status == 0 and "attitude penalty 0.5000" in out
    status, out = run("parse", fx("ex2.ir"))
    assert status == 0 and parse_ir(out) == parse_ir(fixture_path("ex2.ir").read_text())
    status, out = run("parse", fx("ex1.ir"), "--format", "text")
    assert status == 0 and out.startswith("situation: MakingAvailable(")


def test_fixture_dir_env(tmp_path, monkeypatch):
    ir = fx("ex1.ir")
    (tmp_path / "core.ont").write_text(fixture_path("core.ont").read_text())
    monkeypatch.setenv("LEXCHOICE_FIXTURES", str(tmp_path))
    # the directory has an ontology but no lexicons
    assert run("choose", ir, "--lang", "fr")[0] == 2
    assert run("validate", ir)[0] == 0


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "lexchoice", "choose", fx("ex4.ir"), "--lang", "fr"],
                          capture_output=True, text=True, encoding="utf-8")
    assert proc.returncode == 0
    assert proc.stdout.splitlines()[1].split()[1] == "démuni"


def test_lexicon_language_must_match_its_tag(tmp_path):
    lex = tmp_path / "x.lex"
    lex.write_text("cluster de:c { language: de core: [?e instance-of MakingAvailable] entry liefern { } }")
    assert run("--lexicon", f"fr={lex}", "choose", fx("ex1.ir"), "--lang", "fr")[0] == 1
