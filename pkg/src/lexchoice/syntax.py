"""Tokenizer and the bracket notation shared by IR files and lexicon templates.

Both formats write concept instances as ``[id instance-of Concept REL value ...]``.
Lexicon templates use the same brackets but put ``?var`` (or nothing) where an
IR would put an instance id, and ``?var`` in filler position.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Callable, List, Optional

from .errors import ParseError
from .graph import Atom, ConceptInstance, Ref, TNode, Var

INSTANCE_OF = "instance-of"
MAX_DEPTH = 64

_TOKEN_RE = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<comment>%[^\n]*)
  | (?P<def>\#\d+=)
  | (?P<ref>\#\d+)
  | (?P<var>\?\w[\w\-]*)
  | (?P<string>"[^"\n]*")
  | (?P<word>\w[\w\-]*(?::[\w\-]+)*)
  | (?P<punct>[{}\[\](),:])
    """,
    re.VERBOSE,
)

WORD_RE = re.compile(r"\w[\w\-]*(?::[\w\-]+)*\Z")


@dataclass(frozen=True)
class Token:
    kind: str  # ws-free kinds: comment def ref var string word punct eof
    value: str
    line: int
    column: int

    @property
    def pos(self):
        return (self.line, self.column)


def tokenize(text: str) -> List[Token]:
    tokens = []
    line, line_start, i = 1, 0, 0
    n = len(text)
    while i < n:
        m = _TOKEN_RE.match(text, i)
        if m is None:
            raise ParseError(f"unexpected character {text[i]!r}", line, i - line_start + 1)
        kind = m.lastgroup
        value = m.group()
        if kind != "ws":
            if kind == "string":
                value = value[1:-1]
            elif kind == "comment":
                value = value[1:].strip()
            tokens.append(Token(kind, value, line, i - line_start + 1))
        newlines = m.group().count("\n")
        if newlines:
            line += newlines
            line_start = i + m.group().rindex("\n") + 1
        i = m.end()
    tokens.append(Token("eof", "", line, i - line_start + 1))
    return tokens


def is_relation_name(word: str) -> bool:
    return word.upper() == word and any(c.isalpha() for c in word)


def is_plain_word(text: str) -> bool:
    return bool(WORD_RE.match(text))


class TokenStream:
    """Cursor over a token list; comments are skipped unless asked for."""

    def __init__(self, text: str):
        self.tokens = tokenize(text)
        self.i = 0

    def _skip(self) -> None:
        while self.tokens[self.i].kind == "comment":
            self.i += 1

    def peek(self) -> Token:
        self._skip()
        return self.tokens[self.i]

    def peek2(self) -> Token:
        self._skip()
        j = self.i + 1
        while self.tokens[j].kind == "comment":
            j += 1
        return self.tokens[min(j, len(self.tokens) - 1)]

    def next(self) -> Token:
        tok = self.peek()
        if tok.kind != "eof":
            self.i += 1
        return tok

    def take_comment(self) -> Optional[str]:
        tok = self.tokens[self.i]
        if tok.kind == "comment":
            self.i += 1
            return tok.value
        return None

    def at(self, kind: str, value: Optional[str] = None) -> bool:
        tok = self.peek()
        return tok.kind == kind and (value is None or tok.value == value)

    def accept(self, kind: str, value: Optional[str] = None) -> Optional[Token]:
        if self.at(kind, value):
            return self.next()
        return None

    def expect(self, kind: str, value: Optional[str] = None, what: Optional[str] = None) -> Token:
        tok = self.peek()
        if tok.kind == kind and (value is None or tok.value == value):
            return self.next()
        wanted = what or (repr(value) if value is not None else kind)
        raise self.error(f"expected {wanted}, found {describe_token(tok)}", tok)

    def expect_one_of(self, choices, what: str) -> Token:
        tok = self.peek()
        if tok.kind == "word" and tok.value in choices:
            return self.next()
        raise self.error(
            f"expected {what} ({', '.join(choices)}), found {describe_token(tok)}", tok
        )

    def error(self, message: str, tok: Optional[Token] = None) -> ParseError:
        tok = tok or self.peek()
        return ParseError(message, tok.line, tok.column)


def describe_token(tok: Token) -> str:
    if tok.kind == "eof":
        return "end of input"
    if tok.kind == "def":
        return f"'{tok.value}'"
    return f"{tok.value!r}" if tok.kind != "string" else f'"{tok.value}"'


def _check_depth(ts: TokenStream, depth: int, tok: Token) -> None:
    if depth > MAX_DEPTH:
        raise ts.error("brackets nested too deeply", tok)


# -- IR instances -----------------------------------------------------------

class InstanceParser:
    """Parses instance values; ``ref_hook`` maps a ``#n`` token to an instance id."""

    def __init__(self, ts: TokenStream, ref_hook: Callable[[Token], str],
                 def_hook: Callable[[Token, ConceptInstance], None],
                 instance_hook: Callable[[Token, ConceptInstance], None]):
        self.ts = ts
        self.ref_hook = ref_hook
        self.def_hook = def_hook
        self.instance_hook = instance_hook

    def instance(self, depth: int = 0) -> ConceptInstance:
        """Instance or ``#n=`` definition; atoms are rejected."""
        tok = self.ts.peek()
        value = self.value(depth)
        if not isinstance(value, ConceptInstance):
            raise self.ts.error("expected a concept instance", tok)
        return value

    def value(self, depth: int = 0):
        ts = self.ts
        tok = ts.peek()
        _check_depth(ts, depth, tok)
        if tok.kind == "def":
            ts.next()
            if not ts.at("punct", "["):
                raise ts.error("expected '[' after reference definition")
            inst = self.value(depth + 1)
            if not isinstance(inst, ConceptInstance):
                raise ts.error(f"reference definition {tok.value} must define an instance", tok)
            self.def_hook(tok, inst)
            return inst
        if tok.kind == "ref":
            ts.next()
            return Ref(self.ref_hook(tok))
        if tok.kind == "word" and tok.value != INSTANCE_OF and not is_relation_name(tok.value):
            ts.next()
            return Atom(tok.value)
        if not (tok.kind == "punct" and tok.value == "["):
            raise ts.error(f"expected a value, found {describe_token(tok)}", tok)
        ts.next()
        head = ts.peek()
        if head.kind != "word" or head.value == INSTANCE_OF:
            raise ts.error(f"expected an instance name, found {describe_token(head)}", head)
        ts.next()
        if ts.accept("punct", "]"):
            return Atom(head.value)
        ts.expect("word", INSTANCE_OF)
        concept = ts.expect("word", what="concept name").value
        slots = parse_slots(ts, depth, self.value)
        inst = ConceptInstance(head.value, concept, slots)
        self.instance_hook(tok, inst)
        return inst


def parse_slots(ts: TokenStream, depth: int, parse_value):
    slots = {}
    while not ts.accept("punct", "]"):
        tok = ts.peek()
        if tok.kind != "word" or not is_relation_name(tok.value):
            raise ts.error(f"expected relation name or ']', found {describe_token(tok)}", tok)
        ts.next()
        values = [parse_value(depth + 1)]
        while not _at_slot_end(ts):
            values.append(parse_value(depth + 1))
        slots.setdefault(tok.value, []).extend(values)
    return tuple((rel, tuple(vals)) for rel, vals in slots.items())


def _at_slot_end(ts: TokenStream) -> bool:
    tok = ts.peek()
    if tok.kind == "punct" and tok.value == "]":
        return True
    if tok.kind == "word" and is_relation_name(tok.value):
        return True
    return tok.kind == "eof"


# -- templates ---------------------------------------------------------------

def parse_template(ts: TokenStream, depth: int = 0) -> TNode:
    tok = ts.peek()
    value = parse_template_value(ts, depth)
    if not isinstance(value, TNode):
        raise ts.error("expected a template node '[...]'", tok)
    return value


def parse_template_value(ts: TokenStream, depth: int = 0):
    tok = ts.peek()
    _check_depth(ts, depth, tok)
    if tok.kind == "var":
        ts.next()
        return Var(tok.value[1:])
    if tok.kind == "word" and tok.value != INSTANCE_OF and not is_relation_name(tok.value):
        ts.next()
        return Atom(tok.value)
    if not (tok.kind == "punct" and tok.value == "["):
        raise ts.error(f"expected a template value, found {describe_token(tok)}", tok)
    ts.next()
    head = ts.peek()
    var = None
    if head.kind == "var":
        ts.next()
        var = head.value[1:]
    elif head.kind == "word" and head.value != INSTANCE_OF:
        ts.next()
        if ts.accept("punct", "]"):
            return Atom(head.value)
        raise ts.error("template nodes take '?var' or nothing in the name position", head)
    ts.expect("word", INSTANCE_OF)
    concept = ts.expect("word", what="concept name").value
    slots = parse_slots(ts, depth, lambda d: parse_template_value(ts, d))
    return TNode(concept, var, slots, pos=tok.pos)
