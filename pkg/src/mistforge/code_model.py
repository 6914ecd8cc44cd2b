"""Snippet parsing, identifier tables, and span-based editing.

A snippet is parsed with the real grammar of its language: Python via the
stdlib ``ast``/``tokenize`` pair, Java via the package's own recursive-
descent parser. Parsing yields an identifier table — deduplicated surface
names ordered by first occurrence, each with the byte spans of every
occurrence — and editing is plain span replacement so untouched bytes are
preserved exactly.

Identifier scope: names *declared* in the snippet (variables, parameters,
functions/methods, classes, fields). Keywords, literals and names that
only refer to external APIs are excluded. Dot-qualified occurrences
(``obj.name``) count only when the name is declared in-snippet as a
method/field/attribute, so ``this.count`` and ``self.helper()`` rename
consistently while ``sb.append`` stays untouched.
"""

from __future__ import annotations

import ast
import io
import keyword
import tokenize
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache

from . import java_syntax as js
from .errors import ConfigurationError, InputError, PreconditionError


class Language(Enum):
    JAVA = "java"
    PYTHON = "python"

    @classmethod
    def from_tag(cls, tag: str) -> "Language":
        tag = tag.strip().lower()
        for lang in cls:
            if lang.value == tag:
                return lang
        raise ConfigurationError(f"unknown language tag: {tag!r}")


Span = tuple[int, int]

PYTHON_KEYWORDS = frozenset(keyword.kwlist)
JAVA_KEYWORDS = js.KEYWORDS | {"true", "false", "null"}


def is_valid_identifier(name: str, language: Language) -> bool:
    if language is Language.PYTHON:
        return name.isidentifier() and name not in PYTHON_KEYWORDS
    if not name or name in JAVA_KEYWORDS:
        return False
    if not (name[0].isalpha() or name[0] in "_$"):
        return False
    return all(c.isalnum() or c in "_$" for c in name[1:])


@dataclass(frozen=True)
class IdentifierEntry:
    name: str
    spans: tuple[Span, ...]


@dataclass(frozen=True)
class IdentifierTable:
    entries: tuple[IdentifierEntry, ...]

    def __len__(self) -> int:
        return len(self.entries)

    def names(self) -> list[str]:
        return [e.name for e in self.entries]

    def get(self, name: str) -> IdentifierEntry | None:
        for e in self.entries:
            if e.name == name:
                return e
        return None

    @property
    def n_var(self) -> int:
        return len(self.entries)


@dataclass(frozen=True)
class TokenEdit:
    span: Span
    replacement: str


@dataclass(frozen=True)
class CodeSnippet:
    source: str
    language: Language
    identifiers: IdentifierTable
    parse_ok: bool

    @property
    def source_bytes(self) -> bytes:
        return self.source.encode("utf-8")

    def slice(self, span: Span) -> str:
        return self.source_bytes[span[0] : span[1]].decode("utf-8")


EMPTY_TABLE = IdentifierTable(entries=())


def parse(source: str, language: Language) -> CodeSnippet:
    """Parse source, returning a snippet whose table is populated only
    when the grammar reports zero errors."""
    if not isinstance(source, str):
        try:
            source = source.decode("utf-8")
        except (UnicodeDecodeError, AttributeError) as exc:
            raise InputError(f"source is not valid UTF-8: {exc}") from exc
    if language is Language.PYTHON:
        ok = _python_parses(source)
    elif language is Language.JAVA:
        ok = parse_java_cached(source).ok
    else:
        raise ConfigurationError(f"no grammar for language {language!r}")
    table = _extract_table(source, language) if ok else EMPTY_TABLE
    return CodeSnippet(source=source, language=language, identifiers=table,
                       parse_ok=ok)


def extract_identifiers(snippet: CodeSnippet) -> IdentifierTable:
    if not snippet.parse_ok:
        raise PreconditionError("cannot extract identifiers: snippet did not parse")
    return _extract_table(snippet.source, snippet.language)


def apply_edits(snippet: CodeSnippet, edits: list[TokenEdit]) -> CodeSnippet:
    """Apply non-overlapping span replacements right-to-left and reparse."""
    if not snippet.parse_ok:
        raise PreconditionError("cannot edit a snippet that did not parse")
    ordered = sorted(edits, key=lambda e: (e.span[0], e.span[1]))
    for prev, cur in zip(ordered, ordered[1:]):
        if cur.span[0] < prev.span[1]:
            raise InputError(f"overlapping edit spans {prev.span} and {cur.span}")
    data = snippet.source_bytes
    for edit in reversed(ordered):
        lo, hi = edit.span
        if not (0 <= lo <= hi <= len(data)):
            raise InputError(f"edit span {edit.span} outside source")
        data = data[:lo] + edit.replacement.encode("utf-8") + data[hi:]
    return parse(data.decode("utf-8"), snippet.language)


# ---------------------------------------------------------------------------
# Python backend
# ---------------------------------------------------------------------------

@lru_cache(maxsize=512)
def parse_python_cached(source: str) -> ast.Module | None:
    try:
        return ast.parse(source)
    except (SyntaxError, ValueError, MemoryError, RecursionError):
        return None


def _python_parses(source: str) -> bool:
    if parse_python_cached(source) is None:
        return False
    try:
        # ast.parse tolerates a few token-level defects; run the tokenizer
        # too so "parses" means the whole grammar pipeline is clean.
        list(tokenize.generate_tokens(io.StringIO(source).readline))
    except (tokenize.TokenError, IndentationError, SyntaxError):
        return False
    return True


@lru_cache(maxsize=512)
def parse_java_cached(source: str) -> js.JavaParse:
    return js.parse_java(source)


def _line_byte_starts(source: str) -> list[int]:
    starts = [0]
    for line in source.splitlines(keepends=True):
        starts.append(starts[-1] + len(line.encode("utf-8")))
    return starts


def _python_declared(tree: ast.Module) -> dict[str, set[str]]:
    """Map declared name -> categories ('var'|'func'|'class'|'attr')."""
    declared: dict[str, set[str]] = {}

    def add(name: str, cat: str) -> None:
        declared.setdefault(name, set()).add(cat)

    imported: set[str] = set()
    for node in ast.walk(tree):
        if isinstance(node, (ast.Import, ast.ImportFrom)):
            for alias in node.names:
                imported.add(alias.asname or alias.name.split(".")[0])
        elif isinstance(node, (ast.FunctionDef, ast.AsyncFunctionDef)):
            add(node.name, "func")
        elif isinstance(node, ast.ClassDef):
            add(node.name, "class")
        elif isinstance(node, ast.arg):
            add(node.arg, "var")
        elif isinstance(node, ast.Name) and isinstance(node.ctx, (ast.Store, ast.Del)):
            add(node.id, "var")
        elif isinstance(node, (ast.Global, ast.Nonlocal)):
            for name in node.names:
                add(name, "var")
        elif isinstance(node, ast.Attribute) and isinstance(node.ctx, ast.Store):
            if isinstance(node.value, ast.Name) and node.value.id == "self":
                add(node.attr, "attr")
        elif isinstance(node, ast.ExceptHandler) and node.name:
            add(node.name, "var")
    for name in imported:
        declared.pop(name, None)
    return declared


def _python_table(source: str) -> IdentifierTable:
    tree = parse_python_cached(source)
    assert tree is not None
    declared = _python_declared(tree)
    line_starts = _line_byte_starts(source)
    lines = source.splitlines(keepends=True)

    def to_bytes(row: int, col: int) -> int:
        line = lines[row - 1] if row - 1 < len(lines) else ""
        return line_starts[row - 1] + len(line[:col].encode("utf-8"))

    spans: dict[str, list[Span]] = {}
    order: list[str] = []
    prev_significant: tokenize.TokenInfo | None = None
    for tok in tokenize.generate_tokens(io.StringIO(source).readline):
        if tok.type in (tokenize.NL, tokenize.NEWLINE, tokenize.INDENT,
                        tokenize.DEDENT, tokenize.COMMENT):
            continue
        if tok.type == tokenize.NAME and tok.string in declared \
                and tok.string not in PYTHON_KEYWORDS:
            dotted = (prev_significant is not None
                      and prev_significant.type == tokenize.OP
                      and prev_significant.string == ".")
            cats = declared[tok.string]
            if not dotted or cats & {"func", "attr", "class"}:
                if tok.string not in spans:
                    spans[tok.string] = []
                    order.append(tok.string)
                spans[tok.string].append(
                    (to_bytes(*tok.start), to_bytes(*tok.end))
                )
        prev_significant = tok
    entries = tuple(
        IdentifierEntry(name=name, spans=tuple(spans[name])) for name in order
    )
    return IdentifierTable(entries=entries)


# ---------------------------------------------------------------------------
# Java backend
# ---------------------------------------------------------------------------

def _java_declared(root: js.JUnit) -> dict[str, set[str]]:
    declared: dict[str, set[str]] = {}

    def add(name: str, cat: str) -> None:
        declared.setdefault(name, set()).add(cat)

    for node in js.walk(root):
        if isinstance(node, js.JClass):
            add(node.name, "class")
        elif isinstance(node, js.JMethod):
            if not node.is_ctor:
                add(node.name, "func")
        elif isinstance(node, js.JParam):
            add(node.name, "var")
        elif isinstance(node, js.JField):
            for d in node.declarators:
                add(d.name, "field")
        elif isinstance(node, (js.JLocalVar,)):
            for d in node.declarators:
                add(d.name, "var")
        elif isinstance(node, js.JForEach):
            add(node.var_name, "var")
        elif isinstance(node, js.JCatch):
            add(node.name, "var")
    declared.pop("this", None)
    declared.pop("super", None)
    return declared


def _java_table(source: str) -> IdentifierTable:
    parsed = parse_java_cached(source)
    assert parsed.ok and parsed.root is not None
    declared = _java_declared(parsed.root)
    import_spans = parsed.root.import_spans

    def in_imports(tok: js.Token) -> bool:
        return any(lo <= tok.start < hi for lo, hi in import_spans)

    spans: dict[str, list[Span]] = {}
    order: list[str] = []
    prev: js.Token | None = None
    for tok in parsed.tokens:
        if tok.kind == "ident" and tok.text in declared and not in_imports(tok):
            dotted = prev is not None and prev.kind == "op" and prev.text == "."
            cats = declared[tok.text]
            if not dotted or cats & {"func", "field", "class"}:
                if tok.text not in spans:
                    spans[tok.text] = []
                    order.append(tok.text)
                spans[tok.text].append((tok.start, tok.end))
        prev = tok
    entries = tuple(
        IdentifierEntry(name=name, spans=tuple(spans[name])) for name in order
    )
    return IdentifierTable(entries=entries)


def _extract_table(source: str, language: Language) -> IdentifierTable:
    if language is Language.PYTHON:
        return _python_table(source)
    return _java_table(source)
