"""Byte-level line helpers shared by the rewrite rules.

All positions are byte offsets into the UTF-8 encoding of the source;
spans are half-open ``(start, end)`` pairs.
"""

from __future__ import annotations

Span = tuple[int, int]


def line_start(data: bytes, pos: int) -> int:
    return data.rfind(b"\n", 0, pos) + 1


def line_end(data: bytes, pos: int) -> int:
    """Offset just past the newline that ends the line containing pos
    (or len(data) when the last line is unterminated)."""
    idx = data.find(b"\n", pos)
    return len(data) if idx == -1 else idx + 1


def indent_text(data: bytes, pos: int) -> str:
    """Leading whitespace of the line containing pos."""
    ls = line_start(data, pos)
    i = ls
    while i < len(data) and data[i : i + 1] in (b" ", b"\t"):
        i += 1
    return data[ls:i].decode("utf-8")


def starts_line(data: bytes, pos: int) -> bool:
    """True when only whitespace precedes pos on its line."""
    ls = line_start(data, pos)
    return data[ls:pos].strip() == b""


def only_trailing_trivia(data: bytes, pos: int, comment_markers: tuple[bytes, ...]) -> bool:
    """True when everything after pos on its line is whitespace or a
    line comment."""
    le = line_end(data, pos)
    rest = data[pos:le].strip()
    if rest == b"":
        return True
    return any(rest.startswith(m) for m in comment_markers)


def removal_span(data: bytes, stmt_span: Span, comment_markers: tuple[bytes, ...]) -> Span | None:
    """Span deleting a statement together with its whole line(s).

    Returns None when the statement does not own its line(s) — i.e. code
    precedes it or follows it on the same line."""
    lo, hi = stmt_span
    if not starts_line(data, lo):
        return None
    if not only_trailing_trivia(data, hi, comment_markers):
        return None
    return (line_start(data, lo), line_end(data, hi))


def replace_in_slice(text: str, edits: list[tuple[int, int, str]]) -> str:
    """Apply (start, end, replacement) edits, given as offsets relative to
    the slice, right-to-left."""
    for lo, hi, rep in sorted(edits, key=lambda e: e[0], reverse=True):
        text = text[:lo] + rep + text[hi:]
    return text


def fresh_names(base: str, count: int, taken: set[str]) -> list[str]:
    """Smallest-suffix fresh names ``{base}{k}`` avoiding `taken`.
    Mutates `taken` so successive calls stay collision-free."""
    out: list[str] = []
    k = 0
    while len(out) < count:
        cand = f"{base}{k}"
        if cand not in taken:
            out.append(cand)
            taken.add(cand)
        k += 1
    return out
