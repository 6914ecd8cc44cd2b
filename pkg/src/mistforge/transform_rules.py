"""Semantics-preserving structure transformations.

Five bidirectional rule families over both languages:

1. loop form:          for  <->  while
2. branch form:        if-else  <->  if + negated if
3. step form (Java):   j++  <->  j = j + 1
4. compound assign:    x += y  <->  x = x + y   (full operator list,
                       including ``>>>=`` in Java and ``//=``/``**=`` in
                       Python)
5. constant naming:    f("lit")  <->  name = "lit"; f(name)

Every application is validated by reparse; an edit that fails to parse
is reported as TransformFailed and the candidate discarded. No rule ever
inserts dead code — the rewritten token stream differs from the original
only by the rule's own template.
"""

from __future__ import annotations

from .code_model import CodeSnippet, Language, apply_edits, parse_java_cached, parse_python_cached
from .errors import InputError, PreconditionError, TransformFailed
from .rule_types import Direction, Rule, StructureEdit, TransformSite
from . import rules_java, rules_python

__all__ = [
    "Rule", "Direction", "TransformSite", "StructureEdit",
    "enumerate_sites", "apply_transform", "apply_site_by_ordinal",
    "count_structures",
]


def _impl_sites(snippet: CodeSnippet):
    if snippet.language is Language.PYTHON:
        tree = parse_python_cached(snippet.source)
        assert tree is not None
        return rules_python.collect_sites(snippet.source, tree)
    parsed = parse_java_cached(snippet.source)
    assert parsed.ok
    return rules_java.collect_sites(snippet.source, parsed)


def _with_ordinals(impl_sites) -> list[tuple[TransformSite, object]]:
    counters: dict[tuple[Rule, Direction], int] = {}
    out = []
    for impl in impl_sites:
        key = (impl.rule, impl.direction)
        ordinal = counters.get(key, 0)
        counters[key] = ordinal + 1
        site = TransformSite(rule=impl.rule, direction=impl.direction,
                             node_span=impl.span, ordinal=ordinal)
        out.append((site, impl))
    return out


def enumerate_sites(snippet: CodeSnippet) -> list[TransformSite]:
    """All applicable sites of both directions of all five rules, ordered
    by span start."""
    if not snippet.parse_ok:
        raise PreconditionError("cannot enumerate sites: snippet did not parse")
    return [site for site, _ in _with_ordinals(_impl_sites(snippet))]


def apply_transform(snippet: CodeSnippet, edit: StructureEdit) -> CodeSnippet:
    """Apply one structure edit; the site must come from enumerate_sites
    on this very snippet."""
    if not snippet.parse_ok:
        raise PreconditionError("cannot transform: snippet did not parse")
    for site, impl in _with_ordinals(_impl_sites(snippet)):
        if (site.rule, site.direction, site.ordinal) == (
                edit.site.rule, edit.site.direction, edit.site.ordinal):
            if site.node_span != edit.site.node_span:
                raise InputError(
                    f"stale site: span {edit.site.node_span} now {site.node_span}")
            return _apply_impl(snippet, impl, edit.fresh_names)
    raise InputError(
        f"no such site: {edit.site.rule.value}/{edit.site.direction.value}"
        f"#{edit.site.ordinal}")


def apply_site_by_ordinal(
    snippet: CodeSnippet, rule: Rule, direction: Direction, ordinal: int,
    fresh_names: tuple[str, ...] = (),
) -> tuple[CodeSnippet, StructureEdit] | None:
    """Replay entry point: match a site by (rule, direction, ordinal) on
    the current snippet, spans free to differ. None when the site no
    longer exists."""
    for site, impl in _with_ordinals(_impl_sites(snippet)):
        if (site.rule, site.direction, site.ordinal) == (rule, direction, ordinal):
            result = _apply_impl(snippet, impl, fresh_names)
            used = _extract_fresh(snippet, result, impl)
            return result, StructureEdit(site=site, fresh_names=used)
    return None


def _apply_impl(snippet: CodeSnippet, impl, fresh_names) -> CodeSnippet:
    edits = impl.build(list(fresh_names) if fresh_names else None)
    try:
        result = apply_edits(snippet, edits)
    except InputError as exc:
        raise TransformFailed(str(exc)) from exc
    if not result.parse_ok:
        raise TransformFailed(
            f"{impl.rule.value}/{impl.direction.value} produced invalid code")
    return result


def _extract_fresh(before: CodeSnippet, after: CodeSnippet, impl) -> tuple[str, ...]:
    if impl.fresh_needed == 0:
        return ()
    old = {e.name for e in before.identifiers.entries}
    return tuple(e.name for e in after.identifiers.entries if e.name not in old)


def count_structures(snippet: CodeSnippet) -> dict[Rule, tuple[int, int]]:
    """Per-rule occurrence counts of the original form (count_b) and the
    transformed form (count_a)."""
    if not snippet.parse_ok:
        raise PreconditionError("cannot count structures: snippet did not parse")
    if snippet.language is Language.PYTHON:
        tree = parse_python_cached(snippet.source)
        assert tree is not None
        return rules_python.count_forms(snippet.source, tree)
    parsed = parse_java_cached(snippet.source)
    assert parsed.ok
    return rules_java.count_forms(snippet.source, parsed)
