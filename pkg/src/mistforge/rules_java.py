"""Java implementations of the five structure rewrite rules."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional

from . import java_syntax as js
from .code_model import TokenEdit
from .rule_types import Direction, Rule
from .textops import (
    fresh_names,
    indent_text,
    line_start,
    removal_span,
    replace_in_slice,
    starts_line,
)

Span = tuple[int, int]

COMPOUND_OPS = ["+=", "-=", "*=", "/=", "%=", "<<=", ">>=", "&=", "|=", "^=", ">>>="]
BINARY_FOR_COMPOUND = {op[:-1] for op in COMPOUND_OPS}

_NUMERIC_RANK = {"byte": 1, "short": 2, "char": 2, "int": 3, "long": 4,
                 "float": 5, "double": 6}

_LITERAL_DECL_TYPE = {"string": "String", "int": "int", "long": "long",
                      "float": "float", "double": "double"}


@dataclass
class JavaSite:
    rule: Rule
    direction: Direction
    span: Span
    build: Callable[[list[str] | None], list[TokenEdit]]
    fresh_needed: int = 0


class _Ctx:
    def __init__(self, source: str, parsed: js.JavaParse):
        self.source = source
        self.data = source.encode("utf-8")
        self.parsed = parsed
        self.root = parsed.root
        self.parents: dict[int, object] = {}
        self.decl_types: dict[str, str] = {}
        self.local_names_per_method: dict[int, set[str]] = {}
        self._index()

    def _index(self) -> None:
        def visit(node, parent):
            self.parents[id(node)] = parent
            for f in node.__dataclass_fields__:
                val = getattr(node, f)
                if isinstance(val, (js.JNode, js.JParam, js.JDeclarator)):
                    visit(val, node)
                elif isinstance(val, list):
                    for item in val:
                        if isinstance(item, (js.JNode, js.JParam, js.JDeclarator)):
                            visit(item, node)

        visit(self.root, None)
        for node in js.walk(self.root):
            if isinstance(node, (js.JLocalVar, js.JField)):
                type_text = self.src_span(node.type_span)
                for d in node.declarators:
                    t = type_text + "[]" * d.extra_dims
                    self.decl_types.setdefault(d.name, t)
            elif isinstance(node, js.JParam):
                self.decl_types.setdefault(node.name, self.src_span(node.type_span))
            elif isinstance(node, js.JForEach):
                self.decl_types.setdefault(node.var_name,
                                           self.src_span(node.var_type_span))
        for node in js.walk(self.root):
            if isinstance(node, js.JMethod) and node.body is not None:
                names: set[str] = {p.name for p in node.params}
                for sub in js.walk(node.body):
                    if isinstance(sub, js.JLocalVar):
                        names.update(d.name for d in sub.declarators)
                    elif isinstance(sub, js.JForEach):
                        names.add(sub.var_name)
                    elif isinstance(sub, js.JCatch):
                        names.add(sub.name)
                self.local_names_per_method[id(node)] = names

    def parent(self, node) -> object:
        return self.parents.get(id(node))

    def src_span(self, span: Span) -> str:
        return self.data[span[0] : span[1]].decode("utf-8")

    def src(self, node) -> str:
        return self.src_span(node.span)

    def tokens_in(self, span: Span) -> list[str]:
        return [t.text for t in self.parsed.tokens
                if span[0] <= t.start and t.end <= span[1] and t.kind != "eof"]

    def taken_names(self) -> set[str]:
        return {t.text for t in self.parsed.tokens if t.kind == "ident"}

    def enclosing_method(self, node) -> Optional[js.JMethod]:
        cur = self.parent(node)
        while cur is not None:
            if isinstance(cur, js.JMethod):
                return cur
            cur = self.parent(cur)
        return None

    def names_are_local(self, names: set[str], node) -> bool:
        method = self.enclosing_method(node)
        if method is None:
            return False
        return names <= self.local_names_per_method.get(id(method), set())


def _expr_names(expr) -> set[str]:
    return {n.ident for n in js.walk(expr) if isinstance(n, js.JName)}


_COND_OK = (js.JName, js.JLiteral, js.JParen)
_COND_BINOPS = frozenset(["+", "-", "*", "/", "%", "<", "<=", ">", ">=", "==",
                          "!=", "&&", "||", "&", "|", "^", "<<", ">>", ">>>"])


def _cond_is_pure(expr) -> bool:
    for node in js.walk(expr):
        if isinstance(node, _COND_OK):
            continue
        if isinstance(node, js.JBinary) and node.op in _COND_BINOPS:
            continue
        if isinstance(node, js.JUnary) and node.op in ("+", "-", "!", "~") \
                and not node.postfix:
            continue
        return False
    return True


def _assigned_names(stmt) -> set[str]:
    names: set[str] = set()
    for node in js.walk(stmt):
        if isinstance(node, js.JAssign) and isinstance(node.target, js.JName):
            names.add(node.target.ident)
        elif isinstance(node, js.JUnary) and node.op in ("++", "--") \
                and isinstance(node.operand, js.JName):
            names.add(node.operand.ident)
        elif isinstance(node, js.JLocalVar):
            names.update(d.name for d in node.declarators)
    return names


def _branch_safe(ctx: _Ctx, cond, then_stmt) -> bool:
    if not _cond_is_pure(cond):
        return False
    names = _expr_names(cond)
    if _assigned_names(then_stmt) & names:
        return False
    has_calls = any(isinstance(n, (js.JCall, js.JNew)) for n in js.walk(then_stmt))
    if has_calls and not ctx.names_are_local(names, then_stmt):
        return False
    for node in js.walk(then_stmt):
        if isinstance(node, js.JAssign) and isinstance(node.target, js.JIndex):
            root = node.target.obj
            while isinstance(root, (js.JIndex, js.JFieldAccess)):
                root = root.obj
            if isinstance(root, js.JName) and root.ident in names:
                return False
    return True


def _continues_targeting(loop) -> list[js.JContinue] | None:
    """Unlabeled continues whose nearest loop is `loop`; None when a
    labeled continue appears anywhere inside (conservative exclusion)."""
    found: list[js.JContinue] = []
    ok = True

    def visit(node) -> None:
        nonlocal ok
        if not ok or node is None:
            return
        if isinstance(node, js.JContinue):
            if node.label is not None:
                ok = False
            else:
                found.append(node)
            return
        if isinstance(node, (js.JFor, js.JForEach, js.JWhile, js.JDoWhile)) \
                and node is not loop:
            for sub in js.walk(node):
                if isinstance(sub, js.JContinue) and sub.label is not None:
                    ok = False
            return
        for f in node.__dataclass_fields__:
            val = getattr(node, f)
            if isinstance(val, (js.JNode,)):
                visit(val)
            elif isinstance(val, list):
                for item in val:
                    if isinstance(item, js.JNode):
                        visit(item)

    visit(loop.body)
    return found if ok else None


# ---------------------------------------------------------------------------
# Rule 1: for <-> while
# ---------------------------------------------------------------------------

def _for_site(ctx: _Ctx, node: js.JFor) -> Optional[JavaSite]:
    if isinstance(ctx.parent(node), js.JLabeled):
        return None
    continues = _continues_targeting(node)
    if continues is None:
        return None
    span = node.span

    def build(_fresh: list[str] | None) -> list[TokenEdit]:
        indent = indent_text(ctx.data, span[0])
        cond_src = ctx.src_span(node.cond_span) if node.cond is not None else "true"
        if node.init_var is not None:
            init_lines = [ctx.src(node.init_var).rstrip(";") + ";"]
        else:
            init_lines = [ctx.src(e) + ";" for e in node.init_exprs]
        updates_src = [ctx.src(u) for u in node.updates]
        update_lines = [u + ";" for u in updates_src]
        inner = _body_inner_with_continue_rewrite(ctx, node, continues,
                                                  updates_src)
        parts = ["{"]
        for line in init_lines:
            parts.append(f"{indent}    {line}")
        parts.append(f"{indent}    while ({cond_src}) {{")
        if inner:
            parts.append(inner)
        for line in update_lines:
            parts.append(f"{indent}        {line}")
        parts.append(f"{indent}    }}")
        parts.append(f"{indent}}}")
        return [TokenEdit(span, "\n".join(parts))]

    return JavaSite(Rule.LOOP_FOR_WHILE, Direction.B_TO_A, span, build)


def _body_inner_with_continue_rewrite(ctx: _Ctx, node: js.JFor,
                                      continues: list[js.JContinue],
                                      updates_src: list[str]) -> str:
    """Body text for the while template; each `continue;` targeting the
    loop becomes `{ <updates>; continue; }` so the update still runs."""
    body = node.body
    if isinstance(body, js.JBlock):
        if not body.stmts:
            return ""
        first_lo = body.stmts[0].span[0]
        lo = line_start(ctx.data, first_lo)
        if ctx.data[lo:first_lo].strip() != b"":
            lo = first_lo  # other code shares the line; keep the stmt only
        hi = body.stmts[-1].span[1]
    else:
        lo, hi = body.span
    text = ctx.src_span((lo, hi)).rstrip("\n")
    if continues and updates_src:
        rewrite = "{ " + " ".join(u + ";" for u in updates_src) + " continue; }"
        rel = [(c.span[0] - lo, c.span[1] - lo, rewrite) for c in continues]
        text = replace_in_slice(text, rel)
    if not isinstance(body, js.JBlock):
        indent = indent_text(ctx.data, node.span[0])
        text = f"{indent}        {text}"
    return text


def _while_site(ctx: _Ctx, node: js.JWhile) -> Optional[JavaSite]:
    if isinstance(ctx.parent(node), js.JLabeled):
        return None
    span = node.span

    def build(_fresh: list[str] | None) -> list[TokenEdit]:
        cond_src = ctx.src_span(node.cond_span)
        body_src = ctx.src(node.body)
        return [TokenEdit(span, f"for (; {cond_src}; ) {body_src}")]

    return JavaSite(Rule.LOOP_FOR_WHILE, Direction.A_TO_B, span, build)


# ---------------------------------------------------------------------------
# Rule 2: if-else <-> if-if
# ---------------------------------------------------------------------------

def _if_else_site(ctx: _Ctx, node: js.JIf) -> Optional[JavaSite]:
    if node.else_ is None or isinstance(node.else_, js.JIf):
        return None
    if not _branch_safe(ctx, node.cond, node.then):
        return None
    span = node.span

    def build(_fresh: list[str] | None) -> list[TokenEdit]:
        head = ctx.src_span((span[0], node.then.span[1]))
        cond_src = ctx.src_span(node.cond_span)
        else_src = ctx.src(node.else_)
        return [TokenEdit(span, f"{head} if (!({cond_src})) {else_src}")]

    return JavaSite(Rule.BRANCH_IF_ELSE, Direction.B_TO_A, span, build)


def _negation_tokens(ctx: _Ctx, first_cond_span: Span, second_cond_span: Span) -> bool:
    inner = ctx.tokens_in(first_cond_span)
    outer = ctx.tokens_in(second_cond_span)
    return outer == ["!", "("] + inner + [")"]


def _if_if_site(ctx: _Ctx, first: js.JIf, second: js.JIf) -> Optional[JavaSite]:
    if first.else_ is not None or second.else_ is not None:
        return None
    if not _negation_tokens(ctx, first.cond_span, second.cond_span):
        return None
    if not _branch_safe(ctx, first.cond, first.then):
        return None
    span = (first.span[0], second.span[1])

    def build(_fresh: list[str] | None) -> list[TokenEdit]:
        head = ctx.src_span((first.span[0], first.then.span[1]))
        body_src = ctx.src(second.then)
        return [TokenEdit(span, f"{head} else {body_src}")]

    return JavaSite(Rule.BRANCH_IF_ELSE, Direction.A_TO_B, span, build)


# ---------------------------------------------------------------------------
# Rule 3: increment/decrement <-> explicit add/subtract
# ---------------------------------------------------------------------------

def _incdec_stmt_site(ctx: _Ctx, stmt: js.JExprStmt) -> Optional[JavaSite]:
    expr = stmt.expr
    if not (isinstance(expr, js.JUnary) and expr.op in ("++", "--")
            and isinstance(expr.operand, js.JName)):
        return None
    span = stmt.span
    name = expr.operand.ident
    sign = "+" if expr.op == "++" else "-"

    def build(_fresh: list[str] | None) -> list[TokenEdit]:
        return [TokenEdit(span, f"{name} = {name} {sign} 1;")]

    return JavaSite(Rule.INC_DEC, Direction.B_TO_A, span, build)


def _match_incdec_assign(expr) -> Optional[tuple[str, str]]:
    """Match `x = x + 1` / `x = x - 1`; returns (name, '++'|'--')."""
    if not (isinstance(expr, js.JAssign) and expr.op == "="
            and isinstance(expr.target, js.JName)
            and isinstance(expr.value, js.JBinary)):
        return None
    binop = expr.value
    if binop.op not in ("+", "-"):
        return None
    if not (isinstance(binop.left, js.JName)
            and binop.left.ident == expr.target.ident):
        return None
    if not (isinstance(binop.right, js.JLiteral) and binop.right.kind == "int"
            and binop.right.text == "1"):
        return None
    return expr.target.ident, "++" if binop.op == "+" else "--"


def _incdec_assign_site(ctx: _Ctx, stmt: js.JExprStmt) -> Optional[JavaSite]:
    match = _match_incdec_assign(stmt.expr)
    if match is None:
        return None
    name, op = match
    span = stmt.span

    def build(_fresh: list[str] | None) -> list[TokenEdit]:
        return [TokenEdit(span, f"{name}{op};")]

    return JavaSite(Rule.INC_DEC, Direction.A_TO_B, span, build)


def _incdec_update_sites(ctx: _Ctx, node: js.JFor) -> list[JavaSite]:
    sites: list[JavaSite] = []
    for upd in node.updates:
        if (isinstance(upd, js.JUnary) and upd.op in ("++", "--")
                and isinstance(upd.operand, js.JName)):
            name = upd.operand.ident
            sign = "+" if upd.op == "++" else "-"
            span = upd.span

            def build(_fresh, _n=name, _s=sign, _sp=span) -> list[TokenEdit]:
                return [TokenEdit(_sp, f"{_n} = {_n} {_s} 1")]

            sites.append(JavaSite(Rule.INC_DEC, Direction.B_TO_A, span, build))
        else:
            match = _match_incdec_assign(upd)
            if match is not None:
                name, op = match
                span = upd.span

                def build(_fresh, _n=name, _o=op, _sp=span) -> list[TokenEdit]:
                    return [TokenEdit(_sp, f"{_n}{_o}")]

                sites.append(JavaSite(Rule.INC_DEC, Direction.A_TO_B, span, build))
    return sites


# ---------------------------------------------------------------------------
# Rule 4: compound assignment <-> expanded assignment
# ---------------------------------------------------------------------------

def _resolve_type(ctx: _Ctx, expr) -> Optional[str]:
    if isinstance(expr, js.JLiteral):
        return {"int": "int", "long": "long", "float": "float",
                "double": "double", "char": "char", "string": "String",
                "bool": "boolean"}.get(expr.kind)
    if isinstance(expr, js.JName):
        return ctx.decl_types.get(expr.ident)
    if isinstance(expr, js.JParen):
        return _resolve_type(ctx, expr.inner)
    if isinstance(expr, js.JUnary) and expr.op in ("+", "-", "~") :
        return _resolve_type(ctx, expr.operand)
    if isinstance(expr, js.JIndex):
        base = _resolve_type(ctx, expr.obj)
        if base is not None and base.endswith("[]"):
            return base[:-2]
        return None
    if isinstance(expr, js.JBinary) and expr.op in ("+", "-", "*", "/", "%",
                                                    "<<", ">>", ">>>", "&",
                                                    "|", "^"):
        left = _resolve_type(ctx, expr.left)
        right = _resolve_type(ctx, expr.right)
        if left in _NUMERIC_RANK and right in _NUMERIC_RANK:
            return left if _NUMERIC_RANK[left] >= _NUMERIC_RANK[right] else right
        return None
    return None


def _expansion_safe(ctx: _Ctx, target_name: str, op: str, value) -> bool:
    """Compound assignment implies a narrowing cast; expanding is only
    done when the plain assignment still compiles."""
    ttype = ctx.decl_types.get(target_name)
    if ttype is None:
        return False
    if ttype == "String":
        return op == "+="
    if ttype == "boolean":
        vtype = _resolve_type(ctx, value)
        return op in ("&=", "|=", "^=") and vtype == "boolean"
    if ttype not in _NUMERIC_RANK or ttype in ("byte", "short", "char"):
        return False
    vtype = _resolve_type(ctx, value)
    if vtype not in _NUMERIC_RANK:
        return False
    return _NUMERIC_RANK[vtype] <= _NUMERIC_RANK[ttype]


def _compound_site(ctx: _Ctx, stmt: js.JExprStmt) -> Optional[JavaSite]:
    expr = stmt.expr
    if not (isinstance(expr, js.JAssign) and expr.op in COMPOUND_OPS
            and isinstance(expr.target, js.JName)):
        return None
    if not _expansion_safe(ctx, expr.target.ident, expr.op, expr.value):
        return None
    span = stmt.span
    name = expr.target.ident
    binop = expr.op[:-1]

    def build(_fresh: list[str] | None) -> list[TokenEdit]:
        return [TokenEdit(span, f"{name} = {name} {binop} ({ctx.src(expr.value)});")]

    return JavaSite(Rule.COMPOUND_ASSIGN, Direction.B_TO_A, span, build)


def _match_expanded(expr) -> Optional[tuple[str, str, object]]:
    if not (isinstance(expr, js.JAssign) and expr.op == "="
            and isinstance(expr.target, js.JName)
            and isinstance(expr.value, js.JBinary)):
        return None
    binop = expr.value
    if binop.op not in BINARY_FOR_COMPOUND:
        return None
    if not (isinstance(binop.left, js.JName)
            and binop.left.ident == expr.target.ident):
        return None
    return expr.target.ident, binop.op, binop.right


def _expanded_site(ctx: _Ctx, stmt: js.JExprStmt) -> Optional[JavaSite]:
    match = _match_expanded(stmt.expr)
    if match is None:
        return None
    name, binop, rhs = match
    span = stmt.span

    def build(_fresh: list[str] | None) -> list[TokenEdit]:
        return [TokenEdit(span, f"{name} {binop}= {ctx.src(rhs)};")]

    return JavaSite(Rule.COMPOUND_ASSIGN, Direction.A_TO_B, span, build)


# ---------------------------------------------------------------------------
# Rule 5: constant <-> named variable
# ---------------------------------------------------------------------------

def _const_sites(ctx: _Ctx, stmt: js.JExprStmt) -> list[JavaSite]:
    if not isinstance(ctx.parent(stmt), (js.JBlock, js.JUnit)):
        return []
    if not starts_line(ctx.data, stmt.span[0]):
        return []
    sites: list[JavaSite] = []

    def collect(node, in_call_args: bool) -> None:
        if isinstance(node, js.JLiteral) and node.kind in _LITERAL_DECL_TYPE \
                and in_call_args:
            lit_span = node.span
            decl_type = _LITERAL_DECL_TYPE[node.kind]

            def build(fresh: list[str] | None, _sp=lit_span,
                      _t=decl_type) -> list[TokenEdit]:
                taken = ctx.taken_names()
                if fresh and fresh[0] not in taken:
                    name = fresh[0]
                else:
                    (name,) = fresh_names("mist_tmp_", 1, taken)
                indent = indent_text(ctx.data, stmt.span[0])
                ls = line_start(ctx.data, stmt.span[0])
                lit_src = ctx.src_span(_sp)
                return [
                    TokenEdit((ls, ls), f"{indent}{_t} {name} = {lit_src};\n"),
                    TokenEdit(_sp, name),
                ]

            sites.append(JavaSite(Rule.CONST_TO_VAR, Direction.B_TO_A,
                                  lit_span, build, fresh_needed=1))
            return
        for f in node.__dataclass_fields__:
            val = getattr(node, f)
            children = val if isinstance(val, list) else [val]
            for child in children:
                if not isinstance(child, js.JNode):
                    continue
                child_in_args = in_call_args
                if isinstance(node, js.JCall) and child is not node.callee:
                    child_in_args = True
                collect(child, child_in_args)

    if any(isinstance(n, js.JCall) for n in js.walk(stmt.expr)):
        collect(stmt.expr, False)
    return sites


def _const_var_site(ctx: _Ctx, stmt: js.JLocalVar) -> Optional[JavaSite]:
    if not isinstance(ctx.parent(stmt), (js.JBlock, js.JUnit)):
        return None
    if len(stmt.declarators) != 1:
        return None
    decl = stmt.declarators[0]
    if decl.extra_dims or not isinstance(decl.init, js.JLiteral):
        return None
    if decl.init.kind not in _LITERAL_DECL_TYPE:
        return None
    rm = removal_span(ctx.data, stmt.span, (b"//",))
    if rm is None:
        return None
    name = decl.name
    # never reassigned, and no other declaration of the same name
    decl_count = 0
    for node in js.walk(ctx.root):
        if isinstance(node, js.JAssign) and isinstance(node.target, js.JName) \
                and node.target.ident == name:
            return None
        if isinstance(node, js.JUnary) and node.op in ("++", "--") \
                and isinstance(node.operand, js.JName) \
                and node.operand.ident == name:
            return None
        if isinstance(node, (js.JLocalVar, js.JField)):
            decl_count += sum(1 for d in node.declarators if d.name == name)
        elif isinstance(node, js.JParam) and node.name == name:
            return None
        elif isinstance(node, js.JForEach) and node.var_name == name:
            return None
        elif isinstance(node, js.JCatch) and node.name == name:
            return None
    if decl_count != 1:
        return None
    uses = [
        (t.start, t.end) for t in ctx.parsed.tokens
        if t.kind == "ident" and t.text == name
        and (t.start, t.end) != decl.name_span
    ]
    if not uses:
        return None
    if any(lo < stmt.span[1] for lo, _ in uses):
        return None

    lit_src = ctx.src(decl.init)
    span = stmt.span

    def build(_fresh: list[str] | None) -> list[TokenEdit]:
        edits = [TokenEdit(rm, "")]
        edits.extend(TokenEdit(sp, lit_src) for sp in uses)
        return edits

    return JavaSite(Rule.CONST_TO_VAR, Direction.A_TO_B, span, build)


# ---------------------------------------------------------------------------
# Public per-language surface
# ---------------------------------------------------------------------------

def collect_sites(source: str, parsed: js.JavaParse) -> list[JavaSite]:
    ctx = _Ctx(source, parsed)
    sites: list[JavaSite] = []
    for node in js.walk(ctx.root):
        if isinstance(node, js.JFor):
            site = _for_site(ctx, node)
            if site:
                sites.append(site)
            sites.extend(_incdec_update_sites(ctx, node))
        elif isinstance(node, js.JWhile):
            site = _while_site(ctx, node)
            if site:
                sites.append(site)
        elif isinstance(node, js.JIf):
            site = _if_else_site(ctx, node)
            if site:
                sites.append(site)
        elif isinstance(node, js.JExprStmt):
            for maker in (_incdec_stmt_site, _incdec_assign_site,
                          _compound_site, _expanded_site):
                site = maker(ctx, node)
                if site:
                    sites.append(site)
            sites.extend(_const_sites(ctx, node))
        elif isinstance(node, js.JLocalVar):
            site = _const_var_site(ctx, node)
            if site:
                sites.append(site)
        elif isinstance(node, js.JBlock):
            for first, second in zip(node.stmts, node.stmts[1:]):
                if isinstance(first, js.JIf) and isinstance(second, js.JIf):
                    site = _if_if_site(ctx, first, second)
                    if site:
                        sites.append(site)
    sites.sort(key=lambda s: (s.span[0], s.span[1], s.rule.value, s.direction.value))
    return sites


def count_forms(source: str, parsed: js.JavaParse) -> dict[Rule, tuple[int, int]]:
    ctx = _Ctx(source, parsed)
    counts = {rule: [0, 0] for rule in Rule}
    for node in js.walk(ctx.root):
        if isinstance(node, (js.JFor, js.JForEach)):
            counts[Rule.LOOP_FOR_WHILE][0] += 1
            if isinstance(node, js.JFor):
                for upd in node.updates:
                    if (isinstance(upd, js.JUnary) and upd.op in ("++", "--")
                            and isinstance(upd.operand, js.JName)):
                        counts[Rule.INC_DEC][0] += 1
                    elif _match_incdec_assign(upd) is not None:
                        counts[Rule.INC_DEC][1] += 1
        elif isinstance(node, js.JWhile):
            counts[Rule.LOOP_FOR_WHILE][1] += 1
        elif isinstance(node, js.JIf):
            if node.else_ is not None:
                counts[Rule.BRANCH_IF_ELSE][0] += 1
        elif isinstance(node, js.JExprStmt):
            expr = node.expr
            if (isinstance(expr, js.JUnary) and expr.op in ("++", "--")
                    and isinstance(expr.operand, js.JName)):
                counts[Rule.INC_DEC][0] += 1
            elif _match_incdec_assign(expr) is not None:
                counts[Rule.INC_DEC][1] += 1
            if isinstance(expr, js.JAssign) and expr.op in COMPOUND_OPS \
                    and isinstance(expr.target, js.JName):
                counts[Rule.COMPOUND_ASSIGN][0] += 1
            elif _match_expanded(expr) is not None:
                counts[Rule.COMPOUND_ASSIGN][1] += 1
            counts[Rule.CONST_TO_VAR][0] += len(_const_sites(ctx, node))
        elif isinstance(node, js.JLocalVar):
            if len(node.declarators) == 1 \
                    and isinstance(node.declarators[0].init, js.JLiteral) \
                    and node.declarators[0].init.kind in _LITERAL_DECL_TYPE:
                counts[Rule.CONST_TO_VAR][1] += 1
        elif isinstance(node, js.JBlock):
            for first, second in zip(node.stmts, node.stmts[1:]):
                if (isinstance(first, js.JIf) and isinstance(second, js.JIf)
                        and first.else_ is None and second.else_ is None
                        and _negation_tokens(ctx, first.cond_span,
                                             second.cond_span)):
                    counts[Rule.BRANCH_IF_ELSE][1] += 1
    return {rule: (b, a) for rule, (b, a) in counts.items()}
