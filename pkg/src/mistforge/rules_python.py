"""Python implementations of the five structure rewrite rules.

Sites are found on the stdlib AST; applications are textual span
replacements that reuse the original body bytes verbatim wherever
possible, so untouched code survives bit-for-bit.
"""

from __future__ import annotations

import ast
from dataclasses import dataclass
from typing import Callable, Optional

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

AUG_OPS: dict[type, str] = {
    ast.Add: "+", ast.Sub: "-", ast.Mult: "*", ast.Div: "/", ast.Mod: "%",
    ast.LShift: "<<", ast.RShift: ">>", ast.BitAnd: "&", ast.BitOr: "|",
    ast.BitXor: "^", ast.FloorDiv: "//", ast.Pow: "**",
}

_COND_NODES = (
    ast.Name, ast.Constant, ast.BoolOp, ast.BinOp, ast.UnaryOp, ast.Compare,
    ast.expr_context, ast.boolop, ast.operator, ast.unaryop, ast.cmpop,
)

_UNSAFE_CALLEES = frozenset(
    ["exec", "eval", "globals", "locals", "vars", "setattr", "delattr",
     "__import__"]
)


@dataclass
class PySite:
    rule: Rule
    direction: Direction
    span: Span
    build: Callable[[list[str] | None], list[TokenEdit]]
    fresh_needed: int = 0


class _Ctx:
    def __init__(self, source: str, tree: ast.Module):
        self.source = source
        self.data = source.encode("utf-8")
        self.tree = tree
        starts = [0]
        for line in source.splitlines(keepends=True):
            starts.append(starts[-1] + len(line.encode("utf-8")))
        self.line_starts = starts
        self.declared_funcs = {
            n.name for n in ast.walk(tree)
            if isinstance(n, (ast.FunctionDef, ast.AsyncFunctionDef))
        }
        self.bound_names: set[str] = set(self.declared_funcs)
        self.all_names = {
            t.id for t in ast.walk(tree) if isinstance(t, ast.Name)
        } | {
            t.arg for t in ast.walk(tree) if isinstance(t, ast.arg)
        } | self.declared_funcs
        for n in ast.walk(tree):
            if isinstance(n, ast.Name) and isinstance(n.ctx, (ast.Store, ast.Del)):
                self.bound_names.add(n.id)
            elif isinstance(n, ast.arg):
                self.bound_names.add(n.arg)
            elif isinstance(n, ast.ClassDef):
                self.bound_names.add(n.name)
            elif isinstance(n, (ast.Import, ast.ImportFrom)):
                self.bound_names.update(a.asname or a.name.split(".")[0]
                                        for a in n.names)

    def pos(self, lineno: int, col: int) -> int:
        # ast col_offset is already a UTF-8 byte offset within the line
        return self.line_starts[lineno - 1] + col

    def span(self, node: ast.AST) -> Span:
        return (self.pos(node.lineno, node.col_offset),
                self.pos(node.end_lineno, node.end_col_offset))

    def src(self, node: ast.AST) -> str:
        lo, hi = self.span(node)
        return self.data[lo:hi].decode("utf-8")

    def taken_names(self) -> set[str]:
        return set(self.all_names)


def _body_lists(tree: ast.Module):
    """Yield every statement list in the module."""
    for node in ast.walk(tree):
        for attr in ("body", "orelse", "finalbody"):
            stmts = getattr(node, attr, None)
            if isinstance(stmts, list) and stmts and isinstance(stmts[0], ast.stmt):
                yield node, stmts


def _stored_names(stmts: list[ast.stmt]) -> set[str]:
    names: set[str] = set()
    for stmt in stmts:
        for node in ast.walk(stmt):
            if isinstance(node, ast.Name) and isinstance(node.ctx, (ast.Store, ast.Del)):
                names.add(node.id)
            elif isinstance(node, (ast.FunctionDef, ast.AsyncFunctionDef, ast.ClassDef)):
                names.add(node.name)
            elif isinstance(node, (ast.Import, ast.ImportFrom)):
                names.update(a.asname or a.name.split(".")[0] for a in node.names)
    return names


def _cond_is_pure(cond: ast.expr) -> bool:
    return all(isinstance(n, _COND_NODES) for n in ast.walk(cond))


def _cond_names(cond: ast.expr) -> set[str]:
    return {n.id for n in ast.walk(cond) if isinstance(n, ast.Name)}


def _branch_safe(ctx: _Ctx, cond: ast.expr, then_stmts: list[ast.stmt]) -> bool:
    """Re-evaluating `cond` after `then_stmts` ran must be equivalent to
    the first evaluation: cond reads only plain names and the branch can
    neither rebind nor mutate what cond reads."""
    if not _cond_is_pure(cond):
        return False
    names = _cond_names(cond)
    if _stored_names(then_stmts) & names:
        return False
    for stmt in then_stmts:
        for node in ast.walk(stmt):
            if isinstance(node, ast.Call):
                callee = node.func
                if isinstance(callee, ast.Name):
                    if callee.id in ctx.declared_funcs or callee.id in _UNSAFE_CALLEES:
                        return False
                elif isinstance(callee, ast.Attribute):
                    # method call on a value the condition reads
                    if isinstance(callee.value, ast.Name) and callee.value.id in names:
                        return False
                else:
                    return False
            elif isinstance(node, ast.Subscript) and isinstance(node.ctx, (ast.Store, ast.Del)):
                root = node.value
                while isinstance(root, (ast.Subscript, ast.Attribute)):
                    root = root.value
                if isinstance(root, ast.Name) and root.id in names:
                    return False
    return True


def _is_elif(ctx: _Ctx, node: ast.If) -> bool:
    """True when node.orelse is an elif continuation rather than an else."""
    if len(node.orelse) != 1 or not isinstance(node.orelse[0], ast.If):
        return False
    gap_lo = ctx.span(node.body[-1])[1]
    gap_hi = ctx.span(node.orelse[0])[0]
    return b"elif" in ctx.data[gap_lo:gap_hi]


def _block_part(ctx: _Ctx, stmts: list[ast.stmt]) -> str:
    """Render a suite for re-attachment after a ':' — either inline
    (' stmt') or as verbatim indented lines ('\\n<lines>')."""
    first_lo = ctx.span(stmts[0])[0]
    last_hi = ctx.span(stmts[-1])[1]
    if starts_line(ctx.data, first_lo):
        return "\n" + ctx.data[line_start(ctx.data, first_lo):last_hi].decode("utf-8")
    return " " + ctx.data[first_lo:last_hi].decode("utf-8")


def _loop_continues(loop: ast.For) -> list[ast.Continue] | None:
    """Continue statements that target `loop`. None when one sits under a
    `finally` (rewriting the counter update there would be unsound)."""
    found: list[ast.Continue] = []
    ok = True

    def visit(stmts: list[ast.stmt], in_finally: bool) -> None:
        nonlocal ok
        for stmt in stmts:
            if not ok:
                return
            if isinstance(stmt, ast.Continue):
                if in_finally:
                    ok = False
                else:
                    found.append(stmt)
            elif isinstance(stmt, (ast.For, ast.AsyncFor, ast.While)):
                visit(stmt.orelse, in_finally)  # inner loop owns body continues
            elif isinstance(stmt, (ast.FunctionDef, ast.AsyncFunctionDef,
                                   ast.ClassDef)):
                pass
            elif isinstance(stmt, ast.If):
                visit(stmt.body, in_finally)
                visit(stmt.orelse, in_finally)
            elif isinstance(stmt, (ast.With, ast.AsyncWith)):
                visit(stmt.body, in_finally)
            elif isinstance(stmt, ast.Try):
                visit(stmt.body, in_finally)
                for handler in stmt.handlers:
                    visit(handler.body, in_finally)
                visit(stmt.orelse, in_finally)
                visit(stmt.finalbody, True)
            elif isinstance(stmt, ast.Match):
                for case in stmt.cases:
                    visit(case.body, in_finally)

    visit(loop.body, False)
    return found if ok else None


def _int_literal(node: ast.expr) -> Optional[int]:
    if isinstance(node, ast.Constant) and type(node.value) is int:
        return node.value
    if (isinstance(node, ast.UnaryOp) and isinstance(node.op, ast.USub)
            and isinstance(node.operand, ast.Constant)
            and type(node.operand.value) is int):
        return -node.operand.value
    return None


# ---------------------------------------------------------------------------
# Rule 1: for -> while (Python has no while -> for direction)
# ---------------------------------------------------------------------------

def _for_site(ctx: _Ctx, node: ast.For) -> Optional[PySite]:
    if node.orelse:
        return None
    continues = _loop_continues(node)
    if continues is None:
        return None
    span = ctx.span(node)

    def build(_fresh: list[str] | None) -> list[TokenEdit]:
        return [_build_for_to_while(ctx, node, continues)]

    return PySite(Rule.LOOP_FOR_WHILE, Direction.B_TO_A, span, build)


def _build_for_to_while(ctx: _Ctx, node: ast.For,
                        continues: list[ast.Continue]) -> TokenEdit:
    data = ctx.data
    span = ctx.span(node)
    indent = indent_text(data, span[0])
    taken = ctx.taken_names()
    target_src = ctx.src(node.target)
    iter_src = ctx.src(node.iter)
    inline = node.body[0].lineno == node.iter.end_lineno
    body_lo = ctx.span(node.body[0])[0]
    body_hi = ctx.span(node.body[-1])[1]

    counter = _counter_plan(ctx, node)
    if counter is not None:
        start_src, stop_lit, stop_src, step = counter
        cmp_op = "<" if step > 0 else ">"
        step_src = str(step)
        lines: list[str] = []
        if stop_lit is None:
            (stop_var,) = fresh_names("mist_stop_", 1, taken)
            lines.append(f"{stop_var} = {stop_src}")
            stop_ref = stop_var
        else:
            stop_ref = stop_src
        lines.append(f"{target_src} = {start_src}")
        lines.append(f"while {target_src} {cmp_op} {stop_ref}:")
        head = ("\n" + indent).join(lines)
        upd = f"{target_src} += {step_src}"
        if inline:
            body_src = data[body_lo:body_hi].decode("utf-8")
            body_src = _rewrite_continues(ctx, continues, body_lo, body_src,
                                          f"{target_src} += {step_src}; continue")
            new = f"{head}\n{indent}    {body_src}\n{indent}    {upd}"
        else:
            body_indent = indent_text(data, body_lo)
            block_lo = line_start(data, body_lo)
            body_src = data[block_lo:body_hi].decode("utf-8")
            body_src = _rewrite_continues(ctx, continues, block_lo, body_src,
                                          f"{target_src} += {step_src}; continue")
            new = f"{head}\n{body_src}\n{body_indent}{upd}"
        return TokenEdit(span, new)

    (it_var,) = fresh_names("mist_it_", 1, taken)
    head = (f"{it_var} = iter({iter_src})\n{indent}while True:")
    if inline:
        body_indent = indent + "    "
        body_src = data[body_lo:body_hi].decode("utf-8")
        tail = f"\n{body_indent}{body_src}"
    else:
        body_indent = indent_text(data, body_lo)
        block_lo = line_start(data, body_lo)
        tail = "\n" + data[block_lo:body_hi].decode("utf-8")
    new = (
        f"{head}\n"
        f"{body_indent}try:\n"
        f"{body_indent}    {target_src} = next({it_var})\n"
        f"{body_indent}except StopIteration:\n"
        f"{body_indent}    break"
        f"{tail}"
    )
    return TokenEdit(span, new)


def _counter_plan(ctx: _Ctx, node: ast.For):
    """(start_src, stop_literal, stop_src, step) for an eligible
    range(...) loop, else None (iterator template is used instead)."""
    if not isinstance(node.target, ast.Name):
        return None
    it = node.iter
    if not (isinstance(it, ast.Call) and isinstance(it.func, ast.Name)
            and it.func.id == "range" and not it.keywords
            and 1 <= len(it.args) <= 3):
        return None
    if "range" in ctx.bound_names:
        return None  # shadowed builtin
    if any(isinstance(a, ast.Starred) for a in it.args):
        return None
    step = 1
    if len(it.args) == 3:
        lit = _int_literal(it.args[2])
        if lit is None or lit == 0:
            return None
        step = lit
    # the loop variable must be dead after the loop; the counter template
    # leaves it one step past the for-loop's final value
    loop_end = ctx.span(node)[1]
    for n in ast.walk(ctx.tree):
        if isinstance(n, ast.Name) and n.id == node.target.id:
            if ctx.span(n)[0] >= loop_end:
                return None
    if len(it.args) == 1:
        start_src = "0"
        stop_node = it.args[0]
    else:
        start_src = ctx.src(it.args[0])
        stop_node = it.args[1]
    stop_lit = _int_literal(stop_node)
    stop_src = ctx.src(stop_node)
    return start_src, stop_lit, stop_src, step


def _rewrite_continues(ctx: _Ctx, continues: list[ast.Continue],
                       slice_lo: int, text: str, replacement: str) -> str:
    rel = []
    for cont in continues:
        lo, hi = ctx.span(cont)
        rel.append((lo - slice_lo, hi - slice_lo, replacement))
    return replace_in_slice(text, rel)


# ---------------------------------------------------------------------------
# Rule 2: if-else <-> if-if
# ---------------------------------------------------------------------------

def _if_else_site(ctx: _Ctx, node: ast.If) -> Optional[PySite]:
    if not node.orelse or _is_elif(ctx, node):
        return None
    if not _branch_safe(ctx, node.test, node.body):
        return None
    span = ctx.span(node)

    def build(_fresh: list[str] | None) -> list[TokenEdit]:
        indent = indent_text(ctx.data, span[0])
        a_end = ctx.span(node.body[-1])[1]
        head = ctx.data[span[0]:a_end].decode("utf-8")
        cond_src = ctx.src(node.test)
        new = f"{head}\n{indent}if not ({cond_src}):{_block_part(ctx, node.orelse)}"
        return [TokenEdit(span, new)]

    return PySite(Rule.BRANCH_IF_ELSE, Direction.B_TO_A, span, build)


def _negation_of(cond_src: str, other: ast.expr) -> bool:
    try:
        expected = ast.parse(f"not ({cond_src})", mode="eval").body
    except SyntaxError:
        return False
    dump = lambda n: ast.dump(n, annotate_fields=False, include_attributes=False)
    return dump(expected) == dump(other)


def _if_if_site(ctx: _Ctx, first: ast.If, second: ast.If) -> Optional[PySite]:
    if first.orelse or second.orelse:
        return None
    if not _negation_of(ctx.src(first.test), second.test):
        return None
    if not _branch_safe(ctx, first.test, first.body):
        return None
    span = (ctx.span(first)[0], ctx.span(second)[1])

    def build(_fresh: list[str] | None) -> list[TokenEdit]:
        indent = indent_text(ctx.data, span[0])
        a_end = ctx.span(first.body[-1])[1]
        head = ctx.data[span[0]:a_end].decode("utf-8")
        new = f"{head}\n{indent}else:{_block_part(ctx, second.body)}"
        return [TokenEdit(span, new)]

    return PySite(Rule.BRANCH_IF_ELSE, Direction.A_TO_B, span, build)


# ---------------------------------------------------------------------------
# Rule 4: compound assignment <-> expanded assignment
# ---------------------------------------------------------------------------

def _aug_site(ctx: _Ctx, node: ast.AugAssign) -> Optional[PySite]:
    if not isinstance(node.target, ast.Name):
        return None
    op = AUG_OPS.get(type(node.op))
    if op is None:
        return None
    span = ctx.span(node)

    def build(_fresh: list[str] | None) -> list[TokenEdit]:
        name = node.target.id
        return [TokenEdit(span, f"{name} = {name} {op} ({ctx.src(node.value)})")]

    return PySite(Rule.COMPOUND_ASSIGN, Direction.B_TO_A, span, build)


def _match_expanded(node: ast.stmt) -> Optional[tuple[str, str, ast.expr]]:
    """Match `x = x <op> rhs` and return (name, op, rhs)."""
    if not (isinstance(node, ast.Assign) and len(node.targets) == 1):
        return None
    target = node.targets[0]
    if not (isinstance(target, ast.Name) and isinstance(node.value, ast.BinOp)):
        return None
    binop = node.value
    op = AUG_OPS.get(type(binop.op))
    if op is None or not isinstance(binop.left, ast.Name):
        return None
    if binop.left.id != target.id:
        return None
    return target.id, op, binop.right


def _expanded_site(ctx: _Ctx, node: ast.Assign) -> Optional[PySite]:
    match = _match_expanded(node)
    if match is None:
        return None
    name, op, rhs = match
    span = ctx.span(node)

    def build(_fresh: list[str] | None) -> list[TokenEdit]:
        return [TokenEdit(span, f"{name} {op}= {ctx.src(rhs)}")]

    return PySite(Rule.COMPOUND_ASSIGN, Direction.A_TO_B, span, build)


# ---------------------------------------------------------------------------
# Rule 5: constant <-> named variable
# ---------------------------------------------------------------------------

def _is_const(node: ast.AST) -> bool:
    return (isinstance(node, ast.Constant)
            and type(node.value) in (str, int, float))


def _const_sites(ctx: _Ctx, stmt: ast.Expr) -> list[PySite]:
    stmt_lo = ctx.span(stmt)[0]
    if not starts_line(ctx.data, stmt_lo):
        return []
    if not any(isinstance(n, ast.Call) for n in ast.walk(stmt.value)):
        return []
    sites: list[PySite] = []

    def collect(node: ast.AST, in_call_args: bool, in_fstring: bool) -> None:
        if isinstance(node, (ast.JoinedStr, ast.FormattedValue)):
            in_fstring = True
        if _is_const(node) and in_call_args and not in_fstring:
            lit_span = ctx.span(node)

            def build(fresh: list[str] | None, _lit=node, _sp=lit_span) -> list[TokenEdit]:
                taken = ctx.taken_names()
                if fresh and fresh[0] not in taken:
                    name = fresh[0]
                else:
                    (name,) = fresh_names("mist_tmp_", 1, taken)
                indent = indent_text(ctx.data, stmt_lo)
                ls = line_start(ctx.data, stmt_lo)
                lit_src = ctx.data[_sp[0]:_sp[1]].decode("utf-8")
                return [
                    TokenEdit((ls, ls), f"{indent}{name} = {lit_src}\n"),
                    TokenEdit(_sp, name),
                ]

            sites.append(PySite(Rule.CONST_TO_VAR, Direction.B_TO_A,
                                lit_span, build, fresh_needed=1))
        for child in ast.iter_child_nodes(node):
            child_in_args = in_call_args
            if isinstance(node, ast.Call) and child is not node.func:
                child_in_args = True
            collect(child, child_in_args, in_fstring)

    collect(stmt.value, False, False)
    return sites


def _const_var_site(ctx: _Ctx, node: ast.Assign) -> Optional[PySite]:
    if len(node.targets) != 1 or not isinstance(node.targets[0], ast.Name):
        return None
    if not _is_const(node.value):
        return None
    if node.lineno != node.end_lineno:
        return None
    name = node.targets[0].id
    span = ctx.span(node)
    rm = removal_span(ctx.data, span, (b"#",))
    if rm is None:
        return None
    stores = 0
    loads: list[Span] = []
    for n in ast.walk(ctx.tree):
        if isinstance(n, ast.Name) and n.id == name:
            if isinstance(n.ctx, ast.Load):
                loads.append(ctx.span(n))
            else:
                stores += 1
        elif isinstance(n, ast.arg) and n.arg == name:
            return None
        elif isinstance(n, (ast.FunctionDef, ast.AsyncFunctionDef, ast.ClassDef)) \
                and n.name == name:
            return None
        elif isinstance(n, (ast.Global, ast.Nonlocal)) and name in n.names:
            return None
        elif isinstance(n, ast.AugAssign) and isinstance(n.target, ast.Name) \
                and n.target.id == name:
            return None
    if stores != 1 or not loads:
        return None
    if any(lo < span[1] for lo, _ in loads):
        return None  # a use before the assignment would change meaning

    def build(_fresh: list[str] | None) -> list[TokenEdit]:
        lit_src = ctx.src(node.value)
        if type(node.value.value) in (int, float):
            lit_src = f"({lit_src})"
        edits = [TokenEdit(rm, "")]
        edits.extend(TokenEdit(sp, lit_src) for sp in loads)
        return edits

    return PySite(Rule.CONST_TO_VAR, Direction.A_TO_B, span, build)


# ---------------------------------------------------------------------------
# Public per-language surface
# ---------------------------------------------------------------------------

def collect_sites(source: str, tree: ast.Module) -> list[PySite]:
    ctx = _Ctx(source, tree)
    sites: list[PySite] = []
    for node in ast.walk(tree):
        if isinstance(node, ast.For):
            site = _for_site(ctx, node)
            if site:
                sites.append(site)
        elif isinstance(node, ast.If):
            site = _if_else_site(ctx, node)
            if site:
                sites.append(site)
        elif isinstance(node, ast.AugAssign):
            site = _aug_site(ctx, node)
            if site:
                sites.append(site)
        elif isinstance(node, ast.Assign):
            for maker in (_expanded_site, _const_var_site):
                site = maker(ctx, node)
                if site:
                    sites.append(site)
        elif isinstance(node, ast.Expr):
            sites.extend(_const_sites(ctx, node))
    for _, stmts in _body_lists(tree):
        for first, second in zip(stmts, stmts[1:]):
            if isinstance(first, ast.If) and isinstance(second, ast.If):
                site = _if_if_site(ctx, first, second)
                if site:
                    sites.append(site)
    sites.sort(key=lambda s: (s.span[0], s.span[1], s.rule.value, s.direction.value))
    return sites


def count_forms(source: str, tree: ast.Module) -> dict[Rule, tuple[int, int]]:
    ctx = _Ctx(source, tree)
    counts = {rule: [0, 0] for rule in Rule}
    for node in ast.walk(tree):
        if isinstance(node, ast.For):
            counts[Rule.LOOP_FOR_WHILE][0] += 1
        elif isinstance(node, ast.While):
            counts[Rule.LOOP_FOR_WHILE][1] += 1
        elif isinstance(node, ast.If):
            if node.orelse:
                counts[Rule.BRANCH_IF_ELSE][0] += 1
        elif isinstance(node, ast.AugAssign):
            if isinstance(node.target, ast.Name) and type(node.op) in AUG_OPS:
                counts[Rule.COMPOUND_ASSIGN][0] += 1
        elif isinstance(node, ast.Assign):
            match = _match_expanded(node)
            if match is not None:
                counts[Rule.COMPOUND_ASSIGN][1] += 1
                _, op, rhs = match
                if op in ("+", "-") and isinstance(rhs, ast.Constant) \
                        and rhs.value == 1:
                    counts[Rule.INC_DEC][1] += 1
            if len(node.targets) == 1 and isinstance(node.targets[0], ast.Name) \
                    and _is_const(node.value):
                counts[Rule.CONST_TO_VAR][1] += 1
        elif isinstance(node, ast.Expr):
            counts[Rule.CONST_TO_VAR][0] += len(_const_sites(ctx, node))
    for _, stmts in _body_lists(tree):
        for first, second in zip(stmts, stmts[1:]):
            if (isinstance(first, ast.If) and isinstance(second, ast.If)
                    and not first.orelse and not second.orelse
                    and _negation_of(ctx.src(first.test), second.test)):
                counts[Rule.BRANCH_IF_ELSE][1] += 1
    return {rule: (b, a) for rule, (b, a) in counts.items()}
