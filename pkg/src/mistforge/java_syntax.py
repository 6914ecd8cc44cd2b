"""Java lexer and recursive-descent parser for method-level snippets.

No Java grammar library is available in this toolchain, so this module
implements the subset needed to analyze and rewrite snippet-scale code:
classes with fields/methods/constructors, the full statement repertoire
used by the structure rewrite rules (if/while/do/for/for-each/switch/
try), and an operator-precedence expression grammar including compound
assignment, increment/decrement and the ``>>>=`` family.

The parser is strict inside its grammar: anything it does not support
(lambdas, method references, text blocks, records, ...) is a parse
error, never a silent acceptance. That is the conservative direction
for snippet filtering — an unparsed sample is excluded, not mangled.

Spans are byte ranges over the UTF-8 encoding of the source, matching
the span convention used everywhere else in the package.

Tolerance for fragments: like grammar tools built for corpus snippets,
the top level accepts either a compilation unit, a bare member sequence
(methods/fields), or a bare statement sequence, tried in that order.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Union

KEYWORDS = frozenset(
    """abstract assert boolean break byte case catch char class const continue
    default do double else enum extends final finally float for goto if
    implements import instanceof int interface long native new package private
    protected public return short static strictfp super switch synchronized
    this throw throws transient try void volatile while""".split()
)

PRIMITIVE_TYPES = frozenset(
    ["boolean", "byte", "char", "short", "int", "long", "float", "double", "void"]
)

MODIFIER_KEYWORDS = frozenset(
    ["public", "private", "protected", "static", "final", "abstract",
     "native", "synchronized", "transient", "volatile", "strictfp", "default"]
)

# Maximal-munch operator list. The '>' family is deliberately NOT merged
# into >>, >>>, >>= or >>>= at lex time so that nested generic closers
# (List<List<String>>) lex cleanly; the expression parser re-combines
# adjacent '>' tokens. '>=' is still merged because a bare '>' directly
# followed by '=' can only be relational or the tail of a shift-assign.
OPERATORS = [
    "<<=", "<<", "<=", "<",
    ">=", ">",
    "==", "=", "!=", "!",
    "&&", "&=", "&", "||", "|=", "|",
    "++", "+=", "+", "--", "-=", "->", "-",
    "*=", "*", "/=", "/", "%=", "%", "^=", "^",
    "~", "?", "::", ":", ";", ",", ".", "(", ")", "{", "}", "[", "]", "@", "...",
]
OPERATORS.sort(key=len, reverse=True)

COMPOUND_ASSIGN_OPS = frozenset(
    ["+=", "-=", "*=", "/=", "%=", "<<=", ">>=", "&=", "|=", "^=", ">>>="]
)


class JavaParseError(Exception):
    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (at byte {offset})")
        self.offset = offset


@dataclass(frozen=True)
class Token:
    kind: str  # ident | keyword | int | long | float | double | char | string | bool | null | op | eof
    text: str
    start: int  # byte offset
    end: int    # byte offset


def _byte_offsets(source: str) -> list[int]:
    offs = [0]
    total = 0
    for ch in source:
        total += len(ch.encode("utf-8"))
        offs.append(total)
    return offs


def tokenize(source: str) -> list[Token]:
    """Lex Java source into tokens with byte spans. Raises JavaParseError."""
    offs = _byte_offsets(source)
    tokens: list[Token] = []
    i, n = 0, len(source)
    while i < n:
        ch = source[i]
        if ch in " \t\r\n\f":
            i += 1
            continue
        if ch == "/" and i + 1 < n and source[i + 1] == "/":
            j = source.find("\n", i)
            i = n if j == -1 else j + 1
            continue
        if ch == "/" and i + 1 < n and source[i + 1] == "*":
            j = source.find("*/", i + 2)
            if j == -1:
                raise JavaParseError("unterminated block comment", offs[i])
            i = j + 2
            continue
        if ch == '"':
            if source.startswith('"""', i):
                raise JavaParseError("text blocks are not supported", offs[i])
            j = i + 1
            while j < n and source[j] != '"':
                if source[j] == "\\":
                    j += 1
                elif source[j] == "\n":
                    raise JavaParseError("unterminated string literal", offs[i])
                j += 1
            if j >= n:
                raise JavaParseError("unterminated string literal", offs[i])
            tokens.append(Token("string", source[i : j + 1], offs[i], offs[j + 1]))
            i = j + 1
            continue
        if ch == "'":
            j = i + 1
            while j < n and source[j] != "'":
                if source[j] == "\\":
                    j += 1
                j += 1
            if j >= n:
                raise JavaParseError("unterminated char literal", offs[i])
            tokens.append(Token("char", source[i : j + 1], offs[i], offs[j + 1]))
            i = j + 1
            continue
        if ch.isdigit() or (ch == "." and i + 1 < n and source[i + 1].isdigit()):
            j, kind = _lex_number(source, i)
            tokens.append(Token(kind, source[i:j], offs[i], offs[j]))
            i = j
            continue
        if ch.isalpha() or ch in "_$":
            j = i + 1
            while j < n and (source[j].isalnum() or source[j] in "_$"):
                j += 1
            word = source[i:j]
            if word in ("true", "false"):
                kind = "bool"
            elif word == "null":
                kind = "null"
            elif word in KEYWORDS:
                kind = "keyword"
            else:
                kind = "ident"
            tokens.append(Token(kind, word, offs[i], offs[j]))
            i = j
            continue
        for op in OPERATORS:
            if source.startswith(op, i):
                tokens.append(Token("op", op, offs[i], offs[i + len(op)]))
                i += len(op)
                break
        else:
            raise JavaParseError(f"unexpected character {ch!r}", offs[i])
    tokens.append(Token("eof", "", offs[n], offs[n]))
    return tokens


def _lex_number(source: str, i: int) -> tuple[int, str]:
    n = len(source)
    j = i
    is_float = False
    if source.startswith(("0x", "0X", "0b", "0B"), i):
        j = i + 2
        while j < n and (source[j].isalnum() or source[j] == "_"):
            if source[j].lower() in "lfd" and source[j - 1] != "x":
                break
            j += 1
    else:
        while j < n and (source[j].isdigit() or source[j] == "_"):
            j += 1
        if j < n and source[j] == ".":
            is_float = True
            j += 1
            while j < n and (source[j].isdigit() or source[j] == "_"):
                j += 1
        if j < n and source[j] in "eE":
            k = j + 1
            if k < n and source[k] in "+-":
                k += 1
            if k < n and source[k].isdigit():
                is_float = True
                j = k
                while j < n and source[j].isdigit():
                    j += 1
    kind = "double" if is_float else "int"
    if j < n and source[j] in "lL":
        kind = "long"
        j += 1
    elif j < n and source[j] in "fF":
        kind = "float"
        j += 1
    elif j < n and source[j] in "dD":
        kind = "double"
        j += 1
    return j, kind


# ---------------------------------------------------------------------------
# AST node types. Every node carries a byte span over the whole construct.
# ---------------------------------------------------------------------------

Span = tuple[int, int]


@dataclass
class JNode:
    span: Span


@dataclass
class JName(JNode):
    ident: str


@dataclass
class JLiteral(JNode):
    kind: str  # int | long | float | double | char | string | bool | null
    text: str


@dataclass
class JFieldAccess(JNode):
    obj: "JExpr"
    name: str
    name_span: Span


@dataclass
class JIndex(JNode):
    obj: "JExpr"
    index: "JExpr"


@dataclass
class JCall(JNode):
    callee: "JExpr"
    args: list["JExpr"]


@dataclass
class JUnary(JNode):
    op: str
    operand: "JExpr"
    postfix: bool


@dataclass
class JBinary(JNode):
    left: "JExpr"
    op: str
    right: "JExpr"


@dataclass
class JInstanceOf(JNode):
    value: "JExpr"
    type_span: Span


@dataclass
class JTernary(JNode):
    cond: "JExpr"
    then: "JExpr"
    other: "JExpr"


@dataclass
class JAssign(JNode):
    target: "JExpr"
    op: str  # '=', '+=', ..., '>>>='
    value: "JExpr"


@dataclass
class JCast(JNode):
    type_span: Span
    value: "JExpr"


@dataclass
class JParen(JNode):
    inner: "JExpr"


@dataclass
class JNew(JNode):
    type_span: Span
    args: list["JExpr"]


@dataclass
class JNewArray(JNode):
    type_span: Span
    dims: list[Optional["JExpr"]]
    init: Optional["JArrayInit"]


@dataclass
class JArrayInit(JNode):
    items: list["JExpr"]


JExpr = Union[
    JName, JLiteral, JFieldAccess, JIndex, JCall, JUnary, JBinary, JInstanceOf,
    JTernary, JAssign, JCast, JParen, JNew, JNewArray, JArrayInit,
]


@dataclass
class JDeclarator:
    name: str
    name_span: Span
    extra_dims: int
    init: Optional[JExpr]


@dataclass
class JLocalVar(JNode):
    type_span: Span
    declarators: list[JDeclarator]


@dataclass
class JExprStmt(JNode):
    expr: JExpr


@dataclass
class JBlock(JNode):
    stmts: list["JStmt"]


@dataclass
class JIf(JNode):
    cond: JExpr
    cond_span: Span
    then: "JStmt"
    else_: Optional["JStmt"]


@dataclass
class JWhile(JNode):
    cond: JExpr
    cond_span: Span
    body: "JStmt"


@dataclass
class JDoWhile(JNode):
    body: "JStmt"
    cond: JExpr
    cond_span: Span


@dataclass
class JFor(JNode):
    init_var: Optional[JLocalVar]
    init_exprs: list[JExpr]
    init_span: Optional[Span]
    cond: Optional[JExpr]
    cond_span: Optional[Span]
    updates: list[JExpr]
    body: "JStmt"


@dataclass
class JForEach(JNode):
    var_type_span: Span
    var_name: str
    var_span: Span
    iterable: JExpr
    body: "JStmt"


@dataclass
class JReturn(JNode):
    value: Optional[JExpr]


@dataclass
class JThrow(JNode):
    value: JExpr


@dataclass
class JBreak(JNode):
    label: Optional[str]


@dataclass
class JContinue(JNode):
    label: Optional[str]


@dataclass
class JCatch(JNode):
    type_span: Span
    name: str
    name_span: Span
    body: JBlock


@dataclass
class JTry(JNode):
    body: JBlock
    catches: list[JCatch]
    finally_: Optional[JBlock]


@dataclass
class JCaseGroup(JNode):
    labels: list[Optional[JExpr]]  # None = default
    stmts: list["JStmt"]


@dataclass
class JSwitch(JNode):
    selector: JExpr
    groups: list[JCaseGroup]


@dataclass
class JAssert(JNode):
    cond: JExpr
    message: Optional[JExpr]


@dataclass
class JEmpty(JNode):
    pass


@dataclass
class JLabeled(JNode):
    label: str
    stmt: "JStmt"


JStmt = Union[
    JLocalVar, JExprStmt, JBlock, JIf, JWhile, JDoWhile, JFor, JForEach,
    JReturn, JThrow, JBreak, JContinue, JTry, JSwitch, JAssert, JEmpty, JLabeled,
]


@dataclass
class JParam:
    type_span: Span
    name: str
    name_span: Span


@dataclass
class JMethod(JNode):
    name: str
    name_span: Span
    params: list[JParam]
    body: Optional[JBlock]
    is_ctor: bool = False


@dataclass
class JField(JNode):
    type_span: Span
    declarators: list[JDeclarator]


@dataclass
class JInitBlock(JNode):
    body: JBlock


@dataclass
class JClass(JNode):
    name: str
    name_span: Span
    members: list[Union[JMethod, JField, JInitBlock, "JClass"]]


@dataclass
class JUnit(JNode):
    items: list[Union[JClass, JMethod, JField, JStmt]] = field(default_factory=list)
    import_spans: list[Span] = field(default_factory=list)


@dataclass
class JavaParse:
    ok: bool
    root: Optional[JUnit]
    tokens: list[Token]
    error: Optional[str]


def parse_java(source: str) -> JavaParse:
    """Parse a Java snippet; never raises, reports errors via the result."""
    try:
        tokens = tokenize(source)
    except JavaParseError as exc:
        return JavaParse(False, None, [], str(exc))
    parser = _Parser(tokens)
    try:
        root = parser.parse_unit()
    except JavaParseError as exc:
        return JavaParse(False, None, tokens, str(exc))
    return JavaParse(True, root, tokens, None)


class _Parser:
    def __init__(self, tokens: list[Token]):
        self.toks = tokens
        self.pos = 0

    # --- token plumbing -----------------------------------------------------

    def peek(self, k: int = 0) -> Token:
        idx = min(self.pos + k, len(self.toks) - 1)
        return self.toks[idx]

    def at(self, text: str, k: int = 0) -> bool:
        t = self.peek(k)
        return t.text == text and t.kind in ("op", "keyword")

    def at_kind(self, kind: str, k: int = 0) -> bool:
        return self.peek(k).kind == kind

    def advance(self) -> Token:
        tok = self.toks[self.pos]
        if tok.kind != "eof":
            self.pos += 1
        return tok

    def accept(self, text: str) -> Optional[Token]:
        if self.at(text):
            return self.advance()
        return None

    def expect(self, text: str) -> Token:
        if not self.at(text):
            t = self.peek()
            raise JavaParseError(f"expected {text!r}, found {t.text!r}", t.start)
        return self.advance()

    def expect_ident(self) -> Token:
        if not self.at_kind("ident"):
            t = self.peek()
            raise JavaParseError(f"expected identifier, found {t.text!r}", t.start)
        return self.advance()

    def adjacent(self, k: int = 0) -> bool:
        # True when token k+1 starts exactly where token k ends (no gap).
        return self.peek(k).end == self.peek(k + 1).start

    def error(self, msg: str) -> JavaParseError:
        t = self.peek()
        return JavaParseError(msg, t.start)

    # --- top level ----------------------------------------------------------

    def parse_unit(self) -> JUnit:
        unit = JUnit(span=(0, self.toks[-1].end))
        while self.at("package") or self.at("import"):
            start = self.peek().start
            self.advance()
            if self.at("static"):
                self.advance()
            while not self.at(";") and not self.at_kind("eof"):
                self.advance()
            end_tok = self.expect(";")
            unit.import_spans.append((start, end_tok.end))
        while not self.at_kind("eof"):
            if self.accept(";"):
                continue
            unit.items.append(self.parse_top_item())
        return unit

    def parse_top_item(self):
        mark = self.pos
        if self._looks_like_type_decl():
            return self.parse_class()
        # Bare member (method/field), then bare statement.
        try:
            return self.parse_member()
        except JavaParseError:
            self.pos = mark
        return self.parse_statement()

    def _looks_like_type_decl(self) -> bool:
        k = 0
        while True:
            t = self.peek(k)
            if t.kind == "keyword" and t.text in MODIFIER_KEYWORDS:
                k += 1
                continue
            if t.text == "@" and t.kind == "op":
                # annotation: @Name — conservative single-name skip
                k += 2
                continue
            break
        t = self.peek(k)
        if t.kind == "keyword" and t.text in ("interface", "enum"):
            raise self.error(f"{t.text} declarations are not supported")
        return t.kind == "keyword" and t.text == "class"

    def parse_modifiers(self) -> None:
        while True:
            t = self.peek()
            if t.kind == "keyword" and t.text in MODIFIER_KEYWORDS:
                self.advance()
                continue
            if self.at("@"):
                self.advance()
                self.expect_ident()
                while self.accept("."):
                    self.expect_ident()
                if self.at("("):
                    self._skip_balanced("(", ")")
                continue
            return

    def _skip_balanced(self, open_t: str, close_t: str) -> None:
        depth = 0
        while True:
            t = self.peek()
            if t.kind == "eof":
                raise self.error(f"unbalanced {open_t}")
            if t.text == open_t and t.kind == "op":
                depth += 1
            elif t.text == close_t and t.kind == "op":
                depth -= 1
                if depth == 0:
                    self.advance()
                    return
            self.advance()

    def parse_class(self) -> JClass:
        start = self.peek().start
        self.parse_modifiers()
        self.expect("class")
        name_tok = self.expect_ident()
        if self.at("<"):
            self._skip_type_params()
        if self.accept("extends"):
            self.parse_type()
        if self.accept("implements"):
            self.parse_type()
            while self.accept(","):
                self.parse_type()
        self.expect("{")
        members: list = []
        while not self.at("}"):
            if self.at_kind("eof"):
                raise self.error("unterminated class body")
            if self.accept(";"):
                continue
            members.append(self.parse_member())
        end_tok = self.expect("}")
        return JClass(span=(start, end_tok.end), name=name_tok.text,
                      name_span=(name_tok.start, name_tok.end), members=members)

    def _skip_type_params(self) -> None:
        self.expect("<")
        depth = 1
        while depth:
            t = self.peek()
            if t.kind == "eof":
                raise self.error("unterminated type parameters")
            if t.text == "<":
                depth += 1
            elif t.text == ">":
                depth -= 1
            self.advance()

    def parse_member(self):
        start = self.peek().start
        self.parse_modifiers()
        if self._looks_like_type_decl():
            return self.parse_class()
        if self.at("{"):
            body = self.parse_block()
            return JInitBlock(span=(start, body.span[1]), body=body)
        # Constructor: Identifier '('
        if self.at_kind("ident") and self.at("(", 1):
            name_tok = self.advance()
            params = self.parse_params()
            if self.accept("throws"):
                self.parse_type()
                while self.accept(","):
                    self.parse_type()
            body = self.parse_block()
            return JMethod(span=(start, body.span[1]), name=name_tok.text,
                           name_span=(name_tok.start, name_tok.end),
                           params=params, body=body, is_ctor=True)
        type_span = self.parse_type()
        name_tok = self.expect_ident()
        if self.at("("):
            params = self.parse_params()
            while self.accept("["):
                self.expect("]")
            if self.accept("throws"):
                self.parse_type()
                while self.accept(","):
                    self.parse_type()
            if self.at("{"):
                body: Optional[JBlock] = self.parse_block()
                end = body.span[1]
            else:
                end = self.expect(";").end
                body = None
            return JMethod(span=(start, end), name=name_tok.text,
                           name_span=(name_tok.start, name_tok.end),
                           params=params, body=body)
        declarators = [self.parse_declarator(name_tok)]
        while self.accept(","):
            declarators.append(self.parse_declarator(self.expect_ident()))
        end_tok = self.expect(";")
        return JField(span=(start, end_tok.end), type_span=type_span,
                      declarators=declarators)

    def parse_declarator(self, name_tok: Token) -> JDeclarator:
        dims = 0
        while self.accept("["):
            self.expect("]")
            dims += 1
        init = None
        if self.accept("="):
            init = self.parse_var_init()
        return JDeclarator(name=name_tok.text,
                           name_span=(name_tok.start, name_tok.end),
                           extra_dims=dims, init=init)

    def parse_var_init(self) -> JExpr:
        if self.at("{"):
            return self.parse_array_init()
        return self.parse_expression()

    def parse_array_init(self) -> JArrayInit:
        start = self.expect("{").start
        items: list[JExpr] = []
        while not self.at("}"):
            items.append(self.parse_var_init())
            if not self.accept(","):
                break
        end = self.expect("}").end
        return JArrayInit(span=(start, end), items=items)

    def parse_params(self) -> list[JParam]:
        self.expect("(")
        params: list[JParam] = []
        if not self.at(")"):
            while True:
                while self.at("final") or self.at("@"):
                    self.parse_modifiers()
                type_span = self.parse_type()
                self.accept("...")
                name_tok = self.expect_ident()
                while self.accept("["):
                    self.expect("]")
                params.append(JParam(type_span=type_span, name=name_tok.text,
                                     name_span=(name_tok.start, name_tok.end)))
                if not self.accept(","):
                    break
        self.expect(")")
        return params

    # --- types --------------------------------------------------------------

    def parse_type(self) -> Span:
        start = self.peek().start
        t = self.peek()
        if t.kind == "keyword" and t.text in PRIMITIVE_TYPES:
            self.advance()
        elif t.kind == "ident":
            self.advance()
            if self.at("<"):
                self._parse_type_args()
            while self.at(".") and self.at_kind("ident", 1):
                self.advance()
                self.advance()
                if self.at("<"):
                    self._parse_type_args()
        else:
            raise self.error(f"expected type, found {t.text!r}")
        end = self.toks[self.pos - 1].end
        while self.at("[") and self.at("]", 1):
            self.advance()
            end = self.advance().end
        return (start, end)

    def _parse_type_args(self) -> None:
        self.expect("<")
        if self.accept(">"):  # diamond
            return
        while True:
            if self.accept("?"):
                if self.at("extends") or self.at("super"):
                    self.advance()
                    self.parse_type()
            else:
                self.parse_type()
            if self.accept(","):
                continue
            self.expect(">")
            return

    # --- statements -----------------------------------------------------------

    def parse_block(self) -> JBlock:
        start = self.expect("{").start
        stmts: list[JStmt] = []
        while not self.at("}"):
            if self.at_kind("eof"):
                raise self.error("unterminated block")
            stmts.append(self.parse_statement())
        end = self.expect("}").end
        return JBlock(span=(start, end), stmts=stmts)

    def parse_statement(self) -> JStmt:
        t = self.peek()
        if t.kind == "op":
            if t.text == "{":
                return self.parse_block()
            if t.text == ";":
                tok = self.advance()
                return JEmpty(span=(tok.start, tok.end))
        if t.kind == "keyword":
            handler = {
                "if": self._parse_if, "while": self._parse_while,
                "do": self._parse_do, "for": self._parse_for,
                "return": self._parse_return, "break": self._parse_break,
                "continue": self._parse_continue, "throw": self._parse_throw,
                "try": self._parse_try, "switch": self._parse_switch,
                "assert": self._parse_assert,
            }.get(t.text)
            if handler is not None:
                return handler()
            if t.text == "final" or t.text in PRIMITIVE_TYPES:
                return self._parse_local_var()
            if t.text in ("this", "super", "new"):
                return self._parse_expr_statement()
            raise self.error(f"unsupported statement keyword {t.text!r}")
        # Labeled statement: Identifier ':' Statement
        if t.kind == "ident" and self.at(":", 1) and not self.at("::", 1):
            label = self.advance()
            self.expect(":")
            inner = self.parse_statement()
            return JLabeled(span=(label.start, inner.span[1]),
                            label=label.text, stmt=inner)
        # Local declaration vs expression statement: try declaration first.
        mark = self.pos
        try:
            return self._parse_local_var()
        except JavaParseError:
            self.pos = mark
        return self._parse_expr_statement()

    def _parse_local_var(self) -> JLocalVar:
        start = self.peek().start
        while self.at("final") or self.at("@"):
            self.parse_modifiers()
        type_span = self.parse_type()
        name_tok = self.expect_ident()
        declarators = [self.parse_declarator(name_tok)]
        while self.accept(","):
            declarators.append(self.parse_declarator(self.expect_ident()))
        end = self.expect(";").end
        return JLocalVar(span=(start, end), type_span=type_span,
                         declarators=declarators)

    def _parse_expr_statement(self) -> JExprStmt:
        start = self.peek().start
        expr = self.parse_expression()
        if not isinstance(expr, (JAssign, JCall, JNew)) and not (
            isinstance(expr, JUnary) and expr.op in ("++", "--")
        ):
            raise self.error("not a statement expression")
        end = self.expect(";").end
        return JExprStmt(span=(start, end), expr=expr)

    def _parse_paren_cond(self) -> tuple[JExpr, Span]:
        self.expect("(")
        cond = self.parse_expression()
        self.expect(")")
        return cond, cond.span

    def _parse_if(self) -> JIf:
        start = self.expect("if").start
        cond, cond_span = self._parse_paren_cond()
        then = self.parse_statement()
        else_ = None
        end = then.span[1]
        if self.accept("else"):
            else_ = self.parse_statement()
            end = else_.span[1]
        return JIf(span=(start, end), cond=cond, cond_span=cond_span,
                   then=then, else_=else_)

    def _parse_while(self) -> JWhile:
        start = self.expect("while").start
        cond, cond_span = self._parse_paren_cond()
        body = self.parse_statement()
        return JWhile(span=(start, body.span[1]), cond=cond,
                      cond_span=cond_span, body=body)

    def _parse_do(self) -> JDoWhile:
        start = self.expect("do").start
        body = self.parse_statement()
        self.expect("while")
        cond, cond_span = self._parse_paren_cond()
        end = self.expect(";").end
        return JDoWhile(span=(start, end), body=body, cond=cond,
                        cond_span=cond_span)

    def _parse_for(self):
        start = self.expect("for").start
        self.expect("(")
        # for-each: [final] Type Ident ':' Expr
        mark = self.pos
        try:
            while self.at("final"):
                self.advance()
            var_type = self.parse_type()
            name_tok = self.expect_ident()
            if self.at(":"):
                self.advance()
                iterable = self.parse_expression()
                self.expect(")")
                body = self.parse_statement()
                return JForEach(span=(start, body.span[1]), var_type_span=var_type,
                                var_name=name_tok.text,
                                var_span=(name_tok.start, name_tok.end),
                                iterable=iterable, body=body)
            raise self.error("not a for-each")
        except JavaParseError:
            self.pos = mark
        init_var: Optional[JLocalVar] = None
        init_exprs: list[JExpr] = []
        init_span: Optional[Span] = None
        if not self.at(";"):
            init_start = self.peek().start
            mark = self.pos
            try:
                while self.at("final"):
                    self.advance()
                type_span = self.parse_type()
                name_tok = self.expect_ident()
                declarators = [self.parse_declarator(name_tok)]
                while self.accept(","):
                    declarators.append(self.parse_declarator(self.expect_ident()))
                if not self.at(";"):
                    raise self.error("not a for-init declaration")
                init_end = self.toks[self.pos - 1].end
                init_var = JLocalVar(span=(init_start, init_end),
                                     type_span=type_span, declarators=declarators)
            except JavaParseError:
                self.pos = mark
                init_exprs.append(self.parse_expression())
                while self.accept(","):
                    init_exprs.append(self.parse_expression())
            init_span = (init_start, self.toks[self.pos - 1].end)
        self.expect(";")
        cond = None
        cond_span = None
        if not self.at(";"):
            c_start = self.peek().start
            cond = self.parse_expression()
            cond_span = (c_start, self.toks[self.pos - 1].end)
        self.expect(";")
        updates: list[JExpr] = []
        if not self.at(")"):
            updates.append(self.parse_expression())
            while self.accept(","):
                updates.append(self.parse_expression())
        self.expect(")")
        body = self.parse_statement()
        return JFor(span=(start, body.span[1]), init_var=init_var,
                    init_exprs=init_exprs, init_span=init_span, cond=cond,
                    cond_span=cond_span, updates=updates, body=body)

    def _parse_return(self) -> JReturn:
        start = self.expect("return").start
        value = None
        if not self.at(";"):
            value = self.parse_expression()
        end = self.expect(";").end
        return JReturn(span=(start, end), value=value)

    def _parse_break(self) -> JBreak:
        start = self.expect("break").start
        label = None
        if self.at_kind("ident"):
            label = self.advance().text
        end = self.expect(";").end
        return JBreak(span=(start, end), label=label)

    def _parse_continue(self) -> JContinue:
        start = self.expect("continue").start
        label = None
        if self.at_kind("ident"):
            label = self.advance().text
        end = self.expect(";").end
        return JContinue(span=(start, end), label=label)

    def _parse_throw(self) -> JThrow:
        start = self.expect("throw").start
        value = self.parse_expression()
        end = self.expect(";").end
        return JThrow(span=(start, end), value=value)

    def _parse_try(self) -> JTry:
        start = self.expect("try").start
        if self.at("("):
            raise self.error("try-with-resources is not supported")
        body = self.parse_block()
        catches: list[JCatch] = []
        end = body.span[1]
        while self.at("catch"):
            c_start = self.advance().start
            self.expect("(")
            type_span = self.parse_type()
            while self.accept("|"):
                self.parse_type()
            name_tok = self.expect_ident()
            self.expect(")")
            c_body = self.parse_block()
            end = c_body.span[1]
            catches.append(JCatch(span=(c_start, end), type_span=type_span,
                                  name=name_tok.text,
                                  name_span=(name_tok.start, name_tok.end),
                                  body=c_body))
        finally_ = None
        if self.accept("finally"):
            finally_ = self.parse_block()
            end = finally_.span[1]
        if not catches and finally_ is None:
            raise self.error("try without catch or finally")
        return JTry(span=(start, end), body=body, catches=catches,
                    finally_=finally_)

    def _parse_switch(self) -> JSwitch:
        start = self.expect("switch").start
        self.expect("(")
        selector = self.parse_expression()
        self.expect(")")
        self.expect("{")
        groups: list[JCaseGroup] = []
        while not self.at("}"):
            g_start = self.peek().start
            labels: list[Optional[JExpr]] = []
            while self.at("case") or self.at("default"):
                if self.accept("case"):
                    labels.append(self.parse_expression())
                else:
                    self.advance()
                    labels.append(None)
                if self.at("->"):
                    raise self.error("arrow switch is not supported")
                self.expect(":")
            if not labels:
                raise self.error("expected case or default label")
            stmts: list[JStmt] = []
            while not self.at("case") and not self.at("default") and not self.at("}"):
                stmts.append(self.parse_statement())
            g_end = stmts[-1].span[1] if stmts else self.toks[self.pos - 1].end
            groups.append(JCaseGroup(span=(g_start, g_end), labels=labels,
                                     stmts=stmts))
        end = self.expect("}").end
        return JSwitch(span=(start, end), selector=selector, groups=groups)

    def _parse_assert(self) -> JAssert:
        start = self.expect("assert").start
        cond = self.parse_expression()
        message = None
        if self.accept(":"):
            message = self.parse_expression()
        end = self.expect(";").end
        return JAssert(span=(start, end), cond=cond, message=message)

    # --- expressions ----------------------------------------------------------

    def parse_expression(self) -> JExpr:
        return self.parse_assignment()

    def parse_assignment(self) -> JExpr:
        left = self.parse_ternary()
        op = self._peek_assign_op()
        if op is not None:
            if not isinstance(left, (JName, JFieldAccess, JIndex)):
                raise self.error("invalid assignment target")
            self._consume_assign_op(op)
            value = self.parse_assignment()
            return JAssign(span=(left.span[0], value.span[1]), target=left,
                           op=op, value=value)
        return left

    def _peek_assign_op(self) -> Optional[str]:
        t = self.peek()
        if t.kind != "op":
            return None
        if t.text == "=":
            return "="
        if t.text in COMPOUND_ASSIGN_OPS:
            return t.text
        # '>' family shift-assigns arrive as adjacent single tokens:
        #   >>=  is '>' '>='      >>>= is '>' '>' '>='
        if t.text == ">" and self.peek(1).text == ">=" and self.adjacent(0):
            return ">>="
        if (t.text == ">" and self.peek(1).text == ">" and self.peek(2).text == ">="
                and self.adjacent(0) and self.adjacent(1)):
            return ">>>="
        return None

    def _consume_assign_op(self, op: str) -> None:
        if op == ">>=":
            self.advance()
            self.advance()
        elif op == ">>>=":
            self.advance()
            self.advance()
            self.advance()
        else:
            self.advance()

    def parse_ternary(self) -> JExpr:
        cond = self.parse_or()
        if self.accept("?"):
            then = self.parse_expression()
            self.expect(":")
            other = self.parse_ternary()
            return JTernary(span=(cond.span[0], other.span[1]), cond=cond,
                            then=then, other=other)
        return cond

    def _binary_level(self, sub, ops: tuple[str, ...]) -> JExpr:
        left = sub()
        while True:
            t = self.peek()
            if t.kind == "op" and t.text in ops:
                # Guard: '&' is also part of '&&' at a different level, the
                # lexer already maximal-munches so plain membership is safe.
                self.advance()
                right = sub()
                left = JBinary(span=(left.span[0], right.span[1]), left=left,
                               op=t.text, right=right)
                continue
            return left

    def parse_or(self) -> JExpr:
        return self._binary_level(self.parse_and, ("||",))

    def parse_and(self) -> JExpr:
        return self._binary_level(self.parse_bitor, ("&&",))

    def parse_bitor(self) -> JExpr:
        return self._binary_level(self.parse_bitxor, ("|",))

    def parse_bitxor(self) -> JExpr:
        return self._binary_level(self.parse_bitand, ("^",))

    def parse_bitand(self) -> JExpr:
        return self._binary_level(self.parse_equality, ("&",))

    def parse_equality(self) -> JExpr:
        return self._binary_level(self.parse_relational, ("==", "!="))

    def parse_relational(self) -> JExpr:
        left = self.parse_shift()
        while True:
            t = self.peek()
            if t.kind == "keyword" and t.text == "instanceof":
                self.advance()
                type_span = self.parse_type()
                left = JInstanceOf(span=(left.span[0], type_span[1]),
                                   value=left, type_span=type_span)
                continue
            if t.kind == "op" and t.text in ("<", "<=", ">="):
                self.advance()
                right = self.parse_shift()
                left = JBinary(span=(left.span[0], right.span[1]), left=left,
                               op=t.text, right=right)
                continue
            if t.kind == "op" and t.text == ">" and not (
                self.peek(1).text in (">", ">=") and self.adjacent(0)
            ):
                self.advance()
                right = self.parse_shift()
                left = JBinary(span=(left.span[0], right.span[1]), left=left,
                               op=">", right=right)
                continue
            return left

    def parse_shift(self) -> JExpr:
        left = self.parse_additive()
        while True:
            t = self.peek()
            if t.kind == "op" and t.text == "<<":
                self.advance()
                right = self.parse_additive()
                left = JBinary(span=(left.span[0], right.span[1]), left=left,
                               op="<<", right=right)
                continue
            if (t.kind == "op" and t.text == ">" and self.peek(1).text == ">"
                    and self.adjacent(0)):
                # '>=' after '>' '>' means '>>>=', handled at assignment level;
                # '>=' after a single '>' means '>>=' (also assignment).
                if self.peek(2).text == ">" and self.adjacent(1):
                    self.advance(); self.advance(); self.advance()
                    op = ">>>"
                elif self.peek(2).text == ">=" and self.adjacent(1):
                    return left  # >>>=
                else:
                    self.advance(); self.advance()
                    op = ">>"
                right = self.parse_additive()
                left = JBinary(span=(left.span[0], right.span[1]), left=left,
                               op=op, right=right)
                continue
            return left

    def parse_additive(self) -> JExpr:
        return self._binary_level(self.parse_multiplicative, ("+", "-"))

    def parse_multiplicative(self) -> JExpr:
        return self._binary_level(self.parse_unary, ("*", "/", "%"))

    def parse_unary(self) -> JExpr:
        t = self.peek()
        if t.kind == "op" and t.text in ("+", "-", "!", "~", "++", "--"):
            self.advance()
            operand = self.parse_unary()
            return JUnary(span=(t.start, operand.span[1]), op=t.text,
                          operand=operand, postfix=False)
        if t.kind == "op" and t.text == "(":
            cast = self._try_cast()
            if cast is not None:
                return cast
        return self.parse_postfix()

    def _try_cast(self) -> Optional[JCast]:
        mark = self.pos
        start = self.expect("(").start
        t = self.peek()
        try:
            if t.kind == "keyword" and t.text in PRIMITIVE_TYPES:
                type_span = self.parse_type()
                self.expect(")")
                value = self.parse_unary()
                return JCast(span=(start, value.span[1]), type_span=type_span,
                             value=value)
            if t.kind == "ident":
                type_span = self.parse_type()
                if self.at(")"):
                    nxt = self.peek(1)
                    # (Name) X is a cast only when X unambiguously starts a
                    # non-operator expression; otherwise it is parenthesized.
                    if nxt.kind in ("ident", "int", "long", "float", "double",
                                    "char", "string", "bool", "null") or (
                        nxt.kind == "op" and nxt.text in ("(", "!", "~")
                    ) or (nxt.kind == "keyword" and nxt.text in ("new", "this")):
                        self.advance()
                        value = self.parse_unary()
                        return JCast(span=(start, value.span[1]),
                                     type_span=type_span, value=value)
            raise self.error("not a cast")
        except JavaParseError:
            self.pos = mark
            return None

    def parse_postfix(self) -> JExpr:
        expr = self.parse_primary()
        while True:
            t = self.peek()
            if t.kind == "op" and t.text == ".":
                if not self.at_kind("ident", 1):
                    nxt = self.peek(1)
                    if nxt.kind == "keyword" and nxt.text in ("this", "class"):
                        raise self.error(f".{nxt.text} is not supported")
                    raise self.error("expected member name after '.'")
                self.advance()
                name_tok = self.advance()
                expr = JFieldAccess(span=(expr.span[0], name_tok.end), obj=expr,
                                    name=name_tok.text,
                                    name_span=(name_tok.start, name_tok.end))
                continue
            if t.kind == "op" and t.text == "(":
                args = self.parse_args()
                expr = JCall(span=(expr.span[0], self.toks[self.pos - 1].end),
                             callee=expr, args=args)
                continue
            if t.kind == "op" and t.text == "[":
                self.advance()
                index = self.parse_expression()
                end = self.expect("]").end
                expr = JIndex(span=(expr.span[0], end), obj=expr, index=index)
                continue
            if t.kind == "op" and t.text in ("++", "--"):
                self.advance()
                expr = JUnary(span=(expr.span[0], t.end), op=t.text,
                              operand=expr, postfix=True)
                continue
            if t.kind == "op" and t.text == "::":
                raise self.error("method references are not supported")
            return expr

    def parse_args(self) -> list[JExpr]:
        self.expect("(")
        args: list[JExpr] = []
        if not self.at(")"):
            while True:
                args.append(self.parse_expression())
                if not self.accept(","):
                    break
        self.expect(")")
        return args

    def parse_primary(self) -> JExpr:
        t = self.peek()
        if t.kind in ("int", "long", "float", "double", "char", "string",
                      "bool", "null"):
            self.advance()
            return JLiteral(span=(t.start, t.end), kind=t.kind, text=t.text)
        if t.kind == "ident":
            if self.at("->", 1):
                raise self.error("lambdas are not supported")
            self.advance()
            return JName(span=(t.start, t.end), ident=t.text)
        if t.kind == "keyword" and t.text in ("this", "super"):
            self.advance()
            return JName(span=(t.start, t.end), ident=t.text)
        if t.kind == "op" and t.text == "(":
            start = self.advance().start
            inner = self.parse_expression()
            end = self.expect(")").end
            if self.at("->"):
                raise self.error("lambdas are not supported")
            return JParen(span=(start, end), inner=inner)
        if t.kind == "keyword" and t.text == "new":
            return self._parse_new()
        raise self.error(f"unexpected token {t.text!r} in expression")

    def _parse_new(self) -> JExpr:
        start = self.expect("new").start
        type_span = self.parse_type()
        if self.at("("):
            args = self.parse_args()
            end = self.toks[self.pos - 1].end
            if self.at("{"):
                raise self.error("anonymous classes are not supported")
            return JNew(span=(start, end), type_span=type_span, args=args)
        if self.at("["):
            dims: list[Optional[JExpr]] = []
            while self.accept("["):
                if self.at("]"):
                    dims.append(None)
                else:
                    dims.append(self.parse_expression())
                self.expect("]")
            init = None
            end = self.toks[self.pos - 1].end
            if self.at("{"):
                init = self.parse_array_init()
                end = init.span[1]
            return JNewArray(span=(start, end), type_span=type_span, dims=dims,
                             init=init)
        if self.at("{"):
            # `new int[] {1, 2}` — parse_type already folded the [] pair.
            init = self.parse_array_init()
            return JNewArray(span=(start, init.span[1]), type_span=type_span,
                             dims=[], init=init)
        raise self.error("expected constructor arguments or array dimensions")


# ---------------------------------------------------------------------------
# Generic traversal
# ---------------------------------------------------------------------------

def walk(node):
    """Yield node and every descendant JNode/JParam/JDeclarator, pre-order."""
    stack = [node]
    while stack:
        cur = stack.pop()
        if cur is None:
            continue
        if isinstance(cur, list):
            stack.extend(reversed(cur))
            continue
        if not isinstance(cur, (JNode, JParam, JDeclarator)):
            continue
        yield cur
        for f in cur.__dataclass_fields__:
            if f in ("span", "type_span", "cond_span", "name_span", "var_span",
                     "init_span", "var_type_span", "import_spans"):
                continue
            val = getattr(cur, f)
            if isinstance(val, (JNode, JParam, JDeclarator, list)):
                stack.append(val)
