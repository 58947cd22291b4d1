"""Abstract syntax for the while-language, its assertions and annotated programs.

Also holds the concrete grammar: a tokenizer, recursive-descent parsers for
programs, assertions and annotated programs, and the matching printers.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterator, Sequence, Union

IDENT_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")
KEYWORDS = frozenset({"while", "do", "done", "true", "false"})


# -- arithmetic and boolean expressions -------------------------------------


@dataclass(frozen=True, slots=True)
class Num:
    value: int


@dataclass(frozen=True, slots=True)
class Var:
    name: str


@dataclass(frozen=True, slots=True)
class Plus:
    left: ArithExpr
    right: ArithExpr


ArithExpr = Union[Num, Var, Plus]


@dataclass(frozen=True, slots=True)
class Lt:
    left: ArithExpr
    right: ArithExpr


BoolExpr = Lt


# -- instructions ------------------------------------------------------------


@dataclass(frozen=True, slots=True)
class Assign:
    var: str
    rhs: ArithExpr


@dataclass(frozen=True, slots=True)
class Seq:
    first: Instr
    second: Instr


@dataclass(frozen=True, slots=True)
class While:
    test: BoolExpr
    body: Instr


Instr = Union[Assign, Seq, While]


# -- assertions --------------------------------------------------------------


@dataclass(frozen=True, slots=True)
class Pred:
    name: str
    args: tuple[ArithExpr, ...]

    def __init__(self, name: str, args: Sequence[ArithExpr]):
        object.__setattr__(self, "name", name)
        object.__setattr__(self, "args", tuple(args))


@dataclass(frozen=True, slots=True)
class BoolHolds:
    test: BoolExpr


@dataclass(frozen=True, slots=True)
class Conj:
    a1: Assertion
    a2: Assertion


@dataclass(frozen=True, slots=True)
class Not:
    a: Assertion


@dataclass(frozen=True, slots=True)
class TrueA:
    pass


@dataclass(frozen=True, slots=True)
class FalseA:
    pass


Assertion = Union[Pred, BoolHolds, Conj, Not, TrueA, FalseA]

TRUE = TrueA()
FALSE = FalseA()


def leq(left: ArithExpr, right: ArithExpr) -> Pred:
    return Pred("leq", (left, right))


# -- annotated instructions and conditions ----------------------------------


@dataclass(frozen=True, slots=True)
class PreAnn:
    a: Assertion
    i: AnnInstr


@dataclass(frozen=True, slots=True)
class AAssign:
    var: str
    rhs: ArithExpr


@dataclass(frozen=True, slots=True)
class ASeq:
    first: AnnInstr
    second: AnnInstr


@dataclass(frozen=True, slots=True)
class AWhile:
    test: BoolExpr
    inv: Assertion
    body: AnnInstr


AnnInstr = Union[PreAnn, AAssign, ASeq, AWhile]


@dataclass(frozen=True, slots=True)
class Imp:
    hyp: Assertion
    concl: Assertion


Condition = Imp


def is_identifier(name: str) -> bool:
    return bool(IDENT_RE.match(name)) and name not in KEYWORDS


def cleanup(i: AnnInstr) -> Instr:
    """Erase every annotation, returning the underlying instruction."""
    match i:
        case PreAnn(_, inner):
            return cleanup(inner)
        case AAssign(x, e):
            return Assign(x, e)
        case ASeq(i1, i2):
            return Seq(cleanup(i1), cleanup(i2))
        case AWhile(b, _, body):
            return While(b, cleanup(body))
    raise TypeError(f"not an annotated instruction: {i!r}")


# -- free variables ----------------------------------------------------------


def arith_vars(e: ArithExpr) -> Iterator[str]:
    match e:
        case Var(x):
            yield x
        case Plus(l, r):
            yield from arith_vars(l)
            yield from arith_vars(r)


def assert_vars(a: Assertion) -> Iterator[str]:
    match a:
        case Pred(_, args):
            for e in args:
                yield from arith_vars(e)
        case BoolHolds(Lt(l, r)):
            yield from arith_vars(l)
            yield from arith_vars(r)
        case Conj(a1, a2):
            yield from assert_vars(a1)
            yield from assert_vars(a2)
        case Not(inner):
            yield from assert_vars(inner)


def instr_vars(i: Instr) -> Iterator[str]:
    match i:
        case Assign(x, e):
            yield x
            yield from arith_vars(e)
        case Seq(i1, i2):
            yield from instr_vars(i1)
            yield from instr_vars(i2)
        case While(Lt(l, r), body):
            yield from arith_vars(l)
            yield from arith_vars(r)
            yield from instr_vars(body)


def condition_vars(c: Condition) -> set[str]:
    return set(assert_vars(c.hyp)) | set(assert_vars(c.concl))


# -- tokenizer ---------------------------------------------------------------


class ParseError(ValueError):
    def __init__(self, message: str, line: int, column: int, expected: Sequence[str] = ()):
        self.line = line
        self.column = column
        self.expected = tuple(sorted(set(expected)))
        text = f"{line}:{column}: {message}"
        if self.expected:
            text += f" (expected one of: {', '.join(self.expected)})"
        super().__init__(text)


@dataclass(frozen=True, slots=True)
class Token:
    kind: str  # INT, IDENT, a keyword, a symbol, or EOF
    text: str
    line: int
    column: int


_TOKEN_RE = re.compile(
    r"""
    (?P<ws>[ \t\r\n]+)
  | (?P<comment>//[^\n]*)
  | (?P<INT>-?[0-9]+)
  | (?P<IDENT>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<sym>:=|<=|==>|/\\|[;<+(){}~,])
    """,
    re.VERBOSE,
)


def tokenize(text: str) -> list[Token]:
    tokens = []
    pos = 0
    line, line_start = 1, 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", line, pos - line_start + 1)
        kind = m.lastgroup
        lexeme = m.group()
        if kind == "IDENT" and lexeme in KEYWORDS:
            kind = lexeme
        elif kind == "sym":
            kind = lexeme
        if kind not in ("ws", "comment"):
            tokens.append(Token(kind, lexeme, line, pos - line_start + 1))
        newlines = lexeme.count("\n")
        if newlines:
            line += newlines
            line_start = pos + lexeme.rindex("\n") + 1
        pos = m.end()
    tokens.append(Token("EOF", "", line, pos - line_start + 1))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.tokens = tokenize(text)
        self.pos = 0

    @property
    def tok(self) -> Token:
        return self.tokens[self.pos]

    def at(self, *kinds: str) -> bool:
        return self.tok.kind in kinds

    def fail(self, expected: Sequence[str]):
        t = self.tok
        found = "end of input" if t.kind == "EOF" else repr(t.text)
        raise ParseError(f"unexpected {found}", t.line, t.column, expected)

    def expect(self, kind: str) -> Token:
        if self.tok.kind != kind:
            self.fail([kind])
        t = self.tok
        self.pos += 1
        return t

    def finish(self):
        if not self.at("EOF"):
            self.fail(["EOF"])

    # expressions

    def aexpr(self) -> ArithExpr:
        e = self.term()
        while self.at("+"):
            self.pos += 1
            e = Plus(e, self.term())
        return e

    def term(self) -> ArithExpr:
        t = self.tok
        if t.kind == "INT":
            self.pos += 1
            return Num(int(t.text))
        if t.kind == "IDENT":
            self.pos += 1
            return Var(t.text)
        if t.kind == "(":
            self.pos += 1
            e = self.aexpr()
            self.expect(")")
            return e
        self.fail(["INT", "IDENT", "("])

    def bexpr(self) -> BoolExpr:
        left = self.aexpr()
        if not self.at("<"):
            self.fail(["+", "<"])
        self.pos += 1
        return Lt(left, self.aexpr())

    # programs

    def instr(self) -> Instr:
        first = self.stmt()
        if self.at(";"):
            self.pos += 1
            return Seq(first, self.instr())
        return first

    def stmt(self) -> Instr:
        if self.at("IDENT"):
            x = self.expect("IDENT").text
            self.expect(":=")
            return Assign(x, self.aexpr())
        if self.at("while"):
            self.pos += 1
            b = self.bexpr()
            self.expect("do")
            body = self.instr()
            self.expect("done")
            return While(b, body)
        if self.at("("):
            # grouping, only needed for left-nested sequences
            self.pos += 1
            i = self.instr()
            self.expect(")")
            return i
        self.fail(["IDENT", "while", "("])

    # assertions

    def assertion(self) -> Assertion:
        a = self.atom()
        if self.at("/\\"):
            self.pos += 1
            return Conj(a, self.assertion())
        return a

    def atom(self) -> Assertion:
        t = self.tok
        if t.kind == "true":
            self.pos += 1
            return TRUE
        if t.kind == "false":
            self.pos += 1
            return FALSE
        if t.kind == "~":
            self.pos += 1
            self.expect("(")
            a = self.assertion()
            self.expect(")")
            return Not(a)
        if t.kind == "IDENT" and self.tokens[self.pos + 1].kind == "(":
            self.pos += 2
            args = []
            if not self.at(")"):
                args.append(self.aexpr())
                while self.at(","):
                    self.pos += 1
                    args.append(self.aexpr())
            self.expect(")")
            return Pred(t.text, args)
        if t.kind == "(":
            # either a parenthesised assertion or a comparison whose left
            # operand starts with a parenthesis
            saved = self.pos
            try:
                return self.comparison()
            except ParseError:
                self.pos = saved + 1
                a = self.assertion()
                self.expect(")")
                return a
        if t.kind in ("INT", "IDENT"):
            return self.comparison()
        self.fail(["true", "false", "~", "(", "INT", "IDENT"])

    def comparison(self) -> Assertion:
        left = self.aexpr()
        if self.at("<"):
            self.pos += 1
            return BoolHolds(Lt(left, self.aexpr()))
        if self.at("<="):
            self.pos += 1
            return leq(left, self.aexpr())
        self.fail(["+", "<", "<="])

    # annotated programs

    def ann_instr(self) -> AnnInstr:
        first = self.ann_stmt()
        if self.at(";"):
            self.pos += 1
            return ASeq(first, self.ann_instr())
        return first

    def ann_stmt(self) -> AnnInstr:
        if self.at("{"):
            self.pos += 1
            a = self.assertion()
            self.expect("}")
            return PreAnn(a, self.ann_stmt())
        if self.at("IDENT"):
            x = self.expect("IDENT").text
            self.expect(":=")
            return AAssign(x, self.aexpr())
        if self.at("while"):
            self.pos += 1
            b = self.bexpr()
            self.expect("do")
            self.expect("{")
            inv = self.assertion()
            self.expect("}")
            body = self.ann_instr()
            self.expect("done")
            return AWhile(b, inv, body)
        if self.at("("):
            self.pos += 1
            i = self.ann_instr()
            self.expect(")")
            return i
        self.fail(["{", "IDENT", "while", "("])


def parse_instr(text: str) -> Instr:
    p = _Parser(text)
    i = p.instr()
    p.finish()
    return i


def parse_aexpr(text: str) -> ArithExpr:
    p = _Parser(text)
    e = p.aexpr()
    p.finish()
    return e


def parse_bexpr(text: str) -> BoolExpr:
    p = _Parser(text)
    b = p.bexpr()
    p.finish()
    return b


def parse_assertion(text: str) -> Assertion:
    p = _Parser(text)
    a = p.assertion()
    p.finish()
    return a


def parse_ann_instr(text: str) -> AnnInstr:
    p = _Parser(text)
    i = p.ann_instr()
    p.finish()
    return i


# -- printers ----------------------------------------------------------------


def render_aexpr(e: ArithExpr) -> str:
    match e:
        case Num(n):
            return str(n)
        case Var(x):
            return x
        case Plus(l, r):
            right = render_aexpr(r)
            if isinstance(r, Plus):
                right = f"({right})"
            return f"{render_aexpr(l)} + {right}"
    raise TypeError(f"not an arithmetic expression: {e!r}")


def render_bexpr(b: BoolExpr) -> str:
    return f"{render_aexpr(b.left)} < {render_aexpr(b.right)}"


def render_assertion(a: Assertion) -> str:
    """Print an assertion; nested conjunctions are flattened into one chain."""
    match a:
        case Pred("leq", (l, r)):
            return f"{render_aexpr(l)} <= {render_aexpr(r)}"
        case Pred(name, args):
            return f"{name}({', '.join(render_aexpr(e) for e in args)})"
        case BoolHolds(b):
            return render_bexpr(b)
        case Conj(a1, a2):
            return f"{render_assertion(a1)} /\\ {render_assertion(a2)}"
        case Not(inner):
            return f"~({render_assertion(inner)})"
        case TrueA():
            return "true"
        case FalseA():
            return "false"
    raise TypeError(f"not an assertion: {a!r}")


def render_instr(i: Instr) -> str:
    match i:
        case Assign(x, e):
            return f"{x} := {render_aexpr(e)}"
        case Seq(i1, i2):
            first = render_instr(i1)
            if isinstance(i1, Seq):
                first = f"({first})"
            return f"{first}; {render_instr(i2)}"
        case While(b, body):
            return f"while {render_bexpr(b)} do {render_instr(body)} done"
    raise TypeError(f"not an instruction: {i!r}")


def render_ann_instr(i: AnnInstr) -> str:
    """Single-line rendering: ``{ A } i`` for annotations, invariants after ``do``."""
    match i:
        case PreAnn(a, inner):
            return f"{{ {render_assertion(a)} }} {render_ann_instr(inner)}"
        case AAssign(x, e):
            return f"{x} := {render_aexpr(e)}"
        case ASeq(i1, i2):
            first = render_ann_instr(i1)
            if isinstance(i1, ASeq):
                first = f"({first})"
            return f"{first}; {render_ann_instr(i2)}"
        case AWhile(b, inv, body):
            return (f"while {render_bexpr(b)} do {{ {render_assertion(inv)} }} "
                    f"{render_ann_instr(body)} done")
    raise TypeError(f"not an annotated instruction: {i!r}")


def layout_ann_instr(i: AnnInstr, indent: str = "  ") -> str:
    """Multi-line rendering for reports; re-parses like render_ann_instr."""
    return "\n".join(_layout(i, 0, indent))


def _layout(i: AnnInstr, depth: int, indent: str) -> list[str]:
    pad = indent * depth
    match i:
        case PreAnn(a, inner):
            return [f"{pad}{{ {render_assertion(a)} }}"] + _layout(inner, depth, indent)
        case AAssign(x, e):
            return [f"{pad}{x} := {render_aexpr(e)}"]
        case ASeq(i1, i2):
            first = _layout(i1, depth, indent)
            if isinstance(i1, ASeq):
                first = [f"{pad}("] + _layout(i1, depth + 1, indent) + [f"{pad})"]
            first[-1] += ";"
            return first + _layout(i2, depth, indent)
        case AWhile(b, inv, body):
            return ([f"{pad}while {render_bexpr(b)} do",
                     f"{pad}{indent}{{ {render_assertion(inv)} }}"]
                    + _layout(body, depth + 1, indent)
                    + [f"{pad}done"])
    raise TypeError(f"not an annotated instruction: {i!r}")


def flatten_conj(a: Assertion) -> Assertion:
    """Re-associate conjunction chains to the right (the parser's shape)."""
    parts = list(_conjuncts(a))
    if len(parts) == 1:
        return _flatten_inside(parts[0])
    out = _flatten_inside(parts[-1])
    for p in reversed(parts[:-1]):
        out = Conj(_flatten_inside(p), out)
    return out


def _conjuncts(a: Assertion) -> Iterator[Assertion]:
    if isinstance(a, Conj):
        yield from _conjuncts(a.a1)
        yield from _conjuncts(a.a2)
    else:
        yield a


def _flatten_inside(a: Assertion) -> Assertion:
    if isinstance(a, Not):
        return Not(flatten_conj(a.a))
    return a


def flatten_ann_conj(i: AnnInstr) -> AnnInstr:
    match i:
        case PreAnn(a, inner):
            return PreAnn(flatten_conj(a), flatten_ann_conj(inner))
        case AAssign():
            return i
        case ASeq(i1, i2):
            return ASeq(flatten_ann_conj(i1), flatten_ann_conj(i2))
        case AWhile(b, inv, body):
            return AWhile(b, flatten_conj(inv), flatten_ann_conj(body))
    raise TypeError(f"not an annotated instruction: {i!r}")
