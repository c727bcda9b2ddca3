"""A small language for claims about operator ranges.

Grammar (whitespace insignificant)::

    claim  := "vars" idlist ";" ["assume" predlist ";"] "show" pred [";"]
    pred   := "ep(" expr ")" | "raneq(" rng "," rng ")" | "ransub(" rng "," rng ")"
    rng    := "ran(" expr ")" | rng "+" rng
    expr   := term | expr "+" term
    term   := factor | term "*" factor
    factor := ident | "I" | "0" | scalar "*" factor | factor "'" | "(" expr ")"
    scalar := digits ["/" digits] | "[" entry "]"

``'`` is the adjoint and ``*`` is composition.  A scalar literal other than
``0`` must be followed by ``* factor`` and denotes a scalar multiple; a
bracketed scalar takes any entry string (``[-1/2+i]``).

Example::

    vars T,S; assume ep(T), ep(S); show raneq(ran(T+S), ran(T)+ran(S))
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Dict, List, Mapping, Optional, Tuple, Union

from .operators import (
    COFINITE,
    CarrierError,
    FINITE,
    Operator,
    Subspace,
    ep_check,
    op_add,
    op_adjoint,
    op_mul,
    op_scalar_mul,
    range_of,
    subspace_eq,
    subspace_leq,
    subspace_sum,
)
from .scalars import GaussianRational, ScalarSyntaxError, format_scalar, parse_scalar

KEYWORDS = {"vars", "assume", "show", "ep", "raneq", "ransub", "ran", "I"}


class ClaimSyntaxError(ValueError):
    def __init__(self, message: str, line: int, col: int):
        super().__init__(f"{message} (line {line}, column {col})")
        self.message = message
        self.line = line
        self.col = col


class UnknownVariableError(ClaimSyntaxError):
    pass


# AST -------------------------------------------------------------------------


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Identity:
    pass


@dataclass(frozen=True)
class Zero:
    pass


@dataclass(frozen=True)
class Adjoint:
    arg: "Expr"


@dataclass(frozen=True)
class Add:
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Compose:
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Scale:
    coef: GaussianRational
    arg: "Expr"


Expr = Union[Var, Identity, Zero, Adjoint, Add, Compose, Scale]


@dataclass(frozen=True)
class Ran:
    expr: Expr


@dataclass(frozen=True)
class RanSum:
    left: "Rng"
    right: "Rng"


Rng = Union[Ran, RanSum]


@dataclass(frozen=True)
class Ep:
    expr: Expr


@dataclass(frozen=True)
class RanEq:
    left: Rng
    right: Rng


@dataclass(frozen=True)
class RanSub:
    left: Rng
    right: Rng


Pred = Union[Ep, RanEq, RanSub]


@dataclass(frozen=True)
class Claim:
    variables: Tuple[str, ...]
    premises: Tuple[Pred, ...]
    conclusion: Pred

    def __str__(self) -> str:
        return format_claim(self)


# tokenizer -------------------------------------------------------------------

_TOKEN_RE = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<number>\d+(?:/\d+)?)
  | (?P<bracket>\[[^\]]*\])
  | (?P<punct>[;,()+*'])
    """,
    re.VERBOSE,
)


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    line: int
    col: int


def tokenize(text: str) -> List[Token]:
    tokens = []
    pos, line, line_start = 0, 1, 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        col = pos - line_start + 1
        if m is None:
            raise ClaimSyntaxError(f"unexpected character {text[pos]!r}", line, col)
        kind = m.lastgroup
        chunk = m.group()
        if kind != "ws":
            tokens.append(Token(kind if kind != "punct" else chunk, chunk, line, col))
        nl = chunk.count("\n")
        if nl:
            line += nl
            line_start = pos + chunk.rindex("\n") + 1
        pos = m.end()
    col = pos - line_start + 1
    tokens.append(Token("eof", "", line, col))
    return tokens


# parser ----------------------------------------------------------------------


class _Parser:
    def __init__(self, text: str):
        self.tokens = tokenize(text)
        self.i = 0
        self.declared: Optional[set] = None

    @property
    def tok(self) -> Token:
        return self.tokens[self.i]

    def error(self, message: str, tok: Optional[Token] = None):
        tok = tok or self.tok
        found = repr(tok.text) if tok.kind != "eof" else "end of input"
        raise ClaimSyntaxError(f"{message}, found {found}", tok.line, tok.col)

    def at(self, kind: str, text: Optional[str] = None) -> bool:
        t = self.tok
        return t.kind == kind and (text is None or t.text == text)

    def expect(self, kind: str, text: Optional[str] = None) -> Token:
        if not self.at(kind, text):
            self.error(f"expected {text or kind!r}")
        t = self.tok
        self.i += 1
        return t

    def keyword(self, word: str) -> Token:
        return self.expect("ident", word)

    def claim(self) -> Claim:
        self.keyword("vars")
        names = [self.variable_decl()]
        while self.at(","):
            self.i += 1
            names.append(self.variable_decl())
        self.expect(";")
        self.declared = set(names)
        premises = []
        if self.at("ident", "assume"):
            self.i += 1
            premises.append(self.pred())
            while self.at(","):
                self.i += 1
                premises.append(self.pred())
            self.expect(";")
        self.keyword("show")
        conclusion = self.pred()
        if self.at(";"):
            self.i += 1
        if not self.at("eof"):
            self.error("expected end of claim")
        return Claim(tuple(names), tuple(premises), conclusion)

    def variable_decl(self) -> str:
        t = self.tok
        if t.kind != "ident" or t.text in KEYWORDS:
            self.error("expected a variable name")
        self.i += 1
        return t.text

    def pred(self) -> Pred:
        t = self.tok
        if t.kind == "ident" and t.text == "ep":
            self.i += 1
            self.expect("(")
            e = self.expr()
            self.expect(")")
            return Ep(e)
        if t.kind == "ident" and t.text in ("raneq", "ransub"):
            self.i += 1
            self.expect("(")
            left = self.rng()
            self.expect(",")
            right = self.rng()
            self.expect(")")
            return RanEq(left, right) if t.text == "raneq" else RanSub(left, right)
        self.error("expected ep(...), raneq(...) or ransub(...)")

    def rng(self) -> Rng:
        node = self.ran()
        while self.at("+"):
            self.i += 1
            node = RanSum(node, self.ran())
        return node

    def ran(self) -> Ran:
        self.keyword("ran")
        self.expect("(")
        e = self.expr()
        self.expect(")")
        return Ran(e)

    def expr(self) -> Expr:
        node = self.term()
        while self.at("+"):
            self.i += 1
            node = Add(node, self.term())
        return node

    def term(self) -> Expr:
        node = self.factor()
        while self.at("*"):
            self.i += 1
            node = Compose(node, self.factor())
        return node

    def factor(self) -> Expr:
        t = self.tok
        if t.kind in ("number", "bracket") and t.text != "0":
            self.i += 1
            coef = self.scalar(t)
            if not self.at("*"):
                self.error("expected '*' after a scalar")
            self.i += 1
            return Scale(coef, self.factor())
        if t.kind == "number" and t.text == "0":
            self.i += 1
            node: Expr = Zero()
        elif t.kind == "ident" and t.text == "I":
            self.i += 1
            node = Identity()
        elif t.kind == "ident" and t.text not in KEYWORDS:
            if self.declared is not None and t.text not in self.declared:
                raise UnknownVariableError(f"unknown variable {t.text!r}", t.line, t.col)
            self.i += 1
            node = Var(t.text)
        elif t.kind == "(":
            self.i += 1
            node = self.expr()
            self.expect(")")
        else:
            self.error("expected an operator expression")
        while self.at("'"):
            self.i += 1
            node = Adjoint(node)
        return node

    def scalar(self, t: Token) -> GaussianRational:
        text = t.text[1:-1].strip() if t.kind == "bracket" else t.text
        try:
            return parse_scalar(text)
        except (ScalarSyntaxError, ZeroDivisionError) as exc:
            raise ClaimSyntaxError(f"bad scalar {t.text!r}: {exc}", t.line, t.col) from None


def parse_claim(text: str) -> Claim:
    return _Parser(text).claim()


def parse_expr(text: str, variables=None) -> Expr:
    p = _Parser(text)
    if variables is not None:
        p.declared = set(variables)
    e = p.expr()
    if not p.at("eof"):
        p.error("expected end of expression")
    return e


# formatting ------------------------------------------------------------------


def _scalar_literal(c: GaussianRational) -> str:
    if c.is_real() and c.re > 0:
        return format_scalar(c)
    return f"[{format_scalar(c)}]"


def format_expr(e: Expr, prec: int = 0) -> str:
    # prec: 0 = sum context, 1 = term context, 2 = factor context
    if isinstance(e, Var):
        return e.name
    if isinstance(e, Identity):
        return "I"
    if isinstance(e, Zero):
        return "0"
    if isinstance(e, Adjoint):
        return format_expr(e.arg, 3) + "'"
    if isinstance(e, Scale):
        s = f"{_scalar_literal(e.coef)}*{format_expr(e.arg, 2)}"
        return f"({s})" if prec >= 3 else s
    if isinstance(e, Add):
        s = f"{format_expr(e.left, 0)}+{format_expr(e.right, 1)}"
        return f"({s})" if prec >= 1 else s
    if isinstance(e, Compose):
        s = f"{format_expr(e.left, 1)}*{format_expr(e.right, 2)}"
        return f"({s})" if prec >= 2 else s
    raise TypeError(f"not an expression: {e!r}")


def format_rng(r: Rng) -> str:
    if isinstance(r, Ran):
        return f"ran({format_expr(r.expr)})"
    return f"{format_rng(r.left)}+{format_rng(r.right)}"


def format_pred(p: Pred) -> str:
    if isinstance(p, Ep):
        return f"ep({format_expr(p.expr)})"
    name = "raneq" if isinstance(p, RanEq) else "ransub"
    return f"{name}({format_rng(p.left)}, {format_rng(p.right)})"


def format_claim(c: Claim) -> str:
    parts = [f"vars {','.join(c.variables)}"]
    if c.premises:
        parts.append("assume " + ", ".join(format_pred(p) for p in c.premises))
    parts.append("show " + format_pred(c.conclusion))
    return "; ".join(parts)


# evaluation ------------------------------------------------------------------


def _context(assignment: Mapping[str, Operator], kind: Optional[str]) -> Tuple[str, int]:
    ops = list(assignment.values())
    kinds = {op.kind for op in ops}
    if len(kinds) > 1:
        raise CarrierError("assignment mixes finite and cofinite operators")
    if kinds:
        kind = kinds.pop()
    kind = kind or FINITE
    n = max((op.n for op in ops), default=0)
    return kind, n


def eval_expr(e: Expr, assignment: Mapping[str, Operator], kind: Optional[str] = None) -> Operator:
    kind, n = _context(assignment, kind)
    return _eval(e, assignment, kind, n)


def _eval(e: Expr, env: Mapping[str, Operator], kind: str, n: int) -> Operator:
    if isinstance(e, Var):
        try:
            return env[e.name]
        except KeyError:
            raise KeyError(f"no operator assigned to {e.name!r}") from None
    if isinstance(e, Identity):
        return Operator.identity(kind, n)
    if isinstance(e, Zero):
        return Operator.zero(kind, n)
    if isinstance(e, Adjoint):
        return op_adjoint(_eval(e.arg, env, kind, n))
    if isinstance(e, Scale):
        return op_scalar_mul(e.coef, _eval(e.arg, env, kind, n))
    if isinstance(e, Add):
        return op_add(_eval(e.left, env, kind, n), _eval(e.right, env, kind, n))
    if isinstance(e, Compose):
        return op_mul(_eval(e.left, env, kind, n), _eval(e.right, env, kind, n))
    raise TypeError(f"not an expression: {e!r}")


def eval_rng(r: Rng, assignment: Mapping[str, Operator], kind: Optional[str] = None) -> Subspace:
    kind, n = _context(assignment, kind)
    return _eval_rng(r, assignment, kind, n)


def _eval_rng(r: Rng, env, kind: str, n: int) -> Subspace:
    if isinstance(r, Ran):
        return range_of(_eval(r.expr, env, kind, n))
    return subspace_sum(_eval_rng(r.left, env, kind, n), _eval_rng(r.right, env, kind, n))


def eval_pred(p: Pred, assignment: Mapping[str, Operator], kind: Optional[str] = None) -> bool:
    kind, n = _context(assignment, kind)
    return _eval_pred(p, assignment, kind, n)


def _eval_pred(p: Pred, env, kind: str, n: int) -> bool:
    if isinstance(p, Ep):
        return ep_check(_eval(p.expr, env, kind, n))
    left = _eval_rng(p.left, env, kind, n)
    right = _eval_rng(p.right, env, kind, n)
    if isinstance(p, RanEq):
        return subspace_eq(left, right)
    return subspace_leq(left, right)


def eval_claim(
    c: Claim, assignment: Mapping[str, Operator], kind: Optional[str] = None
) -> Tuple[bool, bool]:
    """``(premises_hold, conclusion_holds)`` under the assignment."""
    missing = [v for v in c.variables if v not in assignment]
    if missing:
        raise KeyError(f"no operator assigned to {', '.join(missing)}")
    kind, n = _context(assignment, kind)
    premises = all(_eval_pred(p, assignment, kind, n) for p in c.premises)
    return premises, _eval_pred(c.conclusion, assignment, kind, n)


def premise_verdicts(c: Claim, assignment: Mapping[str, Operator]) -> List[bool]:
    kind, n = _context(assignment, None)
    return [_eval_pred(p, assignment, kind, n) for p in c.premises]


def claim_ranges(c: Claim, assignment: Mapping[str, Operator]) -> Dict[str, Subspace]:
    """Every range term appearing in the claim, evaluated; keyed by its text."""
    kind, n = _context(assignment, None)
    out: Dict[str, Subspace] = {}

    def walk(r: Rng):
        out.setdefault(format_rng(r), _eval_rng(r, assignment, kind, n))
        if isinstance(r, RanSum):
            walk(r.left)
            walk(r.right)

    for p in c.premises + (c.conclusion,):
        if isinstance(p, Ep):
            e = p.expr
            out.setdefault(f"ran({format_expr(e)})", range_of(_eval(e, assignment, kind, n)))
            out.setdefault(
                f"ran({format_expr(Adjoint(e))})", range_of(op_adjoint(_eval(e, assignment, kind, n)))
            )
        else:
            walk(p.left)
            walk(p.right)
    return out


__all__ = [
    "Claim",
    "ClaimSyntaxError",
    "UnknownVariableError",
    "Var",
    "Identity",
    "Zero",
    "Adjoint",
    "Add",
    "Compose",
    "Scale",
    "Ran",
    "RanSum",
    "Ep",
    "RanEq",
    "RanSub",
    "tokenize",
    "parse_claim",
    "parse_expr",
    "format_claim",
    "format_expr",
    "format_pred",
    "format_rng",
    "eval_expr",
    "eval_rng",
    "eval_pred",
    "eval_claim",
    "premise_verdicts",
    "claim_ranges",
    "COFINITE",
    "FINITE",
]
