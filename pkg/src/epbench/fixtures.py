"""The two published counterexamples and the block-operator demonstration.

Operators are built from their coordinate formulas, e.g.
``"(x_1, x_2, x_2+x_3, x_4, x_5, ...)"``, never from hand-reduced matrices.
Every verdict in a report is computed by :mod:`epbench.operators`.
"""

from __future__ import annotations

import json
import re
from dataclasses import asdict, dataclass, field
from typing import Dict, List, Optional, Tuple

from .linalg import Matrix
from .operators import (
    COFINITE,
    FINITE,
    Operator,
    block_column_pair,
    direct_sum,
    ep_check,
    op_adjoint,
    op_add,
    op_mul,
    range_of,
    subspace_eq,
    subspace_leq,
    subspace_sum,
)
from .scalars import ZERO, GaussianRational, format_scalar

PUBLISHED = "published"
DERIVED = "derived"

# coordinate formulas as displayed with the examples
EXAMPLE1_FORMULAS = {
    "T": "(x_1, x_2, x_2+x_3, x_4, x_5, ...)",
    "S": "(x_1+x_2, 0, 0, x_4, x_5, ...)",
    "T*": "(x_1, x_2+x_3, x_3, x_4, x_5, ...)",
    "S*": "(x_1, x_1, 0, x_4, x_5, ...)",
    "T+S": "(2x_1+x_2, x_2, x_2+x_3, x_4, x_5, ...)",
    "(T+S)*": "(2x_1, x_1+x_2+x_3, x_3, x_4, x_5, ...)",
}

EXAMPLE2_FORMULAS = {
    "T": "(x_1-x_3, 0, x_3, x_4, x_5, ...)",
    "S": "(x_3-x_1, 0, x_3, x_4, x_5, ...)",
    "T*": "(x_1, 0, x_3-x_1, x_4, x_5, ...)",
    "S*": "(-x_1, 0, x_3+x_1, x_4, x_5, ...)",
    "T+S": "(0, 0, x_3, x_4, x_5, ...)",
    "TT*+SS*": "(4x_1, 0, 2x_3, x_4, x_5, ...)",
}

_TERM_RE = re.compile(r"([+-]?)(\d+(?:/\d+)?)?(?:x_?(\d+))?")


class FormulaError(ValueError):
    pass


def _linear_form(text: str, width: int) -> List[GaussianRational]:
    text = text.replace(" ", "")
    row = [ZERO] * width
    if text == "0":
        return row
    pos = 0
    while pos < len(text):
        m = _TERM_RE.match(text, pos)
        if m is None or m.end() == pos or m.group(3) is None:
            raise FormulaError(f"cannot read linear form {text!r} at {pos}")
        if pos and not m.group(1):
            raise FormulaError(f"missing sign in {text!r} at {pos}")
        k = int(m.group(3)) - 1
        if not 0 <= k < width:
            raise FormulaError(f"variable x_{k + 1} outside the {width} displayed coordinates")
        coef = GaussianRational(m.group(2) or 1)
        row[k] = row[k] + (-coef if m.group(1) == "-" else coef)
        pos = m.end()
    return row


def operator_from_formula(formula: str, kind: str = COFINITE) -> Operator:
    """Operator from its action on coordinates.

    A trailing ``...`` means the pattern of the last displayed coordinate
    (``c x_k`` in slot k) continues forever; it is required for cofinite
    operators and forbidden for finite ones.
    """
    body = formula.strip()
    if body.startswith("(") and body.endswith(")"):
        body = body[1:-1]
    parts = [p.strip() for p in body.split(",")]
    has_tail = parts[-1] in ("...", "\\ldots", "…")
    if has_tail:
        parts = parts[:-1]
    if has_tail != (kind == COFINITE):
        raise FormulaError("cofinite formulas end with '...'; finite ones do not")
    width = len(parts)
    rows = [_linear_form(p, width) for p in parts]
    block = Matrix(rows)
    if kind == FINITE:
        return Operator.finite(block)
    last = rows[-1]
    tail = last[-1]
    if any(last[:-1]) or not tail:
        raise FormulaError("the last displayed coordinate must be c*x_k to define the tail")
    return Operator.cofinite(block, tail)


def example1() -> Tuple[Operator, Operator]:
    return (
        operator_from_formula(EXAMPLE1_FORMULAS["T"]),
        operator_from_formula(EXAMPLE1_FORMULAS["S"]),
    )


def example2() -> Tuple[Operator, Operator]:
    return (
        operator_from_formula(EXAMPLE2_FORMULAS["T"]),
        operator_from_formula(EXAMPLE2_FORMULAS["S"]),
    )


def example1_composites(t: Operator, s: Operator) -> Dict[str, Operator]:
    ts = op_add(t, s)
    return {"T*": op_adjoint(t), "S*": op_adjoint(s), "T+S": ts, "(T+S)*": op_adjoint(ts)}


def example2_composites(t: Operator, s: Operator) -> Dict[str, Operator]:
    return {
        "T*": op_adjoint(t),
        "S*": op_adjoint(s),
        "T+S": op_add(t, s),
        "TT*+SS*": op_add(op_mul(t, op_adjoint(t)), op_mul(s, op_adjoint(s))),
    }


# reports -------------------------------------------------------------------


@dataclass
class ClaimCheck:
    description: str
    expected: object
    provenance: str
    computed: object
    passed: bool
    detail: str = ""


@dataclass
class DisplayCheck:
    """Displayed coordinate formula versus the operator computed from T and S."""

    name: str
    formula: str
    computed: str
    block_matches: bool
    tail_matches: bool
    same_range: bool


@dataclass
class RefutationReport:
    title: str
    claims: List[ClaimCheck] = field(default_factory=list)
    displays: List[DisplayCheck] = field(default_factory=list)
    notes: List[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.claims)

    def add(self, description, expected, provenance, computed, detail="") -> ClaimCheck:
        check = ClaimCheck(description, expected, provenance, computed, expected == computed, detail)
        self.claims.append(check)
        return check

    def to_dict(self) -> dict:
        d = asdict(self)
        d["passed"] = self.passed
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)

    def to_text(self) -> str:
        lines = [f"== {self.title} =="]
        for c in self.claims:
            mark = "PASS" if c.passed else "FAIL"
            lines.append(
                f"[{mark}] {c.description}: expected {_show(c.expected)} ({c.provenance}),"
                f" computed {_show(c.computed)}"
            )
            if c.detail:
                lines.append(f"       {c.detail}")
        for d in self.displays:
            state = "exact" if d.block_matches and d.tail_matches else (
                "differs" + ("" if d.same_range else ", range differs")
            )
            lines.append(f"  display {d.name} = {d.formula}: {state}")
        for note in self.notes:
            lines.append(f"  note: {note}")
        return "\n".join(lines)


def _show(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    return str(v)


def _display_checks(
    report: RefutationReport, formulas: Dict[str, str], computed: Dict[str, Operator], width: int
):
    for name, op in computed.items():
        shown = operator_from_formula(formulas[name])
        m = max(width, shown.n, op.n)
        check = DisplayCheck(
            name=name,
            formula=formulas[name],
            computed=op.describe(),
            block_matches=shown.padded(m) == op.padded(m),
            tail_matches=shown.tail == op.tail,
            same_range=range_of(shown) == range_of(op),
        )
        report.displays.append(check)
        verdict = "coincide" if check.same_range else "differ"
        if not check.block_matches:
            report.notes.append(
                f"displayed {name} = {formulas[name]} differs from the computed {op.describe()}"
                f" on the first {width} coordinates; the ranges {verdict}"
            )
        elif not check.tail_matches:
            report.notes.append(
                f"displayed {name} continues as the identity, the computed operator continues as"
                f" {format_scalar(op.tail)}*I; the ranges {verdict}"
            )


def _action(op: Operator, k: int) -> str:
    """Coordinate formula of the first k outputs."""
    out = []
    for i in range(k):
        terms = []
        for j in range(k):
            c = op.padded(max(op.n, k))[i, j]
            if c:
                coef = "" if c == 1 else ("-" if c == -1 else format_scalar(c))
                terms.append(f"{coef}x_{j + 1}")
        out.append("+".join(terms).replace("+-", "-") if terms else "0")
    return "(" + ", ".join(out) + ", ...)"


def verify_example1(t: Optional[Operator] = None, s: Optional[Operator] = None) -> RefutationReport:
    """EP(T), EP(T+S) and not EP(S): the converse direction of the sum criterion fails."""
    default = t is None and s is None
    if default:
        t, s = example1()
    report = RefutationReport("Example 1")
    ts = op_add(t, s)
    report.add("T is EP", True, PUBLISHED, ep_check(t))
    report.add("T+S is EP", True, PUBLISHED, ep_check(ts))
    report.add("S is EP", False, PUBLISHED, ep_check(s))
    if default:
        _display_checks(report, EXAMPLE1_FORMULAS, example1_composites(t, s), max(t.n, s.n))
    return report


def verify_example2(t: Optional[Operator] = None, s: Optional[Operator] = None) -> RefutationReport:
    """Two EP operators whose sum breaks both range-sum identities."""
    default = t is None and s is None
    if default:
        t, s = example2()
    report = RefutationReport("Example 2")
    comp = example2_composites(t, s)
    ts = comp["T+S"]
    ran_ts = range_of(ts)
    ran_sum = subspace_sum(range_of(t), range_of(s))
    ran_gram = subspace_sum(range_of(op_mul(t, comp["T*"])), range_of(op_mul(s, comp["S*"])))
    n = max(t.n, s.n)

    ep_t, ep_s = ep_check(t), ep_check(s)
    report.add("T is EP", True, PUBLISHED, ep_t)
    report.add(
        "S is EP",
        True,
        DERIVED,
        ep_s,
        detail="Ran S = Ran S* = " + range_of(s).describe(n),
    )
    report.notes.append(
        "the published sentence for this example calls S both an EP operator and not an EP"
        f" operator; the computed verdict is EP(S) = {_show(ep_s)}"
    )
    report.add(
        "cl Ran(T+S) = cl(Ran T + Ran S)",
        False,
        PUBLISHED,
        subspace_eq(ran_ts, ran_sum),
        detail=f"{ran_ts.describe(n)} vs {ran_sum.describe(n)}",
    )
    report.add(
        "cl Ran(T+S) = cl(Ran TT* + Ran SS*)",
        False,
        PUBLISHED,
        subspace_eq(ran_ts, ran_gram),
        detail=f"{ran_ts.describe(n)} vs {ran_gram.describe(n)}",
    )
    report.add(
        "Ran(T+S) is strictly inside Ran T + Ran S",
        True,
        DERIVED,
        subspace_leq(ran_ts, ran_sum) and not subspace_leq(ran_sum, ran_ts),
        detail=f"dimensions on the first {n} coordinates: {ran_ts.dim_within(n)} vs {ran_sum.dim_within(n)}",
    )
    gram = comp["TT*+SS*"]
    report.add(
        "TT*+SS* acts as (4x_1, 0, 2x_3) on the first three coordinates",
        "(4x_1, 0, 2x_3, ...)",
        PUBLISHED,
        _action(gram, 3),
    )
    if default:
        _display_checks(report, EXAMPLE2_FORMULAS, comp, n)
    return report


def _remark_instance(report: RefutationReport, label: str, m: Matrix, nmat: Matrix, expect_equal: bool):
    mo, no = Operator.finite(m), Operator.finite(nmat)
    a = block_column_pair(mo, no)
    ran_a = range_of(a)
    ran_ds = direct_sum(range_of(mo), range_of(no))
    report.add(
        f"{label}: Ran [[M,0],[N,0]] = Ran M (+) Ran N",
        expect_equal,
        DERIVED,
        subspace_eq(ran_a, ran_ds),
        detail=f"dimensions {ran_a.dim} vs {ran_ds.dim}",
    )


def remark_demo() -> RefutationReport:
    """The block column operator: its range is generally not the direct sum of ranges."""
    report = RefutationReport("Block column operator")
    one = Matrix([[1]])
    _remark_instance(report, "M = N = [1]", one, one, False)
    _remark_instance(report, "M = I_2, N = 0", Matrix.identity(2), Matrix.zeros(2, 2), True)
    t, s = example2()
    _remark_instance(report, "Example 2 blocks", t.padded(3), s.padded(3), False)
    return report


def verify_all() -> List[RefutationReport]:
    return [verify_example1(), verify_example2(), remark_demo()]
