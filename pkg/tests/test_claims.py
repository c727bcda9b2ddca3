import pytest

from epbench.claims import (
    Add,
    Adjoint,
    ClaimSyntaxError,
    Compose,
    Ep,
    Identity,
    Ran,
    RanEq,
    RanSum,
    Scale,
    UnknownVariableError,
    Var,
    Zero,
    eval_claim,
    eval_expr,
    format_claim,
    parse_claim,
    parse_expr,
)
from epbench.fixtures import example1, example2
from epbench.linalg import Matrix
from epbench.operators import COFINITE, FINITE, CarrierError, Operator, op_add, op_adjoint
from epbench.scalars import as_scalar

RANGE_SUM = "vars T,S; assume ep(T), ep(S); show raneq(ran(T+S), ran(T)+ran(S))"
SUM_CONVERSE = "vars T,S; assume ep(T), ep(T+S); show ep(S)"

CORPUS = [
    RANGE_SUM,
    SUM_CONVERSE,
    "vars T; show ep(T)",
    "vars T; show raneq(ran(T'), ran(T'*T))",
    "vars T; show raneq(ran(T), ran(T))",
    "vars T,S; assume ep(T), ep(S); show raneq(ran(T+S), ran(T*T'+S*S'))",
    "vars T,S; assume ep(T), ep(S); show raneq(ran(T*T'+S*S'), ran(T*T')+ran(S*S'))",
    "vars T,S; show ransub(ran(T+S), ran(T)+ran(S))",
    "vars A; show ransub(ran(A*A), ran(A))",
    "vars T; show ep(T+T')",
    "vars T; show ep(T*T')",
    "vars T; show ep(I)",
    "vars T; show ep(0)",
    "vars T; show raneq(ran(T+0), ran(I*T))",
    "vars T,S,R; show raneq(ran(T)+ran(S)+ran(R), ran(R)+ran(S)+ran(T))",
    "vars T; show ep((T+I)')",
    "vars T; show ep(T'')",
    "vars T,S; show ep((T*S)')",
    "vars T; show raneq(ran(2*T), ran(T))",
    "vars T; show raneq(ran([-1/2+i]*T'), ran(T'))",
    "vars T,S; assume ep(T*S), ep(S*T); show ep(T+S)",
    "vars T,S; show ep(T*(S+I))",
    "vars T; show raneq(ran(T*2*T), ran(T*T))",
    "vars T,S; show raneq(ran(T+(S+T)), ran(T+S+T))",
    "vars X1,y_2; show ransub(ran(X1*y_2), ran(X1))",
]


@pytest.mark.parametrize("text", CORPUS)
def test_format_parse_roundtrip(text):
    c = parse_claim(text)
    again = parse_claim(format_claim(c))
    assert again == c
    assert format_claim(again) == format_claim(c)


def test_corpus_size():
    assert len(CORPUS) >= 20


def test_range_sum_claim_structure():
    c = parse_claim(RANGE_SUM)
    assert c.variables == ("T", "S")
    assert c.premises == (Ep(Var("T")), Ep(Var("S")))
    assert c.conclusion == RanEq(
        Ran(Add(Var("T"), Var("S"))), RanSum(Ran(Var("T")), Ran(Var("S")))
    )


def test_premise_free_claim():
    c = parse_claim("vars T; show ep(T)")
    assert c.premises == ()


def test_precedence_and_postfix():
    assert parse_expr("T+S*R'") == Add(Var("T"), Compose(Var("S"), Adjoint(Var("R"))))
    assert parse_expr("(T+S)'") == Adjoint(Add(Var("T"), Var("S")))
    assert parse_expr("2*T*S") == Compose(Scale(as_scalar(2), Var("T")), Var("S"))
    assert parse_expr("0*I") == Compose(Zero(), Identity())
    assert parse_expr("T\n +\tS") == Add(Var("T"), Var("S"))


def test_syntax_error_with_position():
    with pytest.raises(ClaimSyntaxError) as info:
        parse_claim("vars T; show raneq(ran(T+), ran(T))")
    assert (info.value.line, info.value.col) == (1, 26)


def test_syntax_error_line_tracking():
    with pytest.raises(ClaimSyntaxError) as info:
        parse_claim("vars T;\nshow\n  ep(T")
    assert info.value.line == 3


@pytest.mark.parametrize(
    "text",
    [
        "",
        "vars ; show ep(T)",
        "vars T show ep(T)",
        "vars T; show ep(T) extra",
        "vars T; assume ; show ep(T)",
        "vars T; show raneq(ran(T))",
        "vars T; show ep(2)",
        "vars T; show ep(T$)",
        "vars ep; show ep(ep)",
        "vars T; show ran(T)",
        "vars T; show ep([1//2]*T)",
    ],
)
def test_malformed(text):
    with pytest.raises(ClaimSyntaxError):
        parse_claim(text)


def test_unknown_variable():
    with pytest.raises(UnknownVariableError) as info:
        parse_claim("vars T; show ep(S)")
    assert info.value.col == 17


def test_eval_range_sum_claim_on_example2():
    t, s = example2()
    assert eval_claim(parse_claim(RANGE_SUM), {"T": t, "S": s}) == (True, False)


def test_eval_sum_converse_on_example1():
    t, s = example1()
    assert eval_claim(parse_claim(SUM_CONVERSE), {"T": t, "S": s}) == (True, False)


def test_trivial_identity_always_holds():
    c = parse_claim("vars T; show raneq(ran(T), ran(T))")
    for t in (*example1(), Operator.finite(Matrix([[0, 1], [0, 0]]))):
        assert eval_claim(c, {"T": t}) == (True, True)


def test_eval_expr_constants():
    t, s = example1()
    env = {"T": t, "S": s}
    assert eval_expr(parse_expr("T+S"), env) == op_add(t, s)
    assert eval_expr(parse_expr("(T+S)'"), env) == op_adjoint(op_add(t, s))
    assert eval_expr(parse_expr("I*T"), env) == t
    assert eval_expr(parse_expr("T+0"), env) == t
    f = Operator.finite(Matrix([[1, 2], [3, 4]]))
    assert eval_expr(parse_expr("I+0*T"), {"T": f}) == Operator.identity(FINITE, 2)
    assert eval_expr(parse_expr("2*T"), {"T": f}).block == Matrix([[2, 4], [6, 8]])


def test_eval_carrier_mismatch():
    c = parse_claim("vars T,S; show ep(T+S)")
    with pytest.raises(CarrierError):
        eval_claim(c, {"T": Operator.finite(Matrix.identity(1)), "S": Operator.cofinite(Matrix.identity(1))})


def test_eval_missing_variable():
    with pytest.raises(KeyError):
        eval_claim(parse_claim("vars T,S; show ep(T)"), {"T": Operator.identity(COFINITE)})
