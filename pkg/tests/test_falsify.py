import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from epbench.claims import eval_claim, parse_claim
from epbench.falsify import (
    Counterexample,
    FalsifyConfig,
    entry_weight,
    exhaust,
    falsify,
    is_counterexample,
    search,
    shrink,
    trial_assignment,
    trial_entries,
    trial_seed,
)
from epbench.fixtures import example2
from epbench.linalg import Matrix
from epbench.operators import COFINITE, FINITE, Operator, ep_check

RANGE_SUM = parse_claim("vars T,S; assume ep(T), ep(S); show raneq(ran(T+S), ran(T)+ran(S))")
SUM_CONVERSE = parse_claim("vars T,S; assume ep(T), ep(T+S); show ep(S)")
EP_ALWAYS = parse_claim("vars T; show ep(T)")
ADJOINT_GRAM = parse_claim("vars T; show raneq(ran(T'), ran(T'*T))")


def test_stream_is_pinned():
    assert trial_seed(0, 0) == 12426054289685354689
    assert trial_seed(42, 7) == 8457105028182875694
    assert trial_entries(0, 0, 9, 2) == [-1, 2, -2, 0, 0, 1, -2, 2, 0]
    assert trial_entries(1, 3, 6, 1) == [-1, 0, 0, 1, -1, -1]


def test_entries_respect_bound():
    for t in range(50):
        assert all(-2 <= x <= 2 for x in trial_entries(9, t, 18, 2))
    assert trial_entries(9, 0, 5, 0) == [0] * 5


def test_config_validation():
    with pytest.raises(ValueError):
        FalsifyConfig(trials=0)
    with pytest.raises(ValueError):
        FalsifyConfig(dim=0)
    with pytest.raises(ValueError):
        FalsifyConfig(carrier="sparse")


def test_example2_lies_in_the_search_space():
    # integer entries in [-2, 2], 3x3 blocks: the hand-made witness is a point of the space
    t, s = example2()
    assert all(abs(x.re) <= 2 and x.is_integer() for r in t.padded(3) for x in r)
    ft, fs = Operator.finite(t.padded(3)), Operator.finite(s.padded(3))
    assert is_counterexample(RANGE_SUM, {"T": ft, "S": fs})


@pytest.mark.parametrize("claim", [RANGE_SUM, SUM_CONVERSE])
@pytest.mark.parametrize("carrier", [FINITE, COFINITE])
def test_refutes_published_claims(claim, carrier):
    cfg = FalsifyConfig(dim=3, entry_bound=2, trials=10_000, seed=0, carrier=carrier)
    cx = falsify(claim, cfg)
    assert cx is not None
    assert cx.revalidate()
    assert eval_claim(claim, cx.assignment) == (True, False)
    assert cx.carrier == carrier


def test_true_identity_survives():
    assert falsify(ADJOINT_GRAM, FalsifyConfig(dim=3, entry_bound=2, trials=300, seed=5)) is None
    assert exhaust(ADJOINT_GRAM, 2, 1) is None


def test_true_identity_exhaustive_brute_force():
    # independent route: Ran(T*) = Ran(T*T) iff rank(T*) = rank(T*T), and Ran(T*T) <= Ran(T*)
    from epbench.linalg import rank

    for entries in itertools.product((-1, 0, 1), repeat=4):
        m = Matrix([entries[:2], entries[2:]])
        assert rank(m.H) == rank(m.H @ m)


def test_trivially_false_claim():
    cx = falsify(EP_ALWAYS, FalsifyConfig(dim=2, entry_bound=2, trials=200, seed=0))
    assert cx is not None and cx.revalidate()
    block = cx.assignment["T"].block
    assert block.shape == (2, 2)
    assert sum(1 for r in block for x in r if x) <= 1


def test_nilpotent_jordan_block_is_minimal():
    j = Operator.finite(Matrix([[0, 1], [0, 0]]))
    assert not ep_check(j)
    # no 1x1 counterexamples at all, and the zero 2x2 matrix is EP
    for v in range(-2, 3):
        assert ep_check(Operator.finite(Matrix([[v]])))
    assert ep_check(Operator.finite(Matrix.zeros(2, 2)))
    cx = Counterexample(str(EP_ALWAYS), FINITE, {"T": j}, [], False)
    assert shrink(EP_ALWAYS, cx).assignment["T"] == j


def test_shrink_trims_identity_coordinates():
    jordan_plus = Matrix(
        [[0, 1, 0, 0, 0], [0, 0, 0, 0, 0], [0, 0, 1, 0, 0], [0, 0, 0, 1, 0], [0, 0, 0, 0, 1]]
    )
    for op in (Operator.finite(jordan_plus), Operator.cofinite(jordan_plus)):
        cx = Counterexample(str(EP_ALWAYS), op.kind, {"T": op}, [], False)
        out = shrink(EP_ALWAYS, cx)
        assert out.assignment["T"].n <= 3
        assert out.revalidate()


def test_shrink_rejects_non_witness():
    cx = Counterexample(str(EP_ALWAYS), FINITE, {"T": Operator.finite(Matrix.identity(2))}, [], False)
    with pytest.raises(ValueError):
        shrink(EP_ALWAYS, cx)


@settings(max_examples=15, deadline=None)
@given(st.integers(0, 10**6), st.sampled_from([RANGE_SUM, SUM_CONVERSE, EP_ALWAYS]))
def test_shrink_preserves_validity_and_never_grows(seed, claim):
    cfg = FalsifyConfig(dim=3, entry_bound=2, trials=2000, seed=seed, shrink=False)
    raw = falsify(claim, cfg)
    if raw is None:
        return
    out = shrink(claim, raw)
    assert out.revalidate()
    assert max(op.n for op in out.assignment.values()) <= max(op.n for op in raw.assignment.values())
    assert entry_weight(out.assignment) <= entry_weight(raw.assignment)


def test_search_is_deterministic():
    cfg = FalsifyConfig(dim=3, entry_bound=2, trials=2000, seed=11)
    a, b = search(RANGE_SUM, cfg), search(RANGE_SUM, cfg)
    assert a.counterexample.to_dict() == b.counterexample.to_dict()
    assert (a.trials_run, a.premises_satisfied) == (b.trials_run, b.premises_satisfied)


def test_parallel_matches_serial():
    for claim in (RANGE_SUM, SUM_CONVERSE):
        serial = search(claim, FalsifyConfig(trials=3000, seed=3))
        parallel = search(claim, FalsifyConfig(trials=3000, seed=3, workers=3))
        assert serial.counterexample.to_dict() == parallel.counterexample.to_dict()
        assert (serial.trials_run, serial.premises_satisfied) == (
            parallel.trials_run,
            parallel.premises_satisfied,
        )
    none_serial = search(ADJOINT_GRAM, FalsifyConfig(trials=60, seed=1))
    none_par = search(ADJOINT_GRAM, FalsifyConfig(trials=60, seed=1, workers=2))
    assert none_serial.counterexample is None and none_par.counterexample is None
    assert none_serial.premises_satisfied == none_par.premises_satisfied == 60


def test_witness_is_lowest_failing_trial():
    cfg = FalsifyConfig(trials=500, seed=21, shrink=False)
    cx = falsify(RANGE_SUM, cfg)
    for t in range(cx.trial):
        assert not is_counterexample(RANGE_SUM, trial_assignment(RANGE_SUM, cfg, t))
    assert cx.assignment == trial_assignment(RANGE_SUM, cfg, cx.trial)


def test_certificate_round_trip():
    cx = falsify(RANGE_SUM, FalsifyConfig(seed=4))
    again = Counterexample.from_dict(cx.to_dict())
    assert again.assignment == cx.assignment
    assert again.revalidate()
    assert again.to_dict() == cx.to_dict()


def test_tampered_certificate_fails_revalidation():
    cx = falsify(RANGE_SUM, FalsifyConfig(seed=4))
    d = cx.to_dict()
    d["assignment"]["S"] = d["assignment"]["T"]
    assert not Counterexample.from_dict(d).revalidate()
