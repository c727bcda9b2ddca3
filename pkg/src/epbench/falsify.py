"""Randomized search for counterexamples to claims, with greedy shrinking.

Random stream
-------------
Trial ``t`` under seed ``s`` draws from its own ``random.Random`` (MT19937),
seeded with the first 64 bits (big-endian) of ``SHA-256(f"{s}:{t}")``.
Entries are ``floor(u * (2b + 1)) - b`` for successive ``u = random()``,
filling each variable's block row-major in declaration order.  Only
``random()`` is used because its sequence is the part of the module with a
cross-version reproducibility guarantee.  Per-trial seeding lets trials run
in any order or in parallel; the reported witness is always the one with
the lowest trial index.
"""

from __future__ import annotations

import hashlib
import itertools
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterator, List, Mapping, Optional, Sequence

from .claims import Claim, claim_ranges, eval_claim, format_claim, parse_claim, premise_verdicts
from .formats import operator_from_dict, operator_to_dict
from .linalg import Matrix
from .operators import CARRIERS, COFINITE, FINITE, Operator
from .scalars import ZERO, GaussianRational

__all__ = [
    "FalsifyConfig",
    "Counterexample",
    "SearchOutcome",
    "trial_seed",
    "trial_entries",
    "trial_assignment",
    "search",
    "falsify",
    "shrink",
    "exhaust",
    "is_counterexample",
    "entry_weight",
]


@dataclass(frozen=True)
class FalsifyConfig:
    dim: int = 3
    entry_bound: int = 2
    trials: int = 10_000
    seed: int = 0
    carrier: str = FINITE
    workers: int = 1
    shrink: bool = True

    def __post_init__(self):
        if self.trials < 1:
            raise ValueError("trials must be at least 1")
        if self.dim < 1:
            raise ValueError("dim must be at least 1")
        if self.entry_bound < 0:
            raise ValueError("entry_bound must be nonnegative")
        if self.carrier not in CARRIERS:
            raise ValueError(f"carrier must be one of {', '.join(CARRIERS)}")


@dataclass
class Counterexample:
    """A self-checking certificate: premises hold and the conclusion fails."""

    claim: str
    carrier: str
    assignment: Dict[str, Operator]
    premises: List[bool]
    conclusion: bool
    seed: Optional[int] = None
    trial: Optional[int] = None
    dim: Optional[int] = None
    entry_bound: Optional[int] = None
    search_dim: Optional[int] = None
    shrunk: bool = False

    def revalidate(self) -> bool:
        c = parse_claim(self.claim)
        held, concl = eval_claim(c, self.assignment)
        return (
            held
            and not concl
            and premise_verdicts(c, self.assignment) == self.premises
            and concl == self.conclusion
        )

    def ranges(self) -> Dict[str, str]:
        c = parse_claim(self.claim)
        m = max((op.n for op in self.assignment.values()), default=0)
        return {k: v.describe(m) for k, v in claim_ranges(c, self.assignment).items()}

    def to_dict(self) -> dict:
        return {
            "claim": self.claim,
            "carrier": self.carrier,
            "assignment": {k: operator_to_dict(v) for k, v in self.assignment.items()},
            "evidence": {
                "premises": list(self.premises),
                "conclusion": self.conclusion,
                "ranges": self.ranges(),
            },
            "search": {
                "seed": self.seed,
                "trial": self.trial,
                "dim": self.dim,
                "search_dim": self.search_dim,
                "entry_bound": self.entry_bound,
                "shrunk": self.shrunk,
            },
        }

    @classmethod
    def from_dict(cls, d: Mapping) -> "Counterexample":
        ev, meta = d["evidence"], d.get("search", {})
        return cls(
            claim=d["claim"],
            carrier=d["carrier"],
            assignment={k: operator_from_dict(v) for k, v in d["assignment"].items()},
            premises=list(ev["premises"]),
            conclusion=ev["conclusion"],
            seed=meta.get("seed"),
            trial=meta.get("trial"),
            dim=meta.get("dim"),
            entry_bound=meta.get("entry_bound"),
            search_dim=meta.get("search_dim"),
            shrunk=meta.get("shrunk", False),
        )


@dataclass
class SearchOutcome:
    counterexample: Optional[Counterexample]
    trials_run: int
    premises_satisfied: int
    config: FalsifyConfig = field(default_factory=FalsifyConfig)


# random stream ---------------------------------------------------------------


def trial_seed(seed: int, trial: int) -> int:
    digest = hashlib.sha256(f"{seed}:{trial}".encode()).digest()
    return int.from_bytes(digest[:8], "big")


def trial_entries(seed: int, trial: int, count: int, bound: int) -> List[int]:
    rng = random.Random(trial_seed(seed, trial))
    width = 2 * bound + 1
    return [int(rng.random() * width) - bound for _ in range(count)]


def _build(kind: str, entries: Sequence[int], dim: int) -> Operator:
    rows = [entries[i * dim:(i + 1) * dim] for i in range(dim)]
    block = Matrix(rows)
    return Operator.finite(block) if kind == FINITE else Operator.cofinite(block)


def trial_assignment(claim: Claim, cfg: FalsifyConfig, trial: int) -> Dict[str, Operator]:
    k = cfg.dim * cfg.dim
    entries = trial_entries(cfg.seed, trial, k * len(claim.variables), cfg.entry_bound)
    return {
        v: _build(cfg.carrier, entries[i * k:(i + 1) * k], cfg.dim)
        for i, v in enumerate(claim.variables)
    }


def is_counterexample(claim: Claim, assignment: Mapping[str, Operator]) -> bool:
    held, concl = eval_claim(claim, assignment)
    return held and not concl


# search ----------------------------------------------------------------------


def _scan(claim: Claim, cfg: FalsifyConfig, start: int, stop: int):
    """First counterexample trial in [start, stop), plus premise-hit count."""
    hits = 0
    for t in range(start, stop):
        held, concl = eval_claim(claim, trial_assignment(claim, cfg, t))
        if held:
            hits += 1
            if not concl:
                return t, hits
    return None, hits


def _scan_star(args):
    return _scan(*args)


def _certificate(claim: Claim, cfg: FalsifyConfig, trial: int) -> Counterexample:
    assignment = trial_assignment(claim, cfg, trial)
    return Counterexample(
        claim=format_claim(claim),
        carrier=cfg.carrier,
        assignment=assignment,
        premises=premise_verdicts(claim, assignment),
        conclusion=False,
        seed=cfg.seed,
        trial=trial,
        dim=cfg.dim,
        entry_bound=cfg.entry_bound,
        search_dim=cfg.dim,
    )


def search(claim: Claim, cfg: FalsifyConfig) -> SearchOutcome:
    """Run up to ``cfg.trials`` trials; the witness (if any) has the lowest index."""
    if cfg.workers <= 1:
        found, hits = _scan(claim, cfg, 0, cfg.trials)
        run = found + 1 if found is not None else cfg.trials
    else:
        found, hits, run = _parallel_scan(claim, cfg)
    if found is None:
        return SearchOutcome(None, run, hits, cfg)
    cx = _certificate(claim, cfg, found)
    if cfg.shrink:
        cx = shrink(claim, cx)
    return SearchOutcome(cx, run, hits, cfg)


def _parallel_scan(claim: Claim, cfg: FalsifyConfig):
    chunk = max(1, min(256, cfg.trials // (cfg.workers * 4) or 1))
    bounds = [(s, min(s + chunk, cfg.trials)) for s in range(0, cfg.trials, chunk)]
    hits = 0
    with ProcessPoolExecutor(max_workers=cfg.workers) as pool:
        # batches keep the merge ordered: the first batch with a hit holds the lowest index
        for b in range(0, len(bounds), cfg.workers):
            batch = bounds[b:b + cfg.workers]
            results = list(pool.map(_scan_star, [(claim, cfg, s, e) for s, e in batch]))
            for found, h in results:
                hits += h
                if found is not None:
                    return found, hits, found + 1
    return None, hits, cfg.trials


def falsify(claim: Claim, cfg: FalsifyConfig) -> Optional[Counterexample]:
    return search(claim, cfg).counterexample


def exhaust(claim: Claim, dim: int, bound: int, carrier: str = FINITE) -> Optional[Counterexample]:
    """Check every assignment with integer entries in [-bound, bound], in lexicographic order."""
    k = dim * dim
    values = range(-bound, bound + 1)
    nvars = len(claim.variables)
    for idx, entries in enumerate(itertools.product(values, repeat=k * nvars)):
        assignment = {
            v: _build(carrier, entries[i * k:(i + 1) * k], dim)
            for i, v in enumerate(claim.variables)
        }
        if is_counterexample(claim, assignment):
            return Counterexample(
                claim=format_claim(claim),
                carrier=carrier,
                assignment=assignment,
                premises=premise_verdicts(claim, assignment),
                conclusion=False,
                trial=idx,
                dim=dim,
                entry_bound=bound,
                search_dim=dim,
            )
    return None


# shrinking -------------------------------------------------------------------


def _common_dim(assignment: Mapping[str, Operator]) -> int:
    return max((op.n for op in assignment.values()), default=0)


def _rebuild(op: Operator, block: Matrix) -> Operator:
    return Operator.finite(block) if op.kind == FINITE else Operator.cofinite(block, op.tail)


def _delete_coordinate(assignment: Mapping[str, Operator], k: int, m: int) -> Dict[str, Operator]:
    keep = [i for i in range(m) if i != k]
    return {
        v: _rebuild(op, op.padded(m).submatrix(keep, keep)) for v, op in assignment.items()
    }


def _with_entry(op: Operator, m: int, i: int, j: int, value: GaussianRational) -> Operator:
    rows = op.padded(m).tolist()
    rows[i][j] = value
    return _rebuild(op, Matrix(rows))


def _toward_zero(x: Fraction) -> Optional[Fraction]:
    if not x:
        return None
    if x.denominator != 1:
        return Fraction(int(x))
    return x - 1 if x > 0 else x + 1


def _smaller_values(x: GaussianRational) -> Iterator[GaussianRational]:
    re_, im_ = _toward_zero(x.re), _toward_zero(x.im)
    if re_ is not None:
        yield GaussianRational(re_, x.im)
    if im_ is not None:
        yield GaussianRational(x.re, im_)


def entry_weight(assignment: Mapping[str, Operator]) -> int:
    m = _common_dim(assignment)
    return sum(
        abs(x.re.numerator) + abs(x.im.numerator)
        for op in assignment.values()
        for row in (op.padded(m) if op.kind == COFINITE else op.block)
        for x in row
    )


def shrink(claim: Claim, cx: Counterexample) -> Counterexample:
    """Greedy local minimization of a counterexample.

    Passes, repeated until nothing changes: delete one coordinate from every
    operator at once; set one entry to zero; move one entry's real or
    imaginary part one step toward zero.  A change is kept only while the
    premises still hold and the conclusion still fails.
    """
    cur = dict(cx.assignment)
    if not is_counterexample(claim, cur):
        raise ValueError("not a counterexample for this claim")
    changed = True
    while changed:
        changed = False
        m = _common_dim(cur)
        for k in reversed(range(m)):
            cand = _delete_coordinate(cur, k, m)
            if is_counterexample(claim, cand):
                cur, changed = cand, True
                break
        if changed:
            continue
        for v in claim.variables:
            for i in range(m):
                for j in range(m):
                    op = cur[v]
                    if not op.padded(m)[i, j]:
                        continue
                    cand = dict(cur)
                    cand[v] = _with_entry(op, m, i, j, ZERO)
                    if is_counterexample(claim, cand):
                        cur, changed = cand, True
        if changed:
            continue
        for v in claim.variables:
            for i in range(m):
                for j in range(m):
                    for smaller in _smaller_values(cur[v].padded(m)[i, j]):
                        cand = dict(cur)
                        cand[v] = _with_entry(cur[v], m, i, j, smaller)
                        if is_counterexample(claim, cand):
                            cur, changed = cand, True
                            break
    return Counterexample(
        claim=cx.claim,
        carrier=cx.carrier,
        assignment=cur,
        premises=premise_verdicts(claim, cur),
        conclusion=False,
        seed=cx.seed,
        trial=cx.trial,
        dim=_common_dim(cur),
        entry_bound=cx.entry_bound,
        search_dim=cx.search_dim,
        shrunk=True,
    )
