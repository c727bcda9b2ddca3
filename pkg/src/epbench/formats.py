"""JSON interchange for operators: every entry is a scalar string, never a float.

Operator file::

    {"kind": "cofinite", "block": [["1", "0"], ["0", "1/2+i"]], "tail": "1"}

``tail`` is optional (default ``"1"``) and only meaningful for cofinite
operators, which act as ``tail * identity`` after the block.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Union

from .linalg import Matrix
from .operators import CARRIERS, COFINITE, FINITE, Operator
from .scalars import ScalarSyntaxError, format_scalar, parse_scalar


class OperatorFileError(ValueError):
    pass


def operator_to_dict(op: Operator) -> dict:
    block = op.block
    if op.kind == COFINITE and block.rows == 0:
        block = op.padded(1)
    d = {"kind": op.kind, "block": block.to_strings()}
    if op.kind == COFINITE:
        d["tail"] = format_scalar(op.tail)
    return d


def operator_from_dict(d) -> Operator:
    if not isinstance(d, dict):
        raise OperatorFileError("operator must be a JSON object")
    kind = d.get("kind")
    if kind not in CARRIERS:
        raise OperatorFileError(f"kind must be one of {', '.join(CARRIERS)}, got {kind!r}")
    rows = d.get("block")
    if not isinstance(rows, list) or not rows:
        raise OperatorFileError("block must be a nonempty array of rows")
    n = len(rows)
    parsed = []
    for i, row in enumerate(rows):
        if not isinstance(row, list) or len(row) != n:
            raise OperatorFileError(f"block must be square: row {i} has the wrong length")
        out = []
        for j, x in enumerate(row):
            if not isinstance(x, str):
                raise OperatorFileError(f"entry [{i}][{j}] must be a string, got {type(x).__name__}")
            try:
                out.append(parse_scalar(x))
            except (ScalarSyntaxError, ZeroDivisionError) as exc:
                raise OperatorFileError(f"entry [{i}][{j}]: {exc}") from None
        parsed.append(out)
    block = Matrix(parsed)
    if kind == FINITE:
        if "tail" in d:
            raise OperatorFileError("finite operators have no tail")
        return Operator.finite(block)
    tail = d.get("tail", "1")
    if not isinstance(tail, str):
        raise OperatorFileError("tail must be a scalar string")
    try:
        tail_value = parse_scalar(tail)
    except (ScalarSyntaxError, ZeroDivisionError) as exc:
        raise OperatorFileError(f"tail: {exc}") from None
    return Operator.cofinite(block, tail_value)


def load_operator(path: Union[str, Path]) -> Operator:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise OperatorFileError(f"cannot read {path}: {exc.strerror}") from None
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise OperatorFileError(f"{path}: invalid JSON: {exc}") from None
    return operator_from_dict(data)


def dump_operator(op: Operator, path: Union[str, Path]) -> None:
    Path(path).write_text(json.dumps(operator_to_dict(op), indent=2) + "\n")
