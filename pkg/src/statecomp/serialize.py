"""JSON and Graphviz DOT forms of :class:`~statecomp.dfa.Cdfa`.

JSON layout::

    {"letters": ["a", "b"], "states": 2, "initial": 0,
     "finals": [1], "transitions": [[0, 1], [1, 0]]}

with ``transitions[state][letter]``.
"""

from __future__ import annotations

import json

from .dfa import Cdfa
from .errors import ParseError


def to_dict(A: Cdfa) -> dict:
    return {
        "letters": list(A.letter_labels),
        "states": A.state_count,
        "initial": A.initial,
        "finals": A.final_states,
        "transitions": A.table.tolist(),
    }


def to_json(A: Cdfa, indent=None) -> str:
    return json.dumps(to_dict(A), indent=indent)


def _int(value, path):
    if isinstance(value, bool) or not isinstance(value, int):
        raise ParseError(path, f"expected an integer, got {value!r}")
    return value


def from_dict(doc) -> Cdfa:
    if not isinstance(doc, dict):
        raise ParseError("", "document must be a JSON object")
    for key in ("letters", "states", "initial", "finals", "transitions"):
        if key not in doc:
            raise ParseError(key, "missing field")
    letters = doc["letters"]
    if not isinstance(letters, list) or not letters:
        raise ParseError("letters", "expected a non-empty list")
    for i, name in enumerate(letters):
        if not isinstance(name, str):
            raise ParseError(f"letters[{i}]", f"expected a string, got {name!r}")
    states = _int(doc["states"], "states")
    if states < 1:
        raise ParseError("states", "need at least one state")
    initial = _int(doc["initial"], "initial")
    if not 0 <= initial < states:
        raise ParseError("initial", f"{initial} outside [0, {states})")
    finals = doc["finals"]
    if not isinstance(finals, list):
        raise ParseError("finals", "expected a list")
    for i, q in enumerate(finals):
        _int(q, f"finals[{i}]")
        if not 0 <= q < states:
            raise ParseError(f"finals[{i}]", f"{q} outside [0, {states})")
    rows = doc["transitions"]
    if not isinstance(rows, list) or len(rows) != states:
        raise ParseError("transitions", f"expected {states} rows")
    for q, row in enumerate(rows):
        if not isinstance(row, list) or len(row) != len(letters):
            raise ParseError(f"transitions[{q}]", f"expected {len(letters)} entries")
        for a, target in enumerate(row):
            path = f"transitions[{q}][{a}]"
            _int(target, path)
            if not 0 <= target < states:
                raise ParseError(path, f"target {target} outside [0, {states})")
    return Cdfa(rows, sorted(set(finals)), initial, letters)


def from_json(text: str) -> Cdfa:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError("", f"invalid JSON: {exc}") from exc
    return from_dict(doc)


def load(path) -> Cdfa:
    with open(path) as fh:
        return from_json(fh.read())


def save(A: Cdfa, path):
    with open(path, "w") as fh:
        fh.write(to_json(A))
        fh.write("\n")


def _quote(s):
    return '"' + str(s).replace("\\", "\\\\").replace('"', '\\"') + '"'


def to_dot(A: Cdfa, state_labels=None, name="cdfa") -> str:
    """Render as DOT: point node into the initial state, finals double-circled,
    parallel edges merged with comma-joined letter labels."""
    lines = [f"digraph {_quote(name)} {{", "\trankdir=LR;", '\t__start [shape=point, label=""];']
    for q in range(A.state_count):
        shape = "doublecircle" if A.finals[q] else "circle"
        label = state_labels[q] if state_labels is not None else q
        lines.append(f"\t{q} [shape={shape}, label={_quote(label)}];")
    lines.append(f"\t__start -> {A.initial};")
    for q in range(A.state_count):
        grouped = {}
        for a, target in enumerate(A.table[q].tolist()):
            grouped.setdefault(target, []).append(A.letter_labels[a])
        for target, names in grouped.items():
            lines.append(f"\t{q} -> {target} [label={_quote(','.join(names))}];")
    lines.append("}")
    return "\n".join(lines) + "\n"
