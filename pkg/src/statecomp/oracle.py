"""Reference membership tests for the language operations.

Each oracle decides ``w in op(L(A1), ..., L(Ak))`` by running the *input*
automata on pieces of w, straight from the set definitions.  Nothing here
builds an automaton for the result, so the oracles can judge modifiers.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence

from .dfa import DEFAULT_WORD_BUDGET, Cdfa, word_count
from .errors import BudgetError

ARITY = {
    "union": 2,
    "inter": 2,
    "xor": 2,
    "comp": 1,
    "prefin": 1,
    "conc": 2,
    "star": 1,
    "sroot": 1,
    "mirror": 1,
}


@dataclass(frozen=True)
class OperationId:
    name: str

    def __post_init__(self):
        if self.name not in ARITY:
            raise ValueError(f"no oracle for {self.name!r}; known: {', '.join(ARITY)}")

    @property
    def arity(self) -> int:
        return ARITY[self.name]


def _in(A: Cdfa, word) -> bool:
    q = A.initial
    table = A.table
    for a in word:
        q = table[q, a]
    return bool(A.finals[q])


def _star(A: Cdfa, word) -> bool:
    # reach[i]: the prefix word[:i] factors into words of L
    n = len(word)
    reach = [False] * (n + 1)
    reach[0] = True
    for end in range(1, n + 1):
        reach[end] = any(reach[start] and _in(A, word[start:end]) for start in range(end))
    return reach[n]


def member(op, automata: Sequence[Cdfa], word: Sequence[int]) -> bool:
    name = op.name if isinstance(op, OperationId) else OperationId(op).name
    if len(automata) != ARITY[name]:
        raise ValueError(f"{name} takes {ARITY[name]} automata, got {len(automata)}")
    w = tuple(word)
    if name == "union":
        return _in(automata[0], w) or _in(automata[1], w)
    if name == "inter":
        return _in(automata[0], w) and _in(automata[1], w)
    if name == "xor":
        return _in(automata[0], w) != _in(automata[1], w)
    if name == "comp":
        return not _in(automata[0], w)
    if name == "prefin":
        return any(_in(automata[0], w[:i]) for i in range(len(w) + 1))
    if name == "conc":
        return any(_in(automata[0], w[:i]) and _in(automata[1], w[i:]) for i in range(len(w) + 1))
    if name == "star":
        return _star(automata[0], w)
    if name == "sroot":
        return _in(automata[0], w + w)
    if name == "mirror":
        return _in(automata[0], w[::-1])
    raise AssertionError(name)


def words_up_to(letter_count: int, max_len: int):
    """All words of length <= max_len, length-lexicographic."""
    for n in range(max_len + 1):
        yield from itertools.product(range(letter_count), repeat=n)


def exhaustive_agree(op, m, automata: Sequence[Cdfa], max_len: int, budget: int = DEFAULT_WORD_BUDGET):
    """First word (length-lex) where m(automata) and the oracle disagree, else None."""
    from .modifier import apply

    letters = automata[0].letter_count
    total = word_count(letters, max_len)
    if total > budget:
        raise BudgetError(f"{total} words up to length {max_len} exceed budget {budget}", total, budget)
    built = apply(m, automata)
    for w in words_up_to(letters, max_len):
        if _in(built, w) != member(op, automata, w):
            return w
    return None
