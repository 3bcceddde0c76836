"""Complete deterministic automata over integer states and letter indices."""

from __future__ import annotations

from collections import deque
from collections.abc import Sequence as SequenceABC
from typing import Iterable, Sequence

import numpy as np

from .errors import BudgetError, IncomparableAlphabetsError, InvalidLetterError

DEFAULT_WORD_BUDGET = 2_000_000


class LazyLabels(SequenceABC):
    """Letter names computed on demand; subclasses implement ``label``."""

    def __init__(self, size):
        self._size = size

    def __len__(self):
        return self._size

    def __getitem__(self, i):
        if isinstance(i, slice):
            return [self[k] for k in range(*i.indices(self._size))]
        if i < 0:
            i += self._size
        if not 0 <= i < self._size:
            raise IndexError(i)
        return self.label(i)

    def label(self, i):
        raise NotImplementedError


class Cdfa:
    """Complete DFA with a dense ``state_count x letter_count`` transition table.

    ``finals`` is a boolean vector (one bit per state).  Letter labels are for
    display only; every algorithm works on letter indices.
    """

    __slots__ = ("table", "finals", "initial", "letter_labels")

    def __init__(self, table, finals, initial=0, letter_labels=None):
        table = np.array(table, dtype=np.int64, copy=True)
        if table.ndim != 2 or table.shape[0] < 1 or table.shape[1] < 1:
            raise ValueError(f"transition table must be a non-empty matrix, got shape {table.shape}")
        n, k = table.shape
        if table.min() < 0 or table.max() >= n:
            raise ValueError(f"transition targets must lie in [0, {n})")
        finals = np.asarray(finals)
        if finals.dtype != np.bool_:
            mask = np.zeros(n, dtype=bool)
            idx = np.asarray(finals, dtype=np.int64).reshape(-1)
            if idx.size and (idx.min() < 0 or idx.max() >= n):
                raise ValueError(f"final states must lie in [0, {n})")
            mask[idx] = True
            finals = mask
        elif finals.shape != (n,):
            raise ValueError(f"final mask has shape {finals.shape}, expected ({n},)")
        else:
            finals = finals.copy()
        if not 0 <= initial < n:
            raise ValueError(f"initial state {initial} outside [0, {n})")
        if letter_labels is None:
            letter_labels = default_labels(k)
        if not isinstance(letter_labels, LazyLabels):
            letter_labels = tuple(str(x) for x in letter_labels)
        if len(letter_labels) != k:
            raise ValueError(f"{len(letter_labels)} labels for {k} letters")
        table.setflags(write=False)
        finals.setflags(write=False)
        self.table = table
        self.finals = finals
        self.initial = int(initial)
        self.letter_labels = letter_labels

    @property
    def state_count(self) -> int:
        return self.table.shape[0]

    @property
    def letter_count(self) -> int:
        return self.table.shape[1]

    @property
    def final_states(self) -> list[int]:
        return [int(q) for q in np.flatnonzero(self.finals)]

    def accepts(self, word: Sequence[int]) -> bool:
        return bool(self.finals[run(self, word)])

    def __eq__(self, other):
        if not isinstance(other, Cdfa):
            return NotImplemented
        return (
            self.initial == other.initial
            and _same_labels(self.letter_labels, other.letter_labels)
            and np.array_equal(self.table, other.table)
            and np.array_equal(self.finals, other.finals)
        )

    __hash__ = None

    def __repr__(self):
        return (
            f"Cdfa(states={self.state_count}, letters={self.letter_count}, "
            f"initial={self.initial}, finals={self.final_states})"
        )


def _same_labels(x, y):
    if x is y or x == y:
        return True
    return len(x) == len(y) and tuple(x) == tuple(y)


def default_labels(k):
    if k <= 26:
        return tuple("abcdefghijklmnopqrstuvwxyz"[:k])
    return tuple(f"x{i}" for i in range(k))


def run(A: Cdfa, word: Sequence[int], start: int | None = None) -> int:
    q = A.initial if start is None else start
    k = A.letter_count
    for a in word:
        if not 0 <= a < k:
            raise InvalidLetterError(f"letter {a} outside [0, {k})")
        q = A.table[q, a]
    return int(q)


def accessible_part(A: Cdfa) -> tuple[Cdfa, np.ndarray]:
    """Restrict to reachable states, renumbered in BFS discovery order.

    Returns the trimmed automaton and ``order`` where ``order[new] = old``.
    """
    table = A.table
    index = np.full(A.state_count, -1, dtype=np.int64)
    order = [A.initial]
    index[A.initial] = 0
    head = 0
    while head < len(order):
        row = table[order[head]]
        head += 1
        targets, first = np.unique(row, return_index=True)
        fresh = targets[index[targets] < 0]
        if fresh.size:
            # discovery order follows the letter of first occurrence
            fresh = fresh[np.argsort(first[index[targets] < 0], kind="stable")]
            index[fresh] = np.arange(len(order), len(order) + fresh.size)
            order.extend(int(q) for q in fresh)
    order = np.asarray(order, dtype=np.int64)
    trimmed = Cdfa(index[table[order]], A.finals[order], 0, A.letter_labels)
    return trimmed, order


def _relabel(keys: np.ndarray) -> np.ndarray:
    """Dense block ids for the rows of a 2-d integer array."""
    keys = np.ascontiguousarray(keys)
    void = keys.view(np.dtype((np.void, keys.dtype.itemsize * keys.shape[1]))).ravel()
    _, inverse = np.unique(void, return_inverse=True)
    return inverse.reshape(-1).astype(np.int64)


def equivalence_classes(A: Cdfa) -> np.ndarray:
    """Moore refinement over all states of A (reachable or not).

    Returns one block id per state; two states share a block iff no word
    separates them.
    """
    blocks = A.finals.astype(np.int64)
    count = len(np.unique(blocks))
    while True:
        signature = np.concatenate([blocks[:, None], blocks[A.table]], axis=1)
        blocks = _relabel(signature)
        new_count = int(blocks.max()) + 1
        if new_count == count:
            return blocks
        count = new_count


def minimize(A: Cdfa) -> Cdfa:
    trimmed, _ = accessible_part(A)
    blocks = equivalence_classes(trimmed)
    _, rep = np.unique(blocks, return_index=True)
    quotient = Cdfa(blocks[trimmed.table[rep]], trimmed.finals[rep], int(blocks[0]), A.letter_labels)
    result, _ = accessible_part(quotient)
    return result


def equivalent(A: Cdfa, B: Cdfa) -> bool:
    return distinguishing_word(A, B) is None


def distinguishing_word(A: Cdfa, B: Cdfa) -> tuple[int, ...] | None:
    """Shortest word accepted by exactly one of A, B (None if equivalent)."""
    if A.letter_count != B.letter_count:
        raise IncomparableAlphabetsError(
            f"alphabets differ: {A.letter_count} vs {B.letter_count} letters"
        )
    start = (A.initial, B.initial)
    parent = {start: None}
    queue = deque([start])
    ta, tb = A.table.tolist(), B.table.tolist()
    fa, fb = A.finals.tolist(), B.finals.tolist()
    while queue:
        p, q = pair = queue.popleft()
        if fa[p] != fb[q]:
            word = []
            while parent[pair] is not None:
                pair, a = parent[pair]
                word.append(a)
            return tuple(reversed(word))
        for a in range(A.letter_count):
            nxt = (ta[p][a], tb[q][a])
            if nxt not in parent:
                parent[nxt] = (pair, a)
                queue.append(nxt)
    return None


def rename_letters(A: Cdfa, sigma: Sequence[int]) -> Cdfa:
    """Rename letter a to sigma[a]: the new column sigma[a] is the old column a."""
    sigma = np.asarray(sigma, dtype=np.int64)
    k = A.letter_count
    if sigma.shape != (k,) or sorted(sigma.tolist()) != list(range(k)):
        raise ValueError(f"{sigma.tolist()} is not a permutation of [0, {k})")
    table = np.empty_like(A.table)
    table[:, sigma] = A.table
    return Cdfa(table, A.finals, A.initial, A.letter_labels)


def restrict_alphabet(A: Cdfa, keep: Iterable[int]) -> Cdfa:
    """Keep only the listed letters (renumbered in increasing order): L(A) with X*."""
    keep = sorted(set(int(a) for a in keep))
    if not keep:
        raise ValueError("cannot restrict to an empty alphabet")
    for a in keep:
        if not 0 <= a < A.letter_count:
            raise InvalidLetterError(f"letter {a} outside [0, {A.letter_count})")
    labels = [A.letter_labels[a] for a in keep]
    return Cdfa(A.table[:, keep], A.finals, A.initial, labels)


def word_count(letter_count: int, max_len: int) -> int:
    return sum(letter_count**n for n in range(max_len + 1))


def enumerate_accepted(A: Cdfa, max_len: int, budget: int = DEFAULT_WORD_BUDGET) -> list[tuple[int, ...]]:
    """Accepted words of length <= max_len in length-lexicographic order."""
    if max_len < 0:
        raise ValueError("max_len must be non-negative")
    total = word_count(A.letter_count, max_len)
    if total > budget:
        raise BudgetError(f"{total} words up to length {max_len} exceed budget {budget}", total, budget)
    accepted = []
    layer = [((), A.initial)]
    table = A.table.tolist()
    finals = A.finals.tolist()
    for length in range(max_len + 1):
        accepted.extend(w for w, q in layer if finals[q])
        if length == max_len:
            break
        layer = [(w + (a,), table[q][a]) for w, q in layer for a in range(A.letter_count)]
    return accepted


def dedupe_letters(A: Cdfa) -> tuple[Cdfa, np.ndarray]:
    """Merge letters with identical columns (kept in order of first occurrence).

    Changes the language; only the state complexity survives.  Returns the
    reduced automaton and ``classes[a]`` = new index of old letter a.
    """
    _, first, inverse = np.unique(A.table.T, axis=0, return_index=True, return_inverse=True)
    inverse = inverse.reshape(-1)
    rank = np.empty(len(first), dtype=np.int64)
    rank[np.argsort(first, kind="stable")] = np.arange(len(first))
    keep = np.sort(first)
    labels = [A.letter_labels[a] for a in keep]
    return Cdfa(A.table[:, keep], A.finals, A.initial, labels), rank[inverse]
