"""k-monsters: automata whose letters are all k-tuples of transformations.

Letter index ``l`` is read in mixed radix over the per-automaton
transformation indices, component 1 least significant::

    l = t1 + N1 * (t2 + N2 * (t3 + ...)),   Nj = nj ** nj

and letter l acts on automaton j as ``transform.decode(nj, tj)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from . import transform
from .dfa import Cdfa, LazyLabels
from .errors import BudgetError

DEFAULT_LETTER_BUDGET = 50_000


@dataclass(frozen=True)
class MonsterSpec:
    sizes: tuple[int, ...]
    finals: tuple[frozenset, ...]

    def __init__(self, sizes: Sequence[int], finals: Sequence[Iterable[int]]):
        sizes = tuple(int(n) for n in sizes)
        finals = tuple(frozenset(int(q) for q in f) for f in finals)
        if not sizes:
            raise ValueError("a monster has at least one component")
        if len(finals) != len(sizes):
            raise ValueError(f"{len(sizes)} sizes but {len(finals)} final sets")
        for j, (n, f) in enumerate(zip(sizes, finals)):
            if n < 1:
                raise ValueError(f"component {j + 1}: size must be positive")
            bad = [q for q in f if not 0 <= q < n]
            if bad:
                raise ValueError(f"component {j + 1}: final states {sorted(bad)} outside [0, {n})")
        object.__setattr__(self, "sizes", sizes)
        object.__setattr__(self, "finals", finals)

    @property
    def k(self) -> int:
        return len(self.sizes)

    @property
    def alphabet_size(self) -> int:
        total = 1
        for n in self.sizes:
            total *= n**n
        return total


def letter_components(spec: MonsterSpec, letter: int) -> tuple[transform.Transformation, ...]:
    if not 0 <= letter < spec.alphabet_size:
        raise IndexError(f"letter {letter} outside [0, {spec.alphabet_size})")
    parts = []
    for n in spec.sizes:
        letter, t = divmod(letter, n**n)
        parts.append(transform.decode(n, t))
    return tuple(parts)


def letter_index(spec: MonsterSpec, components: Sequence[transform.Transformation]) -> int:
    index = 0
    for n, t in reversed(list(zip(spec.sizes, components))):
        if t.n != n:
            raise ValueError(f"{t} is not a transformation of size {n}")
        index = index * n**n + transform.encode(t)
    return index


def letter_label(spec: MonsterSpec, letter: int) -> str:
    parts = letter_components(spec, letter)
    return "[" + ",".join(str(t).strip("[]") for t in parts) + "]"


class MonsterLabels(LazyLabels):
    def __init__(self, spec: MonsterSpec):
        super().__init__(spec.alphabet_size)
        self.spec = spec

    def label(self, i):
        return letter_label(self.spec, i)

    def __eq__(self, other):
        if isinstance(other, MonsterLabels):
            return self.spec.sizes == other.spec.sizes
        return NotImplemented

    __hash__ = None


def _columns(spec: MonsterSpec, j: int) -> np.ndarray:
    """Per-letter image words for component j, shape (letters, n_j)."""
    n = spec.sizes[j]
    inner = 1
    for m in spec.sizes[:j]:
        inner *= m**m
    outer = spec.alphabet_size // (inner * n**n)
    images = transform.all_images(n)
    idx = np.tile(np.repeat(np.arange(n**n), inner), outer)
    return images[idx]


def build(spec: MonsterSpec, letter_budget: int = DEFAULT_LETTER_BUDGET) -> list[Cdfa]:
    size = spec.alphabet_size
    if size > letter_budget:
        raise BudgetError(
            f"monster on sizes {spec.sizes} needs {size} letters, budget is {letter_budget}",
            size,
            letter_budget,
        )
    labels = MonsterLabels(spec)
    automata = []
    for j, (n, f) in enumerate(zip(spec.sizes, spec.finals)):
        table = _columns(spec, j).T
        automata.append(Cdfa(table, sorted(f), 0, labels))
    return automata
