"""Transformations of [0, n): construction, composition, indexing, closure.

A transformation is stored as its image word ``[t(0), t(1), ..., t(n-1)]``.
Composition is written prefix style everywhere in this package::

    compose(f, g)(x) == f(g(x))      # g is applied first

Postfix notation ``x t`` (image of x under t) with a word ``w = ab`` acting as
``x a b`` therefore corresponds to ``compose(b, a)``.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np


@dataclass(frozen=True)
class Transformation:
    image: tuple[int, ...]

    def __post_init__(self):
        image = tuple(int(x) for x in self.image)
        n = len(image)
        if n == 0:
            raise ValueError("a transformation needs a non-empty domain")
        for k, x in enumerate(image):
            if not 0 <= x < n:
                raise ValueError(f"image[{k}] = {x} outside [0, {n})")
        object.__setattr__(self, "image", image)

    @property
    def n(self) -> int:
        return len(self.image)

    def __call__(self, x: int) -> int:
        return self.image[x]

    def __len__(self):
        return len(self.image)

    @property
    def is_permutation(self) -> bool:
        return len(set(self.image)) == len(self.image)

    @property
    def array(self) -> np.ndarray:
        return np.asarray(self.image, dtype=np.int64)

    def __str__(self):
        if self.n <= 10:
            return "[" + "".join(str(x) for x in self.image) + "]"
        return "[" + ",".join(str(x) for x in self.image) + "]"

    def __repr__(self):
        return f"Transformation({str(self)})"


def _check_n(n):
    if n < 1:
        raise ValueError(f"domain size must be positive, got {n}")


def _check_point(n, x, what="point"):
    if not 0 <= x < n:
        raise ValueError(f"{what} {x} outside [0, {n})")


def make_identity(n: int) -> Transformation:
    _check_n(n)
    return Transformation(tuple(range(n)))


def make_cycle(n: int, support: Sequence[int]) -> Transformation:
    """Cycle sending support[k] to support[k+1] and the last back to the first."""
    _check_n(n)
    support = list(support)
    if len(set(support)) != len(support):
        raise ValueError(f"cycle support {support} has repeated points")
    for x in support:
        _check_point(n, x)
    image = list(range(n))
    for k, x in enumerate(support):
        image[x] = support[(k + 1) % len(support)]
    return Transformation(tuple(image))


def make_transposition(n: int, i: int, j: int) -> Transformation:
    if i == j:
        raise ValueError("a transposition swaps two distinct points")
    return make_cycle(n, (i, j))


def make_contraction(n: int, i: int, j: int) -> Transformation:
    """Send i to j and fix every other point."""
    _check_n(n)
    _check_point(n, i)
    _check_point(n, j)
    if i == j:
        raise ValueError("a contraction must move exactly one point")
    image = list(range(n))
    image[i] = j
    return Transformation(tuple(image))


def make_gab(n: int, finals: Iterable[int], a: int, b: int) -> Transformation:
    """Constant a on ``finals`` and constant b elsewhere."""
    _check_n(n)
    _check_point(n, a)
    _check_point(n, b)
    if a == b:
        raise ValueError("g_{a,b} needs a != b")
    finals = set(finals)
    for x in finals:
        _check_point(n, x, "final state")
    return Transformation(tuple(a if x in finals else b for x in range(n)))


def compose(outer: Transformation, inner: Transformation) -> Transformation:
    if outer.n != inner.n:
        raise ValueError(f"cannot compose on domains {outer.n} and {inner.n}")
    return Transformation(tuple(outer.image[x] for x in inner.image))


def encode(t: Transformation) -> int:
    """Mixed-radix index: sum of image[i] * n**i."""
    n = t.n
    index = 0
    for x in reversed(t.image):
        index = index * n + x
    return index


def decode(n: int, index: int) -> Transformation:
    _check_n(n)
    if not 0 <= index < n**n:
        raise IndexError(f"index {index} outside [0, {n}^{n})")
    image = []
    for _ in range(n):
        index, x = divmod(index, n)
        image.append(x)
    return Transformation(tuple(image))


def all_images(n: int) -> np.ndarray:
    """Array of shape (n**n, n); row k is the image word of ``decode(n, k)``."""
    _check_n(n)
    idx = np.arange(n**n, dtype=np.int64)
    return (idx[:, None] // (n ** np.arange(n, dtype=np.int64))[None, :]) % n


def encode_images(images: np.ndarray) -> np.ndarray:
    """Vectorized :func:`encode` over the last axis."""
    n = images.shape[-1]
    return images @ (n ** np.arange(n, dtype=np.int64))


def closure_witnesses(
    n: int, generators: Iterable[Transformation]
) -> dict[Transformation, tuple[int, ...]]:
    """Monoid generated by ``generators``, each element with a shortest word.

    A word ``(g0, g1, ...)`` lists generator positions in reading order, so the
    element is ``compose(..., compose(gens[g1], gens[g0]))``.  BFS guarantees
    the recorded words are shortest.
    """
    gens = list(generators)
    for g in gens:
        if g.n != n:
            raise ValueError(f"generator {g} is not on a domain of size {n}")
    identity = make_identity(n)
    words = {identity: ()}
    seen = {encode(identity)}
    queue = deque([identity])
    while queue:
        t = queue.popleft()
        for k, g in enumerate(gens):
            u = compose(g, t)
            key = encode(u)
            if key not in seen:
                seen.add(key)
                words[u] = words[t] + (k,)
                queue.append(u)
    return words


def closure(n: int, generators: Iterable[Transformation]) -> set[Transformation]:
    return set(closure_witnesses(n, generators))


def parse_transformation(n: int | None, text: str) -> Transformation:
    """Parse ``[102]``, ``1,0,2``, a cycle ``(0 1 2)`` or a contraction ``0>1``.

    Cycles and contractions need ``n``; image words carry their own size.
    """
    text = text.strip()
    if ">" in text:
        if n is None:
            raise ValueError("contraction needs a domain size")
        i, j = (int(x) for x in text.split(">"))
        return make_contraction(n, i, j)
    if text.startswith("("):
        if n is None:
            raise ValueError("cycle needs a domain size")
        body = text.strip("()").replace(",", " ").split()
        return make_cycle(n, [int(x) for x in body])
    body = text.strip("[]")
    parts = body.split(",") if "," in body else list(body)
    t = Transformation(tuple(int(x) for x in parts))
    if n is not None and t.n != n:
        raise ValueError(f"{text} has size {t.n}, expected {n}")
    return t
