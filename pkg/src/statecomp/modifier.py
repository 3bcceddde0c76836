"""Modifiers: automaton constructors whose per-letter action only depends on
the initial states, the final sets and that letter's transition functions.

A modifier is four mappings plus bookkeeping:

* ``state_count(sizes)``: size of the state space built on inputs of those sizes,
* ``initial_of(sizes, inits, finals)``: initial state index,
* ``finals_of(sizes, inits, finals)``: boolean mask over the state space,
* ``lift(inits, finals, actions)``: the induced action on the state space.

``finals`` are boolean masks, one per input.  ``lift`` is vectorized over
letters: ``actions[j]`` has shape ``(letters, n_j)`` and the result has shape
``(letters, state_count)``.  A single letter is the one-row case.  The lift never
sees a letter index, so equal input columns always give equal output columns.

Every built-in encodes its states as integers:

=============== ===========================================================
union/inter/xor pair ``(q1, q2)`` as ``q1 * n2 + q2``
comp/prefin     the input state itself
star/mirror     subset E of the input states as the bitmask ``sum 2**q``
conc            ``(q1, E)`` as ``q1 * 2**n2 + mask(E)``
sroot           transformation g of the input states as ``transform.encode(g)``
=============== ===========================================================
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from . import transform
from .dfa import Cdfa
from .errors import BudgetError

DEFAULT_APPLY_BUDGET = 2**20
_CHUNK_CELLS = 2**22


def _raw(q):
    return q


@dataclass(frozen=True)
class Modifier:
    name: str
    arity: int
    state_count: Callable
    initial_of: Callable
    finals_of: Callable
    lift: Callable
    decode: Callable
    operation: str | None = None  # name of the language operation it describes

    def __repr__(self):
        return f"Modifier({self.name!r}, arity={self.arity})"

    def lift_transformations(self, inits, finals, actions: Sequence[transform.Transformation]):
        """Single-letter lift on :class:`Transformation` values."""
        arrays = [t.array[None, :] for t in actions]
        return transform.Transformation(tuple(self.lift(tuple(inits), tuple(finals), arrays)[0].tolist()))


@dataclass(frozen=True)
class Tableau:
    """Boolean n1 x n2 matrix; cell (x, y) is bit ``x * n2 + y`` of the state."""

    n1: int
    n2: int
    bits: tuple[bool, ...]

    def __post_init__(self):
        if len(self.bits) != self.n1 * self.n2:
            raise ValueError(f"tableau needs {self.n1 * self.n2} cells, got {len(self.bits)}")

    @classmethod
    def from_state(cls, n1, n2, mask):
        return cls(n1, n2, tuple(bool((mask >> k) & 1) for k in range(n1 * n2)))

    @property
    def state(self) -> int:
        return sum(1 << k for k, b in enumerate(self.bits) if b)

    def __getitem__(self, cell):
        x, y = cell
        return self.bits[x * self.n2 + y]

    @property
    def ones(self) -> int:
        return sum(self.bits)

    def __str__(self):
        rows = [
            "".join("1" if self[x, y] else "0" for y in range(self.n2)) for x in range(self.n1)
        ]
        return "\n".join(rows)


def _mask_of(finals) -> int:
    return sum(1 << int(q) for q in np.flatnonzero(finals))


def _subset_image(masks, act):
    """Image of each subset (bitmask) under each row of ``act``: shape (L, M)."""
    out = np.zeros((act.shape[0], masks.shape[0]), dtype=np.int64)
    for q in range(act.shape[1]):
        present = (masks >> q) & 1
        out |= present[None, :] * (np.int64(1) << act[:, q])[:, None]
    return out


def _subset_preimage(masks, act):
    out = np.zeros((act.shape[0], masks.shape[0]), dtype=np.int64)
    for q in range(act.shape[1]):
        hit = (masks[None, :] >> act[:, q][:, None]) & 1
        out |= hit << q
    return out


def _decode_subset(mask, decoder):
    return frozenset(decoder(q) for q in range(mask.bit_length()) if (mask >> q) & 1)


def _subset_space_guard(n):
    if n > 62:
        raise BudgetError(f"subset space over {n} states does not fit a 64-bit mask", 2**n)


# --- unary, state space Q1 ---------------------------------------------------


def _same_count(sizes):
    return sizes[0]


def _same_initial(sizes, inits, finals):
    return inits[0]


def _same_decode(sizes, index, decoders):
    return decoders[0](index)


def _comp():
    return Modifier(
        "comp", 1, _same_count, _same_initial,
        lambda sizes, inits, finals: ~np.asarray(finals[0], dtype=bool),
        lambda inits, finals, actions: actions[0].copy(),
        _same_decode, "comp",
    )


def _prefin_lift(inits, finals, actions):
    act = actions[0]
    stay = np.asarray(finals[0], dtype=bool)[None, :]
    return np.where(stay, np.arange(act.shape[1])[None, :], act)


def _prefin():
    return Modifier(
        "prefin", 1, _same_count, _same_initial,
        lambda sizes, inits, finals: np.asarray(finals[0], dtype=bool).copy(),
        _prefin_lift, _same_decode, "prefin",
    )


def _fto1_lift(inits, finals, actions):
    act = actions[0]
    n = act.shape[1]
    if n < 2:
        return act.copy()
    return np.where(np.asarray(finals[0], dtype=bool)[None, :], 1, act)


def _fto1():
    """Final states jump to state 1 (when it exists): depends on state names,
    so it is a modifier that describes no language operation."""
    return Modifier(
        "fto1", 1, _same_count, _same_initial,
        lambda sizes, inits, finals: np.asarray(finals[0], dtype=bool).copy(),
        _fto1_lift, _same_decode, None,
    )


# --- binary products ---------------------------------------------------------


def _pair_count(sizes):
    return sizes[0] * sizes[1]


def _pair_initial(sizes, inits, finals):
    return inits[0] * sizes[1] + inits[1]


def _pair_lift(inits, finals, actions):
    a1, a2 = actions
    n1, n2 = a1.shape[1], a2.shape[1]
    q1 = np.repeat(np.arange(n1), n2)
    q2 = np.tile(np.arange(n2), n1)
    return a1[:, q1] * n2 + a2[:, q2]


def _pair_decode(sizes, index, decoders):
    q1, q2 = divmod(index, sizes[1])
    return (decoders[0](q1), decoders[1](q2))


def _pair_modifier(name, combine):
    def finals_of(sizes, inits, finals):
        f1 = np.asarray(finals[0], dtype=bool)
        f2 = np.asarray(finals[1], dtype=bool)
        return combine(f1[:, None], f2[None, :]).reshape(-1)

    return Modifier(name, 2, _pair_count, _pair_initial, finals_of, _pair_lift, _pair_decode, name)


# --- subset constructions ----------------------------------------------------


def _subset_count(sizes):
    return 2 ** sizes[0]


def _star_finals(sizes, inits, finals):
    _subset_space_guard(sizes[0])
    masks = np.arange(2 ** sizes[0], dtype=np.int64)
    return ((masks & _mask_of(finals[0])) != 0) | (masks == 0)


def _star_lift(inits, finals, actions, close=True):
    act = actions[0]
    n = act.shape[1]
    _subset_space_guard(n)
    i = inits[0]
    masks = np.arange(2**n, dtype=np.int64)
    out = _subset_image(masks, act)
    # the empty set restarts from the initial state
    out[:, 0] = np.int64(1) << act[:, i]
    if close:
        hit = (out & _mask_of(finals[0])) != 0
        out |= hit.astype(np.int64) << i
    return out


def _subset_decode(sizes, index, decoders):
    return _decode_subset(index, decoders[0])


def _star():
    return Modifier(
        "star", 1, _subset_count, lambda sizes, inits, finals: 0,
        _star_finals, _star_lift, _subset_decode, "star",
    )


def unclosed_star():
    """Star with the re-entry rule removed; a deliberately broken modifier for
    mutation tests."""
    return Modifier(
        "star-unclosed", 1, _subset_count, lambda sizes, inits, finals: 0,
        _star_finals, lambda inits, finals, actions: _star_lift(inits, finals, actions, close=False),
        _subset_decode, "star",
    )


def _mirror_finals(sizes, inits, finals):
    _subset_space_guard(sizes[0])
    masks = np.arange(2 ** sizes[0], dtype=np.int64)
    return ((masks >> inits[0]) & 1).astype(bool)


def _mirror_lift(inits, finals, actions):
    act = actions[0]
    _subset_space_guard(act.shape[1])
    return _subset_preimage(np.arange(2 ** act.shape[1], dtype=np.int64), act)


def _mirror():
    return Modifier(
        "mirror", 1, _subset_count,
        lambda sizes, inits, finals: _mask_of(finals[0]),
        _mirror_finals, _mirror_lift, _subset_decode, "mirror",
    )


def _conc_count(sizes):
    return sizes[0] * 2 ** sizes[1]


def _conc_finals(sizes, inits, finals):
    _subset_space_guard(sizes[1])
    width = 2 ** sizes[1]
    masks = np.arange(sizes[0] * width, dtype=np.int64) % width
    return (masks & _mask_of(finals[1])) != 0


def _conc_lift(inits, finals, actions, restart=None):
    a1, a2 = actions
    n1, n2 = a1.shape[1], a2.shape[1]
    _subset_space_guard(n2)
    width = 2**n2
    idx = np.arange(n1 * width, dtype=np.int64)
    q1, sub = idx // width, idx % width
    nq1 = a1[:, q1]
    nsub = _subset_image(sub, a2)
    start = inits[1] if restart is None else restart(inits)
    f1 = np.asarray(finals[0], dtype=bool)
    nsub |= f1[nq1].astype(np.int64) << start
    return nq1 * width + nsub


def _conc_decode(sizes, index, decoders):
    q1, sub = divmod(index, 2 ** sizes[1])
    return (decoders[0](q1), _decode_subset(sub, decoders[1]))


def _conc():
    def initial_of(sizes, inits, finals):
        start = (1 << inits[1]) if finals[0][inits[0]] else 0
        return inits[0] * 2 ** sizes[1] + start

    return Modifier("conc", 2, _conc_count, initial_of, _conc_finals, _conc_lift, _conc_decode, "conc")


def literal_conc():
    """Concatenation exactly as tabulated: initial (i1, {}) and i1 inserted into
    the second component.  Wrong whenever the empty word is in the first
    language; kept to exhibit the counterexample."""

    def restart(inits):
        return inits[0]

    def lift(inits, finals, actions):
        if inits[0] >= actions[1].shape[1]:
            raise ValueError("literal conc inserts i1 into Q2, which needs i1 < n2")
        return _conc_lift(inits, finals, actions, restart=restart)

    def initial_of(sizes, inits, finals):
        return inits[0] * 2 ** sizes[1]

    return Modifier("conc-literal", 2, _conc_count, initial_of, _conc_finals, lift, _conc_decode, "conc")


# --- square root -------------------------------------------------------------


def _sroot_count(sizes):
    return sizes[0] ** sizes[0]


def _sroot_finals(sizes, inits, finals):
    g = transform.all_images(sizes[0])
    i = inits[0]
    twice = g[np.arange(g.shape[0]), g[:, i]]
    return np.asarray(finals[0], dtype=bool)[twice]


def _sroot_lift(inits, finals, actions):
    act = actions[0]
    g = transform.all_images(act.shape[1])
    # state g reads a and becomes (act o g): g is applied first
    return transform.encode_images(act[:, g])


def _sroot():
    return Modifier(
        "sroot", 1, _sroot_count,
        lambda sizes, inits, finals: transform.encode(transform.make_identity(sizes[0])),
        _sroot_finals, _sroot_lift,
        lambda sizes, index, decoders: transform.decode(sizes[0], index),
        "sroot",
    )


# --- registry ----------------------------------------------------------------

BUILTIN_NAMES = ("comp", "prefin", "union", "inter", "xor", "conc", "star", "sroot", "mirror", "fto1")

_FACTORIES = {
    "comp": _comp,
    "prefin": _prefin,
    "union": lambda: _pair_modifier("union", np.logical_or),
    "inter": lambda: _pair_modifier("inter", np.logical_and),
    "xor": lambda: _pair_modifier("xor", np.logical_xor),
    "conc": _conc,
    "star": _star,
    "sroot": _sroot,
    "mirror": _mirror,
    "fto1": _fto1,
}


def builtin(name: str) -> Modifier:
    try:
        return _FACTORIES[name]()
    except KeyError:
        raise ValueError(f"unknown modifier {name!r}; expected one of {', '.join(BUILTIN_NAMES)}") from None


def compose(m1: Modifier, j: int, m2: Modifier) -> Modifier:
    """Feed the output of m2 into input position j (1-based) of m1.

    The result takes ``m1.arity + m2.arity - 1`` automata: inputs
    ``j .. j + m2.arity - 1`` go to m2, the others to m1 in order.
    """
    if not 1 <= j <= m1.arity:
        raise ValueError(f"position {j} outside 1..{m1.arity} for {m1.name}")
    lo, hi = j - 1, j - 1 + m2.arity

    def hat_sizes(sizes):
        sizes = tuple(sizes)
        return sizes[:lo] + (m2.state_count(sizes[lo:hi]),) + sizes[hi:]

    def hat_config(sizes, inits, finals):
        sizes, inits, finals = tuple(sizes), tuple(inits), tuple(finals)
        inner = (sizes[lo:hi], inits[lo:hi], finals[lo:hi])
        return (
            hat_sizes(sizes),
            inits[:lo] + (m2.initial_of(*inner),) + inits[hi:],
            finals[:lo] + (m2.finals_of(*inner),) + finals[hi:],
        )

    def lift(inits, finals, actions):
        sizes = tuple(a.shape[1] for a in actions)
        _, h_inits, h_finals = hat_config(sizes, inits, finals)
        inner = m2.lift(tuple(inits[lo:hi]), tuple(finals[lo:hi]), list(actions[lo:hi]))
        return m1.lift(h_inits, h_finals, list(actions[:lo]) + [inner] + list(actions[hi:]))

    def decode(sizes, index, decoders):
        inner_sizes = tuple(sizes[lo:hi])
        inner_decoders = list(decoders[lo:hi])

        def inner(q):
            return m2.decode(inner_sizes, q, inner_decoders)

        return m1.decode(hat_sizes(sizes), index, list(decoders[:lo]) + [inner] + list(decoders[hi:]))

    name = f"{m1.name}.{m2.name}" if j == 1 else f"{m1.name}.{j}:{m2.name}"
    operation = None
    if m1.operation and m2.operation:
        operation = name
    return Modifier(
        name,
        m1.arity + m2.arity - 1,
        lambda sizes: m1.state_count(hat_sizes(sizes)),
        lambda sizes, inits, finals: m1.initial_of(*hat_config(sizes, inits, finals)),
        lambda sizes, inits, finals: m1.finals_of(*hat_config(sizes, inits, finals)),
        lift,
        decode,
        operation,
    )


def parse_modifier(expr: str) -> Modifier:
    """``star.inter`` is star composed with inter at position 1; an explicit
    position is written ``union.2:star``.  Composition folds left to right."""
    parts = expr.strip().split(".")
    if not parts or not parts[0]:
        raise ValueError(f"empty modifier expression {expr!r}")
    acc = builtin(parts[0])
    for part in parts[1:]:
        j = 1
        if ":" in part:
            pos, part = part.split(":", 1)
            try:
                j = int(pos)
            except ValueError:
                raise ValueError(f"bad composition position {pos!r} in {expr!r}") from None
        acc = compose(acc, j, builtin(part))
    return acc


# --- application -------------------------------------------------------------


def state_space_size(m: Modifier, sizes) -> int:
    return m.state_count(tuple(sizes))


def apply(m: Modifier, automata: Sequence[Cdfa], budget: int = DEFAULT_APPLY_BUDGET) -> Cdfa:
    """Build m(A1, ..., Ak) over the full state space (no trimming)."""
    automata = list(automata)
    if len(automata) != m.arity:
        raise ValueError(f"{m.name} takes {m.arity} automata, got {len(automata)}")
    letters = automata[0].letter_count
    for A in automata[1:]:
        if A.letter_count != letters:
            raise ValueError("input automata must share one alphabet")
    sizes = tuple(A.state_count for A in automata)
    inits = tuple(A.initial for A in automata)
    finals = tuple(A.finals for A in automata)
    count = m.state_count(sizes)
    if count * letters > budget:
        raise BudgetError(
            f"{m.name} on sizes {sizes}: {count} states x {letters} letters exceeds budget {budget}",
            count * letters,
            budget,
        )
    initial = m.initial_of(sizes, inits, finals)
    final_mask = np.asarray(m.finals_of(sizes, inits, finals), dtype=bool)
    table = np.empty((count, letters), dtype=np.int64)
    width = max(sizes + (1,))
    step = max(1, _CHUNK_CELLS // (count * width))
    for start in range(0, letters, step):
        cols = slice(start, min(letters, start + step))
        actions = [A.table[:, cols].T for A in automata]
        table[:, cols] = m.lift(inits, finals, actions).T
    return Cdfa(table, final_mask, initial, automata[0].letter_labels)


def state_labels(m: Modifier, sizes, indices=None) -> list[str]:
    """Readable names for states of the modifier's state space."""
    sizes = tuple(sizes)
    if indices is None:
        indices = range(m.state_count(sizes))
    decoders = [_raw] * m.arity
    return [format_state(m.decode(sizes, int(q), decoders)) for q in indices]


def format_state(obj) -> str:
    if isinstance(obj, frozenset):
        items = sorted(obj, key=_sort_key)
        return "{" + ",".join(format_state(x) for x in items) + "}"
    if isinstance(obj, tuple):
        return "(" + ",".join(format_state(x) for x in obj) + ")"
    return str(obj)


def _sort_key(x):
    if isinstance(x, frozenset):
        return (1, sorted(_sort_key(y) for y in x))
    if isinstance(x, tuple):
        return (1, [_sort_key(y) for y in x])
    if isinstance(x, transform.Transformation):
        return (0, transform.encode(x))
    return (0, x)


@dataclass(frozen=True)
class Verdict:
    passed: bool
    counterexample: tuple[int, ...] | None
    words_checked: int


def oracle_check(m: Modifier, op_name: str, automata: Sequence[Cdfa], max_len: int, budget=None) -> Verdict:
    """Compare m(automata) with the membership oracle of ``op_name`` on every
    word up to ``max_len``."""
    from . import oracle

    kwargs = {} if budget is None else {"budget": budget}
    cex = oracle.exhaustive_agree(op_name, m, automata, max_len, **kwargs)
    from .dfa import word_count

    return Verdict(cex is None, cex, word_count(automata[0].letter_count, max_len))
