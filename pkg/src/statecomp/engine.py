"""State complexity by sweeping final-state choices on monsters.

For an operation described by modifier m, the worst case over inputs with
sizes n1..nk is the largest minimal automaton among m(M_{n, F}) where F
ranges over all tuples of final sets.
"""

from __future__ import annotations

import itertools
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from math import comb
from typing import Sequence

import numpy as np

from . import monster, transform
from .dfa import Cdfa, accessible_part, dedupe_letters, equivalence_classes, minimize
from .errors import BudgetError
from .modifier import DEFAULT_APPLY_BUDGET, Modifier, apply, builtin, parse_modifier, state_labels

Finals = tuple[frozenset, ...]


@dataclass
class ComplexityReport:
    modifier: str
    sizes: tuple[int, ...]
    rows: list[tuple[Finals, int]] = field(default_factory=list)

    @property
    def maximum(self) -> int:
        return max(count for _, count in self.rows)

    @property
    def argmax(self) -> list[Finals]:
        best = self.maximum
        return [f for f, count in self.rows if count == best]

    def csv_lines(self, only=None) -> list[str]:
        header = [f"F{j + 1}" for j in range(len(self.sizes))] + ["min_states"]
        lines = [",".join(header)]
        for finals, count in self.rows:
            if only is not None and finals not in only:
                continue
            cells = ['"' + format_finals(f) + '"' for f in finals] + [str(count)]
            lines.append(",".join(cells))
        return lines

    def summary(self) -> str:
        best = "; ".join(format_tuple(f) for f in self.argmax)
        return f"{self.modifier} sizes={','.join(map(str, self.sizes))} max={self.maximum} argmax={best}"


def format_finals(f) -> str:
    return "{" + ",".join(str(q) for q in sorted(f)) + "}"


def format_tuple(finals) -> str:
    return "(" + ",".join(format_finals(f) for f in finals) + ")"


def all_final_choices(sizes: Sequence[int]) -> list[Finals]:
    """Every tuple of final sets; bitmask order with component 1 least significant."""
    per = [range(2**n) for n in sizes]
    out = []
    # itertools.product varies the last factor fastest, so reverse twice
    for masks in itertools.product(*reversed(per)):
        masks = masks[::-1]
        out.append(tuple(frozenset(q for q in range(n) if (mask >> q) & 1) for n, mask in zip(sizes, masks)))
    return out


def canonical_final_choices(sizes: Sequence[int]) -> list[Finals]:
    """One representative per (size of F_j, whether 0 is in F_j) per component."""
    seen = set()
    out = []
    for finals in all_final_choices(sizes):
        key = tuple((len(f), 0 in f) for f in finals)
        if key not in seen:
            seen.add(key)
            out.append(finals)
    return out


def _resolve(m) -> Modifier:
    return parse_modifier(m) if isinstance(m, str) else m


def construct(m, sizes, finals, budget=DEFAULT_APPLY_BUDGET, letter_budget=monster.DEFAULT_LETTER_BUDGET) -> Cdfa:
    """m applied to the monster M_{sizes, finals} (full state space)."""
    m = _resolve(m)
    autos = monster.build(monster.MonsterSpec(sizes, finals), letter_budget)
    return apply(m, autos, budget)


def minimal_size(m, sizes, finals, dedupe=True, **budgets) -> int:
    built = construct(m, sizes, finals, **budgets)
    if dedupe:
        built, _ = dedupe_letters(built)
    return minimize(built).state_count


def state_complexity(
    m,
    sizes: Sequence[int],
    family="all",
    dedupe: bool = True,
    parallel: int | None = None,
    budget: int = DEFAULT_APPLY_BUDGET,
    letter_budget: int = monster.DEFAULT_LETTER_BUDGET,
) -> ComplexityReport:
    """Sweep final sets of the monster and report the minimal sizes.

    ``family`` is ``"all"``, ``"canonical"`` or an explicit list of final-set
    tuples.  Rows come out in family order whatever ``parallel`` is.
    """
    m = _resolve(m)
    sizes = tuple(int(n) for n in sizes)
    if len(sizes) != m.arity:
        raise ValueError(f"{m.name} takes {m.arity} sizes, got {len(sizes)}")
    if family == "all":
        choices = all_final_choices(sizes)
    elif family == "canonical":
        choices = canonical_final_choices(sizes)
    else:
        choices = [tuple(frozenset(f) for f in finals) for finals in family]

    def evaluate(finals):
        try:
            return minimal_size(m, sizes, finals, dedupe, budget=budget, letter_budget=letter_budget)
        except BudgetError as exc:
            raise BudgetError(f"{exc} (final sets {format_tuple(finals)})", exc.required, exc.budget) from exc

    if parallel and parallel > 1:
        with ThreadPoolExecutor(max_workers=parallel) as pool:
            counts = list(pool.map(evaluate, choices))
    else:
        counts = [evaluate(f) for f in choices]
    return ComplexityReport(m.name, sizes, list(zip(choices, counts)))


@dataclass
class Witness:
    automaton: Cdfa  # minimized
    accessible: int
    merged: list[tuple[int, ...]]  # classes of >1 accessible states, as full-space indices
    merged_labels: list[tuple[str, ...]]
    final_count: int

    @property
    def state_count(self) -> int:
        return self.automaton.state_count


def witness(m, sizes, finals, **budgets) -> Witness:
    m = _resolve(m)
    sizes = tuple(sizes)
    built = construct(m, sizes, finals, **budgets)
    reduced, _ = dedupe_letters(built)
    trimmed, order = accessible_part(reduced)
    blocks = equivalence_classes(trimmed)
    groups = {}
    for new, b in enumerate(blocks.tolist()):
        groups.setdefault(b, []).append(int(order[new]))
    merged = sorted(tuple(sorted(g)) for g in groups.values() if len(g) > 1)
    labels = [tuple(state_labels(m, sizes, g)) for g in merged]
    result = minimize(reduced)
    return Witness(result, trimmed.state_count, merged, labels, int(result.finals.sum()))


# --- closed forms ------------------------------------------------------------


def star_inter_bound(n1: int, n2: int) -> int:
    return 3 * 2 ** (n1 * n2) // 4


def sroot_bound(n: int) -> int:
    if n == 1:
        return 1
    if n == 2:
        return 2
    return n**n - comb(n, 2)


def screened_tableau_count(n1: int, n2: int, f1, f2) -> int:
    """Closed-form count of tableaux T with (T meets F1 x F2) => T[0,0] = 1."""
    total = n1 * n2
    cells = len(f1) * len(f2)
    corner = 1 if (0 in f1 and 0 in f2) else 0
    return 2**total - (2 ** (total - 1) - 2 ** (total - cells - 1 + corner))


@dataclass(frozen=True)
class ClosedFormCheck:
    name: str
    sizes: tuple[int, ...]
    engine: int
    formula: int

    @property
    def match(self) -> bool:
        return self.engine == self.formula


def closed_form_check(name: str, sizes: Sequence[int], **kwargs) -> ClosedFormCheck:
    sizes = tuple(sizes)
    if name == "star-inter":
        if len(sizes) != 2:
            raise ValueError("star-inter takes two sizes")
        formula = star_inter_bound(*sizes)
        engine = state_complexity("star.inter", sizes, **kwargs).maximum
    elif name == "sroot":
        if len(sizes) != 1:
            raise ValueError("sroot takes one size")
        formula = sroot_bound(sizes[0])
        engine = state_complexity("sroot", sizes, **kwargs).maximum
    else:
        raise ValueError(f"no closed form for {name!r}; use star-inter or sroot")
    return ClosedFormCheck(name, sizes, engine, formula)


@dataclass(frozen=True)
class ScanResult:
    n: int
    automata: int
    maximum: int
    bound: int

    @property
    def strict(self) -> bool:
        return self.maximum < self.bound


def two_letter_sqrt_scan(n: int, budget: int = 100_000) -> ScanResult:
    """Largest minimal square-root automaton over every 2-letter CDFA on [0, n)
    with initial state 0 and any final set."""
    total = (n**n) ** 2 * 2**n
    if total > budget:
        raise BudgetError(f"{total} two-letter automata on {n} states exceed budget {budget}", total, budget)
    sroot = builtin("sroot")
    images = transform.all_images(n)
    best = 0
    for a, b in itertools.product(range(n**n), repeat=2):
        table = np.stack([images[a], images[b]], axis=1)
        for mask in range(2**n):
            finals = [q for q in range(n) if (mask >> q) & 1]
            built = apply(sroot, [Cdfa(table, finals)])
            best = max(best, minimize(built).state_count)
    return ScanResult(n, total, best, sroot_bound(n))
