import itertools
import random

import pytest

from statecomp.dfa import Cdfa

ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


def random_cdfa(rng, n_states, n_letters, final_prob=0.4):
    table = [[rng.randrange(n_states) for _ in range(n_letters)] for _ in range(n_states)]
    finals = [q for q in range(n_states) if rng.random() < final_prob]
    return Cdfa(table, finals, 0)


def reachable(A):
    seen = {A.initial}
    stack = [A.initial]
    while stack:
        q = stack.pop()
        for a in range(A.letter_count):
            r = int(A.table[q, a])
            if r not in seen:
                seen.add(r)
                stack.append(r)
    return seen


def table_filling_count(A):
    """Minimal state count by the pairwise marking algorithm (no numpy)."""
    states = sorted(reachable(A))
    table = A.table.tolist()
    finals = A.finals.tolist()
    marked = set()
    for p, q in itertools.combinations(states, 2):
        if finals[p] != finals[q]:
            marked.add((p, q))
    changed = True
    while changed:
        changed = False
        for p, q in itertools.combinations(states, 2):
            if (p, q) in marked:
                continue
            for a in range(A.letter_count):
                x, y = sorted((table[p][a], table[q][a]))
                if x != y and (x, y) in marked:
                    marked.add((p, q))
                    changed = True
                    break
    # count classes of the unmarked relation
    classes = 0
    assigned = set()
    for p in states:
        if p in assigned:
            continue
        classes += 1
        for q in states:
            if q == p or tuple(sorted((p, q))) not in marked:
                assigned.add(q)
    return classes


def accepted_set(A, max_len):
    out = set()
    for n in range(max_len + 1):
        for w in itertools.product(range(A.letter_count), repeat=n):
            if A.accepts(w):
                out.add(w)
    return out


@pytest.fixture
def rng():
    return random.Random(20201)
