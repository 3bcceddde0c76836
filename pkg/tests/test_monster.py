import itertools

import pytest
from conftest import random_cdfa

from statecomp import transform as T
from statecomp.dfa import minimize
from statecomp.errors import BudgetError
from statecomp.modifier import apply, builtin
from statecomp.monster import MonsterSpec, build, letter_components, letter_index, letter_label


def test_one_monster_two_states():
    (A,) = build(MonsterSpec((2,), [{1}]))
    assert A.letter_count == 4
    actions = {tuple(A.table[:, a]) for a in range(4)}
    assert actions == {(0, 1), (1, 1), (0, 0), (1, 0)}
    assert A.initial == 0 and A.final_states == [1]


def test_two_monster_alphabet():
    autos = build(MonsterSpec((2, 2), [{1}, {1}]))
    assert [A.letter_count for A in autos] == [16, 16]


def test_three_state_monster():
    (A,) = build(MonsterSpec((3,), [{2}]))
    assert A.letter_count == 27
    assert sorted(T.encode(T.Transformation(tuple(A.table[:, a]))) for a in range(27)) == list(range(27))


@pytest.mark.parametrize("sizes", [(2,), (3,), (2, 2)])
def test_letters_biject_onto_transformation_tuples(sizes):
    spec = MonsterSpec(sizes, [set()] * len(sizes))
    autos = build(spec)
    seen = set()
    for ell in range(spec.alphabet_size):
        columns = tuple(tuple(A.table[:, ell].tolist()) for A in autos)
        seen.add(columns)
        comps = letter_components(spec, ell)
        assert tuple(t.image for t in comps) == columns
        assert letter_index(spec, comps) == ell
    expected = 1
    for n in sizes:
        expected *= n**n
    assert len(seen) == expected


def test_letter_labels():
    spec = MonsterSpec((2, 2), [set(), set()])
    ell = letter_index(spec, [T.Transformation((1, 1)), T.Transformation((1, 0))])
    assert letter_label(spec, ell) == "[11,10]"
    assert letter_label(MonsterSpec((2,), [set()]), T.encode(T.Transformation((0, 1)))) == "[01]"
    assert letter_label(MonsterSpec((3,), [set()]), T.encode(T.make_identity(3))) == "[012]"
    with pytest.raises(IndexError):
        letter_label(spec, 16)


def test_letter_budget():
    with pytest.raises(BudgetError) as info:
        build(MonsterSpec((4, 4), [set(), set()]))
    assert info.value.required == 256 * 256


def test_spec_validation():
    with pytest.raises(ValueError):
        MonsterSpec((2,), [{2}])
    with pytest.raises(ValueError):
        MonsterSpec((2, 2), [{1}])


@pytest.mark.parametrize("n", [2, 3])
def test_mirror_of_monster_is_minimal(n):
    (A,) = build(MonsterSpec((n,), [{n - 1}]))
    M = apply(builtin("mirror"), [A])
    assert M.state_count == 2**n
    assert minimize(M).state_count == 2**n


def test_monster_dominates_random_inputs(rng):
    for name in ["star", "sroot", "mirror", "prefin"]:
        m = builtin(name)
        for _ in range(10):
            n = rng.randint(1, 3)
            A = random_cdfa(rng, n, rng.randint(1, 3))
            (M,) = build(MonsterSpec((n,), [A.final_states]))
            assert minimize(apply(m, [A])).state_count <= minimize(apply(m, [M])).state_count
