import itertools

import numpy as np
import pytest
from conftest import random_cdfa

from statecomp import transform as T
from statecomp.dfa import Cdfa, accessible_part, enumerate_accepted, equivalent, rename_letters, restrict_alphabet
from statecomp.errors import BudgetError
from statecomp.modifier import (
    BUILTIN_NAMES,
    Tableau,
    apply,
    builtin,
    compose,
    literal_conc,
    oracle_check,
    parse_modifier,
    state_labels,
    unclosed_star,
)
from statecomp.monster import MonsterSpec, build, letter_index

A_FIRST = Cdfa([[1], [2], [2]], [2])
A_SECOND = Cdfa([[2], [1], [1]], [1])


@pytest.fixture
def m2():
    (A,) = build(MonsterSpec((2,), [{1}]))
    return A


def letter(*image):
    return T.encode(T.Transformation(image))


def test_comp_on_monster(m2):
    C = apply(builtin("comp"), [m2])
    assert np.array_equal(C.table, m2.table)
    assert C.final_states == [0]


def test_mirror_on_monster_matches_figure(m2):
    M = apply(builtin("mirror"), [m2])
    empty, zero, one, both = 0, 1, 2, 3
    assert M.state_count == 4
    assert M.initial == one
    assert M.final_states == [zero, both]
    a, b, c, d = letter(0, 1), letter(1, 1), letter(0, 0), letter(1, 0)
    expected = {
        zero: {a: zero, b: empty, c: both, d: one},
        one: {a: one, b: both, c: empty, d: zero},
        empty: {a: empty, b: empty, c: empty, d: empty},
        both: {a: both, b: both, c: both, d: both},
    }
    for q, row in expected.items():
        for x, target in row.items():
            assert M.table[q, x] == target
    assert state_labels(builtin("mirror"), (2,)) == ["{}", "{0}", "{1}", "{0,1}"]


def test_sroot_on_monster(m2):
    S = apply(builtin("sroot"), [m2])
    assert S.state_count == 4
    assert S.initial == T.encode(T.make_identity(2))
    finals = {T.decode(2, g) for g in S.final_states}
    expected = {T.decode(2, g) for g in range(4) if T.decode(2, g)(T.decode(2, g)(0)) == 1}
    assert finals == expected == {T.Transformation((1, 1))}


def test_star_from_empty_reads_closure(rng):
    star = builtin("star")
    for _ in range(30):
        A = random_cdfa(rng, 3, 2)
        S = apply(star, [A])
        for a in range(2):
            target = int(A.table[0, a])
            expected = 1 << target
            if A.finals[target]:
                expected |= 1
            assert S.table[0, a] == expected
        assert S.initial == 0 and S.finals[0]


def test_inter_on_two_monster():
    autos = build(MonsterSpec((2, 2), [{1}, {1}]))
    spec = MonsterSpec((2, 2), [{1}, {1}])
    ell = letter_index(spec, [T.Transformation((1, 1)), T.Transformation((1, 1))])
    P = apply(builtin("inter"), autos)
    target = P.table[0, ell]
    assert target == 1 * 2 + 1
    assert P.finals[target]


def test_fto1_breaks_equivalence():
    fto1 = builtin("fto1")
    assert equivalent(A_FIRST, A_SECOND)
    first, second = apply(fto1, [A_FIRST]), apply(fto1, [A_SECOND])
    assert not equivalent(first, second)
    assert second == A_SECOND
    even_plus = Cdfa([[1], [2], [1]], [2])
    assert equivalent(first, even_plus)
    assert enumerate_accepted(first, 6) == [(0,) * 2, (0,) * 4, (0,) * 6]


def test_compose_star_inter_state_space():
    star_inter = compose(builtin("star"), 1, builtin("inter"))
    assert star_inter.arity == 2
    autos = build(MonsterSpec((2, 2), [{1}, {1}]))
    S = apply(star_inter, autos)
    assert S.state_count == 2 ** (2 * 2)
    assert parse_modifier("star.inter").name == "star.inter"


def test_compose_double_complement(rng):
    cc = compose(builtin("comp"), 1, builtin("comp"))
    for _ in range(20):
        A = random_cdfa(rng, 3, 2)
        assert equivalent(apply(cc, [A]), A)


def test_compose_matches_nested_application(rng):
    pool = ["star", "comp", "inter", "union", "conc", "xor"]
    for _ in range(60):
        m1, m2 = builtin(rng.choice(pool)), builtin(rng.choice(pool))
        j = rng.randint(1, m1.arity)
        k = rng.randint(1, 2)
        autos = [random_cdfa(rng, rng.randint(1, 3), k) for _ in range(m1.arity + m2.arity - 1)]
        inner = apply(m2, autos[j - 1 : j - 1 + m2.arity])
        nested = apply(m1, autos[: j - 1] + [inner] + autos[j - 1 + m2.arity :])
        composed = apply(compose(m1, j, m2), autos)
        assert equivalent(composed, nested)
        assert composed == nested


def test_compose_rejects_bad_position():
    with pytest.raises(ValueError):
        compose(builtin("star"), 2, builtin("inter"))


def test_parse_explicit_position():
    m = parse_modifier("union.2:star")
    assert m.arity == 2 and m.name == "union.2:star"
    with pytest.raises(ValueError):
        parse_modifier("nosuch")


def test_unknown_builtin():
    with pytest.raises(ValueError):
        builtin("quotient")


@pytest.mark.parametrize("name", BUILTIN_NAMES)
def test_lift_is_letter_blind(name, rng):
    m = builtin(name)
    sizes = [rng.randint(1, 3) for _ in range(m.arity)]
    inits = tuple(0 for _ in sizes)
    finals = tuple(np.array([rng.random() < 0.5 for _ in range(n)]) for n in sizes)
    columns = [np.array([rng.randrange(n) for _ in range(n)]) for n in sizes]
    actions = [np.stack([c, c, c]) for c in columns]
    out = m.lift(inits, finals, actions)
    assert np.array_equal(out[0], out[1]) and np.array_equal(out[1], out[2])


def test_sroot_lift_is_a_morphism(rng):
    sroot = builtin("sroot")
    ts = [T.decode(3, k) for k in range(27)]
    for F in [{2}, {0}, {0, 1}]:
        fmask = (np.array([q in F for q in range(3)]),)
        for _ in range(150):
            a, b = rng.choice(ts), rng.choice(ts)
            la = sroot.lift_transformations((0,), fmask, [a])
            lb = sroot.lift_transformations((0,), fmask, [b])
            lab = sroot.lift_transformations((0,), fmask, [T.compose(a, b)])
            assert T.compose(la, lb) == lab


def test_star_accepts_empty_word(rng):
    for _ in range(20):
        A = random_cdfa(rng, rng.randint(1, 3), 2)
        assert apply(builtin("star"), [A]).accepts([])


def test_conc_initial_state_handles_empty_first_factor():
    eps_only = Cdfa([[1], [1]], [0])
    S = apply(builtin("conc"), [eps_only, eps_only])
    assert S.accepts([])
    L = apply(literal_conc(), [eps_only, eps_only])
    assert not L.accepts([])


def test_apply_budget():
    autos = build(MonsterSpec((3,), [{2}]))
    with pytest.raises(BudgetError):
        apply(builtin("sroot"), autos, budget=100)


def test_apply_checks_arity_and_alphabet():
    with pytest.raises(ValueError):
        apply(builtin("inter"), [A_FIRST])
    with pytest.raises(ValueError):
        apply(builtin("inter"), [A_FIRST, Cdfa([[0, 0]], [])])


@pytest.mark.parametrize("name", BUILTIN_NAMES)
def test_rename_and_restrict_commute(name, rng):
    m = builtin(name)
    for _ in range(15):
        autos = [random_cdfa(rng, rng.randint(1, 3), 3) for _ in range(m.arity)]
        sigma = rng.sample(range(3), 3)
        lhs = rename_letters(apply(m, autos), sigma)
        rhs = apply(m, [rename_letters(A, sigma) for A in autos])
        assert equivalent(lhs, rhs)
        keep = rng.sample(range(3), rng.randint(1, 3))
        lhs = restrict_alphabet(apply(m, autos), keep)
        rhs = apply(m, [restrict_alphabet(A, keep) for A in autos])
        assert equivalent(lhs, rhs)


def test_oracle_check_sroot_random(rng):
    for _ in range(10):
        A = random_cdfa(rng, 3, 2)
        assert oracle_check(builtin("sroot"), "sroot", [A], 6).passed


def test_oracle_check_star_on_monster(m2):
    verdict = oracle_check(builtin("star"), "star", [m2], 6)
    assert verdict.passed and verdict.words_checked == sum(4**k for k in range(7))


def test_oracle_check_catches_broken_star(rng):
    found = False
    for _ in range(20):
        A = random_cdfa(rng, 3, 2)
        verdict = oracle_check(unclosed_star(), "star", [A], 6)
        if not verdict.passed:
            found = True
            break
    assert found


def test_tableau():
    T_ = Tableau.from_state(2, 3, 0b100001)
    assert T_[0, 0] and T_[1, 2] and not T_[0, 1]
    assert T_.ones == 2
    assert T_.state == 0b100001
    assert str(T_) == "100\n001"
    with pytest.raises(ValueError):
        Tableau(2, 2, (True,))


def test_star_inter_state_labels():
    labels = state_labels(parse_modifier("star.inter"), (2, 2), [0, 1, 0b1001])
    assert labels == ["{}", "{(0,0)}", "{(0,0),(1,1)}"]


def test_star_inter_accessible_tableaux_respect_the_screen():
    autos = build(MonsterSpec((2, 2), [{1}, {1}]))
    S = apply(parse_modifier("star.inter"), autos)
    _, order = accessible_part(S)
    for state in order.tolist():
        t = Tableau.from_state(2, 2, state)
        if t[1, 1]:
            assert t[0, 0]
