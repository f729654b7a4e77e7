from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from unfolding import (MixedProfile, MixedStrategy, NormalFormGame, ValidationError, as_fraction,
                       best_response_actions, build_matching_pennies, build_modified_mp, deviation_gain,
                       expected_payoff, is_epsilon_ne, is_matching_pennies, max_deviation)

from .oracles import base_gap, mixed_payoff
from .strategies import games, mixed


def prof(x, y, actions=("H", "T")):
    return MixedProfile(MixedStrategy.from_vector(actions, x), MixedStrategy.from_vector(actions, y))


HALF = prof([F(1, 2), F(1, 2)], [F(1, 2), F(1, 2)])
CASE1 = prof([F(1, 2), F(1, 2)], [F(1, 3), F(2, 3)])


def test_expected_payoff_examples(mp):
    assert expected_payoff(mp, CASE1) == (F(1, 2), F(1, 2))
    pure_hh = MixedProfile(MixedStrategy.pure("H"), MixedStrategy.pure("H"))
    assert expected_payoff(mp, pure_hh) == (1, 0)
    g = build_modified_mp(F(1, 3))
    assert expected_payoff(g, prof([F(1, 3), F(2, 3)], [F(1, 3), F(2, 3)])) == (F(10, 9), F(10, 9))


def test_expected_payoff_rejects_foreign_actions(mp):
    bad = MixedProfile(MixedStrategy.pure("X"), MixedStrategy.pure("H"))
    with pytest.raises(ValidationError):
        expected_payoff(mp, bad)


def test_deviation_gain_examples(mp):
    assert deviation_gain(mp, CASE1, 1) == F(1, 6)
    assert deviation_gain(mp, HALF, 1) == deviation_gain(mp, HALF, 2) == 0
    g = build_modified_mp(F(1, 3))
    hh = MixedProfile(MixedStrategy.pure("H"), MixedStrategy.pure("H"))
    assert deviation_gain(g, hh, 2) == F(2, 3)
    with pytest.raises(ValidationError):
        deviation_gain(mp, CASE1, 3)


def test_max_deviation_examples(mp, g14):
    assert max_deviation(mp, HALF) == 0
    assert max_deviation(mp, CASE1) == F(1, 6)
    hh = MixedProfile(MixedStrategy.pure("H"), MixedStrategy.pure("H"))
    assert max_deviation(g14, hh) == F(3, 4)


def test_best_response_examples(mp):
    assert best_response_actions(mp, MixedStrategy.from_vector("HT", [F(1, 3), F(2, 3)]), 1) == ["T"]
    assert best_response_actions(mp, MixedStrategy.uniform("HT"), 1) == ["H", "T"]
    for d in (F(1, 5), F(1, 4), F(2, 5)):
        g = build_modified_mp(d)
        assert best_response_actions(g, MixedStrategy.from_vector("HT", [d, 1 - d]), 1) == ["H", "T"]


def test_is_epsilon_ne(mp):
    assert is_epsilon_ne(mp, CASE1, F(1, 6))
    assert not is_epsilon_ne(mp, CASE1, F(1, 7))
    assert is_epsilon_ne(mp, HALF, 0)
    with pytest.raises(ValidationError):
        is_epsilon_ne(mp, HALF, F(-1, 10))


def test_matching_pennies_tables(mp):
    assert (mp.payoff_p1[("H", "H")], mp.payoff_p2[("H", "H")]) == (1, 0)
    assert (mp.payoff_p1[("H", "T")], mp.payoff_p2[("H", "T")]) == (0, 1)
    assert all(mp.payoff_p1[k] + mp.payoff_p2[k] == 1 for k in mp.payoff_p1)
    assert is_matching_pennies(mp)


def test_modified_mp_tables():
    g = build_modified_mp("1/3")
    assert g.payoff_p1[("H", "H")] == F(4, 3)
    assert g.payoff_p2[("H", "H")] == F(2, 3)
    g0 = build_modified_mp(0)
    assert set(g0.payoff_p1.values()) | set(g0.payoff_p2.values()) == {0, 1}
    # at delta = 0 the roles of H and T swap relative to plain Matching Pennies
    assert g0.payoff_p1[("T", "T")] == 1 and g0.payoff_p2[("T", "H")] == 1
    for bad in (F(-1, 2), F(3, 2)):
        with pytest.raises(ValidationError):
            build_modified_mp(bad)


def test_as_fraction_parsing():
    assert as_fraction("3/4") == F(3, 4)
    assert as_fraction(2) == 2
    for bad in (0.5, True, "x", "1/0"):
        with pytest.raises(ValidationError):
            as_fraction(bad)


def test_mixed_strategy_validation():
    with pytest.raises(ValidationError):
        MixedStrategy({"H": F(1, 2)})
    with pytest.raises(ValidationError):
        MixedStrategy({"H": F(3, 2), "T": F(-1, 2)})
    assert MixedStrategy({"H": F(1), "T": F(0)}) == MixedStrategy.pure("H")


def test_game_json_roundtrip(tmp_path, g14):
    path = tmp_path / "g.json"
    g14.save(path)
    back = NormalFormGame.load(path)
    assert back.payoff_p1 == g14.payoff_p1 and back.payoff_p2 == g14.payoff_p2
    assert back.actions_p1 == g14.actions_p1
    with pytest.raises(ValidationError):
        NormalFormGame.loads('{"actions_p1": ["a"], "actions_p2": ["b"], "payoff_p1": [[1]]}')


@settings(max_examples=60, deadline=None)
@given(st.data())
def test_gains_nonnegative_and_match_oracle(data):
    g = data.draw(games())
    x = data.draw(mixed(g.actions_p1))
    y = data.draw(mixed(g.actions_p2))
    p = MixedProfile(MixedStrategy(x), MixedStrategy(y))
    assert deviation_gain(g, p, 1) >= 0 and deviation_gain(g, p, 2) >= 0
    assert max_deviation(g, p) == base_gap(g, x, y)
    assert expected_payoff(g, p) == (mixed_payoff(g, x, y, 1), mixed_payoff(g, x, y, 2))


@settings(max_examples=60, deadline=None)
@given(st.data(), st.integers(1, 5), st.integers(-3, 3))
def test_affine_rescaling(data, scale, shift):
    g = data.draw(games())
    x = data.draw(mixed(g.actions_p1))
    y = data.draw(mixed(g.actions_p2))
    p = MixedProfile(MixedStrategy(x), MixedStrategy(y))
    h = g.rescaled(scale, shift, scale + 1, -shift)
    assert deviation_gain(h, p, 1) == scale * deviation_gain(g, p, 1)
    assert deviation_gain(h, p, 2) == (scale + 1) * deviation_gain(g, p, 2)
    for i, opp in ((1, p.p2), (2, p.p1)):
        assert best_response_actions(h, opp, i) == best_response_actions(g, opp, i)


@settings(max_examples=60, deadline=None)
@given(st.data(), st.integers(0, 6))
def test_expected_payoff_bilinear(data, k):
    g = data.draw(games())
    xa, xb = data.draw(mixed(g.actions_p1)), data.draw(mixed(g.actions_p1))
    y = MixedStrategy(data.draw(mixed(g.actions_p2)))
    lam = F(k, 6)
    xm = {a: lam * xa[a] + (1 - lam) * xb[a] for a in g.actions_p1}
    lhs = expected_payoff(g, MixedProfile(MixedStrategy(xm), y))
    ua = expected_payoff(g, MixedProfile(MixedStrategy(xa), y))
    ub = expected_payoff(g, MixedProfile(MixedStrategy(xb), y))
    assert lhs == tuple(lam * a + (1 - lam) * b for a, b in zip(ua, ub))


@settings(max_examples=60, deadline=None)
@given(st.data())
def test_mp_constant_sum(data):
    mp = build_matching_pennies()
    x, y = data.draw(mixed(("H", "T"))), data.draw(mixed(("H", "T")))
    u1, u2 = expected_payoff(mp, MixedProfile(MixedStrategy(x), MixedStrategy(y)))
    assert u1 + u2 == 1
