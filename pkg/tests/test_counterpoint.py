import itertools
import math
from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from unfolding import (Melody, NormalFormGame, MixedStrategy, PeriodicProfile, PeriodicStrategy, ValidationError,
                       avg_payoff_direct, best_deviation_melody, build_matching_pennies, bundle_folding,
                       count_heterogeneous_bundles, expected_payoff, fold, fold_profile, max_deviation,
                       max_unfolding_deviation, unfolding_deviation_gain, unfolding_payoff)

from . import oracles
from .strategies import games, profiles


def P(game, a, b):
    return PeriodicProfile(game, PeriodicStrategy.parse(a), PeriodicStrategy.parse(b))


def test_bundle_folding_examples(mp):
    bf = bundle_folding(P(mp, "HT", "HTT"))
    assert bf.rho == 1 and bf.bundle_profiles[0] == fold_profile(P(mp, "HT", "HTT"))
    bf = bundle_folding(P(mp, "HHTT", "HHHTTT"))
    assert bf.rho == 2
    half = MixedStrategy.uniform("HT")
    mu1, mu2 = bf.bundle_profiles
    assert mu1.p1 == half and mu1.p2 == MixedStrategy.from_vector("HT", [F(2, 3), F(1, 3)])
    assert mu2.p1 == half and mu2.p2 == MixedStrategy.from_vector("HT", [F(1, 3), F(2, 3)])
    bf = bundle_folding(P(mp, "HTT", "THT"))
    assert bf.rho == 3
    assert [(m.p1, m.p2) for m in bf.bundle_profiles] == [
        (MixedStrategy.pure(a), MixedStrategy.pure(b)) for a, b in zip("HTT", "THT")]


def test_unfolding_payoff_examples(mp):
    assert unfolding_payoff(P(mp, "HT", "HTT")) == (F(1, 2), F(1, 2))
    prof = P(mp, "HHTT", "HHHTTT")
    assert unfolding_payoff(prof) == avg_payoff_direct(prof) == (F(1, 2), F(1, 2))


def test_gain_examples(mp):
    prof = P(mp, "HT", "HTT")
    assert unfolding_deviation_gain(prof, 1) == F(1, 6)
    assert unfolding_deviation_gain(prof, 2) == 0
    assert max_unfolding_deviation(prof) == F(1, 6)
    assert max_unfolding_deviation(P(mp, "HT", "TH")) == 1
    with pytest.raises(ValidationError):
        unfolding_deviation_gain(prof, 0)


def test_equal_periods_loser_gains_half(mp):
    for n in range(1, 7):
        for m1 in itertools.product("HT", repeat=n):
            prof = PeriodicProfile(mp, PeriodicStrategy(Melody(m1)), PeriodicStrategy(Melody(("H",) * n)))
            u = unfolding_payoff(prof)
            loser = 1 if u[0] <= F(1, 2) else 2
            assert unfolding_deviation_gain(prof, loser) >= F(1, 2)
            dev = best_deviation_melody(prof, loser)
            assert unfolding_payoff(prof.with_melody(loser, dev))[loser - 1] == 1


def test_best_deviation_melody_examples(mp):
    prof = P(mp, "HT", "HTT")
    assert best_deviation_melody(prof, 1).notes == ("T", "T")
    assert best_deviation_melody(prof, 2) == prof.p2.melody


def test_zero_gain_when_bundles_are_equilibria():
    pd = NormalFormGame.from_matrices("CD", "CD", [[3, 0], [5, 1]], [[3, 5], [0, 1]])
    prof = P(pd, "DD", "DDDD")
    assert all(max_deviation(pd, mu) == 0 for mu in bundle_folding(prof).bundle_profiles)
    assert max_unfolding_deviation(prof) == 0


def test_heterogeneous_bundle_examples():
    assert count_heterogeneous_bundles(Melody(tuple("HHHTTT")), 2) == (3, {"H": 1, "T": 1}, 1)
    assert count_heterogeneous_bundles(Melody(tuple("HHTTTT")), 2) == (3, {"H": 1, "T": 2}, 0)
    with pytest.raises(ValidationError):
        count_heterogeneous_bundles(Melody(tuple("HHT")), 2)


# the cache keeps the exhaustive MP sweep fast: best payoff per (opponent, period)
_best = {}


def brute_gain(game, m1, m2, player):
    own, opp = (m1, m2) if player == 1 else (m2, m1)
    key = (id(game), player, opp, len(own))
    if key not in _best:
        _best[key] = oracles.best_melody_payoff(game, opp, player, len(own))
    return _best[key] - oracles.play(game, m1, m2)[player - 1]


def test_gain_matches_brute_force_mp_small(mp):
    mels = [m for t in range(1, 5) for m in itertools.product("HT", repeat=t)]
    for m1 in mels:
        for m2 in mels:
            prof = PeriodicProfile(mp, PeriodicStrategy(Melody(m1)), PeriodicStrategy(Melody(m2)))
            for i in (1, 2):
                assert unfolding_deviation_gain(prof, i) == brute_gain(mp, m1, m2, i)


@settings(max_examples=60, deadline=None)
@given(st.data())
def test_closed_form_matches_oracles(data):
    g = data.draw(games(max_actions=3))
    prof = data.draw(profiles(g, max_period=5))
    m1, m2 = prof.p1.melody.notes, prof.p2.melody.notes
    assert unfolding_payoff(prof) == oracles.play(g, m1, m2)
    for i in (1, 2):
        gain = unfolding_deviation_gain(prof, i)
        assert gain == oracles.deviation_gain(g, m1, m2, i)
        dev = best_deviation_melody(prof, i)
        assert len(dev) == prof.side(i).period
        assert unfolding_payoff(prof.with_melody(i, dev))[i - 1] == unfolding_payoff(prof)[i - 1] + gain


@settings(max_examples=80, deadline=None)
@given(st.data())
def test_bundle_identities(data):
    g = data.draw(games(max_actions=3))
    prof = data.draw(profiles(g, max_period=12))
    bf = bundle_folding(prof)
    t1, t2 = prof.periods
    assert bf.rho == math.gcd(t1, t2)
    folded = fold_profile(prof)
    for i, tau in ((1, t1), (2, t2)):
        for a in g.actions(i):
            avg = sum(mu.side(i).prob(a) for mu in bf.bundle_profiles) / bf.rho
            assert avg == folded.side(i).prob(a)
        for mu in bf.bundle_profiles:
            assert all(w >= F(bf.rho, tau) for w in mu.side(i).weights.values() if w)
    if bf.rho == 1:
        assert unfolding_payoff(prof) == expected_payoff(g, folded)
        assert max_unfolding_deviation(prof) == max_deviation(g, folded)
