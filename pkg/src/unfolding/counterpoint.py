"""Closed-form payoffs and deviation gains via bundle folding.

With ``rho = gcd(tau1, tau2)``, note ``j`` of player 1 only ever meets notes
of player 2 in the same residue class mod ``rho``, and within a class every
pair meets exactly once per piece.  Each residue class therefore behaves like
one play of the base game between the class frequencies (the bundle
profiles), and the unfolding payoff is the plain average over classes.
Deviations decouple the same way: the best melody of a given period picks a
best response per residue class.

Nothing here materializes the piece; cost is linear in ``tau1 + tau2``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import ValidationError
from .game import MixedProfile, MixedStrategy, NormalFormGame
from .sequences import Melody, PeriodicProfile


@dataclass(frozen=True)
class BundleFolding:
    rho: int
    bundle_profiles: tuple[MixedProfile, ...]


def class_counts(notes, actions, modulus):
    """counts[j][k]: occurrences of action k at positions congruent to j."""
    index = {a: k for k, a in enumerate(actions)}
    counts = [[0] * len(actions) for _ in range(modulus)]
    for t, a in enumerate(notes):
        counts[t % modulus][index[a]] += 1
    return counts


def _mix(actions, row, total):
    return MixedStrategy({a: Fraction(c, total) for a, c in zip(actions, row) if c})


def bundle_folding(profile: PeriodicProfile) -> BundleFolding:
    g = profile.game
    t1, t2 = profile.periods
    rho = math.gcd(t1, t2)
    c1 = class_counts(profile.p1.melody.notes, g.actions_p1, rho)
    c2 = class_counts(profile.p2.melody.notes, g.actions_p2, rho)
    d1, d2 = t1 // rho, t2 // rho
    profiles = tuple(
        MixedProfile(_mix(g.actions_p1, c1[j], d1), _mix(g.actions_p2, c2[j], d2))
        for j in range(rho)
    )
    return BundleFolding(rho, profiles)


def payoff_view(game: NormalFormGame, player: int):
    """Player's payoff matrix as ``U[own][opp]`` over a common denominator."""
    U1, U2, den = game.scaled
    if player == 1:
        return U1, den
    return [list(col) for col in zip(*U2)], den


def _per_class(profile: PeriodicProfile, player: int):
    """Per-class (current, best, best_action_index) scores for ``player``.

    Scores are integers in units of ``1 / (D * d_own * d_opp)`` where ``d``
    are the per-class note counts.
    """
    if player not in (1, 2):
        raise ValidationError(f"player must be 1 or 2, got {player!r}")
    g = profile.game
    own, opp = profile.side(player), profile.side(3 - player)
    rho = math.gcd(own.period, opp.period)
    U, _ = payoff_view(g, player)
    c_own = class_counts(own.melody.notes, g.actions(player), rho)
    c_opp = class_counts(opp.melody.notes, g.actions(3 - player), rho)
    d_own = own.period // rho
    out = []
    for j in range(rho):
        opp_row = c_opp[j]
        vals = [sum(c * u for c, u in zip(opp_row, U[k]) if c) for k in range(len(U))]
        current = sum(c * v for c, v in zip(c_own[j], vals) if c)
        best_k = max(range(len(vals)), key=lambda k: (vals[k], -k))
        out.append((current, d_own * vals[best_k], best_k))
    return out, rho


def _scale(profile, rho):
    den = profile.game.scaled[2]
    t1, t2 = profile.periods
    return rho * den * (t1 // rho) * (t2 // rho)


def unfolding_payoff(profile: PeriodicProfile) -> tuple[Fraction, Fraction]:
    result = []
    for player in (1, 2):
        rows, rho = _per_class(profile, player)
        result.append(Fraction(sum(r[0] for r in rows), _scale(profile, rho)))
    return result[0], result[1]


def unfolding_deviation_gain(profile: PeriodicProfile, player: int) -> Fraction:
    """Largest payoff gain available to ``player`` from any melody of its own period."""
    rows, rho = _per_class(profile, player)
    return Fraction(sum(best - cur for cur, best, _ in rows), _scale(profile, rho))


def max_unfolding_deviation(profile: PeriodicProfile) -> Fraction:
    return max(unfolding_deviation_gain(profile, 1), unfolding_deviation_gain(profile, 2))


def best_deviation_melody(profile: PeriodicProfile, player: int) -> Melody:
    """A best-responding melody of the player's period.

    Each residue class gets its first best response in action-list order.
    If the player already best-responds in every class, its own melody comes
    back unchanged.
    """
    rows, rho = _per_class(profile, player)
    own = profile.side(player)
    if all(cur == best for cur, best, _ in rows):
        return own.melody
    actions = profile.game.actions(player)
    block = tuple(actions[k] for _, _, k in rows)
    return Melody(block * (own.period // rho))


def count_heterogeneous_bundles(melody: Melody, rho: int):
    """Split ``melody`` into consecutive length-``rho`` bundles and classify them.

    Returns ``(total, pure_counts, heterogeneous)`` where ``pure_counts`` maps
    each action to the number of bundles made only of that action.
    """
    tau = melody.declared_period
    if rho < 1 or tau % rho:
        raise ValidationError(f"bundle size {rho} does not divide period {tau}")
    total = tau // rho
    pure: dict = {}
    for k in range(total):
        chunk = set(melody.notes[k * rho:(k + 1) * rho])
        if len(chunk) == 1:
            a = chunk.pop()
            pure[a] = pure.get(a, 0) + 1
    return total, pure, total - sum(pure.values())
