"""Deviation gains when a player may use any period up to a cap.

Against a fixed opponent melody of period ``q``, the best period-``p`` melody
is found class by class: positions congruent mod ``gcd(p, q)`` face the same
opponent notes, so each class independently best-responds to its slice of
the opponent.  Enumerating melodies is never needed.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .counterpoint import class_counts, payoff_view, unfolding_payoff
from .errors import ValidationError
from .game import NormalFormGame
from .sequences import Melody, PeriodicProfile


def best_payoff_with_period(game: NormalFormGame, opponent: Melody, player: int, p: int) -> Fraction:
    """Highest average payoff a period-``p`` melody can earn against ``opponent``."""
    q = opponent.declared_period
    rho = math.gcd(p, q)
    U, den = payoff_view(game, player)
    counts = class_counts(opponent.notes, game.actions(3 - player), rho)
    total = 0
    for row in counts:
        total += max(sum(c * u for c, u in zip(row, urow) if c) for urow in U)
    return Fraction(total, q * den)


def flexible_deviation_gain(profile: PeriodicProfile, player: int, tau_max: int) -> tuple[Fraction, int]:
    """Best gain over all periods ``1..tau_max``, with the smallest period achieving it."""
    if player not in (1, 2):
        raise ValidationError(f"player must be 1 or 2, got {player!r}")
    if tau_max < 1:
        raise ValidationError(f"tau_max must be >= 1, got {tau_max}")
    own = profile.side(player)
    if own.period > tau_max:
        raise ValidationError(f"current period {own.period} exceeds tau_max {tau_max}")
    current = unfolding_payoff(profile)[player - 1]
    opponent = profile.side(3 - player).melody
    best, best_p = None, None
    for p in range(1, tau_max + 1):
        val = best_payoff_with_period(profile.game, opponent, player, p)
        if best is None or val > best:
            best, best_p = val, p
    return best - current, best_p


def flip_melody(melody: Melody, actions=("H", "T")) -> Melody:
    """Swap the two actions of a two-action game in every note."""
    if len(actions) != 2:
        raise ValidationError("flipping needs a two-action game")
    a, b = actions
    other = {a: b, b: a}
    try:
        return Melody(tuple(other[x] for x in melody.notes))
    except KeyError as exc:
        raise ValidationError(f"note {exc} is not one of {actions}") from None


def copy_best_response_melody(game: NormalFormGame, opponent: Melody, player: int) -> Melody:
    """Note-by-note best reply to the opponent, at the opponent's period."""
    own = game.actions(player)
    notes = []
    for b in opponent.notes:
        if player == 1:
            vals = [game.payoff_p1[(a, b)] for a in own]
        else:
            vals = [game.payoff_p2[(b, a)] for a in own]
        notes.append(own[vals.index(max(vals))])
    return Melody(tuple(notes))


def mp_floor_check(profile: PeriodicProfile, tau_max_pair: tuple[int, int]) -> tuple[Fraction, bool]:
    eps = max(flexible_deviation_gain(profile, i, tau_max_pair[i - 1])[0] for i in (1, 2))
    return eps, eps >= Fraction(1, 3)


@dataclass(frozen=True)
class TacticWitness:
    """The flip or copy deviation that certifies a large flexible gain."""

    tactic: str
    player: int
    melody: Melody
    gain: Fraction


def tactic_witness(profile: PeriodicProfile, tau_max_pair: tuple[int, int]) -> TacticWitness:
    """Best of the flip and copy-best-response deviations, in Matching Pennies.

    Copying is only legal when the opponent's period fits under the copier's
    cap.  Ties prefer copy, then player 1.
    """
    g = profile.game
    current = unfolding_payoff(profile)
    options = []
    for player in (1, 2):
        opp = profile.side(3 - player).melody
        if opp.declared_period <= tau_max_pair[player - 1]:
            m = copy_best_response_melody(g, opp, player)
            options.append(("copy", player, m))
    for player in (1, 2):
        m = flip_melody(profile.side(player).melody, g.actions(player))
        options.append(("flip", player, m))
    best = None
    for tactic, player, m in options:
        gain = unfolding_payoff(profile.with_melody(player, m))[player - 1] - current[player - 1]
        if best is None or gain > best.gain:
            best = TacticWitness(tactic, player, m, gain)
    return best
