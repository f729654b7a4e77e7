"""Block-form ("simple") melodies that approximate a target equilibrium."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import floor
from typing import Sequence

from .counterpoint import max_unfolding_deviation, unfolding_payoff
from .errors import NotAnEquilibrium, ValidationError
from .game import Action, MixedProfile, MixedStrategy, NormalFormGame, max_deviation
from .schedules import Schedule
from .sequences import Melody, PeriodicProfile, PeriodicStrategy, fold_profile


@dataclass(frozen=True)
class Apportionment:
    actions: tuple[Action, ...]
    counts: tuple[int, ...]
    tau: int

    def as_dict(self) -> dict:
        return dict(zip(self.actions, self.counts))


def apportion(target: MixedStrategy, tau: int, actions: Sequence[Action] | None = None) -> Apportionment:
    """Split ``tau`` notes over the target's support.

    Supported actions are taken in ``actions`` order (insertion order of the
    target's weights by default).  All but the last get
    ``max(1, floor(p * tau))`` notes and the last takes the remainder, so no
    supported action is ever dropped; if the remainder would be empty the
    period is too short and the call fails.
    """
    actions = tuple(actions) if actions is not None else tuple(target.weights)
    support = [a for a in actions if target.prob(a) > 0]
    if set(support) != set(target.support):
        raise ValidationError("target support is not contained in the given action list")
    r = len(support)
    if tau < r:
        raise ValidationError(f"period {tau} is shorter than the support size {r}")
    nu = {a: 0 for a in actions}
    for a in support[:-1]:
        nu[a] = max(1, floor(target.prob(a) * tau))
    rest = tau - sum(nu.values())
    if rest < 1:
        raise ValidationError(f"period {tau} too short to give every supported action a note")
    nu[support[-1]] = rest
    return Apportionment(actions, tuple(nu[a] for a in actions), tau)


def simple_melody(target: MixedStrategy, tau: int, actions: Sequence[Action] | None = None) -> Melody:
    app = apportion(target, tau, actions)
    notes: list[Action] = []
    for a, c in zip(app.actions, app.counts):
        notes.extend([a] * c)
    return Melody(tuple(notes))


@dataclass(frozen=True)
class ConvergenceRecord:
    n: int
    tau1: int
    tau2: int
    epsilon_n: Fraction
    fold_distance: Fraction
    payoffs: tuple[Fraction, Fraction]


def simple_profile(game: NormalFormGame, sigma_star: MixedProfile, tau1: int, tau2: int) -> PeriodicProfile:
    m1 = simple_melody(sigma_star.p1, tau1, game.actions_p1)
    m2 = simple_melody(sigma_star.p2, tau2, game.actions_p2)
    return PeriodicProfile(game, PeriodicStrategy(m1), PeriodicStrategy(m2))


def convergence_record(game, sigma_star, sched1: Schedule, sched2: Schedule, n: int) -> ConvergenceRecord:
    t1, t2 = sched1(n), sched2(n)
    if t1 < 1 or t2 < 1:
        raise ValidationError(f"schedules must be positive at n = {n}")
    profile = simple_profile(game, sigma_star, t1, t2)
    return ConvergenceRecord(
        n, t1, t2,
        max_unfolding_deviation(profile),
        fold_profile(profile).distance(sigma_star, game),
        unfolding_payoff(profile),
    )


def equilibrium_sequence(game: NormalFormGame, sigma_star: MixedProfile, sched1: Schedule,
                         sched2: Schedule, n_from: int, n_to: int, executor=None) -> list[ConvergenceRecord]:
    """One record per stage ``n_from..n_to``, in order.

    Stages are independent; pass a ``concurrent.futures`` executor to spread
    them across workers.  Output order does not depend on completion order.
    """
    game.check_profile(sigma_star)
    if max_deviation(game, sigma_star) != 0:
        raise NotAnEquilibrium("sigma_star is not a Nash equilibrium of the game")
    if n_from < 1 or n_to < n_from:
        raise ValidationError(f"empty stage range {n_from}..{n_to}")
    stages = range(n_from, n_to + 1)
    if executor is None:
        return [convergence_record(game, sigma_star, sched1, sched2, n) for n in stages]
    k = len(stages)
    return list(executor.map(convergence_record, [game] * k, [sigma_star] * k,
                             [sched1] * k, [sched2] * k, stages))
