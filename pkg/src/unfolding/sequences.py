"""Eventually periodic strategies and the brute-force payoff path.

A strategy ``x y^inf`` is stored as a prefix ``x`` and a melody ``y``.  The
melody's length is its declared period (the rationality level it is played
at), even when a shorter period would reproduce it: ``HH`` is a legal
period-2 melody.  Prefixes are kept for bookkeeping only; all payoffs and
foldings are computed on the periodic parts, with both melodies starting in
phase.
"""
from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import LimitExceeded, ValidationError
from .game import Action, MixedProfile, MixedStrategy, NormalFormGame

PIECE_LIMIT = 10**6


@dataclass(frozen=True)
class Melody:
    notes: tuple[Action, ...]

    def __post_init__(self):
        notes = tuple(self.notes)
        if not notes:
            raise ValidationError("a melody needs at least one note")
        object.__setattr__(self, "notes", notes)

    @property
    def declared_period(self) -> int:
        return len(self.notes)

    def __len__(self):
        return len(self.notes)

    def __getitem__(self, i):
        return self.notes[i]

    def __iter__(self):
        return iter(self.notes)

    def __str__(self):
        return _join(self.notes)


@dataclass(frozen=True)
class PeriodicStrategy:
    """``prefix`` followed by ``melody`` repeated forever."""

    melody: Melody
    prefix: tuple[Action, ...] = ()

    def __post_init__(self):
        if not isinstance(self.melody, Melody):
            object.__setattr__(self, "melody", Melody(tuple(self.melody)))
        object.__setattr__(self, "prefix", tuple(self.prefix))

    @property
    def period(self) -> int:
        return self.melody.declared_period

    def action_at(self, t: int) -> Action:
        """Action played in round ``t`` (0-based) of the infinite sequence."""
        if t < len(self.prefix):
            return self.prefix[t]
        return self.melody[(t - len(self.prefix)) % self.period]

    @classmethod
    def parse(cls, literal: str) -> "PeriodicStrategy":
        """Parse ``"x;y"``, e.g. ``";HT"`` or ``"TTTT;H"`` or ``";Up,Down"``."""
        if ";" in literal:
            prefix, melody = literal.split(";", 1)
        else:
            prefix, melody = "", literal
        notes = _split_actions(melody)
        if not notes:
            raise ValidationError(f"strategy literal {literal!r} has an empty melody")
        return cls(Melody(notes), _split_actions(prefix))

    def literal(self) -> str:
        return f"{_join(self.prefix)};{_join(self.melody.notes)}"

    def __str__(self):
        return self.literal()


def _split_actions(text: str) -> tuple[Action, ...]:
    text = text.strip()
    if not text:
        return ()
    if "," in text:
        parts = tuple(p.strip() for p in text.split(","))
        if any(not p for p in parts):
            raise ValidationError(f"empty action identifier in {text!r}")
        return parts
    return tuple(text)


def _join(actions: Sequence[Action]) -> str:
    if all(len(a) == 1 for a in actions):
        return "".join(actions)
    return ",".join(actions)


@dataclass(frozen=True)
class PeriodicProfile:
    game: NormalFormGame
    p1: PeriodicStrategy
    p2: PeriodicStrategy

    def __post_init__(self):
        for player, s in ((1, self.p1), (2, self.p2)):
            if not isinstance(s, PeriodicStrategy):
                s = PeriodicStrategy(s)
                object.__setattr__(self, f"p{player}", s)
            legal = set(self.game.actions(player))
            bad = [a for a in s.prefix + s.melody.notes if a not in legal]
            if bad:
                raise ValidationError(f"actions {bad} not available to player {player}")

    def side(self, player: int) -> PeriodicStrategy:
        return self.p1 if player == 1 else self.p2

    def with_melody(self, player: int, melody) -> "PeriodicProfile":
        s = PeriodicStrategy(melody if isinstance(melody, Melody) else Melody(tuple(melody)))
        if player == 1:
            return PeriodicProfile(self.game, s, self.p2)
        return PeriodicProfile(self.game, self.p1, s)

    @property
    def periods(self) -> tuple[int, int]:
        return self.p1.period, self.p2.period


def fold(strategy: PeriodicStrategy) -> MixedStrategy:
    """Limit action frequencies of the strategy (the prefix drops out)."""
    counts = Counter(strategy.melody.notes)
    tau = strategy.period
    return MixedStrategy({a: Fraction(c, tau) for a, c in counts.items()})


def fold_profile(profile: PeriodicProfile) -> MixedProfile:
    return MixedProfile(fold(profile.p1), fold(profile.p2))


def piece_length(profile: PeriodicProfile) -> int:
    return math.lcm(*profile.periods)


def _check_piece(profile, limit):
    length = piece_length(profile)
    if length > limit:
        raise LimitExceeded(
            f"piece length lcm{profile.periods} = {length} exceeds the limit {limit}; "
            "use the closed form in unfolding.counterpoint"
        )
    return length


def piece(profile: PeriodicProfile, limit: int = PIECE_LIMIT) -> list[tuple[Action, Action]]:
    """The lcm-length joint cycle of chords, melodies aligned at round 0."""
    length = _check_piece(profile, limit)
    m1, m2 = profile.p1.melody.notes, profile.p2.melody.notes
    t1, t2 = len(m1), len(m2)
    return [(m1[t % t1], m2[t % t2]) for t in range(length)]


def avg_payoff_direct(profile: PeriodicProfile, limit: int = PIECE_LIMIT) -> tuple[Fraction, Fraction]:
    """Average payoff over one piece, by walking every round."""
    length = _check_piece(profile, limit)
    m1, m2 = profile.p1.melody.notes, profile.p2.melody.notes
    t1, t2 = len(m1), len(m2)
    chords = Counter((m1[t % t1], m2[t % t2]) for t in range(length))
    g = profile.game
    u1 = sum((c * g.payoff_p1[k] for k, c in chords.items()), Fraction(0))
    u2 = sum((c * g.payoff_p2[k] for k, c in chords.items()), Fraction(0))
    return u1 / length, u2 / length


def fundamental_period(melody: Melody) -> int:
    notes = melody.notes
    n = len(notes)
    for d in range(1, n + 1):
        if n % d == 0 and notes == notes[:d] * (n // d):
            return d
    return n  # unreachable: d == n always matches
