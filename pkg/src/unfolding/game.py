"""Two-player normal-form games with exact rational payoffs.

Everything here works on :class:`fractions.Fraction`; no floating point is
ever introduced.  Payoff tables are keyed by ``(action_p1, action_p2)``.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Mapping, Sequence

from .errors import ValidationError

Action = str


def as_fraction(value) -> Fraction:
    """Parse an int, Fraction or ``"p/q"`` string into a Fraction.

    Floats are rejected: they cannot be represented exactly.
    """
    if isinstance(value, bool):
        raise ValidationError(f"not a rational: {value!r}")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ValidationError(f"not a rational: {value!r}") from exc
    raise ValidationError(f"not an exact rational: {value!r}")


def format_fraction(value: Fraction) -> str | int:
    """JSON encoding of a rational: plain int when integral, else ``"p/q"``."""
    if value.denominator == 1:
        return value.numerator
    return f"{value.numerator}/{value.denominator}"


def _check_player(player: int) -> int:
    if player not in (1, 2):
        raise ValidationError(f"player must be 1 or 2, got {player!r}")
    return player


@dataclass(frozen=True, eq=False)
class MixedStrategy:
    """Exact probability vector over one player's actions.

    Zero weights are allowed but carry no meaning: two strategies compare
    equal when their nonzero weights agree.
    """

    weights: Mapping[Action, Fraction]

    def __post_init__(self):
        weights = {a: as_fraction(w) for a, w in dict(self.weights).items()}
        if not weights:
            raise ValidationError("mixed strategy needs at least one action")
        if any(w < 0 for w in weights.values()):
            raise ValidationError(f"negative weight in {weights}")
        total = sum(weights.values(), Fraction(0))
        if total != 1:
            raise ValidationError(f"weights sum to {total}, not 1")
        object.__setattr__(self, "weights", weights)

    @classmethod
    def pure(cls, action: Action) -> "MixedStrategy":
        return cls({action: Fraction(1)})

    @classmethod
    def uniform(cls, actions: Sequence[Action]) -> "MixedStrategy":
        return cls({a: Fraction(1, len(actions)) for a in actions})

    @classmethod
    def from_vector(cls, actions: Sequence[Action], probs: Iterable) -> "MixedStrategy":
        probs = list(probs)
        if len(probs) != len(actions):
            raise ValidationError("probability vector length does not match actions")
        return cls(dict(zip(actions, probs)))

    def prob(self, action: Action) -> Fraction:
        return self.weights.get(action, Fraction(0))

    @property
    def support(self) -> frozenset:
        return frozenset(a for a, w in self.weights.items() if w)

    def vector(self, actions: Sequence[Action]) -> tuple[Fraction, ...]:
        return tuple(self.prob(a) for a in actions)

    def _key(self):
        return frozenset((a, w) for a, w in self.weights.items() if w)

    def __eq__(self, other):
        if not isinstance(other, MixedStrategy):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        body = ", ".join(f"{a}: {w}" for a, w in self.weights.items())
        return f"MixedStrategy({{{body}}})"


@dataclass(frozen=True)
class MixedProfile:
    p1: MixedStrategy
    p2: MixedStrategy

    def side(self, player: int) -> MixedStrategy:
        return self.p1 if _check_player(player) == 1 else self.p2

    def replace(self, player: int, strategy: MixedStrategy) -> "MixedProfile":
        if _check_player(player) == 1:
            return MixedProfile(strategy, self.p2)
        return MixedProfile(self.p1, strategy)

    def distance(self, other: "MixedProfile", game: "NormalFormGame") -> Fraction:
        """L-infinity distance between the two profiles as probability vectors."""
        gaps = [abs(self.p1.prob(a) - other.p1.prob(a)) for a in game.actions_p1]
        gaps += [abs(self.p2.prob(b) - other.p2.prob(b)) for b in game.actions_p2]
        return max(gaps)


@dataclass(frozen=True)
class NormalFormGame:
    """Finite two-player game. ``payoff_pi[(a, b)]`` is player i's payoff."""

    actions_p1: tuple[Action, ...]
    actions_p2: tuple[Action, ...]
    payoff_p1: Mapping[tuple[Action, Action], Fraction]
    payoff_p2: Mapping[tuple[Action, Action], Fraction]
    name: str = ""

    def __post_init__(self):
        a1, a2 = tuple(self.actions_p1), tuple(self.actions_p2)
        for label, acts in (("actions_p1", a1), ("actions_p2", a2)):
            if not acts:
                raise ValidationError(f"{label} is empty")
            if len(set(acts)) != len(acts):
                raise ValidationError(f"{label} has duplicate identifiers")
        tables = []
        for label, table in (("payoff_p1", self.payoff_p1), ("payoff_p2", self.payoff_p2)):
            table = dict(table)
            missing = [(a, b) for a in a1 for b in a2 if (a, b) not in table]
            if missing:
                raise ValidationError(f"{label} missing cells {missing}")
            extra = set(table) - {(a, b) for a in a1 for b in a2}
            if extra:
                raise ValidationError(f"{label} has cells outside the action product: {sorted(extra)}")
            tables.append({k: as_fraction(v) for k, v in table.items()})
        object.__setattr__(self, "actions_p1", a1)
        object.__setattr__(self, "actions_p2", a2)
        object.__setattr__(self, "payoff_p1", tables[0])
        object.__setattr__(self, "payoff_p2", tables[1])

    @classmethod
    def from_matrices(cls, actions_p1, actions_p2, matrix_p1, matrix_p2, name=""):
        """Build from row-major matrices (rows: player 1 actions)."""
        t1, t2 = {}, {}
        for i, a in enumerate(actions_p1):
            for j, b in enumerate(actions_p2):
                t1[(a, b)] = matrix_p1[i][j]
                t2[(a, b)] = matrix_p2[i][j]
        return cls(tuple(actions_p1), tuple(actions_p2), t1, t2, name)

    def actions(self, player: int) -> tuple[Action, ...]:
        return self.actions_p1 if _check_player(player) == 1 else self.actions_p2

    def payoff(self, player: int, a: Action, b: Action) -> Fraction:
        table = self.payoff_p1 if _check_player(player) == 1 else self.payoff_p2
        return table[(a, b)]

    def matrix(self, player: int) -> list[list[Fraction]]:
        table = self.payoff_p1 if _check_player(player) == 1 else self.payoff_p2
        return [[table[(a, b)] for b in self.actions_p2] for a in self.actions_p1]

    @cached_property
    def scaled(self) -> tuple[list[list[int]], list[list[int]], int]:
        """Both payoff matrices over a common integer denominator.

        Returns ``(U1, U2, D)`` with ``u_i(a, b) == Ui[a][b] / D``.  The hot
        loops in the counterpoint code stay in integer arithmetic this way.
        """
        values = list(self.payoff_p1.values()) + list(self.payoff_p2.values())
        den = 1
        for v in values:
            den = den * v.denominator // math.gcd(den, v.denominator)
        mats = []
        for player in (1, 2):
            mats.append([[int(v * den) for v in row] for row in self.matrix(player)])
        return mats[0], mats[1], den

    def index(self, player: int, action: Action) -> int:
        try:
            return self.actions(player).index(action)
        except ValueError:
            raise ValidationError(f"{action!r} is not an action of player {player}") from None

    def check_strategy(self, strategy: MixedStrategy, player: int) -> MixedStrategy:
        legal = set(self.actions(player))
        bad = [a for a in strategy.weights if a not in legal]
        if bad:
            raise ValidationError(f"actions {bad} not available to player {player}")
        return strategy

    def check_profile(self, profile: MixedProfile) -> MixedProfile:
        self.check_strategy(profile.p1, 1)
        self.check_strategy(profile.p2, 2)
        return profile

    def rescaled(self, scale1, shift1, scale2=1, shift2=0) -> "NormalFormGame":
        """Affine payoff transform ``u_i -> scale_i * u_i + shift_i``."""
        s1, c1, s2, c2 = map(as_fraction, (scale1, shift1, scale2, shift2))
        return NormalFormGame(
            self.actions_p1, self.actions_p2,
            {k: s1 * v + c1 for k, v in self.payoff_p1.items()},
            {k: s2 * v + c2 for k, v in self.payoff_p2.items()},
            self.name,
        )

    # -- serialization ---------------------------------------------------

    def to_dict(self) -> dict:
        data = {
            "actions_p1": list(self.actions_p1),
            "actions_p2": list(self.actions_p2),
            "payoff_p1": [[format_fraction(v) for v in row] for row in self.matrix(1)],
            "payoff_p2": [[format_fraction(v) for v in row] for row in self.matrix(2)],
        }
        if self.name:
            data["name"] = self.name
        return data

    @classmethod
    def from_dict(cls, data: Mapping) -> "NormalFormGame":
        try:
            a1, a2 = data["actions_p1"], data["actions_p2"]
            m1, m2 = data["payoff_p1"], data["payoff_p2"]
        except KeyError as exc:
            raise ValidationError(f"game file missing key {exc}") from None
        for label, m in (("payoff_p1", m1), ("payoff_p2", m2)):
            if len(m) != len(a1) or any(len(row) != len(a2) for row in m):
                raise ValidationError(f"{label} shape does not match the action lists")
        return cls.from_matrices([str(a) for a in a1], [str(b) for b in a2], m1, m2, data.get("name", ""))

    def dumps(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"

    @classmethod
    def loads(cls, text: str) -> "NormalFormGame":
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ValidationError(f"game file is not valid JSON: {exc}") from None
        return cls.from_dict(data)

    @classmethod
    def load(cls, path) -> "NormalFormGame":
        with open(path) as fh:
            return cls.loads(fh.read())

    def save(self, path) -> None:
        with open(path, "w") as fh:
            fh.write(self.dumps())


# -- payoffs and deviation gains ------------------------------------------

def payoff_against(game: NormalFormGame, player: int, action: Action,
                   opponent: MixedStrategy) -> Fraction:
    """u_i(action, opponent) for a pure action of ``player``."""
    if _check_player(player) == 1:
        return sum((w * game.payoff_p1[(action, b)] for b, w in opponent.weights.items()), Fraction(0))
    return sum((w * game.payoff_p2[(a, action)] for a, w in opponent.weights.items()), Fraction(0))


def expected_payoff(game: NormalFormGame, profile: MixedProfile) -> tuple[Fraction, Fraction]:
    game.check_profile(profile)
    u1 = u2 = Fraction(0)
    for a, wa in profile.p1.weights.items():
        if not wa:
            continue
        for b, wb in profile.p2.weights.items():
            w = wa * wb
            u1 += w * game.payoff_p1[(a, b)]
            u2 += w * game.payoff_p2[(a, b)]
    return u1, u2


def _response_values(game, opponent, player):
    return {a: payoff_against(game, player, a, opponent) for a in game.actions(player)}


def best_response_actions(game: NormalFormGame, opponent: MixedStrategy, player: int) -> list[Action]:
    """All maximizers of u_i(a, opponent), in action-list order."""
    _check_player(player)
    game.check_strategy(opponent, 3 - player)
    values = _response_values(game, opponent, player)
    top = max(values.values())
    return [a for a in game.actions(player) if values[a] == top]


def deviation_gain(game: NormalFormGame, profile: MixedProfile, player: int) -> Fraction:
    """max_a u_i(a, mu_-i) - u_i(mu). Never negative."""
    _check_player(player)
    game.check_profile(profile)
    best = max(_response_values(game, profile.side(3 - player), player).values())
    return best - expected_payoff(game, profile)[player - 1]


def max_deviation(game: NormalFormGame, profile: MixedProfile) -> Fraction:
    return max(deviation_gain(game, profile, 1), deviation_gain(game, profile, 2))


def is_epsilon_ne(game: NormalFormGame, profile: MixedProfile, eps) -> bool:
    eps = as_fraction(eps)
    if eps < 0:
        raise ValidationError(f"eps must be non-negative, got {eps}")
    return max_deviation(game, profile) <= eps


# -- named games -----------------------------------------------------------

def build_matching_pennies() -> NormalFormGame:
    """Player 1 (rows) wins on a match, player 2 on a mismatch."""
    return NormalFormGame.from_matrices(
        ("H", "T"), ("H", "T"),
        [[1, 0], [0, 1]],
        [[0, 1], [1, 0]],
        name="mp",
    )


def build_modified_mp(delta) -> NormalFormGame:
    """The modified Matching Pennies family G_delta, delta in [0, 1].

    Its unique equilibrium is ((delta, 1-delta), (delta, 1-delta)) for
    0 < delta < 1.
    """
    d = as_fraction(delta)
    if not 0 <= d <= 1:
        raise ValidationError(f"delta must lie in [0, 1], got {d}")
    return NormalFormGame.from_matrices(
        ("H", "T"), ("H", "T"),
        [[d + 1, 1], [2 * d, d + 1]],
        [[2 * d, d + 1], [d + 1, 1]],
        name=f"gdelta:{d}",
    )


def is_matching_pennies(game: NormalFormGame) -> bool:
    mp = build_matching_pennies()
    return (game.actions_p1 == mp.actions_p1 and game.actions_p2 == mp.actions_p2
            and game.payoff_p1 == mp.payoff_p1 and game.payoff_p2 == mp.payoff_p2)
