"""Finite machines as strategy generators.

A deterministic machine with no input after start-up walks a path through
finitely many states, so some state repeats within ``N + 1`` steps and the
output stream is eventually periodic.  A Turing machine confined to ``k``
tape cells has finitely many configurations and reduces to the same case.

Detected cycles are kept at their raw length (not reduced to the smallest
period), matching how melodies carry a declared period.

Turing machine output convention: each step emits the symbol in a
designated tape cell (or under the head, when no cell is designated),
translated through ``output_map``.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Hashable, Mapping, Optional

from .errors import LimitExceeded, MalformedMachine, ValidationError
from .sequences import Melody, PeriodicStrategy

CONFIG_LIMIT = 10**6
MOVES = {"L": -1, "R": 1, "S": 0}


@dataclass(frozen=True)
class MooreMachine:
    states: tuple
    start: Hashable
    transition: Mapping
    output: Mapping

    def __post_init__(self):
        states = tuple(self.states)
        object.__setattr__(self, "states", states)
        known = set(states)
        if len(known) != len(states):
            raise MalformedMachine("duplicate state names")
        if self.start not in known:
            raise MalformedMachine(f"start state {self.start!r} is not a state")
        for s in states:
            if s not in self.transition:
                raise MalformedMachine(f"no transition out of state {s!r}")
            if self.transition[s] not in known:
                raise MalformedMachine(f"transition {s!r} -> {self.transition[s]!r} leaves the state set")
            if s not in self.output:
                raise MalformedMachine(f"no output for state {s!r}")


@dataclass(frozen=True)
class EventuallyPeriodic:
    prefix: tuple
    period: tuple

    def __post_init__(self):
        object.__setattr__(self, "prefix", tuple(self.prefix))
        object.__setattr__(self, "period", tuple(self.period))
        if not self.period:
            raise ValidationError("the periodic part cannot be empty")

    def action_at(self, t: int):
        if t < len(self.prefix):
            return self.prefix[t]
        return self.period[(t - len(self.prefix)) % len(self.period)]

    def take(self, count: int) -> list:
        return [self.action_at(t) for t in range(count)]


def run_moore(machine: MooreMachine, max_steps: Optional[int] = None) -> EventuallyPeriodic:
    n = len(machine.states)
    if max_steps is None:
        max_steps = n + 1
    if max_steps < n + 1:
        raise ValidationError(f"max_steps must be at least {n + 1} to guarantee a repeat")
    first_seen = {}
    outputs = []
    state = machine.start
    for step in range(max_steps):
        if state in first_seen:
            j = first_seen[state]
            return EventuallyPeriodic(outputs[:j], outputs[j:])
        first_seen[state] = step
        outputs.append(machine.output[state])
        state = machine.transition[state]
    raise AssertionError("pigeonhole violated")  # unreachable for valid machines


def to_strategy(ep: EventuallyPeriodic) -> PeriodicStrategy:
    return PeriodicStrategy(Melody(ep.period), ep.prefix)


@dataclass(frozen=True)
class BoundedTapeTM:
    """Turing machine restricted to ``k`` cells; ``rules[(q, s)] = (q2, s2, move)``.

    ``move`` is ``'L'``, ``'R'`` or ``'S'`` (stay).

    ``head`` is a 0-based cell index.  A move off either end of the tape is
    an error, not a clamp.
    """

    states: tuple
    alphabet: tuple
    k: int
    rules: Mapping
    tape: tuple
    start: Hashable
    head: int = 0
    output_cell: Optional[int] = None
    output_map: Mapping = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "states", tuple(self.states))
        object.__setattr__(self, "alphabet", tuple(self.alphabet))
        object.__setattr__(self, "tape", tuple(self.tape))
        if self.k < 1 or len(self.tape) != self.k:
            raise MalformedMachine(f"tape must have exactly k = {self.k} cells")
        if not 0 <= self.head < self.k:
            raise MalformedMachine(f"head {self.head} outside the tape")
        if self.output_cell is not None and not 0 <= self.output_cell < self.k:
            raise MalformedMachine(f"output cell {self.output_cell} outside the tape")
        if self.start not in self.states:
            raise MalformedMachine(f"start state {self.start!r} is not a state")
        symbols = set(self.alphabet)
        if any(s not in symbols for s in self.tape):
            raise MalformedMachine("initial tape uses symbols outside the alphabet")
        for (q, s), (q2, s2, move) in self.rules.items():
            if q not in self.states or q2 not in self.states or s not in symbols or s2 not in symbols:
                raise MalformedMachine(f"rule {(q, s)} -> {(q2, s2, move)} uses unknown states or symbols")
            if move not in MOVES:
                raise MalformedMachine(f"move must be one of L, R, S; got {move!r}")

    @property
    def config_bound(self) -> int:
        return len(self.states) * len(self.alphabet) ** self.k * self.k

    def initial_config(self):
        return (self.start, self.tape, self.head)

    def step(self, config):
        q, tape, head = config
        try:
            q2, s2, move = self.rules[(q, tape[head])]
        except KeyError:
            raise MalformedMachine(f"no rule for state {q!r} reading {tape[head]!r}") from None
        head2 = head + MOVES[move]
        if not 0 <= head2 < self.k:
            raise MalformedMachine(f"head moves off the {self.k}-cell tape from cell {head}")
        return (q2, tape[:head] + (s2,) + tape[head + 1:], head2)

    def emit(self, config):
        _, tape, head = config
        symbol = tape[head if self.output_cell is None else self.output_cell]
        return self.output_map.get(symbol, symbol)


def tm_to_fa(tm: BoundedTapeTM, limit: int = CONFIG_LIMIT) -> MooreMachine:
    """Moore machine whose states are the TM's reachable configurations."""
    if tm.config_bound > limit:
        raise LimitExceeded(f"{tm.config_bound} possible configurations exceed the limit {limit}")
    config = tm.initial_config()
    order, transition = [], {}
    while config not in transition:
        order.append(config)
        nxt = tm.step(config)
        transition[config] = nxt
        config = nxt
    return MooreMachine(tuple(order), order[0], transition, {c: tm.emit(c) for c in order})


# -- machine description files ------------------------------------------------

def machine_from_dict(data: Mapping):
    kind = data.get("type")
    try:
        if kind == "moore":
            return MooreMachine(tuple(data["states"]), data["start"],
                                dict(data["transitions"]), dict(data["outputs"]))
        if kind == "tm":
            rules = {}
            for q, s, q2, s2, move in data["rules"]:
                if (q, s) in rules:
                    raise MalformedMachine(f"two rules for {(q, s)}")
                rules[(q, s)] = (q2, s2, move)
            return BoundedTapeTM(
                tuple(data["states"]), tuple(data["alphabet"]), int(data["k"]), rules,
                tuple(data["tape"]), data["start"], int(data.get("head", 0)),
                data.get("output_cell"), dict(data.get("output_map", {})),
            )
    except KeyError as exc:
        raise MalformedMachine(f"machine description missing key {exc}") from None
    except (TypeError, ValueError) as exc:
        if isinstance(exc, ValidationError):
            raise
        raise MalformedMachine(f"malformed machine description: {exc}") from None
    raise MalformedMachine(f"unknown machine type {kind!r}; expected 'moore' or 'tm'")


def load_machine(path):
    with open(path) as fh:
        try:
            return machine_from_dict(json.load(fh))
        except json.JSONDecodeError as exc:
            raise MalformedMachine(f"machine file is not valid JSON: {exc}") from None


def machine_strategy(machine) -> tuple[EventuallyPeriodic, int]:
    """Run any supported machine; returns the stream and the state-count bound."""
    if isinstance(machine, BoundedTapeTM):
        machine = tm_to_fa(machine)
    return run_moore(machine), len(machine.states)
