"""Independent brute-force oracles.

Nothing here calls the closed-form engine; payoffs come from playing the
piece round by round, deviations from enumerating every melody.
"""
from __future__ import annotations

import itertools
import math
from fractions import Fraction
from functools import lru_cache


def table(game, player):
    return game.payoff_p1 if player == 1 else game.payoff_p2


def play(game, m1, m2):
    """Average payoffs over one full joint cycle of two melodies (tuples of actions)."""
    L = len(m1) * len(m2) // math.gcd(len(m1), len(m2))
    s1 = s2 = Fraction(0)
    for t in range(L):
        chord = (m1[t % len(m1)], m2[t % len(m2)])
        s1 += game.payoff_p1[chord]
        s2 += game.payoff_p2[chord]
    return s1 / L, s2 / L


def melodies(actions, tau):
    return list(itertools.product(actions, repeat=tau))


def best_melody_payoff(game, opponent, player, tau):
    """Max payoff over every melody of length ``tau`` against a fixed opponent melody."""
    best = None
    for m in melodies(game.actions(player), tau):
        u = play(game, m, opponent)[0] if player == 1 else play(game, opponent, m)[1]
        if best is None or u > best:
            best = u
    return best


def deviation_gain(game, m1, m2, player):
    current = play(game, m1, m2)[player - 1]
    own, opp = (m1, m2) if player == 1 else (m2, m1)
    return best_melody_payoff(game, opp, player, len(own)) - current


def flexible_gain(game, m1, m2, player, cap):
    current = play(game, m1, m2)[player - 1]
    opp = m2 if player == 1 else m1
    return max(best_melody_payoff(game, opp, player, p) for p in range(1, cap + 1)) - current


def mixed_payoff(game, x, y, player):
    """Expected payoff with x, y given as dicts action -> probability."""
    t = table(game, player)
    return sum(x[a] * y[b] * t[(a, b)] for a in game.actions_p1 for b in game.actions_p2)


def base_gap(game, x, y):
    """f_G at the mixed profile (x, y): the larger of the two best pure-deviation gains."""
    u1, u2 = mixed_payoff(game, x, y, 1), mixed_payoff(game, x, y, 2)
    b1 = max(mixed_payoff(game, {a: Fraction(a == c) for a in game.actions_p1}, y, 1)
             for c in game.actions_p1)
    b2 = max(mixed_payoff(game, x, {b: Fraction(b == c) for b in game.actions_p2}, 2)
             for c in game.actions_p2)
    return max(b1 - u1, b2 - u2)


def grid_min_gap(game, ne_x, ne_y, eps, N):
    """Min of f_G over 2x2 grid points at L-infinity distance >= eps from (ne_x, ne_y)."""
    a, b = game.actions_p1
    c, d = game.actions_p2
    best = None
    for i in range(N + 1):
        for j in range(N + 1):
            x, y = Fraction(i, N), Fraction(j, N)
            if max(abs(x - ne_x), abs(y - ne_y)) < eps:
                continue
            g = base_gap(game, {a: x, b: 1 - x}, {c: y, d: 1 - y})
            if best is None or g < best:
                best = g
    return best


@lru_cache(maxsize=None)
def brute_gcd_ratio(t1, t2):
    g = max(k for k in range(1, min(t1, t2) + 1) if t1 % k == 0 and t2 % k == 0)
    return Fraction(g, min(t1, t2))


def simulate_moore(transition, output, start, steps):
    out, s = [], start
    for _ in range(steps):
        out.append(output[s])
        s = transition[s]
    return out


def simulate_tm(rules, tape, head, start, steps, output_cell=None, output_map=None):
    """Direct TM run on a list tape; returns the emitted symbols."""
    output_map = output_map or {}
    tape, q, out = list(tape), start, []
    for _ in range(steps):
        sym = tape[head if output_cell is None else output_cell]
        out.append(output_map.get(sym, sym))
        q, tape[head], move = rules[(q, tape[head])]
        head += {"L": -1, "R": 1, "S": 0}[move]
        assert 0 <= head < len(tape)
    return out


def play_scaled(game, m1, m2):
    """``play`` with integer arithmetic per round, for long pieces."""
    den = 1
    for t in (game.payoff_p1, game.payoff_p2):
        for v in t.values():
            den = den * v.denominator // math.gcd(den, v.denominator)
    i1 = {k: int(v * den) for k, v in game.payoff_p1.items()}
    i2 = {k: int(v * den) for k, v in game.payoff_p2.items()}
    n1, n2 = len(m1), len(m2)
    L = n1 * n2 // math.gcd(n1, n2)
    s1 = s2 = 0
    for t in range(L):
        chord = (m1[t % n1], m2[t % n2])
        s1 += i1[chord]
        s2 += i2[chord]
    return Fraction(s1, L * den), Fraction(s2, L * den)
