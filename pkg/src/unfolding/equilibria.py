"""Exact Nash equilibria of small games, and the gap bound for G_delta."""
from __future__ import annotations

from fractions import Fraction
from itertools import combinations

from .errors import LimitExceeded, ValidationError
from .game import (
    MixedProfile,
    MixedStrategy,
    NormalFormGame,
    as_fraction,
    build_modified_mp,
    max_deviation,
)

DEFAULT_ACTION_LIMIT = 6


def solve_linear(rows, rhs):
    """Unique solution of ``rows @ x == rhs`` over the rationals, else None.

    Plain Gauss-Jordan elimination; overdetermined systems are fine as long as
    they are consistent and of full column rank.
    """
    n = len(rows[0])
    m = [list(map(Fraction, r)) + [Fraction(v)] for r, v in zip(rows, rhs)]
    pivot_row = 0
    for col in range(n):
        pr = next((r for r in range(pivot_row, len(m)) if m[r][col] != 0), None)
        if pr is None:
            return None
        m[pivot_row], m[pr] = m[pr], m[pivot_row]
        p = m[pivot_row][col]
        m[pivot_row] = [v / p for v in m[pivot_row]]
        for r in range(len(m)):
            if r != pivot_row and m[r][col] != 0:
                f = m[r][col]
                m[r] = [v - f * w for v, w in zip(m[r], m[pivot_row])]
        pivot_row += 1
    if any(row[-1] != 0 for row in m[pivot_row:]):
        return None
    return [m[i][-1] for i in range(n)]


def _indifferent_mix(payoff, own_support, opp_support):
    """Mix over ``opp_support`` that makes every own_support row indifferent.

    ``payoff[i][j]`` is the payoff of the player choosing row ``i``.
    """
    k = len(opp_support)
    rows = [[payoff[i][j] for j in opp_support] + [-1] for i in own_support]
    rhs = [0] * len(own_support)
    rows.append([1] * k + [0])
    rhs.append(1)
    sol = solve_linear(rows, rhs)
    if sol is None:
        return None
    mix = sol[:k]
    if any(p <= 0 for p in mix):
        return None
    return mix


def solve_ne_support_enumeration(game: NormalFormGame, limit: int = DEFAULT_ACTION_LIMIT) -> list[MixedProfile]:
    """All equilibria reachable by support enumeration, in exact arithmetic.

    Supports of every size pair are tried; a candidate is kept when both
    indifference systems have a unique strictly positive solution and the
    resulting profile has zero deviation gain.  For nondegenerate games
    this is the complete equilibrium set.
    """
    n1, n2 = len(game.actions_p1), len(game.actions_p2)
    if max(n1, n2) > limit:
        raise LimitExceeded(f"game is {n1}x{n2}; support enumeration is capped at {limit} actions")
    A, B = game.matrix(1), game.matrix(2)
    Bt = [list(col) for col in zip(*B)]
    found: list[MixedProfile] = []
    seen = set()
    for k1 in range(1, n1 + 1):
        for k2 in range(1, n2 + 1):
            for I in combinations(range(n1), k1):
                for J in combinations(range(n2), k2):
                    y = _indifferent_mix(A, I, J)
                    if y is None:
                        continue
                    x = _indifferent_mix(Bt, J, I)
                    if x is None:
                        continue
                    profile = MixedProfile(
                        MixedStrategy({game.actions_p1[i]: p for i, p in zip(I, x)}),
                        MixedStrategy({game.actions_p2[j]: p for j, p in zip(J, y)}),
                    )
                    if profile in seen or max_deviation(game, profile) != 0:
                        continue
                    seen.add(profile)
                    found.append(profile)
    return found


# -- G_delta gap bound -----------------------------------------------------

def _profile_2x2(game, x, y):
    a1, a2 = game.actions_p1, game.actions_p2
    return MixedProfile(MixedStrategy.from_vector(a1, (x, 1 - x)),
                        MixedStrategy.from_vector(a2, (y, 1 - y)))


def _gap_terms(game, x, y):
    """The four affine-per-coordinate pieces whose max is f_G at (x, y)."""
    (a, b), (c, d) = game.matrix(1)
    (e, f), (g, h) = game.matrix(2)
    row_h = a * y + b * (1 - y)
    row_t = c * y + d * (1 - y)
    u1 = x * row_h + (1 - x) * row_t
    col_h = e * x + g * (1 - x)
    col_t = f * x + h * (1 - x)
    u2 = y * col_h + (1 - y) * col_t
    return (row_h - u1, row_t - u1, col_h - u2, col_t - u2)


def _edge_candidates(game, fixed_axis, fixed, lo, hi):
    """Points on an axis-parallel edge where the max of the pieces can bottom out."""

    def point(t):
        return (fixed, t) if fixed_axis == "x" else (t, fixed)

    pts = [point(lo), point(hi)]
    if lo == hi:
        return pts
    g_lo = _gap_terms(game, *point(lo))
    g_hi = _gap_terms(game, *point(hi))
    for i in range(4):
        for j in range(i + 1, 4):
            d_lo = g_lo[i] - g_lo[j]
            d_hi = g_hi[i] - g_hi[j]
            if d_lo == d_hi or d_lo * d_hi > 0:
                continue
            t = lo + (hi - lo) * d_lo / (d_lo - d_hi)
            if lo <= t <= hi:
                pts.append(point(t))
    return pts


def epsilon0_estimate(delta, eps) -> Fraction:
    """Minimum of f_G over profiles of G_delta at L-inf distance >= eps from its NE.

    The region is split into rectangles along x, y in {delta - eps, delta,
    delta + eps}.  Inside each rectangle the gap function has no interior
    local minimum for this family (for fixed y the minimizing x traces a
    curve along which the gap is monotone in y), and along an edge it is a
    maximum of affine functions, so the minimum is found exactly among edge
    endpoints and pairwise crossings.  The returned value is attained.
    """
    d, e = as_fraction(delta), as_fraction(eps)
    if not 0 < d < 1:
        raise ValidationError(f"delta must lie strictly inside (0, 1), got {d}")
    if e <= 0:
        raise ValidationError(f"eps must be positive, got {e}")
    if e > max(d, 1 - d):
        raise ValidationError(f"no profile lies at distance >= {e} from the equilibrium")
    game = build_modified_mp(d)
    cuts = sorted({c for c in (Fraction(0), d - e, d, d + e, Fraction(1)) if 0 <= c <= 1})
    best = None
    for xl, xh in zip(cuts, cuts[1:]):
        for yl, yh in zip(cuts, cuts[1:]):
            # cells inside the excluded square still contribute their border
            pts = []
            pts += _edge_candidates(game, "x", xl, yl, yh)
            pts += _edge_candidates(game, "x", xh, yl, yh)
            pts += _edge_candidates(game, "y", yl, xl, xh)
            pts += _edge_candidates(game, "y", yh, xl, xh)
            for x, y in pts:
                if max(abs(x - d), abs(y - d)) < e:
                    continue
                val = max(_gap_terms(game, x, y))
                if best is None or val < best:
                    best = val
    return best


def gap_at(game: NormalFormGame, x, y) -> Fraction:
    """f_G of a 2x2 game at first-action probabilities (x, y)."""
    return max_deviation(game, _profile_2x2(game, as_fraction(x), as_fraction(y)))
