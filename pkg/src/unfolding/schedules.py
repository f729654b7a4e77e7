"""Rationality schedules tau(n) and their pairwise classification.

Affine schedules ``a*n + b`` get limit verdicts in closed form.  For two
affine schedules the gcd is controlled by

    g(n) = gcd(a1*n + b1, a2*n + b2)  divides  K = a2*b1 - a1*b2,

so when ``K != 0`` the gcd stays bounded by ``|K|``.  When ``K == 0`` the
coefficient vectors are proportional, ``(a_i, b_i) = k_i * (alpha, beta)``
with ``(alpha, beta)`` primitive, and ``g(n)/min = gcd(k1, k2)/min(k1, k2)``
for every large ``n``.  Explicit tables only support finite-horizon reports.
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .errors import ValidationError
from .game import as_fraction


@dataclass(frozen=True)
class Schedule:
    """Either ``a*n + b`` (``values is None``) or an explicit 1-indexed table."""

    a: int = 1
    b: int = 0
    values: Optional[tuple[int, ...]] = None

    def __post_init__(self):
        if self.values is not None:
            vals = tuple(int(v) for v in self.values)
            if not vals or any(v < 1 for v in vals):
                raise ValidationError("explicit schedules need positive entries")
            object.__setattr__(self, "values", vals)
        else:
            if self.a < 0:
                raise ValidationError(f"slope must be non-negative, got {self.a}")
            if self.a + self.b < 1:
                raise ValidationError(f"tau(1) = {self.a + self.b} is not positive")

    @classmethod
    def affine(cls, a: int, b: int = 0) -> "Schedule":
        return cls(int(a), int(b))

    @classmethod
    def explicit(cls, values: Sequence[int]) -> "Schedule":
        return cls(values=tuple(values))

    @property
    def is_affine(self) -> bool:
        return self.values is None

    @property
    def horizon(self) -> Optional[int]:
        return None if self.values is None else len(self.values)

    def __call__(self, n: int) -> int:
        if n < 1:
            raise ValidationError(f"stages start at n = 1, got {n}")
        if self.values is not None:
            if n > len(self.values):
                raise ValidationError(f"explicit schedule has no entry for n = {n}")
            return self.values[n - 1]
        return self.a * n + self.b

    @classmethod
    def parse(cls, text: str) -> "Schedule":
        """Accepts ``"n"``, ``"n+1"``, ``"2*n+2"``, ``"2n-1"``, ``"7"`` or ``"[3,5,8]"``."""
        s = text.replace(" ", "")
        if s.startswith("["):
            if not s.endswith("]"):
                raise ValidationError(f"bad schedule literal {text!r}")
            body = s[1:-1]
            try:
                return cls.explicit([int(v) for v in body.split(",") if v])
            except ValueError:
                raise ValidationError(f"bad schedule literal {text!r}") from None
        m = re.fullmatch(r"(\d*)\*?n([+-]\d+)?|([+-]?\d+)", s)
        if m is None:
            raise ValidationError(f"bad schedule literal {text!r}")
        if m.group(3) is not None:
            a, b = 0, int(m.group(3))
        else:
            a = int(m.group(1)) if m.group(1) else 1
            b = int(m.group(2)) if m.group(2) else 0
        return cls.affine(a, b)

    def __str__(self):
        if self.values is not None:
            return "[" + ",".join(map(str, self.values)) + "]"
        if self.a == 0:
            return str(self.b)
        head = "n" if self.a == 1 else f"{self.a}*n"
        if self.b:
            return f"{head}{self.b:+d}"
        return head


def gcd_ratio(s1: Schedule, s2: Schedule, n: int) -> Fraction:
    t1, t2 = s1(n), s2(n)
    return Fraction(math.gcd(t1, t2), min(t1, t2))


@dataclass(frozen=True)
class PairClassification:
    """``True``/``False`` verdicts, ``None`` where only finite data is available."""

    almost_identical: Optional[bool]
    almost_coprime: Optional[bool]
    eventually_distinct: Optional[bool]
    witness: str


def _limsup_ratio_affine(s1: Schedule, s2: Schedule) -> Fraction:
    """limsup of gcd(tau1, tau2) / min(tau1, tau2) for two affine schedules."""
    a1, b1, a2, b2 = s1.a, s1.b, s2.a, s2.b
    if a1 == 0 and a2 == 0:
        return Fraction(math.gcd(b1, b2), min(b1, b2))
    if a1 == 0 or a2 == 0:
        # gcd(c, a*n + b) / c for large n; periodic in n with period c
        c, a, b = (b1, a2, b2) if a1 == 0 else (b2, a1, b1)
        return max(Fraction(math.gcd(c, a * r + b), c) for r in range(c))
    K = a2 * b1 - a1 * b2
    if K != 0:
        return Fraction(0)
    g = math.gcd(a1, b1)
    alpha = a1 // g
    k1, k2 = g, a2 // alpha
    return Fraction(math.gcd(k1, k2), min(k1, k2))


def _coinciding_stages(s1: Schedule, s2: Schedule) -> str:
    """'none', 'one' or 'all' (stages n >= 1 with tau1(n) == tau2(n))."""
    if (s1.a, s1.b) == (s2.a, s2.b):
        return "all"
    da, db = s1.a - s2.a, s2.b - s1.b
    if da != 0 and db % da == 0 and db // da >= 1:
        return "one"
    return "none"


def classify(s1: Schedule, s2: Schedule, horizon: int = 200) -> PairClassification:
    if s1.is_affine and s2.is_affine:
        a1, a2 = s1.a, s2.a
        if a1 >= 1 and a2 >= 1:
            identical = a1 == a2
        else:
            identical = a1 == a2 == 0 and s1.b == s2.b
        limsup = _limsup_ratio_affine(s1, s2)
        coprime = limsup == 0
        coincide = _coinciding_stages(s1, s2)
        distinct = coincide != "all"
        K = a2 * s1.b - a1 * s2.b
        if a1 >= 1 and a2 >= 1 and K != 0:
            why = f"gcd divides |a2*b1 - a1*b2| = {abs(K)}, so gcd/min -> 0"
        else:
            why = f"gcd/min has limsup {limsup}"
        phrase = {"all": "coincide at every stage", "one": "coincide at one stage",
                  "none": "never coincide"}[coincide]
        witness = f"tau1 = {s1}, tau2 = {s2}: {why}; the schedules {phrase}"
        return PairClassification(identical, coprime, distinct, witness)

    h = min(x for x in (s1.horizon, s2.horizon, horizon) if x is not None)
    ratios = [gcd_ratio(s1, s2, n) for n in range(1, h + 1)]
    equal = [n for n in range(1, h + 1) if s1(n) == s2(n)]
    rel = [Fraction(abs(s1(n) - s2(n)), min(s1(n), s2(n))) for n in range(1, h + 1)]
    tail = ratios[-max(1, h // 10):]
    witness = (
        f"finite horizon n <= {h}: gcd/min last = {ratios[-1]}, max over last decile = {max(tail)}; "
        f"relative gap last = {rel[-1]}; equal at {len(equal)} stage(s)"
        + (f", last at n = {equal[-1]}" if equal else "")
    )
    return PairClassification(None, None, None, witness)


def nonapproach_condition(s1: Schedule, s2: Schedule, delta, horizon: int = 200) -> bool:
    """Is limsup gcd/min >= 3*delta?  Finite-horizon max for explicit tables."""
    d = as_fraction(delta)
    if d <= 0:
        raise ValidationError(f"delta must be positive, got {d}")
    if s1.is_affine and s2.is_affine:
        return _limsup_ratio_affine(s1, s2) >= 3 * d
    h = min(x for x in (s1.horizon, s2.horizon, horizon) if x is not None)
    return max(gcd_ratio(s1, s2, n) for n in range(1, h + 1)) >= 3 * d
