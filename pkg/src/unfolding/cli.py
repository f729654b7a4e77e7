"""Command-line front end for the unfolding-game experiments.

Every subcommand builds a report: a ``summary`` mapping plus optional
per-row records.  Rationals are printed exactly as ``p/q``; the only float
is the ``epsilon_float`` convenience column of ``converge``.

Exit codes: 0 success, 1 a proven floor was violated, 2 bad configuration,
3 a resource limit was hit.
"""
from __future__ import annotations

import argparse
import csv
import io
import itertools
import json
import math
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction

from .automata import load_machine, machine_strategy, to_strategy
from .counterpoint import (bundle_folding, max_unfolding_deviation, unfolding_deviation_gain,
                           unfolding_payoff)
from .equilibria import epsilon0_estimate, solve_ne_support_enumeration
from .errors import LimitExceeded, ValidationError
from .flexible import flexible_deviation_gain, tactic_witness
from .game import (MixedProfile, MixedStrategy, NormalFormGame, as_fraction, build_matching_pennies,
                   build_modified_mp, expected_payoff, format_fraction, max_deviation)
from .melody import equilibrium_sequence, simple_profile
from .schedules import Schedule, classify, gcd_ratio, nonapproach_condition
from .sequences import (PIECE_LIMIT, Melody, PeriodicProfile, PeriodicStrategy, avg_payoff_direct,
                        fold_profile, piece_length)

EXIT_OK, EXIT_FLOOR, EXIT_CONFIG, EXIT_LIMIT = 0, 1, 2, 3
# exhaustive melody-pair enumeration: 2**(tau1 + tau2) pairs at most
PAIR_BITS_LIMIT = 16
TEXT_ROW_LIMIT = 50


class FloorViolated(Exception):
    def __init__(self, report):
        super().__init__("floor violated")
        self.report = report


def fr(x) -> str:
    return str(format_fraction(Fraction(x)))


def load_game(source: str) -> NormalFormGame:
    if source == "mp":
        return build_matching_pennies()
    if source.startswith("gdelta:"):
        return build_modified_mp(source.split(":", 1)[1])
    if os.path.exists(source):
        return NormalFormGame.load(source)
    raise ValidationError(f"unknown game {source!r}: use 'mp', 'gdelta:p/q' or a JSON file path")


def parse_sigma(game: NormalFormGame, text: str | None) -> MixedProfile:
    """``"p1,p2,...;q1,q2,..."`` in action order, or the solver's first equilibrium."""
    if text is None:
        found = solve_ne_support_enumeration(game)
        if not found:
            raise ValidationError("no equilibrium found; pass --sigma-star")
        return found[0]
    try:
        left, right = text.split(";")
    except ValueError:
        raise ValidationError(f"bad --sigma-star {text!r}: expected 'p1,...;q1,...'") from None
    p1 = MixedStrategy.from_vector(game.actions_p1, [as_fraction(v) for v in left.split(",")])
    p2 = MixedStrategy.from_vector(game.actions_p2, [as_fraction(v) for v in right.split(",")])
    return game.check_profile(MixedProfile(p1, p2))


def all_melodies(actions, tau):
    return [Melody(m) for m in itertools.product(actions, repeat=tau)]


def profile_str(profile: MixedProfile, game: NormalFormGame) -> str:
    sides = []
    for i in (1, 2):
        sides.append("(" + ",".join(fr(p) for p in profile.side(i).vector(game.actions(i))) + ")")
    return "(" + ",".join(sides) + ")"


# -- commands ------------------------------------------------------------------

def cmd_converge(args):
    game = load_game(args.game)
    sigma = parse_sigma(game, args.sigma_star)
    s1, s2 = Schedule.parse(args.sched1), Schedule.parse(args.sched2)
    executor = ProcessPoolExecutor(args.jobs) if args.jobs > 1 else None
    try:
        records = equilibrium_sequence(game, sigma, s1, s2, args.n_from, args.n_to, executor)
    finally:
        if executor is not None:
            executor.shutdown()
    rows = []
    for r in records:
        rows.append({
            "n": r.n, "tau1": r.tau1, "tau2": r.tau2,
            "epsilon_num": r.epsilon_n.numerator, "epsilon_den": r.epsilon_n.denominator,
            "fold_dist_num": r.fold_distance.numerator, "fold_dist_den": r.fold_distance.denominator,
            "u1": fr(r.payoffs[0]), "u2": fr(r.payoffs[1]),
            "epsilon_float": f"{float(r.epsilon_n):.12g}",
        })
    tail = records[-max(1, len(records) // 10):]
    summary = {
        "game": game.name or args.game, "sched1": str(s1), "sched2": str(s2),
        "sigma_star": profile_str(sigma, game),
        "max_epsilon_last_decile": fr(max(r.epsilon_n for r in tail)),
        "last_decile_from": tail[0].n,
    }
    return {"summary": summary, "rows": rows}, "csv"


def _brute_min_f(game, tau1, tau2):
    """Min of f over every melody pair, the minimizer, and the smallest nonzero bundle weight."""
    if tau1 + tau2 > PAIR_BITS_LIMIT:
        raise LimitExceeded(f"exhaustive enumeration at periods ({tau1}, {tau2}) is too large")
    best, arg, min_comp = None, None, None
    m2s = all_melodies(game.actions_p2, tau2)
    for m1 in all_melodies(game.actions_p1, tau1):
        for m2 in m2s:
            prof = PeriodicProfile(game, PeriodicStrategy(m1), PeriodicStrategy(m2))
            f = max_unfolding_deviation(prof)
            if best is None or f < best:
                best, arg = f, prof
            for mu in bundle_folding(prof).bundle_profiles:
                for side in (mu.p1, mu.p2):
                    for w in side.weights.values():
                        if w and (min_comp is None or w < min_comp):
                            min_comp = w
    return best, arg, min_comp


def cmd_nonapproach(args):
    delta = as_fraction(args.delta)
    game = build_modified_mp(delta)
    s1, s2 = Schedule.parse(args.sched1), Schedule.parse(args.sched2)
    cap = args.cap if args.cap is not None else 4
    if cap > 8:
        raise LimitExceeded(f"brute-force cap {cap} exceeds the hard maximum 8")
    bound = epsilon0_estimate(delta, delta) / 2
    rows, violated = [], False
    for n in range(1, cap + 1):
        t1, t2 = s1(n), s2(n)
        rho = math.gcd(t1, t2)
        f, arg, min_comp = _brute_min_f(game, t1, t2)
        comp_floor = Fraction(rho, max(t1, t2))
        asserted = Fraction(rho, min(t1, t2)) > 2 * delta
        ok = (not asserted) or (f >= bound and min_comp >= comp_floor)
        violated |= not ok
        rows.append({
            "n": n, "tau1": t1, "tau2": t2, "rho": rho, "min_f": fr(f),
            "argmin": f"{arg.p1.literal()} | {arg.p2.literal()}",
            "min_bundle_component": fr(min_comp), "component_floor": fr(comp_floor),
            "asserted": asserted, "ok": ok,
        })
    # control: simple melodies under almost coprime schedules should approach the NE
    sigma = parse_sigma(game, None)
    c1, c2 = Schedule.affine(1, 0), Schedule.affine(1, 1)
    control = [(n, max_unfolding_deviation(simple_profile(game, sigma, c1(n), c2(n))))
               for n in (10, 50, 100, 200)]
    summary = {
        "game": game.name, "sched1": str(s1), "sched2": str(s2), "cap": cap,
        "condition_3delta_le_limsup": nonapproach_condition(s1, s2, delta),
        "bound": fr(bound), "min_f_overall": fr(min(Fraction(r["min_f"]) for r in rows)),
        "control_coprime_simple": ", ".join(f"n={n}: {fr(e)}" for n, e in control),
        "result": "FAIL" if violated else "PASS",
    }
    report = {"summary": summary, "rows": rows}
    if violated:
        raise FloorViolated(report)
    return report, "text"


def cmd_flexible(args):
    game = load_game(args.game)
    cap = args.cap if args.cap is not None else 5
    if cap > 8:
        raise LimitExceeded(f"brute-force cap {cap} exceeds the hard maximum 8")
    melodies = [(p, all_melodies(game.actions_p1, p), all_melodies(game.actions_p2, p))
                for p in range(1, cap + 1)]
    floor = Fraction(1, 3)
    rows, worst = [], None
    for p1, m1s, _ in melodies:
        for p2, _, m2s in melodies:
            for m1 in m1s:
                for m2 in m2s:
                    prof = PeriodicProfile(game, PeriodicStrategy(m1), PeriodicStrategy(m2))
                    eps = max(flexible_deviation_gain(prof, i, (p1, p2)[i - 1])[0] for i in (1, 2))
                    w = tactic_witness(prof, (p1, p2))
                    rows.append({"s1": str(m1), "s2": str(m2), "epsilon_flex": fr(eps),
                                 "tactic": w.tactic, "player": w.player,
                                 "deviation": str(w.melody), "tactic_gain": fr(w.gain)})
                    if worst is None or eps < worst[0]:
                        worst = (eps, str(m1), str(m2))
    ok = worst[0] >= floor
    summary = {"game": game.name or args.game, "cap": cap, "profiles": len(rows),
               "min_epsilon_flex": fr(worst[0]), "argmin": f"{worst[1]} | {worst[2]}",
               "floor": fr(floor), "result": "PASS" if ok else "FAIL"}
    report = {"summary": summary, "rows": rows}
    if not ok:
        raise FloorViolated(report)
    return report, "text"


def cmd_automaton(args):
    if not args.machine:
        raise ValidationError("automaton needs --machine <path>")
    ep, n_states = machine_strategy(load_machine(args.machine))
    strategy = to_strategy(ep)
    literal = strategy.literal()
    if args.out_strategy:
        with open(args.out_strategy, "w") as fh:
            fh.write(literal + "\n")
    ok = len(ep.prefix) + len(ep.period) <= n_states
    summary = {"strategy": literal, "prefix_length": len(ep.prefix),
               "period_length": len(ep.period), "states": n_states,
               "bound_check": "PASS" if ok else "FAIL"}
    report = {"summary": summary, "rows": []}
    if not ok:
        raise FloorViolated(report)
    return report, "text"


def cmd_eval(args):
    game = load_game(args.game)
    if args.s1 is None or args.s2 is None:
        raise ValidationError("eval needs --s1 and --s2")
    prof = PeriodicProfile(game, PeriodicStrategy.parse(args.s1), PeriodicStrategy.parse(args.s2))
    folded = fold_profile(prof)
    u = unfolding_payoff(prof)
    g1, g2 = unfolding_deviation_gain(prof, 1), unfolding_deviation_gain(prof, 2)
    bf = bundle_folding(prof)
    summary = {
        "fold": profile_str(folded, game),
        "u1": fr(u[0]), "u2": fr(u[1]),
        "gain1": fr(g1), "gain2": fr(g2), "f": fr(max(g1, g2)),
        "rho": bf.rho,
        "fold_expected_payoff": ",".join(fr(x) for x in expected_payoff(game, folded)),
        "fold_max_deviation": fr(max_deviation(game, folded)),
    }
    if piece_length(prof) <= PIECE_LIMIT:
        direct = avg_payoff_direct(prof)
        summary["direct_check"] = "PASS" if direct == u else "FAIL"
    else:
        summary["direct_check"] = "skipped (piece too long)"
    rows = [{"class": j, "mu": profile_str(mu, game)} for j, mu in enumerate(bf.bundle_profiles)]
    return {"summary": summary, "rows": rows}, "text"


def cmd_classify(args):
    s1, s2 = Schedule.parse(args.sched1), Schedule.parse(args.sched2)
    c = classify(s1, s2, args.horizon)
    verdict = {True: "yes", False: "no", None: "unknown"}
    summary = {"sched1": str(s1), "sched2": str(s2),
               "almost_identical": verdict[c.almost_identical],
               "almost_coprime": verdict[c.almost_coprime],
               "eventually_distinct": verdict[c.eventually_distinct],
               "witness": c.witness}
    if args.delta is not None:
        summary["nonapproach_condition"] = nonapproach_condition(s1, s2, args.delta, args.horizon)
    h = args.horizon
    for x in (s1.horizon, s2.horizon):
        if x is not None:
            h = min(h, x)
    rows = [{"n": n, "tau1": s1(n), "tau2": s2(n), "gcd_ratio": fr(gcd_ratio(s1, s2, n))}
            for n in range(args.n_from, min(args.n_to, h) + 1)]
    return {"summary": summary, "rows": rows}, "text"


# -- rendering -----------------------------------------------------------------

def render(report, fmt) -> str:
    if fmt == "json":
        return json.dumps(report, indent=2, sort_keys=True) + "\n"
    if fmt == "csv":
        rows = report["rows"]
        buf = io.StringIO()
        if rows:
            writer = csv.DictWriter(buf, fieldnames=list(rows[0]), lineterminator="\n")
            writer.writeheader()
            writer.writerows(rows)
        return buf.getvalue()
    lines = [f"{k}: {v}\n" for k, v in report["summary"].items()]
    rows = report["rows"]
    if 0 < len(rows) <= TEXT_ROW_LIMIT:
        lines += ["  " + "  ".join(f"{k}={v}" for k, v in row.items()) + "\n" for row in rows]
    return "".join(lines)


def summary_line(report) -> str:
    return "; ".join(f"{k}={v}" for k, v in report["summary"].items()) + "\n"


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="unfolding", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, game=True):
        if game:
            p.add_argument("--game", default="mp", help="'mp', 'gdelta:p/q' or a JSON game file")
        p.add_argument("--out", help="write the report here instead of stdout")
        p.add_argument("--format", choices=("text", "csv", "json"), help="output format")

    p = sub.add_parser("converge", help="equilibrium sweep of simple-melody profiles")
    common(p)
    p.add_argument("--sched1", default="n")
    p.add_argument("--sched2", default="n+1")
    p.add_argument("--from", dest="n_from", type=int, default=2)
    p.add_argument("--to", dest="n_to", type=int, default=200)
    p.add_argument("--sigma-star", help="'p1,...;q1,...' in action order (default: solved)")
    p.add_argument("--jobs", type=int, default=1, help="worker processes for the sweep")

    p = sub.add_parser("nonapproach", help="exhaustive f floor in the modified game")
    common(p, game=False)
    p.add_argument("--delta", default="1/4")
    p.add_argument("--sched1", default="n")
    p.add_argument("--sched2", default="n")
    p.add_argument("--cap", type=int)

    p = sub.add_parser("flexible", help="exhaustive flexible-deviation floor")
    common(p)
    p.add_argument("--cap", type=int)

    p = sub.add_parser("automaton", help="run a machine file and print its strategy")
    common(p, game=False)
    p.add_argument("--machine")
    p.add_argument("--strategy-out", dest="out_strategy", help="write the strategy literal here")

    p = sub.add_parser("eval", help="evaluate one periodic profile")
    common(p)
    p.add_argument("--s1")
    p.add_argument("--s2")

    p = sub.add_parser("classify", help="classify a pair of schedules")
    common(p, game=False)
    p.add_argument("--sched1", default="n")
    p.add_argument("--sched2", default="n+1")
    p.add_argument("--delta")
    p.add_argument("--horizon", type=int, default=200)
    p.add_argument("--from", dest="n_from", type=int, default=1)
    p.add_argument("--to", dest="n_to", type=int, default=0)
    return parser


COMMANDS = {"converge": cmd_converge, "nonapproach": cmd_nonapproach, "flexible": cmd_flexible,
            "automaton": cmd_automaton, "eval": cmd_eval, "classify": cmd_classify}


def _emit(report, default_fmt, args, stdout):
    fmt = args.format or default_fmt
    text = render(report, fmt)
    if args.out:
        with open(args.out, "w", newline="") as fh:
            fh.write(text)
        stdout.write(summary_line(report))
    else:
        stdout.write(text)
        if fmt == "csv":
            sys.stderr.write(summary_line(report))


def main(argv=None, stdout=None) -> int:
    stdout = stdout or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        report, default_fmt = COMMANDS[args.command](args)
    except FloorViolated as exc:
        _emit(exc.report, "text", args, stdout)
        return EXIT_FLOOR
    except LimitExceeded as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_LIMIT
    except (ValueError, OSError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_CONFIG
    _emit(report, default_fmt, args, stdout)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
