"""Exact analysis of periodic strategies in unfolding games."""
from .automata import (BoundedTapeTM, EventuallyPeriodic, MooreMachine, load_machine, machine_from_dict,
                       machine_strategy, run_moore, tm_to_fa, to_strategy)
from .counterpoint import (BundleFolding, best_deviation_melody, bundle_folding, count_heterogeneous_bundles,
                           max_unfolding_deviation, unfolding_deviation_gain, unfolding_payoff)
from .equilibria import epsilon0_estimate, gap_at, solve_ne_support_enumeration
from .errors import LimitExceeded, MalformedMachine, NotAnEquilibrium, UnfoldingError, ValidationError
from .flexible import (TacticWitness, best_payoff_with_period, copy_best_response_melody,
                       flexible_deviation_gain, flip_melody, mp_floor_check, tactic_witness)
from .game import (MixedProfile, MixedStrategy, NormalFormGame, as_fraction, best_response_actions,
                   build_matching_pennies, build_modified_mp, deviation_gain, expected_payoff,
                   is_epsilon_ne, is_matching_pennies, max_deviation, payoff_against)
from .melody import (Apportionment, ConvergenceRecord, apportion, convergence_record, equilibrium_sequence,
                     simple_melody, simple_profile)
from .schedules import PairClassification, Schedule, classify, gcd_ratio, nonapproach_condition
from .sequences import (Melody, PeriodicProfile, PeriodicStrategy, avg_payoff_direct, fold, fold_profile,
                        fundamental_period, piece, piece_length)

__version__ = "0.1.0"
