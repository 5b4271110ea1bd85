"""Stochastic adaptive regularization with cubics (SARC) and its experiment harness."""

from sarc.analysis import TheoryConstants, compute_constants, trace_stats
from sarc.driver import SarcConfig, Trace, assert_lemmas, run, sarc_step
from sarc.oracles import OracleSuite, exact_suite, laplace_gaussian_suite, subsampled_suite
from sarc.problems import Problem, make_problem
from sarc.subproblem import CubicModel, solve

__all__ = [
    "CubicModel", "OracleSuite", "Problem", "SarcConfig", "TheoryConstants", "Trace",
    "assert_lemmas", "compute_constants", "exact_suite", "laplace_gaussian_suite",
    "make_problem", "run", "sarc_step", "solve", "subsampled_suite", "trace_stats",
]
