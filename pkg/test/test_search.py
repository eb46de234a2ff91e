# -*- coding: utf-8 -*-

"""This module contains tests for the search engine and the simulations."""

__author__ = "Mir Sazzat Hossain"

import os
import tempfile
import unittest
from fractions import Fraction

import numpy as np
import pandas as pd

from models.preferences import classify, profile_from_rows
from models.search import (
    CandidateSpace,
    CandidateSweep,
    Culture,
    LemmaReport,
    SearchMode,
    brute_force_cycle_search,
    cycle_profile_indices,
    evaluate_candidate,
    exact_condorcet_fraction,
    monte_carlo_condorcet,
    pruned_ud_search,
    sweep_candidates,
    verify_lemmas_exhaustive,
)
from models.swf import apply, dictator, pairwise_majority
from utils.errors import BadDimension, TooLarge


class TestOracle(unittest.TestCase):
    """Test the brute-force cycle oracle."""

    def setUp(self):
        """Set up the test."""
        self.majority = pairwise_majority(3)
        self.found = brute_force_cycle_search(self.majority)

    def test_condorcet_profile_found(self):
        """The Condorcet profile is among the cycle-producing profiles."""
        condorcet = profile_from_rows(["001", "010", "100"])
        profiles = [profile for profile, _ in self.found]
        self.assertIn(condorcet, profiles)

    def test_strict_paradox_count(self):
        """Twelve strict profiles of three voters cycle under majority."""
        strict = [profile for profile, _ in self.found if profile.is_strict]
        self.assertEqual(len(strict), 12)
        for profile, aggregate in self.found:
            self.assertTrue(classify(aggregate).is_cycle)
            self.assertEqual(apply(self.majority, profile), aggregate)

    def test_dictator_never_cycles(self):
        """Dictatorships have no cycle-producing profile."""
        self.assertEqual(cycle_profile_indices(dictator(2, 3)).size, 0)

    def test_limits(self):
        """The oracle stops at four individuals."""
        with self.assertRaises(TooLarge):
            cycle_profile_indices(pairwise_majority(5))


class TestCandidateSpace(unittest.TestCase):
    """Test the enumeration of candidate SWFs."""

    def test_sizes(self):
        """Symmetric and full spaces at N = 2."""
        self.assertEqual(CandidateSpace(2).size, 3 ** 7)
        self.assertEqual(CandidateSpace(2, SearchMode.FULL).size, 3 ** 21)
        self.assertEqual(
            CandidateSpace(2, unanimity_fixed=False).size, 3 ** 9
        )
        with self.assertRaises(BadDimension):
            CandidateSpace(1)

    def test_unanimity_pinned(self):
        """Pinned candidates send all-0 to 0 and all-1 to 1."""
        space = CandidateSpace(2, SearchMode.FULL)
        tables = space.tables(space.sample_digits(3, 0, 5))
        self.assertTrue((tables[:, :, 0] == 0).all())
        self.assertTrue((tables[:, :, -1] == 2).all())

    def test_candidate_order(self):
        """Candidates are numbered in base 3, most significant entry first."""
        space = CandidateSpace(2)
        last = space.candidate(space.size - 1)
        self.assertEqual(list(last.tables[0]), [0] + [2] * 8)
        with self.assertRaises(BadDimension):
            space.candidate(space.size)

    def test_evaluate_dictator(self):
        """A dictatorship is dictatorial and satisfies the domain."""
        swf = dictator(1, 2)
        outcome = evaluate_candidate(swf, cycle_profile_indices(swf))
        self.assertEqual(outcome.dictator, 1)
        self.assertTrue(outcome.ud)
        self.assertIsNone(outcome.discrepancy)


class TestSweep(unittest.TestCase):
    """Test the cross-checking sweep."""

    def test_symmetric_sweep(self):
        """Every symmetric candidate at N = 2 agrees with the oracle."""
        report = sweep_candidates(CandidateSpace(2))
        self.assertEqual(report.total, 2187)
        self.assertEqual(report.skipped, 0)
        self.assertEqual(report.discrepancies, [])
        self.assertEqual(report.dictatorial, 54)
        self.assertEqual(report.ud_satisfying, 6)
        self.assertEqual(
            report.ud_satisfying, report.dictatorial - report.dictatorial_cycles
        )
        self.assertEqual(report.witnessed + report.ud_satisfying, report.total)
        self.assertEqual(dict(report.items())["discrepancies"], "0")

    def test_sampled_full_sweep_is_worker_independent(self):
        """Sampled full-triple sweeps do not depend on the worker count."""
        space = CandidateSpace(2, SearchMode.FULL)
        single = sweep_candidates(space, trials=120, seed=7, block_size=40)
        pooled = sweep_candidates(
            space, trials=120, seed=7, block_size=40, workers=2
        )
        self.assertEqual(single.to_dict(), pooled.to_dict())
        self.assertEqual(single.discrepancies, [])
        self.assertTrue(single.sampled)

    def test_sweep_limits(self):
        """Oversized or unseeded sweeps are refused."""
        with self.assertRaises(TooLarge):
            CandidateSweep(CandidateSpace(3, SearchMode.FULL))
        with self.assertRaises(TooLarge):
            CandidateSweep(CandidateSpace(3))
        with self.assertRaises(TooLarge):
            CandidateSweep(CandidateSpace(9), trials=10, seed=1)
        with self.assertRaises(ValueError):
            CandidateSweep(CandidateSpace(2), trials=10)

    def test_save_run(self):
        """Saved runs hold a report and one csv row per candidate."""
        with tempfile.TemporaryDirectory() as work_dir:
            sweep_candidates(
                CandidateSpace(2), trials=20, seed=1, save_run=True,
                work_dir=work_dir,
            )
            run_dir = os.path.join(work_dir, "logs", "run_0")
            self.assertTrue(
                os.path.exists(os.path.join(run_dir, "report.txt"))
            )
            frame = pd.read_csv(os.path.join(run_dir, "candidates.csv"))
            self.assertEqual(len(frame), 20)
            self.assertIn("tables", frame.columns)


class TestPrunedSearch(unittest.TestCase):
    """Test the backtracking search and the lemma verification."""

    def test_symmetric_solutions(self):
        """The pruned search finds the six dictatorial symmetric solutions."""
        report = pruned_ud_search(2, SearchMode.SYMMETRIC)
        self.assertTrue(report.complete)
        self.assertEqual(len(report.solutions), 6)
        self.assertEqual(report.dictatorial, 6)

    def test_node_budget(self):
        """A small budget stops the full-triple search early."""
        report = pruned_ud_search(2, SearchMode.FULL, max_nodes=50)
        self.assertFalse(report.complete)
        self.assertEqual(report.nodes, 50)

    def test_lemmas(self):
        """No domain-satisfying symmetric SWF violates a lemma."""
        report = verify_lemmas_exhaustive(2)
        self.assertEqual(report.candidates, 3 ** 9)
        self.assertGreater(report.ud_satisfying, 0)
        self.assertEqual(report.violations, 0)
        with self.assertRaises(TooLarge):
            verify_lemmas_exhaustive(3)

    def test_lemma_report_counts_neutrality(self):
        """A component swapped for a dictator counts as two violations."""
        swf = pairwise_majority(3).with_component(
            2, dictator(1, 3).component(1)
        )
        report = LemmaReport(n=3)
        report.check(swf)
        self.assertEqual(report.unanimity_checked, 1)
        self.assertEqual(report.strictness_violations, 0)
        self.assertEqual(report.strict_neutrality_violations, 1)
        self.assertEqual(report.full_neutrality_violations, 1)
        self.assertEqual(report.violations, 2)


class TestSimulation(unittest.TestCase):
    """Test the Condorcet frequency estimates."""

    def test_exact_fraction(self):
        """One strict profile in eighteen cycles for three voters."""
        self.assertEqual(exact_condorcet_fraction(3), Fraction(1, 18))
        weak = exact_condorcet_fraction(2, Culture.WEAK)
        self.assertTrue(0 < weak < 1)

    def test_monte_carlo_close_to_exact(self):
        """The estimate lands within four standard errors of the exact value."""
        report = monte_carlo_condorcet(3, 200_000, seed=42)
        exact = float(exact_condorcet_fraction(3))
        self.assertLess(abs(report.fraction - exact), 4 * report.standard_error)
        low, high = report.interval
        self.assertLessEqual(low, report.fraction)
        self.assertGreaterEqual(high, report.fraction)

    def test_worker_independence(self):
        """Block seeding makes the estimate independent of the workers."""
        single = monte_carlo_condorcet(4, 30_000, seed=5, block_size=10_000)
        pooled = monte_carlo_condorcet(
            4, 30_000, seed=5, block_size=10_000, workers=3
        )
        self.assertEqual(single, pooled)

    def test_bad_arguments(self):
        """At least two voters and one trial are required."""
        with self.assertRaises(BadDimension):
            monte_carlo_condorcet(1, 10, seed=1)
        with self.assertRaises(BadDimension):
            monte_carlo_condorcet(3, 0, seed=1)

    def test_report_items(self):
        """The report lists its fields in a stable order."""
        report = monte_carlo_condorcet(2, 1000, seed=3, culture=Culture.WEAK)
        self.assertEqual(
            [key for key, _ in report.items()],
            ["voters", "culture", "trials", "seed", "cycles", "fraction",
             "standard_error", "interval"],
        )
        self.assertEqual(report.culture, "weak")
        self.assertTrue(np.isfinite(report.standard_error))


if __name__ == '__main__':
    unittest.main()
