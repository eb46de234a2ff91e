# -*- coding: utf-8 -*-

"""This module contains tests for the verify.py command line."""

__author__ = "Mir Sazzat Hossain"

import io
import json
import os
import subprocess
import sys
import tempfile
import unittest
from contextlib import redirect_stderr, redirect_stdout

from models.swf import dictator, pairwise_majority
from utils.config import ROOT_DIR
from utils.data import DataCenter
from verify import EXIT_NEGATIVE, EXIT_OK, EXIT_USAGE, main


def _run(*argv):
    out, err = io.StringIO(), io.StringIO()
    with redirect_stdout(out), redirect_stderr(err):
        code = main(list(argv) + ["--quiet"])
    return code, out.getvalue(), err.getvalue()


class TestClassify(unittest.TestCase):
    """Test the classify subcommand."""

    def test_literal(self):
        """A ternary literal is classified and rendered."""
        code, out, _ = _run("classify", "0e1")
        self.assertEqual(code, EXIT_OK)
        self.assertEqual(
            out,
            "relation: 0e1\nkind: weak order\nstrict: no\n"
            "chain: a1 < a2 ~ a3\n",
        )

    def test_chain(self):
        """Chain notation is parsed back to its tuple."""
        code, out, _ = _run("classify", "a1 < a2 < a3 < a1")
        self.assertEqual(code, EXIT_OK)
        self.assertIn("relation: 000\nkind: cycle\n", out)

    def test_json(self):
        """JSON reports carry the same fields."""
        code, out, _ = _run("classify", "001", "--format", "json")
        self.assertEqual(code, EXIT_OK)
        self.assertEqual(
            json.loads(out),
            {"relation": "001", "kind": "weak order", "strict": True,
             "chain": "a1 < a2 < a3"},
        )

    def test_profile_file(self):
        """Each column of a profile file is classified."""
        with tempfile.TemporaryDirectory() as directory:
            path = os.path.join(directory, "m.txt")
            DataCenter.write_text(path, "profile A=3 N=2\n0 1\n0 e\n1 0\n")
            code, out, _ = _run("classify", path)
        self.assertEqual(code, EXIT_OK)
        self.assertIn("individuals: 2\n", out)
        self.assertIn("column 1: 001 weak order strict:", out)
        self.assertIn("column 2: 1e0 weak order:", out)

    def test_bad_chain(self):
        """Malformed chains exit with a usage status."""
        code, _, err = _run("classify", "a1 < b2")
        self.assertEqual(code, EXIT_USAGE)
        self.assertIn("column 6", err)


class TestCheck(unittest.TestCase):
    """Test the check subcommand."""

    def test_single_axiom(self):
        """A holding axiom exits 0."""
        code, out, _ = _run("check", "majority", "--axiom", "unanimity")
        self.assertEqual(code, EXIT_OK)
        self.assertIn("unanimity: holds\n", out)

    def test_failing_axiom(self):
        """A failing axiom exits 1."""
        code, out, _ = _run(
            "check", "dictator:1", "--axiom", "non_dictatorship"
        )
        self.assertEqual(code, EXIT_NEGATIVE)
        self.assertIn(
            "non_dictatorship: fails: individual 1 dictates component 1", out
        )

    def test_full_report(self):
        """Majority is reported with a cycle witness."""
        code, out, _ = _run("check", "majority", "--all")
        self.assertEqual(code, EXIT_NEGATIVE)
        self.assertTrue(out.endswith("dictator: none\narrow: cycle witness\n"))

    def test_unknown_swf(self):
        """Unknown SWF names exit 2."""
        code, _, err = _run("check", "borda")
        self.assertEqual(code, EXIT_USAGE)
        self.assertIn("no such file or builtin SWF", err)

    def test_bad_option(self):
        """Argument errors exit 2."""
        code, _, _ = _run("check", "majority", "--axiom", "fairness")
        self.assertEqual(code, EXIT_USAGE)

    def test_missing_config(self):
        """A missing config file exits 2."""
        code, _, err = _run("classify", "001", "--config", "nonexistent")
        self.assertEqual(code, EXIT_USAGE)
        self.assertIn("cannot load config", err)

    def test_non_neutral_file(self):
        """A component swapped for a dictator fails strict neutrality."""
        swf = pairwise_majority(3).with_component(
            2, dictator(1, 3).component(1)
        )
        with tempfile.TemporaryDirectory() as directory:
            path = os.path.join(directory, "mixed.swf")
            DataCenter.write_text(path, DataCenter.dump_swf(swf))
            code, out, _ = _run("check", path, "--axiom", "strict_neutrality")
            self.assertEqual(code, EXIT_NEGATIVE)
            self.assertIn("strict_neutrality: fails", out)
            code, out, _ = _run(
                "witness", path, "--theorem", "pareto", "--format", "json"
            )
        self.assertEqual(code, EXIT_OK)
        self.assertEqual(json.loads(out)["aggregate"], "e0e")


class TestWitness(unittest.TestCase):
    """Test the witness subcommand."""

    def test_arrow_to_file(self):
        """The Arrow witness of majority is written as a witness file."""
        with tempfile.TemporaryDirectory() as directory:
            path = os.path.join(directory, "w.txt")
            code, _, _ = _run(
                "witness", "majority", "--theorem", "arrow", "--out", path
            )
            self.assertEqual(code, EXIT_OK)
            profile, aggregate, provenance = DataCenter.load_witness(path)
        self.assertEqual(aggregate.symbols, "111")
        self.assertEqual(provenance.value, "ArrowCase2")
        self.assertEqual(
            [r.symbols for r in profile.rows], ["110", "101", "011"]
        )

    def test_pair_to_files(self):
        """Contradictory pairs are written next to each other."""
        with tempfile.TemporaryDirectory() as directory:
            path = os.path.join(directory, "pair.txt")
            code, _, _ = _run(
                "witness", "majority", "--theorem", "contradictory-pair",
                "--out", path,
            )
            self.assertEqual(code, EXIT_OK)
            _, first, _ = DataCenter.load_witness(path)
            _, second, _ = DataCenter.load_witness(
                os.path.join(directory, "pair_prime.txt")
            )
        self.assertEqual(first.symbols, "111")
        self.assertEqual(second.symbols, "000")

    def test_pair_to_stdout(self):
        """Both halves go to stdout under headers."""
        code, out, _ = _run(
            "witness", "majority", "--theorem", "contradictory-pair"
        )
        self.assertEqual(code, EXIT_OK)
        self.assertTrue(out.startswith("# m\nprofile A=3 N=3\n"))
        self.assertIn("# m_prime\n", out)

    def test_json(self):
        """JSON witnesses list rows, aggregate and provenance."""
        code, out, _ = _run(
            "witness", "majority:2", "--theorem", "strictness",
            "--format", "json",
        )
        self.assertEqual(code, EXIT_OK)
        document = json.loads(out)
        self.assertEqual(document["aggregate"], "e0e")
        self.assertEqual(document["provenance"], "StrictnessLemma")

    def test_not_applicable(self):
        """A property the SWF satisfies has no witness."""
        code, out, err = _run("witness", "majority", "--theorem", "strictness")
        self.assertEqual(code, EXIT_NEGATIVE)
        self.assertEqual(out, "")
        self.assertIn("not applicable", err)

    def test_precondition(self):
        """Dictatorships exit 1 with the failed precondition."""
        code, _, err = _run("witness", "dictator:1", "--theorem", "arrow")
        self.assertEqual(code, EXIT_NEGATIVE)
        self.assertIn("non_dictatorship", err)


class TestEnumerateAndSimulate(unittest.TestCase):
    """Test the enumerate and simulate subcommands."""

    def test_pruned(self):
        """The pruned symmetric search reports six solutions."""
        code, out, _ = _run(
            "enumerate", "--pruned", "--mode", "symmetric",
            "--individuals", "2",
        )
        self.assertEqual(code, EXIT_OK)
        self.assertIn("complete: yes\nud_satisfying: 6\ndictatorial: 6\n", out)

    def test_sampled_sweep(self):
        """A seeded sampled sweep reports no discrepancy."""
        code, out, _ = _run(
            "enumerate", "--mode", "full", "--trials", "30", "--seed", "3",
        )
        self.assertEqual(code, EXIT_OK)
        self.assertIn("sampled: yes\nseed: 3\ntotal: 30\n", out)
        self.assertIn("discrepancies: 0\n", out)

    def test_sampling_needs_seed(self):
        """Sampling without a seed is a usage error."""
        code, _, err = _run("enumerate", "--mode", "full", "--trials", "5")
        self.assertEqual(code, EXIT_USAGE)
        self.assertIn("--seed", err)

    def test_simulate(self):
        """The simulation reports the exact fraction on request."""
        code, out, _ = _run(
            "simulate", "--voters", "3", "--trials", "1000", "--seed", "1",
            "--exact",
        )
        self.assertEqual(code, EXIT_OK)
        self.assertIn("trials: 1000\nseed: 1\n", out)
        self.assertIn("exact: 1/18 = 0.055556\n", out)

    def test_simulate_usage(self):
        """A seed and at least two voters are required."""
        self.assertEqual(_run("simulate", "--trials", "10")[0], EXIT_USAGE)
        self.assertEqual(
            _run("simulate", "--voters", "0", "--seed", "1")[0], EXIT_USAGE
        )
        self.assertEqual(
            _run("simulate", "--trials", "0", "--seed", "1")[0], EXIT_USAGE
        )


class TestScript(unittest.TestCase):
    """Test running verify.py as a script."""

    def test_subprocess(self):
        """The script prints the report and returns the exit status."""
        result = subprocess.run(
            [sys.executable, "verify.py", "classify", "e10", "--quiet"],
            cwd=ROOT_DIR, capture_output=True, text=True, check=False,
        )
        self.assertEqual(result.returncode, EXIT_OK)
        self.assertIn("chain: a3 < a1 ~ a2\n", result.stdout)


if __name__ == '__main__':
    unittest.main()
