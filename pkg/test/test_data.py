# -*- coding: utf-8 -*-

"""This module contains tests for the text formats."""

__author__ = "Mir Sazzat Hossain"

import os
import tempfile
import unittest

from models.preferences import PreferenceRelation, profile_from_rows
from models.swf import (
    constant_swf,
    dictator,
    hierarchical_dictator,
    pairwise_majority,
)
from models.witness import Provenance, contradictory_pair, strictness_witness
from utils.data import DataCenter
from utils.errors import (
    CycleColumn,
    LoadError,
    ParseError,
    UnsupportedAlternativeCount,
)

CONDORCET = "profile A=3 N=3\n0 0 1\n0 1 0\n1 0 0\n"


class TestProfileFormat(unittest.TestCase):
    """Test reading and writing profiles."""

    def test_parse(self):
        """Rows list the votes of every individual."""
        profile = DataCenter.parse_profile(CONDORCET)
        self.assertEqual(profile, profile_from_rows(["001", "010", "100"]))
        self.assertEqual(DataCenter.dump_profile(profile), CONDORCET)

    def test_comments_and_blank_lines(self):
        """Comments and blank lines are ignored."""
        text = "# two voters\nprofile A=3 N=2  # header\n0 1\n\n0 1\n1 0\n"
        profile = DataCenter.parse_profile(text)
        self.assertEqual(
            [c.symbols for c in profile.columns], ["001", "110"]
        )

    def test_bad_symbol(self):
        """Unknown symbols report their line and column."""
        with self.assertRaises(ParseError) as context:
            DataCenter.parse_profile("profile A=3 N=2\n0 1\n0 x\n1 0\n")
        self.assertEqual(context.exception.line, 3)
        self.assertEqual(context.exception.column, 3)

    def test_wrong_row_length(self):
        """Rows need exactly N symbols."""
        with self.assertRaises(ParseError) as context:
            DataCenter.parse_profile("profile A=3 N=2\n0 1 1\n0 1\n1 0\n")
        self.assertEqual(context.exception.line, 2)

    def test_missing_rows(self):
        """A truncated profile reports the line after the last row."""
        with self.assertRaises(ParseError) as context:
            DataCenter.parse_profile("profile A=3 N=2\n0 1\n")
        self.assertEqual(context.exception.line, 3)

    def test_header(self):
        """Only three alternatives are supported and the header is required."""
        with self.assertRaises(UnsupportedAlternativeCount):
            DataCenter.parse_profile("profile A=4 N=2\n0 1\n0 1\n1 0\n0 0\n")
        with self.assertRaises(ParseError):
            DataCenter.parse_profile("profile N=2\n0 1\n0 1\n1 0\n")
        with self.assertRaises(ParseError):
            DataCenter.parse_profile("")

    def test_cycle_column(self):
        """A column that cycles is rejected."""
        with self.assertRaises(CycleColumn) as context:
            DataCenter.parse_profile("profile A=3 N=2\n0 0\n0 1\n0 1\n")
        self.assertEqual(context.exception.individual, 1)

    def test_trailing_content(self):
        """Nothing may follow the rows of a profile file."""
        with self.assertRaises(ParseError) as context:
            DataCenter.parse_profile(CONDORCET + "0 0 0\n")
        self.assertEqual(context.exception.line, 5)

    def test_load_from_file(self):
        """Profiles are read from files."""
        with tempfile.TemporaryDirectory() as directory:
            path = os.path.join(directory, "nested", "m.txt")
            DataCenter.write_text(path, CONDORCET)
            self.assertEqual(
                DataCenter.load_profile(path),
                profile_from_rows(["001", "010", "100"]),
            )


class TestWitnessFormat(unittest.TestCase):
    """Test the witness trailer."""

    def test_witness(self):
        """The trailer carries the aggregate and the provenance."""
        witness = strictness_witness(pairwise_majority(2))
        text = DataCenter.dump_witness(witness)
        self.assertTrue(text.endswith(
            "aggregate: e0e\nprovenance: StrictnessLemma\n"
        ))
        profile, aggregate, provenance = DataCenter.parse_witness(text)
        self.assertEqual(profile, witness.profile)
        self.assertEqual(aggregate, witness.aggregate)
        self.assertIs(provenance, Provenance.STRICTNESS_LEMMA)

    def test_pair(self):
        """Both halves of a pair are written as witness files."""
        first, second = DataCenter.dump_pair(
            contradictory_pair(pairwise_majority(3))
        )
        self.assertEqual(DataCenter.parse_witness(first)[1].symbols, "111")
        self.assertEqual(DataCenter.parse_witness(second)[1].symbols, "000")

    def test_missing_trailer(self):
        """A witness needs both trailer lines."""
        with self.assertRaises(ParseError):
            DataCenter.parse_witness(CONDORCET + "aggregate: 000\n")

    def test_unknown_provenance(self):
        """Provenance names are checked."""
        with self.assertRaises(ParseError) as context:
            DataCenter.parse_witness(
                CONDORCET + "aggregate: 000\nprovenance: Guess\n"
            )
        self.assertEqual(context.exception.line, 6)


class TestSwfFormat(unittest.TestCase):
    """Test SWF files and builtin names."""

    def test_builtin_lines(self):
        """Builtin SWFs are named in the file body."""
        self.assertEqual(
            DataCenter.parse_swf("swf N=3\nbuiltin majority\n"),
            pairwise_majority(3),
        )
        self.assertEqual(
            DataCenter.parse_swf("swf N=2\nbuiltin dictator:2\n"),
            dictator(2, 2),
        )
        self.assertEqual(
            DataCenter.parse_swf("swf N=2\nbuiltin hierarchical:2,1\n"),
            hierarchical_dictator([2, 1], 2),
        )

    def test_builtin_errors(self):
        """Unknown builtins and conflicting N are rejected."""
        with self.assertRaises(ParseError):
            DataCenter.parse_swf("swf N=2\nbuiltin borda\n")
        with self.assertRaises(LoadError):
            DataCenter.parse_swf("swf N=3\nbuiltin majority:2\n")
        with self.assertRaises(ParseError):
            DataCenter.parse_swf("swf N=2\nbuiltin dictator:first\n")

    def test_explicit_tables(self):
        """Dumped tables parse back to the same SWF."""
        swf = hierarchical_dictator([2, 1], 2)
        text = DataCenter.dump_swf(swf)
        self.assertTrue(text.startswith("swf N=2\ncomponent 1\n00 0\n"))
        self.assertEqual(DataCenter.parse_swf(text), swf)

    def test_missing_input(self):
        """Every component needs an output for every input tuple."""
        text = DataCenter.dump_swf(pairwise_majority(2))
        text = text.replace("ee e\n", "", 1)
        with self.assertRaises(LoadError) as context:
            DataCenter.parse_swf(text)
        self.assertIn("component 1 has no output for ee", str(context.exception))

    def test_duplicate_input(self):
        """An input tuple may appear once per component."""
        text = DataCenter.dump_swf(pairwise_majority(2)) + "component 4\n"
        with self.assertRaises(LoadError):
            DataCenter.parse_swf(text)
        text = DataCenter.dump_swf(pairwise_majority(2)).replace(
            "component 2\n", "component 2\n01 e\n", 1
        )
        with self.assertRaises(LoadError):
            DataCenter.parse_swf(text)

    def test_missing_component(self):
        """All three components are required."""
        text = DataCenter.dump_swf(pairwise_majority(2))
        text = text[:text.index("component 3")]
        with self.assertRaises(LoadError):
            DataCenter.parse_swf(text)

    def test_bad_output_symbol(self):
        """Output symbols report their column."""
        text = DataCenter.dump_swf(pairwise_majority(2)).replace(
            "00 0\n", "00 2\n", 1
        )
        with self.assertRaises(ParseError) as context:
            DataCenter.parse_swf(text)
        self.assertEqual(context.exception.line, 3)
        self.assertEqual(context.exception.column, 4)

    def test_load_names_after_file(self):
        """Explicit SWFs take the name of their file."""
        with tempfile.TemporaryDirectory() as directory:
            path = os.path.join(directory, "mine.swf")
            DataCenter.write_text(path, DataCenter.dump_swf(dictator(1, 2)))
            swf = DataCenter.resolve_swf(path)
            self.assertEqual(swf.name, "mine.swf")
            self.assertEqual(swf, dictator(1, 2))

    def test_resolve_names(self):
        """Builtin names accept a prefix, either separator and a trailing N."""
        cases = {
            "majority": pairwise_majority(3),
            "builtin:majority:5": pairwise_majority(5),
            "dictator-1": dictator(1, 3),
            "dictator:2:2": dictator(2, 2),
            "hierarchical:1,2:2": hierarchical_dictator([1, 2], 2),
            "constant:0e1": constant_swf(
                PreferenceRelation.from_symbols("0e1"), 3
            ),
        }
        for name, expected in cases.items():
            self.assertEqual(DataCenter.resolve_swf(name), expected)
        self.assertEqual(
            DataCenter.resolve_swf("majority", default_individuals=2),
            pairwise_majority(2),
        )
        for name in ("borda", "no-such-file.swf", ""):
            with self.assertRaises(ParseError):
                DataCenter.resolve_swf(name)


if __name__ == '__main__':
    unittest.main()
