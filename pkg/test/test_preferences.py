# -*- coding: utf-8 -*-

"""This module contains tests for the ternary preference encodings."""

__author__ = "Mir Sazzat Hossain"

import unittest

import numpy as np
from hypothesis import given
from hypothesis import strategies as st

from models.preferences import (
    E,
    ONE,
    ZERO,
    PairwisePreferences,
    PreferenceRelation,
    Profile,
    TernaryValue,
    classify,
    delta,
    enumerate_pairs,
    enumerate_profiles,
    enumerate_relations,
    enumerate_strict_pairs,
    enumerate_weak_orders,
    negate_profile,
    neg_value,
    opposite_row_profiles,
    parse_relation,
    profile_from_columns,
    profile_from_index,
    profile_from_rows,
    profile_rows,
    render_chain,
    strict_order_ranks,
    weak_opposite_profiles,
    weak_order_matrix,
    cycle_mask,
)
from utils.errors import (
    BadDimension,
    CycleColumn,
    DimensionMismatch,
    NonStrictRow,
    ParseError,
    UnsupportedAlternativeCount,
)

relations = st.lists(
    st.sampled_from(list(TernaryValue)), min_size=3, max_size=6
).map(lambda values: PreferenceRelation(tuple(values)))

weak_orders = st.sampled_from(enumerate_weak_orders())


@st.composite
def profiles(draw, max_individuals=4):
    n = draw(st.integers(2, max_individuals))
    return Profile(tuple(draw(weak_orders) for _ in range(n)))


class TestTernaryValue(unittest.TestCase):
    """Test single ternary values."""

    def test_negation(self):
        """Negation swaps 0 and 1 and keeps e."""
        self.assertIs(neg_value(ZERO), ONE)
        self.assertIs(neg_value(ONE), ZERO)
        self.assertIs(neg_value(E), E)

    def test_negation_everywhere(self):
        """Negation flips every entry of every relation and row."""
        tuples = list(enumerate_relations())
        tuples += enumerate_pairs(2) + enumerate_pairs(3)
        for t in tuples:
            negated = t.negate()
            self.assertEqual(type(negated), type(t))
            self.assertEqual(
                list(negated), [neg_value(v) for v in t]
            )
            self.assertEqual(negated.negate(), t)

    def test_symbols(self):
        """Symbols round trip and unknown symbols are rejected."""
        for value in TernaryValue:
            self.assertIs(TernaryValue.from_symbol(value.symbol), value)
        with self.assertRaises(ParseError):
            TernaryValue.from_symbol("x")

    def test_order(self):
        """The integer order is 0 < e < 1."""
        self.assertLess(ZERO, E)
        self.assertLess(E, ONE)


class TestClassification(unittest.TestCase):
    """Test the weak order and cycle classification."""

    def setUp(self):
        """Set up the test."""
        self.relations = enumerate_relations()

    def test_census(self):
        """Exactly 13 of the 27 triples are weak orders, 6 of them strict."""
        weak = [t for t in self.relations if classify(t).is_weak_order]
        cycles = [t for t in self.relations if classify(t).is_cycle]
        strict = {t.symbols for t in weak if classify(t).strict}
        self.assertEqual(len(self.relations), 27)
        self.assertEqual(len(weak), 13)
        self.assertEqual(len(cycles), 14)
        self.assertEqual(
            strict, {"001", "010", "011", "100", "101", "110"}
        )
        for symbols in ("000", "111", "00e", "ee1"):
            self.assertTrue(
                classify(PreferenceRelation.from_symbols(symbols)).is_cycle
            )

    def test_weak_order_listing(self):
        """Weak orders are listed in lexicographic order."""
        self.assertEqual(
            [t.symbols for t in enumerate_weak_orders()],
            ["001", "0e1", "010", "01e", "011", "e01", "eee",
             "e10", "100", "10e", "101", "1e0", "110"],
        )

    def test_index_is_lexicographic(self):
        """The base-3 index equals the enumeration position."""
        for k, t in enumerate(self.relations):
            self.assertEqual(t.index, k)
            self.assertEqual(PreferenceRelation.from_index(k, 3), t)
            self.assertEqual(PreferenceRelation.from_packed(t.packed, 3), t)

    def test_bad_symbol_column(self):
        """Unknown symbols report their column."""
        with self.assertRaises(ParseError) as context:
            PreferenceRelation.from_symbols("0x1")
        self.assertEqual(context.exception.column, 2)

    def test_short_relation(self):
        """Relations need at least three entries."""
        with self.assertRaises(BadDimension):
            PreferenceRelation.from_symbols("01")

    @given(relations)
    def test_negation_keeps_classification(self, t):
        """Negation maps weak orders to weak orders and cycles to cycles."""
        self.assertEqual(classify(t.negate()), classify(t))
        self.assertEqual(t.negate().negate(), t)

    @given(relations)
    def test_chain_round_trip(self, t):
        """Parsing the rendered chain gives the relation back."""
        self.assertEqual(parse_relation(render_chain(t)), t)


class TestChainNotation(unittest.TestCase):
    """Test rendering and parsing of chains."""

    def test_render(self):
        """Weak orders render linearly and cycles cyclically."""
        cases = {
            "0e1": "a1 < a2 ~ a3",
            "eee": "a1 ~ a2 ~ a3",
            "000": "a1 < a2 < a3 < a1",
            "111": "a1 < a3 < a2 < a1",
        }
        for symbols, chain in cases.items():
            self.assertEqual(
                render_chain(PreferenceRelation.from_symbols(symbols)), chain
            )

    def test_unicode(self):
        """The Unicode relation symbols are accepted."""
        self.assertEqual(
            parse_relation("a1 ≺ a2 ∼ a3"),
            PreferenceRelation.from_symbols("0e1"),
        )

    def test_reverse_in_linear_chain(self):
        """A linear chain may not use '>'."""
        with self.assertRaises(ParseError) as context:
            parse_relation("a1 > a2 ~ a3")
        self.assertEqual(context.exception.column, 4)

    def test_unexpected_character(self):
        """Unknown tokens report the column they start at."""
        with self.assertRaises(ParseError) as context:
            parse_relation("a1 < b2")
        self.assertEqual(context.exception.column, 6)

    def test_repeated_alternative(self):
        """Each alternative appears once in a linear chain."""
        with self.assertRaises(ParseError):
            parse_relation("a1 < a1 < a2")


class TestProfile(unittest.TestCase):
    """Test profile construction and enumeration."""

    def setUp(self):
        """Set up the test."""
        self.profile = profile_from_columns(["001", "110"])

    def test_rows(self):
        """Rows are the transposed columns."""
        self.assertEqual(
            [r.symbols for r in self.profile.rows], ["01", "01", "10"]
        )
        self.assertEqual(profile_from_rows(["01", "01", "10"]), self.profile)
        self.assertEqual(self.profile.matrix.shape, (3, 2))

    def test_rows_round_trip(self):
        """Every two-voter profile is rebuilt from its rows."""
        for m in enumerate_profiles(2):
            self.assertEqual(profile_from_rows(m.rows), m)

    def test_cycle_column(self):
        """A cycle column is rejected with its 1-based individual."""
        with self.assertRaises(CycleColumn) as context:
            profile_from_columns(["001", "000"])
        self.assertEqual(context.exception.individual, 2)

    def test_dimensions(self):
        """Dimension problems raise their own errors."""
        with self.assertRaises(DimensionMismatch):
            profile_from_rows(["01", "011", "10"])
        with self.assertRaises(UnsupportedAlternativeCount):
            profile_from_columns(["0011", "0101"])
        with self.assertRaises(BadDimension):
            profile_from_columns(["001"])

    def test_enumeration_index(self):
        """Enumeration order matches the profile index."""
        for k, profile in enumerate(enumerate_profiles(2)):
            self.assertEqual(profile.index, k)
            self.assertEqual(profile_from_index(2, k), profile)
        self.assertEqual(k, 13 ** 2 - 1)

    def test_profile_rows_matrix(self):
        """The vectorised row table agrees with the profile rows."""
        rows = profile_rows(2)
        self.assertEqual(rows.shape, (169, 3))
        for k in (0, 17, 100, 168):
            profile = profile_from_index(2, k)
            self.assertEqual(
                list(rows[k]), [r.index for r in profile.rows]
            )

    @given(profiles())
    def test_negation_is_involutive(self, m):
        """Negating twice restores the profile."""
        self.assertEqual(negate_profile(negate_profile(m)), m)
        self.assertEqual(m.negate().num_individuals, m.num_individuals)


class TestRows(unittest.TestCase):
    """Test rows and the opposite-row constructors."""

    def test_delta(self):
        """Delta repeats one value."""
        self.assertEqual(delta(E, 3).symbols, "eee")
        with self.assertRaises(BadDimension):
            delta(ZERO, 1)

    def test_votes_one(self):
        """Votes for 1 are reported with 1-based indices."""
        row = PairwisePreferences.from_symbols("1e1")
        self.assertEqual(row.votes_one(), frozenset({1, 3}))

    def test_enumeration_sizes(self):
        """There are 3^N rows and 2^N strict rows."""
        self.assertEqual(len(enumerate_pairs(3)), 27)
        self.assertEqual(len(enumerate_strict_pairs(3)), 8)
        self.assertTrue(all(r.is_strict for r in enumerate_strict_pairs(3)))

    def test_opposite_rows(self):
        """Every arrangement of r, -r and q is a profile."""
        for r in enumerate_strict_pairs(3):
            for q in enumerate_pairs(3):
                for m in opposite_row_profiles(r, q):
                    for column in m.columns:
                        self.assertTrue({ZERO, ONE} <= set(column))

    def test_opposite_rows_need_strict_row(self):
        """The strict constructor rejects e entries."""
        with self.assertRaises(NonStrictRow):
            opposite_row_profiles(
                PairwisePreferences.from_symbols("0e"),
                PairwisePreferences.from_symbols("00"),
            )

    def test_weak_opposite_rows(self):
        """Arrangements with the all-e row are profiles for any row."""
        for n in (2, 3):
            for r in enumerate_pairs(n):
                profiles = weak_opposite_profiles(r)
                self.assertEqual(len(profiles), 6)
                first = profiles[0].rows
                self.assertEqual(
                    (first[0], first[1], first[2]),
                    (r, r.negate(), delta(E, n)),
                )
                for m in profiles:
                    self.assertEqual(
                        sorted(row.index for row in m.rows),
                        sorted(row.index for row in first),
                    )


class TestVectorised(unittest.TestCase):
    """Test the numpy lookup tables."""

    def test_tables(self):
        """Weak order ranks and the cycle mask agree with classify."""
        self.assertEqual(weak_order_matrix().shape, (13, 3))
        np.testing.assert_array_equal(
            strict_order_ranks(), [0, 2, 4, 8, 10, 12]
        )
        self.assertEqual(int(cycle_mask().sum()), 14)


if __name__ == '__main__':
    unittest.main()
