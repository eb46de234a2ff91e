# -*- coding: utf-8 -*-

"""
Ternary encodings of weak preferences, profiles and their enumeration.

A preference relation on alternatives a_1, ..., a_A is an A-tuple whose entry i
compares a_i with a_{s(i)}, s(i) = i + 1 mod A: ``0`` for a_i strictly
preferred, ``1`` for the reverse and ``e`` for indifference. A profile is an
A x N matrix whose columns are individual weak orders and whose rows are the
pairwise preferences of all individuals on one adjacent pair.

Classes:
    - :py:class:`TernaryValue` one of 0, e, 1.
    - :py:class:`PreferenceRelation` an A-tuple of ternary values.
    - :py:class:`PairwisePreferences` an N-tuple of ternary values (a row).
    - :py:class:`Profile` an A x N matrix of weak-order columns.
    - :py:class:`Classification` weak order or cycle, strict or not.

Functions:
    - :py:func:`neg_value`, :py:func:`vals`, :py:func:`classify`
    - :py:func:`negate_pref`, :py:func:`negate_pair`, :py:func:`negate_profile`
    - :py:func:`delta`
    - :py:func:`profile_from_columns`, :py:func:`profile_from_rows`
    - :py:func:`opposite_row_profiles`, :py:func:`weak_opposite_profiles`
    - :py:func:`enumerate_relations`, :py:func:`enumerate_weak_orders`,
      :py:func:`enumerate_pairs`, :py:func:`enumerate_strict_pairs`,
      :py:func:`enumerate_profiles`
    - :py:func:`render_chain`, :py:func:`parse_relation`
"""

__author__ = "Mir Sazzat Hossain"

import itertools
import logging
import re
from dataclasses import dataclass
from enum import Enum, IntEnum
from functools import cached_property, lru_cache
from typing import Iterable, Iterator, List, Sequence, Tuple, Union

import numpy as np

from utils.errors import (
    BadDimension,
    CycleColumn,
    DimensionMismatch,
    InvalidProfile,
    NonStrictRow,
    ParseError,
    UnsupportedAlternativeCount,
)

logger = logging.getLogger(__name__)

NUM_ALTERNATIVES = 3
MIN_INDIVIDUALS = 2
NUM_WEAK_ORDERS = 13

_SYMBOLS = "0e1"


class TernaryValue(IntEnum):
    """A ternary preference value; the integer order is 0 < e < 1."""

    ZERO = 0
    E = 1
    ONE = 2

    @property
    def symbol(self) -> str:
        """ASCII symbol of the value."""
        return _SYMBOLS[self]

    @property
    def is_strict(self) -> bool:
        """Whether the value encodes a strict preference."""
        return self is not TernaryValue.E

    def neg(self) -> "TernaryValue":
        """Swap 0 and 1, keep e."""
        return TernaryValue(2 - int(self))

    @classmethod
    def from_symbol(cls, symbol: str) -> "TernaryValue":
        """
        Convert an ASCII symbol to a ternary value.

        :param symbol: one of ``0``, ``e``, ``1``
        :type symbol: str

        :return: the ternary value
        :rtype: TernaryValue

        :raises ParseError: if the symbol is unknown
        """
        position = _SYMBOLS.find(symbol) if len(symbol) == 1 else -1
        if position < 0:
            raise ParseError(f"unknown ternary symbol {symbol!r}")
        return cls(position)


ZERO = TernaryValue.ZERO
E = TernaryValue.E
ONE = TernaryValue.ONE

ValueLike = Union[TernaryValue, str]


def _coerce(value: ValueLike) -> TernaryValue:
    if isinstance(value, TernaryValue):
        return value
    if isinstance(value, str):
        return TernaryValue.from_symbol(value)
    raise TypeError(
        f"expected a TernaryValue or one of '0', 'e', '1', got {value!r}"
    )


def neg_value(v: TernaryValue) -> TernaryValue:
    """
    Negate a ternary value: 0 -> 1, 1 -> 0, e -> e.

    :param v: the value
    :type v: TernaryValue

    :return: the negated value
    :rtype: TernaryValue
    """
    return _coerce(v).neg()


@dataclass(frozen=True)
class _TernaryTuple(object):
    """Immutable tuple of ternary values shared by relations and rows."""

    entries: Tuple[TernaryValue, ...]

    min_length = 1
    length_name = "length"

    def __post_init__(self) -> None:
        """Normalise the entries and check the length."""
        entries = self.entries
        if isinstance(entries, str):
            entries = tuple(entries)
        values = tuple(_coerce(v) for v in entries)
        if len(values) < self.min_length:
            raise BadDimension(
                f"{type(self).__name__} needs {self.length_name} >= "
                f"{self.min_length}, got {len(values)}"
            )
        object.__setattr__(self, "entries", values)

    @classmethod
    def from_symbols(cls, text: str):
        """
        Build a tuple from a symbol string such as ``"0e1"``.

        :param text: the symbols
        :type text: str

        :return: the tuple
        :raises ParseError: on unknown symbols, with the offending column
        """
        values = []
        for position, symbol in enumerate(text.strip()):
            try:
                values.append(TernaryValue.from_symbol(symbol))
            except ParseError:
                raise ParseError(
                    f"unknown ternary symbol {symbol!r}", column=position + 1
                ) from None
        return cls(tuple(values))

    @classmethod
    def from_codes(cls, codes: Iterable[int]):
        """Build a tuple from integer codes 0 (0), 1 (e), 2 (1)."""
        return cls(tuple(TernaryValue(int(c)) for c in codes))

    @classmethod
    def from_index(cls, index: int, length: int):
        """
        Build the tuple at a base-3 index (most significant entry first).

        :param index: position in lexicographic order
        :type index: int
        :param length: tuple length
        :type length: int

        :return: the tuple
        """
        digits = []
        for _ in range(length):
            index, digit = divmod(index, 3)
            digits.append(digit)
        return cls.from_codes(reversed(digits))

    @classmethod
    def from_packed(cls, code: int, length: int):
        """Unpack a tuple stored with 2 bits per entry, entry 1 lowest."""
        return cls.from_codes((code >> (2 * k)) & 3 for k in range(length))

    def __len__(self) -> int:
        """Return the number of entries."""
        return len(self.entries)

    def __iter__(self) -> Iterator[TernaryValue]:
        """Iterate over the entries."""
        return iter(self.entries)

    def __getitem__(self, item):
        """Return one entry (0-based)."""
        return self.entries[item]

    def __str__(self) -> str:
        """Return the symbol string."""
        return self.symbols

    @property
    def symbols(self) -> str:
        """Symbol string, e.g. ``"0e1"``."""
        return "".join(v.symbol for v in self.entries)

    @property
    def index(self) -> int:
        """Base-3 index, equal to the lexicographic position."""
        value = 0
        for v in self.entries:
            value = value * 3 + int(v)
        return value

    @property
    def packed(self) -> int:
        """The 2-bit-per-entry machine word encoding."""
        code = 0
        for k, v in enumerate(self.entries):
            code |= int(v) << (2 * k)
        return code

    @property
    def codes(self) -> np.ndarray:
        """Entries as a uint8 array."""
        return np.fromiter((int(v) for v in self.entries), dtype=np.uint8)

    @property
    def is_strict(self) -> bool:
        """Whether no entry equals e."""
        return E not in self.entries


@dataclass(frozen=True)
class PreferenceRelation(_TernaryTuple):
    """A preference relation: entry i compares a_i with a_{i+1 mod A}."""

    min_length = NUM_ALTERNATIVES
    length_name = "A"

    def negate(self) -> "PreferenceRelation":
        """Entrywise negation."""
        return PreferenceRelation(tuple(v.neg() for v in self.entries))

    @property
    def classification(self) -> "Classification":
        """Weak order or cycle."""
        return classify(self)


@dataclass(frozen=True)
class PairwisePreferences(_TernaryTuple):
    """Every individual's vote on one adjacent pair of alternatives."""

    min_length = MIN_INDIVIDUALS
    length_name = "N"

    def negate(self) -> "PairwisePreferences":
        """Entrywise negation."""
        return PairwisePreferences(tuple(v.neg() for v in self.entries))

    def votes_one(self) -> frozenset:
        """1-based indices of the individuals voting 1."""
        return frozenset(
            i + 1 for i, v in enumerate(self.entries) if v is ONE
        )


class RelationKind(Enum):
    """Kind of a preference relation."""

    WEAK_ORDER = "weak order"
    CYCLE = "cycle"


@dataclass(frozen=True)
class Classification(object):
    """Classification of a preference relation."""

    kind: RelationKind
    strict: bool

    @property
    def is_weak_order(self) -> bool:
        """Whether the relation is a weak order."""
        return self.kind is RelationKind.WEAK_ORDER

    @property
    def is_cycle(self) -> bool:
        """Whether the relation is a preference cycle."""
        return self.kind is RelationKind.CYCLE


def vals(t: _TernaryTuple) -> frozenset:
    """
    Return the distinct values of a tuple.

    :param t: a preference relation or row
    :type t: PreferenceRelation

    :return: the set of values present
    :rtype: frozenset
    """
    return frozenset(t.entries)


@lru_cache(maxsize=4096)
def _classify_packed(code: int, length: int) -> Classification:
    present = frozenset((code >> (2 * k)) & 3 for k in range(length))
    weak = present == {int(E)} or {int(ZERO), int(ONE)} <= present
    kind = RelationKind.WEAK_ORDER if weak else RelationKind.CYCLE
    return Classification(kind=kind, strict=int(E) not in present)


def classify(t: PreferenceRelation) -> Classification:
    """
    Classify a relation as a weak order or a cycle.

    A relation is a weak order iff it is all e, or both 0 and 1 occur.

    :param t: the relation, any A >= 3
    :type t: PreferenceRelation

    :return: the classification
    :rtype: Classification
    """
    return _classify_packed(t.packed, len(t))


def negate_pref(t: PreferenceRelation) -> PreferenceRelation:
    """Entrywise negation of a preference relation."""
    return t.negate()


def negate_pair(r: PairwisePreferences) -> PairwisePreferences:
    """Entrywise negation of a row of pairwise preferences."""
    return r.negate()


def delta(x: ValueLike, n: int) -> PairwisePreferences:
    """
    The constant row (x, ..., x) of length n.

    :param x: the repeated value
    :type x: TernaryValue
    :param n: number of individuals
    :type n: int

    :return: the constant row
    :rtype: PairwisePreferences

    :raises BadDimension: if n < 2
    """
    if n < MIN_INDIVIDUALS:
        raise BadDimension(f"delta needs n >= {MIN_INDIVIDUALS}, got {n}")
    return PairwisePreferences((_coerce(x),) * n)


@dataclass(frozen=True)
class Profile(object):
    """An A x N ternary matrix whose columns are weak orders (A = 3)."""

    columns: Tuple[PreferenceRelation, ...]

    def __post_init__(self) -> None:
        """Validate dimensions and reject cycle columns."""
        columns = tuple(
            c if isinstance(c, PreferenceRelation) else PreferenceRelation(c)
            for c in self.columns
        )
        if len(columns) < MIN_INDIVIDUALS:
            raise BadDimension(
                f"a profile needs N >= {MIN_INDIVIDUALS}, got {len(columns)}"
            )
        lengths = {len(c) for c in columns}
        if len(lengths) != 1:
            raise DimensionMismatch(
                f"columns have different lengths {sorted(lengths)}"
            )
        if lengths != {NUM_ALTERNATIVES}:
            raise UnsupportedAlternativeCount(
                f"profiles are supported for A = {NUM_ALTERNATIVES} only"
            )
        for i, column in enumerate(columns):
            if classify(column).is_cycle:
                raise CycleColumn(i + 1, column.symbols)
        object.__setattr__(self, "columns", columns)

    @property
    def num_alternatives(self) -> int:
        """A, the number of alternatives."""
        return len(self.columns[0])

    @property
    def num_individuals(self) -> int:
        """N, the number of individuals."""
        return len(self.columns)

    @cached_property
    def rows(self) -> Tuple[PairwisePreferences, ...]:
        """Row view: rows[j][i] == columns[i][j]."""
        return tuple(
            PairwisePreferences(tuple(c[j] for c in self.columns))
            for j in range(self.num_alternatives)
        )

    @property
    def matrix(self) -> np.ndarray:
        """The A x N matrix of integer codes."""
        return np.array([c.codes for c in self.columns], dtype=np.uint8).T

    @property
    def is_strict(self) -> bool:
        """Whether no entry equals e."""
        return all(c.is_strict for c in self.columns)

    @property
    def index(self) -> int:
        """Position of the profile in :py:func:`enumerate_profiles` order."""
        ranks = _weak_order_ranks()
        value = 0
        for column in self.columns:
            value = value * NUM_WEAK_ORDERS + int(ranks[column.index])
        return value

    def negate(self) -> "Profile":
        """Column-wise negation."""
        return negate_profile(self)

    def __str__(self) -> str:
        """Rows as symbol strings, one per line."""
        return "\n".join(" ".join(r.symbols) for r in self.rows)


def negate_profile(m: Profile) -> Profile:
    """
    Negate every column of a profile.

    :param m: the profile
    :type m: Profile

    :return: the negated profile
    :rtype: Profile

    :raises InvalidProfile: if a negated column were a cycle
    """
    try:
        return Profile(tuple(c.negate() for c in m.columns))
    except CycleColumn as error:
        raise InvalidProfile(f"negation produced a cycle: {error}") from error


def profile_from_columns(
    cols: Sequence[Union[PreferenceRelation, str]],
) -> Profile:
    """
    Build a profile from its columns.

    :param cols: one preference relation (or symbol string) per individual
    :type cols: Sequence[PreferenceRelation]

    :return: the validated profile
    :rtype: Profile

    :raises CycleColumn: if a column is a preference cycle
    :raises DimensionMismatch: if the columns differ in length
    """
    columns = tuple(
        PreferenceRelation.from_symbols(c) if isinstance(c, str) else c
        for c in cols
    )
    return Profile(columns)


def profile_from_rows(
    rows: Sequence[Union[PairwisePreferences, str]],
) -> Profile:
    """
    Build a profile from its rows by transposing.

    :param rows: one row of pairwise preferences per adjacent pair
    :type rows: Sequence[PairwisePreferences]

    :return: the validated profile
    :rtype: Profile

    :raises CycleColumn: if a column is a preference cycle
    :raises DimensionMismatch: if the rows differ in length
    """
    rows = tuple(
        PairwisePreferences.from_symbols(r) if isinstance(r, str) else r
        for r in rows
    )
    lengths = {len(r) for r in rows}
    if len(lengths) > 1:
        raise DimensionMismatch(f"rows have different lengths {sorted(lengths)}")
    if len(rows) < NUM_ALTERNATIVES:
        raise BadDimension(
            f"a profile needs A >= {NUM_ALTERNATIVES} rows, got {len(rows)}"
        )
    n = lengths.pop()
    return Profile(tuple(
        PreferenceRelation(tuple(r[i] for r in rows)) for i in range(n)
    ))


def _arrangements(a, b, q) -> List[Tuple]:
    return [
        (a, b, q), (a, q, b), (q, a, b),
        (b, a, q), (b, q, a), (q, b, a),
    ]


def opposite_row_profiles(
    r: PairwisePreferences,
    q: PairwisePreferences,
) -> List[Profile]:
    """
    The six row arrangements of r, its negation and an arbitrary row q.

    Order: (r, -r, q), (r, q, -r), (q, r, -r), (-r, r, q), (-r, q, r),
    (q, -r, r).

    :param r: a strict row
    :type r: PairwisePreferences
    :param q: any row of the same length
    :type q: PairwisePreferences

    :return: the six profiles
    :rtype: List[Profile]

    :raises NonStrictRow: if r contains e
    :raises DimensionMismatch: if the rows differ in length
    """
    if not r.is_strict:
        raise NonStrictRow(f"row {r.symbols} is not strict")
    if len(r) != len(q):
        raise DimensionMismatch(
            f"rows have different lengths {len(r)} and {len(q)}"
        )
    return [
        profile_from_rows(rows)
        for rows in _arrangements(r, r.negate(), q)
    ]


def weak_opposite_profiles(r: PairwisePreferences) -> List[Profile]:
    """
    The six row arrangements of r, its negation and the all-e row.

    :param r: any row
    :type r: PairwisePreferences

    :return: the six profiles, ordered as in :py:func:`opposite_row_profiles`
    :rtype: List[Profile]
    """
    return [
        profile_from_rows(rows)
        for rows in _arrangements(r, r.negate(), delta(E, len(r)))
    ]


@lru_cache(maxsize=None)
def _relations(num_alternatives: int) -> Tuple[PreferenceRelation, ...]:
    if num_alternatives < NUM_ALTERNATIVES:
        raise BadDimension(
            f"relations need A >= {NUM_ALTERNATIVES}, got {num_alternatives}"
        )
    return tuple(
        PreferenceRelation(values)
        for values in itertools.product(TernaryValue, repeat=num_alternatives)
    )


def enumerate_relations(
    num_alternatives: int = NUM_ALTERNATIVES,
) -> List[PreferenceRelation]:
    """All 3^A preference relations in lexicographic order."""
    return list(_relations(num_alternatives))


@lru_cache(maxsize=None)
def _weak_orders(num_alternatives: int) -> Tuple[PreferenceRelation, ...]:
    return tuple(
        t for t in _relations(num_alternatives) if classify(t).is_weak_order
    )


def enumerate_weak_orders(
    num_alternatives: int = NUM_ALTERNATIVES,
) -> List[PreferenceRelation]:
    """All weak orders in lexicographic order (13 at A = 3)."""
    return list(_weak_orders(num_alternatives))


def _check_individuals(n: int) -> None:
    if n < MIN_INDIVIDUALS:
        raise BadDimension(f"need N >= {MIN_INDIVIDUALS}, got {n}")


def enumerate_pairs(n: int) -> List[PairwisePreferences]:
    """All 3^N rows in lexicographic order."""
    _check_individuals(n)
    return [
        PairwisePreferences(values)
        for values in itertools.product(TernaryValue, repeat=n)
    ]


def enumerate_strict_pairs(n: int) -> List[PairwisePreferences]:
    """All 2^N strict rows in lexicographic order."""
    _check_individuals(n)
    return [
        PairwisePreferences(values)
        for values in itertools.product((ZERO, ONE), repeat=n)
    ]


def count_profiles(n: int) -> int:
    """Number of profiles at A = 3."""
    _check_individuals(n)
    return NUM_WEAK_ORDERS ** n


def enumerate_profiles(
    n: int,
    num_alternatives: int = NUM_ALTERNATIVES,
) -> Iterator[Profile]:
    """
    Yield every profile on N individuals, column 1 most significant.

    :param n: number of individuals
    :type n: int
    :param num_alternatives: must be 3
    :type num_alternatives: int

    :return: iterator over profiles in index order

    :raises UnsupportedAlternativeCount: if A != 3
    """
    if num_alternatives != NUM_ALTERNATIVES:
        raise UnsupportedAlternativeCount(
            f"profile enumeration needs A = {NUM_ALTERNATIVES}"
        )
    _check_individuals(n)
    for columns in itertools.product(_weak_orders(NUM_ALTERNATIVES), repeat=n):
        yield Profile(columns)


def profile_from_index(n: int, index: int) -> Profile:
    """
    Inverse of :py:attr:`Profile.index`.

    :param n: number of individuals
    :type n: int
    :param index: enumeration position
    :type index: int

    :return: the profile
    :rtype: Profile
    """
    total = count_profiles(n)
    if not 0 <= index < total:
        raise BadDimension(f"profile index {index} outside [0, {total})")
    orders = _weak_orders(NUM_ALTERNATIVES)
    columns = []
    for _ in range(n):
        index, rank = divmod(index, NUM_WEAK_ORDERS)
        columns.append(orders[rank])
    return Profile(tuple(reversed(columns)))


# vectorised plumbing for exhaustive sweeps

@lru_cache(maxsize=None)
def pair_matrix(n: int) -> np.ndarray:
    """
    Every row of Pair(N) as a (3^N, N) array of codes, in index order.

    :param n: number of individuals
    :type n: int

    :return: read-only uint8 array
    :rtype: numpy.ndarray
    """
    _check_individuals(n)
    matrix = np.array(
        list(itertools.product(range(3), repeat=n)), dtype=np.uint8
    )
    matrix.flags.writeable = False
    return matrix


@lru_cache(maxsize=None)
def negation_indices(n: int) -> np.ndarray:
    """Entry k is the index of the negation of the row with index k."""
    powers = 3 ** np.arange(n - 1, -1, -1, dtype=np.int64)
    indices = (2 - pair_matrix(n).astype(np.int64)) @ powers
    indices.flags.writeable = False
    return indices


@lru_cache(maxsize=None)
def strict_pair_indices(n: int) -> np.ndarray:
    """Indices of the 2^N strict rows in lexicographic order."""
    indices = np.flatnonzero((pair_matrix(n) != int(E)).all(axis=1))
    indices.flags.writeable = False
    return indices


@lru_cache(maxsize=None)
def weak_order_matrix() -> np.ndarray:
    """The 13 weak orders at A = 3 as a (13, 3) array of codes."""
    matrix = np.array(
        [t.codes for t in _weak_orders(NUM_ALTERNATIVES)], dtype=np.uint8
    )
    matrix.flags.writeable = False
    return matrix


@lru_cache(maxsize=None)
def _weak_order_ranks() -> np.ndarray:
    ranks = np.full(3 ** NUM_ALTERNATIVES, -1, dtype=np.int64)
    for rank, t in enumerate(_weak_orders(NUM_ALTERNATIVES)):
        ranks[t.index] = rank
    ranks.flags.writeable = False
    return ranks


@lru_cache(maxsize=None)
def strict_order_ranks() -> np.ndarray:
    """Ranks of the 6 strict orders among the 13 weak orders."""
    ranks = np.array([
        rank for rank, t in enumerate(_weak_orders(NUM_ALTERNATIVES))
        if t.is_strict
    ], dtype=np.int64)
    ranks.flags.writeable = False
    return ranks


@lru_cache(maxsize=None)
def cycle_mask() -> np.ndarray:
    """Boolean array over the 27 relation indices, True for cycles."""
    mask = np.array(
        [classify(t).is_cycle for t in _relations(NUM_ALTERNATIVES)],
        dtype=bool,
    )
    mask.flags.writeable = False
    return mask


def relation_indices(aggregates: np.ndarray) -> np.ndarray:
    """Base-3 indices of a (k, 3) array of relation codes."""
    return aggregates.astype(np.int64) @ np.array([9, 3, 1], dtype=np.int64)


def profile_ranks(n: int, start: int, stop: int) -> np.ndarray:
    """
    Column ranks of the profiles with index in [start, stop).

    :param n: number of individuals
    :type n: int
    :param start: first profile index
    :type start: int
    :param stop: one past the last profile index
    :type stop: int

    :return: (stop - start, N) array of weak-order ranks
    :rtype: numpy.ndarray
    """
    indices = np.arange(start, stop, dtype=np.int64)
    powers = NUM_WEAK_ORDERS ** np.arange(n - 1, -1, -1, dtype=np.int64)
    return (indices[:, None] // powers[None, :]) % NUM_WEAK_ORDERS


def rows_from_ranks(ranks: np.ndarray) -> np.ndarray:
    """
    Row indices of the profiles given by column ranks.

    :param ranks: (k, N) array of weak-order ranks
    :type ranks: numpy.ndarray

    :return: (k, 3) array; entry [p, j] is the Pair(N) index of row j
    :rtype: numpy.ndarray
    """
    n = ranks.shape[1]
    orders = weak_order_matrix().astype(np.int64)
    rows = np.zeros((ranks.shape[0], NUM_ALTERNATIVES), dtype=np.int64)
    for i in range(n):
        rows = rows * 3 + orders[ranks[:, i]]
    return rows


@lru_cache(maxsize=8)
def profile_rows(n: int) -> np.ndarray:
    """Row indices of every profile on N individuals (N <= 4)."""
    rows = rows_from_ranks(profile_ranks(n, 0, count_profiles(n)))
    rows.flags.writeable = False
    return rows


# chain notation

_RENDER_OPS = {ZERO: "<", E: "~", ONE: ">"}
_PARSE_OPS = {
    "<": ZERO, "≺": ZERO,
    "~": E, "∼": E,
    ">": ONE, "≻": ONE,
}
_TOKEN = re.compile(r"\s*(?:a(\d+)|([<>~≺≻∼]))")


def _compare(t: PreferenceRelation, p: int, q: int) -> TernaryValue:
    # value of "a_p vs a_q" for cyclically adjacent p, q (0-based)
    size = len(t)
    if q == (p + 1) % size:
        return t[p]
    return t[q].neg()


def render_chain(t: PreferenceRelation) -> str:
    """
    Render a relation in chain notation.

    Weak orders at A = 3 render as a chain, e.g. ``a1 ~ a2 < a3``. Anything
    else renders cyclically, repeating the first alternative, e.g.
    ``a1 < a2 < a3 ~ a1``.

    :param t: the relation
    :type t: PreferenceRelation

    :return: the chain text
    :rtype: str
    """
    size = len(t)
    present = vals(t)
    if size == NUM_ALTERNATIVES and classify(t).is_weak_order:
        def beaten_by(a: int) -> int:
            return sum(
                1 for b in range(size)
                if b != a and _compare(t, b, a) is ZERO
            )
        order = sorted(range(size), key=lambda a: (beaten_by(a), a))
        parts = [f"a{order[0] + 1}"]
        for x, y in zip(order, order[1:]):
            parts.append(_RENDER_OPS[_compare(t, x, y)])
            parts.append(f"a{y + 1}")
        return " ".join(parts)

    if ZERO not in present and classify(t).is_cycle:
        walk = [0] + list(range(size - 1, 0, -1)) + [0]
    else:
        walk = list(range(size)) + [0]
    parts = [f"a{walk[0] + 1}"]
    for x, y in zip(walk, walk[1:]):
        parts.append(_RENDER_OPS[_compare(t, x, y)])
        parts.append(f"a{y + 1}")
    return " ".join(parts)


def _tokenize(text: str) -> Tuple[List[Tuple[int, int]], List[Tuple[TernaryValue, str, int]]]:
    alternatives, operators = [], []
    position = 0
    expect_alternative = True
    stripped = text.rstrip()
    while position < len(stripped):
        match = _TOKEN.match(stripped, position)
        if match is None:
            column = position + 1
            while column <= len(stripped) and stripped[column - 1].isspace():
                column += 1
            raise ParseError("unexpected character", column=column)
        column = match.start(1 if match.group(1) else 2) + 1
        if expect_alternative:
            if match.group(1) is None:
                raise ParseError("expected an alternative", column=column)
            number = int(match.group(1))
            if number < 1:
                raise ParseError("alternatives are numbered from 1", column=column)
            alternatives.append((number - 1, column))
        else:
            if match.group(2) is None:
                raise ParseError("expected a relation symbol", column=column)
            symbol = match.group(2)
            operators.append((_PARSE_OPS[symbol], symbol, column))
        expect_alternative = not expect_alternative
        position = match.end()
    if expect_alternative:
        raise ParseError("chain ends without an alternative", column=len(stripped) + 1)
    if len(alternatives) < 2:
        raise ParseError("a chain needs at least two alternatives", column=1)
    return alternatives, operators


def parse_relation(text: str) -> PreferenceRelation:
    """
    Parse chain notation back into a relation.

    A linear chain (``a2 < a1 ~ a3``) may use ``<`` and ``~`` only; a cyclic
    chain (``a1 < a2 < a3 ~ a1``) repeats its first alternative, visits
    cyclically adjacent alternatives and may also use ``>``.

    :param text: the chain
    :type text: str

    :return: the relation
    :rtype: PreferenceRelation

    :raises ParseError: with the column of the offending token
    """
    alternatives, operators = _tokenize(text)
    cyclic = alternatives[0][0] == alternatives[-1][0] and len(alternatives) > 2
    members = alternatives[:-1] if cyclic else alternatives
    size = len(members)
    seen = set()
    for number, column in members:
        if number in seen or number >= size:
            raise ParseError(
                f"alternatives must be a1..a{size}, each exactly once",
                column=column,
            )
        seen.add(number)
    if size < NUM_ALTERNATIVES:
        raise ParseError(
            f"a relation needs at least {NUM_ALTERNATIVES} alternatives",
            column=1,
        )

    entries: List[TernaryValue] = [E] * size
    if cyclic:
        for (x, _), (y, column), (value, _, _) in zip(
                alternatives, alternatives[1:], operators):
            if y == (x + 1) % size:
                entries[x] = value
            elif x == (y + 1) % size:
                entries[y] = value.neg()
            else:
                raise ParseError(
                    f"a{x + 1} and a{y + 1} are not adjacent", column=column
                )
        return PreferenceRelation(tuple(entries))

    levels = {}
    level = 0
    levels[alternatives[0][0]] = level
    for (y, _), (value, symbol, column) in zip(alternatives[1:], operators):
        if value is ONE:
            raise ParseError(
                f"{symbol!r} is only allowed in cyclic chains", column=column
            )
        if value is ZERO:
            level += 1
        levels[y] = level
    for i in range(size):
        a, b = levels[i], levels[(i + 1) % size]
        entries[i] = ZERO if a < b else (E if a == b else ONE)
    return PreferenceRelation(tuple(entries))
