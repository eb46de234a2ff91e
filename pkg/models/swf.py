# -*- coding: utf-8 -*-

"""
Social welfare functions in table form.

Classes:
    - :py:class:`PairwiseComparisonFunction` a dense table Pair(N) -> {0, e, 1}.
    - :py:class:`IiaSwf` three pairwise comparison functions, one per pair.
    - :py:class:`GeneralSwf` a dense table Prof(3, N) -> preference relation.
    - :py:class:`NotIia` verdict of a failed IIA decomposition.

Functions:
    - :py:func:`apply`
    - :py:func:`majority_votes`
    - :py:func:`pairwise_majority`
    - :py:func:`dictator`
    - :py:func:`hierarchical_dictator`
    - :py:func:`constant_swf`
    - :py:func:`indifference_swf`
    - :py:func:`pcf_from_function`
    - :py:func:`tabulate`
    - :py:func:`borda_swf`
    - :py:func:`decompose_iia`
"""

__author__ = "Mir Sazzat Hossain"

import logging
from dataclasses import dataclass
from typing import Callable, Iterator, Optional, Sequence, Tuple, Union

import numpy as np

from models.preferences import (
    E,
    MIN_INDIVIDUALS,
    NUM_ALTERNATIVES,
    PairwisePreferences,
    PreferenceRelation,
    Profile,
    TernaryValue,
    count_profiles,
    enumerate_pairs,
    pair_matrix,
    profile_from_index,
    profile_ranks,
    profile_rows,
    weak_order_matrix,
)
from utils.errors import (
    BadDimension,
    DimensionMismatch,
    IndexOutOfRange,
    TooLarge,
)

logger = logging.getLogger(__name__)

MAX_GENERAL_INDIVIDUALS = 4


class PairwiseComparisonFunction(object):
    """A total table from Pair(N) to ternary values, indexed in base 3."""

    def __init__(self, table: Union[np.ndarray, Sequence], n: int) -> None:
        """
        Initialize the table.

        :param table: 3^N integer codes (0, 1, 2 for 0, e, 1) or TernaryValues
        :type table: numpy.ndarray
        :param n: number of individuals
        :type n: int

        :raises BadDimension: if N < 2, the length is not 3^N or a code is
            outside 0..2
        """
        if n < MIN_INDIVIDUALS:
            raise BadDimension(f"need N >= {MIN_INDIVIDUALS}, got {n}")
        codes = np.array([int(v) for v in table], dtype=np.uint8) \
            if not isinstance(table, np.ndarray) else table.astype(np.uint8)
        if codes.shape != (3 ** n,):
            raise BadDimension(
                f"a table for N = {n} needs {3 ** n} entries, got {codes.size}"
            )
        if codes.size and int(codes.max()) > 2:
            raise BadDimension("table codes must be 0, 1 or 2")
        codes.flags.writeable = False
        self._table = codes
        self.n = n

    @property
    def table(self) -> np.ndarray:
        """Read-only array of codes."""
        return self._table

    def __call__(self, r: PairwisePreferences) -> TernaryValue:
        """
        Evaluate the table on one row.

        :param r: the row
        :type r: PairwisePreferences

        :return: the aggregate value
        :rtype: TernaryValue

        :raises DimensionMismatch: if len(r) != N
        """
        if len(r) != self.n:
            raise DimensionMismatch(
                f"row of length {len(r)} given to a table for N = {self.n}"
            )
        return TernaryValue(int(self._table[r.index]))

    def value_at(self, index: int) -> TernaryValue:
        """Value at a base-3 row index."""
        return TernaryValue(int(self._table[index]))

    def items(self) -> Iterator[Tuple[PairwisePreferences, TernaryValue]]:
        """Iterate over (row, value) in lexicographic row order."""
        for r in enumerate_pairs(self.n):
            yield r, self.value_at(r.index)

    def __eq__(self, other) -> bool:
        """Tables are equal when N and every entry agree."""
        if not isinstance(other, PairwiseComparisonFunction):
            return NotImplemented
        return self.n == other.n and np.array_equal(self._table, other._table)

    def __hash__(self) -> int:
        """Hash the table bytes."""
        return hash((self.n, self._table.tobytes()))

    def __repr__(self) -> str:
        """Symbols of the table in row order."""
        symbols = "".join("0e1"[c] for c in self._table)
        return f"PairwiseComparisonFunction(n={self.n}, table='{symbols}')"


class IiaSwf(object):
    """An IIA social welfare function w(r1, r2, r3) = (s1(r1), s2(r2), s3(r3))."""

    def __init__(
        self,
        components: Sequence[PairwiseComparisonFunction],
        name: str = "custom",
    ) -> None:
        """
        Initialize the SWF.

        :param components: the three pairwise comparison functions
        :type components: Sequence[PairwiseComparisonFunction]
        :param name: label used in reports
        :type name: str

        :raises BadDimension: unless there are exactly three components
        :raises DimensionMismatch: if the components disagree on N
        """
        components = tuple(components)
        if len(components) != NUM_ALTERNATIVES:
            raise BadDimension(
                f"an IIA SWF needs {NUM_ALTERNATIVES} components, "
                f"got {len(components)}"
            )
        sizes = {c.n for c in components}
        if len(sizes) != 1:
            raise DimensionMismatch(
                f"components disagree on N: {sorted(sizes)}"
            )
        self.components = components
        self.n = sizes.pop()
        self.name = name
        tables = np.stack([c.table for c in components])
        tables.flags.writeable = False
        self._tables = tables

    @property
    def tables(self) -> np.ndarray:
        """(3, 3^N) read-only array of component codes."""
        return self._tables

    def component(self, j: int) -> PairwiseComparisonFunction:
        """
        Return component s_j.

        :param j: 1-based component index
        :type j: int

        :return: the component
        :rtype: PairwiseComparisonFunction

        :raises IndexOutOfRange: unless 1 <= j <= 3
        """
        if not 1 <= j <= NUM_ALTERNATIVES:
            raise IndexOutOfRange(f"component index {j} outside 1..3")
        return self.components[j - 1]

    @property
    def is_symmetric(self) -> bool:
        """Whether s1 = s2 = s3."""
        return bool((self._tables == self._tables[0]).all())

    def with_component(
        self,
        j: int,
        component: PairwiseComparisonFunction,
        name: Optional[str] = None,
    ) -> "IiaSwf":
        """
        Return a copy with component j replaced.

        :param j: 1-based component index
        :type j: int
        :param component: the new table
        :type component: PairwiseComparisonFunction
        :param name: label of the new SWF
        :type name: str

        :return: the modified SWF
        :rtype: IiaSwf
        """
        self.component(j)
        components = list(self.components)
        components[j - 1] = component
        return IiaSwf(components, name=name or f"{self.name}[s{j} replaced]")

    def __call__(self, m: Profile) -> PreferenceRelation:
        """Shorthand for :py:func:`apply`."""
        return apply(self, m)

    def __eq__(self, other) -> bool:
        """SWFs are equal when their tables are."""
        if not isinstance(other, IiaSwf):
            return NotImplemented
        return self.n == other.n and np.array_equal(self._tables, other._tables)

    def __hash__(self) -> int:
        """Hash the table bytes."""
        return hash((self.n, self._tables.tobytes()))

    def __repr__(self) -> str:
        """Name and N."""
        return f"IiaSwf(name={self.name!r}, n={self.n})"


class GeneralSwf(object):
    """A tabulated SWF over every profile on N <= 4 individuals."""

    def __init__(self, table: np.ndarray, n: int, name: str = "general") -> None:
        """
        Initialize the SWF.

        :param table: (13^N, 3) array of relation codes in profile index order
        :type table: numpy.ndarray
        :param n: number of individuals
        :type n: int
        :param name: label used in reports
        :type name: str

        :raises TooLarge: if N > 4
        :raises BadDimension: if the table has the wrong shape
        """
        if n > MAX_GENERAL_INDIVIDUALS:
            raise TooLarge(
                f"general SWF tables are limited to N <= "
                f"{MAX_GENERAL_INDIVIDUALS}, got {n}"
            )
        expected = (count_profiles(n), NUM_ALTERNATIVES)
        table = np.asarray(table, dtype=np.uint8)
        if table.shape != expected:
            raise BadDimension(
                f"a general table for N = {n} needs shape {expected}, "
                f"got {table.shape}"
            )
        table.flags.writeable = False
        self.table = table
        self.n = n
        self.name = name

    def __call__(self, m: Profile) -> PreferenceRelation:
        """Look up the aggregate of a profile."""
        if m.num_individuals != self.n:
            raise DimensionMismatch(
                f"profile has N = {m.num_individuals}, SWF has N = {self.n}"
            )
        return PreferenceRelation.from_codes(self.table[m.index])


@dataclass(frozen=True)
class NotIia(object):
    """Two profiles that agree on row ``component`` but not on its output."""

    component: int
    first: Profile
    second: Profile
    first_output: TernaryValue
    second_output: TernaryValue

    def __str__(self) -> str:
        """One-line description."""
        row = self.first.rows[self.component - 1].symbols
        return (
            f"output {self.component} is not a function of row "
            f"{self.component}: row {row} gives {self.first_output.symbol} "
            f"and {self.second_output.symbol}"
        )


def apply(swf: Union[IiaSwf, GeneralSwf], m: Profile) -> PreferenceRelation:
    """
    Aggregate a profile; the result may be a cycle.

    :param swf: the social welfare function
    :type swf: IiaSwf
    :param m: the profile
    :type m: Profile

    :return: the aggregate relation
    :rtype: PreferenceRelation

    :raises DimensionMismatch: if the profile's N differs from the SWF's
    """
    if isinstance(swf, GeneralSwf):
        return swf(m)
    if m.num_individuals != swf.n:
        raise DimensionMismatch(
            f"profile has N = {m.num_individuals}, SWF has N = {swf.n}"
        )
    rows = m.rows
    return PreferenceRelation.from_codes(
        swf.tables[j, rows[j].index] for j in range(NUM_ALTERNATIVES)
    )


def _uniform(table: np.ndarray, n: int, name: str) -> IiaSwf:
    component = PairwiseComparisonFunction(table, n)
    return IiaSwf((component,) * NUM_ALTERNATIVES, name=name)


def _check_individuals(n: int) -> None:
    if n < MIN_INDIVIDUALS:
        raise BadDimension(f"need N >= {MIN_INDIVIDUALS}, got {n}")


def majority_votes(codes: np.ndarray) -> np.ndarray:
    """
    Majority of ternary codes along the last axis.

    :param codes: votes coded 0 (0), 1 (e), 2 (1), one voter per last-axis entry
    :type codes: np.ndarray

    :return: the aggregate codes, e where zeros and ones tie
    :rtype: np.ndarray
    """
    zeros = (codes == 0).sum(axis=-1)
    ones = (codes == 2).sum(axis=-1)
    return np.where(zeros > ones, 0, np.where(ones > zeros, 2, 1)).astype(
        np.uint8
    )


def majority_table(n: int) -> np.ndarray:
    """Majority over strict votes; e entries abstain, ties give e."""
    return majority_votes(pair_matrix(n))


def pairwise_majority(n: int) -> IiaSwf:
    """
    Pairwise majority with identical components.

    :param n: number of individuals
    :type n: int

    :return: the majority SWF
    :rtype: IiaSwf
    """
    _check_individuals(n)
    return _uniform(majority_table(n), n, f"majority:{n}")


def dictator(i: int, n: int) -> IiaSwf:
    """
    The SWF copying individual i.

    :param i: 1-based individual index
    :type i: int
    :param n: number of individuals
    :type n: int

    :return: the dictatorship
    :rtype: IiaSwf

    :raises IndexOutOfRange: unless 1 <= i <= n
    """
    _check_individuals(n)
    if not 1 <= i <= n:
        raise IndexOutOfRange(f"individual {i} outside 1..{n}")
    return _uniform(pair_matrix(n)[:, i - 1].copy(), n, f"dictator:{i}:{n}")


def hierarchical_dictator(order: Sequence[int], n: int) -> IiaSwf:
    """
    The first strict vote along ``order`` decides; e if there is none.

    :param order: distinct 1-based individual indices
    :type order: Sequence[int]
    :param n: number of individuals
    :type n: int

    :return: the hierarchical dictatorship
    :rtype: IiaSwf

    :raises IndexOutOfRange: on an index outside 1..n or a repeated index
    """
    _check_individuals(n)
    order = tuple(order)
    if not order or len(set(order)) != len(order):
        raise IndexOutOfRange(f"order {order} must list distinct individuals")
    for i in order:
        if not 1 <= i <= n:
            raise IndexOutOfRange(f"individual {i} outside 1..{n}")
    pairs = pair_matrix(n)
    table = np.full(3 ** n, int(E), dtype=np.uint8)
    for i in reversed(order):
        vote = pairs[:, i - 1]
        table = np.where(vote != int(E), vote, table).astype(np.uint8)
    label = ",".join(str(i) for i in order)
    return _uniform(table, n, f"hierarchical:{label}:{n}")


def constant_swf(p: PreferenceRelation, n: int) -> IiaSwf:
    """
    The SWF ignoring its input and returning p.

    :param p: the fixed output, length 3
    :type p: PreferenceRelation
    :param n: number of individuals
    :type n: int

    :return: the constant SWF
    :rtype: IiaSwf

    :raises BadDimension: if len(p) != 3
    """
    _check_individuals(n)
    if len(p) != NUM_ALTERNATIVES:
        raise BadDimension(f"constant output needs length 3, got {len(p)}")
    components = tuple(
        PairwiseComparisonFunction(np.full(3 ** n, int(v), dtype=np.uint8), n)
        for v in p
    )
    return IiaSwf(components, name=f"constant:{p.symbols}:{n}")


def indifference_swf(n: int) -> IiaSwf:
    """The constant SWF returning (e, e, e)."""
    swf = constant_swf(PreferenceRelation((E, E, E)), n)
    swf.name = f"indifference:{n}"
    return swf


def pcf_from_function(
    fn: Callable[[PairwisePreferences], TernaryValue],
    n: int,
) -> PairwiseComparisonFunction:
    """
    Tabulate a Python callable over Pair(N).

    :param fn: the rule
    :type fn: Callable
    :param n: number of individuals
    :type n: int

    :return: the table
    :rtype: PairwiseComparisonFunction
    """
    _check_individuals(n)
    return PairwiseComparisonFunction(
        [TernaryValue(fn(r)) for r in enumerate_pairs(n)], n
    )


def tabulate(swf: IiaSwf, name: Optional[str] = None) -> GeneralSwf:
    """
    Tabulate an IIA SWF over every profile.

    :param swf: the SWF, N <= 4
    :type swf: IiaSwf
    :param name: label of the table
    :type name: str

    :return: the general form
    :rtype: GeneralSwf

    :raises TooLarge: if N > 4
    """
    if swf.n > MAX_GENERAL_INDIVIDUALS:
        raise TooLarge(f"cannot tabulate N = {swf.n} > {MAX_GENERAL_INDIVIDUALS}")
    rows = profile_rows(swf.n)
    table = np.stack(
        [swf.tables[j][rows[:, j]] for j in range(NUM_ALTERNATIVES)], axis=1
    )
    return GeneralSwf(table, swf.n, name=name or f"tabulated {swf.name}")


def _borda_scores() -> np.ndarray:
    # points per alternative for each of the 13 weak orders
    orders = weak_order_matrix()
    scores = np.zeros((orders.shape[0], NUM_ALTERNATIVES), dtype=np.int64)
    for p in range(NUM_ALTERNATIVES):
        q = (p + 1) % NUM_ALTERNATIVES
        scores[:, p] += orders[:, p] == 0
        scores[:, q] += orders[:, p] == 2
    return scores


def borda_swf(n: int) -> GeneralSwf:
    """
    Borda count tabulated over every profile.

    An alternative scores one point per alternative it is strictly preferred
    to; higher totals are socially preferred and equal totals are indifferent.

    :param n: number of individuals, N <= 4
    :type n: int

    :return: the Borda rule
    :rtype: GeneralSwf
    """
    _check_individuals(n)
    if n > MAX_GENERAL_INDIVIDUALS:
        raise TooLarge(f"cannot tabulate N = {n} > {MAX_GENERAL_INDIVIDUALS}")
    ranks = profile_ranks(n, 0, count_profiles(n))
    totals = _borda_scores()[ranks].sum(axis=1)
    following = np.roll(totals, -1, axis=1)
    table = np.where(
        totals > following, 0, np.where(totals < following, 2, 1)
    ).astype(np.uint8)
    return GeneralSwf(table, n, name=f"borda:{n}")


def decompose_iia(g: GeneralSwf) -> Union[IiaSwf, NotIia]:
    """
    Recover the component tables of a general SWF if it satisfies IIA.

    :param g: the tabulated SWF
    :type g: GeneralSwf

    :return: the IIA form, or a :py:class:`NotIia` verdict naming the first
        pair of profiles in enumeration order that breaks it
    :rtype: Union[IiaSwf, NotIia]
    """
    rows = profile_rows(g.n)
    components = []
    for j in range(NUM_ALTERNATIVES):
        outputs = g.table[:, j]
        unique, first, inverse = np.unique(
            rows[:, j], return_index=True, return_inverse=True
        )
        expected = outputs[first][inverse]
        mismatch = np.flatnonzero(outputs != expected)
        if mismatch.size:
            second = int(mismatch[0])
            origin = int(first[inverse[second]])
            logger.debug(
                "component %d breaks IIA at profiles %d and %d",
                j + 1, origin, second,
            )
            return NotIia(
                component=j + 1,
                first=profile_from_index(g.n, origin),
                second=profile_from_index(g.n, second),
                first_output=TernaryValue(int(outputs[origin])),
                second_output=TernaryValue(int(outputs[second])),
            )
        table = np.full(3 ** g.n, int(E), dtype=np.uint8)
        table[unique] = outputs[first]
        components.append(PairwiseComparisonFunction(table, g.n))
    return IiaSwf(components, name=f"decomposed {g.name}")
