# -*- coding: utf-8 -*-

"""
Checkers for the constraints on IIA social welfare functions.

Every checker returns an :py:class:`AxiomVerdict`; a violation carries the
first counterexample in enumeration order.

Classes:
    - :py:class:`Counterexample` offending input and observed output.
    - :py:class:`AxiomVerdict` result of one checker.
    - :py:class:`VotesAggregates` strict rows aggregating to 1.
    - :py:class:`AxiomReport` result of :py:func:`full_report`.

Functions:
    - :py:func:`check_unanimity`
    - :py:func:`check_non_dictatorship`
    - :py:func:`check_unrestricted_domain`
    - :py:func:`check_strictness_preservation`
    - :py:func:`check_strict_neutrality`
    - :py:func:`check_pareto_indifference`
    - :py:func:`check_full_neutrality`
    - :py:func:`component_dictators`
    - :py:func:`find_dictator`
    - :py:func:`votes_aggregates`
    - :py:func:`full_report`
"""

__author__ = "Mir Sazzat Hossain"

import logging
from dataclasses import dataclass, field
from multiprocessing import Pool
from typing import Callable, Dict, List, Optional, Tuple

import numpy as np
from tqdm import tqdm

from models.preferences import (
    E,
    NUM_ALTERNATIVES,
    ONE,
    ZERO,
    PairwisePreferences,
    PreferenceRelation,
    Profile,
    TernaryValue,
    classify,
    count_profiles,
    cycle_mask,
    negation_indices,
    pair_matrix,
    profile_from_index,
    profile_ranks,
    relation_indices,
    rows_from_ranks,
    strict_pair_indices,
)
from models.swf import IiaSwf, apply
from utils.errors import IndexOutOfRange, TooLarge

logger = logging.getLogger(__name__)

MAX_UD_INDIVIDUALS = 6
DEFAULT_CHUNK_SIZE = 1_000_000


@dataclass(frozen=True)
class Counterexample(object):
    """A concrete input on which an axiom fails."""

    description: str
    component: Optional[int] = None
    row: Optional[PairwisePreferences] = None
    observed: Optional[TernaryValue] = None
    expected: Optional[TernaryValue] = None
    profile: Optional[Profile] = None
    aggregate: Optional[PreferenceRelation] = None

    def reproduce(self, swf: IiaSwf) -> bool:
        """
        Re-evaluate the offending input.

        :param swf: the SWF the counterexample was found for
        :type swf: IiaSwf

        :return: whether the recorded violation is observed again
        :rtype: bool
        """
        if self.profile is not None:
            aggregate = apply(swf, self.profile)
            return aggregate == self.aggregate and classify(aggregate).is_cycle
        value = swf.component(self.component)(self.row)
        if value is not self.observed:
            return False
        return self.expected is None or value is not self.expected


@dataclass(frozen=True)
class AxiomVerdict(object):
    """Outcome of one axiom check."""

    axiom: str
    holds: bool
    counterexample: Optional[Counterexample] = None
    dictator: Optional[int] = None
    component: Optional[int] = None

    def describe(self) -> str:
        """One-line summary used by reports."""
        if self.holds:
            return "holds"
        if self.dictator is not None:
            return (
                f"fails: individual {self.dictator} dictates "
                f"component {self.component}"
            )
        return f"fails: {self.counterexample.description}"


@dataclass(frozen=True)
class VotesAggregates(object):
    """The strict rows a component maps to 1."""

    component: int
    aggregates_one: Tuple[PairwisePreferences, ...]

    @staticmethod
    def votes_one(r: PairwisePreferences) -> frozenset:
        """1-based individuals voting 1 in r."""
        return r.votes_one()

    @property
    def coalitions(self) -> List[frozenset]:
        """Votes_1 of every aggregating row, in row order."""
        return [r.votes_one() for r in self.aggregates_one]


def _row(n: int, index: int) -> PairwisePreferences:
    return PairwisePreferences.from_codes(pair_matrix(n)[index])


def _value_failure(
    axiom: str,
    swf: IiaSwf,
    j: int,
    index: int,
    expected: Optional[TernaryValue],
    note: str = "",
) -> AxiomVerdict:
    row = _row(swf.n, index)
    observed = TernaryValue(int(swf.tables[j, index]))
    description = f"s{j + 1}({row.symbols}) = {observed.symbol}"
    if expected is not None:
        description += f", expected {expected.symbol}"
    if note:
        description += f" ({note})"
    return AxiomVerdict(
        axiom=axiom,
        holds=False,
        counterexample=Counterexample(
            description=description,
            component=j + 1,
            row=row,
            observed=observed,
            expected=expected,
        ),
    )


def check_unanimity(swf: IiaSwf) -> AxiomVerdict:
    """
    Check s_j(Delta 0) = 0 and s_j(Delta 1) = 1 for every component.

    :param swf: the SWF
    :type swf: IiaSwf

    :return: the verdict
    :rtype: AxiomVerdict
    """
    last = 3 ** swf.n - 1
    for j in range(NUM_ALTERNATIVES):
        for index, value in ((0, ZERO), (last, ONE)):
            if swf.tables[j, index] != int(value):
                return _value_failure("unanimity", swf, j, index, value)
    return AxiomVerdict(axiom="unanimity", holds=True)


def component_dictators(swf: IiaSwf) -> List[Tuple[int, int]]:
    """
    Every (component, individual) pair where the individual dictates.

    Individual i dictates component j when s_j(u) = u_i for every u whose
    entry i is strict.

    :param swf: the SWF
    :type swf: IiaSwf

    :return: 1-based (j, i) pairs, j outer, i inner
    :rtype: List[Tuple[int, int]]
    """
    pairs = pair_matrix(swf.n)
    found = []
    for j in range(NUM_ALTERNATIVES):
        table = swf.tables[j]
        for i in range(swf.n):
            vote = pairs[:, i]
            strict = vote != int(E)
            if np.array_equal(table[strict], vote[strict]):
                found.append((j + 1, i + 1))
    return found


def find_dictator(swf: IiaSwf) -> Optional[int]:
    """
    The lowest individual dictating every component, if any.

    :param swf: the SWF
    :type swf: IiaSwf

    :return: 1-based individual or None
    :rtype: Optional[int]
    """
    by_individual: Dict[int, set] = {}
    for j, i in component_dictators(swf):
        by_individual.setdefault(i, set()).add(j)
    for i in sorted(by_individual):
        if len(by_individual[i]) == NUM_ALTERNATIVES:
            return i
    return None


def dictates_component(swf: IiaSwf, i: int, j: int) -> bool:
    """Whether individual i (1-based) dictates component j (1-based)."""
    if not 1 <= i <= swf.n:
        raise IndexOutOfRange(f"individual {i} outside 1..{swf.n}")
    swf.component(j)
    vote = pair_matrix(swf.n)[:, i - 1]
    strict = vote != int(E)
    return bool(np.array_equal(swf.tables[j - 1][strict], vote[strict]))


def check_non_dictatorship(swf: IiaSwf) -> AxiomVerdict:
    """
    Check that no individual dictates any component.

    :param swf: the SWF
    :type swf: IiaSwf

    :return: the verdict; on failure ``dictator`` and ``component`` name the
        first pair found
    :rtype: AxiomVerdict
    """
    found = component_dictators(swf)
    if found:
        j, i = found[0]
        return AxiomVerdict(
            axiom="non_dictatorship", holds=False, dictator=i, component=j
        )
    return AxiomVerdict(axiom="non_dictatorship", holds=True)


def cycle_flags(tables: np.ndarray, n: int, start: int, stop: int) -> np.ndarray:
    """
    Flag the profiles in [start, stop) whose aggregate is a cycle.

    :param tables: (3, 3^N) component codes
    :type tables: numpy.ndarray
    :param n: number of individuals
    :type n: int
    :param start: first profile index
    :type start: int
    :param stop: one past the last profile index
    :type stop: int

    :return: boolean array of length stop - start
    :rtype: numpy.ndarray
    """
    rows = rows_from_ranks(profile_ranks(n, start, stop))
    aggregates = np.stack(
        [tables[j][rows[:, j]] for j in range(NUM_ALTERNATIVES)], axis=1
    )
    return cycle_mask()[relation_indices(aggregates)]


def _first_cycle_in_chunk(args) -> Optional[int]:
    tables, n, start, stop = args
    hits = np.flatnonzero(cycle_flags(tables, n, start, stop))
    return start + int(hits[0]) if hits.size else None


def first_cycle_index(
    swf: IiaSwf,
    chunk_size: int = DEFAULT_CHUNK_SIZE,
    workers: int = 1,
    progress: bool = False,
) -> Optional[int]:
    """
    Lowest profile index whose aggregate is a cycle.

    Chunks are consumed in index order, so the answer does not depend on the
    number of workers.

    :param swf: the SWF, N <= 6
    :type swf: IiaSwf
    :param chunk_size: profiles per chunk
    :type chunk_size: int
    :param workers: worker processes
    :type workers: int
    :param progress: show a progress bar
    :type progress: bool

    :return: the index, or None if no profile cycles
    :rtype: Optional[int]

    :raises TooLarge: if N > 6
    """
    if swf.n > MAX_UD_INDIVIDUALS:
        raise TooLarge(
            f"unrestricted domain sweeps are limited to N <= "
            f"{MAX_UD_INDIVIDUALS}, got {swf.n}"
        )
    total = count_profiles(swf.n)
    tasks = [
        (swf.tables, swf.n, start, min(start + chunk_size, total))
        for start in range(0, total, chunk_size)
    ]
    logger.debug(
        "unrestricted domain sweep of %s: %d profiles in %d chunks",
        swf.name, total, len(tasks),
    )
    if workers > 1 and len(tasks) > 1:
        with Pool(processes=workers) as pool:
            for hit in tqdm(pool.imap(_first_cycle_in_chunk, tasks),
                            total=len(tasks), disable=not progress):
                if hit is not None:
                    pool.terminate()
                    return hit
        return None
    for task in tqdm(tasks, disable=not progress):
        hit = _first_cycle_in_chunk(task)
        if hit is not None:
            return hit
    return None


def check_unrestricted_domain(
    swf: IiaSwf,
    chunk_size: int = DEFAULT_CHUNK_SIZE,
    workers: int = 1,
    progress: bool = False,
) -> AxiomVerdict:
    """
    Check that no profile aggregates to a cycle.

    :param swf: the SWF, N <= 6
    :type swf: IiaSwf
    :param chunk_size: profiles per chunk
    :type chunk_size: int
    :param workers: worker processes
    :type workers: int
    :param progress: show a progress bar
    :type progress: bool

    :return: the verdict; the counterexample is the first cycle-producing
        profile in enumeration order
    :rtype: AxiomVerdict

    :raises TooLarge: if N > 6
    """
    hit = first_cycle_index(swf, chunk_size, workers, progress)
    if hit is None:
        return AxiomVerdict(axiom="unrestricted_domain", holds=True)
    profile = profile_from_index(swf.n, hit)
    aggregate = apply(swf, profile)
    rows = " | ".join(r.symbols for r in profile.rows)
    return AxiomVerdict(
        axiom="unrestricted_domain",
        holds=False,
        counterexample=Counterexample(
            description=(
                f"profile {hit} (rows {rows}) aggregates to "
                f"the cycle {aggregate.symbols}"
            ),
            profile=profile,
            aggregate=aggregate,
        ),
    )


def check_strictness_preservation(swf: IiaSwf) -> AxiomVerdict:
    """
    Check s_j(r) in {0, 1} for every strict row r.

    :param swf: the SWF
    :type swf: IiaSwf

    :return: the verdict
    :rtype: AxiomVerdict
    """
    strict = strict_pair_indices(swf.n)
    for position in strict:
        for j in range(NUM_ALTERNATIVES):
            if swf.tables[j, position] == int(E):
                return _value_failure(
                    "strictness_preservation", swf, j, int(position), None,
                    "strict row aggregates to e",
                )
    return AxiomVerdict(axiom="strictness_preservation", holds=True)


def _neutrality_failure(
    axiom: str,
    swf: IiaSwf,
    indices: np.ndarray,
) -> Optional[AxiomVerdict]:
    negated = negation_indices(swf.n)
    tables = swf.tables
    for index in indices:
        index = int(index)
        for j in range(1, NUM_ALTERNATIVES):
            if tables[j, index] != tables[0, index]:
                return _value_failure(
                    axiom, swf, j, index, TernaryValue(int(tables[0, index])),
                    "components disagree",
                )
        for j in range(NUM_ALTERNATIVES):
            odd = 2 - int(tables[j, index])
            if tables[j, negated[index]] != odd:
                return _value_failure(
                    axiom, swf, j, int(negated[index]), TernaryValue(odd),
                    "not odd under negation",
                )
    return None


def check_strict_neutrality(swf: IiaSwf) -> AxiomVerdict:
    """
    Check s1(x) = s2(x) = s3(x) and s_j(-x) = -s_j(x) for strict x.

    :param swf: the SWF
    :type swf: IiaSwf

    :return: the verdict
    :rtype: AxiomVerdict
    """
    failure = _neutrality_failure(
        "strict_neutrality", swf, strict_pair_indices(swf.n)
    )
    if failure is not None:
        return failure
    return AxiomVerdict(axiom="strict_neutrality", holds=True)


def check_pareto_indifference(swf: IiaSwf) -> AxiomVerdict:
    """
    Check s_j(Delta e) = e for every component.

    :param swf: the SWF
    :type swf: IiaSwf

    :return: the verdict
    :rtype: AxiomVerdict
    """
    middle = (3 ** swf.n - 1) // 2
    for j in range(NUM_ALTERNATIVES):
        if swf.tables[j, middle] != int(E):
            return _value_failure("pareto_indifference", swf, j, middle, E)
    return AxiomVerdict(axiom="pareto_indifference", holds=True)


def check_full_neutrality(swf: IiaSwf) -> AxiomVerdict:
    """
    Check s_i(r) = s_j(r) and s_i(-r) = -s_j(r) for every row r.

    :param swf: the SWF
    :type swf: IiaSwf

    :return: the verdict
    :rtype: AxiomVerdict
    """
    failure = _neutrality_failure(
        "full_neutrality", swf, np.arange(3 ** swf.n)
    )
    if failure is not None:
        return failure
    return AxiomVerdict(axiom="full_neutrality", holds=True)


def votes_aggregates(swf: IiaSwf, j: int) -> VotesAggregates:
    """
    Strict rows that component j maps to 1.

    :param swf: the SWF
    :type swf: IiaSwf
    :param j: 1-based component index
    :type j: int

    :return: the aggregating rows in lexicographic order
    :rtype: VotesAggregates
    """
    table = swf.component(j).table
    rows = tuple(
        _row(swf.n, int(index))
        for index in strict_pair_indices(swf.n)
        if table[index] == int(ONE)
    )
    return VotesAggregates(component=j, aggregates_one=rows)


AXIOMS: Dict[str, Callable[[IiaSwf], AxiomVerdict]] = {
    "unanimity": check_unanimity,
    "non_dictatorship": check_non_dictatorship,
    "unrestricted_domain": check_unrestricted_domain,
    "strictness_preservation": check_strictness_preservation,
    "strict_neutrality": check_strict_neutrality,
    "pareto_indifference": check_pareto_indifference,
    "full_neutrality": check_full_neutrality,
}


@dataclass(frozen=True)
class AxiomReport(object):
    """Every verdict for one SWF plus the Arrow classification."""

    swf: str
    n: int
    verdicts: Dict[str, AxiomVerdict] = field(default_factory=dict)
    dictator: Optional[int] = None
    arrow: str = ""

    @property
    def cycle_witness(self) -> Optional[Counterexample]:
        """The first cycle-producing profile, if any."""
        return self.verdicts["unrestricted_domain"].counterexample

    def items(self) -> List[Tuple[str, str]]:
        """Report lines as (key, value) in a stable order."""
        lines = [("swf", self.swf), ("individuals", str(self.n))]
        lines.extend(
            (name, verdict.describe()) for name, verdict in self.verdicts.items()
        )
        lines.append(
            ("dictator", str(self.dictator) if self.dictator else "none")
        )
        lines.append(("arrow", self.arrow))
        return lines

    def to_dict(self) -> dict:
        """Structured form with the same keys as :py:meth:`items`."""
        document = {"swf": self.swf, "individuals": self.n}
        for name, verdict in self.verdicts.items():
            entry = {"holds": verdict.holds, "detail": verdict.describe()}
            if verdict.dictator is not None:
                entry["dictator"] = verdict.dictator
                entry["component"] = verdict.component
            example = verdict.counterexample
            if example is not None and example.profile is not None:
                entry["profile"] = [r.symbols for r in example.profile.rows]
                entry["aggregate"] = example.aggregate.symbols
            document[name] = entry
        document["dictator"] = self.dictator
        document["arrow"] = self.arrow
        return document

    @property
    def negative(self) -> bool:
        """Whether any checked axiom fails."""
        return not all(v.holds for v in self.verdicts.values())


def _arrow_verdict(
    unanimity: AxiomVerdict,
    domain: AxiomVerdict,
    dictator: Optional[int],
) -> str:
    if not unanimity.holds:
        return "not applicable (unanimity fails)"
    if dictator is not None and domain.holds:
        return f"dictator {dictator}"
    if dictator is None and not domain.holds:
        return "cycle witness"
    if dictator is not None:
        return f"dictator {dictator} with cycle (indifference of the dictator)"
    return "no dictator and no cycle"


def full_report(
    swf: IiaSwf,
    chunk_size: int = DEFAULT_CHUNK_SIZE,
    workers: int = 1,
    progress: bool = False,
) -> AxiomReport:
    """
    Run every checker and classify the SWF against Arrow's dichotomy.

    :param swf: the SWF, N <= 6
    :type swf: IiaSwf
    :param chunk_size: profiles per chunk of the domain sweep
    :type chunk_size: int
    :param workers: worker processes for the domain sweep
    :type workers: int
    :param progress: show a progress bar
    :type progress: bool

    :return: the report
    :rtype: AxiomReport

    :raises TooLarge: if N > 6
    """
    verdicts = {}
    for name, checker in AXIOMS.items():
        if name == "unrestricted_domain":
            verdicts[name] = checker(swf, chunk_size, workers, progress)
        else:
            verdicts[name] = checker(swf)
    dictator = find_dictator(swf)
    arrow = _arrow_verdict(
        verdicts["unanimity"], verdicts["unrestricted_domain"], dictator
    )
    logger.info("report for %s: arrow verdict %s", swf.name, arrow)
    return AxiomReport(
        swf=swf.name, n=swf.n, verdicts=verdicts, dictator=dictator,
        arrow=arrow,
    )
