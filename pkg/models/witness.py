# -*- coding: utf-8 -*-

"""
Constructions of profiles that aggregate to preference cycles.

Each construction follows one impossibility argument: a failure of
strictness preservation, a failure of strict neutrality, the two coalition
cases of Arrow's theorem and the Pareto-indifference neutrality argument.
Every returned witness has been re-evaluated and aggregates to a cycle.

Classes:
    - :py:class:`Provenance` which construction produced a witness.
    - :py:class:`CycleWitness` a profile aggregating to a cycle.
    - :py:class:`ContradictoryPair` profiles aggregating to (1,1,1) and (0,0,0).
    - :py:class:`ArrowCase` the coalition case reached by stage 3.

Functions:
    - :py:func:`is_inconsistent`
    - :py:func:`contradicts`
    - :py:func:`strictness_witness`
    - :py:func:`neutrality_witness`
    - :py:func:`arrow_case`
    - :py:func:`arrow_witness`
    - :py:func:`contradictory_pair`
    - :py:func:`contradictory_pair_search`
    - :py:func:`pareto_witness`
    - :py:func:`exhaustive_witness`
"""

__author__ = "Mir Sazzat Hossain"

import itertools
import logging
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from models.axioms import (
    check_full_neutrality,
    check_pareto_indifference,
    check_strict_neutrality,
    check_strictness_preservation,
    check_unanimity,
    dictates_component,
    find_dictator,
    first_cycle_index,
    votes_aggregates,
)
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
    delta,
    enumerate_pairs,
    enumerate_strict_pairs,
    enumerate_weak_orders,
    profile_from_index,
    profile_from_rows,
    profile_ranks,
    profile_rows,
    relation_indices,
)
from models.swf import IiaSwf, apply
from utils.errors import (
    DimensionMismatch,
    InternalDichotomyError,
    PreconditionFailed,
    TooLarge,
    WitnessNotFound,
    WitnessValidationError,
)

logger = logging.getLogger(__name__)

MAX_PAIR_SEARCH_INDIVIDUALS = 3

ALL_ONES = PreferenceRelation((ONE, ONE, ONE))
ALL_ZEROS = PreferenceRelation((ZERO, ZERO, ZERO))


class Provenance(Enum):
    """Construction that produced a witness."""

    STRICTNESS_LEMMA = "StrictnessLemma"
    NEUTRALITY_LEMMA = "NeutralityLemma"
    ARROW_CASE_1 = "ArrowCase1"
    ARROW_CASE_2 = "ArrowCase2"
    PARETO_NEUTRALITY = "ParetoNeutrality"
    EXHAUSTIVE = "Exhaustive"


@dataclass(frozen=True)
class CycleWitness(object):
    """A profile together with the cycle it aggregates to."""

    profile: Profile
    aggregate: PreferenceRelation
    provenance: Provenance

    @classmethod
    def build(
        cls,
        swf: IiaSwf,
        profile: Profile,
        provenance: Provenance,
    ) -> "CycleWitness":
        """
        Evaluate a profile and keep it only if it aggregates to a cycle.

        :param swf: the SWF
        :type swf: IiaSwf
        :param profile: the candidate profile
        :type profile: Profile
        :param provenance: the construction used
        :type provenance: Provenance

        :return: the witness
        :rtype: CycleWitness

        :raises WitnessValidationError: if the aggregate is a weak order
        """
        aggregate = apply(swf, profile)
        if not classify(aggregate).is_cycle:
            raise WitnessValidationError(
                f"{provenance.value} profile aggregates to the weak order "
                f"{aggregate.symbols}"
            )
        return cls(profile=profile, aggregate=aggregate, provenance=provenance)

    def validate(self, swf: IiaSwf) -> bool:
        """Whether re-applying the SWF reproduces the stored cycle."""
        aggregate = apply(swf, self.profile)
        return aggregate == self.aggregate and classify(aggregate).is_cycle


@dataclass(frozen=True)
class ContradictoryPair(object):
    """Profiles m, m' with w(m) = (1,1,1), w(m') = (0,0,0) that contradict."""

    m: Profile
    m_prime: Profile
    provenance: Provenance

    @property
    def aggregates(self) -> Tuple[PreferenceRelation, PreferenceRelation]:
        """The two aggregates, (1,1,1) then (0,0,0)."""
        return ALL_ONES, ALL_ZEROS

    @classmethod
    def build(
        cls,
        swf: IiaSwf,
        m: Profile,
        m_prime: Profile,
        provenance: Provenance,
    ) -> "ContradictoryPair":
        """
        Validate both aggregates and the contradiction.

        :raises WitnessValidationError: if any of the three conditions fails
        """
        pair = cls(m=m, m_prime=m_prime, provenance=provenance)
        if not pair.validate(swf):
            raise WitnessValidationError(
                f"{provenance.value} pair does not aggregate to "
                f"(1,1,1) and (0,0,0) or does not contradict"
            )
        return pair

    def validate(self, swf: IiaSwf) -> bool:
        """Whether both aggregates and the contradiction hold."""
        return (
            apply(swf, self.m) == ALL_ONES
            and apply(swf, self.m_prime) == ALL_ZEROS
            and contradicts(self.m, self.m_prime)
        )


class ArrowCase(Enum):
    """Size of the minimal coalition reached by stage 3."""

    SINGLETON = 1
    PROPER = 2


def is_inconsistent(t: PreferenceRelation, t2: PreferenceRelation) -> bool:
    """
    Whether some entry of t and t2 holds strictly opposite preferences.

    :param t: first relation
    :type t: PreferenceRelation
    :param t2: second relation
    :type t2: PreferenceRelation

    :return: the verdict
    :rtype: bool

    :raises DimensionMismatch: if the lengths differ
    """
    if len(t) != len(t2):
        raise DimensionMismatch(
            f"relations have lengths {len(t)} and {len(t2)}"
        )
    return any(
        a.is_strict and b.is_strict and a is not b for a, b in zip(t, t2)
    )


def contradicts(m: Profile, m2: Profile) -> bool:
    """
    Whether every individual's two orders are inconsistent.

    :param m: first profile
    :type m: Profile
    :param m2: second profile
    :type m2: Profile

    :return: the verdict
    :rtype: bool

    :raises DimensionMismatch: if the profiles differ in N
    """
    if m.num_individuals != m2.num_individuals:
        raise DimensionMismatch(
            f"profiles have N = {m.num_individuals} and {m2.num_individuals}"
        )
    return all(
        is_inconsistent(c, c2) for c, c2 in zip(m.columns, m2.columns)
    )


def _require(verdict, detail: str = "") -> None:
    if not verdict.holds:
        raise PreconditionFailed(verdict.axiom, detail or verdict.describe())


def _arrange(placed: Dict[int, PairwisePreferences]) -> Profile:
    return profile_from_rows([placed[j] for j in range(NUM_ALTERNATIVES)])


def _pick_cycle(
    swf: IiaSwf,
    profiles: Sequence[Profile],
    provenance: Provenance,
) -> CycleWitness:
    for profile in profiles:
        if classify(apply(swf, profile)).is_cycle:
            return CycleWitness.build(swf, profile, provenance)
    raise WitnessValidationError(
        f"no {provenance.value} candidate aggregates to a cycle"
    )


def strictness_witness(swf: IiaSwf) -> Optional[CycleWitness]:
    """
    Cycle from a strict row that some component maps to e.

    With s_j(r) = e the profiles placing r at j, Delta 0 or Delta 1 at j+1 and
    -r at j+2 are valid, and at least one of them aggregates to a cycle; the
    Delta 0 variant is preferred.

    :param swf: the SWF
    :type swf: IiaSwf

    :return: the witness, or None if strictness is preserved
    :rtype: Optional[CycleWitness]

    :raises PreconditionFailed: if unanimity fails
    """
    _require(check_unanimity(swf))
    for r in enumerate_strict_pairs(swf.n):
        for j in range(NUM_ALTERNATIVES):
            if swf.tables[j, r.index] != int(E):
                continue
            logger.debug("s%d(%s) = e, building strictness witness",
                         j + 1, r.symbols)
            candidates = [
                _arrange({
                    j: r,
                    (j + 1) % NUM_ALTERNATIVES: delta(x, swf.n),
                    (j + 2) % NUM_ALTERNATIVES: r.negate(),
                })
                for x in (ZERO, ONE)
            ]
            return _pick_cycle(swf, candidates, Provenance.STRICTNESS_LEMMA)
    return None


def neutrality_witness(swf: IiaSwf) -> Optional[CycleWitness]:
    """
    Cycle from a strict row x with s_j(x) = s_k(-x) = t for j != k.

    The profile puts x at j, -x at k and Delta t at the remaining position and
    aggregates to (t, t, t).

    :param swf: the SWF
    :type swf: IiaSwf

    :return: the witness, or None if strict neutrality holds
    :rtype: Optional[CycleWitness]

    :raises PreconditionFailed: if unanimity or strictness preservation fails
    """
    _require(check_unanimity(swf))
    _require(check_strictness_preservation(swf))
    for x in enumerate_strict_pairs(swf.n):
        negated = x.negate()
        for j, k in itertools.permutations(range(NUM_ALTERNATIVES), 2):
            t = swf.tables[j, x.index]
            if t != swf.tables[k, negated.index]:
                continue
            rest = 3 - j - k
            logger.debug("s%d(%s) = s%d(%s), building neutrality witness",
                         j + 1, x.symbols, k + 1, negated.symbols)
            profile = _arrange({
                j: x, k: negated, rest: delta(TernaryValue(int(t)), swf.n),
            })
            return CycleWitness.build(swf, profile, Provenance.NEUTRALITY_LEMMA)
    return None


def _no_full_dictator(swf: IiaSwf) -> None:
    dictator = find_dictator(swf)
    if dictator is not None:
        raise PreconditionFailed(
            "non_dictatorship",
            f"individual {dictator} dictates every component",
        )


def arrow_case(swf: IiaSwf) -> Tuple[ArrowCase, frozenset, PairwisePreferences]:
    """
    Pick the minimal coalition of the common strict restriction.

    Among the inclusion-minimal sets Votes_1(r) over strict rows r with
    s(r) = 1 the one with the smallest sorted member tuple is chosen.

    :param swf: an SWF whose components agree on strict rows
    :type swf: IiaSwf

    :return: the case, the coalition and its row
    :rtype: Tuple[ArrowCase, frozenset, PairwisePreferences]

    :raises InternalDichotomyError: if the only minimal coalition is everyone
    """
    aggregates = votes_aggregates(swf, 1)
    coalitions = {r.votes_one(): r for r in aggregates.aggregates_one}
    minimal = [
        s for s in coalitions
        if not any(other < s for other in coalitions)
    ]
    minimal.sort(key=lambda s: tuple(sorted(s)))
    if not minimal:
        raise InternalDichotomyError("no strict row aggregates to 1")
    coalition = minimal[0]
    if len(coalition) == swf.n:
        raise InternalDichotomyError(
            "the only minimal coalition is every individual"
        )
    case = ArrowCase.SINGLETON if len(coalition) == 1 else ArrowCase.PROPER
    return case, coalition, coalitions[coalition]


def _proper_rows(
    swf: IiaSwf,
    coalition: frozenset,
    r: PairwisePreferences,
) -> Tuple[PairwisePreferences, PairwisePreferences, PairwisePreferences]:
    first = min(coalition)
    r_prime = PairwisePreferences(tuple(
        ONE if (i not in coalition or i == first) else ZERO
        for i in range(1, swf.n + 1)
    ))
    r_second = PairwisePreferences(tuple(
        ONE if i not in coalition else r_prime[i - 1].neg()
        for i in range(1, swf.n + 1)
    ))
    return r, r_prime, r_second


def _find_row(
    swf: IiaSwf,
    component: int,
    individual: int,
    entry: TernaryValue,
    outputs: Sequence[TernaryValue],
) -> Optional[PairwisePreferences]:
    # first row in Pair(N) with the given entry and an allowed output
    codes = {int(v) for v in outputs}
    for row in enumerate_pairs(swf.n):
        if row[individual - 1] is entry and \
                int(swf.tables[component, row.index]) in codes:
            return row
    return None


def _singleton_witness(
    swf: IiaSwf,
    individual: int,
    r: PairwisePreferences,
) -> CycleWitness:
    k = next(
        c for c in range(NUM_ALTERNATIVES)
        if not dictates_component(swf, individual, c + 1)
    )
    j = next(c for c in range(NUM_ALTERNATIVES) if c != k)
    rest = 3 - j - k
    for outputs in ((ONE,), (E,)):
        r_prime = _find_row(swf, k, individual, ZERO, outputs)
        if r_prime is not None:
            profile = _arrange({j: r, k: r_prime, rest: delta(ONE, swf.n)})
            return CycleWitness.build(swf, profile, Provenance.ARROW_CASE_1)
    r_second = _find_row(swf, k, individual, ONE, (ZERO, E))
    if r_second is None:
        raise InternalDichotomyError(
            f"individual {individual} dictates component {k + 1} "
            f"on every row"
        )
    profile = _arrange({
        j: r.negate(), k: r_second, rest: delta(ZERO, swf.n),
    })
    return CycleWitness.build(swf, profile, Provenance.ARROW_CASE_1)


def arrow_witness(swf: IiaSwf) -> CycleWitness:
    """
    Cycle for any unanimous SWF without a dictator.

    Stage 1 returns :py:func:`strictness_witness`, stage 2
    :py:func:`neutrality_witness`; otherwise the minimal coalition decides
    between the singleton construction and the proper-coalition profile
    (r, r', r'') aggregating to (1,1,1).

    :param swf: the SWF
    :type swf: IiaSwf

    :return: the witness
    :rtype: CycleWitness

    :raises PreconditionFailed: if unanimity fails or some individual dictates
        every component
    :raises InternalDichotomyError: if neither coalition case applies
    """
    _require(check_unanimity(swf))
    _no_full_dictator(swf)
    witness = strictness_witness(swf)
    if witness is not None:
        return witness
    witness = neutrality_witness(swf)
    if witness is not None:
        return witness
    case, coalition, r = arrow_case(swf)
    logger.debug("arrow stage 3 for %s: %s coalition %s",
                 swf.name, case.name.lower(), sorted(coalition))
    if case is ArrowCase.SINGLETON:
        return _singleton_witness(swf, next(iter(coalition)), r)
    profile = profile_from_rows(_proper_rows(swf, coalition, r))
    return CycleWitness.build(swf, profile, Provenance.ARROW_CASE_2)


def _singleton_pair(
    swf: IiaSwf,
    individual: int,
    r: PairwisePreferences,
) -> Optional[ContradictoryPair]:
    n = swf.n
    for j, k in itertools.permutations(range(NUM_ALTERNATIVES), 2):
        r_prime = _find_row(swf, k, individual, ZERO, (ONE,))
        if r_prime is None:
            continue
        m = _arrange({j: r, k: r_prime, 3 - j - k: delta(ONE, n)})
        for k2 in (c for c in range(NUM_ALTERNATIVES) if c != j):
            r_second = _find_row(swf, k2, individual, ONE, (ZERO,))
            if r_second is None:
                continue
            m_prime = _arrange({
                j: r.negate(), k2: r_second, 3 - j - k2: delta(ZERO, n),
            })
            return ContradictoryPair.build(
                swf, m, m_prime, Provenance.ARROW_CASE_1
            )
    return None


def contradictory_pair(swf: IiaSwf) -> ContradictoryPair:
    """
    Contradicting profiles aggregating to (1,1,1) and (0,0,0).

    For a proper coalition m is the stage-3 profile and m' its negation. For a
    singleton coalition {i} the pair (r, r', Delta 1), (-r, r'', Delta 0) is
    searched with entry i of r' equal to 0 and of r'' equal to 1; the two
    profiles contradict through the row holding r and -r. When no such pair
    exists an exhaustive search runs for N <= 3.

    :param swf: the SWF
    :type swf: IiaSwf

    :return: the validated pair
    :rtype: ContradictoryPair

    :raises PreconditionFailed: if a precondition of :py:func:`arrow_witness`
        fails or stage 1 or 2 applies
    :raises WitnessNotFound: if no contradictory pair exists
    """
    _require(check_unanimity(swf))
    _no_full_dictator(swf)
    _require(check_strictness_preservation(swf))
    _require(check_strict_neutrality(swf))
    case, coalition, r = arrow_case(swf)
    if case is ArrowCase.PROPER:
        m = profile_from_rows(_proper_rows(swf, coalition, r))
        return ContradictoryPair.build(
            swf, m, m.negate(), Provenance.ARROW_CASE_2
        )
    pair = _singleton_pair(swf, next(iter(coalition)), r)
    if pair is not None:
        return pair
    logger.info("no constructive pair for %s, searching exhaustively", swf.name)
    pair = contradictory_pair_search(swf)
    if pair is None:
        raise WitnessNotFound(
            f"{swf.name} has no contradictory pair of profiles"
        )
    return pair


@lru_cache(maxsize=None)
def _inconsistency_matrix() -> np.ndarray:
    orders = enumerate_weak_orders()
    matrix = np.array(
        [[is_inconsistent(a, b) for b in orders] for a in orders], dtype=bool
    )
    matrix.flags.writeable = False
    return matrix


def contradictory_pair_search(
    swf: IiaSwf,
    max_individuals: int = MAX_PAIR_SEARCH_INDIVIDUALS,
) -> Optional[ContradictoryPair]:
    """
    First contradictory pair over every profile, in index order.

    :param swf: the SWF, N <= max_individuals
    :type swf: IiaSwf
    :param max_individuals: size bound
    :type max_individuals: int

    :return: the pair with the lowest (m, m') indices, or None
    :rtype: Optional[ContradictoryPair]

    :raises TooLarge: if N exceeds the bound
    """
    if swf.n > max_individuals:
        raise TooLarge(
            f"exhaustive pair search is limited to N <= {max_individuals}"
        )
    rows = profile_rows(swf.n)
    aggregates = relation_indices(np.stack(
        [swf.tables[j][rows[:, j]] for j in range(NUM_ALTERNATIVES)], axis=1
    ))
    ones = np.flatnonzero(aggregates == ALL_ONES.index)
    zeros = np.flatnonzero(aggregates == ALL_ZEROS.index)
    if not ones.size or not zeros.size:
        return None
    ranks = profile_ranks(swf.n, 0, count_profiles(swf.n))
    matrix = _inconsistency_matrix()
    for p in ones:
        hits = matrix[ranks[p][None, :], ranks[zeros]].all(axis=1)
        found = np.flatnonzero(hits)
        if found.size:
            return ContradictoryPair.build(
                swf,
                profile_from_index(swf.n, int(p)),
                profile_from_index(swf.n, int(zeros[found[0]])),
                Provenance.EXHAUSTIVE,
            )
    return None


def _pareto_candidates(
    swf: IiaSwf,
    component: int,
    x: PairwisePreferences,
) -> List[Profile]:
    # component is 0-based; the candidates hold x, -x and Delta e
    placed = {
        "x": x, "-x": x.negate(), "e": delta(E, swf.n),
    }
    c = component
    if c > 0 and swf.tables[c, x.index] != swf.tables[0, x.index]:
        k = 3 - c
        layouts = [
            {0: "x", k: "-x", c: "e"},
            {c: "x", k: "-x", 0: "e"},
        ]
    else:
        i, k = [j for j in range(NUM_ALTERNATIVES) if j != c]
        layouts = [
            {c: "x", i: "-x", k: "e"},
            {i: "-x", k: "x", c: "e"},
            {c: "-x", k: "x", i: "e"},
        ]
    return [
        _arrange({j: placed[name] for j, name in layout.items()})
        for layout in layouts
    ]


def pareto_witness(swf: IiaSwf) -> Optional[CycleWitness]:
    """
    Cycle built from r, -r and Delta e when full neutrality fails.

    The row and component of the full-neutrality counterexample fix the
    arrangements: when components disagree on x, one of the two profiles
    putting x at either disagreeing position against -x cycles; when a
    component is not odd on x, one of three arrangements does.

    :param swf: the SWF
    :type swf: IiaSwf

    :return: the witness, or None if full neutrality holds
    :rtype: Optional[CycleWitness]

    :raises PreconditionFailed: if Pareto indifference fails
    :raises WitnessValidationError: if no arrangement cycles
    """
    _require(check_pareto_indifference(swf))
    verdict = check_full_neutrality(swf)
    if verdict.holds:
        return None
    example = verdict.counterexample
    logger.debug("pareto witness from s%d(%s)", example.component,
                 example.row.symbols)
    return _pick_cycle(
        swf,
        _pareto_candidates(swf, example.component - 1, example.row),
        Provenance.PARETO_NEUTRALITY,
    )


def exhaustive_witness(swf: IiaSwf) -> Optional[CycleWitness]:
    """
    The first cycle-producing profile in enumeration order.

    :param swf: the SWF, N <= 6
    :type swf: IiaSwf

    :return: the witness, or None if the domain is unrestricted
    :rtype: Optional[CycleWitness]
    """
    hit = first_cycle_index(swf)
    if hit is None:
        return None
    return CycleWitness.build(
        swf, profile_from_index(swf.n, hit), Provenance.EXHAUSTIVE
    )
