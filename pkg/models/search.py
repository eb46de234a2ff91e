# -*- coding: utf-8 -*-

"""
Exhaustive and randomized search over social welfare functions.

Classes:
    - :py:class:`SearchMode` symmetric (s1 = s2 = s3) or full triples.
    - :py:class:`Culture` impartial culture over strict or weak orders.
    - :py:class:`CandidateSpace` the IIA SWFs with given N and mode.
    - :py:class:`CandidateOutcome` the sweep verdict for one candidate.
    - :py:class:`SweepReport` merged outcome of a sweep.
    - :py:class:`CandidateSweep` sweep engine with run directories.
    - :py:class:`PrunedSearchReport` result of :py:func:`pruned_ud_search`.
    - :py:class:`LemmaReport` result of :py:func:`verify_lemmas_exhaustive`.
    - :py:class:`SimulationReport` result of :py:func:`monte_carlo_condorcet`.

Functions:
    - :py:func:`cycle_profile_indices`
    - :py:func:`brute_force_cycle_search`
    - :py:func:`evaluate_candidate`
    - :py:func:`sweep_candidates`
    - :py:func:`pruned_ud_search`
    - :py:func:`verify_lemmas_exhaustive`
    - :py:func:`monte_carlo_condorcet`
    - :py:func:`exact_condorcet_fraction`
    - :py:func:`contradictory_pair_search`
"""

__author__ = "Mir Sazzat Hossain"

import itertools
import logging
import os
from collections import Counter
from dataclasses import asdict, dataclass, field
from enum import Enum
from fractions import Fraction
from multiprocessing import Pool
from typing import Dict, List, Optional, Tuple

import numpy as np
import pandas as pd
from tqdm import tqdm

from models.axioms import (
    check_full_neutrality,
    check_pareto_indifference,
    check_strict_neutrality,
    check_strictness_preservation,
    check_unanimity,
    find_dictator,
)
from models.preferences import (
    NUM_ALTERNATIVES,
    NUM_WEAK_ORDERS,
    PreferenceRelation,
    Profile,
    cycle_mask,
    profile_from_index,
    profile_rows,
    relation_indices,
    strict_order_ranks,
    weak_order_matrix,
)
from models.swf import IiaSwf, PairwiseComparisonFunction, majority_votes
from models.witness import (
    CycleWitness,
    Provenance,
    arrow_witness,
    contradictory_pair,
    contradictory_pair_search,
)
from utils.errors import (
    ArrovianError,
    BadDimension,
    TooLarge,
    WitnessNotFound,
)
from utils.tools import normal_interval, render_text, standard_error

logger = logging.getLogger(__name__)

MAX_ORACLE_INDIVIDUALS = 4
MAX_EXACT_PROFILES = 5_000_000
ORACLE_BATCH_ENTRIES = 3_000_000

__all__ = [
    "CandidateOutcome",
    "CandidateSpace",
    "CandidateSweep",
    "Culture",
    "LemmaReport",
    "PrunedSearchReport",
    "SearchMode",
    "SimulationReport",
    "SweepReport",
    "brute_force_cycle_search",
    "contradictory_pair_search",
    "cycle_profile_indices",
    "evaluate_candidate",
    "exact_condorcet_fraction",
    "monte_carlo_condorcet",
    "pruned_ud_search",
    "sweep_candidates",
    "verify_lemmas_exhaustive",
]


class SearchMode(Enum):
    """Shape of the candidate tables."""

    SYMMETRIC = "symmetric"
    FULL = "full"


class Culture(Enum):
    """Impartial culture: every voter draws an order uniformly."""

    STRICT = "strict"
    WEAK = "weak"


def _rng(seed: int, block: int) -> np.random.Generator:
    # one counter-based stream per block, independent of the worker count
    return np.random.Generator(
        np.random.Philox(np.random.SeedSequence([seed, block]))
    )


def _check_oracle_size(n: int) -> None:
    if n < 2:
        raise BadDimension(f"need N >= 2, got {n}")
    if n > MAX_ORACLE_INDIVIDUALS:
        raise TooLarge(
            f"exhaustive cycle search is limited to N <= "
            f"{MAX_ORACLE_INDIVIDUALS}, got {n}"
        )


def _cycle_matrix(tables: np.ndarray, n: int) -> np.ndarray:
    """(k, 3, 3^N) tables -> (k, 13^N) flags of cycle-producing profiles."""
    rows = profile_rows(n)
    mask = cycle_mask()
    batch = max(1, ORACLE_BATCH_ENTRIES // rows.shape[0])
    flags = np.empty((tables.shape[0], rows.shape[0]), dtype=bool)
    for start in range(0, tables.shape[0], batch):
        part = tables[start:start + batch].astype(np.int64)
        codes = (
            part[:, 0, rows[:, 0]] * 9
            + part[:, 1, rows[:, 1]] * 3
            + part[:, 2, rows[:, 2]]
        )
        flags[start:start + batch] = mask[codes]
    return flags


def cycle_profile_indices(swf: IiaSwf) -> np.ndarray:
    """
    Indices of every profile aggregating to a cycle.

    :param swf: the SWF, N <= 4
    :type swf: IiaSwf

    :return: ascending profile indices
    :rtype: numpy.ndarray

    :raises TooLarge: if N > 4
    """
    _check_oracle_size(swf.n)
    return np.flatnonzero(_cycle_matrix(swf.tables[None], swf.n)[0])


def brute_force_cycle_search(
    swf: IiaSwf,
) -> List[Tuple[Profile, PreferenceRelation]]:
    """
    Every profile whose aggregate is a cycle, in enumeration order.

    :param swf: the SWF, N <= 4
    :type swf: IiaSwf

    :return: (profile, aggregate) pairs; empty iff the domain is unrestricted
    :rtype: List[Tuple[Profile, PreferenceRelation]]

    :raises TooLarge: if N > 4
    """
    found = []
    for index in cycle_profile_indices(swf):
        profile = profile_from_index(swf.n, int(index))
        aggregate = PreferenceRelation.from_codes(
            swf.tables[j, profile.rows[j].index]
            for j in range(NUM_ALTERNATIVES)
        )
        found.append((profile, aggregate))
    return found


@dataclass(frozen=True)
class CandidateSpace(object):
    """IIA SWFs on N individuals, optionally with unanimity pinned."""

    n: int
    mode: SearchMode = SearchMode.SYMMETRIC
    unanimity_fixed: bool = True

    def __post_init__(self) -> None:
        """Check N."""
        if self.n < 2:
            raise BadDimension(f"need N >= 2, got {self.n}")

    @property
    def free_inputs(self) -> np.ndarray:
        """Row indices whose outputs are free."""
        inputs = np.arange(3 ** self.n)
        if self.unanimity_fixed:
            inputs = inputs[1:-1]
        return inputs

    @property
    def num_digits(self) -> int:
        """Free table entries per candidate."""
        tables = 1 if self.mode is SearchMode.SYMMETRIC else NUM_ALTERNATIVES
        return tables * len(self.free_inputs)

    @property
    def size(self) -> int:
        """Number of candidates."""
        return 3 ** self.num_digits

    def digits(self, start: int, stop: int) -> np.ndarray:
        """Base-3 digits of the candidates in [start, stop), MSB first."""
        indices = np.arange(start, stop, dtype=np.int64)
        powers = 3 ** np.arange(self.num_digits - 1, -1, -1, dtype=np.int64)
        return ((indices[:, None] // powers[None, :]) % 3).astype(np.uint8)

    def sample_digits(self, seed: int, block: int, count: int) -> np.ndarray:
        """Uniform random digits for one sampling block."""
        return _rng(seed, block).integers(
            0, 3, size=(count, self.num_digits), dtype=np.uint8
        )

    def tables(self, digits: np.ndarray) -> np.ndarray:
        """
        Decode digits into component tables.

        :param digits: (k, num_digits) array; full mode lists component 1
            first
        :type digits: numpy.ndarray

        :return: (k, 3, 3^N) array of codes
        :rtype: numpy.ndarray
        """
        count = digits.shape[0]
        size = 3 ** self.n
        free = self.free_inputs
        tables = np.zeros((count, NUM_ALTERNATIVES, size), dtype=np.uint8)
        if self.unanimity_fixed:
            tables[:, :, size - 1] = 2
        if self.mode is SearchMode.SYMMETRIC:
            tables[:, :, free] = digits[:, None, :]
        else:
            tables[:, :, free] = digits.reshape(
                count, NUM_ALTERNATIVES, len(free)
            )
        return tables

    def swf(self, tables: np.ndarray, name: str) -> IiaSwf:
        """Wrap one (3, 3^N) table block as an SWF."""
        return IiaSwf(
            [PairwiseComparisonFunction(tables[j], self.n)
             for j in range(NUM_ALTERNATIVES)],
            name=name,
        )

    def candidate(self, index: int) -> IiaSwf:
        """The candidate at an enumeration index."""
        if not 0 <= index < self.size:
            raise BadDimension(f"candidate {index} outside [0, {self.size})")
        return self.swf(
            self.tables(self.digits(index, index + 1))[0],
            name=f"candidate {index}",
        )


@dataclass
class CandidateOutcome(object):
    """What the sweep established about one candidate."""

    candidate: str
    tables: str
    unanimity: bool
    dictator: Optional[int]
    ud: bool
    provenance: Optional[str] = None
    contradiction: Optional[str] = None
    discrepancy: Optional[str] = None


def _witness_in_oracle(witness: CycleWitness, cycles: np.ndarray) -> bool:
    position = np.searchsorted(cycles, witness.profile.index)
    return position < cycles.size and cycles[position] == witness.profile.index


def evaluate_candidate(
    swf: IiaSwf,
    cycles: np.ndarray,
    contradictions: bool = True,
) -> CandidateOutcome:
    """
    Cross-check the witness pipeline against the brute-force oracle.

    :param swf: the candidate
    :type swf: IiaSwf
    :param cycles: ascending indices of its cycle-producing profiles
    :type cycles: numpy.ndarray
    :param contradictions: also build contradictory pairs at stage 3
    :type contradictions: bool

    :return: the outcome; ``discrepancy`` is set when the two disagree
    :rtype: CandidateOutcome
    """
    tables = "/".join(
        "".join("0e1"[c] for c in swf.tables[j])
        for j in range(NUM_ALTERNATIVES)
    )
    outcome = CandidateOutcome(
        candidate=swf.name,
        tables=tables,
        unanimity=check_unanimity(swf).holds,
        dictator=find_dictator(swf),
        ud=cycles.size == 0,
    )
    if not outcome.unanimity:
        return outcome
    if outcome.dictator is not None:
        if not outcome.ud:
            # the dictator's indifference leaves room for a cycle
            index = int(cycles[0])
            CycleWitness.build(
                swf, profile_from_index(swf.n, index), Provenance.EXHAUSTIVE
            )
            outcome.provenance = Provenance.EXHAUSTIVE.value
        return outcome
    if outcome.ud:
        outcome.discrepancy = "no dictator but no profile cycles"
        return outcome
    try:
        witness = arrow_witness(swf)
    except ArrovianError as error:
        outcome.discrepancy = f"witness pipeline failed: {error}"
        return outcome
    outcome.provenance = witness.provenance.value
    if not _witness_in_oracle(witness, cycles):
        outcome.discrepancy = (
            f"witness profile {witness.profile.index} not found by the oracle"
        )
        return outcome
    if contradictions and witness.provenance in (
            Provenance.ARROW_CASE_1, Provenance.ARROW_CASE_2):
        try:
            pair = contradictory_pair(swf)
            outcome.contradiction = pair.provenance.value
        except WitnessNotFound:
            outcome.contradiction = "none"
        except ArrovianError as error:
            outcome.discrepancy = f"contradictory pair failed: {error}"
    return outcome


@dataclass
class SweepReport(object):
    """Counts of a candidate sweep; discrepancies must stay empty."""

    mode: str
    n: int
    sampled: bool = False
    seed: Optional[int] = None
    total: int = 0
    skipped: int = 0
    dictatorial: int = 0
    ud_satisfying: int = 0
    witnessed: int = 0
    exhaustive_witnesses: int = 0
    dictatorial_cycles: int = 0
    contradiction_pairs: int = 0
    contradiction_gaps: int = 0
    provenance: Dict[str, int] = field(default_factory=dict)
    discrepancies: List[str] = field(default_factory=list)

    def add(self, outcome: CandidateOutcome) -> None:
        """Count one candidate."""
        self.total += 1
        if not outcome.unanimity:
            self.skipped += 1
            return
        if outcome.dictator is not None:
            self.dictatorial += 1
            if not outcome.ud:
                self.dictatorial_cycles += 1
        if outcome.ud:
            self.ud_satisfying += 1
        if outcome.discrepancy:
            self.discrepancies.append(
                f"{outcome.candidate} ({outcome.tables}): {outcome.discrepancy}"
            )
        elif outcome.provenance:
            self.witnessed += 1
            if outcome.provenance == Provenance.EXHAUSTIVE.value:
                self.exhaustive_witnesses += 1
            self.provenance[outcome.provenance] = \
                self.provenance.get(outcome.provenance, 0) + 1
        if outcome.contradiction == "none":
            self.contradiction_gaps += 1
        elif outcome.contradiction:
            self.contradiction_pairs += 1

    def merge(self, other: "SweepReport") -> None:
        """Add the counts of another partial report."""
        for name in ("total", "skipped", "dictatorial", "ud_satisfying",
                     "witnessed", "exhaustive_witnesses", "dictatorial_cycles",
                     "contradiction_pairs", "contradiction_gaps"):
            setattr(self, name, getattr(self, name) + getattr(other, name))
        merged = Counter(self.provenance)
        merged.update(other.provenance)
        self.provenance = dict(merged)
        self.discrepancies.extend(other.discrepancies)

    def items(self) -> List[Tuple[str, str]]:
        """Report lines as (key, value) in a stable order."""
        lines = [
            ("mode", self.mode),
            ("individuals", str(self.n)),
            ("sampled", "yes" if self.sampled else "no"),
        ]
        if self.seed is not None:
            lines.append(("seed", str(self.seed)))
        for name in ("total", "skipped", "dictatorial", "ud_satisfying",
                     "witnessed", "exhaustive_witnesses", "dictatorial_cycles",
                     "contradiction_pairs", "contradiction_gaps"):
            lines.append((name, str(getattr(self, name))))
        provenance = ", ".join(
            f"{key}={self.provenance[key]}" for key in sorted(self.provenance)
        )
        lines.append(("provenance", provenance or "none"))
        lines.append(("discrepancies", str(len(self.discrepancies))))
        lines.extend(("discrepancy", text) for text in self.discrepancies)
        return lines

    def to_dict(self) -> dict:
        """Structured form mirroring :py:meth:`items`."""
        document = asdict(self)
        document["individuals"] = document.pop("n")
        document["provenance"] = dict(sorted(self.provenance.items()))
        return document


def _sweep_block(args) -> Tuple[SweepReport, List[dict]]:
    space, start, stop, seed, block, contradictions, keep = args
    if seed is None:
        digits = space.digits(start, stop)
        labels = [f"candidate {i}" for i in range(start, stop)]
    else:
        digits = space.sample_digits(seed, block, stop - start)
        labels = [f"sample {block}:{k}" for k in range(stop - start)]
    tables = space.tables(digits)
    flags = _cycle_matrix(tables, space.n)
    report = SweepReport(mode=space.mode.value, n=space.n)
    records = []
    for k, label in enumerate(labels):
        outcome = evaluate_candidate(
            space.swf(tables[k], label), np.flatnonzero(flags[k]),
            contradictions,
        )
        report.add(outcome)
        if keep:
            records.append(asdict(outcome))
    return report, records


class CandidateSweep(object):
    """Run a candidate sweep over worker blocks and store the results."""

    def __init__(
        self,
        space: CandidateSpace,
        trials: Optional[int] = None,
        seed: Optional[int] = None,
        workers: int = 1,
        block_size: int = 10_000,
        max_exhaustive_candidates: int = 1_000_000,
        contradictions: bool = True,
        progress: bool = False,
        save_run: bool = False,
        work_dir: Optional[str] = None,
    ) -> None:
        """
        Initialize the sweep.

        :param space: the candidate space
        :type space: CandidateSpace
        :param trials: number of sampled candidates; None sweeps every one
        :type trials: int
        :param seed: seed of the sampling streams, required with trials
        :type seed: int
        :param workers: worker processes
        :type workers: int
        :param block_size: candidates per block
        :type block_size: int
        :param max_exhaustive_candidates: largest space swept exhaustively
        :type max_exhaustive_candidates: int
        :param contradictions: build contradictory pairs at stage 3
        :type contradictions: bool
        :param progress: show a progress bar
        :type progress: bool
        :param save_run: write report.txt and candidates.csv to logs/run_<n>
        :type save_run: bool
        :param work_dir: directory holding logs/
        :type work_dir: str

        :raises TooLarge: if the space cannot be swept as requested
        """
        super(CandidateSweep, self).__init__()
        self.space = space
        self.trials = trials
        self.seed = seed
        self.workers = max(1, workers)
        self.block_size = block_size
        self.contradictions = contradictions
        self.progress = progress
        self.save_run = save_run
        self.work_dir = os.path.abspath(work_dir or os.curdir)

        allowed = {SearchMode.SYMMETRIC: (2, 3), SearchMode.FULL: (2,)}
        if space.n not in allowed[space.mode]:
            raise TooLarge(
                f"{space.mode.value} sweeps support N in "
                f"{allowed[space.mode]}, got {space.n}"
            )
        if trials is None:
            if space.size > max_exhaustive_candidates:
                raise TooLarge(
                    f"{space.size} candidates exceed the exhaustive bound "
                    f"{max_exhaustive_candidates}; sample with a seed instead"
                )
        elif seed is None:
            raise ValueError("sampling requires a seed")

        self.log_dir = None
        self.run_version = None

    def initiate_writer(self) -> None:
        """Create the next logs/run_<n> directory."""
        self.log_dir = os.path.join(self.work_dir, "logs")
        self.run_version = 0

        if not os.path.exists(self.log_dir):
            os.makedirs(self.log_dir)
        else:
            self.run_version = len(os.listdir(self.log_dir))

        self.log_dir = os.path.join(self.log_dir, f"run_{self.run_version}")
        os.makedirs(self.log_dir)

    def _tasks(self) -> List[tuple]:
        total = self.space.size if self.trials is None else self.trials
        return [
            (self.space, start, min(start + self.block_size, total),
             self.seed, block, self.contradictions, self.save_run)
            for block, start in enumerate(range(0, total, self.block_size))
        ]

    def run(self) -> SweepReport:
        """
        Sweep every block and merge the partial reports in block order.

        :return: the merged report
        :rtype: SweepReport
        """
        tasks = self._tasks()
        logger.info(
            "sweeping %s candidates (%s, N = %d) in %d blocks",
            self.trials or self.space.size, self.space.mode.value,
            self.space.n, len(tasks),
        )
        report = SweepReport(
            mode=self.space.mode.value, n=self.space.n,
            sampled=self.trials is not None, seed=self.seed,
        )
        records = []
        if self.workers > 1 and len(tasks) > 1:
            with Pool(processes=self.workers) as pool:
                results = list(tqdm(pool.imap(_sweep_block, tasks),
                                    total=len(tasks),
                                    disable=not self.progress))
        else:
            results = [
                _sweep_block(task)
                for task in tqdm(tasks, disable=not self.progress)
            ]
        for partial, partial_records in results:
            report.merge(partial)
            records.extend(partial_records)
        logger.info(
            "sweep finished: %d candidates, %d discrepancies",
            report.total, len(report.discrepancies),
        )
        if self.save_run:
            self.save_results(report, records)
        return report

    def save_results(self, report: SweepReport, records: List[dict]) -> None:
        """Write report.txt and candidates.csv into a new run directory."""
        self.initiate_writer()
        with open(os.path.join(self.log_dir, "report.txt"), "w",
                  encoding="utf8") as report_file:
            report_file.write(render_text(report.items()))
        pd.DataFrame(records).to_csv(
            os.path.join(self.log_dir, "candidates.csv"), index=False
        )
        logger.info("sweep results saved to %s", self.log_dir)


def sweep_candidates(space: CandidateSpace, **options) -> SweepReport:
    """
    Cross-check every candidate (or a seeded sample) against the oracle.

    Unanimous candidates with a full dictator must satisfy unrestricted
    domain unless the dictator's indifference allows a cycle, which is
    witnessed exhaustively. Every other unanimous candidate must receive an
    :py:func:`arrow_witness` found in the oracle's cycle list.

    :param space: the candidate space
    :type space: CandidateSpace
    :param options: keyword arguments of :py:class:`CandidateSweep`

    :return: the merged report
    :rtype: SweepReport

    :raises TooLarge: if the space cannot be swept as requested
    """
    return CandidateSweep(space, **options).run()


@dataclass
class PrunedSearchReport(object):
    """Unanimous candidates satisfying unrestricted domain."""

    n: int
    mode: str
    nodes: int
    complete: bool
    solutions: List[IiaSwf] = field(default_factory=list)

    @property
    def dictatorial(self) -> int:
        """Solutions with a full dictator."""
        return sum(1 for s in self.solutions if find_dictator(s) is not None)

    def items(self) -> List[Tuple[str, str]]:
        """Report lines as (key, value) in a stable order."""
        return [
            ("mode", self.mode),
            ("individuals", str(self.n)),
            ("nodes", str(self.nodes)),
            ("complete", "yes" if self.complete else "no"),
            ("ud_satisfying", str(len(self.solutions))),
            ("dictatorial", str(self.dictatorial)),
        ]


class _NodeBudgetExceeded(Exception):
    pass


def pruned_ud_search(
    n: int = 2,
    mode: SearchMode = SearchMode.FULL,
    max_nodes: int = 2_000_000,
) -> PrunedSearchReport:
    """
    Backtracking enumeration of the unanimous candidates satisfying UD.

    Table entries are assigned row by row; after each assignment the profiles
    whose three rows are now all assigned are evaluated and the branch is
    abandoned as soon as one of them aggregates to a cycle.

    :param n: number of individuals, N <= 4
    :type n: int
    :param mode: symmetric or full triples
    :type mode: SearchMode
    :param max_nodes: assignment budget
    :type max_nodes: int

    :return: the solutions found; ``complete`` is False if the budget ran out
    :rtype: PrunedSearchReport
    """
    _check_oracle_size(n)
    space = CandidateSpace(n, mode, unanimity_fixed=True)
    free = [int(r) for r in space.free_inputs]
    if mode is SearchMode.SYMMETRIC:
        slots = [(None, r) for r in free]
    else:
        slots = [(j, r) for r in free for j in range(NUM_ALTERNATIVES)]
    position = np.full((NUM_ALTERNATIVES, 3 ** n), -1, dtype=np.int64)
    for depth, (j, r) in enumerate(slots):
        if j is None:
            position[:, r] = depth
        else:
            position[j, r] = depth
    rows = profile_rows(n)
    ready = np.max(
        np.stack([position[j][rows[:, j]] for j in range(NUM_ALTERNATIVES)],
                 axis=1),
        axis=1,
    )
    groups = [rows[ready == depth] for depth in range(len(slots))]
    mask = cycle_mask()
    components = np.arange(NUM_ALTERNATIVES)[None, :]

    table = space.tables(np.zeros((1, space.num_digits), dtype=np.uint8))[0]
    table = table.astype(np.int64)
    pinned = rows[ready == -1]
    if pinned.size and mask[relation_indices(table[components, pinned])].any():
        return PrunedSearchReport(n=n, mode=mode.value, nodes=0, complete=True)

    solutions = []
    nodes = 0

    def descend(depth: int) -> None:
        nonlocal nodes
        if depth == len(slots):
            solutions.append(space.swf(
                table.astype(np.uint8), name=f"solution {len(solutions)}"
            ))
            return
        j, r = slots[depth]
        group = groups[depth]
        for value in range(3):
            if nodes >= max_nodes:
                raise _NodeBudgetExceeded()
            nodes += 1
            if j is None:
                table[:, r] = value
            else:
                table[j, r] = value
            if group.size and mask[
                    relation_indices(table[components, group])].any():
                continue
            descend(depth + 1)

    complete = True
    try:
        descend(0)
    except _NodeBudgetExceeded:
        complete = False
        logger.info("pruned search stopped after %d nodes", nodes)
    return PrunedSearchReport(
        n=n, mode=mode.value, nodes=nodes, complete=complete,
        solutions=solutions,
    )


@dataclass
class LemmaReport(object):
    """Violation counts of the lemma properties among UD-satisfying SWFs."""

    n: int
    candidates: int = 0
    ud_satisfying: int = 0
    unanimity_checked: int = 0
    pareto_checked: int = 0
    strictness_violations: int = 0
    strict_neutrality_violations: int = 0
    full_neutrality_violations: int = 0
    full_triples: int = 0
    full_triples_complete: Optional[bool] = None

    @property
    def violations(self) -> int:
        """Total number of violations."""
        return (
            self.strictness_violations
            + self.strict_neutrality_violations
            + self.full_neutrality_violations
        )

    def check(self, swf: IiaSwf) -> None:
        """Check the lemma properties on one UD-satisfying SWF."""
        self.ud_satisfying += 1
        if check_unanimity(swf).holds:
            self.unanimity_checked += 1
            if not check_strictness_preservation(swf).holds:
                self.strictness_violations += 1
            if not check_strict_neutrality(swf).holds:
                self.strict_neutrality_violations += 1
        if check_pareto_indifference(swf).holds:
            self.pareto_checked += 1
            if not check_full_neutrality(swf).holds:
                self.full_neutrality_violations += 1

    def items(self) -> List[Tuple[str, str]]:
        """Report lines as (key, value) in a stable order."""
        lines = [(name, str(value)) for name, value in asdict(self).items()
                 if name not in ("n", "full_triples_complete")]
        lines.insert(0, ("individuals", str(self.n)))
        if self.full_triples_complete is not None:
            lines.append((
                "full_triples_complete",
                "yes" if self.full_triples_complete else "no",
            ))
        lines.append(("violations", str(self.violations)))
        return lines


def verify_lemmas_exhaustive(
    n: int = 2,
    include_full: bool = False,
    max_nodes: int = 2_000_000,
    progress: bool = False,
) -> LemmaReport:
    """
    Check the lemma properties on every UD-satisfying symmetric SWF.

    Unanimity is not pinned, so Pareto indifference and full neutrality are
    checked on candidates without it. With ``include_full`` the unanimous
    full-triple solutions of :py:func:`pruned_ud_search` are checked as well.

    :param n: number of individuals
    :type n: int
    :param include_full: also check full triples
    :type include_full: bool
    :param max_nodes: node budget of the full-triple search
    :type max_nodes: int
    :param progress: show a progress bar
    :type progress: bool

    :return: the violation counts, all zero if the lemmas hold
    :rtype: LemmaReport

    :raises TooLarge: if N != 2
    """
    if n != 2:
        raise TooLarge(f"lemma verification is exhaustive at N = 2 only, got {n}")
    space = CandidateSpace(n, SearchMode.SYMMETRIC, unanimity_fixed=False)
    report = LemmaReport(n=n, candidates=space.size)
    block = 4096
    for start in tqdm(range(0, space.size, block), disable=not progress):
        stop = min(start + block, space.size)
        tables = space.tables(space.digits(start, stop))
        flags = _cycle_matrix(tables, n)
        for k in np.flatnonzero(~flags.any(axis=1)):
            report.check(space.swf(tables[k], f"candidate {start + k}"))
    if include_full:
        pruned = pruned_ud_search(n, SearchMode.FULL, max_nodes)
        report.full_triples = len(pruned.solutions)
        report.full_triples_complete = pruned.complete
        for swf in pruned.solutions:
            report.check(swf)
    logger.info("lemma verification: %d UD-satisfying, %d violations",
                report.ud_satisfying, report.violations)
    return report


@dataclass(frozen=True)
class SimulationReport(object):
    """Cycle frequency of pairwise majority under impartial culture."""

    voters: int
    trials: int
    culture: str
    seed: int
    cycles: int

    @property
    def fraction(self) -> float:
        """Estimated probability of a cycle."""
        return self.cycles / self.trials

    @property
    def standard_error(self) -> float:
        """Binomial standard error of the estimate."""
        return standard_error(self.fraction, self.trials)

    @property
    def interval(self) -> Tuple[float, float]:
        """95% normal-approximation interval."""
        return normal_interval(self.fraction, self.standard_error)

    def items(self) -> List[Tuple[str, str]]:
        """Report lines as (key, value) in a stable order."""
        low, high = self.interval
        return [
            ("voters", str(self.voters)),
            ("culture", self.culture),
            ("trials", str(self.trials)),
            ("seed", str(self.seed)),
            ("cycles", str(self.cycles)),
            ("fraction", f"{self.fraction:.6f}"),
            ("standard_error", f"{self.standard_error:.6f}"),
            ("interval", f"[{low:.6f}, {high:.6f}]"),
        ]


def _order_pool(culture: Culture) -> np.ndarray:
    if culture is Culture.STRICT:
        return strict_order_ranks()
    return np.arange(NUM_WEAK_ORDERS)


def _majority_cycles(ranks: np.ndarray) -> int:
    # ranks: (k, voters) weak-order ranks; entries: (k, 3, voters)
    entries = weak_order_matrix()[ranks].transpose(0, 2, 1)
    return int(cycle_mask()[relation_indices(majority_votes(entries))].sum())


def _simulate_block(args) -> int:
    voters, count, seed, block, culture = args
    ranks = _rng(seed, block).choice(
        _order_pool(culture), size=(count, voters)
    )
    return _majority_cycles(ranks)


def monte_carlo_condorcet(
    voters: int,
    trials: int,
    seed: int,
    culture: Culture = Culture.STRICT,
    block_size: int = 100_000,
    workers: int = 1,
    progress: bool = False,
) -> SimulationReport:
    """
    Estimate how often pairwise majority cycles under impartial culture.

    Trials are split into fixed blocks, each drawing from its own stream
    seeded by (seed, block), so the estimate does not depend on ``workers``.

    :param voters: number of voters, >= 2
    :type voters: int
    :param trials: number of sampled profiles, >= 1
    :type trials: int
    :param seed: seed of the streams
    :type seed: int
    :param culture: strict or weak impartial culture
    :type culture: Culture
    :param block_size: profiles per block
    :type block_size: int
    :param workers: worker processes
    :type workers: int
    :param progress: show a progress bar
    :type progress: bool

    :return: the frequency report
    :rtype: SimulationReport

    :raises BadDimension: if voters < 2 or trials < 1
    """
    if voters < 2:
        raise BadDimension(f"need at least 2 voters, got {voters}")
    if trials < 1:
        raise BadDimension(f"need at least 1 trial, got {trials}")
    tasks = [
        (voters, min(block_size, trials - start), seed, block, culture)
        for block, start in enumerate(range(0, trials, block_size))
    ]
    logger.info("simulating %d profiles of %d voters in %d blocks",
                trials, voters, len(tasks))
    if workers > 1 and len(tasks) > 1:
        with Pool(processes=workers) as pool:
            counts = list(tqdm(pool.imap(_simulate_block, tasks),
                               total=len(tasks), disable=not progress))
    else:
        counts = [
            _simulate_block(task)
            for task in tqdm(tasks, disable=not progress)
        ]
    return SimulationReport(
        voters=voters, trials=trials, culture=culture.value, seed=seed,
        cycles=sum(counts),
    )


def exact_condorcet_fraction(
    voters: int,
    culture: Culture = Culture.STRICT,
) -> Fraction:
    """
    Exact probability that pairwise majority cycles under impartial culture.

    :param voters: number of voters, >= 2
    :type voters: int
    :param culture: strict or weak impartial culture
    :type culture: Culture

    :return: cycling profiles over all profiles
    :rtype: fractions.Fraction

    :raises TooLarge: if there are more than 5,000,000 profiles
    """
    if voters < 2:
        raise BadDimension(f"need at least 2 voters, got {voters}")
    pool = _order_pool(culture)
    total = len(pool) ** voters
    if total > MAX_EXACT_PROFILES:
        raise TooLarge(f"{total} profiles exceed {MAX_EXACT_PROFILES}")
    ranks = np.array(list(itertools.product(pool, repeat=voters)),
                     dtype=np.int64)
    return Fraction(_majority_cycles(ranks), total)

