# _*_ coding: utf-8 -*-
"""
Reads and writes the text formats of profiles, SWFs and witnesses.

Profile format::

    profile A=3 N=<n>
    <A lines of N whitespace-separated symbols from 0, e, 1>

SWF format::

    swf N=<n>
    builtin <name>[:<args>]

or three blocks ``component <j>`` each followed by 3^N lines
``<input-tuple> <output>``. Witness files are profile files followed by
``aggregate: <t1t2t3>`` and ``provenance: <name>``. Comments start with ``#``.

Classes:
    - :py:class:`DataCenter` loads and dumps every text format.
"""

__author__ = "Mir Sazzat Hossain"

import logging
import os
import re
from typing import Dict, List, Optional, Tuple

from models.preferences import (
    NUM_ALTERNATIVES,
    PairwisePreferences,
    PreferenceRelation,
    Profile,
    TernaryValue,
    enumerate_pairs,
    profile_from_rows,
)
from models.swf import (
    IiaSwf,
    PairwiseComparisonFunction,
    constant_swf,
    dictator,
    hierarchical_dictator,
    indifference_swf,
    pairwise_majority,
)
from models.witness import ContradictoryPair, CycleWitness, Provenance
from utils.errors import (
    LoadError,
    ParseError,
    UnsupportedAlternativeCount,
)

logger = logging.getLogger(__name__)

_PROFILE_HEADER = re.compile(r"^profile\s+A=(\d+)\s+N=(\d+)$")
_SWF_HEADER = re.compile(r"^swf\s+N=(\d+)$")
_COMPONENT = re.compile(r"^component\s+(\d+)$")
_TRAILER = re.compile(r"^(aggregate|provenance):\s*(\S+)$")
_BUILTINS = ("majority", "dictator", "hierarchical", "constant", "indifference")
_WITH_ARGUMENT = ("dictator", "hierarchical", "constant")

Line = Tuple[int, str]


def _content_lines(text: str) -> List[Line]:
    # (1-based line number, stripped text) without comments and blanks
    lines = []
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            lines.append((number, line))
    return lines


def _symbol(token: str, number: int, column: int) -> TernaryValue:
    try:
        return TernaryValue.from_symbol(token)
    except ParseError:
        raise ParseError(
            f"unknown ternary symbol {token!r}", line=number, column=column
        ) from None


def _tuple_symbols(token: str, number: int, column: int) -> Tuple:
    return tuple(
        _symbol(symbol, number, column + k) for k, symbol in enumerate(token)
    )


def _split_builtin(
    parts: List[str], default_individuals: int
) -> Tuple[str, List[str], int]:
    # a trailing integer beyond the builtin's own argument is N
    name, args = parts[0], parts[1:]
    own = 1 if name in _WITH_ARGUMENT else 0
    if len(args) == own + 1 and args[-1].isdigit():
        return name, args[:-1], int(args[-1])
    return name, args, default_individuals


def _integer(token: str, name: str) -> int:
    if not token.isdigit():
        raise ParseError(f"builtin {name!r} expects an index, got {token!r}")
    return int(token)


def _column_of(raw: str, token_index: int) -> int:
    position = 0
    for k, match in enumerate(re.finditer(r"\S+", raw)):
        position = match.start() + 1
        if k == token_index:
            break
    return position


class DataCenter(object):
    """DataCenter class for loading and dumping text formats."""

    @staticmethod
    def read_text(path: str) -> str:
        """
        Read a text file.

        :param path: file path
        :type path: str

        :return: file content
        :rtype: str

        :raises OSError: if the file cannot be read
        """
        with open(path, "r", encoding="utf8") as text_file:
            return text_file.read()

    @staticmethod
    def write_text(path: str, text: str) -> None:
        """Write a text file, creating parent directories."""
        parent = os.path.dirname(path)
        if parent:
            os.makedirs(parent, exist_ok=True)
        with open(path, "w", encoding="utf8") as text_file:
            text_file.write(text)

    @staticmethod
    def _parse_profile_lines(lines: List[Line]) -> Tuple[Profile, List[Line]]:
        if not lines:
            raise ParseError("empty profile", line=1, column=1)
        number, header = lines[0]
        match = _PROFILE_HEADER.match(header)
        if match is None:
            raise ParseError(
                "expected 'profile A=<a> N=<n>'", line=number, column=1
            )
        alternatives, individuals = int(match.group(1)), int(match.group(2))
        if alternatives != NUM_ALTERNATIVES:
            raise UnsupportedAlternativeCount(
                f"line {number}: profiles need A = {NUM_ALTERNATIVES}, "
                f"got {alternatives}"
            )
        body = lines[1:1 + alternatives]
        if len(body) < alternatives:
            last = body[-1][0] + 1 if body else number + 1
            raise ParseError(
                f"expected {alternatives} rows, got {len(body)}",
                line=last, column=1,
            )
        rows = []
        for number, line in body:
            tokens = line.split()
            if len(tokens) != individuals:
                raise ParseError(
                    f"expected {individuals} symbols, got {len(tokens)}",
                    line=number, column=1,
                )
            values = []
            for k, token in enumerate(tokens):
                column = _column_of(line, k)
                if len(token) != 1:
                    raise ParseError(
                        f"unknown ternary symbol {token!r}",
                        line=number, column=column,
                    )
                values.append(_symbol(token, number, column))
            rows.append(PairwisePreferences(tuple(values)))
        return profile_from_rows(rows), lines[1 + alternatives:]

    @staticmethod
    def parse_profile(text: str) -> Profile:
        """
        Parse the profile text format.

        :param text: file content
        :type text: str

        :return: the profile
        :rtype: Profile

        :raises ParseError: with line and column of the problem
        :raises CycleColumn: if a column is a preference cycle
        """
        profile, rest = DataCenter._parse_profile_lines(_content_lines(text))
        if rest:
            raise ParseError("unexpected content after the profile",
                             line=rest[0][0], column=1)
        return profile

    @staticmethod
    def load_profile(path: str) -> Profile:
        """Load a profile file."""
        return DataCenter.parse_profile(DataCenter.read_text(path))

    @staticmethod
    def dump_profile(profile: Profile) -> str:
        """
        Render a profile in the text format.

        :param profile: the profile
        :type profile: Profile

        :return: the text, newline terminated
        :rtype: str
        """
        lines = [
            f"profile A={profile.num_alternatives} N={profile.num_individuals}"
        ]
        lines.extend(" ".join(row.symbols) for row in profile.rows)
        return "\n".join(lines) + "\n"

    @staticmethod
    def dump_witness(witness: CycleWitness) -> str:
        """Profile text followed by the aggregate and provenance trailer."""
        return (
            DataCenter.dump_profile(witness.profile)
            + f"aggregate: {witness.aggregate.symbols}\n"
            + f"provenance: {witness.provenance.value}\n"
        )

    @staticmethod
    def dump_pair(pair: ContradictoryPair) -> Tuple[str, str]:
        """Witness texts of both profiles of a contradictory pair."""
        first, second = pair.aggregates
        return (
            DataCenter.dump_profile(pair.m)
            + f"aggregate: {first.symbols}\n"
            + f"provenance: {pair.provenance.value}\n",
            DataCenter.dump_profile(pair.m_prime)
            + f"aggregate: {second.symbols}\n"
            + f"provenance: {pair.provenance.value}\n",
        )

    @staticmethod
    def parse_witness(
        text: str,
    ) -> Tuple[Profile, PreferenceRelation, Provenance]:
        """
        Parse a witness file.

        :param text: file content
        :type text: str

        :return: profile, aggregate and provenance
        :rtype: Tuple[Profile, PreferenceRelation, Provenance]

        :raises ParseError: if the trailer is missing or malformed
        """
        profile, rest = DataCenter._parse_profile_lines(_content_lines(text))
        trailer: Dict[str, Tuple[int, str]] = {}
        for number, line in rest:
            match = _TRAILER.match(line)
            if match is None or match.group(1) in trailer:
                raise ParseError("expected 'aggregate:' or 'provenance:'",
                                 line=number, column=1)
            trailer[match.group(1)] = (number, match.group(2))
        for key in ("aggregate", "provenance"):
            if key not in trailer:
                raise ParseError(f"missing '{key}:' line",
                                 line=(rest[-1][0] + 1) if rest else None)
        number, symbols = trailer["aggregate"]
        column = len("aggregate:") + 2
        aggregate = PreferenceRelation(_tuple_symbols(symbols, number, column))
        number, name = trailer["provenance"]
        try:
            provenance = Provenance(name)
        except ValueError:
            raise ParseError(f"unknown provenance {name!r}",
                             line=number, column=len("provenance:") + 2) from None
        return profile, aggregate, provenance

    @staticmethod
    def load_witness(path: str) -> Tuple[Profile, PreferenceRelation, Provenance]:
        """Load a witness file."""
        return DataCenter.parse_witness(DataCenter.read_text(path))

    @staticmethod
    def builtin_swf(name: str, args: List[str], n: int) -> IiaSwf:
        """
        Build a builtin SWF.

        :param name: majority, dictator, hierarchical, constant or indifference
        :type name: str
        :param args: the arguments after the name
        :type args: List[str]
        :param n: number of individuals
        :type n: int

        :return: the SWF
        :rtype: IiaSwf

        :raises ParseError: on an unknown name or malformed arguments
        """
        if name == "majority" and not args:
            return pairwise_majority(n)
        if name == "indifference" and not args:
            return indifference_swf(n)
        if name == "dictator" and len(args) == 1:
            return dictator(_integer(args[0], name), n)
        if name == "hierarchical" and len(args) == 1:
            order = [_integer(i, name) for i in args[0].split(",")]
            return hierarchical_dictator(order, n)
        if name == "constant" and len(args) == 1:
            return constant_swf(PreferenceRelation.from_symbols(args[0]), n)
        raise ParseError(
            f"unknown builtin {':'.join([name] + args)!r}; expected majority, "
            f"dictator:<i>, hierarchical:<i,j,...>, constant:<t1t2t3> or "
            f"indifference"
        )

    @staticmethod
    def resolve_swf(target: str, default_individuals: int = 3) -> IiaSwf:
        """
        Resolve an SWF argument: a file path or a builtin name.

        Builtin names may carry a ``builtin`` prefix and use ``:`` or ``-`` as
        separator, e.g. ``builtin:majority:3``, ``dictator-1`` or
        ``hierarchical:1,2:2``; a missing N defaults to
        ``default_individuals``.

        :param target: path or builtin name
        :type target: str
        :param default_individuals: N when the name omits it
        :type default_individuals: int

        :return: the SWF
        :rtype: IiaSwf

        :raises ParseError: on an unknown name
        """
        if os.path.isfile(target):
            return DataCenter.load_swf(target)
        parts = [p for p in re.split(r"[:\-]", target) if p]
        if parts and parts[0] == "builtin":
            parts = parts[1:]
        if not parts or parts[0] not in _BUILTINS:
            raise ParseError(f"no such file or builtin SWF: {target!r}")
        name, args, n = _split_builtin(parts, default_individuals)
        return DataCenter.builtin_swf(name, args, n)

    @staticmethod
    def parse_swf(text: str) -> IiaSwf:
        """
        Parse the SWF text format.

        :param text: file content
        :type text: str

        :return: the SWF
        :rtype: IiaSwf

        :raises ParseError: on malformed lines
        :raises LoadError: on missing, duplicated or extra tables and inputs
        """
        lines = _content_lines(text)
        if not lines:
            raise ParseError("empty SWF file", line=1, column=1)
        number, header = lines[0]
        match = _SWF_HEADER.match(header)
        if match is None:
            raise ParseError("expected 'swf N=<n>'", line=number, column=1)
        n = int(match.group(1))
        body = lines[1:]
        if body and body[0][1].split()[0] == "builtin":
            number, line = body[0]
            tokens = line.split()
            if len(tokens) < 2:
                raise ParseError("expected a builtin name", line=number,
                                 column=len(line) + 1)
            if len(body) > 1:
                raise ParseError("unexpected content after builtin",
                                 line=body[1][0], column=1)
            parts = [p for p in re.split(r"[:\s]+", " ".join(tokens[1:])) if p]
            name, args, named_n = _split_builtin(parts, n)
            if named_n != n:
                raise LoadError(
                    f"line {number}: builtin {name!r} names N = {named_n} "
                    f"but the header says N = {n}"
                )
            return DataCenter.builtin_swf(name, args, n)
        return DataCenter._parse_tables(body, n)

    @staticmethod
    def _parse_tables(body: List[Line], n: int) -> IiaSwf:
        tables: Dict[int, Dict[PairwisePreferences, TernaryValue]] = {}
        current: Optional[int] = None
        for number, line in body:
            match = _COMPONENT.match(line)
            if match is not None:
                current = int(match.group(1))
                if not 1 <= current <= NUM_ALTERNATIVES:
                    raise LoadError(
                        f"line {number}: component {current} outside 1..3"
                    )
                if current in tables:
                    raise LoadError(
                        f"line {number}: component {current} appears twice"
                    )
                tables[current] = {}
                continue
            if current is None:
                raise ParseError("expected 'component <j>'",
                                 line=number, column=1)
            tokens = line.split()
            if len(tokens) != 2:
                raise ParseError("expected '<input-tuple> <output>'",
                                 line=number, column=1)
            if len(tokens[0]) != n:
                raise ParseError(
                    f"input tuple needs {n} symbols, got {len(tokens[0])}",
                    line=number, column=1,
                )
            row = PairwisePreferences(_tuple_symbols(tokens[0], number, 1))
            if len(tokens[1]) != 1:
                raise ParseError(f"unknown ternary symbol {tokens[1]!r}",
                                 line=number, column=_column_of(line, 1))
            value = _symbol(tokens[1], number, _column_of(line, 1))
            if row in tables[current]:
                raise LoadError(
                    f"line {number}: component {current} lists "
                    f"{row.symbols} twice"
                )
            tables[current][row] = value
        components = []
        for j in range(1, NUM_ALTERNATIVES + 1):
            if j not in tables:
                raise LoadError(f"component {j} is missing")
            table = tables[j]
            for row in enumerate_pairs(n):
                if row not in table:
                    raise LoadError(
                        f"component {j} has no output for {row.symbols}"
                    )
            components.append(PairwiseComparisonFunction(
                [table[row] for row in enumerate_pairs(n)], n
            ))
        logger.debug("loaded explicit SWF tables for N = %d", n)
        return IiaSwf(components, name="custom")

    @staticmethod
    def load_swf(path: str) -> IiaSwf:
        """
        Load an SWF file; the SWF is named after the file.

        :param path: file path
        :type path: str

        :return: the SWF
        :rtype: IiaSwf
        """
        swf = DataCenter.parse_swf(DataCenter.read_text(path))
        if swf.name == "custom":
            swf.name = os.path.basename(path)
        return swf

    @staticmethod
    def dump_swf(swf: IiaSwf) -> str:
        """
        Render an SWF as explicit component tables.

        :param swf: the SWF
        :type swf: IiaSwf

        :return: the text, newline terminated
        :rtype: str
        """
        lines = [f"swf N={swf.n}"]
        for j, component in enumerate(swf.components, start=1):
            lines.append(f"component {j}")
            lines.extend(
                f"{row.symbols} {value.symbol}"
                for row, value in component.items()
            )
        return "\n".join(lines) + "\n"
