# _*_ coding: utf-8 -*-
"""
This module defines some useful functions.

Functions:
    - :py:function:`standard_error` binomial standard error of a frequency.
    - :py:function:`normal_interval` normal-approximation confidence interval.
    - :py:function:`render_text` line-oriented ``key: value`` report.
    - :py:function:`render_json` structured report document.
    - :py:function:`emit` write a report to stdout or a file.
"""

__author__ = "Mir Sazzat Hossain"

import json
import sys
from typing import Iterable, Optional, Tuple

import numpy as np


def standard_error(p: float, trials: int) -> float:
    """
    Calculate the standard error of an estimated probability.

    :param p: estimated probability
    :type p: float
    :param trials: number of trials
    :type trials: int

    :return: sqrt(p (1 - p) / trials)
    :rtype: float
    """
    return float(np.sqrt(p * (1 - p) / trials))


def normal_interval(
        p: float, se: float, z: float = 1.96) -> Tuple[float, float]:
    """
    Calculate a normal-approximation confidence interval.

    :param p: estimate
    :type p: float
    :param se: standard error of the estimate
    :type se: float
    :param z: critical value, 1.96 for 95%
    :type z: float

    :return: (lower, upper), clipped to [0, 1]
    :rtype: Tuple[float, float]
    """
    return max(0.0, p - z * se), min(1.0, p + z * se)


def render_text(items: Iterable[Tuple[str, str]]) -> str:
    """
    Render report items as ``key: value`` lines.

    :param items: (key, value) pairs in report order
    :type items: Iterable[Tuple[str, str]]

    :return: the report, newline terminated
    :rtype: str
    """
    return "".join(f"{key}: {value}\n" for key, value in items)


def render_json(document: dict) -> str:
    """
    Render a report document as JSON with the keys in report order.

    :param document: the structured report
    :type document: dict

    :return: the JSON text, newline terminated
    :rtype: str
    """
    return json.dumps(document, indent=2, ensure_ascii=False) + "\n"


def emit(text: str, out: Optional[str] = None) -> None:
    """
    Write a report to a file, or to stdout when no path is given.

    :param text: the report
    :type text: str
    :param out: output path
    :type out: str
    """
    if out is None:
        sys.stdout.write(text)
        return
    with open(out, "w", encoding="utf8") as out_file:
        out_file.write(text)
