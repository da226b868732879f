"""Parsers for the command-line literals: set families, moduli and group factors."""

import logging
from typing import List

from tools.errors import SetLiteralError

logger = logging.getLogger(__name__)


def parse_int_list(text: str, what: str = "list") -> List[int]:
    """'1,2,1,1,1,1' -> [1, 2, 1, 1, 1, 1]; whitespace around entries is ignored."""
    if text is None or not text.strip():
        raise SetLiteralError(f"Empty {what} literal")
    values = []
    for token in text.split(","):
        token = token.strip()
        try:
            values.append(int(token))
        except ValueError:
            raise SetLiteralError(f"Bad entry {token!r} in {what} literal {text!r}") from None
    return values


def parse_set_literal(text: str) -> List[List[int]]:
    """Sets separated by ';', ranks separated by ',': '1,4;2,3' -> [[1, 4], [2, 3]].

    Members are returned sorted; repeated or negative ranks are rejected.
    """
    if text is None or not text.strip():
        raise SetLiteralError("Empty set literal")
    sets = []
    for i, chunk in enumerate(text.split(";")):
        members = parse_int_list(chunk, what=f"set {i}")
        if any(r < 0 for r in members):
            raise SetLiteralError(f"Set {i} has a negative rank: {chunk!r}")
        if len(set(members)) != len(members):
            raise SetLiteralError(f"Set {i} repeats a rank: {chunk!r}")
        sets.append(sorted(members))
    logger.debug(f"Parsed {len(sets)} sets from {text!r}")
    return sets


def parse_factors(text: str) -> List[int]:
    """Group factors '3,3' -> [3, 3] (Z_3 x Z_3); a single '13' is Z_13."""
    return parse_int_list(text, what="group")
