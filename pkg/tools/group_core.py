"""Finite abelian groups as products of cyclic factors, and the multiset algebra over them.

Elements are coordinate tuples; every element also has a dense rank in [0, n) given by
mixed-radix positional notation with factors[0] the most significant digit. All difference
computations work on ranks so a multiset is simply a length-n count vector.
"""

import logging
from functools import cached_property
from math import gcd, lcm, prod
from typing import Iterable, List, Optional, Sequence, Tuple

import numpy as np

from tools.errors import EmptySetError, InvalidElementError, InvalidGroupError, ParameterError

logger = logging.getLogger(__name__)

GroupElement = Tuple[int, ...]


class GroupSpec:
    """Z_{f0} x Z_{f1} x ... x Z_{ft} with precomputed rank maps."""

    def __init__(self, factors: Sequence[int]):
        factors = tuple(int(f) for f in factors)
        if not factors:
            raise InvalidGroupError("Group needs at least one cyclic factor")
        if any(f < 2 for f in factors):
            raise InvalidGroupError(f"Every cyclic factor must be >= 2, got {list(factors)}")

        self.factors: Tuple[int, ...] = factors
        self.order: int = prod(factors)
        self._modulus = np.array(factors, dtype=np.int64)
        self._weights = np.array(
            [prod(factors[t + 1 :]) for t in range(len(factors))], dtype=np.int64
        )
        coords = np.stack(np.unravel_index(np.arange(self.order), factors), axis=1)
        self.coords: np.ndarray = coords.astype(np.int64)
        self.coords.flags.writeable = False

    def __repr__(self) -> str:
        return f"GroupSpec(factors={list(self.factors)})"

    def __eq__(self, other: object) -> bool:
        return isinstance(other, GroupSpec) and self.factors == other.factors

    def __hash__(self) -> int:
        return hash(self.factors)

    @property
    def label(self) -> str:
        return " x ".join(f"Z_{f}" for f in self.factors)

    @cached_property
    def exponent(self) -> int:
        return lcm(*self.factors)

    def check_element(self, elem: Sequence[int]) -> GroupElement:
        if len(elem) != len(self.factors):
            raise InvalidElementError(
                f"Element {tuple(elem)} has {len(elem)} coordinates, group has {len(self.factors)}"
            )
        for c, f in zip(elem, self.factors):
            if not 0 <= c < f:
                raise InvalidElementError(f"Coordinate {c} out of range for factor Z_{f}")
        return tuple(int(c) for c in elem)

    def check_rank(self, r: int) -> int:
        if not 0 <= r < self.order:
            raise InvalidElementError(f"Rank {r} outside [0, {self.order})")
        return int(r)

    def rank(self, elem: Sequence[int]) -> int:
        elem = self.check_element(elem)
        return int(np.dot(np.array(elem, dtype=np.int64), self._weights))

    def unrank(self, r: int) -> GroupElement:
        return tuple(int(c) for c in self.coords[self.check_rank(r)])

    def ranks_of(self, coords: np.ndarray) -> np.ndarray:
        """Reduce coordinate rows modulo the factors and return their ranks."""
        return (np.asarray(coords, dtype=np.int64) % self._modulus) @ self._weights

    def sub_ranks(self, a: Sequence[int], b: Sequence[int]) -> np.ndarray:
        """Matrix of ranks of a_i - b_j, shape (len(a), len(b))."""
        ca = self.coords[np.asarray(a, dtype=np.int64)]
        cb = self.coords[np.asarray(b, dtype=np.int64)]
        return self.ranks_of(ca[:, None, :] - cb[None, :, :])

    def add_ranks(self, a: Sequence[int], b: Sequence[int]) -> np.ndarray:
        """Matrix of ranks of a_i + b_j, shape (len(a), len(b))."""
        ca = self.coords[np.asarray(a, dtype=np.int64)]
        cb = self.coords[np.asarray(b, dtype=np.int64)]
        return self.ranks_of(ca[:, None, :] + cb[None, :, :])

    def neg_ranks(self, a: Sequence[int]) -> np.ndarray:
        return self.ranks_of(-self.coords[np.asarray(a, dtype=np.int64)])

    def scale_ranks(self, a: Sequence[int], u: int) -> np.ndarray:
        return self.ranks_of(u * self.coords[np.asarray(a, dtype=np.int64)])

    @cached_property
    def difference_table(self) -> np.ndarray:
        """Full n x n table of rank(a - b). Only meant for small search groups."""
        table = self.sub_ranks(np.arange(self.order), np.arange(self.order))
        table.flags.writeable = False
        return table

    def units(self) -> List[int]:
        """Multipliers u with x -> u*x an automorphism of the group."""
        return [u for u in range(1, self.exponent) if gcd(u, self.exponent) == 1] or [1]


class GroupSet:
    """A subset of a group, stored as strictly increasing element ranks."""

    def __init__(self, group: GroupSpec, members: Iterable[int]):
        members = [int(r) for r in members]
        ordered = sorted(members)
        if len(set(ordered)) != len(ordered):
            raise InvalidElementError(f"Set has repeated elements: {members}")
        for r in ordered:
            group.check_rank(r)
        self.group = group
        self.members: Tuple[int, ...] = tuple(ordered)

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    def __contains__(self, r: object) -> bool:
        return r in self.members

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, GroupSet)
            and self.group == other.group
            and self.members == other.members
        )

    def __hash__(self) -> int:
        return hash((self.group.factors, self.members))

    def __repr__(self) -> str:
        return f"GroupSet({list(self.members)})"

    def as_array(self) -> np.ndarray:
        return np.array(self.members, dtype=np.int64)

    def indicator(self) -> np.ndarray:
        vec = np.zeros(self.group.order, dtype=np.int64)
        vec[self.as_array()] = 1
        return vec


class Multiset:
    """Nonnegative count vector indexed by element rank."""

    def __init__(self, group: GroupSpec, counts: Sequence[int]):
        arr = np.array(counts, dtype=np.int64)
        if arr.shape != (group.order,):
            raise InvalidElementError(
                f"Multiset needs {group.order} counts, got shape {arr.shape}"
            )
        if (arr < 0).any():
            raise InvalidElementError("Multiset counts must be nonnegative")
        arr.flags.writeable = False
        self.group = group
        self.counts = arr

    def __getitem__(self, r: int) -> int:
        return int(self.counts[r])

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, Multiset)
            and self.group == other.group
            and np.array_equal(self.counts, other.counts)
        )

    def __add__(self, other: "Multiset") -> "Multiset":
        return Multiset(self.group, self.counts + other.counts)

    def __repr__(self) -> str:
        return f"Multiset(total={self.total}, support={len(self.support())})"

    @property
    def total(self) -> int:
        return int(self.counts.sum())

    def support(self) -> List[int]:
        return [int(r) for r in np.flatnonzero(self.counts)]

    @classmethod
    def from_ranks(cls, group: GroupSpec, ranks: Sequence[int]) -> "Multiset":
        return cls(group, np.bincount(np.asarray(ranks, dtype=np.int64), minlength=group.order))


def group_new(factors: Sequence[int]) -> GroupSpec:
    """Build Z_{f0} x ... x Z_{ft}.

    Args:
        factors: Cyclic factor orders, each >= 2.

    Returns:
        The group with its rank maps precomputed.

    Raises:
        InvalidGroupError: No factors or a factor below 2.
    """
    group = GroupSpec(factors)
    logger.debug(f"Created group {group.label} of order {group.order}")
    return group


def elem_add(g: GroupSpec, a: Sequence[int], b: Sequence[int]) -> GroupElement:
    """Coordinatewise a + b modulo the factors."""
    a, b = g.check_element(a), g.check_element(b)
    return tuple((x + y) % f for x, y, f in zip(a, b, g.factors))


def elem_neg(g: GroupSpec, a: Sequence[int]) -> GroupElement:
    a = g.check_element(a)
    return tuple((-x) % f for x, f in zip(a, g.factors))


def difference_counts(g: GroupSpec, ranks_a: Sequence[int], ranks_b: Sequence[int]) -> np.ndarray:
    """Counts of a - b over all pairs; inputs may repeat ranks (multiset operands)."""
    if len(ranks_a) == 0 or len(ranks_b) == 0:
        raise EmptySetError("Differences need nonempty operands")
    diffs = g.sub_ranks(ranks_a, ranks_b).ravel()
    return np.bincount(diffs, minlength=g.order).astype(np.int64)


def multiset_difference(g: GroupSpec, d1: GroupSet, d2: GroupSet) -> Multiset:
    """Delta(D1, D2) = {a1 - a2 : a1 in D1, a2 in D2} as a multiset.

    Args:
        g: Group the sets live in.
        d1: Minuend set.
        d2: Subtrahend set.

    Returns:
        Multiset of size |D1| * |D2| indexed by rank.

    Raises:
        EmptySetError: Either set is empty.
    """
    if len(d1) == 0 or len(d2) == 0:
        raise EmptySetError("Delta(D1, D2) needs |D1|, |D2| >= 1")
    return Multiset(g, difference_counts(g, d1.members, d2.members))


def multiset_constant_on_nonzero(g: GroupSpec, m: Multiset) -> Optional[int]:
    """Return lambda if m equals lambda * (G - {0}), else None."""
    counts = m.counts
    if counts[0] != 0:
        return None
    rest = counts[1:]
    if rest.size == 0 or (rest == rest[0]).all():
        return int(rest[0]) if rest.size else 0
    return None


def first_nonconstant(counts: np.ndarray) -> Optional[Tuple[int, int]]:
    """First (rank, count) breaking 'zero at 0, constant elsewhere', or None."""
    if counts[0] != 0:
        return 0, int(counts[0])
    bad = np.flatnonzero(counts[1:] != counts[1])
    if bad.size:
        r = int(bad[0]) + 1
        return r, int(counts[r])
    return None


def translate_set(g: GroupSpec, d: GroupSet, shift: int) -> GroupSet:
    """d + g where g is the element of rank shift."""
    return GroupSet(g, g.add_ranks(d.members, [g.check_rank(shift)]).ravel())


def scale_set(g: GroupSpec, d: GroupSet, u: int) -> GroupSet:
    """u * d for a multiplier u coprime to the group exponent.

    Raises:
        ParameterError: u is not a unit modulo the exponent.
    """
    if gcd(u, g.exponent) != 1:
        raise ParameterError(f"Multiplier {u} is not a unit modulo the exponent {g.exponent}")
    return GroupSet(g, g.scale_ranks(d.members, u))
