"""Cyclotomic classes of order e in GF(q) and the cyclotomic numbers (i, j)_e.

C_lam = theta^lam * <theta^e> for 0 <= lam < e, and (i, j)_e = #{x in C_i : 1 + x in C_j}.
Class labels depend on the primitive element theta recorded by the field table.
"""

import logging
from typing import Any, Dict, List, Sequence

import numpy as np
import pandas as pd
from pydantic import BaseModel, Field

from tools.errors import (
    DivisibilityError,
    IndexRangeError,
    UnsupportedParityError,
    ZeroElementError,
)
from tools.gf import FieldTable, additive_group, format_vector
from tools.group_core import GroupSet, Multiset, multiset_difference

logger = logging.getLogger(__name__)

MAX_LISTED_VIOLATIONS = 20


class CyclotomicSystem:
    """The e cyclotomic classes of GF(q), as sets of additive-group ranks."""

    def __init__(self, field: FieldTable, e: int):
        if e < 2:
            raise IndexRangeError(f"Cyclotomic order must be >= 2, got {e}")
        if (field.q - 1) % e:
            raise DivisibilityError(f"e={e} does not divide q-1={field.q - 1}")

        self.field = field
        self.group, self.embedding = additive_group(field)
        self.e = e
        self.f = (field.q - 1) // e

        class_of = np.arange(field.q - 1, dtype=np.int64) % e
        class_index = np.full(field.q, -1, dtype=np.int64)
        class_index[field.exp_table] = class_of
        class_of.flags.writeable = False
        class_index.flags.writeable = False
        self.class_of = class_of
        self.class_index = class_index
        self.classes: List[GroupSet] = [
            GroupSet(self.group, np.flatnonzero(class_index == lam)) for lam in range(e)
        ]

    def __repr__(self) -> str:
        return f"CyclotomicSystem(q={self.field.q}, e={self.e}, f={self.f})"

    def cls(self, r: int) -> GroupSet:
        """C_r with the index taken modulo e."""
        return self.classes[r % self.e]

    def class_of_rank(self, rank: int) -> int:
        return int(self.class_index[rank])

    def class_of_element(self, x: Sequence[int]) -> int:
        """Class label of a nonzero field element given as a coefficient vector."""
        rank = self.group.rank(self.embedding.to_group(x))
        if rank == 0:
            raise ZeroElementError("Zero lies in no cyclotomic class")
        return self.class_of_rank(rank)

    def describe(self) -> Dict[str, Any]:
        """Parameters that pin the class labelling."""
        spec = self.field.spec
        return {
            "p": spec.p,
            "m": spec.m,
            "modulus": list(spec.modulus),
            "theta": format_vector(self.field.theta),
            "e": self.e,
        }


class CyclotomicTable:
    """The e x e matrix of cyclotomic numbers; indices are read modulo e."""

    def __init__(self, e: int, f: int, numbers: np.ndarray):
        numbers = np.asarray(numbers, dtype=np.int64)
        numbers.flags.writeable = False
        self.e = e
        self.f = f
        self.numbers = numbers

    def __call__(self, i: int, j: int) -> int:
        return int(self.numbers[i % self.e, j % self.e])

    def diagonal(self) -> List[int]:
        return [int(v) for v in np.diagonal(self.numbers)]

    def to_frame(self) -> pd.DataFrame:
        frame = pd.DataFrame(self.numbers, index=range(self.e), columns=range(self.e))
        frame.index.name = "i"
        return frame


class IdentityCheck(BaseModel):
    name: str
    holds: bool
    asserted: bool = Field(default=True, description="False for informational entries")
    violations: List[str] = Field(default_factory=list)


class IdentityReport(BaseModel):
    q: int
    e: int
    f: int
    checks: List[IdentityCheck]

    @property
    def all_hold(self) -> bool:
        return all(c.holds for c in self.checks if c.asserted)

    def check(self, name: str) -> IdentityCheck:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)


def cyclotomic_system(field: FieldTable, e: int) -> CyclotomicSystem:
    system = CyclotomicSystem(field, e)
    logger.debug(f"Built {system!r}")
    return system


def cyclotomic_numbers(sys: CyclotomicSystem) -> CyclotomicTable:
    """Direct enumeration: every nonzero x != -1 adds one to (class(x), class(1+x))."""
    field = sys.field
    xs = np.flatnonzero(sys.class_index >= 0)
    ys = field.group.add_ranks(xs, [field.one_rank]).ravel()
    keep = ys != 0
    numbers = np.zeros((sys.e, sys.e), dtype=np.int64)
    np.add.at(numbers, (sys.class_index[xs[keep]], sys.class_index[ys[keep]]), 1)
    return CyclotomicTable(sys.e, sys.f, numbers)


def _pairs_violating(e: int, pred) -> List[str]:
    bad = [f"({i},{j})" for i in range(e) for j in range(e) if not pred(i, j)]
    return bad[:MAX_LISTED_VIOLATIONS]


def delta_c0_via_table(
    sys: CyclotomicSystem, table: CyclotomicTable, allow_odd: bool = False
) -> Multiset:
    """Delta(C0, C0) = f*{0} + sum_lam (e-lam, e-lam)_e * C_lam."""
    if sys.f % 2 and not allow_odd:
        raise UnsupportedParityError(f"Formula is only supported for even f (f={sys.f})")
    counts = np.zeros(sys.group.order, dtype=np.int64)
    counts[0] = sys.f
    for lam, members in enumerate(sys.classes):
        counts[members.as_array()] += table(sys.e - lam, sys.e - lam)
    return Multiset(sys.group, counts)


def verify_cyclotomic_identities(sys: CyclotomicSystem, table: CyclotomicTable) -> IdentityReport:
    """Check the standard identities of cyclotomic classes and numbers on a computed table."""
    field, e, f = sys.field, sys.e, sys.f
    checks: List[IdentityCheck] = []

    coset_bad = []
    c0 = sys.classes[0].as_array()
    for r in range(2 * e):
        image = np.sort(field.scale(c0, r))
        if not np.array_equal(image, sys.cls(r).as_array()):
            coset_bad.append(f"C_{r}")
    checks.append(IdentityCheck(name="coset_periodicity", holds=not coset_bad, violations=coset_bad))

    minus_one = field.minus_one_rank
    row_bad = []
    for i in range(e):
        expected = f - (1 if sys.class_of_rank(minus_one) == i else 0)
        if int(table.numbers[i].sum()) != expected:
            row_bad.append(f"row {i}: {int(table.numbers[i].sum())} != {expected}")
    checks.append(IdentityCheck(name="row_sums", holds=not row_bad, violations=row_bad))

    bad = _pairs_violating(e, lambda i, j: table(i, j) == table(-i, j - i))
    checks.append(IdentityCheck(name="inversion", holds=not bad, violations=bad))

    p = field.p
    bad = _pairs_violating(e, lambda i, j: table(i, j) == table(p * i, p * j))
    checks.append(IdentityCheck(name="frobenius", holds=not bad, violations=bad))

    if f % 2 == 0:
        bad = []
        if sys.class_of_rank(minus_one) != 0:
            bad.append("-1 not in C_0")
        for lam, members in enumerate(sys.classes):
            if set(field.group.neg_ranks(members.members).tolist()) != set(members.members):
                bad.append(f"-C_{lam} != C_{lam}")
        bad += _pairs_violating(e, lambda i, j: table(i, j) == table(j, i))
        checks.append(IdentityCheck(name="even_f_symmetry", holds=not bad, violations=bad))
    elif p % 2:
        half = e // 2
        bad = []
        if sys.class_of_rank(minus_one) != half:
            bad.append(f"-1 not in C_{half}")
        bad += _pairs_violating(e, lambda i, j: table(i, j) == table(j + half, i + half))
        checks.append(IdentityCheck(name="odd_f_reflection", holds=not bad, violations=bad))

    via_table = delta_c0_via_table(sys, table, allow_odd=True)
    direct = multiset_difference(sys.group, sys.classes[0], sys.classes[0])
    diff = np.flatnonzero(via_table.counts != direct.counts)[:MAX_LISTED_VIOLATIONS]
    checks.append(
        IdentityCheck(
            name="difference_formula",
            holds=diff.size == 0,
            asserted=f % 2 == 0,
            violations=[f"rank {int(r)}" for r in diff],
        )
    )

    report = IdentityReport(q=field.q, e=e, f=f, checks=checks)
    if not report.all_hold:
        logger.error(f"Identity violations for q={field.q}, e={e}: "
                     f"{[c.name for c in checks if c.asserted and not c.holds]}")
    return report
