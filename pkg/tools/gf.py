"""Finite fields GF(p^m) built from an explicit irreducible modulus.

Field elements are coefficient vectors (c0, ..., c_{m-1}) over F_p, where c_i is the
coefficient of theta^i for theta the residue class of x. The additive group of the field is
Z_p^m with the coefficient vector as coordinates, so field elements and group elements
share one rank.
"""

import logging
from itertools import product
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from tools.errors import (
    CapacityError,
    FieldConstructionError,
    IndexRangeError,
    InvalidPolynomialError,
    ZeroElementError,
)
from tools.group_core import GroupElement, GroupSpec
from tools.number_theory import is_prime, prime_divisors

logger = logging.getLogger(__name__)

DEFAULT_MAX_ORDER = 2**20

FieldElement = Tuple[int, ...]


class FieldSpec(BaseModel):
    """Prime, extension degree and monic modulus (ascending coefficients c0..cm)."""

    model_config = ConfigDict(frozen=True)

    p: int = Field(..., ge=2, description="Characteristic")
    m: int = Field(..., ge=1, description="Extension degree")
    modulus: Tuple[int, ...] = Field(..., description="Coefficients c0, ..., cm of the modulus")

    @field_validator("p")
    @classmethod
    def validate_prime(cls, v: int) -> int:
        if not is_prime(v):
            raise ValueError(f"p={v} is not prime")
        return v

    @model_validator(mode="after")
    def validate_modulus_shape(self) -> "FieldSpec":
        if len(self.modulus) != self.m + 1:
            raise ValueError(
                f"Modulus of degree {self.m} needs {self.m + 1} coefficients, got {len(self.modulus)}"
            )
        if any(not 0 <= c < self.p for c in self.modulus):
            raise ValueError(f"Modulus coefficients must lie in [0, {self.p})")
        return self

    @property
    def q(self) -> int:
        return self.p**self.m

    @property
    def modulus_literal(self) -> str:
        return ",".join(str(c) for c in self.modulus)


# ---------------------------------------------------------------------------
# Polynomials over F_p as trimmed ascending coefficient lists ([] is zero)
# ---------------------------------------------------------------------------


def _trim(a: List[int]) -> List[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_sub(a: Sequence[int], b: Sequence[int], p: int) -> List[int]:
    n = max(len(a), len(b))
    a = list(a) + [0] * (n - len(a))
    b = list(b) + [0] * (n - len(b))
    return _trim([(x - y) % p for x, y in zip(a, b)])


def _poly_mul(a: Sequence[int], b: Sequence[int], p: int) -> List[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return _trim(out)


def _poly_mod(a: Sequence[int], b: Sequence[int], p: int) -> List[int]:
    a = _trim(list(a))
    inv_lead = pow(b[-1], -1, p)
    while len(a) >= len(b):
        coef = a[-1] * inv_lead % p
        shift = len(a) - len(b)
        for i, y in enumerate(b):
            a[shift + i] = (a[shift + i] - coef * y) % p
        _trim(a)
    return a


def _poly_gcd(a: Sequence[int], b: Sequence[int], p: int) -> List[int]:
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        a, b = b, _poly_mod(a, b, p)
    if a:
        inv_lead = pow(a[-1], -1, p)
        a = [c * inv_lead % p for c in a]
    return a


def _poly_powmod(base: Sequence[int], e: int, mod: Sequence[int], p: int) -> List[int]:
    result = [1]
    base = _poly_mod(base, mod, p)
    while e:
        if e & 1:
            result = _poly_mod(_poly_mul(result, base, p), mod, p)
        base = _poly_mod(_poly_mul(base, base, p), mod, p)
        e >>= 1
    return result


def poly_is_irreducible(p: int, coeffs: Sequence[int]) -> bool:
    """Decide irreducibility of a monic polynomial over F_p.

    A monic f of degree m is reducible iff it has an irreducible factor of degree
    k <= m/2, i.e. iff gcd(f, x^(p^k) - x) != 1 for some such k.
    """
    if not is_prime(p):
        raise InvalidPolynomialError(f"p={p} is not prime")
    coeffs = [int(c) for c in coeffs]
    if len(coeffs) < 2:
        raise InvalidPolynomialError("Polynomial must have degree >= 1")
    if any(not 0 <= c < p for c in coeffs):
        raise InvalidPolynomialError(f"Coefficients must lie in [0, {p})")
    if coeffs[-1] != 1:
        raise InvalidPolynomialError(f"Polynomial {coeffs} is not monic (last coefficient must be 1)")

    m = len(coeffs) - 1
    x = _poly_mod([0, 1], coeffs, p)
    h = x
    for k in range(1, m // 2 + 1):
        h = _poly_powmod(h, p, coeffs, p)
        if len(_poly_gcd(coeffs, _poly_sub(h, x, p), p)) > 1:
            logger.debug(f"{coeffs} has a factor of degree dividing {k} over F_{p}")
            return False
    return True


def default_modulus(p: int, m: int) -> Tuple[int, ...]:
    """Lexicographically smallest monic irreducible of degree m (order c0, ..., cm)."""
    for lower in product(range(p), repeat=m):
        candidate = tuple(lower) + (1,)
        if poly_is_irreducible(p, candidate):
            return candidate
    raise FieldConstructionError(f"No irreducible polynomial of degree {m} over F_{p}")


# ---------------------------------------------------------------------------
# Field tables
# ---------------------------------------------------------------------------


class FieldTable:
    """GF(p^m) with exponentiation and discrete-log tables for a primitive element theta."""

    def __init__(self, spec: FieldSpec, group: GroupSpec, exp_table: np.ndarray):
        self.spec = spec
        self.group = group
        self.p = spec.p
        self.m = spec.m
        self.q = spec.q

        exp_table = np.asarray(exp_table, dtype=np.int64)
        log_table = np.full(self.q, -1, dtype=np.int64)
        log_table[exp_table] = np.arange(self.q - 1)
        exp_table.flags.writeable = False
        log_table.flags.writeable = False
        self.exp_table = exp_table
        self.log_table = log_table

    def __repr__(self) -> str:
        return f"FieldTable(q={self.q}, modulus={list(self.spec.modulus)}, theta={format_vector(self.theta)})"

    @property
    def theta_rank(self) -> int:
        return int(self.exp_table[1 % (self.q - 1)])

    @property
    def theta(self) -> FieldElement:
        return self.vector(self.theta_rank)

    @property
    def one_rank(self) -> int:
        return int(self.exp_table[0])

    @property
    def minus_one_rank(self) -> int:
        return int(self.group.neg_ranks([self.one_rank])[0])

    def vector(self, rank: int) -> FieldElement:
        return self.group.unrank(rank)

    def rank_of(self, x: Sequence[int]) -> int:
        return self.group.rank(x)

    def log(self, rank: int) -> int:
        if rank == 0:
            raise ZeroElementError("Zero has no discrete logarithm")
        return int(self.log_table[rank])

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return int(self.exp_table[(self.log_table[a] + self.log_table[b]) % (self.q - 1)])

    def scale(self, ranks: Sequence[int], t: int) -> np.ndarray:
        """Multiply nonzero elements (by rank) by theta^t."""
        logs = self.log_table[np.asarray(ranks, dtype=np.int64)]
        return self.exp_table[(logs + t) % (self.q - 1)]

    def power(self, a: int, e: int) -> int:
        if a == 0:
            if e <= 0:
                raise ZeroElementError("Zero has no nonpositive powers")
            return 0
        return int(self.exp_table[(self.log_table[a] * e) % (self.q - 1)])

    def inverse(self, a: int) -> int:
        if a == 0:
            raise ZeroElementError("Zero has no inverse")
        return self.power(a, -1)


class FieldEmbedding:
    """Bijection between field coefficient vectors and elements of Z_p^m."""

    def __init__(self, field: FieldTable):
        self.field = field
        self.group = field.group

    def to_group(self, x: Sequence[int]) -> GroupElement:
        return self.group.check_element(x)

    def to_field(self, g: Sequence[int]) -> FieldElement:
        return self.group.check_element(g)


def format_vector(x: Sequence[int]) -> str:
    """Compact '(c0c1...)' notation; comma separated when a digit can exceed 9."""
    if any(c > 9 for c in x):
        return "(" + ",".join(str(c) for c in x) + ")"
    return "(" + "".join(str(c) for c in x) + ")"


def _vec_mul(a: Sequence[int], b: Sequence[int], spec: FieldSpec) -> FieldElement:
    reduced = _poly_mod(_poly_mul(_trim(list(a)), _trim(list(b)), spec.p), spec.modulus, spec.p)
    return tuple(reduced + [0] * (spec.m - len(reduced)))


def _vec_pow(a: Sequence[int], e: int, spec: FieldSpec) -> FieldElement:
    result: FieldElement = (1,) + (0,) * (spec.m - 1)
    base = tuple(a)
    while e:
        if e & 1:
            result = _vec_mul(result, base, spec)
        base = _vec_mul(base, base, spec)
        e >>= 1
    return result


def _vector_order(x: Sequence[int], spec: FieldSpec) -> int:
    order = spec.q - 1
    one = (1,) + (0,) * (spec.m - 1)
    for r in prime_divisors(spec.q - 1):
        while order % r == 0 and _vec_pow(x, order // r, spec) == one:
            order //= r
    return order


def _x_power_cycle(spec: FieldSpec) -> List[FieldElement]:
    """Powers 1, x, x^2, ... until x^t returns to 1 (shift-and-reduce recursion)."""
    p, m = spec.p, spec.m
    tail = [(-c) % p for c in spec.modulus[:m]]
    one = [1] + [0] * (m - 1)
    v = list(one)
    powers: List[FieldElement] = []
    for _ in range(spec.q - 1):
        powers.append(tuple(v))
        carry = v[-1]
        v = [0] + v[:-1]
        if carry:
            v = [(c + carry * t) % p for c, t in zip(v, tail)]
        if v == one or not any(v):
            break
    return powers


def field_new(spec: FieldSpec, max_order: int = DEFAULT_MAX_ORDER) -> FieldTable:
    """Build exp/log tables; theta is x when primitive, else the smallest-rank primitive element."""
    if spec.q > max_order:
        raise CapacityError(f"q={spec.q} exceeds the table bound {max_order}")
    if not poly_is_irreducible(spec.p, spec.modulus):
        raise FieldConstructionError(
            f"Modulus {spec.modulus_literal} is reducible over F_{spec.p}"
        )

    group = GroupSpec([spec.p] * spec.m)
    powers = _x_power_cycle(spec)
    if len(powers) != spec.q - 1:
        theta: Optional[FieldElement] = None
        for r in range(1, spec.q):
            candidate = group.unrank(r)
            if _vector_order(candidate, spec) == spec.q - 1:
                theta = candidate
                break
        if theta is None:
            raise FieldConstructionError(f"No primitive element found in GF({spec.q})")
        logger.info(
            f"x is not primitive modulo {spec.modulus_literal}; using theta={format_vector(theta)}"
        )
        powers = [(1,) + (0,) * (spec.m - 1)]
        for _ in range(spec.q - 2):
            powers.append(_vec_mul(powers[-1], theta, spec))

    exp_table = group.ranks_of(np.array(powers, dtype=np.int64))
    field = FieldTable(spec, group, exp_table)
    logger.debug(f"Built {field!r}")
    return field


def _check_nonzero(f: FieldTable, x: Sequence[int]) -> FieldElement:
    x = f.group.check_element(x)
    if not any(x):
        raise ZeroElementError("The zero element has no multiplicative order")
    return x


def element_order(f: FieldTable, x: Sequence[int]) -> int:
    """Exact multiplicative order, by stripping prime factors r of q-1 while x^(order/r) = 1."""
    return _vector_order(_check_nonzero(f, x), f.spec)


def is_primitive(f: FieldTable, x: Sequence[int]) -> bool:
    return element_order(f, x) == f.q - 1


def order_witnesses(f: FieldTable, x: Sequence[int]) -> Dict[int, FieldElement]:
    """x^((q-1)/r) for every prime r | q-1; x is primitive iff none of them is 1."""
    x = _check_nonzero(f, x)
    exponents = sorted((f.q - 1) // r for r in prime_divisors(f.q - 1))
    return {e: _vec_pow(x, e, f.spec) for e in exponents}


def power_vector(f: FieldTable, t: int) -> FieldElement:
    if not 0 <= t < f.q - 1:
        raise IndexRangeError(f"Exponent {t} outside [0, {f.q - 1})")
    return f.vector(int(f.exp_table[t]))


def additive_group(f: FieldTable) -> Tuple[GroupSpec, FieldEmbedding]:
    return f.group, FieldEmbedding(f)
