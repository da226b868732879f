"""Parameter enumeration, the cyclotomic scan over prime powers, and exhaustive SEDF search."""

import logging
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from tools.cyclotomy import cyclotomic_numbers, cyclotomic_system
from tools.edf import (
    DesignFamily,
    Provenance,
    SedfCertificate,
    feasible_lambda,
    sedf_from_cyclotomy,
    verify_sedf,
)
from tools.errors import CapacityError, ParameterError, WorkUnitError
from tools.gf import DEFAULT_MAX_ORDER, FieldSpec, default_modulus, field_new, format_vector
from tools.group_core import GroupSet, GroupSpec
from tools.number_theory import divisors, prime_powers_up_to
from tools.utils.task_runner import TaskRunner

logger = logging.getLogger(__name__)

Family = Tuple[Tuple[int, ...], ...]

# Largest group searched without an explicit node limit
SEARCH_MAX_ORDER = 64


class ParamTuple(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    n: int
    m: int
    k: int
    lambda_: int = Field(..., alias="lambda")
    trivial: bool = Field(default=False, description="The (n, n, 1, 1) partition into singletons")


class ScanRow(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    q: int
    p: int
    m: int
    modulus: str
    theta: str
    e: int
    f: int
    is_sedf: bool
    lambda_: Optional[int] = Field(default=None, alias="lambda")
    methods_agree: bool = True


class SearchResult(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    group: List[int]
    m: int
    k: int
    lambda_: Optional[int] = Field(default=None, alias="lambda")
    feasible: bool
    reason: Optional[str] = None
    partial: bool = False
    nodes_visited: int = 0
    use_automorphisms: bool = False
    certificates: List[SedfCertificate] = Field(default_factory=list)

    def families(self) -> List[DesignFamily]:
        group = GroupSpec(self.group)
        return [
            DesignFamily(group, [GroupSet(group, s) for s in cert.sets], cert.provenance)
            for cert in self.certificates
        ]


def feasible_tuples(n_max: int, m_min: int) -> List[ParamTuple]:
    """All (n, m, k, lambda) with n <= n_max, m >= m_min, m*k <= n and integral lambda.

    Args:
        n_max: Largest group order.
        m_min: Smallest number of sets; values below 2 are raised to 2.

    Returns:
        Tuples ordered by n, then m, then k. m = n with k = 1 is flagged trivial.
    """
    if n_max < 2:
        raise ParameterError(f"n_max must be >= 2, got {n_max}")
    tuples = []
    for n in range(2, n_max + 1):
        for m in range(max(m_min, 2), n + 1):
            for k in range(1, n // m + 1):
                lam = feasible_lambda(n, m, k)
                if lam is not None:
                    tuples.append(
                        ParamTuple(n=n, m=m, k=k, lambda_=lam, trivial=(m == n and k == 1))
                    )
    return tuples


def _scan_prime_power(
    q: int, p: int, m: int, m_min: int, max_order: int, modulus: Optional[Sequence[int]]
) -> List[ScanRow]:
    """One work unit: every cyclotomic order e >= m_min of GF(q)."""
    orders = [e for e in divisors(q - 1) if e >= max(m_min, 2)]
    if not orders:
        return []
    spec = FieldSpec(p=p, m=m, modulus=tuple(modulus) if modulus else default_modulus(p, m))
    field = field_new(spec, max_order=max_order)
    rows = []
    for e in orders:
        system = cyclotomic_system(field, e)
        result = sedf_from_cyclotomy(system, cyclotomic_numbers(system))
        rows.append(
            ScanRow(
                q=q,
                p=p,
                m=m,
                modulus=spec.modulus_literal,
                theta=format_vector(field.theta),
                e=e,
                f=system.f,
                is_sedf=result.certificate.valid,
                lambda_=result.certificate.params.lambda_,
                methods_agree=result.criterion.agrees,
            )
        )
    return rows


def scan_cyclotomic(
    q_max: int,
    m_min: int,
    max_order: int = DEFAULT_MAX_ORDER,
    runner: Optional[TaskRunner] = None,
    moduli: Optional[Dict[int, Sequence[int]]] = None,
) -> List[ScanRow]:
    """Run the cyclotomic SEDF check for every prime power q <= q_max and divisor e >= m_min of q-1.

    Args:
        q_max: Largest field size, bounded by max_order.
        m_min: Smallest cyclotomic order e.
        max_order: Field table bound.
        runner: Runs one unit per prime power; serial when omitted.
        moduli: Field modulus per q, overriding the default irreducible.

    Returns:
        One row per (q, e), ordered by q then e.

    Raises:
        CapacityError: q_max exceeds max_order.
        WorkUnitError: A prime power could not be scanned.
    """
    if q_max > max_order:
        raise CapacityError(f"q_max={q_max} exceeds the field table bound {max_order}")
    runner = runner or TaskRunner()
    moduli = moduli or {}
    units = [
        (q, p, m, m_min, max_order, moduli.get(q)) for q, p, m in prime_powers_up_to(q_max)
    ]
    logger.info(f"Scanning {len(units)} prime powers up to {q_max} with e >= {m_min}")

    rows: List[ScanRow] = []
    for unit, outcome in zip(units, runner.run_all(_scan_prime_power, units)):
        if not outcome["success"]:
            raise WorkUnitError(f"Scan of q={unit[0]} failed: {outcome['error']}")
        rows.extend(outcome["result"])
    hits = [(r.q, r.e) for r in rows if r.is_sedf]
    logger.info(f"Scan finished: {len(rows)} rows, SEDF hits at {hits}")
    return rows


class _Backtracker:
    """Fill A_1, then A_2, ... with incremental external-difference counts.

    Reduced space: 0 is in A_1, sets are ordered by their minimum, members ascend.
    A branch dies as soon as any external-difference count exceeds lambda. Since every
    complete family has total count k^2(m-1) = lambda(n-1) per index, a leaf that never
    exceeded lambda hits every nonzero element exactly lambda times.
    """

    def __init__(self, g: GroupSpec, m: int, k: int, lam: int, limit: Optional[int]):
        self.n = g.order
        self.m = m
        self.k = k
        self.lam = lam
        self.limit = limit
        self.sub = g.difference_table.tolist()
        self.ext = [[0] * self.n for _ in range(m)]
        self.sets: List[List[int]] = [[] for _ in range(m)]
        self.used = [False] * self.n
        self.nodes = 0
        self.partial = False
        self.found: List[Family] = []

    def run(self) -> List[Family]:
        self._add(0, 0)
        self._extend(0)
        return self.found

    def _add(self, s: int, x: int) -> bool:
        ok = True
        row_x = self.sub[x]
        ext_s = self.ext[s]
        for t in range(self.m):
            if t == s:
                continue
            ext_t = self.ext[t]
            for b in self.sets[t]:
                d1 = row_x[b]
                ext_s[d1] += 1
                d2 = self.sub[b][x]
                ext_t[d2] += 1
                if ext_s[d1] > self.lam or ext_t[d2] > self.lam:
                    ok = False
        self.sets[s].append(x)
        self.used[x] = True
        self.nodes += 1
        return ok

    def _remove(self, s: int, x: int) -> None:
        self.sets[s].pop()
        self.used[x] = False
        row_x = self.sub[x]
        ext_s = self.ext[s]
        for t in range(self.m):
            if t == s:
                continue
            ext_t = self.ext[t]
            for b in self.sets[t]:
                ext_s[row_x[b]] -= 1
                ext_t[self.sub[b][x]] -= 1

    def _free_from(self, x: int) -> int:
        return sum(1 for y in range(x, self.n) if not self.used[y])

    def _try(self, s: int, x: int) -> None:
        if self.limit is not None and self.nodes >= self.limit:
            self.partial = True
            return
        if self._add(s, x):
            self._extend(s)
        self._remove(s, x)

    def _extend(self, s: int) -> None:
        current = self.sets[s]
        if len(current) < self.k:
            for x in range(current[-1] + 1, self.n):
                if not self.used[x]:
                    self._try(s, x)
                    if self.partial:
                        return
            return
        if s + 1 == self.m:
            self.found.append(tuple(tuple(a) for a in self.sets))
            return
        needed = (self.m - s - 1) * self.k
        for x in range(current[0] + 1, self.n):
            if self._free_from(x) < needed:
                break
            if not self.used[x]:
                self._try(s + 1, x)
                if self.partial:
                    return


def _normalize(sets: Sequence[Sequence[int]]) -> Family:
    return tuple(sorted(tuple(sorted(int(x) for x in s)) for s in sets))


def _symmetry_maps(g: GroupSpec, use_automorphisms: bool) -> List[np.ndarray]:
    """Rank permutations x -> u*x + s for all translations s (and units u when requested)."""
    everything = np.arange(g.order)
    multipliers = g.units() if use_automorphisms else [1]
    maps = []
    for u in multipliers:
        scaled = g.scale_ranks(everything, u)
        for s in range(g.order):
            maps.append(g.add_ranks(scaled, [s]).ravel())
    return maps


def _is_canonical(family: Family, maps: List[np.ndarray]) -> bool:
    return all(_normalize([perm[list(a)] for a in family]) >= family for perm in maps)


def exhaustive_search(
    g: GroupSpec,
    m: int,
    k: int,
    limit: Optional[int] = None,
    use_automorphisms: bool = False,
) -> SearchResult:
    """All (n, m, k, lambda)-SEDFs in g, one per symmetry orbit (lexicographically smallest image).

    Args:
        g: Group to search.
        m: Number of sets.
        k: Common set size.
        limit: Node budget; reaching it marks the result partial.
        use_automorphisms: Also identify families related by a unit multiplier.

    Returns:
        Search result with a verified certificate per orbit, or feasible=False with the
        divisibility reason.

    Raises:
        CapacityError: g is above the full-search bound and no limit was given.
    """
    if g.order > SEARCH_MAX_ORDER and limit is None:
        raise CapacityError(
            f"|G|={g.order} is too large for a full search (bound {SEARCH_MAX_ORDER}); practical "
            "sizes are n <= 24 for m >= 3 and n <= 40 for m = 2, k <= 5. Pass a node limit for a "
            "partial run"
        )
    lam = feasible_lambda(g.order, m, k)
    if lam is None:
        reason = (
            f"(m-1)k^2 = {(m - 1) * k * k} is not divisible by n-1 = {g.order - 1}; "
            "no SEDF can exist"
        )
        logger.info(f"Search on {g.label} with m={m}, k={k} rejected: {reason}")
        return SearchResult(group=list(g.factors), m=m, k=k, feasible=False, reason=reason,
                            use_automorphisms=use_automorphisms)

    backtracker = _Backtracker(g, m, k, lam, limit)
    raw = backtracker.run()
    maps = _symmetry_maps(g, use_automorphisms)
    canonical = sorted({fam for fam in raw if _is_canonical(fam, maps)})

    certificates = []
    for fam in canonical:
        family = DesignFamily(g, [GroupSet(g, a) for a in fam], Provenance(kind="search"))
        certificate = verify_sedf(family)
        if not certificate.valid or certificate.params.lambda_ != lam:
            raise WorkUnitError(f"Search produced a family that fails verification: {fam}")
        certificates.append(certificate)

    reason = None
    if backtracker.partial:
        reason = f"node limit {limit} reached; results are incomplete"
        logger.warning(f"Search on {g.label} with m={m}, k={k} stopped early: {reason}")
    logger.info(
        f"Search on {g.label} (m={m}, k={k}, lambda={lam}): {len(certificates)} families, "
        f"{backtracker.nodes} nodes"
    )
    return SearchResult(
        group=list(g.factors),
        m=m,
        k=k,
        lambda_=lam,
        feasible=True,
        reason=reason,
        partial=backtracker.partial,
        nodes_visited=backtracker.nodes,
        use_automorphisms=use_automorphisms,
        certificates=certificates,
    )
