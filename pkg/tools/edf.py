"""Strong external difference families (SEDFs) and partial difference sets (PDS).

A family {A_1, ..., A_m} of k-subsets of G is an (n, m, k, lambda)-SEDF when, for every i,
sum_{j != i} Delta(A_i, A_j) = lambda * (G - {0}). Verification here is direct multiset
accumulation; certificates record enough to rebuild and re-check the family.
"""

import logging
from typing import List, Literal, NamedTuple, Optional, Sequence

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

from tools.cyclotomy import CyclotomicSystem, CyclotomicTable, cyclotomic_numbers, cyclotomic_system
from tools.errors import (
    EmptySetError,
    ParameterError,
    PartitionError,
    ShapeError,
    UniformityError,
)
from tools.gf import DEFAULT_MAX_ORDER, FieldSpec, field_new, format_vector
from tools.group_core import (
    GroupSet,
    GroupSpec,
    Multiset,
    difference_counts,
    first_nonconstant,
    multiset_constant_on_nonzero,
    multiset_difference,
    scale_set,
    translate_set,
)

logger = logging.getLogger(__name__)


class Provenance(BaseModel):
    """Where a family came from; cyclotomic families are rebuilt from (p, m, modulus, e)."""

    kind: Literal["explicit", "cyclotomic", "search"] = "explicit"
    p: Optional[int] = None
    m: Optional[int] = None
    modulus: Optional[List[int]] = None
    theta: Optional[str] = None
    e: Optional[int] = None


class SedfParams(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    n: int = Field(..., ge=2)
    m: int = Field(..., ge=2)
    k: int = Field(..., ge=1)
    lambda_: Optional[int] = Field(default=None, alias="lambda")

    @model_validator(mode="after")
    def check_parameter_law(self) -> "SedfParams":
        if self.lambda_ is not None and (self.m - 1) * self.k**2 != self.lambda_ * (self.n - 1):
            raise ValueError(
                f"(m-1)k^2 = {(self.m - 1) * self.k**2} != lambda(n-1) = {self.lambda_ * (self.n - 1)}"
            )
        return self


class IndexResult(BaseModel):
    """Outcome of the external-difference check for one set A_i."""

    model_config = ConfigDict(populate_by_name=True)

    index: int
    lambda_: Optional[int] = Field(default=None, alias="lambda")
    violation_rank: Optional[int] = None
    violation_multiplicity: Optional[int] = None


class SedfCertificate(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    group: List[int] = Field(..., description="Cyclic factors of G")
    provenance: Provenance = Field(default_factory=Provenance)
    sets: Optional[List[List[int]]] = Field(
        default=None, description="Member ranks; omitted for cyclotomic provenance"
    )
    params: SedfParams
    valid: bool
    disjoint: bool
    per_index_lambda: List[IndexResult]
    violations: List[str] = Field(default_factory=list)

    @model_validator(mode="after")
    def check_valid_consistency(self) -> "SedfCertificate":
        if self.valid:
            lambdas = {r.lambda_ for r in self.per_index_lambda}
            if not self.disjoint or len(lambdas) != 1 or None in lambdas:
                raise ValueError("A valid certificate needs disjoint sets and one common lambda")
        return self


class PdsParams(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    n: int
    k: int
    lambda_: int = Field(..., alias="lambda")
    mu: int
    contains_identity: bool = Field(default=False, description="0 is a member of the set")


class DifferenceSetParams(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    n: int
    k: int
    lambda_: int = Field(..., alias="lambda")


class CriterionCheck(BaseModel):
    """SEDF condition evaluated from the cyclotomic numbers instead of direct differences."""

    model_config = ConfigDict(populate_by_name=True)

    valid: bool
    lambda_: Optional[int] = Field(default=None, alias="lambda")
    per_index: List[Optional[int]]
    agrees: bool = Field(..., description="Same validity and lambda as direct verification")


class PdsPartitionReport(BaseModel):
    pds: PdsParams
    shape: Optional[str] = None
    certificate: SedfCertificate
    empirical_lambda: Optional[int]
    stated_lambda: int = Field(..., description="k - lambda")
    alternative_lambda: int = Field(..., description="k - mu")
    matches_stated: bool
    matches_alternative: bool


class DifferenceSetPartitionReport(BaseModel):
    difference_set: DifferenceSetParams
    certificate: SedfCertificate
    empirical_lambda: Optional[int]
    stated_lambda: int = Field(..., description="k - lambda")
    matches_stated: bool


class DesignFamily:
    """m >= 2 nonempty subsets of one group, with a provenance descriptor."""

    def __init__(
        self,
        group: GroupSpec,
        sets: Sequence[GroupSet],
        provenance: Optional[Provenance] = None,
    ):
        if len(sets) < 2:
            raise ParameterError(f"A family needs m >= 2 sets, got {len(sets)}")
        for i, s in enumerate(sets):
            if len(s) == 0:
                raise EmptySetError(f"Set {i} of the family is empty")
        self.group = group
        self.sets: List[GroupSet] = list(sets)
        self.provenance = provenance or Provenance()

    def __repr__(self) -> str:
        return f"DesignFamily(group={self.group.label}, sets={[list(s) for s in self.sets]})"

    @property
    def m(self) -> int:
        return len(self.sets)

    def as_lists(self) -> List[List[int]]:
        return [list(s.members) for s in self.sets]


class CyclotomicSedf(NamedTuple):
    family: DesignFamily
    certificate: SedfCertificate
    criterion: CriterionCheck


def feasible_lambda(n: int, m: int, k: int) -> Optional[int]:
    """lambda = (m-1)k^2/(n-1) when integral, else None."""
    if n < 2 or m < 2 or k < 1 or m * k > n:
        raise ParameterError(f"Need n >= 2, m >= 2, k >= 1 and m*k <= n, got (n,m,k)=({n},{m},{k})")
    num = (m - 1) * k * k
    if num % (n - 1):
        return None
    return num // (n - 1)


def verify_sedf(fam: DesignFamily) -> SedfCertificate:
    """Check that a family of disjoint equal-size sets is an SEDF.

    Args:
        fam: Sets in a common group; provenance is carried into the certificate.

    Returns:
        Certificate with (n, m, k, lambda), per-index lambdas and the first violation found.

    Raises:
        ShapeError: Sets differ in size.
    """
    group = fam.group
    sizes = {len(s) for s in fam.sets}
    if len(sizes) != 1:
        raise ShapeError(f"All sets must have the same size, got sizes {[len(s) for s in fam.sets]}")
    k = sizes.pop()
    m = fam.m

    violations: List[str] = []
    cover = np.sum([s.indicator() for s in fam.sets], axis=0)
    disjoint = bool(cover.max() <= 1)
    if not disjoint:
        for i in range(m):
            for j in range(i + 1, m):
                if set(fam.sets[i].members) & set(fam.sets[j].members):
                    violations.append(f"sets {i} and {j} intersect")

    per_index: List[IndexResult] = []
    for i, a in enumerate(fam.sets):
        others = np.concatenate([s.as_array() for j, s in enumerate(fam.sets) if j != i])
        counts = difference_counts(group, a.members, others)
        lam = multiset_constant_on_nonzero(group, Multiset(group, counts))
        if lam is not None:
            per_index.append(IndexResult(index=i, lambda_=lam))
            continue
        rank, mult = first_nonconstant(counts)
        per_index.append(IndexResult(index=i, violation_rank=rank, violation_multiplicity=mult))
        violations.append(f"index {i}: element {rank} has multiplicity {mult}")

    lambdas = {r.lambda_ for r in per_index}
    valid = disjoint and len(lambdas) == 1 and None not in lambdas
    if not valid and None not in lambdas and len(lambdas) > 1:
        violations.append(f"per-index lambdas differ: {sorted(lambdas)}")

    params = SedfParams(n=group.order, m=m, k=k, lambda_=lambdas.pop() if valid else None)
    certificate = SedfCertificate(
        group=list(group.factors),
        provenance=fam.provenance,
        sets=None if fam.provenance.kind == "cyclotomic" else fam.as_lists(),
        params=params,
        valid=valid,
        disjoint=disjoint,
        per_index_lambda=per_index,
        violations=violations,
    )
    logger.debug(
        f"SEDF check on {group.label}, m={m}, k={k}: valid={valid}, lambda={params.lambda_}"
    )
    return certificate


def family_from_cyclotomy(sys: CyclotomicSystem) -> DesignFamily:
    """The classes C_0, ..., C_{e-1} with cyclotomic provenance."""
    return DesignFamily(sys.group, sys.classes, Provenance(kind="cyclotomic", **sys.describe()))


def cyclotomic_criterion(sys: CyclotomicSystem, table: CyclotomicTable) -> List[Optional[int]]:
    """Per-index constant of f(G-{0}) - sum_lam (i-lam, i-lam) C_lam - C_i, or None."""
    nonzero = np.flatnonzero(sys.class_index >= 0)
    classes = sys.class_index[nonzero]
    results: List[Optional[int]] = []
    for i in range(sys.e):
        d = (i - classes) % sys.e
        counts = np.zeros(sys.group.order, dtype=np.int64)
        counts[nonzero] = sys.f - table.numbers[d, d]
        counts[sys.classes[i].as_array()] -= 1
        if (counts < 0).any():
            results.append(None)
            continue
        results.append(multiset_constant_on_nonzero(sys.group, Multiset(sys.group, counts)))
    return results


def sedf_from_cyclotomy(
    sys: CyclotomicSystem, table: Optional[CyclotomicTable] = None
) -> CyclotomicSedf:
    """Check {C_0, ..., C_{e-1}} both directly and through the cyclotomic numbers.

    Args:
        sys: Cyclotomic classes of order e.
        table: Precomputed cyclotomic numbers; computed from sys when omitted.

    Returns:
        The family, its direct certificate and the criterion check. A disagreement between
        the two checks is logged and recorded in criterion.agrees.
    """
    table = table if table is not None else cyclotomic_numbers(sys)
    family = family_from_cyclotomy(sys)
    certificate = verify_sedf(family)

    per_index = cyclotomic_criterion(sys, table)
    lambdas = set(per_index)
    crit_valid = len(lambdas) == 1 and None not in lambdas
    crit_lambda = next(iter(lambdas)) if crit_valid else None
    agrees = crit_valid == certificate.valid and crit_lambda == certificate.params.lambda_
    if not agrees:
        logger.error(
            f"Criterion and direct check disagree for q={sys.field.q}, e={sys.e}: "
            f"({crit_valid}, {crit_lambda}) vs ({certificate.valid}, {certificate.params.lambda_})"
        )
    criterion = CriterionCheck(valid=crit_valid, lambda_=crit_lambda, per_index=per_index, agrees=agrees)
    return CyclotomicSedf(family, certificate, criterion)


def _constant(values: np.ndarray) -> Optional[int]:
    if values.size == 0:
        return 0
    return int(values[0]) if (values == values[0]).all() else None


def verify_pds(g: GroupSpec, d: GroupSet) -> Optional[PdsParams]:
    """(n, k, lambda, mu) if Delta(d, d) = k{0} + lambda*d + mu*(G - d - {0}); vacuous parts are 0."""
    counts = multiset_difference(g, d, d).counts
    in_d = d.indicator().astype(bool)
    in_d[0] = False
    outside = ~d.indicator().astype(bool)
    outside[0] = False
    lam = _constant(counts[in_d])
    mu = _constant(counts[outside])
    if lam is None or mu is None:
        return None
    return PdsParams(n=g.order, k=len(d), lambda_=lam, mu=mu, contains_identity=0 in d)


def verify_difference_set(g: GroupSpec, d: GroupSet) -> Optional[DifferenceSetParams]:
    """(n, k, lambda) when every nonzero element occurs lambda times in Delta(d, d)."""
    counts = multiset_difference(g, d, d).counts
    lam = _constant(counts[1:])
    if lam is None:
        return None
    return DifferenceSetParams(n=g.order, k=len(d), lambda_=lam)


def classify_pds_shape(params: PdsParams) -> Optional[str]:
    """Name the known parameter shape of a lambda = mu - 1 PDS, if any."""
    n, k, lam, mu = params.n, params.k, params.lambda_, params.mu
    if (n, k, lam, mu) == (243, 22, 1, 2):
        return "sporadic-243"
    if 2 * k == n - 1 and 4 * lam == n - 5 and 4 * mu == n - 1:
        return "paley"
    return None


def _cover_counts(g: GroupSpec, sets: Sequence[GroupSet]) -> np.ndarray:
    return np.sum([s.indicator() for s in sets], axis=0) if sets else np.zeros(g.order, dtype=np.int64)


def pds_partition_sedf(
    g: GroupSpec, sets: Sequence[GroupSet], provenance: Optional[Provenance] = None
) -> PdsPartitionReport:
    """Compose a partition of G - {0} into lambda = mu - 1 PDSs into an SEDF and report lambda'.

    Args:
        g: Ambient group.
        sets: Partial difference sets partitioning G - {0}, all with the same parameters.
        provenance: Recorded on the resulting certificate.

    Returns:
        Report with the PDS parameters, the SEDF certificate and the empirical lambda'
        next to k - lambda and k - mu.

    Raises:
        PartitionError: The sets do not partition G - {0}.
        UniformityError: A set is not a PDS, parameters differ or lambda != mu - 1.
    """
    cover = _cover_counts(g, sets)
    if cover[0] != 0 or (cover[1:] != 1).any():
        raise PartitionError("Sets must partition G - {0}")

    params = [verify_pds(g, s) for s in sets]
    for i, prm in enumerate(params):
        if prm is None:
            raise UniformityError(f"Set {i} is not a partial difference set")
    shapes = {(prm.k, prm.lambda_, prm.mu) for prm in params}
    if len(shapes) != 1:
        raise UniformityError(f"PDS parameters differ across the partition: {sorted(shapes)}")
    pds = params[0]
    if pds.lambda_ != pds.mu - 1:
        raise UniformityError(f"Need lambda = mu - 1, got lambda={pds.lambda_}, mu={pds.mu}")

    certificate = verify_sedf(DesignFamily(g, sets, provenance))
    empirical = certificate.params.lambda_
    stated = pds.k - pds.lambda_
    alternative = pds.k - pds.mu
    if empirical != stated:
        logger.warning(
            f"Empirical lambda'={empirical} differs from k - lambda = {stated} (k - mu = {alternative})"
        )
    return PdsPartitionReport(
        pds=pds,
        shape=classify_pds_shape(pds),
        certificate=certificate,
        empirical_lambda=empirical,
        stated_lambda=stated,
        alternative_lambda=alternative,
        matches_stated=empirical == stated,
        matches_alternative=empirical == alternative,
    )


def difference_set_partition_sedf(
    g: GroupSpec, sets: Sequence[GroupSet]
) -> DifferenceSetPartitionReport:
    """A partition of G into (n, k, lambda) difference sets is an SEDF with lambda' = k - lambda.

    Args:
        g: Ambient group.
        sets: Difference sets with equal parameters covering G exactly once.

    Returns:
        Report comparing the empirical lambda' with k - lambda.

    Raises:
        PartitionError: The sets do not partition G.
        UniformityError: A set is not a difference set or parameters differ.
    """
    if (_cover_counts(g, sets) != 1).any():
        raise PartitionError("Sets must partition G")
    params = [verify_difference_set(g, s) for s in sets]
    for i, prm in enumerate(params):
        if prm is None:
            raise UniformityError(f"Set {i} is not a difference set")
    if len({(prm.k, prm.lambda_) for prm in params}) != 1:
        raise UniformityError("Difference-set parameters differ across the partition")
    ds = params[0]
    certificate = verify_sedf(DesignFamily(g, sets))
    stated = ds.k - ds.lambda_
    return DifferenceSetPartitionReport(
        difference_set=ds,
        certificate=certificate,
        empirical_lambda=certificate.params.lambda_,
        stated_lambda=stated,
        matches_stated=certificate.params.lambda_ == stated,
    )


def translate_family(fam: DesignFamily, shift: int) -> DesignFamily:
    """Every set shifted by the element with rank shift."""
    return DesignFamily(fam.group, [translate_set(fam.group, s, shift) for s in fam.sets])


def scale_family(fam: DesignFamily, u: int) -> DesignFamily:
    return DesignFamily(fam.group, [scale_set(fam.group, s, u) for s in fam.sets])


def reverify_certificate(
    cert: SedfCertificate, max_order: int = DEFAULT_MAX_ORDER
) -> SedfCertificate:
    """Rebuild the family a certificate describes and verify it again.

    Args:
        cert: Stored certificate; cyclotomic ones are rebuilt from their field parameters.
        max_order: Field size bound passed to field_new.

    Returns:
        A freshly computed certificate, equal to cert when it reproduces.

    Raises:
        ParameterError: A non-cyclotomic certificate does not list its sets.
    """
    prov = cert.provenance
    if prov.kind == "cyclotomic":
        spec = FieldSpec(p=prov.p, m=prov.m, modulus=prov.modulus)
        field = field_new(spec, max_order=max_order)
        if prov.theta is not None and prov.theta != format_vector(field.theta):
            logger.warning(
                f"Certificate theta {prov.theta} differs from rebuilt theta {format_vector(field.theta)}"
            )
        return verify_sedf(family_from_cyclotomy(cyclotomic_system(field, prov.e)))

    if cert.sets is None:
        raise ParameterError("Certificate without cyclotomic provenance must list its sets")
    group = GroupSpec(cert.group)
    family = DesignFamily(group, [GroupSet(group, s) for s in cert.sets], prov)
    return verify_sedf(family)
