import pytest
from pydantic import ValidationError

from tools.edf import (
    DesignFamily,
    Provenance,
    SedfCertificate,
    SedfParams,
    classify_pds_shape,
    difference_set_partition_sedf,
    family_from_cyclotomy,
    feasible_lambda,
    pds_partition_sedf,
    reverify_certificate,
    scale_family,
    sedf_from_cyclotomy,
    translate_family,
    verify_difference_set,
    verify_pds,
    verify_sedf,
)
from tools.errors import EmptySetError, ParameterError, PartitionError, ShapeError, UniformityError
from tools.group_core import GroupSet, GroupSpec

QUADRATIC_RESIDUES_13 = [1, 3, 4, 9, 10, 12]
NON_RESIDUES_13 = [2, 5, 6, 7, 8, 11]


def _family(factors, sets):
    g = GroupSpec(factors)
    return DesignFamily(g, [GroupSet(g, s) for s in sets])


def test_order11_classes_form_sedf(order11_system, order11_table):
    result = sedf_from_cyclotomy(order11_system, order11_table)
    cert = result.certificate
    assert cert.valid and cert.disjoint
    assert (cert.params.n, cert.params.m, cert.params.k, cert.params.lambda_) == (243, 11, 22, 20)
    assert [r.lambda_ for r in cert.per_index_lambda] == [20] * 11
    assert cert.sets is None
    assert cert.provenance.kind == "cyclotomic"
    assert cert.provenance.theta == "(01000)"
    assert result.criterion.valid and result.criterion.lambda_ == 20 and result.criterion.agrees


def test_small_sedf_in_z5():
    cert = verify_sedf(_family([5], [[1, 4], [2, 3]]))
    assert cert.valid
    assert cert.params.lambda_ == 1
    assert cert.sets == [[1, 4], [2, 3]]
    assert cert.violations == []


def test_trivial_partition_is_sedf():
    cert = verify_sedf(_family([6], [[r] for r in range(6)]))
    assert cert.valid
    assert (cert.params.m, cert.params.k, cert.params.lambda_) == (6, 1, 1)


def test_overlapping_sets_are_invalid():
    cert = verify_sedf(_family([5], [[1, 2], [2, 3]]))
    assert not cert.valid
    assert not cert.disjoint
    assert cert.params.lambda_ is None
    assert "sets 0 and 1 intersect" in cert.violations


def test_nonconstant_index_reports_first_violation():
    cert = verify_sedf(_family([7], [[0, 1], [2, 3]]))
    assert not cert.valid
    bad = [r for r in cert.per_index_lambda if r.lambda_ is None]
    assert bad and bad[0].violation_rank is not None


def test_family_shape_errors():
    g = GroupSpec([7])
    with pytest.raises(ShapeError):
        verify_sedf(DesignFamily(g, [GroupSet(g, [0]), GroupSet(g, [1, 2])]))
    with pytest.raises(ParameterError):
        DesignFamily(g, [GroupSet(g, [0])])
    with pytest.raises(EmptySetError):
        DesignFamily(g, [GroupSet(g, [0]), GroupSet(g, [])])


def test_feasible_lambda():
    assert feasible_lambda(243, 11, 22) == 20
    assert feasible_lambda(5, 2, 2) == 1
    assert feasible_lambda(13, 3, 2) is None
    with pytest.raises(ParameterError):
        feasible_lambda(5, 3, 2)
    with pytest.raises(ParameterError):
        feasible_lambda(5, 1, 2)


def test_params_enforce_parameter_law():
    with pytest.raises(ValidationError):
        SedfParams(n=5, m=2, k=2, lambda_=2)
    params = SedfParams(n=243, m=11, k=22, lambda_=20)
    assert '"lambda":20' in params.model_dump_json(by_alias=True)


def test_certificate_rejects_inconsistent_validity():
    with pytest.raises(ValidationError):
        SedfCertificate(
            group=[5],
            sets=[[1, 2], [2, 3]],
            params=SedfParams(n=5, m=2, k=2),
            valid=True,
            disjoint=False,
            per_index_lambda=[],
        )


def test_order11_classes_are_pds(order11_system):
    for c in order11_system.classes:
        params = verify_pds(order11_system.group, c)
        assert (params.n, params.k, params.lambda_, params.mu) == (243, 22, 1, 2)
        assert not params.contains_identity
        assert classify_pds_shape(params) == "sporadic-243"


def test_pds_partition_reports_lambda_discrepancy(order11_system):
    report = pds_partition_sedf(order11_system.group, order11_system.classes)
    assert report.certificate.valid
    assert report.empirical_lambda == 20
    assert report.stated_lambda == 21
    assert report.alternative_lambda == 20
    assert not report.matches_stated
    assert report.matches_alternative


def test_paley_partition_of_z13():
    g = GroupSpec([13])
    residues, non_residues = GroupSet(g, QUADRATIC_RESIDUES_13), GroupSet(g, NON_RESIDUES_13)
    params = verify_pds(g, residues)
    assert (params.n, params.k, params.lambda_, params.mu) == (13, 6, 2, 3)
    assert classify_pds_shape(params) == "paley"

    report = pds_partition_sedf(g, [residues, non_residues])
    assert report.empirical_lambda == 3
    assert report.alternative_lambda == 3
    assert report.stated_lambda == 4


def test_pds_partition_input_checks():
    g = GroupSpec([13])
    with pytest.raises(PartitionError):
        pds_partition_sedf(g, [GroupSet(g, QUADRATIC_RESIDUES_13), GroupSet(g, [2, 5, 6])])
    # {1,...,6} and {7,...,12} partition Z_13 - {0} but are not PDSs
    with pytest.raises(UniformityError):
        pds_partition_sedf(g, [GroupSet(g, range(1, 7)), GroupSet(g, range(7, 13))])


@pytest.mark.parametrize(
    "factors,members",
    [([13], QUADRATIC_RESIDUES_13), ([13], NON_RESIDUES_13), ([7], [1, 2, 4]), ([4], [1, 2, 3])],
)
def test_pds_counts_add_up_to_all_ordered_pairs(factors, members):
    g = GroupSpec(factors)
    d = GroupSet(g, members)
    params = verify_pds(g, d)
    assert params is not None and not params.contains_identity
    k = params.k
    assert k * (k - 1) == params.lambda_ * k + params.mu * (params.n - 1 - k)


def test_order11_pds_counts_add_up(order11_system):
    params = verify_pds(order11_system.group, order11_system.classes[0])
    assert 22 * 21 == params.lambda_ * 22 + params.mu * (243 - 1 - 22)


def test_non_pds_is_recognised():
    g = GroupSpec([13])
    assert verify_pds(g, GroupSet(g, [1, 2, 3])) is None


def test_difference_sets():
    g = GroupSpec([7])
    params = verify_difference_set(g, GroupSet(g, [1, 2, 4]))
    assert (params.n, params.k, params.lambda_) == (7, 3, 1)
    assert verify_difference_set(g, GroupSet(g, [1, 2])) is None


def test_singleton_partition_composes_with_k_minus_lambda():
    g = GroupSpec([5])
    report = difference_set_partition_sedf(g, [GroupSet(g, [r]) for r in range(5)])
    assert report.certificate.valid
    assert report.empirical_lambda == report.stated_lambda == 1
    assert report.matches_stated


def test_translation_and_multipliers_preserve_sedf(order11_system):
    family = family_from_cyclotomy(order11_system)
    for shift in (1, 100, 242):
        cert = verify_sedf(translate_family(family, shift))
        assert cert.valid and cert.params.lambda_ == 20
        assert cert.provenance.kind == "explicit"
    cert = verify_sedf(scale_family(family, 2))
    assert cert.valid and cert.params.lambda_ == 20


def test_small_family_invariance_over_all_symmetries():
    family = _family([13], [QUADRATIC_RESIDUES_13, NON_RESIDUES_13])
    for u in range(1, 13):
        for shift in range(13):
            cert = verify_sedf(translate_family(scale_family(family, u), shift))
            assert cert.valid and cert.params.lambda_ == 3


def test_certificates_reverify(order11_system):
    cyclotomic = sedf_from_cyclotomy(order11_system).certificate
    assert reverify_certificate(cyclotomic) == cyclotomic
    explicit = verify_sedf(_family([5], [[1, 2], [2, 3]]))
    assert reverify_certificate(explicit) == explicit


def test_reverify_needs_sets_without_cyclotomic_provenance():
    cert = verify_sedf(_family([5], [[1, 4], [2, 3]]))
    stripped = cert.model_copy(update={"sets": None, "provenance": Provenance(kind="search")})
    with pytest.raises(ParameterError):
        reverify_certificate(stripped)
