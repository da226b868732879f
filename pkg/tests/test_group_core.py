import numpy as np
import pytest

from tools.errors import EmptySetError, InvalidElementError, InvalidGroupError, ParameterError
from tools.group_core import (
    GroupSet,
    GroupSpec,
    Multiset,
    difference_counts,
    elem_add,
    elem_neg,
    first_nonconstant,
    group_new,
    multiset_constant_on_nonzero,
    multiset_difference,
    scale_set,
    translate_set,
)


def test_group_new_rejects_bad_factors():
    with pytest.raises(InvalidGroupError):
        group_new([])
    with pytest.raises(InvalidGroupError):
        group_new([3, 1])


def test_rank_is_mixed_radix_with_first_factor_most_significant():
    g = group_new([2, 3])
    assert g.order == 6
    assert g.rank((1, 2)) == 5
    assert g.unrank(4) == (1, 1)
    assert [g.rank(g.unrank(r)) for r in range(g.order)] == list(range(6))


def test_element_checks():
    g = group_new([3, 3])
    with pytest.raises(InvalidElementError):
        g.rank((3, 0))
    with pytest.raises(InvalidElementError):
        g.rank((1,))
    with pytest.raises(InvalidElementError):
        g.unrank(9)


def test_elem_add_and_neg():
    g = group_new([3, 4])
    assert elem_add(g, (2, 3), (2, 2)) == (1, 1)
    assert elem_neg(g, (1, 3)) == (2, 1)
    assert elem_add(g, (1, 3), elem_neg(g, (1, 3))) == (0, 0)


def test_rank_arithmetic_matches_coordinates():
    g = group_new([2, 4])
    for a in range(g.order):
        for b in range(g.order):
            expected = g.rank(elem_add(g, g.unrank(a), elem_neg(g, g.unrank(b))))
            assert g.difference_table[a, b] == expected


def test_group_set_is_sorted_and_unique():
    g = group_new([7])
    d = GroupSet(g, [4, 1, 2])
    assert d.members == (1, 2, 4)
    assert 2 in d and 3 not in d
    with pytest.raises(InvalidElementError):
        GroupSet(g, [1, 1])
    with pytest.raises(InvalidElementError):
        GroupSet(g, [7])


def test_multiset_difference_of_fano_difference_set():
    g = group_new([7])
    d = GroupSet(g, [1, 2, 4])
    delta = multiset_difference(g, d, d)
    assert delta.counts.tolist() == [3, 1, 1, 1, 1, 1, 1]
    assert delta.total == 9


def test_difference_counts_accepts_repeated_ranks():
    g = group_new([5])
    counts = difference_counts(g, [1, 1], [0])
    assert counts.tolist() == [0, 2, 0, 0, 0]


def test_empty_operands_raise():
    g = group_new([5])
    with pytest.raises(EmptySetError):
        multiset_difference(g, GroupSet(g, []), GroupSet(g, [1]))
    with pytest.raises(EmptySetError):
        difference_counts(g, [], [1])


def test_constant_on_nonzero():
    g = group_new([5])
    a, b = GroupSet(g, [1, 4]), GroupSet(g, [2, 3])
    assert multiset_constant_on_nonzero(g, multiset_difference(g, a, b)) == 1
    assert multiset_constant_on_nonzero(g, multiset_difference(g, a, a)) is None
    assert multiset_constant_on_nonzero(g, Multiset(g, [0] * 5)) == 0


def test_first_nonconstant():
    assert first_nonconstant(np.array([0, 2, 2, 2])) is None
    assert first_nonconstant(np.array([1, 2, 2, 2])) == (0, 1)
    assert first_nonconstant(np.array([0, 2, 2, 3])) == (3, 3)


def test_multiset_rejects_negative_and_wrong_shape():
    g = group_new([3])
    with pytest.raises(InvalidElementError):
        Multiset(g, [0, -1, 0])
    with pytest.raises(InvalidElementError):
        Multiset(g, [0, 1])
    assert (Multiset(g, [1, 0, 0]) + Multiset(g, [0, 1, 0])).support() == [0, 1]


def test_translate_and_scale_sets():
    g = group_new([7])
    d = GroupSet(g, [1, 2, 4])
    assert translate_set(g, d, 3).members == (0, 4, 5)
    assert scale_set(g, d, 3).members == (3, 5, 6)
    with pytest.raises(ParameterError):
        scale_set(g, d, 7)


def test_units_of_noncyclic_group():
    g = GroupSpec([2, 4])
    assert g.exponent == 4
    assert g.units() == [1, 3]


@pytest.fixture
def mixed_group():
    return group_new([3, 4])


def test_difference_reflects_under_swap(mixed_group):
    d1 = GroupSet(mixed_group, [0, 1, 5, 10])
    d2 = GroupSet(mixed_group, [2, 7, 11])
    forward = multiset_difference(mixed_group, d1, d2)
    backward = multiset_difference(mixed_group, d2, d1)
    for x in range(mixed_group.order):
        neg_x = int(mixed_group.neg_ranks([x])[0])
        assert forward[x] == backward[neg_x]


@pytest.mark.parametrize("shift", [1, 4, 7, 11])
def test_difference_is_translation_invariant(mixed_group, shift):
    d1 = GroupSet(mixed_group, [0, 1, 5, 10])
    d2 = GroupSet(mixed_group, [2, 7, 11])
    moved = multiset_difference(
        mixed_group, translate_set(mixed_group, d1, shift), translate_set(mixed_group, d2, shift)
    )
    assert moved == multiset_difference(mixed_group, d1, d2)


def test_difference_against_whole_group_is_uniform(mixed_group):
    s = GroupSet(mixed_group, [3, 6, 8])
    whole = GroupSet(mixed_group, range(mixed_group.order))
    delta = multiset_difference(mixed_group, s, whole)
    np.testing.assert_array_equal(delta.counts, np.full(mixed_group.order, len(s)))
    assert delta.total == len(s) * mixed_group.order
