import pytest
from pydantic import ValidationError

from tools.errors import (
    CapacityError,
    FieldConstructionError,
    IndexRangeError,
    InvalidElementError,
    InvalidPolynomialError,
    ZeroElementError,
)
from tools.gf import (
    FieldSpec,
    additive_group,
    default_modulus,
    element_order,
    field_new,
    format_vector,
    is_primitive,
    order_witnesses,
    poly_is_irreducible,
    power_vector,
)
from tools.number_theory import euler_phi

# theta^t for the modulus x^5 + x^4 + x^3 + x^2 + 2x + 1, coefficients c0..c4
GF243_POWERS = {
    5: "(21222)",
    6: "(11200)",
    7: "(01120)",
    8: "(00112)",
    9: "(12122)",
    10: "(10020)",
    11: "(01002)",
    12: "(12211)",
    22: "(21101)",
    33: "(21102)",
    44: "(12212)",
    55: "(11112)",
    66: "(10121)",
    77: "(12011)",
    88: "(12112)",
    99: "(22002)",
    110: "(02010)",
    121: "(20000)",
}


@pytest.mark.parametrize("t,expected", sorted(GF243_POWERS.items()))
def test_gf243_power_table(gf243, t, expected):
    assert format_vector(power_vector(gf243, t)) == expected


def test_theta110_times_theta11_is_minus_one(gf243):
    product = gf243.mul(int(gf243.exp_table[110]), int(gf243.exp_table[11]))
    assert product == int(gf243.exp_table[121]) == gf243.minus_one_rank
    assert format_vector(gf243.vector(product)) == "(20000)"
    # (01020) is theta^-11, the negative of theta^110
    assert gf243.mul(gf243.rank_of((0, 1, 0, 2, 0)), int(gf243.exp_table[11])) == gf243.one_rank


def test_gf243_theta_is_x_with_order_242(gf243):
    assert gf243.theta == (0, 1, 0, 0, 0)
    assert element_order(gf243, gf243.theta) == 242
    assert is_primitive(gf243, gf243.theta)


def test_gf243_order_witnesses(gf243):
    witnesses = order_witnesses(gf243, gf243.theta)
    assert {t: format_vector(v) for t, v in witnesses.items()} == {22: "(21101)", 121: "(20000)"}


def test_theta11_has_order_22(gf243):
    assert element_order(gf243, power_vector(gf243, 11)) == 22


def test_primitive_element_count(gf243):
    group, _ = additive_group(gf243)
    count = sum(is_primitive(gf243, group.unrank(r)) for r in range(1, gf243.q))
    assert count == euler_phi(242) == 110


def test_log_and_exp_tables_are_inverse(gf243):
    for t in range(gf243.q - 1):
        assert gf243.log(int(gf243.exp_table[t])) == t
    assert gf243.log_table[0] == -1


def test_field_arithmetic_on_ranks(gf243):
    one = gf243.one_rank
    theta = gf243.theta_rank
    assert gf243.mul(theta, gf243.inverse(theta)) == one
    assert gf243.power(theta, 242) == one
    assert gf243.mul(0, theta) == 0
    assert gf243.vector(gf243.minus_one_rank) == (2, 0, 0, 0, 0)
    with pytest.raises(ZeroElementError):
        gf243.inverse(0)
    with pytest.raises(ZeroElementError):
        gf243.log(0)


def test_zero_has_no_order(gf243):
    with pytest.raises(ZeroElementError):
        element_order(gf243, (0, 0, 0, 0, 0))


def test_power_vector_range(gf243):
    assert power_vector(gf243, 0) == (1, 0, 0, 0, 0)
    with pytest.raises(IndexRangeError):
        power_vector(gf243, 242)
    with pytest.raises(IndexRangeError):
        power_vector(gf243, -1)


def test_prime_field_uses_smallest_primitive_element():
    field = field_new(FieldSpec(p=3, m=1, modulus=default_modulus(3, 1)))
    assert field.theta == (2,)
    field13 = field_new(FieldSpec(p=13, m=1, modulus=default_modulus(13, 1)))
    assert field13.theta == (2,)


def test_non_primitive_x_falls_back_to_scan():
    # x^2 + 1 is irreducible over F_3 but x has order 4 < 8
    field = field_new(FieldSpec(p=3, m=2, modulus=(1, 0, 1)))
    assert field.theta != (0, 1)
    assert element_order(field, field.theta) == 8


def test_irreducibility():
    assert poly_is_irreducible(3, (1, 2, 1, 1, 1, 1))
    assert poly_is_irreducible(3, (1, 0, 1))
    assert not poly_is_irreducible(3, (2, 0, 1))
    assert not poly_is_irreducible(3, (1, 1, 1))
    assert not poly_is_irreducible(2, (1, 1, 1, 1))
    with pytest.raises(InvalidPolynomialError):
        poly_is_irreducible(3, (1, 0, 2))
    with pytest.raises(InvalidPolynomialError):
        poly_is_irreducible(4, (1, 1))
    with pytest.raises(InvalidPolynomialError):
        poly_is_irreducible(3, (1,))


def test_default_modulus():
    assert default_modulus(3, 2) == (1, 0, 1)
    assert default_modulus(2, 3) == (1, 0, 1, 1)
    assert poly_is_irreducible(3, default_modulus(3, 5))


def test_field_construction_errors():
    with pytest.raises(FieldConstructionError):
        field_new(FieldSpec(p=3, m=2, modulus=(2, 0, 1)))
    with pytest.raises(InvalidPolynomialError):
        field_new(FieldSpec(p=3, m=2, modulus=(1, 0, 2)))
    with pytest.raises(CapacityError):
        field_new(FieldSpec(p=3, m=5, modulus=(1, 2, 1, 1, 1, 1)), max_order=100)


def test_field_spec_validation():
    with pytest.raises(ValidationError):
        FieldSpec(p=4, m=1, modulus=(1, 1))
    with pytest.raises(ValidationError):
        FieldSpec(p=3, m=2, modulus=(1, 1))
    with pytest.raises(ValidationError):
        FieldSpec(p=3, m=1, modulus=(3, 1))


def test_format_vector_uses_commas_for_large_digits():
    assert format_vector((2, 1, 0)) == "(210)"
    assert format_vector((12, 3)) == "(12,3)"


def test_tables_agree_with_galois(gf243):
    galois = pytest.importorskip("galois")
    gf3 = galois.GF(3)
    field = galois.GF(3**5, irreducible_poly=galois.Poly([1, 1, 1, 1, 2, 1], field=gf3))
    x = field(3)
    for t in (1, 5, 22, 121, 200):
        descending = [int(c) for c in (x**t).vector()]
        assert tuple(reversed(descending)) == power_vector(gf243, t)


@pytest.mark.parametrize("a", [0, 1, 11, 110, 121, 241])
@pytest.mark.parametrize("b", [0, 5, 22, 131, 240])
def test_exponent_laws(gf243, a, b):
    lhs = gf243.mul(int(gf243.exp_table[a]), int(gf243.exp_table[b]))
    assert lhs == int(gf243.exp_table[(a + b) % 242])
    assert gf243.power(gf243.theta_rank, a) == int(gf243.exp_table[a])


def test_gf4_additive_group_is_z2_squared():
    f = field_new(FieldSpec(p=2, m=2, modulus=default_modulus(2, 2)))
    group, embedding = additive_group(f)
    assert group.factors == (2, 2)
    assert group.order == 4
    assert embedding.to_group((0, 0)) == group.unrank(0)
    assert group.rank(embedding.to_group((0, 0))) == 0
    # field addition is coordinatewise, so the embedding is additive
    for x in group.coords.tolist():
        for y in group.coords.tolist():
            s = tuple((a + b) % 2 for a, b in zip(x, y))
            expected = group.add_ranks([group.rank(x)], [group.rank(y)])[0, 0]
            assert group.rank(embedding.to_group(s)) == int(expected)


def test_field_embedding_round_trips_and_validates(gf243):
    group, embedding = additive_group(gf243)
    theta = gf243.theta
    assert embedding.to_field(embedding.to_group(theta)) == theta
    assert group.rank(embedding.to_group(theta)) == gf243.theta_rank
    with pytest.raises(InvalidElementError):
        embedding.to_group((3, 0, 0, 0, 0))
    with pytest.raises(InvalidElementError):
        embedding.to_field((0, 0, 0))
