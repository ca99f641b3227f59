import itertools

import pytest

from gdm.errors import (
    DivisionByZero,
    FieldMismatch,
    FieldTooLarge,
    NotIrreducible,
    NotPrime,
    NotPrimitive,
    OrderNotAvailable,
)
from gdm.finite_field import (
    PRIMITIVE_POLYS,
    FieldParams,
    GaloisField,
    conjugates,
    construct_field,
    element_order,
    find_element_of_order,
    format_poly,
    is_irreducible,
    minimal_polynomial,
    parse_element,
    parse_vector,
    format_vector,
    poly_mod,
    poly_mul,
)

# Field table for x^4 + x + 1: (associated vector, order, minimal polynomial)
GF16_ROWS = {
    0: ((0, 0, 0, 1), 1, "x + 1"),
    1: ((0, 0, 1, 0), 15, "x^4 + x + 1"),
    2: ((0, 1, 0, 0), 15, "x^4 + x + 1"),
    3: ((1, 0, 0, 0), 5, "x^4 + x^3 + x^2 + x + 1"),
    4: ((0, 0, 1, 1), 15, "x^4 + x + 1"),
    5: ((0, 1, 1, 0), 3, "x^2 + x + 1"),
    6: ((1, 1, 0, 0), 5, "x^4 + x^3 + x^2 + x + 1"),
    7: ((1, 0, 1, 1), 15, "x^4 + x^3 + 1"),
    8: ((0, 1, 0, 1), 15, "x^4 + x + 1"),
    9: ((1, 0, 1, 0), 5, "x^4 + x^3 + x^2 + x + 1"),
    10: ((0, 1, 1, 1), 3, "x^2 + x + 1"),
    11: ((1, 1, 1, 0), 15, "x^4 + x^3 + 1"),
    12: ((1, 1, 1, 1), 5, "x^4 + x^3 + x^2 + x + 1"),
    13: ((1, 1, 0, 1), 15, "x^4 + x^3 + 1"),
    14: ((1, 0, 0, 1), 15, "x^4 + x^3 + 1"),
}


@pytest.mark.parametrize("i", sorted(GF16_ROWS))
def test_gf16_rows(gf16, i):
    vector, order, minpoly = GF16_ROWS[i]
    e = gf16.power(i)
    assert e.vector == vector
    assert element_order(e) == order
    assert format_poly(minimal_polynomial(e)) == minpoly


def test_exp_log_tables_are_inverse(gf16):
    assert gf16.exp_of(0) == 1
    codes = [gf16.exp_of(i) for i in range(15)]
    assert len(set(codes)) == 15 and 0 not in codes
    for i, c in enumerate(codes):
        assert gf16.log_of(c) == i


def test_add_examples(gf16):
    a1, a2 = gf16.power(1), gf16.power(2)
    assert a1 + a2 == gf16.power(5)
    for e in gf16.elements():
        assert e + e == gf16.zero
        assert e + gf16.zero == e


def test_mul_inv_pow_examples(gf16):
    a = gf16.alpha
    assert gf16.power(7) * gf16.power(8) == gf16.one
    assert a * gf16.zero == gf16.zero
    assert a * gf16.one == a
    assert a.inverse() == gf16.power(14)
    assert gf16.one.inverse() == gf16.one
    assert gf16.inv(gf16.power(5)) == gf16.power(10)
    assert a**16 == a
    assert gf16.power(3) ** 5 == gf16.one
    assert gf16.zero**3 == gf16.zero
    assert a**-1 == gf16.power(14)
    with pytest.raises(DivisionByZero):
        gf16.zero.inverse()
    with pytest.raises(DivisionByZero):
        gf16.zero**-2
    with pytest.raises(DivisionByZero):
        element_order(gf16.zero)


def test_element_of_order(gf16):
    assert find_element_of_order(gf16, 5) == gf16.power(3)
    assert find_element_of_order(gf16, 15) == gf16.alpha
    assert find_element_of_order(gf16, 1) == gf16.one
    for n in (1, 3, 5, 15):
        assert element_order(find_element_of_order(gf16, n)) == n
    with pytest.raises(OrderNotAvailable):
        find_element_of_order(gf16, 7)


def test_minimal_polynomial_of_zero_and_conjugacy_degree(gf16):
    assert minimal_polynomial(gf16.zero) == (0, 1)
    for e in gf16.elements():
        if not e.is_zero:
            assert len(minimal_polynomial(e)) - 1 == len(conjugates(e))


def _fields():
    return [
        GaloisField(FieldParams.from_bits("111")),
        GaloisField(FieldParams.from_bits("1011")),
        GaloisField(FieldParams.from_bits("10011")),
        construct_field(p=3, m=2),
        construct_field(p=5, m=1),
    ]


@pytest.mark.parametrize("field", _fields(), ids=repr)
def test_field_axioms_exhaustive(field):
    els = list(field.elements())
    for a, b in itertools.product(els, repeat=2):
        assert a + b == b + a
        assert a * b == b * a
        assert (a - b) + b == a
        if not b.is_zero:
            assert (a / b) * b == a
    for a, b, c in itertools.product(els, repeat=3):
        assert (a + b) + c == a + (b + c)
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c


@pytest.mark.parametrize("p,m", [(2, 2), (2, 3), (2, 4), (2, 8), (3, 2), (3, 3), (5, 2), (7, 2)])
def test_table_multiplication_matches_polynomial_reduction(p, m):
    """Independent oracle: multiply coefficient polynomials and reduce."""
    field = construct_field(p=p, m=m)
    poly = field.params.poly
    els = list(field.elements())
    for a, b in itertools.product(els, repeat=2):
        ref = poly_mod(poly_mul(a.coeffs, b.coeffs, p), poly, p)
        got = (a * b).coeffs
        assert poly_trimmed(got) == ref
        # log rule for nonzero elements
        if not (a.is_zero or b.is_zero):
            assert (a * b).log == (a.log + b.log) % field.n_units


def poly_trimmed(c):
    c = list(c)
    while len(c) > 1 and c[-1] == 0:
        c.pop()
    return tuple(c)


@pytest.mark.parametrize("field", _fields() + [construct_field(p=2, m=8)], ids=repr)
def test_representation_round_trip(field):
    for e in field.elements():
        assert field.from_code(e.code) == e
        assert field.from_coeffs(e.coeffs) == e
        assert field.from_vector(e.vector) == e


@pytest.mark.parametrize("p,m", [(2, 2), (2, 3), (2, 4), (2, 6), (3, 2), (5, 2)])
def test_minimal_polynomials_factor_x_q_minus_1(p, m):
    field = construct_field(p=p, m=m)
    distinct = {minimal_polynomial(e) for e in field.elements() if not e.is_zero}
    prod = (1,)
    for mp in distinct:
        assert is_irreducible(mp, p)
        prod = poly_mul(prod, mp, p)
    q = p**m
    expected = [0] * q
    expected[0] = p - 1  # -1
    expected[q - 1] = 1
    assert prod == tuple(expected)


@pytest.mark.parametrize("key", sorted(PRIMITIVE_POLYS))
def test_catalog_polynomials_are_primitive(key):
    p, m = key
    field = GaloisField(FieldParams(p, m, PRIMITIVE_POLYS[key]))
    assert element_order(field.alpha) == p**m - 1


def test_construction_errors():
    with pytest.raises(NotPrime):
        GaloisField(FieldParams(4, 2, (1, 1, 1)))
    with pytest.raises(NotIrreducible):
        GaloisField(FieldParams.from_bits("10101"))  # (x^2 + x + 1)^2
    with pytest.raises(NotPrimitive):
        GaloisField(FieldParams.from_bits("11111"))
    with pytest.raises(FieldTooLarge):
        GaloisField(FieldParams(2, 17, (1, 0, 0, 1) + (0,) * 13 + (1,)))
    with pytest.raises(ValueError):
        GaloisField(FieldParams(2, 4, (1, 1, 0, 0, 0)))


def test_non_primitive_polynomial_allowed_on_request():
    field = GaloisField(FieldParams.from_bits("11111"), primitive=False)
    assert element_order(field.alpha) == 15
    assert sorted(e.code for e in field.elements()) == list(range(16))


def test_field_mismatch(gf16):
    other = GaloisField(FieldParams.from_bits("11001"))
    with pytest.raises(FieldMismatch):
        gf16.alpha + other.alpha
    with pytest.raises(FieldMismatch):
        gf16.alpha * other.alpha
    # equal parameters are the same field
    again = GaloisField(FieldParams.from_bits("10011"))
    assert gf16.alpha * again.alpha == gf16.power(2)


def test_default_params_search_finds_primitive():
    params = FieldParams.default(3, 4)
    field = GaloisField(params)
    assert element_order(field.alpha) == 80


def test_power_notation_round_trip(gf16):
    assert parse_element("a^10", gf16) == gf16.power(10)
    assert parse_element("α^5", gf16) == gf16.power(5)
    assert parse_element("a", gf16) == gf16.alpha
    assert parse_element("1", gf16) == gf16.one
    assert parse_element("0", gf16) == gf16.zero
    vals = list(gf16.elements())
    assert parse_vector(format_vector(vals), gf16) == vals
    with pytest.raises(ValueError):
        parse_element("b^2", gf16)


def test_subfield_membership(gf16):
    gf4 = [e for e in gf16.elements() if gf16.subfield_contains(e, 2)]
    assert gf4 == [gf16.zero, gf16.one, gf16.power(5), gf16.power(10)]
