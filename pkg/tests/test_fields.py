import itertools

import numpy as np
import pytest

from schubert_schemes.fields import FieldSpec, FiniteField, make_field, random_element

SMALL_ORDERS = [2, 3, 4, 5, 7, 8, 9, 11, 13, 16]
MODULI = {16: (1, 1, 0, 0, 1)}


def field_of(q):
    return make_field(q, MODULI.get(q))


def test_gf2_characteristic_two():
    F = make_field(2)
    assert F.elements() == [0, 1]
    assert F.add(1, 1) == 0
    assert F.neg(1) == 1


def test_gf3_addition():
    assert make_field(3).add(2, 2) == 1


def test_gf11_inverse_of_two_matches_exhaustive_table():
    F = make_field(11)
    table = {a: b for a in range(1, 11) for b in range(1, 11) if (a * b) % 11 == 1}
    assert table[2] == 6
    assert F.inv(2) == 6
    for a in range(1, 11):
        assert F.inv(a) == table[a]


def _poly_mul_mod(a, b, mod, p):
    """Schoolbook polynomial product reduced mod a monic polynomial (oracle)."""
    prod = [0] * (len(a) + len(b) - 1)
    for s, x in enumerate(a):
        for t, y in enumerate(b):
            prod[s + t] = (prod[s + t] + x * y) % p
    deg = len(mod) - 1
    while len(prod) > deg:
        c = prod.pop()
        for t in range(deg):
            prod[len(prod) - deg + t] = (prod[len(prod) - deg + t] - c * mod[t]) % p
    return prod + [0] * (deg - len(prod))


@pytest.mark.parametrize("q", [4, 8, 9, 16])
def test_extension_multiplication_matches_polynomial_oracle(q):
    F = field_of(q)
    p, k = F.p, F.k
    digits = lambda a: [(a // p**t) % p for t in range(k)]  # noqa: E731
    undigits = lambda ds: sum(d * p**t for t, d in enumerate(ds))  # noqa: E731
    for a, b in itertools.product(range(q), repeat=2):
        assert F.mul(a, b) == undigits(_poly_mul_mod(digits(a), digits(b), F.modulus, p))


def test_gf4_x_squared_is_x_plus_one():
    F = make_field(FieldSpec(2, 2, (1, 1, 1)))
    x, one = 2, 1
    assert F.mul(x, x) == F.add(x, one) == 3


@pytest.mark.parametrize("q", SMALL_ORDERS)
def test_field_axioms_exhaustive(q):
    F = field_of(q)
    e = np.arange(q)
    a, b, c = np.meshgrid(e, e, e, indexing="ij")
    assert np.array_equal(F.add(F.add(a, b), c), F.add(a, F.add(b, c)))
    assert np.array_equal(F.mul(F.mul(a, b), c), F.mul(a, F.mul(b, c)))
    assert np.array_equal(F.mul(a, F.add(b, c)), F.add(F.mul(a, b), F.mul(a, c)))
    a2, b2 = np.meshgrid(e, e, indexing="ij")
    assert np.array_equal(F.add(a2, b2), F.add(b2, a2))
    assert np.array_equal(F.mul(a2, b2), F.mul(b2, a2))
    assert np.array_equal(F.add(e, F.neg(e)), np.zeros(q))
    assert np.array_equal(F.sub(a2, b2), F.add(a2, F.neg(b2)))
    nz = e[1:]
    assert np.all(F.mul(nz, F.inv(nz)) == 1)
    assert np.array_equal(F.mul(e, 1), e)


@pytest.mark.parametrize("q", SMALL_ORDERS)
def test_elements_enumeration(q):
    els = field_of(q).elements()
    assert len(els) == len(set(els)) == q
    assert els[:2] == [0, 1]


def test_inverse_of_zero_raises():
    with pytest.raises(ZeroDivisionError):
        make_field(5).inv(0)
    with pytest.raises(ZeroDivisionError):
        make_field(4).inv(0)


@pytest.mark.parametrize(
    "spec",
    [
        FieldSpec(4),  # not prime
        FieldSpec(2, 2, (1, 0, 1)),  # x^2 + 1 = (x + 1)^2 over GF(2)
        FieldSpec(2, 2, (1, 1, 0)),  # not monic of degree 2
        FieldSpec(3, 2, (2, 0, 1)),  # x^2 - 1 over GF(3)
        FieldSpec(5, 2),  # no default modulus for 25
        FieldSpec(2, 17),  # too large
    ],
)
def test_invalid_specs_rejected(spec):
    with pytest.raises(ValueError):
        FiniteField(spec)


def test_default_moduli_and_parse():
    assert make_field(9).modulus == (1, 0, 1)
    assert make_field("2^3").q == 8
    assert make_field("3^2", "2,2,1").modulus == (2, 2, 1)


def test_random_element_deterministic_and_in_range():
    F = make_field(2)
    assert random_element(F, 7) in (0, 1)
    assert random_element(make_field(13), 123) == random_element(make_field(13), 123)


def test_random_element_frequencies_gf3():
    F = make_field(3)
    draws = F.random_element(np.random.default_rng(2024), size=10**4)
    freq = np.bincount(draws, minlength=3) / 10**4
    assert np.all((freq >= 0.28) & (freq <= 0.39))


def test_handle_is_hashable_and_comparable():
    assert make_field(9) == make_field("3^2")
    assert len({make_field(9), make_field("3^2"), make_field(3)}) == 2
