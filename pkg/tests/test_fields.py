from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import poly_mulmod
from skewroos.errors import InvalidModulus, NotInField, NotPrimePower
from skewroos.fields import (ExtensionField, conway_polynomial, is_irreducible, prime_field,
                             prime_power, primitivity_failure, smallest_primitive)

GF2 = prime_field(2)
GF3 = prime_field(3)


def test_prime_power():
    assert prime_power(2) == (2, 1)
    assert prime_power(81) == (3, 4)
    assert prime_power(125) == (5, 3)
    for bad in (0, 1, 6, 12, 100):
        with pytest.raises(NotPrimePower):
            prime_power(bad)


def test_smallest_primitive_known_values():
    assert smallest_primitive(GF2, 2) == (1, 1, 1)
    assert smallest_primitive(GF2, 3) == (1, 0, 1, 1)   # low-degree coefficients compared first
    assert smallest_primitive(GF2, 4) == (1, 0, 0, 1, 1)
    assert smallest_primitive(GF3, 2) == (2, 1, 1)


def test_smallest_primitive_is_minimal():
    # every lexicographically smaller monic degree-4 polynomial over GF(2) fails
    best = smallest_primitive(GF2, 4)
    from itertools import product
    for cs in product(range(2), repeat=4):
        if cs < best[:4]:
            assert primitivity_failure(GF2, cs + (1,)) is not None


def test_conway_matches_published_binary_list():
    published = {
        2: (1, 1, 1),
        5: (1, 0, 1, 0, 0, 1),
        6: (1, 1, 0, 1, 1, 0, 1),
        7: (1, 1, 0, 0, 0, 0, 0, 1),
        12: (1, 1, 0, 1, 0, 1, 1, 1, 0, 0, 0, 0, 1),
    }
    for n, poly in published.items():
        assert conway_polynomial(2, n) == poly


def test_conway_over_three():
    assert conway_polynomial(3, 1) == (1, 1)
    assert conway_polynomial(3, 2) == (2, 2, 1)
    assert conway_polynomial(3, 5) == (1, 2, 0, 0, 0, 1)


def test_modulus_validation():
    with pytest.raises(InvalidModulus):
        ExtensionField(GF2, (1, 0, 1))            # x^2 + 1 = (x + 1)^2
    with pytest.raises(InvalidModulus):
        ExtensionField(GF2, (1, 1, 1, 1, 1))      # irreducible, order 5 root
    with pytest.raises(InvalidModulus):
        ExtensionField(GF2, (1, 1, 0))            # not monic
    assert is_irreducible(GF2, (1, 1, 1, 1, 1))
    assert primitivity_failure(GF2, (1, 1, 1, 1, 1)) == "irreducible but not primitive"


def test_check_rejects_foreign_values():
    F = ExtensionField(GF2, (1, 1, 0, 1))
    with pytest.raises(NotInField):
        F.check(8)
    with pytest.raises(NotInField):
        F.check(-1)


@pytest.mark.parametrize("p,modulus", [
    (2, (1, 1, 0, 1, 1, 0, 1)),
    (3, (2, 2, 1, 0, 2, 0, 1)),
    (5, (2, 4, 1)),
])
@settings(max_examples=150, deadline=None)
@given(data=st.data())
def test_multiplication_matches_polynomial_oracle(p, modulus, data):
    F = ExtensionField(prime_field(p), modulus)
    a = data.draw(st.integers(0, F.order - 1))
    b = data.draw(st.integers(0, F.order - 1))
    assert F.coords(F.mul(a, b)) == poly_mulmod(p, modulus, F.coords(a), F.coords(b))


@pytest.mark.parametrize("tables", [True, False])
def test_table_and_generic_paths_agree(tables, rng):
    modulus = (2, 2, 1, 0, 2, 0, 1)
    F = ExtensionField(GF3, modulus, tables=tables)
    for _ in range(300):
        a, b = rng.randrange(F.order), rng.randrange(1, F.order)
        assert F.coords(F.mul(a, b)) == poly_mulmod(3, modulus, F.coords(a), F.coords(b))
        assert F.mul(F.div(a, b), b) == a
        assert F.add(F.sub(a, b), b) == a
        assert F.add(a, F.neg(a)) == 0
        assert F.coords(F.add(a, b)) == [(x + y) % 3 for x, y in zip(F.coords(a), F.coords(b))]


def test_exp_log_and_frobenius():
    F = ExtensionField(GF2, (1, 1, 0, 1, 1, 0, 1))
    for k in range(63):
        assert F.log(F.exp(k)) == k
    assert F.exp(63) == 1
    for k in range(1, 63):
        x = F.exp(k)
        assert F.frobenius(x) == F.mul(x, x)
        assert F.frobenius(x, 6) == x
        assert F.pow(x, 63) == 1


def test_coords_round_trip(rng):
    F = ExtensionField(prime_field(5), (2, 4, 1))
    for _ in range(50):
        x = rng.randrange(F.order)
        assert F.from_coords(F.coords(x)) == x
    assert F.coords(0) == [0, 0]


def test_extension_over_non_prime_base():
    GF4 = ExtensionField(GF2, (1, 1, 1))
    F = ExtensionField(GF4, smallest_primitive(GF4, 2))
    assert F.order == 16
    g = F.gen
    seen = {F.pow(g, k) for k in range(15)}
    assert len(seen) == 15 and 0 not in seen
    for x in range(1, 16):
        assert F.mul(x, F.inv(x)) == 1
        assert F.frobenius(x, 2) == x       # Frobenius over GF(4) has order 2
