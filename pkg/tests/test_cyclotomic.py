from __future__ import annotations

from fractions import Fraction
from math import comb

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import cyclotomic_oracle
from so3period.cyclotomic import (CycloElem, LaurentPoly, cyclotomic_polynomial, cyclotomic_ring,
                                  euler_phi, even_part_to_half_ring, exact_div_int, format_terms,
                                  galois_conj, half_ring_to_double, mod_p_reduce, reduce)
from so3period.errors import NotDivisible
from so3period.so3 import is_odd_prime

A = LaurentPoly.monomial(1)
PRIMES_TO_61 = [q for q in range(3, 62) if is_odd_prime(q)]


# -- Laurent polynomials ----------------------------------------------------------


def test_laurent_canonical_form_drops_zeros():
    p = LaurentPoly({0: 1, 3: 0, -2: 5})
    assert p.coeffs == {0: 1, -2: 5}
    assert (A - A).is_zero()
    assert LaurentPoly({1: 2}) == 2 * A


def test_laurent_formatting():
    assert str(-A**2 - A**-2) == "-A^-2 - A^2"
    assert str(1 - 2 * A + 2 * A**2 - A**3) == "1 - 2A + 2A^2 - A^3"
    assert str(LaurentPoly()) == "0"
    assert format_terms([(0, Fraction(1, 2)), (1, Fraction(-3, 5))], "x") == "1/2 - (3/5)x"


def test_negative_power_only_for_monomials():
    assert (2 * A**3) ** -1 == LaurentPoly({-3: Fraction(1, 2)})
    with pytest.raises(ValueError):
        (1 + A) ** -1


def test_invert_and_shift():
    f = 1 + 3 * A**2 - A**-5
    assert f.invert_variable() == 1 + 3 * A**-2 - A**5
    assert f.shift(5) == f * A**5


def test_reduce_mod_period_and_prime():
    f = 7 * A**12 + 3 * A**2 - A**-8
    assert f.reduce_mod(period=10) == 9 * A**2
    assert f.reduce_mod(5, 10) == LaurentPoly({2: 4}, modulus=5)


laurents = st.dictionaries(st.integers(-8, 8), st.integers(-5, 5), max_size=6).map(LaurentPoly)


@given(laurents, laurents, laurents)
def test_laurent_ring_axioms(f, g, h):
    assert f * (g + h) == f * g + f * h
    assert (f * g) * h == f * (g * h)
    assert f * g == g * f
    assert (f * g).invert_variable() == f.invert_variable() * g.invert_variable()


# -- cyclotomic polynomials -------------------------------------------------------


@pytest.mark.parametrize("n", range(1, 61))
def test_cyclotomic_polynomial_matches_sympy(n):
    assert cyclotomic_polynomial(n) == cyclotomic_oracle(n)
    assert len(cyclotomic_polynomial(n)) - 1 == euler_phi(n)


@pytest.mark.parametrize("p", PRIMES_TO_61)
def test_phi_2p_is_binomial_mod_p(p):
    phi = cyclotomic_polynomial(2 * p)
    assert [c % p for c in phi] == [comb(p - 1, k) % p for k in range(p)]


def test_phi_4p_is_phi_2p_of_square():
    for p in (5, 7, 11):
        small, big = cyclotomic_polynomial(2 * p), cyclotomic_polynomial(4 * p)
        spread = [0] * (2 * len(small) - 1)
        spread[0::2] = small
        assert list(big) == spread


# -- quotient rings ---------------------------------------------------------------


@pytest.mark.parametrize("N", [10, 14, 20, 28])
def test_generator_has_exact_order(N):
    ring = cyclotomic_ring(N)
    x = ring.gen()
    assert x ** N == ring.one()
    for d in range(1, N):
        if N % d == 0:
            assert x ** d != ring.one()


def test_negative_exponents_use_inverse_power():
    ring = cyclotomic_ring(14)
    assert reduce(A**-1, ring) == ring.monomial(13)
    assert ring.monomial(-1) * ring.gen() == ring.one()


def test_reduce_is_homomorphism_from_laurent():
    ring = cyclotomic_ring(10)
    f, g = 1 - A**3 + 2 * A**-4, A**7 - 3 * A
    assert reduce(f * g, ring) == reduce(f, ring) * reduce(g, ring)
    assert reduce(f + g, ring) == reduce(f, ring) + reduce(g, ring)


def _elements(N):
    deg = euler_phi(N)
    return st.lists(st.integers(-6, 6), min_size=deg, max_size=deg).map(
        lambda cs: cyclotomic_ring(N).elem(cs))


@settings(max_examples=60)
@given(st.sampled_from([10, 14, 20]).flatmap(lambda N: st.tuples(_elements(N), _elements(N), _elements(N))))
def test_ring_axioms(triple):
    a, b, c = triple
    ring = a.ring
    assert a + b == b + a
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a * ring.one() == a
    assert a + ring.zero() == a
    assert a - a == ring.zero()


@settings(max_examples=60)
@given(st.sampled_from([10, 14, 20, 22]).flatmap(lambda N: st.tuples(_elements(N), _elements(N))))
def test_galois_conjugation_is_involutive_automorphism(pair):
    a, b = pair
    assert galois_conj(galois_conj(a)) == a
    assert galois_conj(a * b) == galois_conj(a) * galois_conj(b)
    assert galois_conj(a + b) == galois_conj(a) + galois_conj(b)


@settings(max_examples=40)
@given(st.sampled_from([5, 7]).flatmap(lambda p: st.tuples(_elements(2 * p), _elements(2 * p))))
def test_mod_p_reduction_is_homomorphism(pair):
    a, b = pair
    p = a.ring.N // 2
    assert mod_p_reduce(a * b, p) == mod_p_reduce(a, p) * mod_p_reduce(b, p)
    assert mod_p_reduce(a + b, p) == mod_p_reduce(a, p) + mod_p_reduce(b, p)
    assert all(0 <= c < p for c in mod_p_reduce(a, p).coeffs)


def test_power_basis_has_degree_phi():
    ring = cyclotomic_ring(28)
    assert ring.degree == 12
    assert len(ring.gen().coeffs) == 12


def test_rational_coefficients_are_exact():
    ring = cyclotomic_ring(20)
    half = ring.one() * Fraction(1, 2)
    assert half + half == ring.one()
    assert not half.is_integral()
    assert (half * 2).is_integral()


def test_exact_division_of_gauss_sum():
    # sum_{m=1}^{2p} (-1)^m A^{m^2} in Z[zeta_20] (A = zeta^2) is divisible by 2 but not by 10
    ring = cyclotomic_ring(20)
    g = ring.from_poly({})
    for m in range(1, 11):
        g = g + ring.monomial(2 * m * m, (-1) ** m)
    half = exact_div_int(g, 2)
    assert half * 2 == g
    with pytest.raises(NotDivisible):
        exact_div_int(g, 10)


def test_exact_division_rejects_remainders():
    with pytest.raises(NotDivisible):
        exact_div_int(3 + 4 * A, 2)
    assert exact_div_int(6 + 4 * A, 2) == 3 + 2 * A


def test_half_ring_round_trip():
    small = cyclotomic_ring(14).elem([1, -2, 0, 3, 0, 1])
    big = half_ring_to_double(small)
    assert big.ring.N == 28
    assert even_part_to_half_ring(big) == small
    with pytest.raises(ValueError):
        even_part_to_half_ring(cyclotomic_ring(28).gen())


def test_half_ring_map_is_multiplicative():
    r = cyclotomic_ring(10)
    a, b = r.elem([1, 2, 0, -1]), r.elem([0, 3, -1, 1])
    assert half_ring_to_double(a * b) == half_ring_to_double(a) * half_ring_to_double(b)


def test_elements_are_immutable_values():
    r = cyclotomic_ring(10)
    a = r.elem([1, 2])
    assert isinstance(a, CycloElem)
    assert hash(a) == hash(r.elem([1, 2, 0, 0]))
    assert a.format("A") == "1 + 2A"
