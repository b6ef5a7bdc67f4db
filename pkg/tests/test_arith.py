import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from altrace import arith


def test_factor_roundtrip_small():
    for n in range(1, 2000):
        fac = arith.factor(n)
        assert fac.value == n
        assert math.prod(p**e for p, e in fac.factors) == n
        assert all(arith.is_prime(p) for p, _ in fac.factors)


def test_factor_beyond_sieve_limit():
    # 10_000_019 and 10_000_079 are primes just past the default sieve span
    n = 10_000_019 * 3
    assert arith.factor(n).factors == ((3, 1), (10_000_019, 1))


def test_kronecker_against_euler_criterion():
    for p in (3, 5, 7, 11, 13, 17, 19, 23):
        for a in range(-30, 30):
            expect = 0 if a % p == 0 else (1 if pow(a % p, (p - 1) // 2, p) == 1 else p - 1)
            expect = -1 if expect == p - 1 else expect
            assert arith.kronecker(a, p) == expect, (a, p)


def test_kronecker_at_two_and_units():
    # (a|2) is the 8-periodic second supplement
    table = {1: 1, 3: -1, 5: -1, 7: 1}
    for a in range(-40, 40):
        if a % 2 == 0:
            assert arith.kronecker(a, 2) == 0
        else:
            assert arith.kronecker(a, 2) == table[a % 8]
    assert arith.kronecker(5, 1) == 1
    assert arith.kronecker(0, 1) == 1


@given(st.integers(min_value=-300, max_value=300), st.integers(min_value=1, max_value=60), st.integers(min_value=1, max_value=60))
def test_kronecker_multiplicative_in_lower(a, n1, n2):
    assert arith.kronecker(a, n1 * n2) == arith.kronecker(a, n1) * arith.kronecker(a, n2)


def test_primes_up_to_matches_is_prime():
    ps = arith.primes_up_to(500)
    assert ps[:6] == [2, 3, 5, 7, 11, 13]
    assert set(ps) == {n for n in range(2, 501) if arith.is_prime(n)}


@given(st.integers(min_value=1, max_value=4000))
def test_phi_divisor_sum(n):
    assert sum(arith.euler_phi(d) for d in arith.divisors(n)) == n


@given(st.integers(min_value=2, max_value=4000))
def test_mobius_divisor_sum(n):
    assert sum(arith.mobius(d) for d in arith.divisors(n)) == 0


def test_mu_star_mu_prime_powers():
    assert [arith.mu_star_mu(2**e) for e in range(5)] == [1, -2, 1, 0, 0]
    assert arith.mu_star_mu(6) == 4
    # Dirichlet inverse of sigma0: (mu*mu) * sigma0 = e
    for n in range(2, 200):
        total = sum(arith.mu_star_mu(d) * arith.sigma0(n // d) for d in arith.divisors(n))
        assert total == 0, n


@given(st.integers(min_value=1, max_value=500), st.integers(min_value=1, max_value=500))
def test_sigma_multiplicative(a, b):
    if math.gcd(a, b) == 1:
        assert arith.sigma(a * b) == arith.sigma(a) * arith.sigma(b)


def test_squarefree_and_core():
    assert [n for n in range(1, 31) if not arith.is_squarefree(n)] == [4, 8, 9, 12, 16, 18, 20, 24, 25, 27, 28]
    assert arith.core_square_part(720) == 12  # 720 = 12^2 * 5
    assert arith.vp(720, 2) == 4 and arith.vp(720, 3) == 2 and arith.vp(720, 7) == 0


def test_omega_variants():
    m = 2**2 * 3 * 5**2 * 7
    assert arith.omega(m) == 4
    assert arith.omega1(m) == 2  # 3 and 7
    # p^2 || m for p in {2, 5}; (n|p) = 1 picks out squares mod p
    assert arith.omega2(1, m) == 2
    assert arith.omega2(3, m) == 0  # 3 is a non-residue mod both 2's... (3|2)=-1, (3|5)=-1


def test_divisors_with_squarefree_cofactor():
    m = 360  # 2^3 3^2 5
    ds = arith.divisors_with_squarefree_cofactor(m)
    assert len(ds) == 2 ** arith.omega(m)
    assert all(m % d == 0 and arith.is_squarefree(m // d) for d in ds)
    # and no other divisor qualifies
    assert set(ds) == {d for d in arith.divisors(m) if arith.is_squarefree(m // d)}


def test_dirichlet_convolve_identities():
    one_star_one = arith.dirichlet_convolve(arith.ONE, arith.ONE)
    for n in range(1, 120):
        assert one_star_one(n) == arith.sigma0(n)
    mu_star_id = arith.dirichlet_convolve(arith.MOBIUS, arith.IDENTITY)
    for n in range(1, 120):
        assert mu_star_id(n) == arith.euler_phi(n)


def test_mobius_squared_transform_inverts_sigma0_convolution():
    f = arith.euler_phi
    for m in range(1, 80):
        g = lambda t: sum(arith.sigma0(d) * f(t // d) for d in arith.divisors(t))
        assert arith.mobius_squared_transform(g, m) == f(m)
