import math
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from altrace import classnum, signs, trace
from altrace.arith import is_squarefree, primes_up_to, sigma


def _delta_q_expansion(terms: int) -> list[int]:
    """Coefficients tau(1..terms) of q prod (1-q^n)^24, exact integers."""
    eta = [0] * (terms + 1)
    eta[0] = 1
    for n in range(1, terms + 1):
        # multiply by (1 - q^n)
        for i in range(terms, n - 1, -1):
            eta[i] -= eta[i - n]
    f = [1] + [0] * terms
    for _ in range(24):
        out = [0] * (terms + 1)
        for i, a in enumerate(f):
            if a:
                for j, b in enumerate(eta[: terms + 1 - i]):
                    if b:
                        out[i + j] += a * b
        f = out
    return f[:terms]  # f[i] = tau(i + 1)


def test_level_one_traces_match_delta_function():
    tau = _delta_q_expansion(14)
    assert tau[0] == 1 and tau[1] == -24 and tau[2] == 252
    for ell in (2, 3, 5, 7, 11, 13):
        q = 3 if ell == 2 else 2
        assert trace.t_full(12, q, 0, 1, ell) == tau[ell - 1], ell


def test_level_one_higher_weights():
    # S_16 = Delta*E4, S_18 = Delta*E6, S_20 = Delta*E8, S_22 = Delta*E10:
    # tr T_2 is tau(2) + (Eisenstein q-coefficient)
    for k, a2 in ((16, -24 + 240), (18, -24 - 504), (20, -24 + 480), (22, -24 - 264)):
        assert trace.t_full(k, 3, 0, 1, 2) == a2, k


def test_known_weight_two_newform_traces():
    # level 11: single form with a_2 = -2; level 23: Galois pair with
    # a_2 summing to -1; level 37: forms with a_2 = -2 and 0
    assert trace.t_new_level(2, 11, 2) == -2
    assert trace.t_new_level(2, 23, 2) == -1
    assert trace.t_new_level(2, 37, 2) == -2
    # Fricke traces: tr T_2 W_11 = w * a_2 = (-1)(-2) = 2
    assert trace.t_new(2, 11, 1, 1, 2) == 2


def test_dimension_from_trace_at_one():
    for k, n, dim in ((12, 1, 1), (2, 11, 1), (2, 22, 0), (2, 23, 2), (4, 13, 3), (2, 37, 2)):
        assert trace.t_new_level(k, n, 1) == dim, (k, n)


def test_pk_recurrence_against_sign_tables():
    for k in range(2, 62, 2):
        assert trace.pk_from_s2(k, 1, 1) == signs.pk_one(k), k
        assert trace.pk_from_s2(k, 2, 1) == signs.pk_sqrt2(k), k
        assert trace.pk_from_s2(k, 3, 1) == signs.pk_sqrt3(k), k
        assert trace.pk_from_s2(k, 0, 1) == (-1) ** (k // 2 - 1), k
    # p_k(s, ell) for s^2 = 4 ell is the derivative-type boundary value
    assert trace.pk_from_s2(12, 4, 1) == 11


def test_pk_rejects_odd_weight():
    with pytest.raises(ValueError):
        trace.pk_from_s2(3, 1, 1)


def test_two_paths_agree_at_ell_one():
    for k in (2, 4, 6):
        for q, r in ((2, 1), (2, 2), (2, 3), (3, 1), (3, 2), (5, 1), (7, 1), (2, 4), (3, 3)):
            for m in range(1, 40):
                if math.gcd(m, q) > 1:
                    continue
                assert trace.t_new(k, q, r, m, 1) == signs.delta(k, q, r, m), (k, q, r, m)


def test_squarefree_path_matches_prime_power_path():
    for k in (2, 4, 6):
        for q in (2, 3, 5, 7, 11):
            for m in range(1, 30):
                if math.gcd(m, q) > 1 or not is_squarefree(q * m):
                    continue
                for ell in (1, 2, 3, 5):
                    if math.gcd(ell, q * m) > 1:
                        continue
                    assert trace.t_new_squarefree(k, q, m, ell) == trace.t_new(k, q, 1, m, ell), (k, q, m, ell)


def test_fricke_full_space_identity():
    for n in (11, 13, 21, 29, 37, 55, 101, 210):
        for ell in (1, 2, 3, 5, 7):
            if math.gcd(ell, n) > 1 or 4 * ell >= n:
                continue
            # oldform W_N contributions cancel in conjugate pairs, so the
            # full-space Fricke trace equals the newspace one
            assert trace.t_full_fricke(2, n, ell) == trace.t_new_squarefree(2, n, 1, ell), (n, ell)


def test_fricke_rejects_large_hecke_index():
    with pytest.raises(ValueError):
        trace.t_full_fricke(2, 11, 3)


def test_weight_two_sigma_term():
    # with 4*ell < q only s = 0 survives the elliptic sum, so the weight-2
    # trace is -H(-4 q ell)/2 plus the sigma(ell) correction
    q, ell = 13, 3
    k2 = trace.t_new(2, q, 1, 1, ell)
    s0 = -Fraction(classnum.alpha1_12(-q * ell, 0), 24)
    assert k2 == s0 + sigma(ell)


def test_xi_values_and_multiplicativity():
    # xi(disc, p) at split p is 1 - 2/(p+1) type weight; pin the structure
    # via multiplicativity and a direct 1 at m = 1
    assert trace.xi(-4, 1) == 1
    for disc in (-4, -8, -3, -20):
        for m1 in (2, 3, 5, 7, 9):
            for m2 in (11, 13):
                assert trace.xi(disc, m1 * m2) == trace.xi(disc, m1) * trace.xi(disc, m2), (disc, m1, m2)


def test_t_new_squarefree_guards():
    with pytest.raises(ValueError):
        trace.t_new_squarefree(2, 4, 1, 3)  # Q not squarefree
    with pytest.raises(ValueError):
        trace.t_new_squarefree(2, 3, 3, 5)  # Q*m not squarefree... 3*3 = 9
    with pytest.raises(ValueError):
        trace.t_new_squarefree(2, 1, 15, 4)  # Q = 1 needs prime Hecke index
    with pytest.raises(ValueError):
        trace.t_new(3, 5, 1, 1, 1)  # odd weight


def test_hecke_index_must_be_coprime():
    with pytest.raises(ValueError):
        trace.t_new(4, 5, 1, 3, 5)
    with pytest.raises(ValueError):
        trace.t_new_level(2, 33, 3)


@given(
    st.sampled_from([2, 4, 6, 8]),
    st.sampled_from([(2, 1), (3, 1), (5, 1), (3, 2), (2, 3)]),
    st.integers(min_value=1, max_value=24),
)
def test_new_trace_dimension_bound_at_ell_one(k, qr, m):
    q, r = qr
    if math.gcd(m, q) > 1:
        return
    tr_w = trace.t_new(k, q, r, m, 1)
    dim = trace.t_new_level(k, q**r * m, 1)
    assert abs(tr_w) <= dim
    assert (dim + tr_w) % 2 == 0
