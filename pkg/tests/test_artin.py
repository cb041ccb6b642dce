import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from hewettalg.arith import RationalModOne, primes_up_to
from hewettalg.artin import (
    INF,
    LocalPlace,
    NormClass,
    NormClassGroupDatum,
    cyclotomic_artin_exponent,
    hilbert_symbol,
    is_local_square,
    norm_class,
    norm_exponent,
    norm_preimage_holds,
    place,
    relevant_places,
    squarefree_part,
    unit_norm_preimage,
    unramified_invariant,
)
from oracles import hilbert_brute, hilbert_real

nonzero = st.integers(-10**6, 10**6).filter(bool)


def test_places():
    assert place("inf") is INF and place(None) is INF
    assert place(7) == LocalPlace(7) and str(LocalPlace(7)) == "7"
    with pytest.raises(ValueError):
        LocalPlace(9)
    assert [str(v) for v in relevant_places(-15, 7)] == ["inf", "2", "3", "5", "7"]


def test_hilbert_examples():
    assert hilbert_symbol(-1, -1, 2) == -1
    assert hilbert_symbol(-1, -1, INF) == -1
    assert hilbert_symbol(-1, -1, 3) == 1
    assert hilbert_symbol(2, 3, 3) == -1
    assert hilbert_symbol(5, 5, 5) == 1  # -1 is a square mod 5
    assert hilbert_symbol(3, 3, 3) == -1
    assert hilbert_symbol(Fraction(1, 2), 3, 3) == hilbert_symbol(2, 3, 3)
    with pytest.raises(ValueError):
        hilbert_symbol(0, 1, 2)


def test_hilbert_matches_brute_force_at_2():
    for a in range(-50, 51):
        for b in range(-50, 51):
            if a and b:
                assert hilbert_symbol(a, b, 2) == hilbert_brute(a, b, 2), (a, b)


@pytest.mark.parametrize("ell", [3, 5, 7])
def test_hilbert_matches_brute_force_odd(ell):
    for a in range(-30, 31):
        for b in range(-30, 31):
            if a and b:
                assert hilbert_symbol(a, b, ell) == hilbert_brute(a, b, ell), (a, b)
    assert all(hilbert_symbol(a, b, INF) == hilbert_real(a, b) for a in (-3, 2) for b in (-5, 7))


def product(a, b):
    out = 1
    for v in relevant_places(a, b):
        out *= hilbert_symbol(a, b, v)
    return out


def test_product_formula_random():
    rng = random.Random(7)
    for _ in range(500):
        a = rng.choice([-1, 1]) * rng.randint(1, 10**6)
        b = rng.choice([-1, 1]) * rng.randint(1, 10**6)
        assert product(a, b) == 1


@settings(max_examples=200, deadline=None)
@given(nonzero, nonzero, nonzero, st.sampled_from([None, 2, 3, 5, 7, 11]))
def test_hilbert_bimultiplicative_and_symmetric(a, b, c, v):
    assert hilbert_symbol(a, b * c, v) == hilbert_symbol(a, b, v) * hilbert_symbol(a, c, v)
    assert hilbert_symbol(a, b, v) == hilbert_symbol(b, a, v)
    assert hilbert_symbol(a, -a, v) == 1
    if a != 1:
        assert hilbert_symbol(a, 1 - a, v) == 1
    assert hilbert_symbol(a * 4, b * 9, v) == hilbert_symbol(a, b, v)


@settings(max_examples=200, deadline=None)
@given(nonzero, st.sampled_from([None, 2, 3, 5, 13]))
def test_square_iff_trivial_symbol_everywhere(x, v):
    # x is a local square iff (x, y)_v = 1 for every y; test against a spanning set
    span = [-1, 2, 3, 5, 13, 7, 11, 13 * 2 - 1]
    if is_local_square(x, v):
        assert all(hilbert_symbol(x, y, v) == 1 for y in span)


def test_unramified_invariant():
    assert unramified_invariant(1, 4) == RationalModOne(1, 4)
    assert unramified_invariant(4, 4) == RationalModOne(0)
    for n in range(1, 9):
        for v1 in range(-5, 6):
            for v2 in range(-5, 6):
                assert unramified_invariant(v1 + v2, n) == unramified_invariant(v1, n) + unramified_invariant(v2, n)
    with pytest.raises(ValueError):
        unramified_invariant(1, 0)


def test_cyclotomic_artin_exponent():
    assert cyclotomic_artin_exponent(2, 5, 1) == 3
    assert cyclotomic_artin_exponent(2, 3, 1) == 2
    assert cyclotomic_artin_exponent(-1, 7, 2) == 48
    for p, alpha in [(3, 2), (5, 2), (7, 1)]:
        mod = p**alpha
        for u in range(1, 3 * mod):
            if u % p:
                s = cyclotomic_artin_exponent(u, p, alpha)
                assert s * u % mod == 1
                # multiplicative in u
                assert cyclotomic_artin_exponent(u * 2, p, alpha) == s * cyclotomic_artin_exponent(2, p, alpha) % mod
    with pytest.raises(ValueError):
        cyclotomic_artin_exponent(5, 5, 1)


def test_squarefree_and_norm_class():
    assert squarefree_part(-12) == -3 and squarefree_part(50) == 2
    with pytest.raises(ValueError):
        NormClassGroupDatum(LocalPlace(2), 4)
    d = NormClassGroupDatum(LocalPlace(2), -1)
    assert not d.split and d.order == 2 and d.ramified()
    assert norm_class(2, d) is NormClass.TRIVIAL  # 2 = 1 + 1
    assert norm_class(-1, d) is NormClass.NONTRIVIAL
    assert norm_class(-4, d) is NormClass.NONTRIVIAL
    assert NormClassGroupDatum(LocalPlace(5), -1).split
    assert not NormClassGroupDatum(LocalPlace(3), -1).ramified()


@settings(max_examples=200, deadline=None)
@given(nonzero, nonzero, st.sampled_from([-1, -2, -3, 5, 3]), st.sampled_from([INF, LocalPlace(2), LocalPlace(3), LocalPlace(5)]))
def test_norm_class_is_homomorphism(x, y, d, v):
    datum = NormClassGroupDatum(v, d)
    cx, cy, cxy = norm_class(x, datum), norm_class(y, datum), norm_class(x * y, datum)
    assert (cxy is NormClass.TRIVIAL) == (cx is cy)
    # norms a^2 - d b^2 are trivial
    b = (x % 17) + 1
    if y * y != d * b * b:
        assert norm_class(y * y - d * b * b, datum) is NormClass.TRIVIAL


def test_unit_norm_preimage_examples():
    assert unit_norm_preimage(2, 2, 2, 1) == 1
    assert norm_preimage_holds(1, 2, 2, 2, 1)
    assert unit_norm_preimage(3, 1, 3, 1) == 1
    assert norm_exponent(1, 2, 1, 2) == 0  # zeta * zeta^2 = 1 in F_4
    assert norm_exponent(1, 3, 1, 2) == 4  # zeta^(1+3) = -1 in F_9
    with pytest.raises(ValueError):
        unit_norm_preimage(2, 0, 1, 1)


def test_unit_norm_preimage_random():
    rng = random.Random(11)
    primes = primes_up_to(30)
    for _ in range(1000):
        ell = rng.choice(primes)
        t, d = rng.randint(1, 2), rng.randint(1, 4)
        omega_exp = rng.randrange(ell**t - 1) if ell**t > 2 else 0
        e = unit_norm_preimage(ell, t, d, omega_exp)
        assert norm_preimage_holds(e, ell, t, d, omega_exp)


def test_norm_exponent_brute():
    # compare with repeated multiplication of exponents in the cyclic group
    for ell, t, d in [(2, 1, 3), (3, 1, 2), (5, 1, 2), (2, 2, 2)]:
        q = ell**t
        big = q**d - 1
        for e in range(big):
            total, x = 0, e
            for _ in range(d):
                total += x
                x = x * q % big
            assert norm_exponent(e, ell, t, d) == total % big
