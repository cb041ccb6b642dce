import random
from fractions import Fraction

import numpy as np
import pytest

from hewettalg.arith import generated_units, is_prime, primitive_root
from hewettalg.crossed import (
    CrossedProductAlgebra,
    CyclicGaloisDatum,
    ExtensionElement,
    ZeroDivisorError,
    cocycle_phi,
    extension_identity,
    extension_multiply,
    extension_power,
    matmul,
    matrix_induction,
    matrix_trace,
    matvec,
    regular_rep,
)
from hewettalg.cyclotomic import CycloNumber
from conftest import dprime


def cyclic_datum(n):
    """Q(zeta_q) over its degree-n-subfield-fixing... M/K cyclic of degree n:
    K = Q, M the degree n subfield of Q(zeta_q) for a prime q = 1 mod n."""
    q = next(q for q in range(n + 1, 10**4) if is_prime(q) and (q - 1) % n == 0)
    g = primitive_root(q)
    top = generated_units(q, [pow(g, n, q)])
    return CyclicGaloisDatum(q, frozenset(range(1, q)), top, g)


def test_cocycle_examples():
    for n in range(1, 9):
        d = cyclic_datum(n)
        for i in range(n):
            for j in range(n):
                if i + j < n:
                    assert cocycle_phi(i, j, d) == 0
            assert cocycle_phi(0, i, d) == 0
        if n > 1:
            assert cocycle_phi(n - 1, 1, d) == 1


def test_cocycle_identity_exhaustive():
    for n in range(1, 13):
        d = cyclic_datum(n)
        assert sorted(d.chi(i) for i in range(n)) == [Fraction(i, n) for i in range(n)]
        for g1 in range(n):
            for g2 in range(n):
                assert cocycle_phi(g1, g2, d) in (0, 1)
                for g3 in range(n):
                    lhs = cocycle_phi(g1, g2, d) + cocycle_phi((g1 + g2) % n, g3, d)
                    rhs = cocycle_phi(g2, g3, d) + cocycle_phi(g1, (g2 + g3) % n, d)
                    assert lhs == rhs


def test_datum_validation():
    with pytest.raises(ValueError):
        CyclicGaloisDatum(5, frozenset({1, 4}), frozenset({1}), 2)  # sigma not in H_K
    with pytest.raises(ValueError):
        CyclicGaloisDatum(5, frozenset({1, 2, 3, 4}), frozenset({1}), 4)  # order 2, not 4
    d = CyclicGaloisDatum.build(13, [2], [], 2)
    assert d.degree == 12


def test_multiply_examples(config):
    B = dprime(*config).algebra
    rng = random.Random(1)
    y = B.random_element(rng)
    S, one = B.S(), B.one()
    assert one * y == y and y * one == y
    assert B.monomial(CycloNumber.one(B.conductor), B.n - 1) * S == B.scalar(B.a)
    x = B.random_element(rng).coeffs[0]
    assert S * B.scalar(x) == B.monomial(B.datum.act(1, x), 1)
    assert B.power(S, B.n) == B.scalar(B.a)


def _monomial_samples(B):
    N = B.conductor
    z = CycloNumber.zeta(N)
    vals = [CycloNumber.one(N), B.datum.project_to_M(z + 2)]
    return [B.monomial(x, i) for i in range(B.n) for x in vals]


def test_associativity_on_monomials_exhaustive():
    for n in range(1, 7):
        d = cyclic_datum(n)
        a = CycloNumber.from_rational(d.conductor, 3)
        B = CrossedProductAlgebra(d, a)
        mons = _monomial_samples(B)
        for x in mons:
            for y in mons:
                xy = x * y
                for z in mons:
                    assert xy * z == x * (y * z)


def test_associativity_dense(config):
    B = dprime(*config).algebra
    rng = random.Random(sum(config))
    for _ in range(20):
        x, y, z = (B.random_element(rng) for _ in range(3))
        assert (x * y) * z == x * (y * z)
        assert x * (y + z) == x * y + x * z


def test_extension_group():
    for config in [(3, 1, 1), (5, 1, 1)]:
        D = dprime(*config)
        B = D.algebra
        one = extension_identity(B)
        e = ExtensionElement(D.zeta, 1)
        assert extension_multiply(one, e, B) == e
        sigma_lift = ExtensionElement(CycloNumber.one(B.conductor), 1)
        assert extension_power(sigma_lift, B.n, B) == ExtensionElement(B.a, 0)
        x, y = D.omega, D.zeta + 1
        assert extension_multiply(ExtensionElement(x, 0), ExtensionElement(y, 0), B) == ExtensionElement(x * y, 0)
        # exhaustive associativity on <(omega,1), (zeta,1), (1,sigma)>
        gens = [ExtensionElement(D.omega, 0), ExtensionElement(D.zeta, 0), sigma_lift]
        elems, frontier = {one}, [one]
        while frontier:
            nxt = []
            for u in frontier:
                for g in gens:
                    v = extension_multiply(u, g, B)
                    if v not in elems:
                        elems.add(v)
                        nxt.append(v)
            frontier = nxt
        elems = list(elems)
        index = {u: k for k, u in enumerate(elems)}
        table = np.array([[index[extension_multiply(u, v, B)] for v in elems] for u in elems])
        n = len(elems)
        for z in range(n):
            assert np.array_equal(table[table, z], table[np.arange(n)[:, None], table[:, z][None, :]])
        # the extension agrees with multiplication in the algebra
        for u in elems[:10]:
            for v in elems[:10]:
                assert extension_multiply(u, v, B).as_crossed(B) == u.as_crossed(B) * v.as_crossed(B)


def test_regular_rep(config):
    B = dprime(*config).algebra
    rng = random.Random(2)
    I = regular_rep(B.one(), B)
    assert all(I[i][j] == (1 if i == j else 0) for i in range(B.n) for j in range(B.n))
    for _ in range(8):
        y, z = B.random_element(rng), B.random_element(rng)
        assert matvec(regular_rep(y, B), list(z.coeffs)) == list((z * y).coeffs)
        assert regular_rep(y * z, B) == matmul(regular_rep(z, B), regular_rep(y, B))
        tr = CycloNumber.zero(B.conductor)
        for i in range(B.n):
            tr = tr + B.datum.act(i, y.coeffs[0])
        assert matrix_trace(regular_rep(y, B)) == tr


def test_center(config):
    D = dprime(*config)
    B = D.algebra
    N = B.conductor
    center_elt = B.scalar(D.omega + 3)
    for j in range(len(CycloNumber.zero(N).num)):
        x = B.scalar(B.datum.project_to_M(CycloNumber.zeta(N, j)))
        assert center_elt * x == x * center_elt
    assert center_elt * B.S() == B.S() * center_elt


def test_inverse_and_zero_divisors():
    B = dprime(5, 1, 1).algebra
    rng = random.Random(4)
    for _ in range(5):
        y = B.random_element(rng)
        yi = B.inverse(y)
        assert yi * y == B.one() and y * yi == B.one()
    # a = 1 gives a split algebra with (1 - S)(1 + S + ... + S^(n-1)) = 0
    d = cyclic_datum(4)
    A = CrossedProductAlgebra(d, CycloNumber.one(d.conductor))
    S = A.S()
    geo = A.one() + S + S * S + S * S * S
    assert ((A.one() - S) * geo).is_zero()
    assert A.is_zero_divisor(A.one() - S)
    with pytest.raises(ZeroDivisorError):
        A.inverse(geo)


def test_algebra_validation_and_json():
    d = cyclic_datum(4)
    with pytest.raises(ValueError):
        CrossedProductAlgebra(d, CycloNumber.zero(d.conductor))
    with pytest.raises(ValueError):
        CrossedProductAlgebra(d, CycloNumber.zeta(d.conductor))  # not in K = Q
    B = dprime(5, 1, 1).algebra
    data = B.to_json()
    assert data["conductor"] == 20 and data["sigma"] == B.datum.sigma
    assert generated_units(20, data["H_K"]) == B.datum.base_fixing
    assert data["a"] == CycloNumber.zeta(20, 5).to_json()
    with pytest.raises(ValueError):
        B.one() * dprime(3, 1, 1).algebra.one()


def test_matrix_induction():
    B = dprime(3, 1, 1).algebra  # n = 2
    r1 = matrix_induction(B, 1)
    assert r1.s_power_ok and r1.dimension == 4
    A1 = r1.algebra
    x = B.random_element(random.Random(0))
    lifted = tuple((c,) for c in x.coeffs)
    assert A1.multiply(lifted, lifted) == tuple((c,) for c in (x * x).coeffs)

    r2 = matrix_induction(B, 2)
    A = r2.algebra
    assert r2.s_power_ok and r2.shift_order == 4 and r2.dimension == 16
    assert A.power(A.S(), 4) == A.monomial((B.a, B.a), 0)
    # the induced algebra is a matrix algebra, so it has zero divisors
    N = B.conductor
    e1 = A.monomial((CycloNumber.one(N), CycloNumber.zero(N)), 0)
    e2 = A.monomial((CycloNumber.zero(N), CycloNumber.one(N)), 0)
    assert all(all(c.is_zero() for c in comp) for comp in A.multiply(e1, e2))
    for k in (1, 2, 3):
        assert matrix_induction(dprime(5, 1, 1).algebra, k).dimension == (4 * k) ** 2
