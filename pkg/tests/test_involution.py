import random
from fractions import Fraction

import pytest

from hewettalg.artin import INF, LocalPlace, NormClass, NormClassGroupDatum, norm_class
from hewettalg.crossed import ZeroDivisorError, matrix_trace, regular_rep
from hewettalg.cyclotomic import CycloNumber, complex_embed
from hewettalg.involution import (
    HermitianFormDatum,
    Laurent,
    block_matrix_model,
    dagger,
    form_invariants,
    gu_reference_invariants,
    is_unitary,
    norm_xi_check,
    positivity_report,
    reduced_trace,
    reference_form,
)
from conftest import embedding, involuted
from oracles import eval_power_basis


def test_dagger_examples():
    A = involuted(5, 1, 1)
    D = A.D
    B = A.algebra
    # T^dagger = T^-1, conj acts on scalars
    assert dagger(D.T, A) * D.T == B.one()
    assert dagger(D.T, A) == B.inverse(D.T)
    z = CycloNumber.zeta(20)
    assert dagger(B.scalar(z), A) == B.scalar(z.conj())
    assert dagger(B.one(), A) == B.one()


def test_dagger_axioms(config):
    A = involuted(*config)
    B = A.algebra
    rng = random.Random(hash(config) & 0xFFFF)
    for _ in range(40):
        x, y = B.random_element(rng), B.random_element(rng)
        assert dagger(dagger(x, A), A) == x
        assert dagger(x * y, A) == dagger(y, A) * dagger(x, A)
        assert dagger(x + y, A) == dagger(x, A) + dagger(y, A)
    # the center is stabilised and conjugated
    c = B.scalar(A.D.omega)
    assert dagger(c, A) == B.scalar(A.D.omega.conj())


def test_unitarity_of_embedded_group(config):
    rep = embedding(*config)
    A = involuted(*config)
    assert all(is_unitary(g, A) for g in rep.subgroup.elements)


def test_unitarity_negative_cases():
    A = involuted(3, 1, 1)
    B = A.algebra
    assert not is_unitary(B.scalar(CycloNumber.from_rational(24, 2)), A)
    with pytest.raises(ZeroDivisorError):
        is_unitary(B.zero(), A)


def test_reduced_trace(config):
    A = involuted(*config)
    B = A.algebra
    rng = random.Random(3)
    assert reduced_trace(B.one(), A) == CycloNumber.from_rational(B.conductor, B.n)
    assert reduced_trace(A.D.T, A).is_zero()
    for _ in range(10):
        x, y = B.random_element(rng), B.random_element(rng)
        t = reduced_trace(x, A)
        assert t == matrix_trace(regular_rep(x, B))
        assert A.fixed_field.contains(t)
        assert reduced_trace(x * y, A) == reduced_trace(y * x, A)


def test_positivity(config):
    A = involuted(*config)
    B = A.algebra
    rng = random.Random(5)
    for _ in range(15):
        x = B.random_element(rng)
        if x.is_zero():
            continue
        r = positivity_report(x, A, 50)
        assert r.identity_holds and r.verdict == "positive"
        # cross-check one embedding in floating point
        s, ball = r.values[0]
        approx = eval_power_basis(r.trace.coeffs, r.trace.conductor, s)
        assert abs(approx.real - ball.mid().real) < 1e-6 * max(1.0, abs(approx.real))
    with pytest.raises(ValueError):
        positivity_report(B.zero(), A)


def test_complex_embed_matches_float():
    x = CycloNumber.zeta(20) + CycloNumber.from_rational(20, Fraction(1, 3))
    ball = complex_embed(x, 3, 30)
    approx = eval_power_basis(x.coeffs, 20, 3)
    assert ball.contains(approx, slack=1e-12)
    assert abs(ball.mid() - approx) < 1e-12 and float(ball.radius()) < 1e-25


def test_reference_forms():
    f = reference_form(5)
    assert f.dimension == 4 and f.disc == -1 and f.signature == (1, 3)
    assert reference_form(3).dimension == 2 and reference_form(7).dimension == 6
    assert reference_form(3, 2).dimension == 6
    with pytest.raises(ValueError):
        reference_form(11)
    with pytest.raises(ValueError):
        HermitianFormDatum((1, 0), -1)


@pytest.mark.parametrize("p,expect_at_2", [(3, 1), (5, 1), (7, 3)])
def test_gu_reference_invariants(p, expect_at_2):
    gu = gu_reference_invariants(p)
    half = gu.n // 2
    finite = [pl for pl in gu.places if not pl.place.is_archimedean]
    assert finite and all(pl.kind in ("inert", "ramified") for pl in finite)
    for pl in finite:
        expected = half - 1 if (p == 5 and pl.place.prime == 2) else half
        assert pl.witt_index == expected, (p, pl)
    assert gu.witt_index(2) == expect_at_2
    arch = gu.places[0]
    assert arch.place == INF and arch.witt_index == 1


def test_form_invariants_scale_by_norms():
    # multiplying an entry by a norm a^2 - d b^2 leaves every invariant unchanged
    base = reference_form(5)
    places = [LocalPlace(q) for q in (2, 3, 7, 11)]
    for a, b in [(1, 1), (2, 1), (3, 2)]:
        nrm = a * a - base.d0 * b * b
        scaled = HermitianFormDatum((base.entries[0] * nrm,) + base.entries[1:], base.d0)
        before = [(pl.disc_class, pl.witt_index) for pl in form_invariants(base, places)]
        after = [(pl.disc_class, pl.witt_index) for pl in form_invariants(scaled, places)]
        assert before == after


def test_norm_xi():
    res = norm_xi_check(5)
    assert res.value == -4 and res.ok
    assert res.norm_class_at_2 is NormClass.NONTRIVIAL
    assert norm_class(-1, NormClassGroupDatum(LocalPlace(2), -1)) is res.norm_class_at_2
    with pytest.raises(ValueError):
        norm_xi_check(3)


def test_laurent_arithmetic():
    s = Laurent.sigma(1)
    assert (s * s) == Laurent.sigma(2)
    assert s.bar() == Laurent.sigma(-1)
    assert (s * s.bar()) == Laurent.const(1)
    assert Laurent.sigma(5).reduce(3) == Laurent.sigma(2)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
@pytest.mark.parametrize("m", [1, 2, 3])
def test_block_matrix_model(n, m):
    model = block_matrix_model(n, m)
    assert model.S_m_is_sigma and model.S_nm_is_identity
    assert model.transpose_matches and model.permutation_check and model.ok
    with pytest.raises(ValueError):
        block_matrix_model(0, m)
