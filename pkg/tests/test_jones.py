"""Diagram algebra and Jones polynomial: basis counts, relations, trace,
oracle agreement, invariance, and the exact field checks."""

import math
import random
from fractions import Fraction

import pytest

from clusterkit.errors import (
    InvalidParameters,
    RelationViolated,
    StrandMismatch,
    TooManyCrossings,
)
from clusterkit.jones import (
    LOOP_VALUE,
    BraidWord,
    HalfIntLaurent,
    PlanarPairing,
    QuadraticFieldElement,
    braid_to_tl,
    enumerate_pairings,
    jones_from_oracle,
    jones_polynomial,
    kauffman_oracle,
    markov_trace,
    tl_cap_cup,
    tl_identity,
    tl_mul,
    verify_paper_relations,
)
from clusterkit.laurent import LaurentPolynomial

ONE = LaurentPolynomial.one(1)


def all_words(strands, length):
    letters = [k for k in range(-(strands - 1), strands) if k != 0]
    if length == 0:
        yield ()
        return
    for head in all_words(strands, length - 1):
        for x in letters:
            yield head + (x,)


@pytest.mark.parametrize("n", range(1, 9))
def test_pairing_count_is_catalan(n):
    assert len(enumerate_pairings(n)) == math.comb(2 * n, n) // (n + 1)


def test_pairing_validation():
    with pytest.raises(InvalidParameters):
        PlanarPairing(2, [(0, 2), (1, 3)])  # crossing
    with pytest.raises(InvalidParameters):
        PlanarPairing(2, [(0, 1), (2, 2)])
    with pytest.raises(InvalidParameters):
        PlanarPairing.cap_cup(2, 2)


@pytest.mark.parametrize("n", range(2, 6))
def test_diagram_relations(n):
    for i in range(1, n):
        Ei = tl_cap_cup(i, n, ONE)
        assert tl_mul(Ei, Ei) == Ei.scale(LOOP_VALUE)
        for j in range(1, n):
            Ej = tl_cap_cup(j, n, ONE)
            if abs(i - j) == 1:
                assert tl_mul(tl_mul(Ei, Ej), Ei) == Ei
            elif i != j:
                assert tl_mul(Ei, Ej) == tl_mul(Ej, Ei)


def test_strand_mismatch():
    with pytest.raises(StrandMismatch):
        tl_mul(tl_identity(2, ONE), tl_identity(3, ONE))


def test_braid_image_respects_braid_relations():
    for n in range(2, 6):
        for i in range(1, n - 1):
            lhs = braid_to_tl(BraidWord(n, (i, i + 1, i)))
            rhs = braid_to_tl(BraidWord(n, (i + 1, i, i + 1)))
            assert lhs == rhs
        for i in range(1, n):
            inv = braid_to_tl(BraidWord(n, (i, -i)))
            assert inv == tl_identity(n, ONE)


def test_trace_of_identity_is_one():
    for n in range(1, 5):
        value = markov_trace(tl_identity(n, ONE))
        # tr(1) = 1 means poly * delta^-shift equals delta^0
        assert value.poly == LOOP_VALUE**value.shift


def test_unknot_normalizations():
    assert jones_polynomial(BraidWord(1, ())).render() == "1"
    assert jones_polynomial(BraidWord(2, (1,))).render() == "1"
    assert jones_polynomial(BraidWord(3, (1, 2))).render() == "1"


def test_pinned_small_knot_values():
    trefoil = jones_polynomial(BraidWord(2, (1, 1, 1)))
    assert trefoil.render() == "t^-1 + t^-3 - t^-4"
    assert jones_polynomial(BraidWord(2, (-1, -1, -1))) == trefoil.mirror()
    fig8 = jones_polynomial(BraidWord(3, (1, -2, 1, -2)))
    assert fig8.render() == "t^2 - t + 1 - t^-1 + t^-2"
    assert fig8 == fig8.mirror()
    hopf = jones_polynomial(BraidWord(2, (1, 1)))
    assert set(hopf.terms.items()) == {(-1, -1), (-5, -1)}
    assert "t^(-1/2)" in hopf.render() and "t^(-5/2)" in hopf.render()


def test_oracle_agreement_on_random_words():
    rng = random.Random(21)
    for _ in range(60):
        strands = rng.choice([2, 3, 4])
        length = rng.randrange(0, 6)
        letters = tuple(
            rng.choice([k for k in range(-(strands - 1), strands) if k])
            for _ in range(length)
        )
        w = BraidWord(strands, letters)
        assert jones_polynomial(w) == jones_from_oracle(w)


def test_oracle_crossing_cap():
    with pytest.raises(TooManyCrossings):
        kauffman_oracle(BraidWord(2, (1,) * 25))


def test_markov_moves_preserve_the_invariant():
    rng = random.Random(22)
    for _ in range(25):
        strands = rng.choice([2, 3])
        letters = tuple(
            rng.choice([k for k in range(-(strands - 1), strands) if k])
            for _ in range(rng.randrange(1, 5))
        )
        w = BraidWord(strands, letters)
        base = jones_polynomial(w)
        # stabilization: append sigma_n^(+-1) on strands+1
        for stab in (strands, -strands):
            wider = BraidWord(strands + 1, letters + (stab,))
            assert jones_polynomial(wider) == base
        # conjugation
        g = rng.choice([k for k in range(-(strands - 1), strands) if k])
        conj = BraidWord(strands, (g,) + letters + (-g,))
        assert jones_polynomial(conj) == base


def test_half_int_rendering():
    p = HalfIntLaurent({2: 1, -8: -1, 0: 3, 1: 2})
    assert p.render() == "t + 2*t^(1/2) + 3 - t^-4"
    assert HalfIntLaurent({}).render() == "0"


def test_quadratic_field_arithmetic():
    a = QuadraticFieldElement(1, 2, 5)
    b = QuadraticFieldElement(Fraction(1, 2), -1, 5)
    assert a * a == QuadraticFieldElement(21, 4, 5)
    assert a * a.inverse() == QuadraticFieldElement(1, 0, 5)
    assert (a + b) - b == a
    with pytest.raises(InvalidParameters):
        a + QuadraticFieldElement(1, 0, 7)


def test_relation_checks_pass_at_random_rational_t():
    rng = random.Random(23)
    for _ in range(3):
        t = Fraction(rng.randint(1, 9), rng.randint(1, 9))
        report = verify_paper_relations(3, t, num_words=10, seed=rng.randint(0, 99))
        assert report["checks"] == ["commutation", "projection", "braid", "markov"]


def test_relation_checks_reject_wrong_trace_constant():
    with pytest.raises(RelationViolated):
        verify_paper_relations(3, Fraction(2), tau=Fraction(1, 3), num_words=5)


def test_braid_word_validation():
    with pytest.raises(InvalidParameters):
        BraidWord(2, (2,))
    with pytest.raises(InvalidParameters):
        BraidWord(2, (0,))
    assert BraidWord.parse(3, "1, -2 1").letters == (1, -2, 1)
    assert BraidWord(3, (1, -2, 1)).writhe == 1
