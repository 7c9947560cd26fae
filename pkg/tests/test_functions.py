from fractions import Fraction

import mpmath
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from conftest import x_polys
from xladder.algebra import ALPHA, X, XRat
from xladder.functions import (
    PoleError,
    SecondKindState,
    StateSum,
    differentiate,
    differentiate_second_kind,
    evaluate_numeric,
    qterm,
    statesum_str,
)
from xladder.model import oscillator_eigenstate
from xladder.operators import DiffOperator, apply
from xladder.spectra import first_chain_states

HALF = Fraction(1, 2)


@st.composite
def terms(draw):
    s = draw(st.sampled_from([Fraction(-1, 4), Fraction(0), Fraction(1, 4)]))
    p = draw(st.sampled_from([Fraction(-1, 2), Fraction(0), HALF, Fraction(3, 2)]))
    q = draw(st.integers(-1, 1))
    r = draw(x_polys(nonzero=True)).shift(draw(st.integers(-2, 0)))
    return qterm(s, p, q, r)


states = st.lists(terms(), min_size=1, max_size=3).map(StateSum)


@st.composite
def small_operators(draw):
    coeffs = {k: draw(x_polys(max_deg=1)) for k in range(draw(st.integers(0, 2)) + 1)}
    return DiffOperator(coeffs)


def _canonical(s: StateSum) -> bool:
    keys = [t.key for t in s.terms]
    return keys == sorted(set(keys)) and all(not t.r.is_zero() and 0 <= t.p < 1 for t in s.terms)


# --- differentiate ---------------------------------------------------------


def test_derivative_of_ground_gaussian():
    psi = StateSum.single(Fraction(-1, 4), HALF, 0, 1)
    expected = StateSum.single(Fraction(-1, 4), HALF, 0, 1 / (2 * X) - X / 2)
    assert differentiate(psi) == expected


def test_derivative_of_constant():
    assert differentiate(StateSum.constant(1)).is_zero()


@given(states, states)
@settings(max_examples=25)
def test_product_rule(u, v):
    assert differentiate(u * v) == differentiate(u) * v + u * differentiate(v)


@given(states, states)
@settings(max_examples=25)
def test_canonical_after_operations(u, v):
    for s in (u + v, u * v, differentiate(u), u - v):
        assert _canonical(s)


def test_integer_exponent_shift_lives_in_r():
    t = qterm(0, Fraction(5, 2), 1, 1)
    assert t.p == HALF and t.r == X * X


# --- second kind -----------------------------------------------------------


def test_second_kind_derivative_of_anchor():
    psi = oscillator_eigenstate(1)
    d = differentiate_second_kind(SecondKindState.from_anchor(psi))
    assert d.g == psi.inverse()
    assert d.f == differentiate(psi)


@given(states)
@settings(max_examples=15)
def test_second_kind_without_antiderivative(g):
    anchor = oscillator_eigenstate(0)
    d = differentiate_second_kind(SecondKindState(g, StateSum(), anchor))
    assert d.f.is_zero() and d.g == differentiate(g)


def test_fourth_derivative_I_coefficient():
    psi = first_chain_states("I")[1 + ALPHA].state
    t = SecondKindState.from_anchor(psi)
    d, dpsi = t, psi
    for _ in range(4):
        d = differentiate_second_kind(d)
        dpsi = differentiate(dpsi)
    assert d.f == dpsi


@given(small_operators(), states)
@settings(max_examples=15)
def test_I_coefficient_lemma(D, f):
    anchor = oscillator_eigenstate(0)
    out = apply(D, SecondKindState(StateSum(), f, anchor))
    assert out.f == apply(D, f)


def test_second_kind_needs_single_anchor():
    with pytest.raises(ValueError):
        SecondKindState.from_anchor(oscillator_eigenstate(0) + StateSum.constant(1))


# --- numerics --------------------------------------------------------------


def test_evaluate_ground_state():
    v = evaluate_numeric(oscillator_eigenstate(0), 1, HALF, 128)
    with mpmath.workprec(128):
        assert abs(v - mpmath.exp(mpmath.mpf(-1) / 4)) < mpmath.mpf(2) ** -120


def test_evaluate_at_pole():
    s = StateSum.single(0, 0, 0, 1 / (X - 1))
    with pytest.raises(PoleError, match="pole"):
        evaluate_numeric(s, 1, HALF)


def test_evaluate_at_alpha_pole():
    s = StateSum.single(0, 0, 0, XRat.const(1 / (ALPHA - 2)))
    with pytest.raises(PoleError, match="pole"):
        evaluate_numeric(s, 1, 2)


@given(states, states)
@settings(max_examples=20)
def test_evaluation_linear(u, v):
    x0, a0 = Fraction(137, 100), Fraction(31, 97)
    with mpmath.workprec(128):
        try:
            lhs = evaluate_numeric(u + v, x0, a0)
            rhs = evaluate_numeric(u, x0, a0) + evaluate_numeric(v, x0, a0)
        except PoleError:
            assume(False)
        assert abs(lhs - rhs) <= mpmath.mpf(10) ** -30 * max(1, abs(lhs))


def test_serialization_format():
    text = statesum_str(oscillator_eigenstate(1))
    assert text.startswith("exp(-1/4*x^2) * x^(1/2 + 1*a) * (")
    assert "/" in text
