from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from xladder.abstract import CubicAlgebra
from xladder.algebra import ALPHA, ONE, X, XRat
from xladder.functions import StateSum
from xladder.model import (
    STEP,
    SeedType,
    cubic_algebra,
    darboux_pair,
    deformed_hamiltonian,
    discrepancy_report,
    fn_eval,
    fourth_order_ladder,
    generic_chain_coeffs,
    gn_eval,
    hpoly_eval,
    hpoly_shift,
    hpoly_sub,
    ladder_pair,
    missing_state,
    oscillator_eigenstate,
    partner_potentials,
    printed_deformed_hamiltonian,
    printed_S,
    seed_energy,
    seed_function,
    singular_oscillator,
    superpotential,
    table_discrepancies,
)
from xladder.operators import DiffOperator, apply, commutator, compose

TYPES = ("I", "II", "III")
E = lambda J: DiffOperator.mult(XRat.const(seed_energy(J)))  # noqa: E731


# --- oscillator -----------------------------------------------------------


def test_oscillator_spectrum():
    H = singular_oscillator()
    for nu in range(5):
        psi = oscillator_eigenstate(nu)
        assert apply(H, psi) == psi.scale(2 * nu + ALPHA + 1)


def test_first_excited_laguerre():
    expected = StateSum.single(Fraction(-1, 4), Fraction(1, 2), 1, 1 + ALPHA - X * X / 2)
    assert oscillator_eigenstate(1) == expected


def test_oscillator_raising_commutator():
    _, ad = ladder_pair()
    assert commutator(singular_oscillator(), ad) == ad.scale(2)


# --- seeds and Darboux pair ------------------------------------------------


def test_type_I_seed_form():
    expected = StateSum.single(Fraction(1, 4), Fraction(1, 2), 1, 1 + ALPHA + X * X / 2)
    assert seed_function("I").ratio(expected) is not None


@pytest.mark.parametrize("J,energy", [("I", -ALPHA - 3), ("II", 3 - ALPHA), ("III", ALPHA - 3)])
def test_seed_energies(J, energy):
    assert seed_energy(J) == energy
    psi = missing_state(J)
    assert apply(deformed_hamiltonian(J), psi) == psi.scale(energy)


def test_superpotential_test_hook():
    assert superpotential(seed=StateSum.single(Fraction(-1, 4), 0, 0, 1)) == X / 2


def test_type_I_superpotential():
    expected = -((2 * ALPHA + 1) / (2 * X) + X / 2 + 2 * X / (2 + 2 * ALPHA + X * X))
    assert superpotential("I") == expected


@pytest.mark.parametrize("J", TYPES)
def test_factorization_and_annihilation(J):
    A, Ad = darboux_pair(J)
    assert compose(Ad, A) + E(J) == singular_oscillator()
    assert compose(A, Ad) + E(J) == deformed_hamiltonian(J)
    assert apply(A, seed_function(J)).is_zero()
    assert apply(Ad, missing_state(J)).is_zero()


@pytest.mark.parametrize("J", TYPES)
def test_partner_potentials(J):
    Vp, Vm = partner_potentials(J)
    assert DiffOperator({2: -1, 0: Vp}) == singular_oscillator()
    assert DiffOperator({2: -1, 0: Vm}) == deformed_hamiltonian(J)


@pytest.mark.parametrize("J", TYPES)
def test_intertwining(J):
    A, Ad = darboux_pair(J)
    H, Hp = deformed_hamiltonian(J), singular_oscillator()
    assert compose(H, A) == compose(A, Hp)
    assert compose(Ad, H) == compose(Hp, Ad)


@pytest.mark.parametrize("J", TYPES)
def test_spectrum_transport(J):
    A, _ = darboux_pair(J)
    H = deformed_hamiltonian(J)
    for nu in range(5):
        psi = apply(A, oscillator_eigenstate(nu))
        assert apply(H, psi) == psi.scale(2 * nu + ALPHA + 1)


def test_printed_partner_closed_form_type_I():
    assert printed_deformed_hamiltonian("I") == deformed_hamiltonian("I")
    V = deformed_hamiltonian("I").coeffs[0]
    F = 2 + X * X + 2 * ALPHA
    rest = V - 8 * X * X / (F * F) + 4 / F
    assert rest.den == (X * X).num  # only the 1/x^2 pole is left


# --- ladders and algebra ---------------------------------------------------


@pytest.mark.parametrize("J", TYPES)
def test_fourth_order_ladders(J):
    B, Bd = fourth_order_ladder(J)
    H = deformed_hamiltonian(J)
    assert B.order == 4 and Bd.order == 4
    assert commutator(H, B) == B.scale(-STEP)
    assert commutator(H, Bd) == Bd.scale(STEP)


@pytest.mark.parametrize("J", TYPES)
def test_cubic_closure(J):
    data = cubic_algebra(J)
    assert data.b[3] == 2
    assert len(data.R) == 5 and len(data.RR) == 5
    assert list(data.RR) == hpoly_shift(list(data.R), STEP)
    assert data.closure_identity_holds()
    assert list(data.b) == printed_S(J)


def test_structure_polynomial_values_type_I():
    data = cubic_algebra("I")
    assert hpoly_eval(list(data.b), 1 + ALPHA) == 4 * (3 + ALPHA) * (1 + ALPHA) * (2 + ALPHA)
    assert hpoly_eval(list(data.R), -1 - ALPHA) == 0


def test_coefficient_table_entries():
    b = (Fraction(1), Fraction(2), Fraction(3), Fraction(5))
    t = generic_chain_coeffs(a=2, b=b)
    assert t.a[1] == 5 and t.a[4] == 15 and t.d[13] == 10
    for i in (0, 5, 9):
        assert t.a[i] == 0
    for i in (0, 2, 5, 9):
        assert t.d[i] == 0


@pytest.mark.parametrize("J", TYPES)
def test_first_chain_coefficients(J):
    S = list(cubic_algebra(J).b)
    for lam in (ALPHA + 1, -ALPHA - 3, ONE / 3):
        assert fn_eval(J, 0, lam) == 0 and gn_eval(J, 0, lam) == 0
        assert fn_eval(J, 1, lam) == hpoly_eval(S, lam)
        assert gn_eval(J, 1, lam) == -hpoly_eval(S, lam)


def test_negative_n_rejected():
    with pytest.raises(ValueError):
        fn_eval("I", -1, ALPHA)


def test_seed_type_parse():
    assert SeedType.parse("ii") is SeedType.II
    with pytest.raises(ValueError, match="unknown seed type"):
        SeedType.parse("IV")


# --- discrepancy report ----------------------------------------------------


def test_discrepancy_report_type_I():
    report = {d.location: d for d in discrepancy_report("I")}
    assert report["S^I"].status == "pass"
    assert report["R^I"].status == "printed-mismatch"
    assert report["f_0^I(H)"].status == "printed-mismatch"
    assert report["f_0^I(H)"].computed == "0"
    assert report["g_1^I(H)"].status == "pass"
    assert all(set(d.as_dict()) == {"location", "printed", "computed", "status"} for d in report.values())


def test_printed_table_flags():
    flagged = {d.location for d in table_discrepancies() if d.status != "pass"}
    assert flagged == {"d_1", "d_3"}


# --- coefficient tables against the abstract algebra -----------------------

structure = st.tuples(
    st.integers(1, 3),
    st.lists(st.fractions(min_value=-3, max_value=3, max_denominator=4), min_size=4, max_size=4).filter(lambda b: b[3] != 0),
)


@given(structure, st.integers(1, 3))
@settings(max_examples=8)
def test_tables_match_normal_ordering(ab, k):
    a, b = ab
    alg = CubicAlgebra(a, b)
    t = generic_chain_coeffs(a=a, b=tuple(b))
    c, cd = alg.c(), alg.cdag()
    f = [v.constant_value() for v in t.f_poly(k)]
    g = [v.constant_value() for v in t.g_poly(k)]
    assert alg.commutator(c, cd**k) == cd ** (k - 1) * alg.poly(f)
    assert alg.commutator(cd, c**k) == c ** (k - 1) * alg.poly(g)
