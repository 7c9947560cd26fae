import pytest

from xladder.algebra import ALPHA, ONE, X, XRat
from xladder.functions import StateSum
from xladder.model import cubic_algebra, fn_eval, fourth_order_ladder, hpoly_eval
from xladder.operators import apply
from xladder.spectra import (
    AnsatzExhausted,
    build_chain,
    chain_diagram,
    coincidences,
    diagonal_arrows,
    first_chain_states,
    generalized_arrows,
    hat_states,
    numerator_core,
    second_kind,
    solve_polynomial_eigenstate,
    wronskian,
    zero_modes,
)

TYPES = ("I", "II", "III")


def _arrows(J):
    return {(a.op, a.source): a for a in diagonal_arrows(J)}


def _relations(J):
    return {(r.source, r.op): r for r in generalized_arrows(J)}


# --- zero modes --------------------------------------------------------------


@pytest.mark.parametrize("J", TYPES)
@pytest.mark.parametrize("which", ["lowering", "raising"])
def test_four_zero_modes_each_annihilated(J, which):
    B, Bd = fourth_order_ladder(J)
    op = B if which == "lowering" else Bd
    modes = zero_modes(J, which)
    assert len(modes) == 4
    for z in modes:
        assert apply(op, z.state).is_zero()
        assert z.h_residual(J).is_zero()


@pytest.mark.parametrize("J", TYPES)
def test_zero_mode_weights_are_closure_roots(J):
    data = cubic_algebra(J)
    for z in zero_modes(J, "lowering"):
        assert hpoly_eval(list(data.R), z.weight) == 0, z.label
    for z in zero_modes(J, "raising"):
        assert hpoly_eval(list(data.RR), z.weight) == 0, z.label


def test_type_I_lowering_contains_psi1():
    ref = first_chain_states("I")[-3 - ALPHA].state
    assert any(z.weight == -3 - ALPHA and z.state.ratio(ref) is not None for z in zero_modes("I"))


def test_type_I_generalized_psi2():
    h = hat_states("I")[-3 - ALPHA]
    comp, mu = h.companion
    assert h.weight == 1 - ALPHA  # figure label -3-a, diagonal weight 1-a
    assert comp.state.ratio(first_chain_states("I")[-3 - ALPHA].state) is not None
    assert h.h_residual("I").is_zero()
    assert mu * comp.state.ratio(first_chain_states("I")[-3 - ALPHA].state) == -4 * ALPHA * (1 + ALPHA)


def test_type_II_generalized_psi4():
    h = hat_states("II")[5 - ALPHA]
    comp, mu = h.companion
    c = comp.state.ratio(first_chain_states("II")[1 - ALPHA].state)
    assert h.weight == 5 - ALPHA
    assert c is not None and mu * c == 4 * ALPHA - 4


@pytest.mark.parametrize("J", TYPES)
def test_coincidences_pair_raising_with_lowering(J):
    pairs = coincidences(J)
    assert len(pairs) == 2
    low, up = zero_modes(J, "lowering"), zero_modes(J, "raising")
    for i, j, c in pairs:
        assert up[i].state == low[j].state.scale(c)


def test_low_degree_ansatz_fails_loudly():
    with pytest.raises(AnsatzExhausted):
        zero_modes("II", degree=1)


def test_bad_direction_name():
    with pytest.raises(ValueError):
        zero_modes("I", "sideways")


# --- polynomial eigenstates ----------------------------------------------------


@pytest.mark.parametrize(
    "J,weight,N",
    [
        ("I", -5 - ALPHA, X**4 + 4 * (1 + ALPHA) * X**2 + 4 * (1 + ALPHA) * (2 + ALPHA)),
        ("II", -1 - ALPHA, X**4 + 4 * (ALPHA - 1) * X**2 + 4 * ALPHA * (ALPHA - 1)),
        ("III", ALPHA - 5, X**4 - 4 * (ALPHA - 1) * X**2 + 4 * (ALPHA - 1) * (ALPHA - 2)),
    ],
)
def test_polynomial_eigenstate_numerators(J, weight, N):
    ws = solve_polynomial_eigenstate(J, weight)
    assert ws.h_residual(J).is_zero()
    _, _, got = numerator_core(ws.state)
    assert got == N


def test_no_eigenstate_at_generic_weight():
    with pytest.raises(AnsatzExhausted, match="no quasi-rational eigenstate"):
        solve_polynomial_eigenstate("I", ALPHA / 2, degree=2)


# --- chains -------------------------------------------------------------------


def test_chain_of_length_zero():
    start = first_chain_states("I")[1 + ALPHA]
    chain = build_chain("I", start, "up", 0)
    assert chain.elements == (start,) and chain.links == ()


def test_chain_first_link_is_structure_polynomial():
    start = first_chain_states("I")[1 + ALPHA]
    chain = build_chain("I", start, "up", 3)
    assert chain.weights == [1 + ALPHA + 2 * n for n in range(4)]
    assert chain.links[0].coefficient == hpoly_eval(list(cubic_algebra("I").b), 1 + ALPHA)
    assert all(link.exact for link in chain.links)
    assert chain.coeff_kind == "f"


@pytest.mark.parametrize("J", TYPES)
def test_every_roster_generator_chain_is_exact(J):
    from xladder.fixtures import fixture

    psis = first_chain_states(J)
    for w, direction, tilde in fixture(J).roster.generators:
        start = second_kind(psis[w], J) if tilde else psis[w]
        chain = build_chain(J, start, direction, 3)
        assert not chain.truncated
        assert all(link.exact for link in chain.links), (w, direction, tilde)


def test_tilde_chain_back_action():
    t = second_kind(first_chain_states("I")[1 + ALPHA], "I")
    chain = build_chain("I", t, "up", 2)
    for link in chain.links:
        assert link.coefficient == fn_eval("I", link.n, 1 + ALPHA)


def test_chain_argument_checks():
    start = first_chain_states("I")[1 + ALPHA]
    with pytest.raises(ValueError):
        build_chain("I", start, "up", -1)
    with pytest.raises(ValueError):
        build_chain("I", start, "left", 1)


# --- second kind ---------------------------------------------------------------


@pytest.mark.parametrize("J", TYPES)
def test_second_kind_states_and_wronskian(J):
    for ws in first_chain_states(J).values():
        t = second_kind(ws, J)
        assert t.h_residual(J).is_zero()
        w = wronskian(ws.state, t.state)
        assert w.f.is_zero() and w.g == StateSum.constant(1)


def test_second_kind_I_part_follows_ladder():
    B, _ = fourth_order_ladder("I")
    ws = first_chain_states("I")[1 + ALPHA]
    img = apply(B, second_kind(ws, "I").state)
    assert img.f == apply(B, ws.state)


def test_second_kind_rejects_sums():
    ws = first_chain_states("I")[1 + ALPHA]
    from xladder.spectra import WeightedState

    bad = WeightedState(ws.state + StateSum.constant(1), ws.weight, "bad")
    with pytest.raises(ValueError):
        second_kind(bad, "I")


# --- diagonal and generalized arrows -------------------------------------------


def test_type_II_diagonal_B():
    a = _arrows("II")[("B", "tilde(-a+3)")]
    assert a.target == "psi(-a+1)" and a.coeff == 4 - 4 * ALPHA


def test_type_III_diagonal_Bdag():
    a = _arrows("III")[("Bdag", "tilde(a-5)")]
    assert a.target == "psi(a-3)" and a.coeff == ONE


def test_type_I_diagonal_leaves_the_roster():
    a = _arrows("I")[("Bdag", "tilde(-a-1)")]
    assert a.coeff == "new" and a.target == "psi(-a+1)"


@pytest.mark.parametrize("J", TYPES)
def test_diagonal_images_drop_the_antiderivative(J):
    for a in diagonal_arrows(J):
        assert a.coeff != "proportional"


def test_type_I_generalized_relations():
    rel = _relations("I")
    assert rel[("hat(-a-5)", "Bdag")].coeffs == {}
    assert rel[("hat(-a-5)", "H")].coeffs == {"psi(-a-1)": 8 * ALPHA**2 + 8 * ALPHA}
    assert rel[("hat(-a-3)", "H")].coeffs == {"psi(-a-3)": -4 * ALPHA**2 - 4 * ALPHA}
    out = rel[("hat(-a-3)", "Bdag")]
    assert not out.in_span and out.new_weight == 3 - ALPHA


def test_type_III_generalized_relations():
    rel = _relations("III")
    assert rel[("hat(a+1)", "H")].coeffs == {"psi(a-3)": 2 * ALPHA - 2}
    assert rel[("hat(a-5)", "B")].coeffs == {"psi(a-7)": ONE / (4 * (ALPHA - 2))}
    assert rel[("hat(a+1)", "B")].coeffs == {}


# --- diagram -------------------------------------------------------------------


def test_type_I_diagram_zero_arrows():
    es = chain_diagram("I", 3).edge_set()
    node = ("psi", -3 - ALPHA)
    assert (node, "B", "zero") in es and (node, "Bdag", "zero") in es


def test_type_II_diagram_tilde_edge():
    es = chain_diagram("II", 3).edge_set()
    assert (("tilde", 1 - ALPHA), "B", ("psi", -1 - ALPHA)) in es


@pytest.mark.parametrize("J", TYPES)
def test_depth_one_nodes_cover_roster(J):
    d = chain_diagram(J, 1)
    for w in first_chain_states(J):
        assert ("psi", w) in d.nodes and ("tilde", w) in d.nodes
    weights = set(first_chain_states(J))
    for kind, w in d.nodes:
        assert w in weights or any(w - v in (2, -2) for v in weights)


def test_diagram_json_round_trip():
    d = chain_diagram("III", 2)
    js = d.to_json()
    assert js["type"] == "III" and len(js["edges"]) == len(d.edges)
    assert {e["op"] for e in js["edges"]} == {"B", "Bdag"}


def test_diagram_depth_checked():
    with pytest.raises(ValueError):
        chain_diagram("I", 0)
