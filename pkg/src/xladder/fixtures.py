"""Printed states, relations and figure windows, encoded by hand as test fixtures.

Branch factors such as (-1)^{-a}(-x)^a are folded into x^a (states are
projective where the source only gives them up to sign).  The Gaussian sign of
every type-III state is the one forced by the eigenvalue equation.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .algebra import ALPHA, ONE, AlphaRat, X
from .functions import StateSum
from .model import SeedType

__all__ = ["PrintedState", "HAction", "Arrow", "Roster", "Figure", "FIXTURES", "fixture", "roster_entry"]

a = ALPHA
x2 = X * X
G_DOWN = Fraction(-1, 4)
G_UP = Fraction(1, 4)


def _st(s, p, q, r) -> StateSum:
    return StateSum.single(s, Fraction(p), q, r)


@dataclass(frozen=True)
class PrintedState:
    name: str  # source symbol, e.g. "psi2"
    state: StateSum
    weight: AlphaRat  # diagonal H-eigenvalue
    kills: str | None = None  # "B" or "Bdag" when printed as a zero mode


@dataclass(frozen=True)
class HAction:
    """H name = weight*name + coeff*companion (companion None for eigenstates)."""

    name: str
    weight: AlphaRat
    companion: str | None = None
    coeff: AlphaRat | None = None


@dataclass(frozen=True)
class Arrow:
    """op applied to the tilde state at ``source`` equals coeff * psi(target)."""

    source: AlphaRat
    op: str
    target: AlphaRat
    coeff: AlphaRat | None  # None where only proportionality is printed
    note: str = ""


@dataclass(frozen=True)
class Roster:
    """Named eigenstates by weight, chain generators and added singlets."""

    eigen: dict  # weight -> fixture name, or (name, scale)
    generators: tuple  # (weight, direction, tilde)
    added: tuple  # (weight, tilde)
    hats: dict = field(default_factory=dict)  # weight -> fixture name of generalized state


@dataclass(frozen=True)
class Figure:
    """Window of a two-chain figure.

    Nodes are (kind, weight) with kind "psi" or "tilde".  Each edge is
    (node, op, target) with target "zero" or a (kind, weight) node; targets may
    sit outside the window.
    """

    nodes: tuple
    edges: frozenset


@dataclass(frozen=True)
class TypeFixture:
    J: SeedType
    states: dict
    hactions: tuple
    coincidences: tuple  # (name, name, ratio) with first = ratio * second
    roster: Roster
    arrows: tuple
    figure: Figure
    hat_relations: tuple = ()  # HAction entries for generalized states in weight notation


def _fig(nodes, edges) -> Figure:
    out = set()
    for src, op, dst in edges:
        out.add((src, op, dst))
    return Figure(tuple(nodes), frozenset(out))


P, T = "psi", "tilde"


def _type_I() -> TypeFixture:
    F = x2 + 2 + 2 * a
    st = {
        "psi1": PrintedState("psi1", _st(G_DOWN, Fraction(-1, 2), -1, 1 / F), -a - 3, "B"),
        "psi2": PrintedState("psi2", _st(G_DOWN, Fraction(-1, 2), -1, (-x2 * x2 - 4 * x2 * (1 + a)) / (4 * F)), 1 - a, "B"),
        "psi3": PrintedState(
            "psi3", _st(G_DOWN, Fraction(3, 2), 1, (-x2 - 2 * (2 + a)) / (4 * a * (2 + a) * F)), 1 + a, "B"
        ),
        "psi4": PrintedState("psi4", _st(G_UP, Fraction(3, 2), 1, -2 / F), -1 - a, "B"),
        "phi1": PrintedState("phi1", _st(G_DOWN, Fraction(-1, 2), -1, 1 / F), -a - 3, "Bdag"),
        "phi2": PrintedState("phi2", _st(G_UP, Fraction(-1, 2), -1, (x2 + 2 * a) / F), a - 1, "Bdag"),
        "phi3": PrintedState("phi3", _st(G_UP, Fraction(3, 2), 1, -1 / (2 * a * F)), -1 - a, "Bdag"),
        "phi4": PrintedState(
            "phi4", _st(G_UP, Fraction(7, 2), 1, (4 + x2 + 4 * a) / (4 * (2 + a) * F)), -5 - a, "Bdag"
        ),
        "chi": PrintedState(
            "chi", _st(G_UP, Fraction(3, 2), 1, (x2 * x2 + 4 * x2 * (1 + a) + 4 * (1 + a) * (2 + a)) / F), -5 - a
        ),
    }
    hact = (
        HAction("psi1", -3 - a),
        HAction("psi2", 1 - a, "psi1", -4 * a * (1 + a)),
        HAction("psi3", 1 + a),
        HAction("psi4", -1 - a),
        HAction("phi1", -3 - a),
        HAction("phi2", a - 1),
        HAction("chi", -5 - a),
    )
    hats = (
        # printed companion psi(-5-a) with coefficient -1/(2+a)
        HAction("phi4", -5 - a, "chi", -1 / (2 + a)),
        HAction("psi2", 1 - a, "psi1", -4 * a * (1 + a)),
    )
    roster = Roster(
        eigen={-3 - a: "psi1", 1 + a: "psi3", a - 1: "phi2", -1 - a: "phi3", -5 - a: "chi"},
        generators=(
            (1 + a, "up", False),
            (-5 - a, "down", False),
            (-5 - a, "down", True),
            (-1 - a, "up", True),
            (1 + a, "up", True),
        ),
        added=((-3 - a, False), (-1 - a, False), (a - 1, False), (-3 - a, True), (a - 1, True)),
        hats={-5 - a: "phi4", -3 - a: "psi2"},
    )
    arrows = (
        Arrow(1 + a, "B", a - 1, None),
        Arrow(-1 - a, "B", -3 - a, None),
        Arrow(-5 - a, "Bdag", -3 - a, None),
    )
    w = {k: v for k, v in (("m5", -5 - a), ("m3", -3 - a), ("m1", -1 - a), ("p1", a - 1), ("p3", 1 + a))}
    nodes = [(P, w[k]) for k in w] + [(T, w[k]) for k in w]
    edges = [
        ((P, w["m5"]), "Bdag", "zero"),
        ((P, w["m5"]), "B", (P, -7 - a)),
        ((P, w["m3"]), "B", "zero"),
        ((P, w["m3"]), "Bdag", "zero"),
        ((P, w["m1"]), "B", "zero"),
        ((P, w["m1"]), "Bdag", "zero"),
        ((P, w["p1"]), "Bdag", "zero"),
        ((P, w["p1"]), "B", (P, a - 3)),
        ((P, w["p3"]), "B", "zero"),
        ((P, w["p3"]), "Bdag", (P, 3 + a)),
        ((T, w["m5"]), "B", (T, -7 - a)),
        ((T, w["m5"]), "Bdag", (P, -3 - a)),
        ((T, w["m3"]), "Bdag", (P, -1 - a)),
        ((T, w["m1"]), "B", (P, -3 - a)),
        ((T, w["m1"]), "Bdag", (T, 1 - a)),
        ((T, w["p1"]), "Bdag", (P, 1 + a)),
        ((T, w["p1"]), "B", (P, a - 3)),
        ((T, w["p3"]), "Bdag", (T, 3 + a)),
        ((T, w["p3"]), "B", (P, a - 1)),
    ]
    return TypeFixture(
        SeedType.I, st, hact, (("phi3", "psi4", 1 / (4 * a)), ("phi1", "psi1", ONE)), roster, arrows, _fig(nodes, edges), hats
    )


def _type_II() -> TypeFixture:
    F = x2 - 2 + 2 * a
    st = {
        "psi1": PrintedState("psi1", _st(G_UP, Fraction(-1, 2), 1, 1 / F), 3 - a, "B"),
        "psi2": PrintedState("psi2", _st(G_DOWN, Fraction(3, 2), -1, 1 / F), 1 - a, "B"),
        "psi3": PrintedState("psi3", _st(G_DOWN, Fraction(-1, 2), 1, (x2 + 2 * a) / (2 * a * F)), 1 + a, "B"),
        "psi4": PrintedState(
            "psi4", _st(G_DOWN, Fraction(7, 2), -1, (x2 - 4 + 4 * a) / (4 * (a - 2) * F)), 5 - a, "B"
        ),
        "phi1": PrintedState("phi1", _st(G_UP, Fraction(-1, 2), 1, 1 / F), 3 - a, "Bdag"),
        "phi2": PrintedState(
            "phi2", _st(G_UP, Fraction(3, 2), -1, (x2 - 4 + 2 * a) / (2 * (a - 2) * F)), a - 1, "Bdag"
        ),
        "phi3": PrintedState("phi3", _st(G_UP, Fraction(3, 2), 1, (4 - x2 - 4 * a) / (8 * a * F)), -a - 1, "Bdag"),
        "phi4": PrintedState("phi4", _st(G_DOWN, Fraction(3, 2), -1, 2 / F), 1 - a, "Bdag"),
        "chi1": PrintedState(
            "chi1", _st(G_DOWN, Fraction(3, 2), -1, -(x2 * x2 + 4 * x2 * (a - 1) + 4 * (a - 2) * (a - 1)) / F), 5 - a
        ),
        "chi2": PrintedState(
            "chi2", _st(G_UP, Fraction(-1, 2), 1, (x2 * x2 + 4 * x2 * (a - 1) + 4 * (a - 1) * a) / F), -a - 1
        ),
    }
    hact = (
        HAction("psi1", 3 - a),
        HAction("psi2", 1 - a),
        HAction("psi3", 1 + a),
        HAction("psi4", 5 - a, "psi2", 4 * a - 4),
        HAction("phi1", 3 - a),
        HAction("phi2", a - 1),
        HAction("phi3", -a - 1, "psi1", 2 * a - 2),
        HAction("phi4", 1 - a),
        HAction("chi1", 5 - a),
        HAction("chi2", -a - 1),
    )
    roster = Roster(
        # the sign of psi(-a-1) = -chi2 is the one under which the printed diagonal arrows hold
        eigen={3 - a: "psi1", 1 - a: "psi2", 1 + a: "psi3", a - 1: "phi2", 5 - a: "chi1", -a - 1: ("chi2", -1)},
        generators=(
            (-a - 1, "down", False),
            (5 - a, "up", False),
            (a + 1, "up", False),
            (-a - 1, "down", True),
            (5 - a, "up", True),
            (a + 1, "up", True),
        ),
        added=((1 - a, False), (3 - a, False), (a - 1, False), (1 - a, True), (3 - a, True), (a - 1, True)),
        hats={5 - a: "psi4", -a - 1: "phi3"},
    )
    arrows = (
        Arrow(3 - a, "Bdag", 5 - a, ONE),
        Arrow(3 - a, "B", 1 - a, 4 - 4 * a),
        Arrow(5 - a, "B", 3 - a, -ONE),
        Arrow(a - 1, "Bdag", a + 1, -4 * (a - 2) * (a - 1) * a),
        Arrow(a + 1, "B", a - 1, 4 * (a - 2) * (a - 1) * a),
        Arrow(-a - 1, "Bdag", 1 - a, -ONE),
        Arrow(1 - a, "B", -a - 1, ONE),
    )
    ws = [-a - 1, 1 - a, 3 - a, 5 - a, a - 1, a + 1]
    nodes = [(P, v) for v in ws] + [(T, v) for v in ws]
    edges = [
        ((P, -a - 1), "Bdag", "zero"),
        ((P, -a - 1), "B", (P, -a - 3)),
        ((P, 1 - a), "B", "zero"),
        ((P, 1 - a), "Bdag", "zero"),
        ((P, 3 - a), "B", "zero"),
        ((P, 3 - a), "Bdag", "zero"),
        ((P, 5 - a), "B", "zero"),
        ((P, 5 - a), "Bdag", (P, 7 - a)),
        ((P, a - 1), "B", (P, a - 3)),
        ((P, a - 1), "Bdag", "zero"),
        ((P, a + 1), "B", "zero"),
        ((P, a + 1), "Bdag", (P, a + 3)),
        ((T, -a - 1), "B", (T, -a - 3)),
        ((T, -a - 1), "Bdag", (P, 1 - a)),
        ((T, 1 - a), "B", (P, -a - 1)),
        ((T, 1 - a), "Bdag", "zero"),
        ((T, 3 - a), "B", (P, 1 - a)),
        ((T, 3 - a), "Bdag", (P, 5 - a)),
        ((T, 5 - a), "Bdag", (T, 7 - a)),
        ((T, 5 - a), "B", (P, 3 - a)),
        ((T, a - 1), "B", (T, a - 3)),
        ((T, a - 1), "Bdag", (P, a + 1)),
        ((T, a + 1), "B", (P, a - 1)),
        ((T, a + 1), "Bdag", (T, a + 3)),
    ]
    return TypeFixture(
        SeedType.II,
        st,
        hact,
        (("phi1", "psi1", ONE), ("phi4", "psi2", AlphaRat.const(2))),
        roster,
        arrows,
        _fig(nodes, edges),
        (HAction("psi4", 5 - a, "psi2", 4 * a - 4), HAction("phi3", -a - 1, "psi1", 2 * a - 2)),
    )


def _type_III() -> TypeFixture:
    F = x2 + 2 - 2 * a  # printed denominator; -F_III
    st = {
        "psi1": PrintedState("psi1", _st(G_DOWN, Fraction(-1, 2), 1, 1 / F), a - 3, "B"),
        "psi2": PrintedState(
            "psi2", _st(G_DOWN, Fraction(3, 2), -1, (4 + x2 - 2 * a) / (2 * (a - 2) * F)), 1 - a, "B"
        ),
        "psi3": PrintedState("psi3", _st(G_DOWN, Fraction(3, 2), 1, (4 + x2 - 4 * a) / (8 * a * F)), 1 + a, "B"),
        "psi4": PrintedState("psi4", _st(G_UP, Fraction(3, 2), -1, -2 / F), a - 1, "B"),
        "phi1": PrintedState("phi1", _st(G_DOWN, Fraction(-1, 2), 1, 1 / F), a - 3, "Bdag"),
        "phi2": PrintedState("phi2", _st(G_UP, Fraction(3, 2), -1, -1 / F), a - 1, "Bdag"),
        "phi3": PrintedState("phi3", _st(G_UP, Fraction(-1, 2), 1, -(x2 - 2 * a) / (2 * a * F)), -a - 1, "Bdag"),
        "phi4": PrintedState(
            "phi4", _st(G_UP, Fraction(7, 2), -1, (4 + x2 - 4 * a) / (4 * (a - 2) * F)), a - 5, "Bdag"
        ),
        "chi1": PrintedState(
            "chi1", _st(G_DOWN, Fraction(-1, 2), 1, (x2 * x2 - 4 * x2 * (a - 1) + 4 * (a - 1) * a) / F), a + 1
        ),
        "chi2": PrintedState(
            "chi2", _st(G_UP, Fraction(3, 2), -1, (x2 * x2 - 4 * x2 * (a - 1) + 4 * (a - 2) * (a - 1)) / F), a - 5
        ),
    }
    hact = (
        HAction("psi1", a - 3),
        HAction("psi2", 1 - a),
        HAction("psi3", 1 + a, "psi1", 2 + 2 * a),
        HAction("psi4", a - 1),
        HAction("phi1", a - 3),
        HAction("phi2", a - 1),
        HAction("phi3", -a - 1),
        HAction("phi4", a - 5, "psi4", -2 + 2 * a),
        HAction("chi1", a + 1),
        HAction("chi2", a - 5),
    )
    roster = Roster(
        eigen={a - 3: "psi1", 1 - a: "psi2", a - 1: "psi4", -a - 1: "phi3", a - 5: "chi2", a + 1: "chi1"},
        generators=(
            (-a - 1, "down", False),
            (1 - a, "up", False),
            (a - 5, "down", False),
            (a + 1, "up", False),
            (-a - 1, "down", True),
            (1 - a, "up", True),
            (a - 5, "down", True),
            (a + 1, "up", True),
        ),
        added=((a - 3, False), (a - 1, False), (a - 3, True), (a - 1, True)),
        hats={a + 1: "psi3", a - 5: "phi4"},
    )
    arrows = (
        Arrow(-a - 1, "Bdag", 1 - a, -4 * (a - 2) * (a - 1) * a, "printed source label reads a-1"),
        Arrow(1 - a, "B", -a - 1, 4 * (a - 2) * (a - 1) * a),
        Arrow(a - 5, "Bdag", a - 3, ONE),
        Arrow(a - 3, "B", a - 5, -ONE),
        Arrow(a - 3, "Bdag", a - 1, -2 + 2 * a),
        Arrow(a - 1, "B", a - 3, 2 - 2 * a, "printed target subscript is garbled"),
        Arrow(a - 1, "Bdag", a + 1, AlphaRat.const(Fraction(1, 2))),
        Arrow(a + 1, "B", a - 1, AlphaRat.const(Fraction(-1, 2))),
    )
    ws = [-a - 1, 1 - a, a - 5, a - 3, a - 1, a + 1]
    nodes = [(P, v) for v in ws] + [(T, v) for v in ws]
    edges = [
        ((P, -a - 1), "Bdag", "zero"),
        ((P, -a - 1), "B", (P, -a - 3)),
        ((P, 1 - a), "B", "zero"),
        ((P, 1 - a), "Bdag", (P, 3 - a)),
        ((P, a - 5), "B", (P, a - 7)),
        ((P, a - 5), "Bdag", "zero"),
        ((P, a - 3), "B", "zero"),
        ((P, a - 3), "Bdag", "zero"),
        ((P, a - 1), "B", "zero"),
        ((P, a - 1), "Bdag", "zero"),
        ((P, a + 1), "B", "zero"),
        ((P, a + 1), "Bdag", (P, a + 3)),
        ((T, -a - 1), "B", (T, -a - 3)),
        ((T, -a - 1), "Bdag", (P, 1 - a)),
        ((T, 1 - a), "B", (P, -a - 1)),
        ((T, 1 - a), "Bdag", (T, 3 - a)),
        ((T, a - 5), "B", (T, a - 7)),
        ((T, a - 5), "Bdag", (P, a - 3)),
        ((T, a - 3), "B", (P, a - 5)),
        ((T, a - 3), "Bdag", (P, a - 1)),
        ((T, a - 1), "B", (P, a - 3)),
        ((T, a - 1), "Bdag", (P, a + 1)),
        ((T, a + 1), "B", (P, a - 1)),
        ((T, a + 1), "Bdag", (T, a + 3)),
    ]
    return TypeFixture(
        SeedType.III,
        st,
        hact,
        (("phi1", "psi1", ONE), ("psi4", "phi2", AlphaRat.const(2))),
        roster,
        arrows,
        _fig(nodes, edges),
        (HAction("psi3", 1 + a, "psi1", 2 + 2 * a), HAction("phi4", a - 5, "psi4", -2 + 2 * a)),
    )


FIXTURES = {SeedType.I: _type_I(), SeedType.II: _type_II(), SeedType.III: _type_III()}


def roster_entry(entry) -> tuple:
    """(name, scale) for a roster value."""
    return entry if isinstance(entry, tuple) else (entry, 1)


def fixture(J) -> TypeFixture:
    return FIXTURES[SeedType.parse(J)]
