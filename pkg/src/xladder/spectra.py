"""Zero modes, added eigenstates, induced chains and the two-chain diagram.

All states live in the quasi-rational class; every relation recorded here is
the result of exact operator application followed by exact linear algebra
over Q(a).
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .algebra import ALPHA, ONE, ZERO, AlphaRat, XRat, _xdivmod, _xgcd, _xmul, arat_str
from .fixtures import fixture, roster_entry
from .functions import SecondKindState, StateSum, differentiate
from .linalg import nullspace, solve
from .model import (
    STEP,
    SeedType,
    cubic_algebra,
    darboux_pair,
    deformed_hamiltonian,
    fn_eval,
    fourth_order_ladder,
    gn_eval,
    hpoly_eval,
    hpoly_shift,
    ladder_pair,
    seed_polynomial,
)
from .operators import DiffOperator, apply

__all__ = [
    "WeightedState",
    "ChainLink",
    "Chain",
    "Arrow",
    "Relation",
    "ChainDiagram",
    "AnsatzExhausted",
    "StructuralViolation",
    "ansatz_degree",
    "weight_label",
    "zero_modes",
    "coincidences",
    "solve_polynomial_eigenstate",
    "numerator_core",
    "build_chain",
    "second_kind",
    "wronskian",
    "first_chain_states",
    "diagonal_arrows",
    "generalized_arrows",
    "chain_diagram",
    "decompose",
]

ANSATZ_BASE = Fraction(-5, 2)
CLASSES = ((Fraction(-1, 4), -1), (Fraction(-1, 4), 1), (Fraction(1, 4), -1), (Fraction(1, 4), 1))
DEFAULT_DEGREE = 8


class AnsatzExhausted(RuntimeError):
    """The bounded-degree ansatz did not produce the expected solution space."""


class StructuralViolation(RuntimeError):
    pass


def ansatz_degree() -> int:
    return int(os.environ.get("XLADDER_ANSATZ_DEGREE", DEFAULT_DEGREE))


def weight_label(w: AlphaRat) -> str:
    return arat_str(w).replace(" ", "")


# ---------------------------------------------------------------------------
# domain types


@dataclass(frozen=True, eq=False)
class WeightedState:
    """A state with its diagonal H-weight; ``companion`` = (state, coeff) for generalized states."""

    state: StateSum | SecondKindState
    weight: AlphaRat
    label: str
    companion: tuple | None = None
    kind: str = "psi"  # psi | tilde | hat
    stage: int | None = None  # cascade stage for zero modes (1, 2, 3)

    @property
    def is_generalized(self) -> bool:
        return self.companion is not None

    def h_residual(self, J):
        """H state - weight state - coeff companion; zero when the invariant holds."""
        H = deformed_hamiltonian(J)
        out = apply(H, self.state) - self.state.scale(self.weight)
        if self.companion is not None:
            comp, c = self.companion
            out = out - comp.state.scale(c)
        return out


@dataclass(frozen=True)
class ChainLink:
    n: int
    weight: AlphaRat
    coefficient: AlphaRat | None  # back-action ratio, None when not proportional
    expected: AlphaRat
    exact: bool


@dataclass(frozen=True)
class Chain:
    start: WeightedState
    direction: str  # up | down
    elements: tuple
    links: tuple
    truncated: bool = False

    @property
    def coeff_kind(self) -> str:
        return "f" if self.direction == "up" else "g"

    @property
    def weights(self) -> list:
        return [e.weight for e in self.elements]


@dataclass(frozen=True)
class Arrow:
    """op(source) = coeff * target; coeff may be "zero" or "proportional"."""

    source: str
    target: str | None
    op: str  # B | Bdag
    coeff: object
    source_node: tuple = ()
    target_node: tuple | str = ()


@dataclass(frozen=True)
class Relation:
    """op(source) = sum coeffs[label] * state(label) for a generalized state.

    When the image is outside the constructed span but is itself an
    H-eigenstate, ``new_weight`` carries its weight and ``coeffs`` is empty.
    """

    source: str
    op: str  # H | B | Bdag
    coeffs: dict
    in_span: bool
    new_weight: AlphaRat | None = None


# ---------------------------------------------------------------------------
# exact linear systems on quasi-rational states


def _common_den(rs):
    den = (ONE,)
    for r in rs:
        g = _xgcd(den, r.den)
        den = _xmul(den, _xdivmod(r.den, g)[0])
    return den


def _coefficient_rows(images: list[StateSum], target: StateSum | None = None):
    """Rows/rhs of sum_i c_i images[i] = target (target None means 0)."""
    keys = sorted({t.key for s in images + ([target] if target is not None else []) for t in s.terms})
    rows, rhs = [], []
    zero = XRat.const(0)
    for key in keys:
        rs = [next((t.r for t in s.terms if t.key == key), zero) for s in images]
        rt = next((t.r for t in target.terms if t.key == key), zero) if target is not None else zero
        den = _common_den(rs + [rt])
        polys = [_xmul(r.num, _xdivmod(den, r.den)[0]) if r.num else () for r in rs]
        pt = _xmul(rt.num, _xdivmod(den, rt.den)[0]) if rt.num else ()
        L = max([len(p) for p in polys] + [len(pt)])
        for k in range(L):
            row = [p[k] if k < len(p) else ZERO for p in polys]
            b = pt[k] if k < len(pt) else ZERO
            if any(v.num for v in row) or b.num:
                rows.append(row)
                rhs.append(b)
    return rows, rhs


def decompose(target: StateSum, basis: list[StateSum]):
    """Exact coefficients c with target = sum c_i basis_i, or None."""
    if target.is_zero():
        return [ZERO] * len(basis)
    if not basis:
        return None
    rows, rhs = _coefficient_rows(basis, target)
    return solve(rows, rhs)


def _seq_apply(ops, st):
    for o in reversed(ops):
        st = apply(o, st)
    return st


def _ansatz_basis(J, s, q, degree):
    F = seed_polynomial(J)
    return [StateSum.single(s, ANSATZ_BASE + i, q, F.inverse()) for i in range(degree + 1)]


def _combine(basis, v) -> StateSum:
    out = StateSum()
    for b, c in zip(basis, v):
        if c.num:
            out = out + b.scale(c)
    return out


def _kernel(ops, basis):
    images = [_seq_apply(ops, b) for b in basis]
    rows, _ = _coefficient_rows(images)
    return nullspace(rows, len(basis))


# ---------------------------------------------------------------------------
# zero modes


def _cascade(J, which: str):
    A, Ad = darboux_pair(J)
    a, ad = ladder_pair()
    mid = a if which == "lowering" else ad
    return ([Ad], [mid, Ad], [A, mid, Ad])


@lru_cache(maxsize=None)
def _zero_modes(J: SeedType, which: str, degree: int):
    stages = _cascade(J, which)
    expected = (1, 3, 4)
    per_class = []
    dims = [0, 0, 0]
    for s, q in CLASSES:
        basis = _ansatz_basis(J, s, q, degree)
        kernels = [_kernel(ops, basis) for ops in stages]
        for i, k in enumerate(kernels):
            dims[i] += len(k)
        per_class.append((basis, kernels))
    for i, (got, want) in enumerate(zip(dims, expected)):
        if got != want:
            names = ("A'", "a A'" if which == "lowering" else "a' A'", "A a A'" if which == "lowering" else "A a' A'")
            raise AnsatzExhausted(
                f"type {J.value} {which}: cascade stage {i + 1} ({names[i]}) has {got} solutions, "
                f"expected {want} (degree bound {degree})"
            )

    H = deformed_hamiltonian(J)
    out = []
    for basis, kernels in per_class:
        states = [_combine(basis, v) for v in kernels[2]]
        if not states:
            continue
        partial = [[_combine(basis, v) for v in k] for k in kernels[:2]]
        images = [apply(H, st) for st in states]
        decs = [decompose(img, states) for img in images]
        raw = []
        for i, (st, dec) in enumerate(zip(states, decs)):
            if dec is None:
                raise StructuralViolation(f"H does not preserve the {which} kernel")
            w = dec[i]
            others = [(j, c) for j, c in enumerate(dec) if j != i and c.num]
            if len(others) > 1:
                raise StructuralViolation("H-action on a zero mode has more than one companion")
            stage = next((k + 1 for k in range(2) if decompose(st, partial[k]) is not None), 3)
            raw.append((st, w, others[0] if others else None, stage))
        made = {}
        for i, (st, w, comp, stage) in enumerate(raw):
            if comp is None:
                made[i] = WeightedState(st, w, f"psi({weight_label(w)})", None, "psi", stage)
        for i, (st, w, comp, stage) in enumerate(raw):
            if comp is not None:
                j, c = comp
                partner = made.get(j)
                if partner is None:
                    pst, pw, _, pstage = raw[j]
                    partner = WeightedState(pst, pw, f"psi({weight_label(pw)})", None, "psi", pstage)
                made[i] = WeightedState(st, w, f"hat({weight_label(w)})", (partner, c), "hat", stage)
        out.extend(made[i] for i in range(len(raw)))
    return tuple(out)


def zero_modes(J, which: str = "lowering", degree: int | None = None) -> list[WeightedState]:
    """The four zero modes of B (lowering) or B' (raising), before deduplication."""
    if which not in ("lowering", "raising"):
        raise ValueError("which must be 'lowering' or 'raising'")
    return list(_zero_modes(SeedType.parse(J), which, degree or ansatz_degree()))


def coincidences(J) -> list[tuple]:
    """(raising index, lowering index, c) with raising = c * lowering."""
    low = zero_modes(J, "lowering")
    up = zero_modes(J, "raising")
    out = []
    for i, u in enumerate(up):
        for j, l in enumerate(low):
            c = u.state.ratio(l.state)
            if c is not None:
                out.append((i, j, c))
    return out


# ---------------------------------------------------------------------------
# added polynomial eigenstates


def numerator_core(state: StateSum):
    """(s, exponent, N) with state = e^{s x^2} x^exponent N(x) / F, N monic with N(0) != 0."""
    (t,) = state.terms
    r = t.r
    k = 0
    num = list(r.num)
    while num and not num[0].num:
        num.pop(0)
        k += 1
    den = list(r.den)
    while den and not den[0].num:
        den.pop(0)
        k -= 1
    lead = num[-1]
    N = XRat.poly([c / lead for c in num])
    return t.s, t.p + k + t.q * ALPHA, N


@lru_cache(maxsize=None)
def _solve_eigen(J: SeedType, weight: AlphaRat, degree: int):
    H = deformed_hamiltonian(J)
    shifted = H - DiffOperator.mult(XRat.const(weight))
    best = None
    for s, q in CLASSES:
        basis = _ansatz_basis(J, s, q, degree)
        for v in _kernel([shifted], basis):
            st = _combine(basis, v)
            deg = max(i for i, c in enumerate(v) if c.num)
            if best is None or deg < best[0]:
                best = (deg, st)
    if best is None:
        raise AnsatzExhausted(f"no quasi-rational eigenstate of type {J.value} at weight {arat_str(weight)}")
    st = best[1]
    (t,) = st.terms
    lead = t.r.num[-1]
    return st.scale(ONE / lead)


def solve_polynomial_eigenstate(J, weight, degree: int | None = None) -> WeightedState:
    """Lowest-degree quasi-rational solution of H psi = weight psi."""
    J = SeedType.parse(J)
    w = weight if isinstance(weight, AlphaRat) else AlphaRat.const(weight)
    st = _solve_eigen(J, w, degree or ansatz_degree())
    return WeightedState(st, w, f"psi({weight_label(w)})")


# ---------------------------------------------------------------------------
# chains


def _ladders(J):
    return fourth_order_ladder(SeedType.parse(J))


def _ratio(u, v):
    """c with u = c v for StateSum or SecondKindState pairs, else None."""
    if isinstance(u, SecondKindState):
        if not isinstance(v, SecondKindState):
            return None
        if u.f.is_zero() != v.f.is_zero() or u.g.is_zero() != v.g.is_zero():
            return None
        cs = [x.ratio(y) for x, y in ((u.g, v.g), (u.f, v.f)) if not x.is_zero()]
        if not cs or any(c is None for c in cs) or any(c != cs[0] for c in cs):
            return None
        return cs[0]
    if isinstance(v, SecondKindState):
        return None
    return u.ratio(v)


def _is_zero(s) -> bool:
    return s.is_zero()


def build_chain(J, start: WeightedState, direction: str, N: int) -> Chain:
    """Repeated ladder application from ``start`` with exact back-action coefficients."""
    if direction not in ("up", "down"):
        raise ValueError("direction must be 'up' or 'down'")
    if N < 0:
        raise ValueError("N must be non-negative")
    return _build_chain(SeedType.parse(J), start, direction, N)


@lru_cache(maxsize=256)
def _build_chain(J: SeedType, start: WeightedState, direction: str, N: int) -> Chain:
    # start hashes by identity; roster states come from cached constructors
    B, Bd = _ladders(J)
    step, back = (Bd, B) if direction == "up" else (B, Bd)
    sign = 1 if direction == "up" else -1
    coeff_fn = fn_eval if direction == "up" else gn_eval
    elements = [start]
    links = []
    truncated = False
    cur = start.state
    for n in range(1, N + 1):
        nxt = apply(step, cur)
        if _is_zero(nxt):
            truncated = True
            break
        w = start.weight + sign * STEP * n
        prefix = "tilde" if start.kind == "tilde" else "psi"
        elements.append(WeightedState(nxt, w, f"{prefix}({weight_label(w)})", None, start.kind if start.kind == "tilde" else "psi"))
        expected = coeff_fn(J, n, start.weight)
        img = apply(back, nxt)
        exact = _is_zero(img - cur.scale(expected))
        c = expected if exact else _ratio(img, cur)
        links.append(ChainLink(n, w, c, expected, exact))
        cur = nxt
    return Chain(start, direction, tuple(elements), tuple(links), truncated)


# ---------------------------------------------------------------------------
# second kind


def second_kind(ws: WeightedState, J=None, check: bool = True) -> WeightedState:
    """psi * I with I' = 1/psi^2 and zero integration constant."""
    if isinstance(ws.state, SecondKindState) or not ws.state.is_single():
        raise ValueError("second_kind needs a single-term first-kind state")
    t = SecondKindState.from_anchor(ws.state)
    out = WeightedState(t, ws.weight, f"tilde({weight_label(ws.weight)})", None, "tilde")
    if check:
        if J is None:
            raise ValueError("J is required for the eigenstate check")
        if not out.h_residual(J).is_zero():
            raise StructuralViolation(f"{out.label} is not an eigenstate")
    return out


def wronskian(psi: StateSum, tilde: SecondKindState) -> SecondKindState:
    """psi * tilde' - psi' * tilde, as a second-kind state (should be the constant 1)."""
    dt = tilde.derivative()
    dpsi = differentiate(psi)
    g = psi * dt.g - dpsi * tilde.g
    f = psi * dt.f - dpsi * tilde.f
    return SecondKindState(g, f, tilde.anchor)


# ---------------------------------------------------------------------------
# roster states


@lru_cache(maxsize=None)
def first_chain_states(J) -> dict:
    """weight -> WeightedState for the roster's first-chain eigenstates.

    States are found by the engine (zero modes or the polynomial solver) and
    rescaled to the tabulated normalization so that printed coefficients are
    comparable.
    """
    J = SeedType.parse(J)
    fx = fixture(J)
    pool = [z for z in zero_modes(J, "lowering") + zero_modes(J, "raising") if not z.is_generalized]
    out = {}
    for w, entry in fx.roster.eigen.items():
        name, scale = roster_entry(entry)
        ref = fx.states[name].state.scale(scale)
        found = None
        for z in pool:
            if z.weight == w and z.state.ratio(ref) is not None:
                found = z
                break
        if found is None:
            found = solve_polynomial_eigenstate(J, w)
            if found.state.ratio(ref) is None:
                raise StructuralViolation(f"engine state at weight {arat_str(w)} differs from the tabulated one")
        out[w] = WeightedState(ref, w, f"psi({weight_label(w)})", None, "psi", found.stage)
    return out


@lru_cache(maxsize=None)
def hat_states(J) -> dict:
    """weight label -> generalized zero mode, in tabulated normalization."""
    J = SeedType.parse(J)
    fx = fixture(J)
    gens = [z for z in zero_modes(J, "lowering") + zero_modes(J, "raising") if z.is_generalized]
    out = {}
    for w, name in fx.roster.hats.items():
        ref = fx.states[name].state
        z = next((g for g in gens if g.state.ratio(ref) is not None), None)
        if z is None:
            raise StructuralViolation(f"no generalized zero mode matches {name}")
        c = ref.ratio(z.state)
        comp, mu = z.companion
        out[w] = WeightedState(ref, z.weight, f"hat({weight_label(w)})", (comp, mu * c), "hat", z.stage)
    return out


@lru_cache(maxsize=None)
def _tilde(J: SeedType, w: AlphaRat) -> WeightedState:
    return second_kind(first_chain_states(J)[w], J)


def _op(J, name):
    B, Bd = _ladders(J)
    return B if name == "B" else Bd


@lru_cache(maxsize=None)
def _image(J: SeedType, node: tuple, op: str):
    kind, w = node
    st = first_chain_states(J)[w].state if kind == "psi" else _tilde(J, w).state
    return apply(_op(J, op), st)


def _shift(op):
    return STEP if op == "Bdag" else -STEP


def diagonal_arrows(J) -> list[Arrow]:
    """Ladder images of tilde states whose anchor is annihilated by the same ladder."""
    J = SeedType.parse(J)
    psis = first_chain_states(J)
    out = []
    for w in psis:
        for op in ("B", "Bdag"):
            if not _image(J, ("psi", w), op).is_zero():
                continue
            img = _image(J, ("tilde", w), op)
            src = f"tilde({weight_label(w)})"
            tw = w + _shift(op)
            if img.is_zero():
                out.append(Arrow(src, None, op, "zero", ("tilde", w), "zero"))
                continue
            if not img.f.is_zero():  # pragma: no cover - the I-part is op(anchor) = 0
                raise StructuralViolation("diagonal image carries an antiderivative part")
            target = psis.get(tw)
            if target is None:
                # an eigenstate outside the constructed first chains
                if not (apply(deformed_hamiltonian(J), img.g) - img.g.scale(tw)).is_zero():  # pragma: no cover
                    raise StructuralViolation("diagonal image is not an eigenstate")
                out.append(Arrow(src, f"psi({weight_label(tw)})", op, "new", ("tilde", w), ("psi", tw)))
                continue
            c = img.g.ratio(target.state)
            out.append(Arrow(src, f"psi({weight_label(tw)})", op, c if c is not None else "proportional", ("tilde", w), ("psi", tw)))
    return out


def generalized_arrows(J) -> list[Relation]:
    """H and ladder images of the generalized zero modes, decomposed over constructed states."""
    J = SeedType.parse(J)
    H = deformed_hamiltonian(J)
    B, Bd = _ladders(J)
    psis = first_chain_states(J)
    hats = hat_states(J)
    pool = {}
    for w, ws in psis.items():
        pool[ws.label] = ws.state
        for op in ("B", "Bdag"):
            img = _image(J, ("psi", w), op)
            tw = w + _shift(op)
            if not img.is_zero() and tw not in psis:
                pool[f"psi({weight_label(tw)})"] = img
    for w, h in hats.items():
        pool[h.label] = h.state
    # eigenstates first: pivots are chosen left to right, so hats only enter when needed
    labels = sorted(pool, key=lambda k: (k.startswith("hat"), k))
    out = []
    for w, h in hats.items():
        for name, op in (("H", H), ("B", B), ("Bdag", Bd)):
            img = apply(op, h.state)
            if name == "H":
                img = img - h.state.scale(h.weight)
            coeffs = decompose(img, [pool[k] for k in labels])
            if coeffs is not None:
                out.append(Relation(h.label, name, {k: c for k, c in zip(labels, coeffs) if c.num}, True))
                continue
            tw = h.weight + (0 if name == "H" else _shift(name))
            eigen = (apply(H, img) - img.scale(tw)).is_zero()
            out.append(Relation(h.label, name, {}, False, tw if eigen else None))
    return out


# ---------------------------------------------------------------------------
# diagram


@dataclass
class ChainDiagram:
    J: SeedType
    nodes: dict = field(default_factory=dict)  # (kind, weight) -> label
    edges: list = field(default_factory=list)  # Arrow

    def edge_set(self, window=None) -> frozenset:
        """(source node, op, target node | "zero") triples, optionally restricted to sources in window."""
        out = set()
        for e in self.edges:
            if window is not None and e.source_node not in window:
                continue
            out.add((e.source_node, e.op, e.target_node))
        return frozenset(out)

    def to_json(self) -> dict:
        nodes = [
            {"label": lbl, "weight": arat_str(w), "kind": kind}
            for (kind, w), lbl in sorted(self.nodes.items(), key=lambda kv: (kv[0][0], kv[1]))
        ]
        edges = [
            {"from": e.source, "to": e.target if e.target is not None else "0", "op": e.op, "coeff": _coeff_str(e.coeff)}
            for e in sorted(self.edges, key=lambda e: (e.source, e.op))
        ]
        return {"schema": "xladder/1", "type": self.J.value, "nodes": nodes, "edges": edges}

    def to_dot(self) -> str:
        lines = [f'digraph "type_{self.J.value}" {{']
        for (kind, w), lbl in sorted(self.nodes.items(), key=lambda kv: (kv[0][0], kv[1])):
            lines.append(f'  "{lbl}" [kind="{kind}", weight="{arat_str(w)}"];')
        lines.append('  "0" [shape=point];')
        for e in sorted(self.edges, key=lambda e: (e.source, e.op)):
            tgt = e.target if e.target is not None else "0"
            lines.append(f'  "{e.source}" -> "{tgt}" [op="{e.op}", coeff="{_coeff_str(e.coeff)}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, sort_keys=False)


def _coeff_str(c) -> str:
    return c if isinstance(c, str) else arat_str(c)


def _label(node) -> str:
    kind, w = node
    return f"{kind}({weight_label(w)})"


def _roster_generators(J):
    return fixture(J).roster.generators


@lru_cache(maxsize=None)
def chain_diagram(J, depth: int = 3) -> ChainDiagram:
    """Both chains, zero arrows, diagonal arrows and chain links as one graph."""
    if depth < 1:
        raise ValueError("depth must be >= 1")
    J = SeedType.parse(J)
    psis = first_chain_states(J)
    diagram = ChainDiagram(J)
    for w in psis:
        diagram.nodes[("psi", w)] = _label(("psi", w))
        diagram.nodes[("tilde", w)] = _label(("tilde", w))
    seen = set()

    def add(src, op, tgt, c):
        key = (src, op)
        if key in seen:
            return
        seen.add(key)
        if tgt != "zero":
            diagram.nodes.setdefault(tgt, _label(tgt))
        diagram.edges.append(Arrow(_label(src), None if tgt == "zero" else _label(tgt), op, c, src, tgt))

    # window nodes: every ladder action
    for w in list(psis):
        for op in ("B", "Bdag"):
            tw = w + _shift(op)
            img = _image(J, ("psi", w), op)
            if img.is_zero():
                add(("psi", w), op, "zero", "zero")
            else:
                tgt = psis.get(tw)
                c = img.ratio(tgt.state) if tgt is not None else ONE
                add(("psi", w), op, ("psi", tw), c if c is not None else "proportional")
            timg = _image(J, ("tilde", w), op)
            if timg.is_zero():
                add(("tilde", w), op, "zero", "zero")
            elif timg.f.is_zero():
                tgt = psis.get(tw)
                c = timg.g.ratio(tgt.state) if tgt is not None else None
                add(("tilde", w), op, ("psi", tw), c if c is not None else "proportional")
            else:
                tgt = psis.get(tw)
                c = timg.f.ratio(tgt.state) if tgt is not None else ONE
                add(("tilde", w), op, ("tilde", tw), c if c is not None else "proportional")
    # induced chains beyond the window
    for w, direction, tilde in _roster_generators(J):
        start = _tilde(J, w) if tilde else psis[w]
        chain = build_chain(J, start, direction, depth)
        op = "Bdag" if direction == "up" else "B"
        back = "B" if direction == "up" else "Bdag"
        kind = "tilde" if tilde else "psi"
        for prev, nxt, link in zip(chain.elements, chain.elements[1:], chain.links):
            add((kind, prev.weight), op, (kind, nxt.weight), ONE)
            add((kind, nxt.weight), back, (kind, prev.weight), link.coefficient if link.coefficient is not None else "proportional")
    return diagram
