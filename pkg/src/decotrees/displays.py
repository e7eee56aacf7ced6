"""Worked examples with concrete decorations.

Each example pairs the value computed by the library with a value expanded by
hand from the symbolic formula, using one-dimensional indices.  Families
indexed by ``l`` are summed over ``l >= 1`` when the ``l = 0`` term is written
separately.
"""

from __future__ import annotations

from math import comb, factorial

from . import grafting as gr
from . import plugging as pg
from .lincomb import Accumulator, LinComb
from .trees import Edge, Planted, Tree


def T(k: int, *branches) -> Tree | None:
    """Tree with root index ``k`` and branches ``(kind, index, child)``;
    ``None`` as soon as an index is negative or a child is ``None``."""
    if k < 0:
        return None
    kids = []
    for kind, i, child in branches:
        if i < 0 or child is None:
            return None
        kids.append((Edge(kind, (i,)), child))
    return Tree((k,), kids)


def _collect(terms) -> LinComb:
    acc = Accumulator()
    for t, c in terms:
        if t is not None and c:
            acc.add(t, c)
    return acc.result()


def multinomial(n: int, *ls: int) -> int:
    rest = n - sum(ls)
    if rest < 0 or min(ls, default=0) < 0:
        return 0
    out = factorial(n) // factorial(rest)
    for x in ls:
        out //= factorial(x)
    return out


# decorations used throughout
ALPHA, BETA, GAMMA = 1, 1, 2
A, B = 2, 0


def grafting_example():
    """``•α ↷^a (γ --b-- β)``: the cherry and the chain."""
    sigma = T(ALPHA)
    tau = T(GAMMA, ("t", B, T(BETA)))
    got = gr.graft(sigma, Edge("t", (A,)), tau)
    want = _collect(
        [
            (T(GAMMA, ("t", A, T(ALPHA)), ("t", B, T(BETA))), 1),
            (T(GAMMA, ("t", B, T(BETA, ("t", A, T(ALPHA))))), 1),
        ]
    )
    return got, want


def deformed_grafting_example():
    """Same pair with the deformed product: two leading terms plus a
    root-lowered cherry family and a lowered chain family."""
    sigma = T(ALPHA)
    tau = T(GAMMA, ("t", B, T(BETA)))
    got = gr.deformed_graft(sigma, Edge("t", (A,)), tau)
    terms = [
        (T(GAMMA, ("t", A, T(ALPHA)), ("t", B, T(BETA))), 1),
        (T(GAMMA, ("t", B, T(BETA, ("t", A, T(ALPHA))))), 1),
    ]
    for l in range(1, GAMMA + 1):
        terms.append((T(GAMMA - l, ("t", A - l, T(ALPHA)), ("t", B, T(BETA))), comb(GAMMA, l)))
    for l in range(1, BETA + 1):
        terms.append((T(GAMMA, ("t", B, T(BETA - l, ("t", A - l, T(ALPHA))))), comb(BETA, l)))
    return got, _collect(terms)


def planted_grafting_example():
    """``I_a(•α) ↷ I_b(•β)``: no grafting at the bare root, so one term."""
    a, b = Edge("t", (1,)), Edge("u", (0,))
    got = gr.planted_graft(Planted(a, T(ALPHA)), Planted(b, T(2)), deformed=False)
    want = LinComb.of(Planted(b, T(2, ("t", 1, T(ALPHA)))))
    return got, want


def planted_deformed_example(beta: int = 2, a_idx: int = 1):
    """``I_a(•α) ↷̂ I_b(•β)`` with the family ``C(β,l) I_b(•_{β-l} ←(a-l)-- •α)``
    over ``1 <= l <= min(β, a)``."""
    a, b = Edge("t", (a_idx,)), Edge("u", (0,))
    got = gr.planted_graft(Planted(a, T(ALPHA)), Planted(b, T(beta)), deformed=True)
    terms = [(T(beta, ("t", a_idx, T(ALPHA))), 1)]
    for l in range(1, min(beta, a_idx) + 1):
        terms.append((T(beta - l, ("t", a_idx - l, T(ALPHA))), comb(beta, l)))
    want = _collect(terms).map(lambda t: Planted(b, t))
    return got, want


# plugging: sigma = cherry(ω; a→α, b→β), tau = δ --c-- γ
P_OMEGA, P_ALPHA, P_BETA, P_DELTA, P_GAMMA = 1, 0, 1, 2, 1
P_A, P_B, P_C = 1, 2, 0


def _plug_pair():
    sigma = T(P_OMEGA, ("t", P_A, T(P_ALPHA)), ("u", P_B, T(P_BETA)))
    tau = T(P_DELTA, ("t", P_C, T(P_GAMMA)))
    return sigma, tau


def plugging_example():
    sigma, tau = _plug_pair()
    got = pg.plug(sigma, tau)
    want = _collect(
        [
            (T(P_OMEGA + P_DELTA, ("t", P_A, T(P_ALPHA)), ("u", P_B, T(P_BETA)), ("t", P_C, T(P_GAMMA))), 1),
            (T(P_DELTA, ("t", P_C, T(P_OMEGA + P_GAMMA, ("t", P_A, T(P_ALPHA)), ("u", P_B, T(P_BETA))))), 1),
        ]
    )
    return got, want


def deformed_plugging_example():
    """Root family weighted by ``C(δ; l1, l2)``, leaf family by ``C(γ; l1, l2)``."""
    sigma, tau = _plug_pair()
    got = pg.deformed_plug(sigma, tau)
    terms = []
    for l1 in range(P_A + 1):
        for l2 in range(P_B + 1):
            root = T(
                P_OMEGA + P_DELTA - l1 - l2,
                ("t", P_A - l1, T(P_ALPHA)),
                ("u", P_B - l2, T(P_BETA)),
                ("t", P_C, T(P_GAMMA)),
            )
            terms.append((root, multinomial(P_DELTA, l1, l2)))
            inner = T(P_OMEGA + P_GAMMA - l1 - l2, ("t", P_A - l1, T(P_ALPHA)), ("u", P_B - l2, T(P_BETA)))
            terms.append((T(P_DELTA, ("t", P_C, inner)), multinomial(P_GAMMA, l1, l2)))
    return got, _collect(terms)


# star_2: sigma = cherry(δ; b→β, c→γ), tau = ω --a-- α
S_DELTA, S_BETA, S_GAMMA, S_OMEGA, S_ALPHA = 1, 0, 1, 1, 2
S_A, S_B, S_C = 0, 1, 1


def star2_example():
    """The four placement families of ``K* σ`` on the two vertices of ``τ``."""
    sigma = T(S_DELTA, ("u", S_B, T(S_BETA)), ("v", S_C, T(S_GAMMA)))
    tau = T(S_OMEGA, ("t", S_A, T(S_ALPHA)))
    got = pg.star_plug(sigma, tau, deformed=True)
    terms = []

    def bb(l1):
        return ("u", S_B - l1, T(S_BETA))

    def cc(l2):
        return ("v", S_C - l2, T(S_GAMMA))

    for d1 in range(S_DELTA + 1):
        d2 = S_DELTA - d1
        for l1 in range(S_B + 1):
            for l2 in range(S_C + 1):
                # •δ1 at α, cherry(δ2) at ω
                terms.append(
                    (
                        T(S_OMEGA + d2 - l1 - l2, ("t", S_A, T(S_ALPHA + d1)), bb(l1), cc(l2)),
                        multinomial(S_OMEGA, l1, l2),
                    )
                )
                # •δ1 at ω, cherry(δ2) at α
                terms.append(
                    (
                        T(S_OMEGA + d1, ("t", S_A, T(S_ALPHA + d2 - l1 - l2, bb(l1), cc(l2)))),
                        multinomial(S_ALPHA, l1, l2),
                    )
                )
                # b-block at ω, c-block at α
                terms.append(
                    (
                        T(S_OMEGA + d1 - l1, ("t", S_A, T(S_ALPHA + d2 - l2, cc(l2))), bb(l1)),
                        comb(S_OMEGA, l1) * comb(S_ALPHA, l2),
                    )
                )
                # b-block at α, c-block at ω
                terms.append(
                    (
                        T(S_OMEGA + d2 - l2, ("t", S_A, T(S_ALPHA + d1 - l1, bb(l1))), cc(l2)),
                        comb(S_ALPHA, l1) * comb(S_OMEGA, l2),
                    )
                )
    return got, _collect(terms)


EXAMPLES = {
    "grafting": grafting_example,
    "deformed grafting": deformed_grafting_example,
    "planted grafting": planted_grafting_example,
    "planted deformed grafting": planted_deformed_example,
    "plugging": plugging_example,
    "deformed plugging": deformed_plugging_example,
    "star_2": star2_example,
}


def all_examples() -> dict:
    """Name -> (computed, expected)."""
    return {name: fn() for name, fn in EXAMPLES.items()}
