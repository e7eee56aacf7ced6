"""Coproducts used for numerical schemes and renormalisation.

``delta_na`` is the flipped deformed Butcher-Connes-Kreimer coproduct,
``delta_rc`` the recentering coproduct and ``delta_rn`` the
extraction-contraction coproduct.  Degrees, projections, the antipode and
the renormalisation map are generic skeletons driven by user data.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Mapping

from . import combinatorics as cb
from .coproducts import (
    Budget,
    _engine,
    _planted_forest,
    _tensor_mul,
    _tree_mul,
    as_budget,
    delta2,
    delta_dck,
    truncate,
)
from .grafting import deformed_graft, graft
from .guin_oudom import unshuffle
from .lincomb import Accumulator, LinComb, lc
from .plugging import forest_insert, forest_insert_nonroot, star_plug
from .trees import EMPTY, Edge, Forest, Planted, Tree, tree_product


def flip(x) -> LinComb:
    """Swap the two legs of every tensor."""
    return lc(x).map(lambda p: (p[1], p[0]))


# ---------------------------------------------------------------------------
# degrees


@dataclass(frozen=True)
class DegreeAssignment:
    """Degrees of edge kinds, a scaling and an optional order cap.

    ``integration`` lists the kinds counted by the order-cap size functional.
    """

    degrees: Mapping[str, Fraction]
    scaling: tuple | None = None
    order_cap: int | None = None
    integration: frozenset = field(default_factory=frozenset)

    def of(self, kind: str) -> Fraction:
        try:
            return Fraction(self.degrees[kind])
        except KeyError:
            raise KeyError(f"no degree declared for edge kind {kind!r}") from None


def degree(t, deg: DegreeAssignment) -> Fraction:
    """``sum_v |n_v|_s + sum_e (deg(kind) - |index|_s)``."""
    if isinstance(t, Planted):
        e = t.edge
        return deg.of(e.kind) - cb.norm(e.index, deg.scaling) + degree(t.body, deg)
    if isinstance(t, Forest):
        return sum((degree(x, deg) for x in t.items), Fraction(0))
    out = Fraction(cb.norm(t.index, deg.scaling))
    for e, c in t.children:
        out += deg.of(e.kind) - cb.norm(e.index, deg.scaling) + degree(c, deg)
    return out


def order_size(x, deg: DegreeAssignment) -> int:
    """Time-polynomial degree plus the number of integration edges."""
    if isinstance(x, Forest):
        return sum(order_size(p, deg) for p in x.items)
    if isinstance(x, Planted):
        return int(x.edge.kind in deg.integration) + order_size(x.body, deg)
    out = x.index[0]
    for e, c in x.children:
        out += int(e.kind in deg.integration) + order_size(c, deg)
    return out


# ---------------------------------------------------------------------------
# numerical-analysis coproduct


def delta_na(x, budget=2, deg: DegreeAssignment | None = None, variant: str = "full") -> LinComb:
    """``M^{(2)(1)} Δ_DCK``; with an order cap ``r`` the terms whose right
    leg has size above ``r`` are discarded."""
    out = flip(delta_dck(x, variant, budget))
    if deg is not None and deg.order_cap is not None:
        out = out.filter(lambda p: order_size(p[1], deg) <= deg.order_cap)
    return out


# ---------------------------------------------------------------------------
# recentering and extraction-contraction


class _RC:
    """Direct recursion: ``Δ_RC X = X⊗1 + 1⊗X``,
    ``Δ_RC I_a(τ) = (I_a⊗id)Δ_RC τ + sum_l X^l/l! ⊗ I_{a+l}(τ)``."""

    def __init__(self, budget: Budget):
        self.budget = budget
        self.tree = lru_cache(maxsize=None)(self._tree)
        self.rn = lru_cache(maxsize=None)(self._rn)
        self.circ = lru_cache(maxsize=None)(self._circ)

    def _tree(self, t: Tree) -> LinComb:
        out = LinComb(
            ((Tree(ell), Tree(cb.sub(t.index, ell))), cb.binom(t.index, ell)) for ell in cb.box(t.index)
        )
        for e, s in t.children:
            acc = Accumulator()
            for (l, r), c in self.tree(s).items():
                acc.add((Tree(cb.zero(t.dim), ((e, l),)), r), c)
            for ell in self.budget.exponents(t.dim):
                e2 = Edge(e.kind, cb.add(e.index, ell))
                acc.add((Tree(ell), Tree(cb.zero(t.dim), ((e2, s),))), Fraction(1, cb.factorial(ell)))
            out = _tensor_mul(out, acc.result(), _tree_mul, _tree_mul)
        return out

    def _circ(self, t: Tree) -> LinComb:
        # Δ_RN^{non-root} X^k = 1 ⊗ X^k, Δ_RN^{non-root} I_a(τ) = (id ⊗ I_a) Δ_RN τ
        out = LinComb.of((EMPTY, Tree(t.index)))
        for e, s in t.children:
            acc = Accumulator()
            for (f, r), c in self.rn(s).items():
                acc.add((f, Tree(cb.zero(t.dim), ((e, r),))), c)
            out = _tensor_mul(out, acc.result(), lambda a, b: a * b, _tree_mul)
        return out

    def _rn(self, t: Tree) -> LinComb:
        # (M ⊗ id)(id ⊗ Δ_RN^{non-root}) Δ_RC
        acc = Accumulator()
        for (l, r), c in self.tree(t).items():
            for (f, m), c2 in self.circ(r).items():
                acc.add((Forest([l]) * f, m), c * c2)
        return acc.result()


def _trees(x):
    for b, c in lc(x).items():
        if not isinstance(b, Tree):
            raise TypeError(f"expected trees, got {type(b).__name__}")
        yield b, c


def delta_rc(x, budget=2, method: str = "flip") -> LinComb:
    """Recentering coproduct, as ``flip(Δ₂)`` or by its direct recursion."""
    if method == "flip":
        return flip(delta2(x, budget))
    if method != "recursive":
        raise ValueError(f"unknown method {method!r}")
    R = _engine(_RC, budget)
    acc = Accumulator()
    for t, c in _trees(x):
        acc.add(R.tree(t), c)
    return acc.result()


def delta_rn(x, budget=2, variant: str = "full") -> LinComb:
    """Extraction-contraction coproduct built from the direct ``Δ_RC`` recursion
    (``variant="nonroot"`` gives ``Δ_RN^{non-root}``)."""
    R = _engine(_RC, budget)
    acc = Accumulator()
    for t, c in _trees(x):
        if variant == "full":
            acc.add(R.rn(t), c)
        elif variant == "nonroot":
            acc.add(R.circ(t), c)
        else:
            raise ValueError(f"unknown variant {variant!r}")
    return acc.result()


# ---------------------------------------------------------------------------
# projections


def _positive_branches(t: Tree, deg: DegreeAssignment) -> bool:
    return all(degree(Planted(e, c), deg) > 0 for e, c in t.children)


def coaction_plus(x, budget, deg: DegreeAssignment) -> LinComb:
    """``Δ_RC`` keeping right legs whose root branches all have positive degree."""
    return delta_rc(x, budget).filter(lambda p: _positive_branches(p[1], deg))


def _extractable(f: Forest, deg: DegreeAssignment) -> bool:
    return all(t.children and degree(t, deg) < 0 for t in f.items)


def coaction_minus(x, budget, deg: DegreeAssignment, variant: str = "full") -> LinComb:
    """``Δ_RN`` keeping extracted forests of negative-degree trees (single
    nodes excluded); ``variant="nonroot"`` uses the non-root coproduct."""
    return delta_rn(x, budget, variant).filter(lambda p: _extractable(p[0], deg))


# ---------------------------------------------------------------------------
# antipode and Birkhoff twist


class _Antipode:
    def __init__(self, budget: Budget, which: str):
        if which not in ("na", "dck"):
            raise ValueError(f"unknown coproduct {which!r}")
        self.budget = budget
        self.which = which
        self.planted = lru_cache(maxsize=None)(self._planted)

    def coproduct(self, f: Forest) -> LinComb:
        d = delta_dck(f, "full", self.budget)
        return flip(d) if self.which == "na" else d

    def _planted(self, p: Planted) -> LinComb:
        x = Forest([p])
        out = LinComb.of(x, -1)
        for (a, b), c in self.coproduct(x).items():
            if a.items and b.items:
                out = out - c * _forest_times(self.forest(a), b)
        return out

    def forest(self, f: Forest) -> LinComb:
        out = LinComb.of(EMPTY)
        for p in f.items:
            out = _forest_product(out, self.planted(p))
        return out


def _forest_product(x: LinComb, y: LinComb) -> LinComb:
    acc = Accumulator()
    for a, ca in x.items():
        for b, cb_ in y.items():
            acc.add(a * b, ca * cb_)
    return acc.result()


def _forest_times(x: LinComb, f: Forest) -> LinComb:
    return x.map(lambda a: a * f)


def antipode(x, budget=2, which: str = "na") -> LinComb:
    """Antipode of the truncated connected graded bialgebra of planted forests
    for ``Δ_NA`` (``which="na"``) or ``Δ_DCK``: ``S(x) = -x - sum S(x')x''``."""
    A = _Antipode(as_budget(budget), which)
    acc = Accumulator()
    for b, c in lc(x).items():
        acc.add(A.forest(_planted_forest(b)), c)
    return acc.result()


def antipode_identity(x, budget=2, which: str = "na") -> LinComb:
    """``m(S ⊗ id)Δ x - ε(x) 1`` truncated at the budget; zero when it holds."""
    B = as_budget(budget)
    A = _Antipode(B, which)
    acc = Accumulator()
    for b, c in lc(x).items():
        f = _planted_forest(b)
        for (l, r), c2 in A.coproduct(f).items():
            acc.add(_forest_times(A.forest(l), r), c * c2)
        if not f.items:
            acc.add(EMPTY, -c)
    return truncate(acc.result(), B.max_poly_grading)


@dataclass(frozen=True)
class Character:
    """A multiplicative functional given by its values on trees.

    ``evaluate`` must be a pure function; forests are sent to the product of
    the values of their trees and the empty forest to ``one``.
    """

    evaluate: Callable
    one: object = 1

    def __call__(self, b):
        if isinstance(b, Forest):
            out = self.one
            for p in b.items:
                out = out * self.evaluate(p)
            return out
        return self.evaluate(b)


def _character_value(Pi, f, one):
    if isinstance(Pi, Character):
        return Pi(f)
    return Character(Pi, one)(f)


def birkhoff_twist(Pi: Callable, Q: Callable, x, budget=2, evaluate: Callable | None = None, one=1):
    """``Π̂ = (Π ⊗ (Q∘ΠA·)(0)) Δ̄_NA`` evaluated on ``x``.

    ``Pi`` maps trees and planted trees to ring values (multiplicatively
    extended to forests), ``Q`` acts on values and ``evaluate`` performs the
    final evaluation (identity by default).  An empty right leg contributes
    the ring unit.
    """
    ev = evaluate or (lambda v: v)
    A = _Antipode(as_budget(budget), "na")
    total = 0 * one
    for t, c in _trees(x):
        for (left, right), c2 in flip(delta_dck(t, "bar", budget)).items():
            if not right.items:
                factor = one
            else:
                s = 0 * one
                for f, c3 in A.forest(right).items():
                    s = s + c3 * _character_value(Pi, f, one)
                factor = ev(Q(s))
            total = total + c * c2 * _character_value(Pi, left, one) * factor
    return total


# ---------------------------------------------------------------------------
# renormalisation maps


class RenormalisationMap:
    """``M = M∘ R`` with ``M∘`` multiplicative for the tree product and
    ``M∘ I_a(τ) = I_a(M τ)``."""

    def __init__(self, R: Callable[[Tree], object]):
        self.R = R
        self.apply_tree = lru_cache(maxsize=None)(self._apply_tree)
        self.circ_tree = lru_cache(maxsize=None)(self._circ_tree)

    def _circ_tree(self, t: Tree) -> LinComb:
        states = LinComb.of(Tree(t.index))
        for e, s in t.children:
            acc = Accumulator()
            for u, cu in self.apply_tree(s).items():
                br = Tree(tuple(0 for _ in t.index), ((e, u),))
                for a, ca in states.items():
                    acc.add(tree_product((a, br)), ca * cu)
            states = acc.result()
        return states

    def _apply_tree(self, t: Tree) -> LinComb:
        acc = Accumulator()
        for u, c in lc(self.R(t)).items():
            acc.add(self.circ_tree(u), c)
        return acc.result()

    def __call__(self, x) -> LinComb:
        acc = Accumulator()
        for t, c in _trees(x):
            acc.add(self.apply_tree(t), c)
        return acc.result()

    def circ(self, x) -> LinComb:
        acc = Accumulator()
        for t, c in _trees(x):
            acc.add(self.circ_tree(t), c)
        return acc.result()


def renorm_map(R: Callable[[Tree], object], x) -> LinComb:
    """Apply ``M = M∘ R`` to ``x``."""
    return RenormalisationMap(R)(x)


def _apply_right(x: LinComb, f) -> LinComb:
    acc = Accumulator()
    for (a, b), c in x.items():
        for u, cu in lc(f(b)).items():
            acc.add((a, u), c * cu)
    return acc.result()


def _apply_both(x: LinComb, f, g) -> LinComb:
    acc = Accumulator()
    for (a, b), c in x.items():
        for u, cu in lc(f(a)).items():
            for v, cv in lc(g(b)).items():
                acc.add((u, v), c * cu * cv)
    return acc.result()


def check_R_compat(R: Callable[[Tree], object], basis, budget=2) -> list:
    """Trees of ``basis`` where ``(id ⊗ R)Δ₂ ≠ Δ₂ R`` (up to the budget)."""
    B = as_budget(budget).max_poly_grading
    bad = []
    for t in basis:
        lhs = _apply_right(delta2(t, budget), R)
        rhs = delta2(lc(R(t)), budget)
        if truncate(lhs, B) != truncate(rhs, B):
            bad.append(t)
    return bad


def check_M_counterpart(R: Callable[[Tree], object], basis, budget=2) -> list:
    """Trees of ``basis`` where ``(M∘ ⊗ M)Δ₂ ≠ Δ₂ M`` (up to the budget)."""
    M = RenormalisationMap(R)
    B = as_budget(budget).max_poly_grading
    bad = []
    for t in basis:
        lhs = _apply_both(delta2(t, budget), M.circ, M)
        rhs = delta2(M(t), budget)
        if truncate(lhs, B) != truncate(rhs, B):
            bad.append(t)
    return bad


# ---------------------------------------------------------------------------
# cointeraction


def cointeraction_sides(tau, t1: Tree, t2: Tree, which: str = "plug", deformed: bool = True, edge=("t", (0,))):
    """Both sides of the grafting (``which="graft"``) or plugging cointeraction.

    ``tau`` is a forest (a tree counts as a one-tree forest); its unshuffle
    coproduct gives the Sweedler sum.  For grafting, ``t1`` is grafted through
    ``edge`` and the planted tree ``I_edge(t1)`` receives non-root insertions.
    """
    f = tau if isinstance(tau, Forest) else Forest([tau])
    a = edge if isinstance(edge, Edge) else Edge(edge[0], tuple(edge[1]))
    gr = deformed_graft if deformed else graft
    lhs = Accumulator()
    for f1, f2, m in unshuffle(f):
        right = forest_insert(f2, t2, deformed)
        if which == "graft":
            planted = Tree(tuple(0 for _ in t1.index), ((a, t1),))
            left = forest_insert_nonroot(f1, planted, deformed).map(lambda u: u.children[0][1])
            lhs.add(gr(left, a, right), m)
        elif which == "plug":
            left = forest_insert_nonroot(f1, t1, deformed)
            lhs.add(star_plug(left, right, deformed), m)
        else:
            raise ValueError(f"unknown cointeraction {which!r}")
    inner = gr(t1, a, t2) if which == "graft" else star_plug(t1, t2, deformed)
    rhs = forest_insert(f, inner, deformed)
    return lhs.result(), rhs


def cointeraction_check(tau, t1: Tree, t2: Tree, which: str = "plug", deformed: bool = True, edge=("t", (0,))) -> bool:
    lhs, rhs = cointeraction_sides(tau, t1, t2, which, deformed, edge)
    return lhs == rhs


def rc_rn_cointeraction_sides(t: Tree, budget=2) -> tuple[LinComb, LinComb]:
    """``M^{(13)(2)(4)}(Δ_RN ⊗ Δ_RN^{non-root})Δ_RC`` and ``(id ⊗ Δ_RC)Δ_RN``,
    both truncated at the budget."""
    B = as_budget(budget)
    R = _engine(_RC, B)
    lhs = Accumulator()
    for (a, b), c in R.tree(t).items():
        for (f1, t1), c1 in R.rn(a).items():
            for (f2, t2), c2 in R.circ(b).items():
                lhs.add((f1 * f2, t1, t2), c * c1 * c2)
    rhs = Accumulator()
    for (f, u), c in R.rn(t).items():
        for (x, y), c2 in R.tree(u).items():
            rhs.add((f, x, y), c * c2)
    k = B.max_poly_grading
    return truncate(lhs.result(), k), truncate(rhs.result(), k)


def rc_rn_cointeraction_check(t: Tree, budget=2) -> bool:
    lhs, rhs = rc_rn_cointeraction_sides(t, budget)
    return lhs == rhs
