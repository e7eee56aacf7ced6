"""Truncated coproducts dual to the deformed products.

Every sum over a polynomial exponent ``l`` is cut at ``|l|_s <= budget``.
A dropped term always carries an ``X^l`` (or an edge increment ``l``) of
grading above the budget, so pairings against partners of grading at most
the budget are exact.

Tensors are LinCombs over pairs ``(left, right)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from . import combinatorics as cb
from .guin_oudom import PreLieStructure, delta_unshuffle, unshuffle
from .grafting import planted_graft
from .lincomb import Accumulator, LinComb, lc
from .trees import (
    EMPTY,
    DistinguishedForest,
    Edge,
    Forest,
    Planted,
    Tree,
    grading,
    node_mass,
    pairing,
    tree_product,
)

__all__ = [
    "Budget",
    "delta_unshuffle",
    "delta_polysplit",
    "delta_dck",
    "delta2",
    "delta1",
    "delta1_forest",
    "duality_check",
    "duality_sides",
    "counit",
    "truncate",
    "weight",
]


@dataclass(frozen=True)
class Budget:
    """Bound on the scaled size of every emitted polynomial exponent."""

    max_poly_grading: int
    scaling: tuple | None = None

    def __post_init__(self):
        if self.max_poly_grading < 0:
            raise ValueError("budget must be non-negative")

    def exponents(self, dim: int):
        """All ``l`` in ``N^dim`` with ``|l|_s <= budget``."""
        return cb.graded_ball(dim, self.max_poly_grading, self.scaling)


def as_budget(b) -> Budget:
    return b if isinstance(b, Budget) else Budget(int(b))


@lru_cache(maxsize=64)
def _engine_for(cls, budget: "Budget"):
    return cls(budget)


def _engine(cls, budget):
    # memoised recursions are shared between calls with the same budget
    return _engine_for(cls, as_budget(budget))


def _mono(k) -> Tree:
    return Tree(tuple(k))


def _tree_mul(a: Tree, b: Tree) -> Tree:
    return tree_product((a, b))


def _forest_mul(a: Forest, b: Forest) -> Forest:
    return a * b


def _tensor_mul(x: LinComb, y: LinComb, lmul, rmul) -> LinComb:
    acc = Accumulator()
    for (l1, r1), c1 in x.items():
        for (l2, r2), c2 in y.items():
            acc.add((lmul(l1, l2), rmul(r1, r2)), c1 * c2)
    return acc.result()


def _inv_fact(ell) -> Fraction:
    return Fraction(1, cb.factorial(ell))


def _shift_edge(e: Edge, ell) -> Edge:
    return Edge(e.kind, cb.add(e.index, ell))


def _planted_tree(e: Edge, t: Tree) -> Tree:
    # the tree X^0 I_e(t)
    return Tree(cb.zero(t.dim), ((e, t),))


# ---------------------------------------------------------------------------
# helpers


def delta_polysplit(x) -> LinComb:
    """Coproduct on distinguished forests: the root monomial of the marked
    tree splits binomially, its branches and the other trees are primitive."""
    acc = Accumulator()
    for df, c in lc(x).items():
        t = df.marked
        for left_rest, right_rest, m in unshuffle(df.rest):
            for bl, br, mb in unshuffle(Forest(Planted(e, s) for e, s in t.children)):
                for ell in cb.box(t.index):
                    lt = Tree(ell, [(p.edge, p.body) for p in bl.items])
                    rt = Tree(cb.sub(t.index, ell), [(p.edge, p.body) for p in br.items])
                    acc.add(
                        (DistinguishedForest(lt, left_rest), DistinguishedForest(rt, right_rest)),
                        c * m * mb * cb.binom(t.index, ell),
                    )
    return acc.result()


# ---------------------------------------------------------------------------
# deformed Butcher-Connes-Kreimer


class _DCK:
    def __init__(self, budget: Budget):
        self.budget = budget
        self.bar = lru_cache(maxsize=None)(self._bar)
        self.full_planted = lru_cache(maxsize=None)(self._full_planted)

    def _root_terms(self, e: Edge, t: Tree, planted_left: bool):
        # sum_l 1/l! I_{a+l}(t) ⊗ X^l
        out = []
        for ell in self.budget.exponents(t.dim):
            left = Planted(_shift_edge(e, ell), t)
            out.append((Forest([left]) if planted_left else left, _mono(ell), _inv_fact(ell)))
        return out

    def _bar_planted(self, e: Edge, t: Tree) -> LinComb:
        acc = Accumulator()
        for (f, r), c in self.bar(t).items():
            acc.add((f, _planted_tree(e, r)), c)
        for f, r, c in self._root_terms(e, t, True):
            acc.add((f, r), c)
        return acc.result()

    def _bar(self, t: Tree) -> LinComb:
        out = LinComb.of((EMPTY, _mono(t.index)))
        for e, s in t.children:
            out = _tensor_mul(out, self._bar_planted(e, s), _forest_mul, _tree_mul)
        return out

    def _full_planted(self, p: Planted) -> LinComb:
        acc = Accumulator()
        for (f, r), c in self.bar(p.body).items():
            acc.add((f, Forest([Planted(p.edge, r)])), c)
        acc.add((Forest([p]), EMPTY))
        return acc.result()

    def full(self, f: Forest) -> LinComb:
        out = LinComb.of((EMPTY, EMPTY))
        for p in f.items:
            out = _tensor_mul(out, self.full_planted(p), _forest_mul, _forest_mul)
        return out

    def root(self, t: Tree) -> LinComb:
        out = LinComb.of((EMPTY, _mono(t.index)))
        for e, s in t.children:
            terms = LinComb(((f, r), c) for f, r, c in self._root_terms(e, s, True))
            out = _tensor_mul(out, terms, _forest_mul, _tree_mul)
        return out


def _planted_forest(x) -> Forest:
    if isinstance(x, Forest):
        return x
    if isinstance(x, Planted):
        return Forest([x])
    if isinstance(x, Tree):
        if any(x.index):
            raise ValueError("the full coproduct acts on planted forests; this tree has a root monomial")
        return Forest(Planted(e, c) for e, c in x.children)
    raise TypeError(f"expected a planted forest, got {type(x).__name__}")


def delta_dck(x, variant: str = "full", budget=2) -> LinComb:
    """Deformed Butcher-Connes-Kreimer coproduct.

    ``full`` acts on planted forests (a tree with zero root index counts as
    the forest of its branches); ``bar`` and ``root`` act on trees and return
    planted forest ⊗ tree.
    """
    D = _engine(_DCK, budget)
    acc = Accumulator()
    for b, c in lc(x).items():
        if variant == "full":
            acc.add(D.full(_planted_forest(b)), c)
        elif variant == "bar":
            acc.add(D.bar(_as_tree(b)), c)
        elif variant == "root":
            acc.add(D.root(_as_tree(b)), c)
        else:
            raise ValueError(f"unknown variant {variant!r}")
    return acc.result()


def _as_tree(b) -> Tree:
    if isinstance(b, Tree):
        return b
    if isinstance(b, Planted):
        return b.as_tree()
    raise TypeError(f"expected a tree, got {type(b).__name__}")


# ---------------------------------------------------------------------------
# Delta_2 and Delta_1


class _D2:
    def __init__(self, budget: Budget):
        self.budget = budget
        self.tree = lru_cache(maxsize=None)(self._tree)

    def _tree(self, t: Tree) -> LinComb:
        dim = t.dim
        # X primitive: binomial split of the root monomial
        out = LinComb((((_mono(ell), _mono(cb.sub(t.index, ell))), cb.binom(t.index, ell)) for ell in cb.box(t.index)))
        for e, s in t.children:
            acc = Accumulator()
            for (l, r), c in self.tree(s).items():
                acc.add((l, _planted_tree(e, r)), c)
            for ell in self.budget.exponents(dim):
                acc.add((_planted_tree(_shift_edge(e, ell), s), _mono(ell)), _inv_fact(ell))
            out = _tensor_mul(out, acc.result(), _tree_mul, _tree_mul)
        return out


def delta2(x, budget=2) -> LinComb:
    """``Δ₂`` as a map from trees to tree ⊗ tree (multiplicative for the tree
    product, ``X`` primitive)."""
    D = _engine(_D2, budget)
    acc = Accumulator()
    for b, c in lc(x).items():
        acc.add(D.tree(_as_tree(b)), c)
    return acc.result()


class _D1:
    def __init__(self, budget: Budget):
        self.d2 = _D2(budget)
        self.full = lru_cache(maxsize=None)(self._full)
        self.circ = lru_cache(maxsize=None)(self._circ)

    def _circ(self, t: Tree) -> LinComb:
        out = LinComb.of((EMPTY, _mono(t.index)))
        for e, s in t.children:
            acc = Accumulator()
            for (f, r), c in self.full(s).items():
                acc.add((f, _planted_tree(e, r)), c)
            out = _tensor_mul(out, acc.result(), _forest_mul, _tree_mul)
        return out

    def _full(self, t: Tree) -> LinComb:
        # M^{(13)(2)} (Δ∘ ⊗ id) Δ₂
        acc = Accumulator()
        for (l, r), c in self.d2.tree(t).items():
            right_forest = Forest([r])
            for (f, m), c2 in self.circ(l).items():
                acc.add((f * right_forest, m), c * c2)
        return acc.result()


def delta1(x, variant: str = "full", budget=2) -> LinComb:
    """``Δ₁`` (extraction-contraction, forest ⊗ tree) or its non-root part ``Δ∘``.

    A forest argument gives the multiplicative extension (forest ⊗ forest).
    """
    D = _engine(_D1, budget)
    acc = Accumulator()
    for b, c in lc(x).items():
        if isinstance(b, Forest):
            if variant != "full":
                raise ValueError("forests take the full variant only")
            acc.add(delta1_forest(b, budget), c)
            continue
        t = _as_tree(b)
        if variant == "full":
            acc.add(D.full(t), c)
        elif variant == "circ":
            acc.add(D.circ(t), c)
        else:
            raise ValueError(f"unknown variant {variant!r}")
    return acc.result()


def delta1_forest(x, budget=2) -> LinComb:
    """``Δ₁`` extended multiplicatively to forests (forest ⊗ forest)."""
    D = _engine(_D1, budget)
    acc = Accumulator()
    for f, c in lc(x).items():
        out = LinComb.of((EMPTY, EMPTY))
        for t in f.items:
            leg = D.full(t).map(lambda p: (p[0], Forest([p[1]])))
            out = _tensor_mul(out, leg, _forest_mul, _forest_mul)
        acc.add(out, c)
    return acc.result()


def counit(b) -> int:
    """``1`` on the empty forest and on ``•0``, zero elsewhere."""
    if isinstance(b, Forest):
        return int(not b.items)
    if isinstance(b, Tree):
        return int(b.is_unit)
    if isinstance(b, DistinguishedForest):
        return int(b.marked.is_unit and not b.rest.items)
    return 0


# ---------------------------------------------------------------------------
# duality


_STAR0 = PreLieStructure(lambda p, q: planted_graft(p, q, True), "deformed planted grafting")


def _products():
    from . import plugging

    return {
        "dck": lambda a, b: _STAR0.star(_planted_forest(a), _planted_forest(b)),
        "dck_bar": lambda a, b: _graft_bar(a, b),
        "d2": lambda a, b: plugging.star_plug(a, b, True),
        "d1": lambda a, b: plugging.forest_insert(a, b, True),
        "d1_circ": lambda a, b: plugging.forest_insert_nonroot(a, b, True),
    }


def _graft_bar(f, t: Tree) -> LinComb:
    # σ ↷̄ τ defined by σ ↷̂ I_b(τ) = I_b(σ ↷̄ τ)
    e = Edge("\x00b", cb.zero(t.dim))
    return _STAR0.bullet_gen(_planted_forest(f), Planted(e, t)).map(lambda p: p.body)


def _coproduct(kind: str, budget: Budget):
    return {
        "dck": lambda t: delta_dck(t, "full", budget),
        "dck_bar": lambda t: delta_dck(t, "bar", budget),
        "d2": lambda t: delta2(t, budget),
        "d1": lambda t: delta1(t, "full", budget),
        "d1_circ": lambda t: delta1(t, "circ", budget),
    }[kind]


def _size(x) -> int:
    total = 0
    for b, _ in lc(x).items():
        total = max(total, grading(b) + node_mass(b))
    return total


def duality_sides(kind: str, left, right, target, budget=None) -> tuple[Fraction, Fraction]:
    """``(<product(left, right), target>, <left ⊗ right, Δ target>)``.

    ``kind`` is one of ``dck``, ``dck_bar``, ``d2``, ``d1``, ``d1_circ``.
    Without an explicit budget one large enough for an exact answer is used.
    """
    if kind not in ("dck", "dck_bar", "d2", "d1", "d1_circ"):
        raise ValueError(f"unknown duality kind {kind!r}")
    if budget is None:
        budget = Budget(max(_size(left), _size(right)))
    prod = _products()[kind](left, right)
    if kind == "dck":
        target_b = lc(target).map(_planted_forest)
    else:
        target_b = lc(target)
    lhs = pairing(prod, target_b) if prod and target_b else Fraction(0)
    cop = _coproduct(kind, as_budget(budget))(target_b if kind != "dck" else target_b)
    pair = LinComb(((a, b), ca * cb_) for a, ca in lc(left).items() for b, cb_ in lc(right).items())
    if kind == "dck":
        pair = LinComb(((_planted_forest(a), _planted_forest(b)), c) for (a, b), c in pair.items())
    rhs = _pair_tensor(pair, cop)
    return Fraction(lhs), Fraction(rhs)


def _pair_tensor(x: LinComb, y: LinComb) -> Fraction:
    out = Fraction(0)
    for b, c in x.items():
        d = y.coeff(b)
        if d:
            from .trees import symmetry_factor

            out += c * d * symmetry_factor(b)
    return out


def duality_check(kind: str, left, right, target, budget=None) -> bool:
    """Whether ``<product(left, right), target> = <left ⊗ right, Δ target>``."""
    a, b = duality_sides(kind, left, right, target, budget)
    return a == b


# ---------------------------------------------------------------------------
# comparing truncated expressions


def weight(b) -> int:
    """Total index mass (edge and node indices) of a basis element or tensor."""
    if isinstance(b, tuple):
        return sum(weight(x) for x in b)
    return grading(b) + node_mass(b)


def truncate(x, bound: int) -> LinComb:
    """Keep the terms of total index mass at most ``bound``.

    Terms dropped by a budget ``B`` carry mass above ``B``, and no later
    operation lowers the mass, so two routes computed with budget ``B`` agree
    after ``truncate(., B)`` whenever the untruncated identity holds.
    """
    return lc(x).filter(lambda b: weight(b) <= bound)
