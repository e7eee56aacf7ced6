"""Plugging, its deformations, root merging and insertion.

``plug`` identifies the root of one tree with a vertex of another (node
indices add).  The deformed plug moves part of the vertex index onto the
edges leaving the plugged root.  Insertion is built from the tree-level
products ``★`` / ``★₂`` and plugging.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from functools import lru_cache

from . import combinatorics as cb
from .grafting import planted_graft, theta, theta_inverse
from .guin_oudom import PreLieStructure
from .lincomb import Accumulator, LinComb, bilinear, lc
from .trees import (
    Edge,
    Forest,
    Planted,
    Tree,
    check_path,
    find_label,
    label_vertices,
    labels,
    replace_at,
    strip_labels,
    symmetry_factor,
    tree_product,
    unit,
    vertices,
)

ROOT = ()
_MARK = "\x00vm"


def _paths(tau: Tree, mode):
    if mode == "all":
        return vertices(tau)
    if mode == "root":
        return [ROOT]
    if mode == "nonroot":
        return vertices(tau)[1:]
    check_path(tau, mode)
    return [tuple(mode)]


def _merge_into(s: Tree, sigma_index, sigma_children, w=None):
    # node s receives sigma's root index and branches, plus an optional shift w
    idx = cb.add(s.index, sigma_index)
    if w is not None:
        idx = cb.signed_add(idx, w)
        if idx is None:
            return None
    return Tree(idx, s.children + tuple(sigma_children), s.gen)


def plug_at(sigma: Tree, tau: Tree, path) -> Tree:
    """``sigma ▷_v tau``: identify the root of ``sigma`` with ``v``."""
    return replace_at(tau, path, lambda s: _merge_into(s, sigma.index, sigma.children))


def plug(sigma, tau, mode="all") -> LinComb:
    """Plugging summed over the vertices selected by ``mode``
    (``"all"``, ``"root"``, ``"nonroot"`` or a vertex path)."""

    def f(s: Tree, t: Tree):
        acc = Accumulator()
        for p in _paths(t, mode):
            acc.add(plug_at(s, t, p))
        return acc.result()

    return bilinear(f, sigma, tau)


def _lowered_branches(sigma: Tree, n_v):
    """Pairs ``(C(n_v; l), |l|, branches)`` over one ``l_i`` per branch of sigma."""
    states = {(tuple(n_v), ()): 1}
    for e, child in sigma.children:
        new: dict = {}
        for (rem, kids), c in states.items():
            for ell in cb.box(tuple(min(x, y) for x, y in zip(rem, e.index))):
                key = (cb.sub(rem, ell), kids + ((Edge(e.kind, cb.sub(e.index, ell)), child),))
                new[key] = new.get(key, 0) + c * cb.binom(rem, ell)
        states = new
    # |l| = n_v - rem
    return [(c, rem, kids) for (rem, kids), c in states.items()]


def deformed_plug_at(sigma: Tree, tau: Tree, path) -> LinComb:
    """``sigma ▷̂_v tau = sum_l C(n_v; l) (X^k prod I_{a_i - l_i}(sigma_i)) ▷_v ↑_v^{-|l|} tau``."""
    node = tau
    for i in path:
        node = node.children[i][1]
    acc = Accumulator()
    for c, rem, kids in _lowered_branches(sigma, node.index):
        # the vertex keeps rem = n_v - |l| and receives sigma's root index
        t = replace_at(tau, path, lambda s: Tree(cb.add(rem, sigma.index), s.children + kids, s.gen))
        acc.add(t, c)
    return acc.result()


def deformed_plug(sigma, tau, mode="all") -> LinComb:
    """Deformed plugging summed over the vertices selected by ``mode``."""

    def f(s: Tree, t: Tree):
        acc = Accumulator()
        for p in _paths(t, mode):
            acc.add(deformed_plug_at(s, t, p))
        return acc.result()

    return bilinear(f, sigma, tau)


# ---------------------------------------------------------------------------
# the transported plugging (Theta-conjugate)


def tilde_plug_root(sigma: Tree, tau: Tree) -> LinComb:
    """Closed double-binomial formula for the transported plug at the root."""
    acc = Accumulator()
    for c1, rem1, kids1 in _lowered_branches(sigma, tau.index):
        for c2, rem2, kids2 in _lowered_branches(tau, sigma.index):
            # k + kbar - |l| - |lbar| = rem1 + rem2
            acc.add(Tree(cb.add(rem1, rem2), kids1 + kids2), c1 * c2)
    return acc.result()


def _tilde_plug_labeled(sigma: Tree, tau_labeled: Tree, lab: str) -> LinComb:
    """``Theta(Theta^{-1} sigma ▷_v Theta^{-1} tau)`` keeping vertex labels."""
    acc = Accumulator()
    inv_tau = theta_inverse(tau_labeled)
    inv_sigma = theta_inverse(sigma)
    for t, ct in inv_tau.items():
        p = find_label(t, lab)
        for s, cs in inv_sigma.items():
            acc.add(plug_at(s, t, p), ct * cs)
    return theta(acc.result())


def tilde_plug(sigma, tau, mode="root") -> LinComb:
    """Transported plugging ``Theta(Theta^{-1}sigma ▷ Theta^{-1}tau)``.

    At the root the closed formula is used; other vertices go through the
    transport definition.
    """

    def f(s: Tree, t: Tree):
        acc = Accumulator()
        paths = _paths(t, mode)
        lt = label_vertices(t) if any(paths) else None
        for p in paths:
            if p == ROOT:
                acc.add(tilde_plug_root(s, t))
            else:
                lab = _label_at(lt, p)
                acc.add(_tilde_plug_labeled(s, lt, lab).map(strip_labels))
        return acc.result()

    return bilinear(f, sigma, tau)


def tilde_plug_transport(sigma, tau, path) -> LinComb:
    """The transport definition at any vertex (used to test the root formula)."""

    def f(s: Tree, t: Tree):
        check_path(t, path)
        lt = label_vertices(t)
        return _tilde_plug_labeled(s, lt, _label_at(lt, path)).map(strip_labels)

    return bilinear(f, sigma, tau)


def _label_at(t: Tree, path) -> str:
    for i in path:
        t = t.children[i][1]
    return t.gen


def plug_via_uparrow(sigma, tau, path) -> LinComb:
    """``↑_v^{n_sigma} (Pi sigma ▷̃_v tau)`` with ``Pi`` zeroing sigma's root."""

    def f(s: Tree, t: Tree):
        check_path(t, path)
        lt = label_vertices(t)
        lab = _label_at(lt, path)
        ps = Tree(cb.zero(s.dim), s.children)
        if path == ROOT:
            tp = tilde_plug_root(ps, lt)
        else:
            tp = _tilde_plug_labeled(ps, lt, lab)
        acc = Accumulator()
        for u, c in tp.items():
            p = ROOT if path == ROOT else find_label(u, lab)
            moved = replace_at(u, p, lambda x: Tree(cb.add(x.index, s.index), x.children, x.gen))
            acc.add(strip_labels(moved), c)
        return acc.result()

    return bilinear(f, sigma, tau)


# ---------------------------------------------------------------------------
# K and its adjoint


def merge_roots(f: Forest, dim: int = 1) -> Tree:
    """``K``: merge all trees of a forest at one root; ``K(1) = •0``."""
    if not f.items:
        return unit(dim)
    return tree_product(f.items)


@lru_cache(maxsize=None)
def _split_blocks(tau: Tree) -> LinComb:
    branches = list(tau.children)
    dim = tau.dim
    forests = set()
    seen_parts = set()
    for part in cb.set_partitions(list(range(len(branches)))):
        key = tuple(sorted(tuple(sorted((branches[i][0].kind, branches[i][0].index, branches[i][1].key) for i in blk))
                           for blk in part))
        if key in seen_parts:
            continue
        seen_parts.add(key)
        r = len(part)
        for ks in _split_index(tau.index, r):
            blocks = [Tree(k, [branches[i] for i in blk]) for k, blk in zip(ks, part)]
            used = cb.total(ks, dim)
            rest = cb.sub(tau.index, used)
            for pure in cb.vector_partitions(rest):
                forests.add(Forest(blocks + [Tree(k) for k in pure]))
    st = symmetry_factor(tau)
    return LinComb((f, Fraction(st, symmetry_factor(f))) for f in forests)


def _split_index(k, r):
    # ordered r-tuples of multi-indices with sum <= k
    if r == 0:
        yield ()
        return
    for first in cb.box(k):
        for tail in _split_index(cb.sub(k, first), r - 1):
            yield (first,) + tail


def split_blocks(tau) -> LinComb:
    """``K*``: the adjoint of ``merge_roots`` for the symmetry-factor pairing."""
    return lc(tau).map(_split_blocks)


# ---------------------------------------------------------------------------
# forests acting on trees


def place_forest(f: Forest, tau: Tree, deformed: bool = False, mode="all") -> LinComb:
    """Plug the trees of ``f`` at pairwise distinct vertices of ``tau``.

    This is the Guin-Oudom extension ``f • tau`` of (deformed) plugging.
    """
    items = list(f.items)
    if not items:
        return LinComb.of(tau)
    lt = label_vertices(tau)
    labs = [_label_at(lt, p) for p in _paths(tau, mode)]
    acc = Accumulator()
    for assign in itertools.permutations(labs, len(items)):
        cur = LinComb.of(lt)
        for s, lab in zip(items, assign):
            nxt = Accumulator()
            for t, c in cur.items():
                p = find_label(t, lab)
                if deformed:
                    nxt.add(deformed_plug_at(s, t, p), c)
                else:
                    nxt.add(plug_at(s, t, p), c)
            cur = nxt.result()
        acc.add(cur)
    return acc.result().map(strip_labels)


def star_plug(sigma, tau, deformed: bool = True) -> LinComb:
    """Tree-level ``★₂`` (deformed) or ``★`` (plain): ``(K* sigma) • tau``."""

    def f(s: Tree, t: Tree):
        acc = Accumulator()
        for blocks, c in _split_blocks(s).items():
            acc.add(place_forest(blocks, t, deformed), c)
        return acc.result()

    return bilinear(f, sigma, tau)


def plugging_structure(deformed: bool) -> PreLieStructure:
    return PreLieStructure(lambda a, b: (deformed_plug if deformed else plug)(a, b), "deformed plug" if deformed else "plug")


def spread_uparrow(t: Tree, labs, k) -> LinComb:
    """``sum_{k = sum k_v} prod ↑_v^{k_v}`` over the labelled vertices ``labs``."""
    acc = Accumulator()

    def rec(cur, i, rem):
        if i == len(labs):
            if not any(rem):
                acc.add(strip_labels(cur))
            return
        for kv in cb.box(rem):
            nxt = replace_at(cur, find_label(cur, labs[i]), lambda x: Tree(cb.add(x.index, kv), x.children, x.gen))
            rec(nxt, i + 1, cb.sub(rem, kv))

    rec(t, 0, tuple(k))
    return acc.result()


_PLANTED_DEFORMED = PreLieStructure(lambda p, q: planted_graft(p, q, True), "deformed planted grafting")


def link_sides(sigma: Tree, tau: Tree, b) -> tuple[LinComb, LinComb]:
    """Both sides of ``I_b(sigma ★₂ tau) = ↑̃^k_{N_tau}(prod I_{a_i}(sigma_i) ↷̂ I_b(tau))``."""
    b = b if isinstance(b, Edge) else Edge(b[0], tuple(b[1]))
    lhs = star_plug(sigma, tau, True).map(lambda u: Planted(b, u))
    lt = label_vertices(tau)
    labs = labels(lt)
    branches = Forest(Planted(e, c) for e, c in sigma.children)
    acc = Accumulator()
    for p, c in _PLANTED_DEFORMED.bullet_gen(branches, Planted(b, lt)).items():
        acc.add(spread_uparrow(p.body, labs, sigma.index).map(lambda u: Planted(b, u)), c)
    return lhs, acc.result()


def link_identity_check(sigma: Tree, tau: Tree, b) -> bool:
    """Whether ``★₂`` agrees with deformed grafting followed by splitting
    the root index of ``sigma`` over the vertices of ``tau``."""
    lhs, rhs = link_sides(sigma, tau, b)
    return lhs == rhs


# ---------------------------------------------------------------------------
# insertion


def subtree_trunk(tau: Tree, path) -> tuple[Tree, Tree]:
    """``(P_v(tau), T_v(tau))``: the subtree at ``v`` and the trunk with the
    branches at ``v`` removed and ``n_v`` set to zero."""
    check_path(tau, path)
    node = tau
    for i in path:
        node = node.children[i][1]
    trunk = replace_at(tau, path, lambda s: Tree(cb.zero(s.dim), (), s.gen))
    return node, trunk


def _insert_at(sigma: Tree, tau: Tree, path, deformed: bool) -> LinComb:
    P, _ = subtree_trunk(tau, path)
    # the trunk is rebuilt from a marked copy: zeroing n_v may reorder children
    T = replace_at(tau, path, lambda s: Tree(cb.zero(s.dim), (), _MARK))
    p = find_label(T, _MARK)
    acc = Accumulator()
    for s, c in star_plug(P, sigma, deformed).items():
        acc.add(strip_labels(plug_at(s, T, p)), c)
    return acc.result()


def insert(sigma, tau, deformed: bool = True, mode="all") -> LinComb:
    """Insertion ``sigma ▶ tau`` (or ``▶̂`` when deformed): at each selected
    vertex ``v`` the subtree ``P_v`` is replaced by ``P_v ★ sigma``."""

    def f(s: Tree, t: Tree):
        acc = Accumulator()
        for p in _paths(t, mode):
            acc.add(_insert_at(s, t, p, deformed))
        return acc.result()

    return bilinear(f, sigma, tau)


_INSERTION: dict = {}


def insertion_structure(deformed: bool = True) -> PreLieStructure:
    """Shared Guin-Oudom structure for (deformed) insertion."""
    if deformed not in _INSERTION:
        _INSERTION[deformed] = PreLieStructure(
            lambda a, b: insert(a, b, deformed), "deformed insertion" if deformed else "insertion"
        )
    return _INSERTION[deformed]


def star1(w, v) -> LinComb:
    """``★₁``: Guin-Oudom product of deformed insertion on forests."""
    return insertion_structure(True).star(w, v)


def forest_insert(w, tau, deformed: bool = True) -> LinComb:
    """``w ▶̂ tau`` for a forest ``w`` (Guin-Oudom extension); a LinComb of trees."""
    P = insertion_structure(deformed)
    acc = Accumulator()
    for f, c in lc(w).items():
        for t, ct in lc(tau).items():
            acc.add(P.bullet_gen(f, t), c * ct)
    return acc.result()


def forest_insert_nonroot(w, tau, deformed: bool = True) -> LinComb:
    """``w ▶̂^{non-root} tau``: the trees of ``w`` are distributed over the
    root branches of ``tau`` and inserted there."""

    def f(fw: Forest, t: Tree):
        if not fw.items:
            return LinComb.of(t)
        n = len(t.children)
        if n == 0:
            return LinComb()
        items = list(fw.items)
        acc = Accumulator()
        # labelled distribution of the forest items over the root branches
        for assign in itertools.product(range(n), repeat=len(items)):
            parts = [[] for _ in range(n)]
            for it, j in zip(items, assign):
                parts[j].append(it)
            states = {(): Fraction(1)}
            for j, (e, child) in enumerate(t.children):
                sub = forest_insert(Forest(parts[j]), child, deformed)
                new: dict = {}
                for kids, c in states.items():
                    for u, cu in sub.items():
                        k2 = kids + ((e, u),)
                        new[k2] = new.get(k2, 0) + c * cu
                states = new
            for kids, c in states.items():
                acc.add(Tree(t.index, kids, t.gen), c)
        return acc.result()

    return bilinear(f, w, tau)
