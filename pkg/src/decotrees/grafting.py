"""Grafting products, their Taylor deformation and the isomorphism Theta.

All products are bilinear: arguments may be trees or LinCombs of trees.
Vertices are given as paths (see :mod:`decotrees.trees`) or the string
``"all"`` for the sum over every vertex.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Sequence

from . import combinatorics as cb
from .lincomb import Accumulator, LinComb, bilinear, lc, linear
from .trees import Edge, Planted, Tree, check_path, replace_at, vertices


def _edge(a) -> Edge:
    return a if isinstance(a, Edge) else Edge(a[0], tuple(a[1]))


def graft_at(sigma: Tree, a: Edge, tau: Tree, path) -> Tree:
    """Attach ``sigma`` to the vertex ``path`` of ``tau`` by a new edge ``a``."""
    return replace_at(tau, path, lambda s: Tree(s.index, s.children + ((a, sigma),), s.gen))


def _graft_shifted(sigma: Tree, a: Edge, tau: Tree, path, w) -> Tree | None:
    # shift and graft in one pass: paths are invalid after re-canonicalisation
    def f(s: Tree):
        idx = cb.signed_add(s.index, w)
        return None if idx is None else Tree(idx, s.children + ((a, sigma),), s.gen)

    return replace_at(tau, path, f)


def _paths(tau: Tree, at):
    if at == "all":
        return vertices(tau)
    check_path(tau, at)
    return [tuple(at)]


def _graft_basis(sigma: Tree, a: Edge, tau: Tree, at="all") -> LinComb:
    acc = Accumulator()
    for p in _paths(tau, at):
        acc.add(graft_at(sigma, a, tau, p))
    return acc.result()


def graft(sigma, a, tau, at="all") -> LinComb:
    """``sigma ↷^a tau``: sum of graftings over the vertices of ``tau``."""
    a = _edge(a)
    return bilinear(lambda s, t: _graft_basis(s, a, t, at), sigma, tau)


def graft_omega(sigma, a, omega: Sequence[int], tau) -> LinComb:
    """``sigma ↷^{a,omega} tau = sum_v ↑_v^omega (sigma ↷_v^a tau)``."""
    a = _edge(a)
    omega = tuple(omega)

    def f(s: Tree, t: Tree):
        acc = Accumulator()
        for p in vertices(t):
            acc.add(_graft_shifted(s, a, t, p, omega))
        return acc.result()

    return bilinear(f, sigma, tau)


def _deformed_basis(sigma: Tree, a: Edge, tau: Tree, at="all") -> LinComb:
    acc = Accumulator()
    for p in _paths(tau, at):
        n_v = _index_at(tau, p)
        for ell in cb.box(tuple(min(x, y) for x, y in zip(n_v, a.index))):
            edge = Edge(a.kind, cb.sub(a.index, ell))
            acc.add(_graft_shifted(sigma, edge, tau, p, tuple(-x for x in ell)), cb.binom(n_v, ell))
    return acc.result()


def _index_at(t: Tree, path) -> tuple:
    for i in path:
        t = t.children[i][1]
    return t.index


def deformed_graft(sigma, a, tau, at="all") -> LinComb:
    """``sigma ↷̂^a tau = sum_v sum_l C(n_v, l) sigma ↷_v^{a-l} (↑_v^{-l} tau)``."""
    a = _edge(a)
    return bilinear(lambda s, t: _deformed_basis(s, a, t, at), sigma, tau)


def planted_graft(p, q, deformed: bool = False) -> LinComb:
    """``I_a(s) ↷ I_b(t) = I_b(s ↷^a t)``, and the same with the deformed product."""

    def f(x: Planted, y: Planted):
        body = (_deformed_basis if deformed else _graft_basis)(x.body, x.edge, y.body)
        return body.map(lambda t: Planted(y.edge, t))

    return bilinear(f, p, q)


# ---------------------------------------------------------------------------
# Theta


@lru_cache(maxsize=None)
def _theta_tree(t: Tree) -> LinComb:
    # partial states: (remaining root index, tuple of branches) -> coefficient
    states = {(t.index, ()): 1}
    for e, child in t.children:
        sub = _theta_tree(child)
        new: dict = {}
        for (rem, kids), c in states.items():
            for ell in cb.box(tuple(min(x, y) for x, y in zip(rem, e.index))):
                w = c * cb.binom(rem, ell)
                rem2 = cb.sub(rem, ell)
                e2 = Edge(e.kind, cb.sub(e.index, ell))
                for s, cs in sub.items():
                    key = (rem2, kids + ((e2, s),))
                    new[key] = new.get(key, 0) + w * cs
        states = new
    return LinComb((Tree(rem, kids, t.gen), c) for (rem, kids), c in states.items())


def theta(x, direction: str = "forward") -> LinComb:
    """The isomorphism turning grafting into deformed grafting, or its inverse."""
    if direction == "forward":
        return linear(_theta_tree, x)
    if direction == "inverse":
        return theta_inverse(x)
    raise ValueError(f"direction must be 'forward' or 'inverse', not {direction!r}")


def theta_inverse(x) -> LinComb:
    """Solve ``Theta(y) = x`` by the fixed point ``y = x - (Theta - id)(y)``.

    ``Theta - id`` strictly lowers the grading, so the iteration stabilises.
    """
    x = lc(x)
    y = x
    while True:
        nxt = x - (theta(y) - y)
        if nxt == y:
            return y
        y = nxt


def deformed_uparrow(x, omega: Sequence[int]) -> LinComb:
    """``Theta^{-1} ↑^omega Theta``.

    This conjugate satisfies ``↑^omega Theta = Theta ↑̂^omega``.  It is not a
    derivation of the deformed grafting; see :func:`transported_uparrow`.
    """
    from .trees import uparrow

    return theta_inverse(linear(lambda t: uparrow(t, omega), theta(x)))


def transported_uparrow(x, omega: Sequence[int]) -> LinComb:
    """``Theta ↑^omega Theta^{-1}``, the derivation of ``↷̂^a`` carried over
    from ``↑^omega`` by Theta."""
    from .trees import uparrow

    return theta(linear(lambda t: uparrow(t, omega), theta_inverse(x)))


# ---------------------------------------------------------------------------
# brace elements


def brace_graft(xs: Sequence, z, deformed: bool = False) -> LinComb:
    """Brace ``(x_1 ... x_n) ↷^{a_1 ... a_n} z``.

    ``xs`` is a sequence of ``(x_i, a_i)`` pairs; each ``x_i`` may be a tree
    or a LinComb.
    """
    prod = deformed_graft if deformed else graft
    items = [(lc(x), _edge(a)) for x, a in xs]
    return _brace(items, lc(z), prod)


def _brace(items, z: LinComb, prod) -> LinComb:
    if not items:
        return z
    (x1, a1), rest = items[0], items[1:]
    out = prod(x1, a1, _brace(rest, z, prod))
    for i, (xi, ai) in enumerate(rest):
        replaced = rest[:i] + [(prod(x1, a1, xi), ai)] + rest[i + 1:]
        out = out - _brace(replaced, z, prod)
    return out


def associator(prod, x, y, z) -> LinComb:
    """``x·(y·z) - (x·y)·z`` for a bilinear product on LinCombs."""
    return prod(x, prod(y, z)) - prod(prod(x, y), z)
