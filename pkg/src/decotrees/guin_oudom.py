"""Guin-Oudom extension of a pre-Lie product to the symmetric algebra.

Given a pre-Lie product ``▷`` on a basis (trees or planted trees), this builds
the product ``•`` on forests and the associative product
``w ★ v = sum (w1 • v) w2``, where ``w1 ⊗ w2`` runs over the unshuffle
coproduct of ``w``.
"""

from __future__ import annotations

import itertools
from math import comb
from typing import Callable, Iterable

from .lincomb import Accumulator, LinComb, lc
from .trees import Forest

Product = Callable[[object, object], LinComb]


def unshuffle(f: Forest) -> list[tuple[Forest, Forest, int]]:
    """Unshuffle coproduct of a forest: every item primitive.

    Returns ``(left, right, multiplicity)`` triples; repeated items give
    binomial multiplicities.
    """
    groups = list(f.counts().items())
    out = []
    for choice in itertools.product(*(range(m + 1) for _, m in groups)):
        left, right, mult = [], [], 1
        for (b, m), j in zip(groups, choice):
            left += [b] * j
            right += [b] * (m - j)
            mult *= comb(m, j)
        out.append((Forest(left), Forest(right), mult))
    return out


def delta_unshuffle(x) -> LinComb:
    """The unshuffle coproduct as a LinComb of pairs."""
    acc = Accumulator()
    for f, c in lc(x).items():
        for left, right, m in unshuffle(f):
            acc.add((left, right), c * m)
    return acc.result()


def _concat(x: LinComb, y: LinComb) -> LinComb:
    acc = Accumulator()
    for a, ca in x.items():
        for b, cbb in y.items():
            acc.add(a * b, ca * cbb)
    return acc.result()


def _wrap(x: LinComb) -> LinComb:
    return x.map(lambda b: Forest([b]))


class PreLieStructure:
    """A pre-Lie product on a basis together with its Guin-Oudom extension.

    ``product(b1, b2)`` must return a LinComb over the same basis.  Results
    of the extension are cached per instance.
    """

    def __init__(self, product: Product, name: str = "pre-Lie"):
        self.product = product
        self.name = name
        self._prod_cache: dict = {}
        self._gen_cache: dict = {}

    def __repr__(self):
        return f"PreLieStructure({self.name})"

    # -- the product on the basis -----------------------------------------
    def prod(self, x, y) -> LinComb:
        """Bilinear extension of the basis product."""
        acc = Accumulator()
        for a, ca in lc(x).items():
            for b, cbb in lc(y).items():
                key = (a, b)
                r = self._prod_cache.get(key)
                if r is None:
                    r = lc(self.product(a, b))
                    self._prod_cache[key] = r
                acc.add(r, ca * cbb)
        return acc.result()

    def extend_to_forest(self, x, w) -> LinComb:
        """Leibniz extension ``x ▷ x_1...x_k = sum_i x_1...(x ▷ x_i)...x_k``."""
        acc = Accumulator()
        for xb, cx in lc(x).items():
            for f, cf in lc(w).items():
                items = f.items
                for i, xi in enumerate(items):
                    rest = Forest(items[:i] + items[i + 1:])
                    for b, c in self.prod(xb, xi).items():
                        acc.add(rest * Forest([b]), cx * cf * c)
        return acc.result()

    # -- the extension ------------------------------------------------------
    def bullet_gen(self, w: Forest, y) -> LinComb:
        """``w • y`` for a single generator ``y``; a LinComb over the basis."""
        key = (w, y)
        hit = self._gen_cache.get(key)
        if hit is not None:
            return hit
        if not w.items:
            out = LinComb.of(y)
        else:
            x, v = w.items[0], Forest(w.items[1:])
            out = self.prod(x, self.bullet_gen(v, y))
            for vf, c in self.extend_to_forest(x, v).items():
                out = out - c * self.bullet_gen(vf, y)
        self._gen_cache[key] = out
        return out

    def bullet(self, w, u) -> LinComb:
        """``w • u`` on forests (bilinear)."""
        acc = Accumulator()
        for wf, cw in lc(w).items():
            for uf, cu in lc(u).items():
                acc.add(self._bullet(wf, uf), cw * cu)
        return acc.result()

    def _bullet(self, w: Forest, u: Forest) -> LinComb:
        if not w.items:
            return LinComb.of(u)
        if not u.items:
            return LinComb()
        if len(u.items) == 1:
            return _wrap(self.bullet_gen(w, u.items[0]))
        u1, rest = Forest(u.items[:1]), Forest(u.items[1:])
        acc = Accumulator()
        for w1, w2, m in unshuffle(w):
            a = self._bullet(w1, u1)
            if not a:
                continue
            b = self._bullet(w2, rest)
            if b:
                acc.add(_concat(a, b), m)
        return acc.result()

    def star(self, w, v) -> LinComb:
        """Associative product ``w ★ v = sum (w1 • v) w2``."""
        acc = Accumulator()
        for wf, cw in lc(w).items():
            for vf, cv in lc(v).items():
                for w1, w2, m in unshuffle(wf):
                    acc.add(_concat(self._bullet(w1, vf), LinComb.of(w2)), cw * cv * m)
        return acc.result()


def check_prelie(product: Product, basis: Iterable, limit: int | None = None) -> list:
    """Triples ``(x, y, z)`` whose associator is not symmetric in ``x, y``.

    Returns at most ``limit`` counterexamples (all of them when ``None``).
    """
    P = product if isinstance(product, PreLieStructure) else PreLieStructure(product)
    basis = list(basis)
    bad = []
    for z in basis:
        for i, x in enumerate(basis):
            for y in basis[i:]:
                ax = P.prod(x, P.prod(y, z)) - P.prod(P.prod(x, y), z)
                ay = P.prod(y, P.prod(x, z)) - P.prod(P.prod(y, x), z)
                if ax != ay:
                    bad.append((x, y, z))
                    if limit is not None and len(bad) >= limit:
                        return bad
    return bad
