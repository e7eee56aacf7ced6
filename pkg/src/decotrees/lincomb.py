"""Finite formal sums with exact rational coefficients.

A :class:`LinComb` maps hashable basis elements to nonzero :class:`Fraction`
coefficients.  Tensors are plain tuples of basis elements, so a
``LinComb`` over pairs is an element of a tensor product.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Any, Callable, Hashable, Iterable, Iterator, Mapping


def sort_key(b: Any) -> tuple:
    """Total order on basis elements and tensors of them."""
    if isinstance(b, tuple):
        # tensors: larger left legs first, so ``x⊗1`` precedes ``1⊗x``
        return (9, -_weight(b[0]) if b else 0, tuple(sort_key(x) for x in b))
    return (b.RANK, b.key)


def _weight(b: Any) -> int:
    from .trees import n_edges, node_mass

    try:
        return n_edges(b) + node_mass(b)
    except TypeError:
        return 0


class LinComb:
    """Immutable finite linear combination ``sum c_b * b``."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[Hashable, Any] | Iterable[tuple[Hashable, Any]] = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict = {}
        for b, c in items:
            acc[b] = acc.get(b, 0) + c
        self._terms = {b: Fraction(c) for b, c in acc.items() if c != 0}

    @classmethod
    def of(cls, b: Hashable, c: Any = 1) -> "LinComb":
        out = cls.__new__(cls)
        out._terms = {b: Fraction(c)} if c != 0 else {}
        return out

    @classmethod
    def _raw(cls, d: dict) -> "LinComb":
        # trusted constructor: d must already hold nonzero Fractions
        out = cls.__new__(cls)
        out._terms = d
        return out

    # -- inspection -------------------------------------------------------
    def __iter__(self) -> Iterator[tuple[Any, Fraction]]:
        return iter(sorted(self._terms.items(), key=lambda bc: sort_key(bc[0])))

    def items(self):
        """Unordered view of ``(basis, coeff)`` pairs (faster than iteration)."""
        return self._terms.items()

    def coeff(self, b: Hashable) -> Fraction:
        return self._terms.get(b, Fraction(0))

    def support(self) -> set:
        return set(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __contains__(self, b) -> bool:
        return b in self._terms

    # -- vector space -----------------------------------------------------
    def __add__(self, other: "LinComb") -> "LinComb":
        if not isinstance(other, LinComb):
            return NotImplemented
        d = dict(self._terms)
        for b, c in other._terms.items():
            v = d.get(b, 0) + c
            if v:
                d[b] = v
            else:
                d.pop(b, None)
        return LinComb._raw(d)

    def __neg__(self) -> "LinComb":
        return LinComb._raw({b: -c for b, c in self._terms.items()})

    def __sub__(self, other: "LinComb") -> "LinComb":
        if not isinstance(other, LinComb):
            return NotImplemented
        return self + (-other)

    def __mul__(self, s: Any) -> "LinComb":
        if isinstance(s, LinComb):
            return NotImplemented
        s = Fraction(s)
        if s == 0:
            return LinComb()
        return LinComb._raw({b: c * s for b, c in self._terms.items()})

    __rmul__ = __mul__

    def __eq__(self, other: object) -> bool:
        if isinstance(other, LinComb):
            return self._terms == other._terms
        if other == 0:
            return not self._terms
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def __repr__(self) -> str:
        from .grammar import format_lincomb

        return format_lincomb(self)

    # -- functional helpers -----------------------------------------------
    def map(self, f: Callable[[Any], Any]) -> "LinComb":
        """Linear extension of ``f``; ``f`` may return a basis element,
        a LinComb, or ``None`` (meaning zero)."""
        acc = Accumulator()
        for b, c in self._terms.items():
            acc.add(f(b), c)
        return acc.result()

    def filter(self, pred: Callable[[Any], bool]) -> "LinComb":
        return LinComb._raw({b: c for b, c in self._terms.items() if pred(b)})


class Accumulator:
    """Mutable helper for building a LinComb term by term."""

    __slots__ = ("d",)

    def __init__(self):
        self.d: dict = {}

    def add(self, x: Any, c: Any = 1) -> None:
        if x is None or c == 0:
            return
        d = self.d
        if isinstance(x, LinComb):
            for b, cb in x._terms.items():
                d[b] = d.get(b, 0) + cb * c
        else:
            d[x] = d.get(x, 0) + c

    def result(self) -> LinComb:
        return LinComb({b: c for b, c in self.d.items() if c != 0})


def lc(x: Any) -> LinComb:
    """Coerce a basis element (or LinComb) to a LinComb."""
    return x if isinstance(x, LinComb) else LinComb.of(x)


def bilinear(f: Callable[[Any, Any], Any], x: Any, y: Any) -> LinComb:
    """Extend ``f(b1, b2)`` bilinearly to LinCombs (or basis elements)."""
    acc = Accumulator()
    for b1, c1 in lc(x).items():
        for b2, c2 in lc(y).items():
            acc.add(f(b1, b2), c1 * c2)
    return acc.result()


def linear(f: Callable[[Any], Any], x: Any) -> LinComb:
    return lc(x).map(f)


def tensor(*xs: Any) -> LinComb:
    """Tensor product of LinCombs; basis of the result is the tuple of legs."""
    terms: dict = {(): Fraction(1)}
    for x in xs:
        new: dict = {}
        for legs, c in terms.items():
            for b, cb in lc(x).items():
                new[legs + (b,)] = c * cb
        terms = new
    return LinComb(terms)


def legwise_product(x: LinComb, y: LinComb, muls: tuple) -> LinComb:
    """Product in a tensor algebra: multiply leg ``i`` with ``muls[i]``.

    Each ``muls[i]`` takes two basis elements and returns a basis element.
    """
    acc = Accumulator()
    for lx, cx in x.items():
        for ly, cy in y.items():
            acc.add(tuple(m(a, b) for m, a, b in zip(muls, lx, ly)), cx * cy)
    return acc.result()


def apply_to_leg(x: LinComb, i: int, f: Callable[[Any], Any]) -> LinComb:
    """Apply a linear map (basis -> LinComb/basis/None) to leg ``i``."""
    acc = Accumulator()
    for legs, c in x.items():
        for b, cb in lc_or_zero(f(legs[i])).items():
            acc.add(legs[:i] + (b,) + legs[i + 1:], c * cb)
    return acc.result()


def lc_or_zero(x: Any) -> LinComb:
    if x is None:
        return LinComb()
    return lc(x)
