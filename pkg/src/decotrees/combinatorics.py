"""Multi-index arithmetic and the small combinatorial helpers used everywhere."""

from __future__ import annotations

import itertools
import math
from functools import lru_cache
from typing import Iterator, Sequence

MultiIndex = tuple  # tuple[int, ...]


def zero(dim: int) -> MultiIndex:
    return (0,) * dim


def add(a: MultiIndex, b: MultiIndex) -> MultiIndex:
    return tuple(x + y for x, y in zip(a, b))


def sub(a: MultiIndex, b: MultiIndex) -> MultiIndex | None:
    """Componentwise ``a - b``, or ``None`` when a component goes negative."""
    r = tuple(x - y for x, y in zip(a, b))
    return None if any(x < 0 for x in r) else r


def signed_add(a: MultiIndex, w: Sequence[int]) -> MultiIndex | None:
    r = tuple(x + y for x, y in zip(a, w))
    return None if any(x < 0 for x in r) else r


def leq(a: MultiIndex, b: MultiIndex) -> bool:
    return all(x <= y for x, y in zip(a, b))


def total(parts: Sequence[MultiIndex], dim: int) -> MultiIndex:
    out = [0] * dim
    for p in parts:
        for i, x in enumerate(p):
            out[i] += x
    return tuple(out)


def norm(k: MultiIndex, s: Sequence[int] | None = None) -> int:
    """Scaled size ``|k|_s``."""
    if s is None:
        return sum(k)
    return sum(x * w for x, w in zip(k, s))


def factorial(k: MultiIndex) -> int:
    out = 1
    for x in k:
        out *= math.factorial(x)
    return out


def binom(n: MultiIndex, k: MultiIndex) -> int:
    """Componentwise binomial, zero outside ``0 <= k <= n``."""
    out = 1
    for a, b in zip(n, k):
        if b < 0 or b > a:
            return 0
        out *= math.comb(a, b)
    return out


def multinomial(k: MultiIndex, parts: Sequence[MultiIndex]) -> int:
    """``k! / ((k - sum parts)! prod parts!)`` componentwise, zero if negative."""
    rest = list(k)
    out = 1
    for p in parts:
        for i, x in enumerate(p):
            if x < 0:
                return 0
            out *= math.comb(rest[i], x) if x <= rest[i] else 0
            rest[i] -= x
        if out == 0:
            return 0
    return out


def box(cap: MultiIndex) -> Iterator[MultiIndex]:
    """All multi-indices ``0 <= l <= cap``."""
    return itertools.product(*(range(c + 1) for c in cap))


@lru_cache(maxsize=None)
def graded_ball(dim: int, bound: int, s: tuple | None = None) -> tuple:
    """All ``l`` in N^dim with ``|l|_s <= bound``, in a fixed order."""
    weights = s or (1,) * dim
    out = []

    def rec(i, left, acc):
        if i == dim:
            out.append(tuple(acc))
            return
        for x in range(left // weights[i] + 1):
            acc.append(x)
            rec(i + 1, left - x * weights[i], acc)
            acc.pop()

    rec(0, bound, [])
    return tuple(out)


def set_partitions(items: Sequence) -> Iterator[list[list]]:
    """Set partitions of the positions of ``items`` (labelled, so duplicates
    give repeated partitions)."""
    items = list(items)
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for part in set_partitions(rest):
        yield [[first]] + part
        for i in range(len(part)):
            yield part[:i] + [[first] + part[i]] + part[i + 1:]


def vector_partitions(r: MultiIndex, floor: MultiIndex | None = None) -> Iterator[list[MultiIndex]]:
    """Multisets of nonzero multi-indices summing to ``r`` (non-increasing order)."""
    if not any(r):
        yield []
        return
    for first in sorted(box(r), reverse=True):
        if not any(first):
            continue
        if floor is not None and first > floor:
            continue
        rest = sub(r, first)
        for tail in vector_partitions(rest, first):
            yield [first] + tail


def compositions(k: MultiIndex, n: int) -> Iterator[tuple[MultiIndex, ...]]:
    """Ordered ``n``-tuples of multi-indices summing to ``k``."""
    if n == 0:
        if not any(k):
            yield ()
        return
    if n == 1:
        yield (k,)
        return
    for first in box(k):
        for tail in compositions(sub(k, first), n - 1):
            yield (first,) + tail


def chu_vandermonde_check(max_domain: int = 3, max_value: int = 3, stats: dict | None = None) -> list:
    """Brute-force check of ``C(pi_* k, lt) = sum_{pi_* l = lt} C(k, l)``.

    ``k, l`` are maps ``S -> N`` with ``|S| <= max_domain`` and values in
    ``0..max_value``; ``pi: S -> St`` ranges over all maps into sets of size
    ``<= max_domain``.  Returns the list of failures (empty on success);
    ``stats["checked"]`` receives the number of compared coefficients.
    """
    failures = []
    checked = 0
    for ns in range(max_domain + 1):
        for nt in range(1, max_domain + 1):
            for pi in itertools.product(range(nt), repeat=ns):
                for k in itertools.product(range(max_value + 1), repeat=ns):
                    pushed_k = [0] * nt
                    for i, x in enumerate(k):
                        pushed_k[pi[i]] += x
                    sums: dict = {}
                    for l in itertools.product(range(max_value + 1), repeat=ns):
                        pushed_l = [0] * nt
                        for i, x in enumerate(l):
                            pushed_l[pi[i]] += x
                        c = 1
                        for a, b in zip(k, l):
                            c *= math.comb(a, b) if b <= a else 0
                        key = tuple(pushed_l)
                        sums[key] = sums.get(key, 0) + c
                    for lt in itertools.product(range(max_value + 1), repeat=nt):
                        checked += 1
                        lhs = 1
                        for a, b in zip(pushed_k, lt):
                            lhs *= math.comb(a, b) if b <= a else 0
                        if lhs != sums.get(lt, 0):
                            failures.append((pi, k, lt))
    if stats is not None:
        stats["checked"] = checked
    return failures
