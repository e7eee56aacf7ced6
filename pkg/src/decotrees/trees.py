"""Decorated rooted trees, planted trees and forests.

Trees are immutable and stored in canonical form: the children multiset is
kept sorted, so structural equality is equality of the canonical key.
Vertices are addressed by paths (tuples of child positions in canonical
order); the root is ``()``.
"""

from __future__ import annotations

from collections import Counter
from functools import lru_cache
from typing import Callable, Iterable, NamedTuple, Sequence

from . import combinatorics as cb
from .lincomb import LinComb

Path = tuple


class Edge(NamedTuple):
    """Edge decoration ``(kind, index)``."""

    kind: str
    index: tuple

    def shifted(self, w: Sequence[int]) -> "Edge | None":
        idx = cb.signed_add(self.index, w)
        return None if idx is None else Edge(self.kind, idx)


def _child_key(ec):
    e, c = ec
    return (e.kind, e.index, c.key)


class Tree:
    """A decorated rooted tree ``X^index prod I_e(child)``.

    ``gen`` is an optional generator tag on the root node.
    """

    RANK = 0
    __slots__ = ("index", "gen", "children", "key", "_hash")

    def __init__(self, index: Sequence[int], children: Iterable = (), gen: str | None = None):
        kids = []
        for e, c in children:
            if not isinstance(e, Edge):
                e = Edge(e[0], tuple(e[1]))
            kids.append((e, c))
        kids.sort(key=_child_key)
        set_ = object.__setattr__
        set_(self, "index", tuple(index))
        set_(self, "gen", gen)
        set_(self, "children", tuple(kids))
        key = (gen or "", self.index, tuple(_child_key(ec) for ec in kids))
        set_(self, "key", key)
        set_(self, "_hash", hash(key))

    def __setattr__(self, name, value):
        raise AttributeError("Tree is immutable")

    def __eq__(self, other):
        return isinstance(other, Tree) and self._hash == other._hash and self.key == other.key

    def __hash__(self):
        return self._hash

    def __lt__(self, other):
        return self.key < other.key

    def __reduce__(self):
        return (Tree, (self.index, self.children, self.gen))

    def __repr__(self):
        from .grammar import format_tree

        return format_tree(self)

    @property
    def dim(self) -> int:
        return len(self.index)

    @property
    def is_node(self) -> bool:
        return not self.children

    @property
    def is_unit(self) -> bool:
        """The single node with zero decoration and no generator."""
        return not self.children and self.gen is None and not any(self.index)

    def with_index(self, index: Sequence[int]) -> "Tree":
        return Tree(index, self.children, self.gen)

    def with_gen(self, gen: str | None) -> "Tree":
        return Tree(self.index, self.children, gen)


def node(index: Sequence[int] | int, gen: str | None = None) -> Tree:
    """Single vertex ``•k``; an int means a one-dimensional index."""
    if isinstance(index, int):
        index = (index,)
    return Tree(index, (), gen)


def unit(dim: int = 1) -> Tree:
    return Tree(cb.zero(dim))


def tree(index: Sequence[int] | int, *branches) -> Tree:
    """Convenience constructor: ``tree(k, (kind, idx, child), ...)``."""
    if isinstance(index, int):
        index = (index,)
    kids = []
    for kind, idx, child in branches:
        if isinstance(idx, int):
            idx = (idx,)
        kids.append((Edge(kind, tuple(idx)), child))
    return Tree(index, kids)


class Planted:
    """Planted tree ``I_edge(body)``; the new root carries no decoration."""

    RANK = 1
    __slots__ = ("edge", "body", "key", "_hash")

    def __init__(self, edge, body: Tree):
        if not isinstance(edge, Edge):
            edge = Edge(edge[0], tuple(edge[1]))
        set_ = object.__setattr__
        set_(self, "edge", edge)
        set_(self, "body", body)
        key = (edge.kind, edge.index, body.key)
        set_(self, "key", key)
        set_(self, "_hash", hash(("I",) + key))

    def __setattr__(self, name, value):
        raise AttributeError("Planted is immutable")

    def __eq__(self, other):
        return isinstance(other, Planted) and self.key == other.key

    def __hash__(self):
        return self._hash

    def __lt__(self, other):
        return self.key < other.key

    def __reduce__(self):
        return (Planted, (self.edge, self.body))

    def __repr__(self):
        from .grammar import format_planted

        return format_planted(self)

    def as_tree(self) -> Tree:
        """The tree ``X^0 I_edge(body)``."""
        return Tree(cb.zero(self.body.dim), ((self.edge, self.body),))


class Forest:
    """Multiset of trees (or of planted trees); the empty forest is the unit.

    Single nodes with zero decoration are identified with the unit and dropped.
    """

    RANK = 2
    __slots__ = ("items", "key", "_hash")

    def __init__(self, items: Iterable = ()):
        its = [t for t in items if not (isinstance(t, Tree) and t.is_unit)]
        its.sort(key=lambda t: (t.RANK, t.key))
        set_ = object.__setattr__
        set_(self, "items", tuple(its))
        key = tuple((t.RANK, t.key) for t in its)
        set_(self, "key", key)
        set_(self, "_hash", hash(("F",) + key))

    def __setattr__(self, name, value):
        raise AttributeError("Forest is immutable")

    def __eq__(self, other):
        return isinstance(other, Forest) and self.key == other.key

    def __hash__(self):
        return self._hash

    def __lt__(self, other):
        return self.key < other.key

    def __len__(self):
        return len(self.items)

    def __iter__(self):
        return iter(self.items)

    def __reduce__(self):
        return (Forest, (self.items,))

    def __repr__(self):
        from .grammar import format_forest

        return format_forest(self)

    def __mul__(self, other: "Forest") -> "Forest":
        return Forest(self.items + other.items)

    def without(self, i: int) -> "Forest":
        return Forest(self.items[:i] + self.items[i + 1:])

    def counts(self) -> Counter:
        return Counter(self.items)


PlantedForest = Forest
EMPTY = Forest()


class DistinguishedForest:
    """A marked tree together with a forest (basis of forests with one
    distinguished tree).  The marked tree is never normalised away."""

    RANK = 3
    __slots__ = ("marked", "rest", "key", "_hash")

    def __init__(self, marked: Tree, rest: Forest = EMPTY):
        set_ = object.__setattr__
        set_(self, "marked", marked)
        set_(self, "rest", rest)
        key = (marked.key, rest.key)
        set_(self, "key", key)
        set_(self, "_hash", hash(("D",) + key))

    def __setattr__(self, name, value):
        raise AttributeError("DistinguishedForest is immutable")

    def __eq__(self, other):
        return isinstance(other, DistinguishedForest) and self.key == other.key

    def __hash__(self):
        return self._hash

    def __reduce__(self):
        return (DistinguishedForest, (self.marked, self.rest))

    def __repr__(self):
        from .grammar import format_basis

        return format_basis(self)

    def __mul__(self, other: "DistinguishedForest") -> "DistinguishedForest":
        return DistinguishedForest(tree_product([self.marked, other.marked]), self.rest * other.rest)

    def forget(self) -> Forest:
        """The forgetful map to forests."""
        return Forest((self.marked,) + self.rest.items)


# ---------------------------------------------------------------------------
# canonical forms and structural helpers


def canonicalize(t: Tree) -> Tree:
    """Rebuild ``t`` recursively in canonical form (idempotent)."""
    return Tree(t.index, ((e, canonicalize(c)) for e, c in t.children), t.gen)


def tree_product(trees: Iterable[Tree], dim: int | None = None) -> Tree:
    """Merge roots: indices add, branches are collected."""
    trees = list(trees)
    if not trees:
        return unit(dim or 1)
    idx = cb.total([t.index for t in trees], trees[0].dim)
    kids = [ec for t in trees for ec in t.children]
    gens = {t.gen for t in trees} - {None}
    if gens:
        raise ValueError("cannot merge roots carrying generators")
    return Tree(idx, kids)


def graft_branch(t: Tree, e: Edge, child: Tree) -> Tree:
    return Tree(t.index, t.children + ((e, child),), t.gen)


def n_edges(t) -> int:
    if isinstance(t, Tree):
        return _n_edges(t)
    if isinstance(t, Planted):
        return 1 + _n_edges(t.body)
    if isinstance(t, Forest):
        return sum(n_edges(x) for x in t.items)
    if isinstance(t, DistinguishedForest):
        return _n_edges(t.marked) + n_edges(t.rest)
    if isinstance(t, tuple):
        return sum(n_edges(x) for x in t)
    raise TypeError(type(t))


@lru_cache(maxsize=None)
def _n_edges(t: Tree) -> int:
    return sum(1 + _n_edges(c) for _, c in t.children)


def n_vertices(t: Tree) -> int:
    return 1 + _n_edges(t)


def vertices(t: Tree) -> list[Path]:
    """All vertex paths in preorder (root first)."""
    out = [()]
    for i, (_, c) in enumerate(t.children):
        out.extend((i,) + p for p in vertices(c))
    return out


def subtree(t: Tree, path: Path) -> Tree:
    for i in path:
        t = t.children[i][1]
    return t


def node_index(t: Tree, path: Path) -> tuple:
    return subtree(t, path).index


def replace_at(t: Tree, path: Path, fn: Callable[[Tree], Tree | None]) -> Tree | None:
    """Replace the subtree at ``path`` by ``fn(subtree)``; ``None`` propagates."""
    if not path:
        return fn(t)
    i = path[0]
    e, c = t.children[i]
    new = replace_at(c, path[1:], fn)
    if new is None:
        return None
    kids = t.children[:i] + ((e, new),) + t.children[i + 1:]
    return Tree(t.index, kids, t.gen)


def check_path(t: Tree, path: Path) -> None:
    s = t
    for i in path:
        if not (0 <= i < len(s.children)):
            raise ValueError(f"invalid vertex {path!r}")
        s = s.children[i][1]


# ---------------------------------------------------------------------------
# symmetry factor, grading, pairing


@lru_cache(maxsize=None)
def _tree_symmetry(t: Tree) -> int:
    out = cb.factorial(t.index)
    groups = Counter(t.children)
    for (e, c), beta in groups.items():
        out *= _tree_symmetry(c) ** beta * _fact(beta)
    return out


def _fact(n: int) -> int:
    import math

    return math.factorial(n)


def symmetry_factor(x) -> int:
    """``S(tau) = k! prod S(tau_j)^beta_j beta_j!``; multiplicative on forests
    and tensors, with multiplicity factorials for repeated forest items."""
    if isinstance(x, Tree):
        return _tree_symmetry(x)
    if isinstance(x, Planted):
        return _tree_symmetry(x.body)
    if isinstance(x, Forest):
        out = 1
        for item, beta in x.counts().items():
            out *= symmetry_factor(item) ** beta * _fact(beta)
        return out
    if isinstance(x, DistinguishedForest):
        return _tree_symmetry(x.marked) * symmetry_factor(x.rest)
    if isinstance(x, tuple):
        out = 1
        for leg in x:
            out *= symmetry_factor(leg)
        return out
    raise TypeError(f"no symmetry factor for {type(x).__name__}")


def grading(t, s: Sequence[int] | None = None) -> int:
    """Sum over edges of the scaled size of the edge index."""
    if isinstance(t, Tree):
        return sum(cb.norm(e.index, s) + grading(c, s) for e, c in t.children)
    if isinstance(t, Planted):
        return cb.norm(t.edge.index, s) + grading(t.body, s)
    if isinstance(t, (Forest, tuple)):
        return sum(grading(x, s) for x in t)
    if isinstance(t, DistinguishedForest):
        return grading(t.marked, s) + grading(t.rest, s)
    raise TypeError(type(t))


def node_mass(t, s: Sequence[int] | None = None) -> int:
    """Sum over all vertices of the scaled size of the node index."""
    if isinstance(t, Tree):
        return cb.norm(t.index, s) + sum(node_mass(c, s) for _, c in t.children)
    if isinstance(t, Planted):
        return node_mass(t.body, s)
    if isinstance(t, (Forest, tuple)):
        return sum(node_mass(x, s) for x in t)
    if isinstance(t, DistinguishedForest):
        return node_mass(t.marked, s) + node_mass(t.rest, s)
    raise TypeError(type(t))


def _basis_signature(b):
    if isinstance(b, tuple):
        return tuple(_basis_signature(x) for x in b)
    return type(b).__name__


def pairing(x, y):
    """``<b, b'> = delta S(b)`` extended bilinearly; tensors pair legwise."""
    from fractions import Fraction

    from .lincomb import lc

    x, y = lc(x), lc(y)
    sx = {_basis_signature(b) for b, _ in x.items()}
    sy = {_basis_signature(b) for b, _ in y.items()}
    if sx and sy and sx != sy:
        raise TypeError(f"basis mismatch: {sorted(map(str, sx))} vs {sorted(map(str, sy))}")
    if len(x) > len(y):
        x, y = y, x
    out = Fraction(0)
    for b, c in x.items():
        d = y.coeff(b)
        if d:
            out += c * d * symmetry_factor(b)
    return out


# ---------------------------------------------------------------------------
# decoration shifts


def shift(t: Tree, path: Path, w: Sequence[int]) -> Tree | None:
    """``↑_v^w`` on a single vertex; ``None`` when an entry goes negative."""

    def f(s: Tree):
        idx = cb.signed_add(s.index, w)
        return None if idx is None else Tree(idx, s.children, s.gen)

    return replace_at(t, path, f)


def uparrow(t: Tree, w: Sequence[int], where: Path | str = "all") -> LinComb:
    """Add ``w`` to the node index at ``where`` (or sum over all vertices)."""
    w = tuple(w)
    if where == "all":
        return LinComb((s, 1) for s in (shift(t, p, w) for p in vertices(t)) if s is not None)
    check_path(t, where)
    s = shift(t, where, w)
    return LinComb() if s is None else LinComb.of(s)


def zero_root(t: Tree) -> Tree:
    return Tree(cb.zero(t.dim), t.children, t.gen)


def branches_as_planted(t: Tree) -> Forest:
    return Forest(Planted(e, c) for e, c in t.children)


# ---------------------------------------------------------------------------
# vertex labels (used to keep track of vertices across re-canonicalisation)

_LABEL = "\x00v"


def label_vertices(t: Tree) -> Tree:
    """Tag every vertex with a distinct private generator label."""
    counter = iter(range(10**9))

    def rec(s: Tree) -> Tree:
        lab = f"{_LABEL}{next(counter)}"
        return Tree(s.index, [(e, rec(c)) for e, c in s.children], lab)

    return rec(t)


def labels(t: Tree) -> list[str]:
    out = [t.gen] if t.gen and t.gen.startswith(_LABEL) else []
    for _, c in t.children:
        out.extend(labels(c))
    return out


def find_label(t: Tree, lab: str) -> Path | None:
    if t.gen == lab:
        return ()
    for i, (_, c) in enumerate(t.children):
        p = find_label(c, lab)
        if p is not None:
            return (i,) + p
    return None


def strip_labels(t: Tree) -> Tree:
    gen = None if (t.gen and t.gen.startswith(_LABEL)) else t.gen
    return Tree(t.index, [(e, strip_labels(c)) for e, c in t.children], gen)


def mark(t: Tree, path: Path, lab: str = _LABEL + "m") -> Tree:
    return replace_at(t, path, lambda s: Tree(s.index, s.children, lab))


# ---------------------------------------------------------------------------
# enumeration


def enumerate_trees(
    max_edges: int,
    max_index: Sequence[int] | int = (1,),
    kinds: Iterable[str] = ("t",),
    node_cap: Sequence[int] | int = (1,),
) -> list[Tree]:
    """All canonical trees with at most ``max_edges`` edges and bounded
    decorations, sorted by (edge count, canonical key)."""
    if isinstance(max_index, int):
        max_index = (max_index,)
    if isinstance(node_cap, int):
        node_cap = (node_cap,)
    kinds = sorted(set(kinds))
    roots = list(cb.box(tuple(node_cap)))
    edges = [Edge(k, i) for k in kinds for i in cb.box(tuple(max_index))]

    @lru_cache(maxsize=None)
    def trees_exact(m: int) -> tuple:
        # trees with exactly m edges
        out = []
        for r in roots:
            for kids in branch_multisets(m):
                out.append(Tree(r, kids))
        return tuple(out)

    @lru_cache(maxsize=None)
    def branches_exact(m: int) -> tuple:
        # branches I_e(c) using exactly m edges (m >= 1)
        return tuple((e, c) for e in edges for c in trees_exact(m - 1))

    def branch_multisets(m: int):
        # multisets of branches with total exactly m edges
        all_br = [(b, n) for n in range(1, m + 1) for b in branches_exact(n)]
        all_br.sort(key=lambda bn: (bn[1], _child_key(bn[0])))
        res = []

        def rec(start, left, acc):
            if left == 0:
                res.append(tuple(acc))
                return
            for j in range(start, len(all_br)):
                b, n = all_br[j]
                if n > left:
                    break
                acc.append(b)
                rec(j, left - n, acc)
                acc.pop()

        rec(0, m, [])
        return res

    out = []
    for m in range(max_edges + 1):
        out.extend(sorted(trees_exact(m), key=lambda t: t.key))
    return out


def enumerate_planted(max_edges: int, max_index=(1,), kinds=("t",), node_cap=(1,)) -> list[Planted]:
    """Planted trees whose total edge count (planting edge included) is bounded."""
    if isinstance(max_index, int):
        max_index = (max_index,)
    bodies = enumerate_trees(max_edges - 1, max_index, kinds, node_cap) if max_edges >= 1 else []
    return [Planted(Edge(k, i), b) for k in sorted(set(kinds)) for i in cb.box(tuple(max_index)) for b in bodies]


def enumerate_forests(items: Sequence, max_items: int, max_edges: int | None = None) -> list[Forest]:
    """Forests (multisets) of at most ``max_items`` elements of ``items``."""
    import itertools

    out = [EMPTY]
    items = [x for x in items if not (isinstance(x, Tree) and x.is_unit)]
    for n in range(1, max_items + 1):
        for combo in itertools.combinations_with_replacement(range(len(items)), n):
            f = Forest(items[i] for i in combo)
            if max_edges is None or n_edges(f) <= max_edges:
                out.append(f)
    return out
