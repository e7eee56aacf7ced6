"""Exhaustive identity suites over small enumerated bases.

Each suite returns a :class:`SuiteResult`.  The ``max_edges`` argument bounds
the total number of edges over the arguments of an identity (pairs or
triples), which keeps the combinatorics in check while still covering every
small shape.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable, Iterable

from . import applications as ap
from . import combinatorics as cb
from . import coproducts as co
from . import grafting as gr
from . import plugging as pg
from .guin_oudom import PreLieStructure
from .lincomb import Accumulator, LinComb
from .trees import (
    EMPTY,
    Edge,
    Forest,
    Planted,
    Tree,
    enumerate_trees,
    grading,
    n_edges,
    symmetry_factor,
    vertices,
)


@dataclass
class SuiteResult:
    name: str
    title: str
    checked: int = 0
    failures: list = field(default_factory=list)
    notes: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def fail(self, what: str) -> None:
        self.failures.append(what)

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"[{status}] {self.name}: {self.title} ({self.checked} checks, {len(self.failures)} failures)"

    def to_json(self) -> dict:
        return {
            "suite": self.name,
            "title": self.title,
            "passed": self.passed,
            "checked": self.checked,
            "failures": self.failures[:20],
            "notes": self.notes,
        }


@dataclass(frozen=True)
class Scale:
    """Enumeration caps shared by the suites."""

    max_edges: int = 3
    max_index: tuple = (1,)
    node_cap: tuple = (1,)
    kinds: tuple = ("t",)

    def trees(self, max_edges: int | None = None) -> list[Tree]:
        m = self.max_edges if max_edges is None else max_edges
        return enumerate_trees(m, self.max_index, self.kinds, self.node_cap)

    def edges(self) -> list[Edge]:
        return [Edge(k, i) for k in self.kinds for i in cb.box(self.max_index)]


def bounded_tuples(basis: list, n: int, total: int) -> Iterable[tuple]:
    """``n``-tuples from ``basis`` whose edge counts add up to at most ``total``."""
    by_size: dict = {}
    for b in basis:
        by_size.setdefault(n_edges(b), []).append(b)
    sizes = sorted(by_size)
    for combo in itertools.product(sizes, repeat=n):
        if sum(combo) <= total:
            yield from itertools.product(*(by_size[s] for s in combo))


def _fmt(*xs) -> str:
    from .grammar import format_basis, format_lincomb

    out = []
    for x in xs:
        out.append(format_lincomb(x) if isinstance(x, LinComb) else format_basis(x))
    return " | ".join(out)


# ---------------------------------------------------------------------------
# 1. pre-Lie axioms


def _mpl(prod, a, b, x, y, z) -> bool:
    lhs = prod(x, a, prod(y, b, z)) - prod(prod(x, a, y), b, z)
    rhs = prod(y, b, prod(x, a, z)) - prod(prod(y, b, x), a, z)
    return lhs == rhs


def _prelie(P: PreLieStructure, x, y, z) -> bool:
    ax = P.prod(x, P.prod(y, z)) - P.prod(P.prod(x, y), z)
    ay = P.prod(y, P.prod(x, z)) - P.prod(P.prod(y, x), z)
    return ax == ay


def suite_prelie(scale: Scale = Scale(), max_edges: int = 3, max_edges_insertion: int = 2) -> SuiteResult:
    """Multi-pre-Lie axiom for grafting and its deformation; pre-Lie axiom for
    plugging, deformed plugging, insertion and deformed insertion."""
    r = SuiteResult("prelie", "multi-pre-Lie axiom for grafting; pre-Lie axiom for plugging and insertion")
    runs = [(scale, max_edges - 1)]
    if len(scale.kinds) == 1:
        # a second edge kind, on smaller triples
        runs.append((Scale(max_edges, scale.max_index, scale.node_cap, scale.kinds + ("u",)), max_edges - 2))
    for sc, total in runs:
        basis = sc.trees(total)
        edges = sc.edges()
        for name, prod in (("graft", gr.graft), ("deformed graft", gr.deformed_graft)):
            for x, y, z in bounded_tuples(basis, 3, total):
                for a, b in itertools.product(edges, repeat=2):
                    r.checked += 1
                    if not _mpl(prod, a, b, x, y, z):
                        r.fail(f"{name} {a} {b}: {_fmt(x, y, z)}")
    products = [
        ("plug", PreLieStructure(pg.plug), max_edges),
        ("deformed plug", PreLieStructure(pg.deformed_plug), max_edges),
        ("insertion", PreLieStructure(lambda a, b: pg.insert(a, b, False)), max_edges_insertion),
        ("deformed insertion", PreLieStructure(lambda a, b: pg.insert(a, b, True)), max_edges_insertion),
    ]
    for name, P, m in products:
        for x, y, z in bounded_tuples(scale.trees(m), 3, m):
            r.checked += 1
            if not _prelie(P, x, y, z):
                r.fail(f"{name}: {_fmt(x, y, z)}")
    return r


# ---------------------------------------------------------------------------
# 2. Theta


def suite_theta(scale: Scale = Scale(), max_edges: int = 3) -> SuiteResult:
    """Theta intertwines grafting with deformed grafting, inverts, and only
    adds strictly lower grading terms."""
    r = SuiteResult("theta", "Theta morphism, round trip and lower-grading property")
    basis = scale.trees(max_edges)
    for s, t in bounded_tuples(basis, 2, max_edges):
        for a in scale.edges():
            r.checked += 1
            lhs = gr.theta(gr.graft(s, a, t))
            rhs = gr.deformed_graft(gr.theta(s), a, gr.theta(t))
            if lhs != rhs:
                r.fail(f"morphism {a}: {_fmt(s, t)}")
    for t in basis:
        r.checked += 1
        th = gr.theta(t)
        if gr.theta_inverse(th) != LinComb.of(t):
            r.fail(f"round trip: {_fmt(t)}")
        rest = th - LinComb.of(t)
        if any(grading(u) >= grading(t) for u, _ in rest.items()):
            r.fail(f"grading: {_fmt(t)}")
    return r


# ---------------------------------------------------------------------------
# 3. dualities


def duality_matrix(kind: str, pairs: Iterable[tuple], targets: Iterable) -> tuple[int, list]:
    """Compare ``<l ★ r, t>`` with ``<l ⊗ r, Δ t>`` for every pair and every
    target on which either side can be nonzero.

    Each coproduct is computed once per target, with a budget covering every
    leg, and restricted to the given pairs.  Returns the number of compared
    entries and the mismatches.
    """
    pairs = list(pairs)
    pairset = set(pairs)
    budget = co.Budget(max((co._size(x) for p in pairs for x in p), default=0))
    product = co._products()[kind]
    coproduct = co._coproduct(kind, budget)
    lhs: dict = {}
    support = set(targets)
    for p in pairs:
        for t, c in product(*p).items():
            lhs[p, t] = c * symmetry_factor(t)
            support.add(t)
    rhs: dict = {}
    for t in support:
        for p, c in coproduct(t).items():
            if p in pairset:
                rhs[p, t] = c * symmetry_factor(p)
    bad = []
    keys = set(lhs) | set(rhs)
    for k in keys:
        if lhs.get(k, 0) != rhs.get(k, 0):
            bad.append(f"{kind}: {_fmt(*k[0], k[1])}: {lhs.get(k, 0)} != {rhs.get(k, 0)}")
    return len(keys), bad


def _planted_basis(scale: Scale, max_edges: int) -> list[Planted]:
    return [Planted(e, t) for t in scale.trees(max_edges - 1) for e in scale.edges()]


def _forests(items: list, max_items: int, max_edges: int) -> list[Forest]:
    out = {EMPTY}
    for n in range(1, max_items + 1):
        for combo in itertools.combinations_with_replacement(items, n):
            if sum(n_edges(x) for x in combo) <= max_edges:
                out.add(Forest(combo))
    return sorted(out, key=lambda f: (n_edges(f), f.key))


def suite_duality(scale: Scale = Scale(), max_edges: int = 3, max_edges_insertion: int = 2) -> SuiteResult:
    """Pairing identities for ★₀/Δ_DCK, ★₂/Δ₂, ★₁/Δ₁ and the non-root forms.

    Targets are the enumerated trees with the right number of edges (all
    products and coproducts conserve edges) together with the support of the
    product, so both sides are compared wherever either can be nonzero.
    """
    r = SuiteResult("duality", "star products are dual to the deformed coproducts")

    def run(kind, pairs, targets):
        n, bad = duality_matrix(kind, pairs, targets)
        r.checked += n
        r.failures.extend(bad)

    planted = _planted_basis(scale, max_edges)
    pforests = _forests(planted, 2, max_edges)
    run("dck", bounded_tuples(pforests, 2, max_edges), pforests)
    trees = scale.trees(max_edges)
    run(
        "dck_bar",
        [(f, t) for f in pforests for t in trees if n_edges(f) + n_edges(t) <= max_edges],
        trees,
    )
    run("d2", bounded_tuples(trees, 2, max_edges), trees)
    small = scale.trees(max_edges_insertion)
    tforests = _forests([t for t in small if not t.is_unit], 2, max_edges_insertion)
    fpairs = [(f, t) for f in tforests for t in small if n_edges(f) + n_edges(t) <= max_edges_insertion]
    run("d1", fpairs, small)
    run("d1_circ", fpairs, small)
    return r


# ---------------------------------------------------------------------------
# 4. Chu-Vandermonde


def suite_chu_vandermonde(max_domain: int = 3, max_value: int = 3) -> SuiteResult:
    r = SuiteResult("chu-vandermonde", "Chu-Vandermonde identity by brute force")
    stats: dict = {}
    bad = cb.chu_vandermonde_check(max_domain, max_value, stats)
    r.checked = stats["checked"]
    for b in bad[:20]:
        r.fail(str(b))
    return r


# ---------------------------------------------------------------------------
# 5. (non-)commutativity at the root


def suite_commute(scale: Scale = Scale(), max_edges: int = 3, witness_edges: int = 2) -> SuiteResult:
    """Plugging at the root and its transport are symmetric; the deformed root
    plug is not."""
    r = SuiteResult("commute", "root plugging symmetric; deformed root plugging asymmetric")
    for s, t in bounded_tuples(scale.trees(max_edges), 2, max_edges):
        r.checked += 1
        if pg.plug(s, t, "root") != pg.plug(t, s, "root"):
            r.fail(f"plug root: {_fmt(s, t)}")
        if pg.tilde_plug(s, t, "root") != pg.tilde_plug(t, s, "root"):
            r.fail(f"transported root plug: {_fmt(s, t)}")
    witness = find_asymmetry(scale, witness_edges)
    r.checked += 1
    if witness is None:
        r.fail("no asymmetry witness for the deformed root plug")
    else:
        r.notes.append("witness: " + _fmt(*witness))
    return r


def find_asymmetry(scale: Scale = Scale(), max_edges: int = 2):
    """First pair with ``σ ▷̂^root τ ≠ τ ▷̂^root σ``, or ``None``."""
    trees = scale.trees(max_edges)
    for s, t in itertools.combinations(trees, 2):
        if pg.deformed_plug(s, t, "root") != pg.deformed_plug(t, s, "root"):
            return s, t
    return None


# ---------------------------------------------------------------------------
# 6. two routes to the deformed plug and to ★₂


def suite_insertion_poly(scale: Scale = Scale(), max_edges: int = 2) -> SuiteResult:
    r = SuiteResult("insertion-poly", "deformed plug via uparrow; star_2 via deformed grafting")
    trees = scale.trees(max_edges)
    for s, t in itertools.product(trees, repeat=2):
        for v in vertices(t):
            r.checked += 1
            if pg.deformed_plug(s, t, v) != pg.plug_via_uparrow(s, t, v):
                r.fail(f"uparrow route at {v}: {_fmt(s, t)}")
        for b in scale.edges():
            r.checked += 1
            if not pg.link_identity_check(s, t, b):
                r.fail(f"link identity {b}: {_fmt(s, t)}")
    return r


# ---------------------------------------------------------------------------
# 7. associativity, coassociativity, K


def _coassoc(d, dl, dr, x, bound) -> bool:
    left, right = Accumulator(), Accumulator()
    for (a, b), c in d(x).items():
        for (a1, a2), c1 in dl(a).items():
            left.add((a1, a2, b), c * c1)
        for (b1, b2), c2 in dr(b).items():
            right.add((a, b1, b2), c * c2)
    return co.truncate(left.result(), bound) == co.truncate(right.result(), bound)


def suite_associativity(scale: Scale = Scale(), max_edges: int = 3, max_edges_star1: int = 2, budget: int = 3) -> SuiteResult:
    r = SuiteResult("associativity", "star products associative; coproducts coassociative; K compatibility")
    planted = _planted_basis(scale, max_edges)
    pforests = _forests(planted, 2, max_edges)
    S0 = co._STAR0
    for x, y, z in bounded_tuples(pforests, 3, max_edges):
        r.checked += 1
        if S0.star(S0.star(x, y), z) != S0.star(x, S0.star(y, z)):
            r.fail(f"star_0: {_fmt(x, y, z)}")
    trees = scale.trees(max_edges)
    for x, y, z in bounded_tuples(trees, 3, max_edges):
        r.checked += 1
        if pg.star_plug(pg.star_plug(x, y), z) != pg.star_plug(x, pg.star_plug(y, z)):
            r.fail(f"star_2: {_fmt(x, y, z)}")
    S1 = pg.insertion_structure(True)
    tf = _forests([t for t in scale.trees(max_edges_star1) if not t.is_unit], 2, max_edges_star1)
    for x, y, z in bounded_tuples(tf, 3, max_edges_star1):
        r.checked += 1
        if S1.star(S1.star(x, y), z) != S1.star(x, S1.star(y, z)):
            r.fail(f"star_1: {_fmt(x, y, z)}")
    B = co.Budget(budget)
    small = scale.trees(2)
    for t in small:
        r.checked += 3
        if not _coassoc(lambda u: co.delta2(u, B), lambda u: co.delta2(u, B), lambda u: co.delta2(u, B), t, budget):
            r.fail(f"Delta_2: {_fmt(t)}")
        if not _coassoc(
            lambda u: co.delta1(u, "full", B), lambda u: co.delta1_forest(u, B), lambda u: co.delta1(u, "full", B), t, budget
        ):
            r.fail(f"Delta_1: {_fmt(t)}")
        if not any(t.index):
            if not _coassoc(
                lambda u: co.delta_dck(u, "full", B),
                lambda u: co.delta_dck(u, "full", B),
                lambda u: co.delta_dck(u, "full", B),
                t,
                budget,
            ):
                r.fail(f"Delta_DCK: {_fmt(t)}")
    for f in _forests([t for t in scale.trees(1) if not t.is_unit], 2, 2):
        r.checked += 1
        lhs = _delta2_forest(f, B).map(lambda p: (pg.merge_roots(p[0]), pg.merge_roots(p[1])))
        rhs = co.delta2(pg.merge_roots(f), B)
        if co.truncate(lhs, budget) != co.truncate(rhs, budget):
            r.fail(f"Delta_2 K: {_fmt(f)}")
    _check_adjoint(r, scale)
    return r


def _delta2_forest(f: Forest, B) -> LinComb:
    out = LinComb.of((EMPTY, EMPTY))
    for t in f.items:
        leg = co.delta2(t, B).map(lambda p: (Forest([p[0]]), Forest([p[1]])))
        out = co._tensor_mul(out, leg, lambda a, b: a * b, lambda a, b: a * b)
    return out


def _check_adjoint(r: SuiteResult, scale: Scale) -> None:
    # <K* tau, f> = <tau, K f> over trees with at most three edges and
    # forests of at most two such trees
    trees = scale.trees(3)
    nonunit = [t for t in trees if not t.is_unit]
    forests = _forests(nonunit, 2, 3)
    split = {t: pg.split_blocks(t) for t in trees}
    for t in trees:
        r.checked += 1
        for f, c in split[t].items():
            if pg.merge_roots(f, t.dim) != t:
                r.fail(f"K* support: {_fmt(t, f)}")
    for f in forests:
        t = pg.merge_roots(f, scale_dim(scale))
        if t not in split:
            continue
        r.checked += 1
        lhs = split[t].coeff(f) * symmetry_factor(f)
        if lhs != symmetry_factor(t):
            r.fail(f"adjointness: {_fmt(t, f)}: {lhs} != {symmetry_factor(t)}")


def scale_dim(scale: Scale) -> int:
    return len(scale.max_index)


# ---------------------------------------------------------------------------
# 8. cointeraction


def suite_cointeraction(scale: Scale = Scale(), max_edges: int = 1) -> SuiteResult:
    r = SuiteResult("cointeraction", "insertion cointeracts with grafting and with star_2")
    trees = scale.trees(max_edges)
    edges = [e for e in scale.edges() if any(e.index)] or scale.edges()
    for tau in trees:
        for t1, t2 in itertools.product(trees, repeat=2):
            for deformed in (True, False):
                r.checked += 2
                if not ap.cointeraction_check(tau, t1, t2, "graft", deformed, edges[0]):
                    r.fail(f"graft deformed={deformed}: {_fmt(tau, t1, t2)}")
                if not ap.cointeraction_check(tau, t1, t2, "plug", deformed):
                    r.fail(f"plug deformed={deformed}: {_fmt(tau, t1, t2)}")
    return r


# ---------------------------------------------------------------------------
# 9. coproducts of the applications


def suite_applications(scale: Scale = Scale(), max_edges: int = 2, budget: int = 3) -> SuiteResult:
    r = SuiteResult("applications", "Delta_NA, Delta_RC, Delta_RN identities; antipode; R compatibility")
    B = co.Budget(budget)
    trees = scale.trees(max_edges)
    for t in trees:
        r.checked += 4
        if not any(t.index) and ap.delta_na(t, B) != ap.flip(co.delta_dck(t, "full", B)):
            r.fail(f"Delta_NA flip: {_fmt(t)}")
        if ap.delta_na(t, B, variant="bar") != ap.flip(co.delta_dck(t, "bar", B)):
            r.fail(f"Delta_NA bar flip: {_fmt(t)}")
        rc = ap.delta_rc(t, B, "recursive")
        if rc != ap.flip(co.delta2(t, B)) or rc != ap.delta_rc(t, B):
            r.fail(f"Delta_RC recursion: {_fmt(t)}")
        if ap.delta_rn(t, B) != co.delta1(t, "full", B) or ap.delta_rn(t, B, "nonroot") != co.delta1(t, "circ", B):
            r.fail(f"Delta_RN vs Delta_1: {_fmt(t)}")
        r.checked += 1
        if not ap.rc_rn_cointeraction_check(t, B):
            r.fail(f"RC/RN cointeraction: {_fmt(t)}")
    for p in _planted_basis(scale, max_edges + 1):
        r.checked += 1
        if ap.antipode_identity(p, B, "na"):
            r.fail(f"antipode: {_fmt(p)}")
    r.checked += 1
    if ap.check_R_compat(lambda u: u, trees, B):
        r.fail("check_R_compat(id)")
    return r


# ---------------------------------------------------------------------------
# 10. worked examples


def suite_displays() -> SuiteResult:
    from . import displays

    r = SuiteResult("displays", "worked examples with concrete decorations")
    for name, (got, want) in displays.all_examples().items():
        r.checked += 1
        if got != want:
            r.fail(f"{name}: got {_fmt(got)} expected {_fmt(want)}")
    return r


# ---------------------------------------------------------------------------


SUITES: dict[str, Callable[..., SuiteResult]] = {
    "prelie": suite_prelie,
    "theta": suite_theta,
    "duality": suite_duality,
    "chu-vandermonde": suite_chu_vandermonde,
    "commute": suite_commute,
    "insertion-poly": suite_insertion_poly,
    "associativity": suite_associativity,
    "cointeraction": suite_cointeraction,
    "applications": suite_applications,
    "displays": suite_displays,
}

CRITERIA = list(SUITES)


def run_suite(name: str, scale: Scale | None = None, max_edges: int | None = None) -> SuiteResult:
    """Run a suite by name; ``max_edges`` overrides its main size bound."""
    fn = SUITES[name]
    kwargs: dict = {}
    if scale is not None and name not in ("chu-vandermonde", "displays"):
        kwargs["scale"] = scale
    if max_edges is not None and name not in ("chu-vandermonde", "displays"):
        kwargs["max_edges"] = max_edges
        if name in ("prelie", "duality"):
            kwargs["max_edges_insertion"] = min(max_edges, 2)
        if name == "associativity":
            kwargs["max_edges_star1"] = min(max_edges, 2)
    return fn(**kwargs)
