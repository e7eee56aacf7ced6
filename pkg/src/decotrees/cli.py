"""Batch command-line front end (``decotrees``).

Exit status: 0 on success, 1 when an identity suite fails, 2 on usage,
grammar or configuration errors.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from fractions import Fraction

from . import applications as ap
from . import coproducts as co
from . import grafting as gr
from . import plugging as pg
from . import suites
from .config import ConfigError, SessionConfig, load
from .grammar import (
    SCHEMA_VERSION,
    GrammarError,
    as_forest,
    as_planted_forest,
    as_tree,
    basis_to_json,
    format_basis,
    format_lincomb,
    lincomb_to_json,
    parse,
)
from .lincomb import LinComb
from .trees import Edge, enumerate_trees, pairing

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

_EDGE = re.compile(r"^\(\s*([A-Za-z_]\w*)\s*,\s*\(([\d\s,]+)\)\s*\)$")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def parse_edge(text: str, cfg: SessionConfig) -> Edge:
    """``(kind,(i,...))`` checked against the configuration."""
    m = _EDGE.match(text.strip())
    if not m:
        raise UsageError(f"bad edge label {text!r}; expected (kind,(i,...))")
    kind = m.group(1)
    idx = tuple(int(x) for x in m.group(2).split(",") if x.strip())
    if kind not in cfg.kinds:
        raise UsageError(f"undeclared edge kind {kind!r}")
    if len(idx) != cfg.dim:
        raise UsageError(f"edge index {idx} has dimension {len(idx)}, expected {cfg.dim}")
    return Edge(kind, idx)


def _expr(text: str, cfg: SessionConfig, coerce=None) -> LinComb:
    x = parse(text, cfg.signature)
    if coerce is not None:
        x = x.map(coerce)
    return x


def _trees(cfg):
    return lambda b: as_tree(b, cfg.dim)


# ---------------------------------------------------------------------------
# commands; each returns a LinComb, a scalar or a list of basis elements


def cmd_enumerate(a, cfg):
    m = a.max_edges if a.max_edges is not None else cfg.max_edges
    return enumerate_trees(m, cfg.max_index, tuple(cfg.kinds), cfg.node_cap)


def cmd_graft(a, cfg, deformed=False):
    s = _expr(a.sigma, cfg, _trees(cfg))
    t = _expr(a.tau, cfg, _trees(cfg))
    e = parse_edge(a.edge, cfg)
    return (gr.deformed_graft if deformed else gr.graft)(s, e, t, a.mode)


def cmd_theta(a, cfg):
    x = _expr(a.x, cfg, _trees(cfg))
    return gr.theta(x, "inverse" if a.inverse else "forward")


def cmd_plug(a, cfg):
    s = _expr(a.sigma, cfg, _trees(cfg))
    t = _expr(a.tau, cfg, _trees(cfg))
    if a.variant == "plain":
        return pg.plug(s, t, a.mode)
    if a.variant == "deformed":
        return pg.deformed_plug(s, t, a.mode)
    return pg.tilde_plug(s, t, a.mode)


def cmd_insert(a, cfg):
    s = _expr(a.sigma, cfg, _trees(cfg))
    t = _expr(a.tau, cfg, _trees(cfg))
    return pg.insert(s, t, not a.plain, a.mode)


def cmd_star(a, cfg):
    if a.which == "0":
        left = _expr(a.left, cfg, as_planted_forest)
        right = _expr(a.right, cfg, as_planted_forest)
        return co._STAR0.star(left, right)
    if a.which == "1":
        left = _expr(a.left, cfg, as_forest)
        right = _expr(a.right, cfg, as_forest)
        return pg.insertion_structure(True).star(left, right)
    left = _expr(a.left, cfg, _trees(cfg))
    right = _expr(a.right, cfg, _trees(cfg))
    return pg.star_plug(left, right, deformed=(a.which == "2"))


def _budget(a, cfg) -> co.Budget:
    b = a.budget if a.budget is not None else cfg.budget
    if b < 0:
        raise UsageError("budget must be non-negative")
    return co.Budget(b, tuple(cfg.scaling))


def cmd_coproduct(a, cfg):
    B = _budget(a, cfg)
    which = a.which
    if which == "dck":
        variant = a.variant or "full"
        return co.delta_dck(_expr(a.x, cfg, _full_or_tree(cfg, variant)), variant, B)
    if which == "d2":
        return co.delta2(_expr(a.x, cfg, _trees(cfg)), B)
    if which == "d1":
        return co.delta1(_expr(a.x, cfg, _trees(cfg)), a.variant or "full", B)
    if which == "na":
        deg = cfg.degrees
        if a.order is not None:
            deg = ap.DegreeAssignment(deg.degrees, deg.scaling, a.order, deg.integration)
        variant = a.variant or "full"
        return ap.delta_na(_expr(a.x, cfg, _full_or_tree(cfg, variant)), B, deg, variant)
    if which == "rc":
        return ap.delta_rc(_expr(a.x, cfg, _trees(cfg)), B, a.variant or "flip")
    if which == "rn":
        return ap.delta_rn(_expr(a.x, cfg, _trees(cfg)), B, a.variant or "full")
    raise UsageError(f"unknown coproduct {which!r}")


def _full_or_tree(cfg, variant):
    if variant == "full":
        # a tree with a bare root stands for the forest of its branches
        def f(b):
            try:
                return as_planted_forest(b)
            except GrammarError:
                t = as_tree(b, cfg.dim)
                if any(t.index):
                    raise UsageError("the full coproduct needs a planted forest (bare root)") from None
                return co._planted_forest(t)

        return f
    return _trees(cfg)


def cmd_pair(a, cfg):
    return pairing(_expr(a.x, cfg), _expr(a.y, cfg))


def cmd_antipode(a, cfg):
    x = _expr(a.x, cfg, _full_or_tree(cfg, "full"))
    return ap.antipode(x, _budget(a, cfg), a.which)


# ---------------------------------------------------------------------------
# output


def _emit(result, fmt: str, out) -> None:
    if isinstance(result, LinComb):
        if fmt == "json":
            out.write(json.dumps(lincomb_to_json(result), ensure_ascii=False, indent=2) + "\n")
        else:
            out.write(format_lincomb(result) + "\n")
    elif isinstance(result, list):
        if fmt == "json":
            payload = {"schema": SCHEMA_VERSION, "kind": "basis_list", "items": [basis_to_json(b) for b in result]}
            out.write(json.dumps(payload, ensure_ascii=False, indent=2) + "\n")
        else:
            for b in result:
                out.write(format_basis(b) + "\n")
    else:
        val = Fraction(result)
        text = str(val)
        if fmt == "json":
            out.write(json.dumps({"schema": SCHEMA_VERSION, "kind": "scalar", "value": text}) + "\n")
        else:
            out.write(text + "\n")


def cmd_check(a, cfg, out) -> int:
    names = suites.CRITERIA if a.suite == "all" else [a.suite]
    scale = suites.Scale(
        max_edges=a.max_edges if a.max_edges is not None else 3,
        max_index=tuple(cfg.max_index),
        node_cap=tuple(cfg.node_cap),
        kinds=tuple(sorted(cfg.kinds)),
    )
    results = [suites.run_suite(n, scale, a.max_edges) for n in names]
    if a.format == "json":
        payload = {
            "schema": SCHEMA_VERSION,
            "kind": "check",
            "passed": all(r.passed for r in results),
            "suites": [r.to_json() for r in results],
        }
        out.write(json.dumps(payload, ensure_ascii=False, indent=2) + "\n")
    else:
        for r in results:
            out.write(r.line() + "\n")
            for n in r.notes:
                out.write(f"    {n}\n")
            for f in r.failures[:20]:
                out.write(f"    counterexample: {f}\n")
    return EXIT_OK if all(r.passed for r in results) else EXIT_FAIL


# ---------------------------------------------------------------------------
# argument parsing


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--dim", type=int, help="multi-index dimension (overrides the config)")
    common.add_argument("--budget", type=int, help="bound on emitted polynomial legs")
    common.add_argument("--config", help="JSON session configuration")
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--order", type=int, help="order cap for the numerical-analysis coproduct")

    p = _Parser(prog="decotrees", description="Deformed products and coproducts on decorated trees.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("enumerate", parents=[common], help="list trees of the configured basis")
    s.add_argument("--max-edges", type=int)

    for name, helptext in (("graft", "σ ↷^a τ"), ("deform-graft", "deformed grafting")):
        s = sub.add_parser(name, parents=[common], help=helptext)
        s.add_argument("sigma")
        s.add_argument("edge", help="edge label (kind,(i,...))")
        s.add_argument("tau")
        s.add_argument("--mode", choices=("all", "root", "nonroot"), default="all")

    s = sub.add_parser("theta", parents=[common], help="apply Theta or its inverse")
    s.add_argument("x")
    s.add_argument("--inverse", action="store_true")

    s = sub.add_parser("plug", parents=[common], help="plugging products")
    s.add_argument("sigma")
    s.add_argument("tau")
    s.add_argument("--variant", choices=("plain", "deformed", "tilde"), default="deformed")
    s.add_argument("--mode", choices=("all", "root", "nonroot"), default="all")

    s = sub.add_parser("insert", parents=[common], help="insertion products")
    s.add_argument("sigma")
    s.add_argument("tau")
    s.add_argument("--plain", action="store_true", help="undeformed insertion")
    s.add_argument("--mode", choices=("all", "nonroot"), default="all")

    s = sub.add_parser("star", parents=[common], help="associative star products")
    s.add_argument("which", choices=("0", "1", "2", "plain"))
    s.add_argument("left")
    s.add_argument("right")

    s = sub.add_parser("coproduct", parents=[common], help="coproducts")
    s.add_argument("which", choices=("dck", "d2", "d1", "na", "rc", "rn"))
    s.add_argument("x")
    s.add_argument("--variant", help="full, bar, root, circ, nonroot, flip or recursive, depending on the coproduct")

    s = sub.add_parser("pair", parents=[common], help="symmetry-factor pairing")
    s.add_argument("x")
    s.add_argument("y")

    s = sub.add_parser("antipode", parents=[common], help="antipode on planted forests")
    s.add_argument("x")
    s.add_argument("--which", choices=("na", "dck"), default="na")

    s = sub.add_parser("check", parents=[common], help="run identity suites")
    s.add_argument("suite", choices=suites.CRITERIA + ["all"])
    s.add_argument("--max-edges", type=int)
    return p


_COMMANDS = {
    "enumerate": cmd_enumerate,
    "graft": cmd_graft,
    "deform-graft": lambda a, cfg: cmd_graft(a, cfg, deformed=True),
    "theta": cmd_theta,
    "plug": cmd_plug,
    "insert": cmd_insert,
    "star": cmd_star,
    "coproduct": cmd_coproduct,
    "pair": cmd_pair,
    "antipode": cmd_antipode,
}


def _config(a) -> SessionConfig:
    cfg = load(a.config) if a.config else SessionConfig()
    if a.dim is not None:
        if a.dim < 1:
            raise ConfigError("--dim must be at least 1")
        cfg = cfg.with_dim(a.dim)
    return cfg


def main(argv: list[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        cfg = _config(args)
        if args.command == "check":
            return cmd_check(args, cfg, out)
        _emit(_COMMANDS[args.command](args, cfg), args.format, out)
        return EXIT_OK
    except (GrammarError, ConfigError, UsageError, ValueError, TypeError) as exc:
        sys.stderr.write(f"decotrees: error: {exc}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
