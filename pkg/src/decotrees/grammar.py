"""Text grammar and JSON serialisation for trees, forests and linear combinations.

Grammar (whitespace-insensitive)::

    lincomb := term (('+'|'-') term)*        term   := [rational '*'] tensor
    tensor  := expr ('⊗' expr)*              expr   := factor ('·' factor)* | '1'
    factor  := tree | branch
    tree    := 'X' ['_' gen] '^' mindex ['[' branch (',' branch)* ']'] | '•' nat
    branch  := '(' kind ',' mindex ')' '->' tree
    mindex  := '(' nat (',' nat)* ')'        rational := int ['/' nat]

A branch on its own denotes a planted tree.  ``·`` may be written ``.`` and
``⊗`` may be written ``@``.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from .lincomb import LinComb
from .trees import EMPTY, DistinguishedForest, Edge, Forest, Planted, Tree

SCHEMA_VERSION = "decotrees/1"


class GrammarError(ValueError):
    """Syntax or validation error; ``pos`` is the character offset."""

    def __init__(self, msg: str, pos: int | None = None, text: str | None = None):
        self.pos = pos
        if pos is not None and text is not None:
            msg = f"{msg} at position {pos}: {text[:pos]!s}<here>{text[pos:]!s}"
        super().__init__(msg)


@dataclass(frozen=True)
class Signature:
    """What a parsed expression may contain.  ``None`` fields are unchecked."""

    dim: int | None = None
    kinds: frozenset | None = None
    generators: frozenset | None = field(default=None)


# ---------------------------------------------------------------------------
# formatting


def format_mindex(k) -> str:
    return "(" + ",".join(str(x) for x in k) + ")"


def format_tree(t: Tree) -> str:
    head = "X" + (f"_{t.gen}" if t.gen else "") + "^" + format_mindex(t.index)
    if not t.children:
        return head
    return head + "[" + ",".join(_format_branch(e, c) for e, c in t.children) + "]"


def _format_branch(e: Edge, c: Tree) -> str:
    return f"({e.kind},{format_mindex(e.index)})->{format_tree(c)}"


def format_planted(p: Planted) -> str:
    return _format_branch(p.edge, p.body)


def format_forest(f: Forest) -> str:
    if not f.items:
        return "1"
    return "·".join(format_basis(x) for x in f.items)


def format_basis(b: Any, in_tensor: bool = False) -> str:
    if isinstance(b, Tree):
        return "1" if in_tensor and b.is_unit else format_tree(b)
    if isinstance(b, Planted):
        return format_planted(b)
    if isinstance(b, Forest):
        return format_forest(b)
    if isinstance(b, DistinguishedForest):
        out = "<" + format_tree(b.marked) + ">"
        return out if not b.rest.items else out + "·" + format_forest(b.rest)
    if isinstance(b, tuple):
        return "⊗".join(format_basis(x, True) for x in b)
    raise TypeError(f"cannot format {type(b).__name__}")


def _format_coeff(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def format_lincomb(x: LinComb) -> str:
    parts = []
    for b, c in x:
        sign = "-" if c < 0 else "+"
        a = abs(c)
        body = format_basis(b)
        text = body if a == 1 else f"{_format_coeff(a)}*{body}"
        parts.append((sign, text))
    if not parts:
        return "0"
    first_sign, first = parts[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, text in parts[1:]:
        out += f" {sign} {text}"
    return out


# ---------------------------------------------------------------------------
# parsing

_TOKEN = re.compile(
    r"\s*(?:(?P<num>\d+)|(?P<id>[A-Za-z_][A-Za-z0-9_]*)|(?P<arrow>->)|(?P<sym>[()\[\],^*/+\-·.•⊗@]))"
)


class _Parser:
    def __init__(self, text: str, sig: Signature):
        self.text = text
        self.sig = sig
        self.toks = []
        pos = 0
        n = len(text)
        while pos < n:
            if text[pos:].strip() == "":
                break
            m = _TOKEN.match(text, pos)
            if not m or m.end() == pos:
                raise GrammarError("unexpected character", pos, text)
            kind = m.lastgroup
            val = m.group(kind)
            start = m.start(kind)
            if kind == "sym" and val == ".":
                val = "·"
            if kind == "sym" and val == "@":
                val = "⊗"
            self.toks.append((kind, val, start))
            pos = m.end()
        self.i = 0

    # token helpers
    def peek(self, k: int = 0):
        j = self.i + k
        return self.toks[j] if j < len(self.toks) else (None, None, len(self.text))

    def at(self, val: str, k: int = 0) -> bool:
        _, v, _ = self.peek(k)
        return v == val

    def expect(self, val: str):
        kind, v, pos = self.peek()
        if v != val:
            raise GrammarError(f"expected {val!r}", pos, self.text)
        self.i += 1

    def error(self, msg: str):
        raise GrammarError(msg, self.peek()[2], self.text)

    def nat(self) -> int:
        kind, v, pos = self.peek()
        if kind != "num":
            self.error("expected a natural number")
        self.i += 1
        return int(v)

    def ident(self) -> str:
        kind, v, pos = self.peek()
        if kind != "id":
            self.error("expected an identifier")
        self.i += 1
        return v

    # grammar
    def lincomb(self) -> LinComb:
        terms = []
        sign = 1
        if self.at("-"):
            self.i += 1
            sign = -1
        elif self.at("+"):
            self.i += 1
        terms.append(self.term(sign))
        while self.at("+") or self.at("-"):
            sign = 1 if self.at("+") else -1
            self.i += 1
            terms.append(self.term(sign))
        if self.peek()[0] is not None:
            self.error("unexpected trailing input")
        return LinComb(terms)

    def term(self, sign: int):
        coeff = Fraction(sign)
        if self.peek()[0] == "num":
            # rational coefficient iff followed by '*' (possibly after '/nat')
            if self.at("*", 1):
                coeff *= self.nat()
                self.expect("*")
            elif self.at("/", 1) and self.peek(2)[0] == "num" and self.at("*", 3):
                a = self.nat()
                self.expect("/")
                b = self.nat()
                if b == 0:
                    self.error("zero denominator")
                coeff *= Fraction(a, b)
                self.expect("*")
        return self.tensor(), coeff

    def tensor(self):
        legs = [self.expr()]
        while self.at("⊗"):
            self.i += 1
            legs.append(self.expr())
        return legs[0] if len(legs) == 1 else tuple(legs)

    def expr(self):
        kind, v, pos = self.peek()
        if kind == "num":
            if v != "1":
                self.error("expected a tree, a branch or '1'")
            self.i += 1
            return EMPTY
        factors = [self.factor()]
        while self.at("·"):
            self.i += 1
            factors.append(self.factor())
        if len(factors) == 1:
            return factors[0]
        return Forest(factors)

    def factor(self):
        if self.at("("):
            e, body = self.branch()
            return Planted(e, body)
        return self.tree()

    def mindex(self) -> tuple:
        start = self.peek()[2]
        self.expect("(")
        out = [self.nat()]
        while self.at(","):
            self.i += 1
            out.append(self.nat())
        self.expect(")")
        if self.sig.dim is not None and len(out) != self.sig.dim:
            raise GrammarError(
                f"dimension mismatch: index of length {len(out)}, expected {self.sig.dim}", start, self.text
            )
        return tuple(out)

    def tree(self) -> Tree:
        kind, v, pos = self.peek()
        if v == "•":
            self.i += 1
            if self.sig.dim not in (None, 1):
                raise GrammarError("leaf shorthand requires dimension 1", pos, self.text)
            return Tree((self.nat(),))
        if kind != "id" or not (v == "X" or v.startswith("X_")):
            self.error("expected a tree")
        self.i += 1
        gen = None
        if v != "X":
            gen = v[2:]
            if not gen:
                self.error("empty generator name")
            if self.sig.generators is not None and gen not in self.sig.generators:
                raise GrammarError(f"undeclared generator {gen!r}", pos, self.text)
        self.expect("^")
        idx = self.mindex()
        kids = []
        if self.at("["):
            self.i += 1
            kids.append(self.branch())
            while self.at(","):
                self.i += 1
                kids.append(self.branch())
            self.expect("]")
        return Tree(idx, kids, gen)

    def branch(self):
        self.expect("(")
        pos = self.peek()[2]
        kind = self.ident()
        if self.sig.kinds is not None and kind not in self.sig.kinds:
            raise GrammarError(f"undeclared edge kind {kind!r}", pos, self.text)
        self.expect(",")
        idx = self.mindex()
        self.expect(")")
        self.expect("->")
        return Edge(kind, idx), self.tree()


def parse(text: str, sig: Signature | None = None) -> LinComb:
    """Parse a linear combination; raises :class:`GrammarError`."""
    return _Parser(text, sig or Signature()).lincomb()


def parse_one(text: str, sig: Signature | None = None):
    """Parse text denoting a single basis element with coefficient 1."""
    x = parse(text, sig)
    if len(x) != 1 or next(iter(x.items()))[1] != 1:
        raise GrammarError(f"expected a single basis element, got {x!r}")
    return next(iter(x.items()))[0]


# ---------------------------------------------------------------------------
# coercions between the basis types


def as_tree(b, dim: int = 1) -> Tree:
    if isinstance(b, Tree):
        return b
    if isinstance(b, Forest) and not b.items:
        return Tree((0,) * dim)
    if isinstance(b, Planted):
        return b.as_tree()
    raise GrammarError(f"expected a tree, got {format_basis(b)}")


def as_forest(b) -> Forest:
    if isinstance(b, Forest):
        return b
    if isinstance(b, (Tree, Planted)):
        return Forest([b])
    raise GrammarError(f"expected a forest, got {format_basis(b)}")


def as_planted_forest(b) -> Forest:
    f = as_forest(b)
    if any(not isinstance(x, Planted) for x in f.items):
        raise GrammarError(f"expected planted trees, got {format_basis(b)}")
    return f


# ---------------------------------------------------------------------------
# JSON


def basis_to_json(b: Any) -> Any:
    if isinstance(b, Tree):
        out: dict = {"type": "tree", "index": list(b.index)}
        if b.gen:
            out["gen"] = b.gen
        out["children"] = [
            {"kind": e.kind, "index": list(e.index), "tree": basis_to_json(c)} for e, c in b.children
        ]
        return out
    if isinstance(b, Planted):
        return {"type": "planted", "kind": b.edge.kind, "index": list(b.edge.index), "body": basis_to_json(b.body)}
    if isinstance(b, Forest):
        return {"type": "forest", "items": [basis_to_json(x) for x in b.items]}
    if isinstance(b, DistinguishedForest):
        return {"type": "distinguished", "marked": basis_to_json(b.marked), "rest": basis_to_json(b.rest)}
    if isinstance(b, tuple):
        return {"type": "tensor", "legs": [basis_to_json(x) for x in b]}
    raise TypeError(type(b).__name__)


def basis_from_json(d: Any) -> Any:
    t = d.get("type")
    if t == "tree":
        kids = [(Edge(c["kind"], tuple(c["index"])), basis_from_json(c["tree"])) for c in d.get("children", [])]
        return Tree(tuple(d["index"]), kids, d.get("gen"))
    if t == "planted":
        return Planted(Edge(d["kind"], tuple(d["index"])), basis_from_json(d["body"]))
    if t == "forest":
        return Forest(basis_from_json(x) for x in d["items"])
    if t == "distinguished":
        return DistinguishedForest(basis_from_json(d["marked"]), basis_from_json(d["rest"]))
    if t == "tensor":
        return tuple(basis_from_json(x) for x in d["legs"])
    raise ValueError(f"unknown JSON basis type {t!r}")


def lincomb_to_json(x: LinComb) -> dict:
    terms = []
    for b, c in x:
        rec: dict = {"coeff": _format_coeff(c), "text": format_basis(b)}
        if isinstance(b, tuple) and len(b) == 2:
            rec["left"] = basis_to_json(b[0])
            rec["right"] = basis_to_json(b[1])
        else:
            rec["basis"] = basis_to_json(b)
        terms.append(rec)
    return {"schema": SCHEMA_VERSION, "kind": "lincomb", "terms": terms}


def lincomb_from_json(d: dict) -> LinComb:
    if d.get("schema") != SCHEMA_VERSION:
        raise ValueError(f"unsupported schema {d.get('schema')!r}")
    out = []
    for rec in d["terms"]:
        if "basis" in rec:
            b = basis_from_json(rec["basis"])
        else:
            b = (basis_from_json(rec["left"]), basis_from_json(rec["right"]))
        out.append((b, Fraction(rec["coeff"])))
    return LinComb(out)


def dumps(x: LinComb) -> str:
    return json.dumps(lincomb_to_json(x), ensure_ascii=False, indent=2)
