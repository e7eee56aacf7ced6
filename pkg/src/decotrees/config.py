"""Session configuration: dimension, scaling, edge kinds and defaults.

Stored as JSON, for example::

    {
      "dim": 1,
      "scaling": [1],
      "kinds": {"t": {"degree": "2", "integration": true},
                "xi": {"degree": "-3/2"}},
      "generators": [],
      "budget": 2,
      "enumeration": {"max_edges": 2, "max_index": [1], "node_cap": [1]}
    }
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from .applications import DegreeAssignment
from .grammar import Signature


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class KindInfo:
    degree: Fraction = Fraction(1)
    integration: bool = False


@dataclass(frozen=True)
class SessionConfig:
    dim: int = 1
    scaling: tuple = (1,)
    kinds: dict = field(default_factory=lambda: {"t": KindInfo()})
    generators: tuple = ()
    budget: int = 2
    max_edges: int = 2
    max_index: tuple = (1,)
    node_cap: tuple = (1,)
    order_cap: int | None = None

    def __post_init__(self):
        if self.dim < 1:
            raise ConfigError("dim must be at least 1")
        for name, val in (("scaling", self.scaling), ("max_index", self.max_index), ("node_cap", self.node_cap)):
            if len(val) != self.dim:
                raise ConfigError(f"{name} has length {len(val)}, expected {self.dim}")
            if any(not isinstance(x, int) or x < 0 for x in val):
                raise ConfigError(f"{name} entries must be non-negative integers")
        if any(x == 0 for x in self.scaling):
            raise ConfigError("scaling entries must be positive")
        if not self.kinds:
            raise ConfigError("at least one edge kind is required")
        if self.budget < 0 or self.max_edges < 0:
            raise ConfigError("budget and max_edges must be non-negative")

    @property
    def signature(self) -> Signature:
        return Signature(self.dim, frozenset(self.kinds), frozenset(self.generators))

    @property
    def degrees(self) -> DegreeAssignment:
        return DegreeAssignment(
            {k: v.degree for k, v in self.kinds.items()},
            tuple(self.scaling),
            self.order_cap,
            frozenset(k for k, v in self.kinds.items() if v.integration),
        )

    def enumeration(self, max_edges: int | None = None) -> dict:
        return {
            "max_edges": self.max_edges if max_edges is None else max_edges,
            "max_index": self.max_index,
            "kinds": tuple(self.kinds),
            "node_cap": self.node_cap,
        }

    def with_dim(self, dim: int) -> "SessionConfig":
        if dim == self.dim:
            return self
        return SessionConfig(
            dim, (1,) * dim, self.kinds, self.generators, self.budget, self.max_edges, (1,) * dim, (1,) * dim, self.order_cap
        )


def _tuple(v, dim, name):
    if isinstance(v, int):
        return (v,) * dim
    if isinstance(v, list):
        return tuple(v)
    raise ConfigError(f"{name} must be an integer or a list")


def from_dict(d: dict) -> SessionConfig:
    known = {"dim", "scaling", "kinds", "generators", "budget", "enumeration", "order_cap"}
    extra = set(d) - known
    if extra:
        raise ConfigError(f"unknown configuration keys: {sorted(extra)}")
    dim = d.get("dim", 1)
    if not isinstance(dim, int):
        raise ConfigError("dim must be an integer")
    kinds_in = d.get("kinds", {"t": {}})
    if isinstance(kinds_in, list):
        kinds_in = {k: {} for k in kinds_in}
    kinds = {}
    for name, info in kinds_in.items():
        if not isinstance(name, str) or not name.isidentifier():
            raise ConfigError(f"edge kind {name!r} is not an identifier")
        info = info or {}
        try:
            deg = Fraction(str(info.get("degree", 1)))
        except (ValueError, ZeroDivisionError):
            raise ConfigError(f"bad degree for kind {name!r}") from None
        kinds[name] = KindInfo(deg, bool(info.get("integration", False)))
    en = d.get("enumeration", {})
    return SessionConfig(
        dim=dim,
        scaling=_tuple(d.get("scaling", 1), dim, "scaling"),
        kinds=kinds,
        generators=tuple(d.get("generators", ())),
        budget=d.get("budget", 2),
        max_edges=en.get("max_edges", 2),
        max_index=_tuple(en.get("max_index", 1), dim, "max_index"),
        node_cap=_tuple(en.get("node_cap", 1), dim, "node_cap"),
        order_cap=d.get("order_cap"),
    )


def load(path: str | Path) -> SessionConfig:
    """Read and validate a JSON configuration file."""
    try:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
    except OSError as exc:
        raise ConfigError(f"cannot read {path}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}: invalid JSON ({exc})") from None
    if not isinstance(data, dict):
        raise ConfigError("configuration must be a JSON object")
    return from_dict(data)
