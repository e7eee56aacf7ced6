"""Exact computer algebra for decorated rooted trees: deformed grafting and
plugging products, their Guin-Oudom extensions, and the dual coproducts."""

from .lincomb import LinComb, tensor
from .trees import (
    EMPTY,
    DistinguishedForest,
    Edge,
    Forest,
    Planted,
    PlantedForest,
    Tree,
    enumerate_trees,
    node,
    pairing,
    symmetry_factor,
    tree,
)
from .grammar import parse, parse_one

__all__ = [
    "EMPTY",
    "DistinguishedForest",
    "Edge",
    "Forest",
    "LinComb",
    "Planted",
    "PlantedForest",
    "Tree",
    "enumerate_trees",
    "node",
    "pairing",
    "parse",
    "parse_one",
    "symmetry_factor",
    "tensor",
    "tree",
]
