"""Hierarchical floorplans of order k: Baxter permutations, mosaic floorplans,
generating trees, recognition, counting and simulated annealing."""

from .kernels import BACKEND
from .perm import Permutation, inverse, is_baxter, is_simple, reverse
from .floorplan import MosaicFloorplan, Room, fp2bp
from .gentree import bp2fp, perm_to_tree, tree_to_floorplan, tree_to_perm
from .recognize import is_hfo_k, min_k
from .count import count_hfo5, count_hfo_k

__all__ = [
    "BACKEND",
    "MosaicFloorplan",
    "Permutation",
    "Room",
    "bp2fp",
    "count_hfo5",
    "count_hfo_k",
    "fp2bp",
    "inverse",
    "is_baxter",
    "is_hfo_k",
    "is_simple",
    "min_k",
    "perm_to_tree",
    "reverse",
    "tree_to_floorplan",
    "tree_to_perm",
]
__version__ = "0.1.0"
