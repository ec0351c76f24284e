"""Skewed generating trees: permutation <-> tree <-> floorplan."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Sequence, Union

from .floorplan import MosaicFloorplan, Room, compact, enumerate_mosaic, fp2bp, single_room
from .perm import Permutation, decompose_spans, enumerate_class, inflate, is_baxter, is_simple

MAX_CATALOG_LENGTH = 8

_SLICING = (Permutation((1, 2)), Permutation((2, 1)))


class TreeError(ValueError):
    """A tree violates a skewed-generating-tree invariant."""


@dataclass(frozen=True)
class Leaf:
    label: int

    def __str__(self) -> str:
        return str(self.label)


@dataclass(frozen=True)
class Internal:
    sigma: Permutation
    children: tuple["Node", ...]

    def __post_init__(self):
        object.__setattr__(self, "sigma", Permutation(self.sigma))
        object.__setattr__(self, "children", tuple(self.children))

    def __str__(self) -> str:
        return "(" + " ".join([self.sigma.compact(), *map(str, self.children)]) + ")"


Node = Union[Leaf, Internal]


def size(t: Node) -> int:
    if isinstance(t, Leaf):
        return 1
    return sum(size(c) for c in t.children)


def leaves(t: Node) -> list[int]:
    """Leaf labels, left to right."""
    if isinstance(t, Leaf):
        return [t.label]
    out = []
    for c in t.children:
        out.extend(leaves(c))
    return out


def order(t: Node) -> int:
    """Largest internal arity; 1 for a bare leaf."""
    if isinstance(t, Leaf):
        return 1
    return max(len(t.sigma), *(order(c) for c in t.children))


def validate_tree(t: Node) -> None:
    """Raise :class:`TreeError` naming the first violated invariant."""

    def walk(node: Node) -> None:
        if isinstance(node, Leaf):
            return
        s = node.sigma
        if len(s) < 2:
            raise TreeError(f"node {s.compact()}: label must have length >= 2")
        if len(node.children) != len(s):
            raise TreeError(
                f"node {s.compact()}: arity {len(node.children)} does not match label length {len(s)}"
            )
        if not (is_simple(s) and is_baxter(s)):
            raise TreeError(f"node {s.compact()}: label must be simple and Baxter")
        last = node.children[-1]
        if s in _SLICING and isinstance(last, Internal) and last.sigma == s:
            raise TreeError(f"node {s.compact()}: skew rule, rightmost child repeats the label")
        for c in node.children:
            walk(c)

    walk(t)
    labels = sorted(leaves(t))
    if labels != list(range(1, len(labels) + 1)):
        raise TreeError("leaf labels: must be exactly 1..n")


def tree_to_perm(t: Node) -> Permutation:
    """Recursive inflation. Leaf labels do not affect the result."""
    if isinstance(t, Leaf):
        return Permutation((1,))
    return inflate(t.sigma, [tree_to_perm(c) for c in t.children])


def perm_to_tree(p: Sequence[int]) -> Node:
    """The unique skewed tree of a Baxter permutation.

    Leaves are labelled by position, 1..n from left to right.
    """
    if not is_baxter(p):
        raise ValueError(f"{Permutation(p).compact()} is not Baxter")
    p = tuple(p)

    def build(a: int, b: int) -> Node:
        if b - a == 1:
            return Leaf(a + 1)
        sigma, spans = decompose_spans(p[a:b])
        return Internal(sigma, tuple(build(a + s, a + e) for s, e in spans))

    return build(0, len(p))


def relabel_leaves(t: Node, labels: Sequence[int]) -> Node:
    """Copy of ``t`` with leaves relabelled left to right from ``labels``."""
    it = iter(labels)

    def walk(node: Node) -> Node:
        if isinstance(node, Leaf):
            return Leaf(next(it))
        return Internal(node.sigma, tuple(walk(c) for c in node.children))

    return walk(t)


# --- text form -----------------------------------------------------------------

def format_tree(t: Node) -> str:
    return str(t)


def parse_tree(text: str) -> Node:
    """Parse the parenthesised prefix form, e.g. ``(41352 (12 1 2) 3 4 5 6)``."""
    tokens = text.replace("(", " ( ").replace(")", " ) ").split()
    if not tokens:
        raise TreeError("empty tree text")
    pos = 0

    def node() -> Node:
        nonlocal pos
        if pos >= len(tokens):
            raise TreeError("unexpected end of tree text")
        tok = tokens[pos]
        pos += 1
        if tok == ")":
            raise TreeError("unexpected ')'")
        if tok != "(":
            try:
                return Leaf(int(tok))
            except ValueError:
                raise TreeError(f"bad leaf token {tok!r}") from None
        if pos >= len(tokens):
            raise TreeError("unexpected end of tree text")
        try:
            sigma = Permutation.from_compact(tokens[pos])
        except ValueError as exc:
            raise TreeError(f"bad node label {tokens[pos]!r}: {exc}") from None
        pos += 1
        kids = []
        while pos < len(tokens) and tokens[pos] != ")":
            kids.append(node())
        if pos >= len(tokens):
            raise TreeError("missing ')'")
        pos += 1
        return Internal(sigma, tuple(kids))

    t = node()
    if pos != len(tokens):
        raise TreeError("trailing tokens after tree")
    return t


# --- catalog -------------------------------------------------------------------

@dataclass(frozen=True)
class UniquelyHfoCatalog:
    """Per length, the simple Baxter permutations with a reference geometry.

    Each geometry's room ids are its top-left deletion labels.
    """

    entries: dict[int, tuple[tuple[Permutation, MosaicFloorplan], ...]] = field(default_factory=dict)

    @property
    def max_l(self) -> int:
        return max(self.entries, default=1)

    def at(self, length: int) -> list[tuple[Permutation, MosaicFloorplan]]:
        return list(self.entries.get(length, ()))

    def geometry(self, sigma: Sequence[int]) -> MosaicFloorplan:
        sigma = Permutation(sigma)
        for s, g in self.entries.get(len(sigma), ()):
            if s == sigma:
                return g
        if len(sigma) not in self.entries:
            raise KeyError(
                f"label {sigma.compact()} missing from catalog: needs length {len(sigma)}, "
                f"catalog covers up to {self.max_l}"
            )
        raise KeyError(f"label {sigma.compact()} is not simple and Baxter")

    def __contains__(self, sigma) -> bool:
        sigma = tuple(sigma)
        return any(tuple(s) == sigma for s, _ in self.entries.get(len(sigma), ()))


@lru_cache(maxsize=None)
def _catalog_level(length: int) -> tuple[tuple[Permutation, MosaicFloorplan], ...]:
    wanted = set(enumerate_class(length, "simple_and_baxter"))
    found = {}
    for f in enumerate_mosaic(length):
        key = fp2bp(f)
        if key in wanted:
            found[key] = f
    missing = wanted - set(found)
    if missing:
        raise AssertionError(f"no geometry for {sorted(missing)}")
    return tuple(sorted(found.items()))


def build_catalog(max_l: int = 5) -> UniquelyHfoCatalog:
    if not 2 <= max_l <= MAX_CATALOG_LENGTH:
        raise ValueError(f"max_l must be in 2..{MAX_CATALOG_LENGTH}")
    return UniquelyHfoCatalog({l: _catalog_level(l) for l in range(2, max_l + 1)})


def default_catalog_for(t: Node) -> UniquelyHfoCatalog:
    return build_catalog(max(2, min(order(t), MAX_CATALOG_LENGTH)))


# --- embedding -----------------------------------------------------------------

def _embed(t: Node, catalog: UniquelyHfoCatalog) -> list[tuple[int, tuple, tuple, tuple, tuple]]:
    """Rooms as (id, x1, y1, x2, y2) with lexicographically ordered tuple coordinates."""
    if isinstance(t, Leaf):
        return [(t.label, (0,), (0,), (1,), (1,))]
    skeleton = catalog.geometry(t.sigma)
    out = []
    for i, child in enumerate(t.children):
        room = skeleton.room(t.sigma[i])
        sub = _embed(child, catalog)
        xs = sorted({c for r in sub for c in (r[1], r[3])})
        ys = sorted({c for r in sub for c in (r[2], r[4])})

        def mapx(c, xs=xs, room=room, i=i):
            k = xs.index(c)
            if k == 0:
                return (room.x1, 0, ())
            if k == len(xs) - 1:
                return (room.x2, 0, ())
            return (room.x1, i + 1, c)

        def mapy(c, ys=ys, room=room, i=i):
            k = ys.index(c)
            if k == 0:
                return (room.y1, 0, ())
            if k == len(ys) - 1:
                return (room.y2, 0, ())
            return (room.y1, i + 1, c)

        for rid, x1, y1, x2, y2 in sub:
            out.append((rid, mapx(x1), mapy(y1), mapx(x2), mapy(y2)))
    return out


def tree_to_floorplan(t: Node, catalog: UniquelyHfoCatalog | None = None) -> MosaicFloorplan:
    """Materialise a tree as a floorplan; room ids are the leaf labels.

    Child ``i`` (by position) fills the skeleton room whose top-left label is
    ``sigma[i]``, so that the Abe-label of the result is ``tree_to_perm(t)``.
    """
    if catalog is None:
        catalog = default_catalog_for(t)
    if isinstance(t, Leaf):
        return single_room(t.label)
    rooms = _embed(t, catalog)
    xs = {c: i for i, c in enumerate(sorted({c for r in rooms for c in (r[1], r[3])}))}
    ys = {c: i for i, c in enumerate(sorted({c for r in rooms for c in (r[2], r[4])}))}
    return compact(
        MosaicFloorplan([Room(rid, xs[x1], ys[y1], xs[x2], ys[y2]) for rid, x1, y1, x2, y2 in rooms])
    )


def bp2fp(p: Sequence[int], catalog: UniquelyHfoCatalog | None = None) -> MosaicFloorplan:
    """A floorplan whose Abe-label is ``p``; room ids are the top-left labels."""
    return tree_to_floorplan(relabel_leaves(perm_to_tree(p), p), catalog)
