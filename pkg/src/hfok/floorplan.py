"""Mosaic floorplans on an integer grid.

Coordinates have the origin at the top-left, x growing rightward and y
growing downward. Rooms are half-open boxes ``[x1, x2) x [y1, y2)``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Sequence

from .perm import Permutation


class FloorplanError(ValueError):
    """A floorplan violates one of the mosaic invariants."""


@dataclass(frozen=True, order=True)
class Room:
    id: int
    x1: int
    y1: int
    x2: int
    y2: int

    @property
    def area(self) -> int:
        return (self.x2 - self.x1) * (self.y2 - self.y1)


@dataclass(frozen=True)
class SegRoomRelation:
    segment: int
    room: int
    direction: str  # top | left | right | bottom


class MosaicFloorplan:
    """A rectangular dissection with no empty rooms and no cross junctions."""

    __slots__ = ("rooms",)

    def __init__(self, rooms: Iterable[Room], *, check: bool = True):
        rooms = tuple(sorted(rooms, key=lambda r: r.id))
        object.__setattr__(self, "rooms", rooms)
        if check:
            validate(self)

    def __setattr__(self, name, value):
        raise AttributeError("MosaicFloorplan is immutable")

    @property
    def n(self) -> int:
        return len(self.rooms)

    @property
    def bbox(self) -> tuple[int, int, int, int]:
        return (
            min(r.x1 for r in self.rooms),
            min(r.y1 for r in self.rooms),
            max(r.x2 for r in self.rooms),
            max(r.y2 for r in self.rooms),
        )

    def room(self, rid: int) -> Room:
        for r in self.rooms:
            if r.id == rid:
                return r
        raise KeyError(rid)

    def __eq__(self, other) -> bool:
        return isinstance(other, MosaicFloorplan) and self.rooms == other.rooms

    def __hash__(self) -> int:
        return hash(self.rooms)

    def __repr__(self) -> str:
        return f"MosaicFloorplan(n={self.n}, rooms={list(self.rooms)!r})"

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "rooms": [
                {"id": r.id, "x1": r.x1, "y1": r.y1, "x2": r.x2, "y2": r.y2}
                for r in self.rooms
            ],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), separators=(",", ":"))

    @classmethod
    def from_dict(cls, doc: dict) -> "MosaicFloorplan":
        if not isinstance(doc, dict) or "rooms" not in doc:
            raise FloorplanError("floorplan document needs a 'rooms' list")
        try:
            rooms = [
                Room(int(d["id"]), int(d["x1"]), int(d["y1"]), int(d["x2"]), int(d["y2"]))
                for d in doc["rooms"]
            ]
        except (KeyError, TypeError, ValueError) as exc:
            raise FloorplanError(f"malformed room entry: {exc}") from exc
        if "n" in doc and doc["n"] != len(rooms):
            raise FloorplanError(f"room count: n={doc['n']} but {len(rooms)} rooms listed")
        ids = sorted(r.id for r in rooms)
        if ids != list(range(1, len(rooms) + 1)):
            raise FloorplanError("room ids: ids must be exactly 1..n")
        return cls(rooms)

    @classmethod
    def from_json(cls, text: str) -> "MosaicFloorplan":
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise FloorplanError(f"invalid JSON: {exc}") from exc
        return cls.from_dict(doc)


def validate(f: MosaicFloorplan) -> None:
    """Raise :class:`FloorplanError` naming the first violated invariant."""
    rooms = f.rooms
    if not rooms:
        raise FloorplanError("room count: a floorplan needs at least one room")
    ids = [r.id for r in rooms]
    if len(set(ids)) != len(ids):
        raise FloorplanError("room ids: ids must be distinct")
    for r in rooms:
        if not (r.x1 < r.x2 and r.y1 < r.y2):
            raise FloorplanError(f"room {r.id}: needs x1 < x2 and y1 < y2")
    X1, Y1, X2, Y2 = f.bbox
    if sum(r.area for r in rooms) != (X2 - X1) * (Y2 - Y1):
        raise FloorplanError("tiling: room areas do not sum to the bounding area")
    for a, b in combinations(rooms, 2):
        if a.x1 < b.x2 and b.x1 < a.x2 and a.y1 < b.y2 and b.y1 < a.y2:
            raise FloorplanError(f"tiling: rooms {a.id} and {b.id} overlap")
    corners: dict[tuple[int, int], int] = {}
    for r in rooms:
        for pt in ((r.x1, r.y1), (r.x2, r.y1), (r.x1, r.y2), (r.x2, r.y2)):
            corners[pt] = corners.get(pt, 0) + 1
    for (x, y), c in corners.items():
        if c >= 4 and X1 < x < X2 and Y1 < y < Y2:
            raise FloorplanError(f"cross junction: four rooms meet at ({x}, {y})")


def single_room(rid: int = 1) -> MosaicFloorplan:
    return MosaicFloorplan([Room(rid, 0, 0, 1, 1)])


def compact(f: MosaicFloorplan) -> MosaicFloorplan:
    """Drop unused grid lines so coordinates become 0..W and 0..H."""
    xs = sorted({c for r in f.rooms for c in (r.x1, r.x2)})
    ys = sorted({c for r in f.rooms for c in (r.y1, r.y2)})
    xi = {x: i for i, x in enumerate(xs)}
    yi = {y: i for i, y in enumerate(ys)}
    return MosaicFloorplan(
        [Room(r.id, xi[r.x1], yi[r.y1], xi[r.x2], yi[r.y2]) for r in f.rooms], check=False
    )


def relabel(f: MosaicFloorplan, mapping: dict[int, int]) -> MosaicFloorplan:
    return MosaicFloorplan(
        [Room(mapping[r.id], r.x1, r.y1, r.x2, r.y2) for r in f.rooms], check=False
    )


# --- corner deletions -------------------------------------------------------

def _room_at(live: dict, x: int, y: int, up: bool):
    """Room holding the unit cell just right of x and just below (or above) y."""
    for rid, (x1, y1, x2, y2) in live.items():
        if x1 <= x < x2 and ((y1 <= y < y2) if not up else (y1 < y <= y2)):
            return rid, (x1, y1, x2, y2)
    raise FloorplanError(f"tiling: no room next to ({x}, {y})")


def _delete_top_left(live: dict, bbox) -> int:
    X1, Y1, X2, Y2 = bbox
    rid = next(i for i, r in live.items() if r[0] == X1 and r[1] == Y1)
    bx1, by1, bx2, by2 = live.pop(rid)
    if bx2 == X2:
        shift_bottom = True
    elif by2 == Y2:
        shift_bottom = False
    else:
        _, (rx1, ry1, _, _) = _room_at(live, bx2, by2, up=False)
        # the room below-right of the corner spans across it horizontally: '⊥'
        shift_bottom = not rx1 < bx2
    if shift_bottom:
        for i, (x1, y1, x2, y2) in list(live.items()):
            if y1 == by2 and x1 >= bx1 and x2 <= bx2:
                live[i] = (x1, Y1, x2, y2)
    else:
        for i, (x1, y1, x2, y2) in list(live.items()):
            if x1 == bx2 and y1 >= by1 and y2 <= by2:
                live[i] = (X1, y1, x2, y2)
    return rid


def _delete_bottom_left(live: dict, bbox) -> int:
    X1, Y1, X2, Y2 = bbox
    rid = next(i for i, r in live.items() if r[0] == X1 and r[3] == Y2)
    bx1, by1, bx2, by2 = live.pop(rid)
    if bx2 == X2:
        shift_top = True
    elif by1 == Y1:
        shift_top = False
    else:
        _, (rx1, _, _, _) = _room_at(live, bx2, by1, up=True)
        shift_top = not rx1 < bx2
    if shift_top:
        for i, (x1, y1, x2, y2) in list(live.items()):
            if y2 == by1 and x1 >= bx1 and x2 <= bx2:
                live[i] = (x1, y1, x2, Y2)
    else:
        for i, (x1, y1, x2, y2) in list(live.items()):
            if x1 == bx2 and y1 >= by1 and y2 <= by2:
                live[i] = (X1, y1, x2, y2)
    return rid


def _live(f: MosaicFloorplan) -> dict:
    return {r.id: (r.x1, r.y1, r.x2, r.y2) for r in f.rooms}


def deletion_order(f: MosaicFloorplan, corner: str = "top_left") -> list[int]:
    """Room ids in iterated corner-deletion order."""
    step = {"top_left": _delete_top_left, "bottom_left": _delete_bottom_left}[corner]
    live = _live(f)
    bbox = f.bbox
    order = []
    while len(live) > 1:
        order.append(step(live, bbox))
    order.extend(live)
    return order


def _corner_delete(f: MosaicFloorplan, step) -> MosaicFloorplan:
    if f.n <= 1:
        raise FloorplanError("room count: deletion needs n > 1")
    live = _live(f)
    step(live, f.bbox)
    ids = sorted(live)
    rename = {old: new for new, old in enumerate(ids, 1)}
    rooms = [Room(rename[i], *live[i]) for i in ids]
    return compact(MosaicFloorplan(rooms, check=False))


def top_left_delete(f: MosaicFloorplan) -> MosaicFloorplan:
    """Remove the top-left room; remaining ids are renumbered 1..n-1 in order."""
    return _corner_delete(f, _delete_top_left)


def bottom_left_delete(f: MosaicFloorplan) -> MosaicFloorplan:
    return _corner_delete(f, _delete_bottom_left)


def fp2bp(f: MosaicFloorplan) -> Permutation:
    """Abe-label: top-left deletion labels read in bottom-left deletion order."""
    label = {rid: i for i, rid in enumerate(deletion_order(f, "top_left"), 1)}
    return Permutation(label[rid] for rid in deletion_order(f, "bottom_left"))


def abe_labelled(f: MosaicFloorplan) -> MosaicFloorplan:
    """Copy of ``f`` whose room ids are the top-left deletion labels."""
    label = {rid: i for i, rid in enumerate(deletion_order(f, "top_left"), 1)}
    return relabel(f, label)


def equivalent(f: MosaicFloorplan, g: MosaicFloorplan) -> bool:
    return f.n == g.n and fp2bp(f) == fp2bp(g)


# --- insertion (inverse of top-left deletion) --------------------------------

def insertion_choices(f: MosaicFloorplan) -> list[tuple[str, int]]:
    """Every valid ``(orientation, j)`` descriptor for :func:`insert_top_left`.

    ``j`` counts the wall junctions the new room's far edge passes, so the new
    room sits over (or beside) the first ``j + 1`` rooms along that wall.
    """
    X1, Y1, _, _ = f.bbox
    top = sum(1 for r in f.rooms if r.y1 == Y1)
    left = sum(1 for r in f.rooms if r.x1 == X1)
    return [("top", j) for j in range(top)] + [("left", j) for j in range(left)]


def insert_top_left(f: MosaicFloorplan, choice: tuple[str, int]) -> MosaicFloorplan:
    """Insert a new top-left room (id n+1); top-left deletion undoes it."""
    orientation, j = choice
    X1, Y1, _, _ = f.bbox
    new_id = max(r.id for r in f.rooms) + 1
    if orientation == "top":
        wall = sorted((r for r in f.rooms if r.y1 == Y1), key=lambda r: r.x1)
        if not 0 <= j < len(wall):
            raise ValueError(f"invalid descriptor {choice!r}: top wall has {len(wall)} rooms")
        captured = {r.id for r in wall[: j + 1]}
        far = wall[j].x2
        rooms = []
        for r in f.rooms:
            y1 = r.y1 + 1 if r.y1 > Y1 or r.id in captured else r.y1
            rooms.append(Room(r.id, r.x1, y1, r.x2, r.y2 + 1))
        rooms.append(Room(new_id, X1, Y1, far, Y1 + 1))
    elif orientation == "left":
        wall = sorted((r for r in f.rooms if r.x1 == X1), key=lambda r: r.y1)
        if not 0 <= j < len(wall):
            raise ValueError(f"invalid descriptor {choice!r}: left wall has {len(wall)} rooms")
        captured = {r.id for r in wall[: j + 1]}
        far = wall[j].y2
        rooms = []
        for r in f.rooms:
            x1 = r.x1 + 1 if r.x1 > X1 or r.id in captured else r.x1
            rooms.append(Room(r.id, x1, r.y1, r.x2 + 1, r.y2))
        rooms.append(Room(new_id, X1, Y1, X1 + 1, far))
    else:
        raise ValueError(f"invalid descriptor {choice!r}: orientation must be 'top' or 'left'")
    return MosaicFloorplan(rooms, check=False)


@lru_cache(maxsize=16)
def _mosaic_level(n: int) -> tuple[MosaicFloorplan, ...]:
    if n == 1:
        return (single_room(),)
    seen: dict[Permutation, MosaicFloorplan] = {}
    for f in _mosaic_level(n - 1):
        for choice in insertion_choices(f):
            g = insert_top_left(f, choice)
            key = fp2bp(g)
            if key in seen:
                raise AssertionError(f"insertion produced {key.compact()} twice")
            seen[key] = abe_labelled(g)
    return tuple(seen[k] for k in sorted(seen))


def enumerate_mosaic(n: int) -> list[MosaicFloorplan]:
    """One floorplan per equivalence class with ``n`` rooms, sorted by Abe-label.

    Room ids are the top-left deletion labels.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    return list(_mosaic_level(n))


# --- rigid transforms ---------------------------------------------------------

def mirror_h(f: MosaicFloorplan) -> MosaicFloorplan:
    """Reflect across the horizontal axis (above and below swap)."""
    _, Y1, _, Y2 = f.bbox
    s = Y1 + Y2
    return MosaicFloorplan([Room(r.id, r.x1, s - r.y2, r.x2, s - r.y1) for r in f.rooms], check=False)


def mirror_v(f: MosaicFloorplan) -> MosaicFloorplan:
    """Reflect across the vertical axis (left and right swap)."""
    X1, _, X2, _ = f.bbox
    s = X1 + X2
    return MosaicFloorplan([Room(r.id, s - r.x2, r.y1, s - r.x1, r.y2) for r in f.rooms], check=False)


def rotate_cw(f: MosaicFloorplan) -> MosaicFloorplan:
    """Quarter turn clockwise as seen on screen (y down): top edge becomes right edge."""
    X1, Y1, _, Y2 = f.bbox
    return MosaicFloorplan(
        [Room(r.id, Y2 - r.y2, r.x1 - X1, Y2 - r.y1, r.x2 - X1) for r in f.rooms], check=False
    )


TRANSFORMS = {"mirror_h": mirror_h, "mirror_v": mirror_v, "rotate_cw": rotate_cw}


def transform(f: MosaicFloorplan, op: str) -> MosaicFloorplan:
    try:
        fn = TRANSFORMS[op.replace("-", "_")]
    except KeyError:
        raise ValueError(f"unknown transform {op!r}; expected one of {', '.join(TRANSFORMS)}") from None
    return fn(f)


# --- segments ----------------------------------------------------------------

def _merge(intervals: Sequence[tuple[int, int]]) -> list[tuple[int, int]]:
    out: list[list[int]] = []
    for a, b in sorted(intervals):
        if out and a <= out[-1][1]:
            out[-1][1] = max(out[-1][1], b)
        else:
            out.append([a, b])
    return [(a, b) for a, b in out]


def maximal_segments(f: MosaicFloorplan) -> tuple[dict, dict]:
    """Maximal horizontal and vertical segments.

    Returns two dicts ``{line coordinate: [(start, end), ...]}``: horizontal
    segments keyed by y, vertical segments keyed by x.
    """
    h: dict[int, list] = {}
    v: dict[int, list] = {}
    for r in f.rooms:
        h.setdefault(r.y1, []).append((r.x1, r.x2))
        h.setdefault(r.y2, []).append((r.x1, r.x2))
        v.setdefault(r.x1, []).append((r.y1, r.y2))
        v.setdefault(r.x2, []).append((r.y1, r.y2))
    return ({y: _merge(iv) for y, iv in h.items()}, {x: _merge(iv) for x, iv in v.items()})


def room_segments(f: MosaicFloorplan) -> tuple[list, dict[int, dict[str, int]]]:
    """Index the maximal segments and map each room to its four supports.

    Returns ``(segments, supports)`` where ``segments[i]`` is
    ``(orientation, line, start, end)`` and ``supports[room][direction]`` is a
    segment index.
    """
    h, v = maximal_segments(f)
    segments = []
    index = {}
    for y in sorted(h):
        for a, b in h[y]:
            index[("H", y, a, b)] = len(segments)
            segments.append(("H", y, a, b))
    for x in sorted(v):
        for a, b in v[x]:
            index[("V", x, a, b)] = len(segments)
            segments.append(("V", x, a, b))

    def find(kind, line, a, b):
        table = h if kind == "H" else v
        for s, e in table[line]:
            if s <= a and b <= e:
                return index[(kind, line, s, e)]
        raise FloorplanError("segment lookup failed")

    supports = {}
    for r in f.rooms:
        supports[r.id] = {
            "top": find("H", r.y1, r.x1, r.x2),
            "bottom": find("H", r.y2, r.x1, r.x2),
            "left": find("V", r.x1, r.y1, r.y2),
            "right": find("V", r.x2, r.y1, r.y2),
        }
    return segments, supports


def seg_room_relations(f: MosaicFloorplan) -> set[SegRoomRelation]:
    _, supports = room_segments(f)
    return {
        SegRoomRelation(seg, rid, d)
        for rid, sides in supports.items()
        for d, seg in sides.items()
    }


def relation_graph(f: MosaicFloorplan):
    import networkx as nx

    g = nx.Graph()
    for rel in seg_room_relations(f):
        g.add_node(("r", rel.room), kind="room")
        g.add_node(("s", rel.segment), kind="segment")
        g.add_edge(("r", rel.room), ("s", rel.segment), d=rel.direction)
    return g


def relations_isomorphic(f: MosaicFloorplan, g: MosaicFloorplan) -> bool:
    """True iff some relabelling of rooms and segments maps f's seg-room
    relations onto g's. Independent of :func:`fp2bp`."""
    import networkx as nx

    if f.n != g.n:
        return False
    return nx.is_isomorphic(
        relation_graph(f),
        relation_graph(g),
        node_match=lambda a, b: a["kind"] == b["kind"],
        edge_match=lambda a, b: a["d"] == b["d"],
    )


# --- reference geometries ----------------------------------------------------

def vertical_split() -> MosaicFloorplan:
    return MosaicFloorplan([Room(1, 0, 0, 1, 1), Room(2, 1, 0, 2, 1)])


def horizontal_split() -> MosaicFloorplan:
    return MosaicFloorplan([Room(1, 0, 0, 1, 1), Room(2, 0, 1, 1, 2)])


def right_wheel() -> MosaicFloorplan:
    """Pinwheel around a central room; its Abe-label is 41352."""
    return MosaicFloorplan([
        Room(1, 0, 0, 1, 2),
        Room(2, 1, 0, 3, 1),
        Room(3, 1, 1, 2, 2),
        Room(4, 0, 2, 2, 3),
        Room(5, 2, 1, 3, 3),
    ])


def left_wheel() -> MosaicFloorplan:
    """Mirror image of :func:`right_wheel`; Abe-label 25314."""
    return abe_labelled(mirror_v(right_wheel()))
