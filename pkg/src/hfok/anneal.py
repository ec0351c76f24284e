"""Normalized polish expressions of order k and simulated annealing over them.

An expression is the post-order token string of a skewed generating tree.
Operands are module ids (``int``); operators are simple Baxter permutations
(:class:`Permutation`), written in brackets in text form: ``1 2 3 4 5 [41352]``.
"""

from __future__ import annotations

import json
import math
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from functools import lru_cache
from typing import Iterable, Sequence, Union

from .floorplan import room_segments
from .gentree import (
    MAX_CATALOG_LENGTH,
    Internal,
    Leaf,
    Node,
    UniquelyHfoCatalog,
    build_catalog,
    leaves,
    tree_to_floorplan,
)
from .perm import Permutation, is_baxter, is_simple

Token = Union[int, Permutation]

H12 = Permutation((1, 2))
V21 = Permutation((2, 1))
SLICING = (H12, V21)
WHEEL = Permutation((4, 1, 3, 5, 2))

MOVE_KINDS = ("M1a", "M1b", "M1c", "M2a", "M2b", "M3", "M4")


class InvalidMove(ValueError):
    """The move does not apply at this site or breaks normalization."""


def is_operator(tok: Token) -> bool:
    return isinstance(tok, Permutation)


def is_slicing(tok: Token) -> bool:
    return isinstance(tok, Permutation) and len(tok) == 2


def complement(tok: Permutation) -> Permutation:
    return V21 if tok == H12 else H12


def format_token(tok: Token) -> str:
    return f"[{tok.compact()}]" if is_operator(tok) else str(tok)


def parse_tokens(text: str) -> tuple[Token, ...]:
    out: list[Token] = []
    for raw in text.replace("[", " [").replace("]", "] ").split():
        if raw.startswith("["):
            if not raw.endswith("]") or len(raw) < 3:
                raise ValueError(f"malformed operator token {raw!r}")
            out.append(Permutation.from_compact(raw[1:-1]))
        else:
            try:
                out.append(int(raw))
            except ValueError:
                raise ValueError(f"malformed operand token {raw!r}") from None
    return tuple(out)


@dataclass(frozen=True)
class Validation:
    ok: bool
    reason: str = "ok"

    def __bool__(self) -> bool:
        return self.ok


def validate_npe(tokens: Sequence[Token], k: int) -> Validation:
    """Check operand uniqueness, operator labels, prefix balance and adjacency."""
    operands = [t for t in tokens if not is_operator(t)]
    if not operands:
        return Validation(False, "operands: expression has no operands")
    if sorted(operands) != list(range(1, len(operands) + 1)):
        return Validation(False, "operands: each of 1..n must appear exactly once")
    for t in tokens:
        if is_operator(t):
            if not 2 <= len(t) <= k:
                return Validation(False, f"operator [{t.compact()}]: length must be in 2..{k}")
            if not (is_simple(t) and is_baxter(t)):
                return Validation(False, f"operator [{t.compact()}]: must be simple and Baxter")
    weight = 0
    count = 0
    for i, t in enumerate(tokens, 1):
        if is_operator(t):
            weight += len(t) - 1
        else:
            count += 1
        if not weight < count:
            return Validation(False, f"prefix balance: fails at position {i} ({weight} >= {count})")
    if weight != count - 1:
        return Validation(False, f"balance: operators absorb {weight}, need {count - 1}")
    for i, (a, b) in enumerate(zip(tokens, tokens[1:]), 1):
        if is_slicing(a) and a == b:
            return Validation(False, f"adjacency: [{a.compact()}][{b.compact()}] at position {i}")
    return Validation(True)


@dataclass(frozen=True)
class Npe:
    tokens: tuple[Token, ...]
    k: int

    def __post_init__(self):
        object.__setattr__(self, "tokens", tuple(self.tokens))

    @classmethod
    def parse(cls, text: str, k: int, *, check: bool = True) -> "Npe":
        e = cls(parse_tokens(text), k)
        if check:
            v = validate_npe(e.tokens, k)
            if not v:
                raise ValueError(f"invalid expression: {v.reason}")
        return e

    @property
    def n(self) -> int:
        return sum(1 for t in self.tokens if not is_operator(t))

    def operands(self) -> list[int]:
        return [t for t in self.tokens if not is_operator(t)]

    def __str__(self) -> str:
        return " ".join(format_token(t) for t in self.tokens)


def npe_from_tree(t: Node, k: int | None = None) -> Npe:
    out: list[Token] = []

    def walk(node: Node) -> None:
        if isinstance(node, Leaf):
            out.append(node.label)
            return
        for c in node.children:
            walk(c)
        out.append(node.sigma)

    walk(t)
    if k is None:
        k = max([2] + [len(x) for x in out if is_operator(x)])
    return Npe(tuple(out), k)


def tree_from_npe(e: Npe) -> Node:
    v = validate_npe(e.tokens, e.k)
    if not v:
        raise ValueError(f"invalid expression: {v.reason}")
    stack: list[Node] = []
    for t in e.tokens:
        if is_operator(t):
            kids = tuple(stack[-len(t):])
            del stack[-len(t):]
            stack.append(Internal(t, kids))
        else:
            stack.append(Leaf(t))
    return stack[0]


# --- structure ----------------------------------------------------------------

@dataclass
class _Structure:
    start: list[int]  # first token index of the subtree rooted at each index
    children: dict[int, list[int]]
    sizes: list[int]  # stack depth before each index


def _structure(tokens: Sequence[Token]) -> _Structure:
    start = [0] * len(tokens)
    children: dict[int, list[int]] = {}
    sizes = [0] * (len(tokens) + 1)
    stack: list[int] = []
    for i, t in enumerate(tokens):
        sizes[i] = len(stack)
        if is_operator(t):
            kids = stack[-len(t):]
            del stack[-len(t):]
            children[i] = kids
            start[i] = start[kids[0]]
        else:
            start[i] = i
        stack.append(i)
    sizes[len(tokens)] = len(stack)
    return _Structure(start, children, sizes)


def _frontier(st: _Structure, root: int, region: frozenset[int]) -> list[int]:
    out: list[int] = []

    def walk(x: int) -> None:
        for c in st.children[x]:
            if c in region:
                walk(c)
            else:
                out.append(c)

    walk(root)
    return out


def _regions(st: _Structure, tokens: Sequence[Token], root: int, kmax: int, memo: dict) -> list:
    """Connected top-subtrees at ``root`` as (nodes, frontier) with frontier <= kmax."""
    if root in memo:
        return memo[root]
    results = [(frozenset((root,)), ())]
    kids = st.children[root]
    for pos, c in enumerate(kids):
        rest = len(kids) - pos - 1
        options = [(frozenset(), (c,))]
        if is_operator(tokens[c]):
            options += _regions(st, tokens, c, kmax, memo)
        new = []
        for nodes, fr in results:
            for n2, f2 in options:
                if len(fr) + len(f2) + rest <= kmax:
                    new.append((nodes | n2, fr + f2))
        results = new
    memo[root] = results
    return results


# --- moves --------------------------------------------------------------------

@dataclass(frozen=True)
class Move:
    """One neighbourhood move; token indices refer to the expression it is applied to.

    ``M1a``: swap operands at ``i`` and ``j`` (consecutive in operand order).
    ``M1b`` / ``M1c``: swap tokens ``i`` and ``i + 1``.
    ``M2a``: complement the maximal slicing chain ``i..j``.
    ``M2b``: replace operator ``i`` by ``sigma`` of the same length.
    ``M3``: collapse the operator ``region`` rooted at ``i`` into ``sigma``.
    ``M4``: expand operator ``i`` by ``template`` (None selects the default).
    """

    kind: str
    i: int
    j: int = -1
    sigma: Permutation | None = None
    region: tuple[int, ...] = ()
    template: Node | None = None

    def __str__(self) -> str:
        parts = [self.kind, f"i={self.i}"]
        if self.j >= 0:
            parts.append(f"j={self.j}")
        if self.sigma is not None:
            parts.append(f"sigma={self.sigma.compact()}")
        if self.region:
            parts.append(f"region={list(self.region)}")
        if self.template is not None:
            parts.append(f"template={self.template}")
        return " ".join(parts)


@lru_cache(maxsize=None)
def catalog_for(k: int) -> UniquelyHfoCatalog:
    return build_catalog(max(2, min(k, MAX_CATALOG_LENGTH)))


def _right_comb(ops: Sequence[Permutation], last: Node, first_leaf: int) -> Node:
    """``ops[0]`` is the root; leaf ``first_leaf + d`` hangs at depth ``d``."""
    node = last
    for d in range(len(ops) - 1, -1, -1):
        node = Internal(ops[d], (Leaf(first_leaf + d), node))
    return node


def _alternating(top: Permutation, count: int) -> list[Permutation]:
    out = [top]
    for _ in range(count - 1):
        out.append(complement(out[-1]))
    return out


def default_template(j: int, last_root: Token | None, next_token: Token | None,
                     before_last_root: Token | None = None) -> Node:
    """Slicing expansion used by M4 for an operator of length ``j``.

    ``last_root`` is the root token of the last child, ``next_token`` the token
    right after the operator and ``before_last_root`` the root of child j-1.
    Only slicing values among them constrain the choice.
    """
    x = last_root if is_slicing(last_root) else None
    y = next_token if is_slicing(next_token) else None
    if j > 5:
        top = complement(y) if y is not None else H12
        wheel = Internal(WHEEL, tuple(Leaf(m) for m in range(j - 4, j + 1)))
        return _right_comb(_alternating(top, j - 5), wheel, 1)
    if j != 5:
        raise ValueError(f"no default expansion for an operator of length {j}")
    for top in (H12, V21):
        ops = _alternating(top, 4)
        if ops[-1] != x and ops[0] != y:
            return _right_comb(ops[:-1], Internal(ops[-1], (Leaf(4), Leaf(5))), 1)
    # x == y: root over (comb of 1..4, 5) with the root differing from both
    x4 = before_last_root if is_slicing(before_last_root) else None
    bottom = complement(x4) if x4 is not None else H12
    inner_ops = _alternating(bottom, 3)[::-1]
    inner = _right_comb(inner_ops[:-1], Internal(inner_ops[-1], (Leaf(3), Leaf(4))), 1)
    return Internal(complement(x), (inner, Leaf(5)))


def _check_template(t: Node, j: int, k: int) -> None:
    if isinstance(t, Leaf) or leaves(t) != list(range(1, j + 1)):
        raise InvalidMove(f"template leaves must be 1..{j} in order")

    def walk(node: Node) -> None:
        if isinstance(node, Internal):
            if len(node.sigma) > k or len(node.children) != len(node.sigma):
                raise InvalidMove("template node arity is invalid")
            for c in node.children:
                walk(c)

    walk(t)


def _template_count(t: Node) -> int:
    return 0 if isinstance(t, Leaf) else 1 + sum(_template_count(c) for c in t.children)


def _apply(e: Npe, m: Move) -> tuple[Npe, Move]:
    """Apply ``m``; return the new expression and a move that undoes it."""
    toks = list(e.tokens)
    n_tok = len(toks)
    if not 0 <= m.i < n_tok:
        raise InvalidMove(f"{m.kind}: index {m.i} out of range")
    kind = m.kind
    inverse: Move
    if kind == "M1a":
        i, j = m.i, m.j
        if not (0 <= j < n_tok) or is_operator(toks[i]) or is_operator(toks[j]) or j <= i:
            raise InvalidMove("M1a: needs two operands i < j")
        if any(not is_operator(t) for t in toks[i + 1:j]):
            raise InvalidMove("M1a: operands are not consecutive")
        toks[i], toks[j] = toks[j], toks[i]
        inverse = m
    elif kind in ("M1b", "M1c"):
        i = m.i
        if i + 1 >= n_tok:
            raise InvalidMove(f"{kind}: no token after {i}")
        a, b = toks[i], toks[i + 1]
        if kind == "M1b" and is_operator(a) == is_operator(b):
            raise InvalidMove("M1b: needs one operand and one operator")
        if kind == "M1c":
            if not (is_operator(a) and is_operator(b)):
                raise InvalidMove("M1c: needs two operators")
            if is_slicing(a) and is_slicing(b):
                raise InvalidMove("M1c: at most one operator may be slicing")
            if a == b:
                raise InvalidMove("M1c: operators are equal")
        toks[i], toks[i + 1] = b, a
        inverse = m
    elif kind == "M2a":
        i, j = m.i, m.j
        if not (i <= j < n_tok) or not all(is_slicing(t) for t in toks[i:j + 1]):
            raise InvalidMove("M2a: i..j must be slicing operators")
        if (i > 0 and is_slicing(toks[i - 1])) or (j + 1 < n_tok and is_slicing(toks[j + 1])):
            raise InvalidMove("M2a: chain is not maximal")
        for x in range(i, j + 1):
            toks[x] = complement(toks[x])
        inverse = m
    elif kind == "M2b":
        old = toks[m.i]
        if not is_operator(old) or len(old) < 4:
            raise InvalidMove("M2b: needs a non-slicing operator")
        if m.sigma is None or len(m.sigma) != len(old) or m.sigma == old:
            raise InvalidMove("M2b: replacement must differ and have the same length")
        toks[m.i] = Permutation(m.sigma)
        inverse = Move("M2b", m.i, sigma=old)
    elif kind == "M3":
        if not is_operator(toks[m.i]) or m.sigma is None:
            raise InvalidMove("M3: needs an operator root and a label")
        st = _structure(toks)
        region = frozenset(m.region)
        if m.i not in region or len(region) < 2:
            raise InvalidMove("M3: region must contain the root and another operator")
        # region must be a connected top-subtree at i
        seen = {m.i}
        todo = [m.i]
        while todo:
            x = todo.pop()
            for c in st.children[x]:
                if c in region:
                    seen.add(c)
                    todo.append(c)
        if seen != region:
            raise InvalidMove("M3: region is not connected below its root")
        front = _frontier(st, m.i, region)
        if len(front) != len(m.sigma):
            raise InvalidMove(f"M3: region has {len(front)} parts, label has length {len(m.sigma)}")
        index = {c: pos + 1 for pos, c in enumerate(front)}

        def shape(x: int) -> Node:
            if x in index:
                return Leaf(index[x])
            return Internal(toks[x], tuple(shape(c) for c in st.children[x]))

        template = shape(m.i)
        s = st.start[m.i]
        body: list[Token] = []
        for c in front:
            body.extend(toks[st.start[c]:c + 1])
        toks = toks[:s] + body + [Permutation(m.sigma)] + toks[m.i + 1:]
        inverse = Move("M4", s + len(body), template=template)
    elif kind == "M4":
        old = toks[m.i]
        if not is_operator(old) or len(old) < 4:
            raise InvalidMove("M4: needs a non-slicing operator")
        st = _structure(toks)
        kids = st.children[m.i]
        template = m.template
        if template is None:
            nxt = toks[m.i + 1] if m.i + 1 < n_tok else None
            template = default_template(len(old), toks[kids[-1]], nxt, toks[kids[-2]])
        _check_template(template, len(old), e.k)
        s = st.start[m.i]
        body: list[Token] = []
        region: list[int] = []

        def emit(node: Node) -> None:
            if isinstance(node, Leaf):
                c = kids[node.label - 1]
                body.extend(toks[st.start[c]:c + 1])
                return
            for ch in node.children:
                emit(ch)
            region.append(s + len(body))
            body.append(node.sigma)

        emit(template)
        toks = toks[:s] + body + toks[m.i + 1:]
        inverse = Move("M3", region[-1], sigma=old, region=tuple(sorted(region)))
    else:
        raise InvalidMove(f"unknown move kind {kind!r}")
    v = validate_npe(toks, e.k)
    if not v:
        raise InvalidMove(f"{kind}: result breaks normalization ({v.reason})")
    return Npe(tuple(toks), e.k), inverse


def apply_move(e: Npe, m: Move) -> Npe:
    return _apply(e, m)[0]


def inverse_move(e: Npe, m: Move) -> Move:
    """A move that takes ``apply_move(e, m)`` back to ``e``."""
    return _apply(e, m)[1]


def _swap_ok(toks: Sequence[Token], i: int, sizes: Sequence[int]) -> bool:
    a, b = toks[i], toks[i + 1]
    s = sizes[i]
    if is_operator(b):
        if s < len(b):
            return False
        if is_operator(a) and s - len(b) + 1 < len(a):
            return False
    new = list(toks[max(0, i - 1):i + 3])
    off = i - max(0, i - 1)
    new[off], new[off + 1] = b, a
    return not any(is_slicing(x) and x == y for x, y in zip(new, new[1:]))


def valid_moves(e: Npe, kind: str, catalog: UniquelyHfoCatalog | None = None) -> list[Move]:
    """Every site at which ``kind`` applies to ``e`` and keeps it normalized."""
    toks = e.tokens
    n_tok = len(toks)
    if catalog is None:
        catalog = catalog_for(e.k)
    out: list[Move] = []
    if kind == "M1a":
        ops = [i for i, t in enumerate(toks) if not is_operator(t)]
        out = [Move("M1a", a, b) for a, b in zip(ops, ops[1:])]
    elif kind in ("M1b", "M1c"):
        st = _structure(toks)
        for i in range(n_tok - 1):
            a, b = toks[i], toks[i + 1]
            if kind == "M1b" and is_operator(a) == is_operator(b):
                continue
            if kind == "M1c" and not (
                is_operator(a) and is_operator(b) and not (is_slicing(a) and is_slicing(b)) and a != b
            ):
                continue
            if _swap_ok(toks, i, st.sizes):
                out.append(Move(kind, i))
    elif kind == "M2a":
        i = 0
        while i < n_tok:
            if is_slicing(toks[i]):
                j = i
                while j + 1 < n_tok and is_slicing(toks[j + 1]):
                    j += 1
                out.append(Move("M2a", i, j))
                i = j + 1
            else:
                i += 1
    elif kind == "M2b":
        for i, t in enumerate(toks):
            if is_operator(t) and len(t) >= 4:
                out.extend(Move("M2b", i, sigma=s) for s, _ in catalog.at(len(t)) if s != t)
    elif kind == "M3":
        st = _structure(toks)
        kmax = min(e.k, catalog.max_l)
        memo: dict = {}
        for r in st.children:
            for nodes, front in _regions(st, toks, r, kmax, memo):
                j = len(front)
                if len(nodes) >= 2 and j >= 4:
                    region = tuple(sorted(nodes))
                    out.extend(Move("M3", r, sigma=s, region=region) for s, _ in catalog.at(j))
    elif kind == "M4":
        out = [Move("M4", i) for i, t in enumerate(toks) if is_operator(t) and len(t) >= 4]
    else:
        raise ValueError(f"unknown move kind {kind!r}")
    return out


def random_move(e: Npe, rng: random.Random, catalog: UniquelyHfoCatalog | None = None) -> Move | None:
    """Uniform move class, then a uniform valid site; None if nothing applies."""
    kinds = list(MOVE_KINDS)
    while kinds:
        kind = rng.choice(kinds)
        sites = valid_moves(e, kind, catalog)
        if sites:
            return rng.choice(sites)
        kinds.remove(kind)
    return None


# --- random instances ---------------------------------------------------------

def random_tree(labels: Sequence[int], k: int, rng: random.Random,
                catalog: UniquelyHfoCatalog | None = None, forbid: Permutation | None = None) -> Node:
    """A random skewed tree of order k over ``labels`` in that leaf order."""
    if catalog is None:
        catalog = catalog_for(k)
    n = len(labels)
    if n == 1:
        return Leaf(labels[0])
    arities = [2] + [l for l in range(4, min(k, n, catalog.max_l) + 1) if catalog.at(l)]
    j = rng.choice(arities)
    if j == 2:
        choices = [s for s in SLICING if s != forbid]
        sigma = rng.choice(choices)
    else:
        sigma = rng.choice([s for s, _ in catalog.at(j)])
    cuts = sorted(rng.sample(range(1, n), j - 1))
    bounds = [0, *cuts, n]
    kids = []
    for c in range(j):
        part = labels[bounds[c]:bounds[c + 1]]
        last = c == j - 1
        kids.append(random_tree(part, k, rng, catalog, sigma if last and j == 2 else None))
    return Internal(sigma, tuple(kids))


def random_npe(n: int, k: int, rng: random.Random) -> Npe:
    labels = list(range(1, n + 1))
    rng.shuffle(labels)
    return npe_from_tree(random_tree(labels, k, rng), k)


# --- cost ---------------------------------------------------------------------

@dataclass(frozen=True)
class ModuleSpec:
    id: int
    w: float
    h: float

    def __post_init__(self):
        if not (self.w > 0 and self.h > 0):
            raise ValueError(f"module {self.id}: width and height must be positive")


@dataclass(frozen=True)
class Placement:
    id: int
    x: float
    y: float
    w: float
    h: float


@dataclass(frozen=True)
class Cost:
    area: float
    width: float
    height: float
    placement: tuple[Placement, ...]


def load_modules(doc) -> list[ModuleSpec]:
    if not isinstance(doc, list) or not doc:
        raise ValueError("modules: expected a non-empty JSON list")
    try:
        mods = [ModuleSpec(int(d["id"]), float(d["w"]), float(d["h"])) for d in doc]
    except (KeyError, TypeError) as exc:
        raise ValueError(f"modules: malformed entry ({exc})") from None
    if sorted(m.id for m in mods) != list(range(1, len(mods) + 1)):
        raise ValueError("modules: ids must be exactly 1..n")
    return sorted(mods, key=lambda m: m.id)


def _longest(segs: list[tuple], edges: dict[int, list[tuple[int, float]]], kind: str) -> dict[int, float]:
    order = sorted((s for s, seg in enumerate(segs) if seg[0] == kind), key=lambda s: segs[s][1])
    pos = {s: 0.0 for s in order}
    for s in order:
        for t, w in edges.get(s, ()):
            if pos[s] + w > pos[t]:
                pos[t] = pos[s] + w
    return pos


def evaluate_cost(e: Npe, modules: Sequence[ModuleSpec]) -> Cost:
    """Pack modules into the floorplan topology by longest-path compaction."""
    by_id = {m.id: m for m in modules}
    if sorted(by_id) != sorted(e.operands()):
        raise ValueError("operand ids must match module ids")
    plan = tree_to_floorplan(tree_from_npe(e), catalog_for(max(2, e.k)))
    segs, supports = room_segments(plan)
    hor: dict[int, list] = {}
    ver: dict[int, list] = {}
    for rid, sup in supports.items():
        m = by_id[rid]
        ver.setdefault(sup["left"], []).append((sup["right"], m.w))
        hor.setdefault(sup["top"], []).append((sup["bottom"], m.h))
    px = _longest(segs, ver, "V")
    py = _longest(segs, hor, "H")
    width = max(px.values())
    height = max(py.values())
    placement = tuple(
        Placement(rid, px[sup["left"]], py[sup["top"]], by_id[rid].w, by_id[rid].h)
        for rid, sup in sorted(supports.items())
    )
    return Cost(width * height, width, height, placement)


# --- annealing ----------------------------------------------------------------

@dataclass(frozen=True)
class SaConfig:
    """Annealing schedule. ``None`` fields are derived at run time:
    the initial temperature by calibration, moves per temperature as
    ``30 * n`` and the stop temperature as ``1e-3`` of the initial one."""

    seed: int = 0
    initial_temperature: float | None = None
    cooling_ratio: float = 0.85
    moves_per_temperature: int | None = None
    stop_temperature: float | None = None
    calibration_moves: int = 100
    target_acceptance: float = 0.9

    def __post_init__(self):
        if not 0 < self.cooling_ratio < 1:
            raise ValueError("cooling_ratio must be in (0, 1)")
        for name in ("initial_temperature", "moves_per_temperature", "stop_temperature"):
            v = getattr(self, name)
            if v is not None and v <= 0:
                raise ValueError(f"{name} must be positive")
        if not 0 < self.target_acceptance < 1:
            raise ValueError("target_acceptance must be in (0, 1)")


@dataclass
class AnnealResult:
    best: Npe
    area: float
    placement: tuple[Placement, ...]
    initial: Npe
    initial_area: float
    seed: int
    trace: list[dict] = field(default_factory=list)

    def trace_json(self) -> str:
        return json.dumps(self.trace, sort_keys=True, separators=(",", ":"))


def anneal(modules: Sequence[ModuleSpec], k: int, config: SaConfig = SaConfig()) -> AnnealResult:
    """Metropolis search over expressions of order ``k``; deterministic per seed."""
    if k < 2:
        raise ValueError("k must be >= 2")
    modules = sorted(modules, key=lambda m: m.id)
    n = len(modules)
    if n < 1:
        raise ValueError("need at least one module")
    rng = random.Random(config.seed)
    catalog = catalog_for(k)
    cache: dict[tuple, Cost] = {}

    def cost(e: Npe) -> Cost:
        c = cache.get(e.tokens)
        if c is None:
            c = evaluate_cost(e, modules)
            if len(cache) < 200_000:
                cache[e.tokens] = c
        return c

    start = random_npe(n, k, rng)
    c0 = cost(start)
    trace: list[dict] = [{"step": 0, "event": "initial", "area": c0.area, "npe": str(start)}]
    if n == 1:
        return AnnealResult(start, c0.area, c0.placement, start, c0.area, config.seed, trace)

    t0 = config.initial_temperature
    if t0 is None:
        ups = []
        cur, cur_area = start, c0.area
        for _ in range(config.calibration_moves):
            m = random_move(cur, rng, catalog)
            nxt = apply_move(cur, m)
            a = cost(nxt).area
            if a > cur_area:
                ups.append(a - cur_area)
            cur, cur_area = nxt, a
        t0 = (sum(ups) / len(ups)) / -math.log(config.target_acceptance) if ups else 1.0
    stop = config.stop_temperature if config.stop_temperature is not None else t0 * 1e-3
    per_t = config.moves_per_temperature or 30 * n
    trace.append({"step": 0, "event": "calibrated", "t0": t0, "stop": stop, "moves": per_t})

    cur, cur_area = start, c0.area
    best, best_cost = start, c0
    temp = t0
    step = 0
    while temp > stop:
        step += 1
        accepted = 0
        for _ in range(per_t):
            m = random_move(cur, rng, catalog)
            nxt = apply_move(cur, m)
            a = cost(nxt).area
            delta = a - cur_area
            if delta <= 0 or rng.random() < math.exp(-delta / temp):
                cur, cur_area = nxt, a
                accepted += 1
                if a < best_cost.area:
                    best, best_cost = nxt, cost(nxt)
        trace.append({
            "step": step,
            "temperature": temp,
            "accepted": accepted,
            "area": cur_area,
            "best": best_cost.area,
            "npe": str(cur),
        })
        temp *= config.cooling_ratio
    return AnnealResult(best, best_cost.area, best_cost.placement, start, c0.area, config.seed, trace)


def _anneal_job(args):
    modules, k, config = args
    return anneal(modules, k, config)


def anneal_restarts(modules: Sequence[ModuleSpec], k: int, config: SaConfig = SaConfig(),
                    restarts: int = 1, workers: int = 1) -> AnnealResult:
    """Independent chains with seeds ``seed + i``; the smallest area wins, ties by seed."""
    if restarts < 1:
        raise ValueError("restarts must be >= 1")
    jobs = [(list(modules), k, SaConfig(**{**asdict(config), "seed": config.seed + i})) for i in range(restarts)]
    if workers > 1 and restarts > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_anneal_job, jobs))
    else:
        results = [_anneal_job(j) for j in jobs]
    return min(results, key=lambda r: (r.area, r.seed))


# --- canonical path -----------------------------------------------------------

def _to_canonical(e: Npe) -> tuple[list[Move], list[Move], Npe]:
    """Moves from ``e`` to ``1 2 .. n [12] [21] ..``, with their inverses."""
    moves: list[Move] = []
    inverses: list[Move] = []

    def step(m: Move) -> None:
        nonlocal e
        e2, inv = _apply(e, m)
        moves.append(m)
        inverses.append(inv)
        e = e2

    # destroy every non-slicing operator
    while True:
        idx = next((i for i, t in enumerate(e.tokens) if is_operator(t) and len(t) >= 4), None)
        if idx is None:
            break
        step(Move("M4", idx))
    # push operators to the tail, rightmost first
    while True:
        toks = e.tokens
        idx = None
        for i in range(len(toks) - 2, -1, -1):
            if is_operator(toks[i]) and not is_operator(toks[i + 1]):
                idx = i
                break
        if idx is None:
            break
        after = idx + 2
        if after < len(toks) and toks[after] == toks[idx]:
            j = after
            while j + 1 < len(toks) and is_slicing(toks[j + 1]):
                j += 1
            step(Move("M2a", after, j))
        step(Move("M1b", idx))
    # sort operands by adjacent swaps
    n = e.n
    for end in range(n - 1, 0, -1):
        for i in range(end):
            if e.tokens[i] > e.tokens[i + 1]:
                step(Move("M1a", i, i + 1))
    if n > 1 and e.tokens[n] != H12:
        step(Move("M2a", n, len(e.tokens) - 1))
    return moves, inverses, e


def canonical_form(n: int, k: int) -> Npe:
    toks: list[Token] = list(range(1, n + 1))
    toks += _alternating(H12, n - 1) if n > 1 else []
    return Npe(tuple(toks), k)


def canonical_path(a: Npe, b: Npe) -> list[Move]:
    """A move sequence taking ``a`` to ``b`` through the all-slicing canonical form."""
    if sorted(a.operands()) != sorted(b.operands()):
        raise ValueError("expressions have different operand sets")
    if a.k != b.k:
        raise ValueError("expressions have different orders")
    if a == b:
        return []
    ma, _, ca = _to_canonical(a)
    _, ib, cb = _to_canonical(b)
    assert ca == cb, "canonical forms differ"
    return ma + ib[::-1]


def replay(e: Npe, moves: Iterable[Move]) -> Npe:
    for m in moves:
        e = apply_move(e, m)
    return e
