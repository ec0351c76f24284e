import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hfok import anneal as an
from hfok.anneal import InvalidMove, ModuleSpec, Move, Npe, SaConfig
from hfok.gentree import Internal, Leaf, leaves, perm_to_tree, relabel_leaves, validate_tree
from hfok.perm import Permutation

P = Permutation.from_compact


def unit(n):
    return [ModuleSpec(i, 1, 1) for i in range(1, n + 1)]


class TestExpressions:
    def test_parse_and_format(self):
        e = Npe.parse("1 2 3 4 5 [41352]", 5)
        assert e.n == 5 and str(e) == "1 2 3 4 5 [41352]"

    @pytest.mark.parametrize(
        "text,k,message",
        [
            ("1 2 [12] [12]", 5, "balance"),
            ("1 2 [12] 3 [12] [12]", 5, "balance"),
            ("1 3 [12]", 5, "operands"),
            ("1 2 3 4 5 [41352]", 4, "length"),
            ("1 2 3 4 [2413]", 5, "simple and Baxter"),
            ("[12] 1 2", 5, "prefix"),
            ("1 2 3 [12] [12]", 5, "adjacency"),
        ],
    )
    def test_validation_reasons(self, text, k, message):
        v = an.validate_npe(an.parse_tokens(text), k)
        assert not v and message in v.reason

    def test_prefix_balance_failure(self):
        v = an.validate_npe(an.parse_tokens("1 [12] 2"), 5)
        assert "prefix" in v.reason

    @pytest.mark.parametrize("bad", ["1 [ 2", "1 x", "1 [] 2"])
    def test_parse_errors(self, bad):
        with pytest.raises(ValueError):
            an.parse_tokens(bad)

    def test_tree_round_trip(self):
        t = relabel_leaves(perm_to_tree(P("451362")), [3, 1, 2, 6, 5, 4])
        e = an.npe_from_tree(t)
        assert e.k == 5 and str(e) == "3 1 [12] 2 6 5 4 [41352]"
        assert an.tree_from_npe(e) == t


def test_cost_examples():
    side = an.evaluate_cost(Npe.parse("1 2 [12]", 2), [ModuleSpec(1, 1, 1), ModuleSpec(2, 2, 1)])
    assert (side.width, side.height, side.area) == (3, 1, 3)
    stack = an.evaluate_cost(Npe.parse("1 2 [21]", 2), [ModuleSpec(1, 1, 1), ModuleSpec(2, 2, 1)])
    assert (stack.width, stack.height) == (2, 2)
    assert an.evaluate_cost(Npe.parse("1 2 3 4 5 [41352]", 5), unit(5)).area == 9


def test_placement_has_no_overlap():
    rng = random.Random(5)
    mods = [ModuleSpec(i, rng.randint(1, 5), rng.randint(1, 5)) for i in range(1, 11)]
    for _ in range(20):
        c = an.evaluate_cost(an.random_npe(10, 5, rng), mods)
        ps = c.placement
        for a in ps:
            assert a.x + a.w <= c.width + 1e-9 and a.y + a.h <= c.height + 1e-9
            for b in ps:
                if a.id < b.id:
                    assert a.x + a.w <= b.x or b.x + b.w <= a.x or a.y + a.h <= b.y or b.y + b.h <= a.y


def test_module_loading():
    assert an.load_modules([{"id": 2, "w": 1, "h": 2}, {"id": 1, "w": 3, "h": 1}])[0].w == 3
    for bad in ([], [{"id": 2, "w": 1, "h": 1}], [{"id": 1}], [{"id": 1, "w": 0, "h": 1}]):
        with pytest.raises(ValueError):
            an.load_modules(bad)


class TestDefaultTemplate:
    @pytest.mark.parametrize("x", [None, an.H12, an.V21])
    @pytest.mark.parametrize("y", [None, an.H12, an.V21])
    @pytest.mark.parametrize("w", [None, an.H12, an.V21])
    def test_five(self, x, y, w):
        t = an.default_template(5, x, y, w)
        assert leaves(t) == [1, 2, 3, 4, 5]
        validate_tree(t)
        assert t.sigma != y and t.sigma in an.SLICING

    @pytest.mark.parametrize("j", [7, 8])
    def test_larger(self, j):
        t = an.default_template(j, None, an.H12)
        assert t.sigma == an.V21

    def test_no_template_for_four(self):
        with pytest.raises(ValueError):
            an.default_template(4, None, None)


@settings(max_examples=60, deadline=None)
@given(st.integers(2, 12), st.integers(0, 2**32 - 1), st.sampled_from([2, 5, 7]))
def test_moves_are_reversible(n, seed, k):
    rng = random.Random(seed)
    e = an.random_npe(n, k, rng)
    for _ in range(15):
        m = an.random_move(e, rng)
        e2, inv = an._apply(e, m)
        assert an.validate_npe(e2.tokens, k), (str(e), str(m))
        assert an.apply_move(e2, inv) == e
        validate_tree(an.tree_from_npe(e2))
        e = e2


@pytest.mark.parametrize("kind", an.MOVE_KINDS)
def test_each_kind_has_sites(kind):
    rng = random.Random(3)
    found = False
    for _ in range(200):
        e = an.random_npe(9, 7, rng)
        for m in an.valid_moves(e, kind):
            found = True
            e2 = an.apply_move(e, m)
            assert an.validate_npe(e2.tokens, 7)
            assert an.apply_move(e2, an.inverse_move(e, m)) == e
        if found:
            break
    assert found


def test_invalid_moves_raise():
    e = Npe.parse("1 2 [12] 3 [21]", 5)
    with pytest.raises(InvalidMove):
        an.apply_move(e, Move("M1b", 1))
    with pytest.raises(ValueError):
        an.valid_moves(e, "M9")


def test_m4_with_custom_template():
    e = Npe.parse("1 2 3 4 5 [41352]", 5)
    tpl = Internal(an.H12, (Leaf(1), Internal(an.V21, (Leaf(2), Internal(an.H12, (Leaf(3), Internal(an.V21, (Leaf(4), Leaf(5)))))))))
    e2 = an.apply_move(e, Move("M4", 5, template=tpl))
    assert str(e2) == "1 2 3 4 5 [21] [12] [21] [12]"
    with pytest.raises(InvalidMove):
        an.apply_move(e, Move("M4", 5, template=Leaf(1)))


@settings(max_examples=30, deadline=None)
@given(st.integers(1, 10), st.integers(0, 2**32 - 1))
def test_canonical_path_connects(n, seed):
    rng = random.Random(seed)
    a, b = an.random_npe(n, 5, rng), an.random_npe(n, 5, rng)
    path = an.canonical_path(a, b)
    assert an.replay(a, path) == b
    assert len(path) <= 6 * n * n


def test_canonical_path_errors():
    with pytest.raises(ValueError):
        an.canonical_path(Npe.parse("1 2 [12]", 5), Npe.parse("1", 5))


def test_anneal_small_run_is_deterministic():
    mods = [ModuleSpec(i, w, h) for i, (w, h) in enumerate([(2, 1), (1, 3), (2, 2), (1, 1), (3, 1), (1, 2)], 1)]
    cfg = SaConfig(seed=11, moves_per_temperature=20)
    r1 = an.anneal(mods, 5, cfg)
    r2 = an.anneal(mods, 5, cfg)
    assert str(r1.best) == str(r2.best) and r1.trace_json() == r2.trace_json()
    assert r1.area <= r1.initial_area
    assert r1.area >= sum(m.w * m.h for m in mods)


def test_restarts_pick_smallest():
    mods = unit(5)
    cfg = SaConfig(seed=3, moves_per_temperature=10)
    best = an.anneal_restarts(mods, 5, cfg, restarts=3)
    singles = [an.anneal(mods, 5, SaConfig(seed=3 + i, moves_per_temperature=10)).area for i in range(3)]
    assert best.area == min(singles)
    assert an.anneal_restarts(mods, 5, cfg, restarts=3, workers=2).area == best.area


@pytest.mark.parametrize(
    "kwargs", [{"cooling_ratio": 1.0}, {"initial_temperature": -1}, {"target_acceptance": 0}]
)
def test_config_validation(kwargs):
    with pytest.raises(ValueError):
        SaConfig(**kwargs)


def test_single_module():
    r = an.anneal(unit(1), 5)
    assert r.area == 1
