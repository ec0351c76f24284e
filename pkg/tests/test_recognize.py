import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hfok import floorplan as fp
from hfok.gentree import order, perm_to_tree
from hfok.perm import Permutation, enumerate_class, exceptional
from hfok.recognize import (
    avoids_characterization,
    forbidden_patterns,
    is_hfo_k,
    iterate_safe_insertions,
    merge_tree,
    min_k,
    safe_insertions,
    stack_scan,
)

P = Permutation.from_compact


@pytest.mark.parametrize(
    "p,k,expected",
    [("41352", 4, False), ("41352", 5, True), ("2413", 5, False), ("1", 2, True), ("21", 2, True), ("451362", 5, True)],
)
def test_is_hfo_k(p, k, expected):
    assert is_hfo_k(P(p), k) is expected


def test_k_must_be_at_least_two():
    with pytest.raises(ValueError):
        is_hfo_k(P("12"), 1)
    with pytest.raises(ValueError):
        avoids_characterization(P("12"), 1)


@pytest.mark.parametrize("p,expected", [("1", 1), ("12", 2), ("41352", 5), ("2413", None), ("246135", None)])
def test_min_k(p, expected):
    assert min_k(P(p)) == expected


def test_exceptional_needs_larger_k():
    # a family member of length 8 is Baxter yet not simple; it is HFO_8 but not HFO_6
    for fam in (1, 2, 3, 4):
        e = exceptional(4, fam)
        if min_k(e) is not None:
            assert not is_hfo_k(e, 6)


@pytest.mark.parametrize("n", range(1, 8))
def test_recognizers_agree(backend, n):
    for p in enumerate_class(n):
        mk = min_k(p)
        for k in range(2, 7):
            fast = bool(backend.hfo_scan(p, k)) if n > 1 else True
            assert fast == avoids_characterization(p, k) == stack_scan(p, k).accepted, (p, k)
            assert fast == (mk is not None and mk <= k)


@pytest.mark.parametrize("n", range(1, 8))
def test_min_k_is_tree_order(n):
    for p in enumerate_class(n, "baxter"):
        assert min_k(p) == order(perm_to_tree(p))
        assert merge_tree(p) == perm_to_tree(p)


def test_merge_tree_rejects():
    with pytest.raises(ValueError):
        merge_tree(P("2413"))


def test_scan_records_merges():
    res = stack_scan(P("451362"))
    assert res.accepted and res.max_arity == 5
    assert [m.compact() for m in res.merges] == ["12", "41352"]
    assert len(res.stack) == 1


def test_forbidden_patterns():
    assert forbidden_patterns(2) == frozenset({P("2413"), P("3142")})
    bad4 = forbidden_patterns(4)
    assert P("41352") in bad4 and P("246135") in bad4


def test_safe_insertions_order():
    assert [q.compact() for q in safe_insertions(P("41352"))] == ["641352", "413652", "413562", "413526"]
    assert safe_insertions(P("1")) == [P("21"), P("12")]
    with pytest.raises(ValueError):
        safe_insertions(P("2413"))


@pytest.mark.parametrize("n,expected", [(5, 1), (6, 4), (7, 14), (8, 48)])
def test_safe_insertion_growth(n, expected):
    out = iterate_safe_insertions(P("41352"), n)
    assert len(out) == expected >= 3 ** (n - 5)
    assert all(is_hfo_k(q, 5) and not is_hfo_k(q, 4) for q in out)


@st.composite
def baxter_perms(draw):
    n = draw(st.integers(2, 40))
    f = fp.single_room()
    for _ in range(n - 1):
        f = fp.insert_top_left(f, draw(st.sampled_from(fp.insertion_choices(f))))
    return fp.fp2bp(f)


@settings(max_examples=80, deadline=None)
@given(baxter_perms())
def test_min_k_matches_threshold(p):
    k = min_k(p)
    assert is_hfo_k(p, k)
    if k > 2:
        assert not is_hfo_k(p, k - 1)
