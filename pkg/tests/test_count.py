import pytest

from hfok.count import (
    CountTable,
    baxter_count,
    baxter_count_brute,
    count_hfo5,
    count_hfo5_literal,
    count_hfo_k,
    count_table,
    gf_residual,
    label_multiplicities,
    lower_bound_check,
    schroder,
)
from hfok.perm import enumerate_class
from hfok.recognize import is_hfo_k


def enumerated(k, n):
    return sum(1 for p in enumerate_class(n, "baxter") if is_hfo_k(p, k))


@pytest.mark.parametrize("n", range(1, 11))
def test_fast_hfo5_matches_literal_loops(n):
    assert count_hfo5(n) == count_hfo5_literal(n) == count_hfo_k(5, n)


@pytest.mark.parametrize("k", [2, 5, 7])
@pytest.mark.parametrize("n", range(1, 8))
def test_counts_match_recognizer(k, n):
    assert count_hfo_k(k, n) == enumerated(k, n)


def test_slicing_counts_are_schroder():
    assert list(count_table(2, 9).t) == [schroder(m - 1) for m in range(1, 10)]
    assert [schroder(m) for m in range(7)] == [1, 2, 6, 22, 90, 394, 1806]


def test_order_eight_covers_everything_at_eight():
    assert count_hfo_k(8, 8) == baxter_count(8) == 10754


@pytest.mark.parametrize("n", range(1, 9))
def test_baxter_formula(n):
    assert baxter_count(n) == baxter_count_brute(n)


def test_multiplicities():
    assert label_multiplicities(8) == {4: 0, 5: 2, 6: 0, 7: 12, 8: 24}
    with pytest.raises(ValueError, match="catalog too short"):
        label_multiplicities(9)


def test_table_indexing():
    t = count_table(5, 6)
    assert isinstance(t, CountTable) and len(t) == 6
    assert t[1] == 1 and t[6] == 422
    with pytest.raises(IndexError):
        t[0]


@pytest.mark.parametrize("n", range(5, 11))
def test_lower_bound_at_five(n):
    assert lower_bound_check(5, n)


def test_lower_bound_without_labels():
    # no simple Baxter permutation of length 6 exists, so nothing new is counted
    assert not lower_bound_check(6, 7)
    with pytest.raises(ValueError):
        lower_bound_check(5, 4)


def test_gf_with_weighted_wheel_terms_vanishes():
    assert gf_residual(20, weight=2) == [0] * 20


def test_gf_unweighted_residual_is_nonzero():
    r = gf_residual(8)
    assert r[:4] == [0, 0, 0, 0] and r[4] == -1


@pytest.mark.parametrize("fn", [count_hfo5, count_hfo5_literal, baxter_count])
def test_rejects_nonpositive(fn):
    with pytest.raises(ValueError):
        fn(0)
