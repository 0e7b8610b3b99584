import random
from fractions import Fraction

import pytest

from maxatsp.ssp import (LENGTH_RATIO_BOUND, SspError, SspInstance, length_ratio_bound,
                         normalize, optimal_compression, overlap, ssp_solve)


def test_single_string():
    res = ssp_solve(["ab"])
    assert res.superstring == "ab" and res.compression == 0


def test_two_overlapping():
    res = ssp_solve(["abc", "bcd"])
    assert res.superstring == "abcd" and res.compression == 2


def test_contained_and_duplicate_strings():
    assert normalize(["abc", "b", "abc", "cd"]) == ["abc", "cd"]
    res = ssp_solve(["abc", "b", "abc", "cd"])
    assert res.superstring == "abcd"


def test_normalize_idempotent():
    ss = ["aab", "ab", "bba", "aab", "b"]
    assert normalize(normalize(ss)) == normalize(ss)


def test_overlap():
    assert overlap("abab", "abab") == 2
    assert overlap("abc", "cab") == 1
    assert overlap("abc", "xyz") == 0
    # proper overlaps only
    assert overlap("aa", "aa") == 1


def test_empty_input_rejected():
    with pytest.raises(SspError):
        ssp_solve([])
    with pytest.raises(SspError):
        SspInstance.of(["a", ""])


def test_digraph_has_zero_vertex():
    inst = SspInstance.of(["abc", "bcd", "cde"])
    G = inst.digraph()
    assert G.n == 4
    assert all(G(3, j) == 0 and G(j, 3) == 0 for j in range(3))
    assert G(0, 1) == 2 * G.scale


def test_cycle_of_three():
    # the best order wraps around; compression still matches the optimum
    ss = ["cab", "abc", "bca"]
    res = ssp_solve(ss)
    best, shortest = optimal_compression(ss)
    assert res.compression == best and len(res.superstring) == len(shortest)


def test_random_against_optimum():
    rng = random.Random(5)
    for _ in range(30):
        ss = ["".join(rng.choice("ab") for _ in range(rng.randint(2, 5)))
              for _ in range(rng.randint(2, 6))]
        res = ssp_solve(ss)
        best, _ = optimal_compression(ss)
        assert all(s in res.superstring for s in ss)
        assert 10 * res.compression >= 7 * best
        assert len(res.superstring) == res.total_length - res.compression


def test_length_ratio_bound():
    assert LENGTH_RATIO_BOUND == 2 + Fraction(33, 76)
    # a 1/2-approximation gives 2 + 11/16
    assert length_ratio_bound(Fraction(1, 2)) == Fraction(43, 16)
