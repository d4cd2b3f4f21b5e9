from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from cherednik.block import (
    BlockError,
    Label,
    STPair,
    block_diagonalizable,
    brute_force_block,
    build_labeling,
    enumerate_block,
    from_st_pair,
    is_diagonalizable,
    st_pair,
    st_pairs,
    tight_check,
)
from cherednik.combinatorics import Params, RPartition, h_c

from conftest import NONEXAMPLE, R6


def test_r6_labels_reproduce_figure():
    lab = build_labeling(R6)
    assert lab.ell == 3
    got = {pos: [repr(x) for x in labels] for pos, labels in enumerate(lab.per_box, start=1) if labels}
    assert got == {1: ["(0,0)", "(1,-2)"], 2: ["(3,-1)"], 6: ["(5,3)", "(2,-2)"]}


def test_r6_is_not_tight():
    v = tight_check(R6)
    assert not v.tight
    assert v.witness is not None


def test_equal_params_chain_is_tight():
    for r, m in [(2, 1), (2, 4), (3, 2), (4, 1), (5, 1)]:
        p = Params.equal(r, r * m)
        v = tight_check(p)
        assert v.tight
        assert v.chain[0] == Label(0, 0)
        assert [x.i for x in v.chain] == [0] + list(range(r - 1, 0, -1))


def test_nonexample_not_tight():
    assert not tight_check(NONEXAMPLE).tight


def test_d_variant_labels():
    n = 3
    p = Params(2, 2 * n, Fraction(1, 2 * n), (Fraction(0), Fraction(0)))
    lab = build_labeling(p)
    assert lab.box_of() == {0: (1, 0), 1: (n + 1, -1)}
    assert tight_check(p).tight


@pytest.mark.parametrize(
    "p, size",
    [
        (Params.equal(2, 2), 4),
        (Params.equal(2, 4), 11),
        (Params.equal(2, 6), 20),
        (Params.equal(2, 8), 31),
        (Params.equal(3, 3), 13),
        (Params.equal(4, 4), 37),
        (Params.equal(3, 6), 46),
        (NONEXAMPLE, 5),
        (R6, 194),
    ],
)
def test_block_sizes_match_brute_force(p, size):
    members = enumerate_block(p)
    assert len(members) == size
    assert members == brute_force_block(p)


def test_members_sorted_by_hc():
    p = Params.equal(3, 3)
    hs = [h_c(m, p) for m in enumerate_block(p)]
    assert hs == sorted(hs, reverse=True)


def test_r6_worked_pairs():
    first = RPartition.parse("2,1|-|-|-|-|2,1,1,1", 6)
    second = RPartition.parse("-|-|4,1|3|-|-", 6)
    assert st_pair(first, R6) == STPair((0, 0, 5, 5, 5, 5, 5, 0), (0, 0, 3, 3, 3, 3, 3, -3))
    assert st_pair(second, R6) == STPair((2, 3, 3, 3, 2, 2, 2, 2), (1, -1, -1, -1, -2, -2, -2, -2))
    assert from_st_pair(st_pair(first, R6), R6) == first


def _b2n_families(n):
    from cherednik.combinatorics import hook

    out = set()
    for a in range(2 * n):
        out.add(RPartition((hook(2 * n - a, a), ())))
        out.add(RPartition(((), hook(2 * n - a, a))))
    for a in range(1, n):
        for k in range(n + 1):
            out.add(RPartition((hook(a, k), hook(n + 1 - k, n - 1 - a))))
    return out


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_b2n_block_is_three_families(n):
    assert set(enumerate_block(Params.equal(2, 2 * n))) == _b2n_families(n)


@pytest.mark.parametrize("m", [1, 2, 3, 4])
def test_st_pairs_are_bijective(m):
    p = Params.equal(2, 2 * m)
    pairs = st_pairs(p)
    members = [from_st_pair(s, p) for s in pairs]
    assert len(set(members)) == len(members)
    for s, lam in zip(pairs, members):
        assert st_pair(lam, p) == s


def test_st_pair_rejects_outsiders():
    p = Params.equal(2, 4)
    outsider = next(lam for lam in __import__("cherednik.combinatorics", fromlist=["x"]).rpartitions_of(2, 4)
                    if lam not in set(enumerate_block(p)))
    with pytest.raises(BlockError):
        st_pair(outsider, p)


def test_diagonalizable_blocks():
    for p in [Params.equal(2, 4), Params.equal(3, 3), Params.equal(4, 4), NONEXAMPLE]:
        rep = block_diagonalizable(p)
        assert rep.exact, rep.failures


def test_not_diagonalizable_when_denominator_small():
    p = Params(1, 4, Fraction(1, 2), (Fraction(0),))
    assert not is_diagonalizable(RPartition.parse("3,1", 1), p)


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 4), st.integers(1, 4), st.sampled_from([1, 2, 3, 5, 7]))
def test_enumeration_equals_brute_force(r, m, ell):
    n = r * m if r * m <= 8 else m
    from math import gcd

    if gcd(ell, n) != 1:
        ell = 1
    p = Params(r, n, Fraction(ell, n), tuple([Fraction(r - 1, n)] + [Fraction(-1, n)] * (r - 1)))
    assert enumerate_block(p) == brute_force_block(p)
