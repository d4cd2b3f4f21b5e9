from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from cherednik.combinatorics import Params, RPartition, charge, sort_composition, standard_tableaux
from cherednik.graph import fundamental_submodules, lowest_degree_isotype
from cherednik.oracle import (
    _spectrum_rows,
    default_cap,
    fingerprint,
    in_submodule,
    intersection_lattice,
    isotype_oracle,
    jantzen_layer_count,
    lattices,
    scale_for,
    spectrum,
    standard_tightness_screen,
)

from conftest import EQUAL_BLOCKS, NONEXAMPLE, gamma

P = RPartition.parse


@pytest.mark.parametrize("name", ["B4", "B6", "G313", "G414"])
def test_isotype_oracle_matches_box_moves(name):
    p = EQUAL_BLOCKS[name]
    g = gamma(p)
    for lam in g.vertices:
        cap = default_cap(g, lam)
        for f in fundamental_submodules(lam, p):
            mu, deg = isotype_oracle([f], p, g.vertices, cap)
            assert mu == lowest_degree_isotype(f, p), (lam.text(), f.describe())
            assert deg == charge(lam, mu, p)


def test_empty_subset_is_host():
    p = EQUAL_BLOCKS["B4"]
    g = gamma(p)
    assert isotype_oracle([], p, g.vertices, 5, host=P("4|-")) == (P("4|-"), 0)


def test_b4_triv_intersection_is_diamond_bottom():
    p = EQUAL_BLOCKS["B4"]
    g = gamma(p)
    subs = fundamental_submodules(P("4|-"), p)
    assert len(subs) == 2
    mu, deg = isotype_oracle(subs, p, g.vertices, default_cap(g, P("4|-")))
    assert mu == P("1,1|2")
    assert deg == charge(P("4|-"), mu, p) == 4
    assert g.longest_path(mu, P("4|-")) == 2


def test_zero_intersections_are_skipped():
    p = EQUAL_BLOCKS["B4"]
    lat = intersection_lattice(gamma(p), P("1,1,1|1"))
    assert 0b11 not in lat.isotypes
    assert lat.members == {P("1,1,1|1"), P("1,1,1,1|-"), P("-|1,1,1,1")}


@pytest.mark.parametrize("name", sorted(EQUAL_BLOCKS))
def test_jantzen_count_equals_longest_path(name):
    g = gamma(EQUAL_BLOCKS[name])
    for lam, lat in lattices(g).items():
        d = g.longest_to(lam)
        for mu in lat.members - {lam}:
            assert lat.count_containing(mu) == d[mu]


def test_jantzen_layer_count_examples():
    p = EQUAL_BLOCKS["B4"]
    triv = P("4|-")
    (T,) = standard_tableaux(triv)
    assert jantzen_layer_count((0, 0, 0, 0), T, triv, p) == 0
    type2 = next(f for f in fundamental_submodules(triv, p) if f.b2 is not None)
    assert in_submodule(type2, (3, 0, 0, 0), T)
    assert in_submodule(type2, (0, 0, 3, 0), T)


def test_basis_vectors_avoid_all_submodules():
    from itertools import product

    p = EQUAL_BLOCKS["B4"]
    triv = P("4|-")
    (T,) = standard_tableaux(triv)
    for alpha in product(range(3), repeat=4):
        am, w = sort_composition(alpha)
        winv = {slot: pos + 1 for pos, slot in enumerate(w)}
        in_basis = am[1] < 1 and (am[3] - am[0] < 2 or (am[3] - am[0] == 2 and winv[4] > winv[1]))
        if in_basis:
            assert jantzen_layer_count(alpha, T, triv, p) == 0
        else:
            assert jantzen_layer_count(alpha, T, triv, p) > 0


def test_spectrum_at_zero():
    p = EQUAL_BLOCKS["G313"]
    triv = P("3|-|-")
    (T,) = standard_tableaux(triv)
    spec = spectrum((0, 0, 0), T, triv, p)
    # w_0 reverses positions, so position i carries the box with entry n + 1 - i
    want = [1 - (p.d[0] - p.dj(-1)) - p.r * (3 - i) * p.c0 for i in range(1, 4)]
    assert [z for z, _ in spec] == want
    assert all(zeta == 0 for _, zeta in spec)


@pytest.mark.parametrize("lam", ["2,1|1", "1,1|2", "-|3,1"])
def test_fingerprint_independent_of_tableau(lam):
    p = EQUAL_BLOCKS["B4"]
    x = P(lam)
    spectra = {tuple(sorted(spectrum((0,) * 4, T, x, p))) for T in standard_tableaux(x)}
    assert len(spectra) == 1


def test_fingerprints_separate_block_members():
    for name in ["B4", "G313", "G414"]:
        p = EQUAL_BLOCKS[name]
        fps = [fingerprint(m, p) for m in gamma(p).vertices]
        assert len(set(fps)) == len(fps)


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(0, 6), min_size=4, max_size=4), st.integers(0, 1))
def test_scaled_spectrum_matches_exact(alpha, which):
    p = EQUAL_BLOCKS["B4"]
    lam = [P("2,1|1"), P("-|3,1")][which]
    sc = scale_for(p)
    A = np.array([alpha], dtype=np.int64)
    _, w = sort_composition(alpha)
    for T in standard_tableaux(lam):
        (row,) = _spectrum_rows(A, np.array([w], dtype=np.int64), T, p, sc)
        exact = spectrum(alpha, T, lam, p)
        assert [(sc.unscale(z), e) for z, e in row] == [(Fraction(z), e) for z, e in exact]


def test_tightness_screen():
    g = gamma(NONEXAMPLE)
    verdicts = {lam.text(): standard_tightness_screen(g, lam)[0] for lam in g.vertices}
    assert verdicts == {"-|1,1": True, "-|2": True, "1|1": True, "1,1|-": True, "2|-": False}
    assert standard_tightness_screen(g, P("2|-"))[1]
    t = gamma(EQUAL_BLOCKS["B4"])
    assert all(standard_tightness_screen(t, lam)[0] for lam in t.vertices)
