import pytest

from cherednik.combinatorics import Params, RPartition, conjugate, syt_count
from cherednik.decomposition import (
    VPoly,
    b2n_resolution_formula,
    b_at_minus_one,
    b_polynomial,
    bgg_resolution,
    conjecture_check,
    graded_dec_matrix,
    inverse_dec_matrix,
    quivers,
    unordered,
)
from cherednik.graph import ConsistencyError, hom_relation
from cherednik.oracle import standard_tightness_screen

from conftest import EQUAL_BLOCKS, FIXTURES, NONEXAMPLE, fixture_params, gamma, gamma_with_lattice

P = RPartition.parse
TESTED = sorted(EQUAL_BLOCKS) + ["NONEXAMPLE"]


def params_of(name):
    return NONEXAMPLE if name == "NONEXAMPLE" else EQUAL_BLOCKS[name]


def test_vpoly_arithmetic():
    v = VPoly.monomial(1)
    assert str(v * v) == "v^2"
    assert str(VPoly.monomial(3, -1)) == "-v^3"
    assert (v + VPoly.monomial(1, -1)) == VPoly()
    assert str(VPoly()) == "0"
    assert (v * v).at(-1) == 1


@pytest.mark.parametrize("fig", FIXTURES["resolutions"], ids=lambda f: f"{f['name']}:{f['center']}")
def test_resolution_matches_figure(fig):
    p = fixture_params(fig)
    g = gamma(p)
    res = bgg_resolution(g, P(fig["center"], p.r))
    assert [sorted(m.text() for m in t) for t in res.terms] == [sorted(t) for t in fig["levels"]]
    assert sorted([a.text(), b.text()] for a, b in res.arrows) == sorted(fig["arrows"])
    again = bgg_resolution(g, P(fig["center"], p.r), reverse=True)
    assert again.retained == res.retained


def test_resolution_level_sizes():
    assert bgg_resolution(gamma(Params.equal(4, 4)), P("4|-|-|-")).level_sizes() == [1, 4, 6, 4, 1]
    assert bgg_resolution(gamma(Params.equal(3, 6)), P("6|-|-")).level_sizes() == [1, 3, 6, 7, 6, 3, 1]


def test_sink_resolution_is_trivial():
    res = bgg_resolution(gamma(Params.equal(2, 4)), P("-|1,1,1,1"))
    assert res.terms == [[P("-|1,1,1,1")]]


@pytest.mark.parametrize("name", sorted(EQUAL_BLOCKS))
def test_resolution_is_order_independent(name):
    g = gamma(EQUAL_BLOCKS[name])
    for lam in g.vertices:
        assert bgg_resolution(g, lam).retained == bgg_resolution(g, lam, reverse=True).retained


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_b2n_formula_equals_algorithm(n):
    res = bgg_resolution(gamma(Params.equal(2, 2 * n)), RPartition.trivial(2, 2 * n))
    terms = res.terms
    assert len(terms) == 2 * n + 1
    for i in range(n + 1):
        low, high = b2n_resolution_formula(n, i)
        assert terms[i] == low
        assert terms[2 * n - i] == high


def test_b2n_formula_examples():
    assert b2n_resolution_formula(2, 0)[0] == [P("4|-")]
    assert b2n_resolution_formula(2, 1)[0] == sorted([P("3,1|-"), P("1|3")], key=RPartition.text)
    assert set(b2n_resolution_formula(2, 2)[0]) == {P("2,1,1|-"), P("1,1|2"), P("-|3,1")}


@pytest.mark.parametrize("name", TESTED)
def test_matrix_times_inverse_is_identity(name):
    g = gamma_with_lattice(params_of(name))
    dec = graded_dec_matrix(g)
    inv = inverse_dec_matrix(g, check=False)
    assert (dec @ inv).is_identity()
    assert (inv @ dec).is_identity()


@pytest.mark.parametrize("name", TESTED)
def test_dec_matrix_unitriangular(name):
    g = gamma_with_lattice(params_of(name))
    dec = graded_dec_matrix(g)
    for i, row in enumerate(dec.entries):
        assert row[i] == VPoly.monomial(0)
        for j, e in enumerate(row):
            assert all(c >= 0 for c in e.coeffs.values())
            if j > i:
                assert not e


@pytest.mark.parametrize("name", TESTED)
def test_equal_length_paths_give_sign(name):
    g = gamma_with_lattice(params_of(name))
    for lam in g.vertices:
        longest, shortest = g.longest_to(lam), g.shortest_to(lam)
        for mu, d in longest.items():
            if shortest[mu] == d:
                assert b_at_minus_one(b_polynomial(g, mu, lam)) == (-1) ** d, (mu.text(), lam.text())


@pytest.mark.parametrize("name", sorted(EQUAL_BLOCKS))
def test_conjecture_holds_on_tight_blocks(name):
    g = gamma_with_lattice(EQUAL_BLOCKS[name])
    inv = inverse_dec_matrix(g)
    for lam in g.vertices:
        rep = conjecture_check(g, lam, inv)
        assert rep.passed, (lam.text(), rep.mismatches)


def test_nonexample_conjecture_fails_only_at_triv():
    g = gamma_with_lattice(NONEXAMPLE)
    screen = lambda mu: standard_tightness_screen(g, mu)[0]  # noqa: E731
    failed = [lam.text() for lam in g.vertices if not conjecture_check(g, lam, standard_is_tight=screen).passed]
    assert failed == ["2|-"]


def test_nonexample_needs_screen():
    g = gamma_with_lattice(NONEXAMPLE)
    with pytest.raises(ValueError):
        conjecture_check(g, P("2|-"))


@pytest.mark.parametrize("name", sorted(EQUAL_BLOCKS))
def test_euler_characteristic_is_inverse_row_at_one(name):
    g = gamma_with_lattice(EQUAL_BLOCKS[name])
    inv = inverse_dec_matrix(g)
    for lam in g.vertices:
        res = bgg_resolution(g, lam)
        euler = {mu: (-1) ** res.strata[mu] for mu in res.retained}
        row = {mu: e.at(1) for mu, e in inv.row(lam).items()}
        assert euler == row


def test_b4_b_polynomials():
    g = gamma_with_lattice(Params.equal(2, 4))
    triv = P("4|-")
    assert b_at_minus_one(b_polynomial(g, P("1,1,1,1|-"), triv)) == 0
    assert b_at_minus_one(b_polynomial(g, P("-|1,1,1,1"), triv)) == 1
    assert b_polynomial(g, triv, triv) == [1]


def test_b4_hom_relation_is_lattice():
    g = gamma_with_lattice(Params.equal(2, 4))
    assert g.p_set(P("4|-")) == {P("4|-"), P("3,1|-"), P("1|3"), P("1,1|2")}
    pairs, warning = hom_relation(g)
    assert warning is None
    assert len(pairs) == 20
    assert g.p_set(P("-|1,1,1,1")) == {P("-|1,1,1,1")}


def test_g414_p_triv_is_hypercube():
    g = gamma_with_lattice(Params.equal(4, 4))
    triv = P("4|-|-|-")
    assert g.p_set(triv) == set(bgg_resolution(g, triv).retained)
    assert len(g.p_set(triv)) == 16


def test_g313_spot_entries():
    g = gamma_with_lattice(Params.equal(3, 3))
    triv = P("3|-|-")
    assert graded_dec_matrix(g)[triv, P("-|1|1,1")] == VPoly.monomial(3)
    row = inverse_dec_matrix(g).row(triv)
    res = bgg_resolution(g, triv)
    assert set(row) == set(res.retained)
    assert len(row) == 8
    assert all(row[mu] == VPoly.monomial(res.strata[mu], (-1) ** res.strata[mu]) for mu in row)


def test_dec_matrix_tsv():
    g = gamma_with_lattice(Params.equal(2, 2))
    tsv = graded_dec_matrix(g).to_tsv().splitlines()
    assert len(tsv) == 5
    assert tsv[0].split("\t")[1:] == [v.text() for v in g.vertices]


def test_reachability_p_sets_break_the_pruning_match():
    # reachability in place of the intersection lattice still inverts, but the
    # inverse row of Triv then disagrees with the pruning algorithm
    from cherednik.graph import build_gamma

    g = build_gamma(Params.equal(2, 4))
    assert not g.has_lattice
    inv = inverse_dec_matrix(g)
    rep = conjecture_check(g, P("4|-"), inv)
    assert not rep.matches
    assert any(m.startswith("2,1,1|-") for m in rep.mismatches)


def test_set_p_sets_rejects_unreachable():
    from cherednik.graph import build_gamma

    g = build_gamma(Params.equal(2, 4))
    bad = {lam: {lam} for lam in g.vertices}
    bad[P("-|1,1,1,1")] = {P("4|-"), P("-|1,1,1,1")}
    with pytest.raises(ConsistencyError):
        g.set_p_sets(bad)


def test_quivers():
    q = quivers(gamma(Params.equal(2, 4)))
    assert unordered(q.ext1_predicted) == unordered(q.primitive)
    assert len(q.ext1_predicted) == 2 * len(q.primitive)
    nq = quivers(gamma(NONEXAMPLE))
    assert nq.ext1_predicted is None and nq.caveat
    assert len(nq.primitive) == 4
    drawn_ext1 = {frozenset(P(x, 2) for x in e) for e in FIXTURES["nonexample_ext1_quiver"]}
    assert unordered(nq.primitive) != drawn_ext1
    assert unordered(nq.primitive) < drawn_ext1


def test_conjugate_helper():
    assert conjugate((2, 1, 1)) == (3, 1)
    assert syt_count(P("2,1|-")) == 2
