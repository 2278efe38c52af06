from collections import Counter
from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import given, settings, strategies as st

from hilbeq import BadComposition, DegenerateDimension, DeltaPolynomial, SelectionSizeMismatch, gotzmann_decompose
from hilbeq import equations as eqs
from hilbeq.gpoly import GPoly
from hilbeq.monom import basis, parse_monomial
from hilbeq.plucker import normalize_set, xi_delta
from hilbeq.verify import (act_on_coords, delta_from_matrix, lexsegment_point, projectively_equal, sample_pgl,
                           sample_subspace, translate)

import reference_values as fx
from oracles import brute_wedge, induced_matrix, leibniz_det


def up_to_sign(polys):
    return Counter(normalize_set([P])[0].to_text() for P in polys if P)


def parse_all(texts):
    return [DeltaPolynomial.parse(t) for t in texts]


def parse_row(row_sel):
    var, J = row_sel.split(":")
    return int(var[1:]), tuple(int(x) for x in J.split(","))


def col(label):
    return basis(2, 3).index_of(parse_monomial(label, 2))


@pytest.fixture(scope="module")
def example_matrix(hilb2):
    return eqs.ik_matrix(hilb2, selection=[parse_row(s) for s, _ in fx.IK_ROWS])


# -- Iarrobino-Kleiman ------------------------------------------------------


def test_ik_rows_match(example_matrix):
    assert example_matrix.column_labels == fx.DEG3_LABELS
    for i, (_, cells) in enumerate(fx.IK_ROWS):
        expected = {col(l): DeltaPolynomial.parse(t) for l, t in cells.items()}
        assert example_matrix.rows[i] == expected
        for j in range(1, 11):
            assert example_matrix.entry(i, j) == expected.get(j, DeltaPolynomial())


def test_ik_row_labels(example_matrix):
    assert example_matrix.labels[0] == "x2*delta1[1,2,6]"
    assert example_matrix.labels[-1] == "x0*delta1[4,5,6]"


def test_ik_full_matrix_shape(hilb2):
    M = eqs.ik_matrix(hilb2)
    assert len(M) == 3 * 20 and M.ncols == 10
    for row in M.rows:
        assert all(c.degree == 1 for c in row.values())


def test_ik_example_minors(example_matrix):
    rows = list(range(9))
    minors = [eqs.ik_minors(example_matrix, rows, cols) for cols in combinations(range(1, 11), 9)]
    assert all(m.is_homogeneous() and m.degree == 9 for m in minors)
    assert up_to_sign(minors) == up_to_sign(parse_all(fx.IK_MINORS))


def test_ik_repeated_row_vanishes(example_matrix):
    assert not eqs.ik_minors(example_matrix, [0, 0, 1, 2, 3, 4, 5, 6, 7], range(1, 10))


def test_ik_selection_size(example_matrix):
    with pytest.raises(SelectionSizeMismatch):
        eqs.ik_minors(example_matrix, range(8), range(1, 10))
    with pytest.raises(SelectionSizeMismatch):
        eqs.ik_minors(example_matrix, range(9), range(1, 9))


def test_ik_toy_case():
    ctx = gotzmann_decompose([1], 1)
    M = eqs.ik_matrix(ctx)
    assert len(M) == 2 and M.ncols == 3
    assert all(len(c) == 1 and c.degree == 1 for row in M.rows for c in row.values())
    for cols in combinations(range(1, 4), 2):
        dense = [[M.entry(i, j) for j in cols] for i in range(2)]
        assert eqs.symbolic_det(dense) == leibniz_det(dense)
    # IK minors have size q(2) + 1 = 3 > 2 rows here
    with pytest.raises(SelectionSizeMismatch):
        eqs.ik_minors(M, [0, 1], [1, 2])


@settings(max_examples=30, deadline=None)
@given(st.lists(st.integers(0, 59), min_size=3, max_size=3), st.lists(st.integers(1, 10), min_size=3, max_size=3, unique=True))
def test_symbolic_det_matches_leibniz(hilb2, rows, cols):
    M = eqs.ik_matrix(hilb2)
    dense = [[M.entry(i, j) for j in cols] for i in rows]
    assert eqs.symbolic_det(dense) == leibniz_det(dense)


def test_ik_stream_deterministic(hilb2):
    a = [(r, c, m.to_text()) for r, c, m in eqs.ik_stream(hilb2, 5)]
    b = [(r, c, m.to_text()) for r, c, m in eqs.ik_stream(hilb2, 5)]
    assert a == b and len(a) == 5
    assert [x[:2] for x in a] == sorted(x[:2] for x in a)
    es = eqs.ik_equations(hilb2, 5)
    assert not es.complete and es.family == "IK"


# -- Bayer ----------------------------------------------------------------------


def bayer_factors():
    out = []
    for part in fx.BAYER_TUPLE.split(";"):
        var, m, J = part.split(":")
        out.append((int(var[1:]), int(m), tuple(int(x) for x in J.split(","))))
    return out


def test_bayer_example(hilb2):
    es = eqs.bayer_equations(hilb2, [bayer_factors()])
    assert len(es) == 10
    assert up_to_sign(es.polynomials) == up_to_sign(parse_all(fx.BAYER_COEFFS))
    assert all(P.degree == 3 for P in es)


def test_bayer_against_brute_wedge(hilb2):
    for factors in [bayer_factors(), [(2, 4, (1, 2, 3, 4, 5, 6)), (1, 4, (1, 2, 3, 4, 5, 6)), (0, 1, (1, 2, 3))],
                    [(2, 4, (1, 2, 3, 4, 5, 6)), (1, 4, (1, 2, 3, 4, 5, 6)), (0, 1, (4, 5, 6))]]:
        lifted = [xi_delta(hilb2, i, m, J).terms for i, m, J in factors]
        assert eqs.wedge_factors(hilb2, factors).terms == brute_wedge(lifted)


def test_bayer_compositions(hilb2):
    comps = sorted(set(tuple(m for _, m, _ in t) for t in eqs.bayer_tuples(hilb2)))
    listed = [(4, 4, 1), (4, 1, 4), (1, 4, 4), (4, 3, 2), (4, 2, 3), (3, 4, 2), (3, 2, 4), (2, 4, 3), (2, 3, 4), (3, 3, 3)]
    assert comps == sorted(listed)


def test_bayer_bad_composition(hilb2):
    with pytest.raises(BadComposition):
        eqs.bayer_coefficients(hilb2, [(2, 4, (1, 2, 3, 4, 5, 6)), (1, 4, (1, 2, 3, 4, 5, 6))])
    with pytest.raises(BadComposition):
        eqs.bayer_coefficients(hilb2, [(2, 5, (1, 2, 3, 4, 5, 6)), (1, 4, (1, 2, 3, 4, 5, 6)), (0, 0, ())])


def test_bayer_shared_slots_vanish(hilb2):
    # both factors live on the six multiples of x, and 4 + 3 > 6 slots
    w = eqs.wedge_factors(hilb2, [(2, 4, (1, 2, 3, 4, 5, 6)), (2, 3, (1, 2, 3, 4, 5))])
    assert not w


def test_bayer_budget(hilb2):
    es = eqs.bayer_equations(hilb2, budget=3)
    assert not es.complete
    assert all(P.degree <= 3 for P in es)


# -- BLMR local ---------------------------------------------------------------------


def test_t1(hilb2):
    es = eqs.blmr_t1(hilb2)
    assert len(es) == 12
    assert up_to_sign(es.polynomials) == up_to_sign(parse_all(fx.T1))
    assert all(P.degree <= hilb2.d + 2 for P in es)
    assert [l for l, _ in eqs.blmr_t1_elements(hilb2)] == ["x2*delta1[4,5,6]", "x1*delta1[4,5,6]"]


def test_t2(hilb2):
    es = eqs.blmr_t2(hilb2)
    assert len(es) == 36
    assert up_to_sign(es.polynomials) == up_to_sign(parse_all(fx.T2))
    assert len(es.distinct()) == 35
    assert [l for l, _ in eqs.blmr_t2_differences(hilb2)] == fx.T2_DIFFERENCES


def test_dedup_option(hilb2):
    assert eqs.blmr_t2(hilb2, dedup=True).polynomials == eqs.blmr_t2(hilb2).distinct()


def test_blmr_needs_d_below_n():
    ctx = gotzmann_decompose([1, 1], 2)
    assert ctx.d == 1
    eqs.blmr_t1(ctx)
    from hilbeq.hilbpoly import HilbertPolynomialContext
    bad = HilbertPolynomialContext(n=1, p_coeffs=(Fraction(1), Fraction(1)), gotzmann_coeffs=(1,), r=1, d=1)
    with pytest.raises(DegenerateDimension):
        eqs.blmr_t1(bad)
    with pytest.raises(DegenerateDimension):
        eqs.blmr_t2(bad)


# -- PGL action ---------------------------------------------------------------------


def test_induced_deg2_matches_display():
    space, A = eqs.induced_action_symbolic(2, 2)
    shown = [[GPoly.parse(space, t) for t in row] for row in fx.INDUCED_DEG2]
    assert A == shown


@pytest.mark.parametrize("n, t", [(2, 2), (1, 3), (2, 3), (3, 2)])
def test_induced_action_matches_sympy(n, t):
    space, A = eqs.induced_action_symbolic(n, t)
    oracle = induced_matrix(n, t)
    assert [[c.to_text(space) for c in row] for row in A] == [
        [GPoly.parse(space, str(c).replace("**", "^").replace(" ", "")).to_text(space) if c != 0 else "0"
         for c in row] for row in oracle]


def test_identity_action(hilb2):
    action = eqs.pgl_action_on_plucker(hilb2)
    ident = [[int(a == b) for b in range(3)] for a in range(3)]
    M = sample_subspace(hilb2, 1)
    coords = delta_from_matrix(M)
    assert act_on_coords(action, ident, coords) == coords
    degs = {d for bp in action.values() for d in bp.g_degrees()}
    assert degs == {hilb2.q_r * hilb2.r}
    assert all(bp.delta_degrees() == {1} for bp in action.values())


@pytest.mark.parametrize("g", [
    [[0, 1, 0], [1, 0, 0], [0, 0, 1]],
    [[1, 0, 0], [0, 0, 1], [0, 1, 0]],
    [[2, 1, 0], [0, 1, 3], [1, 0, 1]],
])
def test_action_matches_minors(hilb2, g):
    action = eqs.pgl_action_on_plucker(hilb2)
    for seed in range(3):
        M = sample_subspace(hilb2, seed)
        assert projectively_equal(act_on_coords(action, g, delta_from_matrix(M)),
                                  delta_from_matrix(translate(M, g)))


def _mul(a, b):
    return [[sum(a[i][k] * b[k][j] for k in range(len(b))) for j in range(len(b[0]))] for i in range(len(a))]


@settings(max_examples=8, deadline=None)
@given(st.integers(0, 10_000), st.integers(0, 10_000), st.integers(0, 10_000))
def test_action_composes(hilb2, s1, s2, s3):
    action = eqs.pgl_action_on_plucker(hilb2)
    g1, g2 = sample_pgl(2, s1), sample_pgl(2, s2)
    coords = delta_from_matrix(sample_subspace(hilb2, s3))
    twice = act_on_coords(action, g2, act_on_coords(action, g1, coords))
    assert projectively_equal(twice, act_on_coords(action, _mul(g1, g2), coords))


def test_action_order_matters(hilb2):
    action = eqs.pgl_action_on_plucker(hilb2)
    g1, g2 = sample_pgl(2, 0), sample_pgl(2, 1)
    assert _mul(g1, g2) != _mul(g2, g1)
    coords = delta_from_matrix(lexsegment_point(hilb2))
    twice = act_on_coords(action, g2, act_on_coords(action, g1, coords))
    assert projectively_equal(twice, act_on_coords(action, _mul(g1, g2), coords))
    assert not projectively_equal(twice, act_on_coords(action, _mul(g2, g1), coords))


@pytest.fixture(scope="module")
def cp(hilb2):
    return eqs.blmr_full(hilb2, DeltaPolynomial.parse(fx.CP_SEED))


def test_blmr_full_count(cp):
    assert cp.family == "BLMR_FULL"
    assert len(cp) == fx.CP_COUNT
    assert all(P.is_homogeneous() and P.degree == 2 for P in cp)


def test_blmr_full_identity_specialization(hilb2):
    P = DeltaPolynomial.parse(fx.CP_SEED)
    bp = eqs.transform_polynomial(hilb2, P)
    assert bp.g_degrees() == {hilb2.q_r * hilb2.r * 2}
    ident = [[int(a == b) for b in range(3)] for a in range(3)]
    total = DeltaPolynomial()
    from hilbeq.verify import _eval_gkey
    for key, coeff in bp.terms.items():
        v = _eval_gkey(bp.space, key, ident)
        if v:
            total = total + coeff * int(v)
    assert total == P


def test_blmr_full_many_matches(hilb2):
    polys = eqs.blmr_t1(hilb2).distinct()[:2]
    one = eqs.blmr_full_many(hilb2, polys)
    assert one.polynomials == eqs.blmr_full(hilb2, polys[0]).polynomials + eqs.blmr_full(hilb2, polys[1]).polynomials
    assert eqs.blmr_full_many(hilb2, polys, workers=2).polynomials == one.polynomials


def test_equation_set_views(hilb2):
    es = eqs.blmr_t1(hilb2)
    assert es.delta_degree == 2
    assert list(es) == es.polynomials
    assert normalize_set(es.distinct()) == es.distinct()
