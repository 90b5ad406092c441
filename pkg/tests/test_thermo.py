import itertools
import math
from fractions import Fraction as F

import pytest
from hypothesis import given

from conftest import gibbs_contexts, probvectors, thermo_pairs
from thermolattice import majorizes, probvec
from thermolattice.oracle import gp_matrix_exists
from thermolattice.thermo import (
    GibbsContext,
    OrderingMismatch,
    beta_order,
    common_beta_order,
    d_level_counterexample,
    gibbs_rescale,
    join_candidates,
    meet_candidates,
    no_meet_counterexample,
    same_beta_join,
    same_beta_meet,
    thermo_curve,
    thermo_majorizes,
    two_level_counterexample,
)

G34 = GibbsContext.from_gamma((F(3, 4), F(1, 4)))


def test_rescale_and_ordering():
    assert gibbs_rescale(probvec("0.875", "0.125"), G34) == (F(7, 6), F(1, 2))
    assert beta_order(probvec("2/3", "1/3"), G34).order == (1, 0)
    assert beta_order(probvec("7/8", "1/8"), G34).order == (0, 1)


def test_context_validation():
    with pytest.raises(ValueError):
        GibbsContext.from_gamma((F(1, 4), F(3, 4)))
    with pytest.raises(ValueError):
        GibbsContext.from_gamma((F(1), F(0)))
    ctx = GibbsContext.from_energies(0, [0, 1, 2])
    assert ctx.is_infinite_temperature
    hot = GibbsContext.from_energies(1, [0, 1])
    assert abs(float(hot.gamma[0]) - 1 / (1 + math.exp(-1))) < 1e-9


def test_thermo_curve_points():
    c = thermo_curve(probvec("2/3", "1/3"), G34)
    assert c.points == ((0, 0), (F(1, 4), F(1, 3)), (1, 1))


def test_two_level_counterexample_values():
    p, q = two_level_counterexample(F(3, 5))
    assert (p, q) == (probvec("4/5", "1/5"), probvec("1/3", "2/3"))
    p, q = no_meet_counterexample(F(3, 5))
    assert (p[0], q[0]) == (F(9, 10), F(7, 30))
    with pytest.raises(ValueError):
        two_level_counterexample(F(1, 2))


def test_two_level_candidates_at_three_quarters():
    p, q = two_level_counterexample(F(3, 4))
    cands = join_candidates(p, q, G34)
    assert cands.verdict == "no-join"
    assert set(cands.states) == {probvec(1, 0), probvec("3/8", "5/8")}


def test_two_level_construction_needs_large_ground_population():
    # below 2 - sqrt(2) the second state already lies above the first
    for g0 in (F(11, 20), F(29, 50)):
        ctx = GibbsContext.from_gamma((g0, 1 - g0))
        p, q = two_level_counterexample(g0)
        assert q[0] < g0 / 2 < p[0]
        assert thermo_majorizes(q, p, ctx)
        assert gp_matrix_exists(q, p, ctx.gamma).feasible
        assert join_candidates(p, q, ctx).states == [q]
    for g0 in (F(59, 100), F(3, 5)):
        p, q = two_level_counterexample(g0)
        assert join_candidates(p, q, GibbsContext.from_gamma((g0, 1 - g0))).verdict == "no-join"
    assert 0.58 < 2 - math.sqrt(2) < 0.59


def test_d_level_reference_spectrum():
    ctx = GibbsContext.from_gamma((F(1, 2), F(3, 10), F(1, 5)))
    p, q = d_level_counterexample(ctx)
    assert p == probvec(0, "4/5", "1/5")
    assert join_candidates(p, q, ctx).verdict == "no-join"
    with pytest.raises(ValueError):
        d_level_counterexample(GibbsContext.from_gamma((F(1, 2), F(1, 4), F(1, 4))))


@given(thermo_pairs())
def test_curve_test_matches_lp(data):
    ctx, p, q = data
    assert thermo_majorizes(p, q, ctx) == gp_matrix_exists(p, q, ctx.gamma).feasible


@given(probvectors(min_d=2, max_d=5), probvectors(min_d=2, max_d=5))
def test_infinite_temperature_is_majorization(p, q):
    if len(p) == len(q):
        ctx = GibbsContext.infinite_temperature(len(p))
        assert thermo_majorizes(p, q, ctx) == majorizes(p, q)


@given(gibbs_contexts(), probvectors(min_d=2, max_d=5))
def test_gibbs_state_is_bottom(ctx, p):
    if len(p) == ctx.dim:
        assert thermo_majorizes(p, ctx.gamma, ctx)
        if thermo_majorizes(ctx.gamma, p, ctx):
            assert p == ctx.gamma


@given(thermo_pairs())
def test_reflexive(data):
    ctx, p, _ = data
    assert thermo_majorizes(p, p, ctx)


def test_degenerate_subspace_follows_majorization():
    ctx = GibbsContext.from_gamma((F(2, 5), F(1, 5), F(1, 5), F(1, 5)))
    p = probvec(0, "1/2", "1/3", "1/6")
    q = probvec(0, "1/3", "1/3", "1/3")
    assert thermo_majorizes(p, q, ctx) and not thermo_majorizes(q, p, ctx)
    assert majorizes(probvec("1/2", "1/3", "1/6"), probvec("1/3", "1/3", "1/3"))


def _shared_pair(ctx, p, q):
    return common_beta_order(p, q, ctx) is not None


@given(thermo_pairs(max_d=4))
def test_same_beta_bounds_are_extremal_among_lp_bounds(data):
    ctx, p, q = data
    if not _shared_pair(ctx, p, q):
        with pytest.raises(OrderingMismatch):
            same_beta_meet(p, q, ctx)
        return
    m, j = same_beta_meet(p, q, ctx), same_beta_join(p, q, ctx)
    for a in (p, q):
        assert thermo_majorizes(a, m, ctx)
        assert thermo_majorizes(j, a, ctx)
    # the LP candidate for the shared ordering is j itself, unless pruned by one below it
    states = join_candidates(p, q, ctx).states
    assert j in states or any(thermo_majorizes(j, c, ctx) for c in states)


@given(thermo_pairs(max_d=4))
def test_same_beta_lattice_axioms(data):
    ctx, p, q = data
    if not _shared_pair(ctx, p, q):
        return
    assert same_beta_meet(p, q, ctx) == same_beta_meet(q, p, ctx)
    assert same_beta_join(p, q, ctx) == same_beta_join(q, p, ctx)
    assert same_beta_join(p, same_beta_meet(p, q, ctx), ctx) == p
    assert same_beta_meet(p, same_beta_join(p, q, ctx), ctx) == p


@given(thermo_pairs(max_d=4))
def test_candidates_are_bounds_and_antichains(data):
    ctx, p, q = data
    for cands, up in ((join_candidates(p, q, ctx), True), (meet_candidates(p, q, ctx), False)):
        for c in cands.states:
            for a in (p, q):
                assert thermo_majorizes(c, a, ctx) if up else thermo_majorizes(a, c, ctx)
        for a, b in itertools.permutations(cands.states, 2):
            assert not thermo_majorizes(a, b, ctx)
        assert cands.unique == (len(cands.states) == 1)
