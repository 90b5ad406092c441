from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from conftest import probvectors, vector_pairs
from thermolattice import (
    DimensionError,
    PLCurve,
    ProbVector,
    canonicalize,
    join,
    majorization_curve,
    majorizes,
    meet,
    normalized,
    probvec,
    spectrum_majorizes,
    uniform,
)
from thermolattice._rational import to_fraction
from thermolattice.majorization import flatten_to_concave, join_trace

P = probvec("0.6", "0.15", "0.15", "0.1")
Q = probvec("0.5", "0.25", "0.2", "0.05")


def test_probvector_validation():
    with pytest.raises(ValueError):
        probvec("1/2", "1/3")
    with pytest.raises(ValueError):
        probvec("3/2", "-1/2")
    with pytest.raises(ValueError):
        ProbVector(())
    assert normalized([1, 1, 2]) == probvec("1/4", "1/4", "1/2")
    assert uniform(3).entries == (F(1, 3),) * 3


def test_to_fraction_inputs():
    assert to_fraction("3/20") == F(3, 20)
    assert to_fraction(" 0.15 ") == F(3, 20)
    assert to_fraction(0.1) == F(1, 10)
    for bad in ("abc", float("nan"), True):
        with pytest.raises((TypeError, ValueError)):
            to_fraction(bad)


def test_canonical_representative_and_permutation():
    c = canonicalize(probvec("1/10", "1/2", "1/5", "1/5"))
    assert c.representative == probvec("1/2", "1/5", "1/5", "1/10")
    assert c.permutation == (1, 2, 3, 0)


def test_majorization_examples():
    assert majorizes(probvec(1, 0, 0), probvec("1/3", "1/3", "1/3"))
    assert not majorizes(uniform(3), probvec(1, 0, 0))
    assert majorizes(P, meet(P, Q)) and majorizes(Q, meet(P, Q))
    assert not majorizes(P, Q) and not majorizes(Q, P)
    assert spectrum_majorizes([0.9, 0.1], [0.6, 0.4])
    with pytest.raises(DimensionError):
        majorizes(uniform(2), uniform(3))


def test_curve_of_example():
    c = majorization_curve(P)
    assert c.ys == (0, F(3, 5), F(3, 4), F(9, 10), 1)
    assert c.is_concave()
    assert c(F(3, 2)) == F(27, 40)


def test_curve_validation():
    with pytest.raises(ValueError):
        PLCurve(((F(1), F(0)), (F(2), F(1))))


def test_meet_and_join_of_reference_pair():
    assert meet(P, Q) == probvec("1/2", "1/4", "3/20", "1/10")
    tr = join_trace(P, Q)
    assert tr.steps == ((1, 2, F(7, 40)),)
    assert tr.result == probvec("3/5", "7/40", "7/40", "1/20")


def test_flattening_with_weights():
    w = [F(1, 2), F(1, 4), F(1, 4)]
    g, steps = flatten_to_concave([F(1, 10), F(3, 10), F(3, 5)], w)
    assert g == w
    assert steps == [(0, 1, F(8, 15)), (0, 2, F(1))]


@given(probvectors())
def test_idempotence(p):
    assert meet(p, p) == p.sorted_desc() == join(p, p)


@given(vector_pairs())
def test_meet_and_join_bound_both(pq):
    p, q = pq
    m, j = meet(p, q), join(p, q)
    assert majorizes(p, m) and majorizes(q, m)
    assert majorizes(j, p) and majorizes(j, q)


def _upper_hull(points):
    """Least concave majorant of points sorted by x (monotone chain)."""
    hull = []
    for pt in points:
        while len(hull) >= 2:
            (x1, y1), (x2, y2) = hull[-2], hull[-1]
            if (y2 - y1) * (pt[0] - x1) <= (pt[1] - y1) * (x2 - x1):
                hull.pop()
            else:
                break
        hull.append(pt)
    return PLCurve(tuple(hull))


@given(vector_pairs())
def test_join_curve_is_concave_hull_of_max(pq):
    # independent route: upper concave envelope of the pointwise max
    p, q = pq
    fp, fq = majorization_curve(p), majorization_curve(q)
    hull = _upper_hull([(x, max(a, b)) for x, a, b in zip(fp.xs, fp.ys, fq.ys)])
    fj = majorization_curve(join(p, q))
    assert all(fj(x) == hull(x) for x in fj.xs)


@given(vector_pairs(), probvectors(min_d=2, max_d=6))
def test_join_is_least_among_upper_bounds(pq, r):
    p, q = pq
    if len(r) == len(p) and majorizes(r, p) and majorizes(r, q):
        assert majorizes(r, join(p, q))


@given(vector_pairs())
def test_flattening_terminates_within_d_minus_one_steps(pq):
    assert len(join_trace(*pq).steps) <= len(pq[0]) - 1


@given(st.lists(probvectors(d=4), min_size=3, max_size=3))
def test_transitivity(vs):
    a, b, c = sorted(vs, key=lambda v: majorization_curve(v).ys, reverse=True)
    if majorizes(a, b) and majorizes(b, c):
        assert majorizes(a, c)


@given(vector_pairs())
def test_antisymmetry_up_to_permutation(pq):
    p, q = pq
    if majorizes(p, q) and majorizes(q, p):
        assert canonicalize(p).representative == canonicalize(q).representative
