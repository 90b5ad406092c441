import math
import random
from fractions import Fraction as F

import numpy as np
import pytest
from hypothesis import given

from conftest import thermo_pairs, vector_pairs
from thermolattice import probvec
from thermolattice.erasure import (
    Monotone,
    asymmetry_gap,
    create_futures,
    erase_history,
    evaluate_monotone,
    shannon_entropy,
)
from thermolattice.qubit import QubitGibbs, QubitState, gp_exists_qubit, qubit_meet
from thermolattice.sampling import random_probvector
from thermolattice.thermo import GibbsContext, meet_candidates, thermo_majorizes, two_level_counterexample

P = probvec("0.6", "0.15", "0.15", "0.1")
Q5 = probvec("0.5", "0.25", "0.2", "0.05")
HOT4 = GibbsContext.infinite_temperature(4)
G34 = GibbsContext.from_gamma((F(3, 4), F(1, 4)))


def test_entropy_deficit_of_reference_state():
    value = evaluate_monotone(Monotone("shannon"), P, HOT4)
    # hand sum: 0.6 ln 0.6 + 2 (0.15 ln 0.15) + 0.1 ln 0.1 = -1.10589
    assert math.isclose(value, 0.28040, abs_tol=1e-5)
    assert math.isclose(value, math.log(4) - shannon_entropy(P))


def test_monotone_validation():
    with pytest.raises(ValueError):
        Monotone("renyi", 1.0)
    with pytest.raises(ValueError):
        Monotone("tsallis")
    assert Monotone("renyi", 0.5).label == "renyi-0.5"


def test_erasure_at_infinite_temperature():
    rep = erase_history(P, Q5, HOT4)
    assert rep.verdict == "unique-optimum"
    assert rep.optimal_states == (probvec("1/2", "1/4", "3/20", "1/10"),)
    rep = create_futures(P, Q5, HOT4)
    assert rep.optimal_states == (probvec("3/5", "7/40", "7/40", "1/20"),)
    for label, costs in rep.costs.items():
        assert costs["optimal"][0] >= max(costs["inputs"]) - 1e-12, label


def test_multiple_candidates_at_finite_temperature():
    p, q = two_level_counterexample(F(3, 4))
    assert erase_history(p, q, G34).verdict == "multiple-candidates"
    rep = create_futures(p, q, G34)
    assert rep.verdict == "multiple-candidates"
    assert set(rep.optimal_states) == {probvec(1, 0), probvec("3/8", "5/8")}


def test_qubit_erasure_uses_coherence():
    g = QubitGibbs(0.5)
    a, b = QubitState(0.4, 0, 0.6), QubitState(0.3, 0, 0.2)
    rep = erase_history(a, b, g)
    assert rep.verdict == "unique-optimum" and rep.optimal_states[0].x > 0
    c, d = QubitState(0, 0, -0.8), QubitState(0.4, 0, 0.4)
    assert create_futures(c, d, QubitGibbs(0.2)).optimal_states[0].bloch == pytest.approx(c.bloch)


def test_comparable_shortcut_costs_nothing_extra():
    q = probvec("0.4", "0.3", "0.2", "0.1")
    rep = erase_history(P, q, HOT4)
    assert rep.method == "comparable" and rep.optimal_states == (q,)
    for costs in rep.costs.values():
        assert costs["optimal"][0] == costs["inputs"][1]


def test_renyi_limit_is_relative_entropy():
    # D_a = D + (a - 1) V / 2 + O((a - 1)^2), V the variance of ln(p / gamma) under p
    rng = random.Random(2)
    ctx = GibbsContext.from_gamma(probvec("1/2", "3/10", "1/5"))
    for _ in range(50):
        p = random_probvector(rng, 3)
        kl = evaluate_monotone(Monotone("relative-entropy"), p, ctx)
        logs = [(float(a), math.log(a / g)) for a, g in zip(p, ctx.gamma) if a > 0]
        var = sum(a * v * v for a, v in logs) - sum(a * v for a, v in logs) ** 2
        for a in (1 - 1e-4, 1 + 1e-4):
            renyi = evaluate_monotone(Monotone("renyi", a), p, ctx)
            assert abs(renyi - kl - (a - 1) * var / 2) < 1e-6


def test_qubit_renyi_limit_and_classical_agreement():
    g = QubitGibbs(0.4)
    s = QubitState(0, 0, -0.3)
    ctx = GibbsContext.from_gamma((F(7, 10), F(3, 10)))
    p = probvec("0.35", "0.65")
    for m in (Monotone("relative-entropy"), Monotone("renyi", 0.5), Monotone("renyi", 2.0)):
        assert math.isclose(evaluate_monotone(m, s, g), evaluate_monotone(m, p, ctx), abs_tol=1e-12)


@given(vector_pairs(min_d=3, max_d=6))
def test_asymmetry_gap(pq):
    lhs, rhs = asymmetry_gap(*pq)
    assert lhs >= rhs - 1e-12


def test_asymmetry_gap_degenerate():
    assert asymmetry_gap(P, P) == (0.0, 0.0)


@given(thermo_pairs(max_d=4))
def test_erasure_states_are_lower_bounds(data):
    ctx, p, q = data
    for s in erase_history(p, q, ctx).optimal_states:
        assert thermo_majorizes(p, s, ctx) and thermo_majorizes(q, s, ctx)
    for s in create_futures(p, q, ctx).optimal_states:
        assert thermo_majorizes(s, p, ctx) and thermo_majorizes(s, q, ctx)


def test_coherent_meet_beats_classical_candidates():
    # incoherent incomparable qubit pairs: the coherent meet sits above every classical one
    rng = np.random.default_rng(4)
    g = QubitGibbs(0.5)
    g0 = F(3, 4)
    ctx = GibbsContext.from_gamma((g0, 1 - g0))
    checked = 0
    while checked < 30:
        a, b = sorted(rng.random(2))
        p = probvec(F(a).limit_denominator(1000), 1 - F(a).limit_denominator(1000))
        q = probvec(F(b).limit_denominator(1000), 1 - F(b).limit_denominator(1000))
        if thermo_majorizes(p, q, ctx) or thermo_majorizes(q, p, ctx):
            continue
        checked += 1
        ra, rb = QubitState.incoherent(p[0]), QubitState.incoherent(q[0])
        w = qubit_meet(ra, rb, g)
        for c in meet_candidates(p, q, ctx).states:
            rc = QubitState.incoherent(c[0])
            assert gp_exists_qubit(w, rc, g, tol=1e-8)
            for m in (Monotone("relative-entropy"), Monotone("renyi", 2.0)):
                assert evaluate_monotone(m, w, g) >= evaluate_monotone(m, rc, g) - 1e-10
