"""Seeded randomized sweeps with plain-dict summaries.

Each sample ``i`` draws from its own generator seeded by ``(seed, suite, i)``,
so a summary does not depend on evaluation order and reruns are identical.
"""

from __future__ import annotations

import csv
import io
import json
import os
import random

from .erasure import Monotone, evaluate_monotone, shannon_entropy
from .majorization import ProbVector, join, majorizes, meet
from .oracle import gp_matrix_exists
from .sampling import random_gibbs, random_pair, random_probvector
from .thermo import (
    GibbsContext,
    beta_order,
    common_beta_order,
    gibbs_rescale,
    same_beta_join,
    same_beta_meet,
    thermo_majorizes,
)

SEED_ENV = "THERMOLATTICE_SEED"
SUITES = ("oracle-agreement", "lattice-axioms", "supermodularity", "free-energy")


def default_seed() -> int:
    return int(os.environ.get(SEED_ENV, "0"))


def sample_rng(seed: int, suite: str, i: int) -> random.Random:
    return random.Random(f"{seed}:{suite}:{i}")


def _dim(rng: random.Random, d: int | None, lo: int, hi: int) -> int:
    return d if d is not None else rng.randint(lo, hi)


def oracle_agreement(n: int, seed: int, d: int | None = None) -> dict:
    """Curve test against the exact LP on random finite-temperature pairs."""
    agree, comparable, mismatches = 0, 0, []
    for i in range(n):
        rng = sample_rng(seed, "oracle-agreement", i)
        ctx = random_gibbs(rng, _dim(rng, d, 2, 5))
        p, q = random_pair(rng, ctx)
        curve = thermo_majorizes(p, q, ctx)
        lp = gp_matrix_exists(p, q, ctx.gamma).feasible
        comparable += curve
        if curve == lp:
            agree += 1
        else:
            mismatches.append(i)
    return {"suite": "oracle-agreement", "seed": seed, "n": n, "d": d,
            "agreements": agree, "comparable": comparable, "mismatches": mismatches}


def lattice_axioms(n: int, seed: int, d: int | None = None) -> dict:
    """Commutativity, associativity, absorption and bound properties, exactly."""
    counts = dict.fromkeys(("commutative", "associative", "absorption", "bounds"), 0)
    failed = []
    for i in range(n):
        rng = sample_rng(seed, "lattice-axioms", i)
        k = _dim(rng, d, 2, 6)
        p, q, r = (random_probvector(rng, k) for _ in range(3))
        m, j = meet(p, q), join(p, q)
        ps = p.sorted_desc()
        bad = []
        if m != meet(q, p) or j != join(q, p):
            bad.append("commutative")
        if meet(meet(p, q), r) != meet(p, meet(q, r)) or join(join(p, q), r) != join(p, join(q, r)):
            bad.append("associative")
        if join(p, m) != ps or meet(p, j) != ps:
            bad.append("absorption")
        if not (majorizes(p, m) and majorizes(q, m) and majorizes(j, p) and majorizes(j, q)):
            bad.append("bounds")
        for key in bad:
            counts[key] += 1
        if bad:
            failed.append(i)
    return {"suite": "lattice-axioms", "seed": seed, "n": n, "d": d,
            "violations": counts, "failed_samples": failed}


def supermodularity(n: int, seed: int, d: int | None = None, tol: float = 1e-12) -> dict:
    """Shannon supermodularity and subadditivity on the majorization lattice."""
    super_bad, sub_bad, worst = [], [], 0.0
    for i in range(n):
        rng = sample_rng(seed, "supermodularity", i)
        k = _dim(rng, d, 3, 6)
        p, q = random_probvector(rng, k), random_probvector(rng, k)
        hp, hq = shannon_entropy(p), shannon_entropy(q)
        hm, hj = shannon_entropy(meet(p, q)), shannon_entropy(join(p, q))
        slack = hm + hj - hp - hq
        worst = min(worst, slack)
        if slack < -tol:
            super_bad.append(i)
        if hm > hp + hq + tol:
            sub_bad.append(i)
    return {"suite": "supermodularity", "seed": seed, "n": n, "d": d, "tolerance": tol,
            "supermodular_violations": super_bad, "subadditive_violations": sub_bad,
            "min_slack": worst}


def free_energy(n: int, seed: int, d: int | None = None, tol: float = 1e-12) -> dict:
    """Experimental: is relative entropy to gamma submodular on a shared beta-ordering?

    Reports counterexamples rather than asserting anything.
    """
    kl = Monotone("relative-entropy")
    checked, violations = 0, []
    for i in range(n):
        rng = sample_rng(seed, "free-energy", i)
        ctx = random_gibbs(rng, _dim(rng, d, 2, 5))
        p, q = random_probvector(rng, ctx.dim), random_probvector(rng, ctx.dim)
        order = common_beta_order(p, q, ctx)
        if order is None:
            # align q with p's ordering so the pair shares one
            q = _align(p, q, ctx)
            if common_beta_order(p, q, ctx) is None:
                continue
        checked += 1
        m, j = same_beta_meet(p, q, ctx), same_beta_join(p, q, ctx)
        f = [evaluate_monotone(kl, s, ctx) for s in (p, q, m, j)]
        gap = f[2] + f[3] - f[0] - f[1]
        if gap > tol:
            violations.append({"sample": i, "excess": gap})
    return {"suite": "free-energy", "seed": seed, "n": n, "d": d, "experimental": True,
            "checked": checked, "violations": violations}


def _align(p, q, ctx: GibbsContext):
    """Permute ``q`` so its rescaled entries follow the rescaled order of ``p``."""
    g = ctx.gamma
    rq = sorted(gibbs_rescale(q, ctx), reverse=True)
    order = beta_order(p, ctx).order
    # rescaled value rq[k] goes to level order[k]; renormalize the result
    w = [None] * len(q)
    for k, lvl in enumerate(order):
        w[lvl] = rq[k] * g[lvl]
    total = sum(w)
    return ProbVector(tuple(v / total for v in w))


RUNNERS = {
    "oracle-agreement": oracle_agreement,
    "lattice-axioms": lattice_axioms,
    "supermodularity": supermodularity,
    "free-energy": free_energy,
}


def run_sweep(suite: str, n: int, seed: int | None = None, d: int | None = None) -> dict:
    if suite not in RUNNERS:
        raise ValueError(f"unknown suite {suite!r}; choose from {', '.join(SUITES)}")
    if n < 0:
        raise ValueError("n must be non-negative")
    return RUNNERS[suite](n, default_seed() if seed is None else seed, d)


def to_json(summary: dict) -> str:
    return json.dumps(summary, sort_keys=True)


def to_csv(summary: dict) -> str:
    """Flattened ``key,value`` rows; nested dicts use dotted keys, lists are JSON."""
    rows = []

    def walk(prefix, obj):
        if isinstance(obj, dict):
            for k in sorted(obj):
                walk(f"{prefix}.{k}" if prefix else k, obj[k])
        else:
            rows.append((prefix, json.dumps(obj) if isinstance(obj, list) else obj))

    walk("", summary)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(("key", "value"))
    w.writerows(rows)
    return buf.getvalue()
