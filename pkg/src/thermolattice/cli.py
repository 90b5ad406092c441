"""Command-line interface: JSON on stdout, exit 0 ok / 1 domain error / 2 usage."""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from ._rational import to_fraction
from .erasure import create_futures, erase_history
from .majorization import PLCurve, ProbVector, join_trace, majorization_curve, majorizes, meet
from .oracle import gp_matrix_exists
from .qubit import (
    QubitGibbs,
    QubitState,
    au_oracle,
    decision_margin,
    future_cone,
    gp_exists_qubit,
    qubit_join,
    qubit_meet,
    r_plus_minus,
)
from .svg import bloch_svg, curves_svg
from .sweeps import SUITES, run_sweep, to_csv, to_json
from .thermo import (
    GibbsContext,
    beta_order,
    d_level_counterexample,
    gibbs_rescale,
    join_candidates,
    meet_candidates,
    no_meet_counterexample,
    thermo_curve,
    thermo_majorizes,
    two_level_counterexample,
)


class InputError(ValueError):
    """Malformed state file or inconsistent inputs."""


@dataclass(frozen=True)
class LoadedState:
    state: ProbVector | QubitState
    context: dict | None


def _fracs(values, what: str) -> tuple[Fraction, ...]:
    if not isinstance(values, list) or not values:
        raise InputError(f"{what} must be a non-empty list")
    try:
        return tuple(to_fraction(v) for v in values)
    except (TypeError, ValueError) as exc:
        raise InputError(f"bad number in {what}: {exc}") from None


def parse_state(doc) -> LoadedState:
    """Accepts a full state document, a bare list of entries, or ``{"bloch": [...]}``."""
    if isinstance(doc, list):
        return LoadedState(ProbVector(_fracs(doc, "entries")), None)
    if not isinstance(doc, dict):
        raise InputError("state document must be a JSON object or list")
    kind = doc.get("kind", "qubit" if "bloch" in doc else "classical")
    ctx = doc.get("context")
    if ctx is not None and not isinstance(ctx, dict):
        raise InputError("context must be an object")
    if kind == "classical":
        if "entries" not in doc:
            raise InputError("classical state needs 'entries'")
        return LoadedState(ProbVector(_fracs(doc["entries"], "entries")), ctx)
    if kind == "qubit":
        b = doc.get("bloch")
        if not isinstance(b, list) or len(b) != 3:
            raise InputError("qubit state needs 'bloch': [x, y, z]")
        try:
            return LoadedState(QubitState(*(float(v) for v in b)), ctx)
        except (TypeError, ValueError) as exc:
            raise InputError(f"bad Bloch vector: {exc}") from None
    raise InputError(f"unknown state kind {kind!r}")


def load_state(path: str) -> LoadedState:
    try:
        doc = json.loads(Path(path).read_text())
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"{path} is not valid JSON: {exc.msg}") from None
    return parse_state(doc)


def classical_context(conf: dict | None, d: int) -> GibbsContext:
    if not conf:
        return GibbsContext.infinite_temperature(d)
    if "gamma" in conf:
        ctx = GibbsContext.from_gamma(_fracs(conf["gamma"], "gamma"))
    else:
        beta = conf.get("beta", "0")
        if beta == "inf":
            raise InputError("zero temperature has no strictly positive Gibbs state")
        beta = to_fraction(beta)
        if "energies" in conf:
            ctx = GibbsContext.from_energies(beta, _fracs(conf["energies"], "energies"))
        elif beta == 0:
            ctx = GibbsContext.infinite_temperature(d)
        else:
            raise InputError("a nonzero beta needs 'energies'")
    if ctx.dim != d:
        raise InputError(f"context has dimension {ctx.dim}, state has {d}")
    return ctx


def qubit_context(conf: dict | None) -> QubitGibbs:
    if not conf:
        return QubitGibbs(0.0)
    if "zeta" in conf:
        return QubitGibbs(float(conf["zeta"]))
    beta = conf.get("beta", "0")
    if beta == "inf":
        return QubitGibbs(1.0)
    es = _fracs(conf.get("energies", ["0", "1"]), "energies")
    if len(es) != 2:
        raise InputError("qubit energies must have two levels")
    return QubitGibbs.from_beta_energy(float(to_fraction(beta)), float(es[1] - es[0]))


def _cli_context(args) -> dict | None:
    conf = {}
    if getattr(args, "gamma", None):
        conf["gamma"] = args.gamma.split(",")
    if getattr(args, "beta", None) is not None:
        conf["beta"] = args.beta
    if getattr(args, "energies", None):
        conf["energies"] = args.energies.split(",")
    if getattr(args, "zeta", None) is not None:
        conf["zeta"] = args.zeta
    return conf or None


def _resolve(args, *states: LoadedState):
    """Context from flags, else from the first state file that carries one."""
    conf = _cli_context(args)
    if conf is None:
        conf = next((s.context for s in states if s.context), None)
    first = states[0].state
    if isinstance(first, QubitState):
        if not all(isinstance(s.state, QubitState) for s in states):
            raise InputError("cannot mix qubit and classical states")
        return qubit_context(conf)
    if not all(isinstance(s.state, ProbVector) for s in states):
        raise InputError("cannot mix qubit and classical states")
    dims = {len(s.state) for s in states}
    if len(dims) != 1:
        raise InputError("states have different dimensions")
    return classical_context(conf, dims.pop())


def _classical(*loaded: LoadedState) -> list[ProbVector]:
    if not all(isinstance(s.state, ProbVector) for s in loaded):
        raise InputError("this command needs classical states")
    return [s.state for s in loaded]


def _qubits(*loaded: LoadedState) -> list[QubitState]:
    if not all(isinstance(s.state, QubitState) for s in loaded):
        raise InputError("this command needs qubit states")
    return [s.state for s in loaded]


def _strs(values) -> list[str]:
    return [str(v) for v in values]


def _two(args):
    return load_state(args.p), load_state(args.q)


# ----------------------------------------------------------------------------- commands

def cmd_majorize(args):
    p, q = _classical(*_two(args))
    return {"p_majorizes_q": majorizes(p, q), "q_majorizes_p": majorizes(q, p)}


def cmd_meet(args):
    p, q = _classical(*_two(args))
    return {"meet": meet(p, q).to_json()}


def cmd_join(args):
    p, q = _classical(*_two(args))
    tr = join_trace(p, q)
    out = {"join": tr.result.to_json()}
    if args.trace:
        out["start"] = _strs(tr.start)
        out["steps"] = [{"m": m, "n": n, "value": str(b)} for m, n, b in tr.steps]
    return out


def cmd_thermo_check(args):
    a, b = _two(args)
    ctx = _resolve(args, a, b)
    p, q = _classical(a, b)
    return {"p_to_q": thermo_majorizes(p, q, ctx), "q_to_p": thermo_majorizes(q, p, ctx)}


def cmd_beta_order(args):
    a = load_state(args.p)
    ctx = _resolve(args, a)
    (p,) = _classical(a)
    return {"beta_order": beta_order(p, ctx).to_json(), "rescaled": _strs(gibbs_rescale(p, ctx))}


def cmd_curve(args):
    a = load_state(args.p)
    ctx = _resolve(args, a)
    (p,) = _classical(a)
    if ctx.is_infinite_temperature:
        curve = majorization_curve(p)
        # the drawing needs x on [0, 1]
        drawn = PLCurve(tuple((Fraction(x, len(p)), y) for x, y in curve.points))
    else:
        curve = drawn = thermo_curve(p, ctx)
    if args.svg:
        Path(args.svg).write_text(curves_svg({"p": drawn}))
    return "x,y\n" + "".join(f"{x},{y}\n" for x, y in curve.points)


def cmd_candidates(args):
    a, b = _two(args)
    ctx = _resolve(args, a, b)
    p, q = _classical(a, b)
    fn = join_candidates if args.kind == "join" else meet_candidates
    return fn(p, q, ctx).to_json()


def cmd_counterexample(args):
    if args.kind in ("two-level", "no-meet"):
        g0 = to_fraction(args.gamma0)
        ctx = GibbsContext.from_gamma((g0, 1 - g0))
        make = two_level_counterexample if args.kind == "two-level" else no_meet_counterexample
        p, q = make(g0)
    else:
        conf = _cli_context(args)
        if not conf:
            raise InputError("d-level needs --gamma or --beta with --energies")
        d = len(conf.get("gamma") or conf.get("energies") or [])
        ctx = classical_context(conf, d)
        p, q = d_level_counterexample(ctx)
    cands = (meet_candidates if args.kind == "no-meet" else join_candidates)(p, q, ctx)
    return {"kind": args.kind, "gamma": ctx.gamma.to_json(), "p": p.to_json(),
            "q": q.to_json(), "candidates": cands.to_json()}


def cmd_lp_check(args):
    a, b = _two(args)
    ctx = _resolve(args, a, b)
    p, q = _classical(a, b)
    res = gp_matrix_exists(p, q, ctx.gamma)
    w = res.witness
    return {"feasible": res.feasible,
            "witness": None if w is None else [_strs(row) for row in w.matrix]}


def cmd_qubit_exists(args):
    a, b = _two(args)
    g = _resolve(args, a, b)
    r, s = _qubits(a, b)
    out = {"exists": gp_exists_qubit(r, s, g)}
    if not g.zero_temperature:
        out["R_source"] = list(r_plus_minus(r, g))
        out["R_target"] = list(r_plus_minus(s, g))
    return out


def cmd_qubit_cone(args):
    a = load_state(args.p)
    g = _resolve(args, a)
    (r,) = _qubits(a)
    cone = future_cone(r, g)
    if args.svg:
        Path(args.svg).write_text(bloch_svg({"rho": r}, {"rho": cone}, zeta=g.zeta))
    return {"cone": cone.to_json()}


def _lattice_point(args, fn, label):
    a, b = _two(args)
    g = _resolve(args, a, b)
    r, s = _qubits(a, b)
    w = fn(r, s, g)
    if args.svg:
        cones = {"rho": future_cone(r, g), "rho'": future_cone(s, g)}
        Path(args.svg).write_text(bloch_svg({"rho": r, "rho'": s}, cones, {label: w}, g.zeta))
    return {label: {"bloch": w.to_json()}}


def cmd_qubit_join(args):
    return _lattice_point(args, qubit_join, "join")


def cmd_qubit_meet(args):
    return _lattice_point(args, qubit_meet, "meet")


def cmd_au_check(args):
    a, b = _two(args)
    g = _resolve(args, a, b)
    r, s = _qubits(a, b)
    return {"au": au_oracle(r, s, g, grid_size=args.grid),
            "closed_form": gp_exists_qubit(r, s, g),
            "margin": decision_margin(r, s, g)}


def _report(args, fn):
    a, b = _two(args)
    ctx = _resolve(args, a, b)
    return fn(a.state, b.state, ctx).to_json()


def cmd_erase(args):
    return _report(args, erase_history)


def cmd_create(args):
    return _report(args, create_futures)


def cmd_sweep(args):
    summary = run_sweep(args.suite, args.n, args.seed, args.d)
    return to_csv(summary) if args.format == "csv" else to_json(summary) + "\n"


# ----------------------------------------------------------------------------- parser

def _context_flags(sp):
    sp.add_argument("--beta", help="inverse temperature (rational) or 'inf'")
    sp.add_argument("--energies", help="comma-separated level energies")
    sp.add_argument("--gamma", help="comma-separated Gibbs populations")
    sp.add_argument("--zeta", type=float, help="qubit Gibbs Bloch z-coordinate")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="thermolattice", description=__doc__)
    sub = ap.add_subparsers(dest="command", required=True)

    def add(name, fn, states=2, context=True, svg=False):
        sp = sub.add_parser(name)
        if states >= 1:
            sp.add_argument("p", help="state file")
        if states == 2:
            sp.add_argument("q", help="state file")
        if context:
            _context_flags(sp)
        if svg:
            sp.add_argument("--svg", help="also write an SVG drawing here")
        sp.set_defaults(func=fn)
        return sp

    add("majorize", cmd_majorize, context=False)
    add("meet", cmd_meet, context=False)
    add("join", cmd_join, context=False).add_argument(
        "--trace", action="store_true", help="include the flattening steps")
    add("thermo-check", cmd_thermo_check)
    add("beta-order", cmd_beta_order, states=1)
    add("curve", cmd_curve, states=1, svg=True)
    add("candidates", cmd_candidates).add_argument(
        "--kind", choices=("join", "meet"), default="join")
    ce = add("counterexample", cmd_counterexample, states=0)
    ce.add_argument("--kind", choices=("two-level", "no-meet", "d-level"), required=True)
    ce.add_argument("--gamma0", default="3/4", help="ground population for two-level kinds")
    add("lp-check", cmd_lp_check)
    add("qubit-exists", cmd_qubit_exists)
    add("qubit-cone", cmd_qubit_cone, states=1, svg=True)
    add("qubit-join", cmd_qubit_join, svg=True)
    add("qubit-meet", cmd_qubit_meet, svg=True)
    add("au-check", cmd_au_check).add_argument("--grid", type=int, default=1001)
    add("erase", cmd_erase)
    add("create", cmd_create)
    sw = add("sweep", cmd_sweep, states=0, context=False)
    sw.add_argument("--suite", choices=SUITES, required=True)
    sw.add_argument("--seed", type=int, help="defaults to $THERMOLATTICE_SEED or 0")
    sw.add_argument("--n", type=int, default=1000)
    sw.add_argument("--d", type=int)
    sw.add_argument("--format", choices=("json", "csv"), default="json")
    return ap


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        out = args.func(args)
    except (ValueError, TypeError, ArithmeticError) as exc:
        err = {"error": type(exc).__name__, "message": str(exc)}
        sys.stdout.write(json.dumps(err) + "\n")
        return 1
    sys.stdout.write(out if isinstance(out, str) else json.dumps(out) + "\n")
    return 0


if __name__ == "__main__":
    sys.exit(main())
