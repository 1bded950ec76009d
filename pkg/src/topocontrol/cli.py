"""Batch command line front end.

Every subcommand builds a JSON report. The report is written to
``--output`` when given and otherwise printed; a short human summary goes
to stdout unless ``--json-only`` is set. Exit status is 0 on success, 1
when a verification fails and 2 on bad input.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from . import closure, nets, reach, topology
from .errors import NotAClosureOperator, NotATopology, ParseError, TopoControlError
from .setcore import Subset, Universe, mask_members

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2

SUBCOMMANDS = (
    "verify-closure",
    "build-topology",
    "inspect",
    "check-separation",
    "check-nets",
    "demo-trivial",
    "demo-schrodinger",
    "enumerate",
)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ParseError(message)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="topocontrol", description=__doc__.splitlines()[0])
    parser.add_argument("subcommand", choices=SUBCOMMANDS)
    parser.add_argument("--input", help="JSON file path or inline JSON text")
    parser.add_argument("--output", help="write the JSON report here")
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--json-only", action="store_true", help="print only the JSON report")
    parser.add_argument("--n", type=int, help="universe size")
    parser.add_argument("--F", dest="F", help="comma-separated indices of F")
    parser.add_argument("--eps", type=float)
    parser.add_argument("--K", type=int, help="sample count (trial count for check-nets)")
    parser.add_argument("--T", type=float, help="horizon")
    parser.add_argument("--dt", type=float)
    parser.add_argument("--segments", type=int)
    return parser


def _load_input(args) -> dict | None:
    if args.input is None:
        return None
    text = args.input.strip()
    if not text.startswith(("{", "[")):
        try:
            text = Path(args.input).read_text(encoding="utf-8")
        except OSError as exc:
            raise ParseError(f"cannot read input: {exc}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"input is not valid JSON: {exc}") from None


def _parse_F(args) -> list[int] | None:
    if args.F is None:
        return None
    parts = [p.strip() for p in args.F.split(",") if p.strip()]
    try:
        return [int(p) for p in parts]
    except ValueError:
        raise ParseError(f"--F must be comma-separated integers, got {args.F!r}") from None


def _operator(args, data) -> closure.ClosureOperator:
    if data is not None:
        return closure.ClosureOperator.from_json(data, n=args.n)
    F = _parse_F(args)
    if args.n is None or F is None:
        raise ParseError("need --input or both --n and --F")
    U = Universe(args.n)
    return closure.make_mu(U, Subset.of(U, F))


def _topology(args, data) -> topology.FiniteTopology:
    if data is not None:
        if "opens" not in data:
            raise ParseError('topology JSON needs "universe" and "opens"')
        return topology.FiniteTopology.from_json(data)
    F = _parse_F(args)
    if args.n is None or F is None:
        raise ParseError("need --input or both --n and --F")
    U = Universe(args.n)
    return topology.mu_topology(U, Subset.of(U, F))


def _labelled(t: topology.FiniteTopology, mask: int) -> list[str]:
    return [t.universe.label(i) for i in mask_members(mask)]


def cmd_verify_closure(args, data):
    gamma = _operator(args, data)
    mode = "exhaustive" if gamma.universe.size <= closure.EXHAUSTIVE_BOUND else "sampled"
    report = closure.verify_kuratowski(gamma, mode, seed=args.seed)
    out = {"operator": gamma.to_json(), "mode": mode, "axioms": report.to_json(), "pass": report.passed}
    lines = [f"{name}: {'pass' if r.passed else 'FAIL'}" for name, r in report.results.items()]
    return out, lines, EXIT_OK if report.passed else EXIT_FAIL


def cmd_build_topology(args, data):
    gamma = _operator(args, data)
    try:
        t = closure.topology_from_closure(gamma)
    except NotAClosureOperator as exc:
        out = {
            "operator": gamma.to_json(),
            "error": {"code": exc.code, "message": str(exc)},
            "axioms": exc.report.to_json(),
        }
        return out, [f"rejected: {exc}"], EXIT_FAIL
    out = {"operator": gamma.to_json(), "topology": t.to_json(), "open_count": len(t)}
    return out, [f"{len(t)} open sets"], EXIT_OK


def cmd_inspect(args, data):
    t = _topology(args, data)
    full = t.universe.full_mask
    out = {
        "topology": t.to_json(),
        "opens_labelled": [_labelled(t, m) for m in t.masks],
        "closed": [list(mask_members(m)) for m in t.closed_masks],
        "open_count": len(t),
        "singleton_closures": {
            t.universe.label(x): _labelled(t, topology.closure_mask(t, 1 << x)) for x in range(t.universe.size)
        },
    }
    F = _parse_F(args)
    if data is not None and F is not None:
        image = closure.mu_image(t, Subset.of(t.universe, F))
        out["mu_image"] = [s.to_json() for s in image]
    dense = [t.universe.label(x) for x in range(t.universe.size) if topology.closure_mask(t, 1 << x) == full]
    out["dense_points"] = dense
    return out, [f"{len(t)} open sets on {t.universe.size} points"], EXIT_OK


def cmd_check_separation(args, data):
    t = _topology(args, data)
    prof = topology.separation_profile(t)
    out = {"topology": t.to_json(), "separation": prof.to_json()}
    lines = [f"t0={prof.t0} t1={prof.t1} hausdorff={prof.hausdorff}"]
    return out, lines, EXIT_OK


def cmd_check_nets(args, data):
    t = _topology(args, data)
    ok = nets.check_closure_net_theorem(t)
    out = {"topology": t.to_json(), "closure_net_theorem": ok}
    F = _parse_F(args)
    if data is not None and F is not None:
        trials = args.K if args.K is not None else 1000
        lemma = nets.check_final_lemma(t, Subset.of(t.universe, F), trials, args.seed)
        out["final_lemma"] = {"F": sorted(F), "trials": trials, "seed": args.seed, "pass": lemma}
        ok = ok and lemma
    lines = [f"closure-net theorem: {out['closure_net_theorem']}"]
    if "final_lemma" in out:
        lines.append(f"final lemma: {out['final_lemma']['pass']}")
    return out, lines, EXIT_OK if ok else EXIT_FAIL


def cmd_enumerate(args, data):
    if args.n is None:
        raise ParseError("enumerate needs --n")
    tops = list(topology.enumerate_topologies(args.n))
    out = {"n": args.n, "count": len(tops), "topologies": [[list(mask_members(m)) for m in t.masks] for t in tops]}
    return out, [f"{len(tops)} topologies on {args.n} points"], EXIT_OK


def cmd_demo_trivial(args, data):
    data = data or {}
    c = float(data.get("c", 1.0))
    amplitude = float(data.get("P", 2.0))
    lo, hi, step = (float(v) for v in data.get("grid", [-3.0, 3.0, 0.5]))
    rows = tuple(float(v) for v in data.get("x1_rows", [c - 1.0, c, c + 1.0]))
    T = args.T if args.T is not None else 1.0
    K = args.K if args.K is not None else 50
    eps = args.eps if args.eps is not None else 0.5
    segments = args.segments if args.segments is not None else 1
    system = reach.trivial_system(c, segments, amplitude)
    cloud = reach.attainable_cloud(system, np.array([c, 0.0]), T, K, args.seed)
    targets = [np.array([0.0, 0.0]), np.array([c, 0.0])]
    density = reach.check_eps_density(cloud, targets, eps)
    mu = reach.check_mu_controllability(cloud, reach.TrivialGrid(lo, hi, step, rows))
    out = {
        "cloud": cloud.to_json(),
        "x1_pinned": bool(all(s.terminal[0] == c for s in cloud.samples)),
        "targets": [reach.state_to_json(x) for x in targets],
        "eps_density": density.to_json(),
        "mu_controllability": mu.to_json(),
    }
    lines = [
        f"{K} samples, x1 pinned to c={c:g}: {out['x1_pinned']}",
        f"eps={eps:g} density against targets: {density.dense}",
        f"mu-topology density of attained cells: {mu.dense} (hausdorff={mu.hausdorff})",
    ]
    return out, lines, EXIT_OK


_STATES = {"sine": reach.sine_state, "zero": reach.zero_state, "sine3": reach.smooth_state}


def cmd_demo_schrodinger(args, data):
    data = data or {}
    n_grid = int(data.get("N", 63))
    amplitude = float(data.get("P", 5.0))
    start = data.get("phi0", "sine")
    if start not in _STATES:
        raise ParseError(f"phi0 must be one of {sorted(_STATES)}")
    intervals = tuple(tuple(float(v) for v in iv) for iv in data.get("intervals", [[0.0, 0.5]]))
    width = float(data.get("width", 0.1))
    T = args.T if args.T is not None else 0.1
    dt = args.dt if args.dt is not None else 1e-3
    K = args.K if args.K is not None else 50
    eps = args.eps if args.eps is not None else 0.1
    segments = args.segments if args.segments is not None else 4
    system = reach.schrodinger_system(n_grid, dt, segments, amplitude)
    phi0 = _STATES[start](n_grid)
    cloud = reach.attainable_cloud(system, phi0, T, K, args.seed)
    norm0 = reach.l2_norm(phi0)
    drift = max(abs(reach.l2_norm(s.terminal) - norm0) for s in cloud.samples)
    target = reach.sine_state(n_grid)
    density = reach.check_eps_density(cloud, [target], eps)
    mu = reach.check_mu_controllability(cloud, reach.ProbabilityBins(intervals, width))
    out = {
        "phi0": start,
        "cloud": cloud.to_json(),
        "norm_drift_max": drift,
        "max_amplitude": float(max(np.abs(s.terminal).max() for s in cloud.samples)),
        "eps_density": density.to_json(),
        "mu_controllability": mu.to_json(),
    }
    lines = [
        f"{K} samples from phi0={start}, max norm drift {drift:.3e}",
        f"eps={eps:g} density against sin(pi x): {density.dense}",
        f"mu-topology density of attained cells: {mu.dense} (hausdorff={mu.hausdorff})",
    ]
    return out, lines, EXIT_OK


HANDLERS = {
    "verify-closure": cmd_verify_closure,
    "build-topology": cmd_build_topology,
    "inspect": cmd_inspect,
    "check-separation": cmd_check_separation,
    "check-nets": cmd_check_nets,
    "enumerate": cmd_enumerate,
    "demo-trivial": cmd_demo_trivial,
    "demo-schrodinger": cmd_demo_schrodinger,
}


def dumps(report: dict) -> str:
    return json.dumps(report, indent=2, sort_keys=True, allow_nan=False) + "\n"


def run(argv: list[str] | None = None, stdout=None) -> int:
    """Execute one invocation and return its exit status."""
    stdout = stdout or sys.stdout
    argv = sys.argv[1:] if argv is None else list(argv)
    args = None
    try:
        args = build_parser().parse_args(argv)
        out, lines, status = HANDLERS[args.subcommand](args, _load_input(args))
    except (NotATopology, NotAClosureOperator) as exc:
        out, lines, status = _error_report(exc), [f"error: {exc}"], EXIT_FAIL
    except (TopoControlError, ValueError, KeyError, TypeError) as exc:
        out, lines, status = _error_report(exc), [f"error: {exc}"], EXIT_INPUT

    report = {
        "command": getattr(args, "subcommand", None),
        "seed": getattr(args, "seed", None),
        "status": status,
        **out,
    }
    text = dumps(report)
    # argv may not have parsed; fall back to a raw flag scan
    json_only = getattr(args, "json_only", "--json-only" in argv)
    output = getattr(args, "output", None)
    if output:
        Path(output).write_text(text, encoding="utf-8")
    if not json_only:
        stdout.write("\n".join(lines) + "\n")
    if not output or json_only:
        stdout.write(text)
    return status


def _error_report(exc: Exception) -> dict:
    code = getattr(exc, "code", "invalid_input")
    out = {"error": {"code": code, "message": str(exc)}}
    report = getattr(exc, "report", None)
    if report is not None:
        out["report"] = report.to_json()
    return out


def main() -> None:
    sys.exit(run())
