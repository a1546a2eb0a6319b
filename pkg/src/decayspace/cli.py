"""Command-line front end for decay-space analysis.

Every command loads its inputs, dispatches to the library, and prints
one canonical JSON report: {"command", "config", "version", "results",
"timing"}. Reports are deterministic for a fixed config and seed once
the timing block is dropped. Exit codes: 0 for a clean run, 1 when a
checked property is violated, 2 for usage or input errors.

The default tolerance for metricity searches can be set through the
DECAYSPACE_TOL environment variable; flags override it.
"""

import argparse
import dataclasses
import json
import os
import sys
import time

from . import __version__
from .spaces import (
    NODE_SPACE,
    analyze_metricity,
    compute_zeta,
    quasi_distances,
    validate_space,
)
from .links import is_feasible
from .capacity import (
    capacity_oracle,
    capacity_uniform,
    separation_strengthen,
    signal_strengthen,
)
from .analysis import assouad_estimate, fading_bound, fading_parameter
from .generators import (
    gen_equidecay_graph,
    gen_euclidean,
    gen_star,
    gen_threepoint,
    gen_twoline,
    gen_welzl,
    random_graph,
    random_points,
)
from .io import dumps_canonical, load_space, load_system, save_space, save_system
from .verify import run_verify


ORACLE_AUTO_LIMIT = 14


class UsageError(Exception):
    pass


def _default_tol():
    raw = os.environ.get("DECAYSPACE_TOL")
    if raw is None:
        return 1e-9
    try:
        tol = float(raw)
    except ValueError:
        raise UsageError("DECAYSPACE_TOL is not a number: %r" % raw)
    if not (tol > 0):
        raise UsageError("DECAYSPACE_TOL must be positive")
    return tol


def _plain(obj):
    if dataclasses.is_dataclass(obj) and not isinstance(obj, type):
        return _plain(dataclasses.asdict(obj))
    if isinstance(obj, dict):
        return {str(k): _plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_plain(v) for v in obj]
    return obj


def _emit(command, config, results, t0, out=None):
    report = {
        "command": command,
        "config": _plain(config),
        "version": __version__,
        "results": _plain(results),
        "timing": {"seconds": time.perf_counter() - t0},
    }
    text = dumps_canonical(report) + "\n"
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _load_space(path):
    try:
        return load_space(path)
    except (OSError, ValueError, KeyError, json.JSONDecodeError) as exc:
        raise UsageError("cannot read space %s: %s" % (path, exc))


def _load_system(path):
    try:
        return load_system(path)
    except (OSError, ValueError, KeyError, json.JSONDecodeError) as exc:
        raise UsageError("cannot read system %s: %s" % (path, exc))


def _resolve_zeta(flag, space, tol):
    if flag == "auto":
        return float(compute_zeta(space, tol=tol)[1])
    try:
        zeta = float(flag)
    except ValueError:
        raise UsageError("--zeta takes 'auto' or a number, got %r" % flag)
    if not (zeta >= 1):
        raise UsageError("--zeta must be at least 1")
    return zeta


def _cmd_validate(args):
    t0 = time.perf_counter()
    space = _load_space(args.space)
    res = validate_space(space)
    results = {
        "ok": res.ok,
        "mode": space.mode,
        "n": space.n,
        "violations": [
            {"code": code, "i": i, "j": j} for code, i, j in res.violations
        ],
    }
    _emit("validate", {"space": args.space}, results, t0, args.out)
    return 0 if res.ok else 1


def _cmd_analyze(args):
    t0 = time.perf_counter()
    tol = args.tol if args.tol is not None else _default_tol()
    space = _load_space(args.space)
    rep = analyze_metricity(space, tol=tol)
    zeta = rep.zeta if args.zeta == "auto" else _resolve_zeta(args.zeta, space, tol)
    quasi_ok = True
    witness = None
    try:
        quasi_distances(space, zeta, tol=max(tol, 1e-7), check=True)
    except ValueError as exc:
        quasi_ok = False
        witness = str(exc)
    results = {
        "metricity": rep,
        "quasi": {"zeta": zeta, "consistent": quasi_ok, "witness": witness},
    }
    config = {"space": args.space, "tol": tol, "zeta": args.zeta}
    _emit("analyze", config, results, t0, args.out)
    return 0 if quasi_ok else 1


def _cmd_capacity(args):
    t0 = time.perf_counter()
    tol = args.tol if args.tol is not None else _default_tol()
    sys_ = _load_system(args.system)
    zeta = _resolve_zeta(args.zeta, sys_.space, tol)
    want_oracle = args.oracle == "on" or (
        args.oracle == "auto" and sys_.n_links <= ORACLE_AUTO_LIMIT
    )
    greedy = capacity_uniform(sys_, zeta)
    result = {
        "selected": greedy.selected,
        "intermediate": greedy.intermediate,
        "skipped": greedy.skipped,
        "opt": None,
        "opt_set": None,
        "ratio": None,
    }
    if want_oracle:
        opt, opt_set = capacity_oracle(sys_, max_n=max(sys_.n_links, 1))
        result["opt"] = opt
        result["opt_set"] = opt_set
        result["ratio"] = opt / max(1, len(greedy.selected))
    chosen = greedy.selected
    ok = True
    if chosen:
        ok = bool(is_feasible(sys_, list(chosen), 1.0)[0])
    result["selected_feasible"] = ok
    config = {"system": args.system, "zeta": args.zeta, "oracle": args.oracle}
    _emit("capacity", config, result, t0, args.out)
    return 0 if ok else 1


def _cmd_partition(args):
    t0 = time.perf_counter()
    tol = args.tol if args.tol is not None else _default_tol()
    sys_ = _load_system(args.system)
    S = list(range(sys_.n_links))
    if args.kind == "signal":
        try:
            part = signal_strengthen(sys_, S, args.p, args.q)
        except ValueError as exc:
            raise UsageError("signal partition rejected the input: %s" % exc)
        bad = [
            i
            for i, cls in enumerate(part.classes)
            if cls and not is_feasible(sys_, list(cls), args.q)[0]
        ]
        results = {
            "kind": "signal",
            "classes": part.classes,
            "bound": part.bound,
            "certificate": part.certificate,
            "violating_classes": bad,
        }
        config = {"system": args.system, "kind": "signal", "p": args.p, "q": args.q}
        _emit("partition", config, results, t0, args.out)
        return 0 if not bad else 1
    zeta = _resolve_zeta(args.zeta, sys_.space, tol)
    quasi = quasi_distances(sys_.space, zeta, check=sys_.space.mode == NODE_SPACE)
    tau = args.tau if args.tau is not None else 1.0 / zeta
    eta = args.eta if args.eta is not None else zeta
    try:
        part = separation_strengthen(sys_, quasi, S, tau, eta)
    except ValueError as exc:
        raise UsageError("separation partition rejected the input: %s" % exc)
    results = {
        "kind": "separation",
        "classes": part.classes,
        "bound": part.bound,
        "certificate": part.certificate,
        "violating_classes": [],
    }
    config = {
        "system": args.system,
        "kind": "separation",
        "zeta": args.zeta,
        "tau": tau,
        "eta": eta,
    }
    _emit("partition", config, results, t0, args.out)
    return 0


def _cmd_fading(args):
    t0 = time.perf_counter()
    tol = args.tol if args.tol is not None else _default_tol()
    space = _load_space(args.space)
    if not (args.r > 0):
        raise UsageError("--r must be positive")
    quasi = None
    if args.separation == "quasi":
        zeta = float(compute_zeta(space, tol=tol)[1])
        quasi = quasi_distances(space, zeta)
    rep = fading_parameter(space, args.r, exact_limit=args.exact_limit, quasi=quasi)
    results = {"fading": rep}
    code = 0
    if args.C != "off":
        C = None if args.C == "fit" else float(args.C)
        est = assouad_estimate(space, C=C, exact_limit=args.exact_limit)
        block = {"estimate": est, "bound": None, "within_bound": None}
        if est.assouad < 1.0:
            bound = fading_bound(est.C, est.assouad)
            within = bool(rep.gamma <= bound + 1e-9)
            block["bound"] = bound
            block["within_bound"] = within
            if rep.exact and not within:
                code = 1
        results["growth"] = block
    config = {
        "space": args.space,
        "r": args.r,
        "C": args.C,
        "exact_limit": args.exact_limit,
        "separation": args.separation,
    }
    _emit("fading", config, results, t0, args.out)
    return code


def _parse_params(raw):
    if not raw:
        return {}
    try:
        params = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise UsageError("--params is not valid JSON: %s" % exc)
    if not isinstance(params, dict):
        raise UsageError("--params must be a JSON object")
    return params


def _take(params, name, default=None, required=False):
    if name in params:
        return params.pop(name)
    if required:
        raise UsageError("generate: missing parameter %r" % name)
    return default


def _gen_edges(params, seed):
    n = int(_take(params, "n", required=True))
    if "edges" in params:
        edges = [tuple(e) for e in _take(params, "edges")]
    else:
        p = float(_take(params, "p", 0.5))
        if seed is None:
            raise UsageError("generate: random edges need --seed")
        edges = random_graph(n, p, seed)[1]
    return n, edges


def _cmd_generate(args):
    t0 = time.perf_counter()
    params = _parse_params(args.params)
    family = args.family
    system = None
    space = None
    if family == "euclidean":
        alpha = float(_take(params, "alpha", required=True))
        if "points" in params:
            pts = _take(params, "points")
        else:
            n = int(_take(params, "n", required=True))
            if args.seed is None:
                raise UsageError("generate: random points need --seed")
            pts = random_points(
                n, args.seed, plant_collinear=bool(_take(params, "plant_collinear", False))
            )
        space = gen_euclidean(pts, alpha)
    elif family == "threepoint":
        space = gen_threepoint(float(_take(params, "q", required=True)))
    elif family == "star":
        space = gen_star(int(_take(params, "k", required=True)),
                         float(_take(params, "r", required=True)))
    elif family == "welzl":
        eps = float(_take(params, "eps", 1e-6))
        space = gen_welzl(int(_take(params, "n", required=True)), eps=eps)
    elif family == "equidecay":
        n, edges = _gen_edges(params, args.seed)
        far = _take(params, "far_decay")
        system = gen_equidecay_graph(n, edges, far_decay=far)
    elif family == "twoline":
        n, edges = _gen_edges(params, args.seed)
        alpha = float(_take(params, "alpha", required=True))
        delta = float(_take(params, "delta", 0.25))
        system = gen_twoline(n, edges, alpha, delta=delta)
    else:
        raise UsageError("unknown family %r" % family)
    if params:
        raise UsageError("generate: unused parameters %s" % sorted(params))
    try:
        if system is not None:
            save_system(system, args.out)
            results = {
                "family": family,
                "kind": "system",
                "links": system.n_links,
                "nodes": system.space.n,
                "path": args.out,
            }
        else:
            save_space(space, args.out)
            results = {
                "family": family,
                "kind": "space",
                "nodes": space.n,
                "mode": space.mode,
                "path": args.out,
            }
    except OSError as exc:
        raise UsageError("cannot write %s: %s" % (args.out, exc))
    config = {"family": family, "params": args.params, "seed": args.seed, "out": args.out}
    _emit("generate", config, results, t0, None)
    return 0


def _cmd_verify(args):
    t0 = time.perf_counter()
    corpus = "builtin" if args.corpus == ["builtin"] else list(args.corpus)
    rep = run_verify(seed=args.seed, corpus=corpus)
    results = {"ok": rep["ok"], "items": rep["items"]}
    config = {"seed": args.seed, "corpus": corpus}
    _emit("verify", config, results, t0, args.out)
    return 0 if rep["ok"] else 1


def build_parser():
    parser = argparse.ArgumentParser(
        prog="decayspace",
        description="Analyze decay spaces: metricity, capacity, partitions, fading.",
        epilog="Exit codes: 0 clean, 1 property violation, 2 usage or input error. "
        "DECAYSPACE_TOL sets the default tolerance.",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--out", help="write the JSON report here instead of stdout")
        p.add_argument("--tol", type=float, default=None,
                       help="numeric tolerance (default: DECAYSPACE_TOL or 1e-9)")

    p = sub.add_parser("validate", help="check the decay-space axioms of a matrix")
    p.add_argument("--space", required=True, help="space file (.json or .csv)")
    common(p)
    p.set_defaults(func=_cmd_validate)

    p = sub.add_parser("analyze", help="metricity exponents and quasi-distance check")
    p.add_argument("--space", required=True)
    p.add_argument("--zeta", default="auto",
                   help="'auto' or an exponent to test the triangle at")
    common(p)
    p.set_defaults(func=_cmd_analyze)

    p = sub.add_parser("capacity", help="uniform-power capacity with optional oracle")
    p.add_argument("--system", required=True, help="link system file")
    p.add_argument("--zeta", default="auto", help="'auto' or a metricity exponent")
    p.add_argument("--oracle", choices=("on", "off", "auto"), default="auto",
                   help="exhaustive optimum: always, never, or only for small systems")
    common(p)
    p.set_defaults(func=_cmd_capacity)

    p = sub.add_parser("partition", help="split the link set into stronger classes")
    p.add_argument("--system", required=True)
    p.add_argument("--kind", choices=("signal", "separation"), required=True)
    p.add_argument("--p", type=float, default=1.0, help="feasibility level of the input")
    p.add_argument("--q", type=float, default=3.0, help="feasibility level of each class")
    p.add_argument("--tau", type=float, default=None,
                   help="separation level of the input (default 1/zeta)")
    p.add_argument("--eta", type=float, default=None,
                   help="separation level of each class (default zeta)")
    p.add_argument("--zeta", default="auto")
    common(p)
    p.set_defaults(func=_cmd_partition)

    p = sub.add_parser("fading", help="worst r-separated interference and growth bound")
    p.add_argument("--space", required=True)
    p.add_argument("--r", type=float, required=True, help="separation level")
    p.add_argument("--C", default="off",
                   help="'off', 'fit', or a constant: compare gamma against the "
                   "packing-growth bound")
    p.add_argument("--exact-limit", type=int, default=24, dest="exact_limit",
                   help="largest subproblem solved exactly")
    p.add_argument("--separation", choices=("decay", "quasi"), default="decay",
                   help="measure sender separation in decays or quasi-distances")
    common(p)
    p.set_defaults(func=_cmd_fading)

    p = sub.add_parser("generate", help="write an instance from a named family")
    p.add_argument("--family", required=True,
                   choices=("euclidean", "threepoint", "star", "welzl",
                            "equidecay", "twoline"))
    p.add_argument("--params", default="", help="family parameters as a JSON object")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--out", required=True, help="output instance path")
    p.set_defaults(func=_cmd_generate)

    p = sub.add_parser("verify", help="run the invariant suite over a corpus")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--corpus", nargs="+", default=["builtin"],
                   help="'builtin' or instance files")
    common(p)
    p.set_defaults(func=_cmd_verify)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2
    except ValueError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
