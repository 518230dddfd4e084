"""Command-line surface tying the certification pipeline together.

Exit codes: 0 = all assertions pass, 1 = failure with witness, 2 =
inconclusive (caps hit), 64 = usage / configuration error.  Every command
emits a JSON report with its fully resolved configuration; stochastic
commands require an explicit seed.
"""
from __future__ import annotations

import argparse
import json
import math
import sys

from . import disorder as dis
from . import generators as gen
from . import gibbs
from . import temperedness as temp
from . import uniqueness as uniq
from .enumeration import Caps
from .graphs import GraphError, ball_vertices, boundaries

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_INCONCLUSIVE = 2
EXIT_USAGE = 64


def _emit(report: dict, out: str | None) -> None:
    text = json.dumps(report, indent=2, default=str) + "\n"
    if out:
        gen.atomic_write(out, text)
    else:
        sys.stdout.write(text)


def _int_list(s: str) -> list[int]:
    return [int(t) for t in s.replace(",", " ").split()]


def _load_graph(args) -> "gen.Graph":
    return gen.load_graph(args.graph)


def _caps(args) -> Caps:
    return Caps(max_items=args.max_items, time_limit=args.time_limit)


def _spin_model(name: str) -> gibbs.SpinModel:
    if name in ("ising", "2"):
        return gibbs.ising()
    if name.isdigit():
        return gibbs.clock(int(name))
    if name.startswith("clock"):
        return gibbs.clock(int(name[5:]))
    if name.startswith("grid"):
        return gibbs.interval_grid(int(name[4:]))
    raise GraphError(f"unknown spin model {name!r}")


def _distribution(args) -> dis.NormDistribution:
    return dis.NormDistribution(args.family, args.param)


def _growth(name: str) -> temp.GrowthFunction:
    if name == "log":
        return temp.g_log()
    if name == "tlogt":
        return temp.g_tlogt()
    raise GraphError(f"unknown growth function {name!r}")


def _phi(name: str, n_star: int) -> temp.RepulsivenessSpec:
    # "power:P[:SCALE]" e.g. power:1, power:2:0.5
    if name.startswith("power:"):
        parts = name.split(":")
        p = float(parts[1])
        scale = float(parts[2]) if len(parts) > 2 else 1.0
        return temp.power_repulsion(p, n_star, scale)
    raise GraphError(f"unknown phi spec {name!r}")


# ---------------------------------------------------------------------------
# subcommands


def cmd_generate(args) -> int:
    kind = args.kind
    if kind == "chain":
        g = gen.chain(args.n)
    elif kind == "cycle":
        g = gen.cycle(args.n)
    elif kind == "grid":
        g = gen.grid(args.rows, args.cols)
    elif kind == "star":
        g = gen.star(args.n)
    elif kind == "growing-tree":
        g = gen.growing_tree(args.depth)
    elif kind == "repulsive-tree":
        spec = _phi(args.phi, args.n_star)
        g = gen.repulsive_tree(_int_list(args.hub_degrees), spec.phi, args.n_star)
    else:
        raise GraphError(f"unknown kind {kind!r}")
    text = gen.edges_to_json(g) + "\n" if (args.out or "").endswith(".json") else gen.edges_to_text(g)
    if args.out:
        gen.atomic_write(args.out, text)
    else:
        sys.stdout.write(text)
    return EXIT_PASS


def cmd_check_tempered(args) -> int:
    g = _load_graph(args)
    report = temp.check_tempered(
        g,
        _growth(args.growth),
        args.root,
        _int_list(args.radii),
        gamma_target=args.gamma_target,
        caps=_caps(args),
    )
    out = {
        "config": {
            "graph_hash": gen.graph_hash(g),
            "root": args.root,
            "radii": _int_list(args.radii),
            "growth": args.growth,
            "gamma_target": args.gamma_target,
            "max_items": args.max_items,
        }
    }
    out.update(report.to_dict())
    _emit(out, args.out)
    if report.verdict == "failed":
        return EXIT_FAIL
    if report.verdict == "inconclusive":
        return EXIT_INCONCLUSIVE
    return EXIT_PASS


def cmd_check_repulsive(args) -> int:
    g = _load_graph(args)
    spec = _phi(args.phi, args.n_star)
    report = temp.check_repulsive(g, spec)
    _emit(
        {
            "config": {"phi": args.phi, "n_star": args.n_star, "graph_hash": gen.graph_hash(g)},
            "holds": report.holds,
            "witnesses": report.witnesses,
        },
        args.out,
    )
    return EXIT_PASS if report.holds else EXIT_FAIL


def cmd_kappa(args) -> int:
    d = _distribution(args)
    val = dis.mean_kappa(d, args.beta)
    _emit({"config": {"family": args.family, "param": args.param, "beta": args.beta}, "kappa": val}, args.out)
    return EXIT_PASS


def cmd_beta_star(args) -> int:
    d = _distribution(args)
    bs = dis.beta_star(d, args.gamma, args.tol)
    _emit(
        {
            "config": {"family": args.family, "param": args.param, "gamma": args.gamma, "tol": args.tol},
            "beta_star": bs,
        },
        args.out,
    )
    return EXIT_PASS


def _instance(args):
    g = _load_graph(args)
    if args.delta:
        delta = set(_int_list(args.delta))
    else:
        delta = ball_vertices(g, args.z, args.radius)
    vol = boundaries(g, delta)
    sm = _spin_model(args.spins)
    d = _distribution(args)
    w = dis.sample_disorder(d, g, sign_mode=args.sign_mode, seed=args.seed)
    return g, vol, sm, d, w


def cmd_verify_lemma27(args) -> int:
    g, vol, sm, d, w = _instance(args)
    report = gibbs.verify_lemma27(
        g, vol, args.z, sm, w, args.beta, strategy=args.strategy, caps=_caps(args)
    )
    _emit(
        {
            "config": {
                "graph_hash": gen.graph_hash(g),
                "delta": sorted(vol.delta),
                "z": args.z,
                "spins": args.spins,
                "family": args.family,
                "param": args.param,
                "beta": args.beta,
                "seed": args.seed,
            },
            "lhs": report.lhs,
            "rhs": report.rhs,
            "holds": report.holds,
            "verdict": report.verdict,
            "exhaustive": report.exhaustive,
            "witness": report.witness,
        },
        args.out,
    )
    if report.verdict == "violated":
        return EXIT_FAIL
    if report.verdict == "inconclusive":
        return EXIT_INCONCLUSIVE
    return EXIT_PASS


def cmd_verify_expansion(args) -> int:
    g, vol, sm, d, w = _instance(args)
    ev = gibbs.VolumeEvaluator(g, vol, sm, w, args.beta, _caps(args))
    worst = 0.0
    checked = 0
    ok_flags = True
    try:
        for xi in ev.boundary_conditions():
            for eta in ev.boundary_conditions():
                rep = gibbs.verify_expansion_identity(
                    g, vol, args.z, sm, w, args.beta, xi, eta, caps=_caps(args)
                )
                worst = max(worst, rep.defect)
                ok_flags = ok_flags and rep.gamma_nonnegative and rep.gamma_path_bound
                checked += 1
                if checked >= args.max_pairs:
                    break
            if checked >= args.max_pairs:
                break
    except gibbs.CapExceededError as exc:
        _emit({"error": str(exc)}, args.out)
        return EXIT_INCONCLUSIVE
    passed = worst <= args.tol and ok_flags
    _emit(
        {
            "config": {"graph_hash": gen.graph_hash(g), "z": args.z, "beta": args.beta, "seed": args.seed},
            "max_defect": worst,
            "pairs_checked": checked,
            "gamma_properties_ok": ok_flags,
            "pass": passed,
        },
        args.out,
    )
    return EXIT_PASS if passed else EXIT_FAIL


def cmd_dlr_check(args) -> int:
    g = _load_graph(args)
    delta = set(_int_list(args.delta))
    lam = set(_int_list(args.lam))
    vol = boundaries(g, delta)
    sm = _spin_model(args.spins)
    d = _distribution(args)
    w = dis.sample_disorder(d, g, sign_mode=args.sign_mode, seed=args.seed)
    ev = gibbs.VolumeEvaluator(g, vol, sm, w, args.beta, _caps(args))
    worst = 0.0
    prop = 0.0
    for bc in ev.boundary_conditions():
        rep = gibbs.dlr_consistency_check(g, lam, delta, sm, w, args.beta, bc, _caps(args))
        worst = max(worst, rep.max_defect)
        prop = max(prop, rep.properness_defect)
        if not args.all_boundaries:
            break
    passed = worst <= args.tol and prop <= args.tol
    _emit(
        {
            "config": {"graph_hash": gen.graph_hash(g), "delta": sorted(delta), "lambda": sorted(lam),
                       "beta": args.beta, "seed": args.seed},
            "max_defect": worst,
            "properness_defect": prop,
            "pass": passed,
        },
        args.out,
    )
    return EXIT_PASS if passed else EXIT_FAIL


def cmd_certificate(args) -> int:
    d = _distribution(args)
    cert = uniq.certificate(args.gamma, d, args.beta, _int_list(args.radii))
    _emit({"config": {"family": args.family, "param": args.param, "gamma": args.gamma,
                      "beta": args.beta}} | cert.to_dict(), args.out)
    return EXIT_PASS if cert.certified else EXIT_FAIL


def cmd_decay(args) -> int:
    g = _load_graph(args)
    sm = _spin_model(args.spins)
    d = _distribution(args)
    table = uniq.decay_experiment(
        g, args.z, _int_list(args.radii), sm, d, args.beta,
        samples=args.samples, seed=args.seed, gamma=args.gamma,
        sign_mode=args.sign_mode, caps=_caps(args),
    )
    if args.out:
        table.write_csv(args.out)
    else:
        for r in table.rows:
            sys.stdout.write(
                f"{r.N_k} mean={r.mean:.6g} se={r.se:.3g} "
                f"bound_a={r.bound_enumerated} bound_b={r.bound_geometric:.6g} {r.mode}\n"
            )
    ok = all(
        r.bound_enumerated is None or r.mean <= r.bound_enumerated + 3 * r.se + 1e-12
        for r in table.rows
    )
    if table.dropped:
        return EXIT_INCONCLUSIVE
    return EXIT_PASS if ok else EXIT_FAIL


# ---------------------------------------------------------------------------
# parser


def _add_common(p: argparse.ArgumentParser, graph: bool = True) -> None:
    if graph:
        p.add_argument("--graph", required=True, help="edge-list file (.txt or .json)")
    p.add_argument("--out", default=None, help="output path (atomic write)")
    p.add_argument("--max-items", dest="max_items", type=int, default=10_000_000)
    p.add_argument("--time-limit", dest="time_limit", type=float, default=None)


def _add_disorder(p: argparse.ArgumentParser) -> None:
    p.add_argument("--family", required=True,
                   choices=["exponential", "uniform", "half_normal", "constant"])
    p.add_argument("--param", type=float, required=True)
    p.add_argument("--sign-mode", dest="sign_mode", default="positive",
                   choices=["positive", "rademacher"])
    p.add_argument("--seed", type=int, required=True)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="gibbscert")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", help="emit a deterministic graph")
    p.add_argument("kind", choices=["chain", "cycle", "grid", "star", "growing-tree", "repulsive-tree"])
    p.add_argument("--n", type=int, default=5)
    p.add_argument("--rows", type=int, default=3)
    p.add_argument("--cols", type=int, default=3)
    p.add_argument("--depth", type=int, default=3)
    p.add_argument("--hub-degrees", dest="hub_degrees", default="6 6")
    p.add_argument("--phi", default="power:1")
    p.add_argument("--n-star", dest="n_star", type=int, default=5)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("check-tempered")
    _add_common(p)
    p.add_argument("--root", type=int, required=True)
    p.add_argument("--radii", required=True)
    p.add_argument("--growth", default="log", choices=["log", "tlogt"])
    p.add_argument("--gamma-target", dest="gamma_target", type=float, default=None)
    p.set_defaults(func=cmd_check_tempered)

    p = sub.add_parser("check-repulsive")
    _add_common(p)
    p.add_argument("--phi", required=True, help="e.g. power:1 or power:2:0.5")
    p.add_argument("--n-star", dest="n_star", type=int, required=True)
    p.set_defaults(func=cmd_check_repulsive)

    p = sub.add_parser("kappa")
    _add_common(p, graph=False)
    p.add_argument("--family", required=True,
                   choices=["exponential", "uniform", "half_normal", "constant"])
    p.add_argument("--param", type=float, required=True)
    p.add_argument("--beta", type=float, required=True)
    p.set_defaults(func=cmd_kappa)

    p = sub.add_parser("beta-star")
    _add_common(p, graph=False)
    p.add_argument("--family", required=True,
                   choices=["exponential", "uniform", "half_normal", "constant"])
    p.add_argument("--param", type=float, required=True)
    p.add_argument("--gamma", type=float, required=True)
    p.add_argument("--tol", type=float, default=1e-9)
    p.set_defaults(func=cmd_beta_star)

    for name, fn in [("verify-lemma27", cmd_verify_lemma27), ("verify-expansion", cmd_verify_expansion)]:
        p = sub.add_parser(name)
        _add_common(p)
        _add_disorder(p)
        p.add_argument("--z", type=int, required=True)
        p.add_argument("--delta", default=None, help="explicit vertex list; else ball around z")
        p.add_argument("--radius", type=int, default=1)
        p.add_argument("--spins", default="ising")
        p.add_argument("--beta", type=float, required=True)
        if name == "verify-lemma27":
            p.add_argument("--strategy", default="exhaustive", choices=["exhaustive", "auto", "heuristic"])
        else:
            p.add_argument("--tol", type=float, default=1e-10)
            p.add_argument("--max-pairs", dest="max_pairs", type=int, default=16)
        p.set_defaults(func=fn)

    p = sub.add_parser("dlr-check")
    _add_common(p)
    _add_disorder(p)
    p.add_argument("--delta", required=True)
    p.add_argument("--lambda", dest="lam", required=True)
    p.add_argument("--spins", default="ising")
    p.add_argument("--beta", type=float, required=True)
    p.add_argument("--tol", type=float, default=1e-10)
    p.add_argument("--all-boundaries", dest="all_boundaries", action="store_true")
    p.set_defaults(func=cmd_dlr_check)

    p = sub.add_parser("certificate")
    _add_common(p, graph=False)
    p.add_argument("--family", required=True,
                   choices=["exponential", "uniform", "half_normal", "constant"])
    p.add_argument("--param", type=float, required=True)
    p.add_argument("--gamma", type=float, required=True)
    p.add_argument("--beta", type=float, required=True)
    p.add_argument("--radii", default="1 2 3 4 5")
    p.set_defaults(func=cmd_certificate)

    p = sub.add_parser("decay")
    _add_common(p)
    _add_disorder(p)
    p.add_argument("--z", type=int, required=True)
    p.add_argument("--radii", required=True)
    p.add_argument("--spins", default="ising")
    p.add_argument("--beta", type=float, required=True)
    p.add_argument("--gamma", type=float, required=True)
    p.add_argument("--samples", type=int, required=True)
    p.set_defaults(func=cmd_decay)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else 0
    try:
        return args.func(args)
    except (GraphError, ValueError, OSError, KeyError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    raise SystemExit(main())
