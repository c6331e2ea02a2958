"""``approxksub`` command line: run, verify, bound, exact, gen.

Exit codes: 0 success, 1 a checked property or bound failed, 2 usage or
configuration error, 3 instance exceeds the enumeration budget.
"""

from __future__ import annotations

import argparse
import logging
import sys

from . import bounds, exact
from .core import (
    BudgetExceededError,
    ConfigError,
    GroupSize,
    IndividualSize,
    InfeasibleConstraintError,
    KSubError,
    TotalSize,
)
from .experiment import ExperimentConfig, fmt, run_experiment, to_csv
from .fixtures import FIXTURES, fixture
from .greedy import greedy
from .noise import NoiseSpec, make_noisy
from .objectives import (
    CascadeModel,
    CoverageObjective,
    SensorModel,
    gen_synthetic,
    load_edge_list,
    load_sensor_csv,
    objective_for,
    save_edge_list,
    save_sensor_csv,
)

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3
CHECKS = ("monotone", "k_submodular", "orthant_submodular", "pairwise_monotone",
          "as_envelope", "adr_envelope", "min_epsilon")


def _int_list(text):
    return [int(t) for t in text.split(",") if t.strip()]


def _kv(text):
    key, sep, value = text.partition("=")
    if not sep:
        raise argparse.ArgumentTypeError(f"expected key=value, got {text!r}")
    for conv in (int, float):
        try:
            return key.strip(), conv(value)
        except ValueError:
            pass
    return key.strip(), value


def _add_objective_flags(p):
    g = p.add_argument_group("objective")
    g.add_argument("--objective", choices=("coverage", "sensor", "cascade"), default="coverage")
    g.add_argument("--data", metavar="PATH", help="load the instance instead of generating it")
    g.add_argument("--n", type=int, default=5, help="elements (locations / nodes)")
    g.add_argument("--k", type=int, default=2)
    g.add_argument("--param", type=_kv, action="append", default=[], metavar="KEY=VALUE",
                   help="extra generator parameter, e.g. universe_size=10 or R=16")
    g.add_argument("--bins", type=int, default=5, help="quantization bins for sensor CSV input")
    g.add_argument("--default-p", type=float, default=0.1,
                   help="edge probability when the edge list has no topic columns")
    g.add_argument("--log2", action="store_true", help="entropy in bits instead of nats")


def _add_noise_flags(p):
    g = p.add_argument_group("noise")
    g.add_argument("--noise", metavar="METHOD", help="AG, MaxG or MeanG; omit for F = f")
    g.add_argument("--style", default="AS", help="AS or ADR")
    g.add_argument("--epsilon", type=float, default=0.0)
    g.add_argument("--noise-seed", type=int, default=None, help="defaults to --seed")


def _add_constraint_flags(p):
    g = p.add_argument_group("constraint")
    g.add_argument("--constraint", choices=("TS", "IS", "Group"), default="TS")
    g.add_argument("--B", type=int, default=2, help="total budget (TS)")
    g.add_argument("--caps", type=_int_list, help="per-dimension (IS) or per-group caps")
    g.add_argument("--groups", help="partition of dimensions for Group, e.g. '1,2;3'")


def _limits(args) -> exact.Limits:
    if not args.budget_override:
        return exact.DEFAULT_LIMITS
    parts = _int_list(args.budget_override)
    return exact.Limits(parts[0], parts[1] if len(parts) > 1 else exact.DEFAULT_MAX_K)


def _objective(args):
    """(f, instance) from the objective flags."""
    params = dict(args.param)
    if args.data:
        if args.objective == "sensor":
            inst = load_sensor_csv(args.data, bins=args.bins)
        elif args.objective == "cascade":
            inst = load_edge_list(args.data, default_p=args.default_p, R=params.get("R", 64),
                                  sample_seed=params.get("sample_seed", 0))
        else:
            inst = CoverageObjective.load(args.data)
    else:
        size_key = {"coverage": "n", "sensor": "n_locations", "cascade": "n_nodes"}[args.objective]
        params.setdefault(size_key, args.n)
        params.setdefault("k", args.k)
        inst = gen_synthetic(args.objective, params, args.seed)
    k = min(args.k, inst.k) if args.data else args.k
    f = objective_for(inst, k)
    if args.log2 and isinstance(inst, SensorModel):
        from .objectives import EntropyObjective
        f = EntropyObjective(inst, k, base=2)
    return f, inst


def _constraint(args, k):
    if args.constraint == "TS":
        return TotalSize(k, args.B)
    caps = args.caps or [1] * k
    if args.constraint == "IS":
        if len(caps) != k:
            raise ConfigError(f"--caps needs {k} values for IS, got {len(caps)}")
        return IndividualSize(caps)
    if not args.groups:
        raise ConfigError("Group constraint needs --groups")
    groups = [_int_list(g) for g in args.groups.split(";")]
    return GroupSize(k, groups, caps)


def _noisy(args, f, c):
    if not args.noise:
        return f
    seed = args.seed if args.noise_seed is None else args.noise_seed
    return make_noisy(f, f.ground_set, NoiseSpec(args.noise, args.style, args.epsilon, seed), c)


# --------------------------------------------------------------------------


def cmd_run(args) -> int:
    if not args.config:
        raise ConfigError("run needs --config PATH")
    cfg = ExperimentConfig.load(args.config)
    if args.seed is not None:
        cfg.seed = args.seed
    text = to_csv(run_experiment(cfg, threads=args.threads))
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_verify(args) -> int:
    limits = _limits(args)
    if args.fixture:
        cx = fixture(args.fixture, args.epsilon if args.epsilon else None)
        F, f, eps = cx.F, cx.f, cx.epsilon
        checks = args.check or ["k_submodular", "as_envelope", "adr_envelope"]
    else:
        f, _ = _objective(args)
        c = _constraint(args, f.k) if args.noise and args.noise.upper() == "AG" else None
        F = _noisy(args, f, c)
        eps = args.epsilon
        checks = args.check or (["monotone", "k_submodular"]
                                + (["as_envelope"] if args.noise else []))
    gs = F.ground_set
    tF = exact.StateTable(F, gs, limits)
    tf = tF if F is f else exact.StateTable(f, gs, limits)
    failed = False
    for name in checks:
        if name == "min_epsilon":
            print(f"min_epsilon_as: {fmt(exact.min_epsilon_as(F, f, gs, limits, (tF, tf)))}")
            continue
        if name == "monotone":
            rep = exact.verify_monotone(F, gs, limits, tF)
        elif name == "k_submodular":
            rep = exact.verify_k_submodular(F, gs, limits, tF)
        elif name == "orthant_submodular":
            rep = exact.verify_orthant_submodular(F, gs, limits, tF)
        elif name == "pairwise_monotone":
            rep = exact.verify_pairwise_monotone(F, gs, limits, tF)
        elif name == "as_envelope":
            rep = exact.verify_as_envelope(F, f, eps, gs, limits, (tF, tf))
        else:
            rep = exact.verify_adr_envelope(F, f, eps, gs, limits, (tF, tf),
                                            canonical_only=args.canonical_only)
        print(rep.line())
        failed |= not rep.holds
    return EXIT_FAIL if failed else EXIT_OK


def cmd_bound(args) -> int:
    q = bounds.BoundQuery.for_k(args.k, constraint=args.constraint, function_class=args.cls,
                                solution_source=args.source, epsilon=args.epsilon, B=args.B)
    print(bounds.bound(q).line())
    return EXIT_OK


def cmd_exact(args) -> int:
    limits = _limits(args)
    f, _ = _objective(args)
    gs = f.ground_set
    c = _constraint(args, f.k)
    F = _noisy(args, f, c)
    o, val = exact.brute_force_max(F, gs, c, limits)
    print(f"optimum: {list(o.labels)}")
    print(f"value: {fmt(val)}")
    if not args.greedy:
        return EXIT_OK
    source = args.source
    tr = greedy(F if source == "on_F" else f, gs, c, lazy=args.lazy)
    got = F(tr.solution)
    observed = got / val if val else 1.0
    print(f"greedy_{'F' if source == 'on_F' else 'f'}: {list(tr.solution.labels)} value={fmt(got)} "
          f"ratio={fmt(observed)}")
    if isinstance(c, GroupSize):
        print("bound: none tabulated for group constraints")
        return EXIT_OK
    cls = "ADR" if args.noise and args.style.upper() == "ADR" else "AS"
    b = bounds.bound(bounds.BoundQuery.for_k(
        f.k, constraint=c.kind, function_class=cls, solution_source=source,
        epsilon=args.epsilon if args.noise else 0.0, B=c.budget))
    margin = got - b.value * val
    ok = margin >= -exact.REL_SLACK * max(abs(val), 1e-6)
    print(f"bound: {b.formula} ratio={fmt(b.value)} margin={fmt(margin)} {'PASS' if ok else 'FAIL'}")
    return EXIT_OK if ok else EXIT_FAIL


def cmd_gen(args) -> int:
    params = dict(args.param)
    size_key = {"coverage": "n", "sensor": "n_locations", "cascade": "n_nodes"}[args.objective]
    params.setdefault(size_key, args.n)
    params.setdefault("k", args.k)
    inst = gen_synthetic(args.objective, params, args.seed)
    if not args.out:
        raise ConfigError("gen needs --out PATH")
    if isinstance(inst, SensorModel):
        save_sensor_csv(inst, args.out)
    elif isinstance(inst, CascadeModel):
        save_edge_list(inst, args.out)
    else:
        inst.save(args.out)
    print(f"wrote {args.objective} instance to {args.out}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", metavar="PATH")
    common.add_argument("--out", metavar="PATH")
    common.add_argument("--threads", type=int, default=1)
    common.add_argument("--seed", type=int, default=None)
    common.add_argument("--budget-override", metavar="N[,K]",
                        help="raise the enumeration cap to n <= N (and k <= K)")
    common.add_argument("-v", "--verbose", action="store_true")

    p = argparse.ArgumentParser(prog="approxksub", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", parents=[common], help="run an experiment config, write CSV")
    run.set_defaults(func=cmd_run)

    ver = sub.add_parser("verify", parents=[common], help="exhaustively check properties")
    _add_objective_flags(ver)
    _add_noise_flags(ver)
    _add_constraint_flags(ver)
    ver.add_argument("--fixture", choices=sorted(FIXTURES))
    ver.add_argument("--check", type=lambda s: s.split(","), default=None,
                     help=f"comma list from {', '.join(CHECKS)}")
    ver.add_argument("--canonical-only", action="store_true",
                     help="ADR check on ascending-id chain steps only")
    ver.set_defaults(func=cmd_verify)

    bnd = sub.add_parser("bound", parents=[common], help="print an approximation ratio")
    bnd.add_argument("--k", type=int, default=2)
    bnd.add_argument("--constraint", choices=bounds.CONSTRAINTS, default="TS")
    bnd.add_argument("--class", dest="cls", choices=bounds.CLASSES, default="AS")
    bnd.add_argument("--source", choices=bounds.SOURCES, default="on_F")
    bnd.add_argument("--epsilon", type=float, default=0.0)
    bnd.add_argument("--B", type=int, default=1)
    bnd.set_defaults(func=cmd_bound)

    ex = sub.add_parser("exact", parents=[common], help="brute-force optimum, optional greedy ratio")
    _add_objective_flags(ex)
    _add_noise_flags(ex)
    _add_constraint_flags(ex)
    ex.add_argument("--greedy", action="store_true", help="also run greedy and check its bound")
    ex.add_argument("--source", choices=bounds.SOURCES, default="on_F",
                    help="run greedy on F (on_F) or on f and evaluate under F (on_f)")
    ex.add_argument("--lazy", action="store_true")
    ex.set_defaults(func=cmd_exact)

    gen = sub.add_parser("gen", parents=[common], help="write a synthetic instance")
    _add_objective_flags(gen)
    gen.set_defaults(func=cmd_gen)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    if args.command != "run" and args.seed is None:
        args.seed = 0
    try:
        return args.func(args)
    except BudgetExceededError as exc:
        print(f"error: enumeration budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (ConfigError, InfeasibleConstraintError, KSubError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
