import argparse
import logging
import os
import sys

import numpy as np

from orthoplex import __version__
from orthoplex.display import (
    configure_logging,
    emit_json,
    results_as_json_lines,
    sweep_csv,
    trajectory_csv,
    write_csv,
    write_verify_results
)
from orthoplex.types.exceptions import OrthoplexException
from orthoplex.utils import sha256digest

log = logging.getLogger(__name__)

WEIGHT_MATCH_TOL = 1e-12

BUILD_KINDS = ("simplex", "orthoplex", "entropy", "tuple", "random")


def configure_args(args):
    parser = argparse.ArgumentParser(
        prog="orthoplex",
        usage="%(prog)s <command> [OPTIONS]",
        description="Softmax codes, cross-entropy temperature analysis and"
        " neural collapse experiments in the orthoplex regime."
    )

    general = parser.add_argument_group("general options")
    general.add_argument("--version",
        action="store_true",
        default=False,
        help="Display the version of %(prog)s"
    )
    general.add_argument("-v", "--verbose",
        action="store_true",
        default=False,
        help="Log solver progress to stderr"
    )
    general.add_argument("-q", "--quiet",
        action="store_true",
        default=False,
        help="Log only errors to stderr"
    )
    general.add_argument("--no-colour",
        action="store_true",
        default=False,
        help="Omit colour in console output"
    )

    commands = parser.add_subparsers(dest="command", metavar="<command>")

    build = commands.add_parser("build", help="Construct a configuration and print it as JSON")
    build.add_argument("kind", choices=BUILD_KINDS, help="Family of configuration to build")
    build.add_argument("--q", type=int, default=None, help="Number of simplex vertices")
    build.add_argument("--d", type=int, default=None, help="Ambient dimension")
    build.add_argument("--n", type=int, default=None, help="Number of points")
    build.add_argument("--kind", dest="entropy", choices=("low", "high"), default="low",
        help="Entropy code family")
    build.add_argument("--tuple", dest="parts", type=str, default=None,
        help="Dimension tuple such as 3+1+1")
    build.add_argument("--seed", type=int, default=None, help="Seed for random configurations")

    analyze = commands.add_parser("analyze", help="Coherence, margin, rattlers and decomposition of a configuration")
    analyze.add_argument("--config", metavar="<filename>", required=True, help="Configuration JSON file")

    loss = commands.add_parser("loss", help="Evaluate losses of a configuration or feature set")
    loss.add_argument("--config", metavar="<filename>", required=True,
        help="Configuration JSON file holding the class weights")
    loss.add_argument("--features", metavar="<filename>", default=None,
        help="Feature set JSON file; features equal the weights when omitted")
    loss.add_argument("--tau", type=float, required=True, help="Temperature")
    loss.add_argument("--closed-form", metavar="<tuple>", default=None,
        help="Also evaluate the self-dual closed form for this tuple")
    loss.add_argument("--hardmax", action="store_true", default=False, help="Also evaluate the hardmax loss")
    loss.add_argument("--convention", choices=("negated", "printed"), default="negated",
        help="Sign convention of the hardmax loss")
    loss.add_argument("--batch-c", type=float, default=None, metavar="<c>",
        help="Also evaluate L_tau_c of the weights with this constant")

    sweep = commands.add_parser("sweep", help="Optimal dimension tuple across a temperature range")
    sweep.add_argument("--d", type=int, required=True)
    sweep.add_argument("--n", type=int, required=True)
    sweep.add_argument("--tau-lo", type=float, required=True)
    sweep.add_argument("--tau-hi", type=float, required=True)
    sweep.add_argument("--tol", type=float, default=1e-5, help="Tolerance on crossover temperatures")
    sweep.add_argument("--grid", type=int, default=512, help="Number of bracketing grid points")
    sweep.add_argument("--csv", metavar="<filename>", default=None,
        help="Write the per-temperature loss table as CSV; '-' writes it to stdout instead of JSON")

    thresholds = commands.add_parser("thresholds", help="Concavity and convexity thresholds of f")
    thresholds.add_argument("--n", type=int, required=True)
    thresholds.add_argument("--tol", type=float, default=1e-5)
    thresholds.add_argument("--grid", type=int, default=2048, help="Number of x grid points")

    optimize = commands.add_parser("optimize", help="Multi-seed sphere descent with collapse metrics")
    optimize.add_argument("--d", type=int, required=True)
    optimize.add_argument("--n", type=int, required=True)
    optimize.add_argument("--m", type=int, default=1, help="Features per class")
    optimize.add_argument("--tau", type=float, required=True)
    optimize.add_argument("--seeds", type=int, default=1, help="Run seeds 0 .. seeds-1")
    optimize.add_argument("--max-iters", type=int, default=1000)
    optimize.add_argument("--grad-tol", type=float, default=1e-8)
    optimize.add_argument("--step-size", type=float, default=1.0, help="Initial or fixed step size")
    optimize.add_argument("--fixed-step", action="store_true", default=False,
        help="Take fixed steps instead of Armijo backtracking")
    optimize.add_argument("--selfdual", action="store_true", default=False,
        help="Initialise features equal to the weights")
    optimize.add_argument("--start-tau", type=float, default=None,
        help="Anneal each descent from this temperature down to --tau")
    optimize.add_argument("--stages", type=int, default=4, help="Number of annealing temperatures")
    optimize.add_argument("--reference", metavar="<tuple>", default=None,
        help="Also report the Gram error against this tuple")
    optimize.add_argument("--output-dir", metavar="<dir>", default=None,
        help="Write trajectories, final states and the manifest here")

    verify = commands.add_parser("verify", help="Run the property suites over built-in instances")
    verify.add_argument("--list-suites", action="store_true", default=False,
        help="Display a list of all available suites")
    verify.add_argument("--suite", metavar="<key>", action="append", default=None,
        help="Run only this suite; may be repeated")
    verify.add_argument("--json-output", action="store_true", default=False,
        help="Report one JSON line per check")
    verify.add_argument("--raise-on-failure", action="store_true", default=False,
        help="Stop at the first failing check")
    verify.add_argument("--no-emoji", action="store_true", default=False,
        help="Omit emoji in the console report")

    if len(args) == 0:
        parser.print_help()
        sys.exit(0)

    return parser.parse_args(args)


def _build(args):
    from orthoplex import codes
    from orthoplex.types.dimtuple import DimensionTuple
    from orthoplex.types.exceptions import OrthoplexArgumentError

    def require(*names):
        missing = [f"--{name}" for name in names if getattr(args, name) is None]
        if missing:
            raise OrthoplexArgumentError(f"build {args.kind} requires {', '.join(missing)}")

    parts = None
    if args.kind == "simplex":
        require("q", "d")
        config = codes.build_simplex(args.q, args.d)
    elif args.kind == "orthoplex":
        require("d", "n")
        config = codes.build_orthoplex_subset(args.d, args.n)
    elif args.kind == "entropy":
        require("d", "n")
        config, parts = codes.build_entropy_code(args.d, args.n, args.entropy)
    elif args.kind == "tuple":
        require("parts")
        parts = DimensionTuple.parse(args.parts)
        config = codes.build_tuple_code(parts)
    else:
        require("d", "n")
        config = codes.random_config(args.d, args.n, seed=args.seed)

    out = config.as_dict()
    if parts is not None:
        out["tuple"] = parts.as_string()
    emit_json(out)
    return 0


def _analyze(args):
    from orthoplex import geometry
    from orthoplex.types.config import SphericalConfig

    config = SphericalConfig.from_file(args.config)
    delta, distances = geometry.margin(config)
    rattlers = geometry.find_rattlers(config)
    out = {
        "d": config.d,
        "n": config.n,
        "coherence": geometry.coherence(config),
        "margin": delta,
        "distances": distances,
        "softmax_rattlers": rattlers.softmax,
        "tammes_rattlers": rattlers.tammes,
        "decomposition": None,
        "radon": None
    }
    if geometry.is_spherical_code(config):
        out["decomposition"] = geometry.orthoplex_decompose(config).as_dict()
    if config.n >= config.d + 2:
        partition = geometry.radon_partition(config)
        out["radon"] = partition.as_dict()
        if geometry.coherence(config) > geometry.DECOMPOSE_TOL:
            out["radon"]["margin_bound"] = geometry.radon_margin_bound(config, partition.side_a, partition.side_b)
    emit_json(out)
    return 0


def _loss(args):
    from orthoplex import losses
    from orthoplex.types.config import FeatureSet, SphericalConfig
    from orthoplex.types.dimtuple import DimensionTuple
    from orthoplex.types.exceptions import OrthoplexArgumentError
    from orthoplex.types.loss import LossParams, LossReport

    params = LossParams(args.tau, 1.0 if args.batch_c is None else args.batch_c)
    config = SphericalConfig.from_file(args.config)
    if args.features:
        wh = FeatureSet.from_file(args.features)
        same = wh.weights.vectors.shape == config.vectors.shape and \
            np.allclose(wh.weights.vectors, config.vectors, rtol=0.0, atol=WEIGHT_MATCH_TOL)
        if not same:
            raise OrthoplexArgumentError(f"Weights in {args.features} differ from those in {args.config}")
    else:
        wh = FeatureSet.selfdual(config)

    emit_json(LossReport(params.tau, losses.ce_loss(wh, params), kind="cross-entropy"))
    if args.closed_form:
        parts = DimensionTuple.parse(args.closed_form)
        value = losses.ce_selfdual_closed(parts, config.n, params)
        emit_json(LossReport(params.tau, value, kind="closed-form", tuple=parts.as_string()))
    if args.hardmax:
        value = losses.hardmax_loss(wh, convention=args.convention)
        emit_json(LossReport(params.tau, value, convention=args.convention, kind="hardmax"))
    if args.batch_c is not None:
        value = losses.l_tau_c(config, params)
        emit_json(LossReport(params.tau, value, kind="l_tau_c", c=params.c))
    return 0


def _sweep(args):
    from orthoplex.temperature import crossover_scan

    report = crossover_scan(args.d, args.n, args.tau_lo, args.tau_hi, tol=args.tol, grid=args.grid)
    header, rows = sweep_csv(report)
    if args.csv == "-":
        write_csv(header, rows)
        return 0
    if args.csv:
        with open(args.csv, "w", newline="") as fp:
            write_csv(header, rows, stream=fp)
        log.info(f"Wrote {len(rows)} rows to {args.csv}")

    out = report.threshold_report()
    out["d"] = report.d
    out["sequence"] = [t.as_string() for t in report.tuple_sequence()]
    emit_json(out)
    return 0


def _thresholds(args):
    from orthoplex.temperature import concavity_threshold, convexity_threshold

    emit_json({
        "n": args.n,
        "concavity": concavity_threshold(args.n, tol=args.tol, grid=args.grid),
        "convexity": convexity_threshold(args.n, tol=args.tol, grid=args.grid)
    })
    return 0


def _optimize(args):
    from orthoplex import optimizer
    from orthoplex.types.dimtuple import DimensionTuple
    from orthoplex.types.optimizer import StepRule

    rule = StepRule(kind="fixed" if args.fixed_step else "armijo", step_size=args.step_size,
                    armijo_c=optimizer.ARMIJO_C)
    reference = DimensionTuple.parse(args.reference) if args.reference else None
    seeds = list(range(args.seeds))

    runs = optimizer.run_seeds(args.d, args.n, args.m, args.tau, seeds, max_iters=args.max_iters,
                               grad_tol=args.grad_tol, step_rule=rule, selfdual=args.selfdual,
                               start_tau=args.start_tau, stages=args.stages)
    manifest = optimizer.experiment_manifest(args.d, args.n, args.m, args.tau, seeds, step_rule=rule,
                                             start_tau=args.start_tau, stages=args.stages)

    if args.output_dir:
        os.makedirs(args.output_dir, exist_ok=True)

    written = {}
    for seed, state in runs:
        record = {"seed": seed, **state.summary()}
        record["metrics"] = optimizer.collapse_metrics(state, reference_tuple=reference)
        emit_json(record)
        if args.output_dir:
            header, rows = trajectory_csv(state)
            trajectory = os.path.join(args.output_dir, f"trajectory_{seed}.csv")
            with open(trajectory, "w", newline="") as fp:
                write_csv(header, rows, stream=fp)
            final = os.path.join(args.output_dir, f"state_{seed}.json")
            with open(final, "w") as fp:
                fp.write(state.iterate.as_json())
            for path in (trajectory, final):
                written[os.path.basename(path)] = sha256digest(path)

    best_seed, best_state = optimizer.best_run(runs)
    manifest["best_seed"] = best_seed
    manifest["best_loss"] = best_state.loss
    if written:
        manifest["sha256"] = written
    if args.output_dir:
        with open(os.path.join(args.output_dir, "manifest.json"), "w") as fp:
            emit_json(manifest, stream=fp)
    emit_json({"manifest": manifest})
    return 0


def _verify(args):
    from orthoplex import checks
    from orthoplex.display import console

    if args.list_suites:
        print(checks.describe_suites(), end="")
        return 0

    results = checks.run_suites(args.suite, raise_failure=args.raise_on_failure)
    if args.json_output:
        for line in results_as_json_lines(results):
            print(line)
    else:
        write_verify_results(results, use_emoji=not (args.no_emoji or console.no_color))

    return 0 if results.ok else 1


HANDLERS = {
    "build": _build,
    "analyze": _analyze,
    "loss": _loss,
    "sweep": _sweep,
    "thresholds": _thresholds,
    "optimize": _optimize,
    "verify": _verify
}


def handle_args(args):

    if args.version:
        print(__version__)
        sys.exit(0)

    level = logging.DEBUG if args.verbose else logging.ERROR if args.quiet else logging.WARNING
    configure_logging(level, no_colour=args.no_colour)

    if args.no_colour:
        from orthoplex.display import console
        console.no_color = True

    if args.command is None:
        print("No command given, see --help", file=sys.stderr)
        return 2

    try:
        return HANDLERS[args.command](args)
    except OrthoplexException as err:
        log.error(f"{args.command}: {err}")
        emit_json(err.as_dict())
        return 1


def run(argv=None):
    args = configure_args(sys.argv[1:] if argv is None else argv)
    code = handle_args(args)
    if code:
        sys.exit(code)


if __name__ == "__main__":
    run()
