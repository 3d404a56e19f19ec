"""Command line entry point.

Exit codes: 0 success, 1 model/domain violation, 2 input or usage error.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import counting, heavy_tails
from .errors import InputError, PricevarError
from .report import RunConfig, analyze
from .shifted import check_alpha, clamp_alpha, rolling_bands, simulate_differences
from .ticks import read_ticks

EXIT_OK, EXIT_DOMAIN, EXIT_INPUT = 0, 1, 2


class UsageError(InputError):
    module = "cli_pipeline"


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(message)


def _zeta0(text: str):
    if text == heavy_tails.UNIFORM:
        return text
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a number in [0, 1) or 'uniform', got {text!r}")
    if not 0.0 <= value < 1.0:
        raise argparse.ArgumentTypeError("fixed zeta0 must lie in [0, 1)")
    return value


def _seed(text: str) -> int:
    value = int(text, 0)
    if not 0 <= value < 2**64:
        raise argparse.ArgumentTypeError("seed must fit in 64 bits")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="pricevar", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p, fmt="json"):
        p.add_argument("--format", choices=("json", "csv"), default=fmt)
        p.add_argument("--out", help="write the report here instead of stdout")

    p = sub.add_parser("analyze", help="variation identities, grid parameters, P(D <= 0)")
    p.add_argument("input", help="tick CSV with header timestamp,price ('-' for stdin)")
    p.add_argument("--segments", type=int, default=64)
    p.add_argument("--epsilon-rho", type=float, default=0.5)
    p.add_argument("--clamp", action="store_true", help="clamp |alpha| >= 1 instead of failing")
    common(p)

    p = sub.add_parser("bands", help="rolling forecast bands close + mu +- k sigma")
    p.add_argument("input")
    p.add_argument("--segments", type=int, default=64)
    p.add_argument("--window", type=int, default=16, help="segments per rolling window")
    p.add_argument("--k", type=float, default=2.0)
    p.add_argument("--epsilon-rho", type=float, default=0.5)
    common(p)

    p = sub.add_parser("enumerate", help="exact distribution of the difference z")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--verify", action="store_true",
                   help=f"cross-check against brute-force enumeration (n <= {counting.ENUMERATION_CAP})")
    common(p, fmt="csv")

    p = sub.add_parser("simulate", help="sample endpoint differences in the shifted frame")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--omega", type=float, default=1.0)
    p.add_argument("--samples", type=int, default=100000)
    p.add_argument("--seed", type=_seed, default=0)
    p.add_argument("--clamp", action="store_true")
    common(p)

    p = sub.add_parser("heavytails", help="heavy-tailed samples binned against the normal law")
    p.add_argument("--samples", type=int, default=100000)
    p.add_argument("--zeta0", type=_zeta0, default=heavy_tails.UNIFORM)
    p.add_argument("--seed", type=_seed, default=0)
    p.add_argument("--bins", type=float, default=0.25, help="bin width in zeta units")
    common(p, fmt="csv")
    return parser


def _dump_json(obj) -> str:
    return json.dumps(obj, indent=2, allow_nan=False) + "\n"


def _flatten(obj, prefix=""):
    for key, value in obj.items():
        name = f"{prefix}{key}"
        if isinstance(value, dict):
            yield from _flatten(value, name + ".")
        else:
            yield name, value


def _kv_csv(obj) -> str:
    lines = ["key,value"]
    for key, value in _flatten(obj):
        lines.append(f"{key},{json.dumps(value)}")
    return "\n".join(lines) + "\n"


def _load(path):
    if path == "-":
        from .ticks import parse_ticks
        return parse_ticks(sys.stdin.buffer.read())
    try:
        return read_ticks(path)
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def cmd_analyze(args) -> str:
    config = RunConfig(segment_count=args.segments, epsilon_rho=args.epsilon_rho,
                       alpha_policy="clamp" if args.clamp else "error",
                       output_format=args.format)
    report = analyze(_load(args.input), config, source=args.input)
    return _dump_json(report) if args.format == "json" else _kv_csv(report)


def cmd_bands(args) -> str:
    config = RunConfig(segment_count=args.segments, epsilon_rho=args.epsilon_rho, k=args.k,
                       window_segments=args.window, output_format=args.format)
    points = rolling_bands(_load(args.input), config.window_segments, config.k,
                           epsilon_rho=config.epsilon_rho, segment_count=config.segment_count)
    if args.format == "csv":
        lines = ["timestamp,center,lower,upper,alpha,sigma,condition_fraction"]
        lines += [f"{p.timestamp},{p.center!r},{p.lower!r},{p.upper!r},{p.alpha!r},{p.sigma!r},"
                  f"{p.condition_fraction!r}" for p in points]
        return "\n".join(lines) + "\n"
    return _dump_json({
        "schema_version": 1,
        "source": args.input,
        "segments": config.segment_count,
        "window_segments": config.window_segments,
        "k": config.k,
        "epsilon_rho": config.epsilon_rho,
        "bands": [{"timestamp": p.timestamp, "center": p.center, "lower": p.lower,
                   "upper": p.upper, "alpha": p.alpha, "sigma": p.sigma,
                   "condition_fraction": p.condition_fraction} for p in points],
    })


def cmd_enumerate(args) -> str:
    if args.n < 1:
        raise UsageError("--n must be >= 1")
    dist = counting.distribution(args.n)
    if args.verify:
        brute = counting.enumerate_paths(args.n)
        if brute.counts != dist.counts:
            raise PricevarError("enumeration disagrees with binomial counts")
    rows = [(z, dist.counts[z], dist.probabilities[z], counting.gaussian_approx(args.n, z))
            for z in dist.support]
    if args.format == "json":
        return _dump_json({
            "schema_version": 1,
            "n": args.n,
            "total": 4**args.n,
            "rows": [{"z": z, "exact_count": c, "p": p, "gaussian_approx": g}
                     for z, c, p, g in rows],
        })
    lines = ["z,exact_count,p,gaussian_approx"]
    lines += [f"{z},{c},{p:.6g},{g:.6g}" for z, c, p, g in rows]
    return "\n".join(lines) + "\n"


def cmd_simulate(args) -> str:
    if args.n < 1 or args.samples < 1:
        raise UsageError("--n and --samples must be >= 1")
    alpha = args.alpha
    if args.clamp:
        alpha = clamp_alpha(alpha)
    check_alpha(alpha)
    result = simulate_differences(args.n, alpha, args.omega, args.samples, args.seed)
    if args.format == "csv":
        return "D\n" + "".join(f"{x!r}\n" for x in result.samples.tolist())
    d = result.samples / result.omega
    mean = float(d.mean())
    var = float(d.var(ddof=1))
    return _dump_json({
        "schema_version": 1,
        "n": args.n,
        "omega": args.omega,
        "samples": args.samples,
        "seed": args.seed,
        "alpha_requested": result.alpha_requested,
        "alpha_realized": result.alpha_realized,
        "z0": result.z0,
        "doubled_n_prime": result.doubled_n_prime,
        "target_mean_omega": -2.0 * args.n * alpha,
        "target_variance_omega": 2.0 * args.n * (1.0 - abs(alpha)),
        "rounding_bias_omega": result.z0 + 2.0 * args.n * alpha,
        "sample_mean_omega": mean,
        "sample_variance_omega": var,
    })


def cmd_heavytails(args) -> str:
    draw = heavy_tails.sample_heavy(args.samples, args.zeta0, args.seed)
    hist = heavy_tails.build_histogram(draw.values, args.bins, args.zeta0)
    if args.format == "csv":
        return hist.to_csv()
    return _dump_json({
        "schema_version": 1,
        "samples": args.samples,
        "zeta0": args.zeta0,
        "seed": args.seed,
        "clamped": draw.clamped,
        "tail_mass_beyond_3": heavy_tails.tail_mass(draw.values),
        "expected_tail_mass_beyond_3": heavy_tails.expected_tail_mass(args.zeta0),
        "normal_tail_mass_beyond_3": 2.0 * counting.normal_cdf(-3.0),
        "bins": [{"bin_left": float(hist.edges[i]), "bin_right": float(hist.edges[i + 1]),
                  "count": int(hist.counts[i]),
                  "empirical_density": float(hist.empirical_density[i]),
                  "model_density": float(hist.model_density[i]),
                  "normal_density": float(hist.normal_density[i])}
                 for i in range(hist.counts.size)],
    })


COMMANDS = {
    "analyze": cmd_analyze,
    "bands": cmd_bands,
    "enumerate": cmd_enumerate,
    "simulate": cmd_simulate,
    "heavytails": cmd_heavytails,
}


def _report_error(err: PricevarError) -> None:
    sys.stderr.write(json.dumps({"error": err.to_dict()}) + "\n")


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        text = COMMANDS[args.command](args)
    except UsageError as err:
        _report_error(err)
        return EXIT_INPUT
    except PricevarError as err:
        _report_error(err)
        return err.exit_code
    except SystemExit as exc:  # --help
        return int(exc.code or 0)

    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
