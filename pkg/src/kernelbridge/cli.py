"""Batch command-line front end.

Every subcommand is a thin adapter over the library: files in, files out,
one JSON summary line on stdout.  Exit codes: 0 success, 2 validation
problem (bad flags, bad files, non-finite evaluations), 3 mathematical
rejection (NotPositiveDefinite, UnboundedMetric, NotHilbertian) with a
machine-readable JSON diagnostic on stdout.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import io
from .exceptions import KernelBridgeError, MathematicalRejection
from .features import approximate_kernel, sample_frequencies, sample_product_frequencies
from .gram import (build_gram, euclidean_embedding, is_negative_definite,
                   is_positive_definite, nd_to_psd)
from .measures import GammaMeasure, SpectralMeasure
from .product import ProductSpectralMeasure, product_synthesis
from .profiles import metric_from_kernel, profile_from_samples, zoo, zoo_names
from .spectral import (InversionConfig, atom_at_zero, bochner_inversion,
                       bochner_synthesis, gamma_from_spectral,
                       int_bound_integral, screw_synthesis, spectral_from_gamma)

DEFAULT_GRID = (-10.0, 10.0, 201)


def _emit(data: dict) -> None:
    print(io.dumps_json(data))


def _grid(args) -> np.ndarray:
    lo, hi, n = args.grid
    n = int(n)
    if not (hi > lo and n >= 2):
        raise ValueError("--grid needs MIN < MAX and N >= 2")
    return np.linspace(lo, hi, n)


def _add_grid(parser) -> None:
    parser.add_argument("--grid", nargs=3, type=float, metavar=("MIN", "MAX", "N"),
                        default=list(DEFAULT_GRID),
                        help="evaluation grid (default: -10 10 201)")


def _add_kernel_source(parser) -> None:
    group = parser.add_mutually_exclusive_group(required=True)
    group.add_argument("--kernel", help=f"named profile, one of {zoo_names()}")
    group.add_argument("--profile", help="JSON descriptor file {name, params}")
    group.add_argument("--samples", help="CSV file of t,value samples (t >= 0)")
    parser.add_argument("--params", default=None,
                        help="JSON object of parameters for --kernel")


def _load_kernel(args):
    if args.kernel is not None:
        params = json.loads(args.params) if args.params else {}
        return zoo(args.kernel, **params)
    if args.profile is not None:
        descriptor = io.read_json(args.profile)
        return zoo(descriptor["name"], **descriptor.get("params", {}))
    t, values = io.read_profile_csv(args.samples)
    return profile_from_samples(t, values)


def _verdict_dict(key: str, verdict) -> dict:
    return {
        key: verdict.verdict,
        "witness_eigenvalue": verdict.witness_eigenvalue,
        "witness_vector": [float(v) for v in verdict.witness_vector],
    }


def cmd_zoo(args) -> int:
    if args.action == "list":
        _emit({"kernels": [zoo(name).descriptor() for name in zoo_names()]})
        return 0
    kernel = _load_kernel(args)
    grid = _grid(args)
    io.write_profile_csv(args.output, grid, kernel(grid))
    _emit({"written": args.output, "kernel": kernel.descriptor()})
    return 0


def cmd_gram(args) -> int:
    kernel = _load_kernel(args)
    points = io.read_points_csv(args.points)
    gram = build_gram(kernel, points)
    io.write_matrix_csv(args.output, gram.entries)
    _emit({"written": args.output, "n": gram.n})
    return 0


def cmd_check_psd(args) -> int:
    matrix = io.read_matrix_csv(args.matrix)
    _emit(_verdict_dict("psd", is_positive_definite(matrix, tol=args.tol)))
    return 0


def cmd_check_nd(args) -> int:
    matrix = io.read_matrix_csv(args.matrix)
    _emit(_verdict_dict("nd", is_negative_definite(matrix, tol=args.tol)))
    return 0


def cmd_nd_to_psd(args) -> int:
    matrix = io.read_matrix_csv(args.matrix)
    io.write_matrix_csv(args.output, nd_to_psd(matrix, base_index=args.base_index))
    _emit({"written": args.output, "base_index": args.base_index})
    return 0


def cmd_embed(args) -> int:
    matrix = io.read_matrix_csv(args.matrix)
    result = euclidean_embedding(matrix, tol=args.tol)
    io.write_matrix_csv(args.output, result.coordinates)
    _emit({"written": args.output, "rank": result.rank, "residual": result.residual})
    return 0


def cmd_to_metric(args) -> int:
    kernel = _load_kernel(args)
    metric = metric_from_kernel(kernel)
    grid = _grid(args)
    io.write_profile_csv(args.output, grid, metric(grid))
    _emit({"written": args.output})
    return 0


def cmd_invert(args) -> int:
    kernel = _load_kernel(args)
    config = InversionConfig(t_max=args.t_max, n_samples=args.n_samples,
                             n_bins=args.bins, freq_max=args.freq_max,
                             atom_window=args.window, atom_step=args.step)
    result = bochner_inversion(kernel, config)
    io.write_json(args.output, result.measure.to_dict())
    _emit({"written": args.output, "atom0": result.atom0,
           "residual": result.residual, "clamped_mass": result.clamped_mass,
           "min_density": result.min_density})
    return 0


def cmd_synth(args) -> int:
    measure = SpectralMeasure.from_dict(io.read_json(args.measure))
    grid = _grid(args)
    io.write_profile_csv(args.output, grid, bochner_synthesis(measure, grid))
    _emit({"written": args.output, "total_mass": measure.total_mass()})
    return 0


def cmd_screw(args) -> int:
    gamma = GammaMeasure.from_dict(io.read_json(args.gamma))
    grid = _grid(args)
    io.write_profile_csv(args.output, grid, screw_synthesis(gamma, grid),
                         header="t,d2")
    _emit({"written": args.output})
    return 0


def cmd_gamma(args) -> int:
    data = io.read_json(args.measure)
    if args.k0 is None:
        gamma, atom0 = gamma_from_spectral(SpectralMeasure.from_dict(data),
                                           max_bin_width=args.max_bin_width)
        io.write_json(args.output, gamma.to_dict())
        _emit({"written": args.output, "atom0": atom0})
    else:
        measure = spectral_from_gamma(GammaMeasure.from_dict(data), k0=args.k0)
        io.write_json(args.output, measure.to_dict())
        _emit({"written": args.output, "atom0": measure.zero_atom})
    return 0


def cmd_bound_check(args) -> int:
    gamma = GammaMeasure.from_dict(io.read_json(args.gamma))
    integral = int_bound_integral(gamma)
    bound = 4.0 * args.k0
    ok = bool(integral <= bound * (1.0 + 1e-12))
    tight = bool(ok and np.isfinite(integral)
                 and abs(integral - bound) <= 1e-12 * max(bound, 1.0))
    _emit({"integral": integral, "bound": bound, "ok": ok, "tight": tight})
    return 0


def cmd_atom0(args) -> int:
    kernel = _load_kernel(args)
    _emit({"atom0": atom_at_zero(kernel, window=args.window, step=args.step),
           "window": args.window})
    return 0


def cmd_rff(args) -> int:
    data = io.read_json(args.measure)
    if "factors" in data:
        sample = sample_product_frequencies(ProductSpectralMeasure.from_dict(data),
                                            m=args.m, seed=args.seed)
        synth = lambda dx: product_synthesis(ProductSpectralMeasure.from_dict(data), dx)
    else:
        measure = SpectralMeasure.from_dict(data)
        sample = sample_frequencies(measure, m=args.m, seed=args.seed)
        synth = lambda dx: bochner_synthesis(measure, float(dx))
    io.write_json(args.output, sample.to_dict())
    summary = {"written": args.output, "m": sample.m, "seed": sample.seed,
               "total_mass": sample.total_mass}
    if args.pairs:
        pairs = io.read_matrix_csv(args.pairs)
        d = sample.dim
        if pairs.shape[1] != 2 * d:
            raise ValueError(f"--pairs rows must have {2 * d} columns (x then y)")
        lines = ["exact,approx,abs_error"]
        worst = 0.0
        for row in pairs:
            x, y = row[:d], row[d:]
            exact = synth(x - y) if d > 1 else synth(float(x[0] - y[0]))
            approx = approximate_kernel(sample, x if d > 1 else float(x[0]),
                                        y if d > 1 else float(y[0]))
            err = abs(approx - exact)
            worst = max(worst, err)
            lines.append(f"{io.FLOAT_FMT % exact},{io.FLOAT_FMT % approx},"
                         f"{io.FLOAT_FMT % err}")
        with open(args.errors_out, "w") as fh:
            fh.write("\n".join(lines) + "\n")
        summary["errors_written"] = args.errors_out
        summary["max_abs_error"] = worst
    _emit(summary)
    return 0


def cmd_product_synth(args) -> int:
    measure = ProductSpectralMeasure.from_dict(io.read_json(args.measure))
    pairs = io.read_matrix_csv(args.pairs)
    d = measure.dim
    if pairs.shape[1] != 2 * d:
        raise ValueError(f"--pairs rows must have {2 * d} columns (x then y)")
    values = [product_synthesis(measure, row[:d] - row[d:]) for row in pairs]
    io.write_points_csv(args.output, values)
    _emit({"written": args.output, "n": len(values)})
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="kernelbridge",
        description="Transforms between translation-invariant kernels, "
                    "Hilbertian metrics, and spectral measures.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("zoo", help="list named kernels or sample one to CSV")
    p.add_argument("action", choices=["list", "sample"])
    group = p.add_mutually_exclusive_group()
    group.add_argument("--kernel")
    group.add_argument("--profile")
    group.add_argument("--samples")
    p.add_argument("--params", default=None)
    _add_grid(p)
    p.add_argument("-o", "--output", help="output CSV (required for sample)")
    p.set_defaults(func=cmd_zoo)

    p = sub.add_parser("gram", help="points CSV + profile -> Gram matrix CSV")
    p.add_argument("--points", required=True)
    _add_kernel_source(p)
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(func=cmd_gram)

    p = sub.add_parser("check-psd", help="matrix CSV -> PSD verdict JSON")
    p.add_argument("matrix")
    p.add_argument("--tol", type=float, default=1e-10)
    p.set_defaults(func=cmd_check_psd)

    p = sub.add_parser("check-nd", help="matrix CSV -> ND verdict JSON")
    p.add_argument("matrix")
    p.add_argument("--tol", type=float, default=1e-10)
    p.set_defaults(func=cmd_check_nd)

    p = sub.add_parser("nd-to-psd", help="center a candidate ND matrix")
    p.add_argument("matrix")
    p.add_argument("--base-index", type=int, default=0)
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(func=cmd_nd_to_psd)

    p = sub.add_parser("embed", help="squared-distance matrix -> coordinates CSV")
    p.add_argument("matrix")
    p.add_argument("--tol", type=float, default=1e-10)
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(func=cmd_embed)

    p = sub.add_parser("to-metric", help="kernel profile -> squared-metric CSV")
    _add_kernel_source(p)
    _add_grid(p)
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(func=cmd_to_metric)

    p = sub.add_parser("invert", help="kernel profile -> spectral measure JSON")
    _add_kernel_source(p)
    p.add_argument("--t-max", type=float, default=40.0)
    p.add_argument("--n-samples", type=int, default=16001)
    p.add_argument("--bins", type=int, default=2048)
    p.add_argument("--freq-max", type=float, default=8.0)
    p.add_argument("--window", type=float, default=200.0,
                   help="zero-atom estimation window T")
    p.add_argument("--step", type=float, default=0.01)
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(func=cmd_invert)

    p = sub.add_parser("synth", help="spectral measure JSON -> kernel CSV")
    p.add_argument("measure")
    _add_grid(p)
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(func=cmd_synth)

    p = sub.add_parser("screw", help="gamma measure JSON -> squared-metric CSV")
    p.add_argument("gamma")
    _add_grid(p)
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(func=cmd_screw)

    p = sub.add_parser("gamma",
                       help="measure JSON -> gamma JSON (inverse with --k0)")
    p.add_argument("measure")
    p.add_argument("--k0", type=float, default=None,
                   help="invert: treat input as gamma, produce a measure with k(0)=K0")
    p.add_argument("--max-bin-width", type=float, default=2.0 ** -13)
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(func=cmd_gamma)

    p = sub.add_parser("bound-check", help="gamma JSON + k0 -> boundedness report")
    p.add_argument("gamma")
    p.add_argument("--k0", type=float, required=True)
    p.set_defaults(func=cmd_bound_check)

    p = sub.add_parser("atom0", help="kernel profile -> zero-frequency mass estimate")
    _add_kernel_source(p)
    p.add_argument("--window", type=float, default=200.0)
    p.add_argument("--step", type=float, default=0.01)
    p.set_defaults(func=cmd_atom0)

    p = sub.add_parser("rff", help="measure JSON -> frequency sample JSON")
    p.add_argument("measure")
    p.add_argument("-m", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--pairs", default=None,
                   help="CSV of x,y rows; emits an approximation-error CSV")
    p.add_argument("--errors-out", default="rff_errors.csv")
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(func=cmd_rff)

    p = sub.add_parser("product-synth",
                       help="factored measure JSON + vector pairs -> values CSV")
    p.add_argument("measure")
    p.add_argument("--pairs", required=True,
                   help="CSV rows x_1..x_d,y_1..y_d")
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(func=cmd_product_synth)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "zoo" and args.action == "sample":
        if args.output is None:
            print("error: zoo sample requires -o/--output", file=sys.stderr)
            return 2
        if args.kernel is None and args.profile is None and args.samples is None:
            print("error: zoo sample requires a kernel source", file=sys.stderr)
            return 2
    try:
        return args.func(args)
    except MathematicalRejection as exc:
        print(io.dumps_json(exc.diagnostic()))
        return 3
    except (KernelBridgeError, ValueError, KeyError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
