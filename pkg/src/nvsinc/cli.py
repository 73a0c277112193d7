"""``nvsinc`` command line entry point."""
import argparse
import csv
import json
import sys
from pathlib import Path

import numpy as np

from . import experiment
from .exceptions import NvsincError
from .interpolator import TruncationWindow, convergence_sweep, interpolate, report
from .kernel import Kind, coeff, coeff_row
from .params import make_config
from .signals import SampleGrid, parse_number, parse_signal
from .spectral import coeff_by_quadrature

EXIT_SPEC = 2
EXIT_NUMERIC = 3


def _config_from_args(args):
    values = {}
    if args.config:
        try:
            values = json.loads(Path(args.config).read_text(encoding="utf-8"))
        except (OSError, json.JSONDecodeError) as exc:
            raise experiment.SpecError("config", str(exc)) from exc
        unknown = set(values) - {"omega", "omega1", "n"}
        if unknown:
            raise experiment.SpecError(sorted(unknown)[0], "unknown config key")
    for key in ("omega", "omega1", "n"):
        if getattr(args, key) is not None:
            values[key] = getattr(args, key)
    omega = parse_number(values.get("omega", "5*pi/12"))
    omega1 = values.get("omega1")
    n = values.get("n")
    return make_config(omega, None if omega1 is None else parse_number(omega1), None if n is None else int(n))


def _read_samples(path):
    ks, re_, im = [], [], []
    with open(path, newline="", encoding="utf-8") as fh:
        for row in csv.reader(fh):
            if not row or row[0].strip().startswith("#"):
                continue
            try:
                k = int(row[0])
            except ValueError:
                if not ks:  # header row
                    continue
                raise
            ks.append(k)
            re_.append(float(row[1]))
            im.append(float(row[2]) if len(row) > 2 and row[2].strip() else 0.0)
    if not ks:
        raise NvsincError(f"{path}: no samples")
    if any(b - a != 1 for a, b in zip(ks, ks[1:])):
        raise NvsincError(f"{path}: k column must be contiguous ascending integers")
    values = np.array(re_) if not any(im) else np.array(re_) + 1j * np.array(im)
    return SampleGrid(ks[0], ks[-1], values)


def _num(z):
    if isinstance(z, complex):
        return {"re": z.real, "im": z.imag}
    return z


def cmd_coeffs(args):
    config = None if args.classical else _config_from_args(args)
    row = coeff_row(config, args.t, args.k_lo, args.k_hi, Kind.CLASSICAL if args.classical else Kind.MODIFIED)
    out = sys.stdout
    out.write("k,value\n")
    for k, v in zip(row.indices, row.values):
        out.write(f"{k},{float(v) + 0.0!r}\n")  # + 0.0 drops the sign of zero
    return 0


def cmd_oracle(args):
    config = _config_from_args(args)
    closed = coeff(config, args.t, args.k)
    quad = coeff_by_quadrature(config, args.t, args.k, panels=args.panels)
    print(f"closed_form {closed!r}")
    print(f"quadrature  {quad!r}")
    print(f"difference  {quad - closed!r}")
    return 0


def cmd_interp(args):
    config = _config_from_args(args)
    window = TruncationWindow.parse(args.window, L=args.L)
    kinds = ["classical", "modified"] if args.kind == "both" else [args.kind]
    if args.samples:
        grid = _read_samples(args.samples)
        truth = parse_signal(args.signal, L=args.L)(args.t) if args.signal else None
        doc = {"t": args.t, "config": config.to_dict(), "truth": _num(truth),
               "window": {"mode": window.mode, "L": window.L}}
        for kind in kinds:
            est = interpolate(config, grid, args.t, window, kind)
            doc[f"estimate_{kind}"] = _num(est)
            if truth is not None:
                doc[f"abs_err_{kind}"] = abs(est - truth)
    else:
        if not args.signal:
            raise experiment.SpecError("signal", "interp needs --signal or --samples")
        rep = report(config, parse_signal(args.signal, L=args.L), args.t, window)
        doc = rep.to_dict()
        for kind in {"classical", "modified"} - set(kinds):
            del doc[f"estimate_{kind}"], doc[f"abs_err_{kind}"]
    json.dump(doc, sys.stdout, indent=2, sort_keys=True)
    sys.stdout.write("\n")
    return 0


def cmd_sweep(args):
    config = _config_from_args(args)
    Ls = [int(float(x)) for x in args.Ls.split(",") if x.strip()]
    rows = []
    for L in Ls:
        # the signal may depend on L (e.g. shift=L/2), so build it per L
        signal = parse_signal(args.signal, L=L)
        rep = convergence_sweep(config, signal, args.t, [L], args.window)[0]
        rows.append({"L": L, "err_classical": rep.abs_err_classical, "err_modified": rep.abs_err_modified})
    sys.stdout.write(experiment.render_csv(rows, ("L", "err_classical", "err_modified")))
    return 0


def cmd_run(args):
    spec = experiment.load_spec(args.spec)
    if args.format:
        spec.format = args.format
    return experiment.run(spec, output=args.out)


def cmd_selftest(args):
    coeffs = experiment.corrupted_coeffs if args.inject_fault else None
    return experiment.selftest(coeffs=coeffs)


def build_parser():
    parser = argparse.ArgumentParser(
        prog="nvsinc",
        description="Interpolation of bounded band-limited signals from integer samples.")
    sub = parser.add_subparsers(dest="command", required=True)

    cfg = argparse.ArgumentParser(add_help=False)
    cfg.add_argument("--omega", help="band edge, e.g. 5*pi/12 (default)")
    cfg.add_argument("--omega1", help="oversampled band edge (default (omega+pi)/2)")
    cfg.add_argument("--n", type=int, help="even integer N (default: smallest admissible)")
    cfg.add_argument("--config", help="JSON file with keys omega, omega1, n")

    p = sub.add_parser("coeffs", parents=[cfg], help="print a row of coefficients as CSV")
    p.add_argument("--t", type=float, required=True)
    p.add_argument("--k-lo", type=int, required=True)
    p.add_argument("--k-hi", type=int, required=True)
    p.add_argument("--classical", action="store_true")
    p.set_defaults(func=cmd_coeffs)

    p = sub.add_parser("oracle", parents=[cfg], help="closed form vs quadrature for one coefficient")
    p.add_argument("--t", type=float, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--panels", type=int, default=64)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("interp", parents=[cfg], help="interpolate one point, JSON report")
    p.add_argument("--t", type=float, required=True)
    p.add_argument("--L", type=int)
    p.add_argument("--window", default="t", help="zero, t or lo:hi")
    p.add_argument("--signal", help="cosine:omega=..,shift=..  kpt:M=..,A=..,variant=..  trig:band=..,count=..,seed=..")
    p.add_argument("--samples", help="CSV with rows k,re[,im]")
    p.add_argument("--kind", choices=("modified", "classical", "both"), default="both")
    p.set_defaults(func=cmd_interp)

    p = sub.add_parser("sweep", parents=[cfg], help="errors over several L, CSV")
    p.add_argument("--t", type=float, required=True)
    p.add_argument("--Ls", required=True, help="comma separated, e.g. 1e3,1e4,1e5")
    p.add_argument("--signal", required=True)
    p.add_argument("--window", choices=("zero", "t"), default="t")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("run", help="run an experiment spec")
    p.add_argument("--spec", required=True, help="JSON spec file or bundled name")
    p.add_argument("--out", help="override the spec's output path")
    p.add_argument("--format", choices=("csv", "json"))
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("selftest", help="run the built-in property suites")
    p.add_argument("--inject-fault", action="store_true", help=argparse.SUPPRESS)
    p.set_defaults(func=cmd_selftest)
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except experiment.SpecError as exc:
        print(f"nvsinc: invalid {exc}", file=sys.stderr)
        return EXIT_SPEC
    except NvsincError as exc:
        print(f"nvsinc: {type(exc).__name__}: {exc}", file=sys.stderr)
        if args.command == "run" or isinstance(exc, ArithmeticError):
            return EXIT_NUMERIC
        return EXIT_SPEC


if __name__ == "__main__":
    sys.exit(main())
