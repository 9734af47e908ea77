"""Command-line front end.

Three subcommands cover the batch workflows:

* ``criterion`` ingests two spectra files and decides entire-gauge
  presence via the (C1)/(C2)/(C3) checks;
* ``space`` runs one space operation (spectrum, kernel diagonal,
  resolvent, eigenfunction, reconstruction, xi gauge, orthocomplement)
  over a sample grid;
* ``jacobi`` runs matrix subtasks (recurrence tables, gauge identity,
  limit-circle diagnostic, truncated-extension spectra).

Every run writes one JSON report; delimited value tables and PNG
figures land next to it unless suppressed.  Exit codes: for
``criterion`` 0/1/2 encode present / not-present / inconclusive; all
subcommands use 3 for configuration or validation rejections, 4 for
unreadable or malformed inputs, 5 for domain violations (spectrum
points, interlacing, unsupported requests), 6 for numerically
inconclusive computations, and 7 for usage errors.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

import numpy as np

from .criterion import CriterionConfig, entire_criterion
from .errors import (
    ConfigurationError,
    DeBrangesError,
    DegenerateKernelError,
    HypothesisViolationError,
    InconclusiveIntegralError,
    InconclusiveProductError,
    InvalidEigenvalueError,
    InvalidSeedError,
    InvalidSpectraError,
    MalformedFunctionError,
    NotNormalizableError,
    NumericError,
    ParseError,
    RecurrenceOverflowError,
    RefineNeededError,
    SpectrumPointError,
    UnsupportedSpaceError,
    ValidationRejectedError,
)
from .figures import criterion_figure, curve_figure, limit_circle_figure, spectra_figure
from .jacobi import (
    gauge_identity_check,
    limit_circle_diagnostic,
    recurrence_eval,
    truncated_extension_spectra,
)
from .products import TruncationSchedule
from .report import build_report, jsonable, write_report
from .serialization import (
    jacobi_from_descriptor,
    load_json,
    load_spectra,
    save_spectra,
    space_from_descriptor,
)
from .space import SpaceConfig
from .zeros import interlace_check

__all__ = ["main", "entry"]

_USAGE_EXIT = 7

_CONFIG_EXIT = 3      # invalid configuration or rejected validation
_PARSE_EXIT = 4       # unreadable or malformed input files
_DOMAIN_EXIT = 5      # mathematically invalid request for valid inputs
_NUMERIC_EXIT = 6     # computation ran but could not reach a conclusion

_CONFIG_ERRORS = (ConfigurationError, MalformedFunctionError,
                  NotNormalizableError, ValidationRejectedError, ValueError)
_DOMAIN_ERRORS = (InvalidSpectraError, SpectrumPointError, InvalidEigenvalueError,
                  InvalidSeedError, HypothesisViolationError, UnsupportedSpaceError,
                  RefineNeededError, DegenerateKernelError)
_NUMERIC_ERRORS = (InconclusiveIntegralError, InconclusiveProductError,
                   RecurrenceOverflowError, NumericError)


class _Parser(argparse.ArgumentParser):
    """Argument parser whose usage failures exit with a dedicated code."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(_USAGE_EXIT, f"{self.prog}: usage error: {message}\n")


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--out", default=None,
                        help="output directory (default: $DEBRANGES_OUTDIR or cwd)")
    parser.add_argument("--format", choices=("csv", "json"), default="csv",
                        help="value tables as CSV files or embedded in the report")
    parser.add_argument("--no-figures", action="store_true",
                        help="skip PNG rendering")
    parser.add_argument("--tol-quad", type=float, default=None, metavar="T",
                        help="inner-product convergence tolerance")
    parser.add_argument("--tol-c1", type=float, default=None, metavar="T")
    parser.add_argument("--tol-c2", type=float, default=None, metavar="T")
    parser.add_argument("--tol-c3", type=float, default=None, metavar="T")
    parser.add_argument("--schedule-r0", type=float, default=None, metavar="R",
                        help="first truncation radius")
    parser.add_argument("--schedule-doublings", type=int, default=None, metavar="J")
    parser.add_argument("--schedule-levels", type=int, default=None, metavar="L",
                        help="extrapolation depth cap")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="debranges",
                     description="de Branges space computations and the "
                                 "entire-gauge criterion")
    sub = parser.add_subparsers(dest="subcommand", required=True)

    pc = sub.add_parser("criterion", parents=[],
                        help="decide entire-gauge presence from two spectra files")
    pc.add_argument("--input", required=True,
                    help="spectra of the reference extension (beta = 0)")
    pc.add_argument("--input2", required=True,
                    help="spectra of the second extension")
    _add_common(pc)

    ps = sub.add_parser("space", help="run one space operation over a grid")
    ps.add_argument("--space", required=True, help="space descriptor JSON")
    ps.add_argument("--op", default="spectrum",
                    choices=("spectrum", "kernel-diag", "resolvent", "eigenfunction",
                             "e-from-kernel", "xi", "orthocomplement"))
    ps.add_argument("--beta", type=float, default=0.0)
    ps.add_argument("--gamma", type=float, default=0.0,
                    help="gauge angle for xi / orthocomplement")
    ps.add_argument("--interval", type=float, nargs=2, default=(-2.5, 2.5),
                    metavar=("A", "B"))
    ps.add_argument("--grid-count", type=int, default=101,
                    help="sample count on the interval")
    ps.add_argument("--w", type=float, nargs=2, default=(0.0, 1.0),
                    metavar=("RE", "IM"), help="complex point for resolvent "
                                               "and reconstruction")
    ps.add_argument("--x0", type=float, default=1.0,
                    help="eigenvalue for the eigenfunction op")
    ps.add_argument("--seed-v", type=float, default=0.0,
                    help="real zero of s_gamma seeding the xi op")
    ps.add_argument("--density", type=float, default=None,
                    help="zero-scan density override for the spectrum op")
    _add_common(ps)

    pj = sub.add_parser("jacobi", help="run one matrix subtask")
    pj.add_argument("--matrix", required=True, help="matrix descriptor JSON")
    pj.add_argument("--op", default="spectra",
                    choices=("recurrence", "gauge", "limit-circle", "spectra"))
    pj.add_argument("--order", type=int, default=None,
                    help="table length / truncation order (default: full size)")
    pj.add_argument("--tau", nargs="+", default=("0", "inf"),
                    help="boundary parameters for the spectra op ('inf' allowed)")
    pj.add_argument("--z", type=float, nargs=2, default=(0.7, 0.3),
                    metavar=("RE", "IM"), help="evaluation point for recurrence")
    pj.add_argument("--z0", type=float, nargs=2, default=(0.0, 1.0),
                    metavar=("RE", "IM"), help="probe point for limit-circle")
    pj.add_argument("--sweep", type=int, nargs="+", default=None,
                    help="orders sampled by the limit-circle diagnostic")
    _add_common(pj)

    return parser


# ----------------------------------------------------------------------
# Shared plumbing
# ----------------------------------------------------------------------

def _outdir(args) -> Path:
    root = args.out or os.environ.get("DEBRANGES_OUTDIR") or "."
    path = Path(root)
    path.mkdir(parents=True, exist_ok=True)
    return path


def _schedule(args) -> TruncationSchedule:
    base = TruncationSchedule()
    return TruncationSchedule(
        r0=args.schedule_r0 if args.schedule_r0 is not None else base.r0,
        doublings=(args.schedule_doublings if args.schedule_doublings is not None
                   else base.doublings),
        levels=args.schedule_levels if args.schedule_levels is not None else base.levels)


def _criterion_config(args) -> CriterionConfig:
    base = CriterionConfig()
    return CriterionConfig(
        tol_c1=args.tol_c1 if args.tol_c1 is not None else base.tol_c1,
        tol_c2=args.tol_c2 if args.tol_c2 is not None else base.tol_c2,
        tol_c3=args.tol_c3 if args.tol_c3 is not None else base.tol_c3,
        schedule=_schedule(args))


def _space_config(args) -> SpaceConfig:
    base = SpaceConfig()
    tol = args.tol_quad if args.tol_quad is not None else base.tol_quad
    return SpaceConfig(tol_quad=tol)


def _config_echo(args, extra=None) -> dict:
    sched = _schedule(args)
    echo = {
        "format": args.format,
        "figures": not args.no_figures,
        "schedule": {"r0": sched.r0, "doublings": sched.doublings,
                     "levels": sched.levels},
    }
    for name in ("tol_quad", "tol_c1", "tol_c2", "tol_c3"):
        value = getattr(args, name, None)
        if value is not None:
            echo[name] = value
    if extra:
        echo.update(extra)
    return echo


def _fmt_cell(value) -> str:
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return repr(float(value))


def _write_table(path: Path, columns, rows) -> Path:
    lines = ["# " + ",".join(columns)]
    lines.extend(",".join(_fmt_cell(v) for v in row) for row in rows)
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return path


def _emit_table(outdir: Path, stem: str, columns, rows, args, results: dict,
                outputs: list) -> None:
    """Write one value table as CSV, or embed it when --format json."""
    rows = [tuple(row) for row in rows]
    if args.format == "csv":
        outputs.append(_write_table(outdir / f"{stem}.csv", columns, rows))
    else:
        results.setdefault("tables", {})[stem] = {
            "columns": list(columns),
            "rows": [[jsonable(v) for v in row] for row in rows],
        }


def _grid(args) -> np.ndarray:
    a, b = float(args.interval[0]), float(args.interval[1])
    if not (np.isfinite(a) and np.isfinite(b) and a < b):
        raise ConfigurationError("interval must be finite with A < B")
    if args.grid_count < 2:
        raise ConfigurationError("grid count must be at least 2")
    return np.linspace(a, b, int(args.grid_count))


def _finish(args, subcommand: str, operation: str, inputs: dict, config: dict,
            results: dict, outputs: list, diagnostics=None, stdout_line="") -> Path:
    outdir = _outdir(args)
    report = build_report(subcommand, operation, inputs, config, results,
                          outputs=[str(p) for p in outputs],
                          diagnostics=diagnostics)
    report_path = write_report(outdir / f"{subcommand}_report.json", report)
    if stdout_line:
        print(stdout_line)
    print(f"report: {report_path}")
    return report_path


# ----------------------------------------------------------------------
# criterion
# ----------------------------------------------------------------------

def cmd_criterion(args) -> int:
    sp0 = load_spectra(args.input)
    spg = load_spectra(args.input2)
    config = _criterion_config(args)
    verdict = entire_criterion(sp0, spg, config)
    vd = verdict.as_dict()

    outdir = _outdir(args)
    outputs: list = []
    if not args.no_figures:
        outputs.append(criterion_figure(vd, outdir / "criterion_checks.png"))

    results = {
        "verdict": vd,
        "spectra": {
            "reference": {"count": len(sp0), "truncated": sp0.truncated},
            "second": {"count": len(spg), "truncated": spg.truncated},
        },
    }
    config_echo = _config_echo(args, {
        "tol_c1": config.tol_c1, "tol_c2": config.tol_c2, "tol_c3": config.tol_c3,
        "c1_window": config.c1_window, "c2_min_tail": config.c2_min_tail,
        "c3_term_error_cap": config.c3_term_error_cap,
        "c3_min_terms": config.c3_min_terms,
    })
    _finish(args, "criterion", "entire-gauge",
            {"input": str(args.input), "input2": str(args.input2)},
            config_echo, results, outputs,
            stdout_line=f"verdict: {verdict.overall.value}")

    return {"entire-gauge-present": 0, "not-present": 1}.get(verdict.overall.value, 2)


# ----------------------------------------------------------------------
# space
# ----------------------------------------------------------------------

def _op_spectrum(space, args, outdir, results, outputs):
    values = space.spectrum(args.beta, tuple(args.interval), density=args.density)
    results["spectrum"] = {"count": len(values), "truncated": values.truncated,
                           "values": [float(v) for v in values.values[:256]]}
    path = outdir / "space_spectrum.csv"
    save_spectra(path, values,
                 header=f"spectrum of S_beta, beta={args.beta}, "
                        f"interval=[{args.interval[0]}, {args.interval[1]}]")
    outputs.append(path)
    if not args.no_figures:
        outputs.append(spectra_figure({f"beta={args.beta:g}": values.values},
                                      outdir / "space_spectrum.png",
                                      title="extension spectrum"))


def _op_kernel_diag(space, args, results, outputs, outdir):
    xs = _grid(args)
    kxx = np.array([float(np.real(space.kernel(x, x))) for x in xs])
    _emit_table(outdir, "space_kernel_diag", ("x", "kxx"),
                zip(xs, kxx), args, results, outputs)
    results["kernel_diag"] = {"min": float(np.min(kxx)), "max": float(np.max(kxx))}
    if not args.no_figures:
        outputs.append(curve_figure(xs, kxx, outdir / "space_kernel_diag.png",
                                    ylabel="k(x,x)", title="kernel diagonal"))


def _op_resolvent(space, args, results, outputs, outdir):
    w = complex(args.w[0], args.w[1])
    probe = complex(0.0, 1.0) if abs(w - 1j) > 1e-9 else complex(0.5, 1.0)
    f = space.kernel_element(probe)
    g = space.resolvent_element(args.beta, w, f)
    xs = _grid(args)
    fv = np.array([complex(f(x)) for x in xs])
    gv = np.array([complex(g(x)) for x in xs])
    s = space.s(args.beta)
    defect = (xs - w) * gv - fv + np.array([complex(s(x)) for x in xs]) \
        * (complex(f(w)) / complex(s(w)))
    _emit_table(outdir, "space_resolvent",
                ("x", "re_f", "im_f", "re_Rf", "im_Rf"),
                ((x, v.real, v.imag, u.real, u.imag)
                 for x, v, u in zip(xs, fv, gv)),
                args, results, outputs)
    results["resolvent"] = {
        "w": w, "beta": args.beta, "probe": probe,
        "max_defect": float(np.max(np.abs(defect))),
    }
    if not args.no_figures:
        outputs.append(curve_figure(xs, np.abs(gv), outdir / "space_resolvent.png",
                                    ylabel="|R f|", title="resolvent sample"))


def _op_eigenfunction(space, args, results, outputs, outdir):
    g = space.eigenfunction(args.beta, args.x0)
    xs = _grid(args)
    gv = np.array([complex(g(x)) for x in xs])
    _emit_table(outdir, "space_eigenfunction", ("x", "re_g", "im_g"),
                ((x, v.real, v.imag) for x, v in zip(xs, gv)),
                args, results, outputs)
    results["eigenfunction"] = {"beta": args.beta, "x0": args.x0,
                                "norm": float(space.norm(g))}
    if not args.no_figures:
        outputs.append(curve_figure(xs, gv.real, outdir / "space_eigenfunction.png",
                                    ylabel="g(x)", title=f"eigenfunction at {args.x0:g}"))


def _op_e_from_kernel(space, args, results, outputs, outdir):
    w0 = complex(args.w[0], args.w[1])
    e_rec = space.e_from_kernel(w0)
    xs = _grid(args)
    rec = np.abs(np.array([complex(e_rec(x)) for x in xs]))
    ref = np.abs(space.hb.e(xs.astype(complex)))
    deviation = float(np.max(np.abs(rec - ref) / np.maximum(ref, 1e-300)))
    _emit_table(outdir, "space_e_from_kernel",
                ("x", "abs_e_reconstructed", "abs_e"),
                zip(xs, rec, ref), args, results, outputs)
    results["e_from_kernel"] = {"w0": w0, "max_relative_modulus_deviation": deviation}
    if not args.no_figures:
        outputs.append(curve_figure(xs, rec, outdir / "space_e_from_kernel.png",
                                    ylabel="|e_rec(x)|", title="reconstructed modulus"))


def _op_xi(space, args, results, outputs, outdir):
    zs = np.array([complex(t, 0.37 + 0.11 * k) for k, t in
                   enumerate(np.linspace(args.interval[0], args.interval[1], 7))])
    conj_dev = 0.0
    samples = []
    for z in zs:
        xi_z = space.xi_gauge(args.gamma, args.seed_v, z)
        xi_zc = space.xi_gauge(args.gamma, args.seed_v, np.conj(z))
        probe = np.linspace(-1.5, 1.5, 5)
        a = xi_z.sharp()(probe)
        b = xi_zc(probe)
        conj_dev = max(conj_dev, float(np.max(np.abs(a - b))
                                       / (1.0 + float(np.max(np.abs(b))))))
        samples.append((z, complex(xi_z(args.seed_v))))
    _emit_table(outdir, "space_xi", ("re_z", "im_z", "re_xi_at_v", "im_xi_at_v"),
                ((z.real, z.imag, v.real, v.imag) for z, v in samples),
                args, results, outputs)
    results["xi"] = {"gamma": args.gamma, "seed_v": args.seed_v,
                     "max_conjugation_deviation": conj_dev}


def _op_orthocomplement(space, args, results):
    witness = space.domain_orthocomplement()
    if witness is None:
        results["orthocomplement"] = {"present": False,
                                      "note": "multiplication domain is dense"}
    else:
        results["orthocomplement"] = {
            "present": True, "gamma": witness.gamma,
            "residual": witness.residual,
        }


def cmd_space(args) -> int:
    desc = load_json(args.space)
    space = space_from_descriptor(desc, config=_space_config(args))
    outdir = _outdir(args)
    results: dict = {"space": space.describe()}
    outputs: list = []

    if args.op == "spectrum":
        _op_spectrum(space, args, outdir, results, outputs)
    elif args.op == "kernel-diag":
        _op_kernel_diag(space, args, results, outputs, outdir)
    elif args.op == "resolvent":
        _op_resolvent(space, args, results, outputs, outdir)
    elif args.op == "eigenfunction":
        _op_eigenfunction(space, args, results, outputs, outdir)
    elif args.op == "e-from-kernel":
        _op_e_from_kernel(space, args, results, outputs, outdir)
    elif args.op == "xi":
        _op_xi(space, args, results, outputs, outdir)
    else:
        _op_orthocomplement(space, args, results)

    inputs = {"space": str(args.space), "descriptor": desc, "op": args.op,
              "beta": args.beta, "interval": list(args.interval)}
    _finish(args, "space", args.op, inputs, _config_echo(args), results, outputs,
            stdout_line=f"space op {args.op}: ok")
    return 0


# ----------------------------------------------------------------------
# jacobi
# ----------------------------------------------------------------------

def _parse_tau(token: str) -> float:
    text = str(token).strip().lower()
    if text in ("inf", "+inf", "infinity"):
        return float("inf")
    try:
        return float(text)
    except ValueError as exc:
        raise ConfigurationError(f"tau must be a real number or 'inf', got {token!r}") \
            from exc


def _op_recurrence(matrix, args, results, outputs, outdir):
    z = complex(args.z[0], args.z[1])
    order = args.order if args.order is not None else matrix.size
    pair = recurrence_eval(matrix, z, order)
    _emit_table(outdir, "jacobi_recurrence",
                ("k", "re_P", "im_P", "re_Q", "im_Q"),
                ((k, pair.P[k].real, pair.P[k].imag, pair.Q[k].real, pair.Q[k].imag)
                 for k in range(order + 1)),
                args, results, outputs)
    wr = pair.wronskian()
    results["recurrence"] = {
        "z": z, "order": order,
        "max_wronskian_deviation": float(np.max(np.abs(wr - 1.0))),
        "first_row_residual": float(abs(pair.first_row_residual("Q") - 1.0)),
        "max_row_residual": float(max(
            (np.max(np.abs(pair.row_residuals(t))) for t in ("P", "Q")
             if order >= 3), default=0.0)),
    }


def _op_gauge(matrix, args, results):
    zs = np.concatenate([np.linspace(-2.0, 2.0, 9) + 0.5j,
                         np.linspace(-1.0, 1.0, 5) + 1.0j])
    deviation = gauge_identity_check(matrix, zs)
    results["gauge"] = {"max_deviation": float(deviation),
                        "samples": int(zs.size)}


def _op_limit_circle(matrix, args, results, outputs, outdir):
    z0 = complex(args.z0[0], args.z0[1])
    sweep = tuple(args.sweep) if args.sweep else None
    diag = limit_circle_diagnostic(matrix, z0, sweep=sweep)
    results["limit_circle"] = {
        "z0": z0, "classification": diag.classification, "note": diag.note,
        "trace": [[int(n), float(total)] for n, total in diag.trace],
    }
    if not args.no_figures:
        outputs.append(limit_circle_figure(diag.trace, diag.classification,
                                           outdir / "jacobi_limit_circle.png"))


def _op_spectra(matrix, args, results, outputs, outdir):
    order = args.order if args.order is not None else matrix.size
    taus = [_parse_tau(t) for t in args.tau]
    ladders = {}
    table = {}
    for tau in taus:
        values = truncated_extension_spectra(matrix, order, tau)
        label = "inf" if np.isinf(tau) else f"{tau:g}"
        ladders[f"tau={label}"] = values.values
        table[label] = values
        path = outdir / f"jacobi_spectra_tau_{label.replace('-', 'm')}.csv"
        save_spectra(path, values, header=f"truncated spectra, order={order}, tau={label}")
        outputs.append(path)
    pairs = {}
    labels = list(table)
    for i in range(len(labels) - 1):
        a, b = labels[i], labels[i + 1]
        check = interlace_check(table[a], table[b])
        pairs[f"tau={a}|tau={b}"] = {"interlaced": check.interlaced,
                                     "detail": check.detail}
    results["spectra"] = {
        "order": order,
        "taus": [("inf" if np.isinf(t) else float(t)) for t in taus],
        "counts": {k: len(v) for k, v in table.items()},
        "values": {k: [float(x) for x in v.values[:128]] for k, v in table.items()},
        "interlacing": pairs,
    }
    if not args.no_figures and ladders:
        outputs.append(spectra_figure(ladders, outdir / "jacobi_spectra.png",
                                      title="truncated extension spectra"))


def cmd_jacobi(args) -> int:
    desc = load_json(args.matrix)
    matrix = jacobi_from_descriptor(desc)
    outdir = _outdir(args)
    results: dict = {"matrix": {"size": matrix.size}}
    outputs: list = []

    if args.op == "recurrence":
        _op_recurrence(matrix, args, results, outputs, outdir)
    elif args.op == "gauge":
        _op_gauge(matrix, args, results)
    elif args.op == "limit-circle":
        _op_limit_circle(matrix, args, results, outputs, outdir)
    else:
        _op_spectra(matrix, args, results, outputs, outdir)

    inputs = {"matrix": str(args.matrix), "descriptor": desc, "op": args.op}
    _finish(args, "jacobi", args.op, inputs, _config_echo(args), results, outputs,
            stdout_line=f"jacobi op {args.op}: ok")
    return 0


# ----------------------------------------------------------------------
# entry points
# ----------------------------------------------------------------------

def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.subcommand == "criterion":
            return cmd_criterion(args)
        if args.subcommand == "space":
            return cmd_space(args)
        return cmd_jacobi(args)
    except ParseError as exc:
        print(f"debranges: input error: {exc}", file=sys.stderr)
        return _PARSE_EXIT
    except _DOMAIN_ERRORS as exc:
        print(f"debranges: domain error: {exc}", file=sys.stderr)
        return _DOMAIN_EXIT
    except _NUMERIC_ERRORS as exc:
        print(f"debranges: numeric error: {exc}", file=sys.stderr)
        return _NUMERIC_EXIT
    except _CONFIG_ERRORS as exc:
        print(f"debranges: configuration error: {exc}", file=sys.stderr)
        return _CONFIG_EXIT
    except DeBrangesError as exc:
        print(f"debranges: error: {exc}", file=sys.stderr)
        return _CONFIG_EXIT


def entry() -> None:
    raise SystemExit(main())


if __name__ == "__main__":
    entry()
