"""
Command-line interface.

Exit codes: 0 success, 1 verification failed, 2 usage or input error,
3 computation error.
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

import numpy as np

from . import construct, optimize, render
from .analysis import (A_of, d_bound, d_real, optimal_pointwise, separation_report,
                       verify_tight)
from .bankfile import BankFile, read_bank, serialize_bank, write_bank
from .errors import (BankSyntaxError, DuplicateFilter, EmptyNullspace, FrameletError, IoFailure,
                     MissingLowpass)

EXIT_OK, EXIT_FAILED, EXIT_USAGE, EXIT_COMPUTE = 0, 1, 2, 3


def num(x) -> str:
    """12 significant digits, the single number format of all CLI output."""
    return "%.12g" % x


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(f"{self.prog}: error: {message}")


def cmd_verify(args, out):
    bank = read_bank(args.bank).to_bank()
    res = verify_tight(bank, args.tol)
    out.write(f"residual {num(res.residual)}\n")
    out.write(f"tight {'yes' if res.ok else 'no'}\n")
    return EXIT_OK if res.ok else EXIT_FAILED


def cmd_analyze(args, out):
    bank = read_bank(args.bank).to_bank()
    rep = separation_report(bank, args.grid)
    out.write(f"d_R {num(rep.d_R)}\n")
    out.write(f"d_A {num(rep.d_A)}\n")
    out.write(f"d_B {num(rep.d_B)}\n")
    out.write(f"max_bound_violation {num(rep.max_bound_violation)}\n")
    if args.csv:
        _write_rows(args.csv, zip(rep.grid, rep.A, rep.B))
    return EXIT_OK


def cmd_lowerbound(args, out):
    a = read_bank(args.bank, require_highpass=False).get("a")
    xi = np.linspace(0.0, np.pi, args.grid + 1)
    A = A_of(a, xi)
    out.write(f"d_R {num(d_real(a))}\n")
    out.write(f"d_A {num(d_bound(a, args.grid))}\n")
    if args.csv:
        rows = []
        for x, ax in zip(xi, A):
            opt = optimal_pointwise(a, float(x))
            rows.append((x, ax, abs(opt.bp_at_xi), abs(opt.bp_at_xi_pi),
                         abs(opt.bn_at_xi), abs(opt.bn_at_xi_pi)))
        _write_rows(args.csv, rows)
    return EXIT_OK


def _write_rows(path, rows):
    try:
        Path(path).write_text("".join(",".join(num(v) for v in r) + "\n" for r in rows),
                              encoding="utf-8")
    except OSError as exc:
        raise IoFailure(f"cannot write {path}: {exc}") from exc


def cmd_construct(args, out):
    a = read_bank(args.bank, require_highpass=False).get("a")
    explicit = any(v is not None for v in (args.eps, args.s1, args.s2,
                                           args.factor_index, args.solution_index))
    if args.all:
        found = list(construct.sweep(a))
        for p, bank in found:
            res = verify_tight(bank)
            out.write(f"eps {p.eps} s1 {p.s1} s2 {p.s2} factor {p.factor_index} "
                      f"solution {p.solution_index} residual {num(res.residual)} "
                      f"len_b1 {bank.highpass[0].length} len_b2 {bank.highpass[1].length}\n")
        if not found:
            raise EmptyNullspace("no parameter choice produced a tight bank")
        if args.out:
            write_bank(BankFile.from_bank(found[0][1]), args.out)
        return EXIT_OK
    if explicit:
        params = construct.ConstructParams(args.eps or 0, args.s1 or 0, args.s2 or 0,
                                           args.factor_index or 0, args.solution_index or 0)
        bank = construct.derive_shortest_bank(a, params)
    else:
        params, bank = construct.first_bank(a)
    header = (f"# eps {params.eps} s1 {params.s1} s2 {params.s2} "
              f"factor {params.factor_index} solution {params.solution_index}\n")
    if args.out:
        write_bank(BankFile.from_bank(bank), args.out)
        out.write(header)
    else:
        out.write(header + serialize_bank(BankFile.from_bank(bank)))
    return EXIT_OK


def cmd_optimize(args, out):
    bank = read_bank(args.bank).to_bank()
    real_mode = None if args.mode is None else args.mode == "real"
    res = optimize.optimize_bank(bank, args.order, real_mode, args.starts, args.seed)
    lat = res.lattice
    lines = [f"# d_B {num(res.d_B)}",
             f"# m {res.m} start {res.start_index} mode {'real' if res.real_mode else 'complex'}",
             "# thetas " + " ".join(num(t) for t in lat.thetas)]
    if lat.phis is not None:
        lines.append("# phis " + " ".join(num(p) for p in lat.phis))
    bf = BankFile.from_bank(res.bank, ("bp", "bn"))
    if args.out:
        write_bank(bf, args.out)
        out.write("\n".join(lines) + "\n")
    else:
        out.write("\n".join(lines) + "\n" + serialize_bank(bf))
    return EXIT_OK


def _safe(label: str) -> str:
    """File-name form of a generator label, e.g. ``rr-ii`` -> ``rrmii``."""
    return label.replace("(x)", "_").replace("+", "p").replace("-", "m")


def cmd_render(args, out):
    bf = read_bank(args.bank)
    outdir = Path(args.outdir)
    try:
        outdir.mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        raise IoFailure(f"cannot create {outdir}: {exc}") from exc
    phi = render.cascade_phi(bf.get("a"), args.levels)
    written = [render.export(phi, args.format, outdir / f"phi.{args.format}")]
    psis = {}
    for name, b in bf.filters[1:]:
        psis[name] = render.wavelet_from_phi(phi, b)
        written.append(render.export(psis[name], args.format, outdir / f"psi_{name}.{args.format}"))
    hp = [n for n, _ in bf.filters[1:]]
    if len(hp) == 2 and not any(psis[n].values.size == 1 and psis[n].values[0] == 0 for n in hp):
        gens = render.tensor_generators(phi, psis[hp[0]], psis[hp[1]])
        for k, g in enumerate(gens):
            written.append(render.export(g, args.format, outdir / f"gen{k}_{_safe(g.label)}.{args.format}"))
        out.write(f"max_imag_residual {num(max(g.imag_residual for g in gens))}\n")
    out.write(f"cascade_sup_diff {num(phi.sup_diff)} iterations {phi.iterations}\n")
    for p in written:
        out.write(f"wrote {p}\n")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="framelets", description="Tight framelet filter banks with optimal frequency separation.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("verify", help="check the tight framelet identities")
    s.add_argument("bank")
    s.add_argument("--tol", type=float, default=1e-10)
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("analyze", help="d_R, d_A, d_B and the bound curves")
    s.add_argument("bank")
    s.add_argument("--grid", type=int, default=2048)
    s.add_argument("--csv")
    s.set_defaults(func=cmd_analyze)

    s = sub.add_parser("lowerbound", help="separation lower bound of a low-pass filter")
    s.add_argument("bank")
    s.add_argument("--grid", type=int, default=2048)
    s.add_argument("--csv")
    s.set_defaults(func=cmd_lowerbound)

    s = sub.add_parser("construct", help="shortest-support tight bank from a low-pass filter")
    s.add_argument("bank")
    s.add_argument("--eps", type=int, choices=(0, 1))
    s.add_argument("--s1", type=int, choices=(0, 1))
    s.add_argument("--s2", type=int, choices=(0, 1))
    s.add_argument("--factor-index", type=int)
    s.add_argument("--solution-index", type=int)
    s.add_argument("--all", action="store_true", help="list every valid parameter choice")
    s.add_argument("--out")
    s.set_defaults(func=cmd_construct)

    s = sub.add_parser("optimize", help="minimize d_B over a paraunitary column")
    s.add_argument("bank")
    s.add_argument("--order", type=int, required=True)
    mode = s.add_mutually_exclusive_group()
    mode.add_argument("--real", dest="mode", action="store_const", const="real")
    mode.add_argument("--complex", dest="mode", action="store_const", const="complex")
    s.add_argument("--starts", type=int, default=64)
    s.add_argument("--seed", type=int, default=1)
    s.add_argument("--out")
    s.set_defaults(func=cmd_optimize, mode=None)

    s = sub.add_parser("render", help="cascade samples and 2D generators")
    s.add_argument("bank")
    s.add_argument("--levels", type=int, default=render.DEFAULT_LEVEL)
    s.add_argument("--format", choices=("pgm", "csv"), default="pgm")
    s.add_argument("--outdir", default=".")
    s.set_defaults(func=cmd_render)
    return p


def dispatch(argv, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        stderr.write(f"{exc}\n")
        return EXIT_USAGE
    except SystemExit as exc:          # --help
        return int(exc.code or 0)
    try:
        return args.func(args, stdout)
    except (BankSyntaxError, DuplicateFilter, MissingLowpass, IoFailure, ValueError) as exc:
        stderr.write(f"error: {exc}\n")
        return EXIT_USAGE
    except FrameletError as exc:
        stderr.write(f"error: {type(exc).__name__}: {exc}\n")
        return EXIT_COMPUTE


def main() -> None:
    sys.exit(dispatch(sys.argv[1:]))


if __name__ == "__main__":
    main()
