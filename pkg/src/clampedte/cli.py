"""Command-line interface: ``clampedte <command> [options]``.

Exit codes: 0 success (and every check passed), 1 a check reported FAIL,
2 usage error, 3 numerical failure.
"""
import argparse
import sys
from pathlib import Path

import numpy as np

from . import dtn, geometry, nep, oracle, reference
from .spectrum import SolverParams, SpectrumError, TYPES, build_report, compute_spectrum

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_NUMERIC = 0, 1, 2, 3

DEFAULT_K_GRID = (1.0, 0.3, 0.1, 0.03, 0.01, 3e-3, 1e-3)


class UsageError(Exception):
    pass


def _params(args):
    if args.nodes < 8 or args.nodes % 2:
        raise UsageError("--nodes must be an even integer >= 8")
    if args.contour_height <= 0:
        raise UsageError("--contour-height must be positive")
    if args.kmax <= 1.0:
        raise UsageError("--kmax must exceed 1")
    return SolverParams(nodes=args.nodes, kmax=args.kmax, contour_height=args.contour_height,
                        seed=args.seed)


def _count(args, limit=20):
    if not 1 <= args.count <= limit:
        raise UsageError(f"--count must lie in 1..{limit}")
    return args.count


def _shape(name):
    try:
        return geometry.from_name(name)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def _emit(text, out):
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _verdict(ok):
    return "PASS" if ok else "FAIL"


# --------------------------------------------------------------------------
# commands
# --------------------------------------------------------------------------

def cmd_eigs(args):
    types = [t.strip().upper() for t in args.which.split(",") if t.strip()]
    if not types or any(t not in TYPES for t in types):
        raise UsageError("--which takes a comma list drawn from de, ne, te")
    report = build_report(_shape(args.shape), types, _count(args), _params(args), args.backend)
    text = report.to_json() if args.format == "json" else report.to_csv()
    _emit(text, args.out)
    for t, value, trace, normal in report.rejected:
        print(f"note: rejected {t} candidate {value:.6f} "
              f"(trace mismatch {trace:.1e}, normal mismatch {normal:.1e})", file=sys.stderr)
    return EXIT_OK


def cmd_interlace(args):
    report = build_report(_shape(args.shape), TYPES, _count(args), _params(args), args.backend)
    ok_all = True
    ne, te, de = (report.spectra[t] for t in ("NE", "TE", "DE"))
    for j, ok in enumerate(report.interlacing_ok, start=1):
        ok_all &= ok
        print(f"{_verdict(ok)} j={j}: mu={ne[j-1].value ** 2:.6f} <= k^2={te[j-1].value ** 2:.6f}"
              f" <= lambda={de[j-1].value ** 2:.6f}")
    return EXIT_OK if ok_all else EXIT_FAIL


def _compare_rows(shape, kinds, table, params, backend, tol):
    ok_all = True
    for kind in kinds:
        ref = table[kind]
        got, _ = compute_spectrum(shape, kind, len(ref), params, backend)
        for j, (e, r) in enumerate(zip(got, ref), start=1):
            diff = abs(e.value - r)
            ok = diff <= tol
            ok_all &= ok
            print(f"{shape:8s} {kind} {j}  computed {e.value:10.6f}  reference {r:10.5f}"
                  f"  |diff| {diff:.2e}  {_verdict(ok)}")
    return ok_all


def cmd_table(args):
    params = _params(args)
    ok_all = True
    if args.which == "table1":
        print("eps   k1 computed   k1 ref    sqrt(lambda1)  ref      bound")
        for eps, k1_ref, root_ref in reference.TABLE1:
            (e,), _ = compute_spectrum(geometry.ellipse(eps), "TE", 1, params, args.backend)
            root = oracle.ellipse_lambda1(eps) ** 0.5
            ok = (abs(e.value - k1_ref) <= reference.TOL_SHAPE
                  and abs(root - root_ref) <= reference.TOL_DISK and e.value < root)
            ok_all &= ok
            print(f"{eps:.1f}  {e.value:10.6f}  {k1_ref:8.5f}  {root:12.6f}  {root_ref:8.5f}"
                  f"  {'k1<sqrt(l1)' if e.value < root else 'VIOLATED'}  {_verdict(ok)}")
    elif args.which == "table2":
        ok_all = _compare_rows("disk", ("NE", "TE", "DE"), reference.TABLE2["disk"], params,
                               args.backend, reference.TOL_DISK)
    elif args.which == "table4":
        for shape in ("star", "peanut", "kite"):
            ok_all &= _compare_rows(shape, ("NE", "TE", "DE"), reference.TABLE4[shape], params,
                                    args.backend, reference.TOL_SHAPE)
    else:
        k1 = {}
        for shape in ("kite", "peanut", "star"):
            area = geometry.enclosed_area(geometry.from_name(shape))
            (e,), _ = compute_spectrum(shape, "TE", 1, params, args.backend)
            k1[shape] = e.value
            ok = abs(area - reference.AREAS[shape]) <= reference.TOL_AREA
            ok_all &= ok
            print(f"{shape:7s} area {area:.6f} (reference {reference.AREAS[shape]:.3f})"
                  f" {_verdict(ok)}   k1 {e.value:.6f}")
        ordered = k1["kite"] <= k1["peanut"] <= k1["star"]
        ok_all &= ordered
        print(f"{_verdict(ordered)} k1(kite) <= k1(peanut) <= k1(star)")
    return EXIT_OK if ok_all else EXIT_FAIL


def dtn_checks(radius=1.0, nf=40, k_grid=DEFAULT_K_GRID):
    """Rows ``(label, ok, detail)`` for the DtN property checks."""
    t0 = dtn.dtn_matrix(0.0, radius, nf)
    grid = sorted(k_grid, reverse=True)
    norms = [dtn.dtn_norm(dtn.dtn_matrix(k, radius, nf), t0) for k in grid]
    rows = []
    mono = all(b < a for a, b in zip(norms, norms[1:]))
    rows.append(("norm decreases as k -> 0", mono,
                 " ".join(f"{k:g}:{v:.4f}" for k, v in zip(grid, norms))))
    at = dtn.dtn_norm(dtn.dtn_matrix(1e-3, radius, nf), t0)
    rows.append(("norm < 1e-2 at k = 1e-3", at < 1e-2, f"{at:.4f}"))
    k = 1e-3
    errs = []
    for n in range(2, min(nf, 40) + 1):
        g = dtn.gamma_n(n, k, radius)
        approx = -k * k * radius / (2 * n)
        errs.append((n, abs(g - approx) / abs(approx)))
    bad = [n for n, e in errs if e > 0.1]
    rows.append(("gamma_n ~ -k^2 R/(2n) within 10%, 2<=n<=40", not bad,
                 f"max rel err {max(e for _, e in errs):.3f}; failing n: {bad}"))
    errs_c = [abs(dtn.gamma_n(n, k, radius) - dtn.gamma_small_k(n, k, radius))
              / abs(dtn.gamma_small_k(n, k, radius)) for n in range(2, min(nf, 40) + 1)]
    rows.append(("gamma_n ~ -k^2 R/(2(n-1)) within 10%, 2<=n<=40", max(errs_c) <= 0.1,
                 f"max rel err {max(errs_c):.2e}"))
    taus = [t for t in np.linspace(0.9, 1.1, 21) if abs(t - 1.0) > 1e-12]
    ratios = [dtn.dtn_continuity_modulus(1.0, t, radius, nf) / abs(1 - t * t) for t in taus]
    spread = (max(ratios) - min(ratios)) / min(ratios)
    rows.append(("continuity ratio varies < 25% near k = 1", spread < 0.25,
                 f"ratio in [{min(ratios):.4f}, {max(ratios):.4f}], spread {spread:.3f}"))
    return [(label, bool(ok), detail) for label, ok, detail in rows]


def cmd_dtn_check(args):
    if args.radius <= 0 or args.nf < 2:
        raise UsageError("need --radius > 0 and --nf >= 2")
    grid = DEFAULT_K_GRID
    if args.k_grid:
        try:
            grid = tuple(float(v) for v in args.k_grid.split(","))
        except ValueError as exc:
            raise UsageError("--k-grid takes comma-separated numbers") from exc
        if any(k <= 0 for k in grid):
            raise UsageError("--k-grid values must be positive")
    ok_all = True
    for label, ok, detail in dtn_checks(args.radius, args.nf, grid):
        ok_all &= ok
        print(f"{_verdict(ok)} {label}: {detail}")
    return EXIT_OK if ok_all else EXIT_FAIL


def cmd_oracle(args):
    count = _count(args, limit=50)
    if args.radius <= 0:
        raise UsageError("--radius must be positive")
    kinds = {"de": oracle.disk_dirichlet, "ne": oracle.disk_neumann, "te": oracle.disk_te_roots}
    for t in [t.strip().lower() for t in args.which.split(",") if t.strip()]:
        if t not in kinds:
            raise UsageError("--which takes a comma list drawn from de, ne, te")
        spec = kinds[t](count, radius=args.radius)
        print(f"{t.upper()}: " + ", ".join(f"{v:.8f}" for v in spec.first(count)))
    return EXIT_OK


# --------------------------------------------------------------------------
# parser
# --------------------------------------------------------------------------

def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--nodes", type=int, default=128,
                        help="boundary nodes 2m (even; default 128)")
    common.add_argument("--kmax", type=float, default=12.0,
                        help="largest wavenumber scanned (default 12)")
    common.add_argument("--contour-height", type=float, default=0.25,
                        help="imaginary half-height of each contour (default 0.25)")
    common.add_argument("--seed", type=int, default=0,
                        help="seed of the contour probe block (default 0)")
    common.add_argument("--backend", choices=("numba", "numpy"), default=None,
                        help="kernel backend (default: numba unless CLAMPEDTE_BACKEND=numpy)")

    p = argparse.ArgumentParser(prog="clampedte",
                                description="Clamped transmission, Dirichlet and Neumann "
                                            "eigenvalues of planar domains.")
    sub = p.add_subparsers(dest="command", required=True)

    e = sub.add_parser("eigs", parents=[common], help="compute spectra of one shape")
    e.add_argument("--shape", required=True,
                   help="disk, disk:<R>, ellipse:<eps>, star, peanut, kite or fourier:<file>")
    e.add_argument("--count", type=int, default=5, help="values per type (default 5)")
    e.add_argument("--which", default="de,ne,te", help="types to compute (default de,ne,te)")
    e.add_argument("--out", default=None, help="output file (default stdout)")
    e.add_argument("--format", choices=("csv", "json"), default="csv",
                   help="report format (default csv)")
    e.set_defaults(func=cmd_eigs)

    i = sub.add_parser("interlace", parents=[common],
                       help="check mu_j <= k_j^2 <= lambda_j for j = 1..count")
    i.add_argument("--shape", required=True)
    i.add_argument("--count", type=int, default=5)
    i.set_defaults(func=cmd_interlace)

    t = sub.add_parser("table", parents=[common], help="recompute a reference table")
    t.add_argument("which", choices=("table1", "table2", "table4", "monotonicity"))
    t.set_defaults(func=cmd_table)

    d = sub.add_parser("dtn-check", help="Dirichlet-to-Neumann property checks")
    d.add_argument("--radius", type=float, default=1.0, help="circle radius R (default 1)")
    d.add_argument("--nf", type=int, default=40, help="Fourier truncation N_f (default 40)")
    d.add_argument("--k-grid", default=None,
                   help="comma-separated k values (default 1,0.3,0.1,0.03,0.01,3e-3,1e-3)")
    d.set_defaults(func=cmd_dtn_check)

    o = sub.add_parser("oracle", help="disk spectra by separation of variables")
    o.add_argument("--which", default="de,ne,te", help="types (default de,ne,te)")
    o.add_argument("--count", type=int, default=5, help="values per type (default 5)")
    o.add_argument("--radius", type=float, default=1.0, help="disk radius (default 1)")
    o.set_defaults(func=cmd_oracle)
    return p


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        parser.error(str(exc))      # exits with status 2
    except (SpectrumError, nep.RankOverflowError, nep.SingularMatrixError,
            oracle.ScanCeilingError, ArithmeticError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
