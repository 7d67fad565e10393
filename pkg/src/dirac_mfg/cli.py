"""Command-line entry point: ``dirac-mfg``.

Exit codes: 0 success, 2 bad input, 3 no convergence, 4 failed verification.
"""

import argparse
import json
import logging
import sys

import numpy as np

from .equilibrium_map import F, jacobian
from .errors import MFGError, NotConverged
from .files import (
    GEN_KINDS,
    density_samples,
    gen_instance,
    load_instance,
    result_from_report,
    save_density,
    save_instance,
    save_result,
)
from .oracle import GridSpec, fd_jacobian, grid_F, nash_check
from .solver import SolveOptions, solve

log = logging.getLogger("dirac_mfg")

EXIT_OK, EXIT_INPUT, EXIT_NOT_CONVERGED, EXIT_VERIFY = 0, 2, 3, 4


def build_parser():
    p = argparse.ArgumentParser(
        prog="dirac-mfg",
        description="Equilibrium density of a density-penalised mean field game "
        "started from weighted point masses.",
    )
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--input", metavar="PATH", help="instance file (JSON)")
    src.add_argument("--gen", choices=GEN_KINDS, help="generate a random instance")
    p.add_argument("--n", type=int, default=10, help="atoms for --gen (default 10)")
    p.add_argument("--seed", type=int, default=0, help="seed for --gen (default 0)")
    p.add_argument("--no-normalize", action="store_true", help="keep the weights as given")
    p.add_argument("--save-instance", metavar="PATH", help="write the instance used")
    p.add_argument("--out", metavar="PATH", help="result file (default: stdout)")
    p.add_argument("--emit-density", metavar="PATH", help="write x,f samples as CSV")
    p.add_argument("--samples", type=int, default=2000)
    p.add_argument("--tol", type=float, default=1e-10)
    p.add_argument("--max-iters", type=int, default=50, help="Newton iteration cap")
    p.add_argument("--verify", action="store_true", help="run the brute-force oracles")
    p.add_argument("--grid-step", type=float, default=1e-4)
    p.add_argument("-v", "--verbose", action="store_true")
    return p


def verify(C, m, grid_step):
    """Grid mass, finite-difference Jacobian and Nash scan at ``C``."""
    g = GridSpec(step=grid_step)
    Fa = F(C, m)
    Fg = grid_F(C, m, g)
    cmax = float(C.max())
    # midpoint error plus one misassigned cell per interface
    grid_tol = 5 * g.step**2 * m.n * (1 + cmax) + g.step * cmax * (m.n + 1)
    grid_err = float(np.abs(Fa - Fg).max())

    A = jacobian(C, m).to_dense()
    Jfd = fd_jacobian(C, m, eps=1e-6)
    band = np.abs(np.subtract.outer(np.arange(m.n), np.arange(m.n))) <= 1
    jac_rel = float(np.max(np.abs(A - Jfd)[band] / np.maximum(np.abs(A[band]), 1e-3)))
    jac_off = float(np.max(np.abs(Jfd[~band]), initial=0.0))

    nash = nash_check(C, m, g)
    checks = {
        "grid_mass_error": grid_err,
        "grid_mass_tol": grid_tol,
        "grid_mass_ok": grid_err <= grid_tol,
        "jacobian_rel_error": jac_rel,
        "jacobian_offband_max": jac_off,
        "jacobian_ok": jac_rel < 1e-5 and jac_off < 1e-8,
        "nash_worst_violation": float(nash.worst_violation.max()),
        "nash_tol": nash.tol,
        "nash_ok": nash.passed,
    }
    checks["passed"] = bool(checks["grid_mass_ok"] and checks["jacobian_ok"] and checks["nash_ok"])
    return checks


def run(args):
    if args.input:
        inst = load_instance(args.input)
        if args.no_normalize:
            inst.normalize = False
    else:
        inst = gen_instance(args.gen, args.n, args.seed, normalize=not args.no_normalize)
    if args.save_instance:
        save_instance(inst, args.save_instance)
    m = inst.measure()
    opts = SolveOptions(tol=args.tol, max_newton_iters=args.max_iters)

    try:
        report = solve(m, opts=opts)
        status = EXIT_OK
    except NotConverged as exc:
        log.error("%s", exc)
        report = exc.report
        status = EXIT_NOT_CONVERGED
    log.info("path=%s newton=%d lmap=%d residual=%.3e", report.path.value,
             report.newton_iters, report.lmap_iters, report.residual)

    res = result_from_report(report, m, label=inst.label)
    if status == EXIT_OK and args.verify:
        res.verification = verify(report.C_star, m, args.grid_step)
        if not res.verification["passed"]:
            log.error("verification failed: %s", res.verification)
            status = EXIT_VERIFY

    if args.out:
        save_result(res, args.out)
    else:
        json.dump(res.to_dict(), sys.stdout, indent=2)
        sys.stdout.write("\n")
    if args.emit_density:
        y, f = density_samples(report.C_star, m, samples=args.samples)
        save_density(args.emit_density, y, f)
    return status


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(name)s: %(message)s")
    if args.samples < 2:
        parser.error("--samples must be at least 2")
    try:
        return run(args)
    except (MFGError, ValueError, OSError, KeyError, TypeError) as exc:
        log.error("%s", exc)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
