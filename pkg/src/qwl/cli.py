"""Command-line entry point: one subcommand per module, JSON reports on stdout.

Exit codes: 0 success, 1 contract/verification failure (partial report is still
printed), 2 usage errors and malformed input files. Verbosity is controlled by
the QWL_LOG environment variable (debug/info/warning/error).
"""

from __future__ import annotations

import argparse
import csv
import json
import logging
import os
import sys
import time

import numpy as np

from . import __version__
from .exceptions import MatrixFormatError, QwlError
from .linalg import RandomSource, frobenius, matrix_from_json, matrix_to_json
from .registers import (build_x_family, build_z_family, verify_pairing,
                        verify_power_identity, verify_quantum_plane)
from .sic import search_fiducial, verify_sic
from .tomography import (DensityMatrix, mub_prime, random_density, reconstruct,
                         simulate_measurements, verify_mub)
from .universality import (HamiltonianSet, is_universal, quadratic_qubit_set,
                           universal_qubit_set, universal_qudit_set, universal_qutrit_set)
from .weyl import build_weyl, weyl_relation_report

logger = logging.getLogger(__name__)

_SET_BUILDERS = {
    "theorem1": ("quadratic qubit set", lambda d, n: quadratic_qubit_set(n), 2),
    "theorem2": ("universal qubit set", lambda d, n: universal_qubit_set(n), 2),
    "theorem3": ("universal qudit set", universal_qudit_set, None),
    "qutrit-example": ("universal qutrit set", lambda d, n: universal_qutrit_set(n), 3),
}


def _py(value):
    """Recursively convert numpy containers/scalars into plain JSON-able Python."""
    if isinstance(value, dict):
        return {k: _py(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_py(v) for v in value]
    if isinstance(value, np.ndarray):
        return [_py(v) for v in value.tolist()]
    if isinstance(value, (np.bool_, bool)):
        return bool(value)
    if isinstance(value, (np.integer, int)):
        return int(value)
    if isinstance(value, (np.floating, float)):
        return float(value)
    if isinstance(value, (np.complexfloating, complex)):
        return [float(value.real), float(value.imag)]
    return value


def _load_json_file(path: str):
    with open(path, "r", encoding="utf-8") as fh:
        return json.load(fh)


def _load_matrix_file(path: str) -> np.ndarray:
    return matrix_from_json(_load_json_file(path))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qwl", description=__doc__)
    parser.add_argument("--version", action="version", version=f"qwl {__version__}")
    sub = parser.add_subparsers(dest="subcommand", required=True)

    p = sub.add_parser("weyl", help="build the Weyl operators and check their relations")
    p.add_argument("--d", type=int, required=True, help="qudit dimension (>= 2)")
    fmt = p.add_mutually_exclusive_group()
    fmt.add_argument("--json", action="store_true", default=True, help="JSON report (default)")
    fmt.add_argument("--pretty", action="store_true", help="human-readable matrices instead of JSON")

    p = sub.add_parser("family", help="build a register operator family")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--family", choices=["x", "z"], required=True)
    p.add_argument("--verify", action="store_true",
                   help="also report braiding/power-identity deviations")

    p = sub.add_parser("universality", help="certify a gate set by Lie-closure dimension")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--set", choices=sorted(_SET_BUILDERS), dest="set_name",
                   help="one of the built-in generator sets")
    p.add_argument("--custom", metavar="FILE.json",
                   help="JSON list of {label, matrix} generators (overrides --set)")
    p.add_argument("--tol", type=float, default=1e-8, help="closure residual tolerance")

    p = sub.add_parser("mub", help="construct mutually unbiased bases for prime d")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--verify", action="store_true", help="also report the overlap deviation")

    p = sub.add_parser("tomography", help="simulate MUB measurements and reconstruct the state")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--shots", type=int, required=True, help="shots per basis")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--state", metavar="FILE.json", help="density matrix to measure (default: random)")
    p.add_argument("--counts-out", metavar="FILE.csv", dest="counts_out",
                   help="also write counts as CSV (basis_index,outcome_index,count)")

    p = sub.add_parser("sic", help="search for a SIC fiducial vector")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--restarts", type=int, default=20)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--tol", type=float, default=1e-10, help="frame-error success threshold")
    return parser


def _run_weyl(args) -> dict | None:
    w = build_weyl(args.d)
    report = weyl_relation_report(w)
    if args.pretty:
        for name in ("U", "V", "X", "Y", "Z"):
            print(f"{name} =")
            print(np.array2string(getattr(w, name), precision=6, suppress_small=True))
        print("relation deviations:")
        for key, dev in report.items():
            print(f"  {key}: {dev:.3e}")
        return None
    return {
        "d": args.d,
        "zeta": w.zeta,
        "matrices": {name: matrix_to_json(getattr(w, name)) for name in ("U", "V", "X", "Y", "Z")},
        "relations": report,
    }


def _run_family(args) -> dict:
    build = build_x_family if args.family == "x" else build_z_family
    ops = build(args.d, args.n)
    results = {
        "d": args.d,
        "n": args.n,
        "kind": args.family,
        "operators": [{"index": o.index, "matrix": matrix_to_json(o.matrix)} for o in ops],
    }
    if args.verify:
        rng = RandomSource(0)  # fixed seed: the report must be reproducible
        draws = (rng.rng.standard_normal((20, 2 * args.n))
                 + 1j * rng.rng.standard_normal((20, 2 * args.n))) / np.sqrt(2)
        power_dev = max(verify_power_identity(ops, c, args.d) for c in draws)
        verify = {"quantum_plane": verify_quantum_plane(ops, args.d), "power_identity": power_dev}
        if args.n >= 2:
            verify["pairing"] = verify_pairing(args.d, args.n)
        results["verify"] = verify
    return results


def _build_custom_set(args) -> HamiltonianSet:
    payload = _load_json_file(args.custom)
    if not isinstance(payload, list):
        raise MatrixFormatError("custom set file must be a JSON list of {label, matrix} objects")
    gens = []
    for pos, item in enumerate(payload):
        if not isinstance(item, dict) or "matrix" not in item:
            raise MatrixFormatError(f"custom generator {pos}: expected an object with a 'matrix' field")
        label = str(item.get("label", f"H_{pos}"))
        gens.append((label, matrix_from_json(item["matrix"])))
    return HamiltonianSet(d=args.d, n=args.n, name="custom", generators=gens)


def _run_universality(args, parser: argparse.ArgumentParser) -> dict:
    if args.custom:
        hset = _build_custom_set(args)
    elif args.set_name:
        _, builder, fixed_d = _SET_BUILDERS[args.set_name]
        if fixed_d is not None and args.d != fixed_d:
            parser.error(f"--set {args.set_name} is defined for --d {fixed_d}")
        hset = builder(args.d, args.n)
    else:
        parser.error("one of --set or --custom is required")
    _, report = is_universal(hset, tol=args.tol)
    return report


def _run_mub(args) -> dict:
    mubs = mub_prime(args.d)
    results = {
        "d": args.d,
        "labels": list(mubs.labels),
        "bases": [matrix_to_json(b) for b in mubs.bases],
    }
    if args.verify:
        results["max_deviation"] = verify_mub(mubs)
    return results


def _run_tomography(args) -> dict:
    rng = RandomSource(args.seed)
    mubs = mub_prime(args.d)
    if args.state:
        rho = DensityMatrix(d=args.d, matrix=_load_matrix_file(args.state))
        source = args.state
    else:
        # subsource d+1: indices 0..d are reserved for the per-basis streams
        rho = random_density(args.d, rng.subsource(args.d + 1))
        source = "random"
    records = simulate_measurements(rho, mubs, args.shots, rng)
    estimate, diagnostics = reconstruct(records, mubs)
    if args.counts_out:
        with open(args.counts_out, "w", newline="", encoding="utf-8") as fh:
            writer = csv.writer(fh)
            writer.writerow(["basis_index", "outcome_index", "count"])
            for record in records:
                for k, count in enumerate(record.counts):
                    writer.writerow([record.basis_index, k, int(count)])
    return {
        "d": args.d,
        "shots": args.shots,
        "state_source": source,
        "counts": [record.counts for record in records],
        "reconstruction": matrix_to_json(estimate.matrix),
        "diagnostics": {**diagnostics,
                        "error_vs_input": frobenius(estimate.matrix - rho.matrix)},
    }


def _run_sic(args) -> dict:
    result = search_fiducial(args.d, restarts=args.restarts,
                             rng=RandomSource(args.seed), tol=args.tol)
    return {
        "found": result.found,
        "d": args.d,
        "restarts_used": result.restarts_used,
        "frame_error": result.best_error,
        "max_pair_deviation": verify_sic(result.candidate),
        "fiducial": [[float(z.real), float(z.imag)] for z in result.candidate.fiducial],
    }


def _parameters(args) -> dict:
    skip = {"subcommand", "json"}
    return {k: _py(v) for k, v in sorted(vars(args).items()) if k not in skip}


def _emit(report: dict) -> None:
    print(json.dumps(_py(report), indent=2))


def dispatch(argv: list[str]) -> int:
    """Run one subcommand; returns the process exit code."""
    level = os.environ.get("QWL_LOG", "warning").upper()
    logging.basicConfig(level=getattr(logging, level, logging.WARNING), stream=sys.stderr)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exit_:  # argparse: 2 on usage error, 0 on --help
        return int(exit_.code or 0)

    handlers = {
        "weyl": lambda: _run_weyl(args),
        "family": lambda: _run_family(args),
        "universality": lambda: _run_universality(args, parser),
        "mub": lambda: _run_mub(args),
        "tomography": lambda: _run_tomography(args),
        "sic": lambda: _run_sic(args),
    }
    start = time.perf_counter()
    report = {"subcommand": args.subcommand, "parameters": _parameters(args), "results": {}}
    try:
        results = handlers[args.subcommand]()
    except SystemExit as exit_:
        return int(exit_.code or 0)
    except MatrixFormatError as err:
        print(f"qwl {args.subcommand}: malformed matrix input: {err}", file=sys.stderr)
        return 2
    except json.JSONDecodeError as err:
        print(f"qwl {args.subcommand}: invalid JSON at line {err.lineno} column {err.colno}: "
              f"{err.msg}", file=sys.stderr)
        return 2
    except OSError as err:
        print(f"qwl {args.subcommand}: {err}", file=sys.stderr)
        return 2
    except QwlError as err:
        report["error"] = str(err)
        report["elapsed"] = time.perf_counter() - start
        report["version"] = __version__
        _emit(report)
        print(f"qwl {args.subcommand}: {err}", file=sys.stderr)
        return 1

    if results is None:  # pretty output already printed
        return 0
    report["results"] = results
    report["elapsed"] = time.perf_counter() - start
    report["version"] = __version__
    _emit(report)
    return 0


def main() -> None:
    sys.exit(dispatch(sys.argv[1:]))


if __name__ == "__main__":
    main()
