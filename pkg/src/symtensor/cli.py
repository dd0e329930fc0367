"""Command-line front end: products, spectra, verification suites and the lower-bound sampler.

Exit codes: 0 success, 1 suite failure or eigensolver non-convergence,
2 usage or input errors, 3 size-guard violations.
"""

import argparse
import csv
import io
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

import numpy as np

from ._version import __version__
from .errors import EigenConvergenceError, InputFormatError, SizeGuardError
from .io import load_operator, operator_from_dict, parse_scalar
from .operators import OperatorSpec
from .products import ProductRequest, normalize_flavor, sym_product
from .spectral import DEFAULT_TOL, general_eigen, hermitian_eigen, multi_diag_sym_spectrum, multiset_distance
from .theorems.checks import CONJECTURE_KINDS, conjecture_sampler
from .theorems.shifts import shift_block_spectra
from .theorems.suites import REGISTRY, run_suite

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_RESOURCE = 0, 1, 2, 3
SHIFT_OPS = {
    "shift-sym-adjoint": ("sym", "S . S^* restricted to total degree <= K"),
    "shift-asym-adjoint": ("asym", "S ^ S^* restricted to total degree <= K"),
}


class UsageError(Exception):
    pass


# --- input -------------------------------------------------------------------


def parse_operator_arg(text):
    """File path, inline JSON, or one of: shift, backshift, identity, diag:v1,v2,..."""
    stripped = text.strip()
    if stripped.startswith("{"):
        try:
            return operator_from_dict(json.loads(stripped), label="inline")
        except json.JSONDecodeError as exc:
            raise InputFormatError(f"inline operator is not valid JSON: {exc}") from exc
    low = stripped.lower()
    if low in ("shift", "s"):
        return OperatorSpec.shift()
    if low in ("backshift", "s*"):
        return OperatorSpec.backshift()
    if low.startswith("diag:"):
        return OperatorSpec.diagonal(parse_values(stripped[5:]), label=stripped)
    if low in ("identity", "i"):
        return None
    return load_operator(text)


def parse_values(text):
    parts = [p for p in text.split(",") if p.strip()]
    if not parts:
        raise InputFormatError(f"empty value list {text!r}")
    return tuple(parse_scalar(p) for p in parts)


def build_request(args):
    specs = [parse_operator_arg(a) for a in args.operators]
    # "identity" needs a size: take it from --dim or the dense factors
    if any(s is None for s in specs):
        sizes = {s.natural_size for s in specs if s is not None and s.natural_size is not None}
        size = args.dim if args.dim is not None else (sizes.pop() if len(sizes) == 1 else None)
        if size is None:
            raise UsageError("'identity' needs --dim or a dense factor to fix its size")
        specs = [OperatorSpec.dense(np.eye(size), label="I") if s is None else s for s in specs]
    try:
        return ProductRequest(tuple(specs), flavor=args.flavor, trunc=args.dim)
    except SizeGuardError:
        raise
    except (TypeError, ValueError) as exc:
        raise UsageError(str(exc)) from exc


# --- output ------------------------------------------------------------------


def envelope(command, statement, args, **body):
    out = {
        "command": command,
        "statement": statement,
        "version": __version__,
        "seed": int(args.seed),
        "tol": float(args.tol if args.tol is not None else DEFAULT_TOL),
    }
    out.update(body)
    return out


def complex_pairs(values):
    return [[float(z.real), float(z.imag)] for z in np.asarray(values, dtype=np.complex128).ravel()]


def matrix_rows(m):
    return [complex_pairs(row) for row in np.asarray(m, dtype=np.complex128)]


def to_json(obj):
    return json.dumps(obj, indent=2) + "\n"


def csv_text(header, rows):
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


def matrix_csv(m):
    m = np.asarray(m, dtype=np.complex128)
    header = [f"{part}_{j}" for j in range(m.shape[1]) for part in ("re", "im")]
    rows = [[repr(float(v)) for z in row for v in (z.real, z.imag)] for row in m]
    return csv_text(header, rows)


def values_csv(values):
    return csv_text(["re", "im"], [[repr(float(z.real)), repr(float(z.imag))] for z in np.asarray(values, dtype=np.complex128)])


def fmt(z):
    z = complex(z)
    # rounding dust prints as zero in the human-readable view only
    re = 0.0 if abs(z.real) < 5e-13 else z.real
    im = 0.0 if abs(z.imag) < 5e-13 else z.imag
    z = complex(re, im)
    if im == 0.0:
        return f"{z.real:.10g}"
    return f"{z.real:.10g}{'+' if z.imag >= 0 else '-'}{abs(z.imag):.10g}i"


def emit(text, args):
    if args.output:
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)


# --- commands ----------------------------------------------------------------


def cmd_product(args):
    if len(args.operators) < 2:
        raise UsageError("product needs at least two operators")
    req = build_request(args)
    m = req.build()
    statement = {
        "symmetric": "A_1 . ... . A_n in the symmetric orthonormal basis",
        "antisymmetric": "A_1 ^ ... ^ A_n in the antisymmetric orthonormal basis",
        "full-averaged": "(1/n!) sum over orderings of A_pi(1) (x) ... (x) A_pi(n)",
    }[req.flavor]
    if args.format == "csv":
        text = matrix_csv(m)
    elif args.format == "pretty":
        lines = [f"# {statement}", f"# flavor={req.flavor} trunc={req.trunc} shape={m.shape[0]}x{m.shape[1]}"]
        lines += ["  ".join(fmt(z) for z in row) for row in m]
        text = "\n".join(lines) + "\n"
    else:
        text = to_json(
            envelope(
                "product",
                statement,
                args,
                flavor=req.flavor,
                trunc=req.trunc,
                factors=[op.label or op.kind for op in req.operators],
                rows=int(m.shape[0]),
                cols=int(m.shape[1]),
                entries=matrix_rows(m),
            )
        )
    emit(text, args)
    return EXIT_OK


def _spectrum_of_diagonals(args, tol):
    seqs = [parse_values(d) for d in args.diag]
    N = args.dim if args.dim is not None else min(len(s) for s in seqs)
    if any(len(s) < N for s in seqs):
        raise UsageError(f"every --diag needs at least {N} values")
    seqs = [np.asarray(s[:N], dtype=np.complex128) for s in seqs]
    if len(seqs) == 1:
        seqs = seqs * 2
    dense = sym_product([np.diag(s) for s in seqs])
    rep = general_eigen(dense, tol)
    closed = multi_diag_sym_spectrum(seqs, N)
    extra = {"closed_form_deviation": multiset_distance(closed, rep.eigenvalues), "n": len(seqs), "N": N}
    return rep, "eigenvalues of D_1 . ... . D_n for diagonal D_k", extra


def _spectrum_of_shift(args, tol):
    flavor, statement = SHIFT_OPS[args.op]
    K = 20 if args.K is None else args.K
    sym, asym = shift_block_spectra(K, tol)
    rep = sym if flavor == "sym" else asym
    return rep, statement, {"K": K, "suite": "thm-8.1"}


def _spectrum_of_product(args, tol):
    if len(args.operators) < 1:
        raise UsageError("spectrum needs --diag, --op or operator inputs")
    if len(args.operators) == 1:
        args.operators = args.operators * 2
    m = build_request(args).build()
    if np.linalg.norm(m - m.conj().T) <= tol * max(1.0, np.linalg.norm(m)):
        rep = hermitian_eigen(m, tol)
    else:
        rep = general_eigen(m, tol)
    return rep, "eigenvalues of the requested product", {"flavor": normalize_flavor(args.flavor)}


def cmd_spectrum(args):
    tol = args.tol if args.tol is not None else DEFAULT_TOL
    chosen = sum(bool(x) for x in (args.diag, args.op, args.operators))
    if chosen != 1:
        raise UsageError("spectrum takes exactly one of --diag, --op or operator inputs")
    if args.diag:
        rep, statement, extra = _spectrum_of_diagonals(args, tol)
    elif args.op:
        rep, statement, extra = _spectrum_of_shift(args, tol)
    else:
        rep, statement, extra = _spectrum_of_product(args, tol)
    # sort by (re, im) so repeated runs list eigenvalues identically
    ev = np.asarray(rep.eigenvalues, dtype=np.complex128)
    ev = ev[np.lexsort((np.round(ev.imag, 12), np.round(ev.real, 12)))]
    if args.format == "csv":
        text = values_csv(ev)
    elif args.format == "pretty":
        lines = [f"# {statement}", f"# method={rep.method} max_residual={rep.max_residual:.3e} tolerance={rep.tolerance:.3e}"]
        lines += [fmt(z) for z in ev]
        text = "\n".join(lines) + "\n"
    else:
        body = rep.to_dict()
        body["eigenvalues"] = complex_pairs(ev)
        body.update(extra)
        text = to_json(envelope("spectrum", statement, args, **body))
    emit(text, args)
    return EXIT_OK if rep.ok else EXIT_FAIL


def _run_one(job):
    sid, trials, seed, tol, K = job
    return run_suite(sid, trials=trials, seed=seed, tol=tol, K=K).to_dict()


def cmd_verify(args):
    if args.suite == "all":
        ids = list(REGISTRY)
    elif args.suite in REGISTRY:
        ids = [args.suite]
    else:
        raise UsageError(f"unknown suite {args.suite!r}; available: all, {', '.join(REGISTRY)}")
    jobs = [(sid, args.trials, args.seed, args.tol, args.K if REGISTRY[sid].K is not None else None) for sid in ids]
    if args.jobs > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            reports = list(pool.map(_run_one, jobs))
    else:
        reports = [_run_one(j) for j in jobs]
    passed = all(r["passed"] for r in reports)
    if args.format == "csv":
        header = ["suite", "passed", "trials", "failures", "worst_margin", "seed", "tol", "version"]
        text = csv_text(header, [[r[h] for h in header] for r in reports])
    elif args.format == "pretty":
        lines = []
        for r in reports:
            margin = "n/a" if r["worst_margin"] is None else f"{r['worst_margin']:.3e}"
            lines.append(
                f"{'PASS' if r['passed'] else 'FAIL'}  {r['suite']:<12} trials={r['trials']} failures={r['failures']} "
                f"worst_margin={margin} seed={r['seed']} tol={r['tol']:g}"
            )
            lines.append(f"      {r['statement']}")
            for w in r["witnesses"][:5]:
                lines.append(f"      witness: {json.dumps(w)}")
        text = "\n".join(lines) + "\n"
    elif len(reports) == 1:
        text = to_json(reports[0])
    else:
        text = to_json({"command": "verify", "version": __version__, "seed": int(args.seed), "passed": passed, "suites": reports})
    emit(text, args)
    return EXIT_OK if passed else EXIT_FAIL


def cmd_explore(args):
    n = 4 if args.n is None else args.n
    trials = 1000 if args.trials is None else args.trials
    tol = 1e-10 if args.tol is None else args.tol
    try:
        rep = conjecture_sampler(args.conjecture, n, d=args.dim, trials=trials, seed=args.seed, tol=tol)
    except SizeGuardError:
        raise
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    d = rep.to_dict()
    if args.format == "csv":
        obs = d["observations"]
        header = ["kind", "n", "d", "trials", "bound", "min_ratio", "max_ratio", "asserted", "failures", "candidates"]
        row = [obs["kind"], obs["n"], obs["d"], d["trials"], obs["bound"], obs["min_ratio"], obs["max_ratio"], obs["asserted"], d["failures"], len(obs["counterexample_candidates"])]
        text = csv_text(header, [row])
    elif args.format == "pretty":
        obs = d["observations"]
        text = (
            f"{d['statement']}\n"
            f"  samples={trials} min_ratio={obs['min_ratio']:.12g} bound={obs['bound']:.12g} "
            f"candidates={len(obs['counterexample_candidates'])} asserted={obs['asserted']} passed={d['passed']}\n"
        )
    else:
        text = to_json(d)
    emit(text, args)
    return EXIT_OK if rep.passed else EXIT_FAIL


# --- parser ------------------------------------------------------------------


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0, help="random seed (default 0)")
    common.add_argument("--tol", type=float, default=None, help="tolerance (default: per command)")
    common.add_argument("--format", choices=("json", "csv", "pretty"), default="json")
    common.add_argument("--output", default=None, help="write to this path instead of stdout")

    parser = argparse.ArgumentParser(prog="symtensor", description="Symmetric and antisymmetric tensor products of operators.")
    parser.add_argument("--version", action="version", version=f"symtensor {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("product", parents=[common], help="matrix of a symmetric/antisymmetric product")
    p.add_argument("operators", nargs="*", help="operator files (.json/.csv), inline JSON, shift, backshift, identity, diag:v1,v2,...")
    p.add_argument("--flavor", default="sym", help="sym, asym or full (default sym)")
    p.add_argument("--dim", type=int, default=None, help="truncation size per factor")

    p = sub.add_parser("spectrum", parents=[common], help="eigenvalue multiset of a product")
    p.add_argument("operators", nargs="*")
    p.add_argument("--flavor", default="sym")
    p.add_argument("--dim", type=int, default=None)
    p.add_argument("--diag", action="append", default=[], help="comma-separated diagonal entries; repeat per factor")
    p.add_argument("--op", choices=sorted(SHIFT_OPS), default=None)
    p.add_argument("--K", type=int, default=None, help="degree cutoff for --op (default 20)")

    p = sub.add_parser("verify", parents=[common], help="run a verification suite")
    p.add_argument("--suite", required=True, help="suite id or 'all'")
    p.add_argument("--trials", type=int, default=None)
    p.add_argument("--K", type=int, default=None)
    p.add_argument("--jobs", type=int, default=1, help="parallel workers for --suite all")

    p = sub.add_parser("explore", parents=[common], help="sample the lower-bound ratios for n factors")
    p.add_argument("--conjecture", required=True, choices=CONJECTURE_KINDS)
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--dim", type=int, default=None)
    p.add_argument("--trials", type=int, default=None)
    return parser


COMMANDS = {"product": cmd_product, "spectrum": cmd_spectrum, "verify": cmd_verify, "explore": cmd_explore}


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except SizeGuardError as exc:
        print(f"symtensor: size limit: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except (UsageError, InputFormatError) as exc:
        print(f"symtensor: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except EigenConvergenceError as exc:
        print(f"symtensor: eigensolver failed: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except ValueError as exc:
        # argument values the parser cannot range-check (K too large, bad flavor, ...)
        print(f"symtensor: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
