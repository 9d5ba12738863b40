"""Command-line front end.

Exit codes: 0 success, 1 input error, 2 optimizer did not converge,
3 state is not a product (``check-product``), 4 a verification property failed.
"""

import argparse
import os
import sys

import numpy as np

from . import serialize
from .decomposer import OptimizerConfig, decompose
from .errors import DecompError, NotProductError
from .leading import leading_split
from .oracle import MIN_SAMPLES, verify_suite
from .product import factorize_product, worst_defect
from .register import random_state, simplex_vertices

EXIT_OK, EXIT_INPUT, EXIT_NOT_CONVERGED, EXIT_NOT_PRODUCT, EXIT_VERIFY_FAILED = range(5)

INDEX_HELP = """\
State files are JSON objects {"l": L, "amplitudes": [[re, im], ...]} with 2**L
entries. Entry i is the amplitude of the basis label whose bit k (k = 1..L) is
binary digit k-1 of i; bit 1 is the least significant digit, so the label
"10...0" (only bit 1 set) is entry 1.
"""


def _config(args):
    return OptimizerConfig(
        max_sweeps=args.max_sweeps,
        restarts=args.restarts,
        seed=args.seed,
        conv_eps=args.conv_eps,
        stationarity_tol=args.stationarity_tol,
        zero_tol=args.tol,
        threads=args.threads,
    )


def _triple_to_dict(triple, defect):
    s, t, v = triple
    return {
        "s": s,
        "t": t,
        "v": v,
        "s_vertices": list(simplex_vertices(s)),
        "t_vertices": list(simplex_vertices(t)),
        "defect": serialize.complex_to_json(defect),
    }


def cmd_decompose(args):
    h = serialize.load_state(args.input)
    d = decompose(h, _config(args))
    rep = serialize.report(
        "decompose",
        serialize.decomposition_to_dict(d),
        serialize.diagnostics_to_dict(d.diagnostics),
        serialize.state_digest(h),
    )
    return rep, EXIT_OK if d.diagnostics.converged else EXIT_NOT_CONVERGED


def cmd_check_product(args):
    h = serialize.load_state(args.input)
    digest = serialize.state_digest(h)
    try:
        fac = factorize_product(h, args.product_tol)
    except NotProductError as e:
        result = {"is_product": False, "worst_defect": _triple_to_dict(e.triple, e.defect)}
        return serialize.report("check-product", result, None, digest), EXIT_NOT_PRODUCT
    err = float(np.abs(fac.reconstruct().amplitudes - h.amplitudes).max() / h.norm)
    d, triple = worst_defect(h)
    result = {
        "is_product": True,
        "factorization": {
            "global_phase": serialize.complex_to_json(fac.global_phase),
            "overall_scale": fac.overall_scale,
            "angles": list(fac.angles),
            "phases": list(fac.phases),
            "flips": fac.flips,
        },
        "round_trip_error": err,
        "max_defect": abs(d),
    }
    return serialize.report("check-product", result, None, digest), EXIT_OK


def cmd_leading(args):
    h = serialize.load_state(args.input)
    split = leading_split(h, args.tol)
    result = {
        "leading": serialize.vector_to_json(split.leading.amplitudes),
        "residual": serialize.vector_to_json(split.residual.amplitudes),
        "kappa": split.kappa,
        "residual_count": split.residual.nonzero_count(args.tol),
    }
    return serialize.report("leading", result, None, serialize.state_digest(h)), EXIT_OK


def cmd_random(args):
    return serialize.state_to_dict(random_state(args.l, args.seed)), EXIT_OK


def cmd_verify(args):
    rows = verify_suite(args.l, args.trials, seed=args.seed, cfg=_config(args), samples=args.samples)
    result = {
        "l": args.l,
        "trials": args.trials,
        "properties": [
            {"name": n, "passed": ok, "worst": w if np.isfinite(w) else None} for n, ok, w in rows
        ],
    }
    passed = all(ok for _, ok, _ in rows)
    return serialize.report("verify", result), EXIT_OK if passed else EXIT_VERIFY_FAILED


def build_parser():
    defaults = OptimizerConfig()
    parser = argparse.ArgumentParser(
        prog="productdecomp",
        description="Decompose register states into orthogonal product states.",
        epilog=INDEX_HELP,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--output", help="report path (default: stdout)")
    common.add_argument("--tol", type=float, default=defaults.zero_tol, help="relative zero tolerance")
    common.add_argument("--seed", type=int, default=defaults.seed)

    opt = argparse.ArgumentParser(add_help=False)
    opt.add_argument("--conv-eps", type=float, default=defaults.conv_eps)
    opt.add_argument("--stationarity-tol", type=float, default=defaults.stationarity_tol)
    opt.add_argument("--max-sweeps", type=int, default=defaults.max_sweeps)
    opt.add_argument("--restarts", type=int, default=defaults.restarts)
    opt.add_argument("--threads", type=int, default=os.cpu_count() or 1)

    def add(name, func, parents, help_text, needs_input=True):
        p = sub.add_parser(
            name,
            parents=parents,
            help=help_text,
            epilog=INDEX_HELP,
            formatter_class=argparse.RawDescriptionHelpFormatter,
        )
        if needs_input:
            p.add_argument("--input", required=True, help="state file")
        p.set_defaults(func=func)
        return p

    add("decompose", cmd_decompose, [common, opt], "orthogonal product decomposition")
    p = add("check-product", cmd_check_product, [common], "exchangeability test and factorization")
    p.add_argument("--product-tol", type=float, default=1e-10, help="defect tolerance relative to |h|^2")
    add("leading", cmd_leading, [common], "leading vector and residual")
    p = add("random", cmd_random, [common], "random normalized state", needs_input=False)
    p.add_argument("--l", type=int, required=True)
    p = add("verify", cmd_verify, [common, opt], "oracle cross-checks on random states", needs_input=False)
    p.add_argument("--l", type=int, default=2)
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--samples", type=int, default=MIN_SAMPLES)
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        payload, code = args.func(args)
    except DecompError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT
    text = serialize.dumps(payload)
    if args.output:
        with open(args.output, "w") as f:
            f.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
