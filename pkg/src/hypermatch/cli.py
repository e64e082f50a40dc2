"""Command-line interface.

Exit codes: 0 success or verified, 1 verification failed, 2 input error,
3 resource limit or inconclusive refinement.  JSON output has sorted keys.
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Sequence

from . import hypergraph as hg
from . import matchpoly, pathtree, selftest, tensor, zeros
from .errors import (
    HypermatchError,
    Inconclusive,
    InputError,
    LimitExceeded,
    NotARoot,
    NotDivisible,
)

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_LIMIT = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_INPUT)


def _emit(doc) -> None:
    sys.stdout.write(json.dumps(doc, sort_keys=True) + "\n")


def _load(path: str) -> hg.Hypergraph:
    try:
        return hg.read_hgr(path)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    except UnicodeDecodeError:
        raise InputError(f"{path} is not ASCII text") from None


def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise InputError(f"not a rational number: {text!r}") from None


# ---------------------------------------------------------------------------
# Commands
# ---------------------------------------------------------------------------

def cmd_info(a) -> int:
    h = _load(a.file)
    _, dmax, dmin = hg.degree_profile(h)
    counts = matchpoly.match_counts(h)
    _emit({
        "k": h.k,
        "n": h.n,
        "m": h.m,
        "max_degree": dmax,
        "min_degree": dmin,
        "connected": hg.is_connected(h),
        "ktree": hg.is_ktree(h),
        "forest": hg.is_forest(h),
        "matching_number": counts.m,
        "matching_counts": [str(c) for c in counts.p],
    })
    return EXIT_OK


def cmd_matchpoly(a) -> int:
    h = _load(a.file)
    if a.method == "recursive":
        mu = matchpoly.matching_polynomial_recursive(h)
    else:
        mu = matchpoly.matching_polynomial(h)
    _emit({"mu": mu.to_json()})
    return EXIT_OK


def cmd_pathtree(a) -> int:
    h = _load(a.file)
    pt = pathtree.build_path_tree(h, a.root, a.max_vertices, a.ordered)
    body, labels = pt.export()
    if a.labels:
        with open(a.labels, "w") as fh:
            fh.write(labels + "\n")
    sys.stdout.write(body)
    return EXIT_OK


def cmd_lambda(a) -> int:
    h = _load(a.file)
    tol = _fraction(a.tol)
    iv = zeros.lambda_enclosure(h, tol)
    _emit({"lambda": iv.to_json(), "k": h.k})
    return EXIT_OK


def cmd_roots(a) -> int:
    h = _load(a.file)
    rep = zeros.all_roots(h, a.precision)
    if a.csv:
        sys.stdout.write(rep.to_csv())
    else:
        _emit({
            "k": rep.k,
            "precision": rep.precision,
            "roots": [[f"{z.real:.17g}", f"{z.imag:.17g}"] for z in rep.roots],
        })
    return EXIT_OK


def cmd_cyclic(a) -> int:
    h = _load(a.file)
    mu = matchpoly.matching_polynomial(h)
    _emit({"cyclic_index": zeros.cyclic_index(mu), "k": h.k})
    return EXIT_OK


def cmd_bounds(a) -> int:
    h = _load(a.file)
    rep = zeros.bounds_report(h, _fraction(a.tol))
    _emit(rep.to_json())
    ok = rep.lower_ok and rep.upper_ok is not False
    return EXIT_OK if ok else EXIT_FAIL


def cmd_rho(a) -> int:
    h = _load(a.file)
    res = tensor.spectral_radius_nqz(h, a.tol, a.max_iter)
    doc = res.to_json()
    doc["residual"] = tensor.eigen_residual(h, res.mid, res.x)
    _emit(doc)
    return EXIT_OK


def cmd_alphanormal(a) -> int:
    h = _load(a.file)
    if not hg.is_ktree(h):
        raise InputError("alphanormal needs a k-tree")
    root_tol = 0
    if a.from_lambda:
        y = zeros.y_enclosure(h, Fraction(1, 10**30))
        digits = 10**a.digits
        value = Fraction(round(digits / y.mid), digits)
        root_tol = Fraction(1, 10**15)
    elif a.alpha is not None:
        value = _fraction(a.alpha)
    else:
        raise InputError("give --alpha P/Q or --from-lambda")
    cert = tensor.construct_alpha_normal_tree(h, {i: value for i in range(h.m)}, root_tol)
    tau = 0 if root_tol == 0 else 1e-8
    rep = cert.verify(tau)
    doc = json.loads(cert.to_json())
    doc["checks"] = rep.to_json()
    _emit(doc)
    return EXIT_OK if rep.ok else EXIT_FAIL


def cmd_verify(a) -> int:
    h = _load(a.file)
    kind = a.kind
    doc: dict = {"check": kind}
    if kind == "godsil":
        ok = pathtree.verify_godsil(h, a.root, a.max_vertices, a.ordered)
    elif kind == "divides":
        try:
            q = pathtree.divisibility_quotient(h, a.root, a.max_vertices, a.ordered)
        except NotDivisible as exc:
            doc["detail"] = str(exc)
            ok = False
        else:
            doc["quotient"] = q.to_json()
            ok = pathtree.quotient_has_forest_pattern(q, h.k)
    elif kind == "derivative":
        ok = matchpoly.derivative_identity_check(h)
    elif kind == "rotation":
        rep = zeros.all_roots(h, a.precision)
        doc["max_modulus_count"] = zeros.max_modulus_count(rep)
        ok = zeros.rotation_check(rep) and doc["max_modulus_count"] == h.k
    elif kind == "decomposition":
        ok = pathtree.root_deletion_decomposition_check(h, a.root, a.max_vertices)
    elif kind == "mono":
        if not a.vertex and not a.edge:
            raise InputError("mono needs at least one --vertex or --edge")
        ok = zeros.strict_monotonicity_check(h, a.vertex or (), a.edge or ())
    else:  # pragma: no cover - argparse restricts choices
        raise InputError(f"unknown check {kind}")
    doc["verified"] = ok
    _emit(doc)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_gen(a) -> int:
    if a.family == "ktree":
        h = hg.random_ktree(a.k, a.m, a.seed)
    else:
        if a.n is None:
            raise InputError("gen kgraph needs --n")
        h = hg.random_connected_kgraph(a.k, a.n, a.m, a.seed)
    sys.stdout.write(hg.serialize(h))
    return EXIT_OK


def cmd_selftest(a) -> int:
    results = selftest.run(a.filter)
    failed = [r["name"] for r in results if r["status"] != "pass"]
    _emit({"checks": results, "failed": failed, "passed": not failed})
    return EXIT_FAIL if failed else EXIT_OK


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------

def _seed(text: str) -> int:
    v = int(text)
    if not 0 <= v < 2**64:
        raise argparse.ArgumentTypeError("seed must be a 64-bit unsigned integer")
    return v


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="hypermatch", description="Matching polynomials of k-uniform hypergraphs")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("info", help="basic structure and matching counts")
    s.add_argument("file")
    s.set_defaults(func=cmd_info)

    s = sub.add_parser("matchpoly", help="matching polynomial as JSON")
    s.add_argument("file")
    s.add_argument("--method", choices=["enum", "recursive"], default="enum")
    s.set_defaults(func=cmd_matchpoly)

    s = sub.add_parser("pathtree", help="path tree as HGR (labels optional)")
    s.add_argument("file")
    s.add_argument("--root", type=int, required=True)
    s.add_argument("--max-vertices", type=int, default=pathtree.DEFAULT_MAX_VERTICES)
    s.add_argument("--labels", metavar="OUT")
    s.add_argument("--ordered", action="store_true", help="sibling-ordered variant")
    s.set_defaults(func=cmd_pathtree)

    s = sub.add_parser("lambda", help="rational enclosure of the largest zero")
    s.add_argument("file")
    s.add_argument("--tol", default="1/1099511627776")
    s.set_defaults(func=cmd_lambda)

    s = sub.add_parser("roots", help="all zeros (floating point)")
    s.add_argument("file")
    s.add_argument("--csv", action="store_true")
    s.add_argument("--precision", type=float, default=1e-10)
    s.set_defaults(func=cmd_roots)

    s = sub.add_parser("cyclic", help="cyclic index of the matching polynomial")
    s.add_argument("file")
    s.set_defaults(func=cmd_cyclic)

    s = sub.add_parser("bounds", help="exact degree bounds on the largest zero")
    s.add_argument("file")
    s.add_argument("--tol", default="1/1099511627776")
    s.set_defaults(func=cmd_bounds)

    s = sub.add_parser("rho", help="spectral radius of the adjacency tensor")
    s.add_argument("file")
    s.add_argument("--tol", type=float, default=tensor.DEFAULT_NQZ_TOL)
    s.add_argument("--max-iter", type=int, default=tensor.DEFAULT_MAX_ITER)
    s.set_defaults(func=cmd_rho)

    s = sub.add_parser("alphanormal", help="alpha-normal certificate for a k-tree")
    s.add_argument("file")
    g = s.add_mutually_exclusive_group()
    g.add_argument("--alpha", metavar="P/Q")
    g.add_argument("--from-lambda", action="store_true")
    s.add_argument("--digits", type=int, default=20, help="surrogate precision for --from-lambda")
    s.set_defaults(func=cmd_alphanormal)

    s = sub.add_parser("verify", help="check one identity")
    s.add_argument("kind", choices=["godsil", "divides", "derivative", "rotation", "decomposition", "mono"])
    s.add_argument("file")
    s.add_argument("--root", type=int, default=0)
    s.add_argument("--max-vertices", type=int, default=pathtree.DEFAULT_MAX_VERTICES)
    s.add_argument("--ordered", action="store_true", help="use the sibling-ordered path tree")
    s.add_argument("--precision", type=float, default=1e-10)
    s.add_argument("--vertex", type=int, action="append")
    s.add_argument("--edge", type=int, action="append")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("gen", help="seeded random hypergraph as HGR")
    s.add_argument("family", choices=["ktree", "kgraph"])
    s.add_argument("--k", type=int, required=True)
    s.add_argument("--m", type=int, required=True)
    s.add_argument("--n", type=int)
    s.add_argument("--seed", type=_seed, required=True)
    s.set_defaults(func=cmd_gen)

    s = sub.add_parser("selftest", help="run the bundled checks")
    s.add_argument("--filter", metavar="NAME")
    s.set_defaults(func=cmd_selftest)
    return p


def run(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (InputError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (LimitExceeded, Inconclusive, RecursionError) as exc:
        print(f"limit: {exc}", file=sys.stderr)
        return EXIT_LIMIT
    except (NotARoot, NotDivisible) as exc:
        print(f"refuted: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except HypermatchError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL


def main() -> None:
    raise SystemExit(run())


if __name__ == "__main__":
    main()
