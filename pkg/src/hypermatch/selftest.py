"""Bundled self-checks on small fixtures and seeded random families.

Each check returns (ok, detail).  Lookups go through the module objects so
that a patched implementation is exercised, not a cached reference.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Callable

from . import hypergraph as hg
from . import matchpoly, pathtree, tensor, zeros
from .corpus import connected_corpus, ktree_corpus, tree2_corpus
from .poly import SparsePoly

Check = Callable[[], tuple[bool, str]]


def _k4():
    return hg.complete_kgraph(4, 3)


def _small_family(count: int = 24):
    return [inst.h for inst in connected_corpus(count)]


def check_oracle_equivalence():
    graphs = [_k4(), hg.single_edge(3), hg.star(4, 3)] + _small_family()
    for h in graphs:
        if matchpoly.matching_polynomial(h) != matchpoly.matching_polynomial_recursive(h):
            return False, f"enumeration and deletion recursion disagree on {h!r}"
    return True, f"{len(graphs)} graphs"


def check_generating_identity():
    for h in [_k4()] + _small_family(12):
        if not matchpoly.check_mu_generating_identity(h):
            return False, f"generating-function identity fails on {h!r}"
    return True, "ok"


def check_derivative():
    for h in [_k4()] + _small_family(12):
        if not matchpoly.derivative_identity_check(h):
            return False, f"derivative identity fails on {h!r}"
    return True, "ok"


def check_pathtree_k4():
    pt = pathtree.build_path_tree(_k4(), 0)
    ok = (pt.tree.n, pt.tree.m) == (19, 9) and hg.is_ktree(pt.tree)
    return ok, f"T(K_4^3, 0) has {pt.tree.n} vertices and {pt.tree.m} edges"


def check_decomposition():
    for h in [_k4()] + _small_family(12):
        if not pathtree.root_deletion_decomposition_check(h, 0):
            return False, f"root-deletion product fails on {h!r}"
    return True, "ok"


def check_godsil_ordered():
    for h in [_k4()] + _small_family():
        if not pathtree.verify_godsil(h, 0, ordered=True):
            return False, f"ratio identity fails on {h!r}"
    return True, "sibling-ordered path trees"


def check_divides_ordered():
    for h in [_k4()] + _small_family():
        q = pathtree.divisibility_quotient(h, 0, ordered=True)
        if not pathtree.quotient_has_forest_pattern(q, h.k):
            return False, f"quotient has the wrong shape on {h!r}"
    return True, "sibling-ordered path trees"


def check_stars():
    for k in (2, 3, 4, 5):
        for d in range(1, 7):
            s = hg.star(k, d)
            t = d * k - d - k + 1
            want = SparsePoly({t + k: 1, t: -d})
            if matchpoly.matching_polynomial(s) != want:
                return False, f"star k={k} delta={d}"
            if not zeros.bounds_report(s).lower_tight:
                return False, f"tightness flag false on star k={k} delta={d}"
    return True, "k in 2..5, delta in 1..6"


def check_lambda():
    iv = zeros.lambda_enclosure(_k4(), Fraction(1, 10**10))
    ok = iv.width <= Fraction(1, 10**10) and iv.lo ** 3 <= 4 <= iv.hi ** 3
    return ok, str(iv)


def check_cyclic_index():
    for h in [_k4()] + _small_family():
        if zeros.cyclic_index(matchpoly.matching_polynomial(h)) != h.k:
            return False, f"cyclic index differs from k on {h!r}"
    return True, "ok"


def check_simplicity():
    for h in [_k4()] + _small_family():
        if not zeros.simplicity_check(h):
            return False, f"largest zero not simple on {h!r}"
    return True, "ok"


def check_bounds():
    for h in [_k4()] + _small_family():
        r = zeros.bounds_report(h)
        if not r.lower_ok or r.upper_ok is False:
            return False, f"bound violated on {h!r}: {r.to_json()}"
    return True, "ok"


def check_rotation():
    for h in [_k4()] + _small_family():
        r = zeros.all_roots(h)
        if not zeros.rotation_check(r) or zeros.max_modulus_count(r) != h.k:
            return False, f"rotation structure broken on {h!r}"
    return True, "ok"


def check_monotonicity():
    for i, h in enumerate([_k4()] + _small_family(12)):
        if not zeros.strict_monotonicity_check(h, remove_vertices=[i % h.n]):
            return False, f"lambda(H - v) not below lambda(H) on {h!r}"
    return True, "ok"


def check_nqz():
    for inst in ktree_corpus(12):
        if not tensor.cross_check_rho_lambda(inst.h, 1e-6):
            return False, f"rho and lambda disagree on {inst.name}"
    return True, "ok"


def check_alpha_normal():
    for k in (2, 3, 4):
        for d in range(1, 5):
            cert = tensor.construct_alpha_normal_tree(
                hg.star(k, d), {i: Fraction(1, d) for i in range(d)}
            )
            if not cert.verify().ok:
                return False, f"star certificate fails k={k} delta={d}"
    return True, "ok"


def check_charpoly():
    for inst in tree2_corpus(20):
        if tensor.char_poly_tree_k2(inst.h) != matchpoly.matching_polynomial(inst.h):
            return False, f"characteristic and matching polynomial differ on {inst.name}"
    return True, "ok"


CHECKS: dict[str, Check] = {
    "oracle-equivalence": check_oracle_equivalence,
    "generating-identity": check_generating_identity,
    "derivative": check_derivative,
    "pathtree-k4": check_pathtree_k4,
    "decomposition": check_decomposition,
    "godsil-ordered": check_godsil_ordered,
    "divides-ordered": check_divides_ordered,
    "stars": check_stars,
    "lambda": check_lambda,
    "cyclic-index": check_cyclic_index,
    "simplicity": check_simplicity,
    "bounds": check_bounds,
    "rotation": check_rotation,
    "monotonicity": check_monotonicity,
    "nqz-crosscheck": check_nqz,
    "alpha-normal": check_alpha_normal,
    "charpoly-k2": check_charpoly,
}


def run(filter_name: str | None = None) -> list[dict]:
    out = []
    for name, fn in CHECKS.items():
        if filter_name and filter_name not in name:
            continue
        try:
            ok, detail = fn()
        except Exception as exc:  # a crash is a failed check, reported by name
            ok, detail = False, f"{type(exc).__name__}: {exc}"
        out.append({"name": name, "status": "pass" if ok else "fail", "detail": detail})
    return out
