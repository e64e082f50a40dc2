"""Zeros of matching polynomials.

Every rigorous statement is decided in y = x**k space, where the reduced
polynomial q has integer coefficients: Sturm sequences over Fraction count
real roots exactly, so bound comparisons and simplicity are exact.  The
largest zero lambda = y***(1/k) is then enclosed by rational k-th roots.
Floating root extraction (numpy) feeds only rotation checks and exports.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .errors import Inconclusive, NoSpectrum
from .hypergraph import (
    Hypergraph,
    degree_profile,
    delete_edges,
    delete_vertices,
    has_common_vertex,
    is_connected,
)
from .matchpoly import match_counts
from .poly import SparsePoly, poly_gcd

DEFAULT_TOL = Fraction(1, 2**40)
REFINE_CAP = 200


@dataclass(frozen=True)
class Interval:
    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        if self.lo > self.hi:
            raise ValueError("interval with lo > hi")

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def mid(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def contains(self, v) -> bool:
        return self.lo <= v <= self.hi

    def __str__(self):
        return f"[{self.lo}, {self.hi}] ~ {float(self.mid):.15g}"

    def to_json(self) -> dict:
        return {"lo": str(self.lo), "hi": str(self.hi), "mid": f"{float(self.mid):.15g}"}


@dataclass(frozen=True)
class RootReport:
    roots: tuple[complex, ...]
    precision: float
    k: int

    def to_csv(self) -> str:
        lines = ["re,im"]
        lines += [f"{z.real:.17g},{z.imag:.17g}" for z in self.roots]
        return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# Reduced polynomial
# ---------------------------------------------------------------------------

def reduced_poly(h: Hypergraph) -> tuple[int, SparsePoly]:
    """(t, q) with mu(H, x) = x**t * q(x**k)."""
    p = match_counts(h).p
    m = len(p) - 1
    q = SparsePoly({m - r: (-1) ** r * c for r, c in enumerate(p)})
    return h.n - h.k * m, q


def cyclic_index(f: SparsePoly) -> int:
    exps = f.exponents()
    if len(exps) < 2:
        return 0
    g = 0
    for e in exps[1:]:
        g = math.gcd(g, e - exps[0])
    return g


# ---------------------------------------------------------------------------
# Exact real-root machinery on dense Fraction lists (index = exponent)
# ---------------------------------------------------------------------------

def _dense(p: SparsePoly) -> list[Fraction]:
    out = [Fraction(0)] * (p.degree + 1)
    for e, c in p.terms.items():
        out[e] = Fraction(c)
    return out


def _trim(a: list[Fraction]) -> list[Fraction]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _rem(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    a = list(a)
    db, lb = len(b) - 1, b[-1]
    while len(a) - 1 >= db and a:
        c = a[-1] / lb
        off = len(a) - 1 - db
        for i, bc in enumerate(b):
            a[off + i] -= c * bc
        a.pop()
        _trim(a)
    return a


def _eval(a: list[Fraction], y: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(a):
        acc = acc * y + c
    return acc


class Sturm:
    """Sturm chain of a polynomial with integer coefficients."""

    def __init__(self, p: SparsePoly):
        if p.degree < 1:
            raise ValueError("Sturm chain needs degree >= 1")
        a = _dense(p)
        b = _trim([i * c for i, c in enumerate(a)][1:])
        chain = [a, b]
        while True:
            r = _rem(chain[-2], chain[-1])
            if not r:
                break
            chain.append([-c for c in r])
        self.chain = chain
        # constant is a nonzero number only when p is squarefree
        self.squarefree = len(chain[-1]) == 1

    def _variations(self, signs) -> int:
        v, last = 0, 0
        for s in signs:
            if s == 0:
                continue
            if last and s != last:
                v += 1
            last = s
        return v

    def variations_at(self, y: Fraction) -> int:
        return self._variations(_sign(_eval(c, y)) for c in self.chain)

    def variations_at_inf(self) -> int:
        return self._variations(_sign(c[-1]) for c in self.chain)

    def count_above(self, y: Fraction) -> int:
        """Distinct real roots in (y, +inf)."""
        return self.variations_at(y) - self.variations_at_inf()

    def count_in(self, lo: Fraction, hi: Fraction) -> int:
        """Distinct real roots in (lo, hi]."""
        return self.variations_at(lo) - self.variations_at(hi)

    def value(self, y: Fraction) -> Fraction:
        return _eval(self.chain[0], y)


def _sign(v) -> int:
    return (v > 0) - (v < 0)


def _cauchy_bound(p: SparsePoly) -> Fraction:
    lead = abs(p.leading)
    return 1 + max(Fraction(abs(c), lead) for e, c in p.terms.items() if e != p.degree) \
        if len(p) > 1 else Fraction(1)


@dataclass
class _Largest:
    """Bisection state for the largest real root of q.

    Invariant: the largest root lies in (lo, hi], or equals lo == hi exactly.
    """

    sturm: Sturm
    lo: Fraction
    hi: Fraction
    exact: bool = False

    def refine(self, width: Fraction) -> None:
        while not self.exact and self.hi - self.lo > width:
            mid = (self.lo + self.hi) / 2
            if self.sturm.value(mid) == 0 and self.sturm.count_above(mid) == 0:
                self.lo = self.hi = mid
                self.exact = True
            elif self.sturm.count_above(mid) >= 1:
                self.lo = mid
            else:
                self.hi = mid

    def interval(self) -> Interval:
        return Interval(self.lo, self.hi)


def _largest_root_state(q: SparsePoly) -> _Largest | None:
    """None when q has no real root."""
    if q.degree < 1:
        return None
    st = Sturm(q)
    c = _cauchy_bound(q)
    if st.count_in(-c, c) == 0 and st.value(-c) != 0:
        return None
    return _Largest(st, -c, c)


def _kth_root_floor(a: int, k: int) -> int:
    """Largest r >= 0 with r**k <= a."""
    if a < 2:
        return a
    r = 1 << ((a.bit_length() + k - 1) // k)
    while True:
        s = ((k - 1) * r + a // r ** (k - 1)) // k
        if s >= r:
            break
        r = s
    while r ** k > a:
        r -= 1
    while (r + 1) ** k <= a:
        r += 1
    return r


def kth_root_enclosure(iv: Interval, k: int, tol: Fraction) -> Interval:
    """Rational interval containing [lo**(1/k), hi**(1/k)] for 0 <= lo."""
    if iv.lo < 0:
        raise ValueError("k-th root of a negative enclosure")
    bits = max(8, (Fraction(4) / tol).__ceil__().bit_length())
    while True:
        s = 1 << bits
        lo_num = iv.lo * s**k
        hi_num = iv.hi * s**k
        a = _kth_root_floor(lo_num.numerator // lo_num.denominator, k)
        hi_int = -((-hi_num.numerator) // hi_num.denominator)
        b = _kth_root_floor(hi_int, k)
        if b ** k < hi_int:
            b += 1
        out = Interval(Fraction(a, s), Fraction(b, s))
        if out.width <= tol or bits > 4096:
            return out
        bits += 16


# ---------------------------------------------------------------------------
# Largest zero
# ---------------------------------------------------------------------------

def _require_spectrum(h: Hypergraph) -> None:
    if h.m == 0:
        raise NoSpectrum("hypergraph has no edges")
    if not is_connected(h):
        raise ValueError("hypergraph must be connected")


def _y_state(h: Hypergraph) -> _Largest:
    _, q = reduced_poly(h)
    state = _largest_root_state(q)
    if state is None:  # pragma: no cover - q always has a positive root here
        raise Inconclusive("reduced polynomial has no real root")
    return state


def y_enclosure(h: Hypergraph, tol: Fraction = DEFAULT_TOL) -> Interval:
    """Enclosure of y* = lambda(H)**k, the largest real root of q."""
    _require_spectrum(h)
    if degree_profile(h)[1] == 1:
        return Interval(Fraction(1), Fraction(1))
    state = _y_state(h)
    state.refine(Fraction(tol))
    return state.interval()


def lambda_enclosure(h: Hypergraph, tol=DEFAULT_TOL) -> Interval:
    """Rational interval of width <= tol containing lambda(H)."""
    tol = Fraction(tol)
    _require_spectrum(h)
    if degree_profile(h)[1] == 1:
        return Interval(Fraction(1), Fraction(1))
    state = _y_state(h)
    # y* >= 1 here, so d(y**(1/k))/dy <= 1/k and half the budget suffices
    state.refine(tol / 2)
    if state.lo < 0:
        state.lo = Fraction(0)
    return kth_root_enclosure(state.interval(), h.k, tol / 2)


def simplicity_check(h: Hypergraph) -> bool:
    """True iff y* is a simple root of q (so lambda is a simple zero of mu)."""
    _require_spectrum(h)
    _, q = reduced_poly(h)
    g = poly_gcd(q, q.derivative())
    if g.degree < 1:
        return True
    state = _y_state(h)
    gs = Sturm(g)
    for _ in range(REFINE_CAP):
        if state.exact:
            return g(state.lo) != 0
        # once (lo, hi] isolates y* among the roots of q, any root of g there is y*
        if state.sturm.count_in(state.lo, state.hi) == 1:
            return gs.count_in(state.lo, state.hi) == 0
        state.refine((state.hi - state.lo) / 2)
    raise Inconclusive("could not isolate the largest root")


@dataclass(frozen=True)
class BoundsReport:
    delta: int
    lower_ok: bool
    upper_ok: bool | None
    lower_tight: bool
    upper_y: Fraction | None
    enclosure: Interval

    def to_json(self) -> dict:
        return {
            "delta": self.delta,
            "lower_ok": self.lower_ok,
            "upper_ok": self.upper_ok,
            "lower_tight": self.lower_tight,
            "upper_y": None if self.upper_y is None else str(self.upper_y),
            "enclosure": self.enclosure.to_json(),
        }


def upper_bound_y(k: int, delta: int) -> Fraction:
    """(k/(k-1))**k * (k-1) * (delta-1)."""
    return Fraction(k, k - 1) ** k * (k - 1) * (delta - 1)


def bounds_report(h: Hypergraph, tol=DEFAULT_TOL) -> BoundsReport:
    """Exact comparisons delta <= y* < upper bound, decided by Sturm counts."""
    _require_spectrum(h)
    delta = degree_profile(h)[1]
    enc = lambda_enclosure(h, tol)
    tight = has_common_vertex(h)
    if delta == 1:
        return BoundsReport(1, True, None, tight, None, enc)
    _, q = reduced_poly(h)
    st = Sturm(q)
    d = Fraction(delta)
    lower_ok = st.count_above(d) >= 1 or st.value(d) == 0
    ub = upper_bound_y(h.k, delta)
    upper_ok = st.count_above(ub) == 0 and st.value(ub) != 0
    return BoundsReport(delta, lower_ok, upper_ok, tight, ub, enc)


def lower_bound_tight(h: Hypergraph) -> bool:
    """Exact test of y* == delta."""
    _require_spectrum(h)
    delta = degree_profile(h)[1]
    _, q = reduced_poly(h)
    if q.degree < 1:
        return False
    st = Sturm(q)
    d = Fraction(delta)
    return st.value(d) == 0 and st.count_above(d) == 0


# ---------------------------------------------------------------------------
# Strict monotonicity
# ---------------------------------------------------------------------------

def _lambda_state(g: Hypergraph) -> tuple[_Largest | None, int]:
    """State for the largest real root of q_G (any G), or None when G has no edges."""
    if g.m == 0:
        return None, g.k
    _, q = reduced_poly(g)
    return _largest_root_state(q), g.k


def strict_monotonicity_check(
    h: Hypergraph,
    remove_vertices: Sequence[int] = (),
    remove_edges: Sequence[int] = (),
    cap: int = REFINE_CAP,
) -> bool:
    """lambda(G) < lambda(H) with separated enclosures, G = H minus the given parts.

    Edges are removed first (by index in H), then vertices.
    """
    _require_spectrum(h)
    if not remove_vertices and not remove_edges:
        raise ValueError("G must be a proper subgraph of H")
    g = delete_edges(h, remove_edges) if remove_edges else h
    if remove_vertices:
        g = delete_vertices(g, remove_vertices)[0]
    sh, _ = _lambda_state(h)
    sg, _ = _lambda_state(g)
    k = h.k
    width = Fraction(1, 16)
    for _ in range(cap):
        sh.refine(width)
        lo_h = kth_root_enclosure(Interval(max(sh.lo, Fraction(0)), sh.hi), k, width).lo
        if sg is None:
            hi_g = Fraction(0)
        else:
            sg.refine(width)
            hi_g = kth_root_enclosure(Interval(max(sg.lo, Fraction(0)), max(sg.hi, Fraction(0))), k, width).hi
        if hi_g < lo_h:
            return True
        if sh.exact and (sg is None or sg.exact) and hi_g >= lo_h and width < Fraction(1, 2**60):
            return False
        width /= 4
    raise Inconclusive("enclosures of lambda(G) and lambda(H) did not separate")


# ---------------------------------------------------------------------------
# Floating roots
# ---------------------------------------------------------------------------

def _yun(q: SparsePoly) -> list[tuple[SparsePoly, int]]:
    """Squarefree factorisation over Z by gcd peeling: (primitive factor, multiplicity)."""
    a = q.primitive()
    g = poly_gcd(a, a.derivative())
    w = a.divexact(g)
    out = []
    i = 1
    while w.degree >= 1:
        y = poly_gcd(w, g)
        z = w.divexact(y)
        if z.degree >= 1:
            out.append((z, i))
        w = y
        g = g.divexact(y)
        i += 1
    return out


def _polish(coeffs: np.ndarray, z: complex, steps: int = 8) -> complex:
    dc = np.polyder(coeffs)
    for _ in range(steps):
        f = np.polyval(coeffs, z)
        fp = np.polyval(dc, z)
        if fp == 0:
            break
        step = f / fp
        z -= step
        if abs(step) <= 1e-17 * max(1.0, abs(z)):
            break
    return z


def _sort_key(z: complex):
    return (round(abs(z), 12), round(cmath.phase(z) % (2 * math.pi), 12), z.real, z.imag)


def all_roots(h: Hypergraph, precision: float = 1e-10) -> RootReport:
    """Every zero of mu(H), with multiplicity, sorted by modulus then argument."""
    if h.m == 0:
        raise NoSpectrum("hypergraph has no edges")
    t, q = reduced_poly(h)
    k = h.k
    ys: list[complex] = []
    for factor, mult in _yun(q):
        coeffs = np.array([float(factor.coeff(e)) for e in range(factor.degree, -1, -1)])
        if factor.degree == 1:
            found = [complex(-coeffs[1] / coeffs[0])]
        else:
            found = [_polish(coeffs, complex(z)) for z in np.roots(coeffs)]
        for z in found:
            if not np.isfinite(z):
                raise Inconclusive("root extraction did not converge")
            if abs(z.imag) <= precision * max(1.0, abs(z)):
                z = complex(z.real, 0.0)
            ys.extend([z] * mult)
    roots: list[complex] = [0j] * t
    unit = [cmath.exp(2j * math.pi * j / k) for j in range(k)]
    for y in ys:
        if y.imag == 0 and y.real >= 0:
            base = complex(y.real ** (1.0 / k), 0.0)
        else:
            base = y ** (1.0 / k)
        for w in unit:
            z = base * w
            z = complex(0.0 if abs(z.real) < 1e-300 else z.real,
                        0.0 if abs(z.imag) <= 1e-15 * abs(z) else z.imag)
            roots.append(z)
    roots.sort(key=_sort_key)
    return RootReport(tuple(roots), precision, k)


def rotation_check(r: RootReport) -> bool:
    """Root multiset invariant under multiplication by exp(2 pi i / k)."""
    w = cmath.exp(2j * math.pi / r.k)
    tol = 10 * r.precision
    pool = list(r.roots)
    used = [False] * len(pool)
    for z in r.roots:
        target = z * w
        best, best_d = -1, None
        for i, c in enumerate(pool):
            if used[i]:
                continue
            d = abs(c - target)
            if best_d is None or d < best_d:
                best, best_d = i, d
        if best < 0 or best_d > tol * max(1.0, abs(z)):
            return False
        used[best] = True
    return True


def max_modulus_count(r: RootReport, rel_tol: float | None = None) -> int:
    if not r.roots:
        return 0
    tol = 10 * r.precision if rel_tol is None else rel_tol
    top = max(abs(z) for z in r.roots)
    return sum(1 for z in r.roots if abs(abs(z) - top) <= tol * max(1.0, top))


__all__ = [
    "Interval",
    "RootReport",
    "BoundsReport",
    "Sturm",
    "reduced_poly",
    "cyclic_index",
    "lambda_enclosure",
    "y_enclosure",
    "kth_root_enclosure",
    "simplicity_check",
    "bounds_report",
    "upper_bound_y",
    "lower_bound_tight",
    "strict_monotonicity_check",
    "all_roots",
    "rotation_check",
    "max_modulus_count",
]
