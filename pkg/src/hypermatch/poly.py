"""Exact sparse univariate polynomials over the integers.

Large products go through Kronecker substitution: both operands are packed
into one Python integer, multiplied with the interpreter's big-int routine
and unpacked again.  Path-tree matching polynomials reach thousands of
terms with coefficients of thousands of bits, where schoolbook products in
Python would dominate every run.
"""
from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Iterable, Mapping

from .errors import NotDivisible

# schoolbook below this many term pairs
_KRONECKER_MIN_WORK = 4096


class SparsePoly:
    """Immutable polynomial stored as ``{exponent: nonzero int coefficient}``."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[int, int] | None = None):
        clean = {}
        if terms:
            for e, c in terms.items():
                if e < 0:
                    raise ValueError(f"negative exponent {e}")
                c = int(c)
                if c:
                    clean[int(e)] = c
        self._terms = clean
        self._hash = None

    # -- constructors ------------------------------------------------------
    @classmethod
    def _raw(cls, terms: dict[int, int]) -> "SparsePoly":
        p = cls.__new__(cls)
        p._terms = terms
        p._hash = None
        return p

    @classmethod
    def monomial(cls, exp: int, coef: int = 1) -> "SparsePoly":
        return cls({exp: coef})

    @classmethod
    def from_dense(cls, coeffs: Iterable[int], shift: int = 0, step: int = 1) -> "SparsePoly":
        """``coeffs[i]`` becomes the coefficient of ``x**(shift + step*i)``."""
        return cls._raw({shift + step * i: c for i, c in enumerate(coeffs) if c})

    # -- basic queries -----------------------------------------------------
    @property
    def terms(self) -> dict[int, int]:
        return dict(self._terms)

    def items(self):
        """(exponent, coefficient) pairs by descending exponent."""
        return sorted(self._terms.items(), reverse=True)

    def exponents(self) -> list[int]:
        return sorted(self._terms)

    def coeff(self, exp: int) -> int:
        return self._terms.get(exp, 0)

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return max(self._terms) if self._terms else -1

    @property
    def lowest(self) -> int:
        return min(self._terms) if self._terms else -1

    @property
    def leading(self) -> int:
        return self._terms[self.degree] if self._terms else 0

    def is_zero(self) -> bool:
        return not self._terms

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def __eq__(self, other):
        if isinstance(other, int):
            other = SparsePoly({0: other})
        if not isinstance(other, SparsePoly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __repr__(self):
        return f"SparsePoly({self})"

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for e, c in self.items():
            sign = "-" if c < 0 else "+"
            a = abs(c)
            if e == 0:
                body = str(a)
            else:
                xe = "x" if e == 1 else f"x^{e}"
                body = xe if a == 1 else f"{a}*{xe}"
            parts.append((sign, body))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    # -- arithmetic --------------------------------------------------------
    def __neg__(self):
        return SparsePoly._raw({e: -c for e, c in self._terms.items()})

    def __add__(self, other):
        other = _coerce(other)
        out = dict(self._terms)
        for e, c in other._terms.items():
            s = out.get(e, 0) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return SparsePoly._raw(out)

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-_coerce(other))

    def __rsub__(self, other):
        return _coerce(other) - self

    def __mul__(self, other):
        other = _coerce(other)
        if not self._terms or not other._terms:
            return SparsePoly()
        if len(self._terms) * len(other._terms) < _KRONECKER_MIN_WORK:
            return SparsePoly._raw(_schoolbook(self._terms, other._terms))
        return _kronecker_mul(self, other)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power")
        result = SparsePoly({0: 1})
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def shift(self, t: int) -> "SparsePoly":
        """Multiply by ``x**t``."""
        return SparsePoly._raw({e + t: c for e, c in self._terms.items()})

    def inflate(self, k: int) -> "SparsePoly":
        """Substitute ``x -> x**k``."""
        return SparsePoly._raw({e * k: c for e, c in self._terms.items()})

    def derivative(self) -> "SparsePoly":
        return SparsePoly._raw({e - 1: e * c for e, c in self._terms.items() if e})

    def divmod(self, divisor: "SparsePoly") -> tuple["SparsePoly", "SparsePoly"]:
        """Long division over the integers; needs exact quotient coefficients."""
        if divisor.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        db, lb = divisor.degree, divisor.leading
        dterms = [(e - db, c) for e, c in divisor._terms.items() if e != db]
        rem = dict(self._terms)
        quot = {}
        while rem:
            dr = max(rem)
            if dr < db:
                break
            cr = rem.pop(dr)
            q, r = divmod(cr, lb)
            if r:
                raise NotDivisible(f"leading coefficient {cr} not divisible by {lb}")
            shift = dr - db
            quot[shift] = q
            for off, c in dterms:
                e = shift + db + off
                s = rem.get(e, 0) - q * c
                if s:
                    rem[e] = s
                else:
                    rem.pop(e, None)
        return SparsePoly._raw(quot), SparsePoly._raw(rem)

    def divexact(self, divisor: "SparsePoly") -> "SparsePoly":
        try:
            q, r = self.divmod(divisor)
        except NotDivisible:
            raise NotDivisible(f"{divisor} does not divide {self} over the integers") from None
        if r:
            raise NotDivisible(f"{divisor} does not divide {self}: remainder {r}")
        return q

    def content(self) -> int:
        g = 0
        for c in self._terms.values():
            g = gcd(g, c)
        return g

    def primitive(self) -> "SparsePoly":
        """Divide by the content and make the leading coefficient positive."""
        if not self._terms:
            return self
        g = self.content()
        if self.leading < 0:
            g = -g
        return SparsePoly._raw({e: c // g for e, c in self._terms.items()})

    def __call__(self, x):
        """Horner evaluation; exact for int and Fraction arguments."""
        if not self._terms:
            return 0 * x
        items = self.items()
        acc = 0 * x
        prev = items[0][0]
        for e, c in items:
            acc = acc * x ** (prev - e) + c
            prev = e
        return acc * x ** prev

    # -- serialization -----------------------------------------------------
    def to_json(self, var: str = "x") -> dict:
        return {
            "var": var,
            "terms": [{"exp": e, "coef": str(c)} for e, c in self.items()],
        }

    @classmethod
    def from_json(cls, doc: Mapping) -> "SparsePoly":
        return cls({int(t["exp"]): int(t["coef"]) for t in doc["terms"]})


X = SparsePoly({1: 1})
ONE = SparsePoly({0: 1})


def _coerce(v) -> SparsePoly:
    if isinstance(v, SparsePoly):
        return v
    if isinstance(v, int):
        return SparsePoly({0: v})
    raise TypeError(f"cannot use {type(v).__name__} as a polynomial")


def _schoolbook(a: dict[int, int], b: dict[int, int]) -> dict[int, int]:
    out: dict[int, int] = {}
    for ea, ca in a.items():
        for eb, cb in b.items():
            e = ea + eb
            out[e] = out.get(e, 0) + ca * cb
    return {e: c for e, c in out.items() if c}


# ---------------------------------------------------------------------------
# Kronecker substitution
# ---------------------------------------------------------------------------

def _pack(coeffs: list[int], width_bytes: int) -> int:
    """Pack nonnegative ints below 2**(8*width_bytes), coeffs[0] least significant."""
    buf = bytearray()
    for c in coeffs:
        buf += c.to_bytes(width_bytes, "little")
    return int.from_bytes(buf, "little")


def _unpack(value: int, width_bytes: int, count: int) -> list[int]:
    raw = value.to_bytes(width_bytes * count, "little")
    return [
        int.from_bytes(raw[i * width_bytes:(i + 1) * width_bytes], "little")
        for i in range(count)
    ]


def mul_dense_nonneg(a: list[int], b: list[int]) -> list[int]:
    """Product of dense coefficient lists with nonnegative entries."""
    if not a or not b:
        return []
    if len(a) * len(b) < _KRONECKER_MIN_WORK:
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return out
    bits = max(a).bit_length() + max(b).bit_length() + min(len(a), len(b)).bit_length() + 1
    width = (bits + 7) // 8
    prod = _pack(a, width) * _pack(b, width)
    return _unpack(prod, width, len(a) + len(b) - 1)


def _split_signs(terms: dict[int, int], base: int, step: int, length: int):
    pos = [0] * length
    neg = [0] * length
    for e, c in terms.items():
        i = (e - base) // step
        if c > 0:
            pos[i] = c
        else:
            neg[i] = -c
    return pos, neg


def _kronecker_mul(a: SparsePoly, b: SparsePoly) -> SparsePoly:
    ea, eb = a._terms, b._terms
    la, lb = min(ea), min(eb)
    step = 0
    for e in ea:
        step = gcd(step, e - la)
    for e in eb:
        step = gcd(step, e - lb)
    step = step or 1
    na = (max(ea) - la) // step + 1
    nb = (max(eb) - lb) // step + 1
    ap, an = _split_signs(ea, la, step, na)
    bp, bn = _split_signs(eb, lb, step, nb)
    pos = _add_dense(mul_dense_nonneg(ap, bp), mul_dense_nonneg(an, bn))
    neg = _add_dense(mul_dense_nonneg(ap, bn), mul_dense_nonneg(an, bp))
    base = la + lb
    out = {}
    for i in range(max(len(pos), len(neg))):
        c = (pos[i] if i < len(pos) else 0) - (neg[i] if i < len(neg) else 0)
        if c:
            out[base + step * i] = c
    return SparsePoly._raw(out)


def _add_dense(a: list[int], b: list[int]) -> list[int]:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] += c
    return out


# ---------------------------------------------------------------------------
# Functional surface
# ---------------------------------------------------------------------------

def poly_arith(a: SparsePoly, b: SparsePoly | None, op: str) -> SparsePoly:
    """Dispatch ``op`` in {add, sub, mul, divexact, derivative}; ``b`` is ignored for derivative."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "divexact":
        return a.divexact(b)
    if op == "derivative":
        return a.derivative()
    raise ValueError(f"unknown polynomial operation {op!r}")


def poly_gcd(a: SparsePoly, b: SparsePoly) -> SparsePoly:
    """Primitive gcd over Z[x] via the primitive Euclidean algorithm."""
    a, b = a.primitive(), b.primitive()
    while b:
        r = _pseudo_rem(a, b)
        a, b = b, r.primitive()
    return a.primitive()


def _pseudo_rem(a: SparsePoly, b: SparsePoly) -> SparsePoly:
    if a.degree < b.degree:
        return a
    lb = b.leading
    scale = lb ** (a.degree - b.degree + 1)
    return (a * scale).divmod(b)[1]


def eval_fraction(p: SparsePoly, x: Fraction) -> Fraction:
    return p(Fraction(x))
