"""Exact arithmetic in cyclotomic fields Q(zeta_n).

Values are represented canonically as polynomials in w = zeta_n (a fixed
primitive n-th root of unity) reduced modulo the n-th cyclotomic polynomial,
with arbitrary-precision rational coefficients.  No floating point is used
anywhere: equality of values is equality of canonical coefficient tuples.

The default field for the rest of the package is n = 3 (Eisenstein rationals,
w^2 + w + 1 = 0), which is enough to split every conic and line occurring in
the built-in catalog, but the arithmetic here is generic in n.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache

Rational = Fraction


@lru_cache(maxsize=None)
def euler_phi(n: int) -> int:
    if n < 1:
        raise ValueError("order must be >= 1")
    result = n
    m = n
    p = 2
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            result -= result // p
        p += 1
    if m > 1:
        result -= result // m
    return result


def _poly_divmod_int(num: list[int], den: list[int]) -> tuple[list[int], list[int]]:
    """Division of integer polynomials (ascending coeffs); den must be monic."""
    num = list(num)
    dd = len(den) - 1
    if den[-1] != 1:
        raise ValueError("divisor must be monic")
    quot = [0] * max(1, len(num) - dd)
    while len(num) - 1 >= dd and any(num):
        k = len(num) - 1 - dd
        c = num[-1]
        quot[k] = c
        for i, dc in enumerate(den):
            num[k + i] -= c * dc
        while num and num[-1] == 0:
            num.pop()
    return quot, num


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Monic integer coefficients (ascending) of the n-th cyclotomic polynomial."""
    if n < 1:
        raise ValueError("order must be >= 1")
    if n == 1:
        return (-1, 1)
    num = [0] * (n + 1)
    num[0] = -1
    num[n] = 1
    poly = num
    for d in range(1, n):
        if n % d == 0:
            poly, rem = _poly_divmod_int(poly, list(cyclotomic_polynomial(d)))
            if any(rem):
                raise AssertionError("cyclotomic division not exact")
    while len(poly) > 1 and poly[-1] == 0:
        poly.pop()
    return tuple(poly)


def _reduce(order: int, coeffs: list[Fraction]) -> tuple[Fraction, ...]:
    """Reduce a w-polynomial modulo the order-th cyclotomic polynomial."""
    deg = euler_phi(order)
    phi = cyclotomic_polynomial(order)
    coeffs = list(coeffs)
    while len(coeffs) > deg:
        c = coeffs.pop()
        if c:
            k = len(coeffs) - deg
            for i in range(deg):
                coeffs[k + i] -= c * phi[i]
    while len(coeffs) < deg:
        coeffs.append(Fraction(0))
    return tuple(coeffs)


class CycloNumber:
    """An element of Q(zeta_order), canonical modulo the cyclotomic polynomial."""

    __slots__ = ("order", "coeffs", "_hash")

    def __init__(self, order: int, coeffs) -> None:
        self.order = order
        cs = [c if isinstance(c, Fraction) else Fraction(c) for c in coeffs]
        if len(cs) == euler_phi(order):
            self.coeffs = tuple(cs)
        else:
            self.coeffs = _reduce(order, cs)
        self._hash = None

    # -- construction helpers -------------------------------------------------

    @staticmethod
    def from_rational(value, order: int = 3) -> "CycloNumber":
        cs = [Fraction(value)] + [Fraction(0)] * (euler_phi(order) - 1)
        return CycloNumber(order, cs)

    @staticmethod
    def zeta(order: int, power: int = 1) -> "CycloNumber":
        power %= order
        cs = [Fraction(0)] * (power + 1)
        cs[power] = Fraction(1)
        return CycloNumber(order, cs)

    # -- predicates ------------------------------------------------------------

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def is_rational(self) -> bool:
        return all(c == 0 for c in self.coeffs[1:])

    def rational_value(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return self.coeffs[0]

    def is_one(self) -> bool:
        return self.coeffs[0] == 1 and all(c == 0 for c in self.coeffs[1:])

    # -- ring operations --------------------------------------------------------

    def _coerce(self, other) -> "CycloNumber | None":
        if isinstance(other, CycloNumber):
            if other.order != self.order:
                raise ValueError("mixed cyclotomic orders")
            return other
        if isinstance(other, (int, Fraction)):
            return CycloNumber.from_rational(other, self.order)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return CycloNumber(self.order, [a + b for a, b in zip(self.coeffs, o.coeffs)])

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return CycloNumber(self.order, [a - b for a, b in zip(self.coeffs, o.coeffs)])

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __neg__(self):
        return CycloNumber(self.order, [-a for a in self.coeffs])

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        a, b = self.coeffs, o.coeffs
        if self.order == 3:
            # (a0 + a1 w)(b0 + b1 w) with w^2 = -1 - w
            t = a[1] * b[1]
            return CycloNumber(3, (a[0] * b[0] - t, a[0] * b[1] + a[1] * b[0] - t))
        if self.order == 1:
            return CycloNumber(1, (a[0] * b[0],))
        conv = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    if bj:
                        conv[i + j] += ai * bj
        return CycloNumber(self.order, conv)

    __rmul__ = __mul__

    def inverse(self) -> "CycloNumber":
        if self.is_zero():
            raise ZeroDivisionError("cyclotomic division by zero")
        if self.order == 1 or self.is_rational():
            inv = [1 / self.coeffs[0]] + [Fraction(0)] * (len(self.coeffs) - 1)
            return CycloNumber(self.order, inv)
        if self.order == 3:
            a, b = self.coeffs
            nrm = a * a - a * b + b * b
            return CycloNumber(3, ((a - b) / nrm, -b / nrm))
        # extended Euclid: find u with u * self == 1 (mod cyclotomic poly)
        phi = [Fraction(c) for c in cyclotomic_polynomial(self.order)]
        r0, r1 = phi, list(self.coeffs)
        t0, t1 = [Fraction(0)], [Fraction(1)]
        while any(r1):
            q, r = _poly_divmod_frac(r0, r1)
            r0, r1 = r1, r
            t0, t1 = t1, _poly_sub(t0, _poly_mul(q, t1))
        # r0 is a nonzero constant gcd
        c = r0[0]
        return CycloNumber(self.order, [t / c for t in t0])

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int):
            return NotImplemented
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result = CycloNumber.from_rational(1, self.order)
        base = self
        e = exponent
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    # -- comparisons -------------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and self.coeffs[0] == other
        if not isinstance(other, CycloNumber):
            return NotImplemented
        if self.order != other.order:
            if self.is_rational() and other.is_rational():
                return self.coeffs[0] == other.coeffs[0]
            return False
        return self.coeffs == other.coeffs

    def __hash__(self):
        if self._hash is None:
            if self.is_rational():
                # align with hash of plain rationals so mixed dict keys behave
                self._hash = hash(self.coeffs[0])
            else:
                self._hash = hash((self.order, self.coeffs))
        return self._hash

    # -- Galois structure ----------------------------------------------------------

    def galois_conjugate(self, k: int) -> "CycloNumber":
        """Apply w -> w^k; k must be coprime to the order."""
        if math.gcd(k, self.order) != 1:
            raise ValueError("conjugation exponent must be coprime to the order")
        out = [Fraction(0)] * self.order
        for i, c in enumerate(self.coeffs):
            if c:
                out[(i * k) % self.order] += c
        return CycloNumber(self.order, out)

    def norm(self) -> Fraction:
        """Field norm down to Q (product of all Galois conjugates)."""
        prod = CycloNumber.from_rational(1, self.order)
        for k in range(1, self.order + 1):
            if math.gcd(k, self.order) == 1:
                prod = prod * self.galois_conjugate(k)
        return prod.rational_value()

    # -- printing --------------------------------------------------------------------

    def __str__(self) -> str:
        parts = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if i == 0:
                parts.append((c < 0, _frac_str(abs(c))))
            else:
                mono = "w" if i == 1 else f"w^{i}"
                if abs(c) == 1:
                    parts.append((c < 0, mono))
                else:
                    parts.append((c < 0, f"{_frac_str(abs(c))}*{mono}"))
        if not parts:
            return "0"
        out = []
        for idx, (neg, text) in enumerate(parts):
            if idx == 0:
                out.append(("-" if neg else "") + text)
            else:
                out.append(("- " if neg else "+ ") + text)
        return " ".join(out)

    def __repr__(self) -> str:
        return f"CycloNumber({self.order}, {self})"


def _frac_str(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def _poly_divmod_frac(num: list[Fraction], den: list[Fraction]):
    num = list(num)
    while den and den[-1] == 0:
        den = den[:-1]
    dd = len(den) - 1
    lead = den[-1]
    quot = [Fraction(0)] * max(1, len(num) - dd)
    while True:
        while num and num[-1] == 0:
            num.pop()
        if len(num) - 1 < dd or not any(num):
            break
        k = len(num) - 1 - dd
        c = num[-1] / lead
        quot[k] += c
        for i, dc in enumerate(den):
            num[k + i] -= c * dc
    return quot, num


def _poly_mul(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
    return out


def _poly_sub(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    n = max(len(a), len(b))
    a = a + [Fraction(0)] * (n - len(a))
    b = b + [Fraction(0)] * (n - len(b))
    return [x - y for x, y in zip(a, b)]


def rational_sqrt(value: Fraction) -> Fraction | None:
    """Exact square root of a rational, or None when it is not a square."""
    value = Fraction(value)
    if value < 0:
        return None
    rn = math.isqrt(value.numerator)
    rd = math.isqrt(value.denominator)
    if rn * rn != value.numerator or rd * rd != value.denominator:
        return None
    return Fraction(rn, rd)


def cyclo_sqrt(value: CycloNumber) -> CycloNumber | None:
    """A square root of value inside its own field, or None if none exists there.

    Implemented for orders 1 and 3 (all the catalog needs); other orders
    return None rather than guessing.
    """
    n = value.order
    if value.is_zero():
        return CycloNumber.from_rational(0, n)
    if value.is_rational() and n != 3:
        r = rational_sqrt(value.rational_value())
        return CycloNumber.from_rational(r, n) if r is not None else None
    if n == 1:
        r = rational_sqrt(value.rational_value())
        return CycloNumber.from_rational(r, 1) if r is not None else None
    if n != 3:
        return None
    a, b = value.coeffs
    if b == 0:
        r = rational_sqrt(a)
        if r is not None:
            return CycloNumber.from_rational(r, 3)
        # (u(1+2w))^2 = -3u^2, so sqrt(a) exists when -a/3 is a square
        r = rational_sqrt(-a / 3)
        if r is not None:
            return CycloNumber(3, (r, 2 * r))
        return None
    # s = u + v*w with v != 0: u^2 - v^2 = a and 2uv - v^2 = b
    disc = (4 * a - 2 * b) ** 2 + 12 * b * b
    root = rational_sqrt(disc)
    if root is None:
        return None
    for sign in (1, -1):
        w0 = ((2 * b - 4 * a) + sign * root) / 6
        v = rational_sqrt(w0)
        if v is None or v == 0:
            continue
        u = (b + v * v) / (2 * v)
        cand = CycloNumber(3, (u, v))
        if cand * cand == value:
            return cand
    return None
