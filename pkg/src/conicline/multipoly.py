"""Sparse multivariate polynomials in x, y, z over a cyclotomic field.

Terms live in a dict mapping exponent triples to nonzero field coefficients.
Everything is exact; printing is canonical (graded-lex descending) so equal
polynomials print identically and printed forms round-trip through the parser.

Local (two-variable, non-homogeneous) equations reuse the same class with the
z exponent pinned to 0; the two local coordinates occupy the x and y slots.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable

from .cyclotomic import CycloNumber, cyclo_sqrt

VAR_NAMES = ("x", "y", "z")
Exponents = tuple[int, int, int]


class MultiPoly:
    __slots__ = ("order", "terms", "_degree")

    def __init__(self, order: int, terms: dict[Exponents, CycloNumber] | None = None) -> None:
        self.order = order
        self.terms: dict[Exponents, CycloNumber] = {}
        if terms:
            for e, c in terms.items():
                if not c.is_zero():
                    self.terms[e] = c
        self._degree = None

    # -- constructors ----------------------------------------------------------

    @staticmethod
    def zero(order: int = 3) -> "MultiPoly":
        return MultiPoly(order)

    @staticmethod
    def constant(value, order: int = 3) -> "MultiPoly":
        c = value if isinstance(value, CycloNumber) else CycloNumber.from_rational(value, order)
        return MultiPoly(c.order, {(0, 0, 0): c})

    @staticmethod
    def variable(name: str, order: int = 3) -> "MultiPoly":
        i = VAR_NAMES.index(name)
        e = [0, 0, 0]
        e[i] = 1
        return MultiPoly(order, {tuple(e): CycloNumber.from_rational(1, order)})

    @staticmethod
    def monomial(exponents: Exponents, coeff, order: int = 3) -> "MultiPoly":
        c = coeff if isinstance(coeff, CycloNumber) else CycloNumber.from_rational(coeff, order)
        return MultiPoly(c.order, {tuple(exponents): c})

    # -- basic structure ---------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def total_degree(self) -> int:
        """Largest total degree of a term; -1 for the zero polynomial."""
        if self._degree is None:
            self._degree = max((sum(e) for e in self.terms), default=-1)
        return self._degree

    def min_degree(self) -> int:
        """Smallest total degree of a term (the order at the origin); -1 if zero."""
        return min((sum(e) for e in self.terms), default=-1)

    def degree_in(self, var: int) -> int:
        return max((e[var] for e in self.terms), default=-1)

    def is_homogeneous(self) -> bool:
        degs = {sum(e) for e in self.terms}
        return len(degs) <= 1

    def homogeneous_part(self, d: int) -> "MultiPoly":
        return MultiPoly(self.order, {e: c for e, c in self.terms.items() if sum(e) == d})

    def used_vars(self) -> set[int]:
        out: set[int] = set()
        for e in self.terms:
            for i in range(3):
                if e[i]:
                    out.add(i)
        return out

    def coefficient(self, exponents: Exponents) -> CycloNumber:
        return self.terms.get(tuple(exponents), CycloNumber.from_rational(0, self.order))

    # -- ring operations -----------------------------------------------------------

    def _coerce(self, other) -> "MultiPoly | None":
        if isinstance(other, MultiPoly):
            if other.order != self.order:
                raise ValueError("mixed cyclotomic orders")
            return other
        if isinstance(other, (int, Fraction, CycloNumber)):
            return MultiPoly.constant(other if not isinstance(other, CycloNumber) else other, self.order)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        out = dict(self.terms)
        for e, c in o.terms.items():
            s = out.get(e)
            out[e] = c if s is None else s + c
        return MultiPoly(self.order, out)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        out = dict(self.terms)
        for e, c in o.terms.items():
            s = out.get(e)
            out[e] = -c if s is None else s - c
        return MultiPoly(self.order, out)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __neg__(self):
        return MultiPoly(self.order, {e: -c for e, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, CycloNumber)):
            c = other if isinstance(other, CycloNumber) else CycloNumber.from_rational(other, self.order)
            if c.is_zero():
                return MultiPoly(self.order)
            return MultiPoly(self.order, {e: k * c for e, k in self.terms.items()})
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        a, b = self.terms, o.terms
        if len(a) > len(b):
            a, b = b, a
        out: dict[Exponents, CycloNumber] = {}
        for ea, ca in a.items():
            for eb, cb in b.items():
                e = (ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2])
                prod = ca * cb
                s = out.get(e)
                out[e] = prod if s is None else s + prod
        return MultiPoly(self.order, out)

    __rmul__ = __mul__

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int) or exponent < 0:
            return NotImplemented
        result = MultiPoly.constant(1, self.order)
        base = self
        e = exponent
        while e:
            if e & 1:
                result = result * base
            base = base * base if e > 1 else base
            e >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, CycloNumber)):
            o = self._coerce(other)
            return self.terms == o.terms
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self.order == other.order and self.terms == other.terms

    def __hash__(self):
        return hash((self.order, frozenset(self.terms.items())))

    # -- calculus -------------------------------------------------------------------

    def diff(self, var: int | str) -> "MultiPoly":
        i = VAR_NAMES.index(var) if isinstance(var, str) else var
        out: dict[Exponents, CycloNumber] = {}
        for e, c in self.terms.items():
            if e[i]:
                ne = list(e)
                ne[i] -= 1
                out[tuple(ne)] = c * e[i]
        return MultiPoly(self.order, out)

    # -- evaluation and substitution ---------------------------------------------------

    def evaluate(self, coords) -> CycloNumber:
        """Value at a coordinate triple (CycloNumbers or a ProjPoint)."""
        if isinstance(coords, ProjPoint):
            coords = coords.coords
        one = CycloNumber.from_rational(1, self.order)
        pows: list[dict[int, CycloNumber]] = [{0: one}, {0: one}, {0: one}]

        def power(i: int, k: int) -> CycloNumber:
            cache = pows[i]
            if k not in cache:
                cache[k] = power(i, k - 1) * coords[i]
            return cache[k]

        total = CycloNumber.from_rational(0, self.order)
        for e, c in self.terms.items():
            v = c
            for i in range(3):
                if e[i]:
                    v = v * power(i, e[i])
            total = total + v
        return total

    def substitute_all(self, subs: list["MultiPoly"]) -> "MultiPoly":
        """Replace x, y, z by the three given polynomials."""
        one = MultiPoly.constant(1, self.order)
        caches: list[dict[int, MultiPoly]] = [{0: one}, {0: one}, {0: one}]

        def power(i: int, k: int) -> MultiPoly:
            cache = caches[i]
            if k not in cache:
                half = cache.get(k - 1)
                cache[k] = (half if half is not None else power(i, k - 1)) * subs[i]
            return cache[k]

        total = MultiPoly(self.order)
        for e, c in self.terms.items():
            v = MultiPoly.constant(c, self.order)
            for i in range(3):
                if e[i]:
                    v = v * power(i, e[i])
            total = total + v
        return total

    def substitute_linear(self, matrix) -> "MultiPoly":
        """p(M row x) : substitute var_i -> sum_j M[i][j] * var_j."""
        subs = []
        for i in range(3):
            row = MultiPoly(self.order)
            for j in range(3):
                c = matrix[i][j]
                c = c if isinstance(c, CycloNumber) else CycloNumber.from_rational(c, self.order)
                if not c.is_zero():
                    row = row + MultiPoly.monomial(tuple(1 if t == j else 0 for t in range(3)), c, self.order)
            subs.append(row)
        return self.substitute_all(subs)

    def localize_at(self, point: "ProjPoint") -> "MultiPoly":
        """Local equation at the point: dehomogenize in the chart of the point's
        unit coordinate and translate the point to the origin.

        The two local coordinates are returned in the x and y slots, in the
        order of the surviving ambient variables.
        """
        if point.order != self.order:
            raise ValueError("mixed cyclotomic orders")
        k = point.unit_index
        free = [i for i in range(3) if i != k]
        subs: list[MultiPoly] = [None, None, None]  # type: ignore[list-item]
        subs[k] = MultiPoly.constant(1, self.order)
        for slot, i in enumerate(free):
            e = (1, 0, 0) if slot == 0 else (0, 1, 0)
            subs[i] = MultiPoly.monomial(e, 1, self.order) + MultiPoly.constant(point.coords[i], self.order)
        return self.substitute_all(subs)

    # -- normalization ------------------------------------------------------------------

    def leading_term(self) -> tuple[Exponents, CycloNumber]:
        """Graded-lex leading term (highest degree, then lex with x > y > z)."""
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        e = max(self.terms, key=lambda t: (sum(t), t))
        return e, self.terms[e]

    def monic(self) -> "MultiPoly":
        if not self.terms:
            return self
        _, c = self.leading_term()
        return self * c.inverse()

    def proportionality(self, other: "MultiPoly") -> CycloNumber | None:
        """The scalar c with self == c * other, or None if not proportional."""
        if self.order != other.order:
            return None
        if other.is_zero():
            return CycloNumber.from_rational(0, self.order) if self.is_zero() else None
        if self.is_zero() or set(self.terms) != set(other.terms):
            return None
        e, c = other.leading_term()
        scalar = self.terms[e] * c.inverse()
        for e2, c2 in other.terms.items():
            if self.terms[e2] != c2 * scalar:
                return None
        return scalar

    def exact_div(self, divisor: "MultiPoly") -> "MultiPoly":
        """Exact multivariate division; raises ValueError when not divisible."""
        if divisor.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = MultiPoly(self.order, dict(self.terms))
        le, lc = divisor.leading_term()
        lc_inv = lc.inverse()
        out: dict[Exponents, CycloNumber] = {}
        while not rem.is_zero():
            re, rc = rem.leading_term()
            qe = (re[0] - le[0], re[1] - le[1], re[2] - le[2])
            if min(qe) < 0:
                raise ValueError("not divisible")
            qc = rc * lc_inv
            out[qe] = qc
            rem = rem - divisor * MultiPoly.monomial(qe, qc, self.order)
        return MultiPoly(self.order, out)

    def map_coeffs(self, fn) -> "MultiPoly":
        return MultiPoly(self.order, {e: fn(c) for e, c in self.terms.items()})

    # -- univariate views ------------------------------------------------------------------

    def coeffs_in(self, var: int) -> list["MultiPoly"]:
        """Coefficients (ascending) of self as a polynomial in one variable."""
        d = self.degree_in(var)
        out = [MultiPoly(self.order) for _ in range(d + 1)]
        for e, c in self.terms.items():
            ne = list(e)
            k = ne[var]
            ne[var] = 0
            out[k] = out[k] + MultiPoly.monomial(tuple(ne), c, self.order)
        return out

    # -- printing ----------------------------------------------------------------------------

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        items = sorted(self.terms.items(), key=lambda t: (sum(t[0]), t[0]), reverse=True)
        parts: list[tuple[bool, str]] = []
        for e, c in items:
            mono = "*".join(
                (name if k == 1 else f"{name}^{k}")
                for name, k in zip(VAR_NAMES, e)
                if k
            )
            if c.is_rational():
                q = c.rational_value()
                neg = q < 0
                q = abs(q)
                coeff_txt = str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"
                if not mono:
                    parts.append((neg, coeff_txt))
                elif q == 1:
                    parts.append((neg, mono))
                else:
                    parts.append((neg, f"{coeff_txt}*{mono}"))
            else:
                txt = f"({c})"
                parts.append((False, f"{txt}*{mono}" if mono else txt))
        out = []
        for idx, (neg, text) in enumerate(parts):
            if idx == 0:
                out.append(("-" if neg else "") + text)
            else:
                out.append(("- " if neg else "+ ") + text)
        return " ".join(out)

    def __repr__(self) -> str:
        return f"MultiPoly({self.order}, {self})"


class ProjPoint:
    """A point of the projective plane, normalized so its last nonzero
    coordinate is 1 (making equality and hashing well defined)."""

    __slots__ = ("order", "coords", "unit_index")

    def __init__(self, order: int, coords: Iterable) -> None:
        cs = [c if isinstance(c, CycloNumber) else CycloNumber.from_rational(c, order) for c in coords]
        if len(cs) != 3:
            raise ValueError("a projective point needs three coordinates")
        last = None
        for i in range(2, -1, -1):
            if not cs[i].is_zero():
                last = i
                break
        if last is None:
            raise ValueError("(0:0:0) is not a projective point")
        inv = cs[last].inverse()
        self.order = order
        self.coords = tuple(c * inv for c in cs)
        self.unit_index = last

    def __eq__(self, other):
        if not isinstance(other, ProjPoint):
            return NotImplemented
        return self.order == other.order and self.coords == other.coords

    def __hash__(self):
        return hash((self.order, self.coords))

    def sort_key(self) -> tuple:
        return tuple(str(c) for c in self.coords)

    def __str__(self) -> str:
        return "(" + " : ".join(str(c) for c in self.coords) + ")"

    def __repr__(self) -> str:
        return f"ProjPoint{self}"


# -- small exact 3x3 linear algebra over the field ------------------------------------


def det3(m) -> CycloNumber:
    a, b, c = m[0]
    d, e, f = m[1]
    g, h, i = m[2]
    return a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)


def inv3(m):
    det = det3(m)
    if det.is_zero():
        raise ValueError("matrix is singular")
    a, b, c = m[0]
    d, e, f = m[1]
    g, h, i = m[2]
    adj = [
        [e * i - f * h, c * h - b * i, b * f - c * e],
        [f * g - d * i, a * i - c * g, c * d - a * f],
        [d * h - e * g, b * g - a * h, a * e - b * d],
    ]
    inv_det = det.inverse()
    return [[x * inv_det for x in row] for row in adj]


def cross3(p, q):
    return (
        p[1] * q[2] - p[2] * q[1],
        p[2] * q[0] - p[0] * q[2],
        p[0] * q[1] - p[1] * q[0],
    )


# -- univariate helpers over the field (coefficient lists, ascending) -------------------


def _uni_trim(a: list[CycloNumber]) -> list[CycloNumber]:
    while a and a[-1].is_zero():
        a.pop()
    return a


def _uni_divmod(num: list[CycloNumber], den: list[CycloNumber]):
    num = list(num)
    den = _uni_trim(list(den))
    if not den:
        raise ZeroDivisionError
    dd = len(den) - 1
    inv = den[-1].inverse()
    quot = [CycloNumber.from_rational(0, den[-1].order) for _ in range(max(1, len(num) - dd))]
    while True:
        num = _uni_trim(num)
        if len(num) - 1 < dd or not num:
            break
        k = len(num) - 1 - dd
        c = num[-1] * inv
        quot[k] = quot[k] + c
        for i, dc in enumerate(den):
            num[k + i] = num[k + i] - c * dc
    return quot, num


def uni_gcd(a: list[CycloNumber], b: list[CycloNumber]) -> list[CycloNumber]:
    """Monic gcd of univariate polynomials over the field."""
    a = _uni_trim(list(a))
    b = _uni_trim(list(b))
    while b:
        _, r = _uni_divmod(a, b)
        a, b = b, _uni_trim(r)
    if not a:
        return a
    inv = a[-1].inverse()
    return [c * inv for c in a]


# -- binary forms ------------------------------------------------------------------------


def binary_vars(p: MultiPoly) -> tuple[int, int]:
    """The (sorted) pair of variable slots a binary form lives in."""
    used = sorted(p.used_vars())
    if len(used) > 2:
        raise ValueError("form uses more than two variables")
    while len(used) < 2:
        used.append(next(i for i in range(3) if i not in used))
    used.sort()
    return used[0], used[1]


def _binary_to_uni(p: MultiPoly, vi: int, vj: int) -> tuple[int, int, list[CycloNumber]]:
    """Factor p = vi^a * vj^b * (primitive part), return (a, b, univariate in t = vi)."""
    a = min(e[vi] for e in p.terms)
    b = min(e[vj] for e in p.terms)
    deg = p.total_degree() - a - b
    zero = CycloNumber.from_rational(0, p.order)
    coeffs = [zero] * (deg + 1)
    for e, c in p.terms.items():
        coeffs[e[vi] - a] = coeffs[e[vi] - a] + c
    return a, b, coeffs


def _uni_to_binary(coeffs: list[CycloNumber], vi: int, vj: int, order: int) -> MultiPoly:
    deg = len(coeffs) - 1
    terms: dict[Exponents, CycloNumber] = {}
    for k, c in enumerate(coeffs):
        if not c.is_zero():
            e = [0, 0, 0]
            e[vi] = k
            e[vj] = deg - k
            terms[tuple(e)] = c
    return MultiPoly(order, terms)


def binary_gcd(p: MultiPoly, q: MultiPoly) -> MultiPoly:
    """Monic gcd of two homogeneous binary forms in the same variable pair."""
    if p.is_zero() or q.is_zero():
        raise ValueError("gcd of zero form")
    if not (p.is_homogeneous() and q.is_homogeneous()):
        raise ValueError("binary gcd needs homogeneous forms")
    used = sorted(p.used_vars() | q.used_vars())
    if len(used) > 2:
        raise ValueError("forms do not share a two-variable frame")
    while len(used) < 2:
        used.append(next(i for i in range(3) if i not in used))
    vi, vj = used[0], used[1]
    a1, b1, u1 = _binary_to_uni(p, vi, vj)
    a2, b2, u2 = _binary_to_uni(q, vi, vj)
    g = uni_gcd(u1, u2)
    mono = [0, 0, 0]
    mono[vi] = min(a1, a2)
    mono[vj] = min(b1, b2)
    base = MultiPoly.monomial(tuple(mono), 1, p.order)
    if not g:
        raise AssertionError("unreachable: both primitive parts vanish")
    return (base * _uni_to_binary(g, vi, vj, p.order)).monic()


def binary_is_squarefree(p: MultiPoly) -> bool:
    """A binary form is squarefree iff it shares no factor with its partials."""
    vi, vj = binary_vars(p)
    g = binary_gcd(p, p.diff(vi)) if not p.diff(vi).is_zero() else p.monic()
    if g.total_degree() == 0:
        return True
    h = p.diff(vj)
    if h.is_zero():
        return g.total_degree() == 0
    return binary_gcd(g, h).total_degree() == 0


# -- resultants --------------------------------------------------------------------------


def resultant(p: MultiPoly, q: MultiPoly, var: int | str) -> MultiPoly:
    """Resultant eliminating one variable, as det of the Sylvester matrix
    (rows of p's coefficients first, then q's; coefficients descending).

    If exactly one input has degree 0 in the variable, the convention
    Res(p, q) = q ** deg_var(p) (resp. p ** deg_var(q)) degenerates to that
    power; if both have degree 0 a ValueError is raised.
    """
    v = VAR_NAMES.index(var) if isinstance(var, str) else var
    dp, dq = p.degree_in(v), q.degree_in(v)
    if dp <= 0 and dq <= 0:
        raise ValueError("both inputs have degree 0 in the eliminated variable")
    if dp <= 0:
        return p ** dq
    if dq <= 0:
        return q ** dp
    cp = p.coeffs_in(v)[::-1]  # descending
    cq = q.coeffs_in(v)[::-1]
    n = dp + dq
    zero = MultiPoly(p.order)
    rows: list[list[MultiPoly]] = []
    for i in range(dq):
        rows.append([zero] * i + cp + [zero] * (n - i - len(cp)))
    for i in range(dp):
        rows.append([zero] * i + cq + [zero] * (n - i - len(cq)))
    return _bareiss_det_poly(rows)


def _bareiss_det_poly(rows: list[list[MultiPoly]]) -> MultiPoly:
    """Fraction-free determinant over the polynomial ring (exact divisions)."""
    n = len(rows)
    m = [row[:] for row in rows]
    order = m[0][0].order
    sign = 1
    prev = MultiPoly.constant(1, order)
    for k in range(n - 1):
        if m[k][k].is_zero():
            pivot_row = next((i for i in range(k + 1, n) if not m[i][k].is_zero()), None)
            if pivot_row is None:
                return MultiPoly(order)
            m[k], m[pivot_row] = m[pivot_row], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = m[i][j] * m[k][k] - m[i][k] * m[k][j]
                m[i][j] = MultiPoly(order) if num.is_zero() else num.exact_div(prev)
            m[i][k] = MultiPoly(order)
        prev = m[k][k]
    det = m[n - 1][n - 1]
    return det if sign == 1 else -det


# -- conics ---------------------------------------------------------------------------------


def conic_matrix(q: MultiPoly):
    """Symmetric 3x3 matrix of a (possibly degenerate) quadratic form."""
    if q.is_zero() or q.total_degree() != 2 or not q.is_homogeneous():
        raise ValueError("not a nonzero degree-2 homogeneous form")
    half = Fraction(1, 2)
    c = lambda e: q.coefficient(e)
    return [
        [c((2, 0, 0)), c((1, 1, 0)) * half, c((1, 0, 1)) * half],
        [c((1, 1, 0)) * half, c((0, 2, 0)), c((0, 1, 1)) * half],
        [c((1, 0, 1)) * half, c((0, 1, 1)) * half, c((0, 0, 2))],
    ]


def conic_classify(q: MultiPoly) -> str:
    """smooth (rank 3), line_pair (rank 2) or double_line (rank 1)."""
    m = conic_matrix(q)
    if not det3(m).is_zero():
        return "smooth"
    for i in range(3):
        for j in range(3):
            for k in range(i + 1, 3):
                for l in range(j + 1, 3):
                    if not (m[i][j] * m[k][l] - m[i][l] * m[k][j]).is_zero():
                        return "line_pair"
    return "double_line"


def _adjugate3(m):
    def cof(i, j):
        r = [k for k in range(3) if k != i]
        c = [k for k in range(3) if k != j]
        minor = m[r[0]][c[0]] * m[r[1]][c[1]] - m[r[0]][c[1]] * m[r[1]][c[0]]
        return minor if (i + j) % 2 == 0 else -minor

    # adj[i][j] = cofactor(j, i)
    return [[cof(j, i) for j in range(3)] for i in range(3)]


def _kernel_vector3(m) -> tuple:
    """A nonzero kernel vector of a rank-2 symmetric 3x3 matrix
    (any nonzero adjugate column works since M * adj(M) = det(M) * I = 0)."""
    adj = _adjugate3(m)
    for j in range(3):
        col = tuple(adj[i][j] for i in range(3))
        if any(not c.is_zero() for c in col):
            return col
    raise ValueError("matrix has rank below 2")


def conic_split(q: MultiPoly) -> tuple[MultiPoly, MultiPoly]:
    """Write a degenerate conic as a product of two linear forms.

    Both factors come back monic; the pair is sorted by printed form so the
    result is deterministic. Raises ValueError for a smooth conic, and when a
    rank-2 conic only splits over a quadratic extension of the field.
    """
    kind = conic_classify(q)
    if kind == "smooth":
        raise ValueError("smooth conic does not split")
    m = conic_matrix(q)
    order = q.order
    if kind == "double_line":
        # q = c * L^2 with L read off a nonzero row of the matrix
        row = next(r for r in m if any(not c.is_zero() for c in r))
        line = MultiPoly(order, {
            (1, 0, 0): row[0], (0, 1, 0): row[1], (0, 0, 1): row[2]
        }).monic()
        assert q.proportionality(line * line) is not None
        return line, line
    # rank 2: restrict to a complementary plane through two unit vectors
    p = _kernel_vector3(m)
    one = CycloNumber.from_rational(1, order)
    zero = CycloNumber.from_rational(0, order)
    units = [(one, zero, zero), (zero, one, zero), (zero, zero, one)]
    # choose two unit vectors independent of p: drop one where p's coord is nonzero
    drop = next(i for i in range(3) if not p[i].is_zero())
    e1, e2 = (units[i] for i in range(3) if i != drop)

    def qval(v) -> CycloNumber:
        return q.evaluate(v)

    def qbil(u, v) -> CycloNumber:
        # polarization: B(u, v) = (q(u+v) - q(u) - q(v)) / 2
        s = tuple(u[i] + v[i] for i in range(3))
        return (qval(s) - qval(u) - qval(v)) * Fraction(1, 2)

    A = qval(e1)
    B = qbil(e1, e2) * 2
    C = qval(e2)
    # factor A s^2 + B s t + C t^2 into (a1 s + b1 t)(a2 s + b2 t)
    if A.is_zero() and C.is_zero():
        pairs = [(one, zero), (zero, one)]
    elif A.is_zero():
        # B*s*t + C*t^2 = t * (B*s + C*t), and B != 0 since rank 2 forces
        # two distinct roots on a line avoiding the singular point
        pairs = [(zero, one), (B, C)]
    else:
        disc = B * B - A * C * 4
        root = cyclo_sqrt(disc)
        if root is None:
            raise ValueError("conic splits only over a quadratic extension")
        two_a = A * 2
        r1 = (-B + root) * two_a.inverse()
        r2 = (-B - root) * two_a.inverse()
        pairs = [(one, -r1), (one, -r2)]
    lines = []
    for (a, b) in pairs:
        # the factor a*s + b*t vanishes at (s, t) = (b, -a)
        pt = tuple(e1[i] * b - e2[i] * a for i in range(3))
        coeffs = cross3(p, pt)
        line = MultiPoly(order, {
            (1, 0, 0): coeffs[0], (0, 1, 0): coeffs[1], (0, 0, 1): coeffs[2]
        }).monic()
        lines.append(line)
    scale = q.proportionality(lines[0] * lines[1])
    if scale is None:
        raise AssertionError("split verification failed")
    lines.sort(key=str)
    return lines[0], lines[1]
