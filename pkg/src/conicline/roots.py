"""Roots of binary forms over the cyclotomic field.

Strategy: peel off the coordinate roots carried by the monomial content, peel
any caller-supplied candidate roots by exact division, run Yun's squarefree
decomposition, and solve what remains. Degrees one and two are solved in
closed form (quadratics through cyclo_sqrt); higher squarefree factors fall
back to sympy's factorization over Q(sqrt(-3)), the quadratic field equal to
the default coefficient field. Every root coming out of the fallback is
re-verified by exact in-field evaluation, so sympy can never inject a wrong
root; it can only leave the listing incomplete, which the `complete` flag
reports honestly.
"""

from __future__ import annotations

from fractions import Fraction

from .cyclotomic import CycloNumber, cyclo_sqrt
from .multipoly import MultiPoly, _uni_divmod, _uni_trim, binary_vars, uni_gcd


class ParamPoint:
    """A point (s : t) on the projective parameter line, normalized like
    projective points: last nonzero coordinate 1."""

    __slots__ = ("order", "s", "t")

    def __init__(self, order: int, s, t) -> None:
        s = s if isinstance(s, CycloNumber) else CycloNumber.from_rational(s, order)
        t = t if isinstance(t, CycloNumber) else CycloNumber.from_rational(t, order)
        if t.is_zero():
            if s.is_zero():
                raise ValueError("(0 : 0) is not a parameter point")
            s = CycloNumber.from_rational(1, order)
        else:
            s = s * t.inverse()
            t = CycloNumber.from_rational(1, order)
        self.order = order
        self.s = s
        self.t = t

    def __eq__(self, other):
        if not isinstance(other, ParamPoint):
            return NotImplemented
        return self.order == other.order and self.s == other.s and self.t == other.t

    def __hash__(self):
        return hash((self.order, self.s, self.t))

    def __str__(self) -> str:
        return f"({self.s} : {self.t})"

    __repr__ = __str__


def _uni_diff(coeffs: list[CycloNumber]) -> list[CycloNumber]:
    return [c * k for k, c in enumerate(coeffs) if k > 0]


def _uni_eval(coeffs: list[CycloNumber], x: CycloNumber) -> CycloNumber:
    total = CycloNumber.from_rational(0, x.order)
    for c in reversed(coeffs):
        total = total * x + c
    return total


def squarefree_decomposition(coeffs: list[CycloNumber]) -> list[tuple[list[CycloNumber], int]]:
    """Yun's algorithm: [(squarefree factor, multiplicity)], factors monic."""
    f = _uni_trim(list(coeffs))
    if len(f) <= 1:
        return []
    inv = f[-1].inverse()
    f = [c * inv for c in f]
    df = _uni_diff(f)
    a = uni_gcd(f, df)
    b, _ = _uni_divmod(f, a)
    c, _ = _uni_divmod(df, a)
    d = _uni_sub(c, _uni_diff(b))
    out = []
    i = 1
    while len(b) > 1:
        a = uni_gcd(b, d)
        if len(a) > 1:
            out.append((a, i))
        b, _ = _uni_divmod(b, a)
        c, _ = _uni_divmod(d, a)
        d = _uni_sub(c, _uni_diff(b))
        i += 1
    return out


def _uni_sub(a: list[CycloNumber], b: list[CycloNumber]) -> list[CycloNumber]:
    order = (a or b)[0].order
    zero = CycloNumber.from_rational(0, order)
    n = max(len(a), len(b))
    out = [(a[i] if i < len(a) else zero) - (b[i] if i < len(b) else zero) for i in range(n)]
    return _uni_trim(out)


def _roots_of_squarefree(coeffs: list[CycloNumber], order: int) -> tuple[list[CycloNumber], bool]:
    """Roots in the field of a squarefree monic polynomial; bool = complete."""
    deg = len(coeffs) - 1
    if deg <= 0:
        return [], True
    if deg == 1:
        return [-coeffs[0] / coeffs[1]], True
    if deg == 2:
        a, b, c = coeffs[2], coeffs[1], coeffs[0]
        disc = b * b - a * c * 4
        root = cyclo_sqrt(disc)
        if root is None:
            return [], True  # irreducible quadratic: certainly no field roots
        inv2a = (a * 2).inverse()
        return [(-b + root) * inv2a, (-b - root) * inv2a], True
    found, complete = _roots_via_sympy(coeffs, order)
    verified = [r for r in found if _uni_eval(coeffs, r).is_zero()]
    return verified, complete and len(verified) == len(found)


def _roots_via_sympy(coeffs: list[CycloNumber], order: int) -> tuple[list[CycloNumber], bool]:
    """Field roots of higher-degree factors via sympy over Q(sqrt(-3)).

    Only meaningful for order 1 or 3 (the default field); other orders report
    incomplete without attempting anything.
    """
    if order not in (1, 3):
        return [], False
    try:
        import sympy
    except ImportError:
        return [], False
    t = sympy.Symbol("t")
    s3 = sympy.sqrt(-3)
    # w = (-1 + sqrt(-3)) / 2, so a + b*w = (a - b/2) + (b/2)*sqrt(-3)
    expr = sympy.Integer(0)
    for k, c in enumerate(coeffs):
        if order == 3:
            a, b = c.coeffs
        else:
            a, b = c.coeffs[0], Fraction(0)
        sym = sympy.Rational(a.numerator, a.denominator) + sympy.Rational(b.numerator, b.denominator) * (sympy.Rational(-1, 2) + s3 / 2)
        expr += sym * t**k
    try:
        poly = sympy.Poly(expr, t, extension=s3)
        factors = poly.factor_list()[1]
    except Exception:
        return [], False
    roots: list[CycloNumber] = []
    complete = True
    for fac, _mult in factors:
        if fac.degree() == 1:
            lin = fac.all_coeffs()  # [c1, c0]
            root_expr = sympy.simplify(-sympy.Rational(1) * lin[1] / lin[0])
            cy = _sympy_to_cyclo(root_expr, order)
            if cy is None:
                complete = False
            else:
                roots.append(cy)
        else:
            complete = False
    return roots, complete


def _sympy_to_cyclo(expr, order: int) -> CycloNumber | None:
    import sympy

    s3 = sympy.sqrt(-3)
    expanded = sympy.expand(expr)
    b2 = sympy.expand(expanded.coeff(s3))
    a = sympy.expand(expanded - b2 * s3)
    if not (a.is_rational and b2.is_rational):
        return None
    af = Fraction(int(sympy.fraction(a)[0]), int(sympy.fraction(a)[1]))
    bf = Fraction(int(sympy.fraction(b2)[0]), int(sympy.fraction(b2)[1]))
    # a + b*sqrt(-3) = (a + b) + 2b*w  when order is 3
    if order == 1:
        if bf != 0:
            return None
        return CycloNumber.from_rational(af, 1)
    return CycloNumber(order, [af + bf, 2 * bf])


def binary_form_roots(
    form: MultiPoly,
    known_candidates: list[ParamPoint] | None = None,
) -> tuple[list[tuple[ParamPoint, int]], bool]:
    """All roots (s : t) of a homogeneous binary form with multiplicities.

    The form's two variables are taken in slot order (vi, vj) and a root
    (s : t) satisfies form(vi = s, vj = t) = 0. Returns (roots, complete);
    `complete` is True exactly when the multiplicities sum to the degree.
    Candidate points are tried first by exact division, so known intersection
    points never depend on the fallback solver.
    """
    if form.is_zero():
        raise ValueError("zero form has no root locus")
    if not form.is_homogeneous():
        raise ValueError("root extraction needs a homogeneous form")
    order = form.order
    vi, vj = binary_vars(form)
    deg = form.total_degree()
    if deg == 0:
        return [], True

    # t^deg * u(s/t) where u has ascending coefficients in s
    alpha = min(e[vi] for e in form.terms)  # multiplicity of root (0 : 1)
    beta = min(e[vj] for e in form.terms)  # multiplicity of root (1 : 0)
    zero = CycloNumber.from_rational(0, order)
    u = [zero] * (deg - alpha - beta + 1)
    for e, c in form.terms.items():
        u[e[vi] - alpha] = u[e[vi] - alpha] + c

    roots: list[tuple[ParamPoint, int]] = []
    if alpha:
        roots.append((ParamPoint(order, 0, 1), alpha))
    if beta:
        roots.append((ParamPoint(order, 1, 0), beta))

    # peel caller-supplied candidates exactly
    seen = {r for r, _ in roots}
    for cand in known_candidates or []:
        if cand.t.is_zero() or cand in seen:
            continue
        val = cand.s  # normalized: t = 1, root of u at s = cand.s
        mult = 0
        while len(u) > 1 and _uni_eval(u, val).is_zero():
            u, rem = _uni_divmod(u, [-val, CycloNumber.from_rational(1, order)])
            assert not _uni_trim(rem)
            mult += 1
        if mult:
            roots.append((cand, mult))
            seen.add(cand)

    complete = True
    if len(u) > 1:
        for sqf, mult in squarefree_decomposition(u):
            vals, comp = _roots_of_squarefree(sqf, order)
            if len(vals) < len(sqf) - 1:
                complete = False
            complete = complete and comp
            for v in vals:
                pt = ParamPoint(order, v, 1)
                if pt in seen:
                    raise AssertionError("duplicate root after peeling")
                roots.append((pt, mult))
                seen.add(pt)

    if sum(m for _, m in roots) != deg:
        complete = False
    # final in-kernel verification of every reported root
    for pt, _ in roots:
        if not form.evaluate(_embed_param(pt, vi, vj, order)).is_zero():
            raise AssertionError("root verification failed")
    return roots, complete


def _embed_param(pt: ParamPoint, vi: int, vj: int, order: int):
    one = CycloNumber.from_rational(1, order)
    coords = [one, one, one]
    coords[vi] = pt.s
    coords[vj] = pt.t
    # the unused slot must not affect evaluation; set it to 1 regardless
    return tuple(coords)


def univariate_roots(
    coeffs: list[CycloNumber],
    order: int,
    candidates: list[CycloNumber] | None = None,
) -> tuple[list[CycloNumber], bool]:
    """Distinct in-field roots of a univariate polynomial (ascending coeffs).

    Candidate values are peeled off first by exact division, so the fallback
    solver only ever sees what the caller could not predict. Returns
    (roots, complete); `complete` means every root over the closure was found
    in the field, counted through the squarefree decomposition.
    """
    u = _uni_trim(list(coeffs))
    if len(u) <= 1:
        raise ValueError("constant polynomial has no root locus")
    inv = u[-1].inverse()
    u = [c * inv for c in u]
    one = CycloNumber.from_rational(1, order)
    found: list[CycloNumber] = []
    for cand in candidates or []:
        if any(cand == f for f in found):
            continue
        peeled = False
        while len(u) > 1 and _uni_eval(u, cand).is_zero():
            u, rem = _uni_divmod(u, [-cand, one])
            assert not _uni_trim(rem)
            peeled = True
        if peeled:
            found.append(cand)
    complete = True
    if len(u) > 1:
        for sqf, _ in squarefree_decomposition(u):
            vals, comp = _roots_of_squarefree(sqf, order)
            if len(vals) < len(sqf) - 1:
                complete = False
            complete = complete and comp
            for v in vals:
                if not any(v == f for f in found):
                    found.append(v)
    return found, complete
