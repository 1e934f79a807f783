"""Polynomial ring operations, resultants, binary gcds and conic splitting."""

import random
from fractions import Fraction

import pytest

from conicline.cyclotomic import CycloNumber
from conicline.multipoly import (
    MultiPoly,
    ProjPoint,
    binary_gcd,
    binary_is_squarefree,
    conic_classify,
    conic_split,
    cross3,
    det3,
    inv3,
    resultant,
)
from conicline.parse import parse_poly


def P(text: str, order: int = 3) -> MultiPoly:
    return parse_poly(text, order)


def rand_poly(rng: random.Random, deg: int, order: int = 3) -> MultiPoly:
    terms = {}
    for _ in range(rng.randint(1, 8)):
        e = [rng.randint(0, deg) for _ in range(3)]
        num = rng.randint(-5, 5)
        if num == 0:
            num = 1
        terms[tuple(e)] = CycloNumber(order, [Fraction(num), Fraction(rng.randint(-3, 3))])
    return MultiPoly(order, terms)


def test_ring_axioms_random():
    rng = random.Random(41)
    for _ in range(30):
        a = rand_poly(rng, 3)
        b = rand_poly(rng, 3)
        c = rand_poly(rng, 3)
        assert (a + b) * c == a * c + b * c
        assert a * b == b * a
        assert (a - b) + b == a


def test_degrees_and_parts():
    p = P("x^2*y + z^3 + 2*x")
    assert p.total_degree() == 3
    assert p.min_degree() == 1
    assert not p.is_homogeneous()
    assert p.homogeneous_part(3) == P("x^2*y + z^3")
    assert P("x^2 + y*z").is_homogeneous()


def test_leibniz_and_euler_random():
    rng = random.Random(42)
    for _ in range(20):
        a = rand_poly(rng, 3)
        b = rand_poly(rng, 3)
        for v in range(3):
            assert (a * b).diff(v) == a.diff(v) * b + a * b.diff(v)
    # Euler: sum x_i * d_i f == deg(f) * f for homogeneous f
    for _ in range(20):
        d = rng.randint(1, 5)
        f = rand_poly(rng, d).homogeneous_part(d)
        if f.is_zero():
            continue
        euler = sum(
            (MultiPoly.variable("xyz"[i]) * f.diff(i) for i in range(3)),
            MultiPoly.zero(),
        )
        assert euler == f * d


def test_evaluate():
    p = P("x^2 + w*y*z")
    w = CycloNumber.zeta(3)
    one = CycloNumber.from_rational(1)
    val = p.evaluate((w, one, one))
    assert val == w * w + w  # = -1
    assert val == CycloNumber.from_rational(-1)


def test_substitute_all_quadratic_monomials():
    h = P("x^3 + y^3")
    out = h.substitute_all([P("y*z"), P("x*z"), P("x*y")])
    assert out == P("y^3*z^3 + x^3*z^3")


def test_substitute_linear_composes():
    p = P("x^2 - y*z + 3*z^2")
    m1 = [[1, 1, 0], [0, 1, 0], [0, 2, 1]]
    m2 = [[0, 1, 0], [1, 0, 0], [0, 0, 1]]
    both = [[sum(m1[i][k] * m2[k][j] for k in range(3)) for j in range(3)] for i in range(3)]
    assert p.substitute_linear(m1).substitute_linear(m2) == p.substitute_linear(both)


def test_localize_at_charts():
    f = P("x^2*z - y^3")
    # chart z = 1 at (1 : 1 : 1): u = x - 1, v = y - 1
    pt = ProjPoint(3, [1, 1, 1])
    loc = f.localize_at(pt)
    assert loc == P("(1+x)^2 - (1+y)^3")
    assert loc.coefficient((0, 0, 0)).is_zero()  # the point is on the curve
    # chart y = 1 at (2 : 1 : 0): local coords (u, v) = (x - 2, z)
    pt3 = ProjPoint(3, [2, 1, 0])
    assert f.localize_at(pt3) == P("(2+x)^2*y - 1")


def test_localize_chart_x_simple():
    f = P("x^2*z - y^3")
    pt = ProjPoint(3, [1, 0, 0])
    # f(1, u, v) = v - u^3 with (u, v) in the (x, y) slots
    assert f.localize_at(pt) == P("y - x^3")


def test_exact_div_and_errors():
    a = P("x^2 - y^2")
    b = P("x - y")
    assert a.exact_div(b) == P("x + y")
    with pytest.raises(ValueError):
        P("x^2 + y^2").exact_div(b)


def test_monic_and_proportionality():
    p = P("2*x^2 + 4*y*z")
    assert p.monic() == P("x^2 + 2*y*z")
    s = P("3*x^2 + 6*y*z").proportionality(p)
    assert s == CycloNumber.from_rational(Fraction(3, 2))
    assert P("3*x^2 + 5*y*z").proportionality(p) is None


def test_proj_point_normalization():
    p = ProjPoint(3, [2, 4, 2])
    assert p == ProjPoint(3, [1, 2, 1])
    assert p.coords[2] == CycloNumber.from_rational(1)
    q = ProjPoint(3, [3, 0, 0])
    assert q.coords == (CycloNumber.from_rational(1), CycloNumber.from_rational(0), CycloNumber.from_rational(0))
    with pytest.raises(ValueError):
        ProjPoint(3, [0, 0, 0])


def test_resultant_univariate_case():
    # Res_x(x^2 - y^2, x - 2*y) = (2y)^2 - y^2 = 3y^2
    r = resultant(P("x^2 - y^2"), P("x - 2*y"), "x")
    assert r.proportionality(P("y^2")) == CycloNumber.from_rational(3)


def test_resultant_common_root_vanishes():
    r = resultant(P("x^2 - y^2"), P("x - y"), "x")
    assert r.is_zero()


def test_resultant_vs_product_formula():
    # Res_x(prod (x - a_i y), g) = prod g(a_i y, y, z) for monic-in-x first input
    rng = random.Random(17)
    for _ in range(10):
        roots = [rng.randint(-4, 4) for _ in range(2)]
        f = P("1")
        for a in roots:
            f = f * (P("x") - P("y") * a)
        g = rand_poly(rng, 2)
        if g.degree_in(0) <= 0:
            continue
        r = resultant(f, g, 0)
        expected = MultiPoly.constant(1)
        for a in roots:
            expected = expected * g.substitute_all([P("y") * a, P("y"), P("z")])
        assert r == expected


def test_resultant_degree_zero_convention():
    f = P("y^2 + z^2")  # degree 0 in x
    g = P("x^3 - z^3")
    assert resultant(f, g, "x") == f ** 3
    with pytest.raises(ValueError):
        resultant(P("y"), P("z"), "x")


def test_binary_gcd():
    a = P("x^2 - y^2") * P("x - y")
    b = P("x^2 - y^2") * P("x + 2*y")
    g = binary_gcd(a, b)
    assert g == P("x^2 - y^2").monic()
    assert binary_gcd(P("x^3"), P("x*y")) == P("x")
    assert binary_gcd(P("y^2 + z^2"), P("y - z")).total_degree() == 0


def test_binary_squarefree():
    assert binary_is_squarefree(P("x*y*(x - y)"))
    assert not binary_is_squarefree(P("x^2*y"))
    assert binary_is_squarefree(P("x^2 + y^2"))
    assert not binary_is_squarefree(P("(x + y)^2"))


def test_det3_inv3_cross3():
    one = CycloNumber.from_rational(1)
    w = CycloNumber.zeta(3)
    m = [[one, w, one * 0], [one * 0, one, w], [w, one * 0, one]]
    d = det3(m)
    assert d == one + w ** 3  # 1 + w*w*w = 2
    inv = inv3(m)
    prod_diag = [
        sum((m[i][k] * inv[k][j] for k in range(3)), one * 0)
        for i in range(3)
        for j in range(3)
    ]
    expect = [one if i == j else one * 0 for i in range(3) for j in range(3)]
    assert prod_diag == expect
    p = (one, one * 0, one * 0)
    q = (one * 0, one, one * 0)
    assert cross3(p, q) == (one * 0, one * 0, one)


def test_conic_classify():
    assert conic_classify(P("x^2 + y*z")) == "smooth"
    assert conic_classify(P("x^2 - y^2")) == "line_pair"
    assert conic_classify(P("x*y")) == "line_pair"
    assert conic_classify(P("(x + 2*y - z)^2")) == "double_line"
    with pytest.raises(ValueError):
        conic_classify(P("x^3"))
    with pytest.raises(ValueError):
        conic_classify(P("x^2 + y"))


def test_conic_split_cases():
    l1, l2 = conic_split(P("x^2 - y^2"))
    assert {str(l1), str(l2)} == {"x + y", "x - y"}
    l1, l2 = conic_split(P("x*y"))
    assert {str(l1), str(l2)} == {"x", "y"}
    l1, l2 = conic_split(P("(x + 2*y - z)^2"))
    assert l1 == l2 == P("x + 2*y - z")
    # splits only over Q(sqrt(-1)), which is not inside Q(w)
    with pytest.raises(ValueError):
        conic_split(P("x^2 + y^2"))
    # x^2 + x*y + y^2 = (x - w*y)(x - w^2*y) splits over Q(w)
    l1, l2 = conic_split(P("x^2 + x*y + y^2"))
    assert (l1 * l2).proportionality(P("x^2 + x*y + y^2")) is not None
    with pytest.raises(ValueError):
        conic_split(P("x^2 + y*z"))


def test_conic_split_random_pairs():
    rng = random.Random(5)
    for _ in range(20):
        a = [rng.randint(-3, 3) for _ in range(3)]
        b = [rng.randint(-3, 3) for _ in range(3)]
        ln1 = MultiPoly(3, {(1, 0, 0): CycloNumber.from_rational(a[0]), (0, 1, 0): CycloNumber.from_rational(a[1]), (0, 0, 1): CycloNumber.from_rational(a[2])})
        ln2 = MultiPoly(3, {(1, 0, 0): CycloNumber.from_rational(b[0]), (0, 1, 0): CycloNumber.from_rational(b[1]), (0, 0, 1): CycloNumber.from_rational(b[2])})
        if ln1.is_zero() or ln2.is_zero():
            continue
        q = ln1 * ln2
        kind = conic_classify(q)
        assert kind in ("line_pair", "double_line")
        g1, g2 = conic_split(q)
        assert (g1 * g2).proportionality(q) is not None


def test_str_canonical_and_roundtrip():
    p = P("y*x + z^2*3 - x^2")
    assert str(p) == "-x^2 + x*y + 3*z^2"
    assert parse_poly(str(p)) == p
    rng = random.Random(11)
    for _ in range(25):
        q = rand_poly(rng, 4)
        assert parse_poly(str(q)) == q
