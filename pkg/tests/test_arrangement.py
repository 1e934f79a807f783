"""Arrangement structure, pencils, symmetry and JSON round-trips."""

import pytest

from conicline.arrangement import (
    Arrangement,
    Component,
    ConicPencilType,
    PencilMember,
    PencilSpec,
    conic_pencil_type,
    group_invariance,
    pencil_membership,
)
from conicline.cyclotomic import CycloNumber
from conicline.multipoly import MultiPoly, ProjPoint
from conicline.parse import parse_poly, parse_scalar


def P(text):
    return parse_poly(text)


def one():
    return CycloNumber.from_rational(1, 3)


def test_component_canonicalization():
    c = Component(P("2*x + 4*y"))
    assert c.poly == P("x + 2*y")
    assert c.degree == 1 and c.mult == 1
    with pytest.raises(ValueError):
        Component(P("x + 1"))
    with pytest.raises(ValueError):
        Component(P("3"))
    with pytest.raises(ValueError):
        Component(P("x"), mult=0)


def test_component_irreducibility():
    assert Component(P("x + y")).is_irreducible()
    assert Component(P("x^2 + y*z")).is_irreducible()
    assert not Component(P("x*y")).is_irreducible()
    assert not Component(P("x^3 + y^3 + z^3")).is_irreducible()
    assert Component(P("x^3 + y^3 + z^3"), irreducible=True).is_irreducible()


def test_arrangement_degrees():
    arr = Arrangement([
        Component(P("x"), mult=2, label="L1"),
        Component(P("x^2 + y*z"), label="C1"),
    ])
    assert arr.degree == 4
    assert arr.reduced_degree == 3
    assert not arr.is_reduced()
    assert arr.f() == P("x^2") * P("x^2 + y*z")
    assert arr.f_red() == P("x") * P("x^2 + y*z")
    red = arr.reduced()
    assert red.is_reduced() and red.degree == 3


def test_duplicate_component_rejected():
    with pytest.raises(ValueError):
        Arrangement([Component(P("x")), Component(P("3*x"))])


def test_json_roundtrip():
    pencil = PencilSpec(
        g1=P("x^2"),
        g2=P("y*z"),
        members=[PencilMember(parse_scalar("1"), parse_scalar("1"))],
    )
    arr = Arrangement(
        [Component(P("x"), label="L"), Component(P("x^2 + y*z"))],
        pencil=pencil,
        known_points=[ProjPoint(3, [0, 1, 0]), ProjPoint(3, [parse_scalar("w"), parse_scalar("1"), parse_scalar("1")])],
        name="demo",
    )
    text = arr.to_json()
    back = Arrangement.from_json(text)
    assert back.name == "demo"
    assert back.f_red() == arr.f_red()
    assert back.known_points == arr.known_points
    assert back.pencil is not None
    assert back.pencil.g1 == pencil.g1 and back.pencil.g2 == pencil.g2
    assert back.to_json() == text


def test_halphen_validation():
    spec = PencilSpec(g1=P("x^2*y^2"), g2=P("(x^2 - y^2)^2"), halphen_k=2, halphen_h=P("x^2 - y^2"))
    spec.validate()
    bad = PencilSpec(g1=P("x^2*y^2"), g2=P("x^4"), halphen_k=2, halphen_h=P("x^2 - y^2"))
    with pytest.raises(ValueError):
        bad.validate()
    with pytest.raises(ValueError):
        PencilSpec(g1=P("x^2"), g2=P("2*x^2")).validate()


def test_structure_kinds():
    m_red = PencilMember(parse_scalar("1"), parse_scalar("0"))
    m_non = PencilMember(parse_scalar("0"), parse_scalar("1"), reduced=False)
    plain = PencilSpec(g1=P("x^2"), g2=P("y^2"), members=[m_red, m_red])
    assert plain.structure() == ("reduced_members", 2, None)
    hal = PencilSpec(g1=P("x^2*y^2"), g2=P("(x^2-y^2)^2"), members=[m_red, m_red, m_red], halphen_k=2, halphen_h=P("x^2 - y^2"))
    assert hal.structure() == ("halphen_reduced", 3, 2)
    hal2 = PencilSpec(g1=P("x^2*y^2"), g2=P("(x^2-y^2)^2"), members=[m_red, m_non], halphen_k=2, halphen_h=P("x^2 - y^2"))
    assert hal2.structure() == ("halphen_nonreduced", 2, 2)
    with pytest.raises(ValueError):
        PencilSpec(g1=P("x^2"), g2=P("y^2"), members=[m_non]).structure()


def test_pencil_membership():
    spec = PencilSpec(g1=P("x^2"), g2=P("y^2"))
    got = pencil_membership(P("x^2 + y^2"), spec)
    assert got is not None and str(got.s) == "1" and str(got.t) == "1"
    got2 = pencil_membership(P("3*x^2 - y^2"), spec)
    assert got2 is not None and str(got2.s) == "-3"
    assert pencil_membership(P("x*y"), spec) is None
    assert pencil_membership(P("x^3"), spec) is None
    got3 = pencil_membership(P("5*y^2"), spec)
    assert got3 is not None and got3.s.is_zero()


def test_group_invariance():
    arr = Arrangement([Component(P("x")), Component(P("y")), Component(P("z"))])
    rot = [[0, 1, 0], [0, 0, 1], [1, 0, 0]]
    w = CycloNumber.zeta(3)
    diag = [[one(), one() * 0, one() * 0], [one() * 0, w, one() * 0], [one() * 0, one() * 0, w * w]]
    assert group_invariance(arr, [rot, diag])
    shear = [[1, 1, 0], [0, 1, 0], [0, 0, 1]]
    assert not group_invariance(arr, [shear])
    with pytest.raises(ValueError):
        group_invariance(arr, [[[1, 0, 0], [0, 1, 0], [1, 1, 0]]])


def test_conic_pencil_types():
    # I: three distinct degenerate members
    t = conic_pencil_type(P("x^2 + y^2"), P("y^2 + z^2"))
    assert t.label == "I" and t.complete and len(t.degenerate_members) == 3
    for _, mult, kind in t.degenerate_members:
        assert mult == 1 and kind == "line_pair"
    # II: double root with a line-pair member
    t2 = conic_pencil_type(P("x*y"), P("(x + y)*(x + z)"))
    assert t2.label == "II" and t2.complete
    # III: double root with a double-line member
    t3 = conic_pencil_type(P("y*z - x^2"), P("y*z"))
    assert t3.label == "III"
    # IV: triple root with a line-pair member
    t4 = conic_pencil_type(P("x*y"), P("y*z + x^2"))
    assert t4.label == "IV"
    # V: triple root with a double-line member
    t5 = conic_pencil_type(P("x^2 + y*z"), P("y^2"))
    assert t5.label == "V"
    # degenerate: common line through the whole pencil
    t6 = conic_pencil_type(P("x*y"), P("x*z"))
    assert t6.label == "degenerate"
    with pytest.raises(ValueError):
        conic_pencil_type(P("x^2"), P("2*x^2"))
    with pytest.raises(ValueError):
        conic_pencil_type(P("x^3"), P("y^2"))
