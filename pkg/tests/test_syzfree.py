"""Syzygies, freeness classification and global Tjurina methods on curves
with textbook-known invariants."""

import pytest

from conicline.arrangement import Arrangement, Component
from conicline.parse import parse_poly
from conicline.singular import singular_locus
from conicline.syzfree import (
    FreenessVerdict,
    classify_freeness,
    euler_chi,
    global_tjurina,
    jacobian_hilbert,
    line_chi_bound_check,
    mdr,
    syzygy_matrix,
)


def arr_of(*texts, mults=None) -> Arrangement:
    mults = mults or [1] * len(texts)
    return Arrangement([Component(parse_poly(t), mult=m) for t, m in zip(texts, mults)])


TRIANGLE = arr_of("x", "y", "z")
SMOOTH_CONIC = arr_of("x^2 + y^2 - z^2")
NODAL_CUBIC = arr_of("y^2*z - x^2*(x + z)")
CUSPIDAL_CUBIC = arr_of("y^2*z - x^3")


def test_mdr_triangle():
    # x * d/dx - y * d/dy kills xyz up to the Euler combination
    assert mdr(TRIANGLE) == 1


def test_mdr_smooth_conic():
    assert mdr(SMOOTH_CONIC) == 1


def test_mdr_nodal_and_cuspidal_cubic():
    assert mdr(NODAL_CUBIC) == 2
    assert mdr(CUSPIDAL_CUBIC) == 1


def test_triangle_is_free():
    v = classify_freeness(TRIANGLE, tau=3)
    assert v.verdict == "free"
    assert v.exponents == (1, 1)
    assert v.tau_max == 3


def test_cuspidal_cubic_is_nearly_free():
    v = classify_freeness(CUSPIDAL_CUBIC, tau=2)
    assert v.verdict == "nearly_free"
    assert v.exponents == (1, 2)


def test_nodal_cubic_is_neither():
    v = classify_freeness(NODAL_CUBIC, tau=1)
    assert v.verdict == "neither"
    assert v.exponents is None


def test_smooth_conic_is_nearly_free():
    # the one smooth curve that is nearly free, with exponents (1, 1)
    v = classify_freeness(SMOOTH_CONIC, tau=0)
    assert v.verdict == "nearly_free"
    assert v.exponents == (1, 1)


def test_jacobian_hilbert_small_degrees():
    # J(xyz) = (yz, xz, xy): nothing in degree 1, all of degree >= 4 eventually
    assert jacobian_hilbert(TRIANGLE, 0) == 1
    assert jacobian_hilbert(TRIANGLE, 1) == 3
    assert jacobian_hilbert(TRIANGLE, 2) == 3
    assert jacobian_hilbert(TRIANGLE, -1) == 0


def test_jacobian_hilbert_stabilizes_at_tau():
    # tau = 1 for the nodal cubic, tau = 2 for the cusp, from degree 3d-5 on
    assert jacobian_hilbert(NODAL_CUBIC, 4) == 1
    assert jacobian_hilbert(NODAL_CUBIC, 5) == 1
    assert jacobian_hilbert(CUSPIDAL_CUBIC, 4) == 2
    assert jacobian_hilbert(CUSPIDAL_CUBIC, 6) == 2


def test_global_tjurina_both_methods_agree():
    for arr, expected in [(TRIANGLE, 3), (NODAL_CUBIC, 1), (CUSPIDAL_CUBIC, 2)]:
        assert global_tjurina(arr, "hilbert_stable") == expected
        assert global_tjurina(arr, "local_sum") == expected


def test_global_tjurina_guard():
    # degree 3 curve with an absurdly low guard
    with pytest.raises(ValueError):
        global_tjurina(NODAL_CUBIC, "hilbert_stable", degree_guard=2)
    assert global_tjurina(NODAL_CUBIC, "hilbert_stable", degree_guard=2, force=True) == 1


def test_global_tjurina_refuses_uncertified_report():
    arr = arr_of("x^2 + y^2 - z^2", "x^2 + y^2 - 2*z^2")
    rep = singular_locus(arr)
    assert not rep.complete
    with pytest.raises(ValueError):
        global_tjurina(arr, "local_sum", report=rep)


def test_syzygy_matrix_shape():
    mat = syzygy_matrix(TRIANGLE, 1)
    # degree-1 coefficient triples into the degree-3 piece
    assert mat.nrows == 10 and mat.ncols == 9


def test_euler_chi_known_values():
    # complement of a smooth conic: chi(P^2) - chi(conic) = 3 - 2
    assert euler_chi(SMOOTH_CONIC, 0) == 1
    # nodal cubic has chi 1, cuspidal has chi 2
    assert euler_chi(NODAL_CUBIC, 1) == 2
    assert euler_chi(CUSPIDAL_CUBIC, 2) == 1
    # triangle complement is a torus
    assert euler_chi(TRIANGLE, 3) == 0


def test_line_chi_bound():
    # generic five lines: only nodes, the bound applies and holds
    five = arr_of("x", "y", "z", "x + y + z", "x + 2*y + 3*z")
    rep = singular_locus(five)
    assert rep.complete
    applicable, holds = line_chi_bound_check(five, rep)
    assert applicable and holds
    # a near-pencil has a point of multiplicity d - 1: not applicable
    near = arr_of("x", "y", "x + y", "x - y", "z")
    rep2 = singular_locus(near)
    applicable2, holds2 = line_chi_bound_check(near, rep2)
    assert not applicable2 and holds2
    # degree under five: not applicable
    applicable3, _ = line_chi_bound_check(TRIANGLE, singular_locus(TRIANGLE))
    assert not applicable3
