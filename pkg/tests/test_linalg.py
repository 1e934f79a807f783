"""Modular rank/kernel machinery against the exact Bareiss reference."""

import random
from fractions import Fraction

from conicline.cyclotomic import CycloNumber
from conicline.linalg import (
    SparseMatrix,
    PrimeEmbedding,
    is_probable_prime,
    kernel_vector_bareiss,
    kernel_vector_exact,
    multiplication_matrix,
    nullity_is_zero,
    poly_space_basis,
    primes_for_order,
    rank_bareiss,
    rank_modular,
    rational_reconstruct,
)
from conicline.parse import parse_poly


def rand_cyclo(rng: random.Random) -> CycloNumber:
    return CycloNumber(3, [Fraction(rng.randint(-9, 9), rng.randint(1, 4)) for _ in range(2)])


def sparse_from_rows(rows: list[list[CycloNumber]]) -> SparseMatrix:
    cols = [dict() for _ in range(len(rows[0]))]
    for i, row in enumerate(rows):
        for j, v in enumerate(row):
            if not v.is_zero():
                cols[j][i] = v
    return SparseMatrix(len(rows), cols, 3)


def test_primes_for_order():
    ps = primes_for_order(3, 4)
    assert len(ps) == 4 and len(set(ps)) == 4
    for p in ps:
        assert p % 3 == 1 and is_probable_prime(p)
    assert ps == sorted(ps, reverse=True)
    assert primes_for_order(1, 2)[0] != primes_for_order(1, 2)[1]


def test_prime_embedding_roots():
    p = primes_for_order(3, 1)[0]
    emb = PrimeEmbedding(p, 3)
    z1, z2 = emb.roots
    assert pow(z1, 3, p) == 1 and z1 != 1
    assert z2 == z1 * z1 % p
    w = CycloNumber.zeta(3)
    assert emb.residue(w, 0) == z1
    assert emb.residue(w, 1) == z2
    half = CycloNumber.from_rational(Fraction(1, 2), 3)
    assert emb.residue(half) * 2 % p == 1


def test_rank_modular_matches_bareiss_random():
    rng = random.Random(314)
    for _ in range(12):
        n, m = rng.randint(2, 5), rng.randint(2, 5)
        rows = [[rand_cyclo(rng) for _ in range(m)] for _ in range(n)]
        # sprinkle linear dependence: duplicate a row scaled
        if n >= 3 and rng.random() < 0.5:
            s = rand_cyclo(rng)
            rows[-1] = [v * s for v in rows[0]]
        mat = sparse_from_rows(rows)
        assert rank_modular(mat) == rank_bareiss(rows, 3)


def test_nullity_zero_certificate():
    one = CycloNumber.from_rational(1, 3)
    w = CycloNumber.zeta(3)
    rows = [[one, w], [w, one], [one + w, one - w]]
    assert nullity_is_zero(sparse_from_rows(rows))
    rows_dep = [[one, w], [w * 2, w * w * 2], [one * 0, one * 0]]
    assert not nullity_is_zero(sparse_from_rows(rows_dep))


def test_rational_reconstruct():
    ps = primes_for_order(1, 3)
    m = ps[0] * ps[1]
    for num, den in [(3, 7), (-22, 5), (0, 1), (123456, 789)]:
        f = Fraction(num, den)
        r = f.numerator * pow(f.denominator, -1, m) % m
        assert rational_reconstruct(r, m) == f


def test_kernel_exact_vs_bareiss():
    rng = random.Random(2718)
    for _ in range(8):
        n = rng.randint(3, 5)
        # build rank n-1 matrix with known kernel vector k
        k = [rand_cyclo(rng) for _ in range(n)]
        while all(c.is_zero() for c in k):
            k = [rand_cyclo(rng) for _ in range(n)]
        rows = []
        for _ in range(n + 1):
            # rows orthogonal to k: r with sum r_i k_i = 0
            r = [rand_cyclo(rng) for _ in range(n)]
            pivot = next((i for i, c in enumerate(k) if not c.is_zero()))
            s = sum((r[i] * k[i] for i in range(n) if i != pivot), CycloNumber.from_rational(0, 3))
            r[pivot] = -s / k[pivot]
            rows.append(r)
        mat = sparse_from_rows(rows)
        v1 = kernel_vector_exact(mat)
        assert v1 is not None
        assert not mat.apply_exact(v1)
        v2 = kernel_vector_bareiss(mat)
        assert v2 is not None
        assert not mat.apply_exact(v2)


def test_kernel_trivial():
    one = CycloNumber.from_rational(1, 3)
    zero = one * 0
    rows = [[one, zero], [zero, one], [one, one]]
    assert kernel_vector_exact(sparse_from_rows(rows)) is None
    assert kernel_vector_bareiss(sparse_from_rows(rows)) is None


def test_poly_space_basis():
    assert len(poly_space_basis(4)) == 15
    assert poly_space_basis(1) == [(1, 0, 0), (0, 1, 0), (0, 0, 1)]
    assert poly_space_basis(-1) == []
    assert poly_space_basis(0) == [(0, 0, 0)]


def test_multiplication_matrix_rank():
    x = parse_poly("x")
    y = parse_poly("y")
    # ideal (x, y) in degree 2 has dimension 5 out of 6
    mat = multiplication_matrix([x, y], [1, 1], 2, 3)
    assert mat.nrows == 6 and mat.ncols == 6
    assert rank_modular(mat) == 5
    # jacobian ideal of a smooth conic is everything in degree 2
    q = parse_poly("x^2 + y^2 + z^2")
    gens = [q.diff(i) for i in range(3)]
    mat2 = multiplication_matrix(gens, [1, 1, 1], 2, 3)
    assert rank_modular(mat2) == 6
