"""Linear algebra over the cyclotomic field: modular ranks and exact kernels.

Ranks of the large multiplication matrices are computed mod word-sized primes
p = 1 (mod n), where the cyclotomic polynomial splits completely, so a field
element maps to an integer residue per root. Facts used for rigor:

  * rank mod p <= rank over the field, always. So a nullity of 0 mod a single
    prime proves exact nullity 0, and the max of ranks over several primes is
    a certified lower bound on the exact rank.
  * candidate kernel vectors are lifted by CRT and rational reconstruction and
    then verified exactly; only verified vectors are ever returned.

A fraction-free (Bareiss) elimination over the field is kept as an exact
reference implementation and as a fallback for small kernels.
"""

from __future__ import annotations

import math
from fractions import Fraction

import numpy as np

from .cyclotomic import CycloNumber, cyclotomic_polynomial, euler_phi
from .multipoly import MultiPoly

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


class BadPrime(Exception):
    """The prime hit a denominator or root degeneracy; use another."""


def is_probable_prime(n: int) -> bool:
    """Deterministic Miller-Rabin for n below 3.3e24."""
    if n < 2:
        return False
    for q in _MR_BASES:
        if n % q == 0:
            return n == q
    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


_PRIME_CACHE: dict[int, list[int]] = {}

# descending from here keeps p^2 comfortably inside int64 during elimination
_PRIME_START = 1_500_000_000


def primes_for_order(order: int, count: int) -> list[int]:
    """The largest `count` primes p = 1 (mod order) below the working bound."""
    cache = _PRIME_CACHE.setdefault(order, [])
    p = (cache[-1] if cache else _PRIME_START)
    while len(cache) < count:
        p -= 1
        if p % order == 1 % order and is_probable_prime(p):
            cache.append(p)
    return cache[:count]


def _prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


class PrimeEmbedding:
    """All phi(n) embeddings of Q(zeta_n) into F_p for one prime p = 1 (mod n)."""

    __slots__ = ("p", "order", "roots")

    def __init__(self, p: int, order: int) -> None:
        self.p = p
        self.order = order
        if order == 1:
            self.roots = [1]
            return
        primitive = None
        factors = _prime_factors(order)
        for g in range(2, 200):
            z = pow(g, (p - 1) // order, p)
            if z != 1 and all(pow(z, order // q, p) != 1 for q in factors):
                primitive = z
                break
        if primitive is None:
            raise BadPrime(f"no order-{order} element found mod {p}")
        # roots of the cyclotomic polynomial: primitive powers z^k, gcd(k, n) = 1
        self.roots = [pow(primitive, k, p) for k in range(1, order + 1) if math.gcd(k, order) == 1]
        phi = cyclotomic_polynomial(order)
        for r in self.roots:
            assert sum(c * pow(r, i, p) for i, c in enumerate(phi)) % p == 0

    def residue(self, value: CycloNumber, root_index: int = 0) -> int:
        """The image of a field element under one embedding."""
        if value.order != self.order:
            raise ValueError("mixed cyclotomic orders")
        p = self.p
        z = self.roots[root_index]
        total = 0
        zp = 1
        for c in value.coeffs:
            den = c.denominator % p
            if den == 0:
                raise BadPrime(f"denominator divisible by {p}")
            total = (total + c.numerator * pow(den, p - 2, p) * zp) % p
            zp = zp * z % p
        return total


class SparseMatrix:
    """Column-sparse matrix over the field: cols[j] maps row index to entry."""

    __slots__ = ("nrows", "cols", "order")

    def __init__(self, nrows: int, cols: list[dict[int, CycloNumber]], order: int) -> None:
        self.nrows = nrows
        self.cols = cols
        self.order = order

    @property
    def ncols(self) -> int:
        return len(self.cols)

    def to_dense_mod(self, emb: PrimeEmbedding, root_index: int = 0) -> np.ndarray:
        a = np.zeros((self.nrows, self.ncols), dtype=np.int64)
        cache: dict[CycloNumber, int] = {}
        for j, col in enumerate(self.cols):
            for i, v in col.items():
                r = cache.get(v)
                if r is None:
                    r = emb.residue(v, root_index)
                    cache[v] = r
                a[i, j] = r
        return a

    def to_dense_exact(self) -> list[list[CycloNumber]]:
        zero = CycloNumber.from_rational(0, self.order)
        rows = [[zero] * self.ncols for _ in range(self.nrows)]
        for j, col in enumerate(self.cols):
            for i, v in col.items():
                rows[i][j] = v
        return rows

    def apply_exact(self, vec: list[CycloNumber]) -> dict[int, CycloNumber]:
        """Matrix * vector over the field, as a sparse row dict (zeros dropped)."""
        acc: dict[int, CycloNumber] = {}
        for j, col in enumerate(self.cols):
            v = vec[j]
            if v.is_zero():
                continue
            for i, c in col.items():
                s = acc.get(i)
                t = c * v if s is None else s + c * v
                acc[i] = t
        return {i: v for i, v in acc.items() if not v.is_zero()}


def _rank_dense_mod(a: np.ndarray, p: int) -> int:
    rows, cols = a.shape
    r = 0
    for c in range(cols):
        if r == rows:
            break
        col = a[r:, c]
        nz = np.nonzero(col)[0]
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            a[[r, piv]] = a[[piv, r]]
        inv = pow(int(a[r, c]), p - 2, p)
        below = a[r + 1:, c]
        nzb = np.nonzero(below)[0]
        if nzb.size:
            factors = below[nzb] * inv % p
            a[r + 1 + nzb] = (a[r + 1 + nzb] - factors[:, None] * a[r][None, :]) % p
        r += 1
    return r


def _rref_dense_mod(a: np.ndarray, p: int) -> list[int]:
    """In-place reduced row echelon form; returns the pivot column list."""
    rows, cols = a.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        col = a[r:, c]
        nz = np.nonzero(col)[0]
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            a[[r, piv]] = a[[piv, r]]
        inv = pow(int(a[r, c]), p - 2, p)
        a[r] = a[r] * inv % p
        other = np.nonzero(a[:, c])[0]
        other = other[other != r]
        if other.size:
            a[other] = (a[other] - a[other, c][:, None] * a[r][None, :]) % p
        pivots.append(c)
        r += 1
    return pivots


def rank_modular(mat: SparseMatrix, primes: int = 2) -> int:
    """Max rank over several primes: a certified lower bound for the exact
    rank, equal to it unless every sampled prime is unlucky."""
    best = 0
    tried = 0
    idx = 0
    while tried < primes:
        p = primes_for_order(mat.order, idx + 1)[idx]
        idx += 1
        try:
            emb = PrimeEmbedding(p, mat.order)
            a = mat.to_dense_mod(emb, 0)
        except BadPrime:
            continue
        best = max(best, _rank_dense_mod(a, p))
        tried += 1
        if best == min(mat.nrows, mat.ncols):
            break  # full rank is already exact
    return best


def nullity_is_zero(mat: SparseMatrix) -> bool:
    """True means certified: full column rank mod one prime is exact."""
    if mat.ncols > mat.nrows:
        return False
    idx = 0
    while True:
        p = primes_for_order(mat.order, idx + 1)[idx]
        idx += 1
        try:
            emb = PrimeEmbedding(p, mat.order)
            a = mat.to_dense_mod(emb, 0)
        except BadPrime:
            continue
        return _rank_dense_mod(a, p) == mat.ncols


def _crt_pair(r1: int, m1: int, r2: int, m2: int) -> tuple[int, int]:
    inv = pow(m1, -1, m2)
    m = m1 * m2
    x = (r1 + (r2 - r1) * inv % m2 * m1) % m
    return x, m


def rational_reconstruct(r: int, m: int) -> Fraction | None:
    """Wang-style reconstruction of p/q from r mod m with p, q <= sqrt(m/2)."""
    a0, a1 = m, r % m
    t0, t1 = 0, 1
    bound = math.isqrt(m // 2)
    while a1 > bound:
        q = a0 // a1
        a0, a1 = a1, a0 - q * a1
        t0, t1 = t1, t0 - q * t1
    if t1 == 0 or abs(t1) > bound:
        return None
    if t1 < 0:
        a1, t1 = -a1, -t1
    if math.gcd(abs(a1), t1) != 1:
        return None
    if (a1 - r * t1) % m != 0:
        return None
    return Fraction(a1, t1)


def _kernel_columns_mod(mat: SparseMatrix, emb: PrimeEmbedding):
    """RREF kernel basis vector (for the first free column) per embedding root.

    Returns ("full", None) when the matrix has full column rank mod p (which
    certifies a trivial exact kernel), ("mismatch", None) when the embedding
    roots disagree on pivot structure (unlucky prime), or
    ("ok", (pivot columns, [vector per root])).
    """
    phi = len(emb.roots)
    vectors = []
    pivots_ref: list[int] | None = None
    first_free: int | None = None
    for root_index in range(phi):
        a = mat.to_dense_mod(emb, root_index)
        pivots = _rref_dense_mod(a, emb.p)
        if len(pivots) == mat.ncols:
            return ("full", None)
        if pivots_ref is None:
            pivots_ref = pivots
            pivot_set = set(pivots)
            first_free = next(c for c in range(mat.ncols) if c not in pivot_set)
        elif pivots != pivots_ref:
            return ("mismatch", None)
        v = np.zeros(mat.ncols, dtype=np.int64)
        v[first_free] = 1
        for row, pc in enumerate(pivots_ref):
            v[pc] = (-int(a[row, first_free])) % emb.p
        vectors.append(v)
    assert pivots_ref is not None
    return ("ok", (pivots_ref, vectors))


def kernel_vector_exact(mat: SparseMatrix, max_primes: int = 10) -> list[CycloNumber] | None:
    """A verified exact kernel vector, or None if the kernel is (certifiably
    or apparently) trivial. Lifts the canonical RREF kernel vector through
    CRT and rational reconstruction, then checks mat * v == 0 exactly."""
    order = mat.order
    phi = euler_phi(order)
    per_coord: list[tuple[int, ...]] | None = None  # CRT residues per coord per basis coeff
    modulus = 0
    pivots_ref: list[int] | None = None
    used = 0
    idx = 0
    while used < max_primes:
        plist = primes_for_order(order, idx + 1)
        p = plist[idx]
        idx += 1
        try:
            emb = PrimeEmbedding(p, order)
            status, payload = _kernel_columns_mod(mat, emb)
        except BadPrime:
            continue
        if status == "full":
            # full column rank mod one prime certifies a trivial kernel
            return None
        if status == "mismatch":
            continue
        pivots, vectors = payload
        if pivots_ref is None:
            pivots_ref = pivots
        elif pivots != pivots_ref:
            continue
        # solve for power-basis coefficients through the Vandermonde of roots
        V = [[pow(z, j, p) for j in range(phi)] for z in emb.roots]
        Vinv = _invert_mod(V, p)
        coords: list[tuple[int, ...]] = []
        for i in range(mat.ncols):
            vals = [int(vec[i]) for vec in vectors]
            coeffs = tuple(sum(Vinv[j][k] * vals[k] for k in range(phi)) % p for j in range(phi))
            coords.append(coeffs)
        if used == 0:
            per_coord = coords
            modulus = p
        else:
            assert per_coord is not None
            merged = []
            for old, new in zip(per_coord, coords):
                merged.append(tuple(_crt_pair(o, modulus, n, p)[0] for o, n in zip(old, new)))
            per_coord = merged
            modulus *= p
        used += 1
        if used < 2:
            continue
        candidate = _reconstruct_vector(per_coord, modulus, order)
        if candidate is not None and not all(c.is_zero() for c in candidate):
            if not mat.apply_exact(candidate):
                return candidate
    return None


def _reconstruct_vector(per_coord, modulus, order) -> list[CycloNumber] | None:
    out = []
    for coeffs in per_coord:
        fracs = []
        for r in coeffs:
            f = rational_reconstruct(r, modulus)
            if f is None:
                return None
            fracs.append(f)
        out.append(CycloNumber(order, fracs))
    return out


def _invert_mod(m: list[list[int]], p: int) -> list[list[int]]:
    n = len(m)
    a = [[m[i][j] % p for j in range(n)] + [1 if k == i else 0 for k in range(n)] for i in range(n)]
    for c in range(n):
        piv = next(r for r in range(c, n) if a[r][c] % p)
        a[c], a[piv] = a[piv], a[c]
        inv = pow(a[c][c], p - 2, p)
        a[c] = [x * inv % p for x in a[c]]
        for r in range(n):
            if r != c and a[r][c]:
                f = a[r][c]
                a[r] = [(x - f * y) % p for x, y in zip(a[r], a[c])]
    return [row[n:] for row in a]


# -- exact reference elimination ----------------------------------------------------------


def _clear_row_denominators(row: list[CycloNumber]) -> list[CycloNumber]:
    lcm = 1
    for c in row:
        for q in c.coeffs:
            lcm = lcm * q.denominator // math.gcd(lcm, q.denominator)
    if lcm == 1:
        return row
    return [c * lcm for c in row]


def bareiss_echelon(rows: list[list[CycloNumber]], order: int) -> tuple[list[list[CycloNumber]], list[int]]:
    """Fraction-free row echelon form; returns (echelon rows, pivot columns).

    Entries stay integral (minors of the denominator-cleared input), which
    keeps coefficient growth polynomial. Exact; used as the reference for the
    modular code and as a small-size fallback.
    """
    m = [_clear_row_denominators(list(r)) for r in rows]
    nrows = len(m)
    ncols = len(m[0]) if nrows else 0
    one = CycloNumber.from_rational(1, order)
    prev = one
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        piv = next((i for i in range(r, nrows) if not m[i][c].is_zero()), None)
        if piv is None:
            continue
        if piv != r:
            m[r], m[piv] = m[piv], m[r]
        for i in range(r + 1, nrows):
            for j in range(c + 1, ncols):
                m[i][j] = (m[i][j] * m[r][c] - m[i][c] * m[r][j]) / prev
            m[i][c] = one * 0
        prev = m[r][c]
        pivots.append(c)
        r += 1
    return m, pivots


def rank_bareiss(rows: list[list[CycloNumber]], order: int) -> int:
    _, pivots = bareiss_echelon(rows, order)
    return len(pivots)


def kernel_vector_bareiss(mat: SparseMatrix) -> list[CycloNumber] | None:
    """Exact kernel vector by back substitution from the Bareiss echelon."""
    rows = mat.to_dense_exact()
    if not rows:
        one = CycloNumber.from_rational(1, mat.order)
        return [one] + [one * 0] * (mat.ncols - 1) if mat.ncols else None
    ech, pivots = bareiss_echelon(rows, mat.order)
    if len(pivots) == mat.ncols:
        return None
    pivot_set = set(pivots)
    free = next(c for c in range(mat.ncols) if c not in pivot_set)
    zero = CycloNumber.from_rational(0, mat.order)
    v = [zero] * mat.ncols
    v[free] = CycloNumber.from_rational(1, mat.order)
    for row_idx in range(len(pivots) - 1, -1, -1):
        pc = pivots[row_idx]
        row = ech[row_idx]
        s = zero
        for j in range(pc + 1, mat.ncols):
            if not v[j].is_zero() and not row[j].is_zero():
                s = s + row[j] * v[j]
        v[pc] = -s / row[pc]
    assert not mat.apply_exact(v)
    return v


def _rref_all_roots(mat: SparseMatrix, emb: PrimeEmbedding):
    """RREF of the matrix under every embedding root; None on pivot mismatch."""
    mats = []
    pivots: list[int] | None = None
    for root_index in range(len(emb.roots)):
        a = mat.to_dense_mod(emb, root_index)
        piv = _rref_dense_mod(a, emb.p)
        if pivots is None:
            pivots = piv
        elif piv != pivots:
            return None
        mats.append(a)
    assert pivots is not None
    return pivots, mats


def _verify_column_dependencies(
    mat: SparseMatrix,
    pivots: list[int],
    nonpivots: list[int],
    coeff: dict[tuple[int, int], CycloNumber],
) -> bool:
    zero = CycloNumber.from_rational(0, mat.order)
    for c in nonpivots:
        acc: dict[int, CycloNumber] = dict(mat.cols[c])
        for i, pc in enumerate(pivots):
            w = coeff[(c, i)]
            if w.is_zero():
                continue
            for r, v in mat.cols[pc].items():
                acc[r] = acc.get(r, zero) - w * v
        if any(not v.is_zero() for v in acc.values()):
            return False
    return True


def rank_certified(mat: SparseMatrix, max_primes: int = 8) -> int:
    """Exact rank with a proof. The modular rank is always a lower bound for
    the exact rank; the matching upper bound comes from verifying, over the
    ground field, the reconstructed expansion of every non-pivot column in
    the pivot columns. Full row or column rank mod a single prime is already
    exact and short-circuits."""
    if mat.ncols == 0 or mat.nrows == 0:
        return 0
    order = mat.order
    phi = euler_phi(order)
    accum: dict[tuple[int, int], tuple[int, ...]] | None = None
    modulus = 0
    pivots_ref: list[int] | None = None
    nonpivots: list[int] = []
    used = 0
    idx = 0
    while used < max_primes:
        p = primes_for_order(order, idx + 1)[idx]
        idx += 1
        try:
            emb = PrimeEmbedding(p, order)
            rref = _rref_all_roots(mat, emb)
        except BadPrime:
            continue
        if rref is None:
            continue
        pivots, mats = rref
        if len(pivots) == mat.ncols or len(pivots) == mat.nrows:
            return len(pivots)
        if pivots_ref is None or len(pivots) > len(pivots_ref):
            # a larger modular rank is a strictly better lower bound; restart on it
            pivots_ref = pivots
            pivot_set = set(pivots)
            nonpivots = [c for c in range(mat.ncols) if c not in pivot_set]
            accum = None
            modulus = 0
            used = 0
        elif pivots != pivots_ref:
            continue
        V = [[pow(z, j, p) for j in range(phi)] for z in emb.roots]
        Vinv = _invert_mod(V, p)
        coords: dict[tuple[int, int], tuple[int, ...]] = {}
        for c in nonpivots:
            for i in range(len(pivots_ref)):
                vals = [int(m[i, c]) for m in mats]
                coords[(c, i)] = tuple(
                    sum(Vinv[j][k] * vals[k] for k in range(phi)) % p for j in range(phi)
                )
        if accum is None:
            accum = coords
            modulus = p
        else:
            accum = {
                key: tuple(_crt_pair(o, modulus, n, p)[0] for o, n in zip(accum[key], coords[key]))
                for key in accum
            }
            modulus *= p
        used += 1
        coeff: dict[tuple[int, int], CycloNumber] = {}
        ok = True
        for key, residues in accum.items():
            fracs = []
            for r in residues:
                f = rational_reconstruct(r, modulus)
                if f is None:
                    ok = False
                    break
                fracs.append(f)
            if not ok:
                break
            coeff[key] = CycloNumber(order, fracs)
        if ok and _verify_column_dependencies(mat, pivots_ref, nonpivots, coeff):
            return len(pivots_ref)
    raise ArithmeticError("rank certification failed after exhausting the prime escalation budget")


def poly_space_basis(degree: int) -> list[tuple[int, int, int]]:
    """Monomial exponents of the degree-d graded piece, in graded-lex order."""
    if degree < 0:
        return []
    out = []
    for i in range(degree, -1, -1):
        for j in range(degree - i, -1, -1):
            out.append((i, j, degree - i - j))
    return out


def multiplication_matrix(gens: list[MultiPoly], gen_degrees: list[int], target_degree: int, order: int) -> SparseMatrix:
    """Columns are monomial multiples of the generators, rows the monomials of
    the target graded piece; the matrix of (a_1..a_k) -> sum a_i g_i."""
    row_basis = poly_space_basis(target_degree)
    row_index = {e: i for i, e in enumerate(row_basis)}
    cols: list[dict[int, CycloNumber]] = []
    for g, dg in zip(gens, gen_degrees):
        mul_degree = target_degree - dg
        for m in poly_space_basis(mul_degree):
            col: dict[int, CycloNumber] = {}
            for e, c in g.terms.items():
                shifted = (e[0] + m[0], e[1] + m[1], e[2] + m[2])
                col[row_index[shifted]] = c
            cols.append(col)
    return SparseMatrix(len(row_basis), cols, order)
