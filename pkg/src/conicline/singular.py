"""Local singularity invariants and certified singular-locus assembly.

Local Milnor and Tjurina numbers are dimensions of truncated local quotients,
stabilized in the truncation order and re-proved by certified exact ranks.
Completeness of the assembled locus is certified globally by one of three
independent arguments (free signature match, pairwise intersection counts,
stable Jacobian quotient dimension) rather than trusted from root discovery.
"""

from __future__ import annotations

from dataclasses import dataclass

from .arrangement import Arrangement
from .cyclotomic import CycloNumber
from .linalg import SparseMatrix, multiplication_matrix, rank_certified, rank_modular
from .multipoly import (
    MultiPoly,
    ProjPoint,
    _kernel_vector3,
    binary_is_squarefree,
    conic_classify,
    conic_matrix,
    resultant,
    uni_gcd,
)
from .roots import ParamPoint, binary_form_roots, univariate_roots


class NonIsolatedError(ValueError):
    """Raised when a local quotient dimension fails to stabilize, which means
    the singular point is non-isolated (or the input was not reduced)."""


@dataclass(frozen=True)
class LocalSingularity:
    point: ProjPoint
    local_eq: MultiPoly
    mult: int
    mu: int
    tau: int
    ordinary: bool
    type_tag: str
    on_components: tuple[int, ...]

    @property
    def quasi_homogeneous(self) -> bool:
        return self.mu == self.tau


@dataclass(frozen=True)
class SingularLocusReport:
    singularities: tuple[LocalSingularity, ...]
    total_mu: int
    total_tau: int
    complete: bool
    certification: str
    mdr: int | None = None

    def __iter__(self):
        return iter(self.singularities)

    def __len__(self) -> int:
        return len(self.singularities)


# -- truncated local quotients -----------------------------------------------------------


def _local_basis(n: int) -> list[tuple[int, int]]:
    """Exponent pairs of the local monomials of degree below n, graded."""
    return [(t - i, i) for t in range(n) for i in range(t + 1)]


def _truncated_matrix(gens: list[MultiPoly], n: int, order: int) -> SparseMatrix:
    """Matrix whose column space is the degree-truncated ideal of the
    generators inside the span of local monomials of degree below n."""
    rows = _local_basis(n)
    index = {e: i for i, e in enumerate(rows)}
    cols: list[dict[int, CycloNumber]] = []
    for g in gens:
        if g.is_zero():
            continue
        dmin = g.min_degree()
        for a, b in _local_basis(max(n - dmin, 0)):
            col: dict[int, CycloNumber] = {}
            for e, c in g.terms.items():
                if e[2] != 0:
                    raise ValueError("local equation must live in the two chart variables")
                i, j = e[0] + a, e[1] + b
                if i + j < n:
                    col[index[(i, j)]] = c
            if col:
                cols.append(col)
    return SparseMatrix(len(rows), cols, order)


def stable_local_dim(gens: list[MultiPoly], order: int, cap: int) -> int:
    """Dimension of the local quotient by the generator ideal.

    Truncated dimensions are scanned modulo a prime until two consecutive
    truncation orders agree, then both are re-proved exactly (equality of two
    consecutive values is a proof of stabilization by Nakayama). Scanning is
    capped at the given truncation order; hitting the cap means the quotient
    is not finite-dimensional below it.
    """
    scanned: dict[int, int] = {}

    def scan(n: int) -> int:
        if n not in scanned:
            mat = _truncated_matrix(gens, n, order)
            scanned[n] = mat.nrows - rank_modular(mat, 1)
        return scanned[n]

    def certified(n: int) -> int:
        mat = _truncated_matrix(gens, n, order)
        return mat.nrows - rank_certified(mat)

    n = 2
    while n + 1 <= cap:
        if scan(n) == scan(n + 1):
            a = certified(n)
            if a == certified(n + 1):
                return a
        n += 1
    raise NonIsolatedError(
        "local quotient dimension did not stabilize below the cap; "
        "the singularity is non-isolated"
    )


def _isolation_cap(local_eq: MultiPoly) -> int:
    d = max(local_eq.total_degree(), 2)
    return (d - 1) ** 2 + 2


def local_milnor(local_eq: MultiPoly) -> int:
    """Milnor number: dimension of the local quotient by both partials."""
    gens = [local_eq.diff(0), local_eq.diff(1)]
    return stable_local_dim(gens, local_eq.order, _isolation_cap(local_eq))


def local_tjurina(local_eq: MultiPoly) -> int:
    """Tjurina number: dimension of the local quotient by the equation and
    both partials."""
    gens = [local_eq, local_eq.diff(0), local_eq.diff(1)]
    return stable_local_dim(gens, local_eq.order, _isolation_cap(local_eq))


def is_ordinary(local_eq: MultiPoly) -> bool:
    """A singular point is ordinary when its tangent cone is squarefree,
    that is when all tangent directions are distinct."""
    m = local_eq.min_degree()
    if m <= 1:
        return True
    return binary_is_squarefree(local_eq.homogeneous_part(m))


def classify_type(mult: int, mu: int, ordinary: bool) -> str:
    """Coarse local type: double points are A_n with n = mu, points with
    squarefree tangent cone are ordinary, the rest stay unclassified."""
    if mult == 2:
        return f"A_{mu}"
    if ordinary:
        return f"ordinary_{mult}"
    return "other"


def verify_singular(arr: Arrangement, point: ProjPoint) -> bool:
    """True when all three partials of the reduced equation vanish."""
    fr = arr.f_red()
    return all(fr.diff(i).evaluate(point.coords).is_zero() for i in range(3))


def multiplicity_at(arr: Arrangement, point: ProjPoint) -> int:
    return arr.f_red().localize_at(point).min_degree()


def analyze_point(arr: Arrangement, point: ProjPoint) -> LocalSingularity:
    """Full local analysis at one (verified singular) point."""
    fr = arr.f_red()
    g = fr.localize_at(point)
    m = g.min_degree()
    ordinary = is_ordinary(g)
    if ordinary and m >= 2:
        # squarefree tangent cone pins the Milnor number of the cone itself,
        # and adding higher-order terms cannot change it
        mu = (m - 1) ** 2
    else:
        mu = local_milnor(g)
    tau = local_tjurina(g)
    on = tuple(
        i for i, comp in enumerate(arr.components)
        if comp.poly.evaluate(point.coords).is_zero()
    )
    return LocalSingularity(
        point=point,
        local_eq=g,
        mult=m,
        mu=mu,
        tau=tau,
        ordinary=ordinary,
        type_tag=classify_type(m, mu, ordinary),
        on_components=on,
    )


# -- candidate discovery -----------------------------------------------------------------


def _unit_point(v: int, order: int) -> ProjPoint:
    coords = [0, 0, 0]
    coords[v] = 1
    return ProjPoint(order, coords)


def _projected_candidates(known: list[ProjPoint], vi: int, vj: int, order: int) -> list[ParamPoint]:
    out: list[ParamPoint] = []
    seen = set()
    for pt in known:
        a, b = pt.coords[vi], pt.coords[vj]
        if a.is_zero() and b.is_zero():
            continue
        pp = ParamPoint(order, a, b)
        if pp not in seen:
            seen.add(pp)
            out.append(pp)
    return out


def _lift_candidates(
    known: list[ProjPoint], root: ParamPoint, vi: int, vj: int, v: int
) -> list[CycloNumber]:
    """Values of the eliminated coordinate suggested by known points whose
    (vi, vj) projection matches the given root."""
    out: list[CycloNumber] = []
    for pt in known:
        a, b = pt.coords[vi], pt.coords[vj]
        if not (a * root.t - b * root.s).is_zero():
            continue
        scale = b * root.t.inverse() if not root.t.is_zero() else a * root.s.inverse()
        if scale.is_zero():
            continue
        val = pt.coords[v] * scale.inverse()
        if not any(val == o for o in out):
            out.append(val)
    return out


def _binary_roots_in(
    form: MultiPoly, vi: int, vj: int, candidates: list[ParamPoint]
) -> tuple[list[tuple[ParamPoint, int]], bool]:
    """Roots of a form supported on the (vi, vj) plane, in that convention.
    One-variable forms are powers of that variable and get solved directly,
    sidestepping the variable-padding choice of the generic solver."""
    used = form.used_vars()
    if not used <= {vi, vj}:
        raise ValueError("form does not live in the expected coordinate plane")
    order = form.order
    if not used:
        return [], True
    deg = form.total_degree()
    if used == {vi}:
        return [(ParamPoint(order, 0, 1), deg)], True
    if used == {vj}:
        return [(ParamPoint(order, 1, 0), deg)], True
    return binary_form_roots(form, candidates)


def _plane_section_points(
    v: int, other: MultiPoly, order: int, known: list[ProjPoint]
) -> tuple[list[ProjPoint], bool]:
    """Common zeros when one factor is a power of a single coordinate: meet
    the other factor with the coordinate plane."""
    subs = [MultiPoly.monomial(tuple(int(i == k) for k in range(3)), 1, order) for i in range(3)]
    subs[v] = MultiPoly.zero(order)
    section = other.substitute_all(subs)
    if section.is_zero():
        raise ValueError("components share a common factor")
    vi, vj = (i for i in range(3) if i != v)
    roots, complete = _binary_roots_in(section, vi, vj, _projected_candidates(known, vi, vj, order))
    pts = []
    for pp, _mult in roots:
        coords = [CycloNumber.from_rational(0, order)] * 3
        coords[vi], coords[vj] = pp.s, pp.t
        pts.append(ProjPoint(order, coords))
    return pts, complete


def component_pair_points(
    g: MultiPoly, h: MultiPoly, order: int, known: list[ProjPoint]
) -> tuple[list[ProjPoint], bool]:
    """All common zeros of two coprime forms that are rational over the field.

    Returns (points, complete); `complete` is a rigorous degree-accounting
    flag (True only when every common zero over the closure was found).
    Raises ValueError when the forms share a factor.
    """
    vg, vh = g.used_vars(), h.used_vars()
    common = sorted(vg & vh, reverse=True)
    if not common:
        if len(vg) == 1:
            return _plane_section_points(next(iter(vg)), h, order, known)
        if len(vh) == 1:
            return _plane_section_points(next(iter(vh)), g, order, known)
        raise ValueError("forms in three variables must share one")
    v = common[0]
    res = resultant(g, h, v)
    if res.is_zero():
        raise ValueError("components share a common factor")
    vi, vj = (i for i in range(3) if i != v)
    points: list[ProjPoint] = []
    complete = True

    # the point where every surviving variable vanishes escapes the resultant
    unit = _unit_point(v, order)
    if g.evaluate(unit.coords).is_zero() and h.evaluate(unit.coords).is_zero():
        points.append(unit)

    if res.total_degree() == 0:
        return points, True
    roots, res_complete = _binary_roots_in(res, vi, vj, _projected_candidates(known, vi, vj, order))
    complete = complete and res_complete
    one = CycloNumber.from_rational(1, order)
    for pp, _mult in roots:
        vals = {vi: pp.s, vj: pp.t, v: one}
        triple = (vals[0], vals[1], vals[2])
        p1 = _trim([c.evaluate(triple) for c in g.coeffs_in(v)])
        p2 = _trim([c.evaluate(triple) for c in h.coeffs_in(v)])
        if not p1 and not p2:
            raise ValueError("components share a common factor")
        if not p1:
            u = p2
        elif not p2:
            u = p1
        else:
            u = uni_gcd(p1, p2)
        if len(u) <= 1:
            continue  # leading coefficients dropped: nothing above this root
        cands = _lift_candidates(known, pp, vi, vj, v)
        vals_v, comp = univariate_roots(u, order, cands)
        complete = complete and comp
        for z in vals_v:
            coords = [None, None, None]
            coords[vi], coords[vj], coords[v] = pp.s, pp.t, z
            points.append(ProjPoint(order, coords))
    return points, complete


def _trim(a: list[CycloNumber]) -> list[CycloNumber]:
    while a and a[-1].is_zero():
        a.pop()
    return a


def _self_singular_points(
    c: MultiPoly, order: int, known: list[ProjPoint]
) -> tuple[list[ProjPoint], bool]:
    """Candidate singular points of a single component of degree >= 3:
    common zeros of two partials, filtered by the third."""
    parts = [c.diff(i) for i in range(3) if not c.diff(i).is_zero()]
    if len(parts) < 2:
        return [], False
    best: tuple[list[ProjPoint], bool] | None = None
    for i in range(len(parts)):
        for j in range(i + 1, len(parts)):
            try:
                pts, complete = component_pair_points(parts[i], parts[j], order, known)
            except ValueError:
                continue
            keep = [p for p in pts if all(c.diff(k).evaluate(p.coords).is_zero() for k in range(3))]
            if best is None or (complete and not best[1]):
                best = (keep, complete)
            if complete:
                return keep, True
    return best if best is not None else ([], False)


def candidate_points(
    arr: Arrangement, extra: tuple[ProjPoint, ...] = ()
) -> tuple[list[ProjPoint], dict[tuple[int, int], list[ProjPoint]], bool]:
    """Candidate singular points: known points, pairwise component
    intersections, line-pair vertices and self-singular points of higher
    degree components. The boolean reports rigorous discovery completeness."""
    order = arr.order
    comps = [c.poly for c in arr.components]
    known = list(arr.known_points) + list(extra)
    found: dict[tuple, ProjPoint] = {}
    complete = True

    def add(pt: ProjPoint) -> ProjPoint:
        key = pt.coords
        if key not in found:
            found[key] = pt
        return found[key]

    for pt in known:
        add(pt)

    pair_pts: dict[tuple[int, int], list[ProjPoint]] = {}
    for i in range(len(comps)):
        for j in range(i + 1, len(comps)):
            pts, comp = component_pair_points(comps[i], comps[j], order, known)
            complete = complete and comp
            pair_pts[(i, j)] = [add(p) for p in pts]

    for i, c in enumerate(comps):
        d = c.total_degree()
        if d == 2 and conic_classify(c) == "line_pair":
            # the vertex is the kernel of the conic matrix, rational even
            # when the two lines themselves are not
            add(ProjPoint(order, list(_kernel_vector3(conic_matrix(c)))))
        elif d >= 3:
            pts, comp = _self_singular_points(c, order, known)
            complete = complete and comp
            for p in pts:
                add(p)

    return list(found.values()), pair_pts, complete


# -- completeness certificates -----------------------------------------------------------


def _bezout_certificate(
    arr: Arrangement,
    singular: list[LocalSingularity],
    pair_pts: dict[tuple[int, int], list[ProjPoint]],
) -> bool:
    """All components have degree <= 2 and every pairwise intersection count
    reaches the product of the degrees; the locus is then provably complete."""
    comps = [c.poly for c in arr.components]
    for c in comps:
        if c.total_degree() > 2:
            return False
        if c.total_degree() == 2 and conic_classify(c) == "double_line":
            return False
    order = arr.order
    by_coords = {s.point.coords: s for s in singular}
    for (i, j), pts in pair_pts.items():
        gi, gj = comps[i], comps[j]
        target = gi.total_degree() * gj.total_degree()
        got = 0
        for p in pts:
            if p.coords not in by_coords:
                return False
            loc_i = gi.localize_at(p)
            loc_j = gj.localize_at(p)
            got += stable_local_dim([loc_i, loc_j], order, target + 2)
        if got != target:
            return False
    return True


def _hilbert_certificate(arr: Arrangement, total_tau: int) -> bool:
    """The graded Jacobian quotient of a reduced curve of degree d has
    dimension tau in every degree from 3d - 5 on. A modular dimension can
    only overshoot the exact one, so matching the local tau sum from above
    squeezes both to equality and proves no singular point was missed."""
    fr = arr.f_red()
    d = fr.total_degree()
    k = max(3 * d - 5, 0)
    parts = [fr.diff(i) for i in range(3)]
    mat = multiplication_matrix(parts, [d - 1] * 3, k, arr.order)
    dim_mod = mat.nrows - rank_modular(mat, 1)
    return dim_mod == total_tau


def singular_locus(
    arr: Arrangement,
    extra_candidates: tuple[ProjPoint, ...] = (),
    certify: bool = True,
) -> SingularLocusReport:
    """Discover, analyze and certify the singular locus of the reduced curve.

    Certification tiers, each independently rigorous:
      free-signature      total tau matches the maximal Tjurina number at the
                          certified minimal relation degree r with 2r < d
                          (equality forces freeness and a complete locus)
      resolved-intersections
                          every pairwise intersection was fully accounted for
                          by degree counting during discovery
      pairwise-bezout     intersection multiplicities of every component pair
                          sum to the product of their degrees
      hilbert-stable      the stable Jacobian quotient dimension matches the
                          local tau sum
    """
    for comp in arr.components:
        if comp.poly.total_degree() == 2 and conic_classify(comp.poly) == "double_line":
            raise ValueError(
                "double-line component: pass the line with multiplicity 2 instead"
            )
    cands, pair_pts, discovery_complete = candidate_points(arr, tuple(extra_candidates))
    sing_pts = [p for p in cands if verify_singular(arr, p)]
    sing_pts.sort(key=lambda p: p.sort_key())
    singular = [analyze_point(arr, p) for p in sing_pts]
    total_mu = sum(s.mu for s in singular)
    total_tau = sum(s.tau for s in singular)

    complete = False
    certification = "none"
    mdr_value: int | None = None
    if certify:
        from .syzfree import mdr as _mdr

        d = arr.f_red().total_degree()
        mdr_value = _mdr(arr)
        if 2 * mdr_value < d and total_tau == (d - 1) ** 2 - mdr_value * (d - 1 - mdr_value):
            complete = True
            certification = "free-signature"
        elif discovery_complete:
            complete = True
            certification = "resolved-intersections"
        elif _bezout_certificate(arr, singular, pair_pts):
            complete = True
            certification = "pairwise-bezout"
        elif _hilbert_certificate(arr, total_tau):
            complete = True
            certification = "hilbert-stable"

    return SingularLocusReport(
        singularities=tuple(singular),
        total_mu=total_mu,
        total_tau=total_tau,
        complete=complete,
        certification=certification,
        mdr=mdr_value,
    )
