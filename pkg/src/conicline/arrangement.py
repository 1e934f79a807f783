"""Plane curve arrangements: components, pencils, symmetry and serialization.

An arrangement is a list of pairwise distinct irreducible-or-asserted
components with multiplicities. The defining polynomial f is the product with
multiplicities; f_red drops them. Invariants of the complement and the
Alexander machinery always refer to the reduced curve; the multiplicities
only record how the arrangement sits inside a pencil.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .cyclotomic import CycloNumber
from .multipoly import (
    MultiPoly,
    ProjPoint,
    conic_classify,
    conic_matrix,
    det3,
    inv3,
)
from .linalg import SparseMatrix, kernel_vector_bareiss, poly_space_basis
from .parse import parse_poly, parse_scalar
from .roots import ParamPoint, binary_form_roots


class Component:
    """One irreducible component with a multiplicity and an optional label.

    Irreducibility is derived where that is decidable cheaply: linear forms
    always, conics exactly when smooth. Higher degree components count as
    irreducible only when asserted by the caller; bounds that need
    irreducibility skip unasserted components.
    """

    __slots__ = ("poly", "mult", "label", "irreducible_asserted")

    def __init__(self, poly: MultiPoly, mult: int = 1, label: str = "", irreducible: bool | None = None) -> None:
        if poly.is_zero() or not poly.is_homogeneous() or poly.total_degree() < 1:
            raise ValueError("component must be a nonconstant homogeneous form")
        if mult < 1:
            raise ValueError("component multiplicity must be positive")
        self.poly = poly.monic()
        self.mult = mult
        self.label = label
        self.irreducible_asserted = bool(irreducible) if irreducible is not None else False

    @property
    def degree(self) -> int:
        return self.poly.total_degree()

    def is_irreducible(self) -> bool:
        d = self.degree
        if d == 1:
            return True
        if d == 2:
            return conic_classify(self.poly) == "smooth"
        return self.irreducible_asserted

    def __repr__(self) -> str:
        return f"Component({self.label or self.poly}, mult={self.mult})"


@dataclass
class PencilMember:
    s: CycloNumber
    t: CycloNumber
    reduced: bool = True

    def param(self, order: int) -> ParamPoint:
        return ParamPoint(order, self.s, self.t)


@dataclass
class PencilSpec:
    """A pencil s * g1 + t * g2 whose listed members multiply to the curve.

    When `halphen_k` >= 2 the second generator is the k-th power of the lower
    degree form `halphen_h` (checked exactly). The structure tag drives which
    multiplicity bound applies:

      * no halphen data: plain union of `ell` reduced members,
      * halphen and all members reduced: halphen pencil of index k,
      * halphen and some member non-reduced: the curve is the reduction of a
        union containing a non-reduced member.
    """

    g1: MultiPoly
    g2: MultiPoly
    members: list[PencilMember] = field(default_factory=list)
    halphen_k: int | None = None
    halphen_h: MultiPoly | None = None

    def validate(self) -> None:
        if self.g1.is_zero() or self.g2.is_zero():
            raise ValueError("pencil generators must be nonzero")
        if not (self.g1.is_homogeneous() and self.g2.is_homogeneous()):
            raise ValueError("pencil generators must be homogeneous")
        if self.g1.total_degree() != self.g2.total_degree():
            raise ValueError("pencil generators must share a degree")
        if self.g1.proportionality(self.g2) is not None:
            raise ValueError("pencil generators are proportional")
        if (self.halphen_k is None) != (self.halphen_h is None):
            raise ValueError("halphen data needs both k and h")
        if self.halphen_k is not None:
            if self.halphen_k < 2:
                raise ValueError("halphen index must be at least 2")
            if self.halphen_h ** self.halphen_k != self.g2:
                raise ValueError("second generator is not the stated power")

    def member_poly(self, member: PencilMember) -> MultiPoly:
        return self.g1 * member.s + self.g2 * member.t

    def structure(self) -> tuple[str, int, int | None]:
        """(kind, ell, k) with kind one of reduced_members, halphen_reduced,
        halphen_nonreduced."""
        ell = len(self.members)
        if self.halphen_k is None:
            if not all(m.reduced for m in self.members):
                raise ValueError("non-reduced member needs halphen structure")
            return ("reduced_members", ell, None)
        if all(m.reduced for m in self.members):
            return ("halphen_reduced", ell, self.halphen_k)
        return ("halphen_nonreduced", ell, self.halphen_k)


class Arrangement:
    def __init__(
        self,
        components: list[Component],
        order: int = 3,
        pencil: PencilSpec | None = None,
        known_points: list[ProjPoint] | None = None,
        name: str = "",
    ) -> None:
        if not components:
            raise ValueError("an arrangement needs at least one component")
        self.order = order
        self.components = components
        self.pencil = pencil
        self.known_points = list(known_points or [])
        self.name = name
        self.validate()

    def validate(self) -> None:
        seen: list[MultiPoly] = []
        for comp in self.components:
            if comp.poly.order != self.order:
                raise ValueError("component field order mismatch")
            for p in seen:
                if comp.poly == p:
                    raise ValueError("duplicate component")
            seen.append(comp.poly)
        if self.pencil is not None:
            self.pencil.validate()
        for pt in self.known_points:
            if pt.order != self.order:
                raise ValueError("known point field order mismatch")

    @property
    def num_components(self) -> int:
        return len(self.components)

    @property
    def degree(self) -> int:
        return sum(c.degree * c.mult for c in self.components)

    @property
    def reduced_degree(self) -> int:
        return sum(c.degree for c in self.components)

    def is_reduced(self) -> bool:
        return all(c.mult == 1 for c in self.components)

    def f(self) -> MultiPoly:
        out = MultiPoly.constant(1, self.order)
        for c in self.components:
            out = out * c.poly ** c.mult
        return out

    def f_red(self) -> MultiPoly:
        out = MultiPoly.constant(1, self.order)
        for c in self.components:
            out = out * c.poly
        return out

    def reduced(self) -> "Arrangement":
        """The same arrangement with all multiplicities dropped."""
        if self.is_reduced():
            return self
        comps = [Component(c.poly, 1, c.label, c.irreducible_asserted) for c in self.components]
        return Arrangement(comps, self.order, self.pencil, self.known_points, self.name)

    # -- serialization -------------------------------------------------------------

    def to_json(self) -> str:
        def scalar(c: CycloNumber) -> str:
            return str(c)

        data = {
            "field_order": self.order,
            "name": self.name,
            "components": [
                {
                    "poly": str(c.poly),
                    "mult": c.mult,
                    "label": c.label,
                    "irreducible": c.irreducible_asserted,
                }
                for c in self.components
            ],
            "pencil": None,
            "known_points": [[scalar(x) for x in pt.coords] for pt in self.known_points],
        }
        if self.pencil is not None:
            p = self.pencil
            data["pencil"] = {
                "g1": str(p.g1),
                "g2": str(p.g2),
                "halphen": (
                    None
                    if p.halphen_k is None
                    else {"k": p.halphen_k, "h": str(p.halphen_h)}
                ),
                "members": [
                    {"s": scalar(m.s), "t": scalar(m.t), "reduced": m.reduced}
                    for m in p.members
                ],
            }
        return json.dumps(data, indent=2, sort_keys=True)

    @staticmethod
    def from_json(text: str) -> "Arrangement":
        data = json.loads(text)
        order = int(data.get("field_order", 3))
        comps = []
        for c in data["components"]:
            comps.append(
                Component(
                    parse_poly(c["poly"], order),
                    int(c.get("mult", 1)),
                    c.get("label", ""),
                    bool(c.get("irreducible", False)),
                )
            )
        pencil = None
        pd = data.get("pencil")
        if pd is not None:
            halphen = pd.get("halphen")
            pencil = PencilSpec(
                g1=parse_poly(pd["g1"], order),
                g2=parse_poly(pd["g2"], order),
                members=[
                    PencilMember(
                        parse_scalar(m["s"], order),
                        parse_scalar(m["t"], order),
                        bool(m.get("reduced", True)),
                    )
                    for m in pd.get("members", [])
                ],
                halphen_k=None if halphen is None else int(halphen["k"]),
                halphen_h=None if halphen is None else parse_poly(halphen["h"], order),
            )
        points = [
            ProjPoint(order, [parse_scalar(x, order) for x in triple])
            for triple in data.get("known_points", [])
        ]
        return Arrangement(comps, order, pencil, points, data.get("name", ""))


# -- pencil membership ------------------------------------------------------------------


def pencil_membership(p: MultiPoly, pencil: PencilSpec) -> ParamPoint | None:
    """The parameter (s : t) with s*g1 + t*g2 proportional to p, or None."""
    g1, g2 = pencil.g1, pencil.g2
    if p.total_degree() != g1.total_degree() or not p.is_homogeneous():
        return None
    order = p.order
    basis = poly_space_basis(g1.total_degree())
    index = {e: i for i, e in enumerate(basis)}
    cols = []
    for q in (g1, g2, -p):
        cols.append({index[e]: c for e, c in q.terms.items()})
    mat = SparseMatrix(len(basis), cols, order)
    v = kernel_vector_bareiss(mat)
    if v is None:
        return None
    s, t, c = v
    if c.is_zero():
        # would mean g1, g2 dependent; excluded by validation
        return None
    return ParamPoint(order, s / c, t / c)


# -- projective symmetry -----------------------------------------------------------------


def group_invariance(arr: Arrangement, matrices: list[list[list]]) -> bool:
    """Whether f_red is projectively invariant (up to scalar) under each of
    the given 3x3 matrices: f_red(M^-1 x) proportional to f_red(x)."""
    f = arr.f_red()
    order = arr.order
    for m in matrices:
        mm = [
            [c if isinstance(c, CycloNumber) else CycloNumber.from_rational(c, order) for c in row]
            for row in m
        ]
        if det3(mm).is_zero():
            raise ValueError("symmetry candidate is singular")
        g = f.substitute_linear(inv3(mm))
        if g.proportionality(f) is None:
            return False
    return True


# -- pencils of conics -------------------------------------------------------------------


@dataclass
class ConicPencilType:
    """Classification of a pencil of conics by its degeneracy cubic.

    label I:   three simple roots (three distinct line-pair members)
    label II:  one double root whose member is a line pair
    label III: one double root whose member is a double line
    label IV:  a triple root whose member is a line pair
    label V:   a triple root whose member is a double line
    label degenerate: the determinant form vanishes identically

    `degenerate_members` lists (parameter, root multiplicity, member kind) for
    the roots living in the coefficient field; `complete` says whether that
    list covers all roots of the cubic.
    """

    label: str
    degenerate_members: list[tuple[ParamPoint, int, str]]
    complete: bool


def conic_pencil_type(c1: MultiPoly, c2: MultiPoly) -> ConicPencilType:
    for c in (c1, c2):
        if c.is_zero() or c.total_degree() != 2 or not c.is_homogeneous():
            raise ValueError("pencil generators must be conics")
    if c1.proportionality(c2) is not None:
        raise ValueError("pencil generators are proportional")
    order = c1.order
    # det(s*A + t*B) as a binary cubic in parameter slots (x, y)
    s = MultiPoly.variable("x", order)
    t = MultiPoly.variable("y", order)
    A = conic_matrix(c1)
    B = conic_matrix(c2)
    M = [[s * A[i][j] + t * B[i][j] for j in range(3)] for i in range(3)]
    cubic = det3(M)
    if cubic.is_zero():
        return ConicPencilType("degenerate", [], True)

    roots, complete = binary_form_roots(cubic)

    def member_kind(pt: ParamPoint) -> str:
        poly = c1 * pt.s + c2 * pt.t
        return conic_classify(poly)

    members = [(pt, mult, member_kind(pt)) for pt, mult in roots]
    members.sort(key=lambda m: (str(m[0].s), str(m[0].t)))
    mult_pattern = sorted((m for _, m in roots), reverse=True)
    if mult_pattern == [1, 1, 1]:
        label = "I"
    elif mult_pattern and mult_pattern[0] == 2:
        rep = next(kind for _, m, kind in members if m == 2)
        label = "II" if rep == "line_pair" else "III"
    elif mult_pattern and mult_pattern[0] == 3:
        rep = next(kind for _, m, kind in members if m == 3)
        label = "IV" if rep == "line_pair" else "V"
    else:
        # only simple roots found but not all of them lie in the field;
        # simple roots always give line pairs, so the type is still I
        label = "I"
    return ConicPencilType(label, members, complete)
