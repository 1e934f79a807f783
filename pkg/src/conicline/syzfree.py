"""Graded syzygies of the Jacobian ideal: minimal relation degree, freeness
classification, global Tjurina numbers and Euler characteristics.

The minimal relation degree is certified in both directions: full column
rank modulo one prime proves no relation exists in a given degree, and an
exactly verified kernel vector proves one does.
"""

from __future__ import annotations

from dataclasses import dataclass

from .arrangement import Arrangement
from .linalg import (
    SparseMatrix,
    kernel_vector_exact,
    multiplication_matrix,
    nullity_is_zero,
    rank_certified,
)
from .multipoly import MultiPoly


def _reduced_jacobian(arr: Arrangement) -> tuple[list[MultiPoly], int]:
    fr = arr.f_red()
    return [fr.diff(i) for i in range(3)], fr.total_degree()


def syzygy_matrix(arr: Arrangement, r: int) -> SparseMatrix:
    """Matrix of (a, b, c) -> a f_x + b f_y + c f_z on degree-r coefficient
    triples; its kernel is the space of degree-r relations."""
    parts, d = _reduced_jacobian(arr)
    return multiplication_matrix(parts, [d - 1] * 3, r + d - 1, arr.order)


def mdr(arr: Arrangement) -> int:
    """Minimal degree of a relation among the partials of the reduced
    equation. Certified: degrees below the answer carry a full-column-rank
    proof, the answer itself an exactly verified relation."""
    _, d = _reduced_jacobian(arr)
    for r in range(d):
        mat = syzygy_matrix(arr, r)
        if nullity_is_zero(mat):
            continue
        vec = kernel_vector_exact(mat)
        if vec is not None:
            return r
        raise ArithmeticError(f"could not certify the degree-{r} relation space")
    # the Koszul relations live in degree d - 1, so this is unreachable
    raise ArithmeticError("no relation found up to the Koszul degree")


def jacobian_hilbert(arr: Arrangement, k: int) -> int:
    """Exact dimension of the degree-k piece of the graded Jacobian quotient
    of the reduced equation."""
    if k < 0:
        return 0
    parts, d = _reduced_jacobian(arr)
    mat = multiplication_matrix(parts, [d - 1] * 3, k, arr.order)
    return mat.nrows - rank_certified(mat)


def global_tjurina(
    arr: Arrangement,
    method: str = "local_sum",
    report=None,
    degree_guard: int = 12,
    force: bool = False,
) -> int:
    """Total Tjurina number of the reduced curve.

    local_sum sums a certified-complete singular locus report (computing one
    when none is passed). hilbert_stable reads the stabilized Jacobian
    quotient dimension (three consecutive equal values past degree 2d); its
    cost grows quickly with the degree, hence the guard.
    """
    if method == "local_sum":
        if report is None:
            from .singular import singular_locus

            report = singular_locus(arr)
        if not report.complete:
            raise ValueError("singular locus is not certified complete; "
                             "cannot trust the local sum")
        return report.total_tau
    if method == "hilbert_stable":
        _, d = _reduced_jacobian(arr)
        if d > degree_guard and not force:
            raise ValueError(
                f"degree {d} exceeds the guard ({degree_guard}); "
                "pass force=True to compute anyway"
            )
        window: list[int] = []
        k = 2 * d
        while True:
            window.append(jacobian_hilbert(arr, k))
            if len(window) >= 3 and window[-1] == window[-2] == window[-3]:
                return window[-1]
            if k > 3 * d:
                raise ArithmeticError("Jacobian quotient dimension failed to stabilize")
            k += 1
    raise ValueError(f"unknown method {method!r}")


@dataclass(frozen=True)
class FreenessVerdict:
    mdr: int
    tau: int
    tau_max: int
    verdict: str
    exponents: tuple[int, int] | None

    @property
    def is_free(self) -> bool:
        return self.verdict == "free"

    @property
    def is_nearly_free(self) -> bool:
        return self.verdict == "nearly_free"


def classify_freeness(arr: Arrangement, tau: int, mdr_value: int | None = None) -> FreenessVerdict:
    """Freeness of the reduced curve from its global Tjurina number and
    minimal relation degree.

    With r = mdr and d the reduced degree, tau can never exceed
    (d-1)^2 - r(d-1-r) when 2r < d; hitting that bound is equivalent to
    freeness with exponents (r, d-1-r), falling one short is equivalent to
    near-freeness with exponents (r, d-r).
    """
    _, d = _reduced_jacobian(arr)
    r = mdr(arr) if mdr_value is None else mdr_value
    tau_max = (d - 1) ** 2 - r * (d - 1 - r)
    if 2 * r < d and tau == tau_max:
        verdict = "free"
        exponents: tuple[int, int] | None = (r, d - 1 - r)
    elif 2 * r <= d and tau == tau_max - 1:
        verdict = "nearly_free"
        exponents = (r, d - r)
    else:
        verdict = "neither"
        exponents = None
    return FreenessVerdict(mdr=r, tau=tau, tau_max=tau_max, verdict=verdict, exponents=exponents)


def euler_chi(arr: Arrangement, mu_total: int) -> int:
    """Euler characteristic of the complement of the reduced curve."""
    _, d = _reduced_jacobian(arr)
    return (d - 1) * (d - 2) + 1 - mu_total


def line_chi_bound_check(arr: Arrangement, report) -> tuple[bool, bool]:
    """For a line arrangement of degree >= 5 in which no point lies on d - 1
    or more lines, the complement must satisfy chi >= d - 4. Returns
    (applicable, holds); holds is vacuously True when not applicable."""
    _, d = _reduced_jacobian(arr)
    all_lines = all(c.poly.total_degree() == 1 for c in arr.components)
    max_mult = max((s.mult for s in report.singularities), default=0)
    applicable = all_lines and d >= 5 and max_mult <= d - 2
    if not applicable:
        return False, True
    chi = euler_chi(arr, report.total_mu)
    return True, chi >= d - 4
