"""Plane quadrics of PG(2, q): classification, coefficient embedding, polars.

A quadric a11*X1^2 + a22*X2^2 + a33*X3^2 + a12*X1*X2 + a13*X1*X3 + a23*X2*X3
is stored as the coefficient tuple (a11, a22, a33, a12, a13, a23), normalized
as a point of PG(5, q).  The coefficient map (the Veronese correspondence) is
therefore the identity on stored data, and the group action on quadrics
becomes a linear action on PG(5, q).

Classification is by counting rational and singular points, which works in
every characteristic and doubles as an independent oracle for the degeneracy
cubic.  The polar form B(x, y) = Q(x+y) - Q(x) - Q(y) supplies tangent lines,
polar lines and nuclei without ever dividing by 2.
"""

from __future__ import annotations

import enum
import functools
from dataclasses import dataclass

import numpy as np

from planecodes import linalg, projgeom


class QuadricKind(enum.Enum):
    REPEATED_LINE = "RepeatedLine"
    BI_LINE = "BiLine"
    IMAGINARY_BI_LINE = "ImaginaryBiLine"
    CONIC = "Conic"


DEGENERATE_KINDS = (QuadricKind.REPEATED_LINE, QuadricKind.BI_LINE, QuadricKind.IMAGINARY_BI_LINE)


def census_formulas(q):
    """Expected class sizes over PG(5, q)."""
    s = q * q + q + 1
    return {
        QuadricKind.REPEATED_LINE: s,
        QuadricKind.BI_LINE: s * (q + 1) * q // 2,
        QuadricKind.IMAGINARY_BI_LINE: s * (q - 1) * q // 2,
        QuadricKind.CONIC: q**5 - q**2,
    }


def monomial_row(field, p):
    """(x1^2, x2^2, x3^2, x1*x2, x1*x3, x2*x3) for a point of PG(2, .)."""
    x1, x2, x3 = p
    m = field.mul
    return (m(x1, x1), m(x2, x2), m(x3, x3), m(x1, x2), m(x1, x3), m(x2, x3))


def polar_coeff_rows(field, p):
    """Rows expressing B(p, e_i) as linear functionals of the coefficients."""
    x1, x2, x3 = p
    two = field.add(1, 1)
    m = field.mul
    return (
        (m(two, x1), 0, 0, x2, x3, 0),
        (0, m(two, x2), 0, x1, 0, x3),
        (0, 0, m(two, x3), 0, x1, x2),
    )


@dataclass(frozen=True)
class QuadricClass:
    kind: QuadricKind
    center: tuple | None  # common point of the two lines (bi-line kinds)
    nucleus: tuple | None  # q even, conics only
    rational_count: int
    singular_count: int


class PlaneQuadric:
    """A plane quadric, canonical up to scalars."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field, coeffs):
        self.field = field
        self.coeffs = projgeom.normalize(field, coeffs)

    def __eq__(self, other):
        return self.field.q == other.field.q and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.field.q, self.coeffs))

    def __lt__(self, other):
        return self.coeffs < other.coeffs

    def __repr__(self):
        return f"PlaneQuadric({self.coeffs} over GF({self.field.q}))"

    def evaluate(self, p):
        field = self.field
        acc = 0
        for a, m in zip(self.coeffs, monomial_row(field, p)):
            if a and m:
                acc = field.add(acc, field.mul(a, m))
        return acc

    def evaluate_ext(self, t, p):
        """Value at a point with coordinates in the tower extension."""
        ext = t.ext
        acc = 0
        for a, m in zip(self.coeffs, monomial_row(ext, p)):
            a = t.embed(a)
            if a and m:
                acc = ext.add(acc, ext.mul(a, m))
        return acc

    def polar(self, x, y):
        """B(x, y) = Q(x+y) - Q(x) - Q(y), on the given representatives."""
        field = self.field
        s = tuple(field.add(a, b) for a, b in zip(x, y))
        return field.sub(field.sub(self.evaluate(s), self.evaluate(x)), self.evaluate(y))

    def polar_matrix(self):
        """3x3 matrix of B, i.e. (B(e_i, e_j))_{ij}."""
        return polar_b_matrix(self.field, self.coeffs)

    def rational_points(self):
        return [tuple(int(x) for x in p) for p in pg2_point_list(self.field) if self.evaluate(p) == 0]

    def singular_points(self):
        """Points with Q(P) = 0 and B(P, -) identically zero."""
        field = self.field
        out = []
        for p in self.rational_points():
            rows = polar_coeff_rows(field, p)
            if all(_dot(field, r, self.coeffs) == 0 for r in rows):
                out.append(p)
        return out

    def classify(self):
        return classify(self)

    def veronese(self):
        """The coefficient point of PG(5, q); identity on stored data."""
        return self.coeffs


def _dot(field, u, v):
    acc = 0
    for x, y in zip(u, v):
        if x and y:
            acc = field.add(acc, field.mul(x, y))
    return acc


def polar_b_matrix(field, coeffs):
    a11, a22, a33, a12, a13, a23 = coeffs
    two = field.add(1, 1)
    m = field.mul
    return (
        (m(two, a11), a12, a13),
        (a12, m(two, a22), a23),
        (a13, a23, m(two, a33)),
    )


@functools.lru_cache(maxsize=None)
def _pg2_point_list(q, p, k):
    import planecodes.galois as galois

    return projgeom.enumerate_points(galois.field_make(p, k), 2)


def pg2_point_list(field):
    return _pg2_point_list(field.q, field.p, field.k)


def veronese(quadric):
    return quadric.veronese()


def inverse_veronese(field, point):
    return PlaneQuadric(field, point)


def cubic_value(field, point):
    """Value of the degeneracy cubic at a coefficient point of PG(5, q).

    The form 4*X1*X2*X3 + X4*X5*X6 - X1*X6^2 - X2*X5^2 - X3*X4^2 is four
    times the determinant of the symmetric matrix of the quadric; it vanishes
    exactly on the degenerate classes in every characteristic (mod 2 it
    collapses to X4*X5*X6 + X1*X6^2 + X2*X5^2 + X3*X4^2).  Cross-validated
    against the point-count classifier on every point for small q.
    """
    x1, x2, x3, x4, x5, x6 = point
    m, add, sub = field.mul, field.add, field.sub
    four = field.add(field.add(1, 1), field.add(1, 1))
    acc = m(four, m(x1, m(x2, x3)))
    acc = add(acc, m(x4, m(x5, x6)))
    acc = sub(acc, m(x1, m(x6, x6)))
    acc = sub(acc, m(x2, m(x5, x5)))
    acc = sub(acc, m(x3, m(x4, x4)))
    return acc


def cubic_values(field, points):
    """Vectorised cubic_value over an (N, 6) array."""
    mt = field.mul_table
    at = field.add_table
    st = field.sub_table
    x = [points[:, i] for i in range(6)]
    four = field.add(field.add(1, 1), field.add(1, 1))
    acc = mt[np.full(len(points), four, dtype=field._dtype), mt[x[0], mt[x[1], x[2]]]]
    acc = at[acc, mt[x[3], mt[x[4], x[5]]]]
    acc = st[acc, mt[x[0], mt[x[5], x[5]]]]
    acc = st[acc, mt[x[1], mt[x[4], x[4]]]]
    acc = st[acc, mt[x[2], mt[x[3], x[3]]]]
    return acc


def _signatures(q):
    return {
        (q + 1, q + 1): QuadricKind.REPEATED_LINE,
        (2 * q + 1, 1): QuadricKind.BI_LINE,
        (1, 1): QuadricKind.IMAGINARY_BI_LINE,
        (q + 1, 0): QuadricKind.CONIC,
    }


def classify(quadric):
    """Kind from (rational points, singular points); centers and nuclei."""
    field = quadric.field
    q = field.q
    rational = quadric.rational_points()
    singular = quadric.singular_points()
    kind = _signatures(q).get((len(rational), len(singular)))
    if kind is None:
        raise RuntimeError(
            f"impossible point counts {(len(rational), len(singular))} for {quadric!r}"
        )
    center = None
    if kind is QuadricKind.BI_LINE:
        center = singular[0]
    elif kind is QuadricKind.IMAGINARY_BI_LINE:
        center = rational[0]
    nuc = None
    if kind is QuadricKind.CONIC and q % 2 == 0:
        nuc = nucleus(quadric)
    return QuadricClass(kind, center, nuc, len(rational), len(singular))


# ---------------------------------------------------------------------------
# vectorised census over all of PG(5, q)


@dataclass
class CensusResult:
    q: int
    counts: dict
    expected: dict

    @property
    def ok(self):
        return self.counts == self.expected

    def as_tuple(self):
        return tuple(self.counts[k] for k in QuadricKind)


def census(field, return_kinds=False):
    """Classify every point of PG(5, q) and cross-validate the cubic.

    Raises if any point falls outside the four signatures or if the cubic
    fails to vanish exactly on the degenerate classes; those would signal an
    arithmetic fault, not bad input.
    """
    cached = _census_full(field.q, field.p, field.k)
    if return_kinds:
        return cached
    return cached[0]


@functools.lru_cache(maxsize=None)
def _census_full(q, p, k):
    import planecodes.galois as galois

    field = galois.field_make(p, k)
    coeff_pts = projgeom.points_array(field, 5)  # (N, 6)
    pg2 = projgeom.pg2_points(field)  # (P, 3)

    mono = np.zeros((len(pg2), 6), dtype=field._dtype)
    polar = np.zeros((len(pg2), 3, 6), dtype=field._dtype)
    for i, p in enumerate(pg2):
        pt = tuple(int(x) for x in p)
        mono[i] = monomial_row(field, pt)
        polar[i] = polar_coeff_rows(field, pt)

    vals = linalg.bmatmul(field, mono, coeff_pts.T)  # (P, N)
    on_quadric = vals == 0
    rational = on_quadric.sum(axis=0)

    pol = linalg.bmatmul(field, polar.reshape(-1, 6), coeff_pts.T).reshape(len(pg2), 3, -1)
    singular = (on_quadric & (pol == 0).all(axis=1)).sum(axis=0)

    kind_of = _signatures(q)
    kinds = np.empty(len(coeff_pts), dtype=object)
    counts = {k: 0 for k in QuadricKind}
    for i, sig in enumerate(zip(rational.tolist(), singular.tolist())):
        kind = kind_of.get(sig)
        if kind is None:
            raise RuntimeError(f"impossible point counts {sig} at coefficient point {i}")
        kinds[i] = kind
        counts[kind] += 1

    degenerate = np.array([k is not QuadricKind.CONIC for k in kinds])
    if not ((cubic_values(field, coeff_pts) == 0) == degenerate).all():
        raise RuntimeError(f"degeneracy cubic disagrees with the classifier at q = {q}")

    return CensusResult(q, counts, census_formulas(q)), kinds, coeff_pts


def quadrics_of_kind(field, kind):
    """All quadrics of one class, in coefficient-point enumeration order."""
    _, kinds, pts = census(field, return_kinds=True)
    sel = [i for i, k in enumerate(kinds) if k is kind]
    return [PlaneQuadric(field, tuple(int(x) for x in pts[i])) for i in sel]


# ---------------------------------------------------------------------------
# products of linear forms


def product_form_coeffs(field, u, v):
    """Coefficients of the quadric (u . X)(v . X), over any field."""
    m, add = field.mul, field.add
    u1, u2, u3 = u
    v1, v2, v3 = v
    return (
        m(u1, v1),
        m(u2, v2),
        m(u3, v3),
        add(m(u1, v2), m(u2, v1)),
        add(m(u1, v3), m(u3, v1)),
        add(m(u2, v3), m(u3, v2)),
    )


def product_of_forms(field, u, v):
    """The quadric splitting into the two lines u, v of PG(2, q)."""
    if not any(u) or not any(v):
        raise ValueError("linear forms must be nonzero")
    return PlaneQuadric(field, product_form_coeffs(field, u, v))


def conjugate_product(t, u, v=None):
    """Descend (u . X)(u^sigma . X) from GF(q^2) to a quadric over GF(q).

    u is a line of PG(2, q^2) not proportional to a GF(q) line; v, if given,
    must equal the coordinatewise conjugate of u.  The product's coefficient
    vector is Frobenius-fixed after scaling its first nonzero entry to 1, and
    the scaled coefficients are mapped down the tower.  Raises if the
    conjugate-pair precondition fails.
    """
    ext = t.ext
    if not any(u):
        raise ValueError("linear forms must be nonzero")
    sigma_u = tuple(t.frobenius(x) for x in u)
    if v is not None and projgeom.normalize(ext, v) != projgeom.normalize(ext, sigma_u):
        raise ValueError("second form is not the conjugate of the first")
    if projgeom.normalize(ext, u) == projgeom.normalize(ext, sigma_u):
        raise ValueError("form is proportional to a GF(q) form; product would be degenerate twice over")
    coeffs = projgeom.normalize(ext, product_form_coeffs(ext, u, sigma_u))
    try:
        down = tuple(t.down(c) for c in coeffs)
    except ValueError:
        raise ValueError("conjugate product failed to descend to the base field") from None
    return PlaneQuadric(t.base, down)


# ---------------------------------------------------------------------------
# tangent lines, polar lines, nuclei


def tangent_line(quadric, p):
    """Tangent at a point of a conic: {X : B(P, X) = 0}, any characteristic."""
    _require_conic(quadric)
    if quadric.evaluate(p) != 0:
        raise ValueError(f"{p} is not on the conic")
    return _polar_dual(quadric, p)


def polar_line(quadric, p):
    """Polar of any point with respect to a conic; q odd."""
    _require_conic(quadric)
    if quadric.field.q % 2 == 0:
        raise ValueError("polar lines of all points need q odd; use nucleus/tangent for q even")
    return _polar_dual(quadric, p)


def nucleus(quadric):
    """Common point of all tangents of a conic; q even."""
    _require_conic(quadric)
    field = quadric.field
    if field.q % 2 != 0:
        raise ValueError("the nucleus exists only for q even")
    radical = linalg.nullspace(field, polar_b_matrix(field, quadric.coeffs))
    assert len(radical) == 1
    return projgeom.normalize(field, radical[0])


def _polar_dual(quadric, p):
    field = quadric.field
    dual = tuple(_dot(field, row, quadric.coeffs) for row in polar_coeff_rows(field, p))
    if not any(dual):
        raise RuntimeError(f"degenerate polar at {p} on {quadric!r}")
    return projgeom.normalize(field, dual)


def _require_conic(quadric):
    if len(quadric.rational_points()) != quadric.field.q + 1 or quadric.singular_points():
        raise ValueError("operation requires a nondegenerate conic")
