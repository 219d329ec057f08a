"""PGL(3, q), Singer cyclic subgroups, and the induced action on PG(5, q).

Group elements are 3x3 invertible matrices over GF(q), canonicalized
projectively (first nonzero entry in row-major order scaled to 1).  The
lift of an element to PG(5, q) is the 6x6 matrix describing substitution in
the quadric coefficients; it is computed generically by expanding the three
pulled-back linear forms, so it works in every characteristic and needs no
basis change.

Points transform by g, quadrics by substitution with g^{-1}, so the
coefficient embedding intertwines the two actions.  Orbit enumeration closes
under the generators and their inverses, which makes the convention
invisible to everything downstream.
"""

from __future__ import annotations

import functools
from collections import deque
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from planecodes import linalg, projgeom, quadrics
from planecodes.galois import tower
from planecodes.projgeom import Subspace


def _canonical_matrix(field, rows):
    lead = next((x for row in rows for x in row if x), None)
    if lead is None:
        raise ValueError("zero matrix")
    if lead == 1:
        return tuple(tuple(r) for r in rows)
    inv = field.inv(lead)
    return tuple(tuple(field.mul(inv, x) for x in row) for row in rows)


class GroupElement:
    """An element of PGL(3, q) as a projectively canonical 3x3 matrix."""

    __slots__ = ("field", "rows")

    def __init__(self, field, rows):
        self.field = field
        self.rows = _canonical_matrix(field, rows)
        if linalg.rank(field, self.rows) != 3:
            raise ValueError("matrix is singular")

    @classmethod
    def identity(cls, field):
        return cls(field, ((1, 0, 0), (0, 1, 0), (0, 0, 1)))

    def __eq__(self, other):
        return self.field.q == other.field.q and self.rows == other.rows

    def __hash__(self):
        return hash((self.field.q, self.rows))

    def __repr__(self):
        return f"GroupElement({self.rows} over GF({self.field.q}))"

    def mul(self, other):
        return GroupElement(self.field, linalg.mat_mul(self.field, self.rows, other.rows))

    def inverse(self):
        return GroupElement(self.field, linalg.mat_inv(self.field, self.rows))

    def act_point(self, p):
        """Image of a point of PG(2, q) (column-vector convention)."""
        return projgeom.normalize(self.field, linalg.mat_vec(self.field, self.rows, p))

    def act_point_ext(self, t, p):
        """Image of a point of PG(2, q^m), entries embedded up the tower."""
        ext = t.ext
        rows = [[t.embed(x) for x in row] for row in self.rows]
        return projgeom.normalize(ext, linalg.mat_vec(ext, rows, p))

    def projective_order(self, cap=100000):
        acc = self
        e = GroupElement.identity(self.field)
        for n in range(1, cap + 1):
            if acc == e:
                return n
            acc = acc.mul(self)
        raise RuntimeError("order cap exceeded")


class LiftedElement:
    """The induced 6x6 action on quadric coefficient points of PG(5, q)."""

    __slots__ = ("field", "rows")

    def __init__(self, field, rows):
        self.field = field
        self.rows = _canonical_matrix(field, rows)

    def __eq__(self, other):
        return self.field.q == other.field.q and self.rows == other.rows

    def __hash__(self):
        return hash((self.field.q, self.rows))

    def mul(self, other):
        return LiftedElement(self.field, linalg.mat_mul(self.field, self.rows, other.rows))

    def inverse(self):
        return LiftedElement(self.field, linalg.mat_inv(self.field, self.rows))

    def apply_point(self, p):
        return projgeom.normalize(self.field, linalg.mat_vec(self.field, self.rows, p))

    def apply_subspace(self, s):
        imgs = [linalg.mat_vec(self.field, self.rows, row) for row in s.rows]
        return Subspace.span(self.field, imgs)

    def projective_order(self, cap=100000):
        acc = self
        e = LiftedElement(self.field, tuple(tuple(int(i == j) for j in range(6)) for i in range(6)))
        for n in range(1, cap + 1):
            if acc == e:
                return n
            acc = acc.mul(self)
        raise RuntimeError("order cap exceeded")


@functools.lru_cache(maxsize=None)
def lift(g: GroupElement) -> LiftedElement:
    """6x6 matrix L with  coeffs(g . Q) ~ L @ coeffs(Q)  for every quadric Q.

    Column j is the coefficient vector of the j-th basis monomial after the
    substitution X <- g^{-1} X.
    """
    field = g.field
    h = g.inverse().rows
    u1, u2, u3 = h  # rows of h are the pulled-back linear forms
    pf = quadrics.product_form_coeffs
    cols = [
        pf(field, u1, u1),
        pf(field, u2, u2),
        pf(field, u3, u3),
        pf(field, u1, u2),
        pf(field, u1, u3),
        pf(field, u2, u3),
    ]
    rows = tuple(tuple(cols[j][i] for j in range(6)) for i in range(6))
    return LiftedElement(field, rows)


def act_quadric(g: GroupElement, quadric):
    """The quadric X -> Q(g^{-1} X); same class, transported rational points."""
    return quadrics.PlaneQuadric(g.field, lift(g).apply_point(quadric.coeffs))


# ---------------------------------------------------------------------------
# Singer cyclic subgroups and their normalizers


@dataclass(frozen=True)
class SingerData:
    field: object
    tower3: object
    generator: GroupElement  # multiplication by a generator of GF(q^3)*
    frob: GroupElement  # x -> x^q on GF(q^3), GF(q)-linear
    triangle: tuple  # the three fixed points of PG(2, q^3)
    minpoly: tuple  # cubic of the multiplier over GF(q), constant first


@functools.lru_cache(maxsize=None)
def _singer(q, p, k):
    import planecodes.galois as galois

    field = galois.field_make(p, k)
    t3 = tower(field, 3)
    ext = t3.ext
    w = ext.generator

    c0, c1, c2 = t3.coords(ext.pow(w, 3))  # w^3 in the basis (1, w, w^2)
    minpoly = (field.neg(c0), field.neg(c1), field.neg(c2), 1)
    gen = GroupElement(field, ((0, 0, c0), (1, 0, c1), (0, 1, c2)))

    frob_cols = [t3.coords(t3.frobenius(ext.pow(w, i))) for i in range(3)]
    frob = GroupElement(field, tuple(tuple(frob_cols[j][i] for j in range(3)) for i in range(3)))

    # fixed triangle: eigenvector of the multiplier for eigenvalue w, and its
    # coordinatewise Frobenius images
    gen_ext = [[t3.embed(x) for x in row] for row in gen.rows]
    shifted = [
        [ext.sub(gen_ext[i][j], w if i == j else 0) for j in range(3)] for i in range(3)
    ]
    kernel = linalg.nullspace(ext, shifted)
    if len(kernel) != 1:
        raise RuntimeError(f"Singer eigenspace has dimension {len(kernel)} at q = {q}")
    v0 = projgeom.normalize(ext, kernel[0])
    v1 = projgeom.normalize(ext, tuple(t3.frobenius(x) for x in v0))
    v2 = projgeom.normalize(ext, tuple(t3.frobenius(x) for x in v1))
    triangle = (v0, v1, v2)
    if len(set(triangle)) != 3 or linalg.rank(ext, triangle) != 3:
        raise RuntimeError("degenerate Singer triangle")
    if any(all(t3.is_base(x) for x in v) for v in triangle):
        raise RuntimeError("Singer triangle vertex is rational")

    return SingerData(field, t3, gen, frob, triangle, minpoly)


def singer(field) -> SingerData:
    """Singer data for PG(2, q): a cyclic group of order q^2 + q + 1 acting
    regularly on points, the order-3 normalizing map, and the fixed triangle."""
    return _singer(field.q, field.p, field.k)


def pgl_generators(field, sd: SingerData | None = None):
    """A small generating set of PGL(3, q): Singer cycle, a transvection, and
    (for q > 2) a diagonal torus element."""
    if sd is None:
        sd = singer(field)
    gens = [sd.generator, GroupElement(field, ((1, 1, 0), (0, 1, 0), (0, 0, 1)))]
    if field.q > 2:
        gens.append(GroupElement(field, ((field.generator, 0, 0), (0, 1, 0), (0, 0, 1))))
    return gens


# ---------------------------------------------------------------------------
# orbits


def orbit_subspaces(seed: Subspace, lifted, cap=None, workers=1):
    """BFS closure of a subspace under lifted generators and their inverses.

    Deterministic: FIFO frontier, children visited in generator order, result
    returned in first-seen order.  With workers > 1 the frontier images are
    computed in a thread pool but inserted in the same order, so the output
    is identical to a single-threaded run.
    """
    gens = list(lifted) + [g.inverse() for g in lifted]
    seen = {seed.rows}
    out = [seed]
    frontier = deque([seed])

    def images(s):
        return [g.apply_subspace(s) for g in gens]

    pool = ThreadPoolExecutor(max_workers=workers) if workers > 1 else None
    try:
        while frontier:
            batch = list(frontier)
            frontier.clear()
            if pool is None:
                results = map(images, batch)
            else:
                results = pool.map(images, batch, chunksize=16)
            for imgs in results:
                for img in imgs:
                    if img.rows not in seen:
                        seen.add(img.rows)
                        out.append(img)
                        frontier.append(img)
                        if cap is not None and len(out) > cap:
                            raise RuntimeError(f"orbit size cap {cap} exceeded")
    finally:
        if pool is not None:
            pool.shutdown()
    return out


def point_cycle(lifted: LiftedElement, start):
    """Orbit of a point of PG(5, q) under the cyclic group of one element."""
    out = [start]
    cur = lifted.apply_point(start)
    while cur != start:
        out.append(cur)
        cur = lifted.apply_point(cur)
    return out


def point_orbits(lifted: LiftedElement, points):
    """Cycle decomposition of a point set; deterministic by input order."""
    remaining = set(points)
    orbits = []
    for p in points:
        if p in remaining:
            cyc = point_cycle(lifted, p)
            orbits.append(cyc)
            remaining.difference_update(cyc)
    return orbits


def quadric_cycle(g: GroupElement, quadric):
    """Orbit of a quadric under the cyclic group generated by g."""
    out = [quadric]
    cur = act_quadric(g, quadric)
    while cur != quadric:
        out.append(cur)
        cur = act_quadric(g, cur)
    return out


def quadric_orbits(g: GroupElement, quadric_list):
    remaining = set(quadric_list)
    orbits = []
    for quad in quadric_list:
        if quad in remaining:
            cyc = quadric_cycle(g, quad)
            orbits.append(cyc)
            remaining.difference_update(cyc)
    return orbits


def triangle_orbit(sd: SingerData, gens=None):
    """Orbit of the Singer triangle's vertex set under PGL(3, q), acting on
    PG(2, q^3) with embedded matrices.  Keys are sorted vertex triples."""
    field = sd.field
    if gens is None:
        gens = pgl_generators(field, sd)
    gens = list(gens) + [g.inverse() for g in gens]
    t3 = sd.tower3

    def key(tri):
        return tuple(sorted(tri))

    start = key(sd.triangle)
    seen = {start}
    out = [start]
    frontier = deque([start])
    while frontier:
        tri = frontier.popleft()
        for g in gens:
            img = key(tuple(g.act_point_ext(t3, v) for v in tri))
            if img not in seen:
                seen.add(img)
                out.append(img)
                frontier.append(img)
    return out


# ---------------------------------------------------------------------------
# structural report for the lifted Singer action (q odd)


@dataclass
class SingerStructure:
    q: int
    s_point_count: int
    s_orbit_count: int
    orbit_sizes_on_s: list
    s_orbits_are_caps: bool
    s_orbits_span: bool
    invariant_planes: list
    invariant_planes_disjoint_from_s: bool

    @property
    def ok(self):
        q = self.q
        return (
            self.s_point_count == (q * q + 1) * (q * q + q + 1)
            and self.s_orbit_count == q * q + 1
            and all(n == q * q + q + 1 for n in self.orbit_sizes_on_s)
            and self.s_orbits_are_caps
            and len(self.invariant_planes) == 2
            and self.invariant_planes_disjoint_from_s
        )


def singer_structure_report(field) -> SingerStructure:
    """Decompose PG(5, q), q odd, under the lifted Singer cycle.

    Checks that the degenerate hypersurface splits into q^2 + 1 orbits of
    size q^2 + q + 1, each a cap spanning the space, and that exactly two
    invariant planes exist, both disjoint from the hypersurface and each a
    single orbit.
    """
    q = field.q
    if q % 2 == 0:
        raise ValueError("the partition into cap orbits is stated for q odd")
    sd = singer(field)
    a = lift(sd.generator)

    all_points = projgeom.enumerate_points(field, 5)
    cubic = quadrics.cubic_values(field, np.array(all_points, dtype=field._dtype))
    on_s = {p for p, c in zip(all_points, cubic.tolist()) if c == 0}

    orbits = point_orbits(a, all_points)
    s_orbits = []
    plane_orbits = []
    for orb in orbits:
        inside = sum(p in on_s for p in orb)
        if inside not in (0, len(orb)):
            raise RuntimeError("lifted Singer orbit straddles the degeneracy hypersurface")
        if inside:
            s_orbits.append(orb)
        elif len(orb) == q * q + q + 1 and linalg.rank(field, orb) == 3:
            plane_orbits.append(orb)

    caps = all(projgeom.no_three_collinear(field, orb) for orb in s_orbits)
    spans = all(linalg.rank(field, orb) == 6 for orb in s_orbits)
    inv_planes = [Subspace.span(field, orb) for orb in plane_orbits]

    return SingerStructure(
        q=q,
        s_point_count=len(on_s),
        s_orbit_count=len(s_orbits),
        orbit_sizes_on_s=[len(o) for o in s_orbits],
        s_orbits_are_caps=caps,
        s_orbits_span=spans,
        invariant_planes=inv_planes,
        invariant_planes_disjoint_from_s=all(
            not (set(pl.points()) & on_s) for pl in inv_planes
        ),
    )
