"""Points, lines and subspaces of PG(n, q) with canonical representatives.

Points are tuples of field encodings whose first nonzero coordinate is 1.
Subspaces carry their reduced-echelon basis, so equality, hashing, sorting
and file output are all plain tuple comparisons.  The module also holds the
vectorised plane enumeration of PG(5, q) used by the completeness search.
"""

from __future__ import annotations

import functools
import itertools

import numpy as np

from planecodes import linalg


def pg_point_count(q, n):
    return (q ** (n + 1) - 1) // (q - 1)


def gaussian_binomial(n, k, q):
    num = den = 1
    for i in range(k):
        num *= q ** (n - i) - 1
        den *= q ** (i + 1) - 1
    assert num % den == 0
    return num // den


def normalize(field, v):
    """Canonical representative of a projective point: first nonzero entry 1."""
    lead = next((x for x in v if x), None)
    if lead is None:
        raise ValueError("the zero vector is not a projective point")
    if lead == 1:
        return tuple(v)
    inv = field.inv(lead)
    return tuple(field.mul(inv, x) for x in v)


def points_array(field, n):
    """All points of PG(n, q) as a (count, n+1) array of canonical tuples.

    Blocks are ordered by the position of the leading 1, tails counting up
    in base q, which fixes the enumeration order everywhere downstream.
    """
    q = field.q
    blocks = []
    for lead in range(n + 1):
        tail = n - lead
        count = q**tail
        block = np.zeros((count, n + 1), dtype=field._dtype)
        block[:, lead] = 1
        idx = np.arange(count)
        for t in range(tail):
            block[:, lead + 1 + t] = (idx // q ** (tail - 1 - t)) % q
        blocks.append(block)
    return np.concatenate(blocks)


def enumerate_points(field, n):
    """All points of PG(n, q) as tuples, in the points_array order."""
    return [tuple(int(x) for x in row) for row in points_array(field, n)]


@functools.lru_cache(maxsize=None)
def _pg2_points(q, p, k):
    import planecodes.galois as galois

    return points_array(galois.field_make(p, k), 2)


def pg2_points(field):
    return _pg2_points(field.q, field.p, field.k)


class Subspace:
    """A projective subspace of PG(n, q) in reduced-echelon basis form."""

    __slots__ = ("field", "rows")

    def __init__(self, field, rows):
        self.field = field
        self.rows = rows  # canonical; use span() unless rows are already rref

    @classmethod
    def span(cls, field, vectors):
        rows, _ = linalg.rref(field, list(vectors))
        return cls(field, rows)

    @property
    def rank(self):
        return len(self.rows)

    @property
    def ambient(self):
        return len(self.rows[0]) if self.rows else 0

    def __eq__(self, other):
        return self.field.q == other.field.q and self.rows == other.rows

    def __hash__(self):
        return hash((self.field.q, self.rows))

    def __lt__(self, other):
        return self.rows < other.rows

    def __repr__(self):
        return f"Subspace(rank {self.rank} of PG({self.ambient - 1}, {self.field.q}))"

    def contains_point(self, v):
        field = self.field
        v = list(v)
        for row in self.rows:
            c = next(i for i, x in enumerate(row) if x)
            f = v[c]
            if f:
                v = [field.sub(x, field.mul(f, y)) for x, y in zip(v, row)]
        return not any(v)

    def contains(self, other):
        return all(self.contains_point(r) for r in other.rows)

    def points(self):
        """All (q^r - 1)/(q - 1) points, one canonical tuple each."""
        field = self.field
        out = []
        for coeffs in _normalized_tuples(field, self.rank):
            v = [0] * self.ambient
            for c, row in zip(coeffs, self.rows):
                if c:
                    v = [field.add(x, field.mul(c, y)) for x, y in zip(v, row)]
            out.append(normalize(field, v))
        return out

    def point_set(self):
        return frozenset(self.points())

    def join(self, other):
        return Subspace.span(self.field, list(self.rows) + list(other.rows))

    def meet(self, other):
        rows = linalg.meet_rows(self.field, self.rows, other.rows, self.ambient)
        return Subspace(self.field, rows)

    def dim_pair(self, other):
        """(dim(U+W), dim(U∩W)) as vector-space dimensions."""
        if self.ambient != other.ambient:
            raise ValueError("ambient spaces differ")
        s = linalg.rank(self.field, list(self.rows) + list(other.rows))
        return s, self.rank + other.rank - s


def _normalized_tuples(field, r):
    """Coefficient tuples of length r with first nonzero entry 1 (lex order by lead)."""
    q = field.q
    out = []
    for lead in range(r):
        for tail in itertools.product(range(q), repeat=r - lead - 1):
            out.append((0,) * lead + (1,) + tail)
    return out


# ---------------------------------------------------------------------------
# lines of PG(2, q)


def line_through(field, p1, p2):
    """Dual coordinates of the unique line of PG(2, q) through two points."""
    a, b, c = p1
    d, e, f = p2
    u = (
        field.sub(field.mul(b, f), field.mul(c, e)),
        field.sub(field.mul(c, d), field.mul(a, f)),
        field.sub(field.mul(a, e), field.mul(b, d)),
    )
    if not any(u):
        raise ValueError("the two points coincide")
    return normalize(field, u)


def incident(field, u, p):
    acc = 0
    for x, y in zip(u, p):
        if x and y:
            acc = field.add(acc, field.mul(x, y))
    return acc == 0


def points_on_line(field, u):
    """The q + 1 points of a line of PG(2, q), from a kernel basis."""
    basis = linalg.nullspace(field, [u])
    assert len(basis) == 2
    out = []
    for coeffs in _normalized_tuples(field, 2):
        v = [0, 0, 0]
        for c, row in zip(coeffs, basis):
            if c:
                v = [field.add(x, field.mul(c, y)) for x, y in zip(v, row)]
        out.append(normalize(field, v))
    return out


def lines_of_pg2(field):
    """All q^2 + q + 1 lines, as normalized dual tuples."""
    return enumerate_points(field, 2)


def no_three_collinear(field, points):
    """Cap test: no 3 of the given points of PG(n, q) lie on a common line."""
    pts = list(points)
    for a, b, c in itertools.combinations(pts, 3):
        if linalg.rank(field, [a, b, c]) <= 2:
            return False
    return True


# ---------------------------------------------------------------------------
# planes of PG(5, q): enumeration and vectorised per-plane keys

PLANE_ENUM_MAX_Q = 5


def plane_count(q):
    return gaussian_binomial(6, 3, q)


def plane_batches(field, chunk=1 << 16, max_q=PLANE_ENUM_MAX_Q):
    """All rank-3 echelon matrices over GF(q)^6 as (B, 3, 6) uint8 batches.

    Pivot-column triples run in lexicographic order; within a pattern the
    free entries count up in base q (row-major).  Every emitted matrix is
    already in reduced echelon form, so this order is the canonical plane
    enumeration order used by the completeness search and its tie-breaking.
    """
    q = field.q
    if q > max_q:
        raise ValueError(f"plane enumeration bound exceeded: q = {q} > {max_q}")
    for pivots in itertools.combinations(range(6), 3):
        free = [
            (r, c)
            for r in range(3)
            for c in range(pivots[r] + 1, 6)
            if c not in pivots
        ]
        f = len(free)
        total = q**f
        for start in range(0, total, chunk):
            idx = np.arange(start, min(start + chunk, total))
            mats = np.zeros((len(idx), 3, 6), dtype=field._dtype)
            for r, c in zip(range(3), pivots):
                mats[:, r, c] = 1
            for t, (r, c) in enumerate(free):
                mats[:, r, c] = (idx // q ** (f - 1 - t)) % q
            yield mats


def enumerate_planes5(field, max_q=PLANE_ENUM_MAX_Q):
    """All planes of PG(5, q) as canonical Subspaces, enumeration order."""
    for batch in plane_batches(field, max_q=max_q):
        for mat in batch:
            yield Subspace(field, tuple(tuple(int(x) for x in row) for row in mat))


@functools.lru_cache(maxsize=None)
def _line_point_incidence(q, p, k):
    """(L, q+1) indices: for each dual point of PG(2, q), the plane-local
    indices of the combination points lying on it."""
    import planecodes.galois as galois

    field = galois.field_make(p, k)
    pts = pg2_points(field)  # (P, 3) - used both as points and as dual lines
    gram = linalg.bmatmul(field, pts, pts.T)
    idx = [np.nonzero(gram[i] == 0)[0] for i in range(len(pts))]
    assert all(len(row) == q + 1 for row in idx)
    return np.stack(idx)


def plane_point_codes(field, batch):
    """Packed point codes of every point of every plane in a (B, 3, 6) batch."""
    pts = pg2_points(field)  # (P, 3) normalized combination coefficients
    mt, at = field.mul_table, field.add_table
    acc = None
    for t in range(3):
        term = mt[pts[None, :, t, None], batch[:, None, t, :]]
        acc = term if acc is None else at[acc, term]
    return linalg.bencode(field, linalg.bnormalize_rows(field, acc))


def plane_line_keys(field, batch):
    """One int64 key per line of each plane in a (B, 3, 6) batch.

    The key is the pair of smallest point codes on the line.  Two distinct
    lines share at most one point, so the pair identifies the line; it is a
    canonical function of the subspace, cheap to compute in bulk.
    """
    codes = plane_point_codes(field, batch)
    incidence = _line_point_incidence(field.q, field.p, field.k)
    line_codes = codes[:, incidence]  # (B, L, q+1)
    two = np.partition(line_codes, 1, axis=-1)[..., :2]
    return (two[..., 0] << 24) | two[..., 1]


def subspaces_to_batch(field, subspaces):
    """Stack rank-3 subspaces into the (B, 3, 6) array format."""
    out = np.zeros((len(subspaces), 3, 6), dtype=field._dtype)
    for i, s in enumerate(subspaces):
        out[i] = s.rows
    return out
