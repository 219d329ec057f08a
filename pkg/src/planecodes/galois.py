"""Exact arithmetic in GF(p^k) and in the subfield towers GF(q) < GF(q^m).

Field elements are plain Python ints in [0, p^k): the integer sum(c_i * p^i)
encodes the residue class sum(c_i * x^i) of the modulus polynomial.  The
modulus for a given (p, k) is always the lexicographically smallest monic
primitive polynomial of degree k over GF(p), coefficients compared from the
constant term upward, so element encodings are reproducible bit for bit
across runs and platforms.

Prime fields (k = 1) use the modulus x; their canonical generator is the
smallest primitive root mod p.  Extensions use the residue class of x, which
the modulus search guarantees has multiplicative order p^k - 1.
"""

from __future__ import annotations

import functools

import numpy as np

# Fields above this size would need impractically large log/exp tables.
MAX_FIELD_SIZE = 1 << 16


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def prime_factors(n: int) -> list[int]:
    """Distinct prime factors, ascending."""
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


# ---------------------------------------------------------------------------
# polynomials over GF(p): tuples of ints, constant term first, trimmed


def poly_trim(a):
    i = len(a)
    while i > 0 and a[i - 1] == 0:
        i -= 1
    return tuple(a[:i])


def poly_mul(p, a, b):
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return poly_trim(out)


def poly_mod(p, a, m):
    """Remainder of a modulo the monic polynomial m."""
    a = list(poly_trim(a))
    dm = len(m) - 1
    while len(a) > dm:
        lead = a.pop()
        if lead:
            shift = len(a) - dm
            for i in range(dm):
                a[shift + i] = (a[shift + i] - lead * m[i]) % p
    return poly_trim(a)


def poly_powmod(p, a, e, m):
    result = (1,)
    base = poly_mod(p, a, m)
    while e:
        if e & 1:
            result = poly_mod(p, poly_mul(p, result, base), m)
        base = poly_mod(p, poly_mul(p, base, base), m)
        e >>= 1
    return result


def _digits(n, p, width):
    return tuple((n // p**i) % p for i in range(width))


def _encode(digits, p):
    out = 0
    for d in reversed(digits):
        out = out * p + d
    return out


def _monic_polys(p, deg):
    for enc in range(p**deg):
        yield _digits(enc, p, deg) + (1,)


def is_irreducible(p, f):
    """Trial division against all monic polynomials of degree <= deg(f)/2."""
    deg = len(f) - 1
    if deg < 1 or f[-1] != 1:
        return False
    if deg == 1:
        return True
    for d in range(1, deg // 2 + 1):
        for g in _monic_polys(p, d):
            if not poly_mod(p, f, g):
                return False
    return True


def _x_is_primitive(p, f):
    """True if the residue of x has multiplicative order p^deg(f) - 1."""
    if f[0] == 0:  # x divides f
        return False
    order = p ** (len(f) - 1) - 1
    if poly_powmod(p, (0, 1), order, f) != (1,):
        return False
    for r in prime_factors(order):
        if poly_powmod(p, (0, 1), order // r, f) == (1,):
            return False
    return True


def _search_modulus(p, k):
    """Lexicographically smallest monic primitive polynomial of degree k.

    Coefficient tuples (c0, ..., c_{k-1}) are compared constant term first.
    """
    for c0_to_ck in range(p**k):
        coeffs = tuple((c0_to_ck // p ** (k - 1 - i)) % p for i in range(k))
        f = coeffs + (1,)
        if _x_is_primitive(p, f) and is_irreducible(p, f):
            return f
    raise RuntimeError(f"no primitive polynomial of degree {k} over GF({p})")


def _smallest_primitive_root(p):
    if p == 2:
        return 1
    factors = prime_factors(p - 1)
    for g in range(2, p):
        if all(pow(g, (p - 1) // r, p) != 1 for r in factors):
            return g
    raise RuntimeError(f"no primitive root mod {p}")


class GF:
    """The field GF(p^k) with canonical integer-encoded elements.

    Not constructed directly; use :func:`field_make`, which caches one
    instance per (p, k) and fixes the deterministic modulus.
    """

    def __init__(self, p, k, modulus, generator):
        self.p = p
        self.k = k
        self.q = p**k
        self.modulus = modulus  # (c0, ..., c_{k-1}, 1)
        self.generator = generator

    def __repr__(self):
        return f"GF({self.q})"

    def __reduce__(self):  # picklable via the cached factory
        return (field_make, (self.p, self.k))

    # -- scalar arithmetic ---------------------------------------------------

    def add(self, a, b):
        p = self.p
        if self.k == 1:
            return (a + b) % p
        out = 0
        mult = 1
        while a or b:
            out += ((a % p) + (b % p)) % p * mult
            a //= p
            b //= p
            mult *= p
        return out

    def neg(self, a):
        p = self.p
        if self.k == 1:
            return (-a) % p
        out = 0
        mult = 1
        while a:
            out += (-(a % p)) % p * mult
            a //= p
            mult *= p
        return out

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        if a == 0 or b == 0:
            return 0
        exp, log = self._exp_log
        return exp[(log[a] + log[b]) % (self.q - 1)]

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of 0")
        exp, log = self._exp_log
        return exp[(-log[a]) % (self.q - 1)]

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a, e):
        if a == 0:
            if e < 0:
                raise ZeroDivisionError("negative power of 0")
            return 1 if e == 0 else 0
        exp, log = self._exp_log
        return exp[(log[a] * e) % (self.q - 1)]

    def order(self, a):
        """Multiplicative order of a nonzero element."""
        if a == 0:
            raise ZeroDivisionError("order of 0")
        _, log = self._exp_log
        n = self.q - 1
        import math

        return n // math.gcd(n, log[a])

    def elements(self):
        return range(self.q)

    # -- encodings -----------------------------------------------------------

    def to_poly(self, a):
        """Digits of the encoding = coefficients of the representative."""
        return _digits(a, self.p, self.k)

    def from_poly(self, coeffs):
        reduced = poly_mod(self.p, tuple(coeffs), self.modulus)
        return _encode(reduced + (0,) * (self.k - len(reduced)), self.p)

    def _mul_raw(self, a, b):
        """Table-free multiply, used only to bootstrap the log/exp tables."""
        prod = poly_mul(self.p, _digits(a, self.p, self.k), _digits(b, self.p, self.k))
        return self.from_poly(prod)

    @functools.cached_property
    def _exp_log(self):
        q = self.q
        exp = [0] * max(q - 1, 1)
        log = [0] * q
        val = 1
        for i in range(q - 1):
            exp[i] = val
            log[val] = i
            val = self._mul_raw(val, self.generator)
        if val != 1:
            raise RuntimeError(f"generator {self.generator} of {self!r} has wrong order")
        return exp, log

    # -- numpy lookup tables for the vectorised kernels -----------------------

    @functools.cached_property
    def _dtype(self):
        return np.uint8 if self.q <= 256 else np.uint16

    @functools.cached_property
    def add_table(self):
        q, p, k = self.q, self.p, self.k
        digits = (np.arange(q)[:, None] // p ** np.arange(k)[None, :]) % p
        s = (digits[:, None, :] + digits[None, :, :]) % p
        return (s * p ** np.arange(k)[None, None, :]).sum(axis=-1).astype(self._dtype)

    @functools.cached_property
    def sub_table(self):
        return self.add_table[:, self.neg_table]

    @functools.cached_property
    def neg_table(self):
        return np.array([self.neg(a) for a in range(self.q)], dtype=self._dtype)

    @functools.cached_property
    def mul_table(self):
        q = self.q
        exp, log = self._exp_log
        exp_a = np.array(exp, dtype=self._dtype)
        log_a = np.array([0] + log[1:], dtype=np.int64)
        out = np.zeros((q, q), dtype=self._dtype)
        out[1:, 1:] = exp_a[(log_a[1:, None] + log_a[None, 1:]) % (q - 1)]
        return out

    @functools.cached_property
    def inv_table(self):
        """inv_table[0] is a 0 sentinel; callers must not divide by zero."""
        out = np.zeros(self.q, dtype=self._dtype)
        for a in range(1, self.q):
            out[a] = self.inv(a)
        return out


@functools.lru_cache(maxsize=None)
def field_make(p: int, k: int = 1) -> GF:
    """The canonical GF(p^k): deterministic modulus, cached instance."""
    if not is_prime(p):
        raise ValueError(f"p = {p} is not prime")
    if k < 1:
        raise ValueError(f"extension degree k = {k} must be >= 1")
    if p**k > MAX_FIELD_SIZE:
        raise ValueError(f"field size {p}^{k} exceeds the supported bound {MAX_FIELD_SIZE}")
    if k == 1:
        return GF(p, 1, (0, 1), _smallest_primitive_root(p))
    modulus = _search_modulus(p, k)
    return GF(p, k, modulus, p)  # generator = residue of x


# ---------------------------------------------------------------------------
# towers GF(q) < GF(q^m)


class Tower:
    """The extension GF(q) < GF(q^m) with an explicit verified embedding.

    The embedding sends the base generator to the smallest-encoded root of
    its minimal polynomial inside the extension; any such root gives a field
    homomorphism, and picking the smallest makes the choice reproducible.
    """

    def __init__(self, base: GF, m: int):
        if m < 2:
            raise ValueError("tower degree m must be >= 2")
        self.base = base
        self.m = m
        self.ext = field_make(base.p, base.k * m)
        self.embed_table = self._build_embed_table()
        self._down = {v: a for a, v in enumerate(self.embed_table)}
        self._coord_mat, self._coord_inv = self._build_coord_mats()

    def __repr__(self):
        return f"Tower(GF({self.base.q}) < GF({self.ext.q}))"

    @property
    def embed_image(self):
        """Image of the base field's canonical generator."""
        return self.embed_table[self.base.generator]

    def _minpoly_of_base_generator(self):
        base = self.base
        if base.k == 1:
            return ((-base.generator) % base.p, 1)
        return base.modulus

    def _build_embed_table(self):
        base, ext = self.base, self.ext
        f = self._minpoly_of_base_generator()
        roots = []
        for c in range(ext.q):
            acc = 0
            for coeff in reversed(f):  # Horner; prime-field coeffs embed as themselves
                acc = ext.add(ext.mul(acc, c), coeff)
            if acc == 0:
                roots.append(c)
        if len(roots) != base.k:
            raise RuntimeError(f"minimal polynomial has {len(roots)} roots in {ext!r}")
        h = min(roots)
        table = [0] * base.q
        for a in range(base.q):
            acc = 0
            for d in reversed(base.to_poly(a)):
                acc = ext.add(ext.mul(acc, h), d)
            table[a] = acc
        return tuple(table)

    def _build_coord_mats(self):
        # GF(p)-matrix sending stacked base-field digit vectors to ext digits,
        # for the GF(q)-basis (1, W, ..., W^{m-1}) of the extension.
        base, ext, m = self.base, self.ext, self.m
        p, k = base.p, base.k
        n = k * m
        cols = []
        for i in range(m):
            wi = ext.pow(ext.generator, i)
            for j in range(k):
                e = ext.mul(wi, self.embed_table[base.from_poly((0,) * j + (1,))])
                cols.append(_digits(e, p, n))
        mat = [[cols[t][r] for t in range(n)] for r in range(n)]
        inv = _prime_mat_inv(p, mat)
        return mat, inv

    def embed(self, a):
        """Image of a base-field element in the extension."""
        if not 0 <= a < self.base.q:
            raise ValueError(f"{a} is not an element of {self.base!r}")
        return self.embed_table[a]

    def down(self, a):
        """Preimage of an extension element lying in the embedded base field."""
        try:
            return self._down[a]
        except KeyError:
            raise ValueError(f"{a} is not in the embedded {self.base!r}") from None

    def is_base(self, a):
        return a in self._down

    def frobenius(self, a, i=1):
        """a ↦ a^(q^i) on the extension; the identity when i ≡ 0 mod m."""
        return self.ext.pow(a, self.base.q ** (i % self.m))

    def coords(self, a):
        """GF(q)-coordinates of an ext element in the basis (1, W, ..., W^{m-1})."""
        base, p = self.base, self.base.p
        d = _digits(a, p, base.k * self.m)
        v = [sum(self._coord_inv[r][t] * d[t] for t in range(len(d))) % p for r in range(len(d))]
        return tuple(_encode(v[i * base.k : (i + 1) * base.k], p) for i in range(self.m))

    def uncoords(self, coords):
        base, ext = self.base, self.ext
        acc = 0
        for i in reversed(range(self.m)):
            acc = ext.add(ext.mul(acc, ext.generator), self.embed_table[coords[i]])
        return acc


def _prime_mat_inv(p, mat):
    """Inverse of a square matrix over GF(p), by Gauss-Jordan on [M | I]."""
    n = len(mat)
    aug = [list(row) + [int(i == j) for j in range(n)] for i, row in enumerate(mat)]
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, n) if aug[i][c] % p), None)
        if piv is None:
            raise RuntimeError("singular matrix over GF(p)")
        aug[r], aug[piv] = aug[piv], aug[r]
        inv = pow(aug[r][c], p - 2, p) if p > 2 else 1
        aug[r] = [(x * inv) % p for x in aug[r]]
        for i in range(n):
            if i != r and aug[i][c] % p:
                f = aug[i][c]
                aug[i] = [(x - f * y) % p for x, y in zip(aug[i], aug[r])]
        r += 1
    return [row[n:] for row in aug]


@functools.lru_cache(maxsize=None)
def _tower(p, k, m):
    return Tower(field_make(p, k), m)


def tower(base: GF, m: int) -> Tower:
    """The cached tower GF(q) < GF(q^m) over the canonical base field."""
    return _tower(base.p, base.k, m)


def frobenius(t: Tower, a, i=1):
    """Functional form of :meth:`Tower.frobenius`."""
    return t.frobenius(a, i)


def embed(t: Tower, a):
    """Functional form of :meth:`Tower.embed`."""
    return t.embed(a)
