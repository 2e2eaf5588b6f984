"""Exact arithmetic foundation.

Prime fields, extension fields, dense polynomials over F_p, matrix rank over
any finite field, and arbitrary-precision integer number theory (primality,
Kronecker symbol). Polynomials are dense little-endian coefficient lists:
index = exponent, no trailing zeros above the degree.

Primes fed to the expansion-based paths (poly_pow and everything built on it)
are expected below 2**20; the pure residue arithmetic here (is_prime,
kronecker, powmod-based factoring) takes arbitrary-precision input.
"""

import random

from .errors import DomainError, NotSquarefreeError, ResourceLimitError

DEGREE_CAP = 1 << 26  # max coefficients a full expansion may occupy

# Strong-pseudoprime bases covering all n < 3.317e24, beyond 2**64.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
_MR_DET_BOUND = 3317044064679887385961981
_MR_EXTRA_ROUNDS = 64  # error < 4**-64 = 2**-128 for larger n

_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47)


def _mr_witness(a, d, s, n):
    x = pow(a, d, n)
    if x == 1 or x == n - 1:
        return False
    for _ in range(s - 1):
        x = x * x % n
        if x == n - 1:
            return False
    return True


def is_prime(n):
    """Miller-Rabin; deterministic below 3.3e24, 64 extra rounds above."""
    if n < 2:
        return False
    for q in _SMALL_PRIMES:
        if n == q:
            return True
        if n % q == 0:
            return False
    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        if _mr_witness(a, d, s, n):
            return False
    if n >= _MR_DET_BOUND:
        rng = random.Random(n)
        for _ in range(_MR_EXTRA_ROUNDS):
            a = rng.randrange(2, n - 1)
            if _mr_witness(a, d, s, n):
                return False
    return True


def kronecker(D, n):
    """Kronecker symbol (D/n) for positive n, standard convention at 2."""
    if n <= 0:
        raise DomainError("kronecker: n must be positive")
    r = 1
    while n % 2 == 0:
        n //= 2
        if D % 2 == 0:
            return 0
        if D % 8 in (3, 5):
            r = -r
    a = D % n
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                r = -r
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            r = -r
        a %= n
    return r if n == 1 else 0


# ---------------------------------------------------------------------------
# dense polynomials over F_p


def poly_trim(f):
    d = len(f) - 1
    while d > 0 and f[d] == 0:
        d -= 1
    return f[: d + 1]


def poly_deg(f):
    """Degree, with deg 0 = -1 for the zero polynomial."""
    d = len(f) - 1
    while d >= 0 and f[d] == 0:
        d -= 1
    return d


_SCHOOLBOOK_CUTOFF = 48


def poly_mul(f, g, p):
    """Product over F_p via Kronecker substitution into one big multiply."""
    n, m = len(f), len(g)
    if n == 0 or m == 0:
        return [0]
    if min(n, m) <= _SCHOOLBOOK_CUTOFF:
        out = [0] * (n + m - 1)
        for i, a in enumerate(f):
            if a:
                for j, b in enumerate(g):
                    out[i + j] += a * b
        return [c % p for c in out]
    # chunk wide enough that packed product coefficients never carry over
    bits = 2 * (p - 1).bit_length() + min(n, m).bit_length() + 1
    w = (bits + 7) // 8
    fi = int.from_bytes(b"".join(c.to_bytes(w, "little") for c in f), "little")
    gi = int.from_bytes(b"".join(c.to_bytes(w, "little") for c in g), "little")
    raw = (fi * gi).to_bytes(w * (n + m), "little")
    return [
        int.from_bytes(raw[i * w : (i + 1) * w], "little") % p
        for i in range(n + m - 1)
    ]


def poly_pow(f, e, p, cap=DEGREE_CAP):
    """Full expansion of f**e over F_p. Degree capped at cap coefficients."""
    if e < 0:
        raise DomainError("poly_pow: negative exponent")
    f = poly_trim([c % p for c in f])
    if f == [0]:
        raise DomainError("poly_pow: zero polynomial")
    if e == 0:
        return [1]
    if (len(f) - 1) * e + 1 > cap:
        raise ResourceLimitError(
            f"poly_pow: deg {len(f) - 1} ** {e} exceeds cap of {cap} coefficients"
        )
    acc = None
    base = f
    while True:
        if e & 1:
            acc = base if acc is None else poly_mul(acc, base, p)
        e >>= 1
        if not e:
            return acc
        base = poly_mul(base, base, p)


def poly_divmod(f, g, p):
    g = poly_trim([c % p for c in g])
    if g == [0]:
        raise ZeroDivisionError("poly_divmod: division by zero polynomial")
    f = [c % p for c in f]
    dg = len(g) - 1
    inv_lc = pow(g[dg], -1, p)
    q = [0] * max(len(f) - dg, 1)
    r = list(f)
    for i in range(len(r) - 1 - dg, -1, -1):
        c = r[i + dg]
        if c:
            c = c * inv_lc % p
            q[i] = c
            for j, b in enumerate(g):
                r[i + j] = (r[i + j] - c * b) % p
    return poly_trim(q), poly_trim(r[:dg] or [0])


def poly_gcd(f, g, p):
    """Monic gcd over F_p."""
    a = poly_trim([c % p for c in f])
    b = poly_trim([c % p for c in g])
    while b != [0]:
        a, b = b, poly_divmod(a, b, p)[1]
    if a != [0]:
        inv = pow(a[-1], -1, p)
        a = [c * inv % p for c in a]
    return a


def poly_powmod(f, e, m, p):
    """f**e mod m over F_p by square and multiply."""
    acc = [1]
    base = poly_divmod(f, m, p)[1]
    while e:
        if e & 1:
            acc = poly_divmod(poly_mul(acc, base, p), m, p)[1]
        e >>= 1
        if e:
            base = poly_divmod(poly_mul(base, base, p), m, p)[1]
    return acc


def poly_deriv(f, p):
    return poly_trim([i * c % p for i, c in enumerate(f)][1:] or [0])


def factor_degree_profile(f, p):
    """Degrees of the irreducible factors of squarefree monic f mod p.

    Distinct-degree factorization only; the factors themselves are never
    constructed. Raises NotSquarefreeError when f has a repeated factor mod p,
    which callers must treat as ramified-or-index-divisor and exclude.
    """
    f = poly_trim([c % p for c in f])
    d = len(f) - 1
    if d < 0 or f == [0]:
        raise DomainError("factor_degree_profile: zero polynomial")
    if f[-1] != 1:
        raise DomainError("factor_degree_profile: polynomial must be monic")
    if d == 0:
        return []
    if poly_gcd(f, poly_deriv(f, p), p) != [1]:
        raise NotSquarefreeError(f"not squarefree mod {p}")
    degrees = []
    v = f
    h = [0, 1]
    k = 0
    while True:
        dv = len(v) - 1
        if dv <= 0:
            break
        if 2 * (k + 1) > dv:
            degrees.append(dv)  # remainder has no factor of degree <= dv/2
            break
        k += 1
        h = poly_powmod(h, p, v, p)
        diff = list(h) + [0] * (2 - len(h))
        diff[1] = (diff[1] - 1) % p
        g = poly_gcd(v, diff, p)
        dg = len(g) - 1
        if dg > 0:
            degrees.extend([k] * (dg // k))
            v = poly_divmod(v, g, p)[0]
            h = poly_divmod(h, v, p)[1]
    return sorted(degrees)


def find_irreducible(p, k, seed=0):
    """Monic irreducible of degree k over F_p, deterministic per seed."""
    if k < 1:
        raise DomainError("find_irreducible: k must be >= 1")
    if k == 1:
        return [0, 1]
    rng = random.Random(f"irr:{seed}:{p}:{k}")
    while True:
        f = [rng.randrange(p) for _ in range(k)] + [1]
        if _is_irreducible(f, p):
            return f


def _is_irreducible(f, p):
    # no factor of degree <= k/2 implies irreducible
    k = len(f) - 1
    if poly_gcd(f, poly_deriv(f, p), p) != [1]:
        return False
    h = [0, 1]
    for _ in range(k // 2):
        h = poly_powmod(h, p, f, p)
        diff = list(h) + [0] * (2 - len(h))
        diff[1] = (diff[1] - 1) % p
        if poly_gcd(f, diff, p) != [1]:
            return False
    return True


# ---------------------------------------------------------------------------
# fields and matrices


class PrimeField:
    """F_p with elements as canonical int residues."""

    def __init__(self, p):
        if not is_prime(p):
            raise DomainError(f"PrimeField: {p} is not prime")
        self.p = p

    def zero(self):
        return 0

    def one(self):
        return 1

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return a * b % self.p

    def inv(self, a):
        return pow(a, -1, self.p)

    def is_zero(self, a):
        return a % self.p == 0

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("PrimeField", self.p))

    def __repr__(self):
        return f"PrimeField({self.p})"


class ExtField:
    """F_{p^k} as F_p[t]/(modulus), elements as coefficient tuples of length k."""

    def __init__(self, base, degree, modulus=None, seed=0):
        if degree < 1:
            raise DomainError("ExtField: degree must be >= 1")
        self.base = base
        self.degree = degree
        p = base.p
        if modulus is None:
            modulus = find_irreducible(p, degree, seed=seed)
        modulus = poly_trim([c % p for c in modulus])
        if len(modulus) - 1 != degree or modulus[-1] != 1:
            raise DomainError("ExtField: modulus must be monic of the stated degree")
        if degree > 1 and not _is_irreducible(modulus, p):
            raise DomainError("ExtField: modulus is reducible")
        self.modulus = modulus
        self.cardinality = p**degree

    def _pad(self, f):
        return tuple(list(f) + [0] * (self.degree - len(f)))

    def zero(self):
        return self._pad([])

    def one(self):
        return self._pad([1])

    def from_base(self, a):
        return self._pad([a % self.base.p])

    def add(self, a, b):
        p = self.base.p
        return tuple((x + y) % p for x, y in zip(a, b))

    def sub(self, a, b):
        p = self.base.p
        return tuple((x - y) % p for x, y in zip(a, b))

    def mul(self, a, b):
        p = self.base.p
        prod = poly_mul(list(a), list(b), p)
        return self._pad(poly_divmod(prod, self.modulus, p)[1])

    def inv(self, a):
        p = self.base.p
        # extended Euclid in F_p[t]; r1 stays coprime to the irreducible modulus
        r0, r1 = self.modulus, poly_trim(list(a))
        if r1 == [0]:
            raise ZeroDivisionError("ExtField: inverse of zero")
        s0, s1 = [0], [1]
        while poly_deg(r1) > 0:
            q, r = poly_divmod(r0, r1, p)
            qs = poly_mul(q, s1, p)
            n = max(len(s0), len(qs))
            diff = [
                ((s0[i] if i < len(s0) else 0) - (qs[i] if i < len(qs) else 0)) % p
                for i in range(n)
            ]
            r0, r1 = r1, r
            s0, s1 = s1, poly_trim(diff)
        c = pow(r1[0], -1, p)
        return self._pad([x * c % p for x in s1])

    def is_zero(self, a):
        return all(x % self.base.p == 0 for x in a)

    def __repr__(self):
        return f"ExtField(p={self.base.p}, k={self.degree})"


class Matrix:
    """Rectangular matrix with entries canonical in the given field."""

    def __init__(self, field, rows):
        rows = [list(r) for r in rows]
        if rows and any(len(r) != len(rows[0]) for r in rows):
            raise DomainError("Matrix: ragged rows")
        if isinstance(field, PrimeField):
            rows = [[c % field.p for c in r] for r in rows]
        self.field = field
        self.rows = rows
        self.nrows = len(rows)
        self.ncols = len(rows[0]) if rows else 0

    def __repr__(self):
        return f"Matrix({self.nrows}x{self.ncols} over {self.field!r})"


def matrix_rank(m):
    """Rank by Gaussian elimination over m's field."""
    if isinstance(m.field, PrimeField):
        return _rank_modp(m.rows, m.field.p)
    F = m.field
    rows = [list(r) for r in m.rows]
    rank = 0
    col = 0
    ncols = m.ncols
    while rank < len(rows) and col < ncols:
        piv = next(
            (i for i in range(rank, len(rows)) if not F.is_zero(rows[i][col])), None
        )
        if piv is None:
            col += 1
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv = F.inv(rows[rank][col])
        rows[rank] = [F.mul(inv, x) for x in rows[rank]]
        for i in range(len(rows)):
            if i != rank and not F.is_zero(rows[i][col]):
                c = rows[i][col]
                rows[i] = [F.sub(x, F.mul(c, y)) for x, y in zip(rows[i], rows[rank])]
        rank += 1
        col += 1
    return rank


def _rank_modp(rows, p):
    rows = [[c % p for c in r] for r in rows]
    rank = 0
    col = 0
    ncols = len(rows[0]) if rows else 0
    while rank < len(rows) and col < ncols:
        piv = next((i for i in range(rank, len(rows)) if rows[i][col]), None)
        if piv is None:
            col += 1
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv = pow(rows[rank][col], -1, p)
        rows[rank] = [x * inv % p for x in rows[rank]]
        for i in range(len(rows)):
            if i != rank and rows[i][col]:
                c = rows[i][col]
                rows[i] = [(x - c * y) % p for x, y in zip(rows[i], rows[rank])]
        rank += 1
        col += 1
    return rank
