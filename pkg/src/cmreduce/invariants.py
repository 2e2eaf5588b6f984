"""Ground-truth invariants of hyperelliptic curves y^2 = f(x) over F_p.

Everything here is computed from the curve equation alone: Cartier-Manin
matrices give the p-rank and a-number, exhaustive point counts over small
extensions give the L-polynomial, and the Newton polygon falls out of the
L-polynomial. The group-scheme classifier maps (p-rank, a-number, slopes)
to the p-torsion label for genus up to 3.
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .errors import (
    BadReductionError,
    DomainError,
    InternalInconsistencyError,
    ResourceLimitError,
)
from .ff_arith import (
    Matrix,
    PrimeField,
    find_irreducible,
    is_prime,
    matrix_rank,
    poly_deriv,
    poly_gcd,
    poly_pow,
    poly_trim,
)

POINT_COUNT_BUDGET = 1 << 26  # largest field enumerated exhaustively
SLOPE_BUDGET = 1 << 21  # default p^g ceiling for L-polynomial work
_CHUNK = 1 << 22
_EXT_CHUNK = 1 << 18


class ReducedCurve:
    """Nonsingular y^2 = f(x) over F_p, p odd, deg f in {2g+1, 2g+2}."""

    __slots__ = ("p", "coeffs", "genus")

    def __init__(self, p, coeffs, genus=None):
        if p == 2:
            raise BadReductionError(2, "characteristic 2 is excluded")
        if p < 3 or not is_prime(p):
            raise DomainError(f"ReducedCurve: p = {p} is not an odd prime")
        f = poly_trim([int(c) % p for c in coeffs])
        d = len(f) - 1
        g = (d - 1) // 2 if d % 2 else (d - 2) // 2
        if genus is not None and genus != g:
            raise BadReductionError(p, f"degree {d} does not fit genus {genus}")
        if g < 1:
            raise DomainError(f"ReducedCurve: degree {d} gives no curve")
        if len(poly_gcd(f, poly_deriv(f, p), p)) != 1:
            raise BadReductionError(p, "f has a repeated root")
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "coeffs", tuple(f))
        object.__setattr__(self, "genus", g)

    def __setattr__(self, *a):
        raise AttributeError("ReducedCurve is immutable")

    @property
    def degree(self):
        return len(self.coeffs) - 1

    def __eq__(self, other):
        return (
            isinstance(other, ReducedCurve)
            and other.p == self.p
            and other.coeffs == self.coeffs
        )

    def __hash__(self):
        return hash((self.p, self.coeffs))

    def __repr__(self):
        return f"ReducedCurve(p={self.p}, genus={self.genus}, f={list(self.coeffs)})"


@lru_cache(maxsize=256)
def _cartier_rows(p, coeffs, g):
    c = poly_pow(list(coeffs), (p - 1) // 2, p)

    def entry(idx):
        return c[idx] if 0 <= idx < len(c) else 0

    mats = []
    for ell in range(g):
        tw = p**ell
        mats.append(
            tuple(
                tuple(pow(entry(i * p - j), tw, p) for j in range(1, g + 1))
                for i in range(1, g + 1)
            )
        )
    return tuple(mats)


def cartier_manin(curve):
    """Matrices A_0 .. A_{g-1} with (A_l)_{i,j} = (c_{ip-j})^(p^l), where c_m
    is the x^m coefficient of f^((p-1)/2)."""
    field = PrimeField(curve.p)
    return tuple(
        Matrix(field, [list(row) for row in m])
        for m in _cartier_rows(curve.p, curve.coeffs, curve.genus)
    )


def _matmul(a, b, p):
    n = len(a)
    return [
        [sum(a[i][t] * b[t][j] for t in range(n)) % p for j in range(n)]
        for i in range(n)
    ]


def p_rank(curve):
    """Rank of M = A_{g-1} ... A_1 A_0."""
    mats = _cartier_rows(curve.p, curve.coeffs, curve.genus)
    m = [list(row) for row in mats[0]]
    for ell in range(1, curve.genus):
        m = _matmul([list(row) for row in mats[ell]], m, curve.p)
    return matrix_rank(Matrix(PrimeField(curve.p), m))


def a_number(curve):
    """g minus the rank of A_0."""
    mats = _cartier_rows(curve.p, curve.coeffs, curve.genus)
    a0 = Matrix(PrimeField(curve.p), [list(row) for row in mats[0]])
    return curve.genus - matrix_rank(a0)


def _count_prime(coeffs, p, odd_degree):
    qr = np.zeros(p, dtype=np.bool_)
    total = 0
    for start in range(0, p, _CHUNK):
        xs = np.arange(start, min(start + _CHUNK, p), dtype=np.int64)
        qr[(xs * xs) % p] = True
    for start in range(0, p, _CHUNK):
        xs = np.arange(start, min(start + _CHUNK, p), dtype=np.int64)
        acc = np.full(xs.size, coeffs[-1], dtype=np.int64)
        for c in reversed(coeffs[:-1]):
            acc = (acc * xs + c) % p
        zero = acc == 0
        total += int(np.count_nonzero(zero))
        total += 2 * int(np.count_nonzero(qr[acc] & ~zero))
    if odd_degree:
        return total + 1
    return total + (2 if qr[coeffs[-1]] else 0)


def _ext_reduction_rows(modulus, p, k):
    # x^m mod modulus for m = k .. 2k-2, little-endian rows of length k
    rows = []
    cur = [(-modulus[i]) % p for i in range(k)]
    rows.append(cur)
    for _ in range(k - 2):
        top = cur[-1]
        cur = [0] + cur[:-1]
        if top:
            cur = [(cur[i] + top * rows[0][i]) % p for i in range(k)]
        rows.append(cur)
    return rows


def _ext_square(d, red, p, k):
    n = d.shape[1]
    s = np.zeros((2 * k - 1, n), dtype=np.int64)
    for i in range(k):
        for j in range(k):
            s[i + j] += d[i] * d[j]
    s %= p
    r = s[:k].copy()
    for m in range(k, 2 * k - 1):
        row = red[m - k]
        for i in range(k):
            if row[i]:
                r[i] += s[m] * row[i]
    return r % p


def _ext_mul_step(acc, d, c, red, p, k):
    # acc*x + c where x runs over the chunk and c is an F_p scalar
    n = d.shape[1]
    s = np.zeros((2 * k - 1, n), dtype=np.int64)
    for i in range(k):
        for j in range(k):
            s[i + j] += acc[i] * d[j]
    s %= p
    r = s[:k].copy()
    for m in range(k, 2 * k - 1):
        row = red[m - k]
        for i in range(k):
            if row[i]:
                r[i] += s[m] * row[i]
    r %= p
    r[0] = (r[0] + c) % p
    return r


def _count_ext(coeffs, p, k, odd_degree):
    q = p**k
    modulus = find_irreducible(p, k)
    red = _ext_reduction_rows(modulus, p, k)
    weights = np.array([p**i for i in range(k)], dtype=np.int64)

    def digits(ns):
        d = np.empty((k, ns.size), dtype=np.int64)
        t = ns.copy()
        for i in range(k):
            d[i] = t % p
            t //= p
        return d

    squares = np.zeros(q, dtype=np.bool_)
    for start in range(0, q, _EXT_CHUNK):
        ns = np.arange(start, min(start + _EXT_CHUNK, q), dtype=np.int64)
        d = digits(ns)
        squares[weights @ _ext_square(d, red, p, k)] = True
    total = 0
    for start in range(0, q, _EXT_CHUNK):
        ns = np.arange(start, min(start + _EXT_CHUNK, q), dtype=np.int64)
        d = digits(ns)
        acc = np.zeros((k, ns.size), dtype=np.int64)
        acc[0] = coeffs[-1]
        for c in reversed(coeffs[:-1]):
            acc = _ext_mul_step(acc, d, c, red, p, k)
        enc = weights @ acc
        zero = enc == 0
        total += int(np.count_nonzero(zero))
        total += 2 * int(np.count_nonzero(squares[enc] & ~zero))
    if odd_degree:
        return total + 1
    return total + (2 if squares[coeffs[-1]] else 0)


def point_count(curve, k=1):
    """#C(F_{p^k}) by exhaustive enumeration, including points at infinity."""
    if k < 1:
        raise DomainError("point_count: extension degree must be >= 1")
    q = curve.p**k
    if q > POINT_COUNT_BUDGET:
        raise ResourceLimitError(
            f"point_count: field size {curve.p}^{k} exceeds {POINT_COUNT_BUDGET}"
        )
    odd = curve.degree % 2 == 1
    if k == 1:
        return _count_prime(curve.coeffs, curve.p, odd)
    return _count_ext(curve.coeffs, curve.p, k, odd)


def l_polynomial(curve):
    """Numerator of the zeta function, little-endian, degree 2g.

    Coefficients a_1..a_g come from point counts over F_{p^k}, k <= g, via
    Newton's identities; the upper half is filled in by a_{g+i} = p^i a_{g-i}.
    """
    g, p = curve.genus, curve.p
    s = [p**k + 1 - point_count(curve, k) for k in range(1, g + 1)]
    e = [1]
    for k in range(1, g + 1):
        acc = sum((-1) ** (i - 1) * e[k - i] * s[i - 1] for i in range(1, k + 1))
        if acc % k:
            raise InternalInconsistencyError(
                f"power sums {s} give non-integral coefficient at degree {k}"
            )
        e.append(acc // k)
    a = [(-1) ** k * e[k] for k in range(g + 1)]
    for i in range(1, g + 1):
        a.append(p**i * a[g - i])
    return a


def newton_slopes(lpoly, p):
    """Slopes of the lower convex hull of (i, ord_p(a_i)), with multiplicity,
    ascending. Expects a_0 = 1 and even degree 2g."""
    a = poly_trim(list(lpoly))
    if not a or a[0] != 1:
        raise DomainError("newton_slopes: constant term must be 1")
    d = len(a) - 1
    if d < 2 or d % 2:
        raise DomainError("newton_slopes: degree must be even and positive")
    pts = []
    for i, c in enumerate(a):
        if c:
            v = 0
            while c % p == 0:
                c //= p
                v += 1
            pts.append((i, v))
    hull = []
    for pt in pts:
        while len(hull) >= 2:
            (x0, y0), (x1, y1) = hull[-2], hull[-1]
            if (x1 - x0) * (pt[1] - y0) - (y1 - y0) * (pt[0] - x0) <= 0:
                hull.pop()
            else:
                break
        hull.append(pt)
    out = []
    for (x0, y0), (x1, y1) in zip(hull, hull[1:]):
        out.extend([Fraction(y1 - y0, x1 - x0)] * (x1 - x0))
    return out


@dataclass(frozen=True)
class ReductionProfile:
    p_rank: int
    a_number: int
    slopes: tuple | None
    group_scheme: str
    type_name: str

    def __post_init__(self):
        if self.p_rank < 0 or self.a_number < 0 or self.p_rank + self.a_number < 1:
            raise DomainError("ReductionProfile: need f, a >= 0 and a + f >= 1")


_HALF = Fraction(1, 2)


def _slope_kind(slopes, g):
    if slopes is None:
        return None
    if all(s == _HALF for s in slopes):
        return "half"
    if g == 3 and sorted(slopes) == [Fraction(1, 3)] * 3 + [Fraction(2, 3)] * 3:
        return "thirds"
    return "other"


def classify_group_scheme(g, f, a, slopes=None):
    """p-torsion label and stratum name from (p-rank, a-number, slopes).

    Follows the genus 1..3 stratification tables. Slopes are only consulted
    where they carry extra information: for g = 3, p-rank 0, they separate
    the mixed strata from the supersingular ones, and the pair (0, 2) with
    all slopes 1/2 stays ambiguous by design.
    """
    if g > 3:
        raise DomainError(f"classify_group_scheme: no table for genus {g}")
    if g < 1 or not (0 <= f <= g) or not (1 <= a + f <= g) or a < 0:
        raise DomainError(f"classify_group_scheme: invalid (g, f, a) = ({g}, {f}, {a})")
    if slopes is not None:
        slopes = tuple(Fraction(s) for s in slopes)
        if len(slopes) != 2 * g or sum(slopes) != g:
            raise DomainError("classify_group_scheme: slopes must be 2g values summing to g")
        if sum(1 for s in slopes if s == 0) != f:
            raise DomainError(
                "classify_group_scheme: zero-slope multiplicity disagrees with p-rank"
            )
    kind = _slope_kind(slopes, g)
    table = {
        (1, 1, 0): ("L", "ordinary"),
        (1, 0, 1): ("I_{1,1}", "supersingular"),
        (2, 2, 0): ("L^2", "ordinary"),
        (2, 1, 1): ("L + I_{1,1}", "non-ordinary"),
        (2, 0, 1): ("I_{2,1}", "supersingular non-superspecial"),
        (2, 0, 2): ("I_{1,1}^2", "superspecial"),
        (3, 3, 0): ("L^3", "ordinary"),
        (3, 2, 1): ("L^2 + I_{1,1}", "non-ordinary"),
        (3, 1, 1): ("L + I_{2,1}", "non-ordinary"),
        (3, 1, 2): ("L + I_{1,1}^2", "non-ordinary"),
        (3, 0, 3): ("I_{1,1}^3", "superspecial"),
    }
    if (g, f, a) in table:
        scheme, name = table[(g, f, a)]
        return ReductionProfile(f, a, slopes, scheme, name)
    if g == 3 and f == 0 and a == 1:
        if kind == "other":
            raise DomainError("classify_group_scheme: impossible slopes for (3, 0, 1)")
        if kind == "half":
            return ReductionProfile(f, a, slopes, "I_{3,1}", "supersingular non-superspecial")
        name = "mixed" if kind == "thirds" else "mixed or supersingular"
        return ReductionProfile(f, a, slopes, "I_{3,1}", name)
    if g == 3 and f == 0 and a == 2:
        if kind == "other":
            raise DomainError("classify_group_scheme: impossible slopes for (3, 0, 2)")
        if kind == "thirds":
            return ReductionProfile(f, a, slopes, "I_{3,2}", "mixed")
        scheme = "I_{3,2} or I_{1,1} + I_{2,1}"
        if kind == "half":
            return ReductionProfile(f, a, slopes, scheme, "supersingular non-superspecial")
        return ReductionProfile(f, a, slopes, scheme, "mixed or supersingular")
    raise DomainError(f"classify_group_scheme: no stratum with (g, f, a) = ({g}, {f}, {a})")


def _coarse_profile(g, f, a, slopes):
    if f == g:
        name = "ordinary"
    elif a == g:
        name = "superspecial"
    elif slopes is not None and all(s == _HALF for s in slopes):
        name = "supersingular non-superspecial"
    elif f == 0:
        name = "mixed or supersingular"
    else:
        name = "non-ordinary"
    return ReductionProfile(f, a, slopes, f"unclassified (genus {g})", name)


def reduction_profile(curve, slope_budget=SLOPE_BUDGET):
    """Full profile of a reduced curve.

    Slopes (and the classification detail that needs them) are computed only
    when p^g fits the budget; otherwise the profile carries slopes = None and
    whatever the (f, a) pair alone determines.
    """
    f = p_rank(curve)
    a = a_number(curve)
    slopes = None
    if curve.p**curve.genus <= min(slope_budget, POINT_COUNT_BUDGET):
        slopes = tuple(newton_slopes(l_polynomial(curve), curve.p))
        if sum(1 for s in slopes if s == 0) != f:
            raise InternalInconsistencyError(
                f"p-rank {f} disagrees with zero-slope multiplicity at p = {curve.p}"
            )
    if curve.genus <= 3:
        return classify_group_scheme(curve.genus, f, a, slopes)
    return _coarse_profile(curve.genus, f, a, slopes)
