"""CM types on cyclic fields of degree 2g as binary strings.

A type is stored as its length-g bit string; the extended length-2g string
appends the complement, so entries at distance g always differ. Exponent-set
view: i is in S exactly when extended bit i is 0, and S picks one embedding
from each conjugate pair tau^i, tau^(i+g). Equivalence is cyclic rotation of
the extended string; the canonical class representative is the
lexicographically least rotation.
"""

from dataclasses import dataclass

from .errors import DomainError, ResourceLimitError

ENUMERATION_CAP = 24  # enumerate_classes scans 2**g strings


def cyclic_period(bits):
    """Smallest k >= 1 such that a cyclic shift by k fixes the string.

    Accepts any 0/1 sequence or string, not only valid extended type strings.
    The minimal shift period always divides the length.
    """
    b = [int(c) for c in bits]
    n = len(b)
    if n == 0:
        raise DomainError("cyclic_period: empty string")
    for k in range(1, n + 1):
        if n % k == 0 and all(b[i] == b[(i + k) % n] for i in range(n)):
            return k
    raise AssertionError("unreachable: period n always fixes the string")


class CMType:
    """Immutable CM type for a cyclic field of degree 2g."""

    __slots__ = ("g", "bits")

    def __init__(self, bits):
        b = tuple(int(c) for c in bits)
        if not b:
            raise DomainError("CMType: empty bit string")
        if any(c not in (0, 1) for c in b):
            raise DomainError("CMType: bits must be 0 or 1")
        object.__setattr__(self, "g", len(b))
        object.__setattr__(self, "bits", b)

    def __setattr__(self, *a):
        raise AttributeError("CMType is immutable")

    @classmethod
    def from_exponents(cls, g, exponents):
        s = {e % (2 * g) for e in exponents}
        if len(s) != g:
            raise DomainError(f"CMType: expected {g} distinct exponents mod {2 * g}")
        for i in range(g):
            if (i in s) == (i + g in s):
                raise DomainError(
                    f"CMType: exactly one of {i}, {i + g} must be an exponent"
                )
        return cls(tuple(0 if i in s else 1 for i in range(g)))

    @classmethod
    def from_extended(cls, ext):
        b = tuple(int(c) for c in ext)
        if len(b) % 2:
            raise DomainError("CMType: extended string must have even length")
        g = len(b) // 2
        if any(b[i] == b[i + g] for i in range(g)):
            raise DomainError("CMType: entries at distance g must differ")
        return cls(b[:g])

    @property
    def extended(self):
        return self.bits + tuple(1 - c for c in self.bits)

    @property
    def exponents(self):
        return frozenset(i for i, c in enumerate(self.extended) if c == 0)

    def period(self):
        return cyclic_period(self.extended)

    def is_primitive(self):
        return self.period() == 2 * self.g

    def canonicalize(self):
        ext = self.extended
        n = 2 * self.g
        best = min(tuple(ext[(i + s) % n] for i in range(n)) for s in range(n))
        return CMType(best[: self.g])

    def reflex(self):
        """Inverse exponent set; defined for primitive types on abelian fields."""
        if not self.is_primitive():
            raise DomainError("reflex: type is imprimitive")
        n = 2 * self.g
        return CMType.from_exponents(self.g, {(-s) % n for s in self.exponents})

    def conjugate(self):
        n = 2 * self.g
        return CMType.from_exponents(self.g, {(s + self.g) % n for s in self.exponents})

    def __eq__(self, other):
        return isinstance(other, CMType) and other.bits == self.bits

    def __hash__(self):
        return hash(self.bits)

    def __repr__(self):
        s = "".join(map(str, self.extended))
        return f"CMType({s!r})"


def period(t):
    return t.period()


def is_primitive(t):
    return t.is_primitive()


def canonicalize(t):
    return t.canonicalize()


def reflex(t):
    return t.reflex()


def conjugate(t):
    return t.conjugate()


@dataclass(frozen=True)
class TypeClass:
    representative: CMType
    period: int

    def __post_init__(self):
        n = 2 * self.representative.g
        if n % self.period or (n // self.period) % 2 == 0:
            raise DomainError("TypeClass: period must divide 2g with odd quotient")

    @property
    def primitive(self):
        return self.period == 2 * self.representative.g

    @property
    def class_size(self):
        return self.period


def enumerate_classes(g):
    """One canonical representative per rotation class, with periods.

    Scans all 2**g strings once; a bitmap of visited orbits keeps the total
    work near 2**g. Capped at g = 24.
    """
    if g < 1:
        raise DomainError("enumerate_classes: g must be >= 1")
    if g > ENUMERATION_CAP:
        raise ResourceLimitError(f"enumerate_classes: g capped at {ENUMERATION_CAP}")
    n = 2 * g
    mask = (1 << n) - 1
    half = (1 << g) - 1
    seen = bytearray((1 << g) // 8 + 1)
    out = []
    for v in range(1 << g):
        if seen[v >> 3] & (1 << (v & 7)):
            continue
        # pack the extended string MSB-first so lex order is numeric order
        ext = (v << g) | (~v & half)
        rot = ext
        best = ext
        k = 0
        while True:
            h = rot >> g
            seen[h >> 3] |= 1 << (h & 7)
            rot = ((rot << 1) | (rot >> (n - 1))) & mask
            k += 1
            if rot == ext:
                break
            if rot < best:
                best = rot
        bits = tuple((best >> (n - 1 - i)) & 1 for i in range(g))
        out.append(TypeClass(CMType(bits), k))
    return out


def _mobius(n):
    m = 1
    d = 2
    while d * d <= n:
        if n % d == 0:
            n //= d
            if n % d == 0:
                return 0
            m = -m
        d += 1
    if n > 1:
        m = -m
    return m


def _totient(n):
    r = n
    m = n
    d = 2
    while d * d <= m:
        if m % d == 0:
            while m % d == 0:
                m //= d
            r -= r // d
        d += 1
    if m > 1:
        r -= r // m
    return r


def count_P(k):
    """Number of extended strings of period exactly k, any ambient g."""
    if k < 2 or k % 2:
        raise DomainError("count_P: k must be even and >= 2")
    return sum(
        _mobius(x) * 2 ** (k // (2 * x)) for x in range(1, k + 1) if k % x == 0 and x % 2
    )


def count_E(g):
    """Number of rotation classes of CM types at half-degree g."""
    if g < 1:
        raise DomainError("count_E: g must be >= 1")
    total = sum(
        _totient(d) * 2 ** (g // d) for d in range(1, g + 1) if g % d == 0 and d % 2
    )
    assert total % (2 * g) == 0
    return total // (2 * g)


def count_E_primitive(g):
    if g < 1:
        raise DomainError("count_E_primitive: g must be >= 1")
    cnt = count_P(2 * g)
    assert cnt % (2 * g) == 0
    return cnt // (2 * g)
