"""Decomposition of unramified rational primes in cyclic CM fields.

Three independent routes: the residue of p modulo the conductor, Stickelberger
parity via the Kronecker symbol of the discriminant, and factoring defining
polynomials mod p. The routes deliberately stay separate so they can check
each other.
"""

import math
import random
from dataclasses import dataclass

from .errors import (
    DomainError,
    InternalInconsistencyError,
    MissingDataError,
    PrimeSearchTimeout,
    RamifiedPrimeError,
)
from .ff_arith import factor_degree_profile, is_prime, kronecker, poly_trim

FIND_PRIME_ATTEMPT_CAP = 10**6


def _units(f):
    return [r for r in range(1, f) if math.gcd(r, f) == 1]


def _subgroup_closure(gens, f):
    h = {1}
    frontier = [1]
    while frontier:
        a = frontier.pop()
        for g in gens:
            b = a * g % f
            if b not in h:
                h.add(b)
                frontier.append(b)
    return frozenset(h)


def _coset_order(r, h, f, cap):
    x = r % f
    for e in range(1, cap + 1):
        if x in h:
            return e
        x = x * r % f
    raise InternalInconsistencyError(f"residue {r} generates a coset of order > {cap}")


@dataclass(frozen=True)
class SplittingType:
    num_primes: int
    inertia_degree: int
    ramified: bool = False

    def __post_init__(self):
        if self.num_primes < 1 or self.inertia_degree < 1:
            raise DomainError("SplittingType: counts must be positive")


class CyclicCMField:
    """Degree-2g cyclic CM field described by conductor data and/or
    defining polynomials (little-endian integer coefficients, monic)."""

    def __init__(self, label, two_g, discriminant, defining_polys,
                 conductor=None, h_generators=None):
        if two_g < 2 or two_g % 2:
            raise DomainError("CyclicCMField: degree 2g must be even and >= 2")
        if discriminant == 0:
            raise DomainError("CyclicCMField: discriminant must be nonzero")
        polys = tuple(tuple(int(c) for c in q) for q in defining_polys)
        if not polys:
            raise DomainError("CyclicCMField: at least one defining polynomial")
        for q in polys:
            if len(q) < 2 or q[-1] != 1:
                raise DomainError(f"CyclicCMField: {list(q)} is not monic nonconstant")
        self.label = label
        self.two_g = two_g
        self.discriminant = int(discriminant)
        self.defining_polys = polys
        self.conductor = conductor
        self.h_generators = tuple(int(x) for x in (h_generators or []))
        if conductor is None:
            self.unit_subgroup = None
        else:
            if conductor < 3:
                raise DomainError("CyclicCMField: conductor must be >= 3")
            gens = [g % conductor for g in (h_generators or [])]
            if any(math.gcd(g, conductor) != 1 for g in gens):
                raise DomainError("CyclicCMField: subgroup generators must be units")
            h = _subgroup_closure(gens, conductor)
            units = _units(conductor)
            if len(units) != two_g * len(h):
                raise DomainError(
                    f"CyclicCMField: subgroup has index {len(units) / len(h)},"
                    f" expected {two_g}"
                )
            # the quotient must be cyclic of order 2g for the field to be cyclic
            orders = [_coset_order(r, h, conductor, len(units)) for r in units]
            if max(orders) != two_g:
                raise DomainError("CyclicCMField: unit quotient is not cyclic of order 2g")
            self.unit_subgroup = h

    @property
    def g(self):
        return self.two_g // 2

    def __repr__(self):
        return f"CyclicCMField({self.label!r}, 2g={self.two_g})"


def split_by_residue(field, p):
    """Splitting type from p mod conductor: inertia degree is the order of
    the coset of p in the unit quotient."""
    if field.conductor is None:
        raise MissingDataError(f"{field.label}: conductor unknown")
    f = field.conductor
    if math.gcd(p, f) != 1:
        raise RamifiedPrimeError(f"p = {p} divides the conductor {f}")
    e = _coset_order(p, field.unit_subgroup, f, field.two_g)
    return SplittingType(field.two_g // e, e)


def residue_class_table(field):
    """Partition of units mod the conductor, keyed by number of primes."""
    if field.conductor is None:
        raise MissingDataError(f"{field.label}: conductor unknown")
    f = field.conductor
    table = {}
    for r in _units(f):
        e = _coset_order(r, field.unit_subgroup, f, field.two_g)
        table.setdefault(field.two_g // e, []).append(r)
    return {ell: sorted(rs) for ell, rs in table.items()}


def stickelberger_parity(field, p):
    """Parity of the number of primes above p, from (D/p) = (-1)^(2g - m)."""
    if not is_prime(p):
        raise DomainError(f"stickelberger_parity: {p} is not prime")
    k = kronecker(field.discriminant, p)
    if k == 0:
        raise RamifiedPrimeError(f"p = {p} divides the discriminant")
    return (field.two_g + (0 if k == 1 else 1)) % 2


def split_by_factorization(field, p):
    """Splitting type from defining-polynomial factor degrees mod p.

    Each polynomial cuts out an abelian subfield, so its factors share one
    degree; the compositum's inertia degree is the lcm over the polynomials.
    NotSquarefree propagates: p is then ramified or an index divisor and is
    excluded from this route.
    """
    if not is_prime(p):
        raise DomainError(f"split_by_factorization: {p} is not prime")
    degrees = []
    for q in field.defining_polys:
        qp = poly_trim([c % p for c in q])
        profile = factor_degree_profile(qp, p)
        if len(set(profile)) != 1:
            raise InternalInconsistencyError(
                f"{field.label}: unequal factor degrees {profile} at p = {p},"
                " defining polynomial does not cut out a Galois field"
            )
        degrees.append(profile[0])
    e = math.lcm(*degrees)
    if field.two_g % e:
        raise InternalInconsistencyError(
            f"{field.label}: combined inertia degree {e} does not divide {field.two_g}"
        )
    return SplittingType(field.two_g // e, e)


def find_prime(field, target, bit_size, seed=0, max_attempts=FIND_PRIME_ATTEMPT_CAP):
    """Prime in [2^n, 2^(n+1)) with the requested splitting behaviour.

    target: an integer (number of primes), a SplittingType, or a pair
    ("kronecker", v) asking for kronecker(D, p) = v. Residue targets sample
    within the admissible classes mod the conductor; Kronecker targets use
    rejection sampling. Deterministic per seed.
    """
    if bit_size < 2:
        raise DomainError("find_prime: bit size must be >= 2")
    lo = 1 << bit_size
    hi = 1 << (bit_size + 1)
    if isinstance(target, SplittingType):
        target = target.num_primes
    if isinstance(target, tuple) and len(target) == 2 and target[0] == "kronecker":
        want = target[1]
        if want not in (-1, 1):
            raise DomainError("find_prime: Kronecker target must be -1 or 1")
        rng = random.Random(f"findprime:{seed}:{field.label}:K{want}:{bit_size}")
        for _ in range(max_attempts):
            p = rng.randrange(lo, hi) | 1
            if kronecker(field.discriminant, p) == want and is_prime(p):
                return p
        raise PrimeSearchTimeout(
            f"no prime with ({field.discriminant}/p) = {want} in {max_attempts} attempts"
        )
    if not isinstance(target, int):
        raise DomainError(f"find_prime: unsupported target {target!r}")
    table = residue_class_table(field)
    if target not in table:
        raise PrimeSearchTimeout(
            f"{field.label}: no residue class with {target} primes"
        )
    residues = table[target]
    f = field.conductor
    rng = random.Random(f"findprime:{seed}:{field.label}:L{target}:{bit_size}")
    for _ in range(max_attempts):
        r = rng.choice(residues)
        m_lo = -((r - lo) // f)  # ceil((lo - r) / f)
        m_hi = (hi - 1 - r) // f
        if m_lo > m_hi:
            continue
        p = r + f * rng.randrange(m_lo, m_hi + 1)
        if p >= 2 and is_prime(p):
            return p
    raise PrimeSearchTimeout(
        f"no prime with {target} factors near 2^{bit_size} in {max_attempts} attempts"
    )
