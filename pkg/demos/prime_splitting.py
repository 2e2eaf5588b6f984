"""How a prime splits in a cyclic CM field, three ways.

The quartic field here has conductor 65, so splitting of an unramified
prime depends only on p mod 65. The same answer must come out of factoring
the defining polynomial mod p, and the Kronecker symbol of the field
discriminant pins the parity of the number of primes.
"""

from cmreduce import (
    catalog_load,
    find_prime,
    residue_class_table,
    split_by_factorization,
    split_by_residue,
    stickelberger_parity,
)
from cmreduce.ff_arith import kronecker

catalog = catalog_load()
quartic = catalog.field("quartic-5-65-845")

print(f"{quartic.label}: conductor {quartic.conductor},"
      f" discriminant {quartic.discriminant}")
print(f"unit subgroup H = {sorted(quartic.unit_subgroup)}")

table = residue_class_table(quartic)
for ell in sorted(table, reverse=True):
    print(f"  {ell} prime(s): residues {table[ell]}")

print()
for p in (131, 199, 1303, 2 ** 128 + 51):
    s = split_by_residue(quartic, p)
    parity = stickelberger_parity(quartic, p)
    sym = kronecker(quartic.discriminant, p)
    print(f"p = {p} = {p % 65} mod 65: {s.num_primes} prime(s),"
          f" inertia {s.inertia_degree}, (D/p) = {sym:+d}, parity {parity}")
    assert parity == s.num_primes % 2

# the factorization route needs no conductor data at all
sextic = catalog.field("sextic-5-2")
print()
print(f"{sextic.label} by polynomial factorization:")
for p in (11, 13, 17, 43):
    s = split_by_factorization(sextic, p)
    print(f"  p = {p:>2}: {s.num_primes} prime(s), inertia {s.inertia_degree}")

# searching for a prime with prescribed splitting is rejection sampling
# inside the right residue classes, deterministic for a fixed seed
p = find_prime(quartic, 1, 64)
print()
print(f"64-bit inert prime for the quartic field: {p}")
print(f"  check: {p % 65} mod 65 is in the inert class:"
      f" {p % 65 in table[1]}")
