"""Counting and listing CM types.

A CM type on a cyclic field of degree 2g picks one embedding from each
conjugate pair, so it is a binary string of length 2g whose second half is
the complement of the first. Two types are equivalent when they differ by a
rotation. This script walks the census machinery.
"""

from cmreduce import (
    CMType,
    count_E,
    count_E_primitive,
    count_P,
    enumerate_classes,
)

print("classes by half-degree g (total / primitive)")
for g in range(1, 15):
    print(f"  g = {g:>2}: {count_E(g):>4} / {count_E_primitive(g):>4}")

# The closed forms come from Burnside plus Mobius inversion. The string
# count identity is a quick sanity check: every length-2g string with the
# complement symmetry has a unique primitive core of length k | 2g with
# 2g/k odd, so the P(k) must sum to 2^g.
for g in (5, 12):
    ks = [k for k in range(2, 2 * g + 1, 2)
          if (2 * g) % k == 0 and ((2 * g) // k) % 2 == 1]
    total = sum(count_P(k) for k in ks)
    print(f"g = {g}: sum of P({ks}) = {total} = 2^{g}")
    assert total == 1 << g

print()
print("all classes at g = 4:")
for cls in enumerate_classes(4):
    rep = cls.representative
    tag = "primitive" if cls.primitive else "imprimitive"
    ext = "".join(map(str, rep.extended))
    print(f"  {ext}  period {cls.period}  {tag}  exponents {sorted(rep.exponents)}")

# Primitivity is what makes the reflex construction work: a type with a
# smaller period is induced from a CM subfield and its reflex lives there.
phi = CMType.from_exponents(3, {0, 1, 2})
print()
print(f"sextic type with exponents {sorted(phi.exponents)}:")
print(f"  period      {phi.period()} (primitive: {phi.is_primitive()})")
print(f"  reflex      {sorted(phi.reflex().exponents)}")
print(f"  conjugate   {sorted(phi.conjugate().exponents)}")

lifted = CMType.from_exponents(5, {0, 2, 4, 6, 8})
print(f"lifted type {sorted(lifted.exponents)} has period {lifted.period()},"
      f" primitive: {lifted.is_primitive()}")
