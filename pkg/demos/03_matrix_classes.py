#!/usr/bin/env python3
"""Matrix classes: membership, sampling, enumeration, group structure.

The class is the quantifier of a stability query ("... for every G in
the class").  Descriptors carry the structure; samplers feed the
falsifier; the finite classes can be enumerated exactly.
"""

import numpy as np

import dgstab as dg
from dgstab.classes import Partition

rng = np.random.default_rng(0)

print("membership is structural, with tolerance:")
print("  diag(1,2,3) positive diagonal:",
      dg.contains(dg.pos_diag(3), np.diag([1.0, 2.0, 3.0])))
print("  diag(1,2) ordered along the identity permutation:",
      dg.contains(dg.theta_ordered([0, 1]), np.diag([1.0, 2.0])),
      "(needs non-increasing entries)")

print()
print("samplers always produce members:")
for cls in [dg.pos_diag(3), dg.spd(3), dg.vertex_diag(3),
            dg.rank_k_positive(3, 2)]:
    g = dg.sample(cls, rng)
    print(f"  {cls.kind.value:>17}: contains(sample) ->",
          dg.contains(cls, g))

print()
print("the vertex class is finite - all sign assignments:")
for m in dg.enumerate_members(dg.vertex_diag(2)):
    print("  ", np.diag(m))

print()
print("group structure probes (randomized evidence, not proof):")
rep = dg.closure_probe(dg.pos_diag(3), dg.MUL, 200, rng)
print("  positive diagonals, multiplication:  closed =", rep.closed,
      " inverses =", rep.has_inverses)
rep = dg.closure_probe(dg.theta_ordered([0, 1, 2]), dg.MUL, 200, rng)
print("  ordered diagonals,  multiplication:  closed =", rep.closed,
      " inverses =", rep.has_inverses)
rep = dg.closure_probe(dg.spd(3), dg.MUL, 200, rng)
print("  SPD matrices,       multiplication:  closed =", rep.closed,
      " (product of non-commuting SPD is not symmetric)")

print()
print("the nested chain: positive block-scalar diagonals sit inside")
print("positive diagonals, inside block-supported SPD, inside SPD:")
part = Partition.from_sizes([2, 1])
for d in [np.diag([2.0, 2.0, 5.0]), np.diag([1.0, 2.0, 3.0])]:
    print(f"  {np.diag(d)} ->", dg.chain_memberships(d, part))

print()
print("ordered-class diagnostics - consecutive diagonal ratios:")
print("  diag(8,4,1):", dg.theta_ratios(np.diag([8.0, 4.0, 1.0]), [0, 1, 2]))
