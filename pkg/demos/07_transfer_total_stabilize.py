#!/usr/bin/env python3
"""Verdict transfer, total stability, stabilization, inertia checks.

Once a verdict is in hand, the transfer theorems move it to the
transpose, the inverse, positive scalings, and permutation or diagonal
similarities - without re-running the search.  Total stability runs
the engine on every principal submatrix; stabilization searches the
class for a single member that works; inertia preservation samples the
eigenvalue-count identity.
"""

import numpy as np

import dgstab as dg
from dgstab.engine import (
    Query,
    Transform,
    TransformKind,
    decide,
    inertia_preserving,
    stabilize,
    total_stability,
    transfer_verdict,
)

RHP = dg.right_half_plane()

a = np.array([[-1.0, 2.0], [-4.0, 3.0]])
q = Query(a, RHP, dg.pos_diag(2), dg.MUL, budget=100_000, seed=1)
v = decide(q)
print("base verdict:", v.status.value)
for tf in [Transform(TransformKind.TRANSPOSE),
           Transform(TransformKind.OP_INVERSE),
           Transform(TransformKind.SCALAR, alpha=3.0),
           Transform(TransformKind.SIMILARITY,
                     s=np.array([[0.0, 1.0], [1.0, 0.0]]))]:
    vt = transfer_verdict(v, q, tf)
    print(f"  {tf.kind.value:>11} -> {vt.status.value}")

print()
print("total stability of the identity (every principal submatrix):")
rep = total_stability(Query(np.eye(3), RHP, dg.pos_diag(3), dg.MUL,
                            budget=200, seed=1))
print("  overall:", rep.overall.value)
for idx, verdict in sorted(rep.results.items()):
    print("   subset", tuple(i + 1 for i in idx), "->", verdict.status.value)

print()
print("a negative diagonal entry is caught at a 1x1 submatrix:")
rep = total_stability(Query(np.diag([1.0, -0.5]), RHP, dg.pos_diag(2),
                            dg.MUL, budget=200, seed=1))
print("  overall:", rep.overall.value,
      " subset (2,):", rep.results[(1,)].status.value)

print()
print("stabilization: is there any diagonal G with G A stable?")
rep = stabilize(np.diag([1.0, -1.0]), RHP, dg.diag(2), dg.MUL,
                budget=3000, seed=2)
print("  diag(1,-1):", "found" if rep.found else "not found",
      "- witness", np.diag(rep.witness).round(3) if rep.found else None)

circulant = np.array([[0.0, 1.0, 0.0], [0.0, 0.0, 1.0], [1.0, 0.0, 0.0]])
rep = stabilize(circulant, RHP, dg.diag(3), dg.MUL, budget=4000, seed=2)
print("  3-cycle circulant:", "found" if rep.found else "not found",
      "(the cube-root spectrum always straddles the half-plane)")

print()
print("inertia preservation under symmetric multiplication:")
for label, m in [("A = I", np.eye(3)), ("A = -I", -np.eye(3))]:
    rep = inertia_preserving(m, dg.symmetric(3), dg.MUL, RHP,
                             budget=400, seed=3)
    print(f"  {label}: plausible={rep.plausible}"
          + ("" if rep.plausible else
             f"  witness inertia {rep.witness_inertia} -> "
             f"{rep.product_inertia}"))
