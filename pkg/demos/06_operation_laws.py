#!/usr/bin/env python3
"""Which algebraic laws each binary operation satisfies.

The verdict-transfer theorems (transpose, operation inverse, scalar,
similarity) each lean on one of these laws, so the engine ships
randomized checkers that measure the deviation of every law for every
operation and store counterexamples where a law fails.
"""

import numpy as np

import dgstab as dg
from dgstab.algebra import EXPECTED_LAWS, law_gate, law_table

rng = np.random.default_rng(3)
table = law_table(trials=300, n=5, rng=rng)

laws = list(next(iter(table.values())).keys())
header = f"{'law':>24} | " + " | ".join(f"{k.value:>9}" for k in table)
print(header)
print("-" * len(header))
for law in laws:
    cells = []
    for kind, row in table.items():
        rep = row[law]
        ok = rep.max_deviation <= law_gate(law, kind)
        cells.append(f"{'holds' if ok else 'FAILS':>9}")
    print(f"{law:>24} | " + " | ".join(cells))

print()
print("every cell matches its expectation:",
      all(
          (row[law].max_deviation <= law_gate(law, kind))
          == EXPECTED_LAWS[law][kind]
          for kind, row in table.items()
          for law in laws
      ))

print()
print("a stored counterexample for a failing law (scalar associativity")
print("under addition): alpha (A + B) != (alpha A) + B")
rep = table[dg.OpKind.ADD]["scalar_associativity"]
a, b, alpha = rep.witness
print("  alpha =", round(alpha, 4), " deviation =",
      round(rep.max_deviation, 4))

print()
print("spectra of G A and A G agree even though the products differ:")
g = rng.standard_normal((3, 3))
a = rng.standard_normal((3, 3))
print("  eigenvalues(G A):", np.round(np.sort_complex(np.linalg.eigvals(g @ a)), 5))
print("  eigenvalues(A G):", np.round(np.sort_complex(np.linalg.eigvals(a @ g)), 5))
