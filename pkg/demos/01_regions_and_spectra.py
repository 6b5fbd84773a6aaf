#!/usr/bin/env python3
"""Regions of the complex plane, spectra, and inertia.

A region classifies complex points; a matrix is stable for a region
when its whole spectrum classifies as interior.  Inertia counts
eigenvalues inside / on the boundary of / outside.
"""

import numpy as np

import dgstab as dg

a = np.array([[-1.0, 2.0], [-4.0, 3.0]])
spectrum = dg.eigenvalues(a)
print("A =")
print(a)
print("spectrum:", spectrum)

for region in [
    dg.right_half_plane(),
    dg.unit_disk(),
    dg.real_axis(),
    dg.nonzero_real_part(),
    dg.sector(np.pi / 3),
]:
    inside = dg.spectrum_in_region(region, spectrum)
    inertia = dg.inertia_of(region, spectrum)
    print(f"{region.kind.value:>20}: stable={inside!s:>5}  "
          f"inertia={inertia.as_tuple()}")

print()
print("point classification against the unit disk:")
for z in [0.2, 1j, 2.0 - 1.0j]:
    print(f"  {z!s:>10} -> {dg.classify_point(dg.unit_disk(), z).value}")

print()
print("region transforms (spectral maps -z and 1/z):")
t = dg.transform_region(dg.positive_ray(), dg.RegionTransform.RECIPROCAL)
print("  reciprocal of the positive ray:", t.region.kind.value,
      "(invariant)" if t.is_invariant else "")
t = dg.transform_region(dg.right_half_plane(), dg.RegionTransform.NEGATE)
print("  negation of the right half-plane:", t.region.kind.value)

print()
print("scale invariance:")
print("  right half-plane under (0, inf):",
      dg.is_scale_invariant(dg.right_half_plane(), (0.0, np.inf)))
print("  unit disk under (-1, 1):",
      dg.is_scale_invariant(dg.unit_disk(), (-1.0, 1.0)))
print("  right half-plane under (-1, 1):",
      dg.is_scale_invariant(dg.right_half_plane(), (-1.0, 1.0)))
