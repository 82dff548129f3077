#!/usr/bin/env python3
"""Families of two-map interval systems and their validation.

A valid configuration is a pair of nondecreasing maps delta1, delta2 on
[-1, 1] with delta1 + delta2 = t and the boundary pattern
delta2(-1) = -1, delta2(1) = delta1(-1) = 0, delta1(1) = 1.  This script
builds the built-in families, runs the axiom checks, and prints the
classification each one earns.
"""

import numpy as np

from pconfig import (
    build_family,
    flat_interval,
    perturbed_flat_pair,
    quadratic_pair,
    standard_pair,
    validate,
)

print("=" * 72)
print("1. the standard pair: delta1 = (t+1)/2, delta2 = (t-1)/2")
print("=" * 72)
std = standard_pair()
rep = validate(std)
print(f"classification:      {rep.classification}")
print(f"rho (max derivative): {rep.rho}")
print(f"boundary values:      {rep.boundary_values}")

print()
print("=" * 72)
print("2. the quadratic family: delta1 = (t+1)/2 + c (1 - t^2)")
print("=" * 72)
for c in (0.2, 0.25, 0.3):
    rep = validate(quadratic_pair(c))
    extras = []
    if not rep.derivative_nonneg_ok:
        extras.append(f"min delta2' = {rep.derivative_min_2:+.3f}")
    if not rep.guiding_set_2.is_empty:
        extras.append(f"flat set of delta2: {rep.guiding_set_2.intervals}")
    print(f"c = {c:4}: {rep.classification:13} rho = {rep.rho:.3f}  "
          + "  ".join(extras))
print()
print("|c| < 1/4 keeps both branch derivatives inside (0, 1): regular.")
print("c = 1/4 parks a derivative zero at each endpoint: guided.")
print("c > 1/4 drives delta2' negative at -1: invalid.")

print()
print("=" * 72)
print("3. the flat-point family")
print("=" * 72)
# delta1 equals the affine map outside the dyadic cell J_n and is reshaped
# inside so its derivative vanishes at exactly one interior point
pf = perturbed_flat_pair(2)
lo, hi = flat_interval(2)
rep = validate(pf)
lam = pf.flat_points[0]
print(f"cell J_2 = [{lo}, {hi}], flat point lambda = {lam}")
print(f"classification: {rep.classification}")
print(f"delta1'(lambda) = {float(pf.d_delta1(lam))}")
t = np.linspace(-1, 1, 100001)
print(f"max delta1' = {float(np.max(pf.d_delta1(t))):.6f}  (stays below 1)")
outside = t[(t < lo) | (t >= hi)]
dev = np.max(np.abs(pf.delta1(outside) - (outside + 1) / 2))
print(f"deviation from (t+1)/2 outside J_2: {dev:.3e}  (exactly zero)")

print()
print("=" * 72)
print("4. descriptors round-trip through JSON")
print("=" * 72)
desc = pf.descriptor()
print(f"descriptor: {desc}")
again = build_family(desc)
print(f"rebuilt delta1(0.8) = {float(again.delta1(0.8))} "
      f"== {float(pf.delta1(0.8))}")
