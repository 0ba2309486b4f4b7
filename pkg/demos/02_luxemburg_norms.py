#!/usr/bin/env python3
"""Luxemburg norms in the Orlicz space built from e^{s^2} - 1.

The norm is the smallest scale lambda at which the exponential moment
int (e^{(|u|/lambda)^2} - 1) dx drops to 1.  This script computes it for
canonical fields, checks homogeneity, and compares the L^p norms against
the Gamma-function embedding bound
    ||u||_{L^p} <= Gamma(p/2 + 1)^{1/p} ||u||_orlicz.
"""

import math

import numpy as np

from expheat import (
    RadialField,
    UNIT_DISC,
    build_grid,
    embedding_check,
    field_from_function,
    luxemburg_norm,
    mt_functional,
)

g = build_grid(1024, 1.0, UNIT_DISC)

print("constant field u = 1 on the unit disc:")
const = field_from_function(g, np.ones_like)
got = luxemburg_norm(const)
want = 1.0 / math.sqrt(math.log(1.0 + 1.0 / math.pi))
print(f"  computed {got:.10f}")
print(f"  closed form 1/sqrt(ln(1 + 1/pi)) = {want:.10f}")
print()

print("homogeneity ||c u|| = c ||u||:")
bump = field_from_function(g, lambda r: np.exp(-((r - 0.4) / 0.15) ** 2))
base = luxemburg_norm(bump)
for c in (0.5, 2.0, 10.0):
    scaled = luxemburg_norm(RadialField(g, c * bump.values))
    print(f"  c = {c:4}: ||c u|| / (c ||u||) - 1 = {scaled / (c * base) - 1.0:+.2e}")
print()

print("embedding ratios against Gamma(p/2+1)^(1/p):")
for p in (2, 4, 6):
    rep = embedding_check(bump, p)
    print(f"  p = {p}: ratio {rep.ratio:.6f}  <=  bound {rep.bound:.6f}")
print()

print("localization of a log-type profile (norm over |x| < r):")
vals = np.empty_like(g.nodes)
with np.errstate(divide="ignore"):
    vals[1:] = np.sqrt(-np.log(g.nodes[1:]))
vals[0] = vals[1]
logf = RadialField(g, vals)
for rad in (1.0, 0.5, 0.1, 0.02):
    print(f"  r = {rad:5}: ||u||_(|x|<r) = {luxemburg_norm(logf, sub_radius=rad):.4f}")
print()
print(f"and its exponential moment: int(e^(u^2)-1) = "
      f"{mt_functional(logf, 1.0):.5f} (closed form: pi = {math.pi:.5f})")
