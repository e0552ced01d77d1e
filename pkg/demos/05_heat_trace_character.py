"""The index character and the heat-trace character Theta."""

import numpy as np

from twistk.fock import build_basis
from twistk.forms import (XiData, index_character, periodicity_check, quotient_character, theta,
                          theta_limit_check)

print("index character, k=4:", index_character(4))
qc = quotient_character(2, 5, 3)
print("quotient character:", qc.label())

basis = build_basis()
xi = XiData(rank=1, degree=0)
th = theta(1.0, 0.2, basis, xi, k=1)
print("Theta(t=1, y=0.2) =", th.form)

# Shifting y by one multiplies by exp(+beta_M); exp(-beta_M) does not work.
for sign in (1, -1):
    out = periodicity_check(1.0, -0.5, basis, xi, k=1, sign=sign)
    print(f"exp({'+' if sign > 0 else '-'}beta): max relative deviation {out['max_relative_deviation']:.2e}")

# As t grows, the dy coefficient concentrates on integers.
for t in (1.0, 10.0, 100.0):
    ys = np.linspace(-1, 1, 9)
    print(f"t = {t:5}:", np.round([theta(t, y, basis).dy for y in ys], 3))

rep = theta_limit_check([100.0, 400.0], basis, xi, k=1)
for row in rep["per_t"]:
    print(f"t = {row['t']}: sup deviation {row['sup_relative_deviation']:.1e}, widths {row['width']:.4f}")
print("width ratio:", rep["width_ratios"])
