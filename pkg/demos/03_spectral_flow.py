"""Spectral flow of the circle Dirac family -i d/dtheta + phi/2pi."""

import numpy as np

from twistk.fock import dirac_spectrum, loop_path, spectral_flow

for phi in np.linspace(0, 2 * np.pi, 5):
    print(f"phi = {phi:5.2f}   spectrum near 0: {np.round(dirac_spectrum(phi, (-2, 2)), 3)}")

# One turn pushes exactly one eigenvalue across any level.
path = loop_path(64)
print("flow across 0.25:", spectral_flow(path, 0.25))
print("flow across 0.75:", spectral_flow(path, 0.75))
print("two turns:", spectral_flow(loop_path(128, 2), 0.25))
