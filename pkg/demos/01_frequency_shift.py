"""Gravitational frequency shift between ground and satellite.

A photon climbing out of the planet's potential arrives blueshifted in
the satellite frame once the satellite's own time dilation is smaller
than the emitter's.  The shift parameter delta = sqrt(Omega_B/Omega_A) - 1
crosses zero near h = r_A/2: below that height the orbital speed wins
and the light is effectively redshifted, above it gravity wins.

Run:  python3 demos/01_frequency_shift.py [--plot]
"""

import sys

import numpy as np
from scipy import optimize

from gravqkd import EARTH, EARTH_RADIUS, GEO_HEIGHT, delta_exact, delta_perturbative

PLOT = "--plot" in sys.argv[1:]

HEIGHTS_M = {
    "ground (h=0)": 0.0,
    "ISS (400 km)": 400e3,
    "r_A/2 (3185.5 km)": EARTH_RADIUS / 2.0,
    "GPS (20200 km)": 20200e3,
    "GEO (35786 km)": GEO_HEIGHT,
}

print("shift parameter delta and its decomposition")
print(f"{'height':<20} {'delta_total':>14} {'schwarzschild':>14} "
      f"{'rotation':>14} {'exact-pert':>12}")
for label, h in HEIGHTS_M.items():
    pert = delta_perturbative(EARTH, h)
    exact = delta_exact(EARTH, h)
    gap = exact.delta_total - pert.delta_total
    print(f"{label:<20} {pert.delta_total:>14.4e} {pert.delta_schwarzschild:>14.4e} "
          f"{pert.delta_rotation:>14.4e} {gap:>12.2e}")

# the zero crossing sits where the Schwarzschild term flips sign
f = lambda h: delta_perturbative(EARTH, h).delta_total
root = optimize.brentq(f, 1.0, EARTH_RADIUS, xtol=1e-6)
print(f"\ndelta = 0 at h = {root / 1e3:.1f} km "
      f"(r_A/2 = {EARTH_RADIUS / 2e3:.1f} km)")
print(f"schwarzschild part alone vanishes exactly at r_A/2: "
      f"{delta_perturbative(EARTH, EARTH_RADIUS / 2.0).delta_schwarzschild!r}")

# the rotation correction is ~3 orders below the monopole term and the
# higher-order remainder is invisible at double precision
surface = delta_perturbative(EARTH, 0.0)
print(f"\nat the surface: |rotation/schwarzschild| = "
      f"{abs(surface.delta_rotation / surface.delta_schwarzschild):.2e}, "
      f"higher-order remainder = {surface.delta_higher:.2e}")

if PLOT:
    import matplotlib.pyplot as plt

    heights = np.linspace(0.0, GEO_HEIGHT, 800)
    deltas = [f(h) for h in heights]
    plt.figure(figsize=(6, 4))
    plt.plot(heights / 1e3, np.array(deltas) * 1e10)
    plt.axhline(0.0, color="k", lw=0.5)
    plt.axvline(root / 1e3, color="r", ls="--", lw=0.8, label="delta = 0")
    plt.xlabel("satellite height h [km]")
    plt.ylabel("delta [1e-10]")
    plt.legend()
    plt.tight_layout()
    plt.show()
