"""Free-space optical link budget for a ground-to-satellite channel.

Total transmissivity is the product of a fixed setup efficiency,
atmospheric extinction along the slant path, and diffraction spillover
at the receiver aperture.  The atmosphere saturates within a few scale
heights; past that the budget is pure diffraction, falling 6 dB per
doubling of distance.

Run:  python3 demos/03_link_budget.py [--plot]
"""

import math
import sys

import numpy as np

from gravqkd import (
    GEO_HEIGHT,
    DEFAULT_SETUP,
    LinkGeometry,
    atmospheric_transmissivity,
    diffraction_transmissivity,
    fiber_equivalent_transmissivity,
    slant_distance,
    total_transmissivity,
    transmissivity_to_db,
)

PLOT = "--plot" in sys.argv[1:]

HEIGHTS_M = (100e3, 500e3, 2000e3, 10000e3, GEO_HEIGHT)
ZENITH = (0.0, math.radians(60.0))

for zenith in ZENITH:
    print(f"zenith angle {math.degrees(zenith):.0f} deg")
    print(f"{'h [km]':>8} {'slant [km]':>11} {'T_atm':>8} {'T_diff':>8} "
          f"{'total':>10} {'loss [dB]':>10}")
    for h in HEIGHTS_M:
        geom = LinkGeometry(h, zenith)
        z = slant_distance(geom)
        t_atm = atmospheric_transmissivity(geom, DEFAULT_SETUP)
        t_diff = diffraction_transmissivity(geom, DEFAULT_SETUP)
        total = total_transmissivity(geom)
        print(f"{h / 1e3:>8.0f} {z / 1e3:>11.0f} {t_atm:>8.4f} {t_diff:>8.4f} "
              f"{total:>10.2e} {transmissivity_to_db(total):>10.2f}")
    print()

# a fiber of the same length is hopeless beyond a few hundred km
print("free-space vs fiber at 0.2 dB/km, vertical path")
print(f"{'h [km]':>8} {'free-space [dB]':>16} {'fiber [dB]':>12}")
for h in (100e3, 300e3, 500e3):
    geom = LinkGeometry(h, 0.0)
    free = transmissivity_to_db(total_transmissivity(geom))
    fiber = transmissivity_to_db(fiber_equivalent_transmissivity(slant_distance(geom)))
    print(f"{h / 1e3:>8.0f} {free:>16.2f} {fiber:>12.2f}")

if PLOT:
    import matplotlib.pyplot as plt

    heights = np.geomspace(1e3, GEO_HEIGHT, 300)
    for zenith in ZENITH:
        losses = [transmissivity_to_db(total_transmissivity(LinkGeometry(h, zenith)))
                  for h in heights]
        plt.semilogx(heights / 1e3, losses,
                     label=f"zenith {math.degrees(zenith):.0f} deg")
    plt.xlabel("satellite height h [km]")
    plt.ylabel("channel loss [dB]")
    plt.legend()
    plt.tight_layout()
    plt.show()
