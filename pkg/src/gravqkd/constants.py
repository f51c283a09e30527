"""Physical constants and Earth default parameters.

All lengths in meters, angular velocities in rad/s, frequencies in rad/s
unless a name says otherwise.  Gravitating bodies are described by their
geometrized mass length GM/c^2 so that metric functions never need G or c
separately.
"""

# Speed of light, m/s (exact by definition).
C_LIGHT = 299792458.0

# Earth gravitational parameter GM, m^3/s^2 (IERS conventional value).
EARTH_GM = 3.986004418e14

# Geometrized mass GM/c^2, m.  Schwarzschild radius is twice this.
EARTH_MASS_LENGTH = EARTH_GM / C_LIGHT**2

# Mean equatorial radius, m.
EARTH_RADIUS = 6.371e6

# Sidereal rotation rate, rad/s.
EARTH_OMEGA = 7.292e-5

# Specific angular momentum J/(Mc) of the rotating Earth, m.
EARTH_KERR_LENGTH = 3.95

# Geostationary altitude above the surface, m.
GEO_HEIGHT = 3.5786e7
