"""Key rates for satellite CV-QKD links under gravitational frequency shift.

The package splits along the physics: `gaussian` owns two-mode covariance
algebra, `relativity` the frequency shift and wave-packet overlap,
`freespace` the optical link budget, `keyrate` the protocol rates and
sweeps, `config`/`cli` the reproducible-run plumbing.
"""

from .constants import (
    C_LIGHT,
    EARTH_GM,
    EARTH_KERR_LENGTH,
    EARTH_MASS_LENGTH,
    EARTH_OMEGA,
    EARTH_RADIUS,
    GEO_HEIGHT,
)
from .errors import ConfigError, DomainError, GravQkdError, NumericalDomainError
from .freespace import (
    DEFAULT_SETUP,
    LinkGeometry,
    OpticalSetup,
    atmospheric_transmissivity,
    db_to_transmissivity,
    diffraction_transmissivity,
    fiber_equivalent_transmissivity,
    slant_distance,
    total_transmissivity,
    transmissivity_to_db,
)
from .gaussian import (
    SymplecticSpectrum,
    TwoModeCovariance,
    apply_overlap_beamsplitter,
    apply_thermal_loss,
    conditional_after_homodyne,
    entropy_g,
    make_tmsv,
    overlap_beamsplitter_closed_form,
    symplectic_spectrum,
)
from .keyrate import (
    KeyRateResult,
    ProtocolParams,
    SweepPoint,
    SweepSpec,
    change_rate_mu,
    holevo_bound,
    key_rate,
    key_rate_via_covariance,
    mutual_information,
    noise_referred_input,
    run_sweep,
    state_parameters,
)
from .relativity import (
    EARTH,
    EarthModel,
    FrequencyShift,
    WavePacket,
    delta_exact,
    delta_perturbative,
    frequency_ratio_exact,
    overlap_closed_form,
    overlap_quadrature_oracle,
)

__version__ = "0.1.0"
