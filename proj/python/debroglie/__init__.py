"""Two-photon de Broglie wave interference in a Mach-Zehnder interferometer.

All quantities are SI (meters, seconds, rad/s).
"""

from ._core import (
    DelayConfig,
    DomainError,
    NumericError,
    OracleConfig,
    SourceKind,
    SourceModel,
    SpectralProfile,
    classify_packet,
    coincidence_rate,
    distinguishable_rate,
    effective_bandwidth,
    estimate_period,
    fwhm_to_gaussian_width,
    hom_rate,
    numeric_coincidence_rate,
    numeric_hom_rate,
    numeric_singles_rate,
    run_cli,
    separable_rate,
    singles_rate,
    spdc_debroglie_rate,
    visibility,
)

__version__ = "0.1.0"
