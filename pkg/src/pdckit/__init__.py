"""pdckit: numerical design and characterization of spectrally separable
parametric-downconversion photon-pair sources."""

from .dispersion import (
    FUSED_SILICA,
    KTP,
    MATERIALS,
    NBK7,
    OPTIMAL_XI,
    DispersionRangeError,
    GroupData,
    Material,
    chirp_parameter,
    coherence_length,
    crystal_length_for_pulse,
    group_velocity_inverse,
    gvm_angle,
    ktp_type2_group,
    load_material_file,
    make_group_data,
    pdc_group_data,
    refractive_index,
    symmetrized,
)
from .hom import HomPattern, hom_pattern, visibility_check
from .jsa import (
    JointAmplitude,
    JointIntensity,
    SpectralGrid,
    build_jsa,
    marginal_fwhm,
    mean_marginal_fwhm,
    read_jsa_csv,
    realized_zeta,
    to_intensity,
    write_jsa_csv,
    write_jsi_csv,
)
from .poling import (
    DomainStructure,
    gaussian_amplitude_target,
    inject_missed_domains,
    inject_overpoling,
    inject_wall_jitter,
    make_domain_orientation,
    make_duty_cycle,
    make_periodic,
    make_unpoled,
    peak_amplitude_ratio,
    pmf_from_domains,
    pmf_survey,
    read_poling,
    sigma_z_for_bandwidth_match,
    write_poling,
)
from .schmidt import (
    HeraldedDensity,
    SchmidtResult,
    heralded_density,
    purity,
    purity_like,
    schmidt_decompose,
    write_schmidt_csv,
)
from .spectral import (
    PmfSpec,
    PulseSpec,
    amplitude_fwhm,
    param_for_fwhm,
    pef_value,
    pmf_for_xi,
    pmf_value,
    pulse_from_duration,
    pulse_width_from_duration,
    width_convert,
)
from . import characterize

__version__ = "0.1.0"
