"""Reproducing pairs of vector families on discretized measure spaces."""
from .hilbert import (
    CoefficientFunction,
    LinearMap,
    MeasureGrid,
    SpectralSummary,
    VectorFamily,
    analyze,
    frame_bounds,
    frame_operator,
    inner,
    mixed_frame_operator,
    mu_independent,
    mu_total,
    norm,
    spectral_summary,
    synthesis_kernel,
    synthesize,
)
from .pairs import (
    Classification,
    PairReport,
    PartnerReport,
    bessel_degeneracy_check,
    check_pair,
    classify,
    construct_partner,
    decompose_partner,
    dual_norm,
    dual_pairing,
    hat_c_bounds,
    kernel_projection,
    kernel_spectrum,
    partner_feasibility_trend,
    quotient_equal,
    represent_functional,
    riesz_representative,
    v_inner,
    v_norm,
    vspace_riesz_map,
)
from . import gallery

__version__ = "0.1.0"
