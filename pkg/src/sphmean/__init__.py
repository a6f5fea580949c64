"""Spherical mean transforms of radial and single-harmonic functions in odd
dimensions: exact range identities, forward evaluation, range tests, spectral
cross-checks, inversion, and unique-continuation counterexamples."""

__version__ = "0.1.0"

from .exactmath import (
    binom,
    coeff_C,
    identity_sweeps,
    verify_Cj_closed_form,
    verify_abel_aigner,
    verify_dp_expansion,
    verify_gamma_contour,
    verify_lemma35a,
    verify_lemma35b,
    verify_necessity_identity,
)
from .inverse import InversionConfig, InversionResult, invert_radial, invert_radial_n3
from .rangecheck import (
    JetH,
    PerturbedH,
    RangeReport,
    SampledH,
    anti_D,
    bump_h,
    general_range_check,
    range_residual,
)
from .specfun import (
    Jet,
    bessel_zero,
    d_operator,
    dp_cosc,
    dp_sinc,
    raw_j,
    raw_y,
    sph_bessel_j,
    sph_bessel_y,
)
from .spectral import (
    bessel_zero_vanishing,
    cross_product_residual,
    cross_product_terms,
    hankel,
    hankel_h,
    mk_residual,
)
from .transform import (
    DEFAULT_QUAD,
    BumpProfile,
    DerivativeProfile,
    Dimension,
    HarmonicForwardData,
    PolynomialProfile,
    QuadratureRule,
    SmtProfile,
    forward_radial,
    funk_hecke_forward,
)
from .ucp import UcpSpec, build_counterexample, verify_counterexample

__all__ = [
    "__version__",
    "binom", "coeff_C", "identity_sweeps",
    "verify_Cj_closed_form", "verify_abel_aigner", "verify_dp_expansion",
    "verify_gamma_contour", "verify_lemma35a", "verify_lemma35b",
    "verify_necessity_identity",
    "InversionConfig", "InversionResult", "invert_radial", "invert_radial_n3",
    "JetH", "PerturbedH", "RangeReport", "SampledH", "anti_D", "bump_h",
    "general_range_check", "range_residual",
    "Jet", "bessel_zero", "d_operator", "dp_cosc", "dp_sinc",
    "raw_j", "raw_y", "sph_bessel_j", "sph_bessel_y",
    "bessel_zero_vanishing", "cross_product_residual", "cross_product_terms",
    "hankel", "hankel_h", "mk_residual",
    "DEFAULT_QUAD", "BumpProfile", "DerivativeProfile", "Dimension",
    "HarmonicForwardData", "PolynomialProfile", "QuadratureRule",
    "SmtProfile", "forward_radial", "funk_hecke_forward",
    "UcpSpec", "build_counterexample", "verify_counterexample",
]
