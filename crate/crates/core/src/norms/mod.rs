//! `L2`/`L4` norms and merit factors by three independent routes (exact
//! autocorrelation, spectral identity at the `2n`-th roots of unity, and the
//! Høholdt–Jensen decomposition), plus the closed-form identities and bounds
//! used to cross-check them.

pub mod autocorrelation;
pub mod decomposition;
pub mod identities;
pub mod merit;
pub mod spectrum;

pub use autocorrelation::{
    autocorrelation, autocorrelation_direct, autocorrelation_fft, l4_fourth_power_exact,
    AutocorrelationProfile,
};
pub use decomposition::{
    hj_decomposition, hj_decomposition_with_limit, DecompositionReport, SpectralCache,
    HJ_DEFAULT_LIMIT,
};
pub use identities::{
    allones_spike_check, character_sum_check, exp_sum_identity_check, interpolation_bound_check,
    proposition4_gap, proposition4_rhs, spectral_values_j, ExpSumCheck, InterpolationCheck,
    Prop4Check, SpikeCheck,
};
pub use merit::{asymptotic_f, merit_factor, merit_from_norms, MeritReport};
pub use spectrum::{l4_fourth_power_dft, unit_circle_max};
