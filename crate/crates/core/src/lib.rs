//! Lᵖ-type dual norms for measures on the line.
//!
//! A finite measure `μ` gets the norm `‖μ‖ₚ* = sup |∫ h dμ|` over the unit
//! ball of `L̂^{p'}`, computed as `‖μ̂‖_{p'}` from its Fourier–Stieltjes
//! transform. Around that sit the measure algebra ([`measure`]), transforms
//! ([`transforms`]), the norms and their dictionary lower bounds
//! ([`norms`]), inequality checks ([`inequalities`]), discrete uncertainty
//! ([`uncertainty`]), BV transforms ([`bv`]) and the seeded suites behind
//! the `measlp` binary ([`suites`], [`cli`]).
//!
//! Every capability has a runnable example under `examples/`:
//!
//! ```bash
//! cargo run --example star_norms
//! cargo run --release --example run_suite -- hy 20
//! ```
//!
//! | example | shows |
//! |---|---|
//! | `gaussian_fixed_point` | `ĝ = g` for `e^{-πx²}` |
//! | `star_norms` | `‖μ‖ₚ*` with window records and divergence |
//! | `dictionary_lower_bound` | Gaussian-dictionary lower bounds |
//! | `cantor_transform` | the infinite-product transform of the Cantor measure |
//! | `convolution` | `f * μ` and `f μ` |
//! | `hausdorff_young` | `‖μ̂‖_{p'} ≤ ‖μ‖ₚ*` on random measures |
//! | `holder_young` | Hölder and Young checks |
//! | `set_bound` | `‖χ_E‖_{L̂ᵖ}` against `|E|^{1/p}` |
//! | `sinc_constants` | `‖sinc‖_s` and its two bounds |
//! | `op_norm_chain` | `Oₚ` monotonicity, blockwise `Vₚ*` embedding |
//! | `uncertainty` | limiting operators on `ℤ_N`, the comb witness |
//! | `bv_leading_term` | leading term and remainder of `f̂_γ` |
//! | `negative_control` | `χ_[0,1)`: divergent `Vₚ*`, logarithmic `L¹` growth |
//! | `run_suite` | a named suite and its summary |
//! | `parse_measure` | the `--measure` mini-language |

// `!(x > 0.0)` is used on purpose: it also rejects NaN
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bv;
pub mod cli;
pub mod config;
pub mod error;
pub mod exponent;
pub mod grid;
pub mod inequalities;
pub mod intervals;
pub mod measure;
pub mod norms;
pub mod report;
pub mod suites;
pub mod transforms;
pub mod uncertainty;

pub use error::{Error, Result};
pub use exponent::ExponentPair;
pub use grid::{GridFunction, GridSpec, LogGrid};
pub use intervals::SetOfIntervals;
pub use measure::{Atom, Measure, MeasureKind};
pub use report::InequalityReport;
