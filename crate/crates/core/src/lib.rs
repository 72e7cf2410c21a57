//! Grzegorczyk representations of natural numbers, their base-shift
//! sequences, and the ordinal correspondence into Cantor normal forms below ε₀.
//!
//! Module map:
//! - [`eval`]: cutoff-aware `F_n^{(i)}(x)`.
//! - [`frep`]: F-representations, total representations, base shifts.
//! - [`ord`]: Cantor normal form ordinals and the coefficient measure `C`.
//! - [`correspond`]: `o_k`, `L_k`, `Q_k`, membership in `D_k`, profiles and `g_n`.
//! - [`seq`]: plain and hereditary Grzegorczyk sequences with ordinal shadows.
//! - [`slowdown`]: slowing a descending chain down to `C(γ_i) ≤ i + 1`.

pub mod correspond;
pub mod eval;
pub mod frep;
pub mod natstr;
pub mod ord;
pub mod report;
pub mod seq;
pub mod slowdown;

pub use eval::{BoundedNat, Nat};
pub use ord::Ordinal;
pub use report::Report;
