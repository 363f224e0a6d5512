//! Brute-force oracles over prime fields: moment-map fiber counts,
//! centralizer orders, kernel ranks and exact character sums.

pub mod centralizer;
pub mod charsum;
pub mod count;
pub mod field;
pub mod kappa;
pub mod rep;

pub use centralizer::{centralizer_order, jordan_nilpotent};
pub use charsum::{charsum_fiber_identity, charsum_linear_lemma, fourier_inversion_check, AffineFamily, CycloCount};
pub use count::{count_moment_fiber, gl_order, group_order, quotient_count, CountMethod, DEFAULT_BUDGET};
pub use field::{Fp, Mat};
pub use kappa::kappa_oracle;
pub use rep::{FpDual, FpPoint, FpRep, RepSpace};
