//! Exact arithmetic in the localization of the Grothendieck ring at `L` and
//! `L^n - 1`, realized as rational functions in the single variable `L`.

pub mod cyclo;
pub mod lrat;
pub mod poly;

pub use cyclo::CycloRat;
pub use lrat::LRat;
pub use poly::Poly;
