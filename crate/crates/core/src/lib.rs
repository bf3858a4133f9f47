//! Heralded generation of symmetric multi-qubit entangled states.
//!
//! `N` three-level emitters start excited; each of `N` far-field detectors,
//! behind a polarizer `alpha sigma_plus + beta sigma_minus`, registers one
//! photon. Because the detectors cannot tell which emitter a photon came
//! from, every detection acts symmetrically on all emitters and the final
//! ground-level state lies in the symmetric (Dicke) subspace.
//!
//! - [`register`]: brute-force `3^N` register, the reference for everything
//!   else.
//! - [`cascade`]: closed-form final state and the intermediate-state pyramid.
//! - [`synthesis`]: polarizer settings for an arbitrary symmetric target,
//!   plus GHZ / W / separable recipes.
//! - [`measures`]: 3-tangle, entropies, concurrence and the three-qubit class
//!   monitor.
//! - [`window`]: Monte-Carlo fidelity under finite detector windows and
//!   emitter confinement.

pub mod cascade;
pub mod error;
pub mod measures;
pub mod polarizer;
pub mod register;
pub mod roots;
pub mod state;
pub mod synthesis;
pub mod window;

pub use cascade::{build_pyramid, dicke_coefficients, path_count, PolarizerConfig};
pub use error::{Error, Result};
pub use measures::{EntanglementClass, EntanglementReport};
pub use polarizer::{LinearAngle, Polarizer};
pub use register::{EmitterRegister, Ket, Level};
pub use state::{fidelity, DickeIndex, QubitState, SymmetricState};
pub use synthesis::synthesize;
pub use window::{estimate_fidelity, DetectionGeometry, FidelityEstimate};

pub use num_complex::Complex64;
