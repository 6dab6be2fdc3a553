//! Spectral analysis of periodic Verblunsky coefficients.
//!
//! The crate builds finite CMV matrices and Floquet CMV matrices from a
//! periodic coefficient word, locates the Dirichlet points as eigenvalues of
//! a finite CMV matrix with a twisted boundary coefficient, computes their
//! spectral weights, lays out the band/gap structure from `E(±1)`, and
//! evaluates both sides of the circular trace identities.
//!
//! ```
//! use cmv_core::{c64, VerblunskyWord, spectra};
//!
//! let word = VerblunskyWord::new(vec![c64::new(0.5, 0.0), c64::new(0.0, 0.0)]).unwrap();
//! let pts = spectra::dirichlet_points(&word, &Default::default()).unwrap();
//! assert_eq!(pts.len(), 2);
//! ```

pub mod cmv;
pub mod error;
pub mod opuc;
pub mod sample;
pub mod spectra;
pub mod tolerances;
pub mod trace;

pub use num_complex::Complex64 as c64;

pub use cmv::{MatrixKind, ThetaBlock, UnitaryMatrix};
pub use error::{Error, Result};
pub use opuc::{ComplexPolynomial, FinalizedWord, RhoSequence, VerblunskyWord};
pub use spectra::{BandStructure, DirichletData, UnitarySpectrum};
pub use tolerances::Tolerances;
pub use trace::{FormulaId, ResidualRecord, ResidualReport};
