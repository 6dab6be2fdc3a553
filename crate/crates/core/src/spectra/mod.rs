//! Unitary spectra, Dirichlet data and the band/gap layout.

pub mod bands;
pub mod charpoly;
pub mod dirichlet;
pub mod eigen;
pub mod matching;

pub use bands::{band_edges, band_layout, Arc, BandStructure};
pub use charpoly::{aberth_roots, char_poly_oracle, oracle_eigenvalues};
pub use dirichlet::{
    dirichlet_points, dirichlet_points_oracle, dirichlet_polynomial, dirichlet_weights, tilde_word,
    twisted_coefficient, weights_oracle, DirichletData, Warning,
};
pub use eigen::{circle_arg, unitary_eigendecomposition, unitary_eigenvalues, UnitarySpectrum};
pub use matching::matching_distance;
