//! Matrix complexes, Hom complexes, the signed trace and the trace pairing.

pub mod cohomology;
pub mod complex;
pub mod forms;
pub mod fuzz;
pub mod matrix;

pub use cohomology::{cohomology, differential_matrix, hom_degree_range, CohomClass, Cohomology};
pub use complex::{compose, hom_differential, hom_dim, supertrace, HomCochain, MatrixComplex};
pub use forms::{form_differential, form_product, theta_pairing, FormCochain};
pub use fuzz::{run_fuzz, FuzzReport};
pub use matrix::RatMatrix;
