//! Normal-form calculus for RO(C2)-graded Bredon cohomology with constant
//! F2 coefficients.
//!
//! A module is stored as its bigraded rank and antipodal rank; everything
//! else (fixed-point Betti numbers, Borel cohomology, singular cohomology
//! with involution, Maximal / Galois-Maximal classification, duality checks)
//! is read off from those two maps. [`solver`] runs the reverse direction,
//! enumerating every normal form compatible with given topological data.

pub mod algebra;
pub mod catalog;
pub mod classification;
pub mod localization;
pub mod solver;

pub use algebra::{
    AlgebraError, AntipodalKey, Bidegree, BivariatePolynomial, FreeKey, M2Element, NormalFormModule, SummandKey,
    UnivariatePolynomial,
};
pub use catalog::{catalog_get, catalog_list, CatalogEntry, CatalogError};
pub use classification::{
    borel_classify, classify, group_cohomology_dims, hodge_birank_check, hodge_expressive_check, smith_thom_report,
    ClassificationError, MaximalityClass, SmithThomReport,
};
pub use localization::{
    fixed_poincare_polynomial, forgetful_image_dims, homology_dual, pd_symmetric, real_manifold_validate, rho_localize,
    tau_localize, underlying_singular, BorelModule, C2GradedSpace, GradedDims, HomologyModule, LocalizationError,
};
pub use solver::{enumerate_decompositions, krasnov_predict, threefold_predict, ConstraintSet, SolverError};
