//! Growth polynomials, real roots and rational growth series.

pub mod growth;
pub mod poly;
pub mod roots;
pub mod series;

pub use growth::{growth_polynomial, GrowthPolynomialError};
pub use poly::IntPolynomial;
pub use roots::{complex_roots, largest_real_root, real_roots, RootError};
pub use series::{
    ball_series, dominant_singularity, edjvet_johnson_series, series_coefficients,
    DominantSingularity, RationalSeries, SeriesError,
};
