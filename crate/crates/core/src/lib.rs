//! Exact computations on the genus-zero super Riemann surface `P^{1|1}`:
//! Grassmann algebras, points, the superconformal group, spinor sections,
//! super maps to `P^1` and trees of such maps.
//!
//! Everything is generic over a [`Coefficient`] field. The aliases at the
//! crate root fix the exact Gaussian-rational field [`Scalar`].

pub mod bundles;
pub mod curves;
pub mod error;
pub mod grassmann;
pub mod linalg;
pub mod poly;
pub mod ratfunc;
pub mod sample;
pub mod scalar;
pub mod scgroup;
pub mod superspace;
pub mod trees;

pub use error::{Error, Result};
pub use ratfunc::RatFunc;
pub use scalar::{Coefficient, Complex64, Scalar};

pub type SuperNumber = grassmann::SuperNumber<Scalar>;
pub type ProjPoint = superspace::ProjPoint<Scalar>;
pub type ChartPoint = superspace::ChartPoint<Scalar>;
pub type ScMatrix = scgroup::ScMatrix<Scalar>;
pub type Sl2 = scgroup::Sl2<Scalar>;
pub type Section = bundles::Section<Scalar>;
pub type SpinorSection = bundles::SpinorSection<Scalar>;
pub type SuperCurve = curves::SuperCurve<Scalar>;
pub type MarkedConfig = curves::MarkedConfig<Scalar>;
pub type TreeConfig = trees::TreeConfig<Scalar>;

/// Coefficients with a symbolic parameter `t`.
pub type Symbolic = RatFunc<Scalar>;

pub type FloatSuperNumber = grassmann::SuperNumber<Complex64>;
