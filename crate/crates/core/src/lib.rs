//! Exact algebra for low-complexity colorings of the square grid.
//!
//! A configuration `c : Z² → A` with integer symbols is treated as a formal
//! power series, and its annihilating Laurent polynomials carry most of the
//! information about periodicity. The modules build on each other:
//!
//! * [`poly`], [`coeff`], [`geometry`], [`univariate`], [`resultant`]:
//!   sparse bivariate Laurent polynomials over ℤ, ℚ and F_p.
//! * [`configuration`]: patches, tori, patterns and polynomial application.
//! * [`annihilator`]: annihilators from low-complexity pattern data.
//! * [`lines`]: line-polynomial factors and the periodicity they imply.
//! * [`sft`]: a budgeted emptiness decision for subshifts of finite type.
//! * [`applications`]: antenna placements and co-tilers of cluster tiles.

pub mod annihilator;
pub mod applications;
pub mod coeff;
pub mod configuration;
pub mod error;
pub mod geometry;
pub mod linalg;
pub mod lines;
pub mod poly;
pub mod resultant;
pub mod sft;
pub mod univariate;

pub use coeff::{Coeff, CoefficientDomain};
pub use configuration::{Annihilation, Patch, PatternSet, Shape, Source, TorusConfig};
pub use error::{Error, Result};
pub use geometry::{line_direction_candidates, NewtonPolygon};
pub use poly::{Exp, LaurentPoly, UnimodularMatrix};
pub use resultant::{univariate_resultant, Variable};
pub use univariate::direction_content;
