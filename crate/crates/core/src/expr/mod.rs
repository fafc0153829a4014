//! Expressions `F(s) = sum_j c_j prod_u prod_l L_u^{(l)}(s)^{d}` and their
//! exact combinatorial invariants.

pub mod coefficients;
pub mod descriptor;
pub mod io;
pub mod pole;
pub mod poly;
pub mod profile;
pub mod symbolic;

pub use coefficients::{dirichlet_coefficients, leading_index, CoefficientSeries, GrowthFit};
pub use descriptor::{LFunctionDescriptor, Source};
pub use io::{parse_expression, ExpressionFile};
pub use pole::{pole_analysis, pole_order, PoleInfo};
pub use poly::{canonicalize, Builder, Factor, Monomial, PolyExpression};
pub use profile::{degree_profile, leading_set, monomial_degrees, predicted_count, DegreeProfile, MonomialDegrees};
