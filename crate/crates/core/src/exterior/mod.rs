//! Graded exterior calculus on coordinate charts and left-invariant Lie frames.
//!
//! The pairing convention is `(e^{i_1}∧…∧e^{i_p})(e_{j_1},…,e_{j_p}) = det(δ_{i_a j_b})`
//! throughout, so for a 1-form `dα(X,Y) = X α(Y) - Y α(X) - α([X,Y])`.

pub mod field;
pub mod form;
pub mod multi;
pub mod space;
pub mod tensor;

pub use field::{bracket, VectorField};
pub use form::{ext_d, interior, wedge, Form};
pub use space::{Space, SpaceKind, SpaceRef};
pub use tensor::{is_positive_definite, EndoField, MetricField};
