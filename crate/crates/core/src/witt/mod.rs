//! Quadratic forms over `E = k((x1))...((xn))`, identified with `F2[(Z/2Z)^n]`.

pub mod dim6;
pub mod exterior;
pub mod form;

pub use dim6::{classify_dim6, enumerate_dim6, pf2_le3_witness, represents_one, Dim6Report, Le3Witness};
pub use exterior::{sw_total, w4, ExteriorElement};
pub use form::{generic_forms, DiagonalForm, GenericForms};
