//! Pfister numbers of quadratic forms over fields containing a square root
//! of -1, computed in the group algebra `F2[V]`.
//!
//! Square classes are vectors of `V = (Z/2Z)^n`, Witt classes are elements
//! of `F2[V]` stored by their support, and an `m`-fold Pfister form is the
//! product `(1 + X^v1)...(1 + X^vm)`. The [`decomposition`] module computes
//! Pfister numbers (closed form for `m = 1`, certified exact search for
//! `m = 2`), and the [`witt`] module models diagonal forms over the iterated
//! Laurent series field `k((x1))...((xn))` whose Witt ring is `F2[(Z/2Z)^n]`.

pub mod algebra;
pub mod decomposition;
pub mod error;
pub mod linalg;
pub mod witt;

pub use algebra::{F2Vector, GroupAlgebraElement, LinearMap, PfisterElement, MAX_DIM};
pub use decomposition::{
    decompose_pf1, decompose_pf2_greedy, pf1_exact, pf2_exact, pf2_upper,
    projection_lower_bound, verify_decomposition, xi_e, Decomposition, SearchConfig,
    SearchOutcome, SearchStatus, Strategy,
};
pub use error::{Error, Result};
pub use witt::{
    classify_dim6, enumerate_dim6, generic_forms, pf2_le3_witness, represents_one, sw_total,
    w4, DiagonalForm, Dim6Report, ExteriorElement, GenericForms, Le3Witness,
};
