//! Field expressions, exact mode application of normal-ordered sums, and
//! the free-field realization `tau` with its commutator verifier.

mod expr;
mod modes;
mod tau;

pub use expr::{field_name, Factor, FieldExpression, Term};
pub use modes::{
    enumerate_tuples, mode_apply, mode_apply_termwise, normal_order_apply, term_apply, EnumerationWindow, ModeOperator,
};
pub use tau::{p_of_z, tau_field, verify_realization, Conventions, E1Reading, Realization, GENERATORS};
