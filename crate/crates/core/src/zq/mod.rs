//! Exact linear algebra over `Z/q`, `q = p^s`.

mod abelian;
mod howell;
mod matrix;
mod modulus;
mod pairing;
mod span;

pub use abelian::AbGroupPresentation;
pub use howell::{howell_form, howell_form_with_transform, kernel, left_kernel, solve, HowellForm};
pub use matrix::ZqMatrix;
pub(crate) use matrix::{axpy, dot};
pub(crate) use span::combine;
pub use modulus::{Modulus, ZqScalar};
pub use pairing::{evaluate as evaluate_pairing, pairing_perfection, PairingReport};
pub use span::Submodule;
