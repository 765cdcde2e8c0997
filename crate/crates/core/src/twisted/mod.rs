//! Alpha-twisted representation theory, computed through the ordinary characters of `G_alpha`.

mod basis;
mod mackey;
mod maps;
mod phi;
mod product;

pub use basis::{alpha_character_basis, decompose, section_inner_product, AlphaCharBasis, RAlphaElement, SectionCharacter};
pub use mackey::{verify_mackey, MackeyPairResult, MackeyReport};
pub use maps::{conjugation_matrix, induction_matrix, restriction_matrix, TwistedContext};
pub use phi::{phi_element, phi_embedding_check, PhiReport};
pub use product::{basis_elements, twisted_product, TwistedProduct};

pub(crate) use basis::decompose_values;
pub(crate) use product::transport;
