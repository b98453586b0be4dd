//! Exact cyclotomic numbers, abelian field tags, `p`-parts and `p`-adic completions.

mod field;
mod number;
mod scalar;

pub use field::{
    character_field, decomposition_group, local_field_tag, local_subgroup_at, p_part, value_field, AbelianFieldTag,
    LocalFieldTag, PPart,
};
pub use number::{CycloDoc, Cyclotomic};
pub use scalar::ExactRational;

#[cfg(test)]
mod tests;
