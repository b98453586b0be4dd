//! Permutation groups: elements, stabilizer chains, subgroup algorithms, classes and quotients.

mod chain;
mod classes;
mod group;
mod io;
mod orbit;
mod permutation;
mod product;
mod quotient;
mod subgroups;

pub use classes::{conjugacy_classes, ClassTable, ConjugacyClass};
pub use group::{p_part, prime_factors, Group, DEFAULT_SEED};
pub use io::GeneratorFile;
pub(crate) use orbit::{orbit_stabilizer, Action};
pub(crate) use permutation::mod_inverse;
pub use permutation::Permutation;
pub use product::{direct_product, pair, split};
pub use quotient::QuotientAction;
pub use subgroups::{
    centralizer, class_size, conjugates_of, core, intersection, is_subnormal, normal_closure, normal_closure_series,
    normalizer, normalizer_chain,
};
