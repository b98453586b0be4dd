//! Test groups: classical matrix groups as permutation groups, small families, products,
//! central quotients and a registry of named groups.

mod corpus;
mod families;
mod field;
mod matrix;
mod recipe;

pub use corpus::{corpus, CORPUS};
pub use families::{alternating, center, central_quotient, cyclic, dihedral, symmetric, wreath};
pub use field::{field, field_orders, FiniteField};
pub use matrix::{
    classical_order, matrix_group, unipotent_jordan_type, vec_mat, ActionSpec, Family, FormKind, FormSpec, Matrix,
    MatrixGroup, MatrixGroupFile, NamedMatrix, PermutationModule, ORBIT_LIMIT,
};
pub use recipe::{
    construct, data_dir, file_sha256, load_named, load_named_built, registry, BuiltGroup, Recipe, RegistryEntry,
    DATA_DIR_VAR,
};
pub use crate::perm::direct_product;
