//! Direct products on disjoint unions of domains.

use super::group::Group;
use super::permutation::Permutation;
use crate::error::Result;

/// `(g₁, g₂)` acting on the disjoint union, `g₁` on the first `g₁.degree()` points.
pub fn pair(g1: &Permutation, g2: &Permutation) -> Permutation {
    let n1 = g1.degree() as u32;
    let mut images = g1.images().to_vec();
    images.extend(g2.images().iter().map(|&i| i + n1));
    Permutation::from_images_unchecked(images)
}

/// The two components of an element of a direct product with first factor of degree `n1`.
pub fn split(g: &Permutation, n1: usize) -> (Permutation, Permutation) {
    let a = g.images()[..n1].to_vec();
    let b = g.images()[n1..].iter().map(|&i| i - n1 as u32).collect();
    (Permutation::from_images_unchecked(a), Permutation::from_images_unchecked(b))
}

/// `G₁ × G₂` on `deg G₁ + deg G₂` points.
pub fn direct_product(g1: &Group, g2: &Group) -> Result<Group> {
    let id1 = g1.identity();
    let id2 = g2.identity();
    let mut gens: Vec<Permutation> = g1.generators().iter().map(|g| pair(g, &id2)).collect();
    gens.extend(g2.generators().iter().map(|g| pair(&id1, g)));
    let product = Group::from_generators(&gens, g1.degree() + g2.degree())?.with_seed(g1.seed());
    debug_assert_eq!(product.order(), g1.order() * g2.order());
    Ok(product)
}
