use std::fmt;
use std::ops::Mul;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A permutation of `{0, …, degree-1}` stored by its images.
///
/// Permutations act on the right: `i^(gh) = (i^g)^h`, so `g * h` applies `g` first.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Permutation {
    images: Vec<u32>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation { images: (0..degree as u32).collect() }
    }

    /// Builds a permutation from an image array, rejecting anything that is not a bijection.
    pub fn from_images(images: Vec<u32>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for (i, &img) in images.iter().enumerate() {
            let img = img as usize;
            if img >= n {
                return Err(Error::MalformedPermutation {
                    index: 0,
                    reason: format!("image {img} of point {i} out of range for degree {n}"),
                });
            }
            if seen[img] {
                return Err(Error::MalformedPermutation {
                    index: 0,
                    reason: format!("point {img} is hit twice"),
                });
            }
            seen[img] = true;
        }
        Ok(Permutation { images })
    }

    pub(crate) fn from_images_unchecked(images: Vec<u32>) -> Self {
        debug_assert!(Permutation::from_images(images.clone()).is_ok());
        Permutation { images }
    }

    /// Builds a permutation from disjoint cycles.
    pub fn from_cycles(degree: usize, cycles: &[&[u32]]) -> Result<Self> {
        let mut images: Vec<u32> = (0..degree as u32).collect();
        let mut touched = vec![false; degree];
        for cycle in cycles {
            for (k, &a) in cycle.iter().enumerate() {
                let b = cycle[(k + 1) % cycle.len()];
                if a as usize >= degree || b as usize >= degree {
                    return Err(Error::MalformedPermutation {
                        index: 0,
                        reason: format!("cycle point out of range for degree {degree}"),
                    });
                }
                if touched[a as usize] {
                    return Err(Error::MalformedPermutation {
                        index: 0,
                        reason: format!("point {a} occurs in two cycles"),
                    });
                }
                touched[a as usize] = true;
                images[a as usize] = b;
            }
        }
        Ok(Permutation { images })
    }

    #[inline]
    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn image(&self, point: u32) -> u32 {
        self.images[point as usize]
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    /// `self` followed by `other`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        debug_assert_eq!(self.degree(), other.degree());
        let images = self.images.iter().map(|&i| other.images[i as usize]).collect();
        Permutation { images }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0u32; self.images.len()];
        for (i, &img) in self.images.iter().enumerate() {
            images[img as usize] = i as u32;
        }
        Permutation { images }
    }

    /// `self^g = g⁻¹ · self · g`.
    pub fn conjugate_by(&self, g: &Permutation) -> Permutation {
        // (i^g)^(self^g) = (i^self)^g
        let mut images = vec![0u32; self.images.len()];
        for (i, &img) in self.images.iter().enumerate() {
            images[g.images[i] as usize] = g.images[img as usize];
        }
        Permutation { images }
    }

    pub fn pow(&self, exponent: i64) -> Permutation {
        let base = if exponent < 0 { self.inverse() } else { self.clone() };
        let mut e = exponent.unsigned_abs();
        let mut acc = Permutation::identity(self.degree());
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.compose(&sq);
            }
            e >>= 1;
            if e > 0 {
                sq = sq.compose(&sq);
            }
        }
        acc
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &img)| i as u32 == img)
    }

    pub fn first_moved_point(&self) -> Option<u32> {
        self.images.iter().enumerate().find(|(i, &img)| *i as u32 != img).map(|(i, _)| i as u32)
    }

    pub fn fixes(&self, point: u32) -> bool {
        self.images[point as usize] == point
    }

    /// Nontrivial cycles, each starting at its smallest point.
    pub fn cycles(&self) -> Vec<Vec<u32>> {
        let mut seen = vec![false; self.degree()];
        let mut out = Vec::new();
        for start in 0..self.degree() {
            if seen[start] || self.images[start] as usize == start {
                continue;
            }
            let mut cycle = Vec::new();
            let mut p = start as u32;
            while !seen[p as usize] {
                seen[p as usize] = true;
                cycle.push(p);
                p = self.images[p as usize];
            }
            out.push(cycle);
        }
        out
    }

    /// Element order, the lcm of the cycle lengths.
    pub fn order(&self) -> u64 {
        self.cycles().iter().fold(1u64, |acc, c| acc.lcm(&(c.len() as u64)))
    }

    /// Sorted multiset of cycle lengths including fixed points.
    pub fn cycle_type(&self) -> Vec<usize> {
        let mut lens: Vec<usize> = self.cycles().iter().map(Vec::len).collect();
        let moved: usize = lens.iter().sum();
        lens.extend(std::iter::repeat_n(1, self.degree() - moved));
        lens.sort_unstable();
        lens
    }

    /// Splits `self` into commuting `p`-part and `p'`-part with `self = g_p · g_p'`.
    pub fn p_parts(&self, p: u64) -> (Permutation, Permutation) {
        let n = self.order();
        let mut pa = 1u64;
        let mut m = n;
        while m.is_multiple_of(p) {
            m /= p;
            pa *= p;
        }
        if pa == 1 {
            return (Permutation::identity(self.degree()), self.clone());
        }
        if m == 1 {
            return (self.clone(), Permutation::identity(self.degree()));
        }
        // exponent e ≡ 1 mod p^a, e ≡ 0 mod m
        let t = mod_inverse(m % pa, pa).expect("coprime");
        let e = (m as u128 * t as u128 % n as u128) as i64;
        let gp = self.pow(e);
        let gq = self.compose(&gp.inverse());
        (gp, gq)
    }

    pub fn is_p_element(&self, p: u64) -> bool {
        let mut n = self.order();
        while n.is_multiple_of(p) {
            n /= p;
        }
        n == 1
    }

    /// Restricts to a subset of points that the permutation maps into itself, relabelled by position.
    pub(crate) fn restrict(&self, points: &[u32], index_of: &[u32]) -> Permutation {
        let images = points.iter().map(|&p| index_of[self.images[p as usize] as usize]).collect();
        Permutation { images }
    }
}

impl Mul for &Permutation {
    type Output = Permutation;
    fn mul(self, rhs: &Permutation) -> Permutation {
        self.compose(rhs)
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            write!(f, "(")?;
            for (k, p) in c.iter().enumerate() {
                if k > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{p}")?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

pub(crate) fn mod_inverse(a: u64, m: u64) -> Option<u64> {
    if m == 1 {
        return Some(0);
    }
    let (g, x, _) = ext_gcd(a as i128, m as i128);
    if g != 1 {
        return None;
    }
    Some(x.rem_euclid(m as i128) as u64)
}

fn ext_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    if b == 0 {
        (a, 1, 0)
    } else {
        let (g, x, y) = ext_gcd(b, a % b);
        (g, y, x - (a / b) * y)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cyc(degree: usize, cycles: &[&[u32]]) -> Permutation {
        Permutation::from_cycles(degree, cycles).unwrap()
    }

    #[test]
    fn rejects_non_bijection() {
        assert!(Permutation::from_images(vec![0, 0, 1]).is_err());
        assert!(Permutation::from_images(vec![0, 3, 1]).is_err());
        assert!(Permutation::from_images(vec![2, 0, 1]).is_ok());
    }

    #[test]
    fn right_action_composition() {
        let a = cyc(3, &[&[0, 1]]);
        let b = cyc(3, &[&[1, 2]]);
        // 0 -a-> 1 -b-> 2
        assert_eq!((&a * &b).image(0), 2);
        assert_eq!(a.compose(&a.inverse()), Permutation::identity(3));
    }

    #[test]
    fn conjugation_relabels_cycles() {
        let x = cyc(4, &[&[0, 1, 2]]);
        let g = cyc(4, &[&[2, 3]]);
        assert_eq!(x.conjugate_by(&g), cyc(4, &[&[0, 1, 3]]));
        let direct = g.inverse().compose(&x).compose(&g);
        assert_eq!(x.conjugate_by(&g), direct);
    }

    #[test]
    fn p_parts_of_order_six() {
        // order 6: (0 1)(2 3 4)
        let g = cyc(5, &[&[0, 1], &[2, 3, 4]]);
        let (g2, g3) = g.p_parts(2);
        assert_eq!(g2, g.pow(3));
        assert_eq!(g2.order(), 2);
        assert_eq!(g3.order(), 3);
        assert_eq!(g2.compose(&g3), g);
        assert_eq!(g2.compose(&g3), g3.compose(&g2));
    }

    #[test]
    fn p_parts_of_order_twelve() {
        let g = cyc(7, &[&[0, 1, 2, 3], &[4, 5, 6]]);
        assert_eq!(g.order(), 12);
        let (g3, rest) = g.p_parts(3);
        assert_eq!(g3, g.pow(4));
        assert_eq!(rest.order(), 4);
    }

    #[test]
    fn p_parts_of_p_element() {
        let g = cyc(4, &[&[0, 1, 2, 3]]);
        let (gp, gq) = g.p_parts(2);
        assert_eq!(gp, g);
        assert!(gq.is_identity());
        assert!(g.is_p_element(2));
        assert!(!g.is_p_element(3));
    }
}
