//! Orbits with Schreier trees and stabilizers via random Schreier generators.

use std::collections::HashMap;
use std::hash::Hash;

use super::group::Group;
use super::permutation::Permutation;
use crate::error::{Error, Result};

const NO_PARENT: u32 = u32::MAX;

/// A right action of permutations on some point set.
pub(crate) trait Action {
    type Point: Clone;
    type Key: Hash + Eq;

    fn act(&self, p: &Self::Point, g: &Permutation) -> Self::Point;
    fn key(&self, p: &Self::Point) -> Self::Key;

    /// Exact comparison of two points sharing a key. Keys are complete unless overridden.
    fn same(&self, _a: &Self::Point, _b: &Self::Point) -> bool {
        true
    }
}

/// Orbit of a point under a generating set, with a Schreier tree for transversal elements.
pub(crate) struct Orbit<A: Action> {
    pub points: Vec<A::Point>,
    parent: Vec<(u32, u32)>,
    head: HashMap<A::Key, u32>,
    next: Vec<u32>,
    gens: Vec<Permutation>,
}

impl<A: Action> Orbit<A> {
    pub fn build(action: &A, root: A::Point, gens: &[Permutation], bound: u128) -> Result<Orbit<A>> {
        let mut orbit = Orbit {
            points: Vec::new(),
            parent: Vec::new(),
            head: HashMap::new(),
            next: Vec::new(),
            gens: gens.to_vec(),
        };
        orbit.insert(action, root, (NO_PARENT, NO_PARENT));
        let mut i = 0;
        while i < orbit.points.len() {
            for (gi, g) in gens.iter().enumerate() {
                let q = action.act(&orbit.points[i], g);
                if orbit.locate(action, &q).is_none() {
                    orbit.insert(action, q, (i as u32, gi as u32));
                    if orbit.points.len() as u128 > bound {
                        return Err(Error::bound("orbit length", orbit.points.len() as u128, bound));
                    }
                }
            }
            i += 1;
        }
        Ok(orbit)
    }

    fn insert(&mut self, action: &A, p: A::Point, parent: (u32, u32)) {
        let idx = self.points.len() as u32;
        let key = action.key(&p);
        let prev = self.head.insert(key, idx).unwrap_or(NO_PARENT);
        self.next.push(prev);
        self.points.push(p);
        self.parent.push(parent);
    }

    pub fn locate(&self, action: &A, p: &A::Point) -> Option<usize> {
        let mut idx = *self.head.get(&action.key(p))?;
        while idx != NO_PARENT {
            if action.same(&self.points[idx as usize], p) {
                return Some(idx as usize);
            }
            idx = self.next[idx as usize];
        }
        None
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    /// Element `t` with `root^t = points[idx]`.
    pub fn transversal(&self, idx: usize) -> Permutation {
        let mut path = Vec::new();
        let mut i = idx;
        while self.parent[i].0 != NO_PARENT {
            path.push(self.parent[i].1);
            i = self.parent[i].0 as usize;
        }
        let mut t = Permutation::identity(self.gens.first().map(|g| g.degree()).unwrap_or(0));
        for &gi in path.iter().rev() {
            t = t.compose(&self.gens[gi as usize]);
        }
        t
    }
}

/// Generators suited to breadth-first orbit construction.
pub(crate) fn orbit_generators(group: &Group) -> Vec<Permutation> {
    if group.generators().len() > 4 && group.order() > 2000 {
        group.small_generating_set()
    } else {
        group.generators().to_vec()
    }
}

/// Orbit of `root` together with its stabilizer, certified by `|G| = |orbit| · |stabilizer|`.
pub(crate) fn orbit_stabilizer<A: Action>(
    group: &Group,
    action: &A,
    root: A::Point,
    bound: u128,
    salt: u64,
) -> Result<(Orbit<A>, Group)> {
    let gens = orbit_generators(group);
    let orbit = Orbit::build(action, root.clone(), &gens, bound)?;
    let len = orbit.len() as u128;
    if !group.order().is_multiple_of(len) {
        return Err(Error::InternalInconsistency(format!(
            "orbit length {len} does not divide group order {}",
            group.order()
        )));
    }
    let target = group.order() / len;
    if target == 1 {
        return Ok((orbit, Group::trivial(group.degree()).with_seed(group.seed())));
    }
    let mut rng = group.rng(salt);
    let source = || {
        let g = group.random_element(&mut rng);
        let q = action.act(&root, &g);
        let idx = orbit.locate(action, &q).expect("orbit is closed under the group");
        g.compose(&orbit.transversal(idx).inverse())
    };
    let stab = group.subgroup_from_source(source, target)?;
    Ok((orbit, stab))
}
