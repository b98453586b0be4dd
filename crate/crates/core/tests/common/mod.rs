#![allow(dead_code)]

use std::collections::{BTreeSet, VecDeque};

use subnorm::zoo::corpus;
use subnorm::{Group, Permutation, RunConfig};

pub fn cfg() -> RunConfig {
    RunConfig::default()
}

pub fn groups() -> Vec<(String, Group)> {
    corpus(&cfg()).unwrap()
}

/// A small group as a multiplication table on element ranks.
pub struct Table {
    pub n: usize,
    pub elements: Vec<Permutation>,
    mul: Vec<u32>,
    inv: Vec<u32>,
}

impl Table {
    pub fn new(g: &Group) -> Table {
        let n = g.order() as usize;
        let elements: Vec<Permutation> = (0..n as u64).map(|r| g.unrank(r)).collect();
        let rank = |h: &Permutation| g.rank(h).unwrap() as u32;
        let mut mul = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                mul[a * n + b] = rank(&elements[a].compose(&elements[b]));
            }
        }
        let inv = elements.iter().map(|e| rank(&e.inverse())).collect();
        Table { n, elements, mul, inv }
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.mul[a as usize * self.n + b as usize]
    }

    pub fn conj(&self, a: u32, g: u32) -> u32 {
        self.mul(self.mul(self.inv[g as usize], a), g)
    }

    /// The subgroup generated by a set of ranks, as a sorted set.
    pub fn closure(&self, gens: &BTreeSet<u32>) -> BTreeSet<u32> {
        let mut inside: BTreeSet<u32> = gens.clone();
        inside.insert(self.mul(0, self.inv[0]));
        let mut queue: VecDeque<u32> = inside.iter().copied().collect();
        while let Some(a) = queue.pop_front() {
            for &b in gens {
                let c = self.mul(a, b);
                if inside.insert(c) {
                    queue.push_back(c);
                }
            }
        }
        inside
    }

    /// Every subgroup, by joining cyclic subgroups until nothing new appears.
    pub fn subgroups(&self) -> Vec<BTreeSet<u32>> {
        let mut all: BTreeSet<BTreeSet<u32>> =
            (0..self.n as u32).map(|a| self.closure(&BTreeSet::from([a]))).collect();
        let mut frontier: Vec<BTreeSet<u32>> = all.iter().cloned().collect();
        let cyclic = frontier.clone();
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for h in &frontier {
                for c in &cyclic {
                    if c.is_subset(h) {
                        continue;
                    }
                    let joined = self.closure(&h.union(c).copied().collect());
                    if all.insert(joined.clone()) {
                        next.push(joined);
                    }
                }
            }
            frontier = next;
        }
        all.into_iter().collect()
    }

    pub fn is_normal(&self, h: &BTreeSet<u32>, k: &BTreeSet<u32>) -> bool {
        k.iter().all(|&t| h.iter().all(|&a| h.contains(&self.conj(a, t))))
    }

    pub fn group_of(&self, h: &BTreeSet<u32>, degree: usize) -> Group {
        let gens: Vec<Permutation> = h.iter().map(|&a| self.elements[a as usize].clone()).collect();
        Group::from_generators(&gens, degree).unwrap()
    }
}
