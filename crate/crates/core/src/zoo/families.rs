//! Symmetric, alternating, cyclic and dihedral groups, wreath products, and central quotients.

use crate::config::RunConfig;
use crate::error::{Error, Result};
use crate::perm::{centralizer, intersection, Group, Permutation, QuotientAction};

fn cycle(n: usize, points: impl Iterator<Item = u32>) -> Permutation {
    let points: Vec<u32> = points.collect();
    Permutation::from_cycles(n, &[&points]).expect("valid cycle")
}

fn build(gens: Vec<Permutation>, n: usize) -> Result<Group> {
    Group::from_generators(&gens, n)
}

/// `S_n` on `n` points.
pub fn symmetric(n: usize) -> Result<Group> {
    if n == 0 {
        return Err(Error::InvalidInput("S_0 is not supported".into()));
    }
    if n == 1 {
        return Ok(Group::trivial(1));
    }
    build(vec![cycle(n, 0..2), cycle(n, 0..n as u32)], n)
}

/// `A_n` on `n` points.
pub fn alternating(n: usize) -> Result<Group> {
    match n {
        0 => Err(Error::InvalidInput("A_0 is not supported".into())),
        1 | 2 => Ok(Group::trivial(n)),
        3 => build(vec![cycle(3, 0..3)], 3),
        _ if n % 2 == 1 => build(vec![cycle(n, 0..3), cycle(n, 0..n as u32)], n),
        _ => build(vec![cycle(n, 0..3), cycle(n, 1..n as u32)], n),
    }
}

/// The cyclic group of order `n` generated by an `n`-cycle.
pub fn cyclic(n: usize) -> Result<Group> {
    match n {
        0 => Err(Error::InvalidInput("C_0 is not supported".into())),
        1 => Ok(Group::trivial(1)),
        _ => build(vec![cycle(n, 0..n as u32)], n),
    }
}

/// The dihedral group of order `order`, on the vertices of a regular `order/2`-gon
/// (on 4 points for the Klein four-group).
pub fn dihedral(order: usize) -> Result<Group> {
    if order < 2 || order % 2 == 1 {
        return Err(Error::InvalidInput(format!("no dihedral group of order {order}")));
    }
    let k = order / 2;
    match k {
        1 => cyclic(2),
        2 => build(
            vec![
                Permutation::from_cycles(4, &[&[0, 1], &[2, 3]])?,
                Permutation::from_cycles(4, &[&[0, 2], &[1, 3]])?,
            ],
            4,
        ),
        _ => {
            let reflection = Permutation::from_images((0..k as u32).map(|i| (k as u32 - i) % k as u32).collect())?;
            build(vec![cycle(k, 0..k as u32), reflection], k)
        }
    }
}

/// `G ≀ H` in its imprimitive action: `deg H` blocks, each a copy of the domain of `G`.
pub fn wreath(base: &Group, top: &Group) -> Result<Group> {
    let (d, m) = (base.degree(), top.degree());
    let n = d * m;
    let mut gens = Vec::new();
    let mut seen = vec![false; m];
    for b in 0..m {
        if seen[b] {
            continue;
        }
        let mut stack = vec![b];
        seen[b] = true;
        while let Some(c) = stack.pop() {
            for h in top.generators() {
                let e = h.image(c as u32) as usize;
                if !seen[e] {
                    seen[e] = true;
                    stack.push(e);
                }
            }
        }
        for g in base.generators() {
            let mut images: Vec<u32> = (0..n as u32).collect();
            for x in 0..d {
                images[b * d + x] = (b * d) as u32 + g.image(x as u32);
            }
            gens.push(Permutation::from_images(images)?);
        }
    }
    for h in top.generators() {
        let images = (0..n).map(|x| (h.image((x / d) as u32) as usize * d + x % d) as u32).collect();
        gens.push(Permutation::from_images(images)?);
    }
    let group = Group::from_generators(&gens, n)?;
    let expected = base.order().pow(m as u32) * top.order();
    if group.order() != expected {
        return Err(Error::InternalInconsistency(format!("wreath product has order {} instead of {expected}", group.order())));
    }
    Ok(group)
}

/// `Z(G)`, as the intersection of the centralizers of the generators.
pub fn center(group: &Group, config: &RunConfig) -> Result<Group> {
    let mut z = group.clone();
    for g in group.generators() {
        if z.generators().iter().all(|s| s.compose(g) == g.compose(s)) {
            continue;
        }
        z = intersection(&z, &centralizer(group, g, config)?, config)?;
    }
    Ok(z)
}

/// `G/Z(G)` acting on blocks of `Z`-orbits or on cosets of the center.
pub fn central_quotient(group: &Group, config: &RunConfig) -> Result<Group> {
    let z = center(group, config)?;
    if z.order() == 1 {
        return Ok(group.clone());
    }
    Ok(QuotientAction::new(group, &z, config)?.image().clone())
}
