//! Linear algebra over a prime field `F_ℓ` with `ℓ < 2^32`.

use crate::numtheory::{factor, is_prime, mod_pow};

#[derive(Clone, Copy, Debug)]
pub(crate) struct Fp {
    pub l: u64,
}

impl Fp {
    #[inline]
    pub fn add(self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.l {
            s - self.l
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.l - b
        }
    }

    #[inline]
    pub fn mul(self, a: u64, b: u64) -> u64 {
        a * b % self.l
    }

    pub fn pow(self, a: u64, e: u64) -> u64 {
        mod_pow(a, e, self.l)
    }

    pub fn inv(self, a: u64) -> u64 {
        debug_assert!(!a.is_multiple_of(self.l));
        self.pow(a, self.l - 2)
    }

    pub fn reduce_u128(self, n: u128) -> u64 {
        (n % self.l as u128) as u64
    }

    /// The least generator of `F_ℓ^*`.
    pub fn primitive_root(self) -> u64 {
        let primes: Vec<u64> = factor(self.l - 1).into_iter().map(|(q, _)| q).collect();
        (2..self.l)
            .find(|&g| primes.iter().all(|&q| self.pow(g, (self.l - 1) / q) != 1))
            .unwrap_or(1)
    }
}

/// The least prime `ℓ ≡ 1 (mod e)` with `ℓ > bound`, trying at most `tries` candidates.
pub(crate) fn dixon_prime(e: u64, bound: u64, tries: u64) -> Option<u64> {
    let start = bound / e + 1;
    (start..start + tries).map(|t| t * e + 1).find(|&l| l > bound && is_prime(l))
}

/// Coefficients (low degree first) of the characteristic polynomial, by Hessenberg reduction.
pub(crate) fn charpoly(f: Fp, mut h: Vec<Vec<u64>>) -> Vec<u64> {
    let n = h.len();
    for j in 0..n.saturating_sub(2) {
        let Some(i) = (j + 1..n).find(|&i| h[i][j] != 0) else { continue };
        if i != j + 1 {
            h.swap(i, j + 1);
            for row in h.iter_mut() {
                row.swap(i, j + 1);
            }
        }
        let inv = f.inv(h[j + 1][j]);
        for k in j + 2..n {
            if h[k][j] == 0 {
                continue;
            }
            let u = f.mul(h[k][j], inv);
            for c in 0..n {
                let t = f.mul(u, h[j + 1][c]);
                h[k][c] = f.sub(h[k][c], t);
            }
            for row in h.iter_mut() {
                let t = f.mul(u, row[k]);
                row[j + 1] = f.add(row[j + 1], t);
            }
        }
    }
    let mut polys: Vec<Vec<u64>> = vec![vec![1]];
    for m in 1..=n {
        let prev = &polys[m - 1];
        let mut p = vec![0u64; m + 1];
        for (d, &c) in prev.iter().enumerate() {
            p[d + 1] = f.add(p[d + 1], c);
            p[d] = f.sub(p[d], f.mul(h[m - 1][m - 1], c));
        }
        let mut t = 1u64;
        for i in 1..m {
            t = f.mul(t, h[m - i][m - i - 1]);
            let coeff = f.mul(t, h[m - i - 1][m - 1]);
            for (d, &c) in polys[m - i - 1].iter().enumerate() {
                p[d] = f.sub(p[d], f.mul(coeff, c));
            }
        }
        polys.push(p);
    }
    polys.pop().unwrap()
}

/// Distinct roots in `F_ℓ`, increasing.
pub(crate) fn roots(f: Fp, poly: &[u64]) -> Vec<u64> {
    (0..f.l)
        .filter(|&x| poly.iter().rev().fold(0u64, |acc, &c| f.add(f.mul(acc, x), c)) == 0)
        .collect()
}

/// A basis of `{v : A v = 0}` for a square matrix, each vector normalised at its last free coordinate.
pub(crate) fn nullspace(f: Fp, mut a: Vec<Vec<u64>>) -> Vec<Vec<u64>> {
    let n = a.first().map_or(0, Vec::len);
    let mut pivots: Vec<usize> = Vec::new();
    let mut row = 0;
    for col in 0..n {
        let Some(r) = (row..a.len()).find(|&r| a[r][col] != 0) else { continue };
        a.swap(row, r);
        let inv = f.inv(a[row][col]);
        for c in 0..n {
            a[row][c] = f.mul(a[row][c], inv);
        }
        for r in 0..a.len() {
            if r != row && a[r][col] != 0 {
                let u = a[r][col];
                for c in 0..n {
                    let t = f.mul(u, a[row][c]);
                    a[r][c] = f.sub(a[r][c], t);
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![0u64; n];
            v[fc] = 1;
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = f.sub(0, a[r][fc]);
            }
            v
        })
        .collect()
}

/// A subspace of `F_ℓ^r` in reduced row-echelon form.
#[derive(Clone, Debug)]
pub(crate) struct Subspace {
    pub basis: Vec<Vec<u64>>,
    pub pivots: Vec<usize>,
}

impl Subspace {
    pub fn full(r: usize) -> Self {
        let basis = (0..r)
            .map(|i| {
                let mut v = vec![0; r];
                v[i] = 1;
                v
            })
            .collect();
        Subspace { basis, pivots: (0..r).collect() }
    }

    pub fn span(f: Fp, vectors: Vec<Vec<u64>>) -> Self {
        let r = vectors.first().map_or(0, Vec::len);
        let mut basis: Vec<Vec<u64>> = Vec::new();
        let mut pivots: Vec<usize> = Vec::new();
        for mut v in vectors {
            for (b, &p) in basis.iter().zip(&pivots) {
                if v[p] != 0 {
                    let u = v[p];
                    for c in 0..r {
                        v[c] = f.sub(v[c], f.mul(u, b[c]));
                    }
                }
            }
            let Some(p) = v.iter().position(|&x| x != 0) else { continue };
            let inv = f.inv(v[p]);
            v.iter_mut().for_each(|x| *x = f.mul(*x, inv));
            for b in basis.iter_mut() {
                if b[p] != 0 {
                    let u = b[p];
                    for c in 0..r {
                        b[c] = f.sub(b[c], f.mul(u, v[c]));
                    }
                }
            }
            basis.push(v);
            pivots.push(p);
        }
        let mut order: Vec<usize> = (0..basis.len()).collect();
        order.sort_by_key(|&i| pivots[i]);
        Subspace { basis: order.iter().map(|&i| basis[i].clone()).collect(), pivots: order.iter().map(|&i| pivots[i]).collect() }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Matrix of `v ↦ M v` on this (invariant) subspace in the echelon basis.
    pub fn restrict(&self, f: Fp, m: &[Vec<u64>]) -> Vec<Vec<u64>> {
        let d = self.dim();
        let mut out = vec![vec![0u64; d]; d];
        for (t, b) in self.basis.iter().enumerate() {
            for (s, &p) in self.pivots.iter().enumerate() {
                let image = m[p].iter().zip(b).fold(0u64, |acc, (&x, &y)| f.add(acc, f.mul(x, y)));
                out[s][t] = image;
            }
        }
        out
    }

    /// The vector with the given coordinates.
    pub fn combine(&self, f: Fp, coords: &[u64]) -> Vec<u64> {
        let r = self.basis.first().map_or(0, Vec::len);
        let mut v = vec![0u64; r];
        for (c, b) in coords.iter().zip(&self.basis) {
            if *c != 0 {
                for i in 0..r {
                    v[i] = f.add(v[i], f.mul(*c, b[i]));
                }
            }
        }
        v
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn charpoly_of_companion_matrix() {
        let f = Fp { l: 101 };
        // x^3 - 6x^2 + 11x - 6 = (x-1)(x-2)(x-3)
        let m = vec![vec![0, 0, 6], vec![1, 0, 101 - 11], vec![0, 1, 6]];
        assert_eq!(charpoly(f, m), vec![101 - 6, 11, 101 - 6, 1]);
        assert_eq!(roots(f, &[101 - 6, 11, 101 - 6, 1]), vec![1, 2, 3]);
    }

    #[test]
    fn nullspace_and_span() {
        let f = Fp { l: 7 };
        let ns = nullspace(f, vec![vec![1, 2, 3], vec![2, 4, 6]]);
        assert_eq!(ns.len(), 2);
        for v in &ns {
            assert_eq!((v[0] + 2 * v[1] + 3 * v[2]) % 7, 0);
        }
        let s = Subspace::span(f, vec![vec![1, 1, 0], vec![2, 2, 0], vec![0, 1, 1]]);
        assert_eq!(s.dim(), 2);
        assert_eq!(dixon_prime(12, 20, 100), Some(37));
        assert_eq!(Fp { l: 7 }.primitive_root(), 3);
    }
}
