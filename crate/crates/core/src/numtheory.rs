//! Small integer number theory shared by the cyclotomic and character engines.

use num_integer::Integer;

pub(crate) use crate::perm::mod_inverse;

/// Prime factorisation as `(prime, exponent)` pairs in increasing order.
pub fn factor(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && factor(n).len() == 1 && factor(n)[0].1 == 1
}

/// Units modulo `n` in increasing order; `[0]` for `n = 1`.
pub fn units(n: u64) -> Vec<u64> {
    if n == 1 {
        return vec![0];
    }
    (1..n).filter(|u| u.gcd(&n) == 1).collect()
}

pub fn euler_phi(n: u64) -> u64 {
    factor(n).iter().fold(n, |acc, &(p, _)| acc / p * (p - 1))
}

pub fn divisors(n: u64) -> Vec<u64> {
    let mut d: Vec<u64> = (1..=n).take_while(|k| k * k <= n).filter(|k| n.is_multiple_of(*k)).flat_map(|k| [k, n / k]).collect();
    d.sort_unstable();
    d.dedup();
    d
}

pub fn mod_pow(base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u128;
    let mut b = (base % m) as u128;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m as u128;
        }
        b = b * b % m as u128;
        exp >>= 1;
    }
    acc as u64
}

/// Multiplicative order of `a` modulo `m` (1 when `m = 1`).
pub fn mult_order(a: u64, m: u64) -> u64 {
    if m == 1 {
        return 1;
    }
    let mut x = a % m;
    let mut k = 1;
    while x != 1 {
        x = (x as u128 * a as u128 % m as u128) as u64;
        k += 1;
    }
    k
}

/// `v_p(n)` and the `p`-free part.
pub fn split_prime(mut n: u64, p: u64) -> (u32, u64) {
    let mut e = 0;
    while n.is_multiple_of(p) && n > 0 {
        n /= p;
        e += 1;
    }
    (e, n)
}

pub fn lcm(a: u64, b: u64) -> u64 {
    a.lcm(&b)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basics() {
        assert_eq!(factor(360), vec![(2, 3), (3, 2), (5, 1)]);
        assert_eq!(units(10), vec![1, 3, 7, 9]);
        assert_eq!(euler_phi(1820), 576);
        assert_eq!(divisors(12), vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(mult_order(2, 5), 4);
        assert_eq!(mod_pow(3, 4, 7), 4);
        assert!(is_prime(13) && !is_prime(1) && !is_prime(9));
    }
}
