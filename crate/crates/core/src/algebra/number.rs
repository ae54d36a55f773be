//! Integer helpers for Z_v: gcd, units, factorization, Euler's totient.

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Prime factorization by trial division, primes ascending.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            let mut e = 0;
            while n.is_multiple_of(d) {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Number of k in [1, n] coprime to n.
pub fn euler_phi(n: u64) -> u64 {
    assert!(n >= 1, "euler_phi is defined for n >= 1");
    factorize(n)
        .into_iter()
        .fold(n, |acc, (p, _)| acc / p * (p - 1))
}

/// Units of Z_v in ascending order. For v = 1 the single residue 0 is the identity.
pub fn units(v: u64) -> Vec<u64> {
    if v == 1 {
        return vec![0];
    }
    (1..v).filter(|&a| gcd(a, v) == 1).collect()
}

pub fn mod_inverse(a: u64, m: u64) -> Option<u64> {
    if m == 1 {
        return Some(0);
    }
    let (mut old_r, mut r) = (a as i128 % m as i128, m as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    if old_r != 1 {
        return None;
    }
    Some(old_s.rem_euclid(m as i128) as u64)
}

/// Smallest e dividing `group_order` with `is_one(e)`, given that `is_one(group_order)` holds.
pub(crate) fn order_dividing<F: FnMut(u64) -> bool>(group_order: u64, mut is_one: F) -> u64 {
    let mut e = group_order;
    for (p, _) in factorize(group_order) {
        while e.is_multiple_of(p) && is_one(e / p) {
            e /= p;
        }
    }
    e
}
