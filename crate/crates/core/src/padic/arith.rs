//! Word-sized modular arithmetic and small polynomial helpers over `F_p`.

/// Largest modulus `p^N` accepted anywhere in the crate. Sums of two
/// residues never overflow a `u64` below this bound.
pub const MAX_MODULUS: u64 = 1 << 62;

#[inline]
pub fn add_mod(a: u64, b: u64, m: u64) -> u64 {
    let s = a + b;
    if s >= m {
        s - m
    } else {
        s
    }
}

#[inline]
pub fn sub_mod(a: u64, b: u64, m: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + m - b
    }
}

#[inline]
pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

#[inline]
pub fn neg_mod(a: u64, m: u64) -> u64 {
    if a == 0 {
        0
    } else {
        m - a
    }
}

pub fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, b, m);
        }
        b = mul_mod(b, b, m);
        e >>= 1;
    }
    r
}

/// Reduces a signed integer into `[0, m)`.
pub fn reduce_i64(c: i64, m: u64) -> u64 {
    let r = (c as i128).rem_euclid(m as i128);
    r as u64
}

/// Reduces a signed 128-bit integer into `[0, m)`.
pub fn reduce_i128(c: i128, m: u64) -> u64 {
    c.rem_euclid(m as i128) as u64
}

/// `p`-adic valuation of a nonzero integer; `None` for zero.
pub fn val_u64(mut x: u64, p: u64) -> Option<u32> {
    if x == 0 {
        return None;
    }
    let mut v = 0;
    while x.is_multiple_of(p) {
        x /= p;
        v += 1;
    }
    Some(v)
}

/// `v_p(k!)` by Legendre's formula.
pub fn val_factorial(k: u64, p: u64) -> u64 {
    let mut v = 0;
    let mut pk = p;
    while pk <= k {
        v += k / pk;
        match pk.checked_mul(p) {
            Some(n) => pk = n,
            None => break,
        }
    }
    v
}

/// Inverse of a unit modulo `m` by extended Euclid.
pub fn inv_mod(a: u64, m: u64) -> Option<u64> {
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

/// `p^k`, or `None` when it would exceed [`MAX_MODULUS`].
pub fn checked_pow(p: u64, k: u32) -> Option<u64> {
    let mut r: u64 = 1;
    for _ in 0..k {
        r = r.checked_mul(p)?;
        if r > MAX_MODULUS {
            return None;
        }
    }
    Some(r)
}

pub fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

// --- dense polynomials over F_p, lowest degree first ---

pub(crate) fn fp_trim(a: &mut Vec<u64>) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

pub(crate) fn fp_mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    fp_trim(&mut out);
    out
}

pub(crate) fn fp_sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let n = a.len().max(b.len());
    let mut out = vec![0u64; n];
    for i in 0..n {
        let x = a.get(i).copied().unwrap_or(0);
        let y = b.get(i).copied().unwrap_or(0);
        out[i] = (x + p - y) % p;
    }
    fp_trim(&mut out);
    out
}

/// Remainder of `a` modulo `b` (`b` nonzero).
pub(crate) fn fp_rem(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut r = a.to_vec();
    fp_trim(&mut r);
    let db = b.len() - 1;
    let lead_inv = inv_mod(b[db], p).expect("nonzero leading coefficient");
    while r.len() > db {
        let k = r.len() - 1;
        let c = r[k] * lead_inv % p;
        for i in 0..=db {
            let idx = k - db + i;
            r[idx] = (r[idx] + p - c * b[i] % p) % p;
        }
        fp_trim(&mut r);
    }
    r
}

pub(crate) fn fp_gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    fp_trim(&mut x);
    fp_trim(&mut y);
    while !y.is_empty() {
        let r = fp_rem(&x, &y, p);
        x = y;
        y = r;
    }
    x
}

fn fp_powmod(base: &[u64], mut e: u64, m: &[u64], p: u64) -> Vec<u64> {
    let mut r = vec![1u64];
    let mut b = fp_rem(base, m, p);
    while e > 0 {
        if e & 1 == 1 {
            r = fp_rem(&fp_mul(&r, &b, p), m, p);
        }
        b = fp_rem(&fp_mul(&b, &b, p), m, p);
        e >>= 1;
    }
    r
}

/// Rabin-style test: a monic `m` of degree `f` is irreducible iff
/// `gcd(X^{p^i} - X, m) = 1` for every `i <= f/2`.
pub fn fp_is_irreducible(m: &[u64], p: u64) -> bool {
    let f = m.len() - 1;
    if f == 0 {
        return false;
    }
    if f == 1 {
        return true;
    }
    let x = vec![0, 1];
    let mut xp = x.clone();
    for _ in 1..=f / 2 {
        xp = fp_powmod(&xp, p, m, p);
        let d = fp_sub(&xp, &x, p);
        let g = fp_gcd(m, &d, p);
        if g.len() != 1 {
            return false;
        }
    }
    true
}

/// The monic irreducible polynomial of degree `f` over `F_p` used as the
/// default modulus: the first one in the order of its coefficient vector
/// read as a base-`p` number (constant term least significant).
pub fn default_modulus(p: u64, f: u32) -> Vec<u64> {
    assert!(f >= 1);
    if f == 1 {
        return vec![0, 1];
    }
    let f = f as usize;
    let total = p.checked_pow(f as u32).expect("modulus search space");
    for idx in 0..total {
        let mut c = Vec::with_capacity(f + 1);
        let mut k = idx;
        for _ in 0..f {
            c.push(k % p);
            k /= p;
        }
        c.push(1);
        if c[0] == 0 {
            continue;
        }
        if fp_is_irreducible(&c, p) {
            return c;
        }
    }
    unreachable!("an irreducible polynomial of every degree exists")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn valuation_and_factorial() {
        assert_eq!(val_u64(7 * 7 * 7 * 5 * 2 * 2 * 3, 7), Some(3));
        assert_eq!(val_u64(0, 7), None);
        assert_eq!(val_factorial(38, 3), 17);
        assert_eq!(val_factorial(34, 2), 32);
    }

    #[test]
    fn default_moduli_are_irreducible() {
        for p in [2u64, 3, 5, 7, 11, 13] {
            for f in 1..=4 {
                let m = default_modulus(p, f);
                assert_eq!(m.len(), f as usize + 1);
                assert!(fp_is_irreducible(&m, p));
            }
        }
        assert_eq!(default_modulus(2, 2), vec![1, 1, 1]);
        assert!(!fp_is_irreducible(&[1, 0, 1], 2));
    }

    #[test]
    fn inverse_mod() {
        assert_eq!(inv_mod(3, 125).map(|x| x * 3 % 125), Some(1));
        assert_eq!(inv_mod(5, 125), None);
    }
}
