//! `F_{p^k}` by log/antilog tables. Elements are `u32` indices
//! `Σ c_j p^j` of the coefficient vector in the basis `1, T, .., T^{k-1}`
//! modulo the same default modulus used by [`crate::padic::Zq`].

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use crate::error::{Error, Result};
use crate::padic::arith::{default_modulus, is_prime};

/// Largest field handled by table arithmetic.
pub const MAX_FIELD: u64 = 1 << 24;

pub type FqElem = u32;

#[derive(Debug)]
pub struct Fq {
    p: u64,
    k: u32,
    q: u64,
    modulus: Vec<u64>,
    exp: Vec<u32>,
    log: Vec<u32>,
}

const NO_LOG: u32 = u32::MAX;

static CACHE: OnceLock<Mutex<HashMap<(u64, u32), Arc<Fq>>>> = OnceLock::new();

impl Fq {
    /// The cached field `F_{p^k}`.
    pub fn get(p: u64, k: u32) -> Result<Arc<Fq>> {
        let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
        if let Some(f) = cache.lock().unwrap().get(&(p, k)) {
            return Ok(f.clone());
        }
        let f = Arc::new(Fq::build(p, k)?);
        cache.lock().unwrap().insert((p, k), f.clone());
        Ok(f)
    }

    fn build(p: u64, k: u32) -> Result<Fq> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if k == 0 {
            return Err(Error::InvalidInput("field degree must be positive".into()));
        }
        let q = match p.checked_pow(k) {
            Some(q) if q <= MAX_FIELD => q,
            _ => return Err(Error::BudgetExceeded { needed: (p as u128).pow(k.min(40)), cap: MAX_FIELD as u128 }),
        };
        let modulus = default_modulus(p, k);
        let mut f = Fq { p, k, q, modulus, exp: Vec::new(), log: vec![NO_LOG; q as usize] };
        let g = f.find_generator();
        let mut x = 1u32;
        let n = (q - 1) as usize;
        f.exp = Vec::with_capacity(n);
        for i in 0..n {
            f.exp.push(x);
            f.log[x as usize] = i as u32;
            x = f.slow_mul(x, g);
        }
        Ok(f)
    }

    fn find_generator(&self) -> u32 {
        let n = self.q - 1;
        let mut primes = Vec::new();
        let mut m = n;
        let mut d = 2;
        while d * d <= m {
            if m.is_multiple_of(d) {
                primes.push(d);
                while m.is_multiple_of(d) {
                    m /= d;
                }
            }
            d += 1;
        }
        if m > 1 {
            primes.push(m);
        }
        for g in 1..self.q as u32 {
            if primes.iter().all(|&l| self.slow_pow(g, n / l) != 1) {
                return g;
            }
        }
        1
    }

    fn slow_mul(&self, a: u32, b: u32) -> u32 {
        let (p, k) = (self.p, self.k as usize);
        let da = self.digits(a);
        let db = self.digits(b);
        let mut prod = vec![0u64; 2 * k - 1];
        for i in 0..k {
            for j in 0..k {
                prod[i + j] = (prod[i + j] + da[i] * db[j]) % p;
            }
        }
        for i in (k..2 * k - 1).rev() {
            let c = prod[i];
            if c != 0 {
                for j in 0..k {
                    prod[i - k + j] = (prod[i - k + j] + (p - c) * self.modulus[j]) % p;
                }
            }
        }
        self.from_digits(&prod[..k])
    }

    fn slow_pow(&self, mut a: u32, mut e: u64) -> u32 {
        let mut r = 1u32;
        while e > 0 {
            if e & 1 == 1 {
                r = self.slow_mul(r, a);
            }
            a = self.slow_mul(a, a);
            e >>= 1;
        }
        r
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.k
    }

    pub fn size(&self) -> u64 {
        self.q
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    pub fn elements(&self) -> impl Iterator<Item = FqElem> {
        0..self.q as u32
    }

    pub fn digits(&self, a: FqElem) -> Vec<u64> {
        let mut a = a as u64;
        (0..self.k)
            .map(|_| {
                let d = a % self.p;
                a /= self.p;
                d
            })
            .collect()
    }

    pub fn from_digits(&self, d: &[u64]) -> FqElem {
        d.iter().rev().fold(0u64, |acc, &x| acc * self.p + x % self.p) as u32
    }

    /// Image of an integer (prime field element).
    pub fn from_int(&self, c: i128) -> FqElem {
        c.rem_euclid(self.p as i128) as u32
    }

    pub fn add(&self, a: FqElem, b: FqElem) -> FqElem {
        if self.k == 1 {
            return ((a as u64 + b as u64) % self.p) as u32;
        }
        let (mut a, mut b) = (a as u64, b as u64);
        let (mut r, mut pw) = (0u64, 1u64);
        while a > 0 || b > 0 {
            r += ((a % self.p + b % self.p) % self.p) * pw;
            a /= self.p;
            b /= self.p;
            pw *= self.p;
        }
        r as u32
    }

    pub fn neg(&self, a: FqElem) -> FqElem {
        let (mut a, mut r, mut pw) = (a as u64, 0u64, 1u64);
        while a > 0 {
            r += ((self.p - a % self.p) % self.p) * pw;
            a /= self.p;
            pw *= self.p;
        }
        r as u32
    }

    pub fn sub(&self, a: FqElem, b: FqElem) -> FqElem {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: FqElem, b: FqElem) -> FqElem {
        if a == 0 || b == 0 {
            return 0;
        }
        let n = self.q - 1;
        let s = (self.log[a as usize] as u64 + self.log[b as usize] as u64) % n;
        self.exp[s as usize]
    }

    pub fn inv(&self, a: FqElem) -> Option<FqElem> {
        if a == 0 {
            return None;
        }
        let n = self.q - 1;
        Some(self.exp[((n - self.log[a as usize] as u64) % n) as usize])
    }

    pub fn pow(&self, a: FqElem, e: u64) -> FqElem {
        if e == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        let n = self.q - 1;
        let s = (self.log[a as usize] as u128 * e as u128 % n as u128) as usize;
        self.exp[s]
    }

    /// `a^p`.
    pub fn frobenius(&self, a: FqElem) -> FqElem {
        self.pow(a, self.p)
    }

    /// Absolute trace to `F_p`.
    pub fn trace(&self, a: FqElem) -> u64 {
        let mut s = 0;
        let mut x = a;
        for _ in 0..self.k {
            s = self.add(s, x);
            x = self.frobenius(x);
        }
        s as u64
    }

    /// The embedding of `small` into `self`, as the table of images of all
    /// elements of `small`. The generator goes to the least root of its modulus.
    pub fn embedding_from(&self, small: &Fq) -> Result<Vec<FqElem>> {
        if small.p != self.p || !self.k.is_multiple_of(small.k) {
            return Err(Error::Mismatch(format!(
                "F_{}^{} does not embed in F_{}^{}",
                small.p, small.k, self.p, self.k
            )));
        }
        let m = &small.modulus;
        let root = self
            .elements()
            .find(|&x| {
                let mut acc = 0;
                for &c in m.iter().rev() {
                    acc = self.add(self.mul(acc, x), c as u32);
                }
                acc == 0
            })
            .ok_or_else(|| Error::Mismatch("no root of the subfield modulus".into()))?;
        let table = small
            .elements()
            .map(|a| {
                let mut acc = 0;
                for &c in small.digits(a).iter().rev() {
                    acc = self.add(self.mul(acc, root), c as u32);
                }
                acc
            })
            .collect();
        Ok(table)
    }
}
