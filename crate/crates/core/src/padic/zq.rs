//! The ring `Z/p^N [π][T] / (π^e + p, m(T))`.
//!
//! With `e = 1` this is the unramified ring `Z_q` (and `Z_p` when `f = 1`);
//! with `e = p - 1`, `f = 1` it is `Z_p[π*]`. Other ramification indices are
//! only used internally when splitting Newton polygon segments.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use super::arith::{
    add_mod, checked_pow, default_modulus, fp_is_irreducible, is_prime, mul_mod, neg_mod,
    reduce_i128, reduce_i64, sub_mod, val_u64,
};
use crate::error::{Error, Result};

struct Inner {
    p: u64,
    n: u32,
    e: u32,
    f: u32,
    pn: u64,
    pows: Vec<u64>,
    modulus: Vec<u64>,
    // frob[k * f + j] = coefficient of T^k in σ(T^j)
    frob: Vec<u64>,
}

#[derive(Clone)]
pub struct Zq(Arc<Inner>);

impl fmt::Debug for Zq {
    fn fmt(&self, fm: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            fm,
            "Zq(p={}, N={}, e={}, f={}, m={:?})",
            self.0.p, self.0.n, self.0.e, self.0.f, self.0.modulus
        )
    }
}

impl PartialEq for Zq {
    fn eq(&self, o: &Self) -> bool {
        Arc::ptr_eq(&self.0, &o.0)
            || (self.0.p == o.0.p
                && self.0.n == o.0.n
                && self.0.e == o.0.e
                && self.0.modulus == o.0.modulus)
    }
}

impl Eq for Zq {}

impl Zq {
    pub fn new(p: u64, n: u32, f: u32, e: u32) -> Result<Zq> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if f == 0 {
            return Err(Error::InvalidInput("residue degree must be positive".into()));
        }
        Zq::with_modulus(p, n, e, default_modulus(p, f))
    }

    /// Like [`Zq::new`], but shares one context per parameter set.
    pub fn cached(p: u64, n: u32, f: u32, e: u32) -> Result<Zq> {
        static CACHE: OnceLock<Mutex<HashMap<(u64, u32, u32, u32), Zq>>> = OnceLock::new();
        let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
        if let Some(r) = cache.lock().unwrap().get(&(p, n, f, e)) {
            return Ok(r.clone());
        }
        let r = Zq::new(p, n, f, e)?;
        cache.lock().unwrap().insert((p, n, f, e), r.clone());
        Ok(r)
    }

    /// `Z/p^N`.
    pub fn zp(p: u64, n: u32) -> Result<Zq> {
        Zq::new(p, n, 1, 1)
    }

    /// Unramified extension of degree `f` with the default modulus.
    pub fn unramified(p: u64, n: u32, f: u32) -> Result<Zq> {
        Zq::new(p, n, f, 1)
    }

    /// `Z_p[π*]` with `π*^{p-1} = -p`.
    pub fn eisenstein(p: u64, n: u32) -> Result<Zq> {
        Zq::new(p, n, 1, (p - 1) as u32)
    }

    /// `modulus` is a monic polynomial over `F_p`, lowest degree first.
    pub fn with_modulus(p: u64, n: u32, e: u32, modulus: Vec<u64>) -> Result<Zq> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if n == 0 || e == 0 {
            return Err(Error::InvalidInput("precision and ramification must be positive".into()));
        }
        let pn = checked_pow(p, n).ok_or(Error::ModulusTooLarge { p, n })?;
        let modulus: Vec<u64> = modulus.into_iter().map(|c| c % p).collect();
        if modulus.len() < 2 || *modulus.last().unwrap() != 1 {
            return Err(Error::InvalidInput("modulus must be monic of positive degree".into()));
        }
        if !fp_is_irreducible(&modulus, p) {
            return Err(Error::NotIrreducible(p));
        }
        let f = (modulus.len() - 1) as u32;
        let mut pows = Vec::with_capacity(n as usize + 1);
        let mut acc = 1u64;
        for _ in 0..=n {
            pows.push(acc);
            acc = acc.saturating_mul(p);
        }
        let fu = f as usize;
        let mut ident = vec![0u64; fu * fu];
        for j in 0..fu {
            ident[j * fu + j] = 1;
        }
        let mut inner = Inner { p, n, e, f, pn, pows, modulus, frob: ident };
        if f > 1 {
            inner.frob = frobenius_matrix(p, n, &inner.modulus)?;
        }
        Ok(Zq(Arc::new(inner)))
    }

    /// Same residue field and ramification, different precision.
    pub fn with_precision(&self, n: u32) -> Result<Zq> {
        Zq::with_modulus(self.p(), n, self.e(), self.0.modulus.clone())
    }

    /// Same residue field and precision, ramification index `e`.
    pub fn with_ramification(&self, e: u32) -> Result<Zq> {
        Zq::with_modulus(self.p(), self.n(), e, self.0.modulus.clone())
    }

    pub fn p(&self) -> u64 {
        self.0.p
    }

    pub fn n(&self) -> u32 {
        self.0.n
    }

    pub fn e(&self) -> u32 {
        self.0.e
    }

    pub fn f(&self) -> u32 {
        self.0.f
    }

    /// `p^N`.
    pub fn pn(&self) -> u64 {
        self.0.pn
    }

    /// Full precision in `π`-units.
    pub fn cap(&self) -> u32 {
        self.0.e * self.0.n
    }

    pub fn modulus(&self) -> &[u64] {
        &self.0.modulus
    }

    /// `p^k` for `k <= N`.
    pub fn p_pow(&self, k: u32) -> u64 {
        self.0.pows[k.min(self.0.n) as usize]
    }

    /// Size of the residue field.
    pub fn residue_size(&self) -> u64 {
        self.0.p.pow(self.0.f)
    }

    fn width(&self) -> usize {
        (self.0.e * self.0.f) as usize
    }

    pub fn zero(&self) -> ZqElement {
        ZqElement { ring: self.clone(), c: vec![0; self.width()], prec: self.cap() }
    }

    pub fn one(&self) -> ZqElement {
        self.from_i64(1)
    }

    pub fn from_i64(&self, x: i64) -> ZqElement {
        let mut z = self.zero();
        z.c[0] = reduce_i64(x, self.pn());
        z
    }

    pub fn from_i128(&self, x: i128) -> ZqElement {
        let mut z = self.zero();
        z.c[0] = reduce_i128(x, self.pn());
        z
    }

    pub fn from_u64(&self, x: u64) -> ZqElement {
        let mut z = self.zero();
        z.c[0] = x % self.pn();
        z
    }

    /// Coefficient vector indexed by `i * f + j` for `π^i T^j`.
    pub fn from_coeffs(&self, c: &[u64]) -> ZqElement {
        let mut z = self.zero();
        for (k, &x) in c.iter().enumerate().take(self.width()) {
            z.c[k] = x % self.pn();
        }
        z
    }

    /// An element with an explicit precision tag.
    pub fn from_parts(&self, c: &[u64], prec: u32) -> ZqElement {
        let mut z = self.from_coeffs(c);
        z.prec = prec.min(self.cap());
        z.normalize();
        z
    }

    /// Naive lift of a residue-field element given in the basis `1, T, .., T^{f-1}`.
    pub fn from_residue(&self, r: &[u64]) -> ZqElement {
        let mut z = self.zero();
        for (j, &x) in r.iter().enumerate().take(self.0.f as usize) {
            z.c[j] = x % self.0.p;
        }
        z
    }

    pub fn pi(&self) -> ZqElement {
        if self.0.e == 1 {
            self.from_i64(-(self.0.p as i64))
        } else {
            let mut z = self.zero();
            z.c[self.0.f as usize] = 1;
            z
        }
    }

    /// The generator `T` of the unramified part.
    pub fn gen(&self) -> ZqElement {
        if self.0.f == 1 {
            return self.from_i64(-(self.0.modulus[0] as i64));
        }
        let mut z = self.zero();
        z.c[1] = 1;
        z
    }

    /// Teichmüller representative of a residue-field element.
    pub fn teichmuller(&self, r: &[u64]) -> ZqElement {
        let q = self.residue_size();
        let mut x = self.from_residue(r);
        for _ in 0..=self.cap() + 1 {
            let y = x.pow(q);
            if y.c == x.c {
                break;
            }
            x = y;
        }
        x
    }

    /// Maps `x` from a ring with the same `p` whose residue field is `F_p`
    /// or equal to ours, and whose ramification divides ours.
    pub fn embed(&self, x: &ZqElement) -> Result<ZqElement> {
        let src = &x.ring;
        if src.p() != self.p() || !self.e().is_multiple_of(src.e()) {
            return Err(Error::Mismatch("embedding needs matching p and e | e'".into()));
        }
        if src.f() != 1 && src.modulus() != self.modulus() {
            return Err(Error::Mismatch("embedding needs the same residue modulus".into()));
        }
        let s = self.e() / src.e();
        let (sf, df) = (src.f() as usize, self.f() as usize);
        let mut z = self.zero();
        for i in 0..src.e() as usize {
            for j in 0..sf {
                z.c[i * s as usize * df + j] = x.c[i * sf + j] % self.pn();
            }
        }
        z.prec = (x.prec * s).min(self.cap());
        z.normalize();
        Ok(z)
    }

    /// Inverse of [`Zq::embed`]; `None` when `x` has components outside the image.
    pub fn project(&self, x: &ZqElement) -> Option<ZqElement> {
        let src = &x.ring;
        if src.p() != self.p() || !src.e().is_multiple_of(self.e()) {
            return None;
        }
        if self.f() != 1 && src.modulus() != self.modulus() {
            return None;
        }
        let s = (src.e() / self.e()) as usize;
        let (sf, df) = (src.f() as usize, self.f() as usize);
        let mut z = self.zero();
        for i in 0..src.e() as usize {
            for j in 0..sf {
                let v = x.c[i * sf + j];
                if i % s == 0 && j < df {
                    z.c[(i / s) * df + j] = v % self.pn();
                } else if v != 0 {
                    return None;
                }
            }
        }
        z.prec = (x.prec / s as u32).min(self.cap());
        z.normalize();
        Some(z)
    }
}

/// `σ(T)` by Newton iteration on `m` from `T^p`, returned as the matrix of `σ`
/// on the basis `1, T, .., T^{f-1}`.
fn frobenius_matrix(p: u64, n: u32, modulus: &[u64]) -> Result<Vec<u64>> {
    let f = modulus.len() - 1;
    let ring = Zq::with_modulus_plain(p, n, modulus.to_vec())?;
    let t = ring.gen();
    let eval = |x: &ZqElement, poly: &[u64]| {
        let mut acc = ring.zero();
        for &c in poly.iter().rev() {
            acc = &(&acc * x) + &ring.from_u64(c);
        }
        acc
    };
    let deriv: Vec<u64> = modulus.iter().enumerate().skip(1).map(|(i, &c)| c * i as u64).collect();
    let mut x = t.pow(p);
    for _ in 0..64 {
        let d = eval(&x, &deriv).inv()?;
        let y = &x - &(&eval(&x, modulus) * &d);
        if y.c == x.c {
            break;
        }
        x = y;
    }
    let mut mat = vec![0u64; f * f];
    let mut pw = ring.one();
    for j in 0..f {
        for k in 0..f {
            mat[k * f + j] = pw.c[k];
        }
        pw = &pw * &x;
    }
    Ok(mat)
}

impl Zq {
    // Unramified ring whose σ is left as the identity; only used while
    // computing σ itself.
    fn with_modulus_plain(p: u64, n: u32, modulus: Vec<u64>) -> Result<Zq> {
        let pn = checked_pow(p, n).ok_or(Error::ModulusTooLarge { p, n })?;
        let f = (modulus.len() - 1) as u32;
        let pows = (0..=n).map(|k| p.pow(k)).collect();
        Ok(Zq(Arc::new(Inner { p, n, e: 1, f, pn, pows, modulus, frob: Vec::new() })))
    }
}

/// An element with a precision tag in `π`-adic units.
#[derive(Clone)]
pub struct ZqElement {
    ring: Zq,
    c: Vec<u64>,
    prec: u32,
}

impl fmt::Debug for ZqElement {
    fn fmt(&self, fm: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(fm, "{}", self)
    }
}

impl fmt::Display for ZqElement {
    fn fmt(&self, fm: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.c.len() == 1 {
            write!(fm, "{} (+O(p^{}))", self.c[0], self.prec)
        } else {
            write!(fm, "{:?} (+O(pi^{}))", self.c, self.prec)
        }
    }
}

impl PartialEq for ZqElement {
    fn eq(&self, o: &Self) -> bool {
        self.prec == o.prec && self.c == o.c && self.ring == o.ring
    }
}

impl Eq for ZqElement {}

impl ZqElement {
    pub fn ring(&self) -> &Zq {
        &self.ring
    }

    pub fn prec(&self) -> u32 {
        self.prec
    }

    /// Raw coefficients, `coeffs()[i * f + j]` for `π^i T^j`.
    pub fn coeffs(&self) -> &[u64] {
        &self.c
    }

    pub fn coeff(&self, i: usize, j: usize) -> u64 {
        self.c[i * self.ring.f() as usize + j]
    }

    /// Lowers the precision tag to at most `prec`.
    pub fn truncate(mut self, prec: u32) -> ZqElement {
        if prec < self.prec {
            self.prec = prec;
            self.normalize();
        }
        self
    }

    fn normalize(&mut self) {
        let (e, f) = (self.ring.e(), self.ring.f() as usize);
        if self.prec >= self.ring.cap() {
            return;
        }
        for i in 0..e {
            let k = if self.prec > i { (self.prec - i).div_ceil(e) } else { 0 };
            let m = self.ring.p_pow(k);
            for x in &mut self.c[i as usize * f..(i as usize + 1) * f] {
                *x %= m;
            }
        }
    }

    /// Valuation in `π`-units, capped at the precision.
    pub fn valuation(&self) -> u32 {
        let (e, f, p) = (self.ring.e(), self.ring.f() as usize, self.ring.p());
        let mut v = self.prec;
        for (k, &x) in self.c.iter().enumerate() {
            if let Some(vp) = val_u64(x, p) {
                v = v.min(e * vp + (k / f) as u32);
            }
        }
        v
    }

    /// Zero at the known precision.
    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|&x| x == 0)
    }

    pub fn is_unit(&self) -> bool {
        self.prec > 0 && self.valuation() == 0
    }

    /// Number of `π`-digits on which `self` and `o` are known to agree.
    pub fn agreement(&self, o: &ZqElement) -> u32 {
        (self - o).valuation()
    }

    /// Equal modulo `π^k` (both operands must be known to that precision).
    pub fn eq_mod(&self, o: &ZqElement, k: u32) -> bool {
        self.prec.min(o.prec) >= k && self.agreement(o) >= k
    }

    /// Residue-field image in the basis `1, .., T^{f-1}`.
    pub fn residue(&self) -> Vec<u64> {
        let p = self.ring.p();
        let f = self.ring.f() as usize;
        if self.prec == 0 {
            return vec![0; f];
        }
        self.c[..f].iter().map(|&x| x % p).collect()
    }

    /// The `Z/p^N` value when the element lies in `Z_p`.
    pub fn as_u64(&self) -> Option<u64> {
        if self.c[1..].iter().all(|&x| x == 0) {
            Some(self.c[0])
        } else {
            None
        }
    }

    /// Symmetric representative of an element of `Z_p`, modulo the known precision.
    pub fn as_i128_centered(&self) -> Option<i128> {
        let v = self.as_u64()?;
        let e = self.ring.e();
        let m = self.ring.p_pow(self.prec.div_ceil(e)) as i128;
        let v = v as i128 % m;
        Some(if v > m / 2 { v - m } else { v })
    }

    pub fn pow(&self, mut k: u64) -> ZqElement {
        let mut r = self.ring.one();
        let mut b = self.clone();
        while k > 0 {
            if k & 1 == 1 {
                r = &r * &b;
            }
            k >>= 1;
            if k > 0 {
                b = &b * &b;
            }
        }
        r
    }

    pub fn mul_int(&self, k: i64) -> ZqElement {
        self * &self.ring.from_i64(k)
    }

    pub fn inv(&self) -> Result<ZqElement> {
        if !self.is_unit() {
            return Err(Error::NotUnit);
        }
        let two = self.ring.from_i64(2);
        let mut y = self.pow(self.ring.residue_size() - 2);
        for _ in 0..64 {
            let z = &y * &(&two - &(self * &y));
            if z.c == y.c {
                break;
            }
            y = z;
        }
        y.prec = self.prec;
        y.normalize();
        Ok(y)
    }

    /// Multiplication by `p^k`.
    pub fn mul_p_pow(&self, k: u32) -> ZqElement {
        let m = self.ring.p_pow(k);
        let pn = self.ring.pn();
        let mut z = self.clone();
        if k >= self.ring.n() {
            z.c.iter_mut().for_each(|x| *x = 0);
        } else {
            z.c.iter_mut().for_each(|x| *x = mul_mod(*x, m, pn));
        }
        z.prec = (self.prec + self.ring.e() * k).min(self.ring.cap());
        z.normalize();
        z
    }

    /// Exact division by `p^k`.
    pub fn div_p_pow(&self, k: u32) -> Result<ZqElement> {
        let e = self.ring.e();
        if self.prec < e * k {
            return Err(Error::PrecisionExhausted(format!("division by p^{k}")));
        }
        let m = self.ring.p_pow(k);
        if self.c.iter().any(|&x| x % m != 0) {
            return Err(Error::NotDivisible);
        }
        let mut z = self.clone();
        z.c.iter_mut().for_each(|x| *x /= m);
        z.prec -= e * k;
        z.normalize();
        Ok(z)
    }

    /// Multiplication by `π^k`.
    pub fn mul_pi_pow(&self, k: u32) -> ZqElement {
        let (e, f) = (self.ring.e() as usize, self.ring.f() as usize);
        let pn = self.ring.pn();
        let mut z = self.clone();
        for _ in 0..k {
            let mut c = vec![0u64; z.c.len()];
            // π * π^{e-1} = -p
            for j in 0..f {
                c[j] = neg_mod(mul_mod(z.c[(e - 1) * f + j], self.ring.p(), pn), pn);
            }
            for i in 1..e {
                c[i * f..(i + 1) * f].copy_from_slice(&z.c[(i - 1) * f..i * f]);
            }
            z.c = c;
        }
        z.prec = (self.prec + k).min(self.ring.cap());
        z.normalize();
        z
    }

    /// Exact division by `π^k`.
    pub fn div_pi_pow(&self, k: u32) -> Result<ZqElement> {
        if self.prec < k {
            return Err(Error::PrecisionExhausted(format!("division by pi^{k}")));
        }
        if self.valuation() < k {
            return Err(Error::NotDivisible);
        }
        let (e, f) = (self.ring.e() as usize, self.ring.f() as usize);
        let (p, pn) = (self.ring.p(), self.ring.pn());
        let mut z = self.clone();
        for _ in 0..k {
            let mut c = vec![0u64; z.c.len()];
            for i in 1..e {
                c[(i - 1) * f..i * f].copy_from_slice(&z.c[i * f..(i + 1) * f]);
            }
            // c_0 / π = -(c_0 / p) π^{e-1}
            for j in 0..f {
                c[(e - 1) * f + j] = neg_mod(z.c[j] / p, pn);
            }
            z.c = c;
            z.prec -= 1;
        }
        z.normalize();
        Ok(z)
    }

    /// Exact quotient `self / d`.
    pub fn div_exact(&self, d: &ZqElement) -> Result<ZqElement> {
        if d.is_zero() {
            return Err(Error::PrecisionExhausted("division by an element zero at precision".into()));
        }
        let v = d.valuation();
        let u = d.div_pi_pow(v)?;
        let x = self.div_pi_pow(v)?;
        Ok(&x * &u.inv()?)
    }

    pub fn frobenius(&self) -> ZqElement {
        let f = self.ring.f() as usize;
        if f == 1 {
            return self.clone();
        }
        let pn = self.ring.pn();
        let mat = &self.ring.0.frob;
        let mut z = self.clone();
        for (slice_in, slice_out) in self.c.chunks(f).zip(z.c.chunks_mut(f)) {
            for (k, out) in slice_out.iter_mut().enumerate() {
                let mut acc = 0u64;
                for (j, &x) in slice_in.iter().enumerate() {
                    if x != 0 {
                        acc = add_mod(acc, mul_mod(mat[k * f + j], x, pn), pn);
                    }
                }
                *out = acc;
            }
        }
        z.normalize();
        z
    }

    /// `σ^k`; negative `k` is reduced modulo `f`.
    pub fn frobenius_pow(&self, k: i64) -> ZqElement {
        let f = self.ring.f() as i64;
        let k = k.rem_euclid(f);
        let mut z = self.clone();
        for _ in 0..k {
            z = z.frobenius();
        }
        z
    }

    fn binary(&self, o: &ZqElement, op: impl Fn(u64, u64, u64) -> u64) -> ZqElement {
        assert!(self.ring == o.ring, "operands from different rings");
        let pn = self.ring.pn();
        let c = self.c.iter().zip(&o.c).map(|(&a, &b)| op(a, b, pn)).collect();
        let mut z = ZqElement { ring: self.ring.clone(), c, prec: self.prec.min(o.prec) };
        z.normalize();
        z
    }

    fn product(&self, o: &ZqElement) -> ZqElement {
        assert!(self.ring == o.ring, "operands from different rings");
        let ring = &self.ring;
        let (e, f, p, pn) = (ring.e() as usize, ring.f() as usize, ring.p(), ring.pn());
        let prec = (self.prec + o.valuation()).min(o.prec + self.valuation()).min(ring.cap());
        if e == 1 && f == 1 {
            let mut z = ZqElement { ring: ring.clone(), c: vec![mul_mod(self.c[0], o.c[0], pn)], prec };
            z.normalize();
            return z;
        }
        let w = 2 * f - 1;
        let mut acc = vec![0u64; (2 * e - 1) * w];
        for i1 in 0..e {
            for j1 in 0..f {
                let a = self.c[i1 * f + j1];
                if a == 0 {
                    continue;
                }
                for i2 in 0..e {
                    for j2 in 0..f {
                        let b = o.c[i2 * f + j2];
                        if b == 0 {
                            continue;
                        }
                        let idx = (i1 + i2) * w + j1 + j2;
                        acc[idx] = add_mod(acc[idx], mul_mod(a, b, pn), pn);
                    }
                }
            }
        }
        let m = &ring.0.modulus;
        for i in 0..2 * e - 1 {
            for j in (f..w).rev() {
                let c = acc[i * w + j];
                if c == 0 {
                    continue;
                }
                for (k, &mk) in m.iter().enumerate().take(f) {
                    let idx = i * w + j - f + k;
                    acc[idx] = sub_mod(acc[idx], mul_mod(c, mk, pn), pn);
                }
            }
        }
        for i in (e..2 * e - 1).rev() {
            for j in 0..f {
                let c = acc[i * w + j];
                if c == 0 {
                    continue;
                }
                let idx = (i - e) * w + j;
                acc[idx] = sub_mod(acc[idx], mul_mod(c, p, pn), pn);
            }
        }
        let mut c = vec![0u64; e * f];
        for i in 0..e {
            c[i * f..(i + 1) * f].copy_from_slice(&acc[i * w..i * w + f]);
        }
        let mut z = ZqElement { ring: ring.clone(), c, prec };
        z.normalize();
        z
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $body:expr) => {
        impl $tr<&ZqElement> for &ZqElement {
            type Output = ZqElement;
            fn $m(self, o: &ZqElement) -> ZqElement {
                $body(self, o)
            }
        }
        impl $tr<ZqElement> for ZqElement {
            type Output = ZqElement;
            fn $m(self, o: ZqElement) -> ZqElement {
                $body(&self, &o)
            }
        }
        impl $tr<&ZqElement> for ZqElement {
            type Output = ZqElement;
            fn $m(self, o: &ZqElement) -> ZqElement {
                $body(&self, o)
            }
        }
    };
}

binop!(Add, add, |a: &ZqElement, b: &ZqElement| a.binary(b, add_mod));
binop!(Sub, sub, |a: &ZqElement, b: &ZqElement| a.binary(b, sub_mod));
binop!(Mul, mul, |a: &ZqElement, b: &ZqElement| a.product(b));

impl Neg for &ZqElement {
    type Output = ZqElement;
    fn neg(self) -> ZqElement {
        let pn = self.ring.pn();
        let mut z = self.clone();
        z.c.iter_mut().for_each(|x| *x = neg_mod(*x, pn));
        z
    }
}

impl Neg for ZqElement {
    type Output = ZqElement;
    fn neg(self) -> ZqElement {
        -&self
    }
}
