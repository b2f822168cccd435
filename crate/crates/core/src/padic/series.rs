//! Truncated power series `Σ_{k<=D} a_k t^k` over a [`Zq`] ring.

use std::ops::{Add, Mul, Neg, Sub};

use super::{Zq, ZqElement};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct TruncSeries {
    ring: Zq,
    c: Vec<ZqElement>,
}

impl TruncSeries {
    /// The zero series modulo `t^{deg+1}`.
    pub fn zero(ring: &Zq, deg: usize) -> TruncSeries {
        TruncSeries { ring: ring.clone(), c: vec![ring.zero(); deg + 1] }
    }

    pub fn one(ring: &Zq, deg: usize) -> TruncSeries {
        let mut s = TruncSeries::zero(ring, deg);
        s.c[0] = ring.one();
        s
    }

    /// Pads with zeros or truncates to degree `deg`.
    pub fn from_coeffs(ring: &Zq, coeffs: Vec<ZqElement>, deg: usize) -> TruncSeries {
        let mut c = coeffs;
        c.resize(deg + 1, ring.zero());
        TruncSeries { ring: ring.clone(), c }
    }

    pub fn from_ints(ring: &Zq, coeffs: &[i64], deg: usize) -> TruncSeries {
        let c = coeffs.iter().map(|&x| ring.from_i64(x)).collect();
        TruncSeries::from_coeffs(ring, c, deg)
    }

    /// The polynomial `1 - c t`.
    pub fn one_minus(c: &ZqElement, deg: usize) -> TruncSeries {
        let mut s = TruncSeries::one(c.ring(), deg);
        if deg >= 1 {
            s.c[1] = -c;
        }
        s
    }

    pub fn ring(&self) -> &Zq {
        &self.ring
    }

    pub fn degree(&self) -> usize {
        self.c.len() - 1
    }

    pub fn coeffs(&self) -> &[ZqElement] {
        &self.c
    }

    pub fn coeff(&self, k: usize) -> &ZqElement {
        &self.c[k]
    }

    pub fn set(&mut self, k: usize, x: ZqElement) {
        self.c[k] = x;
    }

    pub fn truncate(&self, deg: usize) -> TruncSeries {
        TruncSeries::from_coeffs(&self.ring, self.c.clone(), deg)
    }

    /// Minimum precision over all coefficients.
    pub fn min_prec(&self) -> u32 {
        self.c.iter().map(|x| x.prec()).min().unwrap_or(self.ring.cap())
    }

    pub fn map(&self, f: impl Fn(&ZqElement) -> ZqElement) -> TruncSeries {
        TruncSeries { ring: self.ring.clone(), c: self.c.iter().map(f).collect() }
    }

    /// Coefficientwise image in another ring.
    pub fn map_ring(&self, ring: &Zq, f: impl Fn(&ZqElement) -> Result<ZqElement>) -> Result<TruncSeries> {
        let c = self.c.iter().map(f).collect::<Result<Vec<_>>>()?;
        Ok(TruncSeries { ring: ring.clone(), c })
    }

    pub fn scale(&self, k: &ZqElement) -> TruncSeries {
        self.map(|x| x * k)
    }

    /// `f(u t)`.
    pub fn subst_scale(&self, u: &ZqElement) -> TruncSeries {
        let mut pw = self.ring.one();
        let mut out = self.clone();
        for x in out.c.iter_mut() {
            *x = &*x * &pw;
            pw = &pw * u;
        }
        out
    }

    /// `f(t^r)`.
    pub fn subst_power(&self, r: usize) -> TruncSeries {
        let d = self.degree();
        let mut out = TruncSeries::zero(&self.ring, d);
        for (k, x) in self.c.iter().enumerate() {
            if k * r > d {
                break;
            }
            out.c[k * r] = x.clone();
        }
        out
    }

    /// Formal derivative, keeping the same truncation degree.
    pub fn derivative(&self) -> TruncSeries {
        let d = self.degree();
        let mut out = TruncSeries::zero(&self.ring, d);
        for k in 1..=d {
            out.c[k - 1] = self.c[k].mul_int(k as i64);
        }
        out.c[d] = self.ring.zero().truncate(0);
        out
    }

    pub fn inv(&self) -> Result<TruncSeries> {
        let d = self.degree();
        let inv0 = self.c[0].inv()?;
        let mut out = TruncSeries::zero(&self.ring, d);
        out.c[0] = inv0.clone();
        for k in 1..=d {
            let mut s = self.ring.zero();
            for i in 1..=k {
                s = &s + &(&self.c[i] * &out.c[k - i]);
            }
            out.c[k] = -&(&s * &inv0);
        }
        Ok(out)
    }

    /// Integer power, negative exponents through [`TruncSeries::inv`].
    pub fn pow_i(&self, k: i64) -> Result<TruncSeries> {
        let base = if k < 0 { self.inv()? } else { self.clone() };
        let mut r = TruncSeries::one(&self.ring, self.degree());
        for _ in 0..k.unsigned_abs() {
            r = &r * &base;
        }
        Ok(r)
    }

    /// Exact quotient of every coefficient by `k`, losing `v_p(k)` digits.
    fn div_int(x: &ZqElement, k: u64) -> Result<ZqElement> {
        let ring = x.ring();
        let p = ring.p();
        let (mut v, mut u) = (0u32, k);
        while u % p == 0 {
            u /= p;
            v += 1;
        }
        let y = x.div_p_pow(v)?;
        Ok(&y * &ring.from_u64(u).inv()?)
    }

    /// `exp(self)`; the constant term must vanish. Coefficient `k` loses
    /// up to `v_p(k!)` digits of precision.
    pub fn exp(&self) -> Result<TruncSeries> {
        if !self.c[0].is_zero() {
            return Err(Error::InvalidInput("exp needs a zero constant term".into()));
        }
        let d = self.degree();
        let mut out = TruncSeries::one(&self.ring, d);
        for k in 1..=d {
            let mut s = self.ring.zero();
            for j in 1..=k {
                s = &s + &(&self.c[j].mul_int(j as i64) * &out.c[k - j]);
            }
            let y = TruncSeries::div_int(&s, k as u64)?;
            if y.prec() == 0 {
                return Err(Error::PrecisionExhausted(format!("exp coefficient {k}")));
            }
            out.c[k] = y;
        }
        Ok(out)
    }

    /// `log(self)`; the constant term must be 1.
    pub fn log(&self) -> Result<TruncSeries> {
        if !(&self.c[0] - &self.ring.one()).is_zero() {
            return Err(Error::InvalidInput("log needs constant term 1".into()));
        }
        let d = self.degree();
        let q = &self.derivative() * &self.inv()?;
        let mut out = TruncSeries::zero(&self.ring, d);
        for k in 1..=d {
            let y = TruncSeries::div_int(&q.c[k - 1], k as u64)?;
            if y.prec() == 0 {
                return Err(Error::PrecisionExhausted(format!("log coefficient {k}")));
            }
            out.c[k] = y;
        }
        Ok(out)
    }

    /// Power sums from a series with constant term 1:
    /// `t f'/f = Σ_k S_k t^k`, computed without divisions.
    pub fn log_derivative_sums(&self) -> Result<Vec<ZqElement>> {
        let d = self.degree();
        let c0 = self.c[0].inv()?;
        let mut s: Vec<ZqElement> = vec![self.ring.zero(); d + 1];
        for k in 1..=d {
            let mut acc = &self.c[k].mul_int(k as i64) * &c0;
            for r in 1..k {
                acc = &acc - &(&(&s[r] * &self.c[k - r]) * &c0);
            }
            s[k] = acc;
        }
        Ok(s)
    }

    /// Equal modulo `t^{deg+1}` and `π^k`.
    pub fn eq_mod(&self, o: &TruncSeries, deg: usize, k: u32) -> bool {
        (0..=deg).all(|i| self.c[i].eq_mod(&o.c[i], k))
    }

    /// Minimum over coefficients `<= deg` of the agreement in `π`-digits.
    pub fn agreement(&self, o: &TruncSeries, deg: usize) -> u32 {
        (0..=deg).map(|i| self.c[i].agreement(&o.c[i])).min().unwrap_or(0)
    }
}

impl Add for &TruncSeries {
    type Output = TruncSeries;
    fn add(self, o: &TruncSeries) -> TruncSeries {
        let d = self.degree().min(o.degree());
        let c = (0..=d).map(|k| &self.c[k] + &o.c[k]).collect();
        TruncSeries { ring: self.ring.clone(), c }
    }
}

impl Sub for &TruncSeries {
    type Output = TruncSeries;
    fn sub(self, o: &TruncSeries) -> TruncSeries {
        let d = self.degree().min(o.degree());
        let c = (0..=d).map(|k| &self.c[k] - &o.c[k]).collect();
        TruncSeries { ring: self.ring.clone(), c }
    }
}

impl Neg for &TruncSeries {
    type Output = TruncSeries;
    fn neg(self) -> TruncSeries {
        self.map(|x| -x)
    }
}

impl Mul for &TruncSeries {
    type Output = TruncSeries;
    fn mul(self, o: &TruncSeries) -> TruncSeries {
        let d = self.degree().min(o.degree());
        let mut c = vec![self.ring.zero(); d + 1];
        for (i, a) in self.c.iter().enumerate().take(d + 1) {
            if a.is_zero() && a.prec() >= self.ring.cap() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate().take(d + 1 - i) {
                c[i + j] = &c[i + j] + &(a * b);
            }
        }
        TruncSeries { ring: self.ring.clone(), c }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn exp_of_zero_is_one() {
        let r = Zq::zp(5, 4).unwrap();
        let z = TruncSeries::zero(&r, 6);
        let e = z.exp().unwrap();
        assert!(e.eq_mod(&TruncSeries::one(&r, 6), 6, 3));
        assert_eq!(e.coeff(5).prec(), 3);
    }

    #[test]
    fn exp_of_pi_star_t() {
        let r = Zq::eisenstein(3, 6).unwrap();
        let pi = r.pi();
        let s = TruncSeries::from_coeffs(&r, vec![r.zero(), pi.clone()], 2);
        let e = s.exp().unwrap();
        assert_eq!(e.coeff(1), &pi);
        let half = r.from_i64(2).inv().unwrap();
        assert!(e.coeff(2).eq_mod(&(&(&pi * &pi) * &half), e.coeff(2).prec()));
        assert!(e.coeff(2).prec() >= r.cap() - 2);
    }

    #[test]
    fn geometric_series_log() {
        let r = Zq::zp(2, 10).unwrap();
        let g = TruncSeries::one_minus(&r.from_i64(2), 5).inv().unwrap();
        let sums = g.log_derivative_sums().unwrap();
        for (k, s) in sums.iter().enumerate().skip(1) {
            assert_eq!(s.as_u64(), Some(1 << k));
        }
    }

    proptest! {
        #[test]
        fn log_exp_round_trip(p in prop::sample::select(vec![2u64, 3, 5, 7]),
                              raw in prop::collection::vec(any::<u64>(), 6)) {
            let r = Zq::zp(p, 12).unwrap();
            // p * t * (...) keeps exp integral
            let mut c = vec![r.zero()];
            c.extend(raw.iter().map(|&x| r.from_u64(x).mul_p_pow(if p == 2 { 2 } else { 1 })));
            let s = TruncSeries::from_coeffs(&r, c, 6);
            let back = s.exp().unwrap().log().unwrap();
            for k in 0..=6 {
                let prec = back.coeff(k).prec();
                prop_assert!(prec > 0);
                prop_assert!(back.coeff(k).eq_mod(s.coeff(k), prec));
            }
        }
    }
}
