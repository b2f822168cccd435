//! The Legendre family `y^2 = x(x-1)(x-λ)`: the Hasse polynomial, point
//! counts and zeta factors, unit roots from the characteristic polynomial
//! and from Dwork's congruences for `F(λ) = F(1/2, 1/2; 1; λ)`, and the
//! growth of rational representatives of `ξ` and `η = -F'/F` modulo `p^n`.
//!
//! Unit-root ratios use the sign `(-1)^{(p-1)/2}` once per Frobenius step.

use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::ffield::{AffineVariety, Fq, FqElem, MPoly};
use crate::fmodule::{Base, FModule};
use crate::linalg::binomial;
use crate::padic::arith::{checked_pow, inv_mod, mul_mod, add_mod, neg_mod};
use crate::padic::{Subring, Zq, ZqElement};

fn require_odd(p: u64) -> Result<()> {
    if p == 2 {
        return Err(Error::P2Unsupported);
    }
    if !crate::padic::arith::is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    Ok(())
}

/// `C((p-1)/2, i)^2` as integers.
fn hasse_int(p: u64) -> Vec<i128> {
    let m = ((p - 1) / 2) as usize;
    (0..=m).map(|i| (binomial(m, i) as i128).pow(2)).collect()
}

/// `H_p(λ)` with coefficients reduced mod `p`, constant term first.
pub fn hasse_poly(p: u64) -> Result<Vec<u64>> {
    require_odd(p)?;
    Ok(hasse_int(p).iter().map(|&c| (c % p as i128) as u64).collect())
}

fn eval_fq(f: &Fq, poly: &[u64], x: FqElem) -> FqElem {
    poly.iter().rev().fold(0, |acc, &c| f.add(f.mul(acc, x), f.from_int(c as i128)))
}

fn cubic(f: &Fq, lambda: FqElem, x: FqElem) -> FqElem {
    let xm1 = f.sub(x, 1);
    let xml = f.sub(x, lambda);
    f.mul(f.mul(x, xm1), xml)
}

/// `#X_λ(F)` projectively, by scanning all pairs `(x, y)`.
pub fn count_points_naive(f: &Fq, lambda: FqElem) -> u64 {
    let mut squares = vec![0u64; f.size() as usize];
    for y in f.elements() {
        squares[f.mul(y, y) as usize] += 1;
    }
    1 + f.elements().map(|x| squares[cubic(f, lambda, x) as usize]).sum::<u64>()
}

/// `q + 1 + Σ_x χ(x(x-1)(x-λ))` with `χ(z) = z^{(q-1)/2}`.
pub fn count_points_character(f: &Fq, lambda: FqElem) -> u64 {
    let q = f.size();
    let minus_one = f.neg(1);
    let mut s: i64 = 0;
    for x in f.elements() {
        let v = cubic(f, lambda, x);
        if v == 0 {
            continue;
        }
        let chi = f.pow(v, (q - 1) / 2);
        s += if chi == 1 {
            1
        } else {
            debug_assert_eq!(chi, minus_one);
            -1
        };
    }
    (q as i64 + 1 + s) as u64
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Reduction {
    Ordinary,
    Supersingular,
}

#[derive(Clone, Debug, Serialize)]
pub struct LegendreFiber {
    pub p: u64,
    /// `λ ∈ F_{p^r}`.
    pub r: u32,
    pub lambda: FqElem,
    pub q: u64,
    /// `#X_λ(F_{q^k})` for `k = 1..`.
    pub counts: Vec<u64>,
    pub a: i64,
    /// `1 - aT + qT^2`.
    pub charpoly: [i64; 3],
    pub class: Reduction,
    /// `H_p(λ) = 0` exactly when the fiber is supersingular.
    pub hasse_agrees: bool,
    /// Higher counts match `q^k + 1 - α^k - β^k`.
    pub consistent: bool,
    pub hasse_bound: bool,
}

/// Counts `X_λ` over `F_{q^k}` for `k <= k_max` and reads off the zeta numerator.
pub fn count_and_zeta(p: u64, r: u32, lambda: FqElem, k_max: u32, budget: u128) -> Result<LegendreFiber> {
    require_odd(p)?;
    let f = Fq::get(p, r)?;
    if lambda as u64 >= f.size() || lambda == 0 || lambda == 1 {
        return Err(Error::InvalidInput(format!("λ = {lambda} must be an element of F_{p}^{r} other than 0 and 1")));
    }
    let q = f.size();
    let k_max = k_max.max(1);
    let mut counts = Vec::with_capacity(k_max as usize);
    for k in 1..=k_max {
        let size = checked_pow(q, k).unwrap_or(u64::MAX);
        if size as u128 > budget {
            return Err(Error::BudgetExceeded { needed: size as u128, cap: budget });
        }
        let big = Fq::get(p, r * k)?;
        let l = if k == 1 { lambda } else { big.embedding_from(&f)?[lambda as usize] };
        counts.push(count_points_character(&big, l));
    }
    let a = q as i64 + 1 - counts[0] as i64;
    let class = if a.rem_euclid(p as i64) == 0 { Reduction::Supersingular } else { Reduction::Ordinary };
    let hasse_zero = eval_fq(&f, &hasse_poly(p)?, lambda) == 0;
    // s_k = α^k + β^k
    let (mut s0, mut s1) = (2i128, a as i128);
    let mut consistent = true;
    for (k, &c) in counts.iter().enumerate().skip(1) {
        let s2 = a as i128 * s1 - q as i128 * s0;
        let qk = (q as i128).pow(k as u32 + 1);
        consistent &= c as i128 == qk + 1 - s2;
        (s0, s1) = (s1, s2);
    }
    Ok(LegendreFiber {
        p,
        r,
        lambda,
        q,
        counts,
        a,
        charpoly: [1, -a, q as i64],
        class,
        hasse_agrees: hasse_zero == (class == Reduction::Supersingular),
        consistent,
        hasse_bound: (a as i128).pow(2) <= 4 * q as i128,
    })
}

/// The root of `T^2 - aT + q` congruent to `a` mod `p`, to precision `p^n`.
pub fn unit_root_pointcount(f: &LegendreFiber, n: u32) -> Result<ZqElement> {
    if f.class == Reduction::Supersingular {
        return Err(Error::Supersingular);
    }
    let ring = Zq::zp(f.p, n)?;
    let (a, q) = (ring.from_i64(f.a), ring.from_u64(f.q));
    let mut u = a.clone();
    for _ in 0..=n + 1 {
        let h = &(&(&u * &u) - &(&a * &u)) + &q;
        let dh = &u.mul_int(2) - &a;
        u = &u - &(&h * &dh.inv()?);
    }
    Ok(u)
}

/// `((1/2)_i / i!)^2 mod p^n` for `i < len`.
fn hyper_coeffs(p: u64, n: u32, len: usize) -> Vec<u64> {
    let pn = p.pow(n);
    let mut out = Vec::with_capacity(len);
    let (mut unit, mut v) = (1u64, 0i64);
    for i in 0..len as u64 {
        if i > 0 {
            let (mut a, mut b) = (2 * i - 1, 2 * i);
            while a % p == 0 {
                a /= p;
                v += 1;
            }
            while b % p == 0 {
                b /= p;
                v -= 1;
            }
            unit = mul_mod(mul_mod(unit, a % pn, pn), inv_mod(b % pn, pn).expect("unit"), pn);
        }
        let e = 2 * v;
        out.push(if e >= n as i64 { 0 } else { mul_mod(mul_mod(unit, unit, pn), p.pow(e as u32), pn) });
    }
    out
}

fn sign(p: u64) -> i64 {
    if ((p - 1) / 2).is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Unit root of `X_λ / F_{p^r}` as `Π_j (-1)^{(p-1)/2} [F]_n(λ^{p^j}) / [F]_{n-1}(λ^{p^{j+1}})`,
/// with `λ` replaced by its Teichmüller lift and `[F]_k` the truncation below degree `p^k`.
pub fn unit_root_dwork(p: u64, r: u32, lambda: FqElem, n: u32) -> Result<ZqElement> {
    require_odd(p)?;
    if n == 0 {
        return Err(Error::InvalidInput("precision must be positive".into()));
    }
    let f = Fq::get(p, r)?;
    if eval_fq(&f, &hasse_poly(p)?, lambda) == 0 {
        return Err(Error::Supersingular);
    }
    let ring = Zq::unramified(p, n, r)?;
    let len = checked_pow(p, n).filter(|&l| l <= 1 << 22).ok_or(Error::BudgetExceeded {
        needed: (p as u128).saturating_pow(n),
        cap: 1 << 22,
    })? as usize;
    let coeffs: Vec<ZqElement> = hyper_coeffs(p, n, len).into_iter().map(|c| ring.from_u64(c)).collect();
    let eval = |x: &ZqElement, k: usize| coeffs[..k].iter().rev().fold(ring.zero(), |acc, c| &(&acc * x) + c);
    let short = len / p as usize;
    let mut x = ring.teichmuller(&f.digits(lambda));
    let mut acc = ring.from_i64(sign(p).pow(r));
    for _ in 0..r {
        let xp = x.frobenius();
        let den = eval(&xp, short);
        if !den.is_unit() {
            return Err(Error::DenominatorNonUnit);
        }
        acc = &acc * &(&eval(&x, len) * &den.inv()?);
        x = xp;
    }
    let sub = Subring::new(&Zq::zp(p, n)?, &ring)?;
    sub.project(&acc).ok_or(Error::NotFrobeniusInvariant)
}

/// Truncated power series mod `p^n` in plain residues.
#[derive(Clone, Copy)]
struct Series {
    pn: u64,
    deg: usize,
}

impl Series {
    fn mul(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        let mut out = vec![0u64; self.deg + 1];
        for (i, &x) in a.iter().enumerate().take(self.deg + 1) {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate().take(self.deg + 1 - i) {
                if y != 0 {
                    out[i + j] = add_mod(out[i + j], mul_mod(x, y, self.pn), self.pn);
                }
            }
        }
        out
    }

    fn inv(&self, a: &[u64]) -> Result<Vec<u64>> {
        let c0 = inv_mod(a[0], self.pn).ok_or(Error::DenominatorNonUnit)?;
        let mut out = vec![0u64; self.deg + 1];
        out[0] = c0;
        for k in 1..=self.deg {
            let mut s = 0;
            for j in 1..=k.min(a.len() - 1) {
                s = add_mod(s, mul_mod(a[j], out[k - j], self.pn), self.pn);
            }
            out[k] = mul_mod(neg_mod(s, self.pn), c0, self.pn);
        }
        Ok(out)
    }

    /// `a(λ^p)`.
    fn frobenius(&self, a: &[u64], p: usize) -> Vec<u64> {
        let mut out = vec![0u64; self.deg + 1];
        for (i, &x) in a.iter().enumerate() {
            if i * p > self.deg {
                break;
            }
            out[i * p] = x;
        }
        out
    }

    fn scale(&self, a: &[u64], c: i64) -> Vec<u64> {
        let c = crate::padic::arith::reduce_i64(c, self.pn);
        a.iter().map(|&x| mul_mod(x, c, self.pn)).collect()
    }
}

/// `λ(1 - λ) H_p(λ)` over the integers.
fn delta_int(p: u64) -> Vec<i128> {
    let h = hasse_int(p);
    let mut out = vec![0i128; h.len() + 2];
    for (i, &c) in h.iter().enumerate() {
        out[i + 1] += c;
        out[i + 2] -= c;
    }
    out
}

/// `Δ^m s = P` with `P` a polynomial, for the least `m` found.
#[derive(Clone, Debug, Serialize)]
pub struct Representative {
    pub exponent: usize,
    pub numerator_degree: usize,
    #[serde(skip)]
    pub numerator: Vec<u64>,
    /// The identity is proven, not only observed to the truncation degree.
    pub certified: bool,
}

/// Searches `m = 0..=cap`. A candidate `P` of degree `d` is accepted when
/// `d + (cap - m) deg Δ` fits in the truncation, so that `Δ^{cap-m}(Δ^m s - P)`
/// is a polynomial of degree at most `D` that vanishes mod `λ^{D+1}`; with an
/// a-priori bound `bound >= deg(Δ^cap s)` this makes `P` exact.
fn representative(ser: Series, s: &[u64], delta: &[u64], cap: usize, bound: Option<usize>) -> Option<Representative> {
    let dd = delta.len() - 1;
    let mut cur = s.to_vec();
    for m in 0..=cap {
        let deg = cur.iter().rposition(|&x| x != 0).unwrap_or(0);
        if deg + (cap - m) * dd <= ser.deg {
            let certified = bound.is_some_and(|b| b <= ser.deg);
            return Some(Representative { exponent: m, numerator_degree: deg, numerator: cur[..=deg].to_vec(), certified });
        }
        if m < cap {
            cur = ser.mul(&cur, delta);
        }
    }
    None
}

fn reduce_poly(c: &[i128], pn: u64) -> Vec<u64> {
    c.iter().map(|&x| crate::padic::arith::reduce_i128(x, pn)).collect()
}

/// `k_n = (p^n - p)/(p - 1)`: `[F]_{n-1}(λ^p) ≡ H_p^{k_n} mod p`.
fn hasse_power(p: u64, n: u32) -> usize {
    ((p.pow(n) - p) / (p - 1)) as usize
}

/// Bounds for the `ξ` representative at level `n`: `(cap, deg Δ^cap ξ)`.
pub fn xi_bounds(p: u64, n: u32) -> (usize, usize) {
    let pn = p.pow(n) as usize;
    let cap = n as usize * hasse_power(p, n);
    let d0 = pn - 1 + (n as usize - 1) * (pn - p as usize);
    (cap, d0 + 2 * cap)
}

/// Bound on the numerator degree of the least `ξ` representative with exponent `m`.
pub fn xi_degree_bound(p: u64, n: u32, m: usize) -> usize {
    let (cap, top) = xi_bounds(p, n);
    let dd = (p as usize + 3) / 2;
    top - (cap - m) * dd
}

/// `ξ_n = (-1)^{(p-1)/2} [F]_n(λ) / [F]_{n-1}(λ^p)` as a series mod `(p^n, λ^{deg+1})`.
fn xi_series(p: u64, n: u32, deg: usize) -> Result<(Series, Vec<u64>)> {
    let ser = Series { pn: p.pow(n), deg };
    let len = p.pow(n) as usize;
    let c = hyper_coeffs(p, n, len);
    let num = c.iter().take(deg + 1).copied().collect::<Vec<_>>();
    let short: Vec<u64> = c[..len / p as usize].to_vec();
    let den = ser.frobenius(&short, p as usize);
    let xi = ser.mul(&num, &ser.inv(&den)?);
    Ok((ser, ser.scale(&xi, sign(p))))
}

#[derive(Clone, Debug, Serialize)]
pub struct GrowthRow {
    pub n: u32,
    pub quantity: &'static str,
    pub exponent: Option<usize>,
    pub numerator_degree: Option<usize>,
    pub exponent_cap: usize,
    /// Documented degree bound, for `ξ` rows only.
    pub degree_bound: Option<usize>,
    pub within_bound: bool,
    pub certified: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct XiEtaReport {
    pub p: u64,
    pub n: u32,
    pub truncation: usize,
    pub rows: Vec<GrowthRow>,
}

/// Least representatives `P / (λ(1-λ)H_p)^m` of `ξ` and `η` mod `p^k`, `k <= n`.
pub fn xi_eta_diagnostic(p: u64, n: u32, truncation: Option<usize>) -> Result<XiEtaReport> {
    require_odd(p)?;
    if n == 0 || checked_pow(p, n).is_none_or(|x| x > 1 << 14) {
        return Err(Error::PrecisionExhausted(format!("level {n} is out of range for p = {p}")));
    }
    let dd = (p as usize + 3) / 2;
    let (cap_n, top_n) = xi_bounds(p, n);
    let deg = truncation.unwrap_or(top_n + cap_n * dd + 16);
    let mut rows = Vec::new();
    for k in 1..=n {
        let (cap, top) = xi_bounds(p, k);
        let (ser, xi) = xi_series(p, k, deg)?;
        let delta = reduce_poly(&delta_int(p), ser.pn);
        let rep = representative(ser, &xi, &delta, cap, Some(top));
        let bound = rep.as_ref().map(|r| xi_degree_bound(p, k, r.exponent));
        rows.push(GrowthRow {
            n: k,
            quantity: "xi",
            exponent: rep.as_ref().map(|r| r.exponent),
            numerator_degree: rep.as_ref().map(|r| r.numerator_degree),
            exponent_cap: cap,
            degree_bound: bound,
            within_bound: rep.as_ref().is_some_and(|r| r.exponent <= cap && Some(r.numerator_degree) <= bound),
            certified: rep.as_ref().is_some_and(|r| r.certified),
        });
        // η = -F'/F from the full series up to the truncation
        let full = hyper_coeffs(p, k, deg + 2);
        let fser = &full[..=deg];
        let dfull: Vec<u64> =
            (0..=deg).map(|i| mul_mod(full[i + 1], ((i + 1) as u64) % ser.pn, ser.pn)).collect();
        let eta = ser.scale(&ser.mul(&dfull, &ser.inv(fser)?), -1);
        let cap_eta = cap.max(1);
        let rep = representative(ser, &eta, &delta, cap_eta, None);
        rows.push(GrowthRow {
            n: k,
            quantity: "eta",
            exponent: rep.as_ref().map(|r| r.exponent),
            numerator_degree: rep.as_ref().map(|r| r.numerator_degree),
            exponent_cap: cap_eta,
            degree_bound: None,
            within_bound: rep.is_some(),
            certified: false,
        });
    }
    Ok(XiEtaReport { p, n, truncation: deg, rows })
}

/// Rank-two module `diag(ξ_n, q/ξ_n)` on `A^1 - {λ(1-λ)H_p = 0}` over `F_p`
/// with the lift `λ -> λ^p`: its fiber at an ordinary `λ` of degree `r` has
/// characteristic polynomial `1 - aT + p^r T^2` mod `p^n`. Both entries are
/// stored as exact representatives `P / (λ(1-λ)H_p)^m`.
pub fn surrogate_module(p: u64, n: u32) -> Result<FModule> {
    require_odd(p)?;
    let x = AffineVariety::new(p, 1, vec!["l".into()], Vec::new(), Some(MPoly::univariate(&delta_int(p))))?;
    let base: Arc<Base> = Base::standard(x, n)?;
    let dd = (p as usize + 3) / 2;
    let (cap, top) = xi_bounds(p, n);
    // q/ξ: [F]_n(λ) ≡ H^{k'} mod p with k' = (p^n - 1)/(p - 1)
    let pn = p.pow(n) as usize;
    let cap2 = n as usize * (pn - 1) / (p as usize - 1);
    let top2 = (pn - p as usize) + (n as usize - 1) * (pn - 1) + 2 * cap2;
    let deg = (top + cap * dd).max(top2 + cap2 * dd);
    let (ser, xi) = xi_series(p, n, deg)?;
    let delta = reduce_poly(&delta_int(p), ser.pn);
    let c = hyper_coeffs(p, n, pn);
    let num: Vec<u64> = c.iter().take(deg + 1).copied().collect();
    let short = ser.frobenius(&c[..pn / p as usize], p as usize);
    let inv_xi = ser.scale(&ser.mul(&short, &ser.inv(&num)?), sign(p) * p as i64);
    let mut nums = Vec::new();
    let mut dens = Vec::new();
    for (s, cp, tp) in [(&xi, cap, top), (&inv_xi, cap2, top2)] {
        let rep = representative(ser, s, &delta, cp, Some(tp))
            .filter(|r| r.certified)
            .ok_or_else(|| Error::PrecisionExhausted("no exact representative within the truncation".into()))?;
        let poly: Vec<i128> = rep.numerator.iter().map(|&v| v as i128).collect();
        nums.push(MPoly::univariate(&poly));
        dens.push(rep.exponent as u32);
    }
    let zero = MPoly::zero(1);
    FModule::from_matrix(&base, 2, vec![nums[0].clone(), zero.clone(), zero, nums[1].clone()], vec![dens[0], 0, 0, dens[1]])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffield::{ClosedPoint, DEFAULT_BUDGET};

    #[test]
    fn hasse_polynomials() {
        assert_eq!(hasse_poly(3).unwrap(), vec![1, 1]);
        assert_eq!(hasse_poly(5).unwrap(), vec![1, 4, 1]);
        assert_eq!(hasse_poly(7).unwrap(), vec![1, 2, 2, 1]);
        assert_eq!(hasse_poly(2), Err(Error::P2Unsupported));
    }

    #[test]
    fn small_fibers() {
        let f = count_and_zeta(5, 1, 2, 3, DEFAULT_BUDGET).unwrap();
        assert_eq!((f.counts[0], f.a, f.class), (8, -2, Reduction::Ordinary));
        assert_eq!(f.charpoly, [1, 2, 5]);
        assert!(f.consistent && f.hasse_agrees && f.hasse_bound);
        let f = count_and_zeta(5, 1, 3, 2, DEFAULT_BUDGET).unwrap();
        assert_eq!((f.counts[0], f.a), (4, 2));
        let f = count_and_zeta(7, 1, 6, 2, DEFAULT_BUDGET).unwrap();
        assert_eq!((f.counts[0], f.a, f.class), (8, 0, Reduction::Supersingular));
        assert!(f.hasse_agrees && f.consistent);
        let fq = Fq::get(7, 1).unwrap();
        assert_eq!(count_points_naive(&fq, 6), count_points_character(&fq, 6));
        assert!(count_and_zeta(5, 1, 1, 1, DEFAULT_BUDGET).is_err());
    }

    #[test]
    fn unit_roots_agree() {
        for p in [5u64, 7] {
            let h = hasse_poly(p).unwrap();
            for l in 2..p as u32 {
                let f = count_and_zeta(p, 1, l, 1, DEFAULT_BUDGET).unwrap();
                if f.class == Reduction::Supersingular {
                    assert!(matches!(unit_root_dwork(p, 1, l, 3), Err(Error::Supersingular)));
                    continue;
                }
                let u = unit_root_pointcount(&f, 3).unwrap();
                assert_eq!(unit_root_dwork(p, 1, l, 3).unwrap(), u, "p={p} λ={l}");
                // u ≡ (-1)^{(p-1)/2} H_p(λ) mod p
                let hv = h.iter().rev().fold(0i64, |acc, &c| (acc * l as i64 + c as i64) % p as i64);
                assert!(u.eq_mod(&u.ring().from_i64(sign(p) * hv), 1));
            }
        }
    }

    #[test]
    fn unit_roots_over_f25() {
        let f = Fq::get(5, 2).unwrap();
        let h = hasse_poly(5).unwrap();
        for l in f.elements().filter(|&l| l > 1 && eval_fq(&f, &h, l) != 0).take(6) {
            let fib = count_and_zeta(5, 2, l, 2, DEFAULT_BUDGET).unwrap();
            assert!(fib.consistent);
            assert_eq!(unit_root_dwork(5, 2, l, 2).unwrap(), unit_root_pointcount(&fib, 2).unwrap());
        }
    }

    #[test]
    fn diagnostic_rows() {
        let rep = xi_eta_diagnostic(5, 2, None).unwrap();
        assert_eq!(rep.rows.len(), 4);
        // level 1: ξ is the Hasse polynomial up to sign, η ≡ -H'/H
        assert_eq!(rep.rows[0].exponent, Some(0));
        assert_eq!(rep.rows[0].numerator_degree, Some(2));
        assert_eq!(rep.rows[1].exponent, Some(1));
        assert!(rep.rows.iter().filter(|r| r.quantity == "xi").all(|r| r.within_bound && r.certified));
    }

    #[test]
    fn surrogate_fibers() {
        let m = surrogate_module(5, 3).unwrap();
        let x = &m.base().variety;
        let pt = ClosedPoint { degree: 1, rep: vec![2] };
        let f = m.fiber(&pt).unwrap();
        let ring = m.scalar_ring().unwrap();
        assert_eq!(f.charpoly, vec![ring.one(), ring.from_i64(2), ring.from_i64(5)]);
        for pt in x.closed_points_of_degree(2, DEFAULT_BUDGET).unwrap() {
            let fib = count_and_zeta(5, 2, pt.rep[0], 1, DEFAULT_BUDGET).unwrap();
            let got = m.fiber(&pt).unwrap().charpoly;
            assert_eq!(got, vec![ring.one(), ring.from_i64(-fib.a), ring.from_i64(25)]);
        }
    }

    #[test]
    fn surrogate_slope_product() {
        let m = surrogate_module(5, 3).unwrap();
        let c = crate::lseries::check_slope_product(&m, 4, DEFAULT_BUDGET).unwrap();
        assert!(c.holds, "{c:?}");
    }
}
