//! L-functions of F-modules as truncated power series: Euler products,
//! exponential sums, slope parts, Adams-type powers and their identities.

use std::collections::BTreeSet;

use num_rational::Ratio;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::ffield::ClosedPoint;
use crate::fmodule::{FModule, FiberFrobenius};
use crate::linalg::Matrix;
use crate::newton::{hidden_roots, poly_mul, slope_factors, NewtonPolygon, Slope};
use crate::padic::series::TruncSeries;
use crate::padic::{Subring, Zq, ZqElement};

/// `L(t) = L_0(p^scale t)` with `L_0` integral, truncated at `degree`.
#[derive(Clone, Debug)]
pub struct LSeries {
    series: TruncSeries,
    scale: i64,
    negative_twist: bool,
    provenance: String,
}

/// A coefficient `value · p^exponent`, with `value` prime to `p` whenever
/// `exponent < 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct Coefficient {
    pub value: ZqElement,
    pub exponent: i64,
}

/// Outcome of comparing two series coefficientwise at tracked precision.
#[derive(Clone, Debug, PartialEq)]
pub struct IdentityCheck {
    pub name: String,
    pub degree: usize,
    pub holds: bool,
    /// Smallest π-adic precision at which a coefficient was compared.
    pub precision: u32,
    pub first_mismatch: Option<usize>,
}

impl LSeries {
    pub fn new(series: TruncSeries, scale: i64, provenance: impl Into<String>) -> LSeries {
        LSeries { series, scale, negative_twist: false, provenance: provenance.into() }
    }

    pub fn series(&self) -> &TruncSeries {
        &self.series
    }

    pub fn ring(&self) -> &Zq {
        self.series.ring()
    }

    pub fn degree(&self) -> usize {
        self.series.degree()
    }

    pub fn scale(&self) -> i64 {
        self.scale
    }

    pub fn provenance(&self) -> &str {
        &self.provenance
    }

    pub fn has_negative_twist(&self) -> bool {
        self.negative_twist
    }

    fn with_twist_flag(mut self, neg: bool) -> LSeries {
        self.negative_twist = neg;
        self
    }

    /// The same series over a ring containing this one.
    pub fn embed_into(&self, ring: &Zq) -> Result<LSeries> {
        Ok(LSeries { series: self.series.map_ring(ring, |c| ring.embed(c))?, ..self.clone() })
    }

    /// `L(p^c t)`.
    pub fn substitute(&self, c: i64) -> LSeries {
        LSeries { scale: self.scale + c, ..self.clone() }
    }

    /// The same series written with a smaller scale `c`.
    pub fn rescaled(&self, c: i64) -> LSeries {
        assert!(c <= self.scale, "can only lower the scale");
        let d = (self.scale - c) as u32;
        let mut s = self.series.clone();
        for k in 0..=s.degree() {
            let x = s.coeff(k).mul_p_pow(d * k as u32);
            s.set(k, x);
        }
        LSeries { series: s, scale: c, ..self.clone() }
    }

    /// Folds a nonnegative scale into the coefficients.
    pub fn integral_form(&self) -> Option<TruncSeries> {
        (self.scale >= 0).then(|| self.rescaled(0).series)
    }

    pub fn coefficient(&self, k: usize) -> Result<Coefficient> {
        let c = self.series.coeff(k);
        let ex = self.scale * k as i64;
        if ex >= 0 {
            return Ok(Coefficient { value: c.mul_p_pow(ex as u32), exponent: 0 });
        }
        let e = self.ring().e();
        let strip = if c.is_zero() { 0 } else { (c.valuation() / e).min((-ex) as u32) };
        Ok(Coefficient { value: c.div_p_pow(strip)?, exponent: ex + strip as i64 })
    }

    fn common(&self, o: &LSeries) -> Result<(TruncSeries, TruncSeries, i64)> {
        if self.ring() != o.ring() {
            return Err(Error::Mismatch("series over different rings".into()));
        }
        let c = self.scale.min(o.scale);
        let d = self.degree().min(o.degree());
        Ok((self.rescaled(c).series.truncate(d), o.rescaled(c).series.truncate(d), c))
    }

    pub fn mul(&self, o: &LSeries) -> Result<LSeries> {
        let (a, b, c) = self.common(o)?;
        Ok(LSeries::new(&a * &b, c, "product").with_twist_flag(self.negative_twist || o.negative_twist))
    }

    pub fn pow_i(&self, k: i64) -> Result<LSeries> {
        Ok(LSeries { series: self.series.pow_i(k)?, provenance: format!("({})^{k}", self.provenance), ..self.clone() })
    }

    pub fn check_equal(&self, o: &LSeries, name: &str) -> Result<IdentityCheck> {
        let (a, b, _) = self.common(o)?;
        let mut precision = u32::MAX;
        let mut first_mismatch = None;
        for k in 0..=a.degree() {
            let need = a.coeff(k).prec().min(b.coeff(k).prec());
            precision = precision.min(need);
            if first_mismatch.is_none() && a.coeff(k).agreement(b.coeff(k)) < need {
                first_mismatch = Some(k);
            }
        }
        Ok(IdentityCheck {
            name: name.to_string(),
            degree: a.degree(),
            holds: first_mismatch.is_none() && precision > 0,
            precision,
            first_mismatch,
        })
    }
}

/// Fibers at every closed point of degree at most `degree`.
pub struct Fibers {
    module: FModule,
    degree: usize,
    fibers: Vec<FiberFrobenius>,
}

impl Fibers {
    pub fn compute(m: &FModule, degree: usize, budget: u128) -> Result<Fibers> {
        let pts = m.base().variety.closed_points_up_to(degree as u32, budget)?;
        let fibers = pts.par_iter().map(|pt| m.fiber(pt)).collect::<Result<Vec<_>>>()?;
        Ok(Fibers { module: m.clone(), degree, fibers })
    }

    pub fn module(&self) -> &FModule {
        &self.module
    }

    pub fn fibers(&self) -> &[FiberFrobenius] {
        &self.fibers
    }

    fn unit(&self, f: &FiberFrobenius) -> i64 {
        let ring = f.charpoly[0].ring();
        (ring.e() * self.module.base().variety.a() * f.point.degree) as i64
    }

    /// Slope shift `α/a` contributed by the twist under `ord(q^{deg x}) = 1`.
    fn twist_shift(&self) -> Slope {
        Ratio::new(self.module.twist_exponent(), self.module.base().variety.a() as i64)
    }

    /// Normalized fiber slopes, twist included, over all points.
    pub fn slopes(&self) -> Result<BTreeSet<Slope>> {
        let mut out = BTreeSet::new();
        for f in &self.fibers {
            for s in NewtonPolygon::checked(&f.charpoly, self.unit(f))?.slopes() {
                out.insert(s.0 + self.twist_shift());
            }
        }
        Ok(out)
    }

    fn product<F>(&self, factor: F, scale: i64, provenance: String) -> Result<LSeries>
    where
        F: Fn(&FiberFrobenius) -> Result<Vec<ZqElement>> + Sync,
    {
        let ring = self.module.scalar_ring()?;
        let d = self.degree;
        let parts = self
            .fibers
            .par_iter()
            .map(|f| {
                let poly = factor(f)?;
                let r = f.point.degree as usize;
                let mut s = TruncSeries::zero(&ring, d);
                for (i, c) in poly.into_iter().enumerate() {
                    if i * r <= d {
                        s.set(i * r, c);
                    }
                }
                Ok(s)
            })
            .collect::<Result<Vec<_>>>()?;
        let prod = parts.iter().fold(TruncSeries::one(&ring, d), |acc, s| &acc * s);
        let neg = self.module.twist_exponent() < 0;
        Ok(LSeries::new(prod.inv()?, scale, provenance).with_twist_flag(neg))
    }

    pub fn l_euler(&self) -> Result<LSeries> {
        self.product(|f| Ok(f.charpoly.clone()), self.module.twist_exponent(), "euler".into())
    }

    fn slope_part(&self, f: &FiberFrobenius, alpha: Slope) -> Result<Vec<ZqElement>> {
        let target = alpha - self.twist_shift();
        let unit = self.unit(f);
        let parts = slope_factors(&f.charpoly, unit)?;
        let top = parts.iter().map(|s| s.factor.len() - 1).sum();
        let ring = f.charpoly[0].ring();
        let mut factor = parts.into_iter().find(|s| s.slope == target).map_or_else(|| vec![ring.one()], |s| s.factor);
        // Roots lost below the working precision perturb every coefficient
        // past the constant one, and belong to the target part if it is steep enough.
        if let Some((count, least)) = hidden_roots(&f.charpoly, top) {
            let g = least.floor().to_integer() as u32;
            for c in factor.iter_mut().skip(1) {
                *c = c.clone().truncate(g);
            }
            if target * unit >= least {
                factor.extend(std::iter::repeat_n(ring.zero().truncate(g), count));
            }
        }
        Ok(factor)
    }

    pub fn l_alpha(&self, alpha: Slope) -> Result<LSeries> {
        self.product(|f| self.slope_part(f, alpha), self.module.twist_exponent(), format!("slope {alpha}"))
    }

    /// `Π_x det(1 - t^{deg x} Φ_x^r)^{-1}`.
    pub fn l_r(&self, r: u32) -> Result<LSeries> {
        let ring = self.module.scalar_ring()?;
        let scale = self.module.twist_exponent() * r as i64;
        self.product(
            |f| {
                let sub = Subring::new(&ring, f.matrix.ring())?;
                f.matrix
                    .pow(r)
                    .charpoly_rev(self.module.rank())
                    .iter()
                    .map(|c| sub.project(c).ok_or(Error::NotFrobeniusInvariant))
                    .collect()
            },
            scale,
            format!("power {r}"),
        )
    }

    /// `r`-th powers of the roots of the slope-`α` factor, through the
    /// companion matrix of that factor.
    pub fn l_r_alpha(&self, r: u32, alpha: Slope) -> Result<LSeries> {
        let ring = self.module.scalar_ring()?;
        let scale = self.module.twist_exponent() * r as i64;
        self.product(
            |f| {
                let part = self.slope_part(f, alpha)?;
                if part.len() == 1 {
                    return Ok(part);
                }
                Ok(Matrix::companion(&ring, &part).pow(r).charpoly_rev(part.len() - 1))
            },
            scale,
            format!("power {r} slope {alpha}"),
        )
    }
}

pub fn l_euler(m: &FModule, degree: usize, budget: u128) -> Result<LSeries> {
    Fibers::compute(m, degree, budget)?.l_euler()
}

/// Untwisted `S_r = Σ_{x ∈ X(F_{q^r})} Tr(Φ_x)` for `r = 1..=degree`
/// (index 0 unused).
pub fn power_sums(m: &FModule, degree: usize, budget: u128) -> Result<Vec<ZqElement>> {
    let ring = m.scalar_ring()?;
    let x = &m.base().variety;
    let mut out = vec![ring.zero()];
    for r in 1..=degree as u32 {
        let pts = x.points_over(r, budget)?;
        let traces = pts
            .par_iter()
            .map(|p| m.fiber_trace(&ClosedPoint { degree: r, rep: p.clone() }))
            .collect::<Result<Vec<_>>>()?;
        out.push(traces.iter().fold(ring.zero(), |a, t| &a + t));
    }
    Ok(out)
}

/// `exp(Σ S_r t^r / r)` by `k c_k = Σ S_r c_{k-r}`, run with the `S_r`
/// lifted to extra digits so the divisions by `k` cost only the
/// unavoidable `floor(log_p k)` digits.
pub fn exp_of_power_sums(s: &[ZqElement], degree: usize) -> Result<TruncSeries> {
    let ring = s[0].ring().clone();
    let p = ring.p();
    let loss: u32 = (1..=degree as u64).map(|k| crate::padic::arith::val_u64(k, p).unwrap_or(0)).sum();
    let mut extra = loss;
    let hi = loop {
        match Zq::cached(p, ring.n() + extra, ring.f(), ring.e()) {
            Ok(r) => break r,
            Err(_) if extra > 0 => extra -= 1,
            Err(e) => return Err(e),
        }
    };
    let lift = |x: &ZqElement| hi.from_parts(x.coeffs(), hi.cap());
    let sh: Vec<ZqElement> = s.iter().map(lift).collect();
    let mut c = vec![hi.one()];
    for k in 1..=degree {
        let mut acc = hi.zero();
        for r in 1..=k {
            acc = &acc + &(&sh[r] * &c[k - r]);
        }
        c.push(acc.div_exact(&hi.from_u64(k as u64))?);
    }
    let mut out = TruncSeries::zero(&ring, degree);
    for (k, ck) in c.iter().enumerate() {
        let lost = (k.max(1) as f64).log(p as f64).floor() as u32;
        let known = ring.e() * ring.n().saturating_sub(lost);
        let input = s[1..=k.max(1).min(s.len() - 1)].iter().map(|x| x.prec()).min().unwrap_or(ring.cap());
        let prec = ck.prec().min(known).min(input.saturating_sub(ring.e() * lost)).min(ring.cap());
        let prec = if k == 0 { ring.cap() } else { prec };
        let pn = ring.pn();
        let coeffs: Vec<u64> = ck.coeffs().iter().map(|v| v % pn).collect();
        out.set(k, ring.from_parts(&coeffs, prec));
    }
    Ok(out)
}

pub fn l_expsum(m: &FModule, degree: usize, budget: u128) -> Result<LSeries> {
    let s = power_sums(m, degree, budget)?;
    let series = exp_of_power_sums(&s, degree)?;
    Ok(LSeries::new(series, m.twist_exponent(), "expsum").with_twist_flag(m.twist_exponent() < 0))
}

/// `L = Π_α L_α`.
pub fn check_slope_product(m: &FModule, degree: usize, budget: u128) -> Result<IdentityCheck> {
    let fib = Fibers::compute(m, degree, budget)?;
    let mut prod: Option<LSeries> = None;
    for a in fib.slopes()? {
        let la = fib.l_alpha(a)?;
        prod = Some(match prod {
            None => la,
            Some(p) => p.mul(&la)?,
        });
    }
    let l = fib.l_euler()?;
    let prod = prod.unwrap_or_else(|| LSeries::new(TruncSeries::one(l.ring(), degree), l.scale(), "empty"));
    l.check_equal(&prod, "L = prod_a L_a")
}

/// `L^{(r)} = Π_α L^{(r)}_α`.
pub fn check_power_slope_product(m: &FModule, r: u32, degree: usize, budget: u128) -> Result<IdentityCheck> {
    let fib = Fibers::compute(m, degree, budget)?;
    let mut prod: Option<LSeries> = None;
    for a in fib.slopes()? {
        let la = fib.l_r_alpha(r, a)?;
        prod = Some(match prod {
            None => la,
            Some(p) => p.mul(&la)?,
        });
    }
    let l = fib.l_r(r)?;
    let prod = prod.unwrap_or_else(|| LSeries::new(TruncSeries::one(l.ring(), degree), l.scale(), "empty"));
    l.check_equal(&prod, &format!("L^({r}) = prod_a L^({r})_a"))
}

/// `Sym^{r-i} M ⊗ Λ^i M` for `i = 1..=min(r, rank)` with exponent `i (-1)^{i-1}`.
fn adams_pieces(m: &FModule, r: u32) -> Result<Vec<(FModule, i64)>> {
    let mut out = Vec::new();
    for i in 1..=(r as usize).min(m.rank()) {
        let piece = m.sym_power(r as usize - i)?.tensor(&m.ext_power(i)?)?;
        let sign = if i % 2 == 1 { 1 } else { -1 };
        out.push((piece, sign * i as i64));
    }
    Ok(out)
}

/// `L^{(r)} = Π_i L(Sym^{r-i} ⊗ Λ^i)^{i (-1)^{i-1}}`.
pub fn check_adams_identity(m: &FModule, r: u32, degree: usize, budget: u128) -> Result<IdentityCheck> {
    let lhs = Fibers::compute(m, degree, budget)?.l_r(r)?;
    let mut rhs: Option<LSeries> = None;
    for (piece, ex) in adams_pieces(m, r)? {
        let l = l_euler(&piece, degree, budget)?.pow_i(ex)?;
        rhs = Some(match rhs {
            None => l,
            Some(x) => x.mul(&l)?,
        });
    }
    lhs.check_equal(&rhs.expect("rank >= 1"), &format!("L^({r}) via Sym/Lambda"))
}

/// `L^{(r)}_α = Π_i L_{rα}(Sym^{r-i} ⊗ Λ^i)^{i (-1)^{i-1}}`.
pub fn check_adams_slope_identity(m: &FModule, r: u32, alpha: Slope, degree: usize, budget: u128) -> Result<IdentityCheck> {
    let lhs = Fibers::compute(m, degree, budget)?.l_r_alpha(r, alpha)?;
    let target = alpha * r as i64;
    let mut rhs: Option<LSeries> = None;
    for (piece, ex) in adams_pieces(m, r)? {
        let l = Fibers::compute(&piece, degree, budget)?.l_alpha(target)?.pow_i(ex)?;
        rhs = Some(match rhs {
            None => l,
            Some(x) => x.mul(&l)?,
        });
    }
    lhs.check_equal(&rhs.expect("rank >= 1"), &format!("L^({r})_{alpha} via Sym/Lambda"))
}

#[derive(Clone, Debug, PartialEq)]
pub struct IntegralityReport {
    /// `(-1)^{dim X - 1}`.
    pub exponent: i64,
    pub skipped: Option<String>,
    pub integral: bool,
    pub first_violation: Option<usize>,
    /// First coefficient whose integrality is not decided at this precision.
    pub undecided_from: Option<usize>,
}

pub fn integrality_check(l: &LSeries, dim: usize) -> Result<IntegralityReport> {
    let exponent = if dim % 2 == 1 { 1 } else { -1 };
    if l.has_negative_twist() {
        return Ok(IntegralityReport {
            exponent,
            skipped: Some("module carries a negative twist".into()),
            integral: false,
            first_violation: None,
            undecided_from: None,
        });
    }
    let pw = l.pow_i(exponent)?;
    let e = l.ring().e();
    let mut first_violation = None;
    let mut undecided_from = None;
    for k in 0..=pw.degree() {
        let need = -pw.scale() * k as i64;
        if need <= 0 {
            continue;
        }
        let c = pw.series().coeff(k);
        let need = need as u32 * e;
        if c.is_zero() {
            if c.prec() < need && undecided_from.is_none() {
                undecided_from = Some(k);
            }
        } else if c.valuation() < need {
            first_violation = Some(k);
            break;
        }
    }
    Ok(IntegralityReport { exponent, skipped: None, integral: first_violation.is_none(), first_violation, undecided_from })
}

/// Rational reconstruction of a truncated `L` and the power sums it implies.
#[derive(Clone, Debug)]
pub struct WeierstrassReport {
    /// Series polygons under `ord(p) = 1`.
    pub polygon: NewtonPolygon,
    pub inverse_polygon: NewtonPolygon,
    pub numerator: Vec<ZqElement>,
    pub denominator: Vec<ZqElement>,
    /// Slopes of the reciprocal zeros and poles.
    pub zero_slopes: Vec<(Slope, usize)>,
    pub pole_slopes: Vec<(Slope, usize)>,
    /// `S_k` read off `t L'/L`, index 0 unused.
    pub power_sums: Vec<ZqElement>,
    /// `Σ β^k - Σ α^k` from the recovered roots, via companion traces.
    pub reconstructed: Vec<ZqElement>,
    pub matches: bool,
}

pub fn weierstrass_export(l: &LSeries, reference: Option<&[ZqElement]>) -> Result<WeierstrassReport> {
    let s = l.integral_form().ok_or_else(|| Error::InvalidInput("export needs a nonnegative scale".into()))?;
    let ring = s.ring().clone();
    let e = ring.e() as i64;
    let d = s.degree();
    let c = s.coeffs();
    let (numerator, denominator) = pade(c, d).ok_or(Error::InsufficientDegree(d))?;
    let power_sums = s.log_derivative_sums()?;
    let trace_sums = |poly: &[ZqElement]| -> Vec<ZqElement> {
        let mut out = vec![ring.zero(); d + 1];
        if poly.len() > 1 {
            let comp = Matrix::companion(&ring, poly);
            let mut pw = comp.clone();
            for o in out.iter_mut().skip(1) {
                *o = pw.trace();
                pw = pw.mul(&comp);
            }
        }
        out
    };
    let (b, a) = (trace_sums(&denominator), trace_sums(&numerator));
    let reconstructed: Vec<ZqElement> = b.iter().zip(&a).map(|(x, y)| x - y).collect();
    let target = reference.unwrap_or(&power_sums);
    let matches = (1..=d.min(target.len().saturating_sub(1))).all(|k| {
        let need = reconstructed[k].prec().min(target[k].prec());
        reconstructed[k].agreement(&target[k]) >= need
    });
    Ok(WeierstrassReport {
        polygon: NewtonPolygon::new(c, e),
        inverse_polygon: NewtonPolygon::new(s.inv()?.coeffs(), e),
        zero_slopes: NewtonPolygon::new(&numerator, e).slopes(),
        pole_slopes: NewtonPolygon::new(&denominator, e).slopes(),
        numerator,
        denominator,
        power_sums,
        reconstructed,
        matches,
    })
}

/// Smallest `(deg N, deg D)` with `L D ≡ N mod t^{d+1}`, `D(0) = 1`, leaving
/// at least one coefficient to confirm the fit.
fn pade(c: &[ZqElement], d: usize) -> Option<(Vec<ZqElement>, Vec<ZqElement>)> {
    let ring = c[0].ring().clone();
    let at = |k: isize| if k < 0 { ring.zero() } else { c[k as usize].clone() };
    for total in 0..d {
        for dd in 0..=total {
            let nn = total - dd;
            let mut den = vec![ring.one()];
            if dd > 0 {
                let rows: Vec<Vec<ZqElement>> = (nn + 1..=nn + dd)
                    .map(|k| (1..=dd).map(|j| at(k as isize - j as isize)).collect())
                    .collect();
                let rhs: Vec<ZqElement> = (nn + 1..=nn + dd).map(|k| -&c[k]).collect();
                match Matrix::from_rows(&ring, rows).solve(&rhs) {
                    Ok(x) => den.extend(x),
                    Err(_) => continue,
                }
            }
            let prod = poly_mul(&den, c);
            let num: Vec<ZqElement> = prod[..=nn].to_vec();
            let tail = &prod[nn + 1..=d];
            if tail.iter().all(|x| x.is_zero() && x.prec() > 0) {
                return Some((num, den));
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffield::{AffineVariety, MPoly, DEFAULT_BUDGET};
    use crate::fmodule::Base;

    fn rows(r: &[&[&str]]) -> Vec<Vec<String>> {
        r.iter().map(|row| row.iter().map(|s| s.to_string()).collect()).collect()
    }

    fn ints(l: &LSeries) -> Vec<i128> {
        l.integral_form().unwrap().coeffs().iter().map(|c| c.as_i128_centered().unwrap()).collect()
    }

    #[test]
    fn zeta_of_the_affine_line() {
        let b = Base::standard(AffineVariety::affine_space(2, 1, 1).unwrap(), 8).unwrap();
        let m = FModule::trivial(&b);
        let l = l_euler(&m, 3, DEFAULT_BUDGET).unwrap();
        assert_eq!(ints(&l), vec![1, 2, 4, 8]);
        let e = l_expsum(&m, 3, DEFAULT_BUDGET).unwrap();
        assert!(l.check_equal(&e, "euler = expsum").unwrap().holds);
    }

    #[test]
    fn roots_below_working_precision() {
        // At a cubic point the slope-2 root of M ⊗ M has valuation 6 and the
        // determinant 3^12, invisible at N = 12. The slope-2 part must lose
        // precision there instead of silently dropping the root.
        let b = Base::standard(AffineVariety::affine_space(3, 1, 1).unwrap(), 12).unwrap();
        let m = FModule::parse_matrix(&b, &rows(&[&["1", "0"], &["0", "3*x"]])).unwrap();
        let c = check_adams_slope_identity(&m, 2, Slope::from_integer(1), 3, DEFAULT_BUDGET).unwrap();
        assert!(c.holds, "{c:?}");
        assert!(c.precision <= 6);
        let mm = m.tensor(&m).unwrap();
        let l2 = Fibers::compute(&mm, 3, DEFAULT_BUDGET).unwrap().l_alpha(Slope::from_integer(2)).unwrap();
        assert!(l2.series().coeff(3).prec() <= 6);
    }

    #[test]
    fn empty_variety_gives_one() {
        let x = AffineVariety::parse(3, 1, &["x"], &["1"], None).unwrap();
        let b = Base::standard(x, 4).unwrap();
        let l = l_euler(&FModule::trivial(&b), 4, DEFAULT_BUDGET).unwrap();
        assert_eq!(ints(&l), vec![1, 0, 0, 0, 0]);
    }

    #[test]
    fn constant_p_module() {
        // C = (p) on A^1/F_p: L = 1/(1 - p^2 t)
        let b = Base::standard(AffineVariety::affine_space(3, 1, 1).unwrap(), 8).unwrap();
        let m = FModule::parse_matrix(&b, &rows(&[&["3"]])).unwrap();
        let l = l_euler(&m, 3, DEFAULT_BUDGET).unwrap();
        assert_eq!(ints(&l), vec![1, 9, 81, 729]);
        // the same through the twist
        let t = FModule::trivial(&b).twist(1);
        assert!(l.check_equal(&l_euler(&t, 3, DEFAULT_BUDGET).unwrap(), "twist").unwrap().holds);
    }

    #[test]
    fn nilpotent_fibers() {
        let b = Base::standard(AffineVariety::affine_space(2, 1, 1).unwrap(), 6).unwrap();
        let m = FModule::parse_matrix(&b, &rows(&[&["0", "1"], &["0", "0"]])).unwrap();
        assert_eq!(ints(&l_expsum(&m, 4, DEFAULT_BUDGET).unwrap()), vec![1, 0, 0, 0, 0]);
        assert_eq!(ints(&l_euler(&m, 4, DEFAULT_BUDGET).unwrap()), vec![1, 0, 0, 0, 0]);
    }

    #[test]
    fn euler_matches_expsum_on_gm() {
        let b = Base::standard(AffineVariety::gm(3, 1).unwrap(), 6).unwrap();
        let m = FModule::parse_matrix(&b, &rows(&[&["x", "3"], &["1", "x^2 + 3*x"]])).unwrap();
        let l = l_euler(&m, 5, DEFAULT_BUDGET).unwrap();
        let e = l_expsum(&m, 5, DEFAULT_BUDGET).unwrap();
        let c = l.check_equal(&e, "euler = expsum").unwrap();
        assert!(c.holds, "{c:?}");
        let r1 = Fibers::compute(&m, 5, DEFAULT_BUDGET).unwrap().l_r(1).unwrap();
        assert!(l.check_equal(&r1, "r = 1").unwrap().holds);
    }

    #[test]
    fn character_l_function_over_f2() {
        // L(A^1, ψ(x)) = 1 for the nontrivial character sum over A^1
        let b = Base::standard(AffineVariety::affine_space(2, 1, 1).unwrap(), 6).unwrap();
        let w = MPoly::parse("x", b.variety.vars()).unwrap();
        let m = FModule::character(&b, w).unwrap();
        let l = l_euler(&m, 4, DEFAULT_BUDGET).unwrap();
        let e = l_expsum(&m, 4, DEFAULT_BUDGET).unwrap();
        assert!(l.check_equal(&e, "euler = expsum").unwrap().holds);
        let one = LSeries::new(TruncSeries::one(l.ring(), 4), 0, "one");
        assert!(l.check_equal(&one, "trivial").unwrap().holds);
    }

    #[test]
    fn slope_identities_rank_two() {
        let b = Base::standard(AffineVariety::gm(3, 1).unwrap(), 20).unwrap();
        // det = 3 (x^2 - x + 1) vanishes to order 2 at x = 2
        let m = FModule::parse_matrix(&b, &rows(&[&["1", "x"], &["3", "3*x^2 + 3"]])).unwrap();
        let slopes = Fibers::compute(&m, 4, DEFAULT_BUDGET).unwrap().slopes().unwrap();
        assert!(slopes.len() >= 3, "{slopes:?}");
        let c = check_slope_product(&m, 4, DEFAULT_BUDGET).unwrap();
        assert!(c.holds, "{c:?}");
        let c = check_power_slope_product(&m, 2, 4, DEFAULT_BUDGET).unwrap();
        assert!(c.holds, "{c:?}");
        let c = check_adams_identity(&m, 2, 3, DEFAULT_BUDGET).unwrap();
        assert!(c.holds, "{c:?}");
        for a in slopes {
            let c = check_adams_slope_identity(&m, 2, a, 3, DEFAULT_BUDGET).unwrap();
            assert!(c.holds, "{c:?}");
        }
    }

    #[test]
    fn integrality_reports() {
        let b = Base::standard(AffineVariety::affine_space(2, 1, 1).unwrap(), 6).unwrap();
        let l = l_euler(&FModule::trivial(&b), 4, DEFAULT_BUDGET).unwrap();
        assert!(integrality_check(&l, 1).unwrap().integral);
        let tw = l_euler(&FModule::trivial(&b).twist(-1), 4, DEFAULT_BUDGET).unwrap();
        assert!(integrality_check(&tw, 1).unwrap().skipped.is_some());
        // 1/(1-2t) at t/2 is 1/(1-t): still integral; at t/4 it is not
        assert!(integrality_check(&l.substitute(-1), 1).unwrap().integral);
        let r = integrality_check(&l.substitute(-2), 1).unwrap();
        assert_eq!(r.first_violation, Some(1));
    }

    #[test]
    fn weierstrass_small_cases() {
        let ring = Zq::zp(2, 10).unwrap();
        let geo = TruncSeries::from_ints(&ring, &[1, 2, 4, 8, 16, 32], 5);
        let rep = weierstrass_export(&LSeries::new(geo, 0, "test"), None).unwrap();
        assert_eq!(rep.denominator, vec![ring.one(), ring.from_i64(-2)]);
        assert_eq!(rep.numerator, vec![ring.one()]);
        assert_eq!(rep.pole_slopes, vec![(Ratio::from_integer(1), 1)]);
        for k in 1..=5 {
            assert_eq!(rep.reconstructed[k], ring.from_i64(1 << k));
        }
        assert!(rep.matches);
        // (1 - t)/(1 - 2t) = 1 + t + 2t^2 + 4t^3 + ..
        let s = TruncSeries::from_ints(&ring, &[1, 1, 2, 4, 8, 16], 5);
        let rep = weierstrass_export(&LSeries::new(s, 0, "test"), None).unwrap();
        for k in 1..=5 {
            assert_eq!(rep.reconstructed[k], ring.from_i64((1 << k) - 1));
        }
        assert!(rep.matches);
        let short = TruncSeries::from_ints(&ring, &[1, 3], 1);
        assert!(matches!(weierstrass_export(&LSeries::new(short, 0, "t"), None), Err(Error::InsufficientDegree(1))));
    }
}
