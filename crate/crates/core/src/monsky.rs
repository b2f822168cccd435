//! Dwork operators `ψ ∘ G` on the monomial bases of `A^1` and `G_m`, their
//! Fredholm determinants, and the trace formula against the Euler product.
//!
//! Block 1 acts on functions `t^j` and carries the factor `q` of the trace
//! map. Block 0 acts on one-forms written as `t^j dt/t` (`j >= 1` on `A^1`).
//! Both take `t^k` to the coefficient of `t^{qj}` in `G t^k`, so the entry
//! at `(j, k)` is `G_{qj-k}`, times `q` on block 1. With this normalization
//! `L(X, M, t) = det(1 - t φ_0) / det(1 - t φ_1)`.

use num_rational::Ratio;
use rayon::prelude::*;

use crate::dwork::splitting_function;
use crate::error::{Error, Result};
use crate::fmodule::{FModule, View};
use crate::linalg::Matrix;
use crate::lseries::{l_euler, IdentityCheck, LSeries};
use crate::newton::Slope;
use crate::padic::series::TruncSeries;
use crate::padic::{Zq, ZqElement};

/// Largest operator dimension (basis size times rank) we assemble.
pub const MAX_BASIS: usize = 1200;

/// Extra basis exponents used for the stability recheck.
pub const DELTA_B: usize = 16;

const GUARD: usize = 2;

/// `B = q (D + ceil(N q / (q - 1))) + guard`.
pub fn default_bound(q: u64, degree: usize, n: u32) -> usize {
    let q = q as usize;
    q * (degree + (n as usize * q).div_ceil(q - 1)) + GUARD
}

/// Which variety the operator lives on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Line {
    Affine,
    Torus,
}

fn line_of(m: &FModule) -> Result<Line> {
    let base = m.base();
    let x = &base.variety;
    if x.ambient_dim() != 1 || !x.equations().is_empty() {
        return Err(Error::UnsupportedBase("Dwork operators are built only on A^1 and G_m".into()));
    }
    if !base.lift.is_standard() {
        return Err(Error::UnsupportedBase("Dwork operators need the lift t -> t^q".into()));
    }
    match x.inverted() {
        None => Ok(Line::Affine),
        Some(g) => {
            let mut terms = g.terms();
            match (terms.next(), terms.next()) {
                (Some((e, &c)), None) if e[0] == 1 && c == 1 => Ok(Line::Torus),
                _ => Err(Error::UnsupportedBase("only x may be inverted".into())),
            }
        }
    }
}

/// A matrix of Laurent series `t^lo S_ij(t)`, known up to `t^{lo + deg}`.
struct Laurent {
    rank: usize,
    lo: i64,
    entries: Vec<TruncSeries>,
}

impl Laurent {
    fn coeff(&self, i: usize, j: usize, k: i64) -> Option<&ZqElement> {
        let s = &self.entries[i * self.rank + j];
        let idx = k - self.lo;
        (idx >= 0 && idx as usize <= s.degree()).then(|| s.coeff(idx as usize))
    }

    fn kron(&self, o: &Laurent, hi: i64) -> Laurent {
        let lo = self.lo + o.lo;
        let deg = (hi - lo).max(0) as usize;
        let (m1, m2) = (self.rank, o.rank);
        let m = m1 * m2;
        let mut entries = Vec::with_capacity(m * m);
        for i1 in 0..m1 {
            for i2 in 0..m2 {
                for j1 in 0..m1 {
                    for j2 in 0..m2 {
                        let a = self.entries[i1 * m1 + j1].truncate(deg);
                        let b = o.entries[i2 * m2 + j2].truncate(deg);
                        entries.push((i1 * m2 + i2, j1 * m2 + j2, &a * &b));
                    }
                }
            }
        }
        entries.sort_by_key(|(i, j, _)| i * m + j);
        Laurent { rank: m, lo, entries: entries.into_iter().map(|(_, _, s)| s).collect() }
    }
}

fn pad(s: &TruncSeries, deg: usize) -> TruncSeries {
    if s.degree() >= deg {
        s.truncate(deg)
    } else {
        TruncSeries::from_coeffs(s.ring(), s.coeffs().to_vec(), deg)
    }
}

/// The Frobenius matrix of `m` (untwisted) as Laurent series in `t`, up to `t^hi`.
fn expand(m: &FModule, ring: &Zq, hi: i64) -> Result<Laurent> {
    match m.view() {
        View::Matrix(num, den) => {
            let lo = den.iter().map(|&d| -(d as i64)).min().unwrap_or(0).min(0);
            let deg = (hi - lo).max(0) as usize;
            let entries = num
                .iter()
                .zip(den)
                .map(|(f, &d)| {
                    let mut s = TruncSeries::zero(ring, deg);
                    for (e, &c) in f.terms() {
                        let idx = e[0] as i64 - d as i64 - lo;
                        if idx as usize <= deg {
                            let x = s.coeff(idx as usize) + &ring.from_i128(c);
                            s.set(idx as usize, x);
                        }
                    }
                    s
                })
                .collect();
            Ok(Laurent { rank: m.rank(), lo, entries })
        }
        View::Character(w) => {
            let x = &m.base().variety;
            let deg = hi.max(0) as usize;
            let e = splitting_function(x.p(), x.a(), m.base().n)?;
            let es = e.series().map_ring(ring, |c| ring.embed(c))?;
            let mut acc = TruncSeries::one(ring, deg);
            for (exps, &c) in w.terms() {
                let k = exps[0] as usize;
                let factor = if k == 0 {
                    let v = e.eval(&ring.one())?;
                    let mut s = TruncSeries::zero(ring, deg);
                    s.set(0, v);
                    s
                } else {
                    pad(&es, deg).subst_power(k)
                };
                let factor = factor.pow_i(c as i64)?;
                acc = &acc * &factor;
            }
            Ok(Laurent { rank: 1, lo: 0, entries: vec![acc] })
        }
        View::Functor => Err(Error::UnsupportedBase("symmetric and exterior powers have no operator expansion".into())),
        View::Tensor(a, b) => {
            let (la, lb) = (expand(a, ring, hi)?, expand(b, ring, hi)?);
            // each factor must reach hi - lo_other once multiplied
            let la = if lb.lo < 0 { expand(a, ring, hi - lb.lo)? } else { la };
            let lb = if la.lo < 0 { expand(b, ring, hi - la.lo)? } else { lb };
            Ok(la.kron(&lb, hi))
        }
    }
}

/// Truncation of `φ_i` to the monomials `t^j` with `|j| <= B`.
#[derive(Clone, Debug)]
pub struct DworkOperatorMatrix {
    pub block: usize,
    pub bound: usize,
    pub rank: usize,
    /// Exponent `j` of each basis vector, repeated `rank` times.
    pub exponents: Vec<i64>,
    pub matrix: Matrix,
    /// Least `v_p(entry) / (j - k/q)` over entries with `qj > k`.
    pub decay_rate: Option<Slope>,
    module: FModule,
}

impl DworkOperatorMatrix {
    pub fn module(&self) -> &FModule {
        &self.module
    }

    /// Every entry of block `i` is divisible by `p^i`.
    pub fn divisibility_holds(&self) -> bool {
        let e = self.matrix.ring().e() * self.block as u32;
        let n = self.matrix.rows();
        (0..n).all(|r| (0..n).all(|c| self.matrix.get(r, c).valuation() >= e))
    }
}

pub fn dwork_operator(m: &FModule, block: usize, bound: usize) -> Result<DworkOperatorMatrix> {
    if block > 1 {
        return Err(Error::InvalidInput(format!("operator block must be 0 or 1, got {block}")));
    }
    let line = line_of(m)?;
    let x = &m.base().variety;
    let q = x.q() as i64;
    let b = bound as i64;
    let (lo, hi) = match line {
        Line::Affine => (1 - block as i64, b),
        Line::Torus => (-b, b),
    };
    let rank = m.rank();
    let len = (hi - lo + 1).max(0) as usize;
    let dim = len.checked_mul(rank).filter(|&d| d <= MAX_BASIS).ok_or_else(|| {
        Error::BasisOverflow(format!("{len} monomials of rank {rank} exceed the cap {MAX_BASIS}"))
    })?;
    let ring = m.scalar_ring()?;
    let g = expand(m, &ring, q * hi - lo)?;
    let a = x.a();
    let exponents: Vec<i64> = (lo..=hi).flat_map(|j| std::iter::repeat_n(j, rank)).collect();
    let rows: Vec<Vec<ZqElement>> = (0..dim)
        .into_par_iter()
        .map(|r| {
            let (j, al) = (exponents[r], r % rank);
            (0..dim)
                .map(|c| {
                    let (k, be) = (exponents[c], c % rank);
                    match g.coeff(al, be, q * j - k) {
                        Some(v) if block == 1 => v.mul_p_pow(a),
                        Some(v) => v.clone(),
                        None => ring.zero(),
                    }
                })
                .collect()
        })
        .collect();
    let matrix = Matrix::from_rows(&ring, rows);
    let e = ring.e() as i64;
    let mut decay_rate: Option<Slope> = None;
    for r in 0..dim {
        for c in 0..dim {
            let n = q * exponents[r] - exponents[c];
            let v = matrix.get(r, c);
            if n > 0 && !v.is_zero() {
                let rate = Ratio::new(q * v.valuation() as i64, e * n);
                decay_rate = Some(decay_rate.map_or(rate, |d| d.min(rate)));
            }
        }
    }
    Ok(DworkOperatorMatrix { block, bound, rank, exponents, matrix, decay_rate, module: m.clone() })
}

/// `det(1 - t A)` modulo `t^{D+1}`.
pub fn char_series(a: &Matrix, degree: usize) -> TruncSeries {
    TruncSeries::from_coeffs(a.ring(), a.charpoly_rev(degree), degree)
}

#[derive(Clone, Debug)]
pub struct FredholmSeries {
    pub series: TruncSeries,
    pub bound: usize,
    pub recheck_bound: usize,
    /// Precision at which the two truncations agree.
    pub agreement: u32,
    pub stable: bool,
}

/// `det(1 - t φ_i)` to degree `D`, recomputed at `B + ΔB`.
pub fn fredholm_det(op: &DworkOperatorMatrix, degree: usize) -> Result<FredholmSeries> {
    let series = char_series(&op.matrix, degree);
    let recheck_bound = op.bound + DELTA_B;
    let wider = dwork_operator(&op.module, op.block, recheck_bound)?;
    let other = char_series(&wider.matrix, degree);
    let need = series.min_prec().min(other.min_prec());
    let agreement = series.agreement(&other, degree);
    if agreement < need {
        return Err(Error::Unstable { b1: op.bound, b2: recheck_bound });
    }
    Ok(FredholmSeries { series, bound: op.bound, recheck_bound, agreement, stable: true })
}

#[derive(Clone, Debug)]
pub struct TraceFormulaReport {
    pub euler: LSeries,
    pub trace: LSeries,
    pub forms: FredholmSeries,
    pub functions: FredholmSeries,
    pub check: IdentityCheck,
}

/// Compares the Euler product with `det(1 - t φ_0) / det(1 - t φ_1)`.
/// The twist only rescales `t`, so the operators are built untwisted.
pub fn trace_formula_check(m: &FModule, degree: usize, bound: usize, budget: u128) -> Result<TraceFormulaReport> {
    let forms = fredholm_det(&dwork_operator(m, 0, bound)?, degree)?;
    let functions = fredholm_det(&dwork_operator(m, 1, bound)?, degree)?;
    let ratio = &forms.series * &functions.series.inv()?;
    let trace = LSeries::new(ratio, m.twist_exponent(), "trace formula");
    let euler = l_euler(m, degree, budget)?;
    let check = euler.check_equal(&trace, "L = det(1 - t phi_0) / det(1 - t phi_1)")?;
    Ok(TraceFormulaReport { euler, trace, forms, functions, check })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffield::{AffineVariety, MPoly, DEFAULT_BUDGET};
    use crate::fmodule::Base;

    fn a1(p: u64, n: u32) -> std::sync::Arc<Base> {
        Base::standard(AffineVariety::affine_space(p, 1, 1).unwrap(), n).unwrap()
    }

    fn gm(p: u64, n: u32) -> std::sync::Arc<Base> {
        Base::standard(AffineVariety::gm(p, 1).unwrap(), n).unwrap()
    }

    fn rows(r: &[&[&str]]) -> Vec<Vec<String>> {
        r.iter().map(|row| row.iter().map(|s| s.to_string()).collect()).collect()
    }

    #[test]
    fn trivial_on_the_line() {
        for p in [2u64, 3] {
            let m = FModule::trivial(&a1(p, 6));
            let forms = fredholm_det(&dwork_operator(&m, 0, 20).unwrap(), 4).unwrap();
            let funcs = fredholm_det(&dwork_operator(&m, 1, 20).unwrap(), 4).unwrap();
            let ring = m.scalar_ring().unwrap();
            assert_eq!(forms.series, TruncSeries::one(&ring, 4));
            assert_eq!(funcs.series, TruncSeries::from_ints(&ring, &[1, -(p as i64)], 4));
            let r = trace_formula_check(&m, 4, 20, DEFAULT_BUDGET).unwrap();
            assert!(r.check.holds, "{:?}", r.check);
        }
    }

    #[test]
    fn divisibility_and_decay() {
        let m = FModule::character(&a1(3, 4), MPoly::var(1, 0)).unwrap();
        let op1 = dwork_operator(&m, 1, 12).unwrap();
        assert!(op1.divisibility_holds());
        let op0 = dwork_operator(&m, 0, 12).unwrap();
        assert!(op0.divisibility_holds());
        // v_p(e_n) >= n (p-1)/(pq) for the coefficients of E(t)
        assert!(op0.decay_rate.unwrap() >= Ratio::new(2, 3));
    }

    #[test]
    fn zero_and_diagonal_series() {
        let ring = Zq::zp(3, 6).unwrap();
        let z = Matrix::zeros(&ring, 5, 5);
        assert_eq!(char_series(&z, 3), TruncSeries::one(&ring, 3));
        let c = ring.from_i64(3);
        let d: Vec<ZqElement> = (1..=6).map(|k| c.pow(k)).collect();
        let got = char_series(&Matrix::diagonal(&ring, &d), 4);
        let want = d.iter().fold(TruncSeries::one(&ring, 4), |acc, x| &acc * &TruncSeries::one_minus(x, 4));
        assert_eq!(got, want);
    }

    #[test]
    fn nilpotent_module() {
        let m = FModule::parse_matrix(&a1(3, 3), &rows(&[&["27*x"]])).unwrap();
        let f = fredholm_det(&dwork_operator(&m, 0, 10).unwrap(), 3).unwrap();
        assert!(f.series.agreement(&TruncSeries::one(f.series.ring(), 3), 3) >= 3);
    }

    #[test]
    fn gauss_sum_module() {
        let m = FModule::character(&a1(3, 4), MPoly::var(1, 0)).unwrap();
        let b = default_bound(3, 4, 4);
        let r = trace_formula_check(&m, 4, b, DEFAULT_BUDGET).unwrap();
        assert!(r.check.holds, "{:?}", r.check);
    }

    #[test]
    fn rank_two_on_the_torus() {
        let m = FModule::parse_matrix(&gm(3, 4), &rows(&[&["1", "0"], &["0", "3*x"]])).unwrap();
        let r = trace_formula_check(&m, 4, default_bound(3, 4, 4), DEFAULT_BUDGET).unwrap();
        assert!(r.check.holds, "{:?}", r.check);
        let m = FModule::parse_matrix(&gm(2, 6), &rows(&[&["x"]])).unwrap();
        let r = trace_formula_check(&m, 4, 12, DEFAULT_BUDGET).unwrap();
        assert!(r.check.holds, "{:?}", r.check);
        let m = FModule::parse_matrix(&gm(5, 4), &rows(&[&["x + 5", "1 / g"], &["5", "x^2"]])).unwrap();
        let r = trace_formula_check(&m, 3, 20, DEFAULT_BUDGET).unwrap();
        assert!(r.check.holds, "{:?}", r.check);
    }

    #[test]
    fn non_prime_field() {
        let b = Base::standard(AffineVariety::gm(2, 2).unwrap(), 4).unwrap();
        let m = FModule::parse_matrix(&b, &rows(&[&["x^2 + 2"]])).unwrap();
        let r = trace_formula_check(&m, 3, 10, DEFAULT_BUDGET).unwrap();
        assert!(r.check.holds, "{:?}", r.check);
        let b = Base::standard(AffineVariety::affine_space(2, 2, 1).unwrap(), 4).unwrap();
        let m = FModule::character(&b, MPoly::var(1, 0)).unwrap();
        let r = trace_formula_check(&m, 3, default_bound(4, 3, 4), DEFAULT_BUDGET).unwrap();
        assert!(r.check.holds, "{:?}", r.check);
    }

    #[test]
    fn rejects_other_bases() {
        let x = AffineVariety::affine_space(3, 1, 2).unwrap();
        let m = FModule::trivial(&Base::standard(x, 3).unwrap());
        assert!(matches!(dwork_operator(&m, 0, 5), Err(Error::UnsupportedBase(_))));
        let m = FModule::trivial(&a1(3, 3));
        assert!(matches!(dwork_operator(&m, 0, 5000), Err(Error::BasisOverflow(_))));
    }
}
