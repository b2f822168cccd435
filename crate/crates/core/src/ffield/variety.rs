//! Affine varieties `{f_1 = .. = f_s = 0, g ≠ 0}` over `F_q`, their rational
//! points over `F_{q^r}` and their closed points.

use std::sync::Arc;

use rayon::prelude::*;

use super::fq::{Fq, FqElem};
use super::mpoly::MPoly;
use crate::error::{Error, Result};

/// Default cap on enumerated candidate tuples.
pub const DEFAULT_BUDGET: u128 = 10_000_000;

#[derive(Clone, Debug, PartialEq)]
pub struct AffineVariety {
    p: u64,
    a: u32,
    vars: Vec<String>,
    equations: Vec<MPoly>,
    inverted: Option<MPoly>,
}

/// A Galois orbit of points, stored as its least member over `F_{q^r}`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ClosedPoint {
    pub degree: u32,
    pub rep: Vec<FqElem>,
}

impl AffineVariety {
    /// `q = p^a`; equation coefficients are integers read in `F_p`. The
    /// inverted `g` keeps its integer coefficients, since module entries
    /// `f / g^e` are evaluated with this lift of `g`.
    pub fn new(p: u64, a: u32, vars: Vec<String>, equations: Vec<MPoly>, inverted: Option<MPoly>) -> Result<Self> {
        if !crate::padic::arith::is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if a == 0 || vars.is_empty() {
            return Err(Error::InvalidInput("need a >= 1 and at least one variable".into()));
        }
        let d = vars.len();
        if equations.iter().chain(inverted.iter()).any(|f| f.nvars() != d) {
            return Err(Error::InvalidInput("polynomial variable count does not match the variety".into()));
        }
        let equations = equations.iter().map(|f| f.reduce(p)).collect();
        Ok(AffineVariety { p, a, vars, equations, inverted })
    }

    pub fn parse(p: u64, a: u32, vars: &[&str], equations: &[&str], inverted: Option<&str>) -> Result<Self> {
        let vars: Vec<String> = vars.iter().map(|s| s.to_string()).collect();
        let eqs = equations.iter().map(|s| MPoly::parse(s, &vars)).collect::<Result<Vec<_>>>()?;
        let g = inverted.map(|s| MPoly::parse(s, &vars)).transpose()?;
        AffineVariety::new(p, a, vars, eqs, g)
    }

    pub fn affine_space(p: u64, a: u32, d: usize) -> Result<Self> {
        let vars = (0..d).map(|i| if d == 1 { "x".to_string() } else { format!("x{}", i + 1) }).collect();
        AffineVariety::new(p, a, vars, Vec::new(), None)
    }

    /// `G_m = A^1 - {0}`.
    pub fn gm(p: u64, a: u32) -> Result<Self> {
        AffineVariety::parse(p, a, &["x"], &[], Some("x"))
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn a(&self) -> u32 {
        self.a
    }

    pub fn q(&self) -> u64 {
        self.p.pow(self.a)
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn ambient_dim(&self) -> usize {
        self.vars.len()
    }

    pub fn equations(&self) -> &[MPoly] {
        &self.equations
    }

    pub fn inverted(&self) -> Option<&MPoly> {
        self.inverted.as_ref()
    }

    /// Dimension assuming the equations cut out a complete intersection.
    pub fn dimension(&self) -> usize {
        self.vars.len().saturating_sub(self.equations.len())
    }

    /// `F_{q^r}`.
    pub fn field(&self, r: u32) -> Result<Arc<Fq>> {
        Fq::get(self.p, self.a * r)
    }

    pub fn contains(&self, f: &Fq, x: &[FqElem]) -> bool {
        self.equations.iter().all(|e| e.eval_fq(f, x) == 0)
            && self.inverted.as_ref().is_none_or(|g| g.eval_fq(f, x) != 0)
    }

    fn candidates(&self, r: u32) -> u128 {
        (self.q() as u128).saturating_pow(r * self.vars.len() as u32)
    }

    /// `X(F_{q^r})` in lexicographic order of field indices.
    pub fn points_over(&self, r: u32, budget: u128) -> Result<Vec<Vec<FqElem>>> {
        let needed = self.candidates(r);
        if needed > budget {
            return Err(Error::BudgetExceeded { needed, cap: budget });
        }
        let f = self.field(r)?;
        let size = f.size() as u32;
        let d = self.vars.len();
        let mut pts: Vec<Vec<FqElem>> = (0..size)
            .into_par_iter()
            .flat_map_iter(|x0| {
                let f = f.clone();
                let mut out = Vec::new();
                let mut x = vec![0u32; d];
                x[0] = x0;
                loop {
                    if self.contains(&f, &x) {
                        out.push(x.clone());
                    }
                    let mut i = d - 1;
                    loop {
                        if i == 0 {
                            return out.into_iter();
                        }
                        x[i] += 1;
                        if x[i] < size {
                            break;
                        }
                        x[i] = 0;
                        i -= 1;
                    }
                }
            })
            .collect();
        pts.sort();
        Ok(pts)
    }

    /// `x ↦ x^q` applied coordinatewise.
    pub fn frobenius(&self, f: &Fq, x: &[FqElem]) -> Vec<FqElem> {
        x.iter().map(|&c| f.pow(c, self.q())).collect()
    }

    /// Orbit of a point of `X(F_{q^r})` under the `q`-power map.
    pub fn orbit(&self, f: &Fq, x: &[FqElem]) -> Vec<Vec<FqElem>> {
        let mut out = vec![x.to_vec()];
        loop {
            let y = self.frobenius(f, out.last().unwrap());
            if y == x {
                return out;
            }
            out.push(y);
        }
    }

    /// Closed points of degree `r` exactly.
    pub fn closed_points_of_degree(&self, r: u32, budget: u128) -> Result<Vec<ClosedPoint>> {
        let f = self.field(r)?;
        let pts = self.points_over(r, budget)?;
        let mut out: Vec<ClosedPoint> = pts
            .par_iter()
            .filter_map(|x| {
                let orb = self.orbit(&f, x);
                (orb.len() == r as usize && orb.iter().all(|y| x <= y))
                    .then(|| ClosedPoint { degree: r, rep: x.clone() })
            })
            .collect();
        out.sort();
        Ok(out)
    }

    pub fn closed_points_up_to(&self, dmax: u32, budget: u128) -> Result<Vec<ClosedPoint>> {
        let needed: u128 = (1..=dmax).map(|r| self.candidates(r)).sum();
        if needed > budget {
            return Err(Error::BudgetExceeded { needed, cap: budget });
        }
        let mut out = Vec::new();
        for r in 1..=dmax {
            out.extend(self.closed_points_of_degree(r, budget)?);
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn affine_line_counts() {
        let x = AffineVariety::affine_space(2, 1, 1).unwrap();
        assert_eq!(x.points_over(3, DEFAULT_BUDGET).unwrap().len(), 8);
        let cps = x.closed_points_up_to(2, DEFAULT_BUDGET).unwrap();
        assert_eq!(cps.iter().filter(|c| c.degree == 1).count(), 2);
        assert_eq!(cps.iter().filter(|c| c.degree == 2).count(), 1);
    }

    #[test]
    fn gm_over_f3() {
        let x = AffineVariety::gm(3, 1).unwrap();
        let cps = x.closed_points_up_to(2, DEFAULT_BUDGET).unwrap();
        assert_eq!(cps.iter().filter(|c| c.degree == 1).count(), 2);
        assert_eq!(cps.iter().filter(|c| c.degree == 2).count(), 3);
    }

    #[test]
    fn hasse_locus_is_avoided() {
        // x (x - 1) H_5(x) with H_5 = 1 + 4x + x^2
        let x = AffineVariety::parse(5, 1, &["x"], &[], Some("x*(x-1)*(1+4*x+x^2)")).unwrap();
        let pts = x.points_over(1, DEFAULT_BUDGET).unwrap();
        assert_eq!(pts, vec![vec![2], vec![3], vec![4]]);
    }

    #[test]
    fn single_equation_and_empty_variety() {
        let x = AffineVariety::parse(2, 1, &["x"], &["x"], None).unwrap();
        assert_eq!(x.points_over(1, DEFAULT_BUDGET).unwrap(), vec![vec![0]]);
        let empty = AffineVariety::parse(3, 1, &["x"], &["1"], None).unwrap();
        assert!(empty.closed_points_up_to(3, DEFAULT_BUDGET).unwrap().is_empty());
    }

    #[test]
    fn orbit_count_identity() {
        let x = AffineVariety::parse(3, 1, &["x", "y"], &["y^2 - x^3 - x - 1"], None).unwrap();
        let cps = x.closed_points_up_to(3, DEFAULT_BUDGET).unwrap();
        for r in 1..=3u32 {
            let n = x.points_over(r, DEFAULT_BUDGET).unwrap().len();
            let s: u32 = cps.iter().filter(|c| r % c.degree == 0).map(|c| c.degree).sum();
            assert_eq!(s as usize, n);
        }
    }

    #[test]
    fn budget_is_enforced() {
        let x = AffineVariety::affine_space(5, 1, 3).unwrap();
        assert!(matches!(x.points_over(2, 1000), Err(Error::BudgetExceeded { .. })));
    }
}
