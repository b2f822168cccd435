//! F-modules over `A = Z_p[t][1/g]` given by a Frobenius matrix, together
//! with the functors used to build new ones and their fibers at closed points.

use std::sync::Arc;

use crate::dwork::splitting_function;
use crate::error::{Error, Result};
use crate::ffield::{AffineVariety, ClosedPoint, MPoly};
use crate::linalg::{binomial, Matrix};
use crate::padic::{Subring, Zq, ZqElement};
use crate::teichmuller::{teich_lift, FrobeniusLift};

/// Largest rank a functor may produce.
pub const MAX_RANK: usize = 256;

/// The variety, Frobenius lift and working precision shared by a family of
/// modules.
#[derive(Debug, PartialEq)]
pub struct Base {
    pub variety: AffineVariety,
    pub lift: FrobeniusLift,
    pub n: u32,
}

impl Base {
    pub fn new(variety: AffineVariety, lift: FrobeniusLift, n: u32) -> Result<Arc<Base>> {
        if lift.images().len() != variety.ambient_dim() {
            return Err(Error::InvalidInput("Frobenius lift and variety disagree on dimension".into()));
        }
        if n == 0 {
            return Err(Error::InvalidInput("precision must be positive".into()));
        }
        Ok(Arc::new(Base { variety, lift, n }))
    }

    pub fn standard(variety: AffineVariety, n: u32) -> Result<Arc<Base>> {
        let lift = FrobeniusLift::standard(variety.ambient_dim(), variety.q());
        Base::new(variety, lift, n)
    }
}

#[derive(Clone, Debug)]
enum Node {
    /// Entries `num / g^den`, row-major.
    Matrix { num: Vec<MPoly>, den: Vec<u32> },
    /// Rank one, Frobenius `E(W)/E(W^σ)` read off monomial by monomial.
    Character(MPoly),
    Sym(Box<FModule>, usize),
    Ext(Box<FModule>, usize),
    Tensor(Box<FModule>, Box<FModule>),
}

/// What the Dwork operator construction needs to see of a module.
pub(crate) enum View<'a> {
    Matrix(&'a [MPoly], &'a [u32]),
    Character(&'a MPoly),
    Functor,
    Tensor(&'a FModule, &'a FModule),
}

#[derive(Clone, Debug)]
pub struct FModule {
    base: Arc<Base>,
    node: Node,
    rank: usize,
    twist: i64,
}

/// `Φ_x` at a closed point, its reverse characteristic polynomial (without
/// the twist) and the twist exponent `α r`.
#[derive(Clone, Debug)]
pub struct FiberFrobenius {
    pub point: ClosedPoint,
    pub matrix: Matrix,
    pub charpoly: Vec<ZqElement>,
    pub twist_exp: i64,
}

impl FiberFrobenius {
    /// Charpoly with eigenvalues scaled by `p^{α r}`; needs `α >= 0`.
    pub fn twisted_charpoly(&self) -> Result<Vec<ZqElement>> {
        if self.twist_exp < 0 {
            return Err(Error::InvalidInput("negative twist has no integral charpoly".into()));
        }
        let s = self.twist_exp as u32;
        Ok(self.charpoly.iter().enumerate().map(|(i, c)| c.mul_p_pow(s * i as u32)).collect())
    }
}

impl FModule {
    /// Entries `num[i] / g^den[i]` in row-major order.
    pub fn from_matrix(base: &Arc<Base>, rank: usize, num: Vec<MPoly>, den: Vec<u32>) -> Result<FModule> {
        let d = base.variety.ambient_dim();
        if rank == 0 || num.len() != rank * rank || den.len() != rank * rank {
            return Err(Error::InvalidInput(format!("expected {} matrix entries", rank * rank)));
        }
        if num.iter().any(|f| f.nvars() != d) {
            return Err(Error::InvalidInput("matrix entry has the wrong variable count".into()));
        }
        if base.variety.inverted().is_none() && den.iter().any(|&e| e > 0) {
            return Err(Error::InvalidInput("denominator given but nothing is inverted".into()));
        }
        Ok(FModule { base: base.clone(), node: Node::Matrix { num, den }, rank, twist: 0 })
    }

    /// Parses rows of `"poly"` or `"poly / g^e"` entries over the base variables.
    pub fn parse_matrix(base: &Arc<Base>, rows: &[Vec<String>]) -> Result<FModule> {
        let rank = rows.len();
        let vars = base.variety.vars();
        let mut num = Vec::new();
        let mut den = Vec::new();
        for row in rows {
            if row.len() != rank {
                return Err(Error::InvalidInput("matrix must be square".into()));
            }
            for s in row {
                let (n, e) = match s.split_once('/') {
                    Some((n, d)) => (n, parse_den(d.trim())?),
                    None => (s.as_str(), 0),
                };
                num.push(MPoly::parse(n, vars)?);
                den.push(e);
            }
        }
        FModule::from_matrix(base, rank, num, den)
    }

    /// The unit object, rank one with `C = (1)`.
    pub fn trivial(base: &Arc<Base>) -> FModule {
        let d = base.variety.ambient_dim();
        FModule { base: base.clone(), node: Node::Matrix { num: vec![MPoly::constant(d, 1)], den: vec![0] }, rank: 1, twist: 0 }
    }

    /// The rank-one module attached to `ψ(W)`; needs the standard lift.
    pub fn character(base: &Arc<Base>, w: MPoly) -> Result<FModule> {
        if !base.lift.is_standard() {
            return Err(Error::InvalidInput("character modules need the standard Frobenius lift".into()));
        }
        if w.nvars() != base.variety.ambient_dim() {
            return Err(Error::InvalidInput("W has the wrong variable count".into()));
        }
        Ok(FModule { base: base.clone(), node: Node::Character(w), rank: 1, twist: 0 })
    }

    pub fn base(&self) -> &Arc<Base> {
        &self.base
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn twist_exponent(&self) -> i64 {
        self.twist
    }

    /// Entries and denominators when the module is a plain matrix.
    pub fn matrix_entries(&self) -> Option<(&[MPoly], &[u32])> {
        match &self.node {
            Node::Matrix { num, den } => Some((num, den)),
            _ => None,
        }
    }

    pub fn character_polynomial(&self) -> Option<&MPoly> {
        match &self.node {
            Node::Character(w) => Some(w),
            _ => None,
        }
    }

    pub(crate) fn view(&self) -> View<'_> {
        match &self.node {
            Node::Matrix { num, den } => View::Matrix(num, den),
            Node::Character(w) => View::Character(w),
            Node::Sym(..) | Node::Ext(..) => View::Functor,
            Node::Tensor(a, b) => View::Tensor(a, b),
        }
    }

    fn has_character(&self) -> bool {
        match &self.node {
            Node::Matrix { .. } => false,
            Node::Character(_) => true,
            Node::Sym(m, _) | Node::Ext(m, _) => m.has_character(),
            Node::Tensor(a, b) => a.has_character() || b.has_character(),
        }
    }

    fn ramification(&self) -> u32 {
        if self.has_character() {
            (self.base.variety.p() - 1) as u32
        } else {
            1
        }
    }

    /// `W(F_q)` at precision `N`, ramified by `π*` when characters occur.
    pub fn scalar_ring(&self) -> Result<Zq> {
        let x = &self.base.variety;
        Zq::cached(x.p(), self.base.n, x.a(), self.ramification())
    }

    /// Coefficient ring of fibers at points of degree `r`.
    pub fn point_ring(&self, r: u32) -> Result<Zq> {
        let x = &self.base.variety;
        Zq::cached(x.p(), self.base.n, x.a() * r, self.ramification())
    }

    fn checked_rank(rank: usize) -> Result<usize> {
        if rank > MAX_RANK {
            return Err(Error::RankOverflow { rank, cap: MAX_RANK });
        }
        Ok(rank)
    }

    pub fn sym_power(&self, k: usize) -> Result<FModule> {
        let rank = FModule::checked_rank(binomial(self.rank + k - 1, k))?;
        let twist = self.twist * k as i64;
        Ok(FModule { base: self.base.clone(), node: Node::Sym(Box::new(self.clone()), k), rank, twist })
    }

    pub fn ext_power(&self, k: usize) -> Result<FModule> {
        if k > self.rank {
            return Err(Error::InvalidInput(format!("exterior power {k} exceeds rank {}", self.rank)));
        }
        let rank = FModule::checked_rank(binomial(self.rank, k))?;
        let twist = self.twist * k as i64;
        Ok(FModule { base: self.base.clone(), node: Node::Ext(Box::new(self.clone()), k), rank, twist })
    }

    pub fn tensor(&self, o: &FModule) -> Result<FModule> {
        if self.base != o.base {
            return Err(Error::Mismatch("tensor factors live over different bases".into()));
        }
        let rank = FModule::checked_rank(self.rank * o.rank)?;
        let twist = self.twist + o.twist;
        let node = Node::Tensor(Box::new(self.clone()), Box::new(o.clone()));
        Ok(FModule { base: self.base.clone(), node, rank, twist })
    }

    /// Pullback along the projection from `base`, whose variables extend the
    /// current ones by trailing coordinates.
    pub fn pullback(&self, base: &Arc<Base>) -> Result<FModule> {
        let (d0, d1) = (self.base.variety.ambient_dim(), base.variety.ambient_dim());
        if d1 < d0 || base.variety.p() != self.base.variety.p() || base.variety.a() != self.base.variety.a() {
            return Err(Error::Mismatch("pullback target does not extend the base".into()));
        }
        let ext = |f: &MPoly| f.extend_vars(d1 - d0);
        let node = match &self.node {
            Node::Matrix { num, den } => Node::Matrix { num: num.iter().map(ext).collect(), den: den.clone() },
            Node::Character(w) => {
                if !base.lift.is_standard() {
                    return Err(Error::InvalidInput("character modules need the standard Frobenius lift".into()));
                }
                Node::Character(ext(w))
            }
            Node::Sym(m, k) => Node::Sym(Box::new(m.pullback(base)?), *k),
            Node::Ext(m, k) => Node::Ext(Box::new(m.pullback(base)?), *k),
            Node::Tensor(a, b) => Node::Tensor(Box::new(a.pullback(base)?), Box::new(b.pullback(base)?)),
        };
        Ok(FModule { base: base.clone(), node, ..self.clone() })
    }

    /// Multiplies Frobenius by `p^α`.
    pub fn twist(&self, alpha: i64) -> FModule {
        FModule { twist: self.twist + alpha, ..self.clone() }
    }

    /// Untwisted `Φ_x = C_{r-1} ⋯ C_0` with `C_j = σ^{aj}(C(τ))`, for `x`
    /// taken as a point of degree `pt.degree` (a point of `X(F_{q^r})` with
    /// smaller orbit gives the corresponding power of its Frobenius).
    pub fn fiber_matrix(&self, pt: &ClosedPoint) -> Result<Matrix> {
        let x = &self.base.variety;
        let tp = teich_lift(x, pt, &self.base.lift, self.base.n)?;
        let ring = self.point_ring(pt.degree)?;
        let coords = tp.coords.iter().map(|c| ring.embed(c)).collect::<Result<Vec<_>>>()?;
        self.fiber_at(&ring, &coords, pt.degree)
    }

    fn fiber_at(&self, ring: &Zq, tau: &[ZqElement], r: u32) -> Result<Matrix> {
        let a = self.base.variety.a();
        let orbit = |c: Matrix| {
            let mut phi = c.clone();
            for j in 1..r {
                let cj = c.map(|v| v.frobenius_pow((a * j) as i64));
                phi = cj.mul(&phi);
            }
            phi
        };
        match &self.node {
            Node::Matrix { num, den } => {
                let ginv = match self.base.variety.inverted() {
                    Some(g) if den.iter().any(|&e| e > 0) => {
                        let gv = g.eval_zq(ring, tau);
                        if gv.valuation() >= gv.prec() {
                            return Err(Error::PrecisionExhausted("denominator vanishes at the point".into()));
                        }
                        Some(gv.inv()?)
                    }
                    _ => None,
                };
                let m = self.rank;
                let mut c = Matrix::zeros(ring, m, m);
                for i in 0..m {
                    for j in 0..m {
                        let mut v = num[i * m + j].eval_zq(ring, tau);
                        if let Some(gi) = &ginv {
                            v = &v * &gi.pow(den[i * m + j] as u64);
                        }
                        c.set(i, j, v);
                    }
                }
                Ok(orbit(c))
            }
            Node::Character(w) => {
                let v = character_value(ring, w, tau, a, self.base.n)?;
                Ok(orbit(Matrix::diagonal(ring, &[v])))
            }
            Node::Sym(m, k) => Ok(m.fiber_at(ring, tau, r)?.sym_power(*k)),
            Node::Ext(m, k) => Ok(m.fiber_at(ring, tau, r)?.ext_power(*k)),
            Node::Tensor(m1, m2) => Ok(m1.fiber_at(ring, tau, r)?.kron(&m2.fiber_at(ring, tau, r)?)),
        }
    }

    /// Fiber with its charpoly descended to the scalar ring.
    pub fn fiber(&self, pt: &ClosedPoint) -> Result<FiberFrobenius> {
        let matrix = self.fiber_matrix(pt)?;
        let sub = Subring::new(&self.scalar_ring()?, matrix.ring())?;
        let charpoly = matrix
            .charpoly_rev(self.rank)
            .iter()
            .map(|c| sub.project(c).ok_or(Error::NotFrobeniusInvariant))
            .collect::<Result<Vec<_>>>()?;
        Ok(FiberFrobenius { point: pt.clone(), matrix, charpoly, twist_exp: self.twist * pt.degree as i64 })
    }

    /// Untwisted `Tr(Φ_x)` in the scalar ring.
    pub fn fiber_trace(&self, pt: &ClosedPoint) -> Result<ZqElement> {
        let m = self.fiber_matrix(pt)?;
        let sub = Subring::new(&self.scalar_ring()?, m.ring())?;
        sub.project(&m.trace()).ok_or(Error::NotFrobeniusInvariant)
    }
}

fn parse_den(s: &str) -> Result<u32> {
    let bad = || Error::InvalidInput(format!("denominator must look like `g^e`, got `{s}`"));
    let rest = s.strip_prefix('g').ok_or_else(bad)?.trim();
    if rest.is_empty() {
        return Ok(1);
    }
    rest.strip_prefix('^').ok_or_else(bad)?.trim().parse().map_err(|_| bad())
}

/// `Π_m E(u_m)^{c_m}` over the monomials `c_m u_m` of `W` at `τ`.
fn character_value(ring: &Zq, w: &MPoly, tau: &[ZqElement], a: u32, n: u32) -> Result<ZqElement> {
    let e = splitting_function(ring.p(), a, n)?;
    let mut acc = ring.one();
    for (exps, &c) in w.terms() {
        let u = MPoly::monomial(exps.clone(), 1).eval_zq(ring, tau);
        let ev = e.eval(&u)?;
        let ev = if c < 0 { ev.inv()? } else { ev };
        acc = &acc * &ev.pow(c.unsigned_abs() as u64);
    }
    Ok(acc)
}
