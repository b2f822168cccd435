//! Teichmüller lifts of closed points relative to a Frobenius lift
//! `F(t_i) ≡ t_i^q (mod p)` on the ambient polynomial ring.

use crate::error::{Error, Result};
use crate::ffield::{AffineVariety, ClosedPoint, Fq, FqElem, MPoly};
use crate::padic::{Zq, ZqElement};

#[derive(Clone, Debug, PartialEq)]
pub struct FrobeniusLift {
    images: Vec<MPoly>,
    standard: bool,
}

impl FrobeniusLift {
    /// `t_i ↦ t_i^q`.
    pub fn standard(d: usize, q: u64) -> FrobeniusLift {
        let images = (0..d)
            .map(|i| {
                let mut e = vec![0u32; d];
                e[i] = q as u32;
                MPoly::monomial(e, 1)
            })
            .collect();
        FrobeniusLift { images, standard: true }
    }

    /// Checks `F(t_i) - t_i^q ≡ 0 (mod p)` coefficientwise.
    pub fn new(images: Vec<MPoly>, p: u64, q: u64) -> Result<FrobeniusLift> {
        let d = images.len();
        let std = FrobeniusLift::standard(d, q);
        for (i, (img, s)) in images.iter().zip(&std.images).enumerate() {
            if img.nvars() != d {
                return Err(Error::InvalidInput("Frobenius image has the wrong variable count".into()));
            }
            if !img.checked_add(&s.neg())?.reduce(p).is_zero() {
                return Err(Error::InvalidFrobeniusLift(i));
            }
        }
        let standard = images == std.images;
        Ok(FrobeniusLift { images, standard })
    }

    pub fn images(&self) -> &[MPoly] {
        &self.images
    }

    pub fn is_standard(&self) -> bool {
        self.standard
    }

    pub fn apply(&self, ring: &Zq, y: &[ZqElement]) -> Vec<ZqElement> {
        self.images.iter().map(|f| f.eval_zq(ring, y)).collect()
    }
}

/// A Teichmüller point of degree `r` with coordinates in `Z_{q^r}`.
#[derive(Clone, Debug, PartialEq)]
pub struct TeichPoint {
    pub degree: u32,
    pub coords: Vec<ZqElement>,
}

impl TeichPoint {
    pub fn ring(&self) -> &Zq {
        self.coords[0].ring()
    }

    /// Coordinates after `σ^{a j}`, the `q^j`-th Frobenius conjugate.
    pub fn conjugate(&self, a: u32, j: u32) -> Vec<ZqElement> {
        self.coords.iter().map(|c| c.frobenius_pow((a * j) as i64)).collect()
    }
}

/// Ring `Z_{q^r}` at precision `n` whose residue field matches `F_{q^r}`.
pub fn point_ring(x: &AffineVariety, r: u32, n: u32) -> Result<Zq> {
    Zq::cached(x.p(), n, x.a() * r, 1)
}

/// Naive lift of a field element to `ring` (same residue field).
pub fn lift_elem(ring: &Zq, f: &Fq, c: FqElem) -> ZqElement {
    ring.from_residue(&f.digits(c))
}

/// The fixed point of `y ↦ σ^{-a}(F(y))` above `x`, starting from `start`
/// (or the naive lift).
pub fn teich_lift_from(
    x: &AffineVariety,
    pt: &ClosedPoint,
    lift: &FrobeniusLift,
    n: u32,
    start: Option<Vec<ZqElement>>,
) -> Result<TeichPoint> {
    let r = pt.degree;
    let f = x.field(r)?;
    if pt.rep.len() != x.ambient_dim() || lift.images.len() != x.ambient_dim() || !x.contains(&f, &pt.rep) {
        return Err(Error::NotOnVariety);
    }
    let ring = point_ring(x, r, n)?;
    let a = x.a() as i64;
    let mut y: Vec<ZqElement> = match start {
        Some(s) => s,
        None => pt.rep.iter().map(|&c| lift_elem(&ring, &f, c)).collect(),
    };
    let cap = ring.cap();
    let mut last = 0u32;
    let mut done = false;
    for _ in 0..4 * n.max(1) as usize {
        let next: Vec<ZqElement> = lift.apply(&ring, &y).iter().map(|v| v.frobenius_pow(-a)).collect();
        let agree = next.iter().zip(&y).map(|(u, v)| u.agreement(v)).min().unwrap_or(cap);
        y = next;
        if agree >= cap {
            done = true;
            break;
        }
        if agree <= last && last > 0 {
            return Err(Error::NonContraction(last as usize));
        }
        last = agree;
    }
    if !done {
        return Err(Error::NonContraction(4 * n as usize));
    }
    if let Some(g) = x.inverted() {
        if !g.eval_zq(&ring, &lift.apply(&ring, &y)).is_unit() {
            return Err(Error::NotOnVariety);
        }
    }
    Ok(TeichPoint { degree: r, coords: y })
}

pub fn teich_lift(x: &AffineVariety, pt: &ClosedPoint, lift: &FrobeniusLift, n: u32) -> Result<TeichPoint> {
    teich_lift_from(x, pt, lift, n, None)
}

/// `F(τ) = σ^a(τ)` coordinatewise at full precision.
pub fn square_commutes(tp: &TeichPoint, lift: &FrobeniusLift, a: u32) -> bool {
    let ring = tp.ring();
    let lhs = lift.apply(ring, &tp.coords);
    lhs.iter().zip(&tp.coords).all(|(l, c)| *l == c.frobenius_pow(a as i64))
}
