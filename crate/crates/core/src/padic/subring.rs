//! The embedding `Z_q ⊂ Z_{q^r}` between unramified rings with different
//! default moduli, and its left inverse on the image.

use super::{Zq, ZqElement};
use crate::error::{Error, Result};
use crate::ffield::Fq;
use crate::padic::arith::{inv_mod, mul_mod, sub_mod};

#[derive(Clone, Debug)]
pub struct Subring {
    small: Zq,
    big: Zq,
    // images of 1, T, .., T^{a-1}
    basis: Vec<ZqElement>,
    // rows of a left inverse of the basis matrix (a × F)
    left_inv: Vec<Vec<u64>>,
}

impl Subring {
    /// `small` and `big` must share `p`, `N` and `e`, with `f(small) | f(big)`.
    pub fn new(small: &Zq, big: &Zq) -> Result<Subring> {
        if small.p() != big.p() || small.n() != big.n() || small.e() != big.e() || !big.f().is_multiple_of(small.f()) {
            return Err(Error::Mismatch("incompatible rings for a subring embedding".into()));
        }
        let (a, ff) = (small.f() as usize, big.f() as usize);
        let p = small.p();
        let basis = if a == 1 {
            vec![big.one()]
        } else {
            let fs = Fq::get(p, a as u32)?;
            let fb = Fq::get(p, ff as u32)?;
            let table = fb.embedding_from(&fs)?;
            let rho = table[p as usize];
            let m = small.modulus();
            let eval = |x: &ZqElement, poly: &[u64]| {
                poly.iter().rev().fold(big.zero(), |acc, &c| &(&acc * x) + &big.from_u64(c))
            };
            let deriv: Vec<u64> = m.iter().enumerate().skip(1).map(|(i, &c)| c * i as u64).collect();
            let mut r = big.from_residue(&fb.digits(rho));
            for _ in 0..64 {
                let next = &r - &(&eval(&r, m) * &eval(&r, &deriv).inv()?);
                if next == r {
                    break;
                }
                r = next;
            }
            let mut out = vec![big.one()];
            for j in 1..a {
                out.push(&out[j - 1] * &r);
            }
            out
        };
        let left_inv = left_inverse(&basis, a, ff, big.pn(), p)?;
        Ok(Subring { small: small.clone(), big: big.clone(), basis, left_inv })
    }

    pub fn small(&self) -> &Zq {
        &self.small
    }

    pub fn big(&self) -> &Zq {
        &self.big
    }

    pub fn embed(&self, x: &ZqElement) -> ZqElement {
        let (a, e) = (self.small.f() as usize, self.small.e() as usize);
        let ff = self.big.f() as usize;
        let pn = self.big.pn();
        let mut c = vec![0u64; e * ff];
        for i in 0..e {
            for j in 0..a {
                let s = x.coeff(i, j);
                if s == 0 {
                    continue;
                }
                for k in 0..ff {
                    let b = self.basis[j].coeff(0, k);
                    c[i * ff + k] = (c[i * ff + k] + mul_mod(s, b, pn)) % pn;
                }
            }
        }
        self.big.from_parts(&c, x.prec())
    }

    /// The preimage of `x`, or `None` when `x` is not in the image.
    pub fn project(&self, x: &ZqElement) -> Option<ZqElement> {
        let (a, e) = (self.small.f() as usize, self.small.e() as usize);
        let pn = self.big.pn();
        let mut c = vec![0u64; e * a];
        for i in 0..e {
            for (j, row) in self.left_inv.iter().enumerate() {
                let mut acc = 0u64;
                for (k, &l) in row.iter().enumerate() {
                    acc = (acc + mul_mod(l, x.coeff(i, k), pn)) % pn;
                }
                c[i * a + j] = acc;
            }
        }
        let y = self.small.from_parts(&c, x.prec());
        (self.embed(&y).agreement(x) >= x.prec()).then_some(y)
    }
}

/// Left inverse of the `F × a` matrix whose columns are the coordinates of
/// `basis`, through a unit `a × a` minor found by elimination mod `p^N`.
fn left_inverse(basis: &[ZqElement], a: usize, ff: usize, pn: u64, p: u64) -> Result<Vec<Vec<u64>>> {
    // augmented rows: [B^T | I_a], reduce B^T (a × F) to pick pivots
    let mut bt: Vec<Vec<u64>> = (0..a).map(|j| (0..ff).map(|k| basis[j].coeff(0, k)).collect()).collect();
    let mut aug: Vec<Vec<u64>> = (0..a).map(|j| (0..a).map(|i| (i == j) as u64).collect()).collect();
    let mut pivots = Vec::with_capacity(a);
    let mut row = 0;
    for col in 0..ff {
        if row == a {
            break;
        }
        let Some(pr) = (row..a).find(|&r| !bt[r][col].is_multiple_of(p)) else { continue };
        bt.swap(row, pr);
        aug.swap(row, pr);
        let inv = inv_mod(bt[row][col], pn).expect("unit pivot");
        for x in bt[row].iter_mut() {
            *x = mul_mod(*x, inv, pn);
        }
        for x in aug[row].iter_mut() {
            *x = mul_mod(*x, inv, pn);
        }
        for r in 0..a {
            if r != row && bt[r][col] != 0 {
                let fct = bt[r][col];
                for k in 0..ff {
                    bt[r][k] = sub_mod(bt[r][k], mul_mod(fct, bt[row][k], pn), pn);
                }
                for k in 0..a {
                    aug[r][k] = sub_mod(aug[r][k], mul_mod(fct, aug[row][k], pn), pn);
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    if pivots.len() != a {
        return Err(Error::Mismatch("subring basis is degenerate".into()));
    }
    // now E B^T = R with R[:, pivots] = I, E = aug; x = B c gives x[pivots] = R[:,pivots]^T ... use
    // c_j = Σ_i (E^T)_{j,i} x_{pivot_i}
    let mut out = vec![vec![0u64; ff]; a];
    for j in 0..a {
        for (i, &pc) in pivots.iter().enumerate() {
            out[j][pc] = aug[i][j];
        }
    }
    Ok(out)
}
