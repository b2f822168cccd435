//! Newton polygons of polynomials over `Z_q[π]` and their factorization by
//! slope (Hensel lifting of the segment splitting, never root finding).

use num_rational::Ratio;

use crate::error::{Error, Result};
use crate::padic::arith::lcm;
use crate::padic::{Zq, ZqElement};

pub type Slope = Ratio<i64>;

/// Lower convex hull of `(k, v(c_k))` for `c_0 + c_1 T + ..`, with
/// valuations divided by `unit` (π-units per unit of slope).
#[derive(Clone, Debug, PartialEq)]
pub struct NewtonPolygon {
    pub vertices: Vec<(usize, Slope)>,
    pub unit: i64,
}

impl NewtonPolygon {
    /// Zero coefficients are treated as absent; see [`NewtonPolygon::checked`].
    pub fn new(coeffs: &[ZqElement], unit: i64) -> NewtonPolygon {
        let pts: Vec<(usize, i64)> = coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| (k, c.valuation() as i64))
            .collect();
        NewtonPolygon::from_points(&pts, unit)
    }

    /// Like [`NewtonPolygon::new`], but fails when a coefficient that is zero
    /// at its precision could still move the hull.
    pub fn checked(coeffs: &[ZqElement], unit: i64) -> Result<NewtonPolygon> {
        let poly = NewtonPolygon::new(coeffs, unit);
        let hull = hull_int(&nonzero_points(coeffs));
        for (k, c) in coeffs.iter().enumerate() {
            if c.is_zero() && !hull.is_empty() {
                let bound = c.prec() as i64;
                if !strictly_above(&hull, k, bound) {
                    return Err(Error::SegmentSplitFailed(format!(
                        "coefficient {k} is zero only modulo π^{bound}, too coarse to fix the polygon"
                    )));
                }
            }
        }
        Ok(poly)
    }

    pub fn from_points(pts: &[(usize, i64)], unit: i64) -> NewtonPolygon {
        let vertices = hull_int(pts).into_iter().map(|(k, v)| (k, Ratio::new(v, unit))).collect();
        NewtonPolygon { vertices, unit }
    }

    pub fn degree(&self) -> usize {
        self.vertices.last().map_or(0, |v| v.0)
    }

    /// Distinct slopes in increasing order with their horizontal lengths.
    pub fn slopes(&self) -> Vec<(Slope, usize)> {
        let mut out: Vec<(Slope, usize)> = Vec::new();
        for w in self.vertices.windows(2) {
            let len = w[1].0 - w[0].0;
            let s = (w[1].1 - w[0].1) / Ratio::from_integer(len as i64);
            match out.last_mut() {
                Some(last) if last.0 == s => last.1 += len,
                _ => out.push((s, len)),
            }
        }
        out
    }
}

fn nonzero_points(coeffs: &[ZqElement]) -> Vec<(usize, i64)> {
    coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(k, c)| (k, c.valuation() as i64)).collect()
}

fn hull_int(pts: &[(usize, i64)]) -> Vec<(usize, i64)> {
    let mut h: Vec<(usize, i64)> = Vec::new();
    for &pt in pts {
        while h.len() >= 2 {
            let (a, b) = (h[h.len() - 2], h[h.len() - 1]);
            // drop b unless it lies strictly below the segment a -> pt
            let lhs = (b.1 - a.1) as i128 * (pt.0 - a.0) as i128;
            let rhs = (pt.1 - a.1) as i128 * (b.0 - a.0) as i128;
            if lhs >= rhs {
                h.pop();
            } else {
                break;
            }
        }
        h.push(pt);
    }
    h
}

/// Whether `(k, v)` lies strictly above the hull, extended past its right end
/// by its last slope.
fn strictly_above(hull: &[(usize, i64)], k: usize, v: i64) -> bool {
    if hull.len() == 1 {
        return k <= hull[0].0 || v > hull[0].1;
    }
    let seg = hull.windows(2).find(|w| k <= w[1].0).unwrap_or(&hull[hull.len() - 2..]);
    let (a, b) = (seg[0], seg[1]);
    // v > a.1 + (b.1 - a.1) (k - a.0) / (b.0 - a.0)
    (v - a.1) as i128 * (b.0 - a.0) as i128 > (b.1 - a.1) as i128 * (k as i128 - a.0 as i128)
}

/// `det_α`: the factor `Π (1 - a t)` over roots `a` of slope `α`.
#[derive(Clone, Debug, PartialEq)]
pub struct SlopeFactor {
    pub slope: Slope,
    pub factor: Vec<ZqElement>,
}

/// Splits `1 + c_1 T + .. + c_m T^m` into its pure-slope factors, slopes
/// measured in units of `unit` π-valuations, in increasing order.
pub fn slope_factors(rev: &[ZqElement], unit: i64) -> Result<Vec<SlopeFactor>> {
    let ring = rev[0].ring().clone();
    if !(&rev[0] - &ring.one()).is_zero() {
        return Err(Error::InvalidInput("slope splitting needs constant term 1".into()));
    }
    let poly = NewtonPolygon::checked(rev, 1)?;
    let m = poly.degree();
    let slopes = poly.slopes();
    if slopes.len() <= 1 {
        let s = slopes.first().map_or(Ratio::from_integer(0), |s| s.0);
        return Ok(vec![SlopeFactor { slope: s / unit, factor: rev[..=m].to_vec() }]);
    }
    let l = 2 * slopes.iter().fold(1u64, |acc, (s, _)| lcm(acc, *s.denom() as u64)) as i64;
    let big = Zq::cached(ring.p(), ring.n(), ring.f(), ring.e() * l as u32)?;
    // monic Q(T) = T^m P(1/T), roots a_j
    let mut cur: Vec<ZqElement> = (0..=m).rev().map(|k| big.embed(&rev[k])).collect::<Result<_>>()?;
    let mut found = Vec::new();
    for i in (0..slopes.len() - 1).rev() {
        let lo = (slopes[i].0 * l).to_integer();
        let hi = (slopes[i + 1].0 * l).to_integer();
        let beta = (lo + hi).div_euclid(2);
        let g = split_above(&cur, beta)?;
        let (q, r) = divrem_monic(&cur, &g);
        if r.iter().any(|c| !c.is_zero()) {
            return Err(Error::SegmentSplitFailed("complementary factor did not divide".into()));
        }
        found.push((slopes[i + 1].0, g));
        cur = q;
    }
    found.push((slopes[0].0, cur));
    found.reverse();
    found
        .into_iter()
        .map(|(s, g)| {
            let factor = g
                .iter()
                .rev()
                .map(|c| ring.project(c).ok_or_else(|| Error::SegmentSplitFailed("slope factor is not defined over the base".into())))
                .collect::<Result<Vec<_>>>()?;
            Ok(SlopeFactor { slope: s / unit, factor })
        })
        .collect()
}

/// Coefficients past the polygon's last vertex `m` that are zero only at
/// their precision may hide roots. Returns how many, and the least slope
/// (π-units) such a root can have: `(N - v_m) / count`.
pub fn hidden_roots(rev: &[ZqElement], m: usize) -> Option<(usize, Slope)> {
    let tail = &rev[m + 1..];
    if tail.is_empty() {
        return None;
    }
    let n = tail.iter().map(|c| c.prec()).min().unwrap() as i64;
    Some((tail.len(), Ratio::new((n - rev[m].valuation() as i64).max(0), tail.len() as i64)))
}

/// The monic factor of monic `q` whose roots have valuation `> beta`
/// (π-units of `q`'s ring), assuming no root has valuation exactly `beta`.
fn split_above(q: &[ZqElement], beta: i64) -> Result<Vec<ZqElement>> {
    let ring = q[0].ring().clone();
    let fail = |why: &str| Error::SegmentSplitFailed(why.to_string());
    let beta = u32::try_from(beta).map_err(|_| fail("negative slope"))?;
    let scaled: Vec<ZqElement> = q.iter().enumerate().map(|(j, c)| c.mul_pi_pow(beta * j as u32)).collect();
    let (kk, c) = scaled
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(j, c)| (j, c.valuation()))
        .min_by_key(|&(j, v)| (v, std::cmp::Reverse(j)))
        .ok_or_else(|| fail("polynomial vanished at precision"))?;
    if scaled.iter().enumerate().any(|(j, x)| j != kk && !x.is_zero() && x.valuation() == c) {
        return Err(fail("slopes collide at the splitting point"));
    }
    let qt: Vec<ZqElement> = scaled.iter().map(|x| x.div_pi_pow(c)).collect::<Result<_>>().map_err(|_| fail("precision exhausted while scaling"))?;
    if qt.iter().all(|x| x.prec() == 0) {
        return Err(fail("precision exhausted while scaling"));
    }
    let mut g: Vec<ZqElement> = (0..=kk).map(|j| if j == kk { ring.one() } else { ring.zero() }).collect();
    let mut h: Vec<ZqElement> = qt[kk..].to_vec();
    let u_inv = qt[kk].inv().map_err(|_| fail("leading unit lost"))?;
    for _ in 0..=ring.cap() + 2 {
        let gh = poly_mul(&g, &h);
        let delta: Vec<ZqElement> = (0..qt.len()).map(|j| &qt[j] - gh.get(j).unwrap_or(&ring.zero())).collect();
        if delta.iter().all(|d| d.is_zero()) {
            break;
        }
        let td: Vec<ZqElement> = delta.iter().map(|d| d * &u_inv).collect();
        let (qq, r) = divrem_monic(&td, &g);
        for (j, rj) in r.into_iter().enumerate() {
            g[j] = &g[j] + &rj;
        }
        let qh = poly_mul(&qq, &h);
        for (j, x) in qh.into_iter().enumerate() {
            if j < h.len() {
                h[j] = &h[j] + &x;
            }
        }
    }
    // undo T = π^β U on the monic factor
    Ok(g.iter().enumerate().map(|(j, x)| x.mul_pi_pow(beta * (kk - j) as u32)).collect())
}

pub fn poly_mul(a: &[ZqElement], b: &[ZqElement]) -> Vec<ZqElement> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let ring = a[0].ring();
    let mut out = vec![ring.zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() && x.prec() >= ring.cap() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] = &out[i + j] + &(x * y);
        }
    }
    out
}

/// Quotient and remainder by a monic polynomial (coefficients low to high).
pub fn divrem_monic(a: &[ZqElement], b: &[ZqElement]) -> (Vec<ZqElement>, Vec<ZqElement>) {
    let ring = b[0].ring();
    let db = b.len() - 1;
    let mut r = a.to_vec();
    if a.len() <= db {
        r.resize(db, ring.zero());
        return (vec![ring.zero()], r);
    }
    let mut q = vec![ring.zero(); a.len() - db];
    for k in (0..q.len()).rev() {
        let c = r[k + db].clone();
        for j in 0..=db {
            r[k + j] = &r[k + j] - &(&c * &b[j]);
        }
        q[k] = c;
    }
    r.truncate(db);
    (q, r)
}
