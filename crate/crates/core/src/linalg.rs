//! Dense matrices over a [`Zq`] ring: products, reversed characteristic
//! polynomials and the symmetric, exterior and tensor functors.

use std::collections::BTreeMap;

use crate::padic::{Zq, ZqElement};

#[derive(Clone, Debug, PartialEq)]
pub struct Matrix {
    ring: Zq,
    rows: usize,
    cols: usize,
    data: Vec<ZqElement>,
}

impl Matrix {
    pub fn zeros(ring: &Zq, rows: usize, cols: usize) -> Matrix {
        Matrix { ring: ring.clone(), rows, cols, data: vec![ring.zero(); rows * cols] }
    }

    pub fn identity(ring: &Zq, n: usize) -> Matrix {
        let mut m = Matrix::zeros(ring, n, n);
        for i in 0..n {
            m.set(i, i, ring.one());
        }
        m
    }

    pub fn from_rows(ring: &Zq, rows: Vec<Vec<ZqElement>>) -> Matrix {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let data: Vec<ZqElement> = rows.into_iter().flatten().collect();
        assert_eq!(data.len(), r * c, "ragged matrix rows");
        Matrix { ring: ring.clone(), rows: r, cols: c, data }
    }

    pub fn from_ints(ring: &Zq, rows: &[Vec<i64>]) -> Matrix {
        Matrix::from_rows(ring, rows.iter().map(|r| r.iter().map(|&x| ring.from_i64(x)).collect()).collect())
    }

    pub fn diagonal(ring: &Zq, d: &[ZqElement]) -> Matrix {
        let mut m = Matrix::zeros(ring, d.len(), d.len());
        for (i, x) in d.iter().enumerate() {
            m.set(i, i, x.clone());
        }
        m
    }

    /// Companion matrix of the monic `X^m + c_1 X^{m-1} + .. + c_m` built from
    /// `1 + c_1 T + .. + c_m T^m`; its eigenvalues are the reciprocal roots.
    pub fn companion(ring: &Zq, rev: &[ZqElement]) -> Matrix {
        let m = rev.len() - 1;
        let mut a = Matrix::zeros(ring, m, m);
        for i in 1..m {
            a.set(i, i - 1, ring.one());
        }
        for i in 0..m {
            a.set(i, m - 1, -&rev[m - i]);
        }
        a
    }

    pub fn ring(&self) -> &Zq {
        &self.ring
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &ZqElement {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: ZqElement) {
        self.data[i * self.cols + j] = x;
    }

    pub fn map(&self, f: impl Fn(&ZqElement) -> ZqElement) -> Matrix {
        Matrix { ring: self.ring.clone(), rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn mul(&self, o: &Matrix) -> Matrix {
        assert_eq!(self.cols, o.rows);
        let mut out = Matrix::zeros(&self.ring, self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() && a.prec() >= self.ring.cap() {
                    continue;
                }
                for j in 0..o.cols {
                    let idx = i * o.cols + j;
                    out.data[idx] = &out.data[idx] + &(a * o.get(k, j));
                }
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> Matrix {
        let mut r = Matrix::identity(&self.ring, self.rows);
        for _ in 0..k {
            r = r.mul(self);
        }
        r
    }

    pub fn trace(&self) -> ZqElement {
        (0..self.rows).fold(self.ring.zero(), |acc, i| &acc + self.get(i, i))
    }

    pub fn det(&self) -> ZqElement {
        let n = self.rows;
        let cp = self.charpoly_rev(n);
        if n.is_multiple_of(2) {
            cp[n].clone()
        } else {
            -&cp[n]
        }
    }

    /// Coefficients of `det(1 - tA)` modulo `t^{deg+1}`, by bordering: with
    /// `A' = [[A, c], [r, a]]`,
    /// `det(1 - tA') = det(1 - tA) (1 - ta - Σ_j t^{j+2} r A^j c)`.
    pub fn charpoly_rev(&self, deg: usize) -> Vec<ZqElement> {
        assert_eq!(self.rows, self.cols);
        let ring = &self.ring;
        let mut p = vec![ring.zero(); deg + 1];
        p[0] = ring.one();
        for k in 0..self.rows {
            // factor = 1 - t a - Σ_j t^{j+2} r A_k^j c
            let mut factor = vec![ring.zero(); deg + 1];
            factor[0] = ring.one();
            if deg >= 1 {
                factor[1] = -self.get(k, k);
            }
            let mut v: Vec<ZqElement> = (0..k).map(|i| self.get(i, k).clone()).collect();
            for j in 0..deg.saturating_sub(1) {
                if k == 0 {
                    break;
                }
                let mut s = ring.zero();
                for (i, vi) in v.iter().enumerate() {
                    s = &s + &(self.get(k, i) * vi);
                }
                factor[j + 2] = &factor[j + 2] - &s;
                if j + 3 <= deg {
                    let mut w = vec![ring.zero(); k];
                    for (i, wi) in w.iter_mut().enumerate() {
                        for (l, vl) in v.iter().enumerate() {
                            let a = self.get(i, l);
                            if !(a.is_zero() && a.prec() >= ring.cap()) {
                                *wi = &*wi + &(a * vl);
                            }
                        }
                    }
                    v = w;
                }
            }
            let mut q = vec![ring.zero(); deg + 1];
            for (i, pi) in p.iter().enumerate() {
                if pi.is_zero() && pi.prec() >= ring.cap() {
                    continue;
                }
                for (j, fj) in factor.iter().enumerate().take(deg + 1 - i) {
                    q[i + j] = &q[i + j] + &(pi * fj);
                }
            }
            p = q;
        }
        p
    }

    /// Solves `A x = b` for square `A` by elimination with pivots of least
    /// valuation; fails when the solution is not integral at precision.
    pub fn solve(&self, b: &[ZqElement]) -> crate::error::Result<Vec<ZqElement>> {
        let n = self.rows;
        assert!(self.cols == n && b.len() == n, "solve needs a square system");
        let mut a: Vec<Vec<ZqElement>> = (0..n).map(|i| (0..n).map(|j| self.get(i, j).clone()).collect()).collect();
        let mut rhs = b.to_vec();
        let mut perm: Vec<usize> = (0..n).collect();
        for k in 0..n {
            let (pi, pj) = (k..n)
                .flat_map(|i| (k..n).map(move |j| (i, j)))
                .filter(|&(i, j)| !a[i][j].is_zero())
                .min_by_key(|&(i, j)| a[i][j].valuation())
                .ok_or_else(|| crate::error::Error::PrecisionExhausted("singular system at precision".into()))?;
            a.swap(k, pi);
            rhs.swap(k, pi);
            for row in a.iter_mut() {
                row.swap(k, pj);
            }
            perm.swap(k, pj);
            for i in k + 1..n {
                if a[i][k].is_zero() {
                    continue;
                }
                let f = a[i][k].div_exact(&a[k][k])?;
                for j in k..n {
                    let t = &f * &a[k][j];
                    a[i][j] = &a[i][j] - &t;
                }
                let t = &f * &rhs[k];
                rhs[i] = &rhs[i] - &t;
            }
        }
        let mut y = vec![self.ring.zero(); n];
        for k in (0..n).rev() {
            let mut s = rhs[k].clone();
            for j in k + 1..n {
                s = &s - &(&a[k][j] * &y[j]);
            }
            y[k] = s.div_exact(&a[k][k])?;
        }
        let mut x = vec![self.ring.zero(); n];
        for (k, &col) in perm.iter().enumerate() {
            x[col] = y[k].clone();
        }
        Ok(x)
    }

    pub fn kron(&self, o: &Matrix) -> Matrix {
        let (r, c) = (self.rows * o.rows, self.cols * o.cols);
        let mut out = Matrix::zeros(&self.ring, r, c);
        for i in 0..self.rows {
            for j in 0..self.cols {
                for k in 0..o.rows {
                    for l in 0..o.cols {
                        out.set(i * o.rows + k, j * o.cols + l, self.get(i, j) * o.get(k, l));
                    }
                }
            }
        }
        out
    }

    /// Action on degree-`k` monomials in the basis vectors, columns being
    /// images: `e_i ↦ Σ_j A_{ji} e_j`.
    pub fn sym_power(&self, k: usize) -> Matrix {
        let m = self.rows;
        let basis = multisets(m, k);
        let index: BTreeMap<Vec<usize>, usize> = basis.iter().cloned().enumerate().map(|(i, b)| (b, i)).collect();
        let mut out = Matrix::zeros(&self.ring, basis.len(), basis.len());
        for (col, mono) in basis.iter().enumerate() {
            // expand Π_i (Σ_j A_{j,i} e_j) over the factors in `mono`
            let mut poly: BTreeMap<Vec<usize>, ZqElement> = BTreeMap::new();
            poly.insert(Vec::new(), self.ring.one());
            for &i in mono {
                let mut next: BTreeMap<Vec<usize>, ZqElement> = BTreeMap::new();
                for (key, c) in &poly {
                    for j in 0..m {
                        let a = self.get(j, i);
                        let mut nk = key.clone();
                        let pos = nk.partition_point(|&x| x <= j);
                        nk.insert(pos, j);
                        let term = c * a;
                        let slot = next.entry(nk).or_insert_with(|| self.ring.zero());
                        *slot = &*slot + &term;
                    }
                }
                poly = next;
            }
            for (key, c) in poly {
                out.set(index[&key], col, c);
            }
        }
        out
    }

    /// Matrix of `k`-th exterior power on sorted index subsets: entry
    /// `(I, J)` is the minor on rows `I` and columns `J`.
    pub fn ext_power(&self, k: usize) -> Matrix {
        let basis = subsets(self.rows, k);
        let mut out = Matrix::zeros(&self.ring, basis.len(), basis.len());
        for (a, rows) in basis.iter().enumerate() {
            for (b, cols) in basis.iter().enumerate() {
                out.set(a, b, self.minor(rows, cols));
            }
        }
        out
    }

    fn minor(&self, rows: &[usize], cols: &[usize]) -> ZqElement {
        if rows.is_empty() {
            return self.ring.one();
        }
        let mut acc = self.ring.zero();
        let r0 = rows[0];
        for (idx, &c) in cols.iter().enumerate() {
            let a = self.get(r0, c);
            if a.is_zero() {
                continue;
            }
            let sub_cols: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
            let term = a * &self.minor(&rows[1..], &sub_cols);
            acc = if idx % 2 == 0 { &acc + &term } else { &acc - &term };
        }
        acc
    }
}

/// Nondecreasing index sequences of length `k` over `0..m`, in lexicographic order.
pub fn multisets(m: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(m: usize, k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..m {
            cur.push(i);
            rec(m, k, i, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(m, k, 0, &mut Vec::new(), &mut out);
    out
}

/// Strictly increasing index sequences of length `k` over `0..m`.
pub fn subsets(m: usize, k: usize) -> Vec<Vec<usize>> {
    multisets(m, k).into_iter().filter(|s| s.windows(2).all(|w| w[0] < w[1])).collect()
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let b = (0..k).try_fold(1u128, |acc, i| acc.checked_mul((n - i) as u128).map(|x| x / (i as u128 + 1)));
    b.map_or(usize::MAX, |b| usize::try_from(b).unwrap_or(usize::MAX))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn zp() -> Zq {
        Zq::zp(7, 6).unwrap()
    }

    fn ints(v: &[ZqElement]) -> Vec<i128> {
        v.iter().map(|x| x.as_i128_centered().unwrap()).collect()
    }

    #[test]
    fn charpoly_of_small_matrices() {
        let r = zp();
        let a = Matrix::from_ints(&r, &[vec![1, 2], vec![3, 4]]);
        // det(1 - tA) = 1 - 5t - 2t^2
        assert_eq!(ints(&a.charpoly_rev(2)), vec![1, -5, -2]);
        assert_eq!(a.det().as_i128_centered(), Some(-2));
        let b = Matrix::from_ints(&r, &[vec![2, 1, 0], vec![0, 2, 1], vec![1, 0, 2]]);
        // eigenvalues 2 + ω for cube roots of unity ω; det(1 - tB) = (1-2t)^3 - t^3
        assert_eq!(ints(&b.charpoly_rev(3)), vec![1, -6, 12, -9]);
        assert_eq!(ints(&b.charpoly_rev(1)), vec![1, -6]);
    }

    #[test]
    fn diagonal_charpoly_is_product() {
        let r = zp();
        let d = Matrix::diagonal(&r, &[r.from_i64(7), r.from_i64(49), r.from_i64(3)]);
        let cp = d.charpoly_rev(3);
        assert_eq!(ints(&cp), vec![1, -59, 7 * 49 + 7 * 3 + 49 * 3, -(7 * 49 * 3)]);
    }

    #[test]
    fn sym2_eigenvalues() {
        let r = zp();
        let a = Matrix::from_ints(&r, &[vec![2, 1], vec![0, 3]]);
        let s = a.sym_power(2);
        assert_eq!(s.rows(), 3);
        // eigenvalues 4, 6, 9
        let want = Matrix::diagonal(&r, &[r.from_i64(4), r.from_i64(6), r.from_i64(9)]);
        assert_eq!(s.charpoly_rev(3), want.charpoly_rev(3));
    }

    #[test]
    fn top_exterior_power_is_det() {
        let r = zp();
        let a = Matrix::from_ints(&r, &[vec![2, 1, 5], vec![0, 3, 1], vec![4, 4, 1]]);
        let e = a.ext_power(3);
        assert_eq!(e.rows(), 1);
        assert_eq!(e.get(0, 0), &a.det());
    }

    #[test]
    fn companion_recovers_charpoly() {
        let r = zp();
        let a = Matrix::from_ints(&r, &[vec![1, 2, 0], vec![3, 4, 1], vec![0, 5, 6]]);
        let cp = a.charpoly_rev(3);
        assert_eq!(Matrix::companion(&r, &cp).charpoly_rev(3), cp);
    }

    fn mat(r: &Zq, n: usize, v: &[i64]) -> Matrix {
        Matrix::from_rows(r, (0..n).map(|i| (0..n).map(|j| r.from_i64(v[i * n + j])).collect()).collect())
    }

    #[test]
    fn solve_small_system() {
        let r = zp();
        let a = Matrix::from_ints(&r, &[vec![7, 1], vec![2, 3]]);
        let x = a.solve(&[r.from_i64(15), r.from_i64(7)]).unwrap();
        assert_eq!(x, vec![r.from_i64(2), r.from_i64(1)]);
    }

    proptest! {
        #[test]
        fn functors_are_multiplicative(a in prop::collection::vec(-20i64..20, 9),
                                       b in prop::collection::vec(-20i64..20, 9)) {
            let r = zp();
            let (x, y) = (mat(&r, 3, &a), mat(&r, 3, &b));
            let xy = x.mul(&y);
            prop_assert_eq!(xy.sym_power(2), x.sym_power(2).mul(&y.sym_power(2)));
            prop_assert_eq!(xy.ext_power(2), x.ext_power(2).mul(&y.ext_power(2)));
            prop_assert_eq!(x.kron(&y).mul(&y.kron(&x)), xy.kron(&y.mul(&x)));
            prop_assert_eq!(xy.det(), &x.det() * &y.det());
        }

        #[test]
        fn charpoly_matches_traces(a in prop::collection::vec(-20i64..20, 16)) {
            let r = zp();
            let x = mat(&r, 4, &a);
            let cp = x.charpoly_rev(4);
            // Newton: c_1 = -tr A, 2 c_2 = tr(A)^2 - tr(A^2)
            prop_assert_eq!(&cp[1], &(-&x.trace()));
            let t1 = x.trace();
            let t2 = x.mul(&x).trace();
            prop_assert_eq!(cp[2].mul_int(2), &(&t1 * &t1) - &t2);
        }
    }
}
