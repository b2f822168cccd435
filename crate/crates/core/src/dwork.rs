//! The splitting function `E(t) = exp(π*(t - t^q))`, the additive
//! characters it induces, and character sums over affine space.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::ffield::{AffineVariety, ClosedPoint, Fq, FqElem, MPoly};
use crate::fmodule::{Base, FModule};
use crate::padic::series::TruncSeries;
use crate::padic::{Zq, ZqElement};

/// Extra terms kept beyond the convergence bound.
const GUARD: usize = 2;

#[derive(Clone, Debug)]
pub struct SplittingFunction {
    p: u64,
    q: u64,
    n: u32,
    series: TruncSeries,
}

/// Coefficients of `exp(c π t)` up to `deg`, exactly: the `k`-th one is
/// `(-1)^v π^{k-(p-1)v} c^k / u` with `k! = p^v u`.
fn exp_pi_coeffs(ring: &Zq, deg: usize, sign: i64) -> Result<Vec<ZqElement>> {
    let p = ring.p();
    let e = ring.e() as u64;
    let pi = ring.pi();
    let mut out = Vec::with_capacity(deg + 1);
    let mut unit_fact = ring.one();
    let mut v = 0u64;
    out.push(ring.one());
    for k in 1..=deg as u64 {
        let mut m = k;
        while m % p == 0 {
            m /= p;
            v += 1;
        }
        unit_fact = unit_fact.mul_int(m as i64);
        let shift = k - e * v;
        let mut c = &pi.pow(shift) * &unit_fact.inv()?;
        if v % 2 == 1 {
            c = -c;
        }
        if sign < 0 && k % 2 == 1 {
            c = -c;
        }
        out.push(c);
    }
    Ok(out)
}

impl SplittingFunction {
    /// Truncation degree `ceil(N p q / (p - 1)) + guard`.
    pub fn truncation_degree(p: u64, q: u64, n: u32) -> usize {
        ((n as u64 * p * q).div_ceil(p - 1)) as usize + GUARD
    }

    /// `E(t)` for `q = p^a` with coefficients in `Z_p[π*]` modulo `p^N`.
    pub fn new(p: u64, a: u32, n: u32) -> Result<SplittingFunction> {
        let ring = Zq::cached(p, n, 1, (p - 1) as u32)?;
        let q = p.pow(a);
        let d = SplittingFunction::truncation_degree(p, q, n);
        let f1 = exp_pi_coeffs(&ring, d, 1)?;
        let f2 = exp_pi_coeffs(&ring, d / q as usize, -1)?;
        let mut g = TruncSeries::zero(&ring, d);
        for (k, c) in f2.into_iter().enumerate() {
            g.set(k * q as usize, c);
        }
        let series = &TruncSeries::from_coeffs(&ring, f1, d) * &g;
        Ok(SplittingFunction { p, q, n, series })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn precision(&self) -> u32 {
        self.n
    }

    pub fn degree(&self) -> usize {
        self.series.degree()
    }

    pub fn series(&self) -> &TruncSeries {
        &self.series
    }

    /// Checks `v_p(e_k) >= k (p-1) / (p q)` for every nonzero coefficient.
    pub fn decay_bound_holds(&self) -> bool {
        let e = self.p - 1;
        self.series.coeffs().iter().enumerate().all(|(k, c)| {
            c.is_zero() || {
                // π-adic valuation v satisfies v / (p-1) >= k (p-1) / (p q)
                let lhs = c.valuation() as u64 * self.p * self.q;
                lhs >= k as u64 * e * e
            }
        })
    }

    /// `E(u)` for `u` in a ring whose ramification is a multiple of `p - 1`.
    pub fn eval(&self, u: &ZqElement) -> Result<ZqElement> {
        let ring = u.ring();
        let mut acc = ring.zero();
        for c in self.series.coeffs().iter().rev() {
            acc = &(&acc * u) + &ring.embed(c)?;
        }
        Ok(acc)
    }
}

/// `ψ_0(1) = θ(1)` with `θ(t) = exp(π*(t - t^p))`, and its powers.
#[derive(Clone, Debug)]
pub struct AdditiveCharacter {
    p: u64,
    ring: Zq,
    powers: Vec<ZqElement>,
}

impl AdditiveCharacter {
    pub fn new(p: u64, n: u32) -> Result<AdditiveCharacter> {
        let theta = SplittingFunction::new(p, 1, n)?;
        let ring = theta.series.ring().clone();
        let one = theta.eval(&ring.one())?;
        let mut powers = vec![ring.one()];
        for k in 1..p as usize {
            powers.push(&powers[k - 1] * &one);
        }
        Ok(AdditiveCharacter { p, ring, powers })
    }

    pub fn ring(&self) -> &Zq {
        &self.ring
    }

    /// `ψ_0(k)` for `k ∈ F_p`.
    pub fn psi0(&self, k: u64) -> &ZqElement {
        &self.powers[(k % self.p) as usize]
    }

    /// `ψ_r(a) = ψ_0(Tr_{F_{q^r}/F_p}(a))`.
    pub fn psi(&self, field: &Fq, a: FqElem) -> &ZqElement {
        self.psi0(field.trace(a))
    }
}

/// `Σ_{y ∈ F_{q^r}^s} ψ_r(Σ y_i f_i(x))` together with the expected value
/// `q^{rs}` or `0`.
pub fn orthogonality_sum(
    chi: &AdditiveCharacter,
    field: &Arc<Fq>,
    fs: &[MPoly],
    x: &[FqElem],
    budget: u128,
) -> Result<(ZqElement, ZqElement)> {
    let s = fs.len() as u32;
    let size = field.size();
    let needed = (size as u128).saturating_pow(s);
    if needed > budget {
        return Err(Error::BudgetExceeded { needed, cap: budget });
    }
    let vals: Vec<FqElem> = fs.iter().map(|f| f.eval_fq(field, x)).collect();
    let ring = chi.ring();
    let mut total = ring.zero();
    let mut y = vec![0u32; s as usize];
    loop {
        let mut w = 0;
        for (yi, vi) in y.iter().zip(&vals) {
            w = field.add(w, field.mul(*yi, *vi));
        }
        total = &total + chi.psi(field, w);
        let mut i = 0;
        loop {
            if i == y.len() {
                let expected = if vals.iter().all(|&v| v == 0) {
                    ring.from_u64(size.pow(s))
                } else {
                    ring.zero()
                };
                return Ok((total, expected));
            }
            y[i] += 1;
            if (y[i] as u64) < size {
                break;
            }
            y[i] = 0;
            i += 1;
        }
    }
}

/// Splitting functions shared across evaluations, one per `(p, a, N)`.
pub fn splitting_function(p: u64, a: u32, n: u32) -> Result<Arc<SplittingFunction>> {
    use std::collections::HashMap;
    use std::sync::{Mutex, OnceLock};
    static CACHE: OnceLock<Mutex<HashMap<(u64, u32, u32), Arc<SplittingFunction>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(e) = cache.lock().unwrap().get(&(p, a, n)) {
        return Ok(e.clone());
    }
    let e = Arc::new(SplittingFunction::new(p, a, n)?);
    cache.lock().unwrap().insert((p, a, n), e.clone());
    Ok(e)
}

/// Compares the `r`-fold orbit product of a character module at a point of
/// `A^n(F_{q^r})` with `ψ_r(W(x))`.
pub fn fiber_orbit_product_check(m: &FModule, x: &[FqElem], r: u32) -> Result<bool> {
    let w = m.character_polynomial().ok_or_else(|| Error::InvalidInput("not a character module".into()))?;
    let base = m.base();
    let field = base.variety.field(r)?;
    let chi = AdditiveCharacter::new(base.variety.p(), base.n)?;
    let want = chi.psi(&field, w.eval_fq(&field, x));
    let got = m.fiber_trace(&ClosedPoint { degree: r, rep: x.to_vec() })?;
    Ok(got.agreement(want) >= got.prec().min(want.prec()))
}

/// `pr^*(M) ⊗ L_ψ(Σ y_i f_i)` on `A^{d+s}` (keeping `g` inverted), and the
/// exponent `c` with `L(X, M, t) = L(A^{d+s}, N, p^c t)`.
#[derive(Clone, Debug)]
pub struct AffineReduction {
    pub module: FModule,
    pub scale: i64,
}

pub fn affine_reduction(m: &FModule) -> Result<AffineReduction> {
    let base = m.base();
    let x = &base.variety;
    if !base.lift.is_standard() {
        return Err(Error::InvalidInput("affine reduction needs the standard Frobenius lift".into()));
    }
    let s = x.equations().len();
    if s == 0 {
        return Ok(AffineReduction { module: m.clone(), scale: 0 });
    }
    let d = x.ambient_dim();
    let mut vars = x.vars().to_vec();
    for i in 1..=s {
        let mut name = format!("y{i}");
        while vars.contains(&name) {
            name.push('_');
        }
        vars.push(name);
    }
    let g = x.inverted().map(|g| g.extend_vars(s));
    let amb = AffineVariety::new(x.p(), x.a(), vars, Vec::new(), g)?;
    let nb = Base::standard(amb, base.n)?;
    let mut w = MPoly::zero(d + s);
    for (i, f) in x.equations().iter().enumerate() {
        w = w.checked_add(&MPoly::var(d + s, d + i).checked_mul(&f.extend_vars(s))?)?;
    }
    let module = m.pullback(&nb)?.tensor(&FModule::character(&nb, w)?)?;
    Ok(AffineReduction { module, scale: -((x.a() as usize * s) as i64) })
}
