//! Sparse multivariate polynomials with integer coefficients and a small
//! expression parser (`+ - * ^`, parentheses, integers, variable names).

use std::collections::BTreeMap;
use std::fmt;

use super::fq::{Fq, FqElem};
use crate::error::{Error, Result};
use crate::padic::{Zq, ZqElement};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MPoly {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, i128>,
}

impl MPoly {
    pub fn zero(nvars: usize) -> MPoly {
        MPoly { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: i128) -> MPoly {
        let mut m = MPoly::zero(nvars);
        if c != 0 {
            m.terms.insert(vec![0; nvars], c);
        }
        m
    }

    pub fn var(nvars: usize, i: usize) -> MPoly {
        let mut e = vec![0; nvars];
        e[i] = 1;
        MPoly::monomial(e, 1)
    }

    pub fn monomial(exps: Vec<u32>, c: i128) -> MPoly {
        let nvars = exps.len();
        let mut m = MPoly::zero(nvars);
        if c != 0 {
            m.terms.insert(exps, c);
        }
        m
    }

    /// `Σ c_i x^i` in one variable.
    pub fn univariate(coeffs: &[i128]) -> MPoly {
        let mut m = MPoly::zero(1);
        for (i, &c) in coeffs.iter().enumerate() {
            if c != 0 {
                m.terms.insert(vec![i as u32], c);
            }
        }
        m
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &i128)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|e| e.iter().sum()).max().unwrap_or(0)
    }

    pub fn checked_add(&self, o: &MPoly) -> Result<MPoly> {
        let mut out = self.clone();
        for (e, &c) in &o.terms {
            let slot = out.terms.entry(e.clone()).or_insert(0);
            *slot = slot.checked_add(c).ok_or_else(overflow)?;
        }
        out.terms.retain(|_, c| *c != 0);
        Ok(out)
    }

    pub fn neg(&self) -> MPoly {
        MPoly { nvars: self.nvars, terms: self.terms.iter().map(|(e, &c)| (e.clone(), -c)).collect() }
    }

    pub fn checked_mul(&self, o: &MPoly) -> Result<MPoly> {
        let mut out = MPoly::zero(self.nvars);
        for (e1, &c1) in &self.terms {
            for (e2, &c2) in &o.terms {
                let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                let c = c1.checked_mul(c2).ok_or_else(overflow)?;
                let slot = out.terms.entry(e).or_insert(0);
                *slot = slot.checked_add(c).ok_or_else(overflow)?;
            }
        }
        out.terms.retain(|_, c| *c != 0);
        Ok(out)
    }

    pub fn checked_pow(&self, k: u32) -> Result<MPoly> {
        let mut r = MPoly::constant(self.nvars, 1);
        for _ in 0..k {
            r = r.checked_mul(self)?;
        }
        Ok(r)
    }

    /// Coefficients reduced into `[0, m)`, dropping zeros.
    pub fn reduce(&self, m: u64) -> MPoly {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = c.rem_euclid(m as i128);
        }
        out.terms.retain(|_, c| *c != 0);
        out
    }

    /// Adds `extra` trailing variables.
    pub fn extend_vars(&self, extra: usize) -> MPoly {
        let n = self.nvars + extra;
        let terms = self
            .terms
            .iter()
            .map(|(e, &c)| {
                let mut e = e.clone();
                e.resize(n, 0);
                (e, c)
            })
            .collect();
        MPoly { nvars: n, terms }
    }

    /// Renames variable `i` to `map[i]` in a ring of `nvars` variables.
    pub fn remap(&self, nvars: usize, map: &[usize]) -> MPoly {
        let mut out = MPoly::zero(nvars);
        for (e, &c) in &self.terms {
            let mut ne = vec![0; nvars];
            for (i, &x) in e.iter().enumerate() {
                ne[map[i]] += x;
            }
            *out.terms.entry(ne).or_insert(0) += c;
        }
        out.terms.retain(|_, c| *c != 0);
        out
    }

    pub fn eval_fq(&self, f: &Fq, x: &[FqElem]) -> FqElem {
        let mut acc = 0;
        for (e, &c) in &self.terms {
            let mut t = f.from_int(c);
            for (i, &k) in e.iter().enumerate() {
                if k > 0 {
                    t = f.mul(t, f.pow(x[i], k as u64));
                }
            }
            acc = f.add(acc, t);
        }
        acc
    }

    pub fn eval_zq(&self, ring: &Zq, x: &[ZqElement]) -> ZqElement {
        let mut acc = ring.zero();
        let mut cache: BTreeMap<(usize, u32), ZqElement> = BTreeMap::new();
        for (e, &c) in &self.terms {
            let mut t = ring.from_i128(c);
            for (i, &k) in e.iter().enumerate() {
                if k > 0 {
                    let pw = cache.entry((i, k)).or_insert_with(|| x[i].pow(k as u64));
                    t = &t * &*pw;
                }
            }
            acc = &acc + &t;
        }
        acc
    }

    /// Parses `src` over the variables `vars`.
    pub fn parse(src: &str, vars: &[String]) -> Result<MPoly> {
        let mut p = Parser { s: src.as_bytes(), i: 0, vars, src };
        let r = p.expr()?;
        p.ws();
        if p.i != p.s.len() {
            return Err(p.err("unexpected trailing input"));
        }
        Ok(r)
    }

    pub fn to_string_with(&self, vars: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (k, (e, &c)) in self.terms.iter().enumerate() {
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &x)| x > 0)
                .map(|(i, &x)| if x == 1 { vars[i].clone() } else { format!("{}^{}", vars[i], x) })
                .collect();
            let sign = if c < 0 { "-" } else if k > 0 { "+" } else { "" };
            let a = c.unsigned_abs();
            if k > 0 {
                out.push_str(&format!(" {sign} "));
            } else {
                out.push_str(sign);
            }
            if mono.is_empty() {
                out.push_str(&a.to_string());
            } else if a == 1 {
                out.push_str(&mono.join("*"));
            } else {
                out.push_str(&format!("{}*{}", a, mono.join("*")));
            }
        }
        out
    }
}

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (0..self.nvars).map(|i| format!("x{i}")).collect();
        write!(f, "{}", self.to_string_with(&names))
    }
}

fn overflow() -> Error {
    Error::InvalidInput("polynomial coefficient overflow".into())
}

struct Parser<'a> {
    s: &'a [u8],
    i: usize,
    vars: &'a [String],
    src: &'a str,
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> Error {
        Error::InvalidInput(format!("{msg} at column {} in `{}`", self.i + 1, self.src))
    }

    fn ws(&mut self) {
        while self.i < self.s.len() && self.s[self.i].is_ascii_whitespace() {
            self.i += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.ws();
        self.s.get(self.i).copied()
    }

    fn expr(&mut self) -> Result<MPoly> {
        let mut acc = match self.peek() {
            Some(b'-') => {
                self.i += 1;
                self.term()?.neg()
            }
            Some(b'+') => {
                self.i += 1;
                self.term()?
            }
            _ => self.term()?,
        };
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.i += 1;
                    acc = acc.checked_add(&self.term()?)?;
                }
                Some(b'-') => {
                    self.i += 1;
                    acc = acc.checked_add(&self.term()?.neg())?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<MPoly> {
        let mut acc = self.power()?;
        while self.peek() == Some(b'*') {
            self.i += 1;
            acc = acc.checked_mul(&self.power()?)?;
        }
        Ok(acc)
    }

    fn power(&mut self) -> Result<MPoly> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.i += 1;
            self.ws();
            let k = self.number()?;
            let k = u32::try_from(k).map_err(|_| self.err("exponent too large"))?;
            return base.checked_pow(k);
        }
        Ok(base)
    }

    fn number(&mut self) -> Result<i128> {
        let start = self.i;
        while self.i < self.s.len() && self.s[self.i].is_ascii_digit() {
            self.i += 1;
        }
        if start == self.i {
            return Err(self.err("expected a number"));
        }
        std::str::from_utf8(&self.s[start..self.i])
            .unwrap()
            .parse::<i128>()
            .map_err(|_| self.err("number too large"))
    }

    fn atom(&mut self) -> Result<MPoly> {
        let n = self.vars.len();
        match self.peek() {
            Some(b'(') => {
                self.i += 1;
                let e = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected `)`"));
                }
                self.i += 1;
                Ok(e)
            }
            Some(b'-') => {
                self.i += 1;
                Ok(self.power()?.neg())
            }
            Some(c) if c.is_ascii_digit() => Ok(MPoly::constant(n, self.number()?)),
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.i;
                while self.i < self.s.len() && (self.s[self.i].is_ascii_alphanumeric() || self.s[self.i] == b'_') {
                    self.i += 1;
                }
                let name = std::str::from_utf8(&self.s[start..self.i]).unwrap();
                match self.vars.iter().position(|v| v == name) {
                    Some(k) => Ok(MPoly::var(n, k)),
                    None => {
                        self.i = start;
                        Err(self.err(&format!("unknown variable `{name}`")))
                    }
                }
            }
            _ => Err(self.err("expected a term")),
        }
    }
}
