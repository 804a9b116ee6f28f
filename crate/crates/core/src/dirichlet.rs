//! Finite general Dirichlet series `Σ c_q · q^(−s)` with exact positive
//! rational bases `q ≥ 1` and integer coefficients.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct DirichletSeries {
    terms: BTreeMap<BigRational, BigInt>,
}

/// Machine form: `{"terms":[{"q":"<p>/<r>","c":"<integer>"}]}`, ascending q.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesDoc {
    pub terms: Vec<TermDoc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermDoc {
    pub q: String,
    pub c: String,
}

pub fn rational_to_string(q: &BigRational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

pub fn parse_rational(s: &str) -> Result<BigRational> {
    let bad = || Error::Parse(format!("bad rational `{s}`"));
    let (p, r) = match s.split_once('/') {
        Some((p, r)) => (p.trim(), r.trim()),
        None => (s.trim(), "1"),
    };
    let p: BigInt = p.parse().map_err(|_| bad())?;
    let r: BigInt = r.parse().map_err(|_| bad())?;
    if r.is_zero() {
        return Err(bad());
    }
    Ok(BigRational::new(p, r))
}

impl DirichletSeries {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        let mut s = Self::new();
        s.add_term(BigRational::one(), c.into());
        s
    }

    /// Single term `c / q^s`. Panics if `q < 1`.
    pub fn monomial(q: BigRational, c: impl Into<BigInt>) -> Self {
        let mut s = Self::new();
        s.add_term(q, c.into());
        s
    }

    /// Builds a series from `(q, c)` pairs, merging equal bases.
    pub fn from_terms<I>(terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (BigRational, BigInt)>,
    {
        let mut s = Self::new();
        for (q, c) in terms {
            if q < BigRational::one() {
                return Err(Error::InvalidArgument(format!(
                    "exponent base {} is below 1",
                    rational_to_string(&q)
                )));
            }
            s.add_term(q, c);
        }
        Ok(s)
    }

    /// Adds `c / q^s`, dropping the term if the coefficient cancels.
    pub fn add_term(&mut self, q: BigRational, c: BigInt) {
        assert!(q >= BigRational::one(), "exponent base below 1");
        if c.is_zero() {
            return;
        }
        match self.terms.entry(q) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending order of base.
    pub fn terms(&self) -> impl Iterator<Item = (&BigRational, &BigInt)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, q: &BigRational) -> BigInt {
        self.terms.get(q).cloned().unwrap_or_default()
    }

    /// True when every base is an integer.
    pub fn is_ordinary(&self) -> bool {
        self.terms.keys().all(|q| q.is_integer())
    }

    pub fn non_integer_bases(&self) -> Vec<BigRational> {
        self.terms.keys().filter(|q| !q.is_integer()).cloned().collect()
    }

    /// `Σ c_q · q^(−s)` for any integer `s`.
    pub fn evaluate_exact(&self, s: i64) -> BigRational {
        let mut total = BigRational::zero();
        let e = s.unsigned_abs();
        for (q, c) in &self.terms {
            let (num, den) = (q.numer(), q.denom());
            let (n_pow, d_pow) = (pow_big(num, e), pow_big(den, e));
            // q^(−s) = (den/num)^s
            let term = if s >= 0 {
                BigRational::new(c * d_pow, n_pow)
            } else {
                BigRational::new(c * n_pow, d_pow)
            };
            total += term;
        }
        total
    }

    /// Floating-point evaluation `Σ c_q · exp(−s · ln q)`. Approximate.
    pub fn evaluate_numeric(&self, s: Complex64) -> Complex64 {
        self.terms
            .iter()
            .map(|(q, c)| {
                let ln_q = ln_big(q.numer()) - ln_big(q.denom());
                let c = c.to_f64().unwrap_or(f64::NAN);
                (-s * ln_q).exp() * c
            })
            .sum()
    }

    /// The series `s ↦ P(s + k)`, provided all resulting coefficients are
    /// integers.
    pub fn shift_argument(&self, k: i64) -> Option<DirichletSeries> {
        let mut out = DirichletSeries::new();
        for (q, c) in &self.terms {
            let scale = if k >= 0 {
                BigRational::one() / pow_rational(q, k.unsigned_abs())
            } else {
                pow_rational(q, k.unsigned_abs())
            };
            let coeff = scale * BigRational::from_integer(c.clone());
            if !coeff.is_integer() {
                return None;
            }
            out.add_term(q.clone(), coeff.to_integer());
        }
        Some(out)
    }

    pub fn to_doc(&self) -> SeriesDoc {
        SeriesDoc {
            terms: self
                .terms
                .iter()
                .map(|(q, c)| TermDoc {
                    q: rational_to_string(q),
                    c: c.to_string(),
                })
                .collect(),
        }
    }

    pub fn from_doc(doc: &SeriesDoc) -> Result<Self> {
        let mut terms = Vec::with_capacity(doc.terms.len());
        for t in &doc.terms {
            let c: BigInt = t
                .c
                .parse()
                .map_err(|_| Error::Parse(format!("bad coefficient `{}`", t.c)))?;
            terms.push((parse_rational(&t.q)?, c));
        }
        Self::from_terms(terms)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_doc()).expect("series document serialises")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let doc: SeriesDoc = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        Self::from_doc(&doc)
    }

    /// Human form with `c/q^s` collapsed to `(c/q)/q^(s-1)` when `q` is an
    /// integer dividing `c`.
    pub fn pretty(&self) -> String {
        self.render(true)
    }

    fn render(&self, collapse: bool) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, (q, c)) in self.terms.iter().enumerate() {
            let sign = if c.is_negative() { "-" } else { "+" };
            if i == 0 {
                if c.is_negative() {
                    out.push('-');
                }
            } else {
                out.push_str(&format!(" {sign} "));
            }
            let a = c.abs();
            if q.is_one() {
                out.push_str(&a.to_string());
                continue;
            }
            let base = if q.is_integer() {
                q.numer().to_string()
            } else {
                format!("({}/{})", q.numer(), q.denom())
            };
            if collapse && q.is_integer() && a.is_multiple_of(q.numer()) {
                out.push_str(&format!("{}/{}^(s-1)", &a / q.numer(), base));
            } else {
                out.push_str(&format!("{a}/{base}^s"));
            }
        }
        out
    }
}

fn pow_big(b: &BigInt, e: u64) -> BigInt {
    num_traits::pow(b.clone(), e as usize)
}

fn pow_rational(q: &BigRational, e: u64) -> BigRational {
    BigRational::new(pow_big(q.numer(), e), pow_big(q.denom(), e))
}

fn ln_big(x: &BigInt) -> f64 {
    match x.to_f64() {
        Some(v) if v.is_finite() => v.ln(),
        _ => {
            let bits = x.bits();
            let shift = bits.saturating_sub(64);
            let top: BigInt = x >> shift;
            top.to_f64().unwrap().ln() + shift as f64 * std::f64::consts::LN_2
        }
    }
}

impl fmt::Display for DirichletSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(false))
    }
}

impl Add for &DirichletSeries {
    type Output = DirichletSeries;
    fn add(self, rhs: &DirichletSeries) -> DirichletSeries {
        let mut out = self.clone();
        for (q, c) in &rhs.terms {
            out.add_term(q.clone(), c.clone());
        }
        out
    }
}

impl Add for DirichletSeries {
    type Output = DirichletSeries;
    fn add(self, rhs: DirichletSeries) -> DirichletSeries {
        &self + &rhs
    }
}

impl Neg for &DirichletSeries {
    type Output = DirichletSeries;
    fn neg(self) -> DirichletSeries {
        DirichletSeries {
            terms: self.terms.iter().map(|(q, c)| (q.clone(), -c)).collect(),
        }
    }
}

impl Neg for DirichletSeries {
    type Output = DirichletSeries;
    fn neg(self) -> DirichletSeries {
        -&self
    }
}

impl Sub for &DirichletSeries {
    type Output = DirichletSeries;
    fn sub(self, rhs: &DirichletSeries) -> DirichletSeries {
        self + &(-rhs)
    }
}

impl Sub for DirichletSeries {
    type Output = DirichletSeries;
    fn sub(self, rhs: DirichletSeries) -> DirichletSeries {
        &self - &rhs
    }
}

impl Mul for &DirichletSeries {
    type Output = DirichletSeries;
    fn mul(self, rhs: &DirichletSeries) -> DirichletSeries {
        let mut out = DirichletSeries::new();
        for (q1, c1) in &self.terms {
            for (q2, c2) in &rhs.terms {
                out.add_term(q1 * q2, c1 * c2);
            }
        }
        out
    }
}

impl Mul for DirichletSeries {
    type Output = DirichletSeries;
    fn mul(self, rhs: DirichletSeries) -> DirichletSeries {
        &self * &rhs
    }
}
