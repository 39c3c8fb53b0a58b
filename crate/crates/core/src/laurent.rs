//! Sparse Laurent polynomials in `t` over arbitrary-precision rationals.

use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

/// A Laurent polynomial; only nonzero coefficients are stored.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct LaurentPoly {
    coeffs: BTreeMap<i64, BigRational>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly::default()
    }

    pub fn one() -> Self {
        LaurentPoly::term(0, BigRational::one())
    }

    /// The monomial `c * t^k`.
    pub fn term(exponent: i64, coeff: BigRational) -> Self {
        let mut coeffs = BTreeMap::new();
        if !coeff.is_zero() {
            coeffs.insert(exponent, coeff);
        }
        LaurentPoly { coeffs }
    }

    pub fn t() -> Self {
        LaurentPoly::term(1, BigRational::one())
    }

    pub fn from_integer(n: i64) -> Self {
        LaurentPoly::term(0, BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_terms<I: IntoIterator<Item = (i64, BigRational)>>(terms: I) -> Self {
        let mut p = LaurentPoly::zero();
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    fn add_term(&mut self, exponent: i64, coeff: BigRational) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.coeffs.entry(exponent).or_insert_with(BigRational::zero);
        *entry += coeff;
        if entry.is_zero() {
            self.coeffs.remove(&exponent);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, exponent: i64) -> BigRational {
        self.coeffs.get(&exponent).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigRational)> {
        self.coeffs.iter().map(|(&e, c)| (e, c))
    }

    pub fn min_exponent(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    pub fn max_exponent(&self) -> Option<i64> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn num_terms(&self) -> usize {
        self.coeffs.len()
    }

    /// Multiply by `t^k`.
    pub fn shifted(&self, k: i64) -> LaurentPoly {
        LaurentPoly {
            coeffs: self.coeffs.iter().map(|(&e, c)| (e + k, c.clone())).collect(),
        }
    }

    /// Exact division; errors when the divisor does not divide `self` in the
    /// Laurent ring.
    pub fn divide_exact(&self, divisor: &LaurentPoly) -> Result<LaurentPoly> {
        if divisor.is_zero() {
            return Err(Error::Internal("division by zero polynomial".into()));
        }
        if self.is_zero() {
            return Ok(LaurentPoly::zero());
        }
        // normalize both to ordinary polynomials with nonzero constant term
        let s_min = self.min_exponent().unwrap();
        let d_min = divisor.min_exponent().unwrap();
        let mut rem = self.shifted(-s_min);
        let div = divisor.shifted(-d_min);
        let d_deg = div.max_exponent().unwrap();
        let d_lead = div.coeff(d_deg);
        let mut quot = LaurentPoly::zero();
        while !rem.is_zero() {
            let r_deg = rem.max_exponent().unwrap();
            if r_deg < d_deg {
                return Err(Error::Internal(format!(
                    "non-exact polynomial division (remainder {rem})"
                )));
            }
            let factor = rem.coeff(r_deg) / d_lead.clone();
            let shift = r_deg - d_deg;
            quot.add_term(shift, factor.clone());
            let sub = div.shifted(shift) * LaurentPoly::term(0, factor);
            rem = rem - sub;
        }
        Ok(quot.shifted(s_min - d_min))
    }

    pub fn eval_rational(&self, t: &BigRational) -> Result<BigRational> {
        if t.is_zero() && self.min_exponent().map_or(false, |m| m < 0) {
            return Err(Error::Internal("evaluating t^-k at t = 0".into()));
        }
        let mut acc = BigRational::zero();
        for (e, c) in self.terms() {
            let mut p = BigRational::one();
            let b = if e >= 0 { t.clone() } else { t.recip() };
            for _ in 0..e.unsigned_abs() {
                p *= b.clone();
            }
            acc += c * p;
        }
        Ok(acc)
    }

    pub fn eval_f64(&self, t: f64) -> f64 {
        self.terms()
            .map(|(e, c)| rational_to_f64(c) * t.powi(e as i32))
            .sum()
    }

    /// `c * t^k` for some k (scalar multiples of a monomial).
    pub fn as_monomial(&self) -> Option<(i64, BigRational)> {
        if self.coeffs.len() == 1 {
            let (&e, c) = self.coeffs.iter().next().unwrap();
            Some((e, c.clone()))
        } else {
            None
        }
    }
}

pub fn rational_to_f64(r: &BigRational) -> f64 {
    // good enough for display/eval of the moderate-size coefficients here
    let n = r.numer();
    let d = r.denom();
    let nf = bigint_to_f64(n);
    let df = bigint_to_f64(d);
    nf / df
}

fn bigint_to_f64(n: &BigInt) -> f64 {
    let s = n.to_string();
    s.parse::<f64>().unwrap_or(if n.is_negative() {
        f64::NEG_INFINITY
    } else {
        f64::INFINITY
    })
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;
    fn add(mut self, rhs: LaurentPoly) -> LaurentPoly {
        for (e, c) in rhs.coeffs {
            self.add_term(e, c);
        }
        self
    }
}

impl Sub for LaurentPoly {
    type Output = LaurentPoly;
    fn sub(mut self, rhs: LaurentPoly) -> LaurentPoly {
        for (e, c) in rhs.coeffs {
            self.add_term(e, -c);
        }
        self
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            coeffs: self.coeffs.into_iter().map(|(e, c)| (e, -c)).collect(),
        }
    }
}

impl Mul for LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: LaurentPoly) -> LaurentPoly {
        &self * &rhs
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (e1, c1) in self.terms() {
            for (e2, c2) in rhs.terms() {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }
}

impl num_traits::Zero for LaurentPoly {
    fn zero() -> Self {
        LaurentPoly::zero()
    }
    fn is_zero(&self) -> bool {
        self.is_zero()
    }
}

impl num_traits::One for LaurentPoly {
    fn one() -> Self {
        LaurentPoly::one()
    }
}

impl std::fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            match e {
                0 => write!(f, "{c}")?,
                1 => write!(f, "{c}*t")?,
                _ => write!(f, "{c}*t^{e}")?,
            }
        }
        Ok(())
    }
}

/// Serialize as the map `{exponent: "num/den"}`.
impl serde::Serialize for LaurentPoly {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeMap;
        let mut m = ser.serialize_map(Some(self.coeffs.len()))?;
        for (e, c) in self.terms() {
            m.serialize_entry(&e.to_string(), &format!("{}/{}", c.numer(), c.denom()))?;
        }
        m.end()
    }
}
