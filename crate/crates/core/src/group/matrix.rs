//! 2x2 matrix representations of the framings.
//!
//! Floating mode covers every framing (entries `2 cos(pi/q)` for Hecke, the
//! determinant-1 deformed letters for PSL(2,Z)_u / B3). Exact rational mode is
//! available where the entries are rational (q = 3 framings, the Sanov pair,
//! the idempotent triple). Exact Laurent mode is the Magnus representation of
//! B3 with `det = -t` per positive letter.

use super::{Framing, Word};
use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::ops::{Add, Mul, Sub};

/// Dense 2x2 matrix over any commutative ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix2<T> {
    pub e: [[T; 2]; 2],
}

impl<T> Matrix2<T>
where
    T: Clone + Add<Output = T> + Sub<Output = T> + Mul<Output = T> + Zero + One,
{
    pub fn new(a: T, b: T, c: T, d: T) -> Self {
        Matrix2 { e: [[a, b], [c, d]] }
    }

    pub fn identity() -> Self {
        Matrix2::new(T::one(), T::zero(), T::zero(), T::one())
    }

    pub fn det(&self) -> T {
        self.e[0][0].clone() * self.e[1][1].clone() - self.e[0][1].clone() * self.e[1][0].clone()
    }

    pub fn trace(&self) -> T {
        self.e[0][0].clone() + self.e[1][1].clone()
    }

    pub fn transpose(&self) -> Self {
        Matrix2::new(
            self.e[0][0].clone(),
            self.e[1][0].clone(),
            self.e[0][1].clone(),
            self.e[1][1].clone(),
        )
    }

    pub fn mul_ref(&self, rhs: &Self) -> Self {
        let a = &self.e;
        let b = &rhs.e;
        Matrix2::new(
            a[0][0].clone() * b[0][0].clone() + a[0][1].clone() * b[1][0].clone(),
            a[0][0].clone() * b[0][1].clone() + a[0][1].clone() * b[1][1].clone(),
            a[1][0].clone() * b[0][0].clone() + a[1][1].clone() * b[1][0].clone(),
            a[1][0].clone() * b[0][1].clone() + a[1][1].clone() * b[1][1].clone(),
        )
    }

    pub fn scale(&self, s: T) -> Self {
        Matrix2::new(
            self.e[0][0].clone() * s.clone(),
            self.e[0][1].clone() * s.clone(),
            self.e[1][0].clone() * s.clone(),
            self.e[1][1].clone() * s,
        )
    }
}

impl<T> Mul for Matrix2<T>
where
    T: Clone + Add<Output = T> + Sub<Output = T> + Mul<Output = T> + Zero + One,
{
    type Output = Matrix2<T>;
    fn mul(self, rhs: Matrix2<T>) -> Matrix2<T> {
        self.mul_ref(&rhs)
    }
}

impl Matrix2<f64> {
    /// `Tr(m m^T)` — the squared Frobenius norm; carrier of hyperbolic length.
    pub fn trace_mmt(&self) -> f64 {
        self.e[0][0] * self.e[0][0]
            + self.e[0][1] * self.e[0][1]
            + self.e[1][0] * self.e[1][0]
            + self.e[1][1] * self.e[1][1]
    }

    pub fn max_abs(&self) -> f64 {
        self.e[0][0]
            .abs()
            .max(self.e[0][1].abs())
            .max(self.e[1][0].abs())
            .max(self.e[1][1].abs())
    }

    pub fn inverse(&self) -> Option<Matrix2<f64>> {
        let d = self.det();
        if d == 0.0 {
            return None;
        }
        Some(Matrix2::new(
            self.e[1][1] / d,
            -self.e[0][1] / d,
            -self.e[1][0] / d,
            self.e[0][0] / d,
        ))
    }
}

/// Arithmetic backing of `matrix_of_word`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithmeticMode {
    Float,
    /// Exact rationals. Hecke framings need rational `2cos(pi/q)`: only q = 3.
    Rational,
    /// Magnus representation over exact Laurent polynomials (B3 framings).
    Laurent,
}

#[derive(Clone, Debug)]
pub enum WordMatrix {
    Float(Matrix2<f64>),
    Rational(Matrix2<BigRational>),
    Laurent(Matrix2<LaurentPoly>),
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn rat_matrix(a: i64, b: i64, c: i64, d: i64) -> Matrix2<BigRational> {
    Matrix2::new(rat(a), rat(b), rat(c), rat(d))
}

/// Floating letter matrices of a framing, one per move (letter, matrix).
pub fn rep_f64(framing: Framing) -> Result<Vec<(i32, Matrix2<f64>)>> {
    let s = Matrix2::new(0.0, 1.0, -1.0, 0.0);
    let out: Vec<(i32, Matrix2<f64>)> = match framing {
        Framing::Hecke { q } => {
            let lam = 2.0 * (std::f64::consts::PI / q as f64).cos();
            let t = Matrix2::new(1.0, lam, 0.0, 1.0);
            let b = s.mul_ref(&t);
            let binv = b.inverse().unwrap();
            vec![(1, s), (2, b), (-2, binv)]
        }
        Framing::ModularST => {
            let t = Matrix2::new(1.0, 1.0, 0.0, 1.0);
            let tinv = t.inverse().unwrap();
            vec![(1, s), (2, t), (-2, tinv)]
        }
        Framing::ModularSigma { u } | Framing::BraidSigma { u } => {
            if u <= 0.0 {
                return Err(Error::Config("deformation parameter u must be > 0".into()));
            }
            let s1 = Matrix2::new(u, 1.0 / u, 0.0, 1.0 / u);
            let s2 = Matrix2::new(1.0 / u, 0.0, -u, u);
            let s1i = s1.inverse().unwrap();
            let s2i = s2.inverse().unwrap();
            vec![(1, s1), (2, s2), (-1, s1i), (-2, s2i)]
        }
        Framing::BraidTilde => {
            let base = rep_f64(Framing::braid_sigma())?;
            let m = |l: i32| base.iter().find(|(k, _)| *k == l).unwrap().1.clone();
            let at = m(1).mul_ref(&m(2)).mul_ref(&m(1));
            let bt = m(-1).mul_ref(&m(-2));
            let ati = at.inverse().unwrap();
            let bti = bt.inverse().unwrap();
            vec![(1, at), (-1, ati), (2, bt), (-2, bti)]
        }
        Framing::FreeIdempotent { rank } => {
            if rank < 2 {
                return Err(Error::Config("idempotent free rank must be >= 2".into()));
            }
            // backbone triple of H_rank: g_i = b^-i a2 b^i
            let lam = 2.0 * (std::f64::consts::PI / rank as f64).cos();
            let t = Matrix2::new(1.0, lam, 0.0, 1.0);
            let b = s.mul_ref(&t);
            let binv = b.inverse().unwrap();
            let mut gens = Vec::new();
            let mut bi = Matrix2::identity();
            let mut bmi = Matrix2::identity();
            for i in 1..=rank as i32 {
                bi = bi.mul_ref(&b);
                bmi = binv.mul_ref(&bmi);
                let g = bmi.mul_ref(&s).mul_ref(&bi);
                gens.push((i, g));
            }
            gens
        }
        Framing::FreeSymmetric { rank } => {
            if rank != 2 {
                return Err(Error::UnsupportedMode(format!(
                    "no matrix representation configured for F{rank}-sym"
                )));
            }
            let h1 = Matrix2::new(1.0, 2.0, 0.0, 1.0);
            let h2 = Matrix2::new(1.0, 0.0, 2.0, 1.0);
            let h1i = h1.inverse().unwrap();
            let h2i = h2.inverse().unwrap();
            vec![(1, h1), (2, h2), (-1, h1i), (-2, h2i)]
        }
    };
    Ok(out)
}

/// Exact rational letter matrices, where the representation is rational.
pub fn rep_rational(framing: Framing) -> Result<Vec<(i32, Matrix2<BigRational>)>> {
    let s = rat_matrix(0, 1, -1, 0);
    let out: Vec<(i32, Matrix2<BigRational>)> = match framing {
        Framing::Hecke { q: 3 } => {
            let b = rat_matrix(0, 1, -1, -1); // S*T
            let binv = rat_matrix(-1, -1, 1, 0);
            vec![(1, s), (2, b), (-2, binv)]
        }
        Framing::Hecke { q } => {
            return Err(Error::UnsupportedMode(format!(
                "2cos(pi/{q}) is irrational; exact mode supports q = 3 only"
            )))
        }
        Framing::ModularST => {
            vec![(1, s), (2, rat_matrix(1, 1, 0, 1)), (-2, rat_matrix(1, -1, 0, 1))]
        }
        Framing::ModularSigma { u } => {
            if u != 1.0 {
                return Err(Error::UnsupportedMode(
                    "exact mode for PSL(2,Z)_u needs u = 1".into(),
                ));
            }
            vec![
                (1, rat_matrix(1, 1, 0, 1)),
                (2, rat_matrix(1, 0, -1, 1)),
                (-1, rat_matrix(1, -1, 0, 1)),
                (-2, rat_matrix(1, 0, 1, 1)),
            ]
        }
        Framing::FreeIdempotent { rank: 3 } => {
            let b = rat_matrix(0, 1, -1, -1);
            let binv = rat_matrix(-1, -1, 1, 0);
            let mut gens = Vec::new();
            let mut bi = Matrix2::identity();
            let mut bmi = Matrix2::identity();
            for i in 1..=3 {
                bi = bi.mul_ref(&b);
                bmi = binv.mul_ref(&bmi);
                gens.push((i, bmi.mul_ref(&s).mul_ref(&bi)));
            }
            gens
        }
        Framing::FreeSymmetric { rank: 2 } => vec![
            (1, rat_matrix(1, 2, 0, 1)),
            (2, rat_matrix(1, 0, 2, 1)),
            (-1, rat_matrix(1, -2, 0, 1)),
            (-2, rat_matrix(1, 0, -2, 1)),
        ],
        other => {
            return Err(Error::UnsupportedMode(format!(
                "no exact rational representation for {other}"
            )))
        }
    };
    Ok(out)
}

/// Magnus letter matrices of B3 over exact Laurent polynomials.
/// `det(s_i) = -t`, `det(s_i^-1) = -1/t`.
pub fn rep_magnus() -> Vec<(i32, Matrix2<LaurentPoly>)> {
    let one = LaurentPoly::one;
    let t = LaurentPoly::t;
    let neg = |p: LaurentPoly| -p;
    let tinv = || LaurentPoly::term(-1, BigRational::one());
    let s1 = Matrix2::new(neg(t()), one(), LaurentPoly::zero(), one());
    let s2 = Matrix2::new(one(), LaurentPoly::zero(), t(), neg(t()));
    let s1i = Matrix2::new(neg(tinv()), tinv(), LaurentPoly::zero(), one());
    let s2i = Matrix2::new(one(), LaurentPoly::zero(), one(), neg(tinv()));
    vec![(1, s1), (2, s2), (-1, s1i), (-2, s2i)]
}

/// Product of the letter matrices of a word, in the requested arithmetic.
///
/// The determinant invariant is verified: 1 for the unimodular
/// representations, `(-t)^p` (p the exponent sum) for the Magnus one.
pub fn matrix_of_word(word: &Word, mode: ArithmeticMode) -> Result<WordMatrix> {
    let framing = word.framing();
    match mode {
        ArithmeticMode::Float => {
            let rep = rep_f64(framing)?;
            let find = |l: i32| -> Result<&Matrix2<f64>> {
                rep.iter()
                    .find(|(k, _)| *k == l)
                    .map(|(_, m)| m)
                    .ok_or(Error::MalformedWord {
                        letter: l,
                        framing: framing.to_string(),
                    })
            };
            let mut m = Matrix2::identity();
            for &l in word.letters() {
                // idempotent letters accept both signs as walk steps
                let l = if framing.is_idempotent_letter(l) { l.abs() } else { l };
                m = m.mul_ref(find(l)?);
            }
            Ok(WordMatrix::Float(m))
        }
        ArithmeticMode::Rational => {
            let rep = rep_rational(framing)?;
            let find = |l: i32| -> Result<&Matrix2<BigRational>> {
                rep.iter()
                    .find(|(k, _)| *k == l)
                    .map(|(_, m)| m)
                    .ok_or(Error::MalformedWord {
                        letter: l,
                        framing: framing.to_string(),
                    })
            };
            let mut m: Matrix2<BigRational> = Matrix2::identity();
            for &l in word.letters() {
                let l = if framing.is_idempotent_letter(l) { l.abs() } else { l };
                m = m.mul_ref(find(l)?);
            }
            let det = m.det();
            if det != rat(1) && det != rat(-1) {
                return Err(Error::NumericalConsistency(format!(
                    "unimodular representation produced det {det}"
                )));
            }
            Ok(WordMatrix::Rational(m))
        }
        ArithmeticMode::Laurent => {
            if !framing.is_braid() {
                return Err(Error::UnsupportedMode(format!(
                    "Laurent (Magnus) mode applies to B3 framings, not {framing}"
                )));
            }
            let rep = rep_magnus();
            let spell: Vec<i32> = match framing {
                Framing::BraidSigma { .. } => word.letters().to_vec(),
                Framing::BraidTilde => {
                    let mut v = Vec::new();
                    for &l in word.letters() {
                        match l {
                            1 => v.extend([1, 2, 1]),
                            -1 => v.extend([-1, -2, -1]),
                            2 => v.extend([-1, -2]),
                            -2 => v.extend([2, 1]),
                            _ => unreachable!(),
                        }
                    }
                    v
                }
                _ => unreachable!(),
            };
            let mut m: Matrix2<LaurentPoly> = Matrix2::identity();
            let mut p: i64 = 0;
            for l in spell {
                let (_, g) = rep.iter().find(|(k, _)| *k == l).unwrap();
                m = m.mul_ref(g);
                p += l.signum() as i64;
            }
            let expect = if p >= 0 {
                LaurentPoly::t()
            } else {
                LaurentPoly::term(-1, BigRational::one())
            };
            let mut det_expect = LaurentPoly::one();
            for _ in 0..p.unsigned_abs() {
                det_expect = det_expect * expect.clone();
            }
            if p % 2 != 0 {
                det_expect = -det_expect;
            }
            if m.det() != det_expect {
                return Err(Error::NumericalConsistency(
                    "Magnus determinant != (-t)^p".into(),
                ));
            }
            Ok(WordMatrix::Laurent(m))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn s_squared_is_minus_identity() {
        let w = Word::new(Framing::PSL2Z, vec![1, 1]).unwrap();
        match matrix_of_word(&w, ArithmeticMode::Rational).unwrap() {
            WordMatrix::Rational(m) => {
                assert_eq!(m, rat_matrix(-1, 0, 0, -1).scale(rat(1)));
            }
            _ => unreachable!(),
        }
        // reduces to the identity of PSL(2,Z)
        let nf = crate::group::reduce_free_product(&w).unwrap();
        assert!(nf.is_identity());
    }

    #[test]
    fn empty_word_is_identity() {
        let w = Word::empty(Framing::braid_sigma());
        match matrix_of_word(&w, ArithmeticMode::Laurent).unwrap() {
            WordMatrix::Laurent(m) => assert_eq!(m, Matrix2::identity()),
            _ => unreachable!(),
        }
    }

    #[test]
    fn center_is_t_cubed_identity() {
        let w = Word::new(Framing::braid_sigma(), vec![1, 2, 1, 2, 1, 2]).unwrap();
        match matrix_of_word(&w, ArithmeticMode::Laurent).unwrap() {
            WordMatrix::Laurent(m) => {
                let t3 = LaurentPoly::term(3, rat(1));
                assert_eq!(m.e[0][0], t3);
                assert_eq!(m.e[1][1], t3);
                assert!(m.e[0][1].is_zero() && m.e[1][0].is_zero());
            }
            _ => unreachable!(),
        }
        // (s1 s2 s1)^2 likewise
        let w = Word::new(Framing::braid_sigma(), vec![1, 2, 1, 1, 2, 1]).unwrap();
        match matrix_of_word(&w, ArithmeticMode::Laurent).unwrap() {
            WordMatrix::Laurent(m) => {
                assert_eq!(m.e[0][0], LaurentPoly::term(3, rat(1)));
                assert!(m.e[0][1].is_zero());
            }
            _ => unreachable!(),
        }
    }

    #[test]
    fn exact_mode_rejects_irrational_entries() {
        let w = Word::new(Framing::Hecke { q: 5 }, vec![1, 2]).unwrap();
        assert!(matches!(
            matrix_of_word(&w, ArithmeticMode::Rational),
            Err(Error::UnsupportedMode(_))
        ));
    }

    #[test]
    fn magnus_letters_invert() {
        let rep = rep_magnus();
        let m = |l: i32| rep.iter().find(|(k, _)| *k == l).unwrap().1.clone();
        assert_eq!(m(1).mul_ref(&m(-1)), Matrix2::identity());
        assert_eq!(m(2).mul_ref(&m(-2)), Matrix2::identity());
    }

    #[test]
    fn homomorphism_property_rational() {
        let u = Word::new(Framing::modular_sigma(), vec![1, 2, -1, 2]).unwrap();
        let v = Word::new(Framing::modular_sigma(), vec![-2, -2, 1, 1]).unwrap();
        let uv = u.concat(&v).unwrap();
        let get = |w: &Word| match matrix_of_word(w, ArithmeticMode::Rational).unwrap() {
            WordMatrix::Rational(m) => m,
            _ => unreachable!(),
        };
        assert_eq!(get(&u).mul_ref(&get(&v)), get(&uv));
    }
}
