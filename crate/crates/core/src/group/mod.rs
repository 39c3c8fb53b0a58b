//! Group framings, words and exact normal forms.
//!
//! A [`Framing`] fixes the group together with a concrete generating alphabet;
//! the same abstract group appears under several framings with different walk
//! statistics (PSL(2,Z) under `{a2, b3, b3^-1}`, under the sigma-bar letters,
//! and under `{S, T, T^-1}` are three distinct rows of the experiments).
//!
//! Letters are signed integers: `k > 0` is the k-th generator, `-k` its formal
//! inverse. Idempotent letters (`a2`, `S`, the free idempotent generators)
//! accept both signs in a [`Word`] and reduce identically; for magnetic walks
//! the sign still matters as a *step*.

mod ball;
mod braid;
mod matrix;
mod normal_form;

pub use ball::{cayley_ball, hq_ball_size_by_enumeration, CayleyBall, Element};
pub(crate) use ball::parse_mem_bytes;
pub use braid::{
    b3_is_trivial, b3_length_bounds, b3_normal_form, exponent_sum, project_b3,
    sigma_spelling_cost, NormalFormB3,
};
pub use matrix::{
    matrix_of_word, rep_f64, rep_magnus, rep_rational, ArithmeticMode, Matrix2, WordMatrix,
};
pub use normal_form::{reduce_free_product, NormalFormHq, Syllable};

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// A group together with a generating alphabet and representation parameters.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub enum Framing {
    /// Free product of `rank` copies of Z_2: idempotent generators
    /// `{g_1, ..., g_rank}`. Cayley graph: the `rank`-regular tree.
    FreeIdempotent { rank: u32 },
    /// Free group of the given rank with letters `{h_i, h_i^-1}`.
    /// Cayley graph: the `2*rank`-regular tree.
    FreeSymmetric { rank: u32 },
    /// Hecke group H_q = Z_2 * Z_q with letters `{a2, b_q, b_q^-1}`.
    /// `q = 3` is the modular group PSL(2,Z).
    Hecke { q: u32 },
    /// PSL(2,Z) under the projected braid letters
    /// `{sb1, sb2, sb1^-1, sb2^-1}`, `sb1 = a2 b3`, `sb2 = b3 a2`.
    /// `u` deforms the matrix representation (PSL(2,Z)_u); `u = 1` is the
    /// undeformed group. The symbolic structure does not depend on `u`.
    ModularSigma { u: f64 },
    /// PSL(2,Z) under `{S, T, T^-1}` (the honeycomb framing).
    ModularST,
    /// Braid group B3 under `{s1, s2, s1^-1, s2^-1}`; `u` is the Magnus
    /// parameter through `t = -u^2`.
    BraidSigma { u: f64 },
    /// B3 under `{at, at^-1, bt, bt^-1}` with `at = s1 s2 s1`,
    /// `bt = s1^-1 s2^-1`.
    BraidTilde,
}

/// One reduced letter over the `{a, b}` free-product alphabet.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AbLetter {
    A,
    /// Exponent increment of the b-generator: `+1` or `-1`.
    B(i64),
}

impl Framing {
    pub const PSL2Z: Framing = Framing::Hecke { q: 3 };

    pub fn modular_sigma() -> Framing {
        Framing::ModularSigma { u: 1.0 }
    }

    pub fn braid_sigma() -> Framing {
        Framing::BraidSigma { u: 1.0 }
    }

    /// Number of distinct positive generator indices.
    pub fn positive_letters(&self) -> u32 {
        match *self {
            Framing::FreeIdempotent { rank } => rank,
            Framing::FreeSymmetric { rank } => rank,
            Framing::Hecke { .. } | Framing::ModularST => 2,
            Framing::ModularSigma { .. } | Framing::BraidSigma { .. } | Framing::BraidTilde => 2,
        }
    }

    /// The move alphabet of the canonical simple random walk on this framing.
    pub fn moves(&self) -> Vec<i32> {
        match *self {
            Framing::FreeIdempotent { rank } => (1..=rank as i32).collect(),
            Framing::FreeSymmetric { rank } => {
                let mut v: Vec<i32> = (1..=rank as i32).collect();
                v.extend((1..=rank as i32).map(|i| -i));
                v
            }
            // a2 is its own inverse: three moves
            Framing::Hecke { .. } => vec![1, 2, -2],
            Framing::ModularST => vec![1, 2, -2],
            Framing::ModularSigma { .. } | Framing::BraidSigma { .. } | Framing::BraidTilde => {
                vec![1, 2, -1, -2]
            }
        }
    }

    /// Is the letter (or its inverse) its own inverse under reduction?
    pub fn is_idempotent_letter(&self, letter: i32) -> bool {
        match *self {
            Framing::FreeIdempotent { .. } => true,
            Framing::FreeSymmetric { .. } => false,
            Framing::Hecke { .. } | Framing::ModularST => letter.abs() == 1,
            Framing::ModularSigma { .. } | Framing::BraidSigma { .. } | Framing::BraidTilde => {
                false
            }
        }
    }

    /// Inverse move of a letter, as a step of the same alphabet.
    pub fn inverse_letter(&self, letter: i32) -> i32 {
        if self.is_idempotent_letter(letter) {
            letter.abs()
        } else {
            -letter
        }
    }

    /// Declared torsion order of the letter (`None` for infinite order).
    pub fn torsion_order(&self, letter: i32) -> Option<u32> {
        match *self {
            Framing::FreeIdempotent { .. } => Some(2),
            Framing::FreeSymmetric { .. } => None,
            Framing::Hecke { q } => match letter.abs() {
                1 => Some(2),
                2 => Some(q),
                _ => None,
            },
            Framing::ModularST => match letter.abs() {
                1 => Some(2),
                _ => None,
            },
            // sigma and tilde letters have infinite order in B3;
            // the sigma-bar letters are parabolic in PSL(2,Z)
            Framing::ModularSigma { .. } | Framing::BraidSigma { .. } | Framing::BraidTilde => None,
        }
    }

    /// Torsion order of the b-generator of the underlying free product, where
    /// one exists (3 for all the modular-group framings).
    pub fn free_product_q(&self) -> Option<u32> {
        match *self {
            Framing::Hecke { q } => Some(q),
            Framing::ModularSigma { .. } | Framing::ModularST => Some(3),
            _ => None,
        }
    }

    pub fn is_braid(&self) -> bool {
        matches!(
            self,
            Framing::BraidSigma { .. } | Framing::BraidTilde
        )
    }

    /// Spelling of a letter over the `{a2, b3}` alphabet of the underlying
    /// free product (PSL(2,Z) framings) or of the B3 projection.
    pub fn ab_spelling(&self, letter: i32) -> Result<Vec<AbLetter>> {
        use AbLetter::{A, B};
        self.check_letter(letter)?;
        let v = match *self {
            Framing::Hecke { .. } => match letter {
                1 | -1 => vec![A],
                2 => vec![B(1)],
                -2 => vec![B(-1)],
                _ => unreachable!(),
            },
            Framing::ModularST => match letter {
                1 | -1 => vec![A],
                2 => vec![A, B(1)],       // T = a2 b3
                -2 => vec![B(-1), A],     // T^-1 = b3^-1 a2
                _ => unreachable!(),
            },
            Framing::ModularSigma { .. } | Framing::BraidSigma { .. } => match letter {
                1 => vec![A, B(1)],       // sb1 = a2 b3
                2 => vec![B(1), A],       // sb2 = b3 a2
                -1 => vec![B(-1), A],     // sb1^-1 = b3^-1 a2
                -2 => vec![A, B(-1)],     // sb2^-1 = a2 b3^-1
                _ => unreachable!(),
            },
            Framing::BraidTilde => match letter {
                1 | -1 => vec![A],        // pi(at) = a2, at^-1 likewise
                2 => vec![B(1)],          // pi(bt) = b3
                -2 => vec![B(-1)],
                _ => unreachable!(),
            },
            _ => {
                return Err(Error::Config(format!(
                    "framing {self} has no {{a,b}} free-product structure"
                )))
            }
        };
        Ok(v)
    }

    pub fn check_letter(&self, letter: i32) -> Result<()> {
        let n = self.positive_letters() as i32;
        if letter == 0 || letter.abs() > n {
            return Err(Error::MalformedWord {
                letter,
                framing: self.to_string(),
            });
        }
        Ok(())
    }
}

impl std::fmt::Display for Framing {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match *self {
            Framing::FreeIdempotent { rank } => write!(f, "F{rank}-idem"),
            Framing::FreeSymmetric { rank } => write!(f, "F{rank}-sym"),
            Framing::Hecke { q } => write!(f, "H{q}"),
            Framing::ModularSigma { u } if u == 1.0 => write!(f, "PSL(2,Z)-sigma"),
            Framing::ModularSigma { u } => write!(f, "PSL(2,Z)_u-sigma(u={u})"),
            Framing::ModularST => write!(f, "PSL(2,Z)-ST"),
            Framing::BraidSigma { u } if u == 1.0 => write!(f, "B3-sigma"),
            Framing::BraidSigma { u } => write!(f, "B3-sigma(u={u})"),
            Framing::BraidTilde => write!(f, "B3-tilde"),
        }
    }
}

/// A record of walk letters in a fixed framing. Immutable after construction.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Word {
    framing: Framing,
    letters: Vec<i32>,
}

impl Word {
    pub fn new(framing: Framing, letters: Vec<i32>) -> Result<Self> {
        for &l in &letters {
            framing.check_letter(l)?;
        }
        Ok(Word { framing, letters })
    }

    pub fn empty(framing: Framing) -> Self {
        Word {
            framing,
            letters: Vec::new(),
        }
    }

    pub fn framing(&self) -> Framing {
        self.framing
    }

    pub fn letters(&self) -> &[i32] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Concatenation (same framing).
    pub fn concat(&self, other: &Word) -> Result<Word> {
        if self.framing != other.framing {
            return Err(Error::Config("concat across framings".into()));
        }
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Ok(Word {
            framing: self.framing,
            letters,
        })
    }

    pub fn inverse(&self) -> Word {
        let letters = self
            .letters
            .iter()
            .rev()
            .map(|&l| self.framing.inverse_letter(l))
            .collect();
        Word {
            framing: self.framing,
            letters,
        }
    }
}
