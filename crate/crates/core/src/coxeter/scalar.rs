//! Exact arithmetic in Q(√2, √3, √5).

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::diagram::Label;
use crate::error::{Error, Result};

const PRIMES: [i64; 3] = [2, 3, 5];

fn prime_product(mask: u8) -> i64 {
    (0..3).filter(|b| mask >> b & 1 == 1).map(|b| PRIMES[b]).product()
}

/// A Q-linear combination of √(product of a subset of {2,3,5}); the basis
/// monomial is encoded as a 3-bit mask.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExactScalar {
    terms: BTreeMap<u8, BigRational>,
}

impl ExactScalar {
    pub fn zero() -> ExactScalar {
        ExactScalar::default()
    }

    pub fn one() -> ExactScalar {
        ExactScalar::from_int(1)
    }

    pub fn from_int(v: i64) -> ExactScalar {
        ExactScalar::term(0, BigRational::from_integer(BigInt::from(v)))
    }

    pub fn from_ratio(num: i64, den: i64) -> ExactScalar {
        ExactScalar::term(0, BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    /// √p for p ∈ {2, 3, 5}.
    pub fn sqrt(p: i64) -> ExactScalar {
        let bit = PRIMES.iter().position(|&q| q == p).expect("sqrt of 2, 3 or 5");
        ExactScalar::term(1 << bit, BigRational::one())
    }

    fn term(mask: u8, c: BigRational) -> ExactScalar {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(mask, c);
        }
        ExactScalar { terms }
    }

    /// 2cos(π/m) for the supported labels; `Label::Infinity` gives 2.
    pub fn two_cos(label: Label) -> Result<ExactScalar> {
        Ok(match label {
            Label::Finite(2) => ExactScalar::zero(),
            Label::Finite(3) => ExactScalar::one(),
            Label::Finite(4) => ExactScalar::sqrt(2),
            Label::Finite(5) => &ExactScalar::from_ratio(1, 2) + &(&ExactScalar::sqrt(5) * &ExactScalar::from_ratio(1, 2)),
            Label::Finite(6) => ExactScalar::sqrt(3),
            Label::Infinity => ExactScalar::from_int(2),
            other => return Err(Error::UnsupportedLabel(other.to_string())),
        })
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn split(&self, bit: u8) -> (ExactScalar, ExactScalar) {
        let mut p = ExactScalar::zero();
        let mut q = ExactScalar::zero();
        for (&m, c) in &self.terms {
            if m & bit != 0 {
                q.terms.insert(m & !bit, c.clone());
            } else {
                p.terms.insert(m, c.clone());
            }
        }
        (p, q)
    }

    pub fn signum(&self) -> Ordering {
        let Some(top) = self.terms.keys().copied().fold(None, |acc: Option<u8>, m| Some(acc.unwrap_or(0) | m)) else {
            return Ordering::Equal;
        };
        if top == 0 {
            return self.terms[&0].cmp(&BigRational::zero());
        }
        let bit = 1u8 << (7 - top.leading_zeros());
        let (p, q) = self.split(bit);
        let (sp, sq) = (p.signum(), q.signum());
        use Ordering::*;
        match (sp, sq) {
            (Equal, s) | (s, Equal) => s,
            (Greater, Greater) => Greater,
            (Less, Less) => Less,
            _ => {
                let r = ExactScalar::from_int(PRIMES[bit.trailing_zeros() as usize]);
                let d = &(&p * &p) - &(&r * &(&q * &q));
                match sp {
                    Greater => d.signum(),
                    _ => d.signum().reverse(),
                }
            }
        }
    }

    pub fn is_positive(&self) -> bool {
        self.signum() == Ordering::Greater
    }

    pub fn to_f64(&self) -> f64 {
        self.terms
            .iter()
            .map(|(&m, c)| c.to_f64().unwrap_or(f64::NAN) * (prime_product(m) as f64).sqrt())
            .sum()
    }
}

impl Add for &ExactScalar {
    type Output = ExactScalar;
    fn add(self, rhs: &ExactScalar) -> ExactScalar {
        let mut out = self.clone();
        for (&m, c) in &rhs.terms {
            let e = out.terms.entry(m).or_insert_with(BigRational::zero);
            *e += c;
            if e.is_zero() {
                out.terms.remove(&m);
            }
        }
        out
    }
}

impl Neg for &ExactScalar {
    type Output = ExactScalar;
    fn neg(self) -> ExactScalar {
        ExactScalar {
            terms: self.terms.iter().map(|(&m, c)| (m, -c)).collect(),
        }
    }
}

impl Sub for &ExactScalar {
    type Output = ExactScalar;
    fn sub(self, rhs: &ExactScalar) -> ExactScalar {
        self + &(-rhs)
    }
}

impl Mul for &ExactScalar {
    type Output = ExactScalar;
    fn mul(self, rhs: &ExactScalar) -> ExactScalar {
        let mut out = ExactScalar::zero();
        for (&m1, c1) in &self.terms {
            for (&m2, c2) in &rhs.terms {
                let k = BigRational::from_integer(BigInt::from(prime_product(m1 & m2)));
                let e = out.terms.entry(m1 ^ m2).or_insert_with(BigRational::zero);
                *e += c1 * c2 * k;
            }
        }
        out.terms.retain(|_, c| !c.is_zero());
        out
    }
}

impl fmt::Debug for ExactScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for ExactScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(&m, c)| match m {
                0 => c.to_string(),
                _ => format!("{c}√{}", prime_product(m)),
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}
