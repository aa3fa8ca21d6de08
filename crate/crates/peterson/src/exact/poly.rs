use super::Scalar;
use crate::Rat;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Polynomial in one variable `t`, sparse by degree.
///
/// Zero coefficients are never stored, so equality is structural.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Poly<T> {
    terms: BTreeMap<u32, T>,
}

impl<T: Scalar> Poly<T> {
    pub fn constant(c: T) -> Self {
        Self::monomial(0, c)
    }

    pub fn monomial(power: u32, coeff: T) -> Self {
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(power, coeff);
        }
        Poly { terms }
    }

    /// The variable itself.
    pub fn t() -> Self {
        Self::monomial(1, T::one())
    }

    pub fn coeff(&self, power: u32) -> T {
        self.terms.get(&power).cloned().unwrap_or_else(T::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, &T)> {
        self.terms.iter().map(|(&p, c)| (p, c))
    }

    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().next_back().copied()
    }

    /// `Some((power, coeff))` when the polynomial is exactly one term.
    pub fn single_monomial(&self) -> Option<(u32, &T)> {
        if self.terms.len() == 1 {
            self.terms.iter().next().map(|(&p, c)| (p, c))
        } else {
            None
        }
    }

    pub fn evaluate(&self, x: &T) -> T {
        let mut acc = T::zero();
        let mut pow = T::one();
        let mut cur = 0u32;
        for (p, c) in &self.terms {
            for _ in cur..*p {
                pow = pow * x.clone();
            }
            cur = *p;
            acc = acc + c.clone() * pow.clone();
        }
        acc
    }

    fn add_term(&mut self, power: u32, coeff: T) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.remove(&power) {
            None => {
                self.terms.insert(power, coeff);
            }
            Some(old) => {
                let sum = old + coeff;
                if !sum.is_zero() {
                    self.terms.insert(power, sum);
                }
            }
        }
    }
}

impl Poly<Rat> {
    /// Constant term, i.e. the value at t = 0.
    pub fn at_zero(&self) -> Rat {
        self.coeff(0)
    }

    pub fn coeffs_nonnegative(&self) -> bool {
        self.terms.values().all(|c| !c.is_negative())
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Poly { terms: self.terms.iter().map(|(&p, v)| (p, v * c)).collect() }
    }
}

impl<T: Scalar> Add for Poly<T> {
    type Output = Self;
    fn add(mut self, rhs: Self) -> Self {
        for (p, c) in rhs.terms {
            self.add_term(p, c);
        }
        self
    }
}

impl<T: Scalar> Sub for Poly<T> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl<T: Scalar> Neg for Poly<T> {
    type Output = Self;
    fn neg(self) -> Self {
        Poly { terms: self.terms.into_iter().map(|(p, c)| (p, -c)).collect() }
    }
}

impl<T: Scalar> Mul for Poly<T> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let mut out = Poly { terms: BTreeMap::new() };
        for (pa, ca) in &self.terms {
            for (pb, cb) in &rhs.terms {
                out.add_term(pa + pb, ca.clone() * cb.clone());
            }
        }
        out
    }
}

impl<T: Scalar> Zero for Poly<T> {
    fn zero() -> Self {
        Poly { terms: BTreeMap::new() }
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl<T: Scalar> One for Poly<T> {
    fn one() -> Self {
        Self::constant(T::one())
    }
    fn is_one(&self) -> bool {
        self.single_monomial().is_some_and(|(p, c)| p == 0 && c.is_one())
    }
}

/// Renders e.g. `0`, `16`, `t`, `2t`, `4/3t`, `t^2`, `1/2 + 2t`.
impl fmt::Display for Poly<Rat> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (idx, (p, c)) in self.terms.iter().enumerate() {
            let abs = c.abs();
            if idx == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if *p == 0 || !abs.is_one() {
                write!(f, "{abs}")?;
            }
            match p {
                0 => {}
                1 => write!(f, "t")?,
                _ => write!(f, "t^{p}")?,
            }
        }
        Ok(())
    }
}
