//! Exact arithmetic in the interpretation parameter μ.
//!
//! Polynomials are kept in the basis t = 1 − μ. The likelihood of a premise
//! multiset in a world is μ^s (1 − μ)^(n − s) = (1 − t)^s t^(n − s), and the
//! limit μ → 1 becomes a comparison of orders at t = 0.

use std::fmt;
use std::ops::{Add, AddAssign, Mul};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::logic::{satisfied_count, Formula, World};
use crate::rational::{format_fraction, in_unit_interval, Rational};

/// Largest premise multiset accepted when building likelihood polynomials.
pub const MAX_PREMISES: usize = 64;

/// Either an exact probability or the undefined 0/0 outcome.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Outcome {
    Defined(Rational),
    Undefined,
}

impl Outcome {
    pub fn value(&self) -> Option<&Rational> {
        match self {
            Outcome::Defined(r) => Some(r),
            Outcome::Undefined => None,
        }
    }

    pub fn is_undefined(&self) -> bool {
        matches!(self, Outcome::Undefined)
    }

    pub fn is_one(&self) -> bool {
        self.value().is_some_and(One::is_one)
    }

    /// `num / den`, undefined when `den` is zero.
    pub fn ratio(num: Rational, den: Rational) -> Self {
        if den.is_zero() {
            Outcome::Undefined
        } else {
            Outcome::Defined(num / den)
        }
    }
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Outcome::Defined(r) => f.write_str(&format_fraction(r)),
            Outcome::Undefined => f.write_str("undefined"),
        }
    }
}

/// Polynomial Σ c_i t^i with t = 1 − μ. Trailing zeros are trimmed, so the
/// zero polynomial has no coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct MuPolynomial {
    coeffs: Vec<Rational>,
}

impl MuPolynomial {
    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_coeffs(vec![c])
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    /// The polynomial t, i.e. 1 − μ.
    pub fn t() -> Self {
        Self::from_coeffs(vec![Rational::zero(), Rational::one()])
    }

    /// The polynomial μ = 1 − t.
    pub fn mu() -> Self {
        Self::from_coeffs(vec![Rational::one(), -Rational::one()])
    }

    pub fn from_coeffs(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    /// μ^satisfied (1 − μ)^(total − satisfied), expanded in t.
    pub fn bernoulli(satisfied: usize, total: usize) -> Result<Self> {
        if total > MAX_PREMISES {
            return Err(Error::Resource {
                what: format!("premise multiset of size {total}"),
                limit: MAX_PREMISES,
            });
        }
        assert!(satisfied <= total);
        let shift = total - satisfied;
        let mut coeffs = vec![Rational::zero(); total + 1];
        // (1 - t)^s = Σ_j C(s, j) (-1)^j t^j
        let mut binom = BigInt::one();
        for j in 0..=satisfied {
            let c = if j % 2 == 0 {
                binom.clone()
            } else {
                -binom.clone()
            };
            coeffs[shift + j] = Rational::from_integer(c);
            binom = binom * BigInt::from(satisfied - j) / BigInt::from(j + 1);
        }
        Ok(Self::from_coeffs(coeffs))
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Order of vanishing at t = 0 (μ = 1); `None` for the zero polynomial.
    pub fn order_at_one(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn eval_t(&self, t: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * t + c)
    }

    pub fn eval_mu(&self, mu: &Rational) -> Rational {
        self.eval_t(&(Rational::one() - mu))
    }

    pub fn scale(&self, k: &Rational) -> Self {
        if k.is_zero() {
            return Self::zero();
        }
        Self {
            coeffs: self.coeffs.iter().map(|c| c * k).collect(),
        }
    }

    /// `self += k * other`
    pub fn add_scaled(&mut self, other: &MuPolynomial, k: &Rational) {
        if self.coeffs.len() < other.coeffs.len() {
            self.coeffs.resize(other.coeffs.len(), Rational::zero());
        }
        for (mine, theirs) in self.coeffs.iter_mut().zip(&other.coeffs) {
            *mine += theirs * k;
        }
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
    }
}

impl AddAssign<&MuPolynomial> for MuPolynomial {
    fn add_assign(&mut self, rhs: &MuPolynomial) {
        self.add_scaled(rhs, &Rational::one());
    }
}

impl Add for &MuPolynomial {
    type Output = MuPolynomial;

    fn add(self, rhs: &MuPolynomial) -> MuPolynomial {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Mul for &MuPolynomial {
    type Output = MuPolynomial;

    fn mul(self, rhs: &MuPolynomial) -> MuPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return MuPolynomial::zero();
        }
        let mut coeffs = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        MuPolynomial::from_coeffs(coeffs)
    }
}

impl fmt::Display for MuPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})t")?,
                _ => write!(f, "({c})t^{i}")?,
            }
        }
        Ok(())
    }
}

/// p(Δ | w) as a polynomial: μ^|Δ|_w (1 − μ)^(|Δ| − |Δ|_w), with multiplicity.
pub fn likelihood_poly(premises: &[Formula], world: World) -> Result<MuPolynomial> {
    MuPolynomial::bernoulli(satisfied_count(premises, world), premises.len())
}

/// A quotient of two polynomials in t = 1 − μ.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MuRationalFunction {
    pub num: MuPolynomial,
    pub den: MuPolynomial,
}

impl MuRationalFunction {
    pub fn new(num: MuPolynomial, den: MuPolynomial) -> Self {
        Self { num, den }
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(MuPolynomial::constant(c), MuPolynomial::one())
    }

    /// Exact value at `mu`; undefined wherever the denominator vanishes.
    pub fn evaluate_at(&self, mu: &Rational) -> Result<Outcome> {
        if !in_unit_interval(mu) {
            return Err(Error::MuDomain(format_fraction(mu)));
        }
        Ok(Outcome::ratio(self.num.eval_mu(mu), self.den.eval_mu(mu)))
    }

    /// Limit as μ → 1 from below.
    ///
    /// With a and b the orders of numerator and denominator at t = 0: a > b
    /// gives 0 and a = b gives the ratio of the lowest coefficients. A zero
    /// denominator, or a < b (divergent; never produced by a query), is
    /// undefined.
    pub fn limit_at_one(&self) -> Outcome {
        let Some(b) = self.den.order_at_one() else {
            return Outcome::Undefined;
        };
        match self.num.order_at_one() {
            None => Outcome::Defined(Rational::zero()),
            Some(a) if a > b => Outcome::Defined(Rational::zero()),
            Some(a) if a == b => Outcome::Defined(self.num.coeff(a) / self.den.coeff(b)),
            Some(_) => Outcome::Undefined,
        }
    }
}

impl fmt::Display for MuRationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}] / [{}]", self.num, self.den)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::{parse_premises, Vocabulary};
    use crate::rational::ratio;

    /// Independent expansion: multiply out μ and (1 − μ) factors one at a time.
    fn product_oracle(satisfied: usize, total: usize) -> MuPolynomial {
        let mut p = MuPolynomial::one();
        for _ in 0..satisfied {
            p = &p * &MuPolynomial::mu();
        }
        for _ in satisfied..total {
            p = &p * &MuPolynomial::t();
        }
        p
    }

    #[test]
    fn bernoulli_matches_repeated_products() {
        for total in 0..=8 {
            for s in 0..=total {
                assert_eq!(
                    MuPolynomial::bernoulli(s, total).unwrap(),
                    product_oracle(s, total),
                    "s={s} n={total}"
                );
            }
        }
    }

    #[test]
    fn likelihood_examples() {
        let v = Vocabulary::propositional(&["rain", "wet"]).unwrap();
        let delta = parse_premises("rain; rain; wet; ~wet", &v).unwrap();
        assert_eq!(
            likelihood_poly(&delta, World::new(3, 2)).unwrap(),
            product_oracle(3, 4)
        );
        assert_eq!(
            likelihood_poly(&[], World::new(2, 2)).unwrap(),
            MuPolynomial::one()
        );
        let rain = parse_premises("rain", &v).unwrap();
        assert_eq!(
            likelihood_poly(&rain, World::new(0, 2)).unwrap(),
            MuPolynomial::t()
        );
    }

    #[test]
    fn premise_cap() {
        assert!(MuPolynomial::bernoulli(3, 65).is_err());
        assert!(MuPolynomial::bernoulli(64, 64).is_ok());
    }

    #[test]
    fn evaluation_and_domain() {
        let f = MuRationalFunction::constant(ratio(3, 4));
        for mu in [ratio(0, 1), ratio(1, 3), ratio(1, 1)] {
            assert_eq!(f.evaluate_at(&mu).unwrap(), Outcome::Defined(ratio(3, 4)));
        }
        assert!(matches!(
            f.evaluate_at(&ratio(3, 2)),
            Err(Error::MuDomain(_))
        ));
        assert!(matches!(
            f.evaluate_at(&ratio(-1, 2)),
            Err(Error::MuDomain(_))
        ));
    }

    #[test]
    fn limits() {
        // t / 1 -> 0
        let f = MuRationalFunction::new(MuPolynomial::t(), MuPolynomial::one());
        assert_eq!(f.limit_at_one(), Outcome::Defined(ratio(0, 1)));
        // μ²(1−μ) / μ(1−μ) -> 1, while the point value at μ = 1 is 0/0
        let g = MuRationalFunction::new(product_oracle(2, 3), product_oracle(1, 2));
        assert_eq!(g.limit_at_one(), Outcome::Defined(ratio(1, 1)));
        assert_eq!(g.evaluate_at(&ratio(1, 1)).unwrap(), Outcome::Undefined);
        let zero_den = MuRationalFunction::new(MuPolynomial::one(), MuPolynomial::zero());
        assert_eq!(zero_den.limit_at_one(), Outcome::Undefined);
        let divergent = MuRationalFunction::new(MuPolynomial::one(), MuPolynomial::t());
        assert_eq!(divergent.limit_at_one(), Outcome::Undefined);
    }
}
