//! Dense univariate polynomials over the rationals, enough for squarefree tests.

use num_traits::{One, Zero};

use super::Rational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniPoly {
    /// `coeffs[i]` is the coefficient of `u^i`; no trailing zeros.
    coeffs: Vec<Rational>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn leading_coefficient(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    /// Lowest power of `u` with a nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn derivative(&self) -> UniPoly {
        UniPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * Rational::from_integer(i.into()))
                .collect(),
        )
    }

    /// Remainder of division by a nonzero polynomial.
    pub fn rem(&self, d: &UniPoly) -> UniPoly {
        let dd = d.degree().expect("division by zero polynomial");
        let lead = d.leading_coefficient().expect("nonzero").clone();
        let mut r = self.coeffs.clone();
        while r.len() > dd {
            let shift = r.len() - 1 - dd;
            let factor = r.last().expect("nonempty").clone() / &lead;
            for (i, c) in d.coeffs.iter().enumerate() {
                r[shift + i] -= &factor * c;
            }
            r.pop();
            while r.last().is_some_and(|c| c.is_zero()) {
                r.pop();
            }
        }
        UniPoly::new(r)
    }

    fn monic(&self) -> UniPoly {
        match self.leading_coefficient() {
            Some(lc) => {
                let inv = Rational::one() / lc;
                UniPoly::new(self.coeffs.iter().map(|c| c * &inv).collect())
            }
            None => self.clone(),
        }
    }

    /// Monic greatest common divisor; zero only if both inputs are zero.
    pub fn gcd(&self, other: &UniPoly) -> UniPoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Number of distinct complex roots, `deg g - deg gcd(g, g')`.
    pub fn distinct_root_count(&self) -> usize {
        let Some(d) = self.degree() else {
            return 0;
        };
        let g = self.gcd(&self.derivative());
        d - g.degree().unwrap_or(0)
    }

    pub fn is_squarefree(&self) -> bool {
        self.degree()
            .is_some_and(|d| self.distinct_root_count() == d)
    }
}
