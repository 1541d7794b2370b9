//! Exact bivariate polynomials over the rationals.
//!
//! Elements of the local ring `C{x,y}` are represented by polynomials with
//! rational coefficients. Every ideal handled by the crate is zero-dimensional,
//! so truncating power series at a degree above the degree bound is exact.

mod ordering;
mod parse;
pub mod univariate;
mod weighted;

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

pub use ordering::MonomialOrdering;
pub use parse::{parse_ideal, parse_polynomial};
pub use weighted::{
    is_convenient_sqh, is_non_degenerate, leading_form, quasihomogeneous_branch_count,
    quasihomogeneous_weights, squarefree_by_jacobian, squarefree_by_reduction, weighted_order,
    WeightedOrder, Weights,
};

pub type Rational = num_rational::BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// The monomial `x^x * y^y`.
///
/// The derived `Ord` is plain lexicographic on `(x, y)` and is only used for
/// canonical storage; use [`MonomialOrdering::cmp`] for the local orderings.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Monomial {
    pub x: u32,
    pub y: u32,
}

impl Monomial {
    pub const ONE: Monomial = Monomial { x: 0, y: 0 };

    pub const fn new(x: u32, y: u32) -> Self {
        Monomial { x, y }
    }

    pub fn degree(self) -> u32 {
        self.x + self.y
    }

    pub fn weighted_degree(self, w: Weights) -> u64 {
        u64::from(self.x) * u64::from(w.p) + u64::from(self.y) * u64::from(w.q)
    }

    pub fn divides(self, other: Monomial) -> bool {
        self.x <= other.x && self.y <= other.y
    }

    pub fn checked_div(self, other: Monomial) -> Option<Monomial> {
        other
            .divides(self)
            .then(|| Monomial::new(self.x - other.x, self.y - other.y))
    }

    pub fn lcm(self, other: Monomial) -> Monomial {
        Monomial::new(self.x.max(other.x), self.y.max(other.y))
    }
}

impl Mul for Monomial {
    type Output = Monomial;

    fn mul(self, rhs: Monomial) -> Monomial {
        Monomial::new(self.x + rhs.x, self.y + rhs.y)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn var(f: &mut fmt::Formatter<'_>, name: &str, e: u32) -> fmt::Result {
            match e {
                1 => write!(f, "{name}"),
                _ => write!(f, "{name}^{e}"),
            }
        }
        match (self.x, self.y) {
            (0, 0) => write!(f, "1"),
            (a, 0) => var(f, "x", a),
            (0, b) => var(f, "y", b),
            (a, b) => {
                var(f, "x", a)?;
                write!(f, "*")?;
                var(f, "y", b)
            }
        }
    }
}

/// A finite sum of rational terms; zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Polynomial {
    terms: BTreeMap<Monomial, Rational>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial::default()
    }

    pub fn one() -> Self {
        Polynomial::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Polynomial::term(c, Monomial::ONE)
    }

    pub fn term(c: Rational, m: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Polynomial { terms }
    }

    pub fn monomial(x: u32, y: u32) -> Self {
        Polynomial::term(Rational::one(), Monomial::new(x, y))
    }

    pub fn x() -> Self {
        Polynomial::monomial(1, 0)
    }

    pub fn y() -> Self {
        Polynomial::monomial(0, 1)
    }

    /// Builds a polynomial from `(coefficient, x-exponent, y-exponent)` triples.
    pub fn from_terms<I>(terms: I) -> Self
    where
        I: IntoIterator<Item = (Rational, Monomial)>,
    {
        let mut p = Polynomial::zero();
        for (c, m) in terms {
            p.add_term(m, &c);
        }
        p
    }

    pub fn from_int_terms(terms: &[(i64, u32, u32)]) -> Self {
        Polynomial::from_terms(terms.iter().map(|&(c, a, b)| (int(c), Monomial::new(a, b))))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn support(&self) -> impl Iterator<Item = Monomial> + '_ {
        self.terms.keys().copied()
    }

    pub fn coeff(&self, m: Monomial) -> Rational {
        self.terms.get(&m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn constant_term(&self) -> Rational {
        self.coeff(Monomial::ONE)
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: &Rational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(m).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&m);
        }
    }

    /// Maximal total degree of the support; `None` for zero.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.degree()).max()
    }

    /// Order (minimal total degree of the support), i.e. the multiplicity
    /// at the origin; `None` for zero.
    pub fn order(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.degree()).min()
    }

    pub fn is_unit(&self) -> bool {
        !self.constant_term().is_zero()
    }

    /// Drops every term of total degree `>= bound`.
    pub fn truncate(&self, bound: u32) -> Polynomial {
        Polynomial {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() < bound)
                .map(|(m, c)| (*m, c.clone()))
                .collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero();
        }
        Polynomial {
            terms: self.terms.iter().map(|(m, a)| (*m, a * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, t: Monomial) -> Polynomial {
        Polynomial {
            terms: self.terms.iter().map(|(m, a)| (*m * t, a.clone())).collect(),
        }
    }

    pub fn derivative_x(&self) -> Polynomial {
        Polynomial {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.x > 0)
                .map(|(m, c)| (Monomial::new(m.x - 1, m.y), c * int(i64::from(m.x))))
                .collect(),
        }
    }

    pub fn derivative_y(&self) -> Polynomial {
        Polynomial {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.y > 0)
                .map(|(m, c)| (Monomial::new(m.x, m.y - 1), c * int(i64::from(m.y))))
                .collect(),
        }
    }

    /// Leading monomial and coefficient with respect to a local ordering.
    pub fn leading_term(&self, ord: MonomialOrdering) -> Option<(Monomial, Rational)> {
        self.terms
            .iter()
            .max_by(|a, b| ord.cmp(*a.0, *b.0))
            .map(|(m, c)| (*m, c.clone()))
    }

    pub fn leading_monomial(&self, ord: MonomialOrdering) -> Option<Monomial> {
        self.terms.keys().copied().max_by(|a, b| ord.cmp(*a, *b))
    }

    /// Coefficients of `f(x, 0)` indexed by the power of `x`.
    pub fn restrict_y_zero(&self) -> univariate::UniPoly {
        let mut coeffs = Vec::new();
        for (m, c) in self.terms.iter().filter(|(m, _)| m.y == 0) {
            let i = m.x as usize;
            if coeffs.len() <= i {
                coeffs.resize(i + 1, Rational::zero());
            }
            coeffs[i] = c.clone();
        }
        univariate::UniPoly::new(coeffs)
    }

    /// Exact division by `y`; `None` if some term has no factor `y`.
    pub fn div_y(&self) -> Option<Polynomial> {
        if self.terms.keys().any(|m| m.y == 0) {
            return None;
        }
        Some(Polynomial {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (Monomial::new(m.x, m.y - 1), c.clone()))
                .collect(),
        })
    }

    /// Swaps the roles of `x` and `y`.
    pub fn swap_variables(&self) -> Polynomial {
        Polynomial {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (Monomial::new(m.y, m.x), c.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut acc = Polynomial::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Divides by the content so that coefficients are coprime integers and
    /// the first term in display order is positive.
    pub fn primitive(&self) -> Polynomial {
        let Some((_, first)) = self.leading_term(MonomialOrdering::Ds) else {
            return Polynomial::zero();
        };
        let mut num_gcd = BigInt::zero();
        let mut den_lcm = BigInt::one();
        for c in self.terms.values() {
            num_gcd = num_integer::Integer::gcd(&num_gcd, c.numer());
            den_lcm = num_integer::Integer::lcm(&den_lcm, c.denom());
        }
        let mut factor = Rational::new(den_lcm, num_gcd);
        if first.is_negative() {
            factor = -factor;
        }
        self.scale(&factor)
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;

    fn add(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, c);
        }
        out
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;

    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, &-c);
        }
        out
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;

    fn mul(self, rhs: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.add_term(*m1 * *m2, &(c1 * c2));
            }
        }
        out
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;

    fn neg(self) -> Polynomial {
        Polynomial {
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl $tr for Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: Polynomial) -> Polynomial {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: &Polynomial) -> Polynomial {
                (&self).$method(rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Polynomial {
    type Output = Polynomial;

    fn neg(self) -> Polynomial {
        -&self
    }
}

impl From<Monomial> for Polynomial {
    fn from(m: Monomial) -> Self {
        Polynomial::term(Rational::one(), m)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Polynomial {
        parse_polynomial(s).unwrap()
    }

    #[test]
    fn partial_derivatives_of_d_k_representative() {
        for k in 4..10u32 {
            let f = p(&format!("x^2*y - y^{}", k - 1));
            assert_eq!(f.derivative_x(), p("2*x*y"));
            assert_eq!(
                f.derivative_y(),
                p(&format!("x^2 - {}*y^{}", k - 1, k - 2))
            );
        }
    }

    #[test]
    fn zero_coefficients_are_dropped() {
        let f = p("x + y");
        let g = p("x - y");
        assert_eq!((&f + &g), p("2*x"));
        assert!((&f - &f).is_zero());
        assert_eq!(f.len(), 2);
    }

    #[test]
    fn order_and_truncation() {
        let f = p("x^3 + x*y + y^7");
        assert_eq!(f.order(), Some(2));
        assert_eq!(f.degree(), Some(7));
        assert_eq!(f.truncate(3), p("x*y"));
        assert_eq!(Polynomial::zero().order(), None);
    }

    #[test]
    fn primitive_clears_denominators() {
        let f = p("1/2*x - 3/4*y");
        assert_eq!(f.primitive(), p("2*x - 3*y"));
        assert_eq!(p("-2*x + 4*y").primitive(), p("x - 2*y"));
    }

    #[test]
    fn restriction_and_division_by_y() {
        let f = p("x^2*y - y^3 + x^5");
        assert_eq!(f.restrict_y_zero().degree(), Some(5));
        assert!(f.div_y().is_none());
        assert_eq!(p("x*y + y^2").div_y(), Some(p("x + y")));
    }
}
