use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::univariate::UniPoly;
use super::{Monomial, Polynomial, Rational};
use crate::error::{Error, Result};
use crate::standard_basis::Ideal;

/// Positive weights `(p, q)` attached to `x` and `y`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Weights {
    pub p: u32,
    pub q: u32,
}

impl Weights {
    pub fn new(p: u32, q: u32) -> Result<Self> {
        if p == 0 || q == 0 {
            return Err(Error::InvalidWeights { p, q });
        }
        Ok(Weights { p, q })
    }

    pub fn gcd(self) -> u32 {
        self.p.gcd(&self.q)
    }

    /// The same ratio with coprime entries.
    pub fn reduced(self) -> Weights {
        let g = self.gcd();
        Weights {
            p: self.p / g,
            q: self.q / g,
        }
    }
}

impl fmt::Display for Weights {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{}", self.p, self.q)
    }
}

impl FromStr for Weights {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidSpec(format!("weights must look like P,Q; got '{s}'"));
        let (p, q) = s.split_once(',').ok_or_else(bad)?;
        let p = p.trim().parse().map_err(|_| bad())?;
        let q = q.trim().parse().map_err(|_| bad())?;
        Weights::new(p, q)
    }
}

/// Weighted order of a power series; the zero series has infinite order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum WeightedOrder {
    Finite(u64),
    Infinite,
}

impl WeightedOrder {
    pub fn finite(self) -> Option<u64> {
        match self {
            WeightedOrder::Finite(d) => Some(d),
            WeightedOrder::Infinite => None,
        }
    }
}

impl std::ops::Add for WeightedOrder {
    type Output = WeightedOrder;

    fn add(self, rhs: WeightedOrder) -> WeightedOrder {
        match (self, rhs) {
            (WeightedOrder::Finite(a), WeightedOrder::Finite(b)) => WeightedOrder::Finite(a + b),
            _ => WeightedOrder::Infinite,
        }
    }
}

pub fn weighted_order(f: &Polynomial, w: Weights) -> WeightedOrder {
    f.support()
        .map(|m| m.weighted_degree(w))
        .min()
        .map_or(WeightedOrder::Infinite, WeightedOrder::Finite)
}

/// Sum of the terms of minimal weighted degree.
pub fn leading_form(f: &Polynomial, w: Weights) -> Result<Polynomial> {
    let d = weighted_order(f, w).finite().ok_or(Error::ZeroPolynomial)?;
    Ok(Polynomial::from_terms(
        f.terms()
            .filter(|(m, _)| m.weighted_degree(w) == d)
            .map(|(m, c)| (c.clone(), *m)),
    ))
}

/// Coprime weights for which `f` is quasihomogeneous, if the support
/// determines them uniquely.
pub fn quasihomogeneous_weights(f: &Polynomial) -> Option<Weights> {
    let support: Vec<Monomial> = f.support().collect();
    let first = *support.first()?;
    let other = support.iter().find(|m| **m != first)?;
    // p * dx = -q * dy for any two terms.
    let dx = i64::from(other.x) - i64::from(first.x);
    let dy = i64::from(other.y) - i64::from(first.y);
    if dx == 0 || dy == 0 || dx.signum() == dy.signum() {
        return None;
    }
    let (p, q) = (dy.abs(), dx.abs());
    let g = p.gcd(&q);
    let w = Weights::new(u32::try_from(p / g).ok()?, u32::try_from(q / g).ok()?).ok()?;
    let d = first.weighted_degree(w);
    support
        .iter()
        .all(|m| m.weighted_degree(w) == d)
        .then_some(w)
}

/// Splits a quasihomogeneous `f0 = x^a y^b h` and encodes `h` as a
/// one-variable polynomial whose roots correspond to the factors
/// `x^q' - c y^p'` of `h`, where `(p', q')` are the coprime weights.
fn dehomogenize(f0: &Polynomial, w: Weights) -> (u32, u32, UniPoly) {
    let a = f0.support().map(|m| m.x).min().unwrap_or(0);
    let b = f0.support().map(|m| m.y).min().unwrap_or(0);
    let step = w.reduced().q;
    let mut coeffs: Vec<Rational> = Vec::new();
    for (m, c) in f0.terms() {
        let i = ((m.x - a) / step) as usize;
        debug_assert_eq!((m.x - a) % step, 0, "input must be quasihomogeneous");
        if coeffs.len() <= i {
            coeffs.resize(i + 1, Rational::zero());
        }
        coeffs[i] = c.clone();
    }
    (a, b, UniPoly::new(coeffs))
}

/// Number of distinct branches of the quasihomogeneous curve `f0 = 0`.
pub fn quasihomogeneous_branch_count(f0: &Polynomial, w: Weights) -> usize {
    let (a, b, h) = dehomogenize(f0, w);
    usize::from(a > 0) + usize::from(b > 0) + h.distinct_root_count()
}

/// Squarefreeness of a quasihomogeneous polynomial via its one-variable
/// reduction.
pub fn squarefree_by_reduction(f0: &Polynomial, w: Weights) -> bool {
    let (a, b, h) = dehomogenize(f0, w);
    a <= 1 && b <= 1 && (h.degree() == Some(0) || h.is_squarefree())
}

/// Squarefreeness of a quasihomogeneous polynomial of weighted degree `d`
/// through its Jacobian ideal: `f0` is reduced exactly when the Jacobian
/// ideal is zero-dimensional, and then its colength is
/// `(d/p - 1)(d/q - 1)`.
pub fn squarefree_by_jacobian(f0: &Polynomial, w: Weights) -> bool {
    let Some(d) = weighted_order(f0, w).finite() else {
        return false;
    };
    if d == 0 {
        return true;
    }
    let (p, q) = (u64::from(w.p), u64::from(w.q));
    let bound = Rational::new(d.into(), p.into()) - Rational::from_integer(1.into());
    let bound = bound * (Rational::new(d.into(), q.into()) - Rational::from_integer(1.into()));
    let limit = if bound <= Rational::zero() {
        0
    } else {
        u32::try_from(bound.floor().to_integer()).unwrap_or(u32::MAX)
    };
    let jacobian = Ideal::new(vec![f0.derivative_x(), f0.derivative_y()]);
    jacobian.colength_at_most(limit).is_some()
}

/// The `(p, q)`-leading form of `f` is reduced. Both squarefree tests are
/// run and must agree.
pub fn is_non_degenerate(f: &Polynomial, w: Weights) -> Result<bool> {
    let f0 = leading_form(f, w)?;
    let by_reduction = squarefree_by_reduction(&f0, w);
    let by_jacobian = squarefree_by_jacobian(&f0, w);
    assert_eq!(
        by_reduction, by_jacobian,
        "squarefree tests disagree on leading form {f0}"
    );
    Ok(by_reduction)
}

/// The leading form meets both axes and is reduced.
pub fn is_convenient_sqh(f: &Polynomial, w: Weights) -> Result<bool> {
    let f0 = leading_form(f, w)?;
    let pure_x = f0.support().any(|m| m.y == 0 && m.x > 0);
    let pure_y = f0.support().any(|m| m.x == 0 && m.y > 0);
    Ok(pure_x && pure_y && is_non_degenerate(f, w)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_polynomial;

    fn p(s: &str) -> Polynomial {
        parse_polynomial(s).unwrap()
    }

    fn w(p: u32, q: u32) -> Weights {
        Weights::new(p, q).unwrap()
    }

    #[test]
    fn weighted_orders() {
        assert_eq!(weighted_order(&p("x^3 - y^2"), w(2, 3)), WeightedOrder::Finite(6));
        assert_eq!(
            weighted_order(&p("y^3 - 3*x^8*y + 3*x^12"), w(3, 7)),
            WeightedOrder::Finite(21)
        );
        assert_eq!(weighted_order(&Polynomial::zero(), w(1, 1)), WeightedOrder::Infinite);
    }

    #[test]
    fn leading_forms() {
        assert_eq!(leading_form(&p("y^3 - 3*x^8*y + 3*x^12"), w(3, 7)).unwrap(), p("y^3"));
        assert_eq!(
            leading_form(&p("7*y^3 + 15*x^7 - 21*x^5*y"), w(3, 7)).unwrap(),
            p("7*y^3 + 15*x^7")
        );
        for (pp, qq) in [(2, 3), (3, 5), (4, 6)] {
            let f = p(&format!("x^{qq} - y^{pp} + x^{qq}*y"));
            assert_eq!(leading_form(&f, w(pp, qq)).unwrap(), p(&format!("x^{qq} - y^{pp}")));
        }
        assert_eq!(leading_form(&Polynomial::zero(), w(1, 1)), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn convenience_and_degeneracy() {
        assert!(is_convenient_sqh(&p("x^7 - y^3"), w(3, 7)).unwrap());
        assert!(is_convenient_sqh(&p("x^6 - y^4"), w(4, 6)).unwrap());
        assert!(is_convenient_sqh(&p("7*y^3 + 15*x^7 - 21*x^5*y"), w(3, 7)).unwrap());
        // Three distinct lines, but the leading form has no pure power of x.
        let lines = p("x^2*y - y^3");
        assert!(is_non_degenerate(&lines, w(1, 1)).unwrap());
        assert!(!is_convenient_sqh(&lines, w(1, 1)).unwrap());
        let doubled = p("x^3 - x^2*y - x*y^2 + y^3");
        assert!(!is_non_degenerate(&doubled, w(1, 1)).unwrap());
        assert!(!is_convenient_sqh(&doubled, w(1, 1)).unwrap());
        assert!(!is_convenient_sqh(&p("x^4 - 2*x^2*y^3 + y^6"), w(3, 2)).unwrap());
    }

    #[test]
    fn example_d_weights() {
        let f = p("y^3 - 3*x^8*y + 3*x^12");
        assert!(!is_convenient_sqh(&f, w(3, 7)).unwrap());
        assert!(is_convenient_sqh(&f, w(3, 12)).unwrap());
    }

    #[test]
    fn recovers_weights() {
        assert_eq!(quasihomogeneous_weights(&p("x^7 + y^3")), Some(w(3, 7)));
        assert_eq!(quasihomogeneous_weights(&p("x^3 - x*y^3")), Some(w(3, 2)));
        assert_eq!(quasihomogeneous_weights(&p("x^2 + y^3 + x*y")), None);
        assert_eq!(quasihomogeneous_weights(&p("x^2")), None);
    }

    #[test]
    fn branch_counts_of_quasihomogeneous_curves() {
        assert_eq!(quasihomogeneous_branch_count(&p("x^2 - y^2"), w(1, 1)), 2);
        assert_eq!(quasihomogeneous_branch_count(&p("x^3 - y^2"), w(2, 3)), 1);
        assert_eq!(quasihomogeneous_branch_count(&p("x^2*y - y^3"), w(1, 1)), 3);
        assert_eq!(quasihomogeneous_branch_count(&p("x^3 - x*y^3"), w(3, 2)), 2);
        for k in 2..7 {
            let f = p(&format!("x^{k} - y^{k}"));
            assert_eq!(quasihomogeneous_branch_count(&f, w(1, 1)), k as usize);
        }
    }
}
