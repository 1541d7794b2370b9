//! Intersection multiplicity at the origin by Fulton's algorithm, working
//! only with the restrictions `F(x, 0)` and `G(x, 0)`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::poly::{Monomial, Polynomial};
use crate::standard_basis::Ideal;

/// A nonnegative integer or infinity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Multiplicity {
    Finite(u64),
    Infinite,
}

impl Multiplicity {
    pub fn finite(self) -> Option<u64> {
        match self {
            Multiplicity::Finite(n) => Some(n),
            Multiplicity::Infinite => None,
        }
    }
}

impl fmt::Display for Multiplicity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Multiplicity::Finite(n) => write!(f, "{n}"),
            Multiplicity::Infinite => write!(f, "inf"),
        }
    }
}

const STEP_BUDGET: usize = 100_000;

fn fulton_steps(f: &Polynomial, g: &Polynomial, budget: usize) -> Option<Multiplicity> {
    // Without a common component the local number is at most the Bezout
    // number; the reduction only loops forever when there is one.
    let bezout = u64::from(f.degree().unwrap_or(0)) * u64::from(g.degree().unwrap_or(0));
    let (mut f, mut g) = (f.clone(), g.clone());
    let mut acc: u64 = 0;
    for _ in 0..budget {
        if acc > bezout {
            return Some(Multiplicity::Infinite);
        }
        if f.is_unit() || g.is_unit() {
            return Some(Multiplicity::Finite(acc));
        }
        if f.is_zero() || g.is_zero() {
            return Some(Multiplicity::Infinite);
        }
        let (f0, g0) = (f.restrict_y_zero(), g.restrict_y_zero());
        if f0.is_zero() || g0.is_zero() {
            if f0.is_zero() {
                std::mem::swap(&mut f, &mut g);
            }
            // Now g = y * h and i(f, g) = i(f, y) + i(f, h), where i(f, y) is
            // the order of vanishing of f(x, 0) at 0.
            let fx = f.restrict_y_zero();
            let Some(v) = fx.valuation() else {
                return Some(Multiplicity::Infinite);
            };
            acc += v as u64;
            g = g.div_y().expect("restriction to y = 0 vanishes");
            continue;
        }
        let (r, s) = (f0.degree().unwrap(), g0.degree().unwrap());
        if r > s {
            std::mem::swap(&mut f, &mut g);
        }
        let (lo, hi) = if r > s { (g0, f0) } else { (f0, g0) };
        let shift = (hi.degree().unwrap() - lo.degree().unwrap()) as u32;
        let c = hi.leading_coefficient().unwrap() / lo.leading_coefficient().unwrap();
        g = &g - &f.mul_monomial(Monomial::new(shift, 0)).scale(&c);
    }
    None
}

/// `Some(i(f, g))` if it is at most `n`, `None` if it is larger or infinite.
///
/// When `i(F, G) <= M` the ideal contains `m^M`, so by Nakayama dropping
/// all terms of degree `> M` from `F` and `G` does not change it; and if
/// `i(F, G) > M` the truncated pair also has `i > M`. Every intermediate
/// pair is truncated at the budget left over, which keeps the polynomials
/// small no matter how large the degrees of `f` and `g` are.
pub fn intersection_multiplicity_at_most(f: &Polynomial, g: &Polynomial, n: u64) -> Option<u64> {
    let cut = |p: &Polynomial, left: u64| p.truncate(u32::try_from(left + 1).unwrap_or(u32::MAX)).primitive();
    let (mut f, mut g) = (cut(f, n), cut(g, n));
    let mut acc: u64 = 0;
    loop {
        if f.is_unit() || g.is_unit() {
            return Some(acc);
        }
        if f.is_zero() || g.is_zero() {
            return None;
        }
        let (f0, g0) = (f.restrict_y_zero(), g.restrict_y_zero());
        if f0.is_zero() || g0.is_zero() {
            if f0.is_zero() {
                std::mem::swap(&mut f, &mut g);
            }
            acc += f.restrict_y_zero().valuation()? as u64;
            if acc > n {
                return None;
            }
            let left = n - acc;
            g = cut(&g.div_y().expect("restriction to y = 0 vanishes"), left);
            f = cut(&f, left);
            continue;
        }
        let (r, s) = (f0.degree().unwrap(), g0.degree().unwrap());
        if r > s {
            std::mem::swap(&mut f, &mut g);
        }
        let (lo, hi) = if r > s { (g0, f0) } else { (f0, g0) };
        let shift = (hi.degree().unwrap() - lo.degree().unwrap()) as u32;
        let c = hi.leading_coefficient().unwrap() / lo.leading_coefficient().unwrap();
        g = cut(&(&g - &f.mul_monomial(Monomial::new(shift, 0)).scale(&c)), n - acc);
    }
}

/// `i(f, g) = dim R / <f, g>` at the origin.
///
/// Fulton's algorithm normally terminates quickly; if it exceeds its step
/// budget the colength engine is used instead, and an ideal that is not
/// zero-dimensional within the default degree cap is reported as infinite.
pub fn intersection_multiplicity(f: &Polynomial, g: &Polynomial) -> Multiplicity {
    fulton_steps(f, g, STEP_BUDGET).unwrap_or_else(|| {
        match Ideal::new(vec![f.clone(), g.clone()]).colength() {
            Ok(c) => Multiplicity::Finite(c as u64),
            Err(_) => Multiplicity::Infinite,
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_polynomial;

    fn i(f: &str, g: &str) -> Multiplicity {
        intersection_multiplicity(&parse_polynomial(f).unwrap(), &parse_polynomial(g).unwrap())
    }

    #[test]
    fn examples() {
        for k in 2..9 {
            assert_eq!(i(&format!("x^{k} - y^{k}"), "x^2"), Multiplicity::Finite(2 * k));
        }
        assert_eq!(i("y^3 - 3*x^8*y + 3*x^12", "y - x^4"), Multiplicity::Finite(12));
        assert_eq!(i("x^2 - y^3", "x^2 - y^3"), Multiplicity::Infinite);
        assert_eq!(i("x*y", "x^2 + x*y^2"), Multiplicity::Infinite);
        assert_eq!(i("x^3 - x*y^3", "9*x^2 - 2*x*y + 6*x^3"), Multiplicity::Infinite);
        assert_eq!(i("1 + x", "y"), Multiplicity::Finite(0));
        assert_eq!(i("y", "y - x^5"), Multiplicity::Finite(5));
        assert_eq!(i("x^2 - y^3", "y"), Multiplicity::Finite(2));
    }

    #[test]
    fn capped_version_agrees_below_the_cap() {
        let pairs = [
            ("x^2 - y^3", "x^3 - y^2"),
            ("x^12 - y^11", "3*x + 2*y + 2*x^2 - 6*y^2 - 2*y^9 + 2*x^4*y^8"),
            ("y^3 - 3*x^8*y + 3*x^12", "y - x^4"),
            ("x^3 - x*y^3", "9*x^2 - 2*x*y + 6*x^3"),
            ("x^2*y - y^5", "x*y + x^4"),
            ("x^5 - y^5", "x^2"),
        ];
        for (f, g) in pairs {
            let (fp, gp) = (parse_polynomial(f).unwrap(), parse_polynomial(g).unwrap());
            let exact = intersection_multiplicity(&fp, &gp).finite();
            for n in 0..16 {
                let capped = intersection_multiplicity_at_most(&fp, &gp, n);
                assert_eq!(capped, exact.filter(|&i| i <= n), "{f}, {g}, cap {n}");
            }
        }
    }

    #[test]
    fn agrees_with_colength_on_small_pairs() {
        let pairs = [
            ("x^2 - y^3", "x^3 - y^2"),
            ("x^2*y - y^5", "x*y + x^4"),
            ("x^5 + y^3 + x*y", "y^2 - x^3"),
            ("x^2*y - x*y^2", "x^4 + y^4 + x^2*y"),
        ];
        for (f, g) in pairs {
            let ideal = Ideal::new(vec![parse_polynomial(f).unwrap(), parse_polynomial(g).unwrap()]);
            assert_eq!(i(f, g), Multiplicity::Finite(ideal.colength().unwrap() as u64), "{f}, {g}");
        }
    }
}
