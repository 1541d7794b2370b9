//! Known values and bounds of `gamma^es_alpha` for the registered classes.

use std::fmt;

use num_traits::One;

use crate::error::{Error, Result};
use crate::invariants::SingularitySpec;
use crate::poly::{int, Monomial, Polynomial, Rational, Weights};

use super::check_alpha;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ClosedForm {
    Exact(Rational),
    Interval { lower: Rational, upper: Rational },
}

impl ClosedForm {
    pub fn upper(&self) -> &Rational {
        match self {
            ClosedForm::Exact(v) => v,
            ClosedForm::Interval { upper, .. } => upper,
        }
    }

    pub fn lower(&self) -> &Rational {
        match self {
            ClosedForm::Exact(v) => v,
            ClosedForm::Interval { lower, .. } => lower,
        }
    }

    fn from_bounds(lower: Rational, upper: Rational) -> Self {
        assert!(lower <= upper, "lower bound {lower} above upper bound {upper}");
        if lower == upper {
            ClosedForm::Exact(lower)
        } else {
            ClosedForm::Interval { lower, upper }
        }
    }
}

impl fmt::Display for ClosedForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClosedForm::Exact(v) => write!(f, "{v}"),
            ClosedForm::Interval { lower, upper } => write!(f, "[{lower}, {upper}]"),
        }
    }
}

fn sq(r: Rational) -> Rational {
    &r * &r
}

/// `gamma^es_alpha` of the registered classes: exact values for the simple
/// singularities and ordinary multiple points, an interval for convenient
/// semiquasihomogeneous germs with `q > p >= 3`.
pub fn closed_form_gamma(spec: &SingularitySpec, alpha: &Rational) -> Result<ClosedForm> {
    check_alpha(alpha)?;
    let k = |k: u32| int(i64::from(k));
    let a = alpha.clone();
    Ok(match *spec {
        SingularitySpec::A(n) => ClosedForm::Exact(sq(k(n) + &a)),
        SingularitySpec::D(n) => {
            let first = sq(k(n) + int(2) * &a) / int(2);
            let second = sq(k(n) - int(2) + &a);
            ClosedForm::Exact(first.max(second))
        }
        SingularitySpec::E(n) => ClosedForm::Exact(sq(k(n) + int(2) * &a) / int(2)),
        // The node is A_1.
        SingularitySpec::M(2) => ClosedForm::Exact(sq(Rational::one() + &a)),
        SingularitySpec::M(n) => ClosedForm::Exact(int(2) * sq(k(n) - int(1) + &a)),
        SingularitySpec::Sqh { weights, ref f } => sqh_bounds(f, weights, &a)?,
    })
}

fn is_multiple_of(f: &Polynomial, g: &Polynomial) -> bool {
    f.primitive() == g.primitive()
}

fn binomial(q: u32, p: u32) -> Polynomial {
    Polynomial::from_int_terms(&[(1, q, 0), (-1, 0, p)])
}

fn sqh_bounds(f: &Polynomial, w: Weights, alpha: &Rational) -> Result<ClosedForm> {
    let (p, q) = (w.p, w.q);
    if !(q > p && p >= 3) {
        return Err(Error::UnsupportedClass(format!(
            "semiquasihomogeneous bounds need q > p >= 3, got ({w})"
        )));
    }
    let qr = int(i64::from(q));
    let s = int(i64::from(q / p));
    let one = Rational::one();

    // <y, x^(q - floor(q/p))> with g = y.
    let mut lower = sq(&qr - (&one - alpha) * &s) / &s;
    let mut raise = |v: Rational| {
        if v > lower {
            lower = v;
        }
    };
    // <x^3, y^(q-2)> with g = x^3.
    if p == q - 1 && is_multiple_of(f, &binomial(q, q - 1)) {
        raise(int(3) * sq(&qr - int(2) + alpha));
    }
    // <y^2, x^(q-1)> with g = y^2.
    if 2 * p > q && is_multiple_of(f, &binomial(q, p)) {
        raise(int(2) * sq(&qr - &one + alpha));
    }
    // <x^(q-1), y> with g = y, once f_y has no pure power of x below x^(q-1).
    if (0..=q.saturating_sub(2)).all(|a| f.coeff(Monomial::new(a, 1)) == int(0)) {
        raise(sq(&qr - &one + alpha));
    }
    // <y - x^4, x^11> with g = y - x^4.
    if (p, q) == (3, 12) && is_multiple_of(f, &Polynomial::from_int_terms(&[(1, 0, 3), (-3, 8, 1), (3, 12, 0)])) {
        raise(sq(int(11) + alpha));
    }

    let ratio = Rational::new(q.into(), p.into());
    let mut upper = if ratio < int(2) {
        int(3) * sq(&qr - &one + alpha)
    } else if ratio < int(4) {
        int(2) * sq(&qr - &one + alpha)
    } else {
        sq(&qr - &one + alpha)
    };
    if q >= 39 {
        upper = upper.min(int(3) * sq(&qr - int(2) + alpha));
    }
    let example_e = Polynomial::from_int_terms(&[(7, 0, 3), (15, 7, 0), (-21, 5, 1)]);
    if (p, q) == (3, 7) && *alpha == int(0) && is_multiple_of(f, &example_e) {
        upper = upper.min(int(25));
    }
    Ok(ClosedForm::from_bounds(lower, upper))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{parse_polynomial, rat};

    fn sqh(p: u32, q: u32, f: &str) -> SingularitySpec {
        SingularitySpec::sqh(Weights::new(p, q).unwrap(), parse_polynomial(f).unwrap()).unwrap()
    }

    #[test]
    fn simple_and_ordinary_values() {
        let cf = |s: SingularitySpec, a: Rational| closed_form_gamma(&s, &a).unwrap();
        assert_eq!(cf(SingularitySpec::D(7), int(0)), ClosedForm::Exact(int(25)));
        assert_eq!(cf(SingularitySpec::D(6), int(0)), ClosedForm::Exact(int(18)));
        assert_eq!(cf(SingularitySpec::E(8), int(1)), ClosedForm::Exact(int(50)));
        assert_eq!(cf(SingularitySpec::A(3), rat(1, 2)), ClosedForm::Exact(rat(49, 4)));
        assert_eq!(cf(SingularitySpec::M(3), int(0)), ClosedForm::Exact(int(8)));
        assert_eq!(cf(SingularitySpec::M(4), rat(1, 2)), ClosedForm::Exact(rat(49, 2)));
    }

    #[test]
    fn d_k_threshold() {
        // (k + 2a)^2 / 2 < (k - 2 + a)^2 exactly when k > 4 + sqrt(2) (2 + a).
        for k in 4..20u32 {
            for (num, den) in [(0, 1), (1, 3), (1, 2), (1, 1)] {
                let a = rat(num, den);
                let af = num as f64 / den as f64;
                let v = closed_form_gamma(&SingularitySpec::D(k), &a).unwrap();
                let second = sq(int(k as i64 - 2) + &a);
                let above = k as f64 > 4.0 + 2f64.sqrt() * (2.0 + af);
                assert_eq!(*v.upper() == second && second != sq(int(k as i64) + int(2) * &a) / int(2), above);
            }
        }
    }

    #[test]
    fn sqh_intervals() {
        let v = closed_form_gamma(&sqh(3, 13, "x^13 - y^3"), &int(0)).unwrap();
        assert_eq!(v, ClosedForm::Exact(int(144)));

        let v = closed_form_gamma(&sqh(5, 7, "x^7 - y^5"), &int(0)).unwrap();
        assert_eq!(v, ClosedForm::Interval { lower: int(72), upper: int(108) });

        let v = closed_form_gamma(&sqh(7, 8, "x^8 - y^7"), &int(1)).unwrap();
        assert_eq!(v, ClosedForm::Interval { lower: int(147), upper: int(192) });

        let v = closed_form_gamma(&sqh(3, 12, "y^3 - 3*x^8*y + 3*x^12"), &rat(1, 2)).unwrap();
        assert_eq!(v, ClosedForm::Exact(rat(529, 4)));

        let e = sqh(3, 7, "7*y^3 + 15*x^7 - 21*x^5*y");
        assert_eq!(closed_form_gamma(&e, &int(0)).unwrap(), ClosedForm::Interval { lower: rat(25, 2), upper: int(25) });
        assert_eq!(closed_form_gamma(&e, &int(1)).unwrap().upper(), &int(98));
    }

    #[test]
    fn unsupported_weights() {
        let s = sqh(2, 5, "x^5 - y^2");
        assert!(matches!(closed_form_gamma(&s, &int(0)), Err(Error::UnsupportedClass(_))));
    }
}
