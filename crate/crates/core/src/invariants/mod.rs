//! Classical invariants of plane curve singularities and the Tjurina and
//! equisingularity ideals of the supported classes.

mod fulton;

use std::fmt;

use num_integer::Integer;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::{
    is_convenient_sqh, leading_form, quasihomogeneous_branch_count, quasihomogeneous_weights,
    weighted_order, Monomial, Polynomial, Rational, WeightedOrder, Weights,
};
use crate::standard_basis::Ideal;

pub use fulton::{intersection_multiplicity, intersection_multiplicity_at_most, Multiplicity};

/// The singularity classes for which the equisingularity ideal is known.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SingularitySpec {
    A(u32),
    D(u32),
    E(u32),
    M(u32),
    Sqh { weights: Weights, f: Polynomial },
}

impl SingularitySpec {
    pub fn a(k: u32) -> Result<Self> {
        if k < 1 {
            return Err(Error::InvalidSpec("A_k needs k >= 1".into()));
        }
        Ok(SingularitySpec::A(k))
    }

    pub fn d(k: u32) -> Result<Self> {
        if k < 4 {
            return Err(Error::InvalidSpec("D_k needs k >= 4".into()));
        }
        Ok(SingularitySpec::D(k))
    }

    pub fn e(k: u32) -> Result<Self> {
        if !(6..=8).contains(&k) {
            return Err(Error::InvalidSpec("E_k needs k in {6, 7, 8}".into()));
        }
        Ok(SingularitySpec::E(k))
    }

    pub fn m(k: u32) -> Result<Self> {
        if k < 2 {
            return Err(Error::InvalidSpec("M_k needs k >= 2".into()));
        }
        Ok(SingularitySpec::M(k))
    }

    /// A convenient semiquasihomogeneous germ of weighted order `p * q`.
    pub fn sqh(weights: Weights, f: Polynomial) -> Result<Self> {
        let pq = u64::from(weights.p) * u64::from(weights.q);
        if weighted_order(&f, weights) != WeightedOrder::Finite(pq) {
            return Err(Error::InvalidSpec(format!(
                "{f} does not have ({weights})-order {pq}"
            )));
        }
        if !is_convenient_sqh(&f, weights)? {
            return Err(Error::InvalidSpec(format!(
                "{f} is not convenient semiquasihomogeneous for weights ({weights})"
            )));
        }
        Ok(SingularitySpec::Sqh { weights, f })
    }

    pub fn representative(&self) -> Polynomial {
        let p = |terms: &[(i64, u32, u32)]| Polynomial::from_int_terms(terms);
        match *self {
            SingularitySpec::A(k) => p(&[(1, 2, 0), (-1, 0, k + 1)]),
            SingularitySpec::D(k) => p(&[(1, 2, 1), (-1, 0, k - 1)]),
            SingularitySpec::E(6) => p(&[(1, 3, 0), (-1, 0, 4)]),
            SingularitySpec::E(7) => p(&[(1, 3, 0), (-1, 1, 3)]),
            SingularitySpec::E(_) => p(&[(1, 3, 0), (-1, 0, 5)]),
            SingularitySpec::M(k) => p(&[(1, k, 0), (-1, 0, k)]),
            SingularitySpec::Sqh { ref f, .. } => f.clone(),
        }
    }

    pub fn is_simple(&self) -> bool {
        matches!(
            self,
            SingularitySpec::A(_) | SingularitySpec::D(_) | SingularitySpec::E(_)
        )
    }

    /// Number of branches of the curve.
    pub fn branches(&self) -> Result<usize> {
        match self {
            SingularitySpec::Sqh { weights, f } => {
                let count = branch_count_sqh(f, *weights)?;
                if count.degenerate {
                    return Err(Error::InvalidSpec(format!("degenerate leading form of {f}")));
                }
                Ok(count.count)
            }
            _ => {
                let f = self.representative();
                let w = quasihomogeneous_weights(&f).expect("representatives are quasihomogeneous");
                Ok(quasihomogeneous_branch_count(&f, w))
            }
        }
    }
}

impl fmt::Display for SingularitySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SingularitySpec::A(k) => write!(f, "A_{k}"),
            SingularitySpec::D(k) => write!(f, "D_{k}"),
            SingularitySpec::E(k) => write!(f, "E_{k}"),
            SingularitySpec::M(k) => write!(f, "M_{k}"),
            SingularitySpec::Sqh { weights, f: g } => write!(f, "SQH({weights}; {g})"),
        }
    }
}

/// `<f_x, f_y, f>`.
pub fn tjurina_ideal(f: &Polynomial) -> Ideal {
    Ideal::new(vec![f.derivative_x(), f.derivative_y(), f.clone()])
}

/// `<f_x, f_y>`.
pub fn jacobian_ideal(f: &Polynomial) -> Ideal {
    Ideal::new(vec![f.derivative_x(), f.derivative_y()])
}

/// Minimal monomials `x^a y^b` with `a p + b q >= p q`.
pub fn weighted_monomials(w: Weights) -> Vec<Monomial> {
    let (p, q) = (u64::from(w.p), u64::from(w.q));
    let mut out: Vec<Monomial> = Vec::new();
    for b in 0..=p {
        // Smallest a with a p >= (p - b) q.
        let a = ((p - b) * q).div_ceil(p);
        if out.last().is_none_or(|m| u64::from(m.x) > a) {
            out.push(Monomial::new(a as u32, b as u32));
        }
    }
    out
}

pub fn equisingularity_ideal(spec: &SingularitySpec) -> Result<Ideal> {
    let f = spec.representative();
    match spec {
        s if s.is_simple() => Ok(tjurina_ideal(&f)),
        SingularitySpec::M(k) => Ok(tjurina_ideal(&f).sum(&Ideal::maximal_power(*k))),
        SingularitySpec::Sqh { weights, .. } => {
            let monomials = weighted_monomials(*weights).into_iter().map(Polynomial::from).collect();
            Ok(jacobian_ideal(&f).sum(&Ideal::new(monomials)))
        }
        _ => Err(Error::UnsupportedClass(spec.to_string())),
    }
}

pub fn milnor_number(f: &Polynomial) -> Result<usize> {
    jacobian_ideal(f).colength()
}

pub fn tjurina_number(f: &Polynomial) -> Result<usize> {
    tjurina_ideal(f).colength()
}

/// Branch count read from the one-variable polynomial
/// `g(u) = f0(u^b v^(p/r), u^a v^(q/r)) / (u^(ap) v^(pq/r))`
/// with `r = gcd(p, q)` and `q b - p a = r`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BranchCount {
    pub count: usize,
    /// The leading form is not reduced; `count` is then only a lower bound.
    pub degenerate: bool,
}

pub fn branch_count_sqh(f: &Polynomial, w: Weights) -> Result<BranchCount> {
    let (p, q) = (u64::from(w.p), u64::from(w.q));
    if weighted_order(f, w) != WeightedOrder::Finite(p * q) {
        return Err(Error::InvalidSpec(format!("{f} does not have ({w})-order {}", p * q)));
    }
    let f0 = leading_form(f, w)?;
    let r = p.gcd(&q);
    let (a, b) = (0..q)
        .find_map(|a| {
            let t = r + p * a;
            (t % q == 0).then_some((a, t / q))
        })
        .expect("q b - p a = gcd(p, q) is solvable");
    let mut coeffs = vec![Rational::from_integer(0.into()); r as usize + 1];
    for (m, c) in f0.terms() {
        let (alpha, beta) = (u64::from(m.x), u64::from(m.y));
        let e = b * alpha + a * beta - a * p;
        debug_assert_eq!(e * q, alpha * r);
        coeffs[e as usize] = c.clone();
    }
    let g = crate::poly::univariate::UniPoly::new(coeffs);
    let count = g.distinct_root_count();
    let degenerate = g.degree() != Some(r as usize) || !g.is_squarefree();
    Ok(BranchCount { count, degenerate })
}

/// Generic pencil element sampling for `kappa`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KappaSample {
    pub a: Rational,
    pub b: Rational,
    pub value: Multiplicity,
}

pub const KAPPA_SAMPLES: usize = 7;

fn small_rational<R: Rng>(rng: &mut R) -> Rational {
    let num = rng.gen_range(1..=97i64) * if rng.gen_bool(0.5) { 1 } else { -1 };
    let den = rng.gen_range(1..=97i64);
    Rational::new(num.into(), den.into())
}

/// `(a, b, a f_x + b f_y)` for `n` seeded pairs with nonzero entries.
pub fn kappa_pencil(f: &Polynomial, seed: u64, n: usize) -> Vec<(Rational, Rational, Polynomial)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (fx, fy) = (f.derivative_x(), f.derivative_y());
    (0..n)
        .map(|_| {
            let a = small_rational(&mut rng);
            let b = small_rational(&mut rng);
            let h = &fx.scale(&a) + &fy.scale(&b);
            (a, b, h)
        })
        .collect()
}

/// `i(f, a f_x + b f_y)` over [`kappa_pencil`].
pub fn kappa_samples(f: &Polynomial, seed: u64, n: usize) -> Vec<KappaSample> {
    kappa_pencil(f, seed, n)
        .into_iter()
        .map(|(a, b, h)| {
            let value = intersection_multiplicity(f, &h);
            KappaSample { a, b, value }
        })
        .collect()
}

/// Intersection multiplicity of `f` with a generic element of the pencil
/// spanned by its partial derivatives; non-generic members only intersect
/// more, so the minimum over the samples is taken.
pub fn kappa(f: &Polynomial, seed: u64) -> Result<usize> {
    kappa_samples(f, seed, KAPPA_SAMPLES)
        .iter()
        .filter_map(|s| s.value.finite())
        .min()
        .map(|v| v as usize)
        .ok_or(Error::NotZeroDimensional {
            cap: crate::standard_basis::DEFAULT_MAX_DEGREE,
        })
}

/// `delta` from `2 delta = mu + r - 1`.
pub fn delta(spec: &SingularitySpec) -> Result<usize> {
    let mu = milnor_number(&spec.representative())?;
    let r = spec.branches()?;
    let twice = mu + r - 1;
    assert!(twice % 2 == 0, "mu + r - 1 is odd for {spec}");
    Ok(twice / 2)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantRecord {
    pub mu: usize,
    pub tau: usize,
    pub tau_es: usize,
    pub kappa: usize,
    pub delta: usize,
    pub branches: usize,
    /// Order of the representative, i.e. the multiplicity of the curve.
    pub multiplicity: u32,
}

impl InvariantRecord {
    pub fn compute(spec: &SingularitySpec, seed: u64) -> Result<Self> {
        let f = spec.representative();
        Ok(InvariantRecord {
            mu: milnor_number(&f)?,
            tau: tjurina_number(&f)?,
            tau_es: equisingularity_ideal(spec)?.colength()?,
            kappa: kappa(&f, seed)?,
            delta: delta(spec)?,
            branches: spec.branches()?,
            multiplicity: f.order().ok_or(Error::ZeroPolynomial)?,
        })
    }

    /// `kappa <= 2 delta`.
    pub fn kappa_at_most_two_delta(&self) -> bool {
        self.kappa <= 2 * self.delta
    }

    /// `kappa = 2 delta + m - r`, which follows from `kappa = mu + m - 1`
    /// and `2 delta = mu + r - 1`.
    pub fn kappa_matches_delta_identity(&self) -> bool {
        self.kappa + self.branches == 2 * self.delta + self.multiplicity as usize
    }

    /// `delta < tau_es`, except for the node (`A_1`, also written `M_2`)
    /// where both equal one.
    pub fn delta_below_tau_es(&self, spec: &SingularitySpec) -> bool {
        if matches!(spec, SingularitySpec::A(1) | SingularitySpec::M(2)) {
            self.delta == 1 && self.tau_es == 1
        } else {
            self.delta < self.tau_es
        }
    }
}
