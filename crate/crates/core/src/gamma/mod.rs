//! The invariants `lambda_alpha(f; I, g)`, `gamma_alpha(f; I)` and their
//! maxima over complete intersection ideals containing the Tjurina or
//! equisingularity ideal of `f`.

mod closed_form;
mod search;
mod verify;

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::invariants::{
    equisingularity_ideal, intersection_multiplicity, intersection_multiplicity_at_most, kappa_pencil,
    tjurina_ideal, Multiplicity, SingularitySpec, KAPPA_SAMPLES,
};
use crate::poly::{rat, Polynomial, Rational};
use crate::standard_basis::Ideal;

pub use closed_form::{closed_form_gamma, ClosedForm};
pub use search::{
    gamma_star_search, search_profile, tau_ci_search, Family, IdealProfile, SearchProfile,
};
pub use verify::{sandwich_check, verify_paper, Fact, SandwichReport, VerificationReport};

/// Which ideal the complete intersections have to contain.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Flavor {
    /// The Tjurina ideal `<f, f_x, f_y>`.
    Ea,
    /// The equisingularity ideal.
    Es,
}

impl Flavor {
    pub fn ideal(self, spec: &SingularitySpec) -> Result<Ideal> {
        match self {
            Flavor::Ea => Ok(tjurina_ideal(&spec.representative())),
            Flavor::Es => equisingularity_ideal(spec),
        }
    }
}

impl fmt::Display for Flavor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Flavor::Ea => "ea",
            Flavor::Es => "es",
        })
    }
}

impl FromStr for Flavor {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "ea" => Ok(Flavor::Ea),
            "es" => Ok(Flavor::Es),
            _ => Err(Error::InvalidSpec(format!("unknown flavor {s:?}"))),
        }
    }
}

/// Knobs of the candidate search. Everything random is drawn from ChaCha8
/// streams derived from `seed`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Budget {
    /// Number of seeded random two-generator ideals.
    pub random_ideals: usize,
    /// Maximal number of polynomials in the generator pool they are drawn from.
    pub pool_size: usize,
    /// Absolute values of the coefficients used in structured combinations.
    pub coefficients: Vec<i64>,
    /// Random combinations of the generators tried per ideal.
    pub g_budget: usize,
    pub seed: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            random_ideals: 48,
            pool_size: 32,
            coefficients: vec![1, 2, 3],
            g_budget: 4,
            seed: 0,
        }
    }
}

impl Budget {
    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    /// Nonzero ratios `b / a` with `a, b` from the coefficient set, both signs.
    pub(crate) fn ratios(&self) -> Vec<Rational> {
        let mut out: Vec<Rational> = Vec::new();
        for &a in &self.coefficients {
            for &b in &self.coefficients {
                for sign in [1, -1] {
                    let r = rat(sign * b, a);
                    if !r.is_zero() && !out.contains(&r) {
                        out.push(r);
                    }
                }
            }
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GammaQuery {
    pub alpha: Rational,
    pub spec: SingularitySpec,
    pub flavor: Flavor,
    pub budget: Budget,
}

impl GammaQuery {
    pub fn new(spec: SingularitySpec, alpha: Rational, flavor: Flavor, budget: Budget) -> Result<Self> {
        check_alpha(&alpha)?;
        Ok(GammaQuery {
            alpha,
            spec,
            flavor,
            budget,
        })
    }
}

pub(crate) fn check_alpha(alpha: &Rational) -> Result<()> {
    if *alpha < Rational::zero() || *alpha > Rational::one() {
        return Err(Error::AlphaOutOfRange(alpha.to_string()));
    }
    Ok(())
}

/// How a searched value relates to the known closed form.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Status {
    /// Equal to an exact closed form.
    MatchesClosedForm,
    /// Below a known upper bound, which is not known to be attained.
    WithinUpperBound,
    /// Nothing better than the certified lower bound is known, or the search
    /// stayed below an exact closed form.
    LowerBoundOnly,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::MatchesClosedForm => "MatchesClosedForm",
            Status::WithinUpperBound => "WithinUpperBound",
            Status::LowerBoundOnly => "LowerBoundOnly",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GammaReport {
    pub alpha: Rational,
    /// Certified lower bound for `gamma_alpha`.
    pub gamma_value: Rational,
    pub witness_ideal: Vec<Polynomial>,
    pub witness_colength: usize,
    /// `None` when `(1 + alpha)^2 dim R/I` is the larger branch.
    pub witness_g: Option<Polynomial>,
    pub intersection: Option<u64>,
    pub lambda: Option<Rational>,
    pub closed_form: Option<ClosedForm>,
    pub status: Status,
    pub candidates: usize,
}

/// `(alpha i + (1 - alpha) d)^2 / (i - d)`, the value of `lambda_alpha` in
/// terms of `i = i(f, g)` and `d = dim R/I`. Requires `i > d`.
pub fn lambda(i: u64, d: usize, alpha: &Rational) -> Rational {
    assert!(i > d as u64, "lambda needs i(f, g) > dim R/I");
    let (i, d) = (Rational::from_integer(i.into()), Rational::from_integer(d.into()));
    let num = alpha * &i + (Rational::one() - alpha) * &d;
    &num * &num / (i - d)
}

/// `(1 + alpha)^2 d`.
pub fn dimension_branch(d: usize, alpha: &Rational) -> Rational {
    let s = Rational::one() + alpha;
    &s * &s * Rational::from_integer(d.into())
}

/// `lambda_alpha(f; I, g)` with membership of `g` checked.
pub fn lambda_alpha(f: &Polynomial, ideal: &Ideal, g: &Polynomial, alpha: &Rational) -> Result<Rational> {
    check_alpha(alpha)?;
    if !ideal.contains(g)? {
        return Err(Error::MembershipViolation(format!("{g} is not in the ideal")));
    }
    let d = ideal.colength()?;
    let i = match intersection_multiplicity(f, g) {
        Multiplicity::Finite(i) => i,
        Multiplicity::Infinite => return Err(Error::InfiniteIntersection),
    };
    if i <= d as u64 {
        return Err(Error::MembershipViolation(format!(
            "i(f, {g}) = {i} does not exceed dim R/I = {d}; the ideal does not contain the Tjurina ideal"
        )));
    }
    Ok(lambda(i, d, alpha))
}

/// Outcome of evaluating `i(f, g)` over the candidate elements of one ideal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct MinIntersection {
    /// First element reaching the smallest finite `i(f, g)`.
    pub best: Option<(Polynomial, u64)>,
    pub evaluated: usize,
    /// Pairs with `i(f, g) <= dim R/I`; always empty when `I` contains the
    /// Tjurina ideal.
    pub violations: Vec<(Polynomial, u64)>,
}

/// Elements of `I` tried when minimizing `i(f, g)`, in a fixed order:
/// generators, standard basis elements, two-term combinations with ratios
/// from the budget, members of the pencil `a f_x + b f_y` (which lie in
/// every ideal containing the Tjurina ideal) and seeded random combinations
/// of the generators.
pub(crate) fn g_candidates(
    f: &Polynomial,
    ideal: &Ideal,
    budget: &Budget,
    stream: u64,
) -> Result<Vec<Polynomial>> {
    let gens: Vec<Polynomial> = ideal.generators().iter().filter(|g| !g.is_zero()).cloned().collect();
    let mut out: Vec<Polynomial> = gens.clone();
    out.extend(ideal.standard_basis()?);
    let ratios = budget.ratios();
    for (j, b) in gens.iter().enumerate() {
        for a in &gens[..j] {
            for r in &ratios {
                out.push(a + &b.scale(r));
            }
        }
    }
    out.extend(kappa_pencil(f, budget.seed, KAPPA_SAMPLES).into_iter().map(|(_, _, h)| h));
    let mut rng = ChaCha8Rng::seed_from_u64(budget.seed ^ stream.wrapping_mul(0x9E37_79B9_7F4A_7C15));
    for _ in 0..budget.g_budget {
        let mut h = Polynomial::zero();
        for g in &gens {
            let c = rat(rng.gen_range(-97..=97i64), rng.gen_range(1..=97i64));
            h = &h + &g.scale(&c);
        }
        out.push(h);
    }
    let mut seen = std::collections::HashSet::new();
    Ok(out
        .into_iter()
        .filter(|g| !g.is_zero())
        .map(|g| g.primitive())
        .filter(|g| seen.insert(g.clone()))
        .collect())
}

/// Smallest `i(f, g)` over the candidate elements, if it is at most
/// `2 dim R/I`; larger values never enter `gamma_alpha`. Stops early at
/// `dim + 1`, below which nothing can go once `I` contains the Tjurina ideal.
pub(crate) fn min_intersection(
    f: &Polynomial,
    ideal: &Ideal,
    colength: usize,
    budget: &Budget,
    stream: u64,
) -> Result<MinIntersection> {
    let mut out = MinIntersection {
        best: None,
        evaluated: 0,
        violations: Vec::new(),
    };
    for g in g_candidates(f, ideal, budget, stream)? {
        out.evaluated += 1;
        // Only values below the current best matter.
        let cap = match &out.best {
            Some((_, b)) => b - 1,
            None => 2 * colength as u64,
        };
        let Some(i) = intersection_multiplicity_at_most(f, &g, cap) else {
            continue;
        };
        if i <= colength as u64 {
            out.violations.push((g, i));
            continue;
        }
        if out.best.as_ref().is_none_or(|(_, b)| i < *b) {
            out.best = Some((g, i));
        }
        if i == colength as u64 + 1 {
            break;
        }
    }
    Ok(out)
}

/// Value of `gamma_alpha` for colength `d` and smallest intersection
/// multiplicity `i`, with the `lambda` branch used only when `i <= 2d`.
/// Returns the value and `lambda` when it is at least the dimension branch.
pub(crate) fn gamma_value(d: usize, i: Option<u64>, alpha: &Rational) -> (Rational, Option<Rational>) {
    let base = dimension_branch(d, alpha);
    match i {
        Some(i) if i <= 2 * d as u64 => {
            let l = lambda(i, d, alpha);
            if l >= base {
                (l.clone(), Some(l))
            } else {
                (base, None)
            }
        }
        _ => (base, None),
    }
}

/// `gamma_alpha(f; I)`, certified from below by the smallest `i(f, g)`
/// found among the candidate elements of `I`.
pub fn gamma_alpha_ideal(
    f: &Polynomial,
    ideal: &Ideal,
    alpha: &Rational,
    budget: &Budget,
) -> Result<GammaReport> {
    check_alpha(alpha)?;
    let tjurina = tjurina_ideal(f);
    if !ideal.contains_ideal(&tjurina)? {
        return Err(Error::MembershipViolation(
            "the ideal does not contain the Tjurina ideal of f".into(),
        ));
    }
    let d = ideal.colength()?;
    if d == 0 {
        return Err(Error::MembershipViolation("the ideal is not contained in m".into()));
    }
    let search = min_intersection(f, ideal, d, budget, 0)?;
    assert!(search.violations.is_empty(), "i(f, g) <= dim R/I for {:?}", search.violations);
    let i = search.best.as_ref().map(|(_, i)| *i);
    let (value, lambda) = gamma_value(d, i, alpha);
    let (witness_g, intersection) = match (&lambda, search.best) {
        (Some(_), Some((g, i))) => (Some(g), Some(i)),
        _ => (None, None),
    };
    Ok(GammaReport {
        alpha: alpha.clone(),
        gamma_value: value,
        witness_ideal: ideal.generators().to_vec(),
        witness_colength: d,
        witness_g,
        intersection,
        lambda,
        closed_form: None,
        status: Status::LowerBoundOnly,
        candidates: 1,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{int, parse_ideal, parse_polynomial};

    fn p(s: &str) -> Polynomial {
        parse_polynomial(s).unwrap()
    }

    fn ideal(s: &str) -> Ideal {
        Ideal::new(parse_ideal(s).unwrap())
    }

    fn alphas() -> Vec<Rational> {
        vec![int(0), rat(1, 4), rat(1, 2), rat(3, 4), int(1)]
    }

    #[test]
    fn lambda_examples() {
        for k in 1..8u32 {
            let f = p(&format!("x^2 - y^{}", k + 1));
            let i = ideal(&format!("x, y^{k}"));
            for a in alphas() {
                let expected = (int(k as i64) + &a) * (int(k as i64) + &a);
                assert_eq!(lambda_alpha(&f, &i, &p("x"), &a).unwrap(), expected);
            }
        }
        for k in 3..7u32 {
            let f = p(&format!("x^{k} - y^{k}"));
            let i = ideal(&format!("y^{}, x^2", k - 1));
            let a = rat(1, 3);
            let s = int(k as i64 - 1) + &a;
            assert_eq!(lambda_alpha(&f, &i, &p("x^2"), &a).unwrap(), int(2) * &s * &s);
        }
        let q = 8u32;
        let f = p(&format!("x^{q} - y^{}", q - 1));
        let i = ideal(&format!("x^3, y^{}", q - 2));
        assert_eq!(i.colength().unwrap(), 3 * q as usize - 6);
        let s = int(q as i64 - 2);
        assert_eq!(lambda_alpha(&f, &i, &p("x^3"), &int(0)).unwrap(), int(3) * &s * &s);
    }

    #[test]
    fn lambda_errors() {
        let f = p("x^2 - y^3");
        let i = ideal("x, y^2");
        assert!(matches!(
            lambda_alpha(&f, &i, &p("y"), &int(0)),
            Err(Error::MembershipViolation(_))
        ));
        assert!(matches!(
            lambda_alpha(&f, &i, &p("x^2 - y^3"), &int(0)),
            Err(Error::InfiniteIntersection)
        ));
        assert!(matches!(lambda_alpha(&f, &i, &p("x"), &int(2)), Err(Error::AlphaOutOfRange(_))));
    }

    #[test]
    fn gamma_of_fixed_ideals() {
        let budget = Budget::default();
        let k = 10;
        let f = SingularitySpec::D(k).representative();
        let r = gamma_alpha_ideal(&f, &ideal("x, y^8"), &int(0), &budget).unwrap();
        assert_eq!(r.gamma_value, int(64));
        assert_eq!(r.witness_g, Some(p("x")));

        // A_3 with I = <x, y^3>: only the lambda branch matters.
        let f = SingularitySpec::A(3).representative();
        let r = gamma_alpha_ideal(&f, &ideal("x, y^3"), &rat(1, 2), &budget).unwrap();
        assert_eq!(r.gamma_value, rat(49, 4));
        assert_eq!(r.intersection, Some(4));

        // Every element of m meets a triple point with multiplicity >= 3 > 2 dim.
        let f = SingularitySpec::M(3).representative();
        let r = gamma_alpha_ideal(&f, &ideal("x, y"), &int(1), &budget).unwrap();
        assert_eq!(r.gamma_value, int(4));
        assert_eq!(r.witness_g, None);
        assert_eq!(r.lambda, None);
    }

    #[test]
    fn gamma_is_strictly_increasing_in_alpha() {
        let budget = Budget::default();
        let cases = [
            (SingularitySpec::D(6), "x, y^4"),
            (SingularitySpec::E(6), "x^2, y^3"),
            (SingularitySpec::M(4), "y^3, x^2"),
            (SingularitySpec::M(3), "x, y"),
        ];
        for (spec, gens) in cases {
            let f = spec.representative();
            let values: Vec<Rational> = alphas()
                .iter()
                .map(|a| gamma_alpha_ideal(&f, &ideal(gens), a, &budget).unwrap().gamma_value)
                .collect();
            assert!(values.windows(2).all(|w| w[0] < w[1]), "{spec}: {values:?}");
        }
    }

    #[test]
    fn lambda_decreases_in_intersection_multiplicity() {
        for d in 1..12usize {
            for a in alphas() {
                let values: Vec<Rational> = (d as u64 + 1..=2 * d as u64).map(|i| lambda(i, d, &a)).collect();
                assert!(values.windows(2).all(|w| w[0] >= w[1]));
                assert_eq!(values.last().unwrap(), &dimension_branch(d, &a));
            }
        }
    }

    #[test]
    fn ideal_must_contain_tjurina_ideal() {
        let f = p("x^2 - y^4");
        assert!(gamma_alpha_ideal(&f, &ideal("x^2, y"), &int(0), &Budget::default()).is_err());
    }
}
