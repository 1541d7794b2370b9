//! Search over complete intersection ideals containing `I^*(f)`.
//!
//! The candidate list is a deterministic function of the query. Containment
//! and evaluation run in parallel; results are merged in candidate order, so
//! the outcome does not depend on scheduling.

use std::collections::{BTreeMap, HashSet};

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::invariants::{intersection_multiplicity, Multiplicity, SingularitySpec};
use crate::poly::{int, MonomialOrdering, Polynomial, Rational};
use crate::standard_basis::Ideal;

use super::{
    check_alpha, closed_form_gamma, gamma_value, min_intersection, Budget, ClosedForm, Flavor,
    GammaQuery, GammaReport, Status,
};

/// Where a candidate ideal comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    /// `I^*(f)` itself.
    Base,
    /// Witness ideals known for the class.
    Registered,
    /// `<x^a, y^b>`.
    Monomial,
    /// `<y - c x^s, x^t>` and `<x - c y^s, y^t>`.
    Curvilinear,
    /// Seeded random pairs from the generator pools.
    Random,
}

/// How containment of `I^*(f)` is decided for a candidate.
#[derive(Clone, Debug, PartialEq, Eq)]
enum Shape {
    Monomial { a: u32, b: u32 },
    /// `<y - c x^s, x^t>`, or with `x` and `y` exchanged.
    Curvilinear { c: Rational, s: u32, t: u32, swapped: bool },
    General,
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct Candidate {
    family: Family,
    generators: Vec<Polynomial>,
    shape: Shape,
}

impl Candidate {
    fn general(family: Family, generators: Vec<Polynomial>) -> Self {
        Candidate {
            family,
            generators,
            shape: Shape::General,
        }
    }
}

/// A complete intersection containing `I^*(f)`, with the smallest
/// intersection multiplicity found among its elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdealProfile {
    /// Position in the candidate list; lower wins ties.
    pub index: usize,
    pub family: Family,
    pub generators: Vec<Polynomial>,
    pub colength: usize,
    /// First element reaching the smallest finite `i(f, g)`.
    pub best: Option<(Polynomial, u64)>,
    pub g_evaluated: usize,
}

impl IdealProfile {
    pub fn gamma(&self, alpha: &Rational) -> (Rational, Option<Rational>) {
        gamma_value(self.colength, self.best.as_ref().map(|(_, i)| *i), alpha)
    }
}

/// Everything the search learned about one germ; independent of `alpha`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchProfile {
    pub spec: SingularitySpec,
    pub flavor: Flavor,
    pub budget: Budget,
    pub base_colength: usize,
    pub base_degbound: u32,
    pub candidates_enumerated: usize,
    /// Distinct complete intersections containing `I^*(f)`, in candidate order.
    pub profiles: Vec<IdealProfile>,
    /// Number of pairs `(I, g)` with `i(f, g)` evaluated.
    pub pairs_evaluated: usize,
    /// Pairs with `i(f, g) <= dim R/I`, which cannot occur for ideals
    /// containing the Tjurina ideal.
    pub dimension_violations: Vec<String>,
    /// Complete intersections checked against `(degbound - mult + 1) mult`.
    pub degree_bound_checks: usize,
    /// Hilbert-Samuel data that failed its structural checks.
    pub hilbert_samuel_failures: Vec<String>,
}

fn power(x: u32, y: u32) -> Polynomial {
    Polynomial::monomial(x, y)
}

fn curve(c: &Rational, s: u32) -> Polynomial {
    &power(0, 1) - &power(s, 0).scale(c)
}

fn registered(spec: &SingularitySpec) -> Vec<Vec<Polynomial>> {
    match *spec {
        SingularitySpec::A(k) => vec![vec![power(1, 0), power(0, k)]],
        SingularitySpec::D(k) => vec![vec![power(1, 0), power(0, k - 2)]],
        SingularitySpec::E(_) => vec![],
        SingularitySpec::M(k) => vec![vec![power(0, k - 1), power(2, 0)]],
        SingularitySpec::Sqh { weights, .. } => {
            let (p, q) = (weights.p, weights.q);
            let mut out = Vec::new();
            if q >= 3 {
                out.push(vec![power(3, 0), power(0, q - 2)]);
            }
            out.push(vec![power(0, 2), power(q - 1, 0)]);
            out.push(vec![power(q - 1, 0), power(0, 1)]);
            if q > p {
                out.push(vec![power(0, 1), power(q - q / p, 0)]);
            }
            if (p, q) == (3, 12) {
                out.push(vec![curve(&Rational::one(), 4), power(11, 0)]);
            }
            out
        }
    }
}

/// Constants `+-c` for `c` in the coefficient set.
fn signed_coefficients(budget: &Budget) -> Vec<Rational> {
    budget
        .coefficients
        .iter()
        .flat_map(|&c| [int(c), int(-c)])
        .filter(|c| !c.is_zero())
        .collect()
}

fn structured(spec: &SingularitySpec, base: &Ideal, top: u32, budget: &Budget) -> Vec<Candidate> {
    let mut out = Vec::new();
    let gens = base.generators().to_vec();
    out.push(Candidate::general(Family::Base, gens));
    for generators in registered(spec) {
        out.push(Candidate::general(Family::Registered, generators));
    }
    for a in 1..=top {
        for b in 1..=top {
            out.push(Candidate {
                family: Family::Monomial,
                generators: vec![power(a, 0), power(0, b)],
                shape: Shape::Monomial { a, b },
            });
        }
    }
    for c in signed_coefficients(budget) {
        for s in 1..top {
            for t in s + 1..=top {
                let g = curve(&c, s);
                for swapped in [false, true] {
                    let generators = if swapped {
                        vec![g.swap_variables(), power(0, t)]
                    } else {
                        vec![g.clone(), power(t, 0)]
                    };
                    out.push(Candidate {
                        family: Family::Curvilinear,
                        generators,
                        shape: Shape::Curvilinear { c: c.clone(), s, t, swapped },
                    });
                }
            }
        }
    }
    out
}

fn pools(base: &Ideal, spec: &SingularitySpec, top: u32, budget: &Budget) -> Result<(Vec<Polynomial>, Vec<Polynomial>)> {
    let coeffs = signed_coefficients(budget);
    let mut low = vec![power(1, 0), power(0, 1), power(2, 0), power(1, 1), power(0, 2)];
    for c in &coeffs {
        for s in 2..=4 {
            low.push(curve(c, s));
            low.push(curve(c, s).swap_variables());
        }
        low.push(&power(0, 2) - &power(3, 0).scale(c));
        low.push(&power(2, 0) - &power(0, 3).scale(c));
    }
    let mut orderings = vec![MonomialOrdering::Ls, MonomialOrdering::Ds];
    if let SingularitySpec::Sqh { weights, .. } = spec {
        orderings.push(MonomialOrdering::Weighted(*weights));
    }
    let mut high = base.generators().to_vec();
    for ord in orderings {
        high.extend(base.clone().with_ordering(ord).standard_basis()?);
    }
    for t in 1..=top {
        high.push(power(t, 0));
        high.push(power(0, t));
    }
    let mut seen = HashSet::new();
    let mut dedup = |v: Vec<Polynomial>| -> Vec<Polynomial> {
        v.into_iter()
            .filter(|g| !g.is_zero())
            .map(|g| g.primitive())
            .filter(|g| seen.insert(g.clone()))
            .take(budget.pool_size.max(1))
            .collect()
    };
    let low = dedup(low);
    let high = dedup(high);
    Ok((low, high))
}

fn random_candidates(pool: &(Vec<Polynomial>, Vec<Polynomial>), budget: &Budget) -> Vec<Candidate> {
    let (low, high) = pool;
    let ratios = budget.ratios();
    let mut rng = ChaCha8Rng::seed_from_u64(budget.seed.wrapping_add(0x5EED_1DEA));
    let pick = |v: &[Polynomial], rng: &mut ChaCha8Rng| -> Polynomial {
        let a = &v[rng.gen_range(0..v.len())];
        if rng.gen_bool(0.5) {
            let b = &v[rng.gen_range(0..v.len())];
            a + &b.scale(&ratios[rng.gen_range(0..ratios.len())])
        } else {
            a.clone()
        }
    };
    let mut out = Vec::new();
    if low.is_empty() || high.is_empty() || ratios.is_empty() {
        return out;
    }
    for _ in 0..budget.random_ideals {
        let g1 = pick(low, &mut rng);
        let g2 = pick(high, &mut rng);
        if g1.is_zero() || g2.is_zero() {
            continue;
        }
        out.push(Candidate::general(Family::Random, vec![g1, g2]));
    }
    out
}

/// Every term of every generator of `base` is divisible by `x^a` or `y^b`.
fn monomial_contains(a: u32, b: u32, base: &Ideal) -> bool {
    base.generators()
        .iter()
        .all(|g| g.support().all(|m| m.x >= a || m.y >= b))
}

/// `R / <y - c x^s, x^t>` is `k[x] / x^t`; membership is read off after
/// substituting `y = c x^s`.
fn curvilinear_contains(c: &Rational, s: u32, t: u32, base: &Ideal, swapped: bool) -> bool {
    base.generators().iter().all(|g| {
        let g = if swapped { g.swap_variables() } else { g.clone() };
        let mut image: BTreeMap<u32, Rational> = BTreeMap::new();
        for (m, coeff) in g.terms() {
            let e = m.x + s * m.y;
            if e < t {
                *image.entry(e).or_insert_with(Rational::zero) += coeff * c.pow(m.y as i32);
            }
        }
        image.values().all(|v| v.is_zero())
    })
}

fn contains_base(candidate: &Candidate, base: &Ideal) -> Result<bool> {
    match &candidate.shape {
        Shape::Monomial { a, b } => Ok(monomial_contains(*a, *b, base)),
        Shape::Curvilinear { c, s, t, swapped } => Ok(curvilinear_contains(c, *s, *t, base, *swapped)),
        Shape::General => {
            let ideal = Ideal::new(candidate.generators.clone()).with_max_degree(base.max_degree());
            ideal.contains_ideal(base)
        }
    }
}

fn structural_key(gens: &[Polynomial]) -> Vec<Polynomial> {
    let mut key: Vec<Polynomial> = gens.iter().map(|g| g.primitive()).collect();
    key.sort_by_key(|g| g.to_string());
    key
}

struct Evaluated {
    profile: Option<IdealProfile>,
    pairs: usize,
    violations: Vec<String>,
    degree_bound_checked: bool,
    hs_failure: Option<String>,
}

fn evaluate(
    f: &Polynomial,
    index: usize,
    candidate: &Candidate,
    budget: &Budget,
    max_degree: u32,
) -> Result<Evaluated> {
    let ideal = Ideal::new(candidate.generators.clone()).with_max_degree(max_degree);
    let mut out = Evaluated {
        profile: None,
        pairs: 0,
        violations: Vec::new(),
        degree_bound_checked: false,
        hs_failure: None,
    };
    let hs = ideal.hilbert_samuel()?;
    if let Err(e) = hs.check() {
        out.hs_failure = Some(format!("{}: {e}", display_gens(&candidate.generators)));
    }
    match ideal.deg_fp_bound() {
        Ok(_) => out.degree_bound_checked = true,
        Err(Error::NotCompleteIntersection) => return Ok(out),
        Err(e) => return Err(e),
    }
    let colength = hs.colength;
    if colength == 0 {
        return Ok(out);
    }
    let search = min_intersection(f, &ideal, colength, budget, index as u64)?;
    out.pairs = search.evaluated;
    out.violations = search
        .violations
        .iter()
        .map(|(g, i)| format!("I = <{}>, g = {g}: i = {i} <= {colength}", display_gens(&candidate.generators)))
        .collect();
    out.profile = Some(IdealProfile {
        index,
        family: candidate.family,
        generators: candidate.generators.clone(),
        colength,
        best: search.best,
        g_evaluated: search.evaluated,
    });
    Ok(out)
}

pub(crate) fn display_gens(gens: &[Polynomial]) -> String {
    gens.iter().map(|g| g.to_string()).collect::<Vec<_>>().join(", ")
}

/// Enumerates and evaluates the candidate complete intersections for `spec`.
pub fn search_profile(spec: &SingularitySpec, flavor: Flavor, budget: &Budget) -> Result<SearchProfile> {
    let f = spec.representative();
    let base = flavor.ideal(spec)?;
    let base_colength = base.colength()?;
    let base_degbound = base.degbound()?;
    let top = base_degbound + 1;

    let mut candidates = structured(spec, &base, top, budget);
    candidates.extend(random_candidates(&pools(&base, spec, top, budget)?, budget));
    let candidates_enumerated = candidates.len();

    let mut seen = HashSet::new();
    candidates.retain(|c| seen.insert(structural_key(&c.generators)));

    let contained: Vec<bool> = candidates
        .par_iter()
        .map(|c| contains_base(c, &base))
        .collect::<Result<_>>()?;
    let mut keys = HashSet::new();
    let mut kept: Vec<(usize, &Candidate)> = Vec::new();
    for (index, (c, inside)) in candidates.iter().zip(contained).enumerate() {
        if !inside {
            continue;
        }
        let key = Ideal::new(c.generators.clone()).canonical_key()?;
        if keys.insert(key) {
            kept.push((index, c));
        }
    }

    let max_degree = base.max_degree();
    let evaluated: Vec<Evaluated> = kept
        .par_iter()
        .map(|(index, c)| evaluate(&f, *index, c, budget, max_degree))
        .collect::<Result<_>>()?;

    let mut profile = SearchProfile {
        spec: spec.clone(),
        flavor,
        budget: budget.clone(),
        base_colength,
        base_degbound,
        candidates_enumerated,
        profiles: Vec::new(),
        pairs_evaluated: 0,
        dimension_violations: Vec::new(),
        degree_bound_checks: 0,
        hilbert_samuel_failures: Vec::new(),
    };
    for e in evaluated {
        profile.pairs_evaluated += e.pairs;
        profile.dimension_violations.extend(e.violations);
        profile.degree_bound_checks += usize::from(e.degree_bound_checked);
        profile.hilbert_samuel_failures.extend(e.hs_failure);
        profile.profiles.extend(e.profile);
    }
    Ok(profile)
}

impl SearchProfile {
    /// Largest colength with its ideal; `(0, [])` if no candidate survived.
    pub fn tau_ci(&self) -> (usize, Vec<Polynomial>) {
        let mut best: Option<&IdealProfile> = None;
        for p in &self.profiles {
            if best.is_none_or(|b| p.colength > b.colength) {
                best = Some(p);
            }
        }
        best.map_or((0, Vec::new()), |p| (p.colength, p.generators.clone()))
    }

    /// The known closed form, where one applies to this flavor.
    pub fn closed_form(&self, alpha: &Rational) -> Option<ClosedForm> {
        if self.flavor == Flavor::Es || self.spec.is_simple() {
            closed_form_gamma(&self.spec, alpha).ok()
        } else {
            None
        }
    }

    /// Best `gamma_alpha` over the profiles, ties going to the earlier
    /// candidate. The witness is re-verified from scratch before reporting.
    pub fn report(&self, alpha: &Rational) -> Result<GammaReport> {
        check_alpha(alpha)?;
        let mut best: Option<(&IdealProfile, Rational, Option<Rational>)> = None;
        for p in &self.profiles {
            let (v, l) = p.gamma(alpha);
            if best.as_ref().is_none_or(|(_, b, _)| v > *b) {
                best = Some((p, v, l));
            }
        }
        let closed_form = self.closed_form(alpha);
        let mut report = match best {
            Some((p, value, lambda)) => {
                let (witness_g, intersection) = match (&lambda, &p.best) {
                    (Some(_), Some((g, i))) => (Some(g.clone()), Some(*i)),
                    _ => (None, None),
                };
                GammaReport {
                    alpha: alpha.clone(),
                    gamma_value: value,
                    witness_ideal: p.generators.clone(),
                    witness_colength: p.colength,
                    witness_g,
                    intersection,
                    lambda,
                    closed_form: None,
                    status: Status::LowerBoundOnly,
                    candidates: self.profiles.len(),
                }
            }
            None => GammaReport {
                alpha: alpha.clone(),
                gamma_value: Rational::zero(),
                witness_ideal: Vec::new(),
                witness_colength: 0,
                witness_g: None,
                intersection: None,
                lambda: None,
                closed_form: None,
                status: Status::LowerBoundOnly,
                candidates: 0,
            },
        };
        if !report.witness_ideal.is_empty() {
            self.reverify(&report)?;
        }
        report.status = match &closed_form {
            Some(cf) if report.gamma_value > *cf.upper() => {
                return Err(Error::UpperBoundViolated {
                    value: report.gamma_value.to_string(),
                    bound: cf.upper().to_string(),
                })
            }
            Some(ClosedForm::Exact(v)) if report.gamma_value == *v => Status::MatchesClosedForm,
            Some(ClosedForm::Exact(_)) | None => Status::LowerBoundOnly,
            Some(ClosedForm::Interval { .. }) => Status::WithinUpperBound,
        };
        report.closed_form = closed_form;
        Ok(report)
    }

    /// Containment, complete intersection property, colength, membership of
    /// the witness element and its intersection multiplicity, all recomputed
    /// on fresh ideals.
    fn reverify(&self, report: &GammaReport) -> Result<()> {
        let fail = |what: &str| {
            Err(Error::MembershipViolation(format!(
                "witness <{}> failed re-verification: {what}",
                display_gens(&report.witness_ideal)
            )))
        };
        let base = self.flavor.ideal(&self.spec)?;
        let ideal = Ideal::new(report.witness_ideal.clone());
        if !ideal.contains_ideal(&base)? {
            return fail("does not contain I^*");
        }
        if !ideal.is_complete_intersection()? {
            return fail("not a complete intersection");
        }
        if ideal.colength()? != report.witness_colength {
            return fail("colength differs");
        }
        if let (Some(g), Some(i)) = (&report.witness_g, report.intersection) {
            if !ideal.contains(g)? {
                return fail("g is not in the ideal");
            }
            let f = self.spec.representative();
            if intersection_multiplicity(&f, g) != Multiplicity::Finite(i) {
                return fail("intersection multiplicity differs");
            }
        }
        Ok(())
    }
}

pub fn gamma_star_search(q: &GammaQuery) -> Result<GammaReport> {
    check_alpha(&q.alpha)?;
    search_profile(&q.spec, q.flavor, &q.budget)?.report(&q.alpha)
}

/// Largest colength of a complete intersection containing `I^*(f)` among
/// the candidates, with its ideal.
pub fn tau_ci_search(q: &GammaQuery) -> Result<(usize, Ideal)> {
    let (d, gens) = search_profile(&q.spec, q.flavor, &q.budget)?.tau_ci();
    Ok((d, Ideal::new(gens)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{parse_polynomial, rat, Weights};

    fn query(spec: SingularitySpec, alpha: Rational) -> GammaQuery {
        GammaQuery::new(spec, alpha, Flavor::Es, Budget::default()).unwrap()
    }

    #[test]
    fn containment_shortcuts_agree_with_the_engine() {
        let spec = SingularitySpec::sqh(
            Weights::new(3, 12).unwrap(),
            parse_polynomial("y^3 - 3*x^8*y + 3*x^12").unwrap(),
        )
        .unwrap();
        let base = Flavor::Es.ideal(&spec).unwrap();
        let top = base.degbound().unwrap() + 1;
        let budget = Budget {
            coefficients: vec![1],
            ..Budget::default()
        };
        let mut inside = 0;
        for c in structured(&spec, &base, top, &budget) {
            if c.family == Family::Monomial || c.family == Family::Curvilinear {
                let fast = contains_base(&c, &base).unwrap();
                let slow = Ideal::new(c.generators.clone()).contains_ideal(&base).unwrap();
                assert_eq!(fast, slow, "{}", display_gens(&c.generators));
                inside += usize::from(fast);
            }
        }
        assert!(inside > 10);
    }

    #[test]
    fn a_k_and_m_k() {
        for k in 1..5 {
            let r = gamma_star_search(&query(SingularitySpec::A(k), rat(1, 2))).unwrap();
            let s = int(k as i64) + rat(1, 2);
            assert_eq!(r.gamma_value, &s * &s);
            assert_eq!(r.status, Status::MatchesClosedForm);
        }
        let r = gamma_star_search(&query(SingularitySpec::M(4), rat(1, 2))).unwrap();
        assert_eq!(r.gamma_value, rat(49, 2));
        assert_eq!(r.witness_ideal, vec![power(0, 3), power(2, 0)]);
        assert_eq!(r.witness_g, Some(power(2, 0)));
    }

    #[test]
    fn tau_ci_of_ordinary_points() {
        for (m, expected) in [(2, 1), (3, 4), (4, 6), (5, 9)] {
            let (d, _) = tau_ci_search(&query(SingularitySpec::M(m), int(0))).unwrap();
            assert_eq!(d, expected, "M_{m}");
        }
    }

    #[test]
    fn parallel_evaluation_is_deterministic() {
        let q = query(SingularitySpec::D(6), rat(1, 3));
        let a = search_profile(&q.spec, q.flavor, &q.budget).unwrap();
        let b = search_profile(&q.spec, q.flavor, &q.budget).unwrap();
        assert_eq!(a, b);
    }
}
