//! Batch checks of the known tables, examples and structural properties.

use std::collections::BTreeMap;

use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::invariants::{
    intersection_multiplicity, kappa, InvariantRecord, Multiplicity, SingularitySpec,
};
use crate::poly::{
    int, parse_ideal, parse_polynomial, rat, weighted_order, Monomial, MonomialOrdering,
    Polynomial, Rational, WeightedOrder, Weights,
};
use crate::standard_basis::{HilbertSamuelData, Ideal};

use super::search::display_gens;
use super::{lambda, search_profile, Budget, Flavor, SearchProfile, Status};

/// One checked statement.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Fact {
    /// Dotted identifier; the first component names the group.
    pub id: String,
    pub passed: bool,
    pub expected: String,
    pub observed: String,
    /// Generators and elements backing the observation, as parseable text.
    pub witness: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub seed: u64,
    pub facts: Vec<Fact>,
}

impl VerificationReport {
    pub fn failures(&self) -> impl Iterator<Item = &Fact> {
        self.facts.iter().filter(|f| !f.passed)
    }

    pub fn all_passed(&self) -> bool {
        self.failures().next().is_none()
    }

    /// Facts whose id starts with `group.`.
    pub fn group(&self, group: &str) -> Vec<&Fact> {
        let prefix = format!("{group}.");
        self.facts.iter().filter(|f| f.id.starts_with(&prefix)).collect()
    }
}

/// `(1 + alpha)^2 tau_ci <= gamma <= (tau_ci + alpha)^2`, refined by `kappa`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SandwichReport {
    pub alpha: Rational,
    pub gamma: Rational,
    pub tau_ci: usize,
    pub kappa: usize,
    pub lower: Rational,
    pub upper: Rational,
    /// `(alpha kappa + (1 - alpha) tau_ci)^2 / (kappa - tau_ci)` when
    /// `tau_ci < kappa <= 2 tau_ci`.
    pub kappa_lower: Option<Rational>,
    /// `kappa < 2 tau_ci`, in which case the lower bound is strict.
    pub strict: bool,
    pub holds: bool,
}

pub fn sandwich_check(profile: &SearchProfile, alpha: &Rational) -> Result<SandwichReport> {
    let gamma = profile.report(alpha)?.gamma_value;
    let (tau_ci, _) = profile.tau_ci();
    let kappa = kappa(&profile.spec.representative(), profile.budget.seed)?;
    let t = int(tau_ci as i64);
    let s = Rational::one() + alpha;
    let lower = &s * &s * &t;
    let upper = (&t + alpha) * (&t + alpha);
    let kappa_lower = (kappa > tau_ci && kappa <= 2 * tau_ci).then(|| lambda(kappa as u64, tau_ci, alpha));
    let strict = kappa < 2 * tau_ci;
    let mut holds = lower <= gamma && gamma <= upper;
    if let Some(k) = &kappa_lower {
        holds &= *k <= gamma;
    }
    if strict {
        holds &= lower < gamma;
    }
    Ok(SandwichReport {
        alpha: alpha.clone(),
        gamma,
        tau_ci,
        kappa,
        lower,
        upper,
        kappa_lower,
        strict,
        holds,
    })
}

fn table_alphas() -> Vec<Rational> {
    vec![int(0), rat(1, 3), rat(1, 2), int(1)]
}

fn monotonicity_alphas() -> Vec<Rational> {
    vec![int(0), rat(1, 4), rat(1, 2), rat(3, 4), int(1)]
}

struct Run {
    budget: Budget,
    facts: Vec<Fact>,
    profiles: BTreeMap<String, SearchProfile>,
}

impl Run {
    fn fact(&mut self, id: String, passed: bool, expected: String, observed: String, witness: Option<String>) {
        self.facts.push(Fact {
            id,
            passed,
            expected,
            observed,
            witness,
        });
    }

    fn profile(&mut self, spec: &SingularitySpec) -> Result<&SearchProfile> {
        let key = spec.to_string();
        if !self.profiles.contains_key(&key) {
            let p = search_profile(spec, Flavor::Es, &self.budget)?;
            self.profiles.insert(key.clone(), p);
        }
        Ok(&self.profiles[&key])
    }

    /// Records an error as a failed fact instead of aborting the run.
    fn guard(&mut self, id: &str, r: Result<()>) {
        if let Err(e) = r {
            self.fact(id.to_string(), false, "no error".into(), e.to_string(), None);
        }
    }
}

fn witness_text(gens: &[Polynomial], g: Option<&Polynomial>) -> String {
    match g {
        Some(g) => format!("I = <{}>; g = {g}", display_gens(gens)),
        None => format!("I = <{}>", display_gens(gens)),
    }
}

fn sqh(p: u32, q: u32, f: &str) -> Result<SingularitySpec> {
    SingularitySpec::sqh(Weights::new(p, q)?, parse_polynomial(f)?)
}

fn simple_specs() -> Vec<SingularitySpec> {
    let mut out: Vec<SingularitySpec> = (1..=10).map(SingularitySpec::A).collect();
    out.extend((4..=10).map(SingularitySpec::D));
    out.extend((6..=8).map(SingularitySpec::E));
    out
}

fn simple_table(run: &mut Run) -> Result<()> {
    for spec in simple_specs() {
        for a in table_alphas() {
            let r = run.profile(&spec)?.report(&a)?;
            let expected = r.closed_form.as_ref().map_or("?".into(), |c| c.to_string());
            run.fact(
                format!("simple.{spec}.alpha={a}"),
                r.status == Status::MatchesClosedForm,
                expected,
                format!("{} ({})", r.gamma_value, r.status),
                Some(witness_text(&r.witness_ideal, r.witness_g.as_ref())),
            );
        }
    }
    Ok(())
}

fn ordinary_points(run: &mut Run) -> Result<()> {
    for k in 3..=8u32 {
        let spec = SingularitySpec::M(k);
        let witness = Ideal::new(vec![Polynomial::monomial(0, k - 1), Polynomial::monomial(2, 0)]);
        let profile = run.profile(&spec)?.clone();
        let (tau_ci, _) = profile.tau_ci();
        for a in table_alphas() {
            let r = profile.report(&a)?;
            let s = int(i64::from(k) - 1) + &a;
            let expected = int(2) * &s * &s;
            let same_witness = Ideal::new(r.witness_ideal.clone()).same_ideal(&witness)?;
            let above = r.gamma_value > (Rational::one() + &a) * (Rational::one() + &a) * int(tau_ci as i64);
            run.fact(
                format!("ordinary.{spec}.alpha={a}"),
                r.gamma_value == expected && same_witness && above,
                format!("{expected} via <y^{}, x^2>, above (1+a)^2 tau_ci", k - 1),
                format!("{} with tau_ci = {tau_ci}", r.gamma_value),
                Some(witness_text(&r.witness_ideal, r.witness_g.as_ref())),
            );
        }
    }
    Ok(())
}

fn tau_ci_table(run: &mut Run) -> Result<()> {
    for m in 2..=9u32 {
        let expected = match m {
            2 => 1,
            m if m % 2 == 1 => (m + 1) * (m + 1) / 4,
            m => (m * m + 2 * m) / 4,
        } as usize;
        let (d, gens) = run.profile(&SingularitySpec::M(m))?.tau_ci();
        run.fact(
            format!("tau_ci.M_{m}"),
            d == expected,
            expected.to_string(),
            d.to_string(),
            Some(witness_text(&gens, None)),
        );
    }
    Ok(())
}

/// `I` among the profiles, with its colength and smallest intersection
/// multiplicity, and the value of `gamma_alpha(f; I)` at each alpha.
fn profile_of(profile: &SearchProfile, gens: &[Polynomial]) -> Result<Option<(usize, Option<u64>)>> {
    let target = Ideal::new(gens.to_vec());
    for p in &profile.profiles {
        if Ideal::new(p.generators.clone()).same_ideal(&target)? {
            return Ok(Some((p.colength, p.best.as_ref().map(|(_, i)| *i))));
        }
    }
    Ok(None)
}

/// The search reaches `bound(alpha)` for each alpha, and the witness ideal
/// is visited with the expected colength and intersection multiplicity.
#[allow(clippy::too_many_arguments)]
fn sqh_witness_fact(
    run: &mut Run,
    id: &str,
    spec: &SingularitySpec,
    witness: &str,
    g: &str,
    colength: usize,
    i: u64,
    bound: impl Fn(&Rational) -> Rational,
    attain: bool,
) -> Result<()> {
    let gens = parse_ideal(witness)?;
    let g = parse_polynomial(g)?;
    let f = spec.representative();
    let profile = run.profile(spec)?.clone();
    let ideal = Ideal::new(gens.clone());
    let direct_colength = ideal.colength()?;
    let direct_i = intersection_multiplicity(&f, &g);
    let visited = profile_of(&profile, &gens)?;
    let mut ok = direct_colength == colength
        && direct_i == Multiplicity::Finite(i)
        && ideal.contains(&g)?
        && visited == Some((colength, Some(i)));
    let mut observed = Vec::new();
    for a in table_alphas() {
        let r = profile.report(&a)?;
        let b = bound(&a);
        ok &= if attain { r.gamma_value == b } else { r.gamma_value >= b };
        observed.push(format!("alpha={a}: {} ({})", r.gamma_value, r.status));
    }
    run.fact(
        format!("sqh.{id}"),
        ok,
        format!(
            "{} {} with dim = {colength}, i = {i}",
            if attain { "equal to" } else { "at least" },
            table_alphas().iter().map(|a| bound(a).to_string()).collect::<Vec<_>>().join(" / ")
        ),
        format!("dim = {direct_colength}, i = {direct_i}, visited = {visited:?}; {}", observed.join("; ")),
        Some(format!("I = <{witness}>; g = {g}")),
    );
    Ok(())
}

fn sqh_examples(run: &mut Run) -> Result<()> {
    for q in [5u32, 8, 12] {
        let spec = sqh(q - 1, q, &format!("x^{q} - y^{}", q - 1))?;
        let qq = int(i64::from(q));
        sqh_witness_fact(
            run,
            &format!("a.q={q}"),
            &spec,
            &format!("x^3, y^{}", q - 2),
            "x^3",
            3 * q as usize - 6,
            3 * u64::from(q) - 3,
            |a| int(3) * (&qq - int(2) + a) * (&qq - int(2) + a),
            false,
        )?;
    }
    let spec = sqh(5, 7, "x^7 - y^5")?;
    sqh_witness_fact(run, "b.p=5.q=7", &spec, "y^2, x^6", "y^2", 12, 14, |a| int(2) * (int(6) + a) * (int(6) + a), false)?;

    let spec = sqh(3, 13, "x^13 - y^3")?;
    sqh_witness_fact(run, "c.p=3.q=13", &spec, "x^12, y", "y", 12, 13, |a| (int(12) + a) * (int(12) + a), true)?;

    let spec = sqh(3, 12, "y^3 - 3*x^8*y + 3*x^12")?;
    sqh_witness_fact(run, "d", &spec, "y - x^4, x^11", "y - x^4", 11, 12, |a| (int(11) + a) * (int(11) + a), true)?;

    let spec = sqh(3, 7, "7*y^3 + 15*x^7 - 21*x^5*y")?;
    let base = Flavor::Es.ideal(&spec)?;
    let (colength, gens) = (base.colength()?, base.min_generators()?);
    let r = run.profile(&spec)?.report(&int(0))?;
    run.fact(
        "sqh.e".into(),
        colength == 11 && gens == 3 && r.gamma_value <= int(25),
        "colength(I^es) = 11, 3 generators, gamma_0 <= 25".into(),
        format!("colength = {colength}, generators = {gens}, gamma_0 = {} ({})", r.gamma_value, r.status),
        Some(witness_text(&r.witness_ideal, r.witness_g.as_ref())),
    );
    Ok(())
}

fn hs_fact(run: &mut Run, id: String, hs: &HilbertSamuelData, mult: u32, degbound: u32, colength: usize) {
    let ok = hs.mult == mult && hs.degbound == degbound && hs.colength == colength && hs.check().is_ok();
    run.fact(
        id,
        ok,
        format!("mult {mult}, degbound {degbound}, dim {colength}"),
        format!("mult {}, degbound {}, dim {}, h0 {:?}", hs.mult, hs.degbound, hs.colength, hs.h0),
        None,
    );
}

fn hilbert_samuel_goldens(run: &mut Run) -> Result<()> {
    for k in 1..=10u32 {
        let hs = Flavor::Ea.ideal(&SingularitySpec::A(k))?.hilbert_samuel()?;
        hs_fact(run, format!("hilbert.A_{k}"), &hs, 1, k, k as usize);
    }
    for k in 4..=10u32 {
        let hs = Flavor::Ea.ideal(&SingularitySpec::D(k))?.hilbert_samuel()?;
        hs_fact(run, format!("hilbert.D_{k}"), &hs, 2, k - 1, k as usize);
    }
    for k in 6..=8u32 {
        let hs = Flavor::Ea.ideal(&SingularitySpec::E(k))?.hilbert_samuel()?;
        hs_fact(run, format!("hilbert.E_{k}"), &hs, 2, k - 2, k as usize);
    }
    let hs = Ideal::new(parse_ideal("x^3, x^2*y, y^3")?).hilbert_samuel()?;
    run.fact(
        "hilbert.x3_x2y_y3".into(),
        hs.h0 == vec![1, 2, 3, 1] && hs.check().is_ok(),
        "h0 = [1, 2, 3, 1]".into(),
        format!("h0 = {:?}", hs.h0),
        None,
    );
    for k in 1..=8u32 {
        let hs = Ideal::maximal_power(k).hilbert_samuel()?;
        hs_fact(run, format!("hilbert.m^{k}"), &hs, k, k, (k * (k + 1) / 2) as usize);
    }
    Ok(())
}

/// Random zero-dimensional ideals with degree bound at most 6.
pub(crate) fn random_corpus(seed: u64, n: usize) -> Vec<Ideal> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xC0_4B05);
    let mut out = Vec::new();
    let random_poly = |rng: &mut ChaCha8Rng, lead: Monomial| -> Polynomial {
        let mut terms = vec![(Rational::one(), lead)];
        for _ in 0..rng.gen_range(0..4) {
            let d = rng.gen_range(1..=5u32);
            let y = rng.gen_range(0..=d);
            terms.push((rat(rng.gen_range(-5..=5), rng.gen_range(1..=3)), Monomial::new(d - y, y)));
        }
        Polynomial::from_terms(terms)
    };
    let mut attempts = 0;
    while out.len() < n && attempts < 50 * n {
        attempts += 1;
        let a = rng.gen_range(1..=5);
        let b = rng.gen_range(1..=5);
        let mut gens = vec![
            random_poly(&mut rng, Monomial::new(a, 0)),
            random_poly(&mut rng, Monomial::new(0, b)),
        ];
        if rng.gen_bool(0.5) {
            let d = rng.gen_range(1..=4u32);
            let y = rng.gen_range(0..=d);
            gens.push(random_poly(&mut rng, Monomial::new(d - y, y)));
        }
        let ideal = Ideal::new(gens).with_max_degree(6);
        if ideal.degbound().is_ok_and(|d| d >= 1) {
            out.push(ideal);
        }
    }
    out
}

/// Number of monomials outside the monomial ideal generated by `stairs`.
pub(crate) fn standard_monomials(stairs: &[Monomial]) -> usize {
    let xmax = stairs.iter().filter(|m| m.y == 0).map(|m| m.x).min().unwrap_or(0);
    let ymax = stairs.iter().filter(|m| m.x == 0).map(|m| m.y).min().unwrap_or(0);
    let mut n = 0;
    for a in 0..xmax {
        for b in 0..ymax {
            if !stairs.iter().any(|m| m.divides(Monomial::new(a, b))) {
                n += 1;
            }
        }
    }
    n
}

fn corpus_properties(run: &mut Run) -> Result<()> {
    let corpus = random_corpus(run.budget.seed, 200);
    let w = Weights::new(2, 3)?;
    let mut ordering_failures = Vec::new();
    let mut hs_failures = Vec::new();
    let mut structure_failures = Vec::new();
    let mut generator_failures = Vec::new();
    for ideal in &corpus {
        let gens = display_gens(ideal.generators());
        let colength = ideal.colength()?;
        for ord in [MonomialOrdering::Ls, MonomialOrdering::Ds, MonomialOrdering::Weighted(w)] {
            let stairs = ideal.clone().with_ordering(ord).staircase()?;
            if standard_monomials(&stairs) != colength {
                ordering_failures.push(format!("<{gens}> under {ord}"));
            }
        }
        let hs = ideal.hilbert_samuel()?;
        if let Err(e) = hs.check() {
            structure_failures.push(format!("<{gens}>: {e}"));
        }
        let leading: Vec<Polynomial> = ideal
            .clone()
            .with_ordering(MonomialOrdering::Ds)
            .staircase()?
            .into_iter()
            .map(Polynomial::from)
            .collect();
        if Ideal::new(leading).hilbert_samuel()? != hs {
            hs_failures.push(format!("<{gens}>"));
        }
        if ideal.iarrobino_lower_bound()? > ideal.min_generators()? {
            generator_failures.push(format!("<{gens}>"));
        }
    }
    let n = corpus.len();
    let push = |run: &mut Run, id: &str, what: &str, failures: Vec<String>| {
        run.fact(
            format!("properties.{id}"),
            n == 200 && failures.is_empty(),
            format!("{what} on 200 random ideals"),
            format!("{} of {n} fail", failures.len()),
            failures.first().cloned(),
        );
    };
    push(run, "colength_ordering_independent", "same colength under ls, ds, w:2,3", ordering_failures);
    push(run, "hilbert_samuel_of_ds_leading_ideal", "Hilbert-Samuel data equal to that of the ds leading ideal", hs_failures);
    push(run, "hilbert_samuel_structure_random", "Hilbert-Samuel structural checks", structure_failures);
    push(run, "iarrobino_bound", "iarrobino_lower_bound <= min_generators", generator_failures);
    Ok(())
}

fn search_properties(run: &mut Run) -> Result<()> {
    let profiles: Vec<SearchProfile> = run.profiles.values().cloned().collect();
    let pairs: usize = profiles.iter().map(|p| p.pairs_evaluated).sum();
    let violations: Vec<String> = profiles.iter().flat_map(|p| p.dimension_violations.clone()).collect();
    run.fact(
        "properties.intersection_exceeds_colength".into(),
        violations.is_empty() && pairs > 0,
        "i(f, g) > dim R/I on every visited pair".into(),
        format!("{} violations among {pairs} pairs", violations.len()),
        violations.first().cloned(),
    );
    let checks: usize = profiles.iter().map(|p| p.degree_bound_checks).sum();
    let visited: usize = profiles.iter().map(|p| p.profiles.len()).sum();
    run.fact(
        "properties.complete_intersection_degree_bound".into(),
        checks >= visited && visited > 0,
        "dim R/I <= (degbound - mult + 1) mult on every visited complete intersection".into(),
        format!("{checks} checks, {visited} complete intersections"),
        None,
    );
    let hs_failures: Vec<String> = profiles.iter().flat_map(|p| p.hilbert_samuel_failures.clone()).collect();
    run.fact(
        "properties.hilbert_samuel_structure_search".into(),
        hs_failures.is_empty(),
        "Hilbert-Samuel structural checks on every searched ideal".into(),
        format!("{} failures", hs_failures.len()),
        hs_failures.first().cloned(),
    );

    let mut specs = simple_specs();
    specs.extend((3..=8).map(SingularitySpec::M));
    let mut bad = Vec::new();
    for spec in &specs {
        let values: Vec<Rational> = monotonicity_alphas()
            .iter()
            .map(|a| run.profile(spec).and_then(|p| p.report(a)).map(|r| r.gamma_value))
            .collect::<Result<_>>()?;
        if !values.windows(2).all(|w| w[0] < w[1]) {
            bad.push(spec.to_string());
        }
        // The same for every single visited ideal.
        for p in &run.profile(spec)?.profiles {
            let vals: Vec<Rational> = monotonicity_alphas().iter().map(|a| p.gamma(a).0).collect();
            if !vals.windows(2).all(|w| w[0] < w[1]) {
                bad.push(format!("{spec} at <{}>", display_gens(&p.generators)));
            }
        }
    }
    run.fact(
        "properties.alpha_monotonicity".into(),
        bad.is_empty(),
        "gamma strictly increasing in alpha over 0, 1/4, 1/2, 3/4, 1".into(),
        format!("{} failures over {} germs", bad.len(), specs.len()),
        bad.first().cloned(),
    );

    let mut bad = Vec::new();
    let mut checked = 0;
    for spec in run.profiles.keys().cloned().collect::<Vec<_>>() {
        let profile = run.profiles[&spec].clone();
        for a in table_alphas() {
            let s = super::sandwich_check(&profile, &a)?;
            checked += 1;
            if !s.holds {
                bad.push(format!(
                    "{spec} alpha={a}: {} <= {} <= {}, kappa bound {:?}, strict {}",
                    s.lower, s.gamma, s.upper, s.kappa_lower.map(|k| k.to_string()), s.strict
                ));
            }
        }
    }
    run.fact(
        "properties.sandwich".into(),
        bad.is_empty(),
        "(1+a)^2 tau_ci <= gamma <= (tau_ci+a)^2 with the kappa refinement".into(),
        format!("{} failures in {checked} checks", bad.len()),
        bad.first().cloned(),
    );
    Ok(())
}

fn invariant_properties(run: &mut Run) -> Result<()> {
    let seed = run.budget.seed;
    let mut kappa_bad = Vec::new();
    for spec in simple_specs() {
        let k = match spec {
            SingularitySpec::A(k) => k + 1,
            SingularitySpec::D(k) | SingularitySpec::E(k) => k + 2,
            _ => unreachable!(),
        } as usize;
        let got = kappa(&spec.representative(), seed)?;
        if got != k {
            kappa_bad.push(format!("{spec}: {got} != {k}"));
        }
    }
    run.fact(
        "properties.kappa_simple".into(),
        kappa_bad.is_empty(),
        "kappa = k+1, k+2, k+2 for A_k, D_k, E_k".into(),
        format!("{} mismatches", kappa_bad.len()),
        kappa_bad.first().cloned(),
    );

    let specs: Vec<SingularitySpec> = {
        let mut v = simple_specs();
        v.extend((2..=9).map(SingularitySpec::M));
        v.extend(
            run.profiles
                .values()
                .filter(|p| matches!(p.spec, SingularitySpec::Sqh { .. }))
                .map(|p| p.spec.clone()),
        );
        v
    };
    let mut two_delta = Vec::new();
    let mut identity = Vec::new();
    let mut tau_es = Vec::new();
    for spec in &specs {
        let r = InvariantRecord::compute(spec, seed)?;
        if !r.kappa_at_most_two_delta() {
            two_delta.push(format!("{spec}: kappa {} > 2 delta {}", r.kappa, 2 * r.delta));
        }
        if !r.kappa_matches_delta_identity() {
            identity.push(spec.to_string());
        }
        if !r.delta_below_tau_es(spec) {
            tau_es.push(format!("{spec}: delta {} tau_es {}", r.delta, r.tau_es));
        }
    }
    run.fact(
        "invariants.kappa_at_most_two_delta".into(),
        two_delta.is_empty(),
        format!("kappa <= 2 delta on {} germs", specs.len()),
        format!("{} counterexamples", two_delta.len()),
        Some(two_delta.join("; ")).filter(|s| !s.is_empty()),
    );
    run.fact(
        "invariants.kappa_delta_identity".into(),
        identity.is_empty(),
        format!("kappa + r = 2 delta + mult on {} germs", specs.len()),
        format!("{} failures", identity.len()),
        identity.first().cloned(),
    );
    run.fact(
        "invariants.delta_below_tau_es".into(),
        tau_es.is_empty(),
        "delta < tau_es, with equality 1 = 1 only for the node A_1 = M_2".into(),
        format!("{} failures", tau_es.len()),
        tau_es.first().cloned(),
    );

    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x0DE7);
    let mut bad = Vec::new();
    let mut checked = 0;
    for p in run.profiles.values() {
        let SingularitySpec::Sqh { weights, ref f } = p.spec else {
            continue;
        };
        for _ in 0..100 {
            let mut terms = Vec::new();
            for _ in 0..rng.gen_range(1..=3) {
                let d = rng.gen_range(1..=6u32);
                let y = rng.gen_range(0..=d);
                terms.push((rat(rng.gen_range(-4..=4), rng.gen_range(1..=3)), Monomial::new(d - y, y)));
            }
            let g = Polynomial::from_terms(terms);
            if g.is_zero() {
                continue;
            }
            checked += 1;
            let WeightedOrder::Finite(w) = weighted_order(&g, weights) else {
                continue;
            };
            match intersection_multiplicity(f, &g) {
                Multiplicity::Finite(i) if i < w => bad.push(format!("{}: g = {g}, i = {i}, ord = {w}", p.spec)),
                _ => {}
            }
        }
    }
    run.fact(
        "properties.intersection_at_least_weighted_order".into(),
        bad.is_empty() && checked > 0,
        "i(f, g) >= weighted order of g for random g".into(),
        format!("{} failures among {checked}", bad.len()),
        bad.first().cloned(),
    );
    Ok(())
}

/// Runs every registered check. Fact groups: `simple`, `ordinary`,
/// `tau_ci`, `sqh`, `hilbert`, `properties`, `invariants`.
pub fn verify_paper(budget: &Budget) -> VerificationReport {
    let mut run = Run {
        budget: budget.clone(),
        facts: Vec::new(),
        profiles: BTreeMap::new(),
    };
    let r = simple_table(&mut run);
    run.guard("simple.error", r);
    let r = ordinary_points(&mut run);
    run.guard("ordinary.error", r);
    let r = tau_ci_table(&mut run);
    run.guard("tau_ci.error", r);
    let r = sqh_examples(&mut run);
    run.guard("sqh.error", r);
    let r = hilbert_samuel_goldens(&mut run);
    run.guard("hilbert.error", r);
    let r = corpus_properties(&mut run);
    run.guard("properties.corpus_error", r);
    let r = search_properties(&mut run);
    run.guard("properties.search_error", r);
    let r = invariant_properties(&mut run);
    run.guard("invariants.error", r);
    VerificationReport {
        seed: budget.seed,
        facts: run.facts,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gamma::ClosedForm;

    #[test]
    fn standard_monomial_count() {
        let stairs = [Monomial::new(3, 0), Monomial::new(2, 1), Monomial::new(0, 3)];
        assert_eq!(standard_monomials(&stairs), 7);
    }

    #[test]
    fn corpus_is_deterministic_and_bounded() {
        let a = random_corpus(3, 20);
        let b = random_corpus(3, 20);
        assert_eq!(a.len(), 20);
        assert!(a.iter().zip(&b).all(|(x, y)| x.generators() == y.generators()));
        assert!(a.iter().all(|i| i.degbound().unwrap() <= 6));
    }

    #[test]
    fn sandwich_for_d4() {
        let p = search_profile(&SingularitySpec::D(4), Flavor::Es, &Budget::default()).unwrap();
        let s = sandwich_check(&p, &int(0)).unwrap();
        assert_eq!((s.tau_ci, s.gamma.clone(), s.lower.clone(), s.upper.clone()), (4, int(8), int(4), int(16)));
        assert!(s.holds);
    }

    #[test]
    fn closed_form_exactness_is_reported() {
        let p = search_profile(&SingularitySpec::E(7), Flavor::Es, &Budget::default()).unwrap();
        let r = p.report(&int(1)).unwrap();
        assert_eq!(r.closed_form, Some(ClosedForm::Exact(rat(81, 2))));
        assert_eq!(r.gamma_value, rat(81, 2));
    }
}
