//! Zero-dimensional ideals of the local ring `k[x, y]_(x, y)`.
//!
//! Colength and Hilbert-Samuel data are read off the image of the ideal in
//! `R / m^T` under the degree ordering `ds`. A truncation `T` is accepted
//! once every monomial of some degree `D < T` is a leading monomial: then
//! `m^D ⊆ I + m^(D+1)`, hence `m^D ⊆ I` by Nakayama, and nothing beyond
//! degree `D` matters.

mod echelon;
pub mod mora;

use std::sync::{Arc, OnceLock};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::{Monomial, MonomialOrdering, Polynomial};
use echelon::TruncatedIdeal;

pub use mora::normal_form;

pub const DEFAULT_MAX_DEGREE: u32 = 64;

/// Hilbert-Samuel function `h1(d) = dim R/(I + m^(d+1))` and its slope `h0`.
///
/// Both sequences are listed for `d < degbound`; beyond that `h0` vanishes
/// and `h1` is constant.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HilbertSamuelData {
    pub h0: Vec<usize>,
    pub h1: Vec<usize>,
    pub mult: u32,
    pub degbound: u32,
    pub colength: usize,
}

impl HilbertSamuelData {
    fn from_slope(h0: Vec<usize>) -> Self {
        let degbound = h0.len() as u32;
        let mult = h0
            .iter()
            .enumerate()
            .find(|(d, &h)| h < d + 1)
            .map_or(degbound, |(d, _)| d as u32);
        let h1 = h0
            .iter()
            .scan(0, |acc, &h| {
                *acc += h;
                Some(*acc)
            })
            .collect::<Vec<_>>();
        let colength = h1.last().copied().unwrap_or(0);
        HilbertSamuelData {
            h0,
            h1,
            mult,
            degbound,
            colength,
        }
    }

    pub fn h0_at(&self, d: u32) -> usize {
        self.h0.get(d as usize).copied().unwrap_or(0)
    }

    /// Checks the structural properties every Hilbert-Samuel slope of a
    /// zero-dimensional ideal has; returns a description of the first one
    /// that fails.
    pub fn check(&self) -> std::result::Result<(), String> {
        let mult = self.mult as usize;
        for d in 0..self.h0.len() {
            if d < mult && self.h0[d] != d + 1 {
                return Err(format!("h0({d}) = {} below mult {mult}", self.h0[d]));
            }
            if d > mult && self.h0[d] > self.h0[d - 1] {
                return Err(format!("h0 increases at {d}"));
            }
            if self.h0[d] > mult {
                return Err(format!("h0({d}) exceeds mult"));
            }
            if self.h0[d] == 0 {
                return Err(format!("h0({d}) vanishes below degbound"));
            }
            let prev = if d == 0 { 0 } else { self.h1[d - 1] };
            if self.h1[d] != prev + self.h0[d] {
                return Err(format!("h1 is not the sum of h0 at {d}"));
            }
        }
        if self.h0.iter().sum::<usize>() != self.colength {
            return Err("sum of h0 differs from colength".into());
        }
        Ok(())
    }

    /// Slope drops by at most one per step, as for every complete intersection.
    pub fn has_ci_slope(&self) -> bool {
        (self.mult.max(1)..=self.degbound)
            .all(|d| self.h0_at(d - 1) <= self.h0_at(d) + 1)
    }
}

#[derive(Debug)]
struct Certified {
    degbound: u32,
    closure: TruncatedIdeal,
}

#[derive(Debug)]
struct Staircase {
    minimal: Vec<Monomial>,
    basis: Vec<Polynomial>,
}

/// An ideal given by generators, with lazily computed invariants.
#[derive(Clone, Debug)]
pub struct Ideal {
    generators: Vec<Polynomial>,
    ordering: MonomialOrdering,
    max_degree: u32,
    certified: OnceLock<Result<Arc<Certified>>>,
    staircase: OnceLock<Result<Arc<Staircase>>>,
}

impl PartialEq for Ideal {
    /// Equality of generator lists; use [`Ideal::same_ideal`] for ideals.
    fn eq(&self, other: &Self) -> bool {
        self.generators == other.generators && self.ordering == other.ordering
    }
}

impl Ideal {
    pub fn new(generators: Vec<Polynomial>) -> Self {
        Ideal {
            generators: generators.into_iter().filter(|g| !g.is_zero()).collect(),
            ordering: MonomialOrdering::Ls,
            max_degree: DEFAULT_MAX_DEGREE,
            certified: OnceLock::new(),
            staircase: OnceLock::new(),
        }
    }

    pub fn with_ordering(mut self, ordering: MonomialOrdering) -> Self {
        self.ordering = ordering;
        self.staircase = OnceLock::new();
        self
    }

    /// Largest degree bound the engine will try before reporting the ideal
    /// as not zero-dimensional.
    pub fn with_max_degree(mut self, max_degree: u32) -> Self {
        self.max_degree = max_degree;
        self.certified = OnceLock::new();
        self
    }

    /// `m^k`.
    pub fn maximal_power(k: u32) -> Self {
        Ideal::new((0..=k).map(|a| Polynomial::monomial(a, k - a)).collect())
    }

    pub fn maximal() -> Self {
        Ideal::maximal_power(1)
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    pub fn ordering(&self) -> MonomialOrdering {
        self.ordering
    }

    pub fn max_degree(&self) -> u32 {
        self.max_degree
    }

    fn derived(&self, generators: Vec<Polynomial>) -> Ideal {
        Ideal::new(generators)
            .with_ordering(self.ordering)
            .with_max_degree(self.max_degree)
    }

    pub fn sum(&self, other: &Ideal) -> Ideal {
        let mut gens = self.generators.clone();
        gens.extend(other.generators.iter().cloned());
        self.derived(gens)
    }

    pub fn product(&self, other: &Ideal) -> Ideal {
        let mut gens = Vec::new();
        for f in &self.generators {
            for g in &other.generators {
                gens.push(f * g);
            }
        }
        // The degree bound of a product is at most the sum of the bounds.
        self.derived(gens).with_max_degree(self.max_degree + other.max_degree)
    }

    /// `m * I`.
    pub fn times_maximal(&self) -> Ideal {
        let mut gens = Vec::new();
        for g in &self.generators {
            gens.push(g.mul_monomial(Monomial::new(1, 0)));
            gens.push(g.mul_monomial(Monomial::new(0, 1)));
        }
        self.derived(gens).with_max_degree(self.max_degree + 1)
    }

    fn try_certify(&self, bound: u32) -> Option<Certified> {
        let closure = TruncatedIdeal::closure(&self.generators, MonomialOrdering::Ds, bound);
        closure
            .full_degree()
            .map(|degbound| Certified { degbound, closure })
    }

    fn initial_bound(&self) -> u32 {
        let top = self.generators.iter().filter_map(|g| g.degree()).max().unwrap_or(0);
        (top + 2).clamp(2, self.max_degree + 1)
    }

    fn certified(&self) -> Result<Arc<Certified>> {
        self.certified
            .get_or_init(|| {
                let cap = self.max_degree + 1;
                let mut bound = self.initial_bound();
                loop {
                    if let Some(c) = self.try_certify(bound) {
                        return Ok(Arc::new(c));
                    }
                    if bound >= cap {
                        return Err(Error::NotZeroDimensional {
                            cap: self.max_degree,
                        });
                    }
                    bound = (bound * 2).min(cap);
                }
            })
            .clone()
    }

    /// Smallest `D` with `m^D ⊆ I`.
    pub fn degbound(&self) -> Result<u32> {
        Ok(self.certified()?.degbound)
    }

    pub fn is_zero_dimensional(&self) -> bool {
        self.certified().is_ok()
    }

    pub fn hilbert_samuel(&self) -> Result<HilbertSamuelData> {
        let c = self.certified()?;
        let pivots = c.closure.pivots_per_degree();
        let h0 = (0..c.degbound as usize).map(|d| d + 1 - pivots[d]).collect();
        Ok(HilbertSamuelData::from_slope(h0))
    }

    pub fn colength(&self) -> Result<usize> {
        let c = self.certified()?;
        let pivots = c.closure.pivots_per_degree();
        Ok((0..c.degbound as usize).map(|d| d + 1 - pivots[d]).sum())
    }

    /// `Some(colength)` if the ideal is zero-dimensional of colength at most
    /// `limit`, `None` otherwise. The work is bounded in terms of `limit`.
    pub fn colength_at_most(&self, limit: u32) -> Option<usize> {
        if let Some(Ok(_)) = self.certified.get() {
            return self.colength().ok().filter(|&c| c <= limit as usize);
        }
        // Every degree below the degree bound contributes to the colength.
        let c = self.try_certify(limit + 1)?;
        let pivots = c.closure.pivots_per_degree();
        let colength: usize = (0..c.degbound as usize).map(|d| d + 1 - pivots[d]).sum();
        (colength <= limit as usize).then_some(colength)
    }

    pub fn contains(&self, f: &Polynomial) -> Result<bool> {
        Ok(self.certified()?.closure.reduce(f).is_zero())
    }

    /// `J ⊆ I`. Only `J` has to be zero-dimensional: if the generators of `J`
    /// lie in `I + m^(D+1)` with `m^D ⊆ J`, then `m^D ⊆ I` by Nakayama and
    /// the inclusion is exact.
    pub fn contains_ideal(&self, j: &Ideal) -> Result<bool> {
        if let Some(Ok(_)) = self.certified.get() {
            for g in &j.generators {
                if !self.contains(g)? {
                    return Ok(false);
                }
            }
            return Ok(true);
        }
        let d = j.degbound()?;
        let closure = TruncatedIdeal::closure(&self.generators, MonomialOrdering::Ds, d + 1);
        if !j.generators.iter().all(|g| closure.reduce(g).is_zero()) {
            return Ok(false);
        }
        let degbound = closure
            .full_degree()
            .expect("m^D lies in I once J does");
        let _ = self.certified.set(Ok(Arc::new(Certified { degbound, closure })));
        Ok(true)
    }

    /// Both ideals contain each other.
    pub fn same_ideal(&self, other: &Ideal) -> Result<bool> {
        Ok(self.contains_ideal(other)? && other.contains_ideal(self)?)
    }

    /// A presentation-independent description: the degree bound and the
    /// reduced echelon basis of `I / m^D` under `ds`.
    pub fn canonical_key(&self) -> Result<(u32, Vec<Polynomial>)> {
        let c = self.certified()?;
        let rows = c
            .closure
            .reduced_basis()
            .into_iter()
            .filter(|r| {
                r.leading_monomial(MonomialOrdering::Ds)
                    .is_some_and(|m| m.degree() < c.degbound)
            })
            .map(|r| r.truncate(c.degbound))
            .collect();
        Ok((c.degbound, rows))
    }

    fn staircase_data(&self) -> Result<Arc<Staircase>> {
        self.staircase
            .get_or_init(|| {
                let d = self.degbound()?;
                let closure = TruncatedIdeal::closure(&self.generators, self.ordering, d + 1);
                let minimal: Vec<Monomial> = closure
                    .pivots()
                    .filter(|m| {
                        let below_x = m.x > 0 && closure.is_pivot(Monomial::new(m.x - 1, m.y));
                        let below_y = m.y > 0 && closure.is_pivot(Monomial::new(m.x, m.y - 1));
                        !below_x && !below_y
                    })
                    .collect();
                let mut minimal = minimal;
                minimal.sort_by(|a, b| self.ordering.cmp(*b, *a));
                let basis = minimal
                    .iter()
                    .map(|m| {
                        closure
                            .element_with_lead(*m)
                            .expect("pivot has a basis row")
                            .primitive()
                    })
                    .collect();
                Ok(Arc::new(Staircase { minimal, basis }))
            })
            .clone()
    }

    /// Minimal monomial generators of the leading ideal under the ideal's
    /// ordering, from the largest down.
    pub fn staircase(&self) -> Result<Vec<Monomial>> {
        Ok(self.staircase_data()?.minimal.clone())
    }

    /// Standard basis whose leading monomials are exactly [`Ideal::staircase`].
    pub fn standard_basis(&self) -> Result<Vec<Polynomial>> {
        Ok(self.staircase_data()?.basis.clone())
    }

    /// `dim I / mI = colength(mI) - colength(I)`.
    pub fn min_generators(&self) -> Result<usize> {
        let own = self.colength()?;
        let bigger = self.times_maximal().colength()?;
        Ok(bigger - own)
    }

    pub fn is_complete_intersection(&self) -> Result<bool> {
        let ci = self.colength()? > 0 && self.min_generators()? == 2;
        if ci {
            let hs = self.hilbert_samuel()?;
            assert!(
                hs.has_ci_slope(),
                "complete intersection with slope {:?}",
                hs.h0
            );
        }
        Ok(ci)
    }

    /// `1 + max_{d >= mult} (h0(d-1) - h0(d))`, a lower bound for the number
    /// of generators.
    pub fn iarrobino_lower_bound(&self) -> Result<usize> {
        let hs = self.hilbert_samuel()?;
        let drop = (hs.mult.max(1)..=hs.degbound)
            .map(|d| hs.h0_at(d - 1).saturating_sub(hs.h0_at(d)))
            .max()
            .unwrap_or(0);
        Ok(1 + drop)
    }

    /// `(degbound - mult + 1) * mult`, an upper bound for the colength of a
    /// complete intersection.
    pub fn deg_fp_bound(&self) -> Result<usize> {
        if !self.is_complete_intersection()? {
            return Err(Error::NotCompleteIntersection);
        }
        let hs = self.hilbert_samuel()?;
        let bound = (hs.degbound - hs.mult + 1) as usize * hs.mult as usize;
        assert!(hs.colength <= bound, "colength exceeds (degbound - mult + 1) * mult");
        Ok(bound)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{parse_ideal, parse_polynomial};

    fn ideal(s: &str) -> Ideal {
        Ideal::new(parse_ideal(s).unwrap())
    }

    #[test]
    fn generator_count_at_the_truncation_cap() {
        // m * I needs one degree more than I.
        let i = ideal("x^2, y^2").with_max_degree(3);
        assert_eq!(i.degbound().unwrap(), 3);
        assert_eq!(i.min_generators().unwrap(), 2);
    }

    #[test]
    fn hilbert_samuel_examples() {
        let e7 = ideal("3*x^2 - y^3, x*y^2");
        let hs = e7.hilbert_samuel().unwrap();
        assert_eq!(hs.h0, vec![1, 2, 2, 1, 1]);
        assert_eq!((hs.mult, hs.degbound, hs.colength), (2, 5, 7));
        hs.check().unwrap();

        let hs = ideal("x^3, x^2*y, y^3").hilbert_samuel().unwrap();
        assert_eq!(hs.h0, vec![1, 2, 3, 1]);
        assert_eq!((hs.mult, hs.degbound, hs.colength), (3, 4, 7));

        let hs = Ideal::maximal().hilbert_samuel().unwrap();
        assert_eq!(hs.h0, vec![1]);
        assert_eq!((hs.mult, hs.degbound, hs.colength), (1, 1, 1));
    }

    #[test]
    fn colengths() {
        for k in 1..8 {
            assert_eq!(ideal(&format!("x, y^{k}")).colength().unwrap(), k as usize);
            assert_eq!(Ideal::maximal_power(k).colength().unwrap(), (k * (k + 1) / 2) as usize);
        }
        assert_eq!(ideal("1 + x, y").colength().unwrap(), 0);
    }

    #[test]
    fn not_zero_dimensional() {
        let i = ideal("x*y").with_max_degree(10);
        assert_eq!(i.colength(), Err(Error::NotZeroDimensional { cap: 10 }));
        assert_eq!(i.colength_at_most(20), None);
    }

    #[test]
    fn staircases() {
        for k in 5..9u32 {
            let i = ideal(&format!("x*y, x^2 - {}*y^{}", k - 1, k - 2));
            let mut s = i.staircase().unwrap();
            s.sort();
            assert_eq!(s, vec![Monomial::new(0, k - 2), Monomial::new(1, 1), Monomial::new(3, 0)]);
            for g in i.standard_basis().unwrap() {
                assert!(i.contains(&g).unwrap());
            }
        }
        let s = ideal("x^2, y^3").with_ordering(MonomialOrdering::Ds).staircase().unwrap();
        assert_eq!(s, vec![Monomial::new(2, 0), Monomial::new(0, 3)]);
    }

    #[test]
    fn generator_counts() {
        for k in 5..9 {
            let i = ideal(&format!("x^2, x*y, y^{}", k - 2));
            assert_eq!(i.min_generators().unwrap(), 3);
            assert!(!i.is_complete_intersection().unwrap());
            let d = ideal(&format!("x*y, x^2 - {}*y^{}", k - 1, k - 2));
            assert!(d.is_complete_intersection().unwrap());
        }
        assert_eq!(ideal("x, y^6").min_generators().unwrap(), 2);
        assert!(Ideal::maximal().is_complete_intersection().unwrap());
        assert!(!ideal("x^3, x^2*y, y^3").is_complete_intersection().unwrap());
        assert_eq!(Ideal::maximal_power(3).min_generators().unwrap(), 4);
    }

    #[test]
    fn iarrobino_bounds() {
        assert_eq!(ideal("x^3, x^2*y, y^3").iarrobino_lower_bound().unwrap(), 3);
        assert_eq!(ideal("x, y^7").iarrobino_lower_bound().unwrap(), 2);
        assert_eq!(Ideal::maximal_power(3).iarrobino_lower_bound().unwrap(), 4);
    }

    #[test]
    fn degree_bound_products() {
        assert_eq!(ideal("x, y^5").deg_fp_bound().unwrap(), 5);
        for k in 4..9 {
            let d = ideal(&format!("x*y, x^2 - {}*y^{}", k - 1, k - 2));
            assert_eq!(d.deg_fp_bound().unwrap(), 2 * k - 4);
            let m = ideal(&format!("x^{k}, y^{}", k + 1));
            assert_eq!(m.deg_fp_bound().unwrap(), k * k + k);
            assert_eq!(m.colength().unwrap(), k * k + k);
        }
        assert_eq!(
            ideal("x^3, x^2*y, y^3").deg_fp_bound(),
            Err(Error::NotCompleteIntersection)
        );
    }

    #[test]
    fn containment() {
        for k in 5..9 {
            let dk = ideal(&format!("x*y, x^2 - {}*y^{}", k - 1, k - 2));
            assert!(ideal(&format!("x, y^{}", k - 2)).contains_ideal(&dk).unwrap());
            assert!(!dk.contains_ideal(&ideal(&format!("x, y^{}", k - 2))).unwrap());
        }
        let m2 = Ideal::maximal_power(2);
        assert!(!m2.contains(&parse_polynomial("x + y").unwrap()).unwrap());
        assert!(m2.contains(&parse_polynomial("x*y + x^5").unwrap()).unwrap());
    }

    #[test]
    fn canonical_keys_ignore_presentation() {
        let a = ideal("x + y^2, y^3");
        let b = ideal("x + y^2 + x*y^2, x*y + y^4, y^3 + x^7");
        assert_eq!(a.canonical_key().unwrap(), b.canonical_key().unwrap());
        assert!(a.same_ideal(&b).unwrap());
        assert_ne!(a.canonical_key().unwrap(), ideal("x, y^3").canonical_key().unwrap());
    }
}
