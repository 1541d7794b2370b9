//! Linear algebra in `R / m^T`.
//!
//! An ideal modulo `m^T` is a finite dimensional subspace of the span of the
//! monomials of degree `< T`. It is computed as the closure of the generators
//! under multiplication by `x` and `y`, kept in semi-echelon form with respect
//! to a local ordering. The pivot columns are then exactly the leading
//! monomials of degree `< T` of elements of `I + m^T`.

use num_traits::{One, Zero};

use crate::poly::{Monomial, MonomialOrdering, Polynomial, Rational};

type Entry = (u32, Rational);

/// Sparse vector sorted by column, i.e. from the largest monomial down.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Row(Vec<Entry>);

impl Row {
    fn lead(&self) -> Option<u32> {
        self.0.first().map(|e| e.0)
    }

    fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `self - c * other`.
    fn sub_scaled(&self, c: &Rational, other: &Row) -> Row {
        let (a, b) = (&self.0, &other.0);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() || j < b.len() {
            let take_a = j >= b.len() || (i < a.len() && a[i].0 < b[j].0);
            let take_b = i >= a.len() || (j < b.len() && b[j].0 < a[i].0);
            if take_a {
                out.push(a[i].clone());
                i += 1;
            } else if take_b {
                out.push((b[j].0, -(c * &b[j].1)));
                j += 1;
            } else {
                let v = &a[i].1 - c * &b[j].1;
                if !v.is_zero() {
                    out.push((a[i].0, v));
                }
                i += 1;
                j += 1;
            }
        }
        Row(out)
    }

    fn normalized(mut self) -> Row {
        if let Some((_, lc)) = self.0.first() {
            if !lc.is_one() {
                let inv = Rational::one() / lc;
                for e in &mut self.0 {
                    e.1 *= &inv;
                }
            }
        }
        self
    }
}

/// Monomials of degree `< bound`, sorted from the largest to the smallest
/// under a local ordering.
#[derive(Clone, Debug)]
pub(crate) struct Columns {
    pub bound: u32,
    monomials: Vec<Monomial>,
    index: Vec<u32>,
}

fn triangular(m: Monomial) -> usize {
    let d = m.degree() as usize;
    d * (d + 1) / 2 + m.y as usize
}

impl Columns {
    pub fn new(ordering: MonomialOrdering, bound: u32) -> Self {
        let mut monomials = Vec::new();
        for d in 0..bound {
            for y in 0..=d {
                monomials.push(Monomial::new(d - y, y));
            }
        }
        monomials.sort_by(|a, b| ordering.cmp(*b, *a));
        let mut index = vec![0; monomials.len()];
        for (i, m) in monomials.iter().enumerate() {
            index[triangular(*m)] = i as u32;
        }
        Columns {
            bound,
            monomials,
            index,
        }
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn monomial(&self, col: u32) -> Monomial {
        self.monomials[col as usize]
    }

    pub fn col(&self, m: Monomial) -> Option<u32> {
        (m.degree() < self.bound).then(|| self.index[triangular(m)])
    }

    fn row_of(&self, f: &Polynomial) -> Row {
        let mut entries: Vec<Entry> = f
            .terms()
            .filter_map(|(m, c)| self.col(*m).map(|i| (i, c.clone())))
            .collect();
        entries.sort_by_key(|e| e.0);
        Row(entries)
    }

    /// Multiplication by a monomial preserves the ordering, so the product
    /// of a sorted row is still sorted.
    fn shift(&self, row: &Row, t: Monomial) -> Row {
        Row(row
            .0
            .iter()
            .filter_map(|(i, c)| self.col(self.monomial(*i) * t).map(|j| (j, c.clone())))
            .collect())
    }

    fn polynomial_of(&self, row: &Row) -> Polynomial {
        Polynomial::from_terms(row.0.iter().map(|(i, c)| (c.clone(), self.monomial(*i))))
    }
}

/// The image of an ideal in `R / m^T`, in semi-echelon form.
#[derive(Clone, Debug)]
pub(crate) struct TruncatedIdeal {
    pub columns: Columns,
    rows: Vec<Row>,
    pivot_row: Vec<Option<u32>>,
}

impl TruncatedIdeal {
    /// Closure of `gens` under multiplication by `x` and `y`, modulo `m^bound`.
    pub fn closure(gens: &[Polynomial], ordering: MonomialOrdering, bound: u32) -> Self {
        let columns = Columns::new(ordering, bound);
        let n = columns.len();
        let mut ti = TruncatedIdeal {
            columns,
            rows: Vec::new(),
            pivot_row: vec![None; n],
        };
        let mut queue: std::collections::VecDeque<Row> =
            gens.iter().map(|g| ti.columns.row_of(g)).collect();
        while let Some(row) = queue.pop_front() {
            if let Some(k) = ti.insert(row) {
                let row = &ti.rows[k];
                for t in [Monomial::new(1, 0), Monomial::new(0, 1)] {
                    let shifted = ti.columns.shift(row, t);
                    if !shifted.is_empty() {
                        queue.push_back(shifted);
                    }
                }
                if ti.rows.len() == n {
                    break;
                }
            }
        }
        ti
    }

    /// Adds a vector to the span; returns the index of the new basis row if
    /// the vector was independent.
    fn insert(&mut self, mut row: Row) -> Option<usize> {
        loop {
            let lead = row.lead()?;
            match self.pivot_row[lead as usize] {
                Some(k) => {
                    let c = row.0[0].1.clone();
                    row = row.sub_scaled(&c, &self.rows[k as usize]);
                }
                None => {
                    self.pivot_row[lead as usize] = Some(self.rows.len() as u32);
                    self.rows.push(row.normalized());
                    return Some(self.rows.len() - 1);
                }
            }
        }
    }

    #[cfg(test)]
    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_pivot(&self, m: Monomial) -> bool {
        self.columns
            .col(m)
            .is_some_and(|i| self.pivot_row[i as usize].is_some())
    }

    pub fn pivots(&self) -> impl Iterator<Item = Monomial> + '_ {
        self.rows
            .iter()
            .map(|r| self.columns.monomial(r.lead().expect("basis rows are nonzero")))
    }

    /// Basis row whose leading monomial is `m`, as a polynomial.
    pub fn element_with_lead(&self, m: Monomial) -> Option<Polynomial> {
        let i = self.columns.col(m)?;
        let k = self.pivot_row[i as usize]?;
        Some(self.columns.polynomial_of(&self.rows[k as usize]))
    }

    /// Fully reduces `f mod m^T` against the basis. The result is zero iff
    /// `f` lies in `I + m^T`.
    pub fn reduce(&self, f: &Polynomial) -> Polynomial {
        let row = self.reduce_row(self.columns.row_of(f));
        self.columns.polynomial_of(&row)
    }

    fn reduce_row(&self, mut row: Row) -> Row {
        let mut i = 0;
        while i < row.0.len() {
            let col = row.0[i].0;
            match self.pivot_row[col as usize] {
                Some(k) => {
                    let c = row.0[i].1.clone();
                    row = row.sub_scaled(&c, &self.rows[k as usize]);
                }
                None => i += 1,
            }
        }
        row
    }

    /// Reduced row echelon basis, ordered by leading column. Two ideals
    /// with the same truncation and ordering have equal spans iff these agree.
    pub fn reduced_basis(&self) -> Vec<Polynomial> {
        let mut order: Vec<usize> = (0..self.rows.len()).collect();
        order.sort_by_key(|&k| std::cmp::Reverse(self.rows[k].lead()));
        let mut reduced: Vec<Option<Row>> = vec![None; self.rows.len()];
        let mut done = TruncatedIdeal {
            columns: self.columns.clone(),
            rows: Vec::new(),
            pivot_row: vec![None; self.columns.len()],
        };
        for k in order {
            let row = &self.rows[k];
            let lead = row.0[0].clone();
            let tail = done.reduce_row(Row(row.0[1..].to_vec()));
            let mut full = vec![lead.clone()];
            full.extend(tail.0);
            let full = Row(full);
            done.pivot_row[lead.0 as usize] = Some(done.rows.len() as u32);
            done.rows.push(full.clone());
            reduced[k] = Some(full);
        }
        let mut rows: Vec<Row> = reduced.into_iter().flatten().collect();
        rows.sort_by_key(|r| r.lead());
        rows.iter().map(|r| self.columns.polynomial_of(r)).collect()
    }

    /// Number of pivots in each degree `0..T`.
    pub fn pivots_per_degree(&self) -> Vec<usize> {
        let mut counts = vec![0; self.columns.bound as usize];
        for m in self.pivots() {
            counts[m.degree() as usize] += 1;
        }
        counts
    }

    /// Smallest `D < T` such that every monomial of degree `D` is a pivot.
    pub fn full_degree(&self) -> Option<u32> {
        self.pivots_per_degree()
            .iter()
            .enumerate()
            .find(|(d, &c)| c == d + 1)
            .map(|(d, _)| d as u32)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_ideal;

    #[test]
    fn closure_of_monomial_ideal() {
        let gens = parse_ideal("x^2, y^3").unwrap();
        let ti = TruncatedIdeal::closure(&gens, MonomialOrdering::Ds, 6);
        assert_eq!(ti.full_degree(), Some(4));
        assert_eq!(ti.columns.len() - ti.rank(), 6);
        assert!(ti.is_pivot(Monomial::new(1, 3)));
        assert!(!ti.is_pivot(Monomial::new(1, 2)));
    }

    #[test]
    fn reduction_decides_membership() {
        let gens = parse_ideal("x*y, x^2 - 3*y^3").unwrap();
        let ti = TruncatedIdeal::closure(&gens, MonomialOrdering::Ls, 8);
        assert!(ti.reduce(&crate::poly::parse_polynomial("x^3").unwrap()).is_zero());
        assert!(!ti.reduce(&crate::poly::parse_polynomial("y^2").unwrap()).is_zero());
    }

    #[test]
    fn reduced_basis_is_independent_of_generator_presentation() {
        let a = parse_ideal("x + y^2, y^3").unwrap();
        let b = parse_ideal("x + y^2 + x*y^2, x*y + y^4, y^3").unwrap();
        let ta = TruncatedIdeal::closure(&a, MonomialOrdering::Ds, 5);
        let tb = TruncatedIdeal::closure(&b, MonomialOrdering::Ds, 5);
        assert_eq!(ta.reduced_basis(), tb.reduced_basis());
    }
}
