//! Mora's tangent cone algorithm: weak normal forms and standard bases in
//! the localization of `k[x, y]` at the origin.
//!
//! This is an independent route to leading ideals. The colength and
//! Hilbert-Samuel engine uses linear algebra in `R / m^T` instead, and the
//! two are compared in tests.

use num_traits::One;

use crate::poly::{Monomial, MonomialOrdering, Polynomial, Rational};

/// `deg(f) - deg(LM(f))`, the Mora ecart.
pub fn ecart(f: &Polynomial, ord: MonomialOrdering) -> u32 {
    match (f.degree(), f.leading_monomial(ord)) {
        (Some(d), Some(m)) => d - m.degree(),
        _ => 0,
    }
}

/// `h - (LC(h) / LC(g)) * (LM(h) / LM(g)) * g`; requires `LM(g) | LM(h)`.
fn reduce_step(h: &Polynomial, g: &Polynomial, ord: MonomialOrdering) -> Polynomial {
    let (mh, ch) = h.leading_term(ord).expect("nonzero");
    let (mg, cg) = g.leading_term(ord).expect("nonzero");
    let t = mh.checked_div(mg).expect("leading monomial divides");
    h - &g.mul_monomial(t).scale(&(ch / cg))
}

fn s_polynomial(f: &Polynomial, g: &Polynomial, ord: MonomialOrdering) -> Polynomial {
    let (mf, cf) = f.leading_term(ord).expect("nonzero");
    let (mg, cg) = g.leading_term(ord).expect("nonzero");
    let l = mf.lcm(mg);
    let a = f.mul_monomial(l.checked_div(mf).expect("lcm")).scale(&(Rational::one() / cf));
    let b = g.mul_monomial(l.checked_div(mg).expect("lcm")).scale(&(Rational::one() / cg));
    a - b
}

/// Mora's weak normal form: returns `h` with `u * f - h` in the ideal for a
/// unit `u`, and either `h = 0` or `LM(h)` not divisible by any `LM(g)`.
///
/// The reducer with the smallest ecart is chosen; if it has larger ecart
/// than the current remainder, the remainder joins the reducer set.
pub fn weak_normal_form(f: &Polynomial, basis: &[Polynomial], ord: MonomialOrdering) -> Polynomial {
    let mut h = f.clone();
    let mut reducers: Vec<(Polynomial, Monomial, u32)> = basis
        .iter()
        .filter(|g| !g.is_zero())
        .map(|g| (g.clone(), g.leading_monomial(ord).expect("nonzero"), ecart(g, ord)))
        .collect();
    while let Some(lm) = h.leading_monomial(ord) {
        let best = reducers
            .iter()
            .filter(|(_, m, _)| m.divides(lm))
            .min_by_key(|(_, _, e)| *e);
        let Some((g, _, eg)) = best else { break };
        let g = g.clone();
        let eh = ecart(&h, ord);
        if *eg > eh {
            reducers.push((h.clone(), lm, eh));
        }
        h = reduce_step(&h, &g, ord);
    }
    h
}

fn minimalize(basis: Vec<Polynomial>, ord: MonomialOrdering) -> Vec<Polynomial> {
    let leads: Vec<Monomial> = basis
        .iter()
        .map(|g| g.leading_monomial(ord).expect("nonzero"))
        .collect();
    let mut keep: Vec<Polynomial> = Vec::new();
    for (i, g) in basis.iter().enumerate() {
        let redundant = leads
            .iter()
            .enumerate()
            .any(|(j, m)| j != i && m.divides(leads[i]) && (m != &leads[i] || j < i));
        if !redundant {
            keep.push(g.primitive());
        }
    }
    keep.sort_by(|a, b| {
        let (ma, mb) = (a.leading_monomial(ord).unwrap(), b.leading_monomial(ord).unwrap());
        ord.cmp(mb, ma)
    });
    keep
}

/// Standard basis of the ideal generated by `gens` in the local ring, with
/// redundant elements removed.
pub fn standard_basis(gens: &[Polynomial], ord: MonomialOrdering) -> Vec<Polynomial> {
    let mut basis: Vec<Polynomial> = gens.iter().filter(|g| !g.is_zero()).cloned().collect();
    if basis.iter().any(|g| g.is_unit()) {
        return vec![Polynomial::one()];
    }
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for j in 0..basis.len() {
        for i in 0..j {
            pairs.push((i, j));
        }
    }
    while let Some((i, j)) = pairs.pop() {
        let s = s_polynomial(&basis[i], &basis[j], ord);
        let h = weak_normal_form(&s, &basis, ord);
        if h.is_zero() {
            continue;
        }
        if h.is_unit() {
            return vec![Polynomial::one()];
        }
        let k = basis.len();
        basis.push(h);
        pairs.extend((0..k).map(|i| (i, k)));
    }
    minimalize(basis, ord)
}

fn truncation_generators(trunc: u32) -> Vec<Polynomial> {
    (0..=trunc + 1)
        .map(|a| Polynomial::monomial(a, trunc + 1 - a))
        .collect()
}

/// Normal form of `f` with respect to `<G> + m^(trunc + 1)`.
///
/// A weak normal form is computed first; its tail is then reduced term by
/// term, dropping everything of degree above `trunc`. The result is zero iff
/// `f` lies in `<G> + m^(trunc + 1)`, and none of its monomials is a leading
/// monomial of that ideal.
pub fn normal_form(
    f: &Polynomial,
    gens: &[Polynomial],
    ord: MonomialOrdering,
    trunc: u32,
) -> Polynomial {
    let mut all = gens.to_vec();
    all.extend(truncation_generators(trunc));
    let basis = standard_basis(&all, ord);
    let leads: Vec<(Monomial, &Polynomial)> = basis
        .iter()
        .map(|g| (g.leading_monomial(ord).expect("nonzero"), g))
        .collect();
    let mut pending = weak_normal_form(f, &basis, ord).truncate(trunc + 1);
    let mut fixed = Polynomial::zero();
    while let Some((m, c)) = pending.leading_term(ord) {
        match leads.iter().find(|(l, _)| l.divides(m)) {
            Some((_, g)) => pending = reduce_step(&pending, g, ord).truncate(trunc + 1),
            None => {
                let t = Polynomial::term(c, m);
                pending = &pending - &t;
                fixed = &fixed + &t;
            }
        }
    }
    fixed
}

/// Minimal monomial generators of the leading ideal of a standard basis.
pub fn leading_staircase(basis: &[Polynomial], ord: MonomialOrdering) -> Vec<Monomial> {
    let mut leads: Vec<Monomial> = basis
        .iter()
        .filter_map(|g| g.leading_monomial(ord))
        .collect();
    leads.sort();
    leads.dedup();
    let minimal: Vec<Monomial> = leads
        .iter()
        .copied()
        .filter(|m| !leads.iter().any(|l| l != m && l.divides(*m)))
        .collect();
    minimal
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{parse_ideal, parse_polynomial};

    fn staircase(src: &str, ord: MonomialOrdering) -> Vec<Monomial> {
        let gens = parse_ideal(src).unwrap();
        let mut s = leading_staircase(&standard_basis(&gens, ord), ord);
        s.sort();
        s
    }

    #[test]
    fn d_k_tjurina_staircase_under_ls() {
        for k in 5..10u32 {
            let src = format!("x*y, x^2 - {}*y^{}", k - 1, k - 2);
            let mut expected = vec![Monomial::new(0, k - 2), Monomial::new(1, 1), Monomial::new(3, 0)];
            expected.sort();
            assert_eq!(staircase(&src, MonomialOrdering::Ls), expected);
        }
    }

    #[test]
    fn e7_tjurina_contains_x3_and_y5() {
        let gens = parse_ideal("3*x^2 - y^3, x*y^2").unwrap();
        for m in ["x^3", "y^5"] {
            let f = parse_polynomial(m).unwrap();
            assert!(normal_form(&f, &gens, MonomialOrdering::Ls, 8).is_zero());
        }
        let s = staircase("3*x^2 - y^3, x*y^2", MonomialOrdering::Ls);
        assert_eq!(s, vec![Monomial::new(0, 3), Monomial::new(1, 2), Monomial::new(3, 0)]);
    }

    #[test]
    fn unit_generates_everything() {
        let gens = parse_ideal("1 + x, y").unwrap();
        assert_eq!(standard_basis(&gens, MonomialOrdering::Ds), vec![Polynomial::one()]);
    }

    #[test]
    fn normal_forms() {
        let k = 6;
        let gens = parse_ideal(&format!("x, y^{k}")).unwrap();
        let x2 = parse_polynomial("x^2").unwrap();
        assert!(normal_form(&x2, &gens, MonomialOrdering::Ls, k).is_zero());

        let dk = parse_ideal(&format!("x*y, x^2 - {}*y^{}", k - 1, k - 2)).unwrap();
        let f = Polynomial::monomial(0, k - 3);
        assert!(!normal_form(&f, &dk, MonomialOrdering::Ls, k).is_zero());

        // The tail is reduced too: y + x*y modulo <x*y> is y.
        let r = normal_form(
            &parse_polynomial("y + x*y").unwrap(),
            &parse_ideal("x*y").unwrap(),
            MonomialOrdering::Ds,
            4,
        );
        assert_eq!(r, parse_polynomial("y").unwrap());
    }
}
