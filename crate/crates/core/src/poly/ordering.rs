use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{Monomial, Weights};
use crate::error::{Error, Result};

/// Local monomial orderings on `k[x, y]`: the constant monomial is the
/// largest element under each of them.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum MonomialOrdering {
    /// Negative lexicographical: `x^a y^b < x^c y^d` iff `a > c`, or `a = c` and `b > d`.
    Ls,
    /// Negative degree reverse lexicographical: larger total degree is smaller,
    /// ties broken by the larger `y`-exponent being smaller.
    Ds,
    /// Local weighted degree ordering: larger weighted degree is smaller,
    /// ties broken by the smaller `y`-exponent being smaller.
    Weighted(Weights),
}

impl MonomialOrdering {
    pub fn weighted(p: u32, q: u32) -> Result<Self> {
        Ok(MonomialOrdering::Weighted(Weights::new(p, q)?))
    }

    /// Returns `Greater` when `a` is the larger monomial.
    pub fn cmp(self, a: Monomial, b: Monomial) -> Ordering {
        match self {
            MonomialOrdering::Ls => (b.x, b.y).cmp(&(a.x, a.y)),
            MonomialOrdering::Ds => (b.degree(), b.y).cmp(&(a.degree(), a.y)),
            MonomialOrdering::Weighted(w) => b
                .weighted_degree(w)
                .cmp(&a.weighted_degree(w))
                .then(a.y.cmp(&b.y)),
        }
    }

    /// True if larger total degree always means smaller monomial.
    pub fn is_degree_ordering(self) -> bool {
        match self {
            MonomialOrdering::Ls => false,
            MonomialOrdering::Ds => true,
            MonomialOrdering::Weighted(w) => w.p == w.q,
        }
    }
}

impl fmt::Display for MonomialOrdering {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MonomialOrdering::Ls => write!(f, "ls"),
            MonomialOrdering::Ds => write!(f, "ds"),
            MonomialOrdering::Weighted(w) => write!(f, "w:{},{}", w.p, w.q),
        }
    }
}

impl FromStr for MonomialOrdering {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        match s {
            "ls" => Ok(MonomialOrdering::Ls),
            "ds" => Ok(MonomialOrdering::Ds),
            _ => {
                let rest = s
                    .strip_prefix("w:")
                    .ok_or_else(|| Error::InvalidSpec(format!("unknown ordering '{s}'")))?;
                Ok(MonomialOrdering::Weighted(rest.parse()?))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(x: u32, y: u32) -> Monomial {
        Monomial::new(x, y)
    }

    #[test]
    fn ls_prefers_y() {
        assert_eq!(MonomialOrdering::Ls.cmp(m(1, 0), m(0, 1)), Ordering::Less);
        for k in 5..12 {
            assert_eq!(
                MonomialOrdering::Ls.cmp(m(2, 0), m(0, k - 2)),
                Ordering::Less
            );
        }
    }

    #[test]
    fn weighted_degree_decides_first() {
        let w = MonomialOrdering::weighted(2, 3).unwrap();
        assert_eq!(w.cmp(m(3, 0), m(1, 1)), Ordering::Less);
        // x^3 and y^2 share weight 6; the smaller y-exponent is smaller.
        assert_eq!(w.cmp(m(3, 0), m(0, 2)), Ordering::Less);
    }

    #[test]
    fn ds_breaks_ties_on_y() {
        assert_eq!(MonomialOrdering::Ds.cmp(m(1, 1), m(2, 0)), Ordering::Less);
        assert_eq!(MonomialOrdering::Ds.cmp(m(5, 0), m(0, 2)), Ordering::Less);
    }

    #[test]
    fn reflexive_and_local() {
        let orders = [
            MonomialOrdering::Ls,
            MonomialOrdering::Ds,
            MonomialOrdering::weighted(3, 7).unwrap(),
        ];
        for ord in orders {
            for a in 0..4 {
                for b in 0..4 {
                    assert_eq!(ord.cmp(m(a, b), m(a, b)), Ordering::Equal);
                    if (a, b) != (0, 0) {
                        assert_eq!(ord.cmp(Monomial::ONE, m(a, b)), Ordering::Greater);
                    }
                }
            }
        }
    }

    #[test]
    fn parse_and_display() {
        for s in ["ls", "ds", "w:3,7"] {
            assert_eq!(s.parse::<MonomialOrdering>().unwrap().to_string(), s);
        }
        assert!("w:0,2".parse::<MonomialOrdering>().is_err());
        assert!("dp".parse::<MonomialOrdering>().is_err());
    }
}
