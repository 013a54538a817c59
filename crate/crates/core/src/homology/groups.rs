use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::One;

use super::complex::{build_clique_complex, ChainComplex, VertexOrder};
use super::field::{self, PrimeField};
use super::snf;
use crate::error::{Error, Result};
use crate::grid::DigitalImage;

/// Coefficients for (co)homology.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Coeff {
    Integers,
    Rationals,
    Prime(u64),
}

impl FromStr for Coeff {
    type Err = Error;

    /// `int`, `q` or `p<prime>` (e.g. `p2`).
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "int" | "z" | "Z" => Ok(Coeff::Integers),
            "q" | "Q" => Ok(Coeff::Rationals),
            _ => {
                let p = s
                    .strip_prefix('p')
                    .and_then(|n| n.parse::<u64>().ok())
                    .ok_or_else(|| {
                        Error::InvalidAdjacency(format!("unknown coefficients `{s}`"))
                    })?;
                PrimeField::new(p)?;
                Ok(Coeff::Prime(p))
            }
        }
    }
}

impl fmt::Display for Coeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coeff::Integers => write!(f, "Z"),
            Coeff::Rationals => write!(f, "Q"),
            Coeff::Prime(p) => write!(f, "F_{p}"),
        }
    }
}

/// A finitely generated group `R^rank + Z/t_1 + ...`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Group {
    pub rank: usize,
    /// Torsion coefficients greater than one, each dividing the next.
    pub torsion: Vec<BigInt>,
}

impl Group {
    pub fn is_trivial(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }
}

/// (Co)homology groups in every degree up to the complex's top dimension.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologyResult {
    pub cohomology: bool,
    pub coeff: Coeff,
    pub groups: Vec<Group>,
}

impl HomologyResult {
    /// Rank in degree `q` (zero beyond the computed range).
    pub fn rank(&self, q: usize) -> usize {
        self.groups.get(q).map_or(0, |g| g.rank)
    }

    pub fn torsion(&self, q: usize) -> &[BigInt] {
        self.groups.get(q).map_or(&[], |g| g.torsion.as_slice())
    }

    pub fn is_torsion_free(&self) -> bool {
        self.groups.iter().all(|g| g.torsion.is_empty())
    }
}

impl fmt::Display for HomologyResult {
    /// One line per degree, e.g. `H^1 = Z^5` or `H_1 = Z + Z/2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sep = if self.cohomology { "^" } else { "_" };
        for (q, g) in self.groups.iter().enumerate() {
            let mut parts = Vec::new();
            match g.rank {
                0 => {}
                1 => parts.push(self.coeff.to_string()),
                r => parts.push(format!("{}^{r}", self.coeff)),
            }
            for t in &g.torsion {
                parts.push(format!("Z/{t}"));
            }
            if parts.is_empty() {
                parts.push("0".into());
            }
            writeln!(f, "H{sep}{q} = {}", parts.join(" + "))?;
        }
        Ok(())
    }
}

/// Rank of `∂_q` over the given coefficients.
pub fn boundary_rank(k: &ChainComplex, q: usize, coeff: Coeff) -> Result<usize> {
    let m = k.boundary(q)?;
    Ok(match coeff {
        Coeff::Integers | Coeff::Rationals => snf::rank(&m),
        Coeff::Prime(p) => field::rank(&PrimeField::new(p)?, &m.to_rows(), m.cols()),
    })
}

fn nontrivial(v: Vec<BigInt>) -> Vec<BigInt> {
    v.into_iter().filter(|t| !t.is_one()).collect()
}

fn compute(k: &ChainComplex, coeff: Coeff, cohomology: bool) -> Result<HomologyResult> {
    let top = k.top_dim();
    let ranks = (0..=top + 1)
        .map(|q| boundary_rank(k, q, coeff))
        .collect::<Result<Vec<_>>>()?;
    let groups = (0..=top)
        .map(|q| {
            let rank = k.count(q) - ranks[q] - ranks[q + 1];
            let torsion = if coeff == Coeff::Integers {
                // H_q picks up the torsion of ∂_{q+1}, H^q that of ∂_q
                let m = k.boundary(if cohomology { q } else { q + 1 })?;
                nontrivial(snf::invariant_factors(&m))
            } else {
                Vec::new()
            };
            Ok(Group { rank, torsion })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(HomologyResult {
        cohomology,
        coeff,
        groups,
    })
}

pub fn homology(k: &ChainComplex) -> HomologyResult {
    compute(k, Coeff::Integers, false).expect("integer homology")
}

pub fn cohomology(k: &ChainComplex) -> HomologyResult {
    compute(k, Coeff::Integers, true).expect("integer cohomology")
}

pub fn homology_with(k: &ChainComplex, coeff: Coeff) -> Result<HomologyResult> {
    compute(k, coeff, false)
}

pub fn cohomology_with(k: &ChainComplex, coeff: Coeff) -> Result<HomologyResult> {
    compute(k, coeff, true)
}

/// Rank of the cocycle group `Z^q = ker δ^q`.
pub fn cocycle_rank(k: &ChainComplex, q: usize) -> Result<usize> {
    Ok(k.count(q) - snf::rank(&k.coboundary(q)?))
}

/// Rank of the coboundary group `B^{q+1} = im δ^q`.
pub fn coboundary_rank(k: &ChainComplex, q: usize) -> Result<usize> {
    Ok(snf::rank(&k.coboundary(q)?))
}

/// `b_q` of the clique complex of `x`.
pub fn betti(x: &DigitalImage, q: usize) -> usize {
    let k = build_clique_complex(x, q + 1, &VertexOrder::lexicographic(x));
    homology(&k).rank(q)
}

/// Betti numbers over `Q` from degree 0 up to `max_q`, computed from one complex.
pub fn betti_numbers(x: &DigitalImage, max_q: usize) -> Vec<usize> {
    let k = build_clique_complex(x, max_q + 1, &VertexOrder::lexicographic(x));
    let h = compute(&k, Coeff::Rationals, false).expect("rational homology");
    (0..=max_q).map(|q| h.rank(q)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::grid::{AdjacencyKind, Point};
    use crate::homology::clique_complex;

    #[test]
    fn cube_corner_cohomology() {
        let x = fixtures::mss6();
        let k = clique_complex(&x);
        let h = cohomology(&k);
        assert_eq!((h.rank(0), h.rank(1), h.rank(2)), (1, 5, 0));
        assert!(h.is_torsion_free());
        assert_eq!(h.to_string(), "H^0 = Z\nH^1 = Z^5\n");
        assert_eq!(coboundary_rank(&k, 0).unwrap(), 7);
        assert_eq!(cocycle_rank(&k, 1).unwrap(), 12);
    }

    #[test]
    fn singleton_and_trees() {
        let x =
            DigitalImage::new(AdjacencyKind::new(1, 1).unwrap(), vec![Point::from([0])]).unwrap();
        assert_eq!(homology(&clique_complex(&x)).to_string(), "H_0 = Z\n");
        assert_eq!(betti(&fixtures::interval(5), 1), 0);
        assert_eq!(betti(&fixtures::interval(5), 0), 1);
    }

    #[test]
    fn curves() {
        assert_eq!(betti(&fixtures::theta(), 1), 2);
        assert_eq!(betti(&fixtures::msc4(4), 1), 1);
        assert_eq!(betti(&fixtures::msc4(8), 1), 0);
        assert_eq!(betti(&fixtures::ring8(), 1), 1);
        assert_eq!(betti_numbers(&fixtures::theta(), 2), vec![1, 2, 0]);
    }

    #[test]
    fn coefficients_parse() {
        assert_eq!("int".parse::<Coeff>().unwrap(), Coeff::Integers);
        assert_eq!("q".parse::<Coeff>().unwrap(), Coeff::Rationals);
        assert_eq!("p3".parse::<Coeff>().unwrap(), Coeff::Prime(3));
        assert!("p4".parse::<Coeff>().is_err());
        assert!("r".parse::<Coeff>().is_err());
    }

    #[test]
    fn field_coefficients_display() {
        let k = clique_complex(&fixtures::theta());
        let h = homology_with(&k, Coeff::Prime(2)).unwrap();
        assert_eq!(h.to_string(), "H_0 = F_2\nH_1 = F_2^2\n");
    }
}
