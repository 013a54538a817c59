use std::fmt;

use crate::grid::{DigitalImage, Point};
use crate::homotopy::{
    find_contraction, verify_inclusion_contraction, ContractionSearch, HomotopyFailure,
    SearchOutcome,
};

/// Cover of `X` with, for each part `U`, the steps of a contraction of
/// the inclusion `U -> X` inside `X`. Step tables are indexed like the
/// part's member list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatWitness {
    pub parts: Vec<Vec<usize>>,
    pub contractions: Vec<Vec<Vec<usize>>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CatFailure {
    NotCovered {
        p: Point,
    },
    Mismatch {
        parts: usize,
        contractions: usize,
    },
    OutOfRange {
        part: usize,
    },
    Part {
        part: usize,
        failure: HomotopyFailure,
    },
}

impl fmt::Display for CatFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CatFailure::NotCovered { p } => write!(f, "{p} is in no part"),
            CatFailure::Mismatch {
                parts,
                contractions,
            } => {
                write!(f, "{parts} parts but {contractions} contractions")
            }
            CatFailure::OutOfRange { part } => write!(f, "part {} leaves the image", part + 1),
            CatFailure::Part { part, failure } => write!(f, "part {}: {failure}", part + 1),
        }
    }
}

/// Certifies `cat(X) <= l` and returns `l`. Contractions may leave their
/// part but not `X`.
pub fn verify_cat_witness(x: &DigitalImage, w: &CatWitness) -> Result<usize, CatFailure> {
    if w.parts.len() != w.contractions.len() {
        return Err(CatFailure::Mismatch {
            parts: w.parts.len(),
            contractions: w.contractions.len(),
        });
    }
    let mut covered = vec![false; x.len()];
    for (k, part) in w.parts.iter().enumerate() {
        if part.iter().any(|&i| i >= x.len()) {
            return Err(CatFailure::OutOfRange { part: k });
        }
        for &i in part {
            covered[i] = true;
        }
    }
    if let Some(i) = covered.iter().position(|c| !c) {
        return Err(CatFailure::NotCovered {
            p: x.point(i).clone(),
        });
    }
    for (k, (part, steps)) in w.parts.iter().zip(&w.contractions).enumerate() {
        verify_inclusion_contraction(x, part, steps)
            .map_err(|failure| CatFailure::Part { part: k, failure })?;
    }
    Ok(w.parts.len())
}

/// A one-part witness from a contraction of `X`, if the search finds one.
pub fn cat_one(x: &DigitalImage, max_steps: usize, budget: u64) -> SearchOutcome<CatWitness> {
    match find_contraction(x, max_steps, budget) {
        ContractionSearch::Found(c) => SearchOutcome::Found(CatWitness {
            parts: vec![(0..x.len()).collect()],
            contractions: vec![c.script.steps().to_vec()],
        }),
        ContractionSearch::NotContractible => SearchOutcome::Refuted,
        ContractionSearch::Unknown => SearchOutcome::Unknown,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::homotopy::DEFAULT_BUDGET;

    #[test]
    fn interval_single_part() {
        let x = fixtures::interval(3);
        let w = cat_one(&x, 8, DEFAULT_BUDGET).found().unwrap();
        assert_eq!(verify_cat_witness(&x, &w), Ok(1));
    }

    #[test]
    fn square_single_part() {
        let x = fixtures::interval_power(1, 2);
        let w = cat_one(&x, 8, DEFAULT_BUDGET).found().unwrap();
        assert_eq!(verify_cat_witness(&x, &w), Ok(1));
    }

    #[test]
    fn hexagon_has_cat_two() {
        let x = fixtures::hex_curve6();
        assert_eq!(cat_one(&x, 64, DEFAULT_BUDGET), SearchOutcome::Refuted);
        // a path of three points pulled onto its middle point
        let arc = |a: usize| {
            let nb = x.neighbors_of(a).to_vec();
            vec![nb[0], a, nb[1]]
        };
        let opposite = (0..x.len())
            .find(|&b| x.distances_from(0)[b] == Some(3))
            .unwrap();
        let (p, q) = (arc(0), arc(opposite));
        let mk = |part: &Vec<usize>| vec![part.clone(), vec![part[1]; 3]];
        let w = CatWitness {
            parts: vec![p.clone(), q.clone()],
            contractions: vec![mk(&p), mk(&q)],
        };
        assert_eq!(verify_cat_witness(&x, &w), Ok(2));
        let half = CatWitness {
            parts: vec![p.clone()],
            contractions: vec![mk(&p)],
        };
        assert!(matches!(
            verify_cat_witness(&x, &half),
            Err(CatFailure::NotCovered { .. })
        ));
    }

    #[test]
    fn bad_contraction_is_reported() {
        let x = fixtures::interval(2);
        let w = CatWitness {
            parts: vec![vec![0, 1, 2]],
            contractions: vec![vec![vec![0, 1, 2], vec![2, 2, 0]]],
        };
        assert!(matches!(
            verify_cat_witness(&x, &w),
            Err(CatFailure::Part { .. })
        ));
    }
}
