//! Cochains, the Alexander–Whitney cup product, cup length and the maps
//! induced on cochains by a continuous map.
//!
//! Class-level questions (is this cocycle a coboundary?) are answered over
//! a field. `Coeff::Integers` is treated as the rationals there.

use super::complex::ChainComplex;
use super::field::{self, Field, PrimeField, Rationals};
use super::groups::Coeff;
use super::matrix::IntMatrix;
use crate::error::{Error, Result};
use crate::grid::DigitalMap;

/// An integer-valued `q`-cochain, one coefficient per `q`-simplex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cochain {
    degree: usize,
    coeffs: Vec<i64>,
}

impl Cochain {
    pub fn new(k: &ChainComplex, degree: usize, coeffs: Vec<i64>) -> Result<Self> {
        if coeffs.len() != k.count(degree) {
            return Err(Error::InvalidCochain(format!(
                "{} coefficients for {} simplices of dimension {degree}",
                coeffs.len(),
                k.count(degree)
            )));
        }
        Ok(Cochain { degree, coeffs })
    }

    pub fn zero(k: &ChainComplex, degree: usize) -> Self {
        Cochain {
            degree,
            coeffs: vec![0; k.count(degree)],
        }
    }

    /// The 0-cochain with value 1 on every vertex.
    pub fn unit(k: &ChainComplex) -> Self {
        Cochain {
            degree: 0,
            coeffs: vec![1; k.count(0)],
        }
    }

    /// Dual basis element: 1 on simplex `index`, 0 elsewhere.
    pub fn dual(k: &ChainComplex, degree: usize, index: usize) -> Result<Self> {
        let mut c = Self::zero(k, degree);
        let len = c.coeffs.len();
        *c.coeffs
            .get_mut(index)
            .ok_or(Error::OutOfRange { index, len })? = 1;
        Ok(c)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn add(&self, other: &Cochain) -> Result<Cochain> {
        self.zip(other, |a, b| a.checked_add(b))
    }

    pub fn sub(&self, other: &Cochain) -> Result<Cochain> {
        self.zip(other, |a, b| a.checked_sub(b))
    }

    pub fn scale(&self, s: i64) -> Result<Cochain> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| c.checked_mul(s).ok_or(Error::Overflow))
            .collect::<Result<_>>()?;
        Ok(Cochain {
            degree: self.degree,
            coeffs,
        })
    }

    fn zip(&self, other: &Cochain, f: impl Fn(i64, i64) -> Option<i64>) -> Result<Cochain> {
        if self.degree != other.degree || self.coeffs.len() != other.coeffs.len() {
            return Err(Error::InvalidCochain("cochains of different degree".into()));
        }
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(&a, &b)| f(a, b).ok_or(Error::Overflow))
            .collect::<Result<_>>()?;
        Ok(Cochain {
            degree: self.degree,
            coeffs,
        })
    }

    /// Coefficients reduced into `[0, p)`.
    pub fn reduce(&self, p: u64) -> Cochain {
        Cochain {
            degree: self.degree,
            coeffs: self.coeffs.iter().map(|c| c.rem_euclid(p as i64)).collect(),
        }
    }

    fn check(&self, k: &ChainComplex) -> Result<()> {
        if self.coeffs.len() != k.count(self.degree) {
            return Err(Error::InvalidCochain(format!(
                "cochain of degree {} does not belong to this complex",
                self.degree
            )));
        }
        Ok(())
    }
}

/// `(δφ)(σ) = Σ_i (-1)^i φ(d_i σ)`.
pub fn coboundary(k: &ChainComplex, phi: &Cochain) -> Result<Cochain> {
    phi.check(k)?;
    let q = phi.degree + 1;
    let coeffs = (0..k.count(q))
        .map(|s| {
            k.boundary_terms(q, s)
                .into_iter()
                .try_fold(0i64, |acc, (f, sign)| {
                    acc.checked_add(sign * phi.coeffs[f]).ok_or(Error::Overflow)
                })
        })
        .collect::<Result<_>>()?;
    Ok(Cochain { degree: q, coeffs })
}

/// Cup product `(φ ⌣ ψ)(v_0..v_{p+q}) = φ(v_0..v_p) ψ(v_p..v_{p+q})`.
///
/// When `p + q` exceeds the top dimension of `k` the product is the zero
/// cochain of that degree, which has no coefficients.
pub fn cup(k: &ChainComplex, phi: &Cochain, psi: &Cochain) -> Result<Cochain> {
    phi.check(k)?;
    psi.check(k)?;
    let (p, q) = (phi.degree, psi.degree);
    let r = p + q;
    let coeffs = k
        .simplices(r)
        .iter()
        .map(|s| {
            let a = phi.coeffs[k.find_sorted(&s[..=p]).expect("front face")];
            if a == 0 {
                return Ok(0);
            }
            let b = psi.coeffs[k.find_sorted(&s[p..]).expect("back face")];
            a.checked_mul(b).ok_or(Error::Overflow)
        })
        .collect::<Result<_>>()?;
    Ok(Cochain { degree: r, coeffs })
}

fn coboundary_rows(k: &ChainComplex, q: usize) -> Result<Vec<Vec<i64>>> {
    if q == 0 || q > k.top_dim() {
        return Ok(Vec::new());
    }
    Ok(k.boundary(q)?.to_rows())
}

fn basis_in<F: Field>(f: &F, k: &ChainComplex, q: usize) -> Result<Vec<Cochain>> {
    let n = k.count(q);
    let delta = k.coboundary(q)?;
    let cocycles = field::kernel(f, &delta.to_rows(), n)
        .iter()
        .map(|v| f.integral(v))
        .collect::<Result<Vec<_>>>()?;
    let b = coboundary_rows(k, q)?;
    Ok(field::extend_basis(f, &b, &cocycles, n)
        .into_iter()
        .map(|i| Cochain {
            degree: q,
            coeffs: cocycles[i].clone(),
        })
        .collect())
}

/// Cocycles whose classes form a basis of `H^q` with field coefficients.
pub fn cohomology_basis(k: &ChainComplex, q: usize, coeff: Coeff) -> Result<Vec<Cochain>> {
    if q > k.top_dim() {
        return Ok(Vec::new());
    }
    match coeff {
        Coeff::Prime(p) => basis_in(&PrimeField::new(p)?, k, q),
        _ => basis_in(&Rationals, k, q),
    }
}

/// Whether the cocycle `φ` is a coboundary, i.e. represents the zero class.
pub fn is_coboundary(k: &ChainComplex, phi: &Cochain, coeff: Coeff) -> Result<bool> {
    phi.check(k)?;
    let b = coboundary_rows(k, phi.degree)?;
    let n = k.count(phi.degree);
    if n == 0 {
        return Ok(true);
    }
    Ok(match coeff {
        Coeff::Prime(p) => field::in_span(&PrimeField::new(p)?, &b, &phi.coeffs, n),
        _ => field::in_span(&Rationals, &b, &phi.coeffs, n),
    })
}

/// Result of a cup-length search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CupLength {
    /// Largest number of positive-degree classes found with nonzero product.
    pub length: usize,
    /// `(degree, basis index)` of the factors of one such product.
    pub factors: Vec<(usize, usize)>,
    /// False when the budget ran out before the search finished.
    pub exhausted: bool,
    pub products: u64,
}

/// Cup length of the positive-degree cohomology of `k`, searched over
/// products of basis classes within `budget` cup evaluations.
///
/// By multilinearity and graded commutativity, some product of `n` classes
/// is nonzero iff some product of `n` basis classes taken in nondecreasing
/// basis order is, so only those sequences are visited.
pub fn nilpotency(k: &ChainComplex, coeff: Coeff, budget: u64) -> Result<CupLength> {
    let mut basis = Vec::new();
    for q in 1..=k.top_dim() {
        for (i, c) in cohomology_basis(k, q, coeff)?.into_iter().enumerate() {
            basis.push(((q, i), c));
        }
    }
    let mut best = CupLength {
        length: 0,
        factors: Vec::new(),
        exhausted: true,
        products: 0,
    };
    if let Some(((q, i), _)) = basis.first() {
        best.length = 1;
        best.factors = vec![(*q, *i)];
    }
    let mut stack: Vec<(usize, Cochain, Vec<(usize, usize)>)> = basis
        .iter()
        .enumerate()
        .map(|(j, (id, c))| (j, c.clone(), vec![*id]))
        .collect();
    stack.reverse();
    while let Some((last, prod, factors)) = stack.pop() {
        for (j, (id, c)) in basis.iter().enumerate().skip(last).rev() {
            if best.products >= budget {
                best.exhausted = false;
                return Ok(best);
            }
            best.products += 1;
            let mut next = cup(k, &prod, c)?;
            if let Coeff::Prime(p) = coeff {
                next = next.reduce(p);
            }
            if next.degree > k.top_dim() || next.is_zero() || is_coboundary(k, &next, coeff)? {
                continue;
            }
            let mut f = factors.clone();
            f.push(*id);
            if f.len() > best.length {
                best.length = f.len();
                best.factors = f.clone();
            }
            stack.push((j, next, f));
        }
    }
    Ok(best)
}

/// Maps induced by a continuous map on chains, cochains and cohomology.
#[derive(Clone, Debug)]
pub struct InducedMap {
    pub coeff: Coeff,
    /// `f_# : C_q(X) -> C_q(Y)`, one matrix per degree.
    pub chain: Vec<IntMatrix>,
    /// `f^# : C^q(Y) -> C^q(X)`, the transposes.
    pub cochain: Vec<IntMatrix>,
    /// `dim H^q(Y)`.
    pub source_dims: Vec<usize>,
    /// `dim H^q(X)`.
    pub target_dims: Vec<usize>,
    /// Rank of `f^* : H^q(Y) -> H^q(X)`.
    pub ranks: Vec<usize>,
}

impl InducedMap {
    pub fn kernel_rank(&self, q: usize) -> usize {
        self.source_dims.get(q).map_or(0, |d| d - self.ranks[q])
    }
}

fn permutation_sign(v: &[usize]) -> i64 {
    let mut inv = 0;
    for i in 0..v.len() {
        for j in i + 1..v.len() {
            if v[i] > v[j] {
                inv += 1;
            }
        }
    }
    if inv % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Chain map of `f : X -> Y` between clique complexes built over `X` and
/// `Y`, and the induced map on cohomology. A simplex whose image has
/// repeated vertices goes to zero.
pub fn induced_cochain_map(
    f: &DigitalMap,
    k_dom: &ChainComplex,
    k_cod: &ChainComplex,
    coeff: Coeff,
) -> Result<InducedMap> {
    if let Some((i, j)) = f.continuity_violation() {
        let (x, y) = (f.domain(), f.codomain());
        return Err(Error::NotContinuous(format!(
            "{} and {} are adjacent but {} and {} are neither equal nor adjacent",
            x.point(i),
            x.point(j),
            y.point(f.apply(i)),
            y.point(f.apply(j))
        )));
    }
    if !k_dom.same_points(f.domain()) || !k_cod.same_points(f.codomain()) {
        return Err(Error::NotSimplicial(
            "complexes were not built over the map's domain and codomain".into(),
        ));
    }
    let top = k_dom.top_dim().max(k_cod.top_dim());
    let mut chain = Vec::new();
    for q in 0..=top {
        let mut m = IntMatrix::zeros(k_cod.count(q), k_dom.count(q));
        for (s, simplex) in k_dom.simplices(q).iter().enumerate() {
            let image: Vec<usize> = simplex.iter().map(|&v| f.apply(v)).collect();
            let mut sorted = image.clone();
            sorted.sort_unstable();
            sorted.dedup();
            if sorted.len() < image.len() {
                continue;
            }
            let t = k_cod.find(&image).ok_or_else(|| {
                Error::NotSimplicial(format!(
                    "image of a {q}-simplex is not a simplex of the codomain complex"
                ))
            })?;
            let ranks: Vec<usize> = image.iter().map(|&v| k_cod.order().rank(v)).collect();
            m.set(t, s, permutation_sign(&ranks));
        }
        chain.push(m);
    }
    let cochain: Vec<IntMatrix> = chain.iter().map(|m| m.transpose()).collect();
    let mut source_dims = Vec::new();
    let mut target_dims = Vec::new();
    let mut ranks = Vec::new();
    for q in 0..=top {
        let reps = cohomology_basis(k_cod, q, coeff)?;
        let n = k_dom.count(q);
        let pulled: Vec<Vec<i64>> = reps
            .iter()
            .map(|phi| {
                (0..n)
                    .map(|s| {
                        (0..k_cod.count(q))
                            .map(|t| chain[q].get(t, s) * phi.coeffs[t])
                            .sum()
                    })
                    .collect()
            })
            .collect();
        let b = coboundary_rows(k_dom, q)?;
        let rank = match coeff {
            Coeff::Prime(p) => field::extend_basis(&PrimeField::new(p)?, &b, &pulled, n).len(),
            _ => field::extend_basis(&Rationals, &b, &pulled, n).len(),
        };
        source_dims.push(reps.len());
        target_dims.push(cohomology_basis(k_dom, q, coeff)?.len());
        ranks.push(rank);
    }
    Ok(InducedMap {
        coeff,
        chain,
        cochain,
        source_dims,
        target_dims,
        ranks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::grid::{DigitalImage, Point};
    use crate::homology::clique_complex;

    #[test]
    fn unit_is_a_two_sided_identity() {
        let k = clique_complex(&fixtures::msc4(8));
        let one = Cochain::unit(&k);
        for q in 0..=3 {
            for i in 0..k.count(q) {
                let phi = Cochain::dual(&k, q, i).unwrap();
                assert_eq!(cup(&k, &one, &phi).unwrap(), phi);
                assert_eq!(cup(&k, &phi, &one).unwrap(), phi);
            }
        }
    }

    #[test]
    fn interval_classes_vanish() {
        let k = clique_complex(&fixtures::interval(1));
        assert!(cohomology_basis(&k, 1, Coeff::Rationals)
            .unwrap()
            .is_empty());
        let n = nilpotency(&k, Coeff::Rationals, 1000).unwrap();
        assert_eq!(n.length, 0);
        assert!(n.exhausted);
    }

    #[test]
    fn cube_corner_products_vanish() {
        let k = clique_complex(&fixtures::mss6());
        let basis = cohomology_basis(&k, 1, Coeff::Rationals).unwrap();
        assert_eq!(basis.len(), 5);
        for a in &basis {
            for b in &basis {
                let c = cup(&k, a, b).unwrap();
                assert_eq!(c.degree(), 2);
                assert!(c.is_zero());
            }
        }
        assert_eq!(nilpotency(&k, Coeff::Rationals, 1000).unwrap().length, 1);
    }

    #[test]
    fn coboundaries_are_detected() {
        let k = clique_complex(&fixtures::theta());
        let d = coboundary(&k, &Cochain::dual(&k, 0, 3).unwrap()).unwrap();
        assert!(is_coboundary(&k, &d, Coeff::Rationals).unwrap());
        let basis = cohomology_basis(&k, 1, Coeff::Rationals).unwrap();
        assert_eq!(basis.len(), 2);
        assert!(!is_coboundary(&k, &basis[0], Coeff::Rationals).unwrap());
        assert!(coboundary(&k, &basis[1]).unwrap().is_zero());
    }

    #[test]
    fn induced_identity_and_constant() {
        let x = fixtures::theta();
        let k = clique_complex(&x);
        let id = crate::grid::DigitalMap::identity(&x);
        let m = induced_cochain_map(&id, &k, &k, Coeff::Rationals).unwrap();
        for (q, c) in m.chain.iter().enumerate() {
            assert_eq!(*c, IntMatrix::identity(k.count(q)));
        }
        assert_eq!(m.ranks, vec![1, 2]);

        let c = crate::grid::DigitalMap::constant(&x, &x, 4).unwrap();
        let m = induced_cochain_map(&c, &k, &k, Coeff::Rationals).unwrap();
        assert!(m.cochain[1].is_zero());
        assert_eq!(m.kernel_rank(1), 2);
        assert_eq!(m.ranks[0], 1);
    }

    #[test]
    fn discontinuous_maps_are_rejected() {
        let i = fixtures::interval(1);
        let cube = fixtures::mss6();
        let diag = crate::grid::DigitalMap::from_fn(&i, &cube, |p| {
            let t = p.coords()[0];
            Point::from([t, t, t])
        })
        .unwrap();
        let (ki, kc) = (clique_complex(&i), clique_complex(&cube));
        assert!(matches!(
            induced_cochain_map(&diag, &ki, &kc, Coeff::Rationals),
            Err(Error::NotContinuous(_))
        ));
        let _: &DigitalImage = diag.domain();
    }
}
