//! Gaussian elimination over the rationals and over prime fields.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Field arithmetic with a runtime context (the modulus, for `F_p`).
pub trait Field {
    type E: Clone + PartialEq + std::fmt::Debug;
    fn zero(&self) -> Self::E;
    fn one(&self) -> Self::E;
    fn from_i64(&self, v: i64) -> Self::E;
    fn add(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn sub(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn mul(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn inv(&self, a: &Self::E) -> Self::E;
    fn is_zero(&self, a: &Self::E) -> bool;
    /// An integer vector spanning the same line as `v`.
    fn integral(&self, v: &[Self::E]) -> Result<Vec<i64>>;
}

#[derive(Clone, Copy, Debug)]
pub struct Rationals;

impl Field for Rationals {
    type E = BigRational;
    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn from_i64(&self, v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn inv(&self, a: &BigRational) -> BigRational {
        a.recip()
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn integral(&self, v: &[BigRational]) -> Result<Vec<i64>> {
        let lcm = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        let ints: Vec<BigInt> = v.iter().map(|x| (x * &lcm).to_integer()).collect();
        let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
        ints.iter()
            .map(|x| {
                let y = if g.is_zero() { x.clone() } else { x / &g };
                y.to_i64().ok_or(Error::Overflow)
            })
            .collect()
    }
}

/// `F_p` for a prime `p < 2^32`.
#[derive(Clone, Copy, Debug)]
pub struct PrimeField(pub u64);

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if !(2..1 << 32).contains(&p) || !is_prime(p) {
            return Err(Error::InvalidAdjacency(format!(
                "{p} is not a supported prime"
            )));
        }
        Ok(PrimeField(p))
    }
}

pub fn is_prime(p: u64) -> bool {
    p >= 2
        && (2..)
            .take_while(|d| d * d <= p)
            .all(|d| !p.is_multiple_of(d))
}

impl Field for PrimeField {
    type E = u64;
    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn from_i64(&self, v: i64) -> u64 {
        v.rem_euclid(self.0 as i64) as u64
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        (a + b) % self.0
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        (a + self.0 - b) % self.0
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        a * b % self.0
    }
    fn inv(&self, a: &u64) -> u64 {
        // Fermat
        let (mut base, mut e, mut acc) = (*a, self.0 - 2, 1u64);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % self.0;
            }
            base = base * base % self.0;
            e >>= 1;
        }
        acc
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn integral(&self, v: &[u64]) -> Result<Vec<i64>> {
        Ok(v.iter().map(|&x| x as i64).collect())
    }
}

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref<F: Field>(f: &F, m: &mut [Vec<F::E>], cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..m.len()).find(|&i| !f.is_zero(&m[i][c])) else {
            continue;
        };
        m.swap(r, p);
        let inv = f.inv(&m[r][c]);
        for x in m[r].iter_mut() {
            *x = f.mul(x, &inv);
        }
        for i in 0..m.len() {
            if i != r && !f.is_zero(&m[i][c]) {
                let factor = m[i][c].clone();
                for j in 0..cols {
                    let sub = f.mul(&factor, &m[r][j]);
                    m[i][j] = f.sub(&m[i][j], &sub);
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == m.len() {
            break;
        }
    }
    pivots
}

pub fn to_field<F: Field>(f: &F, rows: &[Vec<i64>]) -> Vec<Vec<F::E>> {
    rows.iter()
        .map(|r| r.iter().map(|&v| f.from_i64(v)).collect())
        .collect()
}

pub fn rank<F: Field>(f: &F, rows: &[Vec<i64>], cols: usize) -> usize {
    let mut m = to_field(f, rows);
    rref(f, &mut m, cols).len()
}

/// Basis of `{x : A x = 0}` for `A` given by rows over `cols` columns.
pub fn kernel<F: Field>(f: &F, rows: &[Vec<i64>], cols: usize) -> Vec<Vec<F::E>> {
    let mut m = to_field(f, rows);
    let pivots = rref(f, &mut m, cols);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![f.zero(); cols];
            v[fc] = f.one();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = f.sub(&f.zero(), &m[r][fc]);
            }
            v
        })
        .collect()
}

/// Indices of a maximal subset of `candidates` that is linearly independent
/// modulo the span of `base`, chosen greedily in order.
pub fn extend_basis<F: Field>(
    f: &F,
    base: &[Vec<i64>],
    candidates: &[Vec<i64>],
    cols: usize,
) -> Vec<usize> {
    let mut rows = base.to_vec();
    let mut r = rank(f, &rows, cols);
    let mut chosen = Vec::new();
    for (i, c) in candidates.iter().enumerate() {
        rows.push(c.clone());
        let r2 = rank(f, &rows, cols);
        if r2 > r {
            chosen.push(i);
            r = r2;
        } else {
            rows.pop();
        }
    }
    chosen
}

/// Whether `v` lies in the row span of `base`.
pub fn in_span<F: Field>(f: &F, base: &[Vec<i64>], v: &[i64], cols: usize) -> bool {
    let r = rank(f, base, cols);
    let mut rows = base.to_vec();
    rows.push(v.to_vec());
    rank(f, &rows, cols) == r
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranks_depend_on_the_field() {
        let rows = vec![vec![2, 0], vec![0, 3]];
        assert_eq!(rank(&Rationals, &rows, 2), 2);
        assert_eq!(rank(&PrimeField::new(2).unwrap(), &rows, 2), 1);
        assert_eq!(rank(&PrimeField::new(3).unwrap(), &rows, 2), 1);
        assert_eq!(rank(&PrimeField::new(5).unwrap(), &rows, 2), 2);
    }

    #[test]
    fn kernel_vectors_are_killed() {
        let rows = vec![vec![1, 2, 3], vec![2, 4, 6], vec![1, 0, 1]];
        let k = kernel(&Rationals, &rows, 3);
        assert_eq!(k.len(), 1);
        let v = Rationals.integral(&k[0]).unwrap();
        for r in &rows {
            assert_eq!(r.iter().zip(&v).map(|(a, b)| a * b).sum::<i64>(), 0);
        }
        assert!(in_span(&Rationals, &rows[..1], &rows[1], 3));
        assert_eq!(extend_basis(&Rationals, &rows[..1], &rows, 3), vec![2]);
    }

    #[test]
    fn primes() {
        assert!(PrimeField::new(7).is_ok());
        assert!(PrimeField::new(9).is_err());
        assert_eq!(PrimeField(7).mul(&3, &PrimeField(7).inv(&3)), 1);
    }
}
