//! Smith normal form over the integers.
//!
//! The elimination is written once over [`SnfScalar`]. The `i64` backend
//! uses checked arithmetic and stops with [`Error::Overflow`] rather than
//! wrapping; [`smith_normal_form`] then reruns on `BigInt`.

use std::fmt::Debug;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::matrix::{IntMatrix, Matrix};
use crate::error::{Error, Result};

pub trait SnfScalar: Clone + Debug + PartialEq + PartialOrd {
    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(v: i64) -> Self;
    fn is_zero(&self) -> bool;
    fn abs(&self) -> Option<Self>;
    fn neg(&self) -> Option<Self>;
    fn add(&self, o: &Self) -> Option<Self>;
    fn sub(&self, o: &Self) -> Option<Self>;
    fn mul(&self, o: &Self) -> Option<Self>;
    /// Quotient rounded towards zero.
    fn quot(&self, o: &Self) -> Option<Self>;
    fn rem(&self, o: &Self) -> Option<Self>;
    fn is_negative(&self) -> bool;
}

impl SnfScalar for i64 {
    fn zero() -> Self {
        0
    }
    fn one() -> Self {
        1
    }
    fn from_i64(v: i64) -> Self {
        v
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn abs(&self) -> Option<Self> {
        self.checked_abs()
    }
    fn neg(&self) -> Option<Self> {
        self.checked_neg()
    }
    fn add(&self, o: &Self) -> Option<Self> {
        self.checked_add(*o)
    }
    fn sub(&self, o: &Self) -> Option<Self> {
        self.checked_sub(*o)
    }
    fn mul(&self, o: &Self) -> Option<Self> {
        self.checked_mul(*o)
    }
    fn quot(&self, o: &Self) -> Option<Self> {
        self.checked_div(*o)
    }
    fn rem(&self, o: &Self) -> Option<Self> {
        self.checked_rem(*o)
    }
    fn is_negative(&self) -> bool {
        *self < 0
    }
}

impl SnfScalar for BigInt {
    fn zero() -> Self {
        <BigInt as Zero>::zero()
    }
    fn one() -> Self {
        BigInt::from(1)
    }
    fn from_i64(v: i64) -> Self {
        BigInt::from(v)
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn abs(&self) -> Option<Self> {
        Some(Signed::abs(self))
    }
    fn neg(&self) -> Option<Self> {
        Some(-self)
    }
    fn add(&self, o: &Self) -> Option<Self> {
        Some(self + o)
    }
    fn sub(&self, o: &Self) -> Option<Self> {
        Some(self - o)
    }
    fn mul(&self, o: &Self) -> Option<Self> {
        Some(self * o)
    }
    fn quot(&self, o: &Self) -> Option<Self> {
        (!Zero::is_zero(o)).then(|| self / o)
    }
    fn rem(&self, o: &Self) -> Option<Self> {
        (!Zero::is_zero(o)).then(|| self % o)
    }
    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }
}

/// `U * A * V = D` with `D` diagonal, `d_1 | d_2 | ...`, all `d_i >= 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct Snf<T> {
    pub d: Matrix<T>,
    /// Present when transforms were requested.
    pub u: Option<Matrix<T>>,
    pub v: Option<Matrix<T>>,
    pub rank: usize,
}

impl<T: SnfScalar> Snf<T> {
    /// The nonzero diagonal entries, in order.
    pub fn invariant_factors(&self) -> Vec<T> {
        (0..self.rank).map(|i| self.d.get(i, i).clone()).collect()
    }
}

fn identity<T: SnfScalar>(n: usize) -> Matrix<T> {
    let mut m = Matrix::filled(n, n, T::zero());
    for i in 0..n {
        m.set(i, i, T::one());
    }
    m
}

struct Elim<T> {
    m: Matrix<T>,
    u: Option<Matrix<T>>,
    v: Option<Matrix<T>>,
}

fn of<T>(v: Option<T>) -> Result<T> {
    v.ok_or(Error::Overflow)
}

fn axpy_row<T: SnfScalar>(
    m: &mut Matrix<T>,
    dst: usize,
    src: usize,
    q: &T,
    sub: bool,
) -> Result<()> {
    for j in 0..m.cols() {
        let s = m.get(src, j);
        if s.is_zero() {
            continue;
        }
        let prod = of(q.mul(s))?;
        let d = m.get(dst, j);
        let v = of(if sub { d.sub(&prod) } else { d.add(&prod) })?;
        m.set(dst, j, v);
    }
    Ok(())
}

fn axpy_col<T: SnfScalar>(m: &mut Matrix<T>, dst: usize, src: usize, q: &T) -> Result<()> {
    for i in 0..m.rows() {
        let s = m.get(i, src);
        if s.is_zero() {
            continue;
        }
        let prod = of(q.mul(s))?;
        let v = of(m.get(i, dst).sub(&prod))?;
        m.set(i, dst, v);
    }
    Ok(())
}

impl<T: SnfScalar> Elim<T> {
    fn row_sub(&mut self, dst: usize, src: usize, q: &T) -> Result<()> {
        axpy_row(&mut self.m, dst, src, q, true)?;
        if let Some(u) = &mut self.u {
            axpy_row(u, dst, src, q, true)?;
        }
        Ok(())
    }

    fn row_add(&mut self, dst: usize, src: usize) -> Result<()> {
        axpy_row(&mut self.m, dst, src, &T::one(), false)?;
        if let Some(u) = &mut self.u {
            axpy_row(u, dst, src, &T::one(), false)?;
        }
        Ok(())
    }

    fn col_sub(&mut self, dst: usize, src: usize, q: &T) -> Result<()> {
        axpy_col(&mut self.m, dst, src, q)?;
        if let Some(v) = &mut self.v {
            axpy_col(v, dst, src, q)?;
        }
        Ok(())
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        self.m.swap_rows(a, b);
        if let Some(u) = &mut self.u {
            u.swap_rows(a, b);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        self.m.swap_cols(a, b);
        if let Some(v) = &mut self.v {
            v.swap_cols(a, b);
        }
    }

    fn negate_row(&mut self, i: usize) -> Result<()> {
        for j in 0..self.m.cols() {
            let v = of(self.m.get(i, j).neg())?;
            self.m.set(i, j, v);
        }
        if let Some(u) = &mut self.u {
            for j in 0..u.cols() {
                let v = of(u.get(i, j).neg())?;
                u.set(i, j, v);
            }
        }
        Ok(())
    }

    /// Position of a nonzero entry of least absolute value among
    /// `cells`, if any.
    fn smallest(
        &self,
        cells: impl Iterator<Item = (usize, usize)>,
    ) -> Result<Option<(usize, usize)>> {
        let mut best: Option<((usize, usize), T)> = None;
        for (i, j) in cells {
            let e = self.m.get(i, j);
            if e.is_zero() {
                continue;
            }
            let a = of(e.abs())?;
            if best.as_ref().is_none_or(|(_, b)| a < *b) {
                let unit = a == T::one();
                best = Some(((i, j), a));
                if unit {
                    break;
                }
            }
        }
        Ok(best.map(|(p, _)| p))
    }

    fn run(&mut self) -> Result<usize> {
        let (r, c) = self.m.shape();
        let mut t = 0;
        while t < r.min(c) {
            let cells = (t..r).flat_map(|i| (t..c).map(move |j| (i, j)));
            let Some((pi, pj)) = self.smallest(cells)? else {
                break;
            };
            self.swap_rows(t, pi);
            self.swap_cols(t, pj);
            loop {
                let p = self.m.get(t, t).clone();
                let mut clean = true;
                for i in t + 1..r {
                    if !self.m.get(i, t).is_zero() {
                        let q = of(self.m.get(i, t).quot(&p))?;
                        self.row_sub(i, t, &q)?;
                        clean &= self.m.get(i, t).is_zero();
                    }
                }
                for j in t + 1..c {
                    if !self.m.get(t, j).is_zero() {
                        let q = of(self.m.get(t, j).quot(&p))?;
                        self.col_sub(j, t, &q)?;
                        clean &= self.m.get(t, j).is_zero();
                    }
                }
                if !clean {
                    let cells = (t..r).map(|i| (i, t)).chain((t + 1..c).map(|j| (t, j)));
                    let (pi, pj) = self.smallest(cells)?.expect("pivot row or column nonzero");
                    self.swap_rows(t, pi);
                    self.swap_cols(t, pj);
                    continue;
                }
                let mut offender = None;
                'scan: for i in t + 1..r {
                    for j in t + 1..c {
                        if !of(self.m.get(i, j).rem(&p))?.is_zero() {
                            offender = Some(i);
                            break 'scan;
                        }
                    }
                }
                match offender {
                    Some(i) => self.row_add(t, i)?,
                    None => break,
                }
            }
            if self.m.get(t, t).is_negative() {
                self.negate_row(t)?;
            }
            t += 1;
        }
        Ok(t)
    }
}

/// Smith normal form in the scalar type `T`, with optional transforms.
pub fn snf_in<T: SnfScalar>(a: &Matrix<T>, transforms: bool) -> Result<Snf<T>> {
    let mut e = Elim {
        m: a.clone(),
        u: transforms.then(|| identity(a.rows())),
        v: transforms.then(|| identity(a.cols())),
    };
    let rank = e.run()?;
    Ok(Snf {
        d: e.m,
        u: e.u,
        v: e.v,
        rank,
    })
}

/// Fixed-width Smith normal form; fails with [`Error::Overflow`] instead of
/// wrapping.
pub fn smith_normal_form_i64(a: &IntMatrix) -> Result<Snf<i64>> {
    snf_in(a, true)
}

/// Smith normal form with transforms, exact for every input.
pub fn smith_normal_form(a: &IntMatrix) -> Snf<BigInt> {
    match smith_normal_form_i64(a) {
        Ok(s) => Snf {
            d: s.d.to_big(),
            u: s.u.map(|m| m.to_big()),
            v: s.v.map(|m| m.to_big()),
            rank: s.rank,
        },
        Err(_) => snf_in(&a.to_big(), true).expect("BigInt arithmetic does not overflow"),
    }
}

/// Nonzero invariant factors of `a`, without computing transforms.
pub fn invariant_factors(a: &IntMatrix) -> Vec<BigInt> {
    match snf_in(a, false) {
        Ok(s) => s
            .invariant_factors()
            .into_iter()
            .map(BigInt::from)
            .collect(),
        Err(_) => snf_in(&a.to_big(), false)
            .expect("BigInt arithmetic does not overflow")
            .invariant_factors(),
    }
}

/// Rank over the rationals (and over `Z`).
pub fn rank(a: &IntMatrix) -> usize {
    invariant_factors(a).len()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check(a: &IntMatrix, s: &Snf<BigInt>) {
        let u = s.u.as_ref().unwrap();
        let v = s.v.as_ref().unwrap();
        assert_eq!(u.mul_big(&a.to_big()).unwrap().mul_big(v).unwrap(), s.d);
    }

    #[test]
    fn zero_matrix() {
        let a = IntMatrix::zeros(3, 2);
        let s = smith_normal_form_i64(&a).unwrap();
        assert_eq!(s.rank, 0);
        assert_eq!(s.u.unwrap(), IntMatrix::identity(3));
        assert_eq!(s.v.unwrap(), IntMatrix::identity(2));
        assert!(s.d.is_zero());
    }

    #[test]
    fn two_by_two() {
        let a = IntMatrix::from_rows(vec![vec![2, 4], vec![6, 8]]).unwrap();
        let s = smith_normal_form(&a);
        check(&a, &s);
        assert_eq!(
            s.invariant_factors(),
            vec![BigInt::from(2), BigInt::from(4)]
        );
    }

    #[test]
    fn torsion_of_projective_plane_boundary() {
        // boundary of a 2-cell attached along the loop twice
        let a = IntMatrix::from_rows(vec![vec![2]]).unwrap();
        assert_eq!(invariant_factors(&a), vec![BigInt::from(2)]);
        let b = IntMatrix::from_rows(vec![vec![6, 0, 0], vec![0, 4, 0], vec![0, 0, 0]]).unwrap();
        let s = smith_normal_form(&b);
        check(&b, &s);
        assert_eq!(
            s.invariant_factors(),
            vec![BigInt::from(2), BigInt::from(12)]
        );
    }

    #[test]
    fn overflow_aborts_then_bigint_takes_over() {
        let big = i64::MAX / 2;
        let a = IntMatrix::from_rows(vec![vec![big, big - 1], vec![big - 1, big - 3]]).unwrap();
        assert!(matches!(
            smith_normal_form_i64(&a),
            Err(Error::Overflow) | Ok(_)
        ));
        let s = smith_normal_form(&a);
        check(&a, &s);
        let det = BigInt::from(big) * BigInt::from(big - 3)
            - BigInt::from(big - 1) * BigInt::from(big - 1);
        let prod: BigInt = s.invariant_factors().iter().product();
        assert_eq!(prod, Signed::abs(&det));
    }

    #[test]
    fn i64_overflow_is_an_error() {
        let a = IntMatrix::from_rows(vec![vec![i64::MIN, 0], vec![0, 1]]).unwrap();
        assert_eq!(smith_normal_form_i64(&a).unwrap_err(), Error::Overflow);
        assert_eq!(smith_normal_form(&a).invariant_factors().len(), 2);
    }
}
