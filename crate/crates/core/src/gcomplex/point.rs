//! Points of the geometric realization as finite convex combinations of vertices.

use std::collections::BTreeMap;
use std::fmt::{Debug, Display};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Num, Signed, ToPrimitive};

use super::SimplicialComplex;
use crate::error::{Error, Result};
use crate::perm::Perm;

/// Scalar type for barycentric weights: exact rationals or floats.
pub trait Weight: Clone + Debug + Display + PartialOrd + Num + Signed {
    /// Whether a weight sum counts as one (exact for rationals).
    fn is_unit(&self) -> bool;
    fn to_float(&self) -> f64;
    fn from_ratio(num: i64, den: i64) -> Self;
    fn from_rational(q: &BigRational) -> Self;
    /// Slack allowed in comparisons: zero for rationals.
    fn tolerance() -> Self;
}

impl Weight for BigRational {
    fn is_unit(&self) -> bool {
        num_traits::One::is_one(self)
    }

    fn to_float(&self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        BigRational::new(BigInt::from(num), BigInt::from(den))
    }

    fn from_rational(q: &BigRational) -> Self {
        q.clone()
    }

    fn tolerance() -> Self {
        num_traits::Zero::zero()
    }
}

impl Weight for f64 {
    fn is_unit(&self) -> bool {
        (self - 1.0).abs() <= 1e-9
    }

    fn to_float(&self) -> f64 {
        *self
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        num as f64 / den as f64
    }

    fn from_rational(q: &BigRational) -> Self {
        q.to_f64().unwrap_or(f64::NAN)
    }

    fn tolerance() -> Self {
        1e-9
    }
}

/// Sparse barycentric coordinates; zero weights are never stored.
#[derive(Clone, Debug, PartialEq)]
pub struct RealPoint<W> {
    weights: BTreeMap<u32, W>,
}

pub type ExactPoint = RealPoint<BigRational>;
pub type FloatPoint = RealPoint<f64>;

impl<W: Weight> RealPoint<W> {
    pub fn vertex(v: u32) -> Self {
        RealPoint { weights: BTreeMap::from([(v, W::one())]) }
    }

    /// Rejects negative weights and sums different from one.
    pub fn from_weights(pairs: impl IntoIterator<Item = (u32, W)>) -> Result<Self> {
        let mut weights: BTreeMap<u32, W> = BTreeMap::new();
        for (v, w) in pairs {
            if w.is_negative() {
                return Err(Error::InvalidInput(format!("negative weight at vertex {v}")));
            }
            let slot = weights.entry(v).or_insert_with(W::zero);
            *slot = slot.clone() + w;
        }
        weights.retain(|_, w| !w.is_zero());
        let total = weights.values().fold(W::zero(), |a, w| a + w.clone());
        if !total.is_unit() {
            return Err(Error::InvalidInput(format!("weights sum to {total:?}")));
        }
        Ok(RealPoint { weights })
    }

    /// Uniform point on a simplex.
    pub fn barycenter(simplex: &[u32]) -> Self {
        let k = simplex.len() as i64;
        Self::from_weights(simplex.iter().map(|&v| (v, W::from_ratio(1, k)))).expect("uniform weights")
    }

    /// `Σ c_i p_i` for nonnegative `c_i` summing to one.
    pub fn combine(terms: &[(W, &RealPoint<W>)]) -> Result<Self> {
        let mut pairs = Vec::new();
        for (c, p) in terms {
            for (&v, w) in &p.weights {
                pairs.push((v, c.clone() * w.clone()));
            }
        }
        Self::from_weights(pairs)
    }

    pub fn weights(&self) -> &BTreeMap<u32, W> {
        &self.weights
    }

    pub fn weight(&self, v: u32) -> W {
        self.weights.get(&v).cloned().unwrap_or_else(W::zero)
    }

    pub fn support(&self) -> Vec<u32> {
        self.weights.keys().copied().collect()
    }

    pub fn lies_in(&self, complex: &SimplicialComplex) -> bool {
        complex.contains(&self.support())
    }

    pub fn push_forward(&self, p: &Perm) -> Self {
        RealPoint { weights: self.weights.iter().map(|(&v, w)| (p.apply(v), w.clone())).collect() }
    }

    /// Relabels vertices through an arbitrary map, merging weights that collide.
    pub fn map_vertices(&self, f: impl Fn(u32) -> u32) -> Self {
        Self::from_weights(self.weights.iter().map(|(&v, w)| (f(v), w.clone()))).expect("same total")
    }

    pub fn to_float(&self) -> FloatPoint {
        RealPoint { weights: self.weights.iter().map(|(&v, w)| (v, w.to_float())).collect() }
    }
}

/// `Σ_v |p(v) − q(v)|`.
pub fn l1_distance<W: Weight>(p: &RealPoint<W>, q: &RealPoint<W>) -> W {
    let mut total = W::zero();
    for (v, w) in &p.weights {
        total = total + (w.clone() - q.weight(*v)).abs();
    }
    for (v, w) in &q.weights {
        if !p.weights.contains_key(v) {
            total = total + w.clone();
        }
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::from_ratio(n, d)
    }

    #[test]
    fn distances() {
        let a = ExactPoint::vertex(0);
        let b = ExactPoint::vertex(1);
        assert_eq!(l1_distance(&a, &b), q(2, 1));
        assert_eq!(l1_distance(&a, &a), q(0, 1));
        let mid = ExactPoint::barycenter(&[0, 1]);
        assert_eq!(l1_distance(&mid, &a), q(1, 1));
    }

    #[test]
    fn rejects_bad_weights() {
        assert!(ExactPoint::from_weights([(0, q(1, 2))]).is_err());
        assert!(ExactPoint::from_weights([(0, q(3, 2)), (1, q(-1, 2))]).is_err());
        let p = ExactPoint::from_weights([(0, q(1, 2)), (1, q(1, 2)), (2, q(0, 1))]).unwrap();
        assert_eq!(p.support(), vec![0, 1]);
    }

    #[test]
    fn float_mode_agrees() {
        let p = FloatPoint::barycenter(&[0, 1, 2]);
        let v = FloatPoint::vertex(0);
        assert!((l1_distance(&p, &v) - 4.0 / 3.0).abs() < 1e-12);
    }
}
